"""Chunk options: an ordered, immutable key/value map and its header rendering."""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Mapping
from typing import Union

OptionValue = Union[bool, int, float, str]

_BAD_KEY_CHARS = re.compile(r"[\s,=]")


class OptionError(ValueError):
    pass


def check_key(key: object) -> str:
    if not isinstance(key, str) or not key:
        raise OptionError(f"option key must be a non-empty string, got {key!r}")
    if _BAD_KEY_CHARS.search(key):
        raise OptionError(f"option key {key!r} contains whitespace, ',' or '='")
    return key


def check_value(key: str, value: object) -> OptionValue:
    if isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise OptionError(f"option {key!r} has a non-finite value {value!r}")
        return value
    raise OptionError(
        f"option {key!r} must be a boolean, number or string, got {type(value).__name__}"
    )


class OptionSet(Mapping[str, OptionValue]):
    """Insertion-ordered chunk options.

    Equality is order- and type-sensitive, so ``{echo: True}`` differs from
    ``{echo: 1}`` and from the same keys in another order.
    """

    __slots__ = ("_entries",)

    def __init__(
        self,
        entries: Mapping[str, object] | Iterable[tuple[str, object]] = (),
        **kwargs: object,
    ) -> None:
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[str, OptionValue] = {}
        for key, value in list(items) + list(kwargs.items()):
            key = check_key(key)
            data[key] = check_value(key, value)
        self._entries = data

    def __getitem__(self, key: str) -> OptionValue:
        return self._entries[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def _signature(self) -> tuple:
        return tuple((k, type(v), v) for k, v in self._entries.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping) and not isinstance(other, OptionSet):
            try:
                other = OptionSet(other)
            except OptionError:
                return False
        if not isinstance(other, OptionSet):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def __repr__(self) -> str:
        return f"OptionSet({self._entries!r})"

    def updated(self, other: Mapping[str, object]) -> OptionSet:
        """Return a copy with ``other`` layered on top.

        New keys are appended; existing keys take the new value and keep
        their position.
        """
        merged = dict(self._entries)
        merged.update(OptionSet(other)._entries)
        return OptionSet(merged)

    def to_dict(self) -> dict[str, OptionValue]:
        return dict(self._entries)


EMPTY = OptionSet()


def merge_chunk_opts(
    doc: Mapping[str, object],
    dec: Mapping[str, object],
    adhoc: Mapping[str, object],
) -> OptionSet:
    """Merge document-wide, decorator-wide and ad-hoc options.

    Later tiers win. Key order is first appearance across the tiers in that
    order; overriding a key does not move it.
    """
    return OptionSet(doc).updated(dec).updated(adhoc)


def format_number(value: int | float) -> str:
    if isinstance(value, int):
        return str(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def format_value(value: OptionValue) -> str:
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, (int, float)):
        return format_number(value)
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_chunk_header(lang: str, opts: Mapping[str, OptionValue]) -> str:
    """Render ``{lang k1 = v1, k2 = v2}`` for a fenced chunk."""
    if not opts:
        return "{" + lang + "}"
    body = ", ".join(f"{k} = {format_value(v)}" for k, v in opts.items())
    return "{" + lang + " " + body + "}"
