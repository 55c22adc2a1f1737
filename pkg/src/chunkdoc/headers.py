"""YAML front matter for R Markdown, workflowr and ioslides documents."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional, Union

import yaml

Scalar = Union[str, bool, int, float]

FLAVORS = ("rmarkdown", "workflowr", "ioslides")

_INDICATORS = set("-?:,[]{}#&*!|>'\"%@`")
_LINE_BREAKS = re.compile("[\n\r\x85\u2028\u2029]")
# Characters a YAML stream may not contain at all.
_UNPRINTABLE = re.compile("[^\x09\x0a\x0d\x20-\x7e\x85\xa0-\ud7ff\ue000-\ufffd\U00010000-\U0010ffff]")


class HeaderError(ValueError):
    pass


def _needs_quotes(text: str) -> bool:
    if not text or text[0] in _INDICATORS or text != text.strip():
        return True
    try:
        return yaml.safe_load(text) != text
    except yaml.YAMLError:
        return True


def format_scalar(value: Scalar) -> str:
    """Render a scalar for a front-matter line.

    Strings are written plain unless a YAML parser would read them back as
    something else (a number, boolean, null, mapping, ...), in which case they
    are single-quoted.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    if _LINE_BREAKS.search(value):
        raise HeaderError(f"front matter values must be single-line: {value!r}")
    if _UNPRINTABLE.search(value):
        raise HeaderError(f"front matter value has a non-printable character: {value!r}")
    if _needs_quotes(value):
        return "'" + value.replace("'", "''") + "'"
    return value


@dataclass(frozen=True)
class FrontMatter:
    """Ordered key/value pairs; a value is a scalar or a nested FrontMatter."""

    entries: tuple[tuple[str, Union[Scalar, "FrontMatter"]], ...] = ()

    def __post_init__(self) -> None:
        fixed = []
        keys: set[str] = set()
        for key, value in self.entries:
            if not isinstance(key, str) or not key:
                raise HeaderError(f"front matter keys must be non-empty strings, got {key!r}")
            if key in keys:
                raise HeaderError(f"duplicate front matter key {key!r}")
            keys.add(key)
            if isinstance(value, Mapping):
                value = FrontMatter.from_pairs(value.items())
            elif isinstance(value, (list, tuple)):
                value = FrontMatter.from_pairs(value)
            elif not isinstance(value, (str, bool, int, float, FrontMatter)):
                raise HeaderError(f"unsupported front matter value for {key!r}: {value!r}")
            fixed.append((key, value))
        object.__setattr__(self, "entries", tuple(fixed))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, object]]) -> FrontMatter:
        return cls(tuple(pairs))

    def keys(self) -> list[str]:
        return [k for k, _ in self.entries]

    def get(self, key: str, default=None):
        for k, v in self.entries:
            if k == key:
                return v
        return default

    def body_lines(self, indent: int = 0) -> list[str]:
        pad = " " * indent
        out = []
        for key, value in self.entries:
            k = format_scalar(key)
            if isinstance(value, FrontMatter):
                if value.entries:
                    out.append(f"{pad}{k}:")
                    out.extend(value.body_lines(indent + 2))
                else:
                    out.append(f"{pad}{k}: {{}}")
            else:
                out.append(f"{pad}{k}: {format_scalar(value)}")
        return out

    def lines(self) -> list[str]:
        return ["---", *self.body_lines(), "---"]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _check_title(title: str) -> None:
    if not isinstance(title, str) or not title.strip():
        raise HeaderError("title must be a non-empty string")


def _pairs(extra) -> list:
    if extra is None:
        return []
    if isinstance(extra, Mapping):
        return list(extra.items())
    return list(extra)


def _common(title, author, date, extra) -> list:
    _check_title(title)
    entries: list = [("title", title)]
    if author is not None:
        entries.append(("author", author))
    if date is not None:
        entries.append(("date", date))
    entries.extend(_pairs(extra))
    return entries


def rmarkdown_header(
    title: str,
    author: Optional[str] = None,
    date: Optional[str] = None,
    output_format: str = "html_document",
    extra=None,
) -> FrontMatter:
    return FrontMatter(tuple(_common(title, author, date, extra) + [("output", output_format)]))


def ioslides_header(
    title: str,
    author: Optional[str] = None,
    date: Optional[str] = None,
    extra=None,
) -> FrontMatter:
    return rmarkdown_header(title, author, date, "ioslides_presentation", extra)


def workflowr_header(
    title: str,
    extra=None,
    author: Optional[str] = None,
    date: Optional[str] = None,
    toc: bool = False,
) -> FrontMatter:
    """Header matching the page template workflowr writes for new analyses.

    ``site`` points rmarkdown at workflowr's site generator and ``output``
    selects ``workflowr::wflow_html``.
    """
    entries = _common(title, author, date, None)
    entries.append(("site", "workflowr::wflow_site"))
    entries.extend(_pairs(extra))
    entries.append(("output", FrontMatter((("workflowr::wflow_html", FrontMatter((("toc", toc),))),))))
    entries.append(("editor_options", FrontMatter((("chunk_output_type", "console"),))))
    return FrontMatter(tuple(entries))


def build_header(
    flavor: str,
    title: str,
    author: Optional[str] = None,
    date: Optional[str] = None,
    output: Optional[str] = None,
    extra=None,
) -> FrontMatter:
    if flavor == "rmarkdown":
        return rmarkdown_header(title, author, date, output or "html_document", extra)
    if output is not None:
        raise HeaderError(f"'output' cannot be set for the {flavor} flavor")
    if flavor == "ioslides":
        return ioslides_header(title, author, date, extra)
    if flavor == "workflowr":
        return workflowr_header(title, extra, author=author, date=date)
    raise HeaderError(f"unknown document flavor {flavor!r}; expected one of {', '.join(FLAVORS)}")
