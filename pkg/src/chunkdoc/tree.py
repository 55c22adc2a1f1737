"""Component tree, generator configuration and tree-level operations."""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

from .options import EMPTY, OptionSet

IDENTIFIER = re.compile(r"[A-Za-z.][A-Za-z0-9._]*")
_CALLABLE_NAME = re.compile(r"[A-Za-z_.][A-Za-z0-9_.]*(?::{2,3}[A-Za-z_.][A-Za-z0-9_.]*)?")
FORBIDDEN_NAME_CHARS = ("`", "\n", "\r", "$")


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.rule}: {self.message}"


@dataclass(frozen=True)
class ComponentNode:
    """One element of the component tree.

    ``children`` is ``None`` for a leaf and a tuple (possibly empty) for a
    section. Construction does not enforce the tree rules; see
    :func:`validate_tree`.
    """

    name: Optional[str] = None
    type_tags: tuple[str, ...] = ()
    children: Optional[tuple[ComponentNode, ...]] = None
    adhoc_opts: OptionSet = EMPTY

    def __post_init__(self) -> None:
        object.__setattr__(self, "type_tags", tuple(self.type_tags))
        if self.children is not None:
            object.__setattr__(self, "children", tuple(self.children))
        if not isinstance(self.adhoc_opts, OptionSet):
            object.__setattr__(self, "adhoc_opts", OptionSet(self.adhoc_opts))

    @classmethod
    def leaf(
        cls,
        name: str,
        tags: Iterable[str],
        opts: Mapping[str, object] | None = None,
    ) -> ComponentNode:
        return cls(name, tuple(tags), None, OptionSet(opts or {}))

    @classmethod
    def section(cls, name: Optional[str], children: Iterable[ComponentNode] = ()) -> ComponentNode:
        return cls(name, (), tuple(children))

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def iter_nodes(self, path: tuple[str, ...] = ()) -> Iterator[tuple[tuple[str, ...], ComponentNode]]:
        """Yield ``(path, node)`` for every descendant, depth-first."""
        for child in self.children or ():
            child_path = path + (child.name or "",)
            yield child_path, child
            yield from child.iter_nodes(child_path)


def root(*children: ComponentNode) -> ComponentNode:
    return ComponentNode.section(None, children)


@dataclass(frozen=True)
class Decorator:
    """An expression template with one ``{}`` slot for the accessor."""

    match_tag: str
    template: str = "{}"

    def __post_init__(self) -> None:
        if self.template.count("{}") != 1:
            raise ValueError(
                f"decorator template {self.template!r} must contain exactly one '{{}}'"
            )
        if "\n" in self.template or "\r" in self.template:
            raise ValueError("decorator template must be a single line")

    @classmethod
    def from_spec(cls, match_tag: str, spec: str) -> Decorator:
        """Build from a template or a bare callable name (``f`` means ``f({})``)."""
        if spec == "identity":
            return cls(match_tag, "{}")
        if "{}" in spec:
            return cls(match_tag, spec)
        if not _CALLABLE_NAME.fullmatch(spec):
            raise ValueError(
                f"decorator {spec!r} is neither a template with '{{}}' nor a function name"
            )
        return cls(match_tag, spec + "({})")

    @property
    def is_identity(self) -> bool:
        return self.template == "{}"

    def apply(self, accessor: str) -> str:
        return self.template.replace("{}", accessor, 1)


IDENTITY = Decorator("", "{}")


@dataclass(frozen=True)
class GeneratorConfig:
    load_expr: str
    chunk_lang: str = "r"
    imports: tuple[str, ...] = ()
    import_template: str = "library({})"
    root_var: str = "cc_list"
    init_block: tuple[str, ...] = ()
    doc_opts: OptionSet = EMPTY
    decorators: tuple[Decorator, ...] = ()
    decorator_opts: tuple[tuple[str, OptionSet], ...] = ()
    # None suppresses chunks for leaves no decorator matches.
    default_decorator: Optional[Decorator] = IDENTITY

    def __post_init__(self) -> None:
        object.__setattr__(self, "imports", tuple(self.imports))
        object.__setattr__(self, "init_block", tuple(self.init_block))
        object.__setattr__(self, "decorators", tuple(self.decorators))
        if isinstance(self.decorator_opts, Mapping):
            pairs = self.decorator_opts.items()
        else:
            pairs = self.decorator_opts
        object.__setattr__(
            self, "decorator_opts", tuple((tag, OptionSet(o)) for tag, o in pairs)
        )
        if not isinstance(self.doc_opts, OptionSet):
            object.__setattr__(self, "doc_opts", OptionSet(self.doc_opts))
        if not IDENTIFIER.fullmatch(self.root_var):
            raise ValueError(f"root_var {self.root_var!r} is not a valid identifier")
        tags = [d.match_tag for d in self.decorators]
        if len(tags) != len(set(tags)):
            raise ValueError("decorator tags must be unique")
        if self.import_template.count("{}") != 1:
            raise ValueError("import_template must contain exactly one '{}'")


def format_path(path: Sequence[str]) -> str:
    return "/" + "/".join(path)


def validate_tree(node: ComponentNode) -> list[Violation]:
    """Check the tree rules and return every violation found, in tree order."""
    out: list[Violation] = []
    if node.is_leaf:
        out.append(Violation("/", "root-not-section", "the root must be a section"))
        return out
    if node.name is not None:
        out.append(Violation("/", "named-root", "the root must not have a name"))
    _check_section(node, (), out)
    return out


def _check_section(node: ComponentNode, path: tuple[str, ...], out: list[Violation]) -> None:
    seen: set[str] = set()
    for index, child in enumerate(node.children or ()):
        label = child.name if child.name else f"#{index + 1}"
        child_path = path + (label,)
        where = format_path(child_path)
        if child.name is None or not child.name.strip():
            out.append(Violation(where, "missing-name", "every non-root node needs a name"))
        else:
            bad = [c for c in FORBIDDEN_NAME_CHARS if c in child.name]
            if bad:
                shown = ", ".join(repr(c) for c in bad)
                out.append(Violation(where, "forbidden-character", f"name contains {shown}"))
            if child.name == "tags":
                out.append(
                    Violation(where, "reserved-name", "'tags' marks a leaf and cannot name a node")
                )
            key = child.name.strip()
            if key in seen:
                out.append(
                    Violation(where, "duplicate-sibling-name", f"name {key!r} is used twice")
                )
            seen.add(key)
        if child.is_leaf:
            tags_seen: set[str] = set()
            for tag in child.type_tags:
                if not tag:
                    out.append(Violation(where, "empty-tag", "type tags must be non-empty"))
                elif tag in tags_seen:
                    out.append(Violation(where, "duplicate-tag", f"type tag {tag!r} repeats"))
                tags_seen.add(tag)
        else:
            if child.type_tags:
                out.append(
                    Violation(where, "tags-on-section", "a section cannot carry type tags")
                )
            if child.adhoc_opts:
                out.append(
                    Violation(where, "opts-on-section", "a section cannot carry chunk options")
                )
            _check_section(child, child_path, out)


def attach_chunk_opts(node: ComponentNode, opts: Mapping[str, object]) -> ComponentNode:
    """Return ``node`` with ``opts`` merged into its ad-hoc options (last write wins)."""
    if not node.is_leaf:
        raise ValueError(
            f"chunk options can only be attached to a leaf, {node.name!r} is a section"
        )
    if not opts:
        return node
    return ComponentNode(node.name, node.type_tags, None, node.adhoc_opts.updated(opts))


def replace_node(
    tree: ComponentNode, path: Sequence[str], new: ComponentNode
) -> ComponentNode:
    """Return a copy of ``tree`` with the node at ``path`` swapped for ``new``."""
    if not path:
        return new
    if tree.children is None:
        raise KeyError(format_path(path))
    head, rest = path[0], path[1:]
    for i, child in enumerate(tree.children):
        if child.name == head:
            kids = list(tree.children)
            kids[i] = replace_node(child, rest, new)
            return ComponentNode(tree.name, tree.type_tags, tuple(kids), tree.adhoc_opts)
    raise KeyError(format_path(path))


def find_node(tree: ComponentNode, path: Sequence[str]) -> ComponentNode:
    node = tree
    for part in path:
        for child in node.children or ():
            if child.name == part:
                node = child
                break
        else:
            raise KeyError(format_path(path))
    return node


def render_dendrogram(tree: ComponentNode, root_label: str) -> str:
    """Draw the tree as ASCII art, one node per line.

    Each leaf gets an extra line listing its type tags. The last sibling in a
    group is marked ``o--``, the others ``|--``.
    """
    lines = [root_label]

    def walk(node: ComponentNode, prefix: str) -> None:
        kids = node.children or ()
        for i, child in enumerate(kids):
            last = i == len(kids) - 1
            lines.append(f"{prefix}{'o--' if last else '|--'} {child.name}")
            below = prefix + ("   " if last else "|  ")
            if child.is_leaf:
                lines.append(f"{below}o-- object of type(s):{' '.join(child.type_tags)}")
            else:
                walk(child, below)

    walk(tree, "  ")
    return "\n".join(line.rstrip() for line in lines)


@dataclass(frozen=True)
class HeaderFields:
    """Front-matter inputs as written in a manifest's ``document`` block."""

    title: str
    author: Optional[str] = None
    date: Optional[str] = None
    output: Optional[str] = None
    extra: tuple = ()


@dataclass(frozen=True)
class Manifest:
    flavor: str
    header: HeaderFields
    config: GeneratorConfig
    root: ComponentNode = field(default_factory=root)
    root_label: str = "cc_list"
