"""Turn a component tree into document lines: headings plus fenced chunks."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from .headers import FrontMatter, build_header
from .options import EMPTY, OptionSet, format_chunk_header, merge_chunk_opts
from .tree import (
    IDENTIFIER,
    ComponentNode,
    Decorator,
    GeneratorConfig,
    Manifest,
    Violation,
    format_path,
)

FENCE = "```"
MAX_HEADING_DEPTH = 6


class EmitError(ValueError):
    pass


@dataclass(frozen=True)
class ChunkBlock:
    lang: str
    header_opts: OptionSet
    body_lines: tuple[str, ...]

    def __post_init__(self) -> None:
        for line in self.body_lines:
            if line.lstrip().startswith(FENCE):
                raise EmitError(f"chunk body line would close the fence: {line!r}")

    def lines(self) -> list[str]:
        return [FENCE + format_chunk_header(self.lang, self.header_opts), *self.body_lines, FENCE]


def resolve_decorator(type_tags: Sequence[str], config: GeneratorConfig) -> Optional[Decorator]:
    """First decorator, in declaration order, whose tag the component carries.

    Falls back to ``config.default_decorator``; ``None`` means the chunk is
    suppressed.
    """
    tags = set(type_tags)
    for decorator in config.decorators:
        if decorator.match_tag in tags:
            return decorator
    return config.default_decorator


def resolve_decorator_opts(type_tags: Sequence[str], config: GeneratorConfig) -> OptionSet:
    tags = set(type_tags)
    for tag, opts in config.decorator_opts:
        if tag in tags:
            return opts
    return EMPTY


def emit_accessor(path: Sequence[str], root_var: str) -> str:
    parts = [root_var]
    for segment in path:
        parts.append(segment if IDENTIFIER.fullmatch(segment) else f"`{segment}`")
    return "$".join(parts)


def emit_setup_chunk(config: GeneratorConfig) -> list[str]:
    body: list[str] = [config.import_template.replace("{}", name, 1) for name in config.imports]
    if body:
        body.append("")
    body.append(f"{config.root_var} <- {config.load_expr}")
    if config.init_block:
        body.append("")
        body.extend(config.init_block)
    return ChunkBlock(config.chunk_lang, config.doc_opts, tuple(body)).lines()


def component_chunk(
    node: ComponentNode, path: Sequence[str], config: GeneratorConfig
) -> Optional[ChunkBlock]:
    decorator = resolve_decorator(node.type_tags, config)
    if decorator is None:
        return None
    opts = merge_chunk_opts(
        config.doc_opts, resolve_decorator_opts(node.type_tags, config), node.adhoc_opts
    )
    body = decorator.apply(emit_accessor(path, config.root_var))
    return ChunkBlock(config.chunk_lang, opts, (body,))


def emit_chunks(config: GeneratorConfig, tree: ComponentNode) -> list[str]:
    """Document body without front matter: setup chunk, then the tree depth-first."""
    lines = ["", *emit_setup_chunk(config)]

    def walk(node: ComponentNode, path: tuple[str, ...]) -> None:
        for child in node.children or ():
            child_path = path + (child.name,)
            depth = len(child_path)
            if depth > MAX_HEADING_DEPTH:
                raise EmitError(
                    f"{format_path(child_path)}: heading depth {depth} exceeds {MAX_HEADING_DEPTH}"
                )
            lines.extend(["", "#" * depth + " " + child.name])
            if child.is_leaf:
                block = component_chunk(child, child_path, config)
                if block is not None:
                    lines.append("")
                    lines.extend(block.lines())
            else:
                walk(child, child_path)

    walk(tree, ())
    return lines


def depth_violations(tree: ComponentNode) -> list[Violation]:
    return [
        Violation(format_path(path), "heading-too-deep", f"depth {len(path)} exceeds {MAX_HEADING_DEPTH}")
        for path, _ in tree.iter_nodes()
        if len(path) > MAX_HEADING_DEPTH
    ]


def manifest_header(manifest: Manifest) -> FrontMatter:
    h = manifest.header
    return build_header(manifest.flavor, h.title, h.author, h.date, h.output, h.extra)


def emit_document(manifest: Manifest) -> list[str]:
    return manifest_header(manifest).lines() + emit_chunks(manifest.config, manifest.root)


def render_document(manifest: Manifest) -> str:
    """The document as file text: LF-separated lines with a final newline."""
    return "\n".join(emit_document(manifest)) + "\n"
