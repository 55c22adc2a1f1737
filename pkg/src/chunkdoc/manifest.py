"""Reading manifests and (de)serializing component trees as YAML."""

from __future__ import annotations

import datetime
from typing import Any, Optional

import yaml

from .headers import FLAVORS, FrontMatter, HeaderError, build_header
from .options import OptionError, OptionSet
from .tree import (
    IDENTIFIER,
    IDENTITY,
    ComponentNode,
    Decorator,
    GeneratorConfig,
    HeaderFields,
    Manifest,
    Violation,
    format_path,
    validate_tree,
)


class ManifestError(ValueError):
    """Raised with every problem found while reading a manifest."""

    def __init__(self, violations: list[Violation]) -> None:
        self.violations = list(violations)
        super().__init__("\n".join(str(v) for v in self.violations))


class _Pairs(list):
    """A YAML mapping kept as ``(key, value)`` pairs so duplicate keys survive."""

    line: Optional[int] = None


class _Loader(yaml.SafeLoader):
    pass


def _construct_pairs(loader: _Loader, node: yaml.MappingNode) -> _Pairs:
    loader.flatten_mapping(node)
    pairs = _Pairs(
        (loader.construct_object(k, deep=True), loader.construct_object(v, deep=True))
        for k, v in node.value
    )
    pairs.line = node.start_mark.line + 1
    return pairs


_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_pairs)


def _load(text: str) -> Any:
    try:
        return yaml.load(text, Loader=_Loader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ManifestError(
            [Violation("<yaml>", "yaml-syntax", f"{where}: {exc.problem or exc}")]
        ) from None
    except yaml.YAMLError as exc:
        raise ManifestError([Violation("<yaml>", "yaml-syntax", str(exc))]) from None


class _Reader:
    """Schema checks that record problems instead of stopping at the first."""

    def __init__(self) -> None:
        self.problems: list[Violation] = []

    def fail(self, path: str, rule: str, message: str) -> None:
        self.problems.append(Violation(path, rule, message))

    def mapping(self, value: Any, path: str, allowed: Optional[tuple[str, ...]] = None) -> dict:
        if value is None:
            return {}
        if not isinstance(value, _Pairs):
            self.fail(path, "wrong-type", f"expected a mapping, got {_kind(value)}")
            return {}
        out: dict = {}
        for key, item in value:
            if key in out:
                self.fail(f"{path}.{key}", "duplicate-key", f"key {key!r} appears twice")
                continue
            if allowed is not None and key not in allowed:
                self.fail(f"{path}.{key}", "unknown-key", f"allowed keys: {', '.join(allowed)}")
                continue
            out[key] = item
        return out

    def text(self, value: Any, path: str, *, coerce: bool = False) -> Optional[str]:
        if isinstance(value, str):
            return value
        if coerce and isinstance(value, (int, float, datetime.date)) and not isinstance(value, bool):
            return value.isoformat() if isinstance(value, datetime.date) else str(value)
        self.fail(path, "wrong-type", f"expected a string, got {_kind(value)}")
        return None

    def line(self, value: Any, path: str) -> Optional[str]:
        text = self.text(value, path)
        if text is not None and ("\n" in text or "\r" in text):
            self.fail(path, "multi-line", "value must be a single line")
            return None
        return text

    def text_list(self, value: Any, path: str) -> list[str]:
        if value is None:
            return []
        if isinstance(value, str):
            return [value]
        if not isinstance(value, list) or isinstance(value, _Pairs):
            self.fail(path, "wrong-type", f"expected a list of strings, got {_kind(value)}")
            return []
        out = []
        for i, item in enumerate(value):
            text = self.line(item, f"{path}[{i}]")
            if text is not None:
                out.append(text)
        return out

    def options(self, value: Any, path: str) -> OptionSet:
        if value is None:
            return OptionSet()
        if not isinstance(value, _Pairs):
            self.fail(path, "wrong-type", f"expected a mapping of options, got {_kind(value)}")
            return OptionSet()
        entries = {}
        for key, item in value:
            where = f"{path}.{key}"
            if key in entries:
                self.fail(where, "duplicate-key", f"option {key!r} appears twice")
                continue
            try:
                entries[key] = OptionSet({key: item})[key]
            except OptionError as exc:
                self.fail(where, "bad-option", str(exc))
        return OptionSet(entries)


def _kind(value: Any) -> str:
    if isinstance(value, _Pairs):
        return "a mapping"
    if value is None:
        return "null"
    return type(value).__name__


def _read_document(r: _Reader, raw: Any) -> tuple[str, HeaderFields]:
    doc = r.mapping(raw, "document", ("flavor", "title", "author", "date", "output", "extra"))
    flavor = doc.get("flavor", "rmarkdown")
    if flavor not in FLAVORS:
        r.fail("document.flavor", "bad-value", f"expected one of {', '.join(FLAVORS)}, got {flavor!r}")
        flavor = "rmarkdown"
    title = None
    if "title" not in doc:
        r.fail("document.title", "missing-key", "a title is required")
    else:
        title = r.line(doc["title"], "document.title")
        if title is not None and not title.strip():
            r.fail("document.title", "bad-value", "title must be non-empty")
    author = r.line(doc["author"], "document.author") if "author" in doc else None
    date = None
    if "date" in doc:
        date = r.text(doc["date"], "document.date", coerce=True)
    output = None
    if "output" in doc:
        output = r.line(doc["output"], "document.output")
        if flavor != "rmarkdown":
            r.fail("document.output", "bad-value", f"'output' is fixed for the {flavor} flavor")
    extra: tuple = ()
    if doc.get("extra") is not None:
        try:
            extra = FrontMatter.from_pairs(_plain(r, doc["extra"], "document.extra")).entries
        except (ValueError, TypeError) as exc:
            r.fail("document.extra", "bad-value", str(exc))
    return flavor, HeaderFields(title or "", author, date, output, extra)


def _plain(r: _Reader, value: Any, path: str) -> list:
    if not isinstance(value, _Pairs):
        r.fail(path, "wrong-type", f"expected a mapping, got {_kind(value)}")
        return []
    out = []
    for key, item in value:
        if isinstance(item, _Pairs):
            item = _plain(r, item, f"{path}.{key}")
        elif isinstance(item, datetime.date):
            item = item.isoformat()
        out.append((key, item))
    return out


_GENERATOR_KEYS = (
    "chunk_lang",
    "imports",
    "import_template",
    "load_expr",
    "root_var",
    "init_block",
    "chunk_opts",
    "decorators",
    "decorator_chunk_opts",
    "default_decorator",
)


def _read_generator(r: _Reader, raw: Any) -> Optional[GeneratorConfig]:
    gen = r.mapping(raw, "generator", _GENERATOR_KEYS)
    kwargs: dict[str, Any] = {}
    if "load_expr" not in gen:
        r.fail("generator.load_expr", "missing-key", "load_expr is required")
    else:
        load_expr = r.line(gen["load_expr"], "generator.load_expr")
        if load_expr is not None and not load_expr.strip():
            r.fail("generator.load_expr", "bad-value", "load_expr must be non-empty")
        kwargs["load_expr"] = load_expr
    if "chunk_lang" in gen:
        lang = r.line(gen["chunk_lang"], "generator.chunk_lang")
        if lang is not None and (not lang or any(c.isspace() or c in "{}" for c in lang)):
            r.fail("generator.chunk_lang", "bad-value", "chunk language must be a bare word")
        kwargs["chunk_lang"] = lang
    if "imports" in gen:
        kwargs["imports"] = r.text_list(gen["imports"], "generator.imports")
    if "import_template" in gen:
        template = r.line(gen["import_template"], "generator.import_template")
        if template is not None and template.count("{}") != 1:
            r.fail("generator.import_template", "bad-value", "template needs exactly one '{}'")
        kwargs["import_template"] = template
    if "root_var" in gen:
        root_var = r.line(gen["root_var"], "generator.root_var")
        if root_var is not None and not IDENTIFIER.fullmatch(root_var):
            r.fail("generator.root_var", "bad-value", f"{root_var!r} is not a valid identifier")
        kwargs["root_var"] = root_var
    if "init_block" in gen:
        block = gen["init_block"]
        if isinstance(block, str):
            lines = block.rstrip("\n").split("\n")
        else:
            lines = r.text_list(block, "generator.init_block")
        for i, line in enumerate(lines):
            if line.lstrip().startswith("```"):
                r.fail(f"generator.init_block[{i}]", "fence-in-body", "line would close the chunk")
        kwargs["init_block"] = lines
    if "chunk_opts" in gen:
        kwargs["doc_opts"] = r.options(gen["chunk_opts"], "generator.chunk_opts")

    decorators = []
    for tag, spec in r.mapping(gen.get("decorators"), "generator.decorators").items():
        path = f"generator.decorators.{tag}"
        tag_text = r.line(tag, path)
        spec_text = r.line(spec, path)
        if tag_text is None or spec_text is None:
            continue
        try:
            decorators.append(Decorator.from_spec(tag_text, spec_text))
        except ValueError as exc:
            r.fail(path, "bad-decorator", str(exc))
    kwargs["decorators"] = decorators

    dec_opts = []
    for tag, opts in r.mapping(gen.get("decorator_chunk_opts"), "generator.decorator_chunk_opts").items():
        path = f"generator.decorator_chunk_opts.{tag}"
        if r.line(tag, path) is not None:
            dec_opts.append((tag, r.options(opts, path)))
    kwargs["decorator_opts"] = dec_opts

    if "default_decorator" in gen:
        spec = gen["default_decorator"]
        if spec is None or spec == "none":
            kwargs["default_decorator"] = None
        else:
            spec_text = r.line(spec, "generator.default_decorator")
            if spec_text is not None:
                try:
                    kwargs["default_decorator"] = Decorator.from_spec("", spec_text)
                except ValueError as exc:
                    r.fail("generator.default_decorator", "bad-decorator", str(exc))
    else:
        kwargs["default_decorator"] = IDENTITY

    if any(v is None for k, v in kwargs.items() if k != "default_decorator"):
        return None
    if "load_expr" not in kwargs:
        return None
    try:
        return GeneratorConfig(**kwargs)
    except (ValueError, OptionError) as exc:
        r.fail("generator", "bad-value", str(exc))
        return None


_LEAF_KEYS = ("tags", "chunk_opts")


def _read_children(r: _Reader, raw: Any, path: tuple[str, ...]) -> tuple[ComponentNode, ...]:
    where = format_path(path)
    if raw is None:
        return ()
    if not isinstance(raw, _Pairs):
        r.fail(where, "wrong-type", f"expected a mapping of components, got {_kind(raw)}")
        return ()
    children = []
    for key, value in raw:
        if not isinstance(key, str):
            r.fail(
                format_path(path + (str(key),)),
                "non-string-name",
                f"component name {key!r} is not a string; quote it",
            )
            key = str(key)
        child_path = path + (key,)
        child_where = format_path(child_path)
        if not isinstance(value, _Pairs):
            r.fail(
                child_where,
                "wrong-type",
                f"a component must be a mapping (section) or have 'tags' (leaf), got {_kind(value)}",
            )
            continue
        keys = [k for k, _ in value]
        if "tags" in keys:
            extra = [str(k) for k in keys if k not in _LEAF_KEYS]
            if extra:
                r.fail(
                    child_where,
                    "tags-on-section",
                    f"a leaf carries only tags and chunk_opts; also found {', '.join(extra)}",
                )
            fields = dict((k, v) for k, v in value if k in _LEAF_KEYS)
            for dup in {k for k in keys if keys.count(k) > 1 and k in _LEAF_KEYS}:
                r.fail(child_where, "duplicate-key", f"key {dup!r} appears twice")
            tags = r.text_list(fields["tags"], f"{child_where}.tags")
            opts = r.options(fields.get("chunk_opts"), f"{child_where}.chunk_opts")
            children.append(ComponentNode(key, tuple(tags), None, opts))
        else:
            children.append(ComponentNode.section(key, _read_children(r, value, child_path)))
    return tuple(children)


def _read_tree(r: _Reader, raw: Any) -> ComponentNode:
    tree = ComponentNode.section(None, _read_children(r, raw, ()))
    r.problems.extend(validate_tree(tree))
    return tree


def parse_manifest(text: str) -> Manifest:
    """Parse and validate a manifest, raising :class:`ManifestError` on any problem."""
    data = _load(text)
    r = _Reader()
    if not isinstance(data, _Pairs):
        raise ManifestError([Violation("<manifest>", "wrong-type", "manifest must be a mapping")])
    top = r.mapping(data, "<manifest>", ("document", "generator", "components", "label"))
    if "document" not in top:
        r.fail("document", "missing-key", "the document block is required")
    flavor, header = _read_document(r, top.get("document"))
    config = _read_generator(r, top.get("generator"))
    tree = _read_tree(r, top.get("components"))
    if header.title:
        try:
            output = header.output if flavor == "rmarkdown" else None
            build_header(
                flavor, header.title, header.author, header.date, output, header.extra
            ).lines()
        except HeaderError as exc:
            r.fail("document", "bad-value", str(exc))
    label = top.get("label")
    if label is not None:
        label = r.line(label, "label")
    if r.problems:
        raise ManifestError(r.problems)
    assert config is not None
    return Manifest(flavor, header, config, tree, label or config.root_var)


def read_manifest(path) -> Manifest:
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read())


def tree_to_data(tree: ComponentNode) -> dict:
    out: dict = {}
    for child in tree.children or ():
        if child.is_leaf:
            entry: dict = {"tags": list(child.type_tags)}
            if child.adhoc_opts:
                entry["chunk_opts"] = child.adhoc_opts.to_dict()
            out[child.name] = entry
        else:
            out[child.name] = tree_to_data(child)
    return out


def serialize_tree(tree: ComponentNode, root_label: str) -> str:
    """YAML listing of the tree with each leaf's type tags and ad-hoc options.

    The top-level key is ``root_label``; its value uses the same layout as a
    manifest's ``components`` block, so :func:`parse_tree` reads it back.
    """
    return yaml.safe_dump(
        {root_label: tree_to_data(tree)},
        sort_keys=False,
        default_flow_style=None,
        allow_unicode=True,
        width=float("inf"),
    )


def parse_tree(text: str) -> tuple[str, ComponentNode]:
    """Inverse of :func:`serialize_tree`: return ``(root_label, tree)``."""
    data = _load(text)
    if not isinstance(data, _Pairs) or len(data) != 1:
        raise ManifestError(
            [Violation("<tree>", "wrong-type", "expected a single top-level key naming the tree")]
        )
    (label, body), = data
    r = _Reader()
    tree = _read_tree(r, body)
    if r.problems:
        raise ManifestError(r.problems)
    return str(label), tree
