import pytest
from hypothesis import given, settings, strategies as st

from chunkdoc import (
    ComponentNode,
    Decorator,
    GeneratorConfig,
    HeaderFields,
    Manifest,
    OptionSet,
    emit_accessor,
    emit_chunks,
    emit_document,
    emit_setup_chunk,
    resolve_decorator,
)
from chunkdoc.emit import ChunkBlock, EmitError, render_document
from chunkdoc.tree import IDENTIFIER, root
from strategies import count_nodes, names, trees

GG = ("gg", "ggplot")


def config(**kw):
    kw.setdefault("load_expr", 'readRDS("comp-comp.rds")')
    return GeneratorConfig(**kw)


def split_accessor(text: str) -> list[str]:
    """Split on top-level ``$`` and unwrap backticked segments."""
    parts, buf, quoted = [], "", False
    for ch in text:
        if ch == "`":
            quoted = not quoted
        elif ch == "$" and not quoted:
            parts.append(buf)
            buf = ""
        else:
            buf += ch
    parts.append(buf)
    return parts


class TestResolve:
    def test_tag_match(self):
        cfg = config(decorators=[Decorator.from_spec("data.frame", "datatable")])
        dec = resolve_decorator(["data.frame"], cfg)
        assert dec.apply(emit_accessor(["Data"], "cc_list")) == "datatable(cc_list$Data)"

    def test_default_identity(self):
        cfg = config(decorators=[Decorator.from_spec("data.frame", "datatable")])
        dec = resolve_decorator(GG, cfg)
        assert dec.is_identity

    def test_declaration_order_wins(self):
        cfg = config(decorators=[Decorator("ggplot", "B({})"), Decorator("gg", "A({})")])
        assert resolve_decorator(GG, cfg).template == "B({})"
        assert resolve_decorator(("ggplot", "gg"), cfg).template == "B({})"

    def test_suppressed(self):
        assert resolve_decorator(GG, config(default_decorator=None)) is None


class TestAccessor:
    @pytest.mark.parametrize(
        "path, expected",
        [
            (["Linear"], "cc_list$Linear"),
            (["Non Linear"], "cc_list$`Non Linear`"),
            (
                ["Survival Plots", "Overall {.tabset}", "Plot"],
                "cc_list$`Survival Plots`$`Overall {.tabset}`$Plot",
            ),
            (["Sepal.Length", "Sepal.Width"], "cc_list$Sepal.Length$Sepal.Width"),
            (["_x"], "cc_list$`_x`"),
            (["2x"], "cc_list$`2x`"),
        ],
    )
    def test_examples(self, path, expected):
        assert emit_accessor(path, "cc_list") == expected

    @given(st.lists(names.filter(lambda s: "`" not in s and "$" not in s), min_size=1, max_size=5))
    def test_reversible(self, path):
        text = emit_accessor(path, "cc")
        assert split_accessor(text) == ["cc", *path]
        for segment in path:
            assert (f"`{segment}`" in text) != bool(IDENTIFIER.fullmatch(segment))


class TestSetup:
    def test_anscombe(self):
        assert emit_setup_chunk(config(imports=["ggplot2"])) == [
            "```{r}",
            "library(ggplot2)",
            "",
            'cc_list <- readRDS("comp-comp.rds")',
            "```",
        ]

    def test_init_block(self):
        cfg = config(
            load_expr='readRDS("comp-comp2.rds")',
            imports=["ggplot2", "DT", "purrr"],
            init_block=['datatable_no_search <- partial(datatable, options = list(dom = "t"))'],
            doc_opts={"echo": False},
        )
        assert emit_setup_chunk(cfg) == [
            "```{r echo = FALSE}",
            "library(ggplot2)",
            "library(DT)",
            "library(purrr)",
            "",
            'cc_list <- readRDS("comp-comp2.rds")',
            "",
            'datatable_no_search <- partial(datatable, options = list(dom = "t"))',
            "```",
        ]

    def test_minimal(self):
        assert emit_setup_chunk(GeneratorConfig("f()", root_var="x")) == ["```{r}", "x <- f()", "```"]

    def test_other_language(self):
        cfg = GeneratorConfig("load()", chunk_lang="python", imports=["numpy"], import_template="import {}")
        assert emit_setup_chunk(cfg) == ["```{python}", "import numpy", "", "cc_list <- load()", "```"]

    def test_init_text_is_verbatim(self):
        cfg = config(init_block=["f <- function(x) 't'"])
        assert "f <- function(x) 't'" in emit_setup_chunk(cfg)

    def test_fence_in_body_rejected(self):
        with pytest.raises(EmitError):
            ChunkBlock("r", OptionSet(), ("```",))


class TestDocument:
    def test_empty_tree(self):
        m = Manifest("rmarkdown", HeaderFields("T"), GeneratorConfig("f()"), root())
        assert emit_document(m) == [
            "---", "title: T", "output: html_document", "---",
            "", "```{r}", "cc_list <- f()", "```",
        ]

    def test_decorator_wide_options(self):
        cfg = config(
            load_expr='readRDS("comp-comp2.rds")',
            doc_opts={"echo": False},
            decorator_opts={"ggplot": {"fig.width": 100, "fig.height": 200}},
        )
        tree = root(
            ComponentNode.leaf("Iris", ["data.frame"]),
            ComponentNode.section("Sepal.Length", [ComponentNode.leaf("Sepal.Width", GG)]),
        )
        lines = emit_chunks(cfg, tree)
        assert lines[lines.index("# Iris") + 2] == "```{r echo = FALSE}"
        i = lines.index("## Sepal.Width")
        assert lines[i + 2 : i + 5] == [
            "```{r echo = FALSE, fig.width = 100, fig.height = 200}",
            "cc_list$Sepal.Length$Sepal.Width",
            "```",
        ]

    def test_decorator_opts_follow_declaration_order(self):
        cfg = config(decorator_opts=[("ggplot", {"dpi": 1}), ("gg", {"dpi": 2})])
        lines = emit_chunks(cfg, root(ComponentNode.leaf("p", ("gg", "ggplot"))))
        assert "```{r dpi = 1}" in lines

    def test_suppressed_leaf_keeps_heading(self):
        cfg = config(default_decorator=None, decorators=[Decorator.from_spec("data.frame", "datatable")])
        tree = root(ComponentNode.leaf("Plot", GG), ComponentNode.leaf("Data", ["data.frame"]))
        lines = emit_chunks(cfg, tree)
        assert lines[-8:] == [
            "", "# Plot",
            "", "# Data", "", "```{r}", "datatable(cc_list$Data)", "```",
        ]
        assert lines.count("```{r}") == 2

    def test_too_deep(self):
        node = ComponentNode.leaf("leaf", ["x"])
        for i in range(6):
            node = ComponentNode.section(f"s{i}", [node])
        with pytest.raises(EmitError, match="/s5/s4/s3/s2/s1/s0/leaf"):
            emit_chunks(config(), root(node))

    def test_render_ends_with_newline(self):
        m = Manifest("rmarkdown", HeaderFields("T"), GeneratorConfig("f()"), root())
        assert render_document(m).endswith("```\n")
        assert "\r" not in render_document(m)


def _manifest(tree, **kw):
    return Manifest("rmarkdown", HeaderFields("T"), config(**kw), tree)


def _depths(tree, depth=1):
    for child in tree.children or ():
        yield child, depth
        yield from _depths(child, depth + 1)


@settings(max_examples=200)
@given(trees(max_depth=5), st.booleans())
def test_document_invariants(tree, suppress):
    kw = {"default_decorator": None} if suppress else {}
    kw["decorators"] = [Decorator.from_spec("data.frame", "datatable")]
    lines = emit_document(_manifest(tree, **kw))
    fences = [line for line in lines if line.startswith("```")]
    assert len(fences) % 2 == 0
    opens, closes = fences[0::2], fences[1::2]
    assert all(f.startswith("```{") for f in opens) and all(f == "```" for f in closes)

    _, leaves = count_nodes(tree)
    shown = sum(
        1 for n, _ in _depths(tree)
        if n.is_leaf and (not suppress or "data.frame" in n.type_tags)
    )
    assert len(opens) == 1 + shown
    if not suppress:
        assert len(opens) == 1 + leaves

    headings = [line for line in lines if line.startswith("#")]
    expected = ["#" * d + " " + n.name for n, d in _depths(tree)]
    assert headings == expected
    assert emit_document(_manifest(tree, **kw)) == lines
