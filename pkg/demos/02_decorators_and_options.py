"""Decorators and the three tiers of chunk options.

Chunk options are merged document-wide < decorator-wide < ad hoc. A decorator
wraps the accessor of every component whose type tags include its tag; the
first matching decorator in declaration order wins.
"""

from chunkdoc import (
    ComponentNode,
    Decorator,
    GeneratorConfig,
    attach_chunk_opts,
    emit_chunks,
    merge_chunk_opts,
    format_chunk_header,
)
from chunkdoc.tree import find_node, replace_node, root

tree = root(
    ComponentNode.leaf("Iris", ["data.frame"]),
    ComponentNode.section(
        "Sepal.Length",
        [
            ComponentNode.leaf("Sepal.Width", ["gg", "ggplot"]),
            ComponentNode.leaf("Petal.Length", ["gg", "ggplot"]),
        ],
    ),
)

config = GeneratorConfig(
    load_expr='readRDS("comp-comp2.rds")',
    imports=["ggplot2", "DT", "purrr"],
    init_block=['datatable_no_search <- partial(datatable, options = list(dom = "t"))'],
    doc_opts={"echo": False},
    decorators=[Decorator.from_spec("data.frame", "datatable_no_search")],
    decorator_opts={"ggplot": {"fig.width": 100, "fig.height": 200}},
)

print("\n".join(emit_chunks(config, tree)))

# %% One chunk gets its own option, overriding the document-wide echo = FALSE.
iris = attach_chunk_opts(find_node(tree, ["Iris"]), {"echo": True})
tree = replace_node(tree, ["Iris"], iris)
print("\n".join(emit_chunks(config, tree)[11:16]))

# %% The merge on its own.
merged = merge_chunk_opts({"echo": False, "fig.width": 7}, {"fig.width": 8}, {"echo": True})
print(format_chunk_header("r", merged))

# %% With no default decorator, unmatched components keep their heading but lose the chunk.
quiet = GeneratorConfig(
    load_expr='readRDS("comp-comp2.rds")',
    decorators=[Decorator.from_spec("data.frame", "datatable")],
    default_decorator=None,
)
print("\n".join(emit_chunks(quiet, tree)))
