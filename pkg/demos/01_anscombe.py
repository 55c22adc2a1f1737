"""Build a small document straight from the library API.

Four scatter plots live in an artifact file written by some earlier analysis
step. The document only needs their names and types, so the tree below is
pure metadata.
"""

from chunkdoc import ComponentNode, GeneratorConfig, HeaderFields, Manifest, emit_document
from chunkdoc.tree import root

plots = ["Linear", "Non Linear", "Outlier Vertical", "Outlier Horizontal"]
tree = root(*(ComponentNode.leaf(name, ["gg", "ggplot"]) for name in plots))

config = GeneratorConfig(
    load_expr='readRDS("comp-comp.rds")',
    imports=["ggplot2"],
)

manifest = Manifest(
    flavor="rmarkdown",
    header=HeaderFields("Anscombe's Quartet", author="Francis Anscombe", date="1973"),
    config=config,
    root=tree,
)

# Names that are not plain identifiers ("Non Linear") come out backticked.
for line in emit_document(manifest):
    print(line)
