"""Generate literate analysis documents from a tree of computational components.

A manifest names the components (tables, plots, model summaries) stored in an
artifact file, how to load that file, and how each component type should be
presented. From it the package writes a document with YAML front matter, one
heading per tree node and one fenced code chunk per component.
"""

from .emit import (
    ChunkBlock,
    EmitError,
    emit_accessor,
    emit_chunks,
    emit_document,
    emit_setup_chunk,
    render_document,
    resolve_decorator,
)
from .headers import (
    FrontMatter,
    HeaderError,
    build_header,
    ioslides_header,
    rmarkdown_header,
    workflowr_header,
)
from .manifest import ManifestError, parse_manifest, parse_tree, read_manifest, serialize_tree
from .options import OptionSet, format_chunk_header, merge_chunk_opts
from .tree import (
    IDENTITY,
    ComponentNode,
    Decorator,
    GeneratorConfig,
    HeaderFields,
    Manifest,
    Violation,
    attach_chunk_opts,
    render_dendrogram,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "ChunkBlock",
    "ComponentNode",
    "Decorator",
    "EmitError",
    "FrontMatter",
    "GeneratorConfig",
    "HeaderError",
    "HeaderFields",
    "IDENTITY",
    "Manifest",
    "ManifestError",
    "OptionSet",
    "Violation",
    "attach_chunk_opts",
    "build_header",
    "emit_accessor",
    "emit_chunks",
    "emit_document",
    "emit_setup_chunk",
    "format_chunk_header",
    "ioslides_header",
    "merge_chunk_opts",
    "parse_manifest",
    "parse_tree",
    "read_manifest",
    "render_dendrogram",
    "render_document",
    "resolve_decorator",
    "rmarkdown_header",
    "serialize_tree",
    "validate_tree",
    "workflowr_header",
]
