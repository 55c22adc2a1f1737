"""Drive everything from a YAML manifest, as the command line tool does.

Equivalent shell session:

    chunkdoc validate tests/data/trial-report.yml
    chunkdoc tree tests/data/trial-report.yml
    chunkdoc generate tests/data/trial-report.yml -o trial-report.Rmd
"""

import tempfile
from pathlib import Path

from chunkdoc import read_manifest, render_dendrogram, render_document, serialize_tree

here = Path(__file__).resolve().parent
manifest = read_manifest(here.parent / "tests" / "data" / "trial-report.yml")

# Tab sets come from pandoc attributes kept verbatim in the section names.
print(render_dendrogram(manifest.root, manifest.root_label))
print()
print(serialize_tree(manifest.root, manifest.root_label))

out = Path(tempfile.mkdtemp()) / "trial-report.Rmd"
out.write_text(render_document(manifest), encoding="utf-8")
print(f"wrote {out}")
print(out.read_text(encoding="utf-8")[:400])
