"""Command line entry point: ``chunkdoc {generate,tree,validate} MANIFEST``."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional, Sequence

from .emit import EmitError, depth_violations, render_document
from .headers import FLAVORS, HeaderError
from .manifest import ManifestError, parse_manifest
from .tree import Manifest, render_dendrogram

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _load(path: Path) -> Manifest:
    return parse_manifest(_read(path))


def _report(problems) -> None:
    for problem in problems:
        print(problem, file=sys.stderr)


def default_output_path(manifest_path: Path, chunk_lang: str) -> Path:
    return manifest_path.with_suffix(".Rmd" if chunk_lang == "r" else ".md")


def apply_overrides(manifest: Manifest, args: argparse.Namespace) -> Manifest:
    changes = {
        name: getattr(args, name)
        for name in ("title", "author", "date")
        if getattr(args, name) is not None
    }
    header = dataclasses.replace(manifest.header, **changes)
    flavor = args.flavor or manifest.flavor
    if flavor != "rmarkdown" and args.flavor:
        header = dataclasses.replace(header, output=None)
    return dataclasses.replace(manifest, flavor=flavor, header=header)


def cmd_generate(args: argparse.Namespace) -> int:
    path = Path(args.manifest)
    try:
        manifest = apply_overrides(_load(path), args)
        text = render_document(manifest)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except UnicodeDecodeError as exc:
        print(f"error: {path} is not UTF-8: {exc}", file=sys.stderr)
        return EXIT_IO
    except ManifestError as exc:
        _report(exc.violations)
        return EXIT_INVALID
    except (EmitError, HeaderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    out = Path(args.output) if args.output else default_output_path(path, manifest.config.chunk_lang)
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    print(out)
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    path = Path(args.manifest)
    try:
        manifest = _load(path)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ManifestError as exc:
        _report(exc.violations)
        return EXIT_INVALID
    print(render_dendrogram(manifest.root, manifest.root_label))
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.manifest)
    try:
        manifest = _load(path)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ManifestError as exc:
        _report(exc.violations)
        return EXIT_INVALID
    problems = depth_violations(manifest.root)
    if problems:
        _report(problems)
        return EXIT_INVALID
    print("OK")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chunkdoc",
        description="Generate literate analysis documents from a component manifest.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write the document for a manifest")
    gen.add_argument("manifest")
    gen.add_argument("-o", "--output", help="output file (default: manifest name with .Rmd or .md)")
    gen.add_argument("--title")
    gen.add_argument("--author")
    gen.add_argument("--date")
    gen.add_argument("--flavor", choices=FLAVORS)
    gen.set_defaults(func=cmd_generate)

    tree = sub.add_parser("tree", help="print the component dendrogram")
    tree.add_argument("manifest")
    tree.set_defaults(func=cmd_tree)

    val = sub.add_parser("validate", help="check a manifest and list every problem")
    val.add_argument("manifest")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
