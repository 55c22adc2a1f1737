"""Random trees and option sets, for hypothesis and for seeded bulk checks."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from chunkdoc import ComponentNode, OptionSet

NAME_ALPHABET = "abcXYZ019._ {}-/'\"#é"
TAG_POOL = ["gg", "ggplot", "data.frame", "flextable", "list", "tbl_df", "ggsurvplot"]
KEY_POOL = ["echo", "message", "warning", "fig.width", "fig.height", "results", "fig.cap", "dpi"]

names = st.text(NAME_ALPHABET, min_size=1, max_size=12).filter(lambda s: s.strip())
option_values = st.one_of(
    st.booleans(),
    st.integers(-1000, 1000),
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
    st.text("abc \"\\'x", max_size=6),
)
option_sets = st.dictionaries(st.sampled_from(KEY_POOL), option_values, max_size=5).map(OptionSet)
tag_lists = st.lists(st.sampled_from(TAG_POOL), min_size=1, max_size=3, unique=True)


def _unique_names(draw_list):
    seen, out = set(), []
    for name in draw_list:
        if name.strip() not in seen:
            seen.add(name.strip())
            out.append(name)
    return out


@st.composite
def trees(draw, max_depth: int = 4, max_children: int = 4) -> ComponentNode:
    def build(depth: int) -> tuple:
        kid_names = _unique_names(draw(st.lists(names, max_size=max_children)))
        kids = []
        for name in kid_names:
            if depth < max_depth and draw(st.booleans()):
                kids.append(ComponentNode.section(name, build(depth + 1)))
            else:
                kids.append(ComponentNode.leaf(name, draw(tag_lists), draw(option_sets)))
        return tuple(kids)

    return ComponentNode.section(None, build(1))


def random_name(rng: random.Random) -> str:
    while True:
        name = "".join(rng.choice(NAME_ALPHABET) for _ in range(rng.randint(1, 10)))
        if name.strip():
            return name


def random_options(rng: random.Random) -> OptionSet:
    entries = {}
    for key in rng.sample(KEY_POOL, rng.randint(0, 4)):
        kind = rng.randrange(4)
        if kind == 0:
            entries[key] = rng.random() < 0.5
        elif kind == 1:
            entries[key] = rng.randint(-50, 500)
        elif kind == 2:
            entries[key] = round(rng.uniform(0, 20), rng.randint(0, 3))
        else:
            entries[key] = rng.choice(["asis", "hold", 'say "hi"', "a\\b", ""])
    return OptionSet(entries)


def random_tree(rng: random.Random, max_depth: int = 5) -> ComponentNode:
    def build(depth: int) -> tuple:
        kids, seen = [], set()
        for _ in range(rng.randint(0, 4)):
            name = random_name(rng)
            if name.strip() in seen:
                continue
            seen.add(name.strip())
            if depth < max_depth and rng.random() < 0.4:
                kids.append(ComponentNode.section(name, build(depth + 1)))
            else:
                tags = rng.sample(TAG_POOL, rng.randint(1, 3))
                kids.append(ComponentNode.leaf(name, tags, random_options(rng)))
        return tuple(kids)

    return ComponentNode.section(None, build(1))


def count_nodes(tree: ComponentNode) -> tuple[int, int]:
    """Return ``(named_nodes, leaves)`` by explicit traversal."""
    named = leaves = 0
    stack = list(tree.children or ())
    while stack:
        node = stack.pop()
        named += node.name is not None
        if node.is_leaf:
            leaves += 1
        else:
            stack.extend(node.children)
    return named, leaves


def brute_force_merge(doc: dict, dec: dict, adhoc: dict) -> list[tuple]:
    keys: list = []
    for tier in (doc, dec, adhoc):
        for key in tier:
            if key not in keys:
                keys.append(key)
    out = []
    for key in keys:
        if key in adhoc:
            out.append((key, adhoc[key]))
        elif key in dec:
            out.append((key, dec[key]))
        else:
            out.append((key, doc[key]))
    return out
