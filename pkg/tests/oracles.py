"""Slow, literal reference implementations built on networkx, used to cross-check the package."""

from __future__ import annotations

import itertools

import networkx as nx

from treetmd.tree import Tree


def to_nx(tree: Tree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(tree.n))
    g.add_edges_from(tree.edges)
    return g


def distances(tree: Tree) -> dict[int, dict[int, int]]:
    return dict(nx.all_pairs_shortest_path_length(to_nx(tree)))


def resolves(tree: Tree, sensors, k: int) -> bool:
    d = distances(tree)
    covered = all(any(d[s][x] <= k for s in sensors) for x in range(tree.n))
    vecs = {tuple(min(d[s][x], k + 1) for s in sensors) for x in range(tree.n)}
    return covered and len(vecs) == tree.n


def tmd(tree: Tree, k: int) -> int:
    for size in range(1, tree.n + 1):
        for subset in itertools.combinations(range(tree.n), size):
            if resolves(tree, subset, k):
                return size
    raise AssertionError


def direct_measurers(tree: Tree, sensors, k: int) -> dict[int, frozenset]:
    g = to_nx(tree)
    out = {}
    for x in range(tree.n):
        found = set()
        for s in sensors:
            path = nx.shortest_path(g, s, x)
            if len(path) - 1 <= k and not any(v in sensors and v != s for v in path):
                found.add(s)
        out[x] = frozenset(found)
    return out


def attraction(tree: Tree, sensors, k: int, subset) -> set[int]:
    """Literal reading: exact direct-measurer set, then separation inside the subset."""
    d = distances(tree)
    dm = direct_measurers(tree, sensors, k)
    subset = frozenset(subset)
    others = [y for y in range(tree.n) if y not in sensors and dm[y] <= subset]
    out = set()
    for x in range(tree.n):
        if x in sensors or dm[x] != subset:
            continue
        if all(
            any(min(d[s][x], k + 1) != min(d[s][y], k + 1) for s in subset) for y in others if y != x
        ):
            out.add(x)
    return out


def resolved_within(tree: Tree, sensors, k: int, subset) -> set[int]:
    d = distances(tree)
    dm = direct_measurers(tree, sensors, k)
    subset = frozenset(subset)
    pool = [y for y in range(tree.n) if y not in sensors and dm[y] <= subset]
    out = set()
    for x in pool:
        if not any(d[s][x] <= k for s in subset):
            continue
        if all(any(min(d[s][x], k + 1) != min(d[s][y], k + 1) for s in subset) for y in pool if y != x):
            out.add(x)
    return out


def isomorphic(a: Tree, b: Tree) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))
