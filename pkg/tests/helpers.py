"""Small tree builders shared across test modules."""

from __future__ import annotations

from treetmd.tree import Tree

ACCEPTANCE_LINES: list[str] = []


def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(leaves: int) -> Tree:
    return Tree(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs) -> Tree:
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, edges)


# s=0, b1=1, z2=2, c=3, s2=4, a1=5
S, B1, Z2, C, S2, A1 = range(6)
