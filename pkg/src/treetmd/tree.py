"""Immutable trees on vertices 0..n-1, distances, leaf-paths, generation and canonical forms."""

from __future__ import annotations

import hashlib
import heapq
import itertools
import random
import threading
from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GuardExceededError, InvalidVertexError, TreeFormatError

Edge = tuple[int, int]

ENUMERATION_LIMIT = 10


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Tree:
    """A labeled tree with a lazily built all-pairs distance table.

    Instances are immutable; rewrites produce new trees.
    """

    __slots__ = ("n", "adjacency", "edges", "_dist", "_lock", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise TreeFormatError(f"a tree needs at least one vertex, got n={n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        norm: list[Edge] = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            for x in (u, v):
                if not 0 <= x < n:
                    raise InvalidVertexError(f"vertex {x} out of range for n={n}")
            if u == v:
                raise TreeFormatError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise TreeFormatError(f"duplicate edge {u} {v}")
            adj[u].add(v)
            adj[v].add(u)
            norm.append(_norm_edge(u, v))
        if len(norm) != n - 1:
            raise TreeFormatError(f"expected {n - 1} edges, got {len(norm)}")
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            # n-1 edges and disconnected means a cycle somewhere as well
            raise TreeFormatError("edges contain a cycle or leave the graph disconnected")
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.edges: tuple[Edge, ...] = tuple(sorted(norm))
        self._dist: list[array] | None = None
        self._lock = threading.Lock()
        self._hash: str | None = None

    # basic queries

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v!r} out of range for n={self.n}")
        return v

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adjacency[v]) == 1]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def content_hash(self) -> str:
        """Hash of the labeled edge list; differs for relabeled copies."""
        if self._hash is None:
            h = hashlib.sha256(str(self.n).encode())
            for u, v in self.edges:
                h.update(f";{u},{v}".encode())
            self._hash = h.hexdigest()
        return self._hash

    # distances

    @property
    def dist(self) -> list[array]:
        """Distance table, one row per vertex. Built once on first access."""
        if self._dist is None:
            with self._lock:
                if self._dist is None:
                    self._dist = self._build_distances()
        return self._dist

    def _build_distances(self) -> list[array]:
        code = "H" if self.n <= 0xFFFF else "I"
        rows = []
        adj = self.adjacency
        for src in range(self.n):
            row = array(code, [0]) * self.n
            seen = bytearray(self.n)
            seen[src] = 1
            frontier = [src]
            d = 0
            while frontier:
                d += 1
                nxt = []
                for u in frontier:
                    for w in adj[u]:
                        if not seen[w]:
                            seen[w] = 1
                            row[w] = d
                            nxt.append(w)
                frontier = nxt
            rows.append(row)
        return rows

    def distance(self, u: int, v: int) -> int:
        self.check_vertex(u)
        self.check_vertex(v)
        return self.dist[u][v]

    def path(self, u: int, v: int) -> list[int]:
        """Vertices of the unique u-v path, endpoints included."""
        self.check_vertex(u)
        self.check_vertex(v)
        dv = self.dist[v]
        out = [u]
        cur = u
        while cur != v:
            for w in self.adjacency[cur]:
                if dv[w] == dv[cur] - 1:
                    cur = w
                    break
            out.append(cur)
        return out

    def on_path(self, u: int, v: int, x: int) -> bool:
        """True when x lies on the u-v path."""
        d = self.dist
        return d[u][x] + d[x][v] == d[u][v]

    def next_toward(self, u: int, v: int) -> int:
        """Neighbor of u on the path to v (u != v)."""
        dv = self.dist[v]
        for w in self.adjacency[u]:
            if dv[w] == dv[u] - 1:
                return w
        raise InvalidVertexError(f"{u} and {v} coincide")


def distance(tree: Tree, u: int, v: int) -> int:
    return tree.distance(u, v)


def truncated_distance(tree: Tree, u: int, v: int, k: int) -> int:
    if k < 1:
        raise ValueError("k must be at least 1")
    return min(tree.distance(u, v), k + 1)


def tree_path(tree: Tree, u: int, v: int) -> list[int]:
    return tree.path(u, v)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [_norm_edge(a, b) for a, b in zip(path, path[1:])]


# leaf-paths


@dataclass(frozen=True)
class LeafPath:
    """A maximal pendant chain: anchor (degree >= 3), then x_1..x_l ending in a leaf."""

    anchor: int
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SupportProfile:
    """Support vertices (anchors of at least two leaf-paths) and their leaf-paths.

    ``all_leaf_paths`` also lists anchors with a single leaf-path.
    """

    support_vertices: frozenset[int]
    leaf_paths: dict[int, tuple[LeafPath, ...]]
    all_leaf_paths: dict[int, tuple[LeafPath, ...]] = field(default_factory=dict)

    @property
    def leaf_vertex_total(self) -> int:
        return sum(p.length for paths in self.leaf_paths.values() for p in paths)


def support_profile(tree: Tree) -> SupportProfile:
    found: dict[int, list[LeafPath]] = {}
    for leaf in tree.leaves():
        chain = [leaf]
        prev, cur = leaf, tree.adjacency[leaf][0]
        while tree.degree(cur) == 2:
            chain.append(cur)
            a, b = tree.adjacency[cur]
            prev, cur = cur, (b if a == prev else a)
        if tree.degree(cur) >= 3:
            found.setdefault(cur, []).append(LeafPath(cur, tuple(reversed(chain))))
    all_paths = {
        v: tuple(sorted(ps, key=lambda p: p.vertices)) for v, ps in sorted(found.items())
    }
    support = {v: ps for v, ps in all_paths.items() if len(ps) >= 2}
    return SupportProfile(frozenset(support), support, all_paths)


# text format


def parse_tree(text: str) -> Tree:
    """Parse "n" followed by n-1 lines "u v". Blank lines and '#' comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TreeFormatError("empty tree description")
    try:
        n = int(lines[0])
    except ValueError:
        raise TreeFormatError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise TreeFormatError(f"edge line must have two ids: {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise TreeFormatError(f"non-integer vertex id in {ln!r}") from None
    return Tree(n, edges)


def format_tree(tree: Tree) -> str:
    return "\n".join([str(tree.n)] + [f"{u} {v}" for u, v in tree.edges]) + "\n"


# generation


def prufer_decode(seq: Sequence[int], n: int) -> Tree:
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return Tree(n, edges)


def random_tree(n: int, seed: int | None = None) -> Tree:
    rng = random.Random(seed)
    if n <= 2:
        return prufer_decode([], n)
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def enumerate_trees(n: int, dedup: bool = False) -> Iterator[Tree]:
    """All labeled trees on n vertices, or one per isomorphism class when dedup is set."""
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise GuardExceededError(f"enumeration supports 1 <= n <= {ENUMERATION_LIMIT}, got {n}")
    if not dedup:
        if n <= 2:
            yield prufer_decode([], n)
            return
        for seq in itertools.product(range(n), repeat=n - 2):
            yield prufer_decode(seq, n)
        return
    yield from _unlabeled_trees(n)


def _unlabeled_trees(n: int) -> list[Tree]:
    # grow class representatives one leaf at a time, deduplicating by canonical form
    level = [Tree(1, [])]
    for size in range(2, n + 1):
        seen: dict[bytes, Tree] = {}
        for t in level:
            for v in range(t.n):
                grown = Tree(size, list(t.edges) + [(v, size - 1)])
                seen.setdefault(canonical_form(grown), grown)
        level = [seen[key] for key in sorted(seen)]
    return level


# canonical form


def centers(tree: Tree) -> list[int]:
    if tree.n <= 2:
        return list(range(tree.n))
    deg = [tree.degree(v) for v in range(tree.n)]
    layer = [v for v in range(tree.n) if deg[v] == 1]
    remaining = tree.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for u in layer:
            for w in tree.adjacency[u]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_encoding(tree: Tree, root: int) -> bytes:
    """AHU parenthesis string of the tree rooted at ``root`` (iterative)."""
    parent = [-1] * tree.n
    order = [root]
    parent[root] = root
    for u in order:
        for w in tree.adjacency[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
    children: list[list[bytes]] = [[] for _ in range(tree.n)]
    code = b""
    for u in reversed(order):
        code = b"(" + b"".join(sorted(children[u])) + b")"
        if u != root:
            children[parent[u]].append(code)
    return code


def canonical_form(tree: Tree) -> bytes:
    return min(rooted_encoding(tree, c) for c in centers(tree))


def relabel(tree: Tree, perm: Sequence[int]) -> Tree:
    """Copy of ``tree`` with vertex v renamed to perm[v]."""
    return Tree(tree.n, [(perm[u], perm[v]) for u, v in tree.edges])
