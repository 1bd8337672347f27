"""Largest trees that m sensors can resolve at threshold k, and the counting formulas behind them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .resolution import SensorSet, sensor_paths
from .tree import Tree


def pair_attraction_max(k: int) -> int:
    """Most vertices two adjacent sensors can jointly attract."""
    if k < 1:
        raise ValueError(f"threshold k must be at least 1, got {k}")
    if k % 3 == 1:
        return (k * k + k + 1) // 3
    return (k * k + k) // 3


def pair_attraction_sum(d: int, k: int) -> int:
    """Direct count: vertices attracted by two sensors with d vertices strictly between them."""
    return sum(1 + min(k - i, k - (d + 1 - i)) for i in range(1, d + 1))


def sum_even(d: int, k: int) -> int:
    if d < 1 or d % 2:
        raise ValueError(f"sum_even needs a positive even gap, got {d}")
    value = d * k - Fraction(3 * d * d, 4) + Fraction(d, 2)
    assert value.denominator == 1
    return int(value)


def sum_odd(d: int, k: int) -> int:
    if d < 1 or d % 2 == 0:
        raise ValueError(f"sum_odd needs a positive odd gap, got {d}")
    value = d * k - Fraction(3 * d * d, 4) + Fraction(d, 2) + Fraction(1, 4)
    assert value.denominator == 1
    return int(value)


def optimal_gap(k: int) -> int:
    """Number of internal vertices between adjacent sensors that maximizes the pair count."""
    if k < 1:
        raise ValueError(f"threshold k must be at least 1, got {k}")
    # nearest integer to (2k+1)/3; never a tie since the denominator is 3
    return (2 * (2 * k + 1) + 3) // 6


def optimal_size(m: int, k: int) -> int:
    if m < 1 or k < 1:
        raise ValueError("m and k must be at least 1")
    return (k + 1) * m + (m - 1) * pair_attraction_max(k)


@dataclass(frozen=True)
class OptimalBlueprint:
    m: int
    k: int
    skeleton: Tree
    gap: int
    hang_lengths: tuple[int, ...]

    @classmethod
    def make(cls, m: int, k: int, skeleton: Tree | None = None) -> "OptimalBlueprint":
        if m < 1 or k < 1:
            raise ValueError("m and k must be at least 1")
        if skeleton is None:
            skeleton = Tree(m, [(i, i + 1) for i in range(m - 1)])
        elif skeleton.n != m:
            raise PreconditionError(f"skeleton has {skeleton.n} nodes, expected {m}")
        gap = optimal_gap(k)
        hangs = tuple(min(k - i, k - (gap + 1 - i)) for i in range(1, gap + 1))
        return cls(m, k, skeleton, gap, hangs)


def build_optimal(m: int, k: int, skeleton: Tree | None = None) -> tuple[Tree, SensorSet]:
    """Tree of size optimal_size(m, k) resolved by sensors 0..m-1.

    Ids: sensors first, then the internal vertices of each skeleton edge,
    then the hanging paths, then each sensor's pendant path of length k.
    """
    bp = OptimalBlueprint.make(m, k, skeleton)
    edges: list[tuple[int, int]] = []
    next_id = m
    internal: list[list[int]] = []
    for u, v in bp.skeleton.edges:
        ws = list(range(next_id, next_id + bp.gap))
        next_id += bp.gap
        chain = [u] + ws + [v]
        edges.extend(zip(chain, chain[1:]))
        internal.append(ws)
    for ws in internal:
        for w, h in zip(ws, bp.hang_lengths):
            prev = w
            for _ in range(h):
                edges.append((prev, next_id))
                prev = next_id
                next_id += 1
    for s in range(m):
        prev = s
        for _ in range(k):
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
    return Tree(next_id, edges), SensorSet(range(m), k)


def contract_sensor_paths(tree: Tree, sensors: SensorSet) -> Tree:
    """Tree on sensor indices with one edge per sensor path; nodes follow sorted sensor order."""
    index = {s: i for i, s in enumerate(sensors.sensors)}
    edges = [(index[p.endpoints[0]], index[p.endpoints[1]]) for p in sensor_paths(tree, sensors)]
    return Tree(len(index), edges)
