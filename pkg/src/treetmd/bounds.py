"""Closed-form lower bounds on the threshold-k metric dimension of a tree.

All arithmetic is integer-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .tree import Tree, support_profile


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _mod3_indicator(k: int) -> int:
    return 1 if k % 3 == 1 else 0


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"threshold k must be at least 1, got {k}")


def worst_case_lower_bound(n: int, k: int) -> int:
    """Fewest sensors any n-vertex tree can need at threshold k."""
    _check_k(k)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    ind = _mod3_indicator(k)
    return _ceil_div(3 * n + k * k + k + ind, k * k + 4 * k + 3 + ind)


def _split(length: int, k: int) -> tuple[int, int]:
    if length < 1:
        raise ValueError(f"leaf-path length must be positive, got {length}")
    _check_k(k)
    return divmod(length, 3 * k + 2)


def upper_complexity(length: int, k: int) -> int:
    """Sensors a leaf-path of this length needs when its anchor is not watching it."""
    q, r = _split(length, k)
    return 2 * q + (r >= 1) + (r >= 2 * k + 2)


def lower_complexity(length: int, k: int) -> int:
    """Sensors a leaf-path of this length needs when the anchor side helps."""
    q, r = _split(length, k)
    return 2 * q + (r >= k + 1) + (r >= 2 * k + 2)


def leaf_path_requirement(lengths: Sequence[int], k: int) -> int:
    """Sensors forced onto the leaf-paths hanging from one support vertex."""
    if not lengths:
        raise ValueError("need at least one leaf-path length")
    ups = [upper_complexity(x, k) for x in lengths]
    lows = [lower_complexity(x, k) for x in lengths]
    return sum(ups) - max(u - lo for u, lo in zip(ups, lows))


@dataclass(frozen=True)
class SupportDetail:
    lengths: tuple[int, ...]
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    requirement: int


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    worst_case_bound: int
    structural_bound: int
    per_support: dict[int, SupportDetail]
    leaf_vertex_total: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "worst_case_bound": self.worst_case_bound,
            "structural_bound": self.structural_bound,
            "leaf_vertex_total": self.leaf_vertex_total,
            "per_support": {
                str(v): {
                    "lengths": list(d.lengths),
                    "upper_complexity": list(d.upper),
                    "lower_complexity": list(d.lower),
                    "requirement": d.requirement,
                }
                for v, d in sorted(self.per_support.items())
            },
        }


def structural_lower_bound(tree: Tree, k: int) -> BoundReport:
    """Lower bound that charges each bundle of leaf-paths at a support vertex separately."""
    _check_k(k)
    profile = support_profile(tree)
    details: dict[int, SupportDetail] = {}
    for v, paths in sorted(profile.leaf_paths.items()):
        lengths = tuple(p.length for p in paths)
        details[v] = SupportDetail(
            lengths,
            tuple(upper_complexity(x, k) for x in lengths),
            tuple(lower_complexity(x, k) for x in lengths),
            leaf_path_requirement(lengths, k),
        )
    total = profile.leaf_vertex_total
    ind = _mod3_indicator(k)
    # the core left after stripping leaf-paths still contains every support vertex, so it is nonempty
    core = _ceil_div(3 * (tree.n - total) + k * k + k + ind, k * k + 4 * k + 3 + ind)
    structural = core + sum(d.requirement for d in details.values()) - len(details)
    return BoundReport(
        n=tree.n,
        k=k,
        worst_case_bound=worst_case_lower_bound(tree.n, k),
        structural_bound=structural,
        per_support=details,
        leaf_vertex_total=total,
    )
