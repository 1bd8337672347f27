"""Exact threshold-k metric dimension by exhaustive search, plus a greedy heuristic."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .bounds import structural_lower_bound, worst_case_lower_bound
from .errors import BoundViolationError, GuardExceededError
from .resolution import SensorSet, is_resolving
from .tree import Tree, canonical_form, enumerate_trees

BRUTE_FORCE_LIMIT = 24
SWEEP_LIMIT = 9


@dataclass(frozen=True)
class SolveResult:
    tmd: int
    witness: SensorSet
    subsets_checked: int
    method: str


def brute_force_tmd(tree: Tree, k: int) -> SolveResult:
    """Smallest resolving set, lexicographically first among those of minimum size."""
    n = tree.n
    if n > BRUTE_FORCE_LIMIT:
        raise GuardExceededError(f"exhaustive search is limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    if k < 1:
        raise ValueError(f"threshold k must be at least 1, got {k}")
    dist = tree.dist
    cap = k + 1
    full = (1 << n) - 1
    reach = [sum(1 << x for x in range(n) if dist[s][x] <= k) for s in range(n)]
    checked = 0
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            checked += 1
            mask = 0
            for s in subset:
                mask |= reach[s]
            if mask != full:
                continue
            rows = [dist[s] for s in subset]
            seen = set()
            for x in range(n):
                vec = tuple(min(r[x], cap) for r in rows)
                if vec in seen:
                    break
                seen.add(vec)
            else:
                return SolveResult(size, SensorSet(subset, k), checked, "exact")
    raise AssertionError("the full vertex set always resolves")  # pragma: no cover


def _class_pairs(classes: Iterable[list[int]]) -> int:
    return sum(len(c) * (len(c) - 1) // 2 for c in classes)


def greedy_resolving_set(tree: Tree, k: int, seed: int | None = None) -> SensorSet:
    """Greedy cover-then-separate heuristic followed by pruning.

    Candidates are scored by (newly covered vertices, newly separated pairs).
    Ties go to the smallest id, or to the earliest vertex of a seeded random
    order when ``seed`` is given.
    """
    n = tree.n
    dist = tree.dist
    cap = k + 1
    order = list(range(n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    rank = {v: i for i, v in enumerate(order)}

    chosen: list[int] = []
    covered = [False] * n
    labels: list[tuple[int, ...]] = [() for _ in range(n)]

    def unresolved() -> int:
        return _class_pairs(_groups(labels))

    current_pairs = unresolved()
    while not (all(covered) and current_pairs == 0):
        best = None
        for v in order:
            if v in chosen:
                continue
            row = dist[v]
            gain_cover = sum(1 for x in range(n) if not covered[x] and row[x] <= k)
            trial = [labels[x] + (min(row[x], cap),) for x in range(n)]
            gain_sep = current_pairs - _class_pairs(_groups(trial))
            score = (gain_cover, gain_sep, -rank[v])
            if best is None or score > best[0]:
                best = (score, v)
        v = best[1]
        chosen.append(v)
        row = dist[v]
        for x in range(n):
            if row[x] <= k:
                covered[x] = True
            labels[x] = labels[x] + (min(row[x], cap),)
        current_pairs = unresolved()

    kept = sorted(chosen)
    for s in sorted(chosen, reverse=True):
        trial = [t for t in kept if t != s]
        if trial and is_resolving(tree, SensorSet(trial, k)):
            kept = trial
    return SensorSet(kept, k)


def _groups(labels: list[tuple[int, ...]]) -> list[list[int]]:
    buckets: dict[tuple[int, ...], list[int]] = {}
    for x, lab in enumerate(labels):
        buckets.setdefault(lab, []).append(x)
    return list(buckets.values())


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    canonical_id: str
    tmd: int
    worst_bound: int
    structural_bound: int

    def as_tuple(self) -> tuple:
        return (self.n, self.k, self.canonical_id, self.tmd, self.worst_bound, self.structural_bound)


SWEEP_HEADER = ("n", "k", "canonical_id", "tmd", "worst_bound", "structural_bound")


def sweep(n_max: int, k_list: Iterable[int], n_min: int = 1) -> Iterator[SweepRow]:
    """Exact values and both bounds for every tree shape with n_min..n_max vertices."""
    if n_max > SWEEP_LIMIT:
        raise GuardExceededError(f"sweep is limited to n_max <= {SWEEP_LIMIT}, got {n_max}")
    ks = list(k_list)
    for n in range(n_min, n_max + 1):
        for tree in enumerate_trees(n, dedup=True):
            cid = canonical_form(tree).decode("ascii")
            for k in ks:
                tmd = brute_force_tmd(tree, k).tmd
                worst = worst_case_lower_bound(n, k)
                structural = structural_lower_bound(tree, k).structural_bound
                if worst > tmd or structural > tmd:
                    raise BoundViolationError(
                        f"bound exceeds exact value for n={n}, k={k}, tree {cid}: "
                        f"worst={worst}, structural={structural}, tmd={tmd}"
                    )
                yield SweepRow(n, k, cid, tmd, worst, structural)

