"""Random instance generators used by the test-suite and the acceptance harness."""

from __future__ import annotations

import random
from typing import Iterator

from .resolution import SensorSet, is_resolving
from .solver import greedy_resolving_set
from .transforms import condition_report, normalize_attractions
from .tree import Tree, random_tree, relabel


def random_instance(n: int, k: int, seed: int) -> tuple[Tree, SensorSet]:
    """Random labeled tree with a pruned greedy resolving set."""
    tree = random_tree(n, seed)
    return tree, greedy_resolving_set(tree, k, seed)


def _attach_path(edges: list[tuple[int, int]], start: int, length: int, next_id: int) -> tuple[int, int]:
    prev = start
    for _ in range(length):
        edges.append((prev, next_id))
        prev = next_id
        next_id += 1
    return prev, next_id


def planted_weak_candidate(k: int, rng: random.Random) -> tuple[Tree, SensorSet]:
    """A long sensor-free path between s0 and s1, each end escorted by a nearby strong partner.

    The result is not guaranteed to be resolving; callers filter.
    """
    length = rng.randint(k + 2, 2 * k + 3)
    edges: list[tuple[int, int]] = []
    main = list(range(length + 1))
    edges.extend(zip(main, main[1:]))
    next_id = length + 1
    sensors = [main[0], main[-1]]
    left_q = rng.randint(1, min(k, length - 2))
    right_q = rng.randint(1, min(k, length - left_q - 1))
    for anchor, q in ((main[left_q], left_q), (main[length - right_q], right_q)):
        reach = rng.randint(1, max(1, min(q, k + 1 - q)))
        tip, next_id = _attach_path(edges, anchor, reach, next_id)
        sensors.append(tip)
    for s in list(sensors):
        _, next_id = _attach_path(edges, s, rng.randint(0, k), next_id)
    for v in main[1:-1]:
        if rng.random() < 0.3:
            _, next_id = _attach_path(edges, v, rng.randint(1, 2), next_id)
    tree = Tree(next_id, edges)
    perm = list(range(tree.n))
    rng.shuffle(perm)
    return relabel(tree, perm), SensorSet([perm[s] for s in sensors], k)


def planted_weak_instances(k: int, seed: int, attempts: int = 10_000) -> Iterator[tuple[Tree, SensorSet]]:
    """Planted candidates that, after normalizing attractions, admit rewrite B."""
    rng = random.Random(seed)
    for _ in range(attempts):
        tree, sensors = planted_weak_candidate(k, rng)
        if not is_resolving(tree, sensors):
            continue
        tree = normalize_attractions(tree, sensors)
        if condition_report(tree, sensors).shortening.holds:
            yield tree, sensors


def overlap_instances(k: int, seed: int, n_max: int = 20, attempts: int = 10_000) -> Iterator[tuple[Tree, SensorSet]]:
    """Random normalized instances in which two strong sensor paths share an edge."""
    rng = random.Random(seed)
    for _ in range(attempts):
        n = rng.randint(3, n_max)
        tree, sensors = random_instance(n, k, rng.randrange(1 << 30))
        tree = normalize_attractions(tree, sensors)
        if condition_report(tree, sensors).overlap is not None:
            yield tree, sensors
