"""Measurement semantics: resolving sets, direct measuring, attractions and sensor paths.

A sensor s *measures* x when d(s, x) <= k, and *directly* measures it when in
addition no other sensor sits on the s-x path. The attraction of a sensor
subset B is the set of non-sensors whose direct measurers are exactly B and
which B alone tells apart from every other non-sensor directly measured only
from inside B.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidVertexError, PreconditionError
from .tree import Edge, Tree, path_edges

SensorKey = tuple[int, ...]


@dataclass(frozen=True)
class SensorSet:
    sensors: tuple[int, ...]
    k: int

    def __init__(self, sensors: Iterable[int], k: int):
        ids = tuple(sorted(set(int(s) for s in sensors)))
        if k < 1:
            raise ValueError(f"threshold k must be at least 1, got {k}")
        object.__setattr__(self, "sensors", ids)
        object.__setattr__(self, "k", int(k))

    def __len__(self) -> int:
        return len(self.sensors)

    def __iter__(self):
        return iter(self.sensors)

    def __contains__(self, v: object) -> bool:
        return v in self.sensors

    def validate(self, tree: Tree) -> "SensorSet":
        for s in self.sensors:
            if not 0 <= s < tree.n:
                raise InvalidVertexError(f"sensor {s} out of range for n={tree.n}")
        return self


@dataclass(frozen=True)
class Verdict:
    """Outcome of a resolving check; truthy iff ok."""

    ok: bool
    uncovered: int | None = None
    pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def reason(self) -> str:
        if self.ok:
            return "ok"
        if self.uncovered is not None:
            return f"vertex {self.uncovered} is not within distance k of any sensor"
        return f"vertices {self.pair[0]} and {self.pair[1]} have equal truncated distance vectors"


def distance_vectors(tree: Tree, sensors: SensorSet) -> list[tuple[int, ...]]:
    cap = sensors.k + 1
    rows = [tree.dist[s] for s in sensors.sensors]
    return [tuple(min(r[x], cap) for r in rows) for x in range(tree.n)]


def is_resolving(tree: Tree, sensors: SensorSet) -> Verdict:
    sensors.validate(tree)
    k = sensors.k
    rows = [tree.dist[s] for s in sensors.sensors]
    for x in range(tree.n):
        if not any(r[x] <= k for r in rows):
            return Verdict(False, uncovered=x)
    first: dict[tuple[int, ...], int] = {}
    clash: tuple[int, int] | None = None
    for x, vec in enumerate(distance_vectors(tree, sensors)):
        if vec in first:
            pair = (first[vec], x)
            if clash is None or pair < clash:
                clash = pair
        else:
            first[vec] = x
    if clash is not None:
        return Verdict(False, pair=clash)
    return Verdict(True)


def require_resolving(tree: Tree, sensors: SensorSet) -> None:
    verdict = is_resolving(tree, sensors)
    if not verdict:
        raise PreconditionError(f"sensor set is not resolving: {verdict.reason}")


def _check_sensor(tree: Tree, sensors: SensorSet, s: int) -> None:
    sensors.validate(tree)
    if s not in sensors.sensors:
        raise InvalidVertexError(f"{s} is not a sensor")
    tree.check_vertex(s)


def measures(tree: Tree, sensors: SensorSet, s: int, x: int) -> bool:
    _check_sensor(tree, sensors, s)
    return tree.distance(s, x) <= sensors.k


def directly_measures(tree: Tree, sensors: SensorSet, s: int, x: int) -> bool:
    _check_sensor(tree, sensors, s)
    d = tree.dist
    if d[s][x] > sensors.k:
        return False
    return not any(t != s and d[s][t] + d[t][x] == d[s][x] for t in sensors.sensors)


def direct_measurers(tree: Tree, sensors: SensorSet) -> list[frozenset[int]]:
    """For every vertex, the set of sensors directly measuring it."""
    sensors.validate(tree)
    d = tree.dist
    k = sensors.k
    out: list[set[int]] = [set() for _ in range(tree.n)]
    for s in sensors.sensors:
        ds = d[s]
        others = [t for t in sensors.sensors if t != s]
        for x in range(tree.n):
            dx = ds[x]
            if dx <= k and not any(ds[t] + d[t][x] == dx for t in others):
                out[x].add(s)
    return [frozenset(m) for m in out]


def _unique_by_projection(
    tree: Tree, cap: int, subset: Sequence[int], candidates: Iterable[int], pool: Sequence[int]
) -> frozenset[int]:
    """Candidates whose truncated distances to ``subset`` differ from every other pool vertex."""
    rows = [tree.dist[s] for s in subset]

    def key(v: int) -> tuple[int, ...]:
        return tuple(min(r[v], cap) for r in rows)

    counts = Counter(key(y) for y in pool)
    return frozenset(x for x in candidates if counts[key(x)] == 1)


@dataclass
class AttractionReport:
    """Attractions of every sensor subset that has one, keyed by sorted sensor tuples."""

    tree: Tree
    sensors: SensorSet
    direct_measurers: list[frozenset[int]]
    attractions: dict[SensorKey, frozenset[int]]
    _within: dict[SensorKey, frozenset[int]] = field(default_factory=dict, repr=False)

    def attraction(self, subset: Iterable[int]) -> frozenset[int]:
        key = _subset_key(self.sensors, subset)
        return self.attractions.get(key, frozenset())

    def single(self, s: int) -> frozenset[int]:
        return self.attraction((s,))

    def resolved_within(self, subset: Iterable[int]) -> frozenset[int]:
        key = _subset_key(self.sensors, subset)
        if key not in self._within:
            self._within[key] = _resolved_within(self.tree, self.sensors, self.direct_measurers, key)
        return self._within[key]


def _subset_key(sensors: SensorSet, subset: Iterable[int]) -> SensorKey:
    key = tuple(sorted(set(subset)))
    if not key:
        raise PreconditionError("sensor subset must be nonempty")
    missing = [s for s in key if s not in sensors.sensors]
    if missing:
        raise PreconditionError(f"subset contains non-sensors {missing}")
    return key


def attraction_report(tree: Tree, sensors: SensorSet) -> AttractionReport:
    dm = direct_measurers(tree, sensors)
    sensor_set = set(sensors.sensors)
    nonsensors = [x for x in range(tree.n) if x not in sensor_set]
    groups: dict[SensorKey, list[int]] = {}
    for x in nonsensors:
        if dm[x]:
            groups.setdefault(tuple(sorted(dm[x])), []).append(x)
    cap = sensors.k + 1
    attractions: dict[SensorKey, frozenset[int]] = {}
    for key, members in sorted(groups.items()):
        allowed = set(key)
        pool = [y for y in nonsensors if dm[y] <= allowed]
        found = _unique_by_projection(tree, cap, key, members, pool)
        if found:
            attractions[key] = found
    return AttractionReport(tree, sensors, dm, attractions)


def attraction(tree: Tree, sensors: SensorSet, subset: Iterable[int]) -> frozenset[int]:
    key = _subset_key(sensors, subset)
    return attraction_report(tree, sensors).attractions.get(key, frozenset())


def _resolved_within(
    tree: Tree, sensors: SensorSet, dm: list[frozenset[int]], key: SensorKey
) -> frozenset[int]:
    allowed = set(key)
    sensor_set = set(sensors.sensors)
    k = sensors.k
    pool = [y for y in range(tree.n) if y not in sensor_set and dm[y] <= allowed]
    candidates = [x for x in pool if any(tree.dist[s][x] <= k for s in key)]
    return _unique_by_projection(tree, k + 1, key, candidates, pool)


def resolved_within(tree: Tree, sensors: SensorSet, subset: Iterable[int]) -> frozenset[int]:
    key = _subset_key(sensors, subset)
    return _resolved_within(tree, sensors, direct_measurers(tree, sensors), key)


# geometry relative to a sensor pair


@dataclass(frozen=True)
class TypeHeight:
    typ: int
    hgt: int


def type_height(tree: Tree, s: int, s_prime: int, x: int) -> TypeHeight:
    """Position of x relative to the s-s' path: where it branches off (typ) and how far out (hgt)."""
    for v in (s, s_prime, x):
        tree.check_vertex(v)
    if s == s_prime:
        raise PreconditionError("type/height needs two distinct reference vertices")
    if x in (s, s_prime):
        raise PreconditionError(f"vertex {x} coincides with a reference endpoint")
    return _type_height(tree, s, s_prime, x)


def _type_height(tree: Tree, s: int, s_prime: int, x: int) -> TypeHeight:
    d = tree.dist
    twice = d[x][s] - d[x][s_prime] + d[s][s_prime]
    typ = twice // 2
    return TypeHeight(typ, d[x][s] - typ)


# sensor paths


@dataclass(frozen=True)
class SensorPath:
    endpoints: tuple[int, int]
    vertices: tuple[int, ...]
    strong: bool

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def strength(self) -> str:
        return "strong" if self.strong else "weak"

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(path_edges(self.vertices))

    def sort_key(self) -> tuple[int, int, int]:
        return (self.length, self.endpoints[0], self.endpoints[1])


def sensor_paths(tree: Tree, sensors: SensorSet) -> list[SensorPath]:
    """All sensor pairs joined by a path with no sensor in its interior, sorted by (length, ids)."""
    sensors.validate(tree)
    d = tree.dist
    out = []
    for a, b in itertools.combinations(sensors.sensors, 2):
        dab = d[a][b]
        if any(t not in (a, b) and d[a][t] + d[t][b] == dab for t in sensors.sensors):
            continue
        out.append(SensorPath((a, b), tuple(tree.path(a, b)), dab <= sensors.k + 1))
    out.sort(key=SensorPath.sort_key)
    return out


def shares_edge(p1: SensorPath, p2: SensorPath) -> bool:
    return not p1.edges.isdisjoint(p2.edges)


def strong_paths_disjoint(paths: Sequence[SensorPath]) -> bool:
    """True when no edge lies on two strong sensor paths (edge-marking formulation)."""
    marked: set[Edge] = set()
    for p in paths:
        if not p.strong:
            continue
        es = p.edges
        if not marked.isdisjoint(es):
            return False
        marked |= es
    return True
