"""Tree rewrites that keep a sensor set resolving while reshaping the tree around it.

Three rewrites are provided:

* ``A`` turns a sensor's single-sensor attraction into a pendant path hanging
  from that sensor.
* ``B`` shortens a longest weak sensor path. It moves the vertices hanging
  off the point where that path and a neighbouring strong path part ways.
* ``C`` inserts one new vertex next to two strong sensor paths that share
  edges, which shows the input tree was not as large as possible.

Every rewrite is split into a plan (pure data, tied to the source tree by a
content hash) and ``apply``. The drivers ``normalize_attractions``,
``shorten_weak_paths`` and ``grow_to_optimal`` iterate them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import PlanMismatchError, PreconditionError
from .resolution import (
    AttractionReport,
    SensorPath,
    SensorSet,
    _type_height,
    attraction_report,
    require_resolving,
    sensor_paths,
    shares_edge,
)
from .tree import Edge, Tree, _norm_edge


@dataclass(frozen=True)
class TransformPlan:
    kind: str
    source_hash: str
    source_n: int
    anchor: int
    removed_edges: frozenset[Edge]
    added_leafpath_edges: tuple[Edge, ...]
    reconnect_edges: tuple[Edge, ...]
    components: tuple[tuple[int, ...], ...]
    connectors: tuple[int, ...]
    moved_vertices: tuple[int, ...]
    new_vertex: int | None = None
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def result_n(self) -> int:
        return self.source_n + (1 if self.new_vertex is not None else 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "source_hash": self.source_hash,
            "anchor": self.anchor,
            "removed_edges": [list(e) for e in sorted(self.removed_edges)],
            "added_leafpath_edges": [list(e) for e in self.added_leafpath_edges],
            "reconnect_edges": [list(e) for e in self.reconnect_edges],
            "components": [list(c) for c in self.components],
            "connectors": list(self.connectors),
            "moved_vertices": list(self.moved_vertices),
            "new_vertex": self.new_vertex,
            "info": self.info,
        }


def apply(plan: TransformPlan, tree: Tree) -> Tree:
    """Rewrite ``tree`` according to ``plan``; the result is validated as a tree."""
    if tree.content_hash() != plan.source_hash:
        raise PlanMismatchError("plan was computed for a different tree")
    kept = [e for e in tree.edges if e not in plan.removed_edges]
    return Tree(plan.result_n, kept + list(plan.added_leafpath_edges) + list(plan.reconnect_edges))


# shared pieces


def _chain(start: int, vertices: Sequence[int]) -> tuple[Edge, ...]:
    seq = [start, *vertices]
    return tuple(_norm_edge(a, b) for a, b in zip(seq, seq[1:]))


def _incident(tree: Tree, vertices: Iterable[int]) -> set[Edge]:
    return {_norm_edge(v, w) for v in vertices for w in tree.adjacency[v]}


def _components(
    tree: Tree, removed_vertices: set[int], removed_edges: set[Edge], first: int, second: int | None
) -> list[tuple[int, ...]]:
    """Components of the cut tree; the one holding ``first`` comes first, then ``second``'s."""
    seen = set(removed_vertices)
    comps = []
    for start in range(tree.n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in tree.adjacency[u]:
                if w not in seen and _norm_edge(u, w) not in removed_edges:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))

    def rank(c: tuple[int, ...]) -> tuple[int, int]:
        if first in c:
            return (0, c[0])
        if second is not None and second in c:
            return (1, c[0])
        return (2, c[0])

    comps.sort(key=rank)
    return comps


def _closest(tree: Tree, target: int, comp: Sequence[int]) -> int:
    row = tree.dist[target]
    return min(comp, key=lambda v: (row[v], v))


def _order_by_distance(tree: Tree, origin: int, vertices: Iterable[int], what: str) -> tuple[int, ...]:
    row = tree.dist[origin]
    ordered = tuple(sorted(vertices, key=lambda v: (row[v], v)))
    dists = [row[v] for v in ordered]
    if len(set(dists)) != len(dists):
        raise PreconditionError(f"{what} contains two vertices at the same distance from {origin}")
    return ordered


# leaf-path predicates


def attraction_in_leaf_path(tree: Tree, s: int, vertices: Iterable[int]) -> bool:
    """True when the vertices form an initial segment of a pendant path starting at s."""
    verts = set(vertices)
    if not verts:
        return True
    row = tree.dist[s]
    ordered = sorted(verts, key=lambda v: row[v])
    prev = s
    for i, v in enumerate(ordered, start=1):
        if row[v] != i or v not in tree.adjacency[prev]:
            return False
        if i < len(ordered) and tree.degree(v) != 2:
            return False
        prev = v
    # keep walking outward; the path must end in a leaf without branching
    back, cur = (ordered[-2] if len(ordered) > 1 else s), ordered[-1]
    while tree.degree(cur) == 2:
        a, b = tree.adjacency[cur]
        back, cur = cur, (b if a == back else a)
    return tree.degree(cur) == 1


def is_leaf_path_from(tree: Tree, s: int, vertices: Iterable[int]) -> bool:
    """True when the vertices are exactly a pendant path s-v1-...-vl with vl a leaf."""
    verts = set(vertices)
    if not verts:
        return True
    if not attraction_in_leaf_path(tree, s, verts):
        return False
    far = max(verts, key=lambda v: tree.dist[s][v])
    return tree.degree(far) == 1


# selection rules


@dataclass(frozen=True)
class ShorteningCondition:
    """Whether a longest weak sensor path may be shortened."""

    attractions_in_leaf_paths: bool
    strong_paths_disjoint: bool
    weak_path_exists: bool
    longest_weak: tuple[int, int] | None
    failing_sensors: tuple[int, ...] = ()

    @property
    def holds(self) -> bool:
        return self.attractions_in_leaf_paths and self.strong_paths_disjoint and self.weak_path_exists


@dataclass(frozen=True)
class OverlapSelection:
    """Two strong sensor paths from s0 sharing the edges s0-w1-...-wq, then parting at wq."""

    s0: int
    s0_partner: int
    s1: int
    q: int
    shared: tuple[int, ...]
    u_next: int

    @property
    def branch(self) -> int:
        return self.shared[-1]


@dataclass(frozen=True)
class ConditionReport:
    shortening: ShorteningCondition
    overlap: OverlapSelection | None

    def to_dict(self) -> dict[str, Any]:
        sh = self.shortening
        out: dict[str, Any] = {
            "shortening": {
                "attractions_in_leaf_paths": sh.attractions_in_leaf_paths,
                "strong_paths_disjoint": sh.strong_paths_disjoint,
                "weak_path_exists": sh.weak_path_exists,
                "longest_weak": list(sh.longest_weak) if sh.longest_weak else None,
                "failing_sensors": list(sh.failing_sensors),
            },
            "overlap": None,
        }
        if self.overlap is not None:
            ov = self.overlap
            out["overlap"] = {
                "s0": ov.s0,
                "s0_partner": ov.s0_partner,
                "s1": ov.s1,
                "q": ov.q,
                "shared": list(ov.shared),
                "u_next": ov.u_next,
            }
        return out


def longest_weak_path(paths: Sequence[SensorPath]) -> SensorPath | None:
    weak = [p for p in paths if not p.strong]
    if not weak:
        return None
    top = max(p.length for p in weak)
    return min((p for p in weak if p.length == top), key=SensorPath.sort_key)


def select_overlap(tree: Tree, paths: Sequence[SensorPath]) -> OverlapSelection | None:
    """Shortest strong path sharing an edge with another, paired with its shortest overlapping partner."""
    strong = [p for p in paths if p.strong]
    overlapping = [p for p in strong if any(o is not p and shares_edge(p, o) for o in strong)]
    if not overlapping:
        return None
    first = min(overlapping, key=SensorPath.sort_key)
    partners = [
        o
        for o in strong
        if o is not first and shares_edge(first, o) and set(o.endpoints) & set(first.endpoints)
    ]
    if not partners:
        raise PreconditionError("overlapping strong paths without a common endpoint")
    second = min(partners, key=SensorPath.sort_key)
    (s0,) = set(first.endpoints) & set(second.endpoints)
    s0_partner = first.endpoints[0] if first.endpoints[1] == s0 else first.endpoints[1]
    s1 = second.endpoints[0] if second.endpoints[1] == s0 else second.endpoints[1]
    to_partner = tree.path(s0, s0_partner)
    to_s1 = tree.path(s0, s1)
    q = 0
    while q + 1 < min(len(to_partner), len(to_s1)) and to_partner[q + 1] == to_s1[q + 1]:
        q += 1
    d = tree.dist
    if not q <= d[s0][s0_partner] - q <= d[s0][s1] - q:
        raise PreconditionError(
            f"selected sensors {s0}, {s0_partner}, {s1} are not ordered by distance to the branch vertex"
        )
    return OverlapSelection(s0, s0_partner, s1, q, tuple(to_partner[1 : q + 1]), to_s1[q + 1])


def condition_report(tree: Tree, sensors: SensorSet, report: AttractionReport | None = None) -> ConditionReport:
    report = report or attraction_report(tree, sensors)
    failing = tuple(
        s for s in sensors.sensors if not attraction_in_leaf_path(tree, s, report.single(s))
    )
    paths = sensor_paths(tree, sensors)
    strong = [p for p in paths if p.strong]
    disjoint = not any(
        shares_edge(a, b) for i, a in enumerate(strong) for b in strong[i + 1 :]
    )
    longest = longest_weak_path(paths)
    shortening = ShorteningCondition(
        attractions_in_leaf_paths=not failing,
        strong_paths_disjoint=disjoint,
        weak_path_exists=longest is not None,
        longest_weak=longest.endpoints if longest else None,
        failing_sensors=failing,
    )
    overlap = None if disjoint else select_overlap(tree, paths)
    return ConditionReport(shortening, overlap)


# rewrite A


def plan_transform_a(tree: Tree, sensors: SensorSet, s: int) -> TransformPlan:
    """Detach the attraction of sensor s and re-hang it as a path from s."""
    sensors.validate(tree)
    if s not in sensors.sensors:
        raise PreconditionError(f"{s} is not a sensor")
    require_resolving(tree, sensors)
    moved = _order_by_distance(tree, s, attraction_report(tree, sensors).single(s), "attraction")
    removed = _incident(tree, moved)
    comps = _components(tree, set(moved), removed, s, None)
    connectors = tuple(_closest(tree, s, c) for c in comps[1:])
    return TransformPlan(
        kind="A",
        source_hash=tree.content_hash(),
        source_n=tree.n,
        anchor=s,
        removed_edges=frozenset(removed),
        added_leafpath_edges=_chain(s, moved),
        reconnect_edges=tuple(_norm_edge(s, x) for x in connectors),
        components=tuple(comps),
        connectors=connectors,
        moved_vertices=moved,
        info={"sensor": s},
    )


def transform_a(tree: Tree, sensors: SensorSet, s: int) -> Tree:
    return apply(plan_transform_a(tree, sensors, s), tree)


def normalize_attractions(tree: Tree, sensors: SensorSet) -> Tree:
    """Apply rewrite A at every sensor in increasing id order."""
    return _normalize(tree, sensors)[0]


def _normalize(tree: Tree, sensors: SensorSet) -> tuple[Tree, int]:
    changes = 0
    for s in sensors.sensors:
        nxt = transform_a(tree, sensors, s)
        if nxt != tree:
            changes += 1
        tree = nxt
    return tree, changes


# rewrite B


def _require_shortening(cond: ShorteningCondition) -> None:
    problems = []
    if not cond.attractions_in_leaf_paths:
        problems.append(f"attractions of sensors {list(cond.failing_sensors)} are not pendant paths")
    if not cond.strong_paths_disjoint:
        problems.append("two strong sensor paths share an edge")
    if not cond.weak_path_exists:
        problems.append("no weak sensor path exists")
    if problems:
        raise PreconditionError("cannot shorten: " + "; ".join(problems))


def plan_transform_b(tree: Tree, sensors: SensorSet, s0: int, s1: int) -> TransformPlan:
    """Shorten the weak sensor path s0-s1 by detaching what hangs where it leaves s0's strong neighbour."""
    sensors.validate(tree)
    require_resolving(tree, sensors)
    report = attraction_report(tree, sensors)
    cond = condition_report(tree, sensors, report).shortening
    _require_shortening(cond)
    paths = {p.endpoints: p for p in sensor_paths(tree, sensors)}
    key = (min(s0, s1), max(s0, s1))
    if key not in paths or paths[key].strong:
        raise PreconditionError(f"({s0}, {s1}) is not a weak sensor path")
    longest = max(p.length for p in paths.values() if not p.strong)
    if paths[key].length != longest:
        raise PreconditionError(f"({s0}, {s1}) is not a longest weak sensor path")

    d = tree.dist
    w1 = tree.next_toward(s0, s1)
    partners = sorted(report.direct_measurers[w1] - {s0})
    if len(partners) != 1:
        raise PreconditionError(
            f"vertex {w1} next to {s0} must be directly measured by exactly one other sensor, found {partners}"
        )
    partner = partners[0]
    to_partner = tree.path(s0, partner)
    to_s1 = tree.path(s0, s1)
    q = 0
    while to_partner[q + 1] == to_s1[q + 1]:
        q += 1
    branch = to_s1[q]
    u_next = to_s1[q + 1]

    pair_attraction = report.attraction((s0, partner))
    v1, v2 = [], []
    sensor_ids = set(sensors.sensors)
    for v in range(tree.n):
        if v in (s0, partner):
            continue
        th = _type_height(tree, s0, partner, v)
        if th.typ != q or th.hgt < 1:
            continue
        beyond = d[branch][u_next] + d[u_next][v] == d[branch][v]
        if beyond and v in pair_attraction:
            v1.append((th.hgt, v))
        elif not beyond:
            if v in sensor_ids:
                raise PreconditionError(f"sensor {v} hangs off the branch vertex {branch}")
            v2.append((th.hgt, v))
    moved = tuple(v for _, v in sorted(v1)) + tuple(v for _, v in sorted(v2))

    removed = _incident(tree, moved) | {_norm_edge(branch, u_next)}
    comps = _components(tree, set(moved), removed, s0, s1)
    connectors = tuple(_closest(tree, s0, c) for c in comps[1:])
    return TransformPlan(
        kind="B",
        source_hash=tree.content_hash(),
        source_n=tree.n,
        anchor=s0,
        removed_edges=frozenset(removed),
        added_leafpath_edges=_chain(branch, moved),
        reconnect_edges=tuple(_norm_edge(s0, x) for x in connectors),
        components=tuple(comps),
        connectors=connectors,
        moved_vertices=moved,
        info={
            "s0": s0,
            "s1": s1,
            "s0_partner": partner,
            "q": q,
            "branch": branch,
            "u_next": u_next,
            "beyond_branch": [v for _, v in sorted(v1)],
            "off_branch": [v for _, v in sorted(v2)],
        },
    )


def total_sensor_path_length(tree: Tree, sensors: SensorSet) -> int:
    return sum(p.length for p in sensor_paths(tree, sensors))


def shorten_weak_paths(
    tree: Tree, sensors: SensorSet, trace: list[tuple[TransformPlan, Tree]] | None = None
) -> Tree:
    """Apply rewrite B to a longest weak path until two strong sensor paths share an edge.

    Stops without error if the input already has such a pair or has no weak path.
    Each plan and resulting tree is appended to ``trace`` when given.
    """
    require_resolving(tree, sensors)
    total = total_sensor_path_length(tree, sensors)
    while True:
        cond = condition_report(tree, sensors).shortening
        if not cond.attractions_in_leaf_paths:
            _require_shortening(cond)
        if not cond.strong_paths_disjoint or not cond.weak_path_exists:
            return tree
        plan = plan_transform_b(tree, sensors, *cond.longest_weak)
        tree = apply(plan, tree)
        new_total = total_sensor_path_length(tree, sensors)
        if new_total >= total:
            raise PreconditionError("total sensor-path length failed to decrease")
        total = new_total
        if trace is not None:
            trace.append((plan, tree))


# rewrite C


def overlap_free_vertices(tree: Tree, sensors: SensorSet, branch: int) -> frozenset[int]:
    """Non-sensors other than ``branch`` that no sensor can measure without passing through it."""
    d = tree.dist
    k = sensors.k
    sensor_ids = set(sensors.sensors)
    out = set()
    for x in range(tree.n):
        if x == branch or x in sensor_ids:
            continue
        if all(d[s][x] >= k + 1 or d[s][branch] + d[branch][x] == d[s][x] for s in sensors.sensors):
            out.add(x)
    return frozenset(out)


def plan_transform_c(tree: Tree, sensors: SensorSet) -> TransformPlan:
    """Add one vertex next to the selected pair of edge-sharing strong sensor paths."""
    sensors.validate(tree)
    require_resolving(tree, sensors)
    report = attraction_report(tree, sensors)
    cond = condition_report(tree, sensors, report)
    if not cond.shortening.attractions_in_leaf_paths:
        raise PreconditionError(
            f"attractions of sensors {list(cond.shortening.failing_sensors)} are not pendant paths"
        )
    sel = cond.overlap
    if sel is None:
        raise PreconditionError("no two strong sensor paths share an edge")
    branch = sel.branch
    moved = _order_by_distance(tree, branch, overlap_free_vertices(tree, sensors, branch), "detached set")
    if sel.u_next in moved:
        raise PreconditionError(f"vertex {sel.u_next} after the branch vertex would be detached")
    removed = _incident(tree, moved) | {_norm_edge(branch, sel.u_next)}
    comps = _components(tree, set(moved), removed, sel.s0, sel.s1)
    connectors = tuple(_closest(tree, branch, c) for c in comps[2:])
    fresh = tree.n
    reconnect = (_norm_edge(sel.s0, fresh), _norm_edge(fresh, sel.u_next)) + tuple(
        _norm_edge(sel.s0, x) for x in connectors
    )
    return TransformPlan(
        kind="C",
        source_hash=tree.content_hash(),
        source_n=tree.n,
        anchor=branch,
        removed_edges=frozenset(removed),
        added_leafpath_edges=_chain(branch, moved),
        reconnect_edges=reconnect,
        components=tuple(comps),
        connectors=connectors,
        moved_vertices=moved,
        new_vertex=fresh,
        info={
            "s0": sel.s0,
            "s0_partner": sel.s0_partner,
            "s1": sel.s1,
            "q": sel.q,
            "branch": branch,
            "u_next": sel.u_next,
        },
    )


# driver


@dataclass(frozen=True)
class GrowResult:
    tree: Tree
    steps: int
    budget_exhausted: bool
    history: tuple[str, ...]


def extend_short_attraction(tree: Tree, sensors: SensorSet, s: int, current: Iterable[int]) -> Tree:
    """Append one vertex to the pendant path formed by the attraction of s."""
    verts = list(current)
    tip = max(verts, key=lambda v: tree.dist[s][v]) if verts else s
    return Tree(tree.n + 1, list(tree.edges) + [(tip, tree.n)])


def grow_to_optimal(tree: Tree, sensors: SensorSet, max_steps: int | None = None) -> GrowResult:
    """Rewrite and enlarge the tree while the sensor set stays resolving.

    Each round normalizes attractions, then applies C if two strong paths
    overlap, else B if a weak path exists, else lengthens the first
    attraction shorter than k. Stops when none of these apply.
    """
    require_resolving(tree, sensors)
    if max_steps is None:
        max_steps = 10 * tree.n * len(sensors)
    steps = 0
    history: list[str] = []
    while True:
        for s in sensors.sensors:
            if steps >= max_steps:
                return GrowResult(tree, steps, True, tuple(history))
            nxt = transform_a(tree, sensors, s)
            if nxt != tree:
                steps += 1
                history.append("A")
                tree = nxt
        if steps >= max_steps:
            return GrowResult(tree, steps, True, tuple(history))
        report = attraction_report(tree, sensors)
        cond = condition_report(tree, sensors, report)
        if cond.overlap is not None:
            tree = apply(plan_transform_c(tree, sensors), tree)
            history.append("C")
        elif cond.shortening.weak_path_exists:
            tree = apply(plan_transform_b(tree, sensors, *cond.shortening.longest_weak), tree)
            history.append("B")
        else:
            short = [s for s in sensors.sensors if len(report.single(s)) < sensors.k]
            if not short:
                return GrowResult(tree, steps, False, tuple(history))
            tree = extend_short_attraction(tree, sensors, short[0], report.single(short[0]))
            history.append("extend")
        steps += 1
