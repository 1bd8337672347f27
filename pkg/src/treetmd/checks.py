"""Post-condition checkers for the tree rewrites.

Each checker returns a list of human-readable violations; an empty list means
every guarantee held on that instance.
"""

from __future__ import annotations

from .resolution import SensorSet, attraction_report, is_resolving, sensor_paths, shares_edge
from .resolution import _type_height
from .transforms import TransformPlan, attraction_in_leaf_path, is_leaf_path_from
from .tree import Tree


def check_transform_a(before: Tree, after: Tree, sensors: SensorSet, s: int) -> list[str]:
    problems = []
    verdict = is_resolving(after, sensors)
    if not verdict:
        problems.append(f"not resolving after rewrite: {verdict.reason}")
        return problems
    old = attraction_report(before, sensors)
    new = attraction_report(after, sensors)
    if new.single(s) != old.single(s):
        problems.append(f"attraction of {s} changed from {sorted(old.single(s))} to {sorted(new.single(s))}")
    if not is_leaf_path_from(after, s, new.single(s)):
        problems.append(f"attraction of {s} is not a pendant path")
    for t in sensors.sensors:
        if t == s:
            continue
        if is_leaf_path_from(before, t, old.single(t)):
            if new.single(t) != old.single(t) or not is_leaf_path_from(after, t, new.single(t)):
                problems.append(f"pendant attraction of sensor {t} was disturbed")
    for t in sensors.sensors:
        if t != s and not new.single(t) <= old.single(t):
            problems.append(f"attraction of sensor {t} gained vertices")
    return problems


def check_isolated_components(
    before: Tree, after: Tree, sensors: SensorSet, components, start: int
) -> list[str]:
    """Sensors in components ``start``.. must be beyond reach of everything outside their component."""
    problems = []
    k = sensors.k
    sensor_ids = set(sensors.sensors)
    for i, comp in enumerate(components):
        if i < start:
            continue
        inside = set(comp)
        for s in inside & sensor_ids:
            for tree in (before, after):
                row = tree.dist[s]
                close = [y for y in range(tree.n) if y not in inside and row[y] <= k]
                if close:
                    problems.append(f"sensor {s} in component {i} reaches {close[0]}")
                    break
    return problems


def check_sensor_locations(tree: Tree, sensors: SensorSet, plan: TransformPlan) -> list[str]:
    """Before rewrite B: sensors sit only at the three branch types, and type-q sensors lie past u_next."""
    info = plan.info
    s0, partner, q = info["s0"], info["s0_partner"], info["q"]
    branch, u_next = info["branch"], info["u_next"]
    d = tree.dist
    span = d[s0][partner]
    problems = []
    for s in sensors.sensors:
        if s in (s0, partner):
            continue
        typ = _type_height(tree, s0, partner, s).typ
        if typ not in (0, q, span):
            problems.append(f"sensor {s} has type {typ}")
        if typ == q and d[branch][u_next] + d[u_next][s] != d[branch][s]:
            problems.append(f"type-{q} sensor {s} does not lie past {u_next}")
    return problems


def check_moved_heights(tree: Tree, sensors: SensorSet, plan: TransformPlan) -> list[str]:
    """Rewrite B moves at most k - q vertices, with distinct heights no larger than k - q."""
    info = plan.info
    limit = sensors.k - info["q"]
    heights = [_type_height(tree, info["s0"], info["s0_partner"], v).hgt for v in plan.moved_vertices]
    problems = []
    if len(heights) > limit:
        problems.append(f"{len(heights)} vertices moved, limit {limit}")
    if len(set(heights)) != len(heights):
        problems.append(f"repeated heights {sorted(heights)}")
    if heights and max(heights) > limit:
        problems.append(f"height {max(heights)} exceeds {limit}")
    return problems


def check_transform_b(before: Tree, after: Tree, sensors: SensorSet, plan: TransformPlan) -> list[str]:
    problems = []
    verdict = is_resolving(after, sensors)
    if not verdict:
        return [f"not resolving after rewrite: {verdict.reason}"]
    old = attraction_report(before, sensors)
    new = attraction_report(after, sensors)
    for s in sensors.sensors:
        if new.single(s) != old.single(s):
            problems.append(f"attraction of {s} changed")
        elif not attraction_in_leaf_path(after, s, new.single(s)):
            problems.append(f"attraction of {s} left its pendant path")
    old_paths = {p.endpoints: p for p in sensor_paths(before, sensors)}
    new_paths = {p.endpoints: p for p in sensor_paths(after, sensors)}
    for key, p in new_paths.items():
        if key not in old_paths:
            problems.append(f"sensor path {key} is new")
        elif p.length > old_paths[key].length:
            problems.append(f"sensor path {key} grew")
    s0, s1 = plan.info["s0"], plan.info["s1"]
    key = (min(s0, s1), max(s0, s1))
    if key not in new_paths:
        problems.append(f"{key} is no longer a sensor path")
    else:
        if new_paths[key].length >= old_paths[key].length:
            problems.append(f"sensor path {key} did not shrink")
        if new_paths[key].strong:
            strong = [p for p in new_paths.values() if p.strong]
            if not any(shares_edge(a, b) for i, a in enumerate(strong) for b in strong[i + 1 :]):
                problems.append("shortened path became strong without creating an overlap")
    return problems


def check_transform_c(before: Tree, after: Tree, sensors: SensorSet, plan: TransformPlan) -> list[str]:
    problems = []
    if after.n != before.n + 1:
        problems.append(f"vertex count went from {before.n} to {after.n}")
    verdict = is_resolving(after, sensors)
    if not verdict:
        problems.append(f"not resolving after rewrite: {verdict.reason}")
    info = plan.info
    limit = sensors.k - (before.dist[info["s0"]][info["s0_partner"]] - info["q"])
    if len(plan.moved_vertices) > limit:
        problems.append(f"{len(plan.moved_vertices)} vertices detached, limit {limit}")
    problems += check_isolated_components(before, after, sensors, plan.components, 2)
    return problems
