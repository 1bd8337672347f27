import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import A1, B1, C, S, S2, Z2, path_tree, star_tree
from treetmd.errors import InvalidVertexError, PreconditionError
from treetmd.resolution import (
    SensorSet,
    attraction,
    attraction_report,
    direct_measurers,
    directly_measures,
    is_resolving,
    measures,
    resolved_within,
    sensor_paths,
    shares_edge,
    strong_paths_disjoint,
    type_height,
)
from treetmd.solver import greedy_resolving_set
from treetmd.tree import Tree, random_tree


@st.composite
def instances(draw, resolving=True, n_max=16):
    n = draw(st.integers(2, n_max))
    k = draw(st.integers(1, 3))
    tree = random_tree(n, draw(st.integers(0, 10**6)))
    if resolving:
        return tree, greedy_resolving_set(tree, k, draw(st.integers(0, 1000)))
    size = draw(st.integers(1, n))
    sensors = draw(st.permutations(range(n)))[:size]
    return tree, SensorSet(sensors, k)


def test_is_resolving_examples():
    assert is_resolving(path_tree(5), SensorSet([1, 3], 1))
    verdict = is_resolving(star_tree(3), SensorSet([1, 2], 1))
    assert not verdict and verdict.uncovered == 3
    t = random_tree(9, 1)
    assert is_resolving(t, SensorSet(range(9), 2))


def test_is_resolving_reports_first_pair():
    # P_5 with one end sensor at k=1: vertices 2, 3, 4 all read 2, vertex 2 uncovered first
    verdict = is_resolving(path_tree(5), SensorSet([0], 1))
    assert verdict.uncovered == 2
    # P_3 with sensor 1, k=1: 0 and 2 both read 1
    verdict = is_resolving(path_tree(3), SensorSet([1], 1))
    assert verdict.pair == (0, 2)


def test_invalid_sensor_id():
    with pytest.raises(InvalidVertexError):
        is_resolving(path_tree(3), SensorSet([5], 1))
    with pytest.raises(ValueError):
        SensorSet([0], 0)


@settings(max_examples=100, deadline=None)
@given(instances(resolving=False, n_max=12))
def test_is_resolving_matches_oracle(inst):
    tree, sensors = inst
    assert bool(is_resolving(tree, sensors)) == oracles.resolves(tree, sensors.sensors, sensors.k)


def test_measuring_examples():
    p = path_tree(3)
    ss = SensorSet([0], 1)
    assert measures(p, ss, 0, 1) and directly_measures(p, ss, 0, 1)
    assert not measures(p, ss, 0, 2)
    ss = SensorSet([0, 1], 2)
    assert measures(p, ss, 0, 2) and not directly_measures(p, ss, 0, 2)
    with pytest.raises(InvalidVertexError):
        measures(p, ss, 2, 0)


@settings(max_examples=60, deadline=None)
@given(instances(resolving=False, n_max=12))
def test_direct_measurers_match_oracle(inst):
    tree, sensors = inst
    ref = oracles.direct_measurers(tree, set(sensors.sensors), sensors.k)
    assert direct_measurers(tree, sensors) == [ref[x] for x in range(tree.n)]


def test_attraction_worked_example(small_instance):
    tree, sensors = small_instance
    assert attraction(tree, sensors, [S]) == {A1, Z2}
    assert attraction(tree, sensors, [S, S2]) == {B1, C}
    assert attraction(tree, sensors, [S2]) == set()
    assert resolved_within(tree, sensors, [S, S2]) == {A1, Z2, B1, C}


def test_attraction_of_lone_sensor_is_its_path():
    k = 4
    assert attraction(path_tree(k + 1), SensorSet([0], k), [0]) == set(range(1, k + 1))


def test_attraction_rejects_foreign_subset(small_instance):
    tree, sensors = small_instance
    with pytest.raises(PreconditionError):
        attraction(tree, sensors, [B1])
    with pytest.raises(PreconditionError):
        attraction(tree, sensors, [])


def test_attraction_on_non_resolving_set_is_mechanical():
    # P_3 with the middle sensor at k=1 is not resolving; 0 and 2 cannot be told apart
    tree, sensors = path_tree(3), SensorSet([1], 1)
    assert attraction(tree, sensors, [1]) == set()


@settings(max_examples=60, deadline=None)
@given(instances(resolving=False, n_max=11))
def test_attractions_match_literal_oracle(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    sset = set(sensors.sensors)
    for size in (1, 2):
        for subset in itertools.combinations(sensors.sensors, size):
            assert report.attraction(subset) == oracles.attraction(tree, sset, sensors.k, subset)
            assert report.resolved_within(subset) == oracles.resolved_within(tree, sset, sensors.k, subset)


@settings(max_examples=80, deadline=None)
@given(instances())
def test_resolved_within_everything_is_all_non_sensors(inst):
    tree, sensors = inst
    expected = set(range(tree.n)) - set(sensors.sensors)
    assert resolved_within(tree, sensors, sensors.sensors) == expected


@settings(max_examples=80, deadline=None)
@given(instances())
def test_attractions_disjoint_and_union_identity(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    seen = set()
    for verts in report.attractions.values():
        assert seen.isdisjoint(verts)
        seen |= verts
    for size in (1, 2, 3):
        for subset in itertools.combinations(sensors.sensors, size):
            union = set()
            for r in range(1, size + 1):
                for b in itertools.combinations(subset, r):
                    union |= report.attraction(b)
            assert report.resolved_within(subset) == union


@settings(max_examples=60, deadline=None)
@given(instances())
def test_resolved_within_is_monotone(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    for a, b in itertools.combinations(sensors.sensors, 2):
        both = report.resolved_within((a, b))
        assert report.resolved_within((a,)) <= both
        assert report.resolved_within((b,)) <= both


@settings(max_examples=80, deadline=None)
@given(instances())
def test_single_attraction_small_with_distinct_distances(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    for s in sensors.sensors:
        verts = report.single(s)
        assert len(verts) <= sensors.k
        dists = [tree.distance(s, v) for v in verts]
        assert len(set(dists)) == len(dists)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_measuring_path_avoids_foreign_attraction(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    k = sensors.k
    for key, verts in report.attractions.items():
        inside = set(key)
        for s in sensors.sensors:
            if s in inside:
                continue
            for x in range(tree.n):
                if tree.distance(s, x) > k:
                    continue
                path = tree.path(s, x)
                if inside.isdisjoint(path):
                    assert verts.isdisjoint(path)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_type_difference_separates(inst):
    tree, sensors = inst
    k = sensors.k
    d = tree.dist

    def dk(a, b):
        return min(d[a][b], k + 1)

    for s, s2 in itertools.permutations(sensors.sensors, 2):
        seen_s = [x for x in range(tree.n) if d[s][x] <= k and x not in (s, s2)]
        seen_s2 = [x for x in range(tree.n) if d[s2][x] <= k and x not in (s, s2)]
        for x in seen_s:
            tx = type_height(tree, s, s2, x).typ
            for y in seen_s2:
                if type_height(tree, s, s2, y).typ != tx:
                    assert dk(s, x) != dk(s, y) or dk(s2, x) != dk(s2, y)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_pair_attraction_hangs_from_path_interior(inst):
    tree, sensors = inst
    report = attraction_report(tree, sensors)
    for key, verts in report.attractions.items():
        if len(key) != 2:
            continue
        a, b = key
        span = tree.distance(a, b)
        for x in verts:
            th = type_height(tree, a, b, x)
            assert 1 <= th.typ <= span - 1
            foot = tree.path(a, b)[th.typ]
            others = set(sensors.sensors) - {a, b}
            assert others.isdisjoint(tree.path(a, b))
            assert others.isdisjoint(tree.path(foot, x))


def test_type_height_examples():
    # s=0 - w1=1 - w2=2 - s'=3, x=4 hangs from w1, 5 extends beyond s
    t = Tree(6, [(0, 1), (1, 2), (2, 3), (1, 4), (0, 5)])
    th = type_height(t, 0, 3, 4)
    assert (th.typ, th.hgt) == (1, 1)
    assert type_height(t, 0, 3, 5).typ == 0
    th = type_height(t, 0, 3, 2)
    assert (th.typ, th.hgt) == (2, 0)
    with pytest.raises(PreconditionError):
        type_height(t, 0, 3, 3)
    with pytest.raises(PreconditionError):
        type_height(t, 0, 0, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 25), st.integers(0, 10**6), st.data())
def test_type_height_bijective(n, seed, data):
    tree = random_tree(n, seed)
    s, s2 = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    span = tree.distance(s, s2)
    for x in range(n):
        if x in (s, s2):
            continue
        th = type_height(tree, s, s2, x)
        assert 0 <= th.typ <= span and th.hgt >= 0
        assert tree.distance(x, s) == th.typ + th.hgt
        assert tree.distance(x, s2) == span - th.typ + th.hgt


def test_sensor_path_examples():
    paths = sensor_paths(path_tree(5), SensorSet([1, 3], 1))
    assert [(p.endpoints, p.strong) for p in paths] == [((1, 3), True)]
    paths = sensor_paths(path_tree(6), SensorSet([0, 5], 1))
    assert [(p.endpoints, p.strength, p.length) for p in paths] == [((0, 5), "weak", 5)]
    paths = sensor_paths(path_tree(7), SensorSet([0, 3, 6], 2))
    assert sorted(p.endpoints for p in paths) == [(0, 3), (3, 6)]


def test_shares_edge_examples():
    # spider with legs of length 2: sensors at the three tips
    t = Tree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    paths = {p.endpoints: p for p in sensor_paths(t, SensorSet([2, 4, 6], 4))}
    assert shares_edge(paths[(2, 4)], paths[(2, 6)])
    assert shares_edge(paths[(2, 4)], paths[(4, 6)])
    # paths meeting at one vertex only: 0-1-2 and 2-3-4 on a path with sensors 0, 2, 4
    p = {q.endpoints: q for q in sensor_paths(path_tree(5), SensorSet([0, 2, 4], 2))}
    assert not shares_edge(p[(0, 2)], p[(2, 4)])


@settings(max_examples=80, deadline=None)
@given(instances(resolving=False, n_max=16))
def test_pairwise_and_marking_disjointness_agree(inst):
    tree, sensors = inst
    paths = sensor_paths(tree, sensors)
    strong = [p for p in paths if p.strong]
    pairwise = not any(shares_edge(a, b) for a, b in itertools.combinations(strong, 2))
    assert pairwise == strong_paths_disjoint(paths)


@settings(max_examples=60, deadline=None)
@given(instances(resolving=False, n_max=14))
def test_sensor_paths_have_no_interior_sensors(inst):
    tree, sensors = inst
    sset = set(sensors.sensors)
    found = {p.endpoints for p in sensor_paths(tree, sensors)}
    for a, b in itertools.combinations(sensors.sensors, 2):
        clean = sset.isdisjoint(tree.path(a, b)[1:-1])
        assert ((a, b) in found) == clean
    for p in sensor_paths(tree, sensors):
        assert p.strong == (p.length <= sensors.k + 1)


def test_random_instances_resolve_everything_outside_sensors():
    rng = random.Random(3)
    for _ in range(50):
        tree = random_tree(rng.randint(2, 18), rng.randrange(10**6))
        sensors = greedy_resolving_set(tree, rng.randint(1, 3))
        report = attraction_report(tree, sensors)
        covered = set().union(*report.attractions.values()) if report.attractions else set()
        assert covered == set(range(tree.n)) - set(sensors.sensors)
