import pytest

import battery
from hilbert_coverage.coverage_simulator import FIRST_VISIT_EVENTS, World, move_is_legal, simulate
from hilbert_coverage.errors import PlanningError, TerminalNodeError, WorldError
from hilbert_coverage.hilbert_core import digits_of_cell, format_digits, rank_to_digits
from hilbert_coverage.nonuniform_planner import (
    CoverageTree, ResolutionMap, build_leaves, plan_nonuniform, verify_leaf_coverage, walk)

MAPS = battery.resolution_maps()


def leaf_strings(leaves):
    return [format_digits(p) for p in leaves]


def test_uniform_map_gives_curve_order():
    leaves = build_leaves(ResolutionMap((), 3), 3)
    assert leaves == [rank_to_digits(k, 3) for k in range(64)]


def test_quadrant_refined():
    leaves = build_leaves(ResolutionMap.from_strings([("2", 3)], 2), 3)
    assert len(leaves) == 28
    assert sum(len(p) == 3 for p in leaves) == 16 and sum(len(p) == 2 for p in leaves) == 12
    assert leaves == sorted(leaves)
    assert leaf_strings(leaves)[7:9] == ["13", "200"]


def test_default_one():
    assert leaf_strings(build_leaves(ResolutionMap((), 1), 1)) == ["0", "1", "2", "3"]


def test_resolution_map_validation():
    with pytest.raises(WorldError):
        ResolutionMap.from_strings([("21", 1)], 2)
    with pytest.raises(WorldError):
        ResolutionMap.from_strings([("2", 3), ("21", 4)], 2)
    with pytest.raises(WorldError):
        build_leaves(ResolutionMap.from_strings([("2", 5)], 2), 4)


def test_tree_validation():
    with pytest.raises(WorldError):
        CoverageTree([(0,), (1,), (2,)])
    with pytest.raises(WorldError):
        CoverageTree([(1,), (0,), (2,), (3,)])


@pytest.mark.parametrize("n", [2, 3])
def test_uniform_tree_matches_flat_simulator(n):
    tree = CoverageTree.uniform(n)
    assert walk(tree, World(n)).same_as(simulate(World(n)))
    for k in range(1, 4 ** n - 1):
        w = World(n, frozenset([rank_to_digits(k, n)]))
        assert walk(tree, w).same_as(simulate(w)), k


def transitions_ok(trace):
    """Between consecutive leaf visits, order changes cost exactly |delta order| tree steps."""
    steps = trace.steps
    visits = [k for k, s in enumerate(steps) if s.event in FIRST_VISIT_EVENTS]
    for a, b in zip(visits, visits[1:]):
        between = steps[a + 1:b]
        moves = sum(1 for s in between if s.event in ("ascend", "descend"))
        if moves != abs(steps[a].order - steps[b].order) or len(between) != moves:
            return False
    return True


@pytest.mark.parametrize("rmap", MAPS, ids=[str(i) for i in range(len(MAPS))])
def test_battery_obstacle_free(rmap):
    tree = CoverageTree.from_map(rmap, battery.N_MAX)
    w = World(battery.N_MAX)
    trace = plan_nonuniform(tree, w)
    assert verify_leaf_coverage(trace, tree, w).ok
    assert transitions_ok(trace)
    assert [digits_of_cell(s.cell) for s in trace.steps if s.event == "normal"] == tree.leaves


@pytest.mark.parametrize("rmap", MAPS, ids=[str(i) for i in range(len(MAPS))])
def test_battery_with_each_obstacle(rmap):
    tree = CoverageTree.from_map(rmap, battery.N_MAX)
    placements = {p[:k] for p in tree.leaves for k in range(1, len(p) + 1)}
    for obstacle in sorted(placements):
        if obstacle in ((0,) * len(obstacle), (3,) * len(obstacle)):
            continue
        w = World(battery.N_MAX, frozenset([obstacle]))
        trace = plan_nonuniform(tree, w)
        report = verify_leaf_coverage(trace, tree, w)
        assert report.ok, (format_digits(obstacle), report.to_dict())
        assert all(move_is_legal(a.cell, b.cell) for a, b in zip(trace.steps, trace.steps[1:]))
        assert not trace.notes


def test_coarse_obstacle_handled_at_its_order():
    tree = CoverageTree.from_map(ResolutionMap.from_strings([("2", 3)], 2), 3)
    w = World.from_strings(3, ["21"])
    trace = plan_nonuniform(tree, w)
    assert verify_leaf_coverage(trace, tree, w).ok
    skip = [s for s in trace.steps if s.event == "skip"]
    assert [format_digits(digits_of_cell(s.cell)) for s in skip] == ["22"]


def test_obstacle_finer_than_leaf():
    tree = CoverageTree.uniform(2)
    with pytest.raises(PlanningError):
        plan_nonuniform(tree, World.from_strings(3, ["121"]))


def test_obstacle_inside_coarse_first_leaf():
    tree = CoverageTree.from_map(ResolutionMap((), 1), 3)
    with pytest.raises(PlanningError):
        plan_nonuniform(tree, World.from_strings(3, ["001"]))
    with pytest.raises(TerminalNodeError):
        World.from_strings(3, ["0"])


def test_missing_leaf_detected():
    tree = CoverageTree.uniform(2)
    w = World(2)
    trace = plan_nonuniform(tree, w)
    trace.steps = trace.steps[:-1]
    report = verify_leaf_coverage(trace, tree, w)
    assert report.missed == ["33"] and not report.ok
