import math

import pytest

from hilbert_coverage.corner_classifier import CornerClass, classify
from hilbert_coverage.coverage_simulator import (
    SensorView, Trace, World, no_shared_edge, run_world, share_edge, simulate, simulate_slots,
    touches_neighbourhood, verify_coverage, verify_multi_obstacle, verify_single)
from hilbert_coverage.errors import SensingContractError, TerminalNodeError, WorldError
from hilbert_coverage.hilbert_core import GridCell, NodeIndex, cell_of_rank, curve_nodes, parse_digits


def world(n, *obstacles):
    return World.from_strings(n, obstacles)


def test_obstacle_free():
    t = simulate(World(2))
    assert len(t) == 16
    assert t.cells() == curve_nodes(2)
    assert t.revisits == 0
    assert {s.event for s in t.steps} == {"normal"}


def test_detour_at_slot_twenty():
    w = world(3, "110")
    t = simulate(w)
    detours = [s.slot for s in t.steps if s.event == "detour"]
    assert detours[0] == 20
    assert verify_coverage(t, w).ok
    assert t.stats(w)["distinct_free_visited"] == 63


def test_backtrack_single_revisit():
    w = world(2, "23")
    t = simulate(w)
    report = verify_coverage(t, w)
    assert report.ok and report.revisits == 1
    assert len(w.free_cells()) == 15


def test_truncated_trace_is_caught():
    w = World(3)
    t = simulate(w)
    cut = Trace(t.order, t.steps[:-5])
    report = verify_coverage(cut, w)
    assert not report.all_free_visited and not report.ok
    assert len(report.missed) == 5 and "333" in report.missed


@pytest.mark.parametrize("n", range(1, 6))
def test_obstacle_free_path_length(n):
    assert math.isclose(simulate(World(n)).path_length, (4 ** n - 1) / 2 ** n, rel_tol=1e-12)


def test_deterministic():
    w = world(4, "1203", "3012", "2200")
    assert simulate(w).same_as(simulate(w))


def test_sensor_rejects_far_queries():
    sensor = SensorView(World(3), cell_of_rank(0, 3))
    sensor.query(GridCell(3, 1, 1))
    sensor.query(GridCell(1, 0, 0))
    with pytest.raises(SensingContractError):
        sensor.query(GridCell(3, 2, 0))


def test_planner_only_sees_the_sensor():
    # the world handed to simulate has no obstacles; the sensor's world does
    hidden = world(3, "110")
    t = simulate(World(3), SensorView(hidden, cell_of_rank(0, 3)))
    assert verify_coverage(t, hidden).ok
    assert t.same_as(simulate(hidden))


def test_queries_stay_in_neighbourhood():
    w = world(4, "0213", "1100", "3021")
    sensor = SensorView(w, cell_of_rank(0, 4))
    simulate(w, sensor)
    assert sensor.log
    assert all(touches_neighbourhood(pos, cell) for pos, cell, _ in sensor.log)


def test_online_prefix():
    # an obstacle far ahead cannot change anything the agent did before reaching it
    a = world(3, "021")
    b = world(3, "021", "230")
    late = 4 * 2 * 4 + 3 * 4  # rank of 230 is 44
    ta, tb = simulate(a), simulate(b)
    before = [s for s in ta.steps if s.slot < late - 4]
    assert tb.steps[:len(before)] == before


@pytest.mark.parametrize("n", range(2, 6))
def test_lookahead_window_is_not_local(n):
    """The t-3 .. t+4 window never fits in the sensed neighbourhood of the decision cell.

    So the window has to be computed from the map, not sensed.
    """
    for k in range(1, 4 ** n - 1):
        if not isinstance(classify(NodeIndex.from_rank(k, n)), CornerClass):
            continue
        here = cell_of_rank(k - 1, n)
        window = [cell_of_rank(r, n) for r in range(max(0, k - 3), min(4 ** n, k + 5))]
        assert not all(touches_neighbourhood(here, c) for c in window), (n, k)


def test_world_validation():
    with pytest.raises(TerminalNodeError):
        world(2, "00")
    with pytest.raises(TerminalNodeError):
        world(3, "3")
    with pytest.raises(WorldError):
        world(3, "12", "121")
    with pytest.raises(WorldError):
        world(2, "1212")


def test_coarse_obstacle():
    w = world(3, "21")
    t = simulate(w)
    assert verify_coverage(t, w).ok
    assert {"ascend"} <= {s.event for s in t.steps}


def test_dropped_rewritten_slot_is_noted():
    w = world(3, "001", "002")
    t = simulate(w)
    assert t.notes == ["dropped rewritten slot 1: cell 2 is blocked"]
    assert verify_coverage(t, w).ok


def test_slot_engine_needs_fine_obstacles():
    with pytest.raises(ValueError):
        simulate_slots(world(3, "21"))


@pytest.mark.parametrize("n,count", [(2, 14), (3, 62)])
def test_single_campaign(n, count):
    report = verify_single(n)
    assert (report.worlds, report.passes, report.failures) == (count, count, 0)


def test_pair_filter():
    a, b = parse_digits("01"), parse_digits("02")
    assert share_edge(a, b) and not no_shared_edge([a, b])
    assert no_shared_edge([parse_digits("00"), parse_digits("02")])


def test_pair_campaign_order_two():
    report = verify_multi_obstacle(2)
    assert report.worlds + report.excluded == 14 * 13 // 2
    assert report.worlds == report.passes + report.failures
    assert [c["obstacles"] for c in report.counterexamples] == [["10", "12"]]
    assert "SensingContractError" in report.counterexamples[0]["error"]


def test_run_world_reports_errors():
    trace, report, error = run_world(world(2, "10", "12"))
    assert trace is None and not report.ok and error.startswith("SensingContractError")
