from fractions import Fraction as F

import pytest

from hilbert_coverage.corner_classifier import ManeuverGroup, group_for
from hilbert_coverage.errors import ManeuverPreconditionError, TerminalNodeError
from hilbert_coverage.evasion_engine import (
    NORMAL, REWRITTEN, PlannedSequence, maneuver_window, rewrite, to_polyline)
from hilbert_coverage.hilbert_core import NodeIndex, cell_of_rank, curve_nodes, rank_of_cell


def executed_ranks(seq):
    return [rank_of_cell(c) for _, c in seq.executed()]


def rewritten(n, rank):
    seq = PlannedSequence.fresh(n)
    return rewrite(seq, rank, group_for(NodeIndex.from_rank(rank, n)))


def test_non_corner_skip_order_one():
    assert executed_ranks(rewritten(1, 1)) == [0, 2, 3]


def test_backtrack_three():
    seq = rewritten(2, 11)
    assert seq.slots[11] == cell_of_rank(8, 2)
    assert executed_ranks(seq) == list(range(11)) + [8] + list(range(12, 16))


def test_detour_ahead():
    seq = rewritten(2, 4)
    assert executed_ranks(seq) == [0, 1, 2, 3, 7, 5, 6, 8] + list(range(9, 16))


def test_rewrite_is_pure():
    seq = PlannedSequence.fresh(2)
    before = list(seq.slots)
    rewrite(seq, 4, ManeuverGroup.DETOUR_AHEAD)
    assert seq.slots == before and set(seq.annotations) == {NORMAL}


@pytest.mark.parametrize("group,slot", [
    (ManeuverGroup.SKIP_FORWARD, 0),
    (ManeuverGroup.SKIP_FORWARD, 15),
    (ManeuverGroup.BACKTRACK_THREE, 2),
    (ManeuverGroup.DETOUR_AHEAD, 12),
])
def test_slot_range_guard(group, slot):
    with pytest.raises(ManeuverPreconditionError):
        rewrite(PlannedSequence.fresh(2), slot, group)


@pytest.mark.parametrize("group,expected", [
    (ManeuverGroup.SKIP_FORWARD, [(5, 6)]),
    (ManeuverGroup.BACKTRACK_THREE, [(5, 2), (6, 6)]),
    (ManeuverGroup.DETOUR_AHEAD, [(5, 8), (6, 6), (7, 7), (8, 9)]),
])
def test_maneuver_window(group, expected):
    assert maneuver_window(5, group, 16) == expected


def test_polyline_identity():
    line = to_polyline(PlannedSequence.fresh(1))
    assert line.points == [c.center for c in curve_nodes(1)]
    assert len(line.segments) == 3
    assert line.at(F(1, 8)) == (F(1, 4), F(1, 2))


def test_polyline_after_skip():
    line = to_polyline(rewritten(1, 1))
    nodes = curve_nodes(1)
    assert line.points == [nodes[0].center, nodes[2].center, nodes[3].center]
    # the segment into the collapsed cell spans both collapsed slots
    assert (line.segments[0].t_a, line.segments[0].t_b) == (0, F(2, 4))


@pytest.mark.parametrize("n", range(2, 6))
def test_every_single_rewrite(n):
    """Touched slots, king adjacency and obstacle absence for every interior node."""
    fresh = PlannedSequence.fresh(n)
    for k in range(1, 4 ** n - 1):
        try:
            group = group_for(NodeIndex.from_rank(k, n))
        except TerminalNodeError:
            continue
        seq = rewrite(fresh, k, group)
        touched = {s for s, (a, b) in enumerate(zip(fresh.slots, seq.slots)) if a != b}
        allowed = {k, k + 3} if group is ManeuverGroup.DETOUR_AHEAD else {k}
        assert touched <= allowed, (n, k)
        assert {s for s, a in enumerate(seq.annotations) if a == REWRITTEN} == allowed
        blocked = fresh.slots[k]
        cells = [c for _, c in seq.executed()]
        assert blocked not in cells, (n, k)
        assert all(a.chebyshev(b) == 1 for a, b in zip(cells, cells[1:])), (n, k)
        if n <= 3:
            line = to_polyline(seq)
            assert line.points[0] == cells[0].center and line.points[-1] == cells[-1].center
