"""Rewriting the planned node sequence around a blocked slot.

The plan is the list of cells the agent intends to occupy at each slot
``s`` (parameter ``t = s / 4**n``). A maneuver is a short list of slot
assignments; executing the rewritten plan with consecutive duplicates
collapsed gives the agent's moves.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .corner_classifier import ManeuverGroup
from .errors import ManeuverPreconditionError
from .hilbert_core import ExactPoint, GridCell, curve_nodes

NORMAL = "normal"
REWRITTEN = "rewritten"
DROPPED = "dropped"

EVENT_FOR_GROUP = {
    ManeuverGroup.NON_CORNER_SKIP: "skip",
    ManeuverGroup.SKIP_FORWARD: "skip",
    ManeuverGroup.BACKTRACK_THREE: "revisit",
    ManeuverGroup.DETOUR_AHEAD: "detour",
}


def assignments(n_obs: int, group: ManeuverGroup) -> list[tuple[int, int]]:
    """``(dst, src)`` slot copies, applied in order."""
    if group in (ManeuverGroup.NON_CORNER_SKIP, ManeuverGroup.SKIP_FORWARD):
        return [(n_obs, n_obs + 1)]
    if group is ManeuverGroup.BACKTRACK_THREE:
        return [(n_obs, n_obs - 3)]
    if group is ManeuverGroup.DETOUR_AHEAD:
        return [(n_obs, n_obs + 3), (n_obs + 3, n_obs + 4)]
    raise ValueError(f"unknown maneuver group {group!r}")


def check_slot_range(n_obs: int, group: ManeuverGroup, n_slots: int) -> None:
    if not 0 < n_obs < n_slots - 1:
        raise ManeuverPreconditionError(f"slot {n_obs} is a terminal slot")
    touched = [s for pair in assignments(n_obs, group) for s in pair]
    if min(touched) < 0 or max(touched) >= n_slots:
        raise ManeuverPreconditionError(
            f"{group.value} at slot {n_obs} reaches outside 0..{n_slots - 1}")


def maneuver_window(n_obs: int, group: ManeuverGroup, n_slots: int) -> list[tuple[int, int]]:
    """Executed ``(slot, rank)`` pairs from ``n_obs`` until the plan is back on the curve.

    Computed on an unmodified plan, so ranks equal original slot numbers.
    Duplicates keep their first slot.
    """
    check_slot_range(n_obs, group, n_slots)
    moves = assignments(n_obs, group)
    last = max(dst for dst, _ in moves) + 1
    plan = {s: s for s in range(n_obs, last + 1)}
    for dst, src in moves:
        plan[dst] = plan.get(src, src)
    out: list[tuple[int, int]] = []
    for s in range(n_obs, last + 1):
        if out and out[-1][1] == plan[s]:
            continue
        out.append((s, plan[s]))
    return out


@dataclass
class PlannedSequence:
    order: int
    slots: list[GridCell]
    annotations: list[str]
    groups: dict[int, ManeuverGroup] = field(default_factory=dict)

    @classmethod
    def fresh(cls, order: int) -> PlannedSequence:
        cells = curve_nodes(order)
        return cls(order, cells, [NORMAL] * len(cells))

    def __len__(self) -> int:
        return len(self.slots)

    def copy(self) -> PlannedSequence:
        return PlannedSequence(self.order, list(self.slots), list(self.annotations), dict(self.groups))

    def executed(self) -> list[tuple[int, GridCell]]:
        """``(slot, cell)`` moves with consecutive duplicates collapsed onto the first slot."""
        out: list[tuple[int, GridCell]] = []
        for s, cell in enumerate(self.slots):
            if out and out[-1][1] == cell:
                continue
            out.append((s, cell))
        return out


def rewrite(seq: PlannedSequence, n_obs: int, group: ManeuverGroup) -> PlannedSequence:
    check_slot_range(n_obs, group, len(seq))
    out = seq.copy()
    for dst, src in assignments(n_obs, group):
        out.slots[dst] = out.slots[src]
        out.annotations[dst] = REWRITTEN
        out.groups[dst] = group
    return out


def drop_slot(seq: PlannedSequence, slot: int, stay: GridCell) -> None:
    """Empty a slot in place: the agent stays on ``stay`` for that step."""
    seq.slots[slot] = stay
    seq.annotations[slot] = DROPPED


@dataclass(frozen=True)
class Segment:
    start: ExactPoint
    end: ExactPoint
    t_a: Fraction
    t_b: Fraction

    def at(self, t: Fraction) -> ExactPoint:
        w = (Fraction(t) - self.t_a) / (self.t_b - self.t_a)
        return ExactPoint(self.start.x + w * (self.end.x - self.start.x),
                          self.start.y + w * (self.end.y - self.start.y))


@dataclass(frozen=True)
class Polyline:
    segments: tuple[Segment, ...]

    @property
    def points(self) -> list[ExactPoint]:
        if not self.segments:
            return []
        return [self.segments[0].start] + [s.end for s in self.segments]

    def at(self, t) -> ExactPoint:
        t = Fraction(t)
        for seg in self.segments:
            if seg.t_a <= t <= seg.t_b:
                return seg.at(t)
        raise ValueError(f"t={t} outside the traversed range")


def to_polyline(seq: PlannedSequence) -> Polyline:
    """Linear interpolation between executed cells.

    A cell held over several slots is reached at the last of them, so the
    segment into it spans every collapsed slot.
    """
    scale = 4 ** seq.order
    arrivals: list[tuple[int, GridCell]] = []
    for s, cell in enumerate(seq.slots):
        if arrivals and arrivals[-1][1] == cell:
            if len(arrivals) > 1:
                arrivals[-1] = (s, cell)
            continue
        arrivals.append((s, cell))
    segments = []
    for (sa, ca), (sb, cb) in zip(arrivals, arrivals[1:]):
        segments.append(Segment(ca.center, cb.center, Fraction(sa, scale), Fraction(sb, scale)))
    return Polyline(tuple(segments))
