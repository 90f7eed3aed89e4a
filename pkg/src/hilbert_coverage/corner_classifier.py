"""Corner-node detection and maneuver selection.

A node whose last digit is 1 or 2 sits strictly inside a first-order curve
and can simply be skipped. A node ending in 0 (entering) or 3 (exiting) is a
corner of the sub-curve spanned by its maximal trailing run; the digit just
before that run, the run digit and the parity of the sub-curve's effective
order pick the evasive maneuver.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .errors import TerminalNodeError
from .hilbert_core import NodeIndex


class ManeuverGroup(enum.Enum):
    SKIP_FORWARD = "SkipForward"
    BACKTRACK_THREE = "BacktrackThree"
    DETOUR_AHEAD = "DetourAhead"
    NON_CORNER_SKIP = "NonCornerSkip"


@dataclass(frozen=True)
class CornerClass:
    p: int
    n_eff: int
    e: int
    q_p: int
    m: int

    @property
    def kind(self) -> str:
        return "entering" if self.m == 0 else "exiting"

    @property
    def key(self) -> tuple[int, int, int]:
        return self.e, self.q_p, self.m


@dataclass(frozen=True)
class NonCorner:
    pass


@dataclass(frozen=True)
class Terminal:
    which: str  # "start" or "end"


Classification = Union[CornerClass, NonCorner, Terminal]

MANEUVER_TABLE: dict[tuple[int, int, int], ManeuverGroup] = {
    (0, 0, 3): ManeuverGroup.SKIP_FORWARD,
    (0, 3, 0): ManeuverGroup.SKIP_FORWARD,
    (1, 1, 0): ManeuverGroup.SKIP_FORWARD,
    (1, 2, 3): ManeuverGroup.SKIP_FORWARD,
    (0, 1, 3): ManeuverGroup.SKIP_FORWARD,
    (0, 2, 0): ManeuverGroup.SKIP_FORWARD,
    (1, 0, 3): ManeuverGroup.BACKTRACK_THREE,
    (0, 2, 3): ManeuverGroup.BACKTRACK_THREE,
    (1, 1, 3): ManeuverGroup.BACKTRACK_THREE,
    (0, 1, 0): ManeuverGroup.DETOUR_AHEAD,
    (1, 3, 0): ManeuverGroup.DETOUR_AHEAD,
    (1, 2, 0): ManeuverGroup.DETOUR_AHEAD,
}

# (e, q_p, m) combinations that only the first or last node could produce.
TERMINAL_KEYS = frozenset({(0, 0, 0), (1, 0, 0), (0, 3, 3), (1, 3, 3)})


def classify(node: NodeIndex) -> Classification:
    digits = node.digits
    n = node.order
    if n < 1:
        raise ValueError("classification needs order >= 1")
    m = digits[-1]
    if m in (1, 2):
        return NonCorner()
    run = 1
    while run < n and digits[n - 1 - run] == m:
        run += 1
    if run == n:
        return Terminal("start" if m == 0 else "end")
    p = n - run
    n_eff = n - p + 1
    return CornerClass(p=p, n_eff=n_eff, e=n_eff % 2, q_p=digits[p - 1], m=m)


def maneuver_group(c: CornerClass) -> ManeuverGroup:
    try:
        return MANEUVER_TABLE[c.key]
    except KeyError:
        raise ValueError(f"no maneuver for classification {c.key}") from None


def group_for(node: NodeIndex) -> ManeuverGroup:
    """Maneuver for a blocked node; terminal nodes raise."""
    c = classify(node)
    if isinstance(c, NonCorner):
        return ManeuverGroup.NON_CORNER_SKIP
    if isinstance(c, Terminal):
        raise TerminalNodeError(f"blocked {c.which} node {node}")
    return maneuver_group(c)
