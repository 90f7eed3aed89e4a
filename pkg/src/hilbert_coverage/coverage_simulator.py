"""Online traversal of the center-mapped curve with obstacle evasion.

The planner never reads the world. It walks the planned sequence slot by
slot, asks a :class:`SensorView` about the cell it is about to enter, and
rewrites the plan when that cell is blocked. Worlds whose obstacles are all
single cells run on the slot engine here; coarse obstacles are handled by
the coverage-tree walker in :mod:`nonuniform_planner`.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .corner_classifier import group_for
from .errors import HilbertCoverageError, SensingContractError, TerminalNodeError, WorldError
from .evasion_engine import (EVENT_FOR_GROUP, NORMAL, REWRITTEN, PlannedSequence, drop_slot,
                             rewrite)
from .hilbert_core import (Digits, GridCell, NodeIndex, cell_of_digits, curve_cell_indices,
                           digits_of_cell, format_digits, parse_digits, rank_of_cell,
                           rank_to_digits)

EVENTS = ("normal", "skip", "detour", "revisit", "ascend", "descend")
FIRST_VISIT_EVENTS = frozenset({"normal", "skip", "detour"})


@dataclass(frozen=True)
class World:
    """Grid order plus blocked quaternary prefixes.

    A prefix shorter than ``order`` blocks the whole coarse cell it names.
    """

    order: int
    blocked: frozenset = frozenset()
    resolution_map: Optional[object] = None

    def __post_init__(self):
        if self.order < 1:
            raise WorldError(f"order must be >= 1, got {self.order}")
        prefixes = frozenset(tuple(p) for p in self.blocked)
        object.__setattr__(self, "blocked", prefixes)
        for p in prefixes:
            if not 1 <= len(p) <= self.order:
                raise WorldError(f"obstacle {format_digits(p)!r} has length outside 1..{self.order}")
            if any(d not in (0, 1, 2, 3) for d in p):
                raise WorldError(f"obstacle {p!r} is not a quaternary string")
            if all(d == 0 for d in p) or all(d == 3 for d in p):
                raise TerminalNodeError(f"obstacle {format_digits(p)!r} covers the first or last node")
        for a in prefixes:
            for b in prefixes:
                if a != b and b[:len(a)] == a:
                    raise WorldError(f"obstacle {format_digits(a)!r} contains {format_digits(b)!r}")
        object.__setattr__(self, "_lengths", tuple(sorted({len(p) for p in prefixes})))

    @classmethod
    def from_strings(cls, order: int, obstacles: Iterable[str], resolution_map=None) -> World:
        return cls(order, frozenset(parse_digits(s) for s in obstacles), resolution_map)

    def blocking_prefix(self, digits: Sequence[int]) -> Optional[Digits]:
        """The obstacle containing the node ``digits``, if any."""
        d = tuple(digits)
        for length in self._lengths:
            if length > len(d):
                break
            if d[:length] in self.blocked:
                return d[:length]
        return None

    def is_blocked(self, cell: GridCell) -> bool:
        return self.blocking_prefix(digits_of_cell(cell)) is not None

    @property
    def is_fine(self) -> bool:
        return all(len(p) == self.order for p in self.blocked)

    def free_cells(self) -> set[GridCell]:
        n = self.order
        return {GridCell(n, i, j) for k, (i, j) in enumerate(curve_cell_indices(n))
                if self.blocking_prefix(rank_to_digits(k, n)) is None}

    def obstacle_strings(self) -> list[str]:
        return sorted(format_digits(p) for p in self.blocked)


@dataclass(frozen=True)
class Reading:
    cell: GridCell
    blocking_prefix: Optional[Digits]

    @property
    def blocked(self) -> bool:
        return self.blocking_prefix is not None

    @property
    def obstacle_size(self) -> Optional[int]:
        return None if self.blocking_prefix is None else len(self.blocking_prefix)


def touches_neighbourhood(agent: GridCell, cell: GridCell) -> bool:
    """True when ``cell`` overlaps the 3x3 block of agent-sized cells around ``agent``."""
    k = max(agent.order, cell.order)
    a = 1 << (k - agent.order)
    c = 1 << (k - cell.order)
    lo_x, hi_x = (agent.i - 1) * a, (agent.i + 2) * a
    lo_y, hi_y = (agent.j - 1) * a, (agent.j + 2) * a
    return (cell.i * c < hi_x and (cell.i + 1) * c > lo_x
            and cell.j * c < hi_y and (cell.j + 1) * c > lo_y)


class SensorView:
    """Occupancy oracle limited to the agent's 8-neighbourhood.

    The simulator moves the agent with :meth:`_move`; the planner only calls
    :meth:`query`. Every query is logged with the agent position at the time.
    """

    def __init__(self, world: World, start: GridCell):
        self._world = world
        self._position = start
        self.log: list[tuple[GridCell, GridCell, bool]] = []

    @property
    def position(self) -> GridCell:
        return self._position

    def _move(self, cell: GridCell) -> None:
        self._position = cell

    def query(self, cell: GridCell) -> Reading:
        if not touches_neighbourhood(self._position, cell):
            raise SensingContractError(
                f"cell ({cell.i}, {cell.j}) at order {cell.order} is outside the "
                f"neighbourhood of ({self._position.i}, {self._position.j}) at order {self._position.order}")
        prefix = self._world.blocking_prefix(digits_of_cell(cell))
        self.log.append((self._position, cell, prefix is not None))
        return Reading(cell, prefix)


@dataclass(frozen=True)
class Step:
    slot: int
    rank: int
    cell: GridCell
    event: str

    @property
    def order(self) -> int:
        return self.cell.order

    @property
    def t(self) -> Fraction:
        return Fraction(self.slot, 4 ** self.cell.order)

    @property
    def digits(self) -> Digits:
        return rank_to_digits(self.rank, self.cell.order)


def _distance(a: GridCell, b: GridCell) -> float:
    pa, pb = a.center, b.center
    return math.hypot(pa.x - pb.x, pa.y - pb.y)


@dataclass
class Trace:
    order: int
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def cells(self) -> list[GridCell]:
        return [s.cell for s in self.steps]

    @property
    def revisits(self) -> int:
        return sum(1 for s in self.steps if s.event == "revisit")

    @property
    def path_length(self) -> float:
        return math.fsum(_distance(a.cell, b.cell) for a, b in zip(self.steps, self.steps[1:]))

    def stats(self, world: World) -> dict:
        free = world.free_cells()
        visited = {s.cell for s in self.steps if s.cell.order == world.order}
        return {
            "steps": len(self.steps),
            "distinct_free_visited": len(visited & free),
            "free_cells": len(free),
            "revisits": self.revisits,
            "path_length": self.path_length,
        }

    def same_as(self, other: Trace) -> bool:
        return self.steps == other.steps


class _Agent:
    """Trace builder that keeps the sensor's notion of position in sync."""

    def __init__(self, trace: Trace, sensor: SensorView):
        self.trace = trace
        self.sensor = sensor
        self.visited: set[GridCell] = set()

    @property
    def cell(self) -> GridCell:
        return self.sensor.position

    def move(self, slot: int, rank: int, cell: GridCell, event: str) -> None:
        self.trace.steps.append(Step(slot, rank, cell, event))
        self.visited.add(cell)
        self.sensor._move(cell)


def simulate_slots(world: World, sensor: Optional[SensorView] = None) -> Trace:
    """Slot engine for worlds whose obstacles are single order-n cells."""
    if not world.is_fine:
        raise ValueError("slot engine needs single-cell obstacles; use simulate()")
    n = world.order
    n_slots = 4 ** n
    seq = PlannedSequence.fresh(n)
    start = seq.slots[0]
    if sensor is None:
        sensor = SensorView(world, start)
    if world.blocking_prefix(rank_to_digits(0, n)) is not None:
        raise TerminalNodeError("start node is blocked")
    trace = Trace(n)
    agent = _Agent(trace, sensor)
    agent.move(0, 0, start, "normal")
    s = 1
    while s < n_slots:
        cell = seq.slots[s]
        if cell == agent.cell:
            s += 1
            continue
        reading = sensor.query(cell)
        if reading.blocked:
            if seq.annotations[s] == NORMAL:
                group = group_for(NodeIndex.from_rank(s, n))
                seq = rewrite(seq, s, group)
                continue
            trace.notes.append(f"dropped rewritten slot {s}: cell {rank_of_cell(cell)} is blocked")
            drop_slot(seq, s, agent.cell)
            s += 1
            continue
        if cell in agent.visited:
            event = "revisit"
        elif seq.annotations[s] == REWRITTEN:
            event = EVENT_FOR_GROUP[seq.groups[s]]
        else:
            event = "normal"
        agent.move(s, rank_of_cell(cell), cell, event)
        s += 1
    return trace


def simulate(world: World, sensor: Optional[SensorView] = None) -> Trace:
    """Run the online coverage of ``world``.

    Single-cell obstacles use the slot engine; any coarse obstacle switches
    to the coverage-tree walker over a uniform order-``n`` leaf set, which
    maneuvers at the obstacle's own order.
    """
    if world.is_fine:
        return simulate_slots(world, sensor)
    from .nonuniform_planner import CoverageTree, walk

    return walk(CoverageTree.uniform(world.order), world, sensor)


@dataclass
class CoverageReport:
    all_free_visited: bool
    missed: list[str]
    incursions: list[int]
    revisits: int
    adjacency_violations: list[int]
    repeated_first_visits: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.all_free_visited and not self.incursions and not self.adjacency_violations
                and not self.repeated_first_visits)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "all_free_visited": self.all_free_visited,
            "missed": self.missed,
            "incursions": self.incursions,
            "revisits": self.revisits,
            "adjacency_violations": self.adjacency_violations,
            "repeated_first_visits": self.repeated_first_visits,
        }


def move_is_legal(a: GridCell, b: GridCell) -> bool:
    """King move at a common order, or one tree edge between parent and child."""
    if a.order == b.order:
        return a.chebyshev(b) == 1
    if abs(a.order - b.order) == 1:
        parent, child = (a, b) if a.order < b.order else (b, a)
        return parent.contains(child)
    return False


def _trace_checks(trace: Trace, world: World) -> tuple[list[int], list[int]]:
    incursions = [k for k, s in enumerate(trace.steps)
                  if world.blocking_prefix(digits_of_cell(s.cell)) is not None]
    violations = [k for k, (a, b) in enumerate(zip(trace.steps, trace.steps[1:]), start=1)
                  if not move_is_legal(a.cell, b.cell)]
    return incursions, violations


def verify_coverage(trace: Trace, world: World) -> CoverageReport:
    free = world.free_cells()
    visited = {s.cell for s in trace.steps if s.cell.order == world.order}
    missed = sorted(format_digits(digits_of_cell(c)) for c in free - visited)
    incursions, violations = _trace_checks(trace, world)
    return CoverageReport(
        all_free_visited=not missed,
        missed=missed,
        incursions=incursions,
        revisits=trace.revisits,
        adjacency_violations=violations,
    )


def run_world(world: World) -> tuple[Optional[Trace], CoverageReport, Optional[str]]:
    """simulate + verify_coverage; planner errors become a failed report."""
    try:
        trace = simulate(world)
    except HilbertCoverageError as exc:
        report = CoverageReport(False, [], [], 0, [])
        return None, report, f"{type(exc).__name__}: {exc}"
    return trace, verify_coverage(trace, world), None


@dataclass
class CampaignReport:
    order: int
    mode: str
    worlds: int = 0
    passes: int = 0
    failures: int = 0
    excluded: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "mode": self.mode,
            "worlds": self.worlds,
            "passes": self.passes,
            "failures": self.failures,
            "excluded": self.excluded,
            "counterexamples": self.counterexamples,
        }


def _evaluate(args: tuple[int, tuple[Digits, ...]]) -> Optional[dict]:
    order, obstacles = args
    world = World(order, frozenset(obstacles))
    _, report, error = run_world(world)
    if error is None and report.ok:
        return None
    entry = {"obstacles": [format_digits(p) for p in obstacles]}
    if error is not None:
        entry["error"] = error
    else:
        entry.update({k: v for k, v in report.to_dict().items() if k != "ok"})
    return entry


def _run_campaign(order: int, mode: str, worlds: list[tuple[Digits, ...]], excluded: int,
                  jobs: int) -> CampaignReport:
    report = CampaignReport(order, mode, excluded=excluded)
    tasks = [(order, w) for w in worlds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, tasks, chunksize=64))
    else:
        results = [_evaluate(t) for t in tasks]
    for result in results:
        report.worlds += 1
        if result is None:
            report.passes += 1
        else:
            report.failures += 1
            report.counterexamples.append(result)
    return report


def interior_nodes(order: int) -> list[Digits]:
    return [rank_to_digits(k, order) for k in range(1, 4 ** order - 1)]


def verify_single(order: int, jobs: int = 1) -> CampaignReport:
    """Every non-terminal single-obstacle world at ``order``."""
    return _run_campaign(order, "single", [(d,) for d in interior_nodes(order)], 0, jobs)


def share_edge(a: Digits, b: Digits) -> bool:
    ca, cb = cell_of_digits(a), cell_of_digits(b)
    return abs(ca.i - cb.i) + abs(ca.j - cb.j) == 1


def no_shared_edge(cells: Sequence[Digits]) -> bool:
    return not any(share_edge(a, b) for a, b in itertools.combinations(cells, 2))


def verify_multi_obstacle(order: int, pair_filter: Callable[[Sequence[Digits]], bool] = no_shared_edge,
                          size: int = 2, jobs: int = 1) -> CampaignReport:
    """Every ``size``-subset of interior cells accepted by ``pair_filter``.

    Failing worlds are listed in ``counterexamples``; subsets rejected by the
    filter are out of contract and only counted.
    """
    worlds = []
    excluded = 0
    for combo in itertools.combinations(interior_nodes(order), size):
        if pair_filter(combo):
            worlds.append(combo)
        else:
            excluded += 1
    mode = "pairs" if size == 2 else f"{size}-sets"
    return _run_campaign(order, mode, worlds, excluded, jobs)
