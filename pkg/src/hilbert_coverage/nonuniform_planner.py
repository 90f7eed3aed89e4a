"""Multi-resolution coverage over a Hilbert-ordered coverage tree.

The tree is implicit: a node is a quaternary prefix, its children are the
prefix extended by 0..3 (already in curve order) and its center is the
center-map image at order ``len(prefix)``. A resolution map picks the leaf
set; the walker visits leaves in prefix order.

Between leaves of different order the agent first climbs to the parent or
drops to the exit-side child (the one whose block ends where the next leaf
begins) until the orders match, then makes a single king move. A blocked
next leaf is handled at the obstacle's order: the agent climbs to the
obstacle's curve predecessor and runs the maneuver on that order's blocks,
descending into finer blocks to cover their leaves and climbing back out.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .corner_classifier import group_for
from .coverage_simulator import (FIRST_VISIT_EVENTS, CoverageReport, SensorView, Trace, World,
                                 _Agent, _trace_checks)
from .errors import PlanningError, TerminalNodeError, WorldError
from .evasion_engine import EVENT_FOR_GROUP, maneuver_window
from .hilbert_core import (Digits, ExactPoint, GridCell, NodeIndex, cell_of_digits, digits_of_cell,
                           digits_to_rank, format_digits, parse_digits, rank_to_digits)


@lru_cache(maxsize=65536)
def _cell(prefix: Digits) -> GridCell:
    return cell_of_digits(prefix)


def _rank(prefix: Digits) -> int:
    return digits_to_rank(prefix)


@dataclass(frozen=True)
class ResolutionMap:
    """Demanded curve order per region prefix, with a default elsewhere."""

    regions: tuple = ()
    default_order: int = 1

    def __post_init__(self):
        regions = tuple((tuple(p), int(o)) for p, o in self.regions)
        object.__setattr__(self, "regions", regions)
        if self.default_order < 1:
            raise WorldError("default order must be >= 1")
        for p, o in regions:
            if o < max(1, len(p)):
                raise WorldError(f"region {format_digits(p)!r} demands order {o} below its own depth")
        for (a, oa), (b, ob) in ((x, y) for x in regions for y in regions):
            if oa != ob and b[:len(a)] == a:
                raise WorldError(
                    f"regions {format_digits(a)!r} (order {oa}) and {format_digits(b)!r} (order {ob}) overlap")

    @classmethod
    def from_strings(cls, regions: Iterable[tuple[str, int]], default_order: int) -> ResolutionMap:
        return cls(tuple((parse_digits(p), o) for p, o in regions), default_order)

    @property
    def max_order(self) -> int:
        return max([self.default_order] + [o for _, o in self.regions])

    def demanded(self, prefix: Digits) -> Optional[int]:
        for p, o in self.regions:
            if prefix[:len(p)] == p:
                return o
        return None

    def has_region_below(self, prefix: Digits) -> bool:
        return any(len(p) > len(prefix) and p[:len(prefix)] == prefix for p, _ in self.regions)


def build_leaves(rmap: ResolutionMap, n_max: int) -> list[Digits]:
    """Leaves of the coverage tree in curve order."""
    if rmap.max_order > n_max:
        raise WorldError(f"resolution map demands order {rmap.max_order} > n_max {n_max}")
    leaves: list[Digits] = []

    def expand(prefix: Digits) -> None:
        demanded = rmap.demanded(prefix)
        if demanded is not None:
            split = len(prefix) < demanded
        elif rmap.has_region_below(prefix):
            split = True
        else:
            split = len(prefix) < rmap.default_order
        if split:
            for q in range(4):
                expand(prefix + (q,))
        else:
            leaves.append(prefix)

    expand(())
    return leaves


class CoverageTree:
    def __init__(self, leaves: Iterable[Sequence[int]]):
        self.leaves: list[Digits] = [tuple(leaf) for leaf in leaves]
        if not self.leaves:
            raise WorldError("empty leaf set")
        for a, b in zip(self.leaves, self.leaves[1:]):
            if not a < b or b[:len(a)] == a:
                raise WorldError(f"leaves {format_digits(a)!r}, {format_digits(b)!r} are not in curve order")
        if sum(Fraction(1, 4 ** len(leaf)) for leaf in self.leaves) != 1:
            raise WorldError("leaves do not tile the unit square")
        self._index = {leaf: k for k, leaf in enumerate(self.leaves)}
        self.max_order = max(len(leaf) for leaf in self.leaves)

    @classmethod
    def uniform(cls, order: int) -> CoverageTree:
        return cls(rank_to_digits(k, order) for k in range(4 ** order))

    @classmethod
    def from_map(cls, rmap: ResolutionMap, n_max: Optional[int] = None) -> CoverageTree:
        return cls(build_leaves(rmap, rmap.max_order if n_max is None else n_max))

    def __len__(self) -> int:
        return len(self.leaves)

    def is_leaf(self, prefix: Digits) -> bool:
        return prefix in self._index

    def leaf_range(self, prefix: Digits) -> range:
        lo = bisect.bisect_left(self.leaves, prefix)
        hi = bisect.bisect_left(self.leaves, prefix + (4,))
        return range(lo, hi)

    def leaf_containing(self, prefix: Digits) -> Optional[int]:
        """Index of the leaf equal to or coarser than ``prefix`` that contains it."""
        for k in range(len(prefix), -1, -1):
            idx = self._index.get(prefix[:k])
            if idx is not None:
                return idx
        return None

    @staticmethod
    def children(prefix: Digits) -> list[Digits]:
        return [prefix + (q,) for q in range(4)]

    @staticmethod
    def parent(prefix: Digits) -> Digits:
        if not prefix:
            raise ValueError("the root has no parent")
        return prefix[:-1]

    @staticmethod
    def center(prefix: Digits) -> ExactPoint:
        return _cell(tuple(prefix)).center


class _Blocked(Exception):
    def __init__(self, prefix: Digits):
        self.prefix = prefix


class _Walker:
    def __init__(self, tree: CoverageTree, world: World, sensor: Optional[SensorView]):
        self.tree = tree
        self.world = world
        leaves = tree.leaves
        first, last = leaves[0], leaves[-1]
        for leaf in (first, last):
            if world.blocking_prefix(leaf) is not None:
                raise TerminalNodeError(f"first or last leaf {format_digits(leaf)!r} is blocked")
        for p in world.blocked:
            idx = tree.leaf_containing(p)
            if idx is not None and len(leaves[idx]) < len(p):
                raise PlanningError(
                    f"obstacle {format_digits(p)!r} is finer than leaf {format_digits(leaves[idx])!r}")
        if sensor is None:
            sensor = SensorView(world, _cell(first))
        self.trace = Trace(tree.max_order)
        self.agent = _Agent(self.trace, sensor)
        self.sensor = sensor
        self.visited = [False] * len(leaves)
        self.blocked = [False] * len(leaves)
        self.pos: Digits = first

    # -- primitive moves -------------------------------------------------

    def _step_to(self, node: Digits, event: str, slot: Optional[int] = None,
                 rank: Optional[int] = None) -> None:
        cell = _cell(node)
        reading = self.sensor.query(cell)
        if reading.blocked:
            raise _Blocked(reading.blocking_prefix)
        r = _rank(node) if rank is None else rank
        self.agent.move(r if slot is None else slot, r, cell, event)
        self.pos = node

    def _match_order(self, order: int) -> None:
        while len(self.pos) > order:
            self._step_to(self.pos[:-1], "ascend")
        while len(self.pos) < order:
            self._step_to(self.pos + (3,), "descend")

    def _travel(self, target: Digits, event: Optional[str], slot: Optional[int] = None,
                rank: Optional[int] = None) -> None:
        pos = self.pos
        if target == pos:
            return
        if target[:len(pos)] == pos:
            for k in range(len(pos) + 1, len(target)):
                self._step_to(target[:k], "descend")
            self._step_to(target, event or "descend", slot, rank)
        elif pos[:len(target)] == target:
            for k in range(len(pos) - 1, len(target), -1):
                self._step_to(pos[:k], "ascend")
            self._step_to(target, event or "ascend", slot, rank)
        else:
            self._match_order(len(target))
            self._step_to(target, event or "normal", slot, rank)

    # -- coverage --------------------------------------------------------

    def run(self) -> Trace:
        first = self.tree.leaves[0]
        cell = _cell(first)
        self.agent.move(_rank(first), _rank(first), cell, "normal")
        self.visited[0] = True
        for k in range(1, len(self.tree)):
            if not (self.visited[k] or self.blocked[k]):
                self._visit_leaf(k)
        return self.trace

    def _visit_leaf(self, k: int) -> None:
        leaf = self.tree.leaves[k]
        try:
            self._travel(leaf, "normal")
        except _Blocked as hit:
            self._handle_obstacle(hit.prefix)
            return
        self.visited[k] = True

    def _done(self, block: Digits) -> bool:
        idx = self.tree.leaf_containing(block)
        if idx is not None:
            return self.visited[idx]
        return all(self.visited[k] or self.blocked[k] for k in self.tree.leaf_range(block))

    def _relative_at(self, order: int) -> Digits:
        pos = self.pos
        if len(pos) >= order:
            return pos[:order]
        return pos + (3,) * (order - len(pos))

    def _handle_obstacle(self, obstacle: Digits) -> None:
        for k in self.tree.leaf_range(obstacle):
            self.blocked[k] = True
        order = len(obstacle)
        n_obs = _rank(obstacle)
        group = group_for(NodeIndex(order, obstacle))
        pred = rank_to_digits(n_obs - 1, order)
        if self._relative_at(order) != pred:
            self.trace.notes.append(
                f"obstacle {format_digits(obstacle)} met away from its predecessor; bypassed")
            return
        try:
            self._match_order(order)
        except _Blocked as hit:
            self.trace.notes.append(f"obstacle {format_digits(hit.prefix)} blocks the climb; bypassed")
            return
        window = maneuver_window(n_obs, group, 4 ** order)
        for idx, (slot, rank) in enumerate(window):
            block = rank_to_digits(rank, order)
            if self._done(block):
                event = "revisit"
            elif slot == rank:
                event = "normal"
            else:
                event = EVENT_FOR_GROUP[group]
            try:
                self._step_to(block, event, slot, rank)
            except _Blocked as hit:
                self.trace.notes.append(
                    f"maneuver target {format_digits(block)} blocked by {format_digits(hit.prefix)}; dropped")
                continue
            self._cover(block)
            if idx < len(window) - 1 and self.pos != block:
                self._travel(block, None)

    def _cover(self, block: Digits) -> None:
        idx = self.tree.leaf_containing(block)
        if idx is not None:
            if self.tree.leaves[idx] == block:
                self.visited[idx] = True
            elif not self.visited[idx]:
                self._travel(self.tree.leaves[idx], "normal")
                self.visited[idx] = True
            return
        for k in self.tree.leaf_range(block):
            if not (self.visited[k] or self.blocked[k]):
                self._visit_leaf(k)


def walk(tree: CoverageTree, world: World, sensor: Optional[SensorView] = None) -> Trace:
    return _Walker(tree, world, sensor).run()


def plan_nonuniform(leaves: Sequence[Sequence[int]], world: World,
                    sensor: Optional[SensorView] = None) -> Trace:
    """Visit ``leaves`` in order with the shortcut rule and order-matched evasion."""
    tree = leaves if isinstance(leaves, CoverageTree) else CoverageTree(leaves)
    return walk(tree, world, sensor)


def verify_leaf_coverage(trace: Trace, tree: CoverageTree, world: World) -> CoverageReport:
    """Each free leaf exactly once as a first visit; no incursions; legal moves only."""
    counts = {leaf: 0 for leaf in tree.leaves if world.blocking_prefix(leaf) is None}
    for step in trace.steps:
        if step.event in FIRST_VISIT_EVENTS:
            node = digits_of_cell(step.cell)
            if node in counts:
                counts[node] += 1
    missed = [format_digits(leaf) for leaf, c in counts.items() if c == 0]
    repeated = [format_digits(leaf) for leaf, c in counts.items() if c > 1]
    incursions, violations = _trace_checks(trace, world)
    return CoverageReport(
        all_free_visited=not missed,
        missed=missed,
        incursions=incursions,
        revisits=trace.revisits,
        adjacency_violations=violations,
        repeated_first_visits=repeated,
    )
