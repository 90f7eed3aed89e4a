"""Exact Hilbert maps on the unit square.

Four routes to the node images are provided:

* ``map_standard``: the affine contractions ``T_q`` composed on the origin,
  giving the entry corner of each dyadic sub-square;
* ``map_simplified``: the same point as a sum of ``h_q`` terms rotated by
  ``H_0``/``H_3`` powers taken from parity counters of the preceding digits;
* ``map_center``: the center-shifted map, ``T_q1 ... T_q(n-1) F_qn``;
* ``inverse_map_center``: cell back to node, one ``T_q`` undone per level.

All arithmetic is exact: ``Fraction`` for points and integer numerators
over a power of two in the kernels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from . import _backend
from .errors import RankError

Digits = tuple[int, ...]

HALF = Fraction(1, 2)


class ExactPoint(NamedTuple):
    x: Fraction
    y: Fraction

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


ORIGIN = ExactPoint(Fraction(0), Fraction(0))


def _check_digits(digits: Sequence[int]) -> Digits:
    out = tuple(int(d) for d in digits)
    for d in out:
        if d not in (0, 1, 2, 3):
            raise RankError(f"quaternary digit out of range: {d}")
    return out


def rank_to_digits(k: int, n: int) -> Digits:
    """Base-4 expansion of ``k``, most significant digit first, padded to ``n``."""
    if n < 0:
        raise RankError(f"order must be non-negative, got {n}")
    if not 0 <= k < 4 ** n:
        raise RankError(f"rank {k} out of range for order {n}")
    return tuple((k >> (2 * (n - 1 - pos))) & 3 for pos in range(n))


def digits_to_rank(digits: Sequence[int]) -> int:
    rank = 0
    for d in _check_digits(digits):
        rank = (rank << 2) | d
    return rank


def parse_digits(text: str) -> Digits:
    """``"203"`` -> ``(2, 0, 3)``; also accepts the ``0.203`` spelling."""
    s = text.strip()
    if s.startswith("0."):
        s = s[2:]
    if not s:
        return ()
    try:
        return _check_digits(int(c) for c in s)
    except ValueError as exc:
        raise RankError(f"not a quaternary digit string: {text!r}") from exc


def format_digits(digits: Sequence[int]) -> str:
    return "".join(str(d) for d in digits)


@dataclass(frozen=True)
class NodeIndex:
    """A node of the order-``n`` curve, ``t = 0.q1 q2 ... qn`` in base 4."""

    order: int
    digits: Digits

    def __post_init__(self):
        object.__setattr__(self, "digits", _check_digits(self.digits))
        if self.order < 0 or len(self.digits) != self.order:
            raise RankError(f"expected {self.order} digits, got {len(self.digits)}")

    @classmethod
    def from_rank(cls, rank: int, order: int) -> NodeIndex:
        return cls(order, rank_to_digits(rank, order))

    @classmethod
    def parse(cls, text: str) -> NodeIndex:
        d = parse_digits(text)
        return cls(len(d), d)

    @property
    def rank(self) -> int:
        return digits_to_rank(self.digits)

    @property
    def t(self) -> Fraction:
        return Fraction(self.rank, 4 ** self.order)

    def __str__(self) -> str:
        return format_digits(self.digits)


@dataclass(frozen=True, order=True)
class GridCell:
    """Sub-square ``(i, j)`` (column, row) of the ``2**n x 2**n`` grid."""

    order: int
    i: int
    j: int

    def __post_init__(self):
        side = 1 << self.order
        if not (0 <= self.i < side and 0 <= self.j < side):
            raise RankError(f"cell ({self.i}, {self.j}) outside order-{self.order} grid")

    @property
    def center(self) -> ExactPoint:
        den = 2 << self.order
        return ExactPoint(Fraction(2 * self.i + 1, den), Fraction(2 * self.j + 1, den))

    @property
    def center_numerators(self) -> tuple[int, int]:
        """Odd numerators of the center over ``2**(order + 1)``."""
        return 2 * self.i + 1, 2 * self.j + 1

    @property
    def side(self) -> Fraction:
        return Fraction(1, 1 << self.order)

    @classmethod
    def from_center(cls, point: ExactPoint, order: int) -> GridCell:
        den = 2 << order
        nx, ny = point.x * den, point.y * den
        if nx.denominator != 1 or ny.denominator != 1 or nx % 2 != 1 or ny % 2 != 1:
            raise RankError(f"{point} is not a cell center at order {order}")
        return cls(order, (int(nx) - 1) // 2, (int(ny) - 1) // 2)

    def chebyshev(self, other: GridCell) -> int:
        if other.order != self.order:
            raise ValueError("cells of different order")
        return max(abs(self.i - other.i), abs(self.j - other.j))

    def parent(self) -> GridCell:
        if self.order == 0:
            raise RankError("the root cell has no parent")
        return GridCell(self.order - 1, self.i >> 1, self.j >> 1)

    def contains(self, other: GridCell) -> bool:
        shift = other.order - self.order
        if shift < 0:
            return False
        return (other.i >> shift, other.j >> shift) == (self.i, self.j)


@dataclass(frozen=True)
class Transform:
    """``T_q(p) = H_q p / 2 + h_q / 2``."""

    tag: int
    matrix: tuple[tuple[int, int], tuple[int, int]]
    offset: tuple[int, int]

    def __call__(self, p: ExactPoint) -> ExactPoint:
        (a, b), (c, d) = self.matrix
        hx, hy = self.offset
        return ExactPoint(HALF * (a * p.x + b * p.y) + HALF * hx,
                          HALF * (c * p.x + d * p.y) + HALF * hy)


TRANSFORMS = (
    Transform(0, ((0, 1), (1, 0)), (0, 0)),
    Transform(1, ((1, 0), (0, 1)), (0, 1)),
    Transform(2, ((1, 0), (0, 1)), (1, 1)),
    Transform(3, ((0, -1), (-1, 0)), (2, 1)),
)

# F_q = T_q(1/2, 1/2): the four first-order cell centers.
CENTER_SEEDS = tuple(t(ExactPoint(HALF, HALF)) for t in TRANSFORMS)


def apply_transform(q: int, p: ExactPoint) -> ExactPoint:
    if q not in (0, 1, 2, 3):
        raise RankError(f"quaternary digit out of range: {q}")
    return TRANSFORMS[q](p)


def map_standard(node: NodeIndex) -> ExactPoint:
    """``T_q1 ... T_qn (0, 0)``: the corner where the curve enters the node's sub-square."""
    # numerators over 2**d, innermost transform first
    x = y = 0
    for d, q in enumerate(reversed(node.digits)):
        (a, b), (c, e) = TRANSFORMS[q].matrix
        hx, hy = TRANSFORMS[q].offset
        x, y = a * x + b * y + (hx << d), c * x + e * y + (hy << d)
    den = 1 << node.order
    return ExactPoint(Fraction(x, den), Fraction(y, den))


def parity_counters(digits: Sequence[int]) -> list[tuple[int, int]]:
    """``(e0j, e3j)`` for each position: counts of 0s and 3s strictly before it, mod 2."""
    out = []
    e0 = e3 = 0
    for d in digits:
        out.append((e0, e3))
        if d == 0:
            e0 ^= 1
        elif d == 3:
            e3 ^= 1
    return out


def _rotate(e0: int, e3: int, v: tuple[int, int]) -> tuple[int, int]:
    # H0^e0 H3^e3 with H3 = -H0 and H0 an involution.
    x, y = v
    if e0 ^ e3:
        x, y = y, x
    if e3:
        x, y = -x, -y
    return x, y


def map_simplified(node: NodeIndex) -> ExactPoint:
    """Closed form ``sum_j 2**-j H0^e0j H3^e3j h_qj``."""
    n = node.order
    x = y = 0
    for j, (q, (e0, e3)) in enumerate(zip(node.digits, parity_counters(node.digits)), start=1):
        hx, hy = _rotate(e0, e3, TRANSFORMS[q].offset)
        x += hx << (n - j)
        y += hy << (n - j)
    den = 1 << n
    return ExactPoint(Fraction(x, den), Fraction(y, den))


def center_by_composition(node: NodeIndex) -> ExactPoint:
    """``T_q1 ... T_q(n-1) F_qn`` evaluated with fractions."""
    if node.order == 0:
        return ExactPoint(HALF, HALF)
    p = CENTER_SEEDS[node.digits[-1]]
    for q in reversed(node.digits[:-1]):
        p = TRANSFORMS[q](p)
    return p


def center_simplified(node: NodeIndex) -> ExactPoint:
    """Summed form of the center map.

    The seed term carries the accumulated rotation of all ``n - 1`` leading
    digits and a ``2**-(n-1)`` scale; with those, it equals the composition.
    """
    n = node.order
    if n == 0:
        return ExactPoint(HALF, HALF)
    lead = node.digits[:-1]
    base = map_simplified(NodeIndex(n - 1, lead))
    e0 = lead.count(0) & 1
    e3 = lead.count(3) & 1
    seed = CENTER_SEEDS[node.digits[-1]]
    # seed has denominator 4; rotate its numerators exactly.
    sx, sy = _rotate(e0, e3, (int(seed.x * 4), int(seed.y * 4)))
    scale = Fraction(1, 4 << (n - 1))
    return ExactPoint(base.x + scale * sx, base.y + scale * sy)


def map_center(node: NodeIndex) -> GridCell:
    """Center-shifted map, returned as the cell whose center it is."""
    i, j = _backend.rank_to_cell(node.rank, node.order)
    return GridCell(node.order, i, j)


def cell_of_rank(rank: int, order: int) -> GridCell:
    if not 0 <= rank < 4 ** order:
        raise RankError(f"rank {rank} out of range for order {order}")
    i, j = _backend.rank_to_cell(rank, order)
    return GridCell(order, i, j)


def rank_of_cell(cell: GridCell) -> int:
    return _backend.cell_to_rank(cell.i, cell.j, cell.order)


def inverse_map_center(cell: GridCell) -> NodeIndex:
    return NodeIndex.from_rank(rank_of_cell(cell), cell.order)


def cell_of_digits(digits: Sequence[int]) -> GridCell:
    return cell_of_rank(digits_to_rank(digits), len(digits))


def digits_of_cell(cell: GridCell) -> Digits:
    return rank_to_digits(rank_of_cell(cell), cell.order)


@lru_cache(maxsize=16)
def curve_cell_indices(n: int) -> tuple[tuple[int, int], ...]:
    """``(i, j)`` for every rank of the order-``n`` curve (cached)."""
    if n < 0:
        raise RankError(f"order must be non-negative, got {n}")
    return tuple(_backend.curve_cells(n))


def curve_nodes(n: int) -> list[GridCell]:
    """The ``4**n`` cells in rank order; order 0 is the single root cell."""
    return [GridCell(n, i, j) for i, j in curve_cell_indices(n)]


def map_standard_fast(rank: int, order: int) -> ExactPoint:
    x, y = _backend.standard_numerators(rank, order)
    den = 1 << order
    return ExactPoint(Fraction(x, den), Fraction(y, den))
