"""Trace tables and JSON reports.

Coordinates have power-of-two denominators, so their decimal expansions
terminate; ``x`` and ``y`` are written exactly, ``t`` as a reduced fraction.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, TextIO

from .coverage_simulator import Step, Trace
from .errors import ParseError
from .hilbert_core import cell_of_digits, digits_to_rank, format_digits, parse_digits

TRACE_HEADER = ("slot", "t", "rank", "digits", "x", "y", "event")
NODE_HEADER = ("rank", "digits", "x", "y")


def exact_decimal(value: Fraction) -> str:
    """Terminating decimal for a dyadic rational, e.g. ``5/8 -> '0.625'``."""
    value = Fraction(value)
    den = value.denominator
    k = den.bit_length() - 1
    if den != 1 << k:
        raise ValueError(f"{value} does not have a power-of-two denominator")
    if k == 0:
        return str(value.numerator)
    sign = "-" if value < 0 else ""
    scaled = abs(value.numerator) * 5 ** k
    whole, frac = divmod(scaled, 10 ** k)
    return f"{sign}{whole}.{frac:0{k}d}".rstrip("0").rstrip(".")


def step_row(step: Step) -> list[str]:
    c = step.cell.center
    return [str(step.slot), str(step.t), str(step.rank), format_digits(step.digits),
            exact_decimal(c.x), exact_decimal(c.y), step.event]


def write_trace_csv(trace: Trace, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for step in trace.steps:
        writer.writerow(step_row(step))


def trace_to_csv(trace: Trace) -> str:
    buf = io.StringIO()
    write_trace_csv(trace, buf)
    return buf.getvalue()


def read_trace_csv(src: TextIO) -> Trace:
    reader = csv.reader(src)
    header = next(reader, None)
    if tuple(header or ()) != TRACE_HEADER:
        raise ParseError(f"expected header {','.join(TRACE_HEADER)}", 1, 1)
    steps = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(TRACE_HEADER):
            raise ParseError(f"expected {len(TRACE_HEADER)} fields, got {len(row)}", lineno, 1)
        slot, _t, rank, digits, _x, _y, event = row
        d = parse_digits(digits)
        if digits_to_rank(d) != int(rank):
            raise ParseError(f"rank {rank} does not match digits {digits}", lineno, 1)
        steps.append(Step(int(slot), int(rank), cell_of_digits(d), event))
    order = max((s.cell.order for s in steps), default=0)
    return Trace(order, steps)


def node_rows(points: Iterable[tuple[int, str, Fraction, Fraction]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(NODE_HEADER)
    for rank, digits, x, y in points:
        writer.writerow([rank, digits, exact_decimal(x), exact_decimal(y)])
    return buf.getvalue()


def dumps_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def cells_equal(a: Trace, b: Trace) -> bool:
    return [(s.cell, s.event) for s in a.steps] == [(s.cell, s.event) for s in b.steps]

