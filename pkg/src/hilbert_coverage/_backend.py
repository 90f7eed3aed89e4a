"""Select the kernel implementation at import time.

Set ``HILBERT_COVERAGE_PURE=1`` to force the pure-Python kernels.
"""
import os

from . import _pykernels

MAX_COMPILED_ORDER = 30

if os.environ.get("HILBERT_COVERAGE_PURE"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _pykernels

BACKEND = "python" if kernels is _pykernels else "cython"


def rank_to_cell(rank, order):
    if order > MAX_COMPILED_ORDER:
        return _pykernels.rank_to_cell(rank, order)
    return kernels.rank_to_cell(rank, order)


def cell_to_rank(i, j, order):
    if order > MAX_COMPILED_ORDER:
        return _pykernels.cell_to_rank(i, j, order)
    return kernels.cell_to_rank(i, j, order)


def curve_cells(order):
    if order > MAX_COMPILED_ORDER:
        return _pykernels.curve_cells(order)
    return kernels.curve_cells(order)


def standard_numerators(rank, order):
    if order > MAX_COMPILED_ORDER:
        return _pykernels.standard_numerators(rank, order)
    return kernels.standard_numerators(rank, order)
