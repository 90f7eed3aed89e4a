import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from hilbert_coverage import _backend, _pykernels

try:
    from hilbert_coverage import _kernels
except ImportError:  # extension not built
    _kernels = None

compiled = pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")


@compiled
@pytest.mark.parametrize("n", range(0, 7))
def test_kernels_agree_exhaustively(n):
    assert list(_kernels.curve_cells(n)) == list(_pykernels.curve_cells(n))
    for k in range(4 ** n):
        i, j = _pykernels.rank_to_cell(k, n)
        assert tuple(_kernels.rank_to_cell(k, n)) == (i, j)
        assert _kernels.cell_to_rank(i, j, n) == k
        assert tuple(_kernels.standard_numerators(k, n)) == tuple(_pykernels.standard_numerators(k, n))


@compiled
@given(st.integers(min_value=1, max_value=30), st.data())
def test_kernels_agree_at_high_order(n, data):
    k = data.draw(st.integers(min_value=0, max_value=4 ** n - 1))
    ij = _pykernels.rank_to_cell(k, n)
    assert tuple(_kernels.rank_to_cell(k, n)) == ij
    assert _kernels.cell_to_rank(*ij, n) == k
    assert tuple(_kernels.standard_numerators(k, n)) == tuple(_pykernels.standard_numerators(k, n))


def test_orders_beyond_compiled_range_use_python():
    n = _backend.MAX_COMPILED_ORDER + 3
    k = 4 ** n - 12345
    i, j = _backend.rank_to_cell(k, n)
    assert _backend.cell_to_rank(i, j, n) == k


def test_environment_forces_pure_python():
    code = "from hilbert_coverage import BACKEND; print(BACKEND)"
    env = dict(os.environ, HILBERT_COVERAGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_simulation_identical_on_both_backends():
    code = ("from hilbert_coverage import World, simulate\n"
            "from hilbert_coverage.export import trace_to_csv\n"
            "print(trace_to_csv(simulate(World.from_strings(4, ['0213', '1100', '3021', '22']))))")
    outs = []
    for pure in ("", "1"):
        env = dict(os.environ, HILBERT_COVERAGE_PURE=pure)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout)
    assert outs[0] == outs[1] and outs[0].count("\n") > 200
