"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--order N] [--repeat R]

Times each kernel on both implementations, then one end-to-end campaign
per backend (fresh interpreter each, selected by HILBERT_COVERAGE_PURE).
"""
import argparse
import os
import subprocess
import sys
import timeit

from hilbert_coverage import _pykernels

try:
    from hilbert_coverage import _kernels
except ImportError:
    _kernels = None


def bench(label, fn, repeat):
    return label, min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(mod, n):
    ranks = range(0, 4 ** n, 7)
    cells = [mod.rank_to_cell(k, n) for k in ranks]
    return [
        ("rank_to_cell", lambda: [mod.rank_to_cell(k, n) for k in ranks]),
        ("cell_to_rank", lambda: [mod.cell_to_rank(i, j, n) for i, j in cells]),
        ("standard_numerators", lambda: [mod.standard_numerators(k, n) for k in ranks]),
        ("curve_cells", lambda: mod.curve_cells(n)),
    ]


CAMPAIGN = ("import time; from hilbert_coverage import verify_single, BACKEND\n"
            "t = time.perf_counter(); verify_single({n}); print(BACKEND, time.perf_counter() - t)")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--campaign-order", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled kernels are not built; nothing to compare")
        return 1
    n = args.order
    print(f"kernels at order {n} ({4 ** n} nodes, every 7th rank), best of {args.repeat}")
    print(f"{'kernel':<22}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for (name, py), (_, cy) in zip(kernel_cases(_pykernels, n), kernel_cases(_kernels, n)):
        tp = bench(name, py, args.repeat)[1]
        tc = bench(name, cy, args.repeat)[1]
        print(f"{name:<22}{tp:>12.5f}{tc:>12.5f}{tp / tc:>9.1f}x")

    print(f"\nsingle-obstacle campaign at order {args.campaign_order}, end to end")
    for pure in ("1", ""):
        env = dict(os.environ, HILBERT_COVERAGE_PURE=pure)
        out = subprocess.run([sys.executable, "-c", CAMPAIGN.format(n=args.campaign_order)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<8}{float(out[1]):.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
