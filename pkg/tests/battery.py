"""The fixed battery of ten resolution maps at n_max = 4."""
from hilbert_coverage.nonuniform_planner import ResolutionMap

N_MAX = 4

MAPS = [
    ((("2", 3),), 2),
    ((("1", 4),), 2),
    ((("0", 3), ("3", 1)), 2),
    ((("21", 4), ("02", 3)), 2),
    ((("13", 4), ("31", 4)), 1),
    ((("2", 4),), 1),
    ((("0", 2), ("1", 3), ("2", 4)), 1),
    ((("33", 4),), 3),
    ((("000", 4), ("123", 4), ("301", 4)), 2),
    ((), 3),
]


def resolution_maps():
    return [ResolutionMap.from_strings(regions, default) for regions, default in MAPS]
