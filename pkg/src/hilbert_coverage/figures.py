"""Reference figures: fixed worlds rendered to SVG.

``reference_figures()`` is what the golden files under ``tests/golden`` are
regenerated from (``python3 tools/regen_golden.py``).
"""
from __future__ import annotations

from .coverage_simulator import World, simulate
from .nonuniform_planner import CoverageTree, ResolutionMap, plan_nonuniform
from .svg import curve_svg, trace_svg

# (e, q_p, m) corner cases, each the smallest world showing it
CORNER_CASES = {
    "corner_e0_q1_m0": (2, "10"),
    "corner_e1_q1_m0": (3, "100"),
    "corner_e0_q0_m3": (2, "03"),
    "corner_e1_q0_m3": (3, "033"),
    "corner_e0_q1_m3": (2, "13"),
    "corner_e1_q1_m3": (3, "133"),
}

MULTI_WORLD = (3, ("021", "110", "232", "301"))
NONUNIFORM_WORLD = (4, ("21", "132"), (("2", 4), ("13", 4)), 2)


def _title(world: World) -> str:
    return f"order {world.order}, obstacles {' '.join(world.obstacle_strings())}"


def nonuniform_world() -> World:
    order, obstacles, regions, default = NONUNIFORM_WORLD
    return World.from_strings(order, obstacles, ResolutionMap.from_strings(regions, default))


def reference_figures() -> dict[str, str]:
    out = {
        "curve_standard_n2": curve_svg(2, "standard"),
        "curve_center_n2": curve_svg(2, "center"),
    }
    for name, (order, obstacle) in CORNER_CASES.items():
        world = World.from_strings(order, [obstacle])
        out[name] = trace_svg(simulate(world), world, title=_title(world))
    world = World.from_strings(MULTI_WORLD[0], MULTI_WORLD[1])
    out["multi_obstacle"] = trace_svg(simulate(world), world, title=_title(world))
    world = nonuniform_world()
    tree = CoverageTree.from_map(world.resolution_map, world.order)
    out["nonuniform"] = trace_svg(plan_nonuniform(tree, world), world, tree.leaves,
                                        f"coverage tree, {len(tree)} leaves, obstacles "
                                        f"{' '.join(world.obstacle_strings())}")
    return out
