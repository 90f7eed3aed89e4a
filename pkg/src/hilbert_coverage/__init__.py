"""Hilbert-curve coverage planning with online obstacle evasion."""
from ._backend import BACKEND
from .corner_classifier import CornerClass, ManeuverGroup, NonCorner, Terminal, classify, group_for
from .coverage_simulator import (CoverageReport, SensorView, Trace, World, simulate, verify_coverage,
                                 verify_multi_obstacle, verify_single)
from .errors import (HilbertCoverageError, ManeuverPreconditionError, ParseError, PlanningError, RankError,
                     SensingContractError, TerminalNodeError, WorldError)
from .evasion_engine import PlannedSequence, maneuver_window, rewrite, to_polyline
from .hilbert_core import (ExactPoint, GridCell, NodeIndex, cell_of_rank, inverse_map_center, map_center,
                           map_simplified, map_standard, rank_of_cell)
from .nonuniform_planner import CoverageTree, ResolutionMap, build_leaves, plan_nonuniform, verify_leaf_coverage

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CornerClass", "CoverageReport", "CoverageTree", "ExactPoint", "GridCell",
    "HilbertCoverageError", "ManeuverGroup", "ManeuverPreconditionError", "NodeIndex", "NonCorner",
    "ParseError", "PlannedSequence", "PlanningError", "RankError", "ResolutionMap", "SensingContractError",
    "SensorView", "Terminal", "TerminalNodeError", "Trace", "World", "WorldError", "build_leaves",
    "cell_of_rank", "classify", "group_for", "inverse_map_center", "maneuver_window", "map_center",
    "map_simplified", "map_standard", "plan_nonuniform", "rank_of_cell", "rewrite", "simulate",
    "to_polyline", "verify_coverage", "verify_leaf_coverage", "verify_multi_obstacle", "verify_single",
]
