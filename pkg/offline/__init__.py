from .schema import OfflineResult, OfflineMethod, OfflineStatus
from .brute_force import brute_force_opt, search_size
from .lp import LpModel, LpConstraint, build_lp, prune_window_constraints, lp_upper_bound, dump_lp
from .simplex import RevisedSimplex, SimplexSolution

__all__ = [
    "OfflineResult",
    "OfflineMethod",
    "OfflineStatus",
    "brute_force_opt",
    "search_size",
    "LpModel",
    "LpConstraint",
    "build_lp",
    "prune_window_constraints",
    "lp_upper_bound",
    "dump_lp",
    "RevisedSimplex",
    "SimplexSolution",
    ]
