from .function import (
    f_eval,
    f_expanded,
    argmin_x,
    line,
    curve,
    boundary_term,
    curve_minimizer,
    combined_lower_bound,
)
from .minimize import BoundReport, min_f, beta_sweep, best_beta, sweep_betas, case_two_terms, curve_samples
from .plot import plot_fig1

__all__ = [
    "f_eval",
    "f_expanded",
    "argmin_x",
    "line",
    "curve",
    "boundary_term",
    "curve_minimizer",
    "combined_lower_bound",
    "BoundReport",
    "min_f",
    "beta_sweep",
    "best_beta",
    "sweep_betas",
    "case_two_terms",
    "curve_samples",
    "plot_fig1",
    ]
