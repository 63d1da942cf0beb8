import math
from typing import Iterable, List, Optional, Tuple
import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from bounds.function import f_eval, line, curve, boundary_term, curve_minimizer
from util.logger import logger

MIN_GRID = 256
X_POINTS = 33
ROW_CHUNK = 64
TERNARY_STEPS = 80


class BoundReport(BaseModel):
    """Minimum of the bound function for one beta."""
    beta: float
    grid: int
    minimum: float = Field(description="min of the refined grid minimum and the closed form")
    z1: float
    z2: float
    x: float
    source: str = Field(description="'grid' or 'closed_form'")
    grid_minimum: float
    closed_form: float
    line: float = Field(description="1 - e^{-beta}")
    case_two: Tuple[float, float] = Field(description="minima of the z1 = 0 curve and the boundary term over z2")
    curve_x: List[float] = Field(default_factory=list)
    curve_y: List[float] = Field(default_factory=list)


def _grid_search(beta: float, grid: int) -> Tuple[float, float, float, float]:
    """Chunked evaluation of the expanded form over z1 <= z2 and an x grid."""
    zs = np.linspace(0.0, 1.0, grid)
    xs = np.linspace(0.0, 1.0, X_POINTS)
    g_z = np.exp(beta * (zs - 1.0))
    g_x = np.exp(beta * (xs - 1.0))
    g0 = math.exp(-beta)

    best = (math.inf, 0.0, 0.0, 0.0)
    for start in range(0, grid, ROW_CHUNK):
        z1 = zs[start:start + ROW_CHUNK, None]
        gz1 = g_z[start:start + ROW_CHUNK, None]
        z2 = zs[None, :]
        weight = 1.0 - z2 + beta * z1
        base = (g_z[None, :] - gz1) / beta + 1.0 - g0 / beta * weight
        slope = (weight - beta) / beta
        values = base[:, :, None] + slope[:, :, None] * g_x[None, None, :]
        values = np.where((z1 <= z2)[:, :, None], values, np.inf)
        k = int(np.argmin(values))
        r, c, x = np.unravel_index(k, values.shape)
        if values[r, c, x] < best[0]:
            best = (float(values[r, c, x]), float(zs[start + r]), float(zs[c]), float(xs[x]))
    return best


def _ternary(fn, lo: float, hi: float) -> float:
    for _ in range(TERNARY_STEPS):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if fn(m1) <= fn(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)


def _refine(beta: float, z1: float, z2: float, x: float, iters: int) -> Tuple[float, float, float, float]:
    """Coordinate descent: x and z1 at their endpoints (f is linear in g(x),
    concave in z1), z2 by ternary search (f is convex in z2)."""
    value = f_eval(z1, z2, x, beta)
    for _ in range(iters):
        x = min((0.0, 1.0), key=lambda v: f_eval(z1, z2, v, beta))
        z1 = min((0.0, z2), key=lambda v: f_eval(v, z2, x, beta))
        z2 = _ternary(lambda v: f_eval(z1, v, x, beta), z1, 1.0)
        new = f_eval(z1, z2, x, beta)
        if value - new < 1e-15:
            value = min(value, new)
            break
        value = new
    return value, z1, z2, x


def case_two_terms(beta: float) -> Tuple[float, float]:
    """min over z2 of the z1 = 0 curve (closed form) and of the boundary term (ternary on z2 >= 1 - beta)."""
    first = curve(beta, curve_minimizer(beta))
    lo = max(0.0, 1.0 - beta)
    z = _ternary(lambda v: boundary_term(beta, v), lo, 1.0)
    second = min(boundary_term(beta, z), boundary_term(beta, lo), boundary_term(beta, 1.0))
    return first, second


def curve_samples(beta: float, samples: int) -> Tuple[List[float], List[float]]:
    xs = np.linspace(0.0, 1.0, samples)
    return [float(x) for x in xs], [curve(beta, float(x)) for x in xs]


def min_f(beta: float, grid: int = 1024, refine_iters: int = 40, samples: int = 1000) -> BoundReport:
    """Global minimum of f over 0 <= z1 <= z2 <= 1, x in [0, 1]."""
    if grid < MIN_GRID:
        raise ValueError(f"grid must be at least {MIN_GRID}, got {grid}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must lie in (0, 1], got {beta}")

    coarse = _grid_search(beta, grid)
    grid_value, z1, z2, x = _refine(beta, coarse[1], coarse[2], coarse[3], refine_iters)
    grid_value = min(grid_value, coarse[0])

    straight = line(beta)
    bent = case_two_terms(beta)
    closed = min(bent[0], straight)
    source = "grid"
    minimum = grid_value
    if closed < grid_value:
        minimum, source = closed, "closed_form"
        if bent[0] <= straight:
            z1, z2, x = 0.0, curve_minimizer(beta), 1.0
        else:
            z1, z2, x = 1.0, 1.0, 0.0

    xs, ys = curve_samples(beta, samples)
    report = BoundReport(
        beta=beta,
        grid=grid,
        minimum=minimum,
        z1=z1,
        z2=z2,
        x=x,
        source=source,
        grid_minimum=grid_value,
        closed_form=closed,
        line=straight,
        case_two=bent,
        curve_x=xs,
        curve_y=ys,
    )
    logger.log_bound(report)
    return report


def sweep_betas(start: float = 0.80, stop: float = 1.00, step: float = 0.01) -> List[float]:
    count = int(round((stop - start) / step))
    return [round(start + step * k, 2) for k in range(count + 1)]


def beta_sweep(betas: Optional[Iterable[float]] = None, grid: int = 1024, refine_iters: int = 40) -> pd.DataFrame:
    """min_f per beta, one row each, in the given order."""
    betas = list(betas) if betas is not None else sweep_betas()
    rows = []
    for beta in betas:
        report = min_f(beta, grid, refine_iters, samples=2)
        rows.append({
            "beta": beta,
            "minimum": report.minimum,
            "z1": report.z1,
            "z2": report.z2,
            "x": report.x,
            "source": report.source,
            "line": report.line,
        })
    return pd.DataFrame(rows, columns=["beta", "minimum", "z1", "z2", "x", "source", "line"])


def best_beta(table: pd.DataFrame) -> float:
    return float(table.loc[table["minimum"].idxmax(), "beta"])
