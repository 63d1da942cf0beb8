import bisect
from typing import Dict, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, Field
from instance.schema import Instance, DeterministicUsage
from offline.schema import OfflineResult, OfflineMethod
from offline.simplex import RevisedSimplex
from util.errors import UsageModelMismatch
from util.logger import logger


class LpConstraint(BaseModel):
    """One `sum of members <= 1` row."""
    name: str
    members: List[int] = Field(description="Indices into LpModel.edges")


class LpModel(BaseModel):
    """Maximise sum r_i x_it subject to window and demand rows, 0 <= x <= 1.

    Window row w_i_t: edges (i, tau) with tau <= t and a(t) - a(tau) <= d_i.
    Demand row u_t: edges incident to arrival t.
    """
    name: str = "offline_lp"
    edges: List[Tuple[int, int]] = Field(description="Variables as (resource, arrival)")
    objective: List[float]
    windows: List[LpConstraint]
    demands: List[LpConstraint]

    @property
    def constraints(self) -> List[LpConstraint]:
        return self.windows + self.demands

    def matrix(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(c, A, b) in row order windows then demands."""
        rows = self.constraints
        A = np.zeros((len(rows), len(self.edges)))
        for k, row in enumerate(rows):
            A[k, row.members] = 1.0
        return np.asarray(self.objective, dtype=float), A, np.ones(len(rows))

    def violations(self, x, tol: float = 1e-9) -> List[str]:
        """Names of rows or bounds the point breaks by more than tol."""
        x = np.asarray(x, dtype=float)
        out = [f"x[{k}] out of [0,1]" for k in np.flatnonzero((x < -tol) | (x > 1 + tol))]
        for row in self.constraints:
            lhs = float(x[row.members].sum())
            if lhs > 1 + tol:
                out.append(f"{row.name}: {lhs:.12f} > 1")
        return out


def _durations(instance: Instance) -> List[int]:
    out = []
    for r in instance.resources:
        usage = instance.usage_of(r.id)
        if not isinstance(usage, DeterministicUsage):
            raise UsageModelMismatch("the offline LP needs deterministic usage")
        out.append(usage.d)
    return out


def build_lp(instance: Instance) -> LpModel:
    """LP relaxation with one window row per (resource, arrival) and one demand row per arrival."""
    durations = _durations(instance)
    edges = instance.edges()
    index = {e: k for k, e in enumerate(edges)}
    rewards = instance.rewards
    times = instance.times

    windows = []
    for i, adjacent in instance.adjacency().items():
        adj_times = [times[t] for t in adjacent]
        for t in range(instance.n_arrivals):
            hi = bisect.bisect_right(adjacent, t)
            lo = bisect.bisect_left(adj_times, times[t] - durations[i], 0, hi)
            members = [index[(i, tau)] for tau in adjacent[lo:hi]]
            if members:
                windows.append(LpConstraint(name=f"w_{i}_{t}", members=members))

    demands = []
    for a in instance.arrivals:
        members = [index[(i, a.id)] for i in sorted(a.neighbors)]
        if members:
            demands.append(LpConstraint(name=f"u_{a.id}", members=members))

    return LpModel(
        name=instance.label(),
        edges=edges,
        objective=[rewards[i] for i, _ in edges],
        windows=windows,
        demands=demands,
    )


def prune_window_constraints(model: LpModel) -> LpModel:
    """Drop every window row whose member set sits inside another kept window row."""
    by_resource: Dict[int, List[Tuple[int, frozenset]]] = {}
    for k, row in enumerate(model.windows):
        resource = model.edges[row.members[0]][0]
        by_resource.setdefault(resource, []).append((k, frozenset(row.members)))

    keep = set()
    for rows in by_resource.values():
        kept: List[frozenset] = []
        for k, members in sorted(rows, key=lambda kv: (-len(kv[1]), kv[0])):
            if any(members <= other for other in kept):
                continue
            kept.append(members)
            keep.add(k)

    windows = [row for k, row in enumerate(model.windows) if k in keep]
    logger.debug(f"pruned window rows {len(model.windows)} -> {len(windows)}")
    return model.model_copy(update={"windows": windows})


def lp_upper_bound(
    instance: Instance,
    prune: bool = True,
    feasibility_tol: float = 1e-9,
    optimality_tol: float = 1e-9,
    max_iterations: int = 50000,
    refactor_every: int = 50,
    model: Optional[LpModel] = None,
) -> OfflineResult:
    """Optimal value of the LP relaxation, with primal solution and row duals.

    Upper bounds are implied by the window rows, so x <= 1 is not added.
    """
    model = model if model is not None else build_lp(instance)
    if prune:
        model = prune_window_constraints(model)
    if not model.edges:
        return OfflineResult(method=OfflineMethod.LP, value=0.0, fractional=[], duals=[], iterations=0)

    c, A, b = model.matrix()
    solution = RevisedSimplex(
        c, A, b,
        feasibility_tol=feasibility_tol,
        optimality_tol=optimality_tol,
        max_iterations=max_iterations,
        refactor_every=refactor_every,
    ).solve()

    fractional = [(i, t, float(x)) for (i, t), x in zip(model.edges, solution.x) if x > feasibility_tol]
    return OfflineResult(
        method=OfflineMethod.LP,
        value=solution.objective,
        fractional=fractional,
        duals=[float(v) for v in solution.duals],
        iterations=solution.iterations,
        note=f"{len(model.windows)} window rows, {len(model.demands)} demand rows",
    )


def _fmt(value: float) -> str:
    return f"{value:.12f}"


def _terms(coefs: List[Tuple[float, str]], per_line: int = 6) -> List[str]:
    lines, chunk = [], []
    for k, (coef, var) in enumerate(coefs):
        sign = "-" if coef < 0 else "+"
        if k == 0 and sign == "+":
            chunk.append(f"{_fmt(abs(coef))} {var}")
        else:
            chunk.append(f"{sign} {_fmt(abs(coef))} {var}")
        if len(chunk) == per_line:
            lines.append(" ".join(chunk))
            chunk = []
    if chunk:
        lines.append(" ".join(chunk))
    return lines


def dump_lp(model: LpModel, path: str) -> None:
    """Write the model in CPLEX LP text form.

    Sections in order: Maximize (obj), Subject To (window rows, then demand
    rows), Bounds (0 <= x <= 1), End. Variables are x_<resource>_<arrival>;
    every coefficient is printed with 12 decimals.
    """
    names = [f"x_{i}_{t}" for i, t in model.edges]
    out = [f"\\ Problem: {model.name}", "Maximize"]
    obj = _terms([(c, v) for c, v in zip(model.objective, names)]) or ["0 x_dummy"]
    out.append(f" obj: {obj[0]}")
    out.extend(f"   {line}" for line in obj[1:])
    out.append("Subject To")
    for row in model.constraints:
        lines = _terms([(1.0, names[k]) for k in row.members])
        lines[-1] = f"{lines[-1]} <= {_fmt(1.0)}"
        out.append(f" {row.name}: {lines[0]}")
        out.extend(f"   {line}" for line in lines[1:])
    out.append("Bounds")
    out.extend(f" {_fmt(0.0)} <= {v} <= {_fmt(1.0)}" for v in names)
    out.append("End")
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")
