from typing import List, Optional
import numpy as np
from pydantic import BaseModel, ConfigDict
from util.errors import SimplexError
from util.logger import logger


class SimplexSolution(BaseModel):
    """Optimal vertex of max c @ x s.t. A @ x <= b, x >= 0."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: np.ndarray
    objective: float
    duals: np.ndarray
    iterations: int
    basis: List[int]


class RevisedSimplex:
    """Dense revised simplex for max c @ x, A @ x <= b, x >= 0 with b >= 0.

    The slack basis is feasible from the start, so no phase one is needed.
    The basis inverse is updated with eta pivots and refactored from
    scratch every `refactor_every` iterations. Bland's rule picks both the
    entering and the leaving variable, so degenerate problems terminate.
    """

    def __init__(
        self,
        c: np.ndarray,
        A: np.ndarray,
        b: np.ndarray,
        feasibility_tol: float = 1e-9,
        optimality_tol: float = 1e-9,
        max_iterations: int = 50000,
        refactor_every: int = 50,
    ):
        self.c = np.asarray(c, dtype=float)
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.b = np.asarray(b, dtype=float)
        m, n = self.A.shape
        if self.c.shape != (n,) or self.b.shape != (m,):
            raise ValueError(f"shape mismatch: A {self.A.shape}, b {self.b.shape}, c {self.c.shape}")
        if np.any(self.b < 0):
            raise ValueError("right-hand side must be nonnegative")
        self.m, self.n = m, n
        self.feasibility_tol = feasibility_tol
        self.optimality_tol = optimality_tol
        self.max_iterations = max_iterations
        self.refactor_every = refactor_every

        self.A_full = np.hstack((self.A, np.eye(m)))
        self.c_full = np.concatenate((self.c, np.zeros(m)))

    def _pivot_col(self, reduced: np.ndarray) -> Optional[int]:
        """Lowest index with a positive reduced cost (Bland)."""
        candidates = np.flatnonzero(reduced > self.optimality_tol)
        return int(candidates[0]) if candidates.size else None

    def _pivot_row(self, x_B: np.ndarray, u: np.ndarray, basis: np.ndarray) -> Optional[int]:
        """Minimum ratio row; ties go to the lowest basic variable index (Bland)."""
        rows = np.flatnonzero(u > self.feasibility_tol)
        if rows.size == 0:
            return None
        ratios = x_B[rows] / u[rows]
        best = ratios.min()
        tied = rows[ratios <= best + self.feasibility_tol]
        return int(tied[np.argmin(basis[tied])])

    def _refactor(self, basis: np.ndarray):
        B_inv = np.linalg.inv(self.A_full[:, basis])
        x_B = B_inv @ self.b
        x_B[np.abs(x_B) < self.feasibility_tol] = 0.0
        return B_inv, x_B

    def solve(self) -> SimplexSolution:
        m = self.m
        basis = np.arange(self.n, self.n + m)
        B_inv = np.eye(m)
        x_B = self.b.copy()

        iterations = 0
        while True:
            y = self.c_full[basis] @ B_inv
            reduced = self.c_full - y @ self.A_full
            reduced[basis] = 0.0
            j = self._pivot_col(reduced)
            if j is None:
                break
            if iterations >= self.max_iterations:
                raise SimplexError("iteration cap reached", iterations, float(self.c_full[basis] @ x_B))

            u = B_inv @ self.A_full[:, j]
            r = self._pivot_row(x_B, u, basis)
            if r is None:
                raise SimplexError(f"unbounded along column {j}", iterations, float(self.c_full[basis] @ x_B))

            step = x_B[r] / u[r]
            x_B = x_B - step * u
            x_B[r] = step
            pivot_row = B_inv[r] / u[r]
            B_inv = B_inv - np.outer(u, pivot_row)
            B_inv[r] = pivot_row
            basis[r] = j
            iterations += 1

            if iterations % self.refactor_every == 0:
                B_inv, x_B = self._refactor(basis)
            else:
                x_B[np.abs(x_B) < self.feasibility_tol] = 0.0
            if np.any(x_B < -self.feasibility_tol):
                raise SimplexError("lost primal feasibility", iterations, float(self.c_full[basis] @ x_B))

        x_full = np.zeros(self.n + m)
        x_full[basis] = x_B
        x = x_full[: self.n]
        duals = self.c_full[basis] @ B_inv
        logger.debug(f"simplex: {iterations} pivots, {m} rows, {self.n} columns")
        return SimplexSolution(
            x=x,
            objective=float(self.c @ x),
            duals=duals,
            iterations=iterations,
            basis=[int(k) for k in basis],
        )
