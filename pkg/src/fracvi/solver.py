"""Newton solver for discrete Euler-Lagrange boundary-value systems, a
marching solver for the direct classical scheme, and the dense linear
algebra it relies on.

Boundary values are never unknowns: the interior nodes Q_1 .. Q_{n-1} are
solved for with the endpoints pinned, mirroring variations that vanish at
both ends.  Jacobians are dense finite differences; the classical
tridiagonal structure is deliberately not special-cased.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grids import (
    MINUS,
    DomainError,
    Grid,
    Trajectory,
    check_sigma,
)
from .lagrangians import Lagrangian
from .schemes import SchemeKind, assemble_residual


class SingularMatrixError(RuntimeError):
    """LU elimination hit an exactly zero pivot."""

    def __init__(self, pivot_index: int):
        super().__init__(f"singular matrix: zero pivot at column {pivot_index}")
        self.pivot_index = pivot_index


class NewtonConvergenceError(RuntimeError):
    """Newton failed to reach the residual target.

    Carries the last iterate and the iteration history for diagnosis.
    """

    def __init__(self, message: str, last: "Trajectory | np.ndarray", diagnostics):
        super().__init__(message)
        self.last = last
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 50
    fd_step: float = 1e-6  # actual step per component: fd_step * (1 + |Q_k|)
    damping: float = 0.5

    def __post_init__(self):
        if self.tol <= 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")
        if not 0 < self.damping < 1:
            raise DomainError(f"damping must lie in (0, 1), got {self.damping}")


@dataclass(frozen=True)
class BVPProblem:
    """Fixed-endpoint problem: Q_0 = qa and Q_n = qb, interior unknown."""

    grid: Grid
    lagrangian: Lagrangian
    scheme: SchemeKind
    qa: np.ndarray
    qb: np.ndarray

    def __post_init__(self):
        qa = np.atleast_1d(np.asarray(self.qa, dtype=float))
        qb = np.atleast_1d(np.asarray(self.qb, dtype=float))
        if qa.shape != (self.lagrangian.dim,) or qb.shape != (self.lagrangian.dim,):
            raise DomainError(
                f"boundary values must have dim {self.lagrangian.dim}, "
                f"got {qa.shape} and {qb.shape}"
            )
        object.__setattr__(self, "qa", qa)
        object.__setattr__(self, "qb", qb)


@dataclass
class NewtonDiagnostics:
    """Per-iteration history: (iter, residual inf-norm, step inf-norm)."""

    records: list[tuple[int, float, float]] = field(default_factory=list)
    converged: bool = False

    @property
    def iterations(self) -> int:
        return self.records[-1][0] if self.records else 0

    @property
    def final_residual(self) -> float:
        return self.records[-1][1] if self.records else float("nan")

    def csv_text(self) -> str:
        lines = ["iter,residual_norm,step_norm"]
        for it, rn, sn in self.records:
            lines.append(f"{it},{rn:.17g},{sn:.17g}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(self.csv_text())


def lu_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a dense square system by LU with partial pivoting."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    m = a.shape[0]
    if a.shape != (m, m):
        raise DomainError(f"matrix must be square, got {a.shape}")
    if b.shape[0] != m:
        raise DomainError(f"right-hand side length {b.shape[0]} != {m}")
    for col in range(m):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if a[pivot, col] == 0.0:
            raise SingularMatrixError(col)
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col + 1 :] -= np.outer(factors, a[col, col + 1 :])
        b[col + 1 :] -= factors * b[col]
    x = np.empty(m)
    for row in range(m - 1, -1, -1):
        x[row] = (b[row] - np.dot(a[row, row + 1 :], x[row + 1 :])) / a[row, row]
    return x


def linear_initial_guess(grid: Grid, qa, qb) -> Trajectory:
    """Straight line between the endpoint values (exact for the free problem)."""
    qa = np.atleast_1d(np.asarray(qa, dtype=float))
    qb = np.atleast_1d(np.asarray(qb, dtype=float))
    s = np.arange(grid.n + 1, dtype=float) / grid.n
    vals = qa[None, :] + s[:, None] * (qb - qa)[None, :]
    vals[0] = qa
    vals[-1] = qb  # endpoints exact, rounding-free
    return Trajectory(grid, vals)


_MAX_BACKTRACKS = 40


def solve_bvp_newton(
    problem: BVPProblem,
    init: Trajectory | None = None,
    config: NewtonConfig | None = None,
) -> tuple[Trajectory, NewtonDiagnostics]:
    """Solve R(Q) = 0 for the interior nodes by damped Newton.

    The Jacobian is dense forward finite differences of the residual,
    factored by partial-pivoting LU; steps backtrack until the residual
    inf-norm decreases.  Raises :class:`NewtonConvergenceError` with the
    last iterate and history if the target is not met.
    """
    cfg = config or NewtonConfig()
    grid = problem.grid
    lag = problem.lagrangian
    d = lag.dim
    if init is None:
        init = linear_initial_guess(grid, problem.qa, problem.qb)
    if init.grid != grid or init.dim != d:
        raise DomainError("initial guess does not match the problem layout")
    if not (
        np.array_equal(init.values[0], problem.qa)
        and np.array_equal(init.values[-1], problem.qb)
    ):
        raise DomainError("initial guess must satisfy the boundary values")

    def build(x: np.ndarray) -> Trajectory:
        vals = np.vstack(
            [problem.qa[None, :], x.reshape(grid.n - 1, d), problem.qb[None, :]]
        )
        return Trajectory(grid, vals)

    def residual(x: np.ndarray) -> np.ndarray:
        return assemble_residual(problem.scheme, lag, build(x)).values.ravel()

    x = init.values[1:-1].ravel().copy()
    diag = NewtonDiagnostics()
    r = residual(x)
    rnorm = float(np.max(np.abs(r)))
    diag.records.append((0, rnorm, 0.0))
    for it in range(1, cfg.max_iter + 1):
        if rnorm <= cfg.tol:
            diag.converged = True
            return build(x), diag
        jac = np.empty((x.size, x.size))
        for j in range(x.size):
            step = cfg.fd_step * (1.0 + abs(x[j]))
            xp = x.copy()
            xp[j] += step
            jac[:, j] = (residual(xp) - r) / step
        delta = lu_solve(jac, -r)
        t = 1.0
        accepted = False
        for _ in range(_MAX_BACKTRACKS):
            trial = x + t * delta
            r_trial = residual(trial)
            rn_trial = float(np.max(np.abs(r_trial)))
            if rn_trial < rnorm:
                accepted = True
                break
            t *= cfg.damping
        if not accepted:
            diag.records.append((it, rnorm, 0.0))
            raise NewtonConvergenceError(
                f"line search stalled at iteration {it} "
                f"(residual {rnorm:.3e}, target {cfg.tol:.3e})",
                build(x),
                diag,
            )
        x = trial
        r = r_trial
        rnorm = rn_trial
        diag.records.append((it, rnorm, float(np.max(np.abs(t * delta)))))
    if rnorm <= cfg.tol:
        diag.converged = True
        return build(x), diag
    raise NewtonConvergenceError(
        f"no convergence after {cfg.max_iter} iterations "
        f"(residual {rnorm:.3e}, target {cfg.tol:.3e})",
        build(x),
        diag,
    )


def _newton_point(fun, x0: np.ndarray, cfg: NewtonConfig, label: str) -> np.ndarray:
    """Small dense Newton for one implicit step equation."""
    x = np.array(x0, dtype=float)
    r = fun(x)
    rnorm = float(np.max(np.abs(r)))
    for _ in range(cfg.max_iter):
        if rnorm <= cfg.tol:
            return x
        jac = np.empty((x.size, x.size))
        for j in range(x.size):
            step = cfg.fd_step * (1.0 + abs(x[j]))
            xp = x.copy()
            xp[j] += step
            jac[:, j] = (fun(xp) - r) / step
        delta = lu_solve(jac, -r)
        t = 1.0
        for _ in range(_MAX_BACKTRACKS):
            trial = x + t * delta
            r_trial = fun(trial)
            rn_trial = float(np.max(np.abs(r_trial)))
            if rn_trial < rnorm:
                break
            t *= cfg.damping
        else:
            raise NewtonConvergenceError(
                f"{label}: line search stalled (residual {rnorm:.3e})", x, None
            )
        x, r, rnorm = trial, r_trial, rn_trial
    if rnorm <= cfg.tol:
        return x
    raise NewtonConvergenceError(
        f"{label}: no convergence (residual {rnorm:.3e}, target {cfg.tol:.3e})",
        x,
        None,
    )


def march_direct_classical(
    lag: Lagrangian,
    grid: Grid,
    q0,
    q1,
    config: NewtonConfig | None = None,
    sigma: int = MINUS,
) -> Trajectory:
    """March the backward direct scheme forward from (Q_0, Q_1).

    For k = 2 .. n the k-th direct residual is solved for its newest
    unknown Q_k by a per-step Newton iteration; for the mechanical
    Lagrangian this is the implicit step

        (Q_k - 2 Q_{k-1} + Q_{k-2})/h^2 + grad U(Q_k) = 0.
    """
    check_sigma(sigma)
    if sigma != MINUS:
        raise DomainError("marching is defined for the backward scheme (sigma = -1)")
    cfg = config or NewtonConfig()
    d = lag.dim
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    q1 = np.atleast_1d(np.asarray(q1, dtype=float))
    if q0.shape != (d,) or q1.shape != (d,):
        raise DomainError(f"initial values must have dim {d}")
    hinv = 1.0 / grid.h
    vals = np.empty((grid.n + 1, d))
    vals[0] = q0
    vals[1] = q1
    for k in range(2, grid.n + 1):
        t_k = grid.node(k)
        t_prev = grid.node(k - 1)
        v_prev = (vals[k - 1] - vals[k - 2]) * hinv
        lv_prev = lag.Lv(vals[k - 1], v_prev, t_prev)

        def step_residual(x: np.ndarray) -> np.ndarray:
            v = (x - vals[k - 1]) * hinv
            return np.asarray(
                lag.Lx(x, v, t_k) - (lag.Lv(x, v, t_k) - lv_prev) * hinv
            )

        guess = 2.0 * vals[k - 1] - vals[k - 2]
        vals[k] = _newton_point(step_residual, guess, cfg, f"march step k={k}")
    return Trajectory(grid, vals)
