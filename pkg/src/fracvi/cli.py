"""Command-line experiments over the library.

Subcommands: ``ibp`` (randomized integration-by-parts identity checks),
``coherence`` (direct-embedding vs variational residual gaps), ``convergence``
(order studies against exact or fine-grid references), ``solve`` (one
boundary-value solve with CSV export), and ``glcheck`` (discrete fractional
derivative of monomials against the closed form).

Exit codes: 0 all checks pass, 1 check violation, 2 usage error, 3 solver
failure.  Every command is deterministic given ``--seed``.  A plain
``key=value`` file can be supplied with ``--config``; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .diffops import check_discrete_ibp
from .fracops import check_discrete_frac_ibp, delta_alpha_minus, rl_monomial_derivative
from .grids import (
    MINUS,
    PLUS,
    DomainError,
    Trajectory,
    make_grid,
    sample,
    sigma_label,
    write_trajectory_csv,
)
from .lagrangians import builtin_problem
from .schemes import (
    SchemeFamily,
    SchemeKind,
    VERDICT_COHERENT,
    VERDICT_NOT_COHERENT,
    coherence_report,
)
from .solver import (
    BVPProblem,
    NewtonConfig,
    NewtonConvergenceError,
    SingularMatrixError,
    march_direct_classical,
    solve_bvp_newton,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

CLASSICAL_IBP_RTOL = 1e-12
FRACTIONAL_IBP_RTOL = 1e-10

#: Observed-order acceptance windows per scheme.
VI_ORDER_WINDOW = (1.8, 2.2)
DIRECT_ORDER_WINDOW = (0.7, 1.3)
FRACTIONAL_MIN_ORDER = 0.7
GLCHECK_ORDER_WINDOW = (0.7, 1.3)

#: Errors below this (relative) level count as exact reproduction and are
#: exempt from order checks.
EXACT_FLOOR = 1e-12


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _vector(text: str) -> np.ndarray:
    try:
        return np.array([float(part) for part in text.split(",")], dtype=float)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _sigma(text: str) -> int:
    if text == "+":
        return PLUS
    if text == "-":
        return MINUS
    raise argparse.ArgumentTypeError(f"sigma must be '+' or '-', got {text!r}")


def load_config(path) -> dict[str, str]:
    """Read a plain key=value file; '#' starts a comment."""
    cfg: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"bad config line (need key=value): {raw.strip()!r}")
            key, value = line.split("=", 1)
            cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def _get(args, cfg: dict[str, str], name: str, conv, default):
    """Flag value if given, else config value, else the default."""
    value = getattr(args, name)
    if value is not None:
        return value
    if name in cfg:
        return conv(cfg[name])
    return default


def _write_csv(path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


# --------------------------------------------------------------------------
# ibp


def run_ibp(
    n: int,
    trials: int,
    seed: int,
    alpha: float | None,
    a: float,
    b: float,
    dim: int,
) -> tuple[int, list[str]]:
    """Randomized two-sided evaluation of the integration-by-parts identity."""
    rng = np.random.default_rng(seed)
    grid = make_grid(a, b, n)
    rtol = CLASSICAL_IBP_RTOL if alpha is None else FRACTIONAL_IBP_RTOL
    worst = 0.0
    failures = 0
    for _ in range(trials):
        f_vals = rng.standard_normal((n + 1, dim))
        g_vals = rng.standard_normal((n + 1, dim))
        if alpha is None:
            lhs, rhs = check_discrete_ibp(
                Trajectory(grid, f_vals), Trajectory(grid, g_vals)
            )
        else:
            f_vals[0] = 0.0
            f_vals[-1] = 0.0
            lhs, rhs = check_discrete_frac_ibp(
                Trajectory(grid, f_vals), Trajectory(grid, g_vals), alpha
            )
        gap = abs(lhs - rhs) / (1.0 + abs(lhs))
        worst = max(worst, gap)
        if gap > rtol:
            failures += 1
    label = "classical" if alpha is None else f"fractional alpha={alpha:g}"
    status = "PASS" if failures == 0 else f"FAIL ({failures}/{trials})"
    lines = [
        f"ibp {label}: n={n} trials={trials} "
        f"max gap {worst:.3e} (tol {rtol:.1e}) -> {status}"
    ]
    return (EXIT_OK if failures == 0 else EXIT_CHECK_FAILED), lines


def _cmd_ibp(args, cfg) -> tuple[int, list[str]]:
    return run_ibp(
        n=_get(args, cfg, "n", int, 64),
        trials=_get(args, cfg, "trials", int, 100),
        seed=_get(args, cfg, "seed", int, 0),
        alpha=_get(args, cfg, "alpha", float, None),
        a=_get(args, cfg, "a", float, 0.0),
        b=_get(args, cfg, "b", float, 1.0),
        dim=_get(args, cfg, "dim", int, 1),
    )


# --------------------------------------------------------------------------
# coherence

COHERENCE_HEADER = ["scheme", "sigma", "alpha", "N", "gap", "verdict"]


def run_coherence(
    problem: str,
    omega: float,
    sigma: int,
    alpha: float | None,
    n: int,
    seed: int,
    dim: int,
    a: float,
    b: float,
    out=None,
) -> tuple[int, list[str]]:
    """Emit one coherence row per embedding kind.

    The classical row uses the cubic witness Q_k = k^3 on a unit-step grid,
    where the direct and variational stencils differ by a constant 6; the
    asymmetric and fractional rows use a seeded random trajectory.
    """
    lag = builtin_problem(problem, omega=omega, dim=dim)
    rng = np.random.default_rng(seed)
    reports = []

    witness_grid = make_grid(0.0, float(n), n)
    cubic = np.arange(n + 1, dtype=float) ** 3
    witness = Trajectory(witness_grid, np.tile(cubic[:, None], (1, dim)))
    reports.append(coherence_report(lag, witness, sigma, kind="classical"))

    grid = make_grid(a, b, n)
    random_q = Trajectory(grid, rng.standard_normal((n + 1, dim)))
    reports.append(coherence_report(lag, random_q, sigma, kind="asymmetric"))
    if alpha is not None:
        reports.append(coherence_report(lag, random_q, sigma, alpha=alpha))

    ok = (
        reports[0].verdict == VERDICT_NOT_COHERENT
        and reports[0].gap > 0.1
        and all(rep.verdict == VERDICT_COHERENT for rep in reports[1:])
    )
    lines = [rep.text() for rep in reports]
    lines.append("coherence: PASS" if ok else "coherence: FAIL")
    if out is not None:
        _write_csv(out, COHERENCE_HEADER, [rep.csv_row() for rep in reports])
        lines.append(f"wrote {out}")
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), lines


def _cmd_coherence(args, cfg) -> tuple[int, list[str]]:
    return run_coherence(
        problem=_get(args, cfg, "problem", str, "harmonic"),
        omega=_get(args, cfg, "omega", float, 1.0),
        sigma=_get(args, cfg, "sigma", _sigma, MINUS),
        alpha=_get(args, cfg, "alpha", float, None),
        n=_get(args, cfg, "n", int, 32),
        seed=_get(args, cfg, "seed", int, 0),
        dim=_get(args, cfg, "dim", int, 1),
        a=_get(args, cfg, "a", float, 0.0),
        b=_get(args, cfg, "b", float, 1.0),
        out=_get(args, cfg, "out", str, None),
    )


# --------------------------------------------------------------------------
# convergence

CONVERGENCE_HEADER = ["N", "h", "error", "observed_order"]

_SCHEME_CHOICES = ("direct", "vi", "asymmetric")


def _scheme_kind(scheme: str, sigma: int, alpha: float | None) -> SchemeKind:
    if scheme == "vi":
        if alpha is None:
            return SchemeKind(SchemeFamily.VARIATIONAL_CLASSICAL, sigma)
        return SchemeKind(SchemeFamily.VARIATIONAL_FRACTIONAL, sigma, alpha)
    if scheme == "direct":
        if alpha is None:
            return SchemeKind(SchemeFamily.DIRECT_CLASSICAL, sigma)
        return SchemeKind(SchemeFamily.DIRECT_FRACTIONAL, sigma, alpha)
    if scheme == "asymmetric":
        if alpha is not None:
            raise DomainError("the asymmetric scheme takes no alpha")
        return SchemeKind(SchemeFamily.ASYMMETRIC_DIRECT, sigma)
    raise DomainError(f"scheme must be one of {_SCHEME_CHOICES}, got {scheme!r}")


def _harmonic_reference(omega, a, b, qa, qb):
    span = b - a
    s = math.sin(omega * span)
    if abs(s) < 1e-12:
        raise DomainError("harmonic reference undefined: sin(omega (b-a)) ~ 0")
    coef_b = (qb - qa * math.cos(omega * span)) / s

    def exact(t: float) -> np.ndarray:
        return qa * math.cos(omega * (t - a)) + coef_b * math.sin(omega * (t - a))

    return exact


def _linear_reference(a, b, qa, qb):
    def exact(t: float) -> np.ndarray:
        s = (t - a) / (b - a)
        return qa + s * (qb - qa)

    return exact


def _observed_orders(ns: list[int], errors: list[float]) -> list[float | None]:
    orders: list[float | None] = []
    for i in range(len(ns)):
        if i + 1 < len(ns) and errors[i] > 0 and errors[i + 1] > 0:
            orders.append(
                math.log(errors[i] / errors[i + 1]) / math.log(ns[i + 1] / ns[i])
            )
        else:
            orders.append(None)
    return orders


def run_convergence(
    problem: str,
    scheme: str,
    sigma: int,
    n_list: list[int],
    alpha: float | None,
    omega: float,
    a: float,
    b: float,
    qa: np.ndarray | None,
    qb: np.ndarray | None,
    tol: float | None,
    max_iter: int,
    out=None,
) -> tuple[int, list[str]]:
    """Error-vs-resolution study with observed orders.

    ``free`` and ``harmonic`` classical runs are measured against the exact
    solution; everything else self-references a solve on a grid four times
    finer than the largest requested n.  The classical ``direct`` scheme is
    marched from two exact initial nodes; all other schemes solve the
    boundary-value problem.
    """
    if sorted(n_list) != n_list or len(set(n_list)) != len(n_list) or len(n_list) < 2:
        raise DomainError("n-list must be at least two strictly increasing values")
    lag = builtin_problem(problem, omega=omega, dim=1)
    harmonic_exact_case = problem == "harmonic" and alpha is None
    if qa is None:
        qa = np.array([1.0]) if harmonic_exact_case else np.array([0.0])
    else:
        qa = np.atleast_1d(np.asarray(qa, dtype=float))
    if qb is None:
        if harmonic_exact_case:
            qb = qa * math.cos(omega * (b - a)) + 0.5 * math.sin(omega * (b - a))
        else:
            qb = np.ones_like(qa)
    else:
        qb = np.atleast_1d(np.asarray(qb, dtype=float))
    # discretization errors measured here are >= 1e-6; a 1e-9 residual target
    # stays far below them while clearing the double-precision floor that an
    # absolute 1e-12 hits once n reaches ~128 (residual sensitivity ~ 4/h^2)
    cfg = NewtonConfig(tol=tol if tol is not None else 1e-9, max_iter=max_iter)

    exact = None
    if alpha is None and problem == "harmonic":
        exact = _harmonic_reference(omega, a, b, qa, qb)
    elif alpha is None and problem == "free":
        exact = _linear_reference(a, b, qa, qb)

    marching = scheme == "direct" and alpha is None
    if marching and exact is None:
        raise DomainError(
            "direct classical marching needs an exact reference (free or harmonic)"
        )

    ref_traj = None
    n_ref = 4 * max(n_list)
    if exact is None:
        for n in n_list:
            if n_ref % n != 0:
                raise DomainError(
                    f"self-reference requires every n to divide n_ref={n_ref}"
                )
        kind = _scheme_kind(scheme, sigma, alpha)
        ref_grid = make_grid(a, b, n_ref)
        ref_problem = BVPProblem(ref_grid, lag, kind, qa, qb)
        ref_traj, _ = solve_bvp_newton(ref_problem, config=cfg)

    errors = []
    for n in n_list:
        grid = make_grid(a, b, n)
        if marching:
            q0 = np.atleast_1d(exact(grid.node(0)))
            q1 = np.atleast_1d(exact(grid.node(1)))
            traj = march_direct_classical(lag, grid, q0, q1, config=cfg)
        else:
            kind = _scheme_kind(scheme, sigma, alpha)
            bvp = BVPProblem(grid, lag, kind, qa, qb)
            traj, _ = solve_bvp_newton(bvp, config=cfg)
        if exact is not None:
            ref_vals = np.vstack(
                [np.atleast_1d(exact(t)) for t in grid.nodes]
            )
        else:
            stride = n_ref // n
            ref_vals = ref_traj.values[::stride]
        errors.append(float(np.max(np.abs(traj.values - ref_vals))))

    orders = _observed_orders(n_list, errors)
    scale = float(np.max(np.abs(qb - qa))) + 1.0
    exact_repro = all(err <= EXACT_FLOOR * scale for err in errors)
    if exact_repro:
        ok = True
        check = "exact reproduction"
    else:
        defined = [o for o in orders if o is not None]
        if not defined:
            ok = False
            check = "no observable order"
        elif alpha is not None:
            ok = defined[-1] >= FRACTIONAL_MIN_ORDER
            check = f"last order {defined[-1]:.2f} >= {FRACTIONAL_MIN_ORDER}"
        elif marching:
            lo, hi = DIRECT_ORDER_WINDOW
            ok = all(lo <= o <= hi for o in defined)
            check = f"orders in [{lo}, {hi}]"
        elif exact is not None:
            lo, hi = VI_ORDER_WINDOW
            ok = all(lo <= o <= hi for o in defined)
            check = f"orders in [{lo}, {hi}]"
        else:
            lo, hi = VI_ORDER_WINDOW
            ok = lo <= defined[-1] <= hi
            check = f"last order {defined[-1]:.2f} in [{lo}, {hi}]"

    rows = []
    lines = []
    for n, err, order in zip(n_list, errors, orders):
        h = (b - a) / n
        order_text = "" if order is None else _fmt(order)
        rows.append([str(n), _fmt(h), _fmt(err), order_text])
        lines.append(
            f"N={n:5d} h={h:.6g} error={err:.6e}"
            + (f" order={order:.3f}" if order is not None else "")
        )
    lines.append(
        f"convergence {problem}/{scheme}"
        + (f" alpha={alpha:g}" if alpha is not None else "")
        + f" sigma={sigma_label(sigma)}: {check} -> {'PASS' if ok else 'FAIL'}"
    )
    if out is not None:
        _write_csv(out, CONVERGENCE_HEADER, rows)
        lines.append(f"wrote {out}")
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), lines


def _cmd_convergence(args, cfg) -> tuple[int, list[str]]:
    return run_convergence(
        problem=_get(args, cfg, "problem", str, "harmonic"),
        scheme=_get(args, cfg, "scheme", str, "vi"),
        sigma=_get(args, cfg, "sigma", _sigma, MINUS),
        n_list=_get(args, cfg, "n_list", _int_list, [16, 32, 64, 128]),
        alpha=_get(args, cfg, "alpha", float, None),
        omega=_get(args, cfg, "omega", float, 1.0),
        a=_get(args, cfg, "a", float, 0.0),
        b=_get(args, cfg, "b", float, 1.0),
        qa=_get(args, cfg, "qa", _vector, None),
        qb=_get(args, cfg, "qb", _vector, None),
        tol=_get(args, cfg, "tol", float, None),
        max_iter=_get(args, cfg, "max_iter", int, 50),
        out=_get(args, cfg, "out", str, None),
    )


# --------------------------------------------------------------------------
# solve


def run_solve(
    problem: str,
    scheme: str,
    sigma: int,
    alpha: float | None,
    n: int,
    a: float,
    b: float,
    qa: np.ndarray,
    qb: np.ndarray,
    omega: float,
    out: str,
    diag: str | None,
    tol: float | None,
    max_iter: int,
) -> tuple[int, list[str]]:
    """One boundary-value solve; writes the trajectory and diagnostics CSVs."""
    dim = len(qa)
    lag = builtin_problem(problem, omega=omega, dim=dim)
    kind = _scheme_kind(scheme, sigma, alpha)
    grid = make_grid(a, b, n)
    cfg = NewtonConfig(
        tol=tol if tol is not None else (1e-12 if alpha is None else 1e-10),
        max_iter=max_iter,
    )
    bvp = BVPProblem(grid, lag, kind, qa, qb)
    traj, diagnostics = solve_bvp_newton(bvp, config=cfg)
    write_trajectory_csv(traj, out)
    if diag is None:
        diag = out[:-4] + "_diag.csv" if out.endswith(".csv") else out + ".diag.csv"
    diagnostics.write_csv(diag)
    lines = [
        f"solved {problem}/{kind.family.value} sigma={sigma_label(sigma)} n={n} "
        f"in {diagnostics.iterations} iterations",
        f"final residual norm {diagnostics.final_residual:.3e}",
        f"wrote {out}",
        f"wrote {diag}",
    ]
    return EXIT_OK, lines


def _cmd_solve(args, cfg) -> tuple[int, list[str]]:
    qa = _get(args, cfg, "qa", _vector, np.array([0.0]))
    qb = _get(args, cfg, "qb", _vector, np.array([1.0]))
    if len(qa) != len(qb):
        raise DomainError(f"qa and qb must share a dimension, got {qa} and {qb}")
    return run_solve(
        problem=_get(args, cfg, "problem", str, "harmonic"),
        scheme=_get(args, cfg, "scheme", str, "vi"),
        sigma=_get(args, cfg, "sigma", _sigma, MINUS),
        alpha=_get(args, cfg, "alpha", float, None),
        n=_get(args, cfg, "n", int, 64),
        a=_get(args, cfg, "a", float, 0.0),
        b=_get(args, cfg, "b", float, 1.0),
        qa=qa,
        qb=qb,
        omega=_get(args, cfg, "omega", float, 1.0),
        out=_get(args, cfg, "out", str, "solution.csv"),
        diag=_get(args, cfg, "diag", str, None),
        tol=_get(args, cfg, "tol", float, None),
        max_iter=_get(args, cfg, "max_iter", int, 50),
    )


# --------------------------------------------------------------------------
# glcheck

GLCHECK_HEADER = ["N", "h", "approx", "exact", "error", "observed_order"]


def run_glcheck(
    alpha: float,
    beta: float,
    n_list: list[int],
    a: float,
    b: float,
    out=None,
) -> tuple[int, list[str]]:
    """Discrete left fractional derivative of (t-a)^beta at t=b versus the
    closed-form value, with observed convergence orders."""
    if sorted(n_list) != n_list or len(n_list) < 2:
        raise DomainError("n-list must be at least two strictly increasing values")
    exact = rl_monomial_derivative(beta, alpha, b - a)
    errors = []
    approxes = []
    for n in n_list:
        grid = make_grid(a, b, n)
        traj = sample(lambda t: (t - a) ** beta, grid)
        approx = float(delta_alpha_minus(traj, alpha).value_at(n)[0])
        approxes.append(approx)
        errors.append(abs(approx - exact))
    orders = _observed_orders(n_list, errors)
    floor = EXACT_FLOOR * (1.0 + abs(exact))
    if all(err <= floor for err in errors):
        ok = True
        check = "exact reproduction"
    else:
        defined = [o for o in orders if o is not None]
        lo, hi = GLCHECK_ORDER_WINDOW
        ok = bool(defined) and all(lo <= o <= hi for o in defined)
        check = f"orders in [{lo}, {hi}]"
    rows = []
    lines = []
    for n, approx, err, order in zip(n_list, approxes, errors, orders):
        h = (b - a) / n
        order_text = "" if order is None else _fmt(order)
        rows.append([str(n), _fmt(h), _fmt(approx), _fmt(exact), _fmt(err), order_text])
        lines.append(
            f"N={n:5d} approx={approx:.12g} exact={exact:.12g} error={err:.3e}"
            + (f" order={order:.3f}" if order is not None else "")
        )
    lines.append(
        f"glcheck alpha={alpha:g} beta={beta:g}: {check} -> {'PASS' if ok else 'FAIL'}"
    )
    if out is not None:
        _write_csv(out, GLCHECK_HEADER, rows)
        lines.append(f"wrote {out}")
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), lines


def _cmd_glcheck(args, cfg) -> tuple[int, list[str]]:
    return run_glcheck(
        alpha=_get(args, cfg, "alpha", float, 0.5),
        beta=_get(args, cfg, "beta", float, 1.0),
        n_list=_get(args, cfg, "n_list", _int_list, [64, 128, 256, 512]),
        a=_get(args, cfg, "a", float, 0.0),
        b=_get(args, cfg, "b", float, 1.0),
        out=_get(args, cfg, "out", str, None),
    )


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracvi",
        description="Discrete variational integrator experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--a", type=float, default=None, help="interval start")
        p.add_argument("--b", type=float, default=None, help="interval end")
        p.add_argument("--seed", type=int, default=None, help="random seed")
        p.add_argument("--config", type=str, default=None, help="key=value file")

    p_ibp = sub.add_parser("ibp", help="integration-by-parts identity checks")
    common(p_ibp)
    p_ibp.add_argument("--n", type=int, default=None)
    p_ibp.add_argument("--trials", type=int, default=None)
    p_ibp.add_argument("--alpha", type=float, default=None)
    p_ibp.add_argument("--dim", type=int, default=None)
    p_ibp.set_defaults(handler=_cmd_ibp)

    p_coh = sub.add_parser("coherence", help="dual-path residual comparison")
    common(p_coh)
    p_coh.add_argument("--problem", choices=("free", "harmonic", "pendulum"))
    p_coh.add_argument("--omega", type=float, default=None)
    p_coh.add_argument("--sigma", type=_sigma, default=None)
    p_coh.add_argument("--alpha", type=float, default=None)
    p_coh.add_argument("--n", type=int, default=None)
    p_coh.add_argument("--dim", type=int, default=None)
    p_coh.add_argument("--out", type=str, default=None, help="CSV output path")
    p_coh.set_defaults(handler=_cmd_coherence)

    p_conv = sub.add_parser("convergence", help="order study")
    common(p_conv)
    p_conv.add_argument("--problem", choices=("free", "harmonic", "pendulum"))
    p_conv.add_argument("--scheme", choices=_SCHEME_CHOICES)
    p_conv.add_argument("--sigma", type=_sigma, default=None)
    p_conv.add_argument("--n-list", dest="n_list", type=_int_list, default=None)
    p_conv.add_argument("--alpha", type=float, default=None)
    p_conv.add_argument("--omega", type=float, default=None)
    p_conv.add_argument("--qa", type=_vector, default=None)
    p_conv.add_argument("--qb", type=_vector, default=None)
    p_conv.add_argument("--tol", type=float, default=None)
    p_conv.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p_conv.add_argument("--out", type=str, default=None)
    p_conv.set_defaults(handler=_cmd_convergence)

    p_solve = sub.add_parser("solve", help="boundary-value solve")
    common(p_solve)
    p_solve.add_argument("--problem", choices=("free", "harmonic", "pendulum"))
    p_solve.add_argument("--scheme", choices=_SCHEME_CHOICES)
    p_solve.add_argument("--sigma", type=_sigma, default=None)
    p_solve.add_argument("--alpha", type=float, default=None)
    p_solve.add_argument("--n", type=int, default=None)
    p_solve.add_argument("--qa", type=_vector, default=None)
    p_solve.add_argument("--qb", type=_vector, default=None)
    p_solve.add_argument("--omega", type=float, default=None)
    p_solve.add_argument("--out", type=str, default=None)
    p_solve.add_argument("--diag", type=str, default=None)
    p_solve.add_argument("--tol", type=float, default=None)
    p_solve.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p_solve.set_defaults(handler=_cmd_solve)

    p_gl = sub.add_parser("glcheck", help="fractional derivative vs closed form")
    common(p_gl)
    p_gl.add_argument("--alpha", type=float, default=None)
    p_gl.add_argument("--beta", type=float, default=None)
    p_gl.add_argument("--n-list", dest="n_list", type=_int_list, default=None)
    p_gl.add_argument("--out", type=str, default=None)
    p_gl.set_defaults(handler=_cmd_glcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config) if args.config else {}
        code, lines = args.handler(args, cfg)
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NewtonConvergenceError, SingularMatrixError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
