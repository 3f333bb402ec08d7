"""Residual assemblers for the discrete Euler-Lagrange schemes, and the
coherence comparator between the direct-embedding and variational paths.

Two genuinely independent routes produce each scheme: direct embedding
substitutes discrete operators into the written form of the continuous
equation, while the variational route differentiates the discrete
functional.  The comparator reports where (and by how much) the two routes
disagree; for the symmetric classical embedding they differ by a one-index
shift of the second-difference stencil, while the asymmetric and
Grunwald-Letnikov embeddings yield identical schemes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .diffops import discrete_velocity, seq_delta
from .fracops import discrete_velocity_alpha, frac_seq_minus, frac_seq_plus
from .grids import (
    MINUS,
    DomainError,
    ResidualField,
    ShiftedSequence,
    Trajectory,
    check_sigma,
    sigma_label,
)
from .lagrangians import Lagrangian, functional_gradient, _check_dims, _lagrangian_values

#: Relative tolerance for declaring two residual paths coherent.
COHERENCE_RTOL = 1e-10


class SchemeFamily(enum.Enum):
    DIRECT_CLASSICAL = "direct-classical"
    VARIATIONAL_CLASSICAL = "vi-classical"
    ASYMMETRIC_DIRECT = "asymmetric-direct"
    DIRECT_FRACTIONAL = "direct-fractional"
    VARIATIONAL_FRACTIONAL = "vi-fractional"


_FRACTIONAL_FAMILIES = (
    SchemeFamily.DIRECT_FRACTIONAL,
    SchemeFamily.VARIATIONAL_FRACTIONAL,
)


@dataclass(frozen=True)
class SchemeKind:
    """A scheme family plus its parameters; alpha is present iff fractional."""

    family: SchemeFamily
    sigma: int
    alpha: float | None = None

    def __post_init__(self):
        check_sigma(self.sigma)
        if self.family in _FRACTIONAL_FAMILIES:
            if self.alpha is None:
                raise DomainError(f"{self.family.value} requires alpha")
        elif self.alpha is not None:
            raise DomainError(f"{self.family.value} does not take alpha")

    @property
    def is_fractional(self) -> bool:
        return self.family in _FRACTIONAL_FAMILIES


def residual_direct_classical(
    lag: Lagrangian, q: Trajectory, sigma: int
) -> ResidualField:
    """Direct embedding of the Euler-Lagrange equation:

        R_k = Lx(Q_k, v_k, t_k) + sigma * (delta_sigma [Lv])_k,
        v = -sigma * delta_sigma Q.

    Window: {2, .., n} for sigma = -1, {0, .., n-2} for sigma = +1 (the
    maximal set where the outer same-side difference exists).
    """
    check_sigma(sigma)
    _check_dims(lag, q)
    if q.grid.n < 3:
        raise DomainError("direct classical residual needs n >= 3")
    vseq = discrete_velocity(q, sigma)
    lx, lv = _lagrangian_values(lag, q, vseq)
    outer = seq_delta(ShiftedSequence(q.grid, sigma, lv), sigma)
    lx_win = lx[1:] if sigma == MINUS else lx[:-1]
    return ResidualField(q.grid, outer.k_start, lx_win + sigma * outer.values)


def newton_friction_direct(q: Trajectory) -> ResidualField:
    """Standalone stencil for the forward-embedded damped oscillator:

        R_k = (Q_{k+2} - 2 Q_{k+1} + Q_k)/h^2 + (Q_{k+1} - Q_k)/h + Q_k,
        k in {0, .., n-2}.
    """
    v = q.values
    h = q.grid.h
    acc = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / (h * h)
    vel = (v[1:-1] - v[:-2]) / h
    return ResidualField(q.grid, 0, acc + vel + v[:-2])


def residual_vi_classical(
    lag: Lagrangian, q: Trajectory, sigma: int
) -> ResidualField:
    """Variational integrator scheme, assembled by operator application:

        R_k = Lx(Q_k, v_k, t_k) - sigma * (delta_{-sigma} [Lv])_k,
        k in {1, .., n-1}.

    Coincides with the discrete-functional gradient.
    """
    check_sigma(sigma)
    _check_dims(lag, q)
    vseq = discrete_velocity(q, sigma)
    lx, lv = _lagrangian_values(lag, q, vseq)
    outer = seq_delta(ShiftedSequence(q.grid, sigma, lv), -sigma)
    interior = slice(0, q.grid.n - 1) if sigma == MINUS else slice(1, q.grid.n)
    return ResidualField(q.grid, 1, lx[interior] - sigma * outer.values)


def residual_asymmetric_direct(
    lag: Lagrangian, q: Trajectory, sigma: int
) -> ResidualField:
    """Direct embedding of the asymmetric Euler-Lagrange equation.

    Substitutes delta_plus for the forward derivative and delta_minus for
    the backward derivative in the one-sided continuous formula; written as
    its own transcription so agreement with :func:`residual_vi_classical`
    stays a two-path check.
    """
    check_sigma(sigma)
    _check_dims(lag, q)
    n = q.grid.n
    hinv = 1.0 / q.grid.h
    vseq = discrete_velocity(q, sigma)
    lx, lv = _lagrangian_values(lag, q, vseq)
    row = vseq.k_start

    def lv_at(k: int) -> np.ndarray:
        return lv[k - row]

    def lx_at(k: int) -> np.ndarray:
        return lx[k - row]

    out = np.empty((n - 1, q.dim))
    for k in range(1, n):
        if sigma == MINUS:
            d = (lv_at(k) - lv_at(k + 1)) * hinv  # delta_plus on the Lv sequence
        else:
            d = (lv_at(k) - lv_at(k - 1)) * hinv  # delta_minus on the Lv sequence
        out[k - 1] = lx_at(k) - sigma * d
    return ResidualField(q.grid, 1, out)


def residual_direct_fractional(
    lag: Lagrangian, q: Trajectory, sigma: int, alpha: float
) -> ResidualField:
    """Direct embedding of the fractional Euler-Lagrange equation:

        R_k = Lx(Q_k, v_k, t_k) - sigma * (delta^alpha_{-sigma} [Lv])_k,
        v = -sigma * delta^alpha_sigma Q,  k in {1, .., n-1}.

    Assembled by operator substitution; the variational path lives in
    :func:`fracvi.lagrangians.functional_gradient` and never shares this
    assembly.
    """
    check_sigma(sigma)
    _check_dims(lag, q)
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"fractional order must lie in (0, 1], got {alpha}")
    vseq = discrete_velocity_alpha(q, sigma, alpha)
    lx, lv = _lagrangian_values(lag, q, vseq)
    lvseq = ShiftedSequence(q.grid, sigma, lv)
    if sigma == MINUS:
        outer = frac_seq_plus(lvseq, alpha)
        interior = slice(0, q.grid.n - 1)
    else:
        outer = frac_seq_minus(lvseq, alpha)
        interior = slice(1, q.grid.n)
    return ResidualField(q.grid, 1, lx[interior] - sigma * outer.values)


def residual_vi_fractional(
    lag: Lagrangian, q: Trajectory, sigma: int, alpha: float
) -> ResidualField:
    """Fractional variational integrator: the discrete-functional gradient."""
    return functional_gradient(lag, q, sigma, alpha)


def assemble_residual(kind: SchemeKind, lag: Lagrangian, q: Trajectory) -> ResidualField:
    """Dispatch a scheme kind to its residual assembler."""
    fam = kind.family
    if fam is SchemeFamily.DIRECT_CLASSICAL:
        return residual_direct_classical(lag, q, kind.sigma)
    if fam is SchemeFamily.VARIATIONAL_CLASSICAL:
        return residual_vi_classical(lag, q, kind.sigma)
    if fam is SchemeFamily.ASYMMETRIC_DIRECT:
        return residual_asymmetric_direct(lag, q, kind.sigma)
    if fam is SchemeFamily.DIRECT_FRACTIONAL:
        return residual_direct_fractional(lag, q, kind.sigma, kind.alpha)
    if fam is SchemeFamily.VARIATIONAL_FRACTIONAL:
        return residual_vi_fractional(lag, q, kind.sigma, kind.alpha)
    raise DomainError(f"unknown scheme family {fam!r}")


COHERENCE_KINDS = ("classical", "asymmetric", "fractional")

VERDICT_COHERENT = "COHERENT"
VERDICT_NOT_COHERENT = "NOT COHERENT"


@dataclass(frozen=True)
class CoherenceReport:
    """Gap between the direct-embedding and variational residual paths."""

    kind: str
    sigma: int
    alpha: float | None
    n: int
    gap: float
    scale: float
    witness_index: int
    verdict: str

    @property
    def coherent(self) -> bool:
        return self.verdict == VERDICT_COHERENT

    def text(self) -> str:
        alpha = "" if self.alpha is None else f" alpha={self.alpha:g}"
        return (
            f"{self.kind} embedding, sigma={sigma_label(self.sigma)}{alpha}, "
            f"n={self.n}: max gap {self.gap:.3e} at k={self.witness_index} "
            f"(scale {self.scale:.3e}) -> {self.verdict}"
        )

    def csv_row(self) -> list[str]:
        return [
            self.kind,
            sigma_label(self.sigma),
            "" if self.alpha is None else f"{self.alpha:.17g}",
            str(self.n),
            f"{self.gap:.17g}",
            self.verdict,
        ]


def coherence_report(
    lag: Lagrangian,
    q: Trajectory,
    sigma: int,
    alpha: float | None = None,
    kind: str | None = None,
) -> CoherenceReport:
    """Compare the two residual paths on their shared index window.

    ``kind`` selects the embedding: "classical" (direct vs variational,
    symmetric operators), "asymmetric" (one-sided rewrite, direct vs
    variational), or "fractional" (requires ``alpha``).  When ``kind`` is
    omitted it is inferred from the presence of ``alpha``.
    """
    check_sigma(sigma)
    if kind is None:
        kind = "fractional" if alpha is not None else "classical"
    if kind not in COHERENCE_KINDS:
        raise DomainError(f"kind must be one of {COHERENCE_KINDS}, got {kind!r}")
    if kind == "fractional":
        if alpha is None:
            raise DomainError("fractional coherence requires alpha")
        direct = residual_direct_fractional(lag, q, sigma, alpha)
        variational = residual_vi_fractional(lag, q, sigma, alpha)
    else:
        alpha = None
        variational = residual_vi_classical(lag, q, sigma)
        if kind == "classical":
            direct = residual_direct_classical(lag, q, sigma)
        else:
            direct = residual_asymmetric_direct(lag, q, sigma)

    lo = max(direct.indices.start, variational.indices.start)
    hi = min(direct.indices.stop, variational.indices.stop)
    if lo >= hi:
        raise DomainError(
            f"residual windows {direct.indices} and {variational.indices} "
            "do not intersect"
        )
    a = direct.values[lo - direct.k_start : hi - direct.k_start]
    b = variational.values[lo - variational.k_start : hi - variational.k_start]
    diff = np.abs(a - b)
    flat = int(np.argmax(diff))
    witness = lo + flat // q.dim
    gap = float(diff.ravel()[flat])
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    verdict = (
        VERDICT_COHERENT
        if gap <= COHERENCE_RTOL * (1.0 + scale)
        else VERDICT_NOT_COHERENT
    )
    return CoherenceReport(
        kind=kind,
        sigma=sigma,
        alpha=alpha,
        n=q.grid.n,
        gap=gap,
        scale=scale,
        witness_index=witness,
        verdict=verdict,
    )
