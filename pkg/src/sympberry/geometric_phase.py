"""Berry-phase line integrals along paths of symplectic matrices.

A differentiable path t -> M(t) in Sp(2n, R) drags a Gaussian state around;
the accumulated geometric phase is the line integral of the connection

    -(1 / 4 hbar) Tr[diag(l^2, hbar^2 / l^2) M^T Omega dM/dt]

over t in [0, 1]. This module provides the path container with finite
difference tangents, the integral in its direct and boundary-term forms, a
reduced expression for paths whose upper-right block vanishes, and an
invariance check under constant left translations (classical canonical
transformations leave the phase alone).
"""
from __future__ import annotations

import dataclasses
import warnings
from typing import Callable

import numpy as np

from ._quadrature import adaptive_gauss_kronrod, fixed_gauss_kronrod
from .gaussian_states import OscParams, covariance
from .symplectic_core import GROUPED, SympMatrix, block_decompose, omega

__all__ = [
    "ADAPTIVE",
    "FIXED",
    "NonFiniteIntegrand",
    "NotBZeroForm",
    "QuadSpec",
    "PhaseResult",
    "SympPath",
    "connection_integrand",
    "integrate_phase",
    "integrate_phase_boundary_form",
    "phase_b_zero",
    "check_canonical_invariance",
]

ADAPTIVE = "adaptive"
FIXED = "fixed"

# construction-time sample points for path validation
_PARAM_SAMPLES = (0.0, 0.25, 0.5, 0.75, 1.0)
_SAMPLE_SYMP_TOL = 1e-9
_CLOSURE_TOL = 1e-10
_FD_STEP_FACTOR = 1e-6
_B_ZERO_TOL = 1e-12
_INV_TRANSPOSE_TOL = 1e-10


class NonFiniteIntegrand(ValueError):
    """A path sample or tangent produced a non-finite connection value."""


class NotBZeroForm(ValueError):
    """The path leaves the zero-upper-right-block family."""


@dataclasses.dataclass(frozen=True)
class QuadSpec:
    """Quadrature choice: adaptive refinement or a fixed composite rule."""

    kind: str = ADAPTIVE
    tol: float = 1e-10
    max_evals: int = 10**6
    panels: int = 64

    def __post_init__(self) -> None:
        if self.kind not in (ADAPTIVE, FIXED):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.max_evals < 15:
            raise ValueError("budget must allow at least one panel")
        if self.panels < 1:
            raise ValueError("panel count must be >= 1")


@dataclasses.dataclass(frozen=True)
class PhaseResult:
    """Integrated phase in radians with the quadrature's own error estimate."""

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.value):
            raise ValueError("phase value must be finite")
        if not self.error_estimate >= 0:
            raise ValueError("error estimate must be nonnegative")


@dataclasses.dataclass(frozen=True)
class SympPath:
    """Path t in [0, 1] -> M(t) in Sp(2n, R), grouped ordering.

    eval returns the SympMatrix at t; tangent, when given, returns dM/dt as a
    plain array. Without an analytic tangent, derivatives fall back to
    second-order finite differences with step 1e-6 * max(1, |M(0)|_max),
    one-sided at the interval ends. closed asserts M(1) = M(0); construction
    samples five parameter values and checks symplecticity and closure.
    """

    n: int
    eval: Callable[[float], SympMatrix]
    tangent: Callable[[float], np.ndarray] | None = None
    closed: bool = False

    def __post_init__(self) -> None:
        samples = {}
        for t in _PARAM_SAMPLES:
            M = self.eval(t)
            if not isinstance(M, SympMatrix):
                raise TypeError(f"eval({t}) returned {type(M).__name__}, not SympMatrix")
            if M.n != self.n:
                raise ValueError(f"eval({t}) has {M.n} modes, path declares {self.n}")
            if M.ordering != GROUPED:
                raise ValueError("paths require grouped ordering")
            resid = float(np.max(np.abs(M.data @ omega(self.n) @ M.data.T - omega(self.n))))
            if resid > _SAMPLE_SYMP_TOL:
                raise ValueError(
                    f"sample at t={t} fails the symplectic condition: residual {resid:.3e}"
                )
            samples[t] = M
        if self.closed:
            gap = float(np.max(np.abs(samples[1.0].data - samples[0.0].data)))
            if gap > _CLOSURE_TOL:
                raise ValueError(f"closed path fails closure: |M(1) - M(0)|_max = {gap:.3e}")
        scale = max(1.0, float(np.max(np.abs(samples[0.0].data))))
        object.__setattr__(self, "_fd_step", _FD_STEP_FACTOR * scale)

    def derivative(self, t: float) -> np.ndarray:
        """dM/dt at t: the analytic tangent if supplied, else finite difference."""
        if self.tangent is not None:
            return np.asarray(self.tangent(t), dtype=float)
        h = self._fd_step
        if t < h:
            m0, m1, m2 = (self.eval(t + k * h).data for k in range(3))
            return (-3.0 * m0 + 4.0 * m1 - m2) / (2.0 * h)
        if t > 1.0 - h:
            m0, m1, m2 = (self.eval(t - k * h).data for k in range(3))
            return (3.0 * m0 - 4.0 * m1 + m2) / (2.0 * h)
        return (self.eval(t + h).data - self.eval(t - h).data) / (2.0 * h)


def _metric_diag(p: OscParams) -> np.ndarray:
    """diag(l^2, hbar^2 / l^2), the connection's metric weights."""
    l = p.length_array()
    return np.concatenate([l * l, p.hbar**2 / (l * l)])


def connection_integrand(M: SympMatrix, dM: np.ndarray, p: OscParams) -> float:
    """Berry connection paired with a tangent:
    -(1 / 4 hbar) Tr[diag(l^2, hbar^2 / l^2) M^T Omega dM]."""
    dM = np.asarray(dM, dtype=float)
    if dM.shape != M.data.shape:
        raise ValueError(f"tangent shape {dM.shape} does not match {M.data.shape}")
    if p.n != M.n:
        raise ValueError(f"parameter modes {p.n} do not match matrix modes {M.n}")
    core = M.data.T @ omega(M.n) @ dM
    return float(-(0.25 / p.hbar) * (_metric_diag(p) @ np.diagonal(core)))


def _run_quadrature(
    f: Callable[[float], float], quad: QuadSpec
) -> tuple[float, float, int]:
    if quad.kind == ADAPTIVE:
        return adaptive_gauss_kronrod(f, 0.0, 1.0, tol=quad.tol, max_evals=quad.max_evals)
    return fixed_gauss_kronrod(f, 0.0, 1.0, panels=quad.panels)


def _finite_or_raise(value: float, t: float) -> float:
    if not np.isfinite(value):
        raise NonFiniteIntegrand(f"integrand is non-finite at t={t}")
    return value


def integrate_phase(
    path: SympPath, p: OscParams, quad: QuadSpec | None = None
) -> PhaseResult:
    """Geometric phase of the path: the connection integrated over [0, 1]."""
    if quad is None:
        quad = QuadSpec()

    def f(t: float) -> float:
        return _finite_or_raise(
            connection_integrand(path.eval(t), path.derivative(t), p), t
        )

    value, error, evals = _run_quadrature(f, quad)
    return PhaseResult(value=value, error_estimate=error, evaluations=evals)


def _omega_v_trace(M: SympMatrix, p: OscParams) -> float:
    """Tr[Omega V] for the dimension-full covariance V of the state at M.

    Written out as the antisymmetric pairing sum(V[n+i, i] - V[i, n+i]); V is
    symmetric, so this vanishes identically. Kept as an honest evaluation so
    the boundary-term form stays a literal transcription.
    """
    V = covariance(M, p).data
    n = M.n
    return float(sum(V[n + i, i] - V[i, n + i] for i in range(n)))


def integrate_phase_boundary_form(
    path: SympPath, p: OscParams, quad: QuadSpec | None = None
) -> PhaseResult:
    """Phase via integration by parts: +(1 / 4 hbar) integral of
    Tr[Omega M diag(l^2, hbar^2 / l^2) dM^T] minus the covariance boundary
    term (1 / 2 hbar) [Tr(Omega V)] at the endpoints.

    Equals integrate_phase on closed paths. On open paths the vanishing
    boundary argument does not apply; the value is still computed but a
    warning flags it.
    """
    if quad is None:
        quad = QuadSpec()
    if not path.closed:
        warnings.warn(
            "boundary-form phase evaluated on an open path; the endpoint "
            "term only cancels for closed paths",
            UserWarning,
            stacklevel=2,
        )
    weights = _metric_diag(p)
    om = omega(path.n)

    def f(t: float) -> float:
        M = path.eval(t)
        if p.n != M.n:
            raise ValueError(f"parameter modes {p.n} do not match matrix modes {M.n}")
        dM = path.derivative(t)
        core = om @ M.data @ np.diag(weights) @ dM.T
        return _finite_or_raise(float((0.25 / p.hbar) * np.trace(core)), t)

    value, error, evals = _run_quadrature(f, quad)
    boundary = (0.5 / p.hbar) * (
        _omega_v_trace(path.eval(1.0), p) - _omega_v_trace(path.eval(0.0), p)
    )
    return PhaseResult(value=value - boundary, error_estimate=error, evaluations=evals)


def phase_b_zero(
    path: SympPath, p: OscParams, quad: QuadSpec | None = None
) -> PhaseResult:
    """Phase for paths with vanishing upper-right block.

    Such matrices have D = A^{-T} and the connection collapses to
    -(1 / 4 hbar) Tr[diag(l^2) (A^T dC - C^T dA)]. Every evaluated sample is
    checked against the block form; NotBZeroForm reports a violation.
    """
    if quad is None:
        quad = QuadSpec()
    n = path.n
    l2 = np.asarray(p.lengths, dtype=float) ** 2

    def f(t: float) -> float:
        M = path.eval(t)
        if p.n != M.n:
            raise ValueError(f"parameter modes {p.n} do not match matrix modes {M.n}")
        blocks = block_decompose(M)
        b_max = float(np.max(np.abs(blocks.B)))
        if b_max > _B_ZERO_TOL:
            raise NotBZeroForm(f"upper-right block reaches {b_max:.3e} at t={t}")
        d_resid = float(np.max(np.abs(blocks.D - np.linalg.inv(blocks.A).T)))
        if d_resid > _INV_TRANSPOSE_TOL:
            raise NotBZeroForm(
                f"lower-right block deviates from inverse-transpose form by "
                f"{d_resid:.3e} at t={t}"
            )
        dM = path.derivative(t)
        dA, dC = dM[:n, :n], dM[n:, :n]
        core = blocks.A.T @ dC - blocks.C.T @ dA
        return _finite_or_raise(float(-(0.25 / p.hbar) * (l2 @ np.diagonal(core))), t)

    value, error, evals = _run_quadrature(f, quad)
    return PhaseResult(value=value, error_estimate=error, evaluations=evals)


def check_canonical_invariance(
    path: SympPath,
    fixedM: SympMatrix,
    p: OscParams,
    quad: QuadSpec | None = None,
) -> tuple[float, float, float]:
    """Phase before and after left translation by a constant symplectic matrix.

    Returns (original, translated, |difference|). The connection only sees
    M^T Omega dM, which the translation leaves fixed, so the difference is
    pure quadrature noise.
    """
    if fixedM.n != path.n:
        raise ValueError(f"translation has {fixedM.n} modes, path has {path.n}")
    if fixedM.ordering != GROUPED:
        raise ValueError("translation must use grouped ordering")
    base = integrate_phase(path, p, quad)
    S = fixedM.data

    def moved_eval(t: float) -> SympMatrix:
        return fixedM @ path.eval(t)

    def moved_tangent(t: float) -> np.ndarray:
        return S @ path.derivative(t)

    moved = SympPath(
        n=path.n, eval=moved_eval, tangent=moved_tangent, closed=path.closed
    )
    translated = integrate_phase(moved, p, quad)
    return base.value, translated.value, abs(translated.value - base.value)
