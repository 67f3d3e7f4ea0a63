"""Squeeze-transformation generators, matrices, and parameter-circle paths.

One-mode squeezing with magnitude r and angle theta, and its two-mode
counterpart with magnitude R and angle phi, written directly in dimension
full variables (hbar, characteristic lengths). The circle paths sweep the
angle once at fixed magnitude; their phases have closed forms

    -pi sinh^2(R)      (one mode)
    -2 pi sinh^2(R)    (two modes)

independent of hbar and the lengths, which makes them the package's main
end-to-end oracle.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .gaussian_states import OscParams
from .geometric_phase import SympPath
from .symplectic_core import GROUPED, LieAlgElement, SympMatrix

__all__ = [
    "SqueezeSpec",
    "squeeze_lie_n1",
    "squeeze_matrix_n1",
    "squeeze_b_block_n2",
    "squeeze_matrix_n2",
    "squeeze_circle_path",
    "reference_phase",
]

_TWO_PI = 2.0 * np.pi


@dataclasses.dataclass(frozen=True)
class SqueezeSpec:
    """Squeeze magnitude and angle for a one- or two-mode transformation.

    The angle is stored normalized to [0, 2 pi). params carries hbar and the
    mode lengths and must match the declared mode count.
    """

    modes: int
    R: float
    angle: float
    params: OscParams

    def __post_init__(self) -> None:
        if self.modes not in (1, 2):
            raise ValueError(f"squeeze transformations cover 1 or 2 modes, got {self.modes}")
        R = float(self.R)
        if not (np.isfinite(R) and R >= 0):
            raise ValueError(f"magnitude must be finite and >= 0, got {self.R!r}")
        angle = float(self.angle)
        if not np.isfinite(angle):
            raise ValueError("angle must be finite")
        if self.params.n != self.modes:
            raise ValueError(
                f"params carry {self.params.n} mode lengths, spec declares {self.modes}"
            )
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "angle", angle % _TWO_PI)


def _require_modes(spec: SqueezeSpec, modes: int) -> None:
    if spec.modes != modes:
        raise ValueError(f"expected a {modes}-mode spec, got {spec.modes}")


def squeeze_lie_n1(spec: SqueezeSpec) -> LieAlgElement:
    """Symmetric generator of one-mode squeezing; traceless by construction."""
    _require_modes(spec, 1)
    r, th = spec.R, spec.angle
    hbar = spec.params.hbar
    l2 = spec.params.lengths[0] ** 2
    L = np.array(
        [
            [(hbar / l2) * r * np.sin(th), -r * np.cos(th)],
            [-r * np.cos(th), -(l2 / hbar) * r * np.sin(th)],
        ]
    )
    return LieAlgElement(1, L)


def squeeze_matrix_n1(spec: SqueezeSpec) -> SympMatrix:
    """One-mode squeeze matrix, in closed form.

    The generator's square is r^2 I, so the exponential series splits into
    cosh(r) I plus sinh(r) times the direction matrix.
    """
    _require_modes(spec, 1)
    r, th = spec.R, spec.angle
    hbar = spec.params.hbar
    l2 = spec.params.lengths[0] ** 2
    ch, sh = np.cosh(r), np.sinh(r)
    M = np.array(
        [
            [ch - np.cos(th) * sh, -(l2 / hbar) * np.sin(th) * sh],
            [-(hbar / l2) * np.sin(th) * sh, ch + np.cos(th) * sh],
        ]
    )
    return SympMatrix(1, M)


def _d_matrix_d_angle_n1(spec: SqueezeSpec) -> np.ndarray:
    r, th = spec.R, spec.angle
    hbar = spec.params.hbar
    l2 = spec.params.lengths[0] ** 2
    return np.sinh(r) * np.array(
        [
            [np.sin(th), -(l2 / hbar) * np.cos(th)],
            [-(hbar / l2) * np.cos(th), -np.sin(th)],
        ]
    )


def squeeze_b_block_n2(spec: SqueezeSpec) -> np.ndarray:
    """Upper-right generator block of the two-mode squeeze, dimension full.

    With zx = R cos(phi), zy = R sin(phi), lengths l1, l2:
    [[(hbar / (l1 l2)) zy, -(l2 / l1) zx], [-(l1 / l2) zx, -(l1 l2 / hbar) zy]].
    Its determinant is -R^2 for every angle.
    """
    _require_modes(spec, 2)
    zx = spec.R * np.cos(spec.angle)
    zy = spec.R * np.sin(spec.angle)
    hbar = spec.params.hbar
    l1, l2 = spec.params.lengths
    return np.array(
        [
            [(hbar / (l1 * l2)) * zy, -(l2 / l1) * zx],
            [-(l1 / l2) * zx, -(l1 * l2 / hbar) * zy],
        ]
    )


def _direction_n2(spec: SqueezeSpec, c: float, s: float) -> np.ndarray:
    """cosh/sinh split direction matrix for the two-mode squeeze.

    c and s are cos/sin of the angle (or their derivatives, for tangents).
    Ordering is grouped (x1, x2, p1, p2).
    """
    hbar = spec.params.hbar
    l1, l2 = spec.params.lengths
    k1 = l1 / l2
    k2 = l1 * l2 / hbar
    k3 = hbar / (l1 * l2)
    return np.array(
        [
            [0.0, -k1 * c, 0.0, -k2 * s],
            [-c / k1, 0.0, -k2 * s, 0.0],
            [0.0, -k3 * s, 0.0, c / k1],
            [-k3 * s, 0.0, k1 * c, 0.0],
        ]
    )


def squeeze_matrix_n2(spec: SqueezeSpec) -> SympMatrix:
    """Two-mode squeeze matrix cosh(R) I + sinh(R) K(phi), grouped ordering.

    K is the direction matrix with K^2 = I; the (4, 3) entry carries
    cos(phi), matching the exponential of the generator (see NOTES.md).
    """
    _require_modes(spec, 2)
    K = _direction_n2(spec, np.cos(spec.angle), np.sin(spec.angle))
    M = np.cosh(spec.R) * np.eye(4) + np.sinh(spec.R) * K
    return SympMatrix(2, M)


def _d_matrix_d_angle_n2(spec: SqueezeSpec) -> np.ndarray:
    # dK/dphi just swaps c -> -s, s -> c in the direction matrix
    return np.sinh(spec.R) * _direction_n2(
        spec, -np.sin(spec.angle), np.cos(spec.angle)
    )


def squeeze_circle_path(modes: int, R: float, params: OscParams) -> SympPath:
    """Closed path sweeping the squeeze angle once at fixed magnitude.

    t in [0, 1] maps to angle 2 pi t; tangents are the hand-differentiated
    matrices times 2 pi, so no finite-difference error enters downstream
    phase integrals.
    """
    if modes not in (1, 2):
        raise ValueError(f"squeeze circles cover 1 or 2 modes, got {modes}")
    matrix_fn = squeeze_matrix_n1 if modes == 1 else squeeze_matrix_n2
    tangent_fn = _d_matrix_d_angle_n1 if modes == 1 else _d_matrix_d_angle_n2

    def eval_path(t: float) -> SympMatrix:
        return matrix_fn(SqueezeSpec(modes=modes, R=R, angle=_TWO_PI * t, params=params))

    def tangent_path(t: float) -> np.ndarray:
        return _TWO_PI * tangent_fn(
            SqueezeSpec(modes=modes, R=R, angle=_TWO_PI * t, params=params)
        )

    return SympPath(n=modes, eval=eval_path, tangent=tangent_path, closed=True)


def reference_phase(modes: int, R: float) -> float:
    """Closed-form circle phase: -pi sinh^2(R), doubled for two modes."""
    if modes not in (1, 2):
        raise ValueError(f"reference phases cover 1 or 2 modes, got {modes}")
    R = float(R)
    if not (np.isfinite(R) and R >= 0):
        raise ValueError(f"magnitude must be finite and >= 0, got {R!r}")
    return -modes * np.pi * np.sinh(R) ** 2
