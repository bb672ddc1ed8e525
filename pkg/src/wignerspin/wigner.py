"""Closed-form Wigner-rotation coefficients for the back-to-back pair geometry.

The geometry is fixed: the parent (centre-of-mass frame) moves along ``-z`` in
the lab with boost rapidity ``alpha``; each daughter moves in the x-z plane with
ejection rapidity ``phi`` at angle ``theta`` from +x toward +z, its partner at
``theta + pi``.  With that geometry the spin-1/2 representation of the Wigner
rotation is real::

    D = [[A, -B],
         [B,  A]]

and a centre-of-mass singlet becomes ``a * singlet + b * triplet`` in the lab,
where "triplet" means ``(|uu> + |dd>)/sqrt(2)``.

All functions broadcast over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, DomainError
from .kinematics import RotationAngleAxis, as_rapidity, Rapidity

#: Documented validity bound of the second-order small-velocity expansion.
NONREL_MAX_SPEED = 0.1


def _as_float_array(x):
    if isinstance(x, Rapidity):
        return x.value
    return np.asarray(x, dtype=float) if np.ndim(x) else float(x)


@dataclass(frozen=True)
class GeometryParams:
    """Ejection rapidity ``phi``, boost rapidity ``alpha`` and pair angle ``theta``.

    Fields may be scalars or broadcastable arrays.  ``theta`` is not range
    checked here, since ``theta + pi`` evaluations are legitimate.
    """

    phi: float
    alpha: float
    theta: float

    def __post_init__(self):
        phi = _as_float_array(self.phi)
        alpha = _as_float_array(self.alpha)
        theta = _as_float_array(self.theta)
        for name, val in (("phi", phi), ("alpha", alpha)):
            if not np.all(np.isfinite(val)) or np.any(np.asarray(val) < 0.0):
                raise DomainError(f"{name} must be a finite rapidity >= 0")
        if not np.all(np.isfinite(theta)):
            raise DomainError("theta must be finite")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_velocities(cls, v: float, V: float, theta: float) -> "GeometryParams":
        """Build from ejection speed ``v`` and boost speed ``V``."""
        return cls(Rapidity.from_velocity(v).value, Rapidity.from_velocity(V).value, theta)


@dataclass(frozen=True)
class SingleCoeffs:
    """Entries ``A`` (diagonal) and ``B`` (lower off-diagonal) of the spin rotation."""

    a_coeff: float
    b_coeff: float


@dataclass(frozen=True)
class WignerCoeffs:
    """Singlet amplitude ``a`` and triplet amplitude ``b`` of a boosted pair."""

    a: float
    b: float

    def __post_init__(self):
        norm = np.asarray(self.a) ** 2 + np.asarray(self.b) ** 2
        if not np.allclose(norm, 1.0, rtol=0.0, atol=1e-12):
            raise DomainError("pair coefficients must satisfy a^2 + b^2 = 1")

    @classmethod
    def unnormalized(cls, a, b) -> "WignerCoeffs":
        """Wrap truncated approximations that only satisfy the norm to some order."""
        out = object.__new__(cls)
        object.__setattr__(out, "a", a)
        object.__setattr__(out, "b", b)
        return out

    def flipped(self) -> "WignerCoeffs":
        """Coefficients of the same pair seen from the partner (``theta + pi``)."""
        return WignerCoeffs(self.a, -self.b)


def coeff_AB(g: GeometryParams) -> SingleCoeffs:
    """Single-particle rotation entries ``A(phi, alpha, theta)``, ``B(phi, alpha, theta)``.

    ``A = (ch(a/2) ch(p/2) - sh(a/2) sh(p/2) sin t) / D`` and
    ``B = sh(a/2) sh(p/2) cos t / D`` with
    ``D^2 = 1/2 + ch a ch p / 2 - sh a sh p sin t / 2``.

    Products of the form ``ch x ch y - sh x sh y s`` are evaluated as
    ``ch x ch y (1 - s) + s cosh(x - y)`` with ``1 - sin t = 2 sin^2(pi/4 - t/2)``;
    the literal expression loses ~1e-9 relative accuracy at rapidity 8.
    """
    ha, hp = g.alpha / 2.0, g.phi / 2.0
    sin_t = np.sin(g.theta)
    one_minus_sin = 2.0 * np.sin(np.pi / 4.0 - g.theta / 2.0) ** 2
    den = np.sqrt(
        0.5
        + 0.5 * (np.cosh(g.alpha) * np.cosh(g.phi) * one_minus_sin + sin_t * np.cosh(g.alpha - g.phi))
    )
    a = (np.cosh(ha) * np.cosh(hp) * one_minus_sin + sin_t * np.cosh(ha - hp)) / den
    b = np.sinh(ha) * np.sinh(hp) * np.cos(g.theta) / den
    return SingleCoeffs(a, b)


def pair_terms(phi, alpha, theta):
    """Return ``(cosh a + cosh p, sinh a sinh p cos theta, root)`` for the pair formulas.

    ``root`` is ``sqrt((1 + ch_a ch_p)^2 - sh_a^2 sh_p^2 sin^2 theta)``, evaluated in the
    algebraically equal form ``sqrt((ch_a + ch_p)^2 + sh_a^2 sh_p^2 cos^2 theta)``,
    which has no cancellation when both rapidities are large.
    """
    num_a = np.cosh(alpha) + np.cosh(phi)
    num_b = np.sinh(alpha) * np.sinh(phi) * np.cos(theta)
    root = np.sqrt(num_a**2 + num_b**2)
    return num_a, num_b, root


def pair_coeffs(g: GeometryParams) -> WignerCoeffs:
    """Singlet/triplet amplitudes ``(a, b)`` of the pair ejected at ``theta``."""
    num_a, num_b, root = pair_terms(g.phi, g.alpha, g.theta)
    return WignerCoeffs(num_a / root, num_b / root)


def pair_coeffs_from_AB(g: GeometryParams) -> WignerCoeffs:
    """Same amplitudes, assembled from the two single-particle rotations.

    ``a = A(t) A(t + pi) + B(t) B(t + pi)`` and ``b = B(t) A(t + pi) - A(t) B(t + pi)``.
    Used to cross-check :func:`pair_coeffs`.
    """
    one = coeff_AB(g)
    two = coeff_AB(GeometryParams(g.phi, g.alpha, g.theta + np.pi))
    a = one.a_coeff * two.a_coeff + one.b_coeff * two.b_coeff
    b = one.b_coeff * two.a_coeff - one.a_coeff * two.b_coeff
    return WignerCoeffs(a, b)


def pair_coeffs_velocity(v, alpha, theta) -> WignerCoeffs:
    """Pair amplitudes in terms of the ejection speed ``v`` and boost rapidity ``alpha``.

    Because the amplitudes are symmetric under ``alpha <-> phi``, calling this as
    ``pair_coeffs_velocity(V, phi, theta)`` gives the boost-speed form.
    """
    v = np.asarray(v, dtype=float)
    if np.any(v < 0.0) or np.any(v >= 1.0):
        raise DomainError("speed must lie in [0, 1)")
    alpha = as_rapidity(alpha) if np.ndim(alpha) == 0 else np.asarray(alpha, dtype=float)
    inv_gamma = np.sqrt((1.0 - v) * (1.0 + v))
    ch, sh = np.cosh(alpha), np.sinh(alpha)
    root = np.sqrt((inv_gamma + ch) ** 2 - v**2 * sh**2 * np.sin(theta) ** 2)
    a = (1.0 + inv_gamma * ch) / root
    b = v * sh * np.cos(theta) / root
    if np.ndim(a) == 0:
        a, b = float(a), float(b)
    return WignerCoeffs(a, b)


def pair_coeffs_nonrel(v, alpha, theta) -> WignerCoeffs:
    """Second-order small-``v`` expansion of the pair amplitudes.

    Valid for ``v <= NONREL_MAX_SPEED``; the truncation error is O(v^3).  The
    result is not renormalized, so ``a^2 + b^2 = 1 + O(v^4)``.
    """
    t = np.tanh(np.asarray(alpha, dtype=float) / 2.0)
    c = np.cos(theta)
    a = 1.0 - 0.5 * v**2 * c**2 * t**2
    b = v * c * t
    return WignerCoeffs.unnormalized(a, b)


def su2_arrays(angle, axis):
    """Vectorized half-angle map: ``(cos(angle/2), sign(axis_y) sin(angle/2))``."""
    axis = np.asarray(axis, dtype=float)
    sign = np.where(axis[..., 1] >= 0.0, 1.0, -1.0)
    return np.cos(np.asarray(angle) / 2.0), sign * np.sin(np.asarray(angle) / 2.0)


def su2_from_rotation(r: RotationAngleAxis) -> SingleCoeffs:
    """Spin-1/2 entries of a rotation about ``+y`` or ``-y``.

    For a rotation by ``angle`` about ``s * y`` (``s = +-1``) the SU(2) element
    ``exp(-i angle sigma_y s / 2)`` is ``[[cos, -s sin], [s sin, cos]]`` of the
    half angle, so ``A = cos(angle/2)`` and ``B = s * sin(angle/2)``.

    Raises:
        ContractViolation: if the axis is not along ``+-y`` within 1e-9.
    """
    axis = np.asarray(r.axis)
    if abs(abs(axis[1]) - 1.0) > 1e-9 and r.angle > 1e-12:
        raise ContractViolation(f"rotation axis {axis} is not along +-y")
    a, b = su2_arrays(r.angle, axis)
    return SingleCoeffs(float(a), float(b))
