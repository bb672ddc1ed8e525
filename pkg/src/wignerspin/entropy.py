"""Von Neumann and Shannon entropies (in bits) and the extremum conditions.

Conventions: ``0 log 0 = 0``; eigenvalues in ``[-1e-12, 0)`` are rounding and are
clamped to zero, anything more negative is a bug upstream and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ContractViolation, DomainError
from .kinematics import as_rapidity
from .states import PairWeights, _DensityMatrix
from .wigner import GeometryParams, WignerCoeffs

NEGATIVE_TOL = 1e-12
ZERO_CUTOFF = 1e-15

#: Bracket for the extremum solvers, in rapidity (cosh alpha in [1, cosh 50]).
ALPHA_BRACKET = (0.0, 50.0)


def entropy_bits(probs, axis=-1):
    """``-sum p log2 p`` along ``axis``."""
    p = np.asarray(probs, dtype=float)
    if np.any(p < -NEGATIVE_TOL):
        raise ContractViolation(f"negative probability {p.min():.3g} beyond tolerance")
    safe = np.where(p < ZERO_CUTOFF, 1.0, p)
    terms = np.where(p < ZERO_CUTOFF, 0.0, -p * np.log2(safe))
    out = np.sum(terms, axis=axis)
    # avoid reporting -0.0
    out = out + 0.0
    return float(out) if np.ndim(out) == 0 else out


def von_neumann(dm):
    """Von Neumann entropy ``-Tr rho log2 rho`` of a (possibly stacked) density matrix."""
    m = dm.matrix if isinstance(dm, _DensityMatrix) else np.asarray(dm)
    return entropy_bits(np.linalg.eigvalsh(m))


def eigen_closed_form(det_value):
    """Eigenvalues ``1/2 +- sqrt(1 - 4 det)/2`` of a unit-trace 2x2 density matrix.

    Returns ``(lambda1, lambda2)`` with ``lambda1 >= lambda2``.
    """
    d = np.asarray(det_value, dtype=float)
    if np.any(d < -NEGATIVE_TOL) or np.any(d > 0.25 + NEGATIVE_TOL):
        raise DomainError("determinant of a 2x2 density matrix must lie in [0, 1/4]")
    root = np.sqrt(np.clip(1.0 - 4.0 * d, 0.0, 1.0))
    lam1, lam2 = 0.5 + root / 2.0, 0.5 - root / 2.0
    if np.ndim(lam1) == 0:
        return float(lam1), float(lam2)
    return lam1, lam2


def determinant_distinguishable(weights: PairWeights, w_theta: WignerCoeffs, w_zero: WignerCoeffs, theta):
    """``det rho' = p1 p2 a(theta)^2 b(0)^2 (cos theta - 1)^2``."""
    return weights.p1 * weights.p2 * np.asarray(w_theta.a) ** 2 * np.asarray(w_zero.b) ** 2 * (
        np.cos(theta) - 1.0
    ) ** 2


def bell_populations(weights: PairWeights, w1: WignerCoeffs, w2: WignerCoeffs):
    """Singlet and triplet populations ``(p1 a0^2 + p2 at^2, p1 b0^2 + p2 bt^2)``."""
    singlet = weights.p1 * np.asarray(w1.a) ** 2 + weights.p2 * np.asarray(w2.a) ** 2
    triplet = weights.p1 * np.asarray(w1.b) ** 2 + weights.p2 * np.asarray(w2.b) ** 2
    return singlet, triplet


def shannon(weights: PairWeights, w1: WignerCoeffs, w2: WignerCoeffs):
    """Shannon entropy of the four z-spin outcomes.

    Each Bell population splits evenly over two outcomes, which contributes the
    constant 1 bit on top of the binary entropy of the populations.
    """
    singlet, triplet = bell_populations(weights, w1, w2)
    return entropy_bits(np.stack([singlet, triplet], axis=-1)) + 1.0


def vn_indistinguishable(weights: PairWeights, w1: WignerCoeffs, w2: WignerCoeffs):
    """Von Neumann entropy of the antisymmetrized state (diagonal in the Bell basis)."""
    singlet, triplet = bell_populations(weights, w1, w2)
    return entropy_bits(np.stack([singlet, triplet], axis=-1))


def mixing_entropy(weights: PairWeights) -> float:
    """``-p1 log2 p1 - p2 log2 p2``."""
    return entropy_bits([weights.p1, weights.p2])


def pair_relation_lhs(phi, alpha):
    """``((cosh alpha + cosh phi) / (sinh alpha sinh phi))^2``, symmetric in its arguments."""
    phi = np.asarray(phi, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    with np.errstate(divide="ignore"):
        return ((np.cosh(alpha) + np.cosh(phi)) / (np.sinh(alpha) * np.sinh(phi))) ** 2


def max_condition_distinguishable(g: GeometryParams):
    """Residual ``LHS + cos(theta)`` of the maximum-entropy relation for the distinguishable state.

    The relation ``((ch a + ch p)/(sh a sh p))^2 = -cos theta`` holds exactly where
    ``det rho' = p1 p2``, i.e. the entropy reaches ``-p1 log p1 - p2 log p2``.
    Since ``LHS >= 1``, there is no root for ``theta <= pi/2``: the residual is
    then strictly positive.
    """
    return pair_relation_lhs(g.phi, g.alpha) + np.cos(g.theta)


@dataclass(frozen=True)
class ExtremumSolution:
    """Boost rapidity at which an extremum relation holds, with both sides evaluated."""

    alpha: float
    condition_lhs: float
    condition_rhs: float

    @property
    def residual(self) -> float:
        return abs(self.condition_lhs - self.condition_rhs)


def solve_alpha_at_max(phi, theta: float) -> Optional[ExtremumSolution]:
    """Boost rapidity maximizing the distinguishable entropy, in closed form.

    ``cosh alpha = (-cosh phi - sinh^2 phi sqrt(-cos t (1 - cos t))) / (1 + cos t sinh^2 phi)``

    Returns ``None`` outside the solution regime (``theta <= pi/2`` or
    ``1 + cos(theta) sinh^2(phi) >= 0``).
    """
    phi = as_rapidity(phi)
    c = np.cos(theta)
    den = 1.0 + c * np.sinh(phi) ** 2
    if not (theta > np.pi / 2 and c < 0.0 and den < 0.0):
        return None
    cosh_alpha = (-np.cosh(phi) - np.sinh(phi) ** 2 * np.sqrt(-c * (1.0 - c))) / den
    alpha = float(np.arccosh(cosh_alpha))
    return ExtremumSolution(alpha, float(pair_relation_lhs(phi, alpha)), float(-c))


def limiting_cosh_alpha_at_max(theta: float) -> float:
    """``sqrt(1 - 1/cos theta)``: where the maximum sits as the ejection speed goes to one."""
    if not np.cos(theta) < 0.0:
        raise DomainError("the limit exists only for theta > pi/2")
    return float(np.sqrt(1.0 - 1.0 / np.cos(theta)))


def extremum_condition_indistinguishable(theta, weights: PairWeights):
    """Right-hand side of the extremum relation for the Shannon / antisymmetrized entropies.

    ``((p1 - p2) sin^2 t + sqrt((p1 - p2)^2 sin^4 t + 4 cos^2 t)) / 2``.  Where
    ``pair_relation_lhs`` equals it, the singlet and triplet populations are
    both 1/2.
    """
    d = weights.p1 - weights.p2
    s2 = np.sin(theta) ** 2
    c2 = np.cos(theta) ** 2
    out = (d * s2 + np.sqrt(d**2 * s2**2 + 4.0 * c2)) / 2.0
    return float(out) if np.ndim(out) == 0 else out


def bisect_alpha(
    phi, target: float, tol: float = 1e-13, max_iter: int = 400
) -> Optional[ExtremumSolution]:
    """Solve ``pair_relation_lhs(phi, alpha) = target`` by bisection on ``alpha``.

    The left side decreases monotonically from +inf (alpha -> 0) towards
    ``1 / sinh^2 phi``, so a root exists iff ``target > 1/sinh^2 phi`` and it
    lies inside ``ALPHA_BRACKET``.  Stops once the residual is below ``tol``
    (relative to ``max(1, target)``) or the bracket cannot shrink further.
    """
    phi = as_rapidity(phi)
    f: Callable[[float], float] = lambda a: float(pair_relation_lhs(phi, a)) - target
    lo, hi = ALPHA_BRACKET
    if phi == 0.0 or not target > 0.0 or f(hi) > 0.0:
        return None
    lo = np.nextafter(lo, hi)
    scale = max(1.0, abs(target))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol * scale or mid in (lo, hi):
            break
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
    return ExtremumSolution(float(mid), float(pair_relation_lhs(phi, mid)), float(target))


def solve_alpha_indistinguishable(phi, theta: float, weights: PairWeights) -> Optional[ExtremumSolution]:
    """Boost rapidity where the Shannon / antisymmetrized entropies peak (1 bit of mixing)."""
    return bisect_alpha(phi, extremum_condition_indistinguishable(theta, weights))


def superrelativistic_extremes(weights: PairWeights):
    """Limits ``(S_Shannon, S_vN)`` at ``theta = pi/2`` when both speeds go to one.

    The state becomes the triplet with weight ``p1`` mixed with the singlet with
    weight ``p2``.
    """
    s = mixing_entropy(weights)
    return s + 1.0, s
