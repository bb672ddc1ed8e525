"""Boosted pair states and their spin-only (momentum-traced) density matrices.

Two bases are used:

* the Bell sub-basis ``[singlet, triplet]`` with singlet ``(|ud> - |du>)/sqrt(2)``
  and triplet ``(|uu> + |dd>)/sqrt(2)``; every state built here lives in it;
* the product basis ``[uu, ud, du, dd]`` of z-spin outcomes.

Tracing out the momenta is done operationally: pair states ejected along
different directions carry orthogonal momentum states, so their cross terms
drop and the reduced state is the probability-weighted sum of per-direction
projectors.  Only the weights ``p_i = |c_i|^2`` matter.

Density matrices may be stacked: a ``BellBasisDM`` wraps an array of shape
``(..., 2, 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError
from .wigner import WignerCoeffs

_TOL = 1e-12

_S = 1.0 / np.sqrt(2.0)
#: Columns: singlet and triplet expressed in the product basis [uu, ud, du, dd].
BELL_TO_PRODUCT = np.array(
    [
        [0.0, _S],
        [_S, 0.0],
        [-_S, 0.0],
        [0.0, _S],
    ]
)
BELL_TO_PRODUCT.setflags(write=False)


@dataclass(frozen=True)
class PairWeights:
    """Probabilities of the two pair directions; ``p1 + p2 = 1``."""

    p1: float
    p2: float

    def __post_init__(self):
        p1, p2 = float(self.p1), float(self.p2)
        if p1 < 0.0 or p2 < 0.0 or abs(p1 + p2 - 1.0) > _TOL:
            raise DomainError(f"weights must be non-negative and sum to 1, got ({p1}, {p2})")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @classmethod
    def from_p1(cls, p1: float) -> "PairWeights":
        return cls(p1, 1.0 - p1)


@dataclass(frozen=True, eq=False)
class _DensityMatrix:
    matrix: np.ndarray = field(repr=False)

    dim = 0

    def __post_init__(self):
        m = np.array(self.matrix)
        if m.shape[-2:] != (self.dim, self.dim):
            raise DomainError(f"expected (..., {self.dim}, {self.dim}) matrix, got {m.shape}")
        if not np.allclose(m, np.conj(np.swapaxes(m, -1, -2)), rtol=0.0, atol=_TOL):
            raise DomainError("density matrix is not Hermitian")
        if not np.allclose(np.trace(m, axis1=-2, axis2=-1), 1.0, rtol=0.0, atol=_TOL):
            raise DomainError("density matrix does not have unit trace")
        if np.any(np.linalg.eigvalsh(m) < -_TOL):
            raise DomainError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues, shape ``(..., dim)``."""
        return np.linalg.eigvalsh(self.matrix)

    def det(self):
        return np.real(np.linalg.det(self.matrix))

    def __repr__(self):
        return f"{type(self).__name__}({np.array2string(np.asarray(self.matrix), precision=6)})"


class BellBasisDM(_DensityMatrix):
    """2x2 density matrix over ``[singlet, triplet]``."""

    dim = 2


class ProductBasisDM(_DensityMatrix):
    """4x4 density matrix over ``[uu, ud, du, dd]``."""

    dim = 4


def boosted_pair_bell_vector(w: WignerCoeffs) -> np.ndarray:
    """Amplitudes ``(a, b)`` of the boosted pair over ``[singlet, triplet]``."""
    return np.stack(np.broadcast_arrays(np.asarray(w.a, float), np.asarray(w.b, float)), axis=-1)


def _projector(w: WignerCoeffs) -> np.ndarray:
    v = boosted_pair_bell_vector(w)
    return v[..., :, None] * v[..., None, :]


def general_superposition_dm(weights: Sequence[float], coeffs: Sequence[WignerCoeffs]) -> BellBasisDM:
    """Reduced state of ``sum_i c_i |pair(theta_i)>``: ``sum_i p_i |v_i><v_i|``.

    Args:
        weights: probabilities ``p_i = |c_i|^2``, summing to one.
        coeffs: boosted-pair amplitudes of each direction, same length.
    """
    weights = [float(p) for p in weights]
    coeffs = list(coeffs)
    if len(weights) != len(coeffs) or not weights:
        raise DomainError("weights and coefficients must be non-empty lists of equal length")
    if min(weights) < 0.0 or abs(sum(weights) - 1.0) > _TOL:
        raise DomainError(f"weights must be non-negative and sum to 1, got {weights}")
    rho = sum(p * _projector(w) for p, w in zip(weights, coeffs))
    return BellBasisDM(rho)


def reduced_dm_distinguishable(weights: PairWeights, w1: WignerCoeffs, w2: WignerCoeffs) -> BellBasisDM:
    """Reduced state of ``c1 |pair(0)> + c2 |pair(theta)>``.

    ``w1`` holds the amplitudes at ``theta = 0`` and ``w2`` those at ``theta``.
    Entries are written out explicitly::

        [[p1 a0^2 + p2 at^2,     p1 a0 b0 + p2 at bt],
         [p1 a0 b0 + p2 at bt,   p1 b0^2 + p2 bt^2  ]]
    """
    p1, p2 = weights.p1, weights.p2
    a0, b0 = np.asarray(w1.a, float), np.asarray(w1.b, float)
    at, bt = np.asarray(w2.a, float), np.asarray(w2.b, float)
    a0, b0, at, bt = np.broadcast_arrays(a0, b0, at, bt)
    off = p1 * a0 * b0 + p2 * at * bt
    rho = np.empty(a0.shape + (2, 2))
    rho[..., 0, 0] = p1 * a0**2 + p2 * at**2
    rho[..., 1, 1] = p1 * b0**2 + p2 * bt**2
    rho[..., 0, 1] = off
    rho[..., 1, 0] = off
    return BellBasisDM(rho)


def reduced_dm_indistinguishable(weights: PairWeights, w1: WignerCoeffs, w2: WignerCoeffs) -> BellBasisDM:
    """Reduced state of the spatially antisymmetrized two-direction superposition.

    The state superposes the four pair directions ``(0, theta, pi, pi + theta)``
    with ``c3 = -c1`` and ``c4 = -c2``.  A pair seen from ``theta + pi`` keeps
    ``a`` and flips the sign of ``b``, so the off-diagonal terms cancel and the
    result is diagonal in the Bell sub-basis.
    """
    p1, p2 = weights.p1, weights.p2
    return general_superposition_dm(
        [p1 / 2.0, p2 / 2.0, p1 / 2.0, p2 / 2.0],
        [w1, w2, w1.flipped(), w2.flipped()],
    )


def to_product_basis(dm: BellBasisDM) -> ProductBasisDM:
    """Embed a Bell sub-basis state into the 4x4 z-spin product basis."""
    m = dm.matrix if isinstance(dm, BellBasisDM) else np.asarray(dm)
    return ProductBasisDM(BELL_TO_PRODUCT @ m @ BELL_TO_PRODUCT.T)


def outcome_probabilities(dm: BellBasisDM) -> np.ndarray:
    """Probabilities of the z-spin outcomes ``[uu, ud, du, dd]``, shape ``(..., 4)``."""
    return np.real(np.diagonal(to_product_basis(dm).matrix, axis1=-2, axis2=-1))
