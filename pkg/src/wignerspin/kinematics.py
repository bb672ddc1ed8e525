"""Four-vectors, pure boosts and the Wigner rotation built by explicit matrix products.

Everything here works in units with c = 1 and the metric ``diag(+1, -1, -1, -1)``.
Index order of every 4-vector and every 4x4 matrix is ``(t, x, y, z)``.

The ``*_arrays`` functions are the vectorized kernels: they broadcast over any
leading axes and are what the single-value wrappers call.  They exist so that
grid-sized oracle checks (10^5 points) stay fast without a second code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ContractViolation, DomainError

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
ETA.setflags(write=False)

#: Deviation of the first row/column from (1, 0, 0, 0) tolerated by
#: :func:`rotation_angle_axis` before the input is rejected.
ROTATION_TOL = 1e-8


@dataclass(frozen=True)
class Rapidity:
    """Hyperbolic velocity parameter, ``v = tanh(value)``."""

    value: float

    def __post_init__(self):
        value = float(self.value)
        if not np.isfinite(value) or value < 0.0:
            raise DomainError(f"rapidity must be finite and >= 0, got {self.value!r}")
        object.__setattr__(self, "value", value)

    @classmethod
    def from_velocity(cls, v: float) -> "Rapidity":
        if not 0.0 <= v < 1.0:
            raise DomainError(f"speed must lie in [0, 1), got {v!r}")
        return cls(float(np.arctanh(v)))

    @property
    def velocity(self) -> float:
        return float(np.tanh(self.value))

    def __float__(self) -> float:
        return self.value


RapidityLike = Union[Rapidity, float]


def as_rapidity(x: RapidityLike) -> float:
    """Return the plain float value of a rapidity given as ``Rapidity`` or number."""
    if isinstance(x, Rapidity):
        return x.value
    return Rapidity(x).value


@dataclass(frozen=True)
class FourMomentum:
    """Timelike 4-momentum ``(e, px, py, pz)`` of a massive particle."""

    e: float
    px: float
    py: float
    pz: float

    def __post_init__(self):
        for name in ("e", "px", "py", "pz"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.e > 0.0:
            raise DomainError(f"energy must be positive, got {self.e}")
        m2 = self.e**2 - (self.px**2 + self.py**2 + self.pz**2)
        if not m2 > 1e-10 * self.e**2:
            raise DomainError(f"4-momentum is not timelike (m^2 = {m2:g})")

    @classmethod
    def from_array(cls, arr) -> "FourMomentum":
        e, px, py, pz = np.asarray(arr, dtype=float).reshape(4)
        return cls(e, px, py, pz)

    def as_array(self) -> np.ndarray:
        return np.array([self.e, self.px, self.py, self.pz])

    @property
    def momentum(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])

    @property
    def mass(self) -> float:
        # (e - |p|)(e + |p|) keeps precision when e >> m
        p = float(np.linalg.norm(self.momentum))
        return float(np.sqrt((self.e - p) * (self.e + p)))


@dataclass(frozen=True, eq=False)
class LorentzMatrix:
    """Proper orthochronous Lorentz transformation acting on column 4-vectors.

    The metric condition ``m.T @ ETA @ m == ETA`` is checked entrywise at a
    tolerance of ``1e-10 * max(1, magnitude * max|m|)``.  ``magnitude`` bounds
    the rounding amplification: for a freshly built matrix it is its largest
    entry, and products multiply the magnitudes of their factors, because a
    product of large boosts can be O(1) while carrying their rounding.
    """

    m: np.ndarray = field(repr=False)
    magnitude: float = field(default=0.0, repr=False, compare=False)

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {m.shape}")
        largest = float(np.max(np.abs(m)))
        magnitude = max(float(self.magnitude), largest, 1.0)
        tol = 1e-10 * max(1.0, magnitude * largest)
        if not np.allclose(m.T @ ETA @ m, ETA, rtol=0.0, atol=tol):
            raise DomainError("matrix does not preserve the Minkowski metric")
        if m[0, 0] < 1.0 - tol:
            raise DomainError("matrix is not orthochronous")
        if abs(np.linalg.det(m) - 1.0) > tol * largest**2:
            raise DomainError("matrix is not proper (det != +1)")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "magnitude", magnitude)

    @classmethod
    def identity(cls) -> "LorentzMatrix":
        return cls(np.eye(4))

    def inverse(self) -> "LorentzMatrix":
        return LorentzMatrix(ETA @ self.m.T @ ETA, self.magnitude)

    def __matmul__(self, other):
        if isinstance(other, LorentzMatrix):
            return LorentzMatrix(self.m @ other.m, self.magnitude * other.magnitude)
        if isinstance(other, FourMomentum):
            return FourMomentum.from_array(self.m @ other.as_array())
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LorentzMatrix):
            return NotImplemented
        return bool(np.array_equal(self.m, other.m))

    def allclose(self, other: "LorentzMatrix", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.m, other.m, rtol=0.0, atol=atol))

    def __repr__(self):
        return f"LorentzMatrix({np.array2string(self.m, precision=6)})"


@dataclass(frozen=True)
class RotationAngleAxis:
    """Spatial rotation by ``angle`` (radians, in [0, pi]) about a unit ``axis``."""

    angle: float
    axis: tuple

    def __post_init__(self):
        angle = float(self.angle)
        axis = np.asarray(self.axis, dtype=float).reshape(3)
        if not -1e-12 <= angle <= np.pi + 1e-12:
            raise DomainError(f"rotation angle must lie in [0, pi], got {angle}")
        if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
            raise DomainError(f"rotation axis must be a unit vector, got {axis}")
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "axis", tuple(float(c) for c in axis))

    def matrix(self) -> LorentzMatrix:
        """Re-synthesize the 4x4 rotation with Rodrigues' formula."""
        return LorentzMatrix(rotation_arrays(self.angle, np.asarray(self.axis)))


# --------------------------------------------------------------------------
# vectorized kernels
# --------------------------------------------------------------------------


def boost_arrays(rapidity, direction) -> np.ndarray:
    """Pure boost matrices, shape ``(..., 4, 4)``.

    ``rapidity`` has shape ``(...)`` and ``direction`` shape ``(..., 3)``; both
    broadcast.  Directions are assumed to be unit vectors.
    """
    rapidity = np.asarray(rapidity, dtype=float)
    n = np.asarray(direction, dtype=float)
    shape = np.broadcast_shapes(rapidity.shape, n.shape[:-1])
    rapidity = np.broadcast_to(rapidity, shape)
    n = np.broadcast_to(n, shape + (3,))
    ch = np.cosh(rapidity)[..., None]
    sh = np.sinh(rapidity)[..., None]
    out = np.zeros(shape + (4, 4))
    out[..., 0, 0] = ch[..., 0]
    out[..., 0, 1:] = sh * n
    out[..., 1:, 0] = sh * n
    out[..., 1:, 1:] = np.eye(3) + (ch - 1.0)[..., None] * n[..., :, None] * n[..., None, :]
    return out


def standard_boost_arrays(p, mass=None) -> np.ndarray:
    """Pure boosts taking ``(m, 0, 0, 0)`` to ``p``; ``p`` has shape ``(..., 4)``.

    Built from ``E/m`` and ``p/m`` directly rather than from a rapidity so that
    no ``atanh`` of a number close to one is ever taken.
    """
    p = np.asarray(p, dtype=float)
    e = p[..., 0]
    vec = p[..., 1:]
    if mass is None:
        pn = np.linalg.norm(vec, axis=-1)
        mass = np.sqrt((e - pn) * (e + pn))
    mass = np.asarray(mass, dtype=float)
    out = np.zeros(p.shape[:-1] + (4, 4))
    out[..., 0, 0] = e / mass
    out[..., 0, 1:] = vec / mass[..., None]
    out[..., 1:, 0] = vec / mass[..., None]
    out[..., 1:, 1:] = np.eye(3) + (
        vec[..., :, None] * vec[..., None, :] / (mass * (e + mass))[..., None, None]
    )
    return out


def inverse_arrays(m) -> np.ndarray:
    """Lorentz inverse ``ETA m^T ETA`` over stacked matrices."""
    return ETA @ np.swapaxes(m, -1, -2) @ ETA


def rotation_arrays(angle, axis) -> np.ndarray:
    """4x4 spatial rotations (Rodrigues), broadcasting ``angle (...)``, ``axis (..., 3)``."""
    angle = np.asarray(angle, dtype=float)
    n = np.asarray(axis, dtype=float)
    shape = np.broadcast_shapes(angle.shape, n.shape[:-1])
    angle = np.broadcast_to(angle, shape)
    n = np.broadcast_to(n, shape + (3,))
    k = np.zeros(shape + (3, 3))
    k[..., 0, 1], k[..., 0, 2] = -n[..., 2], n[..., 1]
    k[..., 1, 0], k[..., 1, 2] = n[..., 2], -n[..., 0]
    k[..., 2, 0], k[..., 2, 1] = -n[..., 1], n[..., 0]
    s = np.sin(angle)[..., None, None]
    c = np.cos(angle)[..., None, None]
    out = np.zeros(shape + (4, 4))
    out[..., 0, 0] = 1.0
    out[..., 1:, 1:] = np.eye(3) + s * k + (1.0 - c) * (k @ k)
    return out


def model_momentum_arrays(phi, theta, mass=1.0) -> np.ndarray:
    """``p(theta) = m (cosh phi, sinh phi cos theta, 0, sinh phi sin theta)``."""
    phi, theta = np.broadcast_arrays(np.asarray(phi, float), np.asarray(theta, float))
    out = np.zeros(phi.shape + (4,))
    out[..., 0] = mass * np.cosh(phi)
    out[..., 1] = mass * np.sinh(phi) * np.cos(theta)
    out[..., 3] = mass * np.sinh(phi) * np.sin(theta)
    return out


#: Direction of the frame boost in this model: the parent moves along -z in the lab.
BOOST_DIRECTION = np.array([0.0, 0.0, -1.0])
BOOST_DIRECTION.setflags(write=False)


def wigner_arrays(alpha, phi, theta, mass=1.0) -> np.ndarray:
    """``W = L^-1(Lambda p) Lambda L(p)`` over a broadcast grid of ``(alpha, phi, theta)``.

    ``Lambda`` is the boost of rapidity ``alpha`` along ``-z`` and ``p`` the
    momentum of rapidity ``phi`` at angle ``theta`` in the x-z plane.
    """
    alpha, phi, theta = np.broadcast_arrays(
        np.asarray(alpha, float), np.asarray(phi, float), np.asarray(theta, float)
    )
    p = model_momentum_arrays(phi, theta, mass)
    lam = boost_arrays(alpha, BOOST_DIRECTION)
    lam_p = np.einsum("...ij,...j->...i", lam, p)
    mass_arr = np.full(alpha.shape, float(mass))
    return (
        inverse_arrays(standard_boost_arrays(lam_p, mass_arr))
        @ lam
        @ standard_boost_arrays(p, mass_arr)
    )


def angle_axis_arrays(w):
    """Rotation angle in [0, pi] and unit axis of stacked 4x4 rotations.

    The angle comes from ``atan2(sin, cos)`` with ``cos = (tr R - 1)/2`` and
    ``sin`` from the antisymmetric part; this equals ``arccos((tr R - 1)/2)``
    but keeps full precision for small angles.  Zero-angle rotations get the
    canonical axis ``+y``.
    """
    w = np.asarray(w, dtype=float)
    r = w[..., 1:, 1:]
    u = np.stack(
        [r[..., 2, 1] - r[..., 1, 2], r[..., 0, 2] - r[..., 2, 0], r[..., 1, 0] - r[..., 0, 1]],
        axis=-1,
    )
    un = np.linalg.norm(u, axis=-1)
    cos_angle = (np.trace(r, axis1=-2, axis2=-1) - 1.0) / 2.0
    angle = np.arctan2(un / 2.0, cos_angle)

    axis = np.zeros(u.shape)
    axis[..., 1] = 1.0
    ok = un > 1e-14
    axis[ok] = u[ok] / un[ok][..., None]

    # near pi the antisymmetric part vanishes; recover the axis from (R + I)/2 = n n^T
    near_pi = ~ok & (cos_angle < 0.0)
    if np.any(near_pi):
        sym = (r[near_pi] + np.eye(3)) / 2.0
        col = np.argmax(np.diagonal(sym, axis1=-2, axis2=-1), axis=-1)
        vec = sym[np.arange(len(col)), :, col]
        axis[near_pi] = vec / np.linalg.norm(vec, axis=-1)[..., None]
    return angle, axis


# --------------------------------------------------------------------------
# single-value operations
# --------------------------------------------------------------------------


def four_momentum(mass: float, speed: float, theta: float) -> FourMomentum:
    """Momentum of a particle of ``mass`` moving at ``speed`` in the x-z plane.

    ``theta`` is measured from the +x axis toward +z.
    """
    if not mass > 0.0:
        raise DomainError(f"mass must be positive, got {mass!r}")
    if not 0.0 <= speed < 1.0:
        raise DomainError(f"speed must lie in [0, 1), got {speed!r}")
    gamma = 1.0 / np.sqrt((1.0 - speed) * (1.0 + speed))
    pm = gamma * mass * speed
    return FourMomentum(gamma * mass, pm * np.cos(theta), 0.0, pm * np.sin(theta))


def _unit(direction) -> np.ndarray:
    n = np.asarray(direction, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise DomainError(f"direction must be a unit vector, got {n}")
    return n


def boost_matrix(rapidity: RapidityLike, direction) -> LorentzMatrix:
    """Pure boost of the given rapidity along a unit ``direction``."""
    return LorentzMatrix(boost_arrays(as_rapidity(rapidity), _unit(direction)))


def standard_boost(p: FourMomentum) -> LorentzMatrix:
    """The pure boost ``L(p)`` taking the rest momentum ``(m, 0, 0, 0)`` to ``p``."""
    if not isinstance(p, FourMomentum):
        p = FourMomentum.from_array(p)
    return LorentzMatrix(standard_boost_arrays(p.as_array(), p.mass))


def wigner_matrix_numeric(boost: LorentzMatrix, p: FourMomentum) -> LorentzMatrix:
    """Compose ``L^-1(boost p) boost L(p)``; for massive ``p`` this is a pure rotation."""
    lam_p = boost @ p
    return standard_boost(lam_p).inverse() @ boost @ standard_boost(p)


def rotation_angle_axis(w: LorentzMatrix) -> RotationAngleAxis:
    """Extract angle and axis from a pure spatial rotation.

    Raises:
        ContractViolation: if the first row or column of ``w`` differs from
            ``(1, 0, 0, 0)`` by more than ``ROTATION_TOL``.
    """
    m = w.m if isinstance(w, LorentzMatrix) else np.asarray(w, dtype=float)
    e0 = np.array([1.0, 0.0, 0.0, 0.0])
    dev = max(np.max(np.abs(m[0] - e0)), np.max(np.abs(m[:, 0] - e0)))
    if dev > ROTATION_TOL:
        raise ContractViolation(f"not a pure spatial rotation (deviation {dev:.3g})")
    angle, axis = angle_axis_arrays(m)
    return RotationAngleAxis(float(angle), tuple(axis))
