"""Self-check suite: oracle equivalence and invariants, each reported with its worst deviation."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import entropy as ent
from .kinematics import ETA, angle_axis_arrays, boost_arrays, wigner_arrays
from .states import PairWeights, reduced_dm_distinguishable, reduced_dm_indistinguishable
from .wigner import GeometryParams, coeff_AB, pair_coeffs, pair_coeffs_from_AB, su2_arrays

#: Upper rapidity of the oracle grid; matches the figures' near-light-speed end.
ORACLE_MAX_RAPIDITY = float(np.arctanh(0.999))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name:<40s} max_dev={self.max_deviation:.3e} "
            f"tol={self.tolerance:.1e} ({self.seconds:.2f}s)"
        )


def _random_geometry(rng, n, max_rapidity=8.0):
    return (
        rng.uniform(0.0, max_rapidity, n),
        rng.uniform(0.0, max_rapidity, n),
        rng.uniform(0.0, np.pi, n),
    )


def oracle_deviation(steps: int = 50, corrupt_b_sign: bool = False) -> float:
    """Worst signed difference between closed-form ``(A, B)`` and the matrix-composed rotation."""
    grid = np.linspace(0.0, ORACLE_MAX_RAPIDITY, steps)
    thetas = np.linspace(0.0, np.pi, steps)
    phi, alpha, theta = np.meshgrid(grid, grid, thetas, indexing="ij")
    closed = coeff_AB(GeometryParams(phi, alpha, theta))
    b_closed = -closed.b_coeff if corrupt_b_sign else closed.b_coeff
    angle, axis = angle_axis_arrays(wigner_arrays(alpha, phi, theta))
    a_num, b_num = su2_arrays(angle, axis)
    return float(max(np.max(np.abs(closed.a_coeff - a_num)), np.max(np.abs(b_closed - b_num))))


def _checks(rng, corrupt_b_sign: bool) -> List[tuple]:
    n = 100_000
    half = PairWeights(0.5, 0.5)

    def normalization():
        g = GeometryParams(*_random_geometry(rng, n))
        w = pair_coeffs(g)
        s = coeff_AB(g)
        return max(np.max(np.abs(w.a**2 + w.b**2 - 1)), np.max(np.abs(s.a_coeff**2 + s.b_coeff**2 - 1)))

    def pair_from_single():
        g = GeometryParams(*_random_geometry(rng, n, 4.0))
        w, v = pair_coeffs(g), pair_coeffs_from_AB(g)
        return max(np.max(np.abs(w.a - v.a)), np.max(np.abs(w.b - v.b)))

    def exchange():
        phi, alpha, theta = _random_geometry(rng, n)
        w, v = pair_coeffs(GeometryParams(phi, alpha, theta)), pair_coeffs(GeometryParams(alpha, phi, theta))
        return max(np.max(np.abs(w.a - v.a)), np.max(np.abs(w.b - v.b)))

    def singlet_at_right_angle():
        phi, alpha, _ = _random_geometry(rng, n)
        w = pair_coeffs(GeometryParams(phi, alpha, np.pi / 2))
        return max(np.max(np.abs(w.a - 1)), np.max(np.abs(w.b)))

    def metric():
        rap = rng.uniform(0.0, 3.0, (n, 2))
        dirs = rng.normal(size=(n, 2, 3))
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        m = boost_arrays(rap[:, 0], dirs[:, 0]) @ boost_arrays(rap[:, 1], dirs[:, 1])
        scale = np.maximum(1.0, np.max(np.abs(m), axis=(1, 2)) ** 2)
        dev = np.max(np.abs(np.swapaxes(m, 1, 2) @ ETA @ m - ETA), axis=(1, 2)) / scale
        return np.max(dev)

    def eigen():
        phi, alpha, theta = _random_geometry(rng, n, 4.0)
        p1 = rng.uniform(0.0, 1.0)
        wts = PairWeights.from_p1(p1)
        w0 = pair_coeffs(GeometryParams(phi, alpha, 0.0))
        wt = pair_coeffs(GeometryParams(phi, alpha, theta))
        det = ent.determinant_distinguishable(wts, wt, w0, theta)
        lam1, lam2 = ent.eigen_closed_form(det)
        num = reduced_dm_distinguishable(wts, w0, wt).eigenvalues()
        return max(np.max(np.abs(lam1 - num[:, 1])), np.max(np.abs(lam2 - num[:, 0])))

    def det_range():
        phi, alpha, theta = _random_geometry(rng, n, 4.0)
        wts = PairWeights.from_p1(rng.uniform())
        det = reduced_dm_distinguishable(
            wts, pair_coeffs(GeometryParams(phi, alpha, 0.0)), pair_coeffs(GeometryParams(phi, alpha, theta))
        ).det()
        return max(0.0, -np.min(det), np.max(det) - wts.p1 * wts.p2)

    def shannon_relation():
        phi, alpha, theta = _random_geometry(rng, n, 4.0)
        wts = PairWeights.from_p1(rng.uniform())
        w0, wt = pair_coeffs(GeometryParams(phi, alpha, 0.0)), pair_coeffs(GeometryParams(phi, alpha, theta))
        s_vn = ent.von_neumann(reduced_dm_indistinguishable(wts, w0, wt))
        return np.max(np.abs(s_vn - (ent.shannon(wts, w0, wt) - 1.0)))

    def indist_symmetry():
        phi, alpha, theta = _random_geometry(rng, n, 4.0)
        wts = PairWeights.from_p1(rng.uniform())
        w0 = pair_coeffs(GeometryParams(phi, alpha, 0.0))
        s1 = ent.vn_indistinguishable(wts, w0, pair_coeffs(GeometryParams(phi, alpha, theta)))
        s2 = ent.vn_indistinguishable(wts, w0, pair_coeffs(GeometryParams(phi, alpha, np.pi - theta)))
        return np.max(np.abs(s1 - s2))

    def equal_weight_degeneracy():
        # the two entropies coincide where the distinguishable off-diagonal vanishes:
        # at theta = pi, and on the maximum curve for theta > pi/2
        phi, alpha, _ = _random_geometry(rng, 1000, 4.0)
        devs = []
        w0 = pair_coeffs(GeometryParams(phi, alpha, 0.0))
        wpi = pair_coeffs(GeometryParams(phi, alpha, np.pi))
        devs.append(
            np.max(
                np.abs(
                    ent.von_neumann(reduced_dm_distinguishable(half, w0, wpi))
                    - ent.vn_indistinguishable(half, w0, wpi)
                )
            )
        )
        for theta in np.linspace(0.55 * np.pi, np.pi, 12):
            sol = ent.solve_alpha_at_max(ORACLE_MAX_RAPIDITY, theta)
            g0 = GeometryParams(ORACLE_MAX_RAPIDITY, sol.alpha, 0.0)
            gt = GeometryParams(ORACLE_MAX_RAPIDITY, sol.alpha, theta)
            w0, wt = pair_coeffs(g0), pair_coeffs(gt)
            devs.append(
                abs(ent.von_neumann(reduced_dm_distinguishable(half, w0, wt)) - ent.vn_indistinguishable(half, w0, wt))
            )
        return max(devs)

    def maximum():
        alpha = float(np.arccosh(1.0 + np.sqrt(2.0)))
        w0 = pair_coeffs(GeometryParams(alpha, alpha, 0.0))
        wpi = pair_coeffs(GeometryParams(alpha, alpha, np.pi))
        return abs(ent.von_neumann(reduced_dm_distinguishable(half, w0, wpi)) - 1.0)

    def indist_extremum():
        wts = PairWeights(0.75, 0.25)
        phi = ORACLE_MAX_RAPIDITY
        sol = ent.solve_alpha_indistinguishable(phi, np.pi / 2, wts)
        w0 = pair_coeffs(GeometryParams(phi, sol.alpha, 0.0))
        wt = pair_coeffs(GeometryParams(phi, sol.alpha, np.pi / 2))
        return max(abs(ent.shannon(wts, w0, wt) - 2.0), abs(ent.vn_indistinguishable(wts, w0, wt) - 1.0))

    def superrelativistic():
        rap = float(np.arctanh(1.0 - 1e-8))
        devs = []
        for theta in (0.3, 2.8):
            w0 = pair_coeffs(GeometryParams(rap, rap, 0.0))
            wt = pair_coeffs(GeometryParams(rap, rap, theta))
            devs.append(ent.von_neumann(reduced_dm_distinguishable(half, w0, wt)))
        for p1 in (0.5, 0.25, 0.75):
            wts = PairWeights.from_p1(p1)
            w0 = pair_coeffs(GeometryParams(rap, rap, 0.0))
            wt = pair_coeffs(GeometryParams(rap, rap, np.pi / 2))
            s = ent.von_neumann(reduced_dm_distinguishable(wts, w0, wt))
            devs.append(abs(s - ent.mixing_entropy(wts)))
        return max(devs)

    return [
        ("normalization a^2+b^2, A^2+B^2", normalization, 1e-12),
        ("oracle: closed form vs matrix W", lambda: oracle_deviation(50, corrupt_b_sign), 1e-10),
        ("pair coeffs from single-particle A,B", pair_from_single, 1e-12),
        ("alpha <-> phi exchange symmetry", exchange, 1e-12),
        ("singlet preserved at theta = pi/2", singlet_at_right_angle, 1e-12),
        ("Lorentz metric preservation", metric, 1e-10),
        ("closed-form vs numeric eigenvalues", eigen, 1e-10),
        ("0 <= det <= p1 p2", det_range, 1e-12),
        ("S_vN(indist) = S_Sh - 1", shannon_relation, 1e-12),
        ("indistinguishable theta <-> pi-theta", indist_symmetry, 1e-12),
        ("equal-weight degeneracy (theta=pi, max curve)", equal_weight_degeneracy, 1e-12),
        ("S_max = 1 bit at cosh alpha = 1+sqrt2", maximum, 1e-9),
        ("indistinguishable extremum = 1 bit", indist_extremum, 1e-6),
        ("super-relativistic limits", superrelativistic, 1e-2),
    ]


def self_check(seed: int = 0, corrupt_b_sign: bool = False) -> List[CheckResult]:
    """Run every check; ``corrupt_b_sign`` flips the sign of the closed-form ``B`` as a negative control."""
    rng = np.random.default_rng(seed)
    results = []
    for name, fn, tol in _checks(rng, corrupt_b_sign):
        t0 = time.perf_counter()
        dev = float(fn())
        results.append(CheckResult(name, bool(dev <= tol), dev, tol, time.perf_counter() - t0))
    return results


def report(results: List[CheckResult], emit: Callable[[str], None] = print) -> bool:
    for r in results:
        emit(r.line())
    ok = all(r.passed for r in results)
    emit(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return ok
