from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wignerspin.errors import ContractViolation, DomainError
from wignerspin.kinematics import (
    RotationAngleAxis,
    boost_matrix,
    four_momentum,
    rotation_angle_axis,
    wigner_matrix_numeric,
)
from wignerspin.wigner import (
    GeometryParams,
    WignerCoeffs,
    coeff_AB,
    pair_coeffs,
    pair_coeffs_from_AB,
    pair_coeffs_nonrel,
    pair_coeffs_velocity,
    su2_from_rotation,
)

R06 = float(np.arctanh(0.6))  # cosh = 5/4, sinh = 3/4
rap = st.floats(0.0, 8.0)
theta_st = st.floats(0.0, np.pi)


def literal_pair(phi, alpha, theta):
    """Pair amplitudes typed in exactly as the closed form reads (no rearrangement)."""
    ch_a, ch_p, sh_a, sh_p = np.cosh(alpha), np.cosh(phi), np.sinh(alpha), np.sinh(phi)
    root = np.sqrt((1 + ch_a * ch_p) ** 2 - sh_a**2 * sh_p**2 * np.sin(theta) ** 2)
    return (ch_a + ch_p) / root, sh_a * sh_p * np.cos(theta) / root


class TestCoeffAB:
    def test_no_ejection_no_rotation(self):
        s = coeff_AB(GeometryParams(0.0, 2.3, 0.7))
        assert s.a_coeff == pytest.approx(1.0, abs=1e-15) and s.b_coeff == 0.0

    def test_spot_value(self):
        s = coeff_AB(GeometryParams(R06, R06, 0.0))
        assert s.a_coeff**2 == pytest.approx(81 / 82, abs=1e-14)
        assert s.b_coeff**2 == pytest.approx(1 / 82, abs=1e-14)
        assert s.b_coeff / s.a_coeff == pytest.approx(1 / 9, abs=1e-14)

    @given(rap, rap)
    def test_b_vanishes_at_right_angle(self, phi, alpha):
        assert abs(coeff_AB(GeometryParams(phi, alpha, np.pi / 2)).b_coeff) < 1e-12

    @settings(max_examples=500)
    @given(rap, rap, st.floats(0.0, 2 * np.pi))
    def test_normalized(self, phi, alpha, theta):
        s = coeff_AB(GeometryParams(phi, alpha, theta))
        assert abs(s.a_coeff**2 + s.b_coeff**2 - 1) < 1e-12

    def test_rejects_negative_rapidity(self):
        with pytest.raises(DomainError):
            GeometryParams(-0.1, 1.0, 0.0)


class TestPairCoeffs:
    def test_spot_value_exact(self):
        ch, sh = Fraction(5, 4), Fraction(3, 4)
        root = 1 + ch * ch  # sin(0) = 0
        a_exact, b_exact = (ch + ch) / root, sh * sh / root
        assert (a_exact, b_exact) == (Fraction(40, 41), Fraction(9, 41))
        assert a_exact**2 + b_exact**2 == 1
        w = pair_coeffs(GeometryParams(R06, R06, 0.0))
        assert w.a == pytest.approx(40 / 41, abs=1e-15)
        assert w.b == pytest.approx(9 / 41, abs=1e-15)

    @given(rap, rap)
    def test_singlet_at_right_angle(self, phi, alpha):
        # cos(pi/2) is 6e-17 in floating point, scaled by up to sinh^2 / cosh
        w = pair_coeffs(GeometryParams(phi, alpha, np.pi / 2))
        assert w.a == pytest.approx(1.0, abs=1e-12) and abs(w.b) < 1e-12

    @pytest.mark.parametrize("theta, sign", [(0.3, 1.0), (2.8, -1.0)])
    def test_superrelativistic_triplet(self, theta, sign):
        r = float(np.arctanh(1 - 1e-8))
        w = pair_coeffs(GeometryParams(r, r, theta))
        assert w.a < 1e-3
        assert w.b == pytest.approx(sign, abs=1e-5)

    @settings(max_examples=500)
    @given(rap, rap, theta_st)
    def test_invariants(self, phi, alpha, theta):
        w = pair_coeffs(GeometryParams(phi, alpha, theta))
        assert abs(w.a**2 + w.b**2 - 1) < 1e-12
        swapped = pair_coeffs(GeometryParams(alpha, phi, theta))
        assert abs(w.a - swapped.a) < 1e-12 and abs(w.b - swapped.b) < 1e-12
        mirror = pair_coeffs(GeometryParams(phi, alpha, np.pi - theta))
        assert abs(w.a - mirror.a) < 1e-12 and abs(w.b + mirror.b) < 1e-12
        assert w.a > 0
        assert np.sign(w.b) == np.sign(np.cos(theta)) * np.sign(np.sinh(alpha) * np.sinh(phi)) or abs(w.b) < 1e-15

    @given(st.floats(0.0, 3.0), st.floats(0.0, 3.0), theta_st)
    def test_matches_literal_form(self, phi, alpha, theta):
        w = pair_coeffs(GeometryParams(phi, alpha, theta))
        a, b = literal_pair(phi, alpha, theta)
        assert w.a == pytest.approx(a, abs=1e-12) and w.b == pytest.approx(b, abs=1e-12)

    @settings(max_examples=300)
    @given(st.floats(0.0, 5.0), st.floats(0.0, 5.0), theta_st)
    def test_matches_single_particle_products(self, phi, alpha, theta):
        g = GeometryParams(phi, alpha, theta)
        w, v = pair_coeffs(g), pair_coeffs_from_AB(g)
        assert abs(w.a - v.a) < 1e-12 and abs(w.b - v.b) < 1e-12

    @given(st.floats(0.01, 1.4), st.floats(0.1, 3), st.floats(0.1, 3), st.floats(0.01, 0.5))
    def test_b_monotone(self, theta, phi, alpha, step):
        base = pair_coeffs(GeometryParams(phi, alpha, theta)).b
        assert pair_coeffs(GeometryParams(phi, alpha + step, theta)).b > base
        assert pair_coeffs(GeometryParams(phi + step, alpha, theta)).b > base

    def test_a_vanishes_in_limit(self):
        vals = [pair_coeffs(GeometryParams(r, r, 0.4)).a for r in (2.0, 5.0, 10.0, 20.0)]
        assert all(x > y for x, y in zip(vals, vals[1:]))
        assert vals[-1] < 1e-7

    def test_broadcasts(self):
        thetas = np.linspace(0, np.pi, 7)
        w = pair_coeffs(GeometryParams(1.0, 2.0, thetas))
        assert w.a.shape == (7,)
        for i, t in enumerate(thetas):
            assert pair_coeffs(GeometryParams(1.0, 2.0, t)).b == w.b[i]

    def test_flipped_partner(self):
        g = GeometryParams(1.0, 2.0, 0.4)
        w = pair_coeffs(g)
        back = pair_coeffs(GeometryParams(1.0, 2.0, 0.4 + np.pi))
        assert back.a == pytest.approx(w.flipped().a, abs=1e-14)
        assert back.b == pytest.approx(w.flipped().b, abs=1e-14)

    def test_coefficients_must_be_normalized(self):
        with pytest.raises(DomainError):
            WignerCoeffs(1.0, 0.5)


class TestVelocityForms:
    def test_spot_value(self):
        w = pair_coeffs_velocity(0.6, R06, 0.0)
        assert (w.a, w.b) == pytest.approx((40 / 41, 9 / 41), abs=1e-15)

    def test_at_rest(self):
        w = pair_coeffs_velocity(0.0, 1.7, 0.4)
        assert (w.a, w.b) == (1.0, 0.0)

    def test_singlet_right_angle(self):
        w = pair_coeffs_velocity(0.999, np.arctanh(0.999), np.pi / 2)
        assert w.a == pytest.approx(1.0, abs=1e-12) and abs(w.b) < 1e-15

    @given(st.floats(0.0, 0.999), st.floats(0.0, 4.0), theta_st)
    def test_equals_rapidity_form(self, v, alpha, theta):
        w = pair_coeffs_velocity(v, alpha, theta)
        ref = pair_coeffs(GeometryParams(np.arctanh(v), alpha, theta))
        assert w.a == pytest.approx(ref.a, abs=1e-12) and w.b == pytest.approx(ref.b, abs=1e-12)

    @given(st.floats(0.0, 0.999), st.floats(0.0, 4.0), theta_st)
    def test_boost_speed_form(self, V, phi, theta):
        w = pair_coeffs_velocity(V, phi, theta)
        ref = pair_coeffs(GeometryParams(phi, np.arctanh(V), theta))
        assert w.a == pytest.approx(ref.a, abs=1e-12) and w.b == pytest.approx(ref.b, abs=1e-12)

    @pytest.mark.parametrize("v", [1.0, 1.2, -0.1])
    def test_rejects_bad_speed(self, v):
        with pytest.raises(DomainError):
            pair_coeffs_velocity(v, 1.0, 0.0)


class TestNonrelativistic:
    def test_rest(self):
        w = pair_coeffs_nonrel(0.0, 1.0, 0.3)
        assert (w.a, w.b) == (1.0, 0.0)

    def test_substitution(self):
        w = pair_coeffs_nonrel(0.05, 2.0, np.pi / 3)
        assert w.b == pytest.approx(0.05 * np.cos(np.pi / 3) * np.tanh(1.0), abs=1e-16)

    def test_cubic_order(self):
        vs = np.geomspace(1e-3, 1e-1, 9)
        errs = [abs(pair_coeffs_velocity(v, 1.0, 0.0).b - pair_coeffs_nonrel(v, 1.0, 0.0).b) for v in vs]
        slope = np.polyfit(np.log(vs), np.log(errs), 1)[0]
        assert slope == pytest.approx(3.0, abs=0.05)
        # constant measured over a grid of (alpha, theta)
        c = max(
            abs(pair_coeffs_velocity(v, a, t).b - pair_coeffs_nonrel(v, a, t).b) / v**3
            for v in (0.01, 0.05, 0.1)
            for a in np.linspace(0, 5, 11)
            for t in np.linspace(0, np.pi, 11)
        )
        assert c < 1.0
        err_a = abs(pair_coeffs_velocity(0.01, 1.0, 0.0).a - pair_coeffs_nonrel(0.01, 1.0, 0.0).a)
        assert err_a < c * 0.01**3


class TestSU2:
    def test_zero(self):
        s = su2_from_rotation(RotationAngleAxis(0.0, (0, 1, 0)))
        assert (s.a_coeff, s.b_coeff) == (1.0, 0.0)

    def test_half_turn(self):
        s = su2_from_rotation(RotationAngleAxis(np.pi, (0, 1, 0)))
        assert s.a_coeff == pytest.approx(0.0, abs=1e-16) and s.b_coeff == 1.0

    def test_negative_axis_flips_sign(self):
        s = su2_from_rotation(RotationAngleAxis(0.4, (0, -1, 0)))
        assert s.b_coeff == pytest.approx(-np.sin(0.2))

    def test_off_plane_axis(self):
        with pytest.raises(ContractViolation):
            su2_from_rotation(RotationAngleAxis(0.4, (1, 0, 0)))

    def test_oracle_spot(self):
        w = wigner_matrix_numeric(boost_matrix(R06, [0, 0, -1.0]), four_momentum(1.0, 0.6, 0.0))
        s = su2_from_rotation(rotation_angle_axis(w))
        assert abs(s.a_coeff) == pytest.approx(np.sqrt(81 / 82), abs=1e-10)
        assert abs(s.b_coeff) == pytest.approx(np.sqrt(1 / 82), abs=1e-10)

    @settings(max_examples=300)
    @given(st.floats(0, 3.8), st.floats(0, 3.8), theta_st)
    def test_oracle_signed(self, phi, alpha, theta):
        w = wigner_matrix_numeric(boost_matrix(alpha, [0, 0, -1.0]), four_momentum(1.0, np.tanh(phi), theta))
        s = su2_from_rotation(rotation_angle_axis(w))
        c = coeff_AB(GeometryParams(phi, alpha, theta))
        assert abs(s.a_coeff - c.a_coeff) < 1e-10
        assert abs(s.b_coeff - c.b_coeff) < 1e-10
