"""Weight closed forms against quadrature oracles, plus energy/norm checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bsl.errors import ConfigError, DomainError
from bsl.multipliers import (
    CutoffConfig,
    DissipationConfig,
    FrequencyMode,
    ModeState,
    evaluate_weights,
    m_lower_envelope,
    mode_energy,
    multiplier_A,
    multiplier_B,
    multiplier_H,
    resonant_window,
    weighted_sobolev_norm,
)


def quad_weight_a(t, k, xi):
    """Adaptive-quadrature oracle for the arctan weight."""
    val, _ = quad(lambda tau: 1.0 / (1.0 + (xi / k - tau) ** 2), 0.0, t, limit=200)
    return math.exp(-2.0 * val)


def quad_weight_b(t, k, xi, C):
    """Adaptive-quadrature oracle for the resonant-window weight."""
    r = xi / k

    def integrand(tau):
        s = r - tau
        return 1.0 / math.sqrt(1.0 + s * s) if abs(s) <= C else 0.0

    pts = [p for p in (r - C, r, r + C) if 0.0 < p < t]
    val, _ = quad(integrand, 0.0, t, points=pts or None, limit=400)
    return math.exp(-2.0 * val)


class TestMultiplierA:
    def test_time_zero_is_one(self):
        assert multiplier_A(0.0, FrequencyMode(3, -7.2)) == 1.0

    def test_infinite_time_limit(self):
        # for k=1, xi=0 the integral tends to pi/2, so A -> exp(-pi)
        assert math.exp(-math.pi) == pytest.approx(0.04321391826, rel=1e-9)
        val = multiplier_A(1e9, FrequencyMode(1, 0.0))
        assert val == pytest.approx(math.exp(-math.pi), rel=1e-8)

    def test_against_quadrature_example(self):
        got = multiplier_A(5.0, FrequencyMode(2, 3.0))
        assert got == pytest.approx(quad_weight_a(5.0, 2, 3.0), abs=1e-10)

    def test_against_quadrature_randomized(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            k = int(rng.choice([-4, -2, -1, 1, 2, 3]))
            xi = rng.uniform(-20, 20)
            t = rng.uniform(0, 40)
            assert multiplier_A(t, FrequencyMode(k, xi)) == pytest.approx(
                quad_weight_a(t, k, xi), abs=1e-10)

    def test_monotone_nonincreasing(self):
        mode = FrequencyMode(2, 5.0)
        ts = np.linspace(0, 30, 400)
        vals = [multiplier_A(t, mode) for t in ts]
        assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_range(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            mode = FrequencyMode(int(rng.integers(1, 5)), rng.uniform(-50, 50))
            v = multiplier_A(rng.uniform(0, 200), mode)
            assert math.exp(-2 * math.pi) < v <= 1.0

    def test_k_zero_rejected(self):
        with pytest.raises(DomainError):
            multiplier_A(1.0, FrequencyMode(0, 1.0))


class TestMultiplierB:
    def test_time_zero_is_one(self):
        assert multiplier_B(0.0, FrequencyMode(1, 3.0), CutoffConfig(2.0)) == 1.0

    def test_full_window_asinh(self):
        # window [0, 2] for k=1, xi=0, C=2: integral = asinh(2) = ln(2 + sqrt 5)
        mode, cut = FrequencyMode(1, 0.0), CutoffConfig(2.0)
        expected = math.exp(-2.0 * math.asinh(2.0))
        assert expected == pytest.approx(math.exp(-2.0 * math.log(2 + math.sqrt(5))))
        for t in (2.0, 5.0, 100.0):
            assert multiplier_B(t, mode, cut) == pytest.approx(expected, abs=1e-12)
            assert multiplier_B(t, mode, cut) == pytest.approx(
                quad_weight_b(t, 1, 0.0, 2.0), abs=1e-10)

    def test_window_not_reached(self):
        assert multiplier_B(1.0, FrequencyMode(1, 100.0), CutoffConfig(2.0)) == 1.0

    def test_against_quadrature_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            k = int(rng.choice([-3, -1, 1, 2, 4]))
            xi = rng.uniform(-30, 30)
            t = rng.uniform(0, 50)
            C = rng.uniform(1.1, 12.0)
            got = multiplier_B(t, FrequencyMode(k, xi), CutoffConfig(C))
            assert got == pytest.approx(quad_weight_b(t, k, xi, C), abs=1e-10)

    def test_monotone_nonincreasing_dense_grid(self):
        for xi in (-3.0, 0.0, 7.5):
            mode, cut = FrequencyMode(2, xi), CutoffConfig(3.0)
            vals = [multiplier_B(t, mode, cut) for t in np.linspace(0, 20, 500)]
            assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_constant_outside_window(self):
        mode, cut = FrequencyMode(1, 4.0), CutoffConfig(2.0)
        before = [multiplier_B(t, mode, cut) for t in (0.0, 0.5, 1.9)]
        assert all(v == 1.0 for v in before)
        after = [multiplier_B(t, mode, cut) for t in (6.0, 10.0, 1e4)]
        assert max(after) - min(after) < 1e-15

    def test_ratio_bound(self):
        # The accumulated exponents of two modes differ by at most
        # 2*asinh(|xi-zeta|/|k|) (asinh subadditivity over the shifted windows),
        # so B(t,k,xi)/B(t,k,zeta) <= exp(4*asinh(|xi-zeta|/|k|)).  A single
        # power sqrt(1+|xi-zeta|^2) does NOT bound the ratio (see companion
        # test below); the fourth power here is what the +5 exponent headroom
        # in the admissibility kernel absorbs.
        rng = np.random.default_rng(3)
        cut = CutoffConfig(5.0)
        for _ in range(500):
            k = int(rng.choice([1, 2, 3]))
            xi, zeta = rng.uniform(-25, 25, size=2)
            t = rng.uniform(0, 40)
            num = multiplier_B(t, FrequencyMode(k, xi), cut)
            den = multiplier_B(t, FrequencyMode(k, zeta), cut)
            bound = math.exp(4.0 * math.asinh(abs(xi - zeta) / k))
            assert num / den <= bound * (1 + 1e-12)

    def test_single_power_ratio_bound_is_false(self):
        # counterexample: zeta fully past its window, xi not yet entered
        cut = CutoffConfig(5.0)
        t = 10.0
        num = multiplier_B(t, FrequencyMode(1, 16.0), cut)
        den = multiplier_B(t, FrequencyMode(1, 10.0), cut)
        assert num / den > math.sqrt(1 + 6.0**2)
        assert num / den <= math.exp(4.0 * math.asinh(6.0))

    def test_config_error(self):
        with pytest.raises(ConfigError):
            CutoffConfig(0.5)
        with pytest.raises(DomainError):
            multiplier_B(1.0, FrequencyMode(0, 1.0), CutoffConfig(2.0))


class TestMultiplierH:
    def test_resonance_point(self):
        assert multiplier_H(4.0, FrequencyMode(1, 4.0), 0.37) == pytest.approx(1.0)

    def test_cap_active(self):
        # far from resonance the cap nu^(-2/3) wins: sqrt(1 + 100) for nu = 1e-3
        got = multiplier_H(0.0, FrequencyMode(1, 1e3), 1e-3)
        assert got == pytest.approx(math.sqrt(1 + 1e-3 ** (-2 / 3)), rel=1e-12)
        assert got == pytest.approx(10.0499, abs=2e-4)

    def test_small_offset(self):
        assert multiplier_H(0.0, FrequencyMode(3, 0.1), 1.0) == pytest.approx(
            math.sqrt(9 + 0.01), rel=1e-13)

    def test_min_branch_enumeration(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            k = int(rng.choice([0, 1, 2, 5]))
            xi, t = rng.uniform(-40, 40), rng.uniform(0, 20)
            nu = 10.0 ** rng.uniform(-4, 0)
            u2 = (xi - k * t) ** 2
            cap = nu ** (-2 / 3)
            expected = math.sqrt(k * k + (u2 if u2 <= cap else cap))
            assert multiplier_H(t, FrequencyMode(k, xi), nu) == pytest.approx(
                expected, rel=1e-13)

    def test_bounds(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            k = int(rng.choice([1, 2, 3]))
            mode = FrequencyMode(k, rng.uniform(-50, 50))
            nu = 10.0 ** rng.uniform(-4, -0.5)
            h = multiplier_H(rng.uniform(0, 30), mode, nu)
            assert abs(k) <= h <= math.sqrt(k * k + nu ** (-2 / 3)) + 1e-12

    def test_lipschitz_on_branch(self):
        # |dH/du| <= 1 inside the cap, 0 outside
        nu = 1e-2
        cap = nu ** (-1 / 3)
        u = np.linspace(-cap * 0.99, cap * 0.99, 500)
        h = np.sqrt(4.0 + np.minimum(u**2, nu ** (-2 / 3)))
        slopes = np.abs(np.diff(h) / np.diff(u))
        assert slopes.max() <= 1.0 + 1e-9

    def test_squared_convention_flag(self):
        mode = FrequencyMode(2, 7.0)
        h = multiplier_H(1.0, mode, 0.1)
        h2 = multiplier_H(1.0, mode, 0.1, squared=True)
        assert h2 == pytest.approx(h * h, rel=1e-14)

    def test_nu_rejected(self):
        with pytest.raises(ConfigError):
            multiplier_H(1.0, FrequencyMode(1, 0.0), 0.0)


class TestResonantWindow:
    def test_clipped_at_zero(self):
        w = resonant_window(FrequencyMode(1, 0.0), CutoffConfig(2.0))
        assert (w.start, w.end) == (0.0, 2.0)

    def test_interior(self):
        w = resonant_window(FrequencyMode(1, 10.0), CutoffConfig(2.0))
        assert (w.start, w.end) == (8.0, 12.0)

    def test_empty(self):
        assert resonant_window(FrequencyMode(1, -10.0), CutoffConfig(2.0)) is None

    def test_k_zero_rejected(self):
        with pytest.raises(DomainError):
            resonant_window(FrequencyMode(0, 1.0), CutoffConfig(2.0))


class TestModeEnergy:
    def test_zero_state(self):
        st8 = ModeState(0j, 0j, t=3.0)
        assert mode_energy(st8, FrequencyMode(1, 0.0), -2.0, CutoffConfig(2.0)) == 0.0

    def test_omega_only(self):
        st8 = ModeState(1.0 + 0j, 0j, t=0.0)
        assert mode_energy(st8, FrequencyMode(1, 0.0), -0.01, CutoffConfig(2.0)) == (
            pytest.approx(0.01))

    def test_theta_capped(self):
        # xi - k t = 5 with C = 2 caps at C^2: k^2 + C^2 = 5
        st8 = ModeState(0j, 1.0 + 0j, t=0.0)
        assert mode_energy(st8, FrequencyMode(1, 5.0), 123.0, CutoffConfig(2.0)) == (
            pytest.approx(5.0))

    def test_alpha_floor(self):
        st8 = ModeState(1.0 + 0j, 0j, t=0.0)
        got = mode_energy(st8, FrequencyMode(1, 0.0), 1e-9, CutoffConfig(2.0),
                          alpha_floor=0.1)
        assert got == pytest.approx(0.1)

    @given(phase=st.floats(0, 2 * math.pi), re_o=st.floats(-3, 3), im_o=st.floats(-3, 3),
           re_t=st.floats(-3, 3), im_t=st.floats(-3, 3))
    @settings(max_examples=60, deadline=None)
    def test_phase_rotation_invariance(self, phase, re_o, im_o, re_t, im_t):
        rot = complex(math.cos(phase), math.sin(phase))
        mode, cut = FrequencyMode(2, 3.0), CutoffConfig(4.0)
        a = mode_energy(ModeState(complex(re_o, im_o), complex(re_t, im_t), 1.0),
                        mode, -0.5, cut)
        b = mode_energy(ModeState(rot * complex(re_o, im_o), rot * complex(re_t, im_t), 1.0),
                        mode, -0.5, cut)
        assert b == pytest.approx(a, rel=1e-12, abs=1e-12)


class TestWeightedSobolevNorm:
    def test_zero_field(self):
        coeffs = np.zeros((5, 7), dtype=complex)
        assert weighted_sobolev_norm(coeffs, np.arange(-2, 3), np.arange(-3, 4), 3) == 0.0

    def test_single_mode(self):
        k = np.array([0, 1])
        xi = np.array([0.0])
        coeffs = np.zeros((2, 1), dtype=complex)
        coeffs[1, 0] = 1.0
        assert weighted_sobolev_norm(coeffs, k, xi, 1) == pytest.approx(math.sqrt(2.0))

    def test_against_double_loop(self):
        rng = np.random.default_rng(17)
        k = np.arange(-4, 4)
        xi = np.linspace(-3, 3, 8)
        coeffs = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        w = rng.uniform(0.1, 1.0, size=(8, 8))
        total = 0.0
        for i, kv in enumerate(k):
            for j, xv in enumerate(xi):
                total += (1 + kv**2 + xv**2) ** 2 * abs(w[i, j] * coeffs[i, j]) ** 2
        assert weighted_sobolev_norm(coeffs, k, xi, 2, weight=w) == pytest.approx(
            math.sqrt(total), rel=1e-12)


class TestCombined:
    def test_m_is_exact_product(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            mode = FrequencyMode(int(rng.integers(1, 4)), rng.uniform(-10, 10))
            cut = CutoffConfig(rng.uniform(1.5, 8.0))
            t = rng.uniform(0, 20)
            w = evaluate_weights(t, mode, cut, nu=1e-2)
            assert w.M == w.A * w.B
            assert 0 < w.A <= 1 and 0 < w.B <= 1

    def test_m_lower_envelope(self):
        # M >= exp(-2 pi) * exp(-2 asinh(C) * half-crossings) at the default cutoff
        for nu in (1e-2, 1e-3):
            cut = CutoffConfig.from_nu(nu)
            rng = np.random.default_rng(29)
            for _ in range(200):
                mode = FrequencyMode(int(rng.choice([1, 2, 4])), rng.uniform(0, 40))
                t = rng.uniform(0, 60)
                w = evaluate_weights(t, mode, cut, nu=nu)
                assert w.M >= m_lower_envelope(t, mode, cut) * (1 - 1e-12)

    def test_dissipation_config(self):
        d = DissipationConfig(nu_y=0.1)
        assert d.nu == 0.1 and d.mu == 0.0
        assert d.one_coefficient_vanishes()
        assert not DissipationConfig(nu_y=0.1, mu_y=0.2).one_coefficient_vanishes()
        with pytest.raises(ConfigError):
            DissipationConfig(nu_y=-1.0)
