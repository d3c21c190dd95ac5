import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeform.coherent import (
    coherent_state,
    completeness_check,
    eigen_residual,
    moment_target,
    normalization_sq,
    r_factorial,
    r_factorial_closed,
    log_r_factorial_sq,
    wavefunction_closed,
    wavefunction_sum,
    weight_measure,
)
from qdeform.errors import ConvergenceError, DivergenceError

mpmath.mp.dps = 40


class TestFactorial:
    def test_examples(self):
        assert r_factorial(0, 0.5) == 1.0
        assert r_factorial(1, 0.5) == 1.0
        assert r_factorial(2, 0.5) == pytest.approx(math.sqrt(3), rel=1e-15)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_closed_form(self, q):
        for n in range(25):
            assert r_factorial_closed(n, q) == pytest.approx(r_factorial(n, q), rel=1e-12)
            assert log_r_factorial_sq(n, q) == pytest.approx(2 * math.log(r_factorial(n, q)), rel=1e-12, abs=1e-14)


class TestNormalization:
    def test_zero(self):
        v = normalization_sq(0.0, 0.5)
        assert v.series == 1.0 and v.product == 1.0

    def test_one(self):
        v = normalization_sq(1.0, 0.5)
        assert v.product == pytest.approx(float(mpmath.qp(-0.5, 0.5)), rel=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(x=st.floats(0, 20), q=st.sampled_from([0.3, 0.5, 0.8]))
    def test_series_matches_product(self, x, q):
        v = normalization_sq(x, q)
        assert v.series == pytest.approx(v.product, rel=1e-12)

    def test_negative(self):
        with pytest.raises(ValueError):
            normalization_sq(-1.0, 0.5)

    def test_base_above_one(self):
        with pytest.raises(DivergenceError):
            normalization_sq(1.0, 2.0)


class TestState:
    def test_vacuum(self):
        s = coherent_state(0, 0.5)
        assert s.coeffs[0] == 1.0
        assert not np.any(s.coeffs[1:])

    def test_unit_norm(self):
        s = coherent_state(1 + 0.5j, 0.5)
        assert np.linalg.norm(s.coeffs) == pytest.approx(1.0, rel=1e-15)

    def test_matches_normalization(self):
        z = 1.2 - 0.7j
        s = coherent_state(z, 0.5)
        c0 = 1 / math.sqrt(s.norm_sq)
        assert abs(s.coeffs[0]) == pytest.approx(c0, rel=1e-12)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    @settings(max_examples=20, deadline=None)
    @given(r=st.floats(0, 3), phi=st.floats(0, 2 * math.pi))
    def test_eigenvector(self, q, r, phi):
        s = coherent_state(r * complex(math.cos(phi), math.sin(phi)), q)
        assert eigen_residual(s) < 1e-8

    def test_truncation_controls_residual(self):
        loose = eigen_residual(coherent_state(3.0, 0.5, tol=1e-12))
        tight = eigen_residual(coherent_state(3.0, 0.5, tol=1e-24))
        assert tight < loose

    def test_nonorthogonal(self):
        states = [coherent_state(z, 0.5) for z in (0.0, 1.0, 1j, -2.0 + 1j)]
        for i, a in enumerate(states):
            for b in states[i + 1 :]:
                assert abs(a.overlap(b)) > 1e-6

    @pytest.mark.parametrize("z", [0.0, 0.4, 1.0, -1.5])
    @pytest.mark.parametrize("x", [-1.5, -0.2, 0.0, 0.9, 2.0])
    def test_wavefunction(self, z, x):
        s = wavefunction_sum(z, 0.5, x)
        c = wavefunction_closed(z, 0.5, x)
        assert abs(s - c) <= 1e-8 * max(1.0, abs(c))


class TestMeasure:
    def test_low_moments(self):
        m = weight_measure(0.5).measure
        assert m.moment(0) == pytest.approx(1.0, rel=1e-15)
        assert m.moment(1) == pytest.approx(0.5, rel=1e-12)
        assert m.moment(2) == pytest.approx(0.75, rel=1e-12)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_moment_matching(self, q):
        m = weight_measure(q, k_range=60).measure
        for n in range(21):
            assert abs(m.moment(n) - moment_target(n, q)) <= 1e-8 * moment_target(n, q)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_ratio_recurrence(self, q):
        m = weight_measure(q).measure
        for n in range(1, 21):
            assert m.moment(n) / m.moment(n - 1) == pytest.approx(q ** (1 - n) * (1 - q**n), rel=1e-9)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_raw_mass_against_lattice_oracle(self, q):
        mq = mpmath.mpf(q)
        oracle = mpmath.nsum(lambda k: mq ** (k - 1) / mpmath.qp(-(mq ** (k - 1)), mq), [-mpmath.inf, mpmath.inf])
        assert weight_measure(q).I0 == pytest.approx(float(oracle), rel=1e-12)

    def test_weights_nonnegative_and_sorted(self):
        m = weight_measure(0.5).measure
        assert np.all(m.weights >= 0)
        assert np.all(np.diff(m.points) > 0)

    def test_radial_scale(self):
        sol = weight_measure(0.5)
        assert sol.radial.moment(1) == pytest.approx(sol.measure.moment(1) / 0.5, rel=1e-14)

    def test_k_range_too_small(self):
        with pytest.raises(ConvergenceError):
            weight_measure(0.9, k_range=3)


class TestCompleteness:
    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_identity(self, q):
        G = completeness_check(q, 10)
        np.testing.assert_allclose(np.diag(G), 1.0, rtol=1e-8)
        assert not np.any(G - np.diag(np.diag(G)))

    def test_limit(self):
        with pytest.raises(ValueError):
            completeness_check(0.5, 16)
