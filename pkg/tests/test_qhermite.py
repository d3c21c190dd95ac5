import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeform.catalog import AbcForm, structure_catalog
from qdeform.qhermite import (
    OrthoSystem,
    gram_target,
    hermite_explicit,
    hermite_recurrence,
    hermite_value,
    moment_functional,
    orthogonality_check,
    psi_normalized,
    qbinom,
)


class TestPolynomials:
    def test_h0(self):
        assert hermite_recurrence(0, 0.5).tolist() == [1.0]

    def test_h1(self):
        assert hermite_recurrence(1, 0.5).tolist() == [0.0, 2.0]

    def test_h2(self):
        assert hermite_recurrence(2, 0.5).tolist() == pytest.approx([-1.0, 0.0, 4.0], abs=1e-15)

    @pytest.mark.parametrize("n", range(8))
    def test_leading_coefficient_and_parity(self, n):
        c = hermite_recurrence(n, 0.7)
        assert c[-1] == 2.0**n
        assert not np.any(c[(n + 1) % 2 :: 2])

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            hermite_recurrence(-1, 0.5)

    def test_value_matches_coefficients(self):
        for n in range(10):
            c = hermite_recurrence(n, 0.6)
            for x in (-1.3, 0.2, 1.7):
                assert hermite_value(n, 0.6, x) == pytest.approx(np.polynomial.polynomial.polyval(x, c), rel=1e-12, abs=1e-12)

    def test_explicit_small(self):
        assert hermite_explicit(0, 0.5, 0.7) == 1.0
        for x in (-2.0, -0.3, 0.0, 1.5):
            assert hermite_explicit(1, 0.5, x) == pytest.approx(2 * x, rel=1e-14, abs=1e-15)

    def test_qbinom(self):
        assert qbinom(2, 1, 0.5) == pytest.approx(1.5)
        assert qbinom(5, 0, 0.5) == 1.0

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_explicit_matches_recurrence(self, q):
        xs = np.linspace(-2, 2, 41)
        for n in range(16):
            rec = np.array([hermite_value(n, q, x) for x in xs])
            exp = np.array([hermite_explicit(n, q, x) for x in xs])
            # sup-norm relative error: pointwise relative error is meaningless at the zeros
            assert np.abs(exp - rec).max() <= 1e-10 * np.abs(rec).max()

    @pytest.mark.parametrize("x", [-2.0, -1.0, 0.3, 2.0])
    def test_explicit_listed_points(self, x):
        for n in range(16):
            rec = hermite_value(n, 0.5, x)
            scale = max(abs(hermite_value(n, 0.5, t)) for t in np.linspace(-2, 2, 41))
            assert abs(hermite_explicit(n, 0.5, x) - rec) <= 1e-10 * scale


class TestOrthonormal:
    def test_psi0(self):
        assert psi_normalized(0, 0.5, 1.3) == 1.0

    def test_psi1(self):
        assert psi_normalized(1, 0.5, 0.4) == pytest.approx(0.8, rel=1e-14)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_r_squared_is_structure(self, q):
        sys_ = OrthoSystem(q)
        for n in range(20):
            assert sys_.r(n) ** 2 == pytest.approx(structure_catalog(AbcForm(q, -0.5, 1.0, 2.0), n + 1), rel=1e-14)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    @settings(max_examples=30, deadline=None)
    @given(x=st.floats(-2, 2))
    def test_three_term_relation(self, q, x):
        sys_ = OrthoSystem(q)
        xi = x / sys_.x_scale
        for n in range(11):
            lhs = xi * psi_normalized(n, q, x)
            up = sys_.r(n) * psi_normalized(n + 1, q, x)
            down = sys_.r(n - 1) * psi_normalized(n - 1, q, x) if n else 0.0
            assert abs(lhs - up - down) <= 1e-10 * (abs(lhs) + abs(up) + abs(down) + 1e-300)

    def test_x_scale(self):
        assert OrthoSystem(0.5).x_scale == pytest.approx(0.5)


class TestMoments:
    def test_low_moments(self):
        L = moment_functional(0.5, 3)
        assert L([1.0]) == 1.0
        assert L([0.0, 1.0]) == 0.0
        assert L([0.0, 0.0, 1.0]) == pytest.approx(0.25, rel=1e-15)

    def test_odd_moments_vanish(self):
        L = moment_functional(0.6, 8)
        assert not np.any(L.moments[1::2])

    def test_enlarging_truncation_keeps_moments(self):
        small = moment_functional(0.5, 6).moments
        big = moment_functional(0.5, 12).moments
        np.testing.assert_allclose(big[: len(small)], small, rtol=1e-14)

    def test_degree_too_high(self):
        with pytest.raises(ValueError):
            moment_functional(0.5, 1)(np.ones(10))

    def test_gram_examples(self):
        G = orthogonality_check(0.5, 2)
        assert G[0, 0] == pytest.approx(1.0, rel=1e-14)
        assert G[1, 1] == pytest.approx(1.0, rel=1e-14)
        assert G[0, 1] == 0.0

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.8])
    def test_gram(self, q):
        G = orthogonality_check(q, 10)
        d = np.diag(G)
        for n in range(11):
            assert abs(d[n] - gram_target(q, n)) <= 1e-10 * d[n]
        for m in range(11):
            for n in range(11):
                if m != n:
                    assert abs(G[m, n]) <= 1e-10 * math.sqrt(d[m] * d[n])

    def test_n_max_limit(self):
        with pytest.raises(ValueError):
            orthogonality_check(0.5, 13)
