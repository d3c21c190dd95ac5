import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdeform.catalog import UnifiedParams, structure_unified
from qdeform.errors import DomainError, RepresentationError
from qdeform.repclass import (
    LambdaSeq,
    RepParams,
    casimir_values,
    classify,
    lambda_closed,
    lambda_recurrence,
    regime,
)

U = UnifiedParams(0.5, alpha=1, beta=0, gamma=2, nu=0.1)


def term_scale(p: RepParams, n: int) -> float:
    """Sum of magnitudes of the pieces making up lambda_n, used as the relative yardstick."""
    u = p.unified
    qa, qg = u.q**u.alpha, u.q**u.gamma
    pref = u.q ** (u.alpha * p.kappa0 + u.beta)
    if u.equal_branch:
        ratio = abs(n) * qg ** (n - 1)
    else:
        ratio = (qg**n + qa**n) / abs(qg - qa)
    return abs(p.lambda0) * qg**n + pref * (ratio + abs(p.B) * (qg**n + qa**n) / (qg + qa))


class TestLambda:
    def test_zero(self):
        p = RepParams(U, lambda0=0.4, kappa0=0.3, B=0.2)
        assert lambda_closed(p, 0) == pytest.approx(0.4, rel=1e-15)

    def test_one(self):
        p = RepParams(U, lambda0=0.4, kappa0=0.3, B=0.2)
        want = 0.25 * 0.4 + 1.2 * 0.5**0.3
        assert lambda_closed(p, 1) == pytest.approx(want, rel=1e-14)

    def test_two_steps(self):
        p = RepParams(U, lambda0=0.0, kappa0=0.0, B=0.2)
        assert lambda_closed(p, 2) == pytest.approx(0.7, rel=1e-14)
        assert lambda_recurrence(p, 0, 2).values.tolist() == pytest.approx([0.0, 1.2, 0.7], rel=1e-14)

    def test_trivial_window(self):
        p = RepParams(U, lambda0=0.4)
        seq = lambda_recurrence(p, 0, 0)
        assert seq.values.tolist() == [0.4]

    def test_window_must_contain_zero(self):
        with pytest.raises(DomainError):
            lambda_recurrence(RepParams(U), 1, 5)

    def test_fock_weights_are_structure_function(self):
        u = UnifiedParams(0.7, 0.3, 0.2, 1.1, 0.25)
        seq = lambda_recurrence(RepParams.fock(u), 0, 30)
        for n in range(31):
            assert seq[n] == pytest.approx(structure_unified(u, n), rel=1e-12)

    def test_round_trip(self):
        p = RepParams(UnifiedParams(1.3, 0.4, -0.2, 0.9, 0.2), lambda0=2.0, kappa0=0.4, B=0.5)
        seq = lambda_recurrence(p, -5, 0)
        qg = p.unified.q**p.unified.gamma
        lam = seq[-5]
        for n in range(-5, 0):
            lam = qg * lam + p.source(n)
        assert lam == pytest.approx(2.0, rel=1e-12)

    def test_mu_interlock(self):
        seq = lambda_recurrence(RepParams(U, lambda0=0.3, B=0.2), -10, 10)
        for n in range(-10, 10):
            assert seq.mu(n) == seq[n + 1]

    def test_out_of_window(self):
        seq = LambdaSeq(0, [1.0, 2.0])
        with pytest.raises(IndexError):
            seq[2]

    @settings(max_examples=100, deadline=None)
    @given(
        q=st.floats(0.3, 1.7).filter(lambda q: abs(q - 1) > 0.05),
        alpha=st.floats(-1.5, 1.5),
        beta=st.floats(-1, 1),
        gamma=st.floats(-1.5, 1.5),
        lam0=st.floats(0, 3),
        kappa0=st.floats(-1, 1),
        B=st.floats(-2, 2),
    )
    def test_closed_form_matches_recurrence(self, q, alpha, beta, gamma, lam0, kappa0, B):
        p = RepParams(UnifiedParams(q, alpha, beta, gamma, 0.3), lambda0=lam0, kappa0=kappa0, B=B)
        seq = lambda_recurrence(p, -40, 40)
        for n in range(-40, 41):
            # the recurrence accumulates rounding over |n| steps
            assert abs(seq[n] - lambda_closed(p, n)) <= 1e-11 * term_scale(p, n)


class TestValidation:
    def test_negative_lambda0(self):
        with pytest.raises(RepresentationError):
            RepParams(U, lambda0=-0.1)

    def test_nonfinite(self):
        with pytest.raises(DomainError):
            RepParams(U, B=math.inf)

    def test_nu_zero_needs_b_zero(self):
        with pytest.raises(RepresentationError):
            RepParams(UnifiedParams(0.5), B=0.3).k_scale

    def test_scan_depth(self):
        with pytest.raises(DomainError):
            classify(RepParams(U), scan_depth=5)


class TestClassify:
    @pytest.mark.parametrize(
        "u",
        [UnifiedParams(0.5, 0.5, 0, 1, 0.3), UnifiedParams(2.0, 0.0, 0.1, 1, 0.3), UnifiedParams(0.6, 1.0, 0.0, 1.0, 0.4)],
        ids=repr,
    )
    @pytest.mark.parametrize("kappa0", [0.0, 0.7])
    def test_one_dim(self, u, kappa0):
        c = classify(RepParams(u, lambda0=0.0, kappa0=kappa0, B=-1.0))
        assert c.case == "OneDim"
        assert c.window == (0, 0)
        assert c.dimension == 1

    def test_lowest_weight_ii(self):
        p = RepParams(UnifiedParams(2.0, 0.0, 0.0, 1.0, 0.3), lambda0=0.0, kappa0=0.0, B=0.0)
        c = classify(p)
        assert c.case == "LowestWeight_ii"
        assert c.window == (0, None)
        for n in range(0, 30):
            assert c.lam[n] == pytest.approx(lambda_closed(p, n), rel=1e-12)
        assert c.diagnostics["regime_agrees"]

    def test_lowest_weight_i(self):
        c = classify(RepParams.fock(UnifiedParams(0.7, 1.0, 0.2, 1.0, 0.3)))
        assert c.case == "LowestWeight_i"

    def test_bilateral(self):
        p = RepParams(UnifiedParams(0.5, 0.0, 0.0, 1.0, 0.3), lambda0=3.0, kappa0=0.0, B=0.2)
        c = classify(p)
        assert c.case == "Bilateral_iv"
        assert c.window == (None, None)
        assert np.all(c.lam.values > 0)

    def test_highest_weight(self):
        # lambda_1 = q lambda0 + (1 + B) = 0 with B = -4, lambda0 = 6, and positive below
        p = RepParams(UnifiedParams(0.5, 0.0, 0.0, 1.0, 0.3), lambda0=6.0, kappa0=0.0, B=-4.0)
        c = classify(p)
        assert c.case == "HighestWeight_iii"
        assert c.window == (None, 0)
        assert np.all(c.lam.window(-200, 0) > 0)

    def test_negative_weight_rejected(self):
        with pytest.raises(RepresentationError, match="lambda_1"):
            classify(RepParams(U, lambda0=0.0, B=-3.0))

    def test_ambiguous_boundary_flag(self):
        u = UnifiedParams(0.5, 0.0, 0.0, 1.0, 0.3)
        qa, qg = 1.0, 0.5
        r = regime(RepParams(u, B=(qg + qa) / (qa - qg)))
        assert r["ambiguous_boundary"]
        assert not regime(RepParams(u, B=0.1))["ambiguous_boundary"]

    def test_equal_regime(self):
        assert regime(RepParams(UnifiedParams(0.5, 1, 0, 1, 0.2)))["growth"] == "equal"

    @settings(max_examples=150, deadline=None)
    @given(
        q=st.floats(0.3, 1.7).filter(lambda q: abs(q - 1) > 0.05),
        alpha=st.floats(-1, 1),
        gamma=st.floats(-1, 1),
        kappa0=st.floats(-1, 1),
        B=st.one_of(st.just(-1.0), st.floats(-3, 3)),
    )
    def test_one_dim_iff_b_minus_one(self, q, alpha, gamma, kappa0, B):
        p = RepParams(UnifiedParams(q, alpha, 0.0, gamma, 0.3), lambda0=0.0, kappa0=kappa0, B=B)
        try:
            case = classify(p).case
        except RepresentationError:
            case = None
        assert (case == "OneDim") == (abs(B + 1) <= 1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        q=st.floats(0.3, 1.7).filter(lambda q: abs(q - 1) > 0.05),
        alpha=st.floats(-1, 1),
        gamma=st.floats(-1, 1),
        nu=st.floats(-0.45, 1),
    )
    def test_lowest_weight_nonnegative(self, q, alpha, gamma, nu):
        try:
            c = classify(RepParams.fock(UnifiedParams(q, alpha, 0.0, gamma, nu)))
        except RepresentationError:
            return
        if c.case.startswith("LowestWeight"):
            lam = c.lam.window(0, 200)
            assert np.all(lam[0::2] >= -1e-12)
            assert np.all(lam[1::2] >= -1e-12)


class TestCasimirValues:
    def test_integer_spectrum(self):
        c1, _, _ = casimir_values(RepParams.fock(U))
        assert c1 == 1

    def test_half_integer(self):
        c1, c2, _ = casimir_values(RepParams(U, lambda0=0.5, kappa0=0.5, B=0.2))
        assert c1 == pytest.approx(-1, abs=1e-15)
        assert c2 == pytest.approx(cmath.exp(0.5j * math.pi), abs=1e-15)

    @pytest.mark.parametrize("u", [U, UnifiedParams(0.7, 1, 0.3, 1, 0.2), UnifiedParams(1.4, 0.2, 0.1, 0.9, 0.0)], ids=repr)
    def test_fock_c3_vanishes(self, u):
        _, _, c3 = casimir_values(RepParams.fock(u))
        assert abs(c3) < 1e-14
