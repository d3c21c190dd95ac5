"""Coherent states of the q > 1 Arik-Coon oscillator and their resolution of unity.

With ``0 < q < 1`` the inverse base, the annihilation operator acts as
``a|n> = r_{n-1}|n-1>`` with ``r_n`` from :class:`~qdeform.qhermite.OrthoSystem`.
Its eigenvectors ``|z> = N(|z|^2)^-1 sum_n z^n / r_{n-1}! |n>`` resolve the
identity against a discrete measure on the lattice ``q^k`` built from the
solution of a Stieltjes moment problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalog import AbcForm, StructureSeq
from .errors import ConvergenceError
from .fockrep import build_lowest_weight
from .qcalc import DEFAULT_POLICY, DiscreteMeasure, QExpValue, SeriesPolicy, check_base, log_phi00, q_exponential, q_pochhammer
from .qhermite import OrthoSystem, psi_normalized


def oscillator(q: float) -> AbcForm:
    """The (q; -1/2, 1, 2; 0) oscillator, whose weights are ``f(n) = r_{n-1}^2``."""
    return AbcForm(q, -0.5, 1.0, 2.0)


def r_factorial(n: int, q: float) -> float:
    """``r_{n-1}! = r_0 r_1 ... r_{n-1}`` (1 for ``n = 0``)."""
    sys_ = OrthoSystem(q)
    out = 1.0
    for k in range(n):
        out *= sys_.r(k)
    return out


def r_factorial_closed(n: int, q: float) -> float:
    """``(q / (1-q))^(n/2) q^(-n(n+1)/4) (q;q)_n^(1/2)``."""
    return (q / (1 - q)) ** (n / 2) * q ** (-n * (n + 1) / 4) * math.sqrt(q_pochhammer(q, q, n))


def log_r_factorial_sq(n: int, q: float) -> float:
    """``log r_{n-1}!^2 = log[q^(-n(n-1)/2) (q;q)_n / (1-q)^n]``."""
    return -n * (n - 1) / 2 * math.log(q) + math.log(q_pochhammer(q, q, n)) - n * math.log(1 - q)


def normalization_sq(x: float, q: float, policy: SeriesPolicy = DEFAULT_POLICY) -> QExpValue:
    """``N^2(x) = sum_n q^(n(n-1)/2) (1-q)^n x^n / (q;q)_n = (-(1-q) x; q)_inf``, by series and by product."""
    q = check_base(q, convergent=True)
    if x < 0:
        raise ValueError(f"x = |z|^2 must be nonnegative, got {x!r}")
    return q_exponential((1 - q) * x, q, policy)


@dataclass(frozen=True)
class CoherentState:
    z: complex
    q: float
    coeffs: np.ndarray
    norm_sq: float

    def __len__(self):
        return len(self.coeffs)

    def overlap(self, other: "CoherentState") -> complex:
        """``<self|other>``."""
        n = min(len(self), len(other))
        return complex(np.vdot(self.coeffs[:n], other.coeffs[:n]))


def _raw_coeffs(z: complex, q: float, tol: float) -> np.ndarray:
    # z^n / r_{n-1}!, stopped once the dropped mass is below tol of the partial sum
    sys_ = OrthoSystem(q)
    x = abs(z) ** 2
    coeffs = [1.0 + 0j]
    mass = 1.0
    n = 0
    while True:
        ratio = x / sys_.r(n) ** 2
        coeffs.append(coeffs[-1] * z / sys_.r(n))
        t = abs(coeffs[-1]) ** 2
        mass += t
        n += 1
        # once the term ratio is below 1/2 and shrinking, the tail is bounded by 2 t
        if ratio < 0.5 and 2 * t <= tol * mass:
            return np.array(coeffs)
        if n > 10000:
            raise ConvergenceError(f"coherent state at |z|={abs(z)!r} did not converge")


def coherent_state(
    z: complex, q: float, tol: float = 1e-24, policy: SeriesPolicy = DEFAULT_POLICY
) -> CoherentState:
    """Normalized eigenvector of ``a`` with eigenvalue ``z``, truncated once the dropped mass is below ``tol``.

    The coefficients decay like ``q^(n^2 / 4)``, so truncation always succeeds.
    Truncation leaves an eigen-residual of about ``|z| sqrt(tol)``.
    """
    q = check_base(q, convergent=True)
    z = complex(z)
    c = _raw_coeffs(z, q, tol)
    norm_sq = normalization_sq(abs(z) ** 2, q, policy).product
    return CoherentState(z, q, c / math.sqrt(float(np.sum(np.abs(c) ** 2))), norm_sq)


def eigen_residual(state: CoherentState) -> float:
    """``||(a - z)|z>||`` with ``a`` from the lowest-weight matrices of the oscillator."""
    dim = len(state) + 1
    quad = build_lowest_weight(StructureSeq(oscillator(state.q)), dim=dim)
    v = np.append(state.coeffs, 0.0)
    return float(np.linalg.norm(quad.a @ v - state.z * v))


def wavefunction_sum(z: complex, q: float, x: float, tol: float = 1e-24) -> complex:
    """``<x|z> = N(|z|^2)^-1 sum_n z^n / r_{n-1}! psi_n(x)``."""
    q = check_base(q, convergent=True)
    c = _raw_coeffs(complex(z), q, tol)
    total = sum(cn * psi_normalized(n, q, x) for n, cn in enumerate(c))
    return total / math.sqrt(normalization_sq(abs(z) ** 2, q).product)


def wavefunction_closed(z: float, q: float, x: float) -> float:
    """Product form ``(-t e^theta; q)_inf (t e^-theta; q)_inf / N(z^2)`` with ``t = z sqrt(q (1-q))``, ``x = sinh(theta)``."""
    q = check_base(q, convergent=True)
    t = z * math.sqrt(q * (1 - q))
    theta = math.asinh(x)
    num = q_pochhammer(-t * math.exp(theta), q) * q_pochhammer(t * math.exp(-theta), q)
    return num / math.sqrt(normalization_sq(z * z, q).product)


# ---------------------------------------------------------------------------
# Moment problem and resolution of unity
# ---------------------------------------------------------------------------


def moment_target(n: int, q: float) -> float:
    """``m_n = q^(-n(n-1)/2) (q;q)_n``."""
    return q ** (-n * (n - 1) / 2) * q_pochhammer(q, q, n)


def _log_weight(k: int, q: float) -> float:
    # log of q^(k-1) / e_q(q^(k-1)) at the lattice point y = q^k
    y = q ** (k - 1)
    return (k - 1) * math.log(q) - log_phi00(y, q)


@dataclass(frozen=True)
class WeightSolution:
    """Normalized lattice measure in ``y`` with moments ``m_n``, plus its raw mass ``I0``.

    ``scale`` converts to the radial variable ``x = |z|^2 = y / scale``.
    """

    measure: DiscreteMeasure
    I0: float
    scale: float

    @property
    def radial(self) -> DiscreteMeasure:
        return self.measure.scaled(1.0 / self.scale)


def weight_measure(q: float, scale: float | None = None, k_range: int = 60, tail_tol: float = 1e-16) -> WeightSolution:
    """Discrete solution of the moment problem ``int y^n dmu = q^(-n(n-1)/2) (q;q)_n``.

    Point masses sit at ``y = q^k`` with weights ``q^(k-1) / e_q(y / q)``, the
    Jackson integral of ``y^n / e_q(y / q)``.  ``k_range`` bounds the large-``y``
    side at ``q^-k_range``; if the weight there is not below ``tail_tol`` of the
    total the measure is rejected.  The small-``y`` side is extended past
    ``q^k_range`` until its geometric tail drops below ``tail_tol``.

    Returns
    -------
    WeightSolution
        Weights normalized to unit mass; ``I0`` is the raw mass.
    """
    q = check_base(q, convergent=True)
    scale = 1 - q if scale is None else scale
    k_hi = k_range
    # weights approach q^(k-1) for small y; the sum beyond k_hi is q^k_hi / (1-q)
    while q**k_hi / (1 - q) > tail_tol * 1e-2:
        k_hi += 1
    ks = np.arange(k_hi, -k_range - 1, -1)
    logw = np.array([_log_weight(int(k), q) for k in ks])
    shift = logw.max()
    w = np.exp(logw - shift)
    total = math.fsum(w)
    if w[-1] > tail_tol * total:
        raise ConvergenceError(
            f"k_range={k_range} too small at q={q!r}: largest-y weight is {w[-1] / total:.3e} of the total"
        )
    I0 = total * math.exp(shift)
    return WeightSolution(DiscreteMeasure(q**ks.astype(float), w / total), I0, scale)


def completeness_check(q: float, n_max: int, k_range: int = 60) -> np.ndarray:
    """Gram matrix ``<m| int |z><z| W(|z|^2) d^2z |n>`` of the resolution of unity.

    The angular integral gives ``2 pi delta_mn``; on the diagonal the radial
    part is ``pi sum_k W_k x_k^n / (r_{n-1}!^2 N^2(x_k))`` with ``W_k``
    the coherent-state density weights, assembled in log space.
    """
    if n_max > 15:
        raise ValueError("n_max must be at most 15")
    sol = weight_measure(q, k_range=k_range)
    radial = sol.radial
    xs = radial.points
    mask = radial.weights > 0
    xs, w = xs[mask], radial.weights[mask]
    log_n2 = np.array([log_phi00((1 - q) * x, q) for x in xs])
    # density weights: W_k = N^2(x_k) w_k / pi
    log_W = np.log(w) + log_n2 - math.log(math.pi)
    G = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max + 1):
        terms = np.exp(math.log(math.pi) + log_W + n * np.log(xs) - log_n2 - log_r_factorial_sq(n, q))
        G[n, n] = math.fsum(terms)
    return G
