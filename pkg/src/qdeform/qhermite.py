"""q^-1-Hermite polynomials and the Jacobi operator of the q > 1 Arik-Coon oscillator.

The polynomials obey ``2x h_n = h_{n+1} + q^-n (1 - q^n) h_{n-1}`` with
``h_0 = 1`` and ``h_1 = 2x``; here ``0 < q < 1`` is the inverse of the
oscillator's base.  They are orthogonal for any measure solving an
indeterminate moment problem, so orthogonality is checked against the
moment functional induced by the recurrence itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from .qcalc import check_base, q_pochhammer


@dataclass(frozen=True)
class OrthoSystem:
    """Off-diagonal coefficients ``r_n`` of the Jacobi operator ``Q|n> = r_n|n+1> + r_{n-1}|n-1>``.

    ``r_n**2`` equals the structure function ``f(n+1) = q^-n (1 - q^(n+1)) / (1 - q)``.
    """

    q: float

    def __post_init__(self):
        check_base(self.q, convergent=True)

    def r(self, n: int) -> float:
        q = self.q
        return math.sqrt(q**-n * (1 - q ** (n + 1)) / (1 - q))

    def normalizer(self, n: int) -> float:
        """``q^(-n(n+1)/4) (q;q)_n^(1/2)``, the norm of ``h_n``."""
        q = self.q
        return math.sqrt(q ** (-n * (n + 1) / 2) * q_pochhammer(q, q, n))

    @property
    def x_scale(self) -> float:
        """``s = q^(-1/2) (1 - q)^(1/2) / 2``: the polynomial variable is ``x = s * xi`` for ``Q``'s variable ``xi``."""
        return math.sqrt((1 - self.q) / self.q) / 2

    def jacobi(self, dim: int) -> np.ndarray:
        off = [self.r(n) for n in range(dim - 1)]
        return np.diag(off, 1) + np.diag(off, -1)


def hermite_recurrence(n: int, q: float) -> np.ndarray:
    """Monomial coefficients of ``h_n(x; q)``, lowest degree first."""
    q = check_base(q)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _hermite_coeffs(n, q).copy()


@lru_cache(maxsize=256)
def _hermite_coeffs(n: int, q: float) -> np.ndarray:
    prev, cur = np.array([1.0]), np.array([0.0, 2.0])
    if n == 0:
        return prev
    for k in range(1, n):
        nxt = P.polysub(P.polymulx(2 * cur), q**-k * (1 - q**k) * prev)
        prev, cur = cur, nxt
    return cur


def hermite_value(n: int, q: float, x: float) -> float:
    """``h_n(x; q)`` by running the recurrence at the point ``x``."""
    q = check_base(q)
    prev, cur = 1.0, 2.0 * x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, 2 * x * cur - q**-k * (1 - q**k) * prev
    return cur


def qbinom(n: int, k: int, q: float) -> float:
    return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k))


def hermite_explicit(n: int, q: float, x: float) -> float:
    """``h_n(x; q) = sum_k qbinom(n, k) (-1)^k q^(k(k-n)) e^((n-2k) theta)`` with ``x = sinh(theta)``."""
    q = check_base(q)
    theta = math.asinh(x)
    return math.fsum(
        qbinom(n, k, q) * (-1) ** k * q ** (k * (k - n)) * math.exp((n - 2 * k) * theta) for k in range(n + 1)
    )


def psi_normalized(n: int, q: float, x: float) -> float:
    """Orthonormal polynomial ``h_n / (q^(-n(n+1)/4) (q;q)_n^(1/2))``."""
    return hermite_value(n, q, x) / OrthoSystem(q).normalizer(n)


@dataclass(frozen=True)
class MomentFunctional:
    """Linear functional ``L[x^k] = moments[k]`` induced by the recurrence, with ``L[1] = 1``."""

    q: float
    moments: np.ndarray

    def __call__(self, coeffs) -> float:
        coeffs = np.asarray(coeffs, dtype=float)
        if len(coeffs) > len(self.moments):
            raise ValueError(f"polynomial degree {len(coeffs) - 1} exceeds available moments")
        return math.fsum(coeffs * self.moments[: len(coeffs)])


def moment_functional(q: float, n_max: int) -> MomentFunctional:
    """Moments ``L[x^k]`` for ``k <= 2 n_max + 1`` as ``s^k (Q^k)_00``.

    The Jacobi matrix ``Q`` is truncated to ``n_max + 2`` states, which
    reproduces every moment up to order ``2 n_max + 3`` exactly.
    """
    sys_ = OrthoSystem(q)
    dim = n_max + 2
    J = sys_.x_scale * sys_.jacobi(dim)
    e = np.zeros(dim)
    e[0] = 1.0
    moments = []
    v = e
    for _ in range(2 * n_max + 2):
        moments.append(v[0])
        v = J @ v
    return MomentFunctional(q, np.array(moments))


def orthogonality_check(q: float, n_max: int) -> np.ndarray:
    """Gram matrix ``L[h_m h_n]`` for ``m, n <= n_max``; it should be ``diag(q^(-n(n+1)/2) (q;q)_n)``."""
    if n_max > 12:
        raise ValueError("n_max above 12 loses precision in the monomial basis")
    L = moment_functional(q, n_max)
    polys = [hermite_recurrence(n, q) for n in range(n_max + 1)]
    G = np.empty((n_max + 1, n_max + 1))
    for m in range(n_max + 1):
        for n in range(m, n_max + 1):
            G[m, n] = G[n, m] = L(P.polymul(polys[m], polys[n]))
    return G


def gram_target(q: float, n: int) -> float:
    return q ** (-n * (n + 1) / 2) * q_pochhammer(q, q, n)
