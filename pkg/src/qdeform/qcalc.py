"""q-arithmetic, q-series with controlled truncation, and Jackson calculus.

The base ``q`` is a plain float.  Finite expressions accept any ``q > 0``
with ``q != 1``; infinite products, series and lattice sums require
``0 < q < 1`` and raise :class:`~qdeform.errors.DivergenceError` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConsistencyError, ConvergenceError, DivergenceError, DomainError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation policy shared by every infinite series and product."""

    rel_tol: float = 1e-15
    max_terms: int = 10000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_POLICY = SeriesPolicy()


def check_base(q: float, convergent: bool = False) -> float:
    """Validate a deformation base and return it as a float.

    With ``convergent=True`` the base must also satisfy ``q < 1``.
    """
    q = float(q)
    if not math.isfinite(q) or q <= 0 or q == 1:
        raise DomainError(f"q must be positive and different from 1, got {q!r}")
    if convergent and q >= 1:
        raise DivergenceError(f"operation needs 0 < q < 1 to converge, got q={q!r}")
    return q


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses on the positive half-line.

    Points are strictly increasing and positive, weights nonnegative.
    """

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        if pts.ndim != 1 or pts.shape != wts.shape:
            raise ValueError("points and weights must be 1-d arrays of equal length")
        if np.any(~np.isfinite(pts)) or np.any(pts <= 0):
            raise ValueError("points must be finite and positive")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("points must be strictly increasing")
        if np.any(~np.isfinite(wts)) or np.any(wts < 0):
            raise ValueError("weights must be finite and nonnegative")
        pts.setflags(write=False)
        wts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)

    def __len__(self):
        return len(self.points)

    @property
    def total_mass(self) -> float:
        return math.fsum(self.weights)

    def integrate(self, f: Callable[[float], float]) -> float:
        return math.fsum(w * f(x) for x, w in zip(self.points, self.weights) if w > 0)

    def moment(self, n: int) -> float:
        """Return the n-th moment, evaluated in log space so large points do not overflow."""
        mask = self.weights > 0
        logs = np.log(self.weights[mask]) + n * np.log(self.points[mask])
        return math.fsum(np.exp(logs))

    def normalized(self) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points, self.weights / self.total_mass)

    def scaled(self, factor: float) -> "DiscreteMeasure":
        """Push the measure forward under ``x -> factor * x``."""
        return DiscreteMeasure(self.points * factor, self.weights)


# ---------------------------------------------------------------------------
# q-numbers and q-Pochhammer symbols
# ---------------------------------------------------------------------------


def q_number(q: float, n: int) -> float:
    """The q-number ``(1 - q**n) / (1 - q)``, summed as ``1 + q + ... + q**(n-1)``."""
    q = check_base(q)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    total = 0.0
    for _ in range(n):
        total = total * q + 1.0
    return total


def _qpoch_infinite(a: float, q: float, policy: SeriesPolicy) -> tuple[float, float]:
    # Truncate once |a q^k| < rel_tol, then fold the remaining factors in
    # through exp(-sum of tail), which is exact to first order.
    prod = 1.0
    term = float(a)
    k = 0
    while abs(term) >= policy.rel_tol:
        prod *= 1.0 - term
        if prod == 0.0:
            return 0.0, 0.0
        term *= q
        k += 1
        if k >= policy.max_terms:
            raise ConvergenceError(
                f"(a;q)_inf with a={a!r}, q={q!r} needs more than {policy.max_terms} factors"
            )
    tail = term / (1.0 - q)
    prod *= math.exp(-tail)
    rel_err = tail * tail / 2.0 + (k + 2) * _EPS
    return prod, abs(prod) * rel_err


def q_pochhammer(a: float, q: float, n: float = math.inf, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """The q-Pochhammer symbol ``(a; q)_n = prod_{k<n} (1 - a q**k)``.

    ``n = math.inf`` gives the infinite product and requires ``q < 1``.
    """
    if n == math.inf:
        q = check_base(q, convergent=True)
        return _qpoch_infinite(a, q, policy)[0]
    q = check_base(q)
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a nonnegative integer or inf, got {n!r}")
    prod = 1.0
    term = float(a)
    for _ in range(int(n)):
        prod *= 1.0 - term
        term *= q
    return prod


def q_pochhammer_with_error(a: float, q: float, policy: SeriesPolicy = DEFAULT_POLICY) -> tuple[float, float]:
    """``(a; q)_inf`` together with an absolute error estimate."""
    q = check_base(q, convergent=True)
    return _qpoch_infinite(a, q, policy)


def log_phi00(x: float, q: float) -> float:
    """``log (-x; q)_inf`` for ``x >= 0``, stable for very large ``x``."""
    q = check_base(q, convergent=True)
    if x < 0:
        raise DomainError(f"log_phi00 needs x >= 0, got {x!r}")
    total = 0.0
    term = float(x)
    # log1p(t) < t, so the tail after |t| < 1e-17 is below 1e-17/(1-q)
    while term > 1e-17 * (1.0 - q):
        total += math.log1p(term)
        term *= q
    return total


class QExpValue(NamedTuple):
    series: float
    product: float


def q_exponential(x: float, q: float, policy: SeriesPolicy = DEFAULT_POLICY) -> QExpValue:
    """Evaluate ``e_q(x) = sum q^{n(n-1)/2} x^n / (q;q)_n`` both as a series and as ``(-x;q)_inf``.

    The two routes are compared against each other; a disagreement beyond
    ``10 * rel_tol`` (plus accumulated rounding) relative to the absolute
    series mass raises :class:`ConsistencyError`.
    """
    q = check_base(q, convergent=True)
    terms = [1.0]
    term = 1.0
    n = 0
    while True:
        ratio = q**n * x / (1.0 - q ** (n + 1))
        term *= ratio
        n += 1
        terms.append(term)
        # once |ratio| < 1/2 and keeps shrinking, the tail is below 2|term|
        if abs(ratio) < 0.5 and 2.0 * abs(term) <= policy.rel_tol * math.fsum(abs(t) for t in terms[-8:]):
            break
        if n >= policy.max_terms:
            raise ConvergenceError(f"e_q({x!r}) with q={q!r} needs more than {policy.max_terms} terms")
    series = math.fsum(terms)
    product, perr = _qpoch_infinite(-x, q, policy)
    scale = math.fsum(abs(t) for t in terms)
    allowed = 10.0 * (policy.rel_tol + 4 * n * _EPS) * scale + perr
    if abs(series - product) > allowed:
        raise ConsistencyError(
            f"e_q({x!r}; q={q!r}) series {series!r} and product {product!r} disagree by "
            f"{abs(series - product):.3e} (allowed {allowed:.3e})"
        )
    return QExpValue(series, product)


def phi00(x: float, q: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """The basic hypergeometric ``0phi0`` specialization ``(-x; q)_inf``, i.e. ``e_q(x)``."""
    return q_pochhammer(-x, q, math.inf, policy)


def e_q(x: float, q: float) -> float:
    """Shorthand for :func:`phi00` with the default policy."""
    return phi00(x, q)


# ---------------------------------------------------------------------------
# Jackson calculus
# ---------------------------------------------------------------------------


def jackson_derivative(f: Callable[[float], float], x: float, q: float) -> float:
    """Dilation derivative ``(f(x/q) - f(x)) / (x/q)``."""
    q = check_base(q)
    if x == 0:
        raise DomainError("the Jackson derivative is undefined at x = 0")
    xs = x / q
    return (f(xs) - f(x)) / xs


def monomial_derivative_factor(n: int, q: float) -> float:
    """``c_{n-1}^2 = q**(1-n) * (1 - q**n)``: the Jackson derivative maps ``x**n`` to ``c_{n-1}^2 x**(n-1)``."""
    q = check_base(q)
    return q ** (1 - n) * (1.0 - q**n)


def jackson_lattice(q: float, k_min: int, k_max: int) -> DiscreteMeasure:
    """Lattice points ``q**k`` with weights ``q**(k-1)`` for ``k_min <= k <= k_max``."""
    q = check_base(q, convergent=True)
    ks = np.arange(k_max, k_min - 1, -1, dtype=float)
    return DiscreteMeasure(q**ks, q ** (ks - 1))


def jackson_integral(f: Callable[[float], float], q: float, policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Bilateral Jackson integral ``int_0^inf f dt_q = sum_{k in Z} q**(k-1) f(q**k)``.

    The sum runs outward from ``k = 0`` in both directions and stops in each
    direction once three consecutive terms fall below ``rel_tol`` of the
    running total (scaled by the geometric tail factor on the ``t -> 0``
    side).
    """
    q = check_base(q, convergent=True)
    terms = [f(1.0) / q]
    if not math.isfinite(terms[0]):
        raise ConvergenceError("integrand is not finite at t = 1")
    budget = policy.max_terms
    for direction in (1, -1):
        quiet = 0
        k = direction
        tail_factor = 1.0 / (1.0 - q) if direction == 1 else 1.0
        while quiet < 3:
            t = q**k
            term = q ** (k - 1) * f(t)
            if not math.isfinite(term):
                raise ConvergenceError(f"integrand term at t={t!r} is not finite")
            terms.append(term)
            total = abs(math.fsum(terms))
            quiet = quiet + 1 if abs(term) * tail_factor <= policy.rel_tol * total else 0
            k += direction
            budget -= 1
            if budget <= 0:
                raise ConvergenceError(
                    f"Jackson integral did not converge within {policy.max_terms} lattice points"
                )
    return math.fsum(terms)


class ByParts(NamedTuple):
    lhs: float
    rhs: float
    scale: float


def jackson_by_parts(
    u: Callable[[float], float], v: Callable[[float], float], q: float, k_min: int, k_max: int
) -> ByParts:
    """Both sides of q-integration by parts over the lattice window ``q**k_max .. q**k_min``.

    ``int u D_q v = [u v] - int (D_q u)(x) v(x/q)``, where the boundary term is
    ``u v`` at ``q**(k_min-1)`` minus ``u v`` at ``q**k_max``.  ``scale`` is
    the sum of term magnitudes, for relative comparisons.
    """
    lattice = jackson_lattice(q, k_min, k_max)

    def g(x):
        return u(x) * v(x)

    lhs_terms = [w * u(x) * jackson_derivative(v, x, q) for x, w in zip(lattice.points, lattice.weights)]
    rest = [w * jackson_derivative(u, x, q) * v(x / q) for x, w in zip(lattice.points, lattice.weights)]
    boundary = g(q ** (k_min - 1)) - g(q**k_max)
    scale = math.fsum(map(abs, lhs_terms)) + math.fsum(map(abs, rest)) + abs(boundary)
    return ByParts(math.fsum(lhs_terms), boundary - math.fsum(rest), scale)
