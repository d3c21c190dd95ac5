"""Structure functions of the unified (q; alpha, beta, gamma; nu) oscillator and its special cases.

Every deformation is described by its structure function ``f``, with
``a+ a |n> = f(n) |n>`` and ``a a+ |n> = f(n+1) |n>``.  The unified family
obeys ``a a+ - q^gamma a+ a = (1 + 2 nu K) q^(alpha N + beta)``; the named
deformations below are evaluated from their own defining formulas so that
the unified closed form can be checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DivergenceError, DomainError
from .qcalc import check_base, q_number

#: relative gap |q^a - q^g| / (q^a + q^g) below which the alpha = gamma branch is used
BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class UnifiedParams:
    q: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 1.0
    nu: float = 0.0

    def __post_init__(self):
        check_base(self.q)
        for name in ("alpha", "beta", "gamma", "nu"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @property
    def equal_branch(self) -> bool:
        qa, qg = self.q**self.alpha, self.q**self.gamma
        return abs(qg - qa) < BRANCH_TOL * (qg + qa)


def parity(n: int) -> int:
    return -1 if n % 2 else 1


def dilation_ratio(qg: float, qa: float, x: float) -> float:
    """``(qg**x - qa**x) / (qg - qa)`` for real ``x``, continuous through ``qg == qa``.

    Written as ``qa**(x-1) * expm1(x d) / expm1(d)`` with ``d = log(qg/qa)``,
    which has no cancellation as the two bases approach each other.
    """
    if abs(qg - qa) < BRANCH_TOL * (qg + qa):
        return x * qg ** (x - 1)
    d = math.log(qg) - math.log(qa)
    if abs(x * d) > 700.0:
        # one power dominates, so the direct quotient is accurate and expm1 would overflow
        return (qg**x - qa**x) / (qg - qa)
    return qa ** (x - 1) * math.expm1(x * d) / math.expm1(d)


def structure_unified(params: UnifiedParams, n: int) -> float:
    """Closed-form structure function of the unified algebra with ``f(0) = 0``.

    Away from ``alpha = gamma``::

        f(n) = q^beta [ (q^(gamma n) - q^(alpha n)) / (q^gamma - q^alpha)
                        + 2 nu (q^(gamma n) - (-1)^n q^(alpha n)) / (q^gamma + q^alpha) ]

    and at ``alpha = gamma`` the limit ``n q^(gamma(n-1)+beta)`` plus the
    odd-``n`` parity term ``2 nu q^(gamma(n-1)+beta)``.
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    q, nu = params.q, params.nu
    qa, qg = q**params.alpha, q**params.gamma
    qb = q**params.beta
    odd = (qg**n - parity(n) * qa**n) / (qg + qa)
    return qb * (dilation_ratio(qg, qa, n) + 2.0 * nu * odd)


def structure_recurrence(params: UnifiedParams, n_max: int) -> list[float]:
    """Iterate ``f(k+1) = q^gamma f(k) + (1 + 2 nu (-1)^k) q^(alpha k + beta)`` from ``f(0) = 0``."""
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    q = params.q
    qg = q**params.gamma
    out = [0.0]
    for k in range(n_max):
        out.append(qg * out[-1] + (1.0 + 2.0 * params.nu * parity(k)) * q ** (params.alpha * k + params.beta))
    return out


def bracket(params: UnifiedParams, n: int, k_eigen: int) -> float:
    """The bracket ``[n; alpha, gamma; nu K]`` with ``K`` replaced by its eigenvalue ``k_eigen``."""
    if n < 1:
        raise DomainError(f"bracket needs n >= 1, got {n}")
    if k_eigen not in (1, -1):
        raise DomainError(f"K eigenvalue must be +1 or -1, got {k_eigen}")
    q = params.q
    qa, qg = q**params.alpha, q**params.gamma
    odd = (qg**n - parity(n) * qa**n) / (qg + qa)
    return dilation_ratio(qg, qa, n) + 2.0 * params.nu * k_eigen * odd


def bracket_generating_function(params: UnifiedParams, k_eigen: int, z: float) -> float:
    """Closed form of ``sum_n [n; alpha, gamma; nu K] z^n``."""
    q = params.q
    qa, qg = q**params.alpha, q**params.gamma
    if abs(qg * z) >= 1 or abs(qa * z) >= 1:
        raise DivergenceError(f"generating function diverges at z={z!r}")
    twonuk = 2.0 * params.nu * k_eigen
    if params.equal_branch:
        return z / (1 - qg * z) ** 2 + twonuk * z / (1 - qg * qg * z * z)
    return z / (1 - qg * z) * (1 / (1 - qa * z) + twonuk / (1 + qa * z))


def bracket_generating_check(params: UnifiedParams, k_eigen: int, z: float, n_terms: int) -> float:
    """Absolute gap between the truncated bracket series and its closed form."""
    closed = bracket_generating_function(params, k_eigen, z)
    partial = math.fsum(bracket(params, n, k_eigen) * z**n for n in range(1, n_terms + 1))
    return abs(partial - closed)


# ---------------------------------------------------------------------------
# Named deformations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArikCoon:
    """``a a+ - q a+ a = 1``."""

    q: float

    def structure(self, n: int) -> float:
        return q_number(self.q, n)

    def unified(self) -> UnifiedParams:
        return UnifiedParams(self.q, alpha=0.0, beta=0.0, gamma=1.0, nu=0.0)

    def canonical(self) -> "ArikCoon | AbcForm":
        """Rewrite the ``q > 1`` oscillator as the (1/q; -1/2, 1, 2; 0) form with base below one."""
        if self.q > 1:
            return AbcForm(1.0 / self.q, -0.5, 1.0, 2.0)
        return self


@dataclass(frozen=True)
class BiedenharnMacfarlane:
    """``a a+ - q a+ a = q^-N``."""

    q: float

    def structure(self, n: int) -> float:
        q = self.q
        return (q**n - q**-n) / (q - 1 / q)

    def unified(self) -> UnifiedParams:
        return UnifiedParams(self.q, alpha=-1.0, beta=0.0, gamma=1.0, nu=0.0)


@dataclass(frozen=True)
class ChungEtAl:
    """``a a+ - q a+ a = q^(alpha N + beta)``."""

    q: float
    alpha: float
    beta: float

    def structure(self, n: int) -> float:
        q, a, b = self.q, self.alpha, self.beta
        if abs(q**a - q) < BRANCH_TOL * (q**a + q):
            return n * q ** (n - 1 + b)
        return q**b * (q ** (a * n) - q**n) / (q**a - q)

    def unified(self) -> UnifiedParams:
        return UnifiedParams(self.q, alpha=self.alpha, beta=self.beta, gamma=1.0, nu=0.0)


@dataclass(frozen=True)
class BDY:
    """``a a+ - q^gamma a+ a = q^(alpha N + beta)``."""

    q: float
    alpha: float
    beta: float
    gamma: float

    def structure(self, n: int) -> float:
        q, a, b, g = self.q, self.alpha, self.beta, self.gamma
        if abs(q**a - q**g) < BRANCH_TOL * (q**a + q**g):
            return n * q ** (g * (n - 1) + b)
        return q**b * (q ** (a * n) - q ** (g * n)) / (q**a - q**g)

    def unified(self) -> UnifiedParams:
        return UnifiedParams(self.q, alpha=self.alpha, beta=self.beta, gamma=self.gamma, nu=0.0)


@dataclass(frozen=True)
class NuModified:
    """``[a, a+] = 1 + 2 nu K`` with ``K |n> = (-1)^n |n>``."""

    nu: float

    def structure(self, n: int) -> float:
        return n + self.nu * (1 - parity(n))

    def unified(self, q: float = 0.5) -> UnifiedParams:
        # alpha = gamma = 0 makes every power of q equal to one, so the base drops out
        return UnifiedParams(q, alpha=0.0, beta=0.0, gamma=0.0, nu=self.nu)


@dataclass(frozen=True)
class QNu:
    """``a a+ - q a+ a = (1 + 2 nu K) q^-N``."""

    q: float
    nu: float

    def structure(self, n: int) -> float:
        q, nu = self.q, self.nu
        return (q**n - q**-n) / (q - 1 / q) + 2 * nu * (q**n - parity(n) * q**-n) / (q + 1 / q)

    def unified(self) -> UnifiedParams:
        return UnifiedParams(self.q, alpha=-1.0, beta=0.0, gamma=1.0, nu=self.nu)


@dataclass(frozen=True)
class Unified:
    params: UnifiedParams

    def structure(self, n: int) -> float:
        return structure_unified(self.params, n)

    def unified(self) -> UnifiedParams:
        return self.params


@dataclass(frozen=True)
class AbcForm:
    """``f(n) = q^(2 a n + b) (1 - q'^n) / (1 - q')`` with ``q' = q^(c-1)``."""

    q: float
    a: float
    b: float
    c: float

    def __post_init__(self):
        check_base(self.q)

    def structure(self, n: int) -> float:
        q, a, b, c = self.q, self.a, self.b, self.c
        qp = q ** (c - 1)
        if qp == 1.0:
            return n * q ** (2 * a * n + b)
        return q ** (2 * a * n + b) * (1 - qp**n) / (1 - qp)

    def unified(self) -> UnifiedParams:
        return abc_to_unified(self.q, self.a, self.b, self.c)


@dataclass(frozen=True)
class TwoParamParams:
    p: float
    q: float
    alpha: float
    beta: float
    l: int

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0):
            raise DomainError("p and q must be positive")
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")
        if int(self.l) != self.l:
            raise DomainError(f"l must be an integer, got {self.l!r}")
        lo, hi = self.p ** (-self.l), self.q**self.l
        if abs(lo - hi) <= 1e-14 * (abs(lo) + abs(hi)):
            raise DomainError(f"degenerate denominator: p^-l = q^l = {hi!r}")

    @property
    def step(self) -> float:
        """``l / alpha``, the shift of ``N`` produced by ``a+``."""
        return self.l / self.alpha

    @property
    def denominator(self) -> float:
        return self.p ** (-self.l) - self.q**self.l


def structure_two_param(params: TwoParamParams, n: float) -> float:
    """``f(n) = (p^(-alpha n - beta) - q^(alpha n + beta)) / (p^-l - q^l)``.

    ``f(0)`` vanishes only when ``beta = 0``.
    """
    p, q, a, b = params.p, params.q, params.alpha, params.beta
    return (p ** (-a * n - b) - q ** (a * n + b)) / params.denominator


@dataclass(frozen=True)
class TwoParam:
    params: TwoParamParams

    def structure(self, n: int) -> float:
        return structure_two_param(self.params, n)

    def unified(self) -> UnifiedParams:
        raise DomainError("the (p, q; alpha, beta, l) family has no unified embedding")


DeformationKind = Union[
    ArikCoon, BiedenharnMacfarlane, ChungEtAl, BDY, NuModified, QNu, Unified, AbcForm, TwoParam
]


def abc_to_unified(q: float, a: float, b: float, c: float) -> UnifiedParams:
    """Map (q; a, b, c; 0) to unified parameters: alpha = 2a+c-1, beta = 2a+b, gamma = 2a, nu = 0."""
    return UnifiedParams(q, alpha=2 * a + c - 1, beta=2 * a + b, gamma=2 * a, nu=0.0)


def structure_catalog(kind: DeformationKind, n: int) -> float:
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return kind.structure(n)


@dataclass(frozen=True)
class StructureSeq:
    """A structure function evaluated lazily, either in closed form or by recurrence."""

    kind: DeformationKind
    method: str = "closed_form"

    def __post_init__(self):
        if self.method not in ("closed_form", "recurrence"):
            raise ValueError(f"unknown method {self.method!r}")

    def __call__(self, n: int) -> float:
        return self.values(n)[n] if self.method == "recurrence" else structure_catalog(self.kind, n)

    def values(self, n_max: int) -> np.ndarray:
        if self.method == "recurrence":
            return np.array(structure_recurrence(self.kind.unified(), n_max))
        return np.array([structure_catalog(self.kind, n) for n in range(n_max + 1)])


KIND_NAMES = {
    "arik-coon": ArikCoon,
    "biedenharn-macfarlane": BiedenharnMacfarlane,
    "chung": ChungEtAl,
    "bdy": BDY,
    "nu-modified": NuModified,
    "q-nu": QNu,
    "unified": Unified,
    "abc": AbcForm,
    "two-param": TwoParam,
}
