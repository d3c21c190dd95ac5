"""Irreducible representations of the unified algebra.

A representation is fixed by ``lambda0 = <0|a+ a|0>``, the shift ``kappa0`` of
the number operator (``N|n> = (kappa0 + n)|n>``) and the real constant ``B``
with ``K|n> = (-1)^n B / (2 nu) |n>``.  The weights ``lambda_n`` obey::

    lambda_{n+1} - q^gamma lambda_n = (1 + (-1)^n B) q^(alpha (n + kappa0) + beta)

and the module is cut off wherever ``lambda_n`` vanishes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import UnifiedParams, dilation_ratio, parity
from .errors import DomainError, RepresentationError

#: relative tolerance used to decide that a weight vanishes
ZERO_TOL = 1e-10

CASES = (
    "LowestWeight_i",
    "LowestWeight_ii",
    "OneDim",
    "HighestWeight_iii",
    "TwoDim_iii",
    "Bilateral_iv",
    "TwoDim_iv",
    "Finite",
)


@dataclass(frozen=True)
class RepParams:
    unified: UnifiedParams
    lambda0: float = 0.0
    kappa0: float = 0.0
    B: float = 0.0

    def __post_init__(self):
        for name in ("lambda0", "kappa0", "B"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.lambda0 < 0:
            raise RepresentationError(f"lambda0 = <0|a+ a|0> must be nonnegative, got {self.lambda0!r}")

    @classmethod
    def fock(cls, unified: UnifiedParams) -> "RepParams":
        """The lowest-weight module with ``a|0> = 0`` and ``K|0> = |0>``, where ``lambda_n = f(n)``."""
        return cls(unified, lambda0=0.0, kappa0=0.0, B=2.0 * unified.nu)

    @property
    def k_scale(self) -> float:
        """Eigenvalue of ``K`` on ``|0>``: ``B / (2 nu)``, or ``1`` when ``nu = 0``."""
        nu = self.unified.nu
        if nu == 0:
            if self.B != 0:
                raise RepresentationError("nu = 0 forces B = 0; K is then only fixed up to the sign convention K|0> = |0>")
            return 1.0
        return self.B / (2.0 * nu)

    def source(self, n: int) -> float:
        """Inhomogeneous term ``(1 + (-1)^n B) q^(alpha (n + kappa0) + beta)`` of the weight recurrence."""
        u = self.unified
        return (1.0 + parity(n) * self.B) * u.q ** (u.alpha * (n + self.kappa0) + u.beta)


@dataclass(frozen=True)
class LambdaSeq:
    """Weights ``lambda_n`` for ``n_lo <= n <= n_hi``."""

    n_lo: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n_hi(self) -> int:
        return self.n_lo + len(self.values) - 1

    def __getitem__(self, n: int) -> float:
        if not self.n_lo <= n <= self.n_hi:
            raise IndexError(f"n={n} outside window [{self.n_lo}, {self.n_hi}]")
        return float(self.values[n - self.n_lo])

    def mu(self, n: int) -> float:
        """``mu_n = <n|a a+|n> = lambda_{n+1}``."""
        return self[n + 1]

    def window(self, lo: int, hi: int) -> np.ndarray:
        return self.values[lo - self.n_lo : hi - self.n_lo + 1]


def lambda_closed(params: RepParams, n: int) -> float:
    """Closed-form weight ``lambda_n`` for any integer ``n``.

    ``lambda0 q^(gamma n) + q^(alpha kappa0 + beta) [R_n + B (q^(gamma n) - (-1)^n q^(alpha n)) / (q^gamma + q^alpha)]``
    with ``R_n = (q^(gamma n) - q^(alpha n)) / (q^gamma - q^alpha)``, whose ``alpha = gamma``
    limit is ``n q^(gamma (n-1))``.
    """
    u = params.unified
    qa, qg = u.q**u.alpha, u.q**u.gamma
    odd = (qg**n - parity(n) * qa**n) / (qg + qa)
    pref = u.q ** (u.alpha * params.kappa0 + u.beta)
    return params.lambda0 * qg**n + pref * (dilation_ratio(qg, qa, n) + params.B * odd)


def lambda_recurrence(params: RepParams, n_lo: int, n_hi: int) -> LambdaSeq:
    """Weights on ``[n_lo, n_hi]`` by forward iteration from ``lambda0`` and backward iteration below it."""
    if n_lo > 0 or n_hi < 0:
        raise DomainError(f"window [{n_lo}, {n_hi}] must contain 0")
    qg = params.unified.q**params.unified.gamma
    vals = {0: params.lambda0}
    for n in range(0, n_hi):
        vals[n + 1] = qg * vals[n] + params.source(n)
    for n in range(-1, n_lo - 1, -1):
        vals[n] = (vals[n + 1] - params.source(n)) / qg
    return LambdaSeq(n_lo, np.array([vals[n] for n in range(n_lo, n_hi + 1)]))


def _local_scale(params: RepParams, seq: LambdaSeq, n: int) -> float:
    # magnitude of the two terms that were combined to produce lambda_n
    qg = params.unified.q**params.unified.gamma
    if n > 0:
        return abs(qg * seq[n - 1]) + abs(params.source(n - 1))
    if n < seq.n_hi:
        return (abs(seq[n + 1]) + abs(params.source(n))) / qg
    return abs(seq[n])


@dataclass(frozen=True)
class RepClassification:
    """Outcome of :func:`classify`.

    ``window`` is ``(lo, hi)`` with ``None`` marking an unbounded side; the
    basis of the module is ``|n>`` for ``lo <= n <= hi``.
    """

    case: str
    params: RepParams
    window: tuple[int | None, int | None]
    lam: LambdaSeq
    diagnostics: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int | None:
        lo, hi = self.window
        if lo is None or hi is None:
            return None
        return hi - lo + 1

    @property
    def finite(self) -> bool:
        return self.dimension is not None


def regime(params: RepParams) -> dict:
    """Advisory regime label from ``q``, ``alpha``, ``gamma`` and ``B``.

    ``growth`` compares ``q^gamma`` with ``q^alpha``; ``c_plus`` and ``c_minus``
    are the coefficients of ``q^(gamma n)`` in ``lambda_n`` for even and odd
    ``n`` when ``lambda0 = 0`` (up to the factor ``q^(alpha kappa0 + beta)``).
    """
    u = params.unified
    qa, qg = u.q**u.alpha, u.q**u.gamma
    if u.equal_branch:
        return {"growth": "equal", "c_plus": None, "c_minus": None, "ambiguous_boundary": False}
    c_plus = 1 / (qg - qa) + params.B / (qg + qa)
    c_minus = 1 / (qg - qa) - params.B / (qg + qa)
    ambiguous = math.isclose(abs(params.B * (qg - qa)), qg + qa, rel_tol=1e-9)
    return {
        "growth": "q^gamma > q^alpha" if qg > qa else "q^gamma < q^alpha",
        "c_plus": c_plus,
        "c_minus": c_minus,
        "ambiguous_boundary": ambiguous,
    }


_REGIME_CASES = {
    "equal": {"LowestWeight_i", "OneDim"},
    "q^gamma > q^alpha": {"LowestWeight_ii", "OneDim"},
}


def classify(params: RepParams, scan_depth: int = 200) -> RepClassification:
    """Classify the module generated from ``|0>`` by scanning the sign of ``lambda_n``.

    Scanning forward from ``n = 1``, the first vanishing weight ``lambda_m`` marks
    ``a+|m-1> = 0`` (a highest weight at ``m-1``).  Scanning backward from ``n = 0``,
    the first vanishing weight ``lambda_l`` marks ``a|l> = 0`` (a lowest weight at
    ``l``).  A weight that turns negative without vanishing admits no unitary
    module and raises :class:`RepresentationError`.

    Parameters
    ----------
    params : RepParams
    scan_depth : int
        Half-width of the scanned window ``[-scan_depth, scan_depth]``.

    Returns
    -------
    RepClassification
        The ``diagnostics`` record the scan cutoffs alongside the advisory
        regime label from :func:`regime`; a mismatch between the two is flagged
        under ``regime_agrees`` but never overrides the scan.
    """
    if scan_depth < 10:
        raise DomainError(f"scan_depth must be at least 10, got {scan_depth}")
    seq = lambda_recurrence(params, -scan_depth, scan_depth)

    def vanishes(n):
        return abs(seq[n]) <= ZERO_TOL * _local_scale(params, seq, n)

    def cutoff(ns):
        for n in ns:
            if vanishes(n):
                return n
            if seq[n] < 0:
                raise RepresentationError(
                    f"lambda_{n} = {seq[n]!r} is negative without vanishing first; no unitary module"
                )
        return None

    upper = cutoff(range(1, scan_depth + 1))
    lower = cutoff(range(0, -scan_depth - 1, -1))
    hi = None if upper is None else upper - 1
    window = (lower, hi)

    if lower is not None and hi is not None:
        dim = hi - lower + 1
        if dim == 1:
            case = "OneDim"
        elif dim == 2 and window == (-1, 0):
            case = "TwoDim_iii"
        elif dim == 2 and window == (0, 1):
            case = "TwoDim_iv"
        else:
            case = "Finite"
    elif lower is not None:
        case = "LowestWeight_i" if params.unified.equal_branch else "LowestWeight_ii"
    elif hi is not None:
        case = "HighestWeight_iii"
    else:
        case = "Bilateral_iv"

    reg = regime(params)
    allowed = _REGIME_CASES.get(reg["growth"])
    diagnostics = {
        "regime": reg,
        "scan": {"depth": scan_depth, "lowest": lower, "highest": hi},
        "regime_agrees": True if allowed is None else case in allowed,
    }
    return RepClassification(case, params, window, seq, diagnostics)


# ---------------------------------------------------------------------------
# Casimir operators
# ---------------------------------------------------------------------------


def casimir_D(u: UnifiedParams, N: float) -> float:
    """``D(N)`` solving ``D(N+1) - q^gamma D(N) = q^(alpha N + beta)``, normalized so ``C3 = 0`` on the Fock module."""
    qa, qg = u.q**u.alpha, u.q**u.gamma
    if u.equal_branch:
        return u.q ** (u.gamma * (N - 1) + u.beta) * (N + u.nu)
    return u.q**u.beta * (dilation_ratio(qg, qa, N) + 2 * u.nu * u.q ** (u.gamma * N) / (qg + qa))


def casimir_E(u: UnifiedParams, N: float) -> float:
    """``E(N) = -2 q^(alpha N + beta) / (q^gamma + q^alpha)``, the coefficient of ``nu K``."""
    qa, qg = u.q**u.alpha, u.q**u.gamma
    return -2.0 * u.q ** (u.alpha * N + u.beta) / (qg + qa)


def casimir_values(params: RepParams) -> tuple[complex, complex, float]:
    """Scalar values of the three Casimir operators on the module.

    ``C1 = exp(2 pi i N)`` and ``C2 = exp(i pi N) K`` take the values
    ``exp(2 pi i kappa0)`` and ``omega = B exp(i pi kappa0) / (2 nu)``;
    ``C3 = q^(-gamma N) (D(N) + nu E(N) K - a+ a)`` is evaluated on ``|0>``.
    """
    u = params.unified
    k0 = params.kappa0
    c1 = cmath.exp(2j * math.pi * k0)
    c2 = params.k_scale * cmath.exp(1j * math.pi * k0)
    c3 = u.q ** (-u.gamma * k0) * (
        casimir_D(u, k0) + u.nu * casimir_E(u, k0) * params.k_scale - params.lambda0
    )
    return c1, c2, c3
