"""Matrix representations, relation residuals and the coordinate realization.

Operators act on the basis ``|n>`` as ``a+|n> = sqrt(lambda_{n+1}) |n+1>`` and
``a|n> = sqrt(lambda_n) |n-1>``, with ``N`` and ``K`` diagonal.  Truncating an
infinite module to ``dim`` states breaks the relations on the top basis
vector only, so residuals are taken on the leading ``dim - 1`` block unless
the module is genuinely finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .catalog import StructureSeq, TwoParamParams, UnifiedParams, structure_two_param
from .errors import DomainError, RepresentationError
from .repclass import LambdaSeq, RepClassification, casimir_D, casimir_E


@dataclass(frozen=True)
class OperatorQuadruple:
    a: np.ndarray
    a_dag: np.ndarray
    N: np.ndarray
    K: np.ndarray

    @property
    def dim(self) -> int:
        return self.a.shape[0]


def _quadruple(lams: Sequence[float], ns: Sequence[float], kdiag: Sequence[float]) -> OperatorQuadruple:
    # lams[i] is the weight of the i-th basis vector; lams[0] is never used
    dim = len(ns)
    a = np.zeros((dim, dim))
    for i in range(1, dim):
        a[i - 1, i] = math.sqrt(lams[i])
    return OperatorQuadruple(a, a.T.copy(), np.diag(np.asarray(ns, dtype=float)), np.diag(np.asarray(kdiag, dtype=float)))


def build_lowest_weight(
    seq: StructureSeq | LambdaSeq | Sequence[float],
    kappa0: float = 0.0,
    B_over_2nu: float = 1.0,
    dim: int = 10,
) -> OperatorQuadruple:
    """Truncated matrices of the module generated from ``|0>``.

    Parameters
    ----------
    seq : StructureSeq, LambdaSeq or sequence of float
        Weights ``lambda_n`` for ``n = 0 .. dim-1``.
    kappa0 : float
        ``N|n> = (kappa0 + n) |n>``.
    B_over_2nu : float
        ``K|n> = (-1)^n B_over_2nu |n>``; use 1 when ``nu = 0``.
    dim : int

    Raises
    ------
    RepresentationError
        If some ``lambda_n`` with ``1 <= n < dim`` is negative.
    """
    if dim < 2:
        raise DomainError(f"dim must be at least 2, got {dim}")
    if isinstance(seq, StructureSeq):
        lams = seq.values(dim - 1)
    elif isinstance(seq, LambdaSeq):
        lams = [seq[n] for n in range(dim)]
    else:
        lams = list(seq)[:dim]
        if len(lams) < dim:
            raise DomainError(f"need {dim} weights, got {len(lams)}")
    for n in range(1, dim):
        if lams[n] < 0:
            raise RepresentationError(f"lambda_{n} = {lams[n]!r} is negative")
    ns = kappa0 + np.arange(dim)
    kdiag = B_over_2nu * np.where(np.arange(dim) % 2, -1.0, 1.0)
    return _quadruple(lams, ns, kdiag)


def two_dim_radicand(u: UnifiedParams, kappa_low: float) -> float:
    """Squared off-diagonal entry ``2 q^(alpha (kappa_low + 1) + beta) / (q^alpha - q^gamma)`` of a 2-state module.

    ``kappa_low`` is the ``N`` eigenvalue of the lower state.
    """
    qa, qg = u.q**u.alpha, u.q**u.gamma
    return 2.0 * u.q ** (u.alpha * (kappa_low + 1) + u.beta) / (qa - qg)


def build_finite(case: RepClassification) -> OperatorQuadruple:
    """Exact matrices of a finite-dimensional module.

    The basis is ordered from the lowest state up, so ``a`` is strictly upper
    triangular.  For two states the off-diagonal entry is the closed form
    :func:`two_dim_radicand`, cross-checked against the scanned weight.
    """
    if not case.finite:
        raise RepresentationError(f"case {case.case} is not finite-dimensional")
    lo, hi = case.window
    p = case.params
    ns = list(range(lo, hi + 1))
    if case.case in ("TwoDim_iii", "TwoDim_iv"):
        s2 = two_dim_radicand(p.unified, p.kappa0 + lo)
        if not s2 > 0:
            raise RepresentationError(f"two-state module needs q^alpha > q^gamma; radicand is {s2!r}")
        scanned = case.lam[hi]
        if not math.isclose(s2, scanned, rel_tol=1e-9):
            raise RepresentationError(f"closed-form radicand {s2!r} disagrees with scanned weight {scanned!r}")
        lams = [0.0, s2]
    else:
        lams = [0.0] + [case.lam[n] for n in ns[1:]]
    kdiag = [(-1) ** (n % 2) * p.k_scale for n in ns]
    return _quadruple(lams, [p.kappa0 + n for n in ns], kdiag)


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def _rel_max(resid: np.ndarray, scale: np.ndarray) -> float:
    """Largest entry of ``|resid|`` relative to the matching entry of ``scale`` (absolute where scale is 0)."""
    resid = np.abs(resid)
    out = np.where(scale > 0, resid / np.where(scale > 0, scale, 1.0), resid)
    return float(out.max()) if out.size else 0.0


class CasimirResidual(NamedTuple):
    commutant: float
    spread: float
    value: float


@dataclass(frozen=True)
class ResidualReport:
    """Relative residuals of the defining relations.

    Each residual is the largest entry of ``|lhs - rhs|`` divided by the sum of
    the magnitudes of the terms that enter that entry.
    """

    relation_residual: float
    relations: dict = field(default_factory=dict)
    casimir_residuals: dict = field(default_factory=dict)
    block_dim: int = 0

    @property
    def worst(self) -> float:
        return max([self.relation_residual, *self.relations.values(), *self.casimir_residuals.values()])


def casimir_matrix(quad: OperatorQuadruple, u: UnifiedParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal of ``C3 = q^(-gamma N) (D(N) + nu E(N) K - a+ a)`` and the magnitude of its terms."""
    Ns = np.diag(quad.N)
    ks = np.diag(quad.K)
    lam = np.diag(quad.a_dag @ quad.a)
    D = np.array([casimir_D(u, n) for n in Ns])
    E = np.array([casimir_E(u, n) for n in Ns])
    pref = u.q ** (-u.gamma * Ns)
    c = pref * (D + u.nu * E * ks - lam)
    mag = np.abs(pref) * (np.abs(D) + np.abs(u.nu * E * ks) + np.abs(lam))
    return c, mag


def casimir_commutant_residual(quad: OperatorQuadruple, params: UnifiedParams, interior: bool = True) -> CasimirResidual:
    """Check that ``C3`` is a scalar commuting with ``a`` and ``a+``.

    Returns the relative commutant residual, the relative spread of the
    diagonal of ``C3`` and its mean value.
    """
    if quad.dim < 4:
        raise DomainError("Casimir check needs dim >= 4")
    m = quad.dim - 1 if interior else quad.dim
    c, mag = casimir_matrix(quad, params)
    c, mag = c[:m], mag[:m]
    a = quad.a[:m, :m]
    comm = np.diag(c) @ a - a @ np.diag(c)
    comm_scale = (mag[:, None] + mag[None, :]) * np.abs(a)
    commutant = max(_rel_max(comm, comm_scale), _rel_max(-comm.T, comm_scale.T))
    top = mag.max()
    spread = float((c.max() - c.min()) / top) if top > 0 else 0.0
    return CasimirResidual(commutant, spread, float(c.mean()))


def relation_residual(quad: OperatorQuadruple, params: UnifiedParams, interior: bool = True) -> ResidualReport:
    """Residuals of ``a a+ - q^gamma a+ a = (1 + 2 nu K) q^(alpha N + beta)`` and the companion relations.

    With ``interior=True`` only the leading ``dim - 1`` block is compared, which
    is exact for truncations of infinite modules.  Pass ``interior=False`` for
    finite modules.
    """
    if interior and quad.dim < 3:
        raise DomainError("interior residuals need dim >= 3")
    q, nu = params.q, params.nu
    a, ad, N, K = quad.a, quad.a_dag, quad.N, quad.K
    m = quad.dim - 1 if interior else quad.dim
    blk = np.s_[:m, :m]
    I = np.eye(quad.dim)

    aad, ada = a @ ad, ad @ a
    qN = np.diag(q ** (params.alpha * np.diag(N) + params.beta))
    rhs = (I + 2 * nu * K) @ qN
    qg = q**params.gamma
    main = _rel_max((aad - qg * ada - rhs)[blk], (np.abs(aad) + qg * np.abs(ada) + np.abs(rhs))[blk])

    absa, absN, absK = np.abs(a), np.abs(N), np.abs(K)
    relations = {
        "[N,a]+a": _rel_max((N @ a - a @ N + a)[blk], (absN @ absa + absa @ absN + absa)[blk]),
        "[N,a+]-a+": _rel_max((N @ ad - ad @ N - ad)[blk], (absN @ absa.T + absa.T @ absN + absa.T)[blk]),
        "Ka+aK": _rel_max((K @ a + a @ K)[blk], (absK @ absa + absa @ absK)[blk]),
        "Ka++a+K": _rel_max((K @ ad + ad @ K)[blk], (absK @ absa.T + absa.T @ absK)[blk]),
        "K^2-I": float(np.abs(K @ K - I)[blk].max()),
    }
    casimir = {}
    if quad.dim >= 4:
        res = casimir_commutant_residual(quad, params, interior)
        casimir = {"commutant": res.commutant, "spread": res.spread}
    return ResidualReport(main, relations, casimir, m)


# ---------------------------------------------------------------------------
# Coordinate realization of the two-parameter algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyVector:
    """Laurent polynomial ``sum_i coeffs[i] z^(low + i)``.

    Leading and trailing zero coefficients are trimmed.  A ``degree_cap``
    bounds the highest power; exceeding it raises :class:`DomainError`.
    """

    coeffs: tuple[float, ...]
    low: int = 0
    degree_cap: int | None = None

    def __post_init__(self):
        c = [float(x) for x in self.coeffs]
        low = self.low
        while c and c[-1] == 0.0:
            c.pop()
        while c and c[0] == 0.0:
            c.pop(0)
            low += 1
        if not c:
            low = 0
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "low", low)
        if self.degree_cap is not None and c and self.degree > self.degree_cap:
            raise DomainError(f"degree {self.degree} exceeds cap {self.degree_cap}")

    @classmethod
    def monomial(cls, n: int, coeff: float = 1.0, degree_cap: int | None = None) -> "PolyVector":
        return cls((coeff,), n, degree_cap)

    @property
    def degree(self) -> int:
        return self.low + len(self.coeffs) - 1

    def terms(self):
        return ((self.low + i, c) for i, c in enumerate(self.coeffs))

    def as_dict(self) -> dict[int, float]:
        return dict(self.terms())

    def _combine(self, other: "PolyVector", sign: float) -> "PolyVector":
        d = self.as_dict()
        for n, c in other.terms():
            d[n] = d.get(n, 0.0) + sign * c
        return PolyVector.from_dict(d, self.degree_cap)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __rmul__(self, s: float):
        return PolyVector(tuple(s * c for c in self.coeffs), self.low, self.degree_cap)

    @classmethod
    def from_dict(cls, d: dict[int, float], degree_cap: int | None = None) -> "PolyVector":
        if not d:
            return cls((), 0, degree_cap)
        lo, hi = min(d), max(d)
        return cls(tuple(d.get(n, 0.0) for n in range(lo, hi + 1)), lo, degree_cap)

    def map_terms(self, fn, shift: int = 0) -> "PolyVector":
        """Multiply the coefficient of ``z^n`` by ``fn(n)`` and move it to ``z^(n + shift)``."""
        return PolyVector.from_dict({n + shift: fn(n) * c for n, c in self.terms()}, self.degree_cap)


class CoordinateRealization:
    """``a = D``, ``a+ = z^m`` and ``N = z d/dz`` on Laurent polynomials, with ``m = l / alpha``.

    ``D z^n = f(n) z^(n-m)`` with the two-parameter structure function ``f``.
    """

    def __init__(self, params: TwoParamParams, degree_cap: int | None = None):
        m = params.step
        if not float(m).is_integer() or m < 1:
            raise DomainError(f"l/alpha = {m!r} must be a positive integer")
        self.params = params
        self.m = int(m)
        self.degree_cap = degree_cap

    def a(self, v: PolyVector) -> PolyVector:
        return v.map_terms(lambda n: structure_two_param(self.params, n), -self.m)

    def a_dag(self, v: PolyVector) -> PolyVector:
        return v.map_terms(lambda n: 1.0, self.m)

    def N(self, v: PolyVector) -> PolyVector:
        return v.map_terms(float)

    def p_power(self, v: PolyVector) -> PolyVector:
        """``p^(-alpha N - beta)``."""
        p = self.params
        return v.map_terms(lambda n: p.p ** (-p.alpha * n - p.beta))

    def q_power(self, v: PolyVector) -> PolyVector:
        """``q^(alpha N + beta)``."""
        p = self.params
        return v.map_terms(lambda n: p.q ** (p.alpha * n + p.beta))


def _rel_poly(resid: PolyVector, *terms: PolyVector) -> float:
    scale = sum(abs(c) for t in terms for _, c in t.terms())
    worst = max((abs(c) for _, c in resid.terms()), default=0.0)
    return worst / scale if scale > 0 else worst


def coordinate_realization_residual(params: TwoParamParams, degree_cap: int) -> dict[str, float]:
    """Relative residuals of the two-parameter relations on monomials ``z^0 .. z^(degree_cap - m)``.

    Checks ``a a+ - q^l a+ a = p^(-alpha N - beta)``, ``a a+ - p^-l a+ a = q^(alpha N + beta)``,
    ``[N, a+] = m a+`` and ``[N, a] = -m a``.
    """
    R = CoordinateRealization(params, degree_cap)
    if degree_cap < R.m + 2:
        raise DomainError(f"degree_cap must be at least l/alpha + 2 = {R.m + 2}")
    ql, pl = params.q**params.l, params.p ** (-params.l)
    out = {"q-relation": 0.0, "p-relation": 0.0, "[N,a+]": 0.0, "[N,a]": 0.0}
    for n in range(degree_cap - R.m + 1):
        v = PolyVector.monomial(n, degree_cap=degree_cap)
        aad, ada = R.a(R.a_dag(v)), R.a_dag(R.a(v))
        pv, qv = R.p_power(v), R.q_power(v)
        out["q-relation"] = max(out["q-relation"], _rel_poly(aad - ql * ada - pv, aad, ql * ada, pv))
        out["p-relation"] = max(out["p-relation"], _rel_poly(aad - pl * ada - qv, aad, pl * ada, qv))
        nad, adn, ad = R.N(R.a_dag(v)), R.a_dag(R.N(v)), R.a_dag(v)
        out["[N,a+]"] = max(out["[N,a+]"], _rel_poly(nad - adn - R.m * ad, nad, adn, R.m * ad))
        na, an, av = R.N(R.a(v)), R.a(R.N(v)), R.a(v)
        out["[N,a]"] = max(out["[N,a]"], _rel_poly(na - an + R.m * av, na, an, R.m * av))
    return out


def spectrum(H: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric matrix (the sorted diagonal if ``H`` is diagonal)."""
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DomainError("H must be a square matrix")
    if not np.allclose(H, H.T, rtol=0, atol=1e-12 * max(1.0, float(np.abs(H).max(initial=0.0)))):
        raise DomainError("H must be symmetric")
    if np.count_nonzero(H - np.diag(np.diag(H))) == 0:
        return np.sort(np.diag(H))
    return np.linalg.eigvalsh(H)
