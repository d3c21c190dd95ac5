"""End-to-end acceptance checks, shared by the ``verify`` subcommand and the test suite.

Each check returns a :class:`CriterionResult`; a check with a runtime budget
fails if it overruns it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import catalog as cat
from .coherent import coherent_state, completeness_check, eigen_residual, moment_target, normalization_sq, weight_measure
from .fockrep import build_finite, build_lowest_weight, coordinate_realization_residual, relation_residual
from .kerr import KerrParams, deviation_scaling
from .qcalc import e_q, jackson_by_parts, jackson_derivative
from .qhermite import gram_target, hermite_explicit, hermite_value, orthogonality_check
from .repclass import RepParams, classify, lambda_recurrence


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    metrics: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number: int, title: str, budget: float | None, body: Callable[[], tuple[bool, str, dict]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail, metrics = body()
    dt = time.perf_counter() - t0
    if budget is not None and dt > budget:
        ok = False
        detail += f"; runtime {dt:.2f}s exceeds {budget:g}s"
    return CriterionResult(number, title, ok, detail, dt, metrics)


def _random_base(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.1, 0.95) if rng.random() < 0.5 else rng.uniform(1.05, 3.0))


# -- 1 ----------------------------------------------------------------------


def structure_oracle(seed: int = 0, draws: int = 200, n_max: int = 50) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(draws):
            u = cat.UnifiedParams(
                _random_base(rng), *rng.uniform(-2, 2, size=3), nu=float(rng.uniform(-0.9, 0.9))
            )
            rec = cat.structure_recurrence(u, n_max)
            for n in range(n_max + 1):
                f = cat.structure_unified(u, n)
                worst = max(worst, abs(f - rec[n]) / (1 + abs(f)))
        return worst <= 1e-11, f"max |closed - recurrence|/(1+|f|) = {worst:.2e} over {draws} draws", {"worst": worst}

    return _timed(1, "structure function closed form vs recurrence", 1.0, body)


# -- 2 ----------------------------------------------------------------------

EMBEDDED_KINDS = (
    cat.ArikCoon(0.5),
    cat.ArikCoon(1.4),
    cat.BiedenharnMacfarlane(0.8),
    cat.BiedenharnMacfarlane(1.3),
    cat.ChungEtAl(0.7, 0.4, 0.3),
    cat.ChungEtAl(1.2, -0.5, 0.1),
    cat.BDY(0.6, 1.5, -0.3, 0.5),
    cat.BDY(1.25, 0.3, 0.2, 0.3),
    cat.NuModified(0.25),
    cat.NuModified(-0.4),
    cat.QNu(0.8, 0.3),
    cat.QNu(1.2, -0.45),
)


def catalog_embedding(n_max: int = 30) -> CriterionResult:
    def body():
        worst = 0.0
        for kind in EMBEDDED_KINDS:
            u = kind.unified()
            for n in range(n_max + 1):
                f = kind.structure(n)
                worst = max(worst, abs(f - cat.structure_unified(u, n)) / (1 + abs(f)))
        return worst <= 1e-12, f"max |catalog - unified|/(1+|f|) = {worst:.2e} over {len(EMBEDDED_KINDS)} deformations", {
            "worst": worst
        }

    return _timed(2, "catalog embedding into the unified form", 1.0, body)


# -- 3 ----------------------------------------------------------------------

MATRIX_KINDS = (
    cat.ArikCoon(0.9),
    cat.ArikCoon(0.5),
    cat.BiedenharnMacfarlane(1.1),
    cat.ChungEtAl(0.9, 0.5, 0.2),
    cat.BDY(1.1, 0.3, 0.2, 0.8),
    cat.NuModified(0.25),
    cat.QNu(0.9, 0.3),
    cat.AbcForm(0.5, -0.5, 1.0, 2.0),
    cat.Unified(cat.UnifiedParams(0.7, 0.5, 0.1, 1.5, 0.2)),
)


def matrix_relations(dim: int = 40) -> CriterionResult:
    def body():
        rel = spread = comm = 0.0
        for kind in MATRIX_KINDS:
            quad = build_lowest_weight(cat.StructureSeq(kind), kappa0=0.0, B_over_2nu=1.0, dim=dim)
            rep = relation_residual(quad, kind.unified())
            rel = max(rel, rep.relation_residual, *rep.relations.values())
            spread = max(spread, rep.casimir_residuals["spread"])
            comm = max(comm, rep.casimir_residuals["commutant"])
        ok = rel < 1e-10 and spread < 1e-9 and comm < 1e-9
        return ok, f"relations {rel:.2e}, C3 spread {spread:.2e}, C3 commutant {comm:.2e}", {
            "relation": rel,
            "spread": spread,
            "commutant": comm,
        }

    return _timed(3, "matrix relations and Casimir constancy at dim 40", 5.0, body)


# -- 4 ----------------------------------------------------------------------


def two_dim_params(q: float, alpha: float, gamma: float, beta: float, kappa0: float, lower: int) -> RepParams:
    """Parameters of a two-state module occupying ``[lower, lower + 1]`` (``lower`` is 0 or -1).

    ``nu`` is chosen so that ``K`` squares to the identity.
    """
    qa, qg = q**alpha, q**gamma
    BL = (qg + qa) / (qa - qg)
    u = cat.UnifiedParams(q, alpha, beta, gamma, nu=BL / 2)
    if lower == 0:
        return RepParams(u, 0.0, kappa0, BL)
    lam0 = 2 * q ** (alpha * kappa0 + beta) / (qa - qg)
    return RepParams(u, lam0, kappa0, -BL)


def classification(scan_depth: int = 200) -> CriterionResult:
    def body():
        problems = []
        one_dim = [
            cat.UnifiedParams(2.0, 0.0, 0.0, 1.0, 0.5),
            cat.UnifiedParams(1.5, -1.0, 0.3, 0.5, 0.5),
            cat.UnifiedParams(0.5, 0.0, 0.0, 1.0, 0.5),
            cat.UnifiedParams(0.7, 1.0, 0.2, 1.0, 0.5),
        ]
        finite_worst = 0.0
        for u in one_dim:
            c = classify(RepParams(u, 0.0, 1.5, -1.0), scan_depth)
            if c.case != "OneDim":
                problems.append(f"B=-1 at {u} gave {c.case}")
                continue
            quad = build_finite(c)
            if np.any(quad.a != 0):
                problems.append("one-dimensional a is nonzero")
            finite_worst = max(finite_worst, relation_residual(quad, u, interior=False).worst)

        bil = RepParams(cat.UnifiedParams(0.5, 0.0, 0.0, 1.0, 0.5), lambda0=2.0, kappa0=0.0, B=1.0)
        c = classify(bil, scan_depth)
        lam_min = float(lambda_recurrence(bil, -scan_depth, scan_depth).values.min())
        if c.case != "Bilateral_iv" or not lam_min > 0:
            problems.append(f"bilateral input gave {c.case}, min lambda {lam_min:.3e}")

        for args in [(0.5, 0.0, 1.0, 0.2, 0.3), (2.0, 1.0, 0.0, -0.1, 0.0)]:
            for lower, want in [(0, "TwoDim_iv"), (-1, "TwoDim_iii")]:
                p = two_dim_params(*args, lower=lower)
                c = classify(p, scan_depth)
                if c.case != want:
                    problems.append(f"{args} lower={lower} gave {c.case}")
                    continue
                finite_worst = max(finite_worst, relation_residual(build_finite(c), p.unified, interior=False).worst)
        if finite_worst >= 1e-12:
            problems.append(f"finite residual {finite_worst:.2e}")
        detail = "; ".join(problems) or (
            f"one-dim and two-dim cases found, bilateral min lambda {lam_min:.3e}, finite residual {finite_worst:.2e}"
        )
        return not problems, detail, {"finite_residual": finite_worst, "bilateral_min_lambda": lam_min}

    return _timed(4, "representation classification", None, body)


# -- 5 ----------------------------------------------------------------------


def hermite(qs=(0.3, 0.5, 0.8)) -> CriterionResult:
    def body():
        xs = np.linspace(-2, 2, 41)
        explicit_err = 0.0
        gram_diag = gram_off = 0.0
        for q in qs:
            for n in range(16):
                rec = np.array([hermite_value(n, q, x) for x in xs])
                exp_ = np.array([hermite_explicit(n, q, x) for x in xs])
                explicit_err = max(explicit_err, float(np.abs(exp_ - rec).max() / np.abs(rec).max()))
            G = orthogonality_check(q, 10)
            target = np.array([gram_target(q, n) for n in range(11)])
            gram_diag = max(gram_diag, float(np.max(np.abs(np.diag(G) - target) / target)))
            off = np.abs(G - np.diag(np.diag(G))) / np.sqrt(np.outer(target, target))
            gram_off = max(gram_off, float(off.max()))
        ok = explicit_err <= 1e-10 and gram_diag <= 1e-10 and gram_off < 1e-10
        return ok, (
            f"explicit vs recurrence {explicit_err:.2e} (sup-norm relative), "
            f"Gram diagonal {gram_diag:.2e}, off-diagonal {gram_off:.2e}"
        ), {"explicit": explicit_err, "gram_diag": gram_diag, "gram_off": gram_off}

    return _timed(5, "q^-1-Hermite explicit form and orthogonality", 2.0, body)


# -- 6 ----------------------------------------------------------------------


def coherent(q: float = 0.5) -> CriterionResult:
    def body():
        zs = [r * np.exp(1j * t) for r in (0.0, 0.5, 1.0, 2.0, 3.0) for t in np.linspace(0, 2 * np.pi, 7)[:-1]]
        zs.append(1 + 0.5j)
        resid = max(eigen_residual(coherent_state(z, q)) for z in zs)
        norm_err = 0.0
        for qq in (0.3, 0.5, 0.8):
            for x in np.linspace(0, 10, 21):
                v = normalization_sq(x, qq)
                norm_err = max(norm_err, abs(v.series - v.product) / v.product)
        ok = resid < 1e-8 and norm_err <= 1e-12
        return ok, f"eigen-residual {resid:.2e} for |z| <= 3, normalization series vs product {norm_err:.2e}", {
            "eigen_residual": resid,
            "normalization": norm_err,
        }

    return _timed(6, "coherent states", None, body)


# -- 7 ----------------------------------------------------------------------


def moments(qs=(0.3, 0.5, 0.8), k_range: int = 60) -> CriterionResult:
    def body():
        mom = gram = 0.0
        for q in qs:
            m = weight_measure(q, k_range=k_range).measure
            for n in range(21):
                t = moment_target(n, q)
                mom = max(mom, abs(m.moment(n) - t) / t)
            G = completeness_check(q, 10, k_range)
            gram = max(gram, float(np.max(np.abs(G - np.eye(11)))))
        ok = mom <= 1e-8 and gram <= 1e-6
        return ok, f"moments n<=20 relative {mom:.2e}, resolution of unity {gram:.2e}", {"moments": mom, "gram": gram}

    return _timed(7, "moment problem and resolution of unity", 2.0, body)


# -- 8 ----------------------------------------------------------------------


def _rand_poly(rng: np.random.Generator) -> Callable[[float], float]:
    c = rng.normal(size=int(rng.integers(1, 7)))
    return lambda x: float(np.polynomial.polynomial.polyval(x, c))


def jackson(seed: int = 0, q: float = 0.5) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        deriv = 0.0
        for k in range(-10, 5):
            x = q**k
            d = jackson_derivative(lambda t: e_q(t, q), x, q)
            deriv = max(deriv, abs(d - e_q(x, q)) / e_q(x, q))
        leib = parts = 0.0
        for _ in range(20):
            u, v = _rand_poly(rng), _rand_poly(rng)
            for x in rng.uniform(0.1, 3.0, size=5) * rng.choice([-1, 1], size=5):
                lhs = jackson_derivative(lambda t: u(t) * v(t), x, q)
                a = jackson_derivative(u, x, q) * v(x / q)
                b = u(x) * jackson_derivative(v, x, q)
                leib = max(leib, abs(lhs - a - b) / (abs(lhs) + abs(a) + abs(b)))
            r = jackson_by_parts(u, v, q, -3, 30)
            parts = max(parts, abs(r.lhs - r.rhs) / r.scale)
        ok = max(deriv, leib, parts) <= 1e-12
        return ok, f"D_q e_q vs e_q {deriv:.2e}, Leibniz {leib:.2e}, by parts {parts:.2e}", {
            "derivative": deriv,
            "leibniz": leib,
            "by_parts": parts,
        }

    return _timed(8, "Jackson calculus identities", None, body)


# -- 9 ----------------------------------------------------------------------


def two_param(seed: int = 0, draws: int = 20, degree_cap: int = 30) -> CriterionResult:
    def body():
        rng = np.random.default_rng(seed)
        worst = 0.0
        done = 0
        while done < draws:
            m = int(rng.integers(1, 3))
            l = int(rng.integers(1, 3))
            try:
                p = cat.TwoParamParams(
                    float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.5, 2.0)), l / m, float(rng.uniform(-1, 1)), l
                )
            except cat.DomainError:
                continue
            # near p^-l = q^l the structure function loses digits to cancellation
            if abs(p.denominator) < 1e-2 * (p.p**-l + p.q**l):
                continue
            worst = max(worst, *coordinate_realization_residual(p, degree_cap).values())
            done += 1
        return worst < 1e-12, f"max relative residual {worst:.2e} over {draws} draws", {"worst": worst}

    return _timed(9, "two-parameter coordinate realization", None, body)


# -- 10 ---------------------------------------------------------------------


def kerr(omega0: float = 1.0, kappa: float = 1e-3, n_max: int = 6) -> CriterionResult:
    def body():
        params = KerrParams(omega0, kappa)
        eq = deviation_scaling(params, "equal_case", n_max)
        nu0 = deviation_scaling(params, "nu0", n_max)
        flag = "" if nu0.in_band else " (outside band)"
        detail = (
            f"equal-case ratio {eq.ratio:.4f} (levels relative to ground state: {eq.transition_ratio:.4f}); "
            f"nu0 ratio {nu0.ratio:.4f}{flag}"
        )
        return eq.in_band, detail, {
            "equal_case_ratio": eq.ratio,
            "equal_case_transition_ratio": eq.transition_ratio,
            "nu0_ratio": nu0.ratio,
            "nu0_in_band": nu0.in_band,
        }

    return _timed(10, "Kerr deviation scaling", 1.0, body)


CRITERIA: tuple[Callable[..., CriterionResult], ...] = (
    structure_oracle,
    catalog_embedding,
    matrix_relations,
    classification,
    hermite,
    coherent,
    moments,
    jackson,
    two_param,
    kerr,
)


def run_all(seed: int = 0) -> list[CriterionResult]:
    out = []
    for fn in CRITERIA:
        out.append(fn(seed=seed) if "seed" in fn.__code__.co_varnames else fn())
    return out
