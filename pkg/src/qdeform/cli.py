"""Command-line interface.

Every subcommand writes JSON by default (floats in shortest round-trip form);
tabular subcommands also accept ``--format csv``.  Exit status is 0 on
success, 1 when a computation fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import acceptance
from . import catalog as cat
from .coherent import coherent_state, completeness_check, eigen_residual, moment_target, normalization_sq, weight_measure
from .fockrep import build_lowest_weight, relation_residual
from .kerr import KerrParams, deviation_scaling, kerr_spectrum, matched_spectrum
from .qcalc import SeriesPolicy
from .qhermite import gram_target, hermite_explicit, hermite_value, orthogonality_check, psi_normalized
from .repclass import RepParams, casimir_values, classify

CONFIG_KEYS = {
    "series.rel_tol": float,
    "series.max_terms": int,
    "output.format": str,
    "output.path": str,
    "seed": int,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    policy: SeriesPolicy
    fmt: str
    path: str | None
    seed: int


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def load_config(path: str) -> dict:
    """Read ``key = value`` lines (``#`` starts a comment) or a JSON object; unknown keys are rejected."""
    text = Path(path).read_text()
    if path.endswith(".json"):
        raw = _flatten(json.loads(text))
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            raw[k] = v.strip("\"'")
    unknown = sorted(set(raw) - set(CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    try:
        return {k: CONFIG_KEYS[k](v) for k, v in raw.items()}
    except ValueError as exc:
        raise UsageError(f"bad config value: {exc}") from None


def resolve_config(args: argparse.Namespace, default_format: str = "json") -> RunConfig:
    cfg = load_config(args.config) if args.config else {}
    policy = SeriesPolicy(
        rel_tol=args.rel_tol if args.rel_tol is not None else cfg.get("series.rel_tol", 1e-15),
        max_terms=args.max_terms if args.max_terms is not None else cfg.get("series.max_terms", 10000),
    )
    fmt = args.format or cfg.get("output.format", default_format)
    if fmt not in ("json", "csv", "text"):
        raise UsageError(f"unknown output format {fmt!r}")
    return RunConfig(
        policy,
        fmt,
        args.output or cfg.get("output.path"),
        args.seed if args.seed is not None else cfg.get("seed", 0),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return {"re": _plain(obj.real), "im": _plain(obj.imag)}
    return obj


def to_json(payload) -> str:
    return json.dumps(_plain(payload), indent=2, allow_nan=False)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: f"{v:.17g}" if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Subcommands.  Each returns (payload, table) where table is a list of flat rows or None.
# ---------------------------------------------------------------------------


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--kind {args.kind} needs " + ", ".join(f"--{m.replace('_', '-')}" for m in missing))


def make_kind(args) -> cat.DeformationKind:
    k = args.kind

    def g(name, default):
        value = getattr(args, name)
        return default if value is None else value

    if k == "nu-modified":
        _require(args, "nu")
        return cat.NuModified(args.nu)
    _require(args, "q")
    if k == "arik-coon":
        return cat.ArikCoon(args.q)
    if k == "biedenharn-macfarlane":
        return cat.BiedenharnMacfarlane(args.q)
    if k == "chung":
        return cat.ChungEtAl(args.q, g("alpha", 0.0), g("beta", 0.0))
    if k == "bdy":
        return cat.BDY(args.q, g("alpha", 0.0), g("beta", 0.0), g("gamma", 1.0))
    if k == "q-nu":
        _require(args, "nu")
        return cat.QNu(args.q, args.nu)
    if k == "unified":
        return cat.Unified(cat.UnifiedParams(args.q, g("alpha", 0.0), g("beta", 0.0), g("gamma", 1.0), g("nu", 0.0)))
    if k == "abc":
        _require(args, "a", "b", "c")
        return cat.AbcForm(args.q, args.a, args.b, args.c)
    if k == "two-param":
        _require(args, "p", "alpha", "l")
        return cat.TwoParam(cat.TwoParamParams(args.p, args.q, args.alpha, g("beta", 0.0), args.l))
    raise UsageError(f"unknown kind {k!r}")


def cmd_structure(args, cfg):
    kind = make_kind(args)
    try:
        rec = cat.structure_recurrence(kind.unified(), args.n_max)
    except cat.DomainError:
        rec = None
    rows = []
    for n in range(args.n_max + 1):
        f = cat.structure_catalog(kind, n)
        r = None if rec is None else rec[n]
        rows.append({"n": n, "f_closed": f, "f_recurrence": r, "abs_diff": None if r is None else abs(f - r)})
    return {"kind": args.kind, "rows": rows}, rows


def _unified_from(args) -> cat.UnifiedParams:
    return cat.UnifiedParams(args.q, args.alpha, args.beta, args.gamma, args.nu)


def cmd_classify(args, cfg):
    params = RepParams(_unified_from(args), args.lambda0, args.kappa0, args.B)
    c = classify(params, args.scan_depth)
    try:
        c1, c2, c3 = casimir_values(params)
        casimir = {"C1": c1, "C2": c2, "C3": c3}
    except ValueError as exc:
        casimir = {"error": str(exc)}
    head = [c.lam[n] for n in range(10)]
    return {"case": c.case, "window": list(c.window), "lambda_head": head, "diagnostics": c.diagnostics, "casimir": casimir}, None


def cmd_rep(args, cfg):
    kind = make_kind(args)
    u = kind.unified()
    seq = cat.StructureSeq(kind)
    quad = build_lowest_weight(seq, dim=args.dim)
    rep = relation_residual(quad, u)
    payload = {
        "dim": args.dim,
        "relation_residual": rep.relation_residual,
        "relations": rep.relations,
        "casimir_residuals": rep.casimir_residuals,
        "block_dim": rep.block_dim,
        "lambda_head": list(seq.values(min(9, args.dim - 1))),
    }
    return payload, None


def cmd_hermite(args, cfg):
    if args.gram:
        G = orthogonality_check(args.q, args.n_max)
        target = [gram_target(args.q, n) for n in range(args.n_max + 1)]
        table = [{"m": m, "n": n, "gram": float(G[m, n])} for m in range(len(G)) for n in range(len(G))]
        return {"gram": G, "gram_target": target}, table
    if args.n is None or args.x is None:
        raise UsageError("hermite needs --n and --x, or --gram")
    row = {
        "n": args.n,
        "q": args.q,
        "x": args.x,
        "explicit": hermite_explicit(args.n, args.q, args.x),
        "recurrence": hermite_value(args.n, args.q, args.x),
        "psi": psi_normalized(args.n, args.q, args.x),
    }
    return {"value": row}, [row]


def cmd_coherent(args, cfg):
    z = complex(args.z_re, args.z_im)
    st = coherent_state(z, args.q, args.tol, cfg.policy)
    ns = normalization_sq(abs(z) ** 2, args.q, cfg.policy)
    payload = {
        "z": z,
        "q": args.q,
        "n_terms": len(st),
        "coefficients": list(st.coeffs.astype(complex)),
        "eigen_residual": eigen_residual(st),
        "norm_sq": {"series": ns.series, "product": ns.product},
    }
    table = [{"n": n, "re": float(c.real), "im": float(c.imag)} for n, c in enumerate(st.coeffs)]
    return payload, table


def cmd_moments(args, cfg):
    sol = weight_measure(args.q, k_range=args.k_range)
    G = completeness_check(args.q, min(args.n_max, 15), args.k_range)
    rows = []
    for n in range(args.n_max + 1):
        t = moment_target(n, args.q)
        m = sol.measure.moment(n)
        rows.append({"n": n, "target": t, "measured": m, "rel_err": abs(m - t) / t, "gram_diag": float(G[n, n]) if n < len(G) else None})
    return {"q": args.q, "k_range": args.k_range, "I0": sol.I0, "rows": rows}, rows


def cmd_kerr(args, cfg):
    matcher = {"equal": "equal_case", "nu0": "nu0"}[args.matcher]
    params = KerrParams(args.omega0, args.kappa)
    ek = kerr_spectrum(params, args.n_max)
    ed = matched_spectrum(params, matcher, args.n_max)
    rows = [{"n": n, "kerr": float(a), "deformed": float(b), "deviation": float(b - a)} for n, (a, b) in enumerate(zip(ek, ed))]
    rep = deviation_scaling(params, matcher, args.n_max)
    scaling = {"ratio": rep.ratio, "transition_ratio": rep.transition_ratio, "in_band": rep.in_band, "inconclusive": rep.inconclusive}
    return {"omega0": args.omega0, "kappa": args.kappa, "matcher": args.matcher, "rows": rows, "scaling": scaling}, rows


def cmd_verify(args, cfg):
    results = acceptance.run_all(seed=cfg.seed)
    payload = {
        "passed": all(r.passed for r in results),
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "seconds": r.seconds, "metrics": r.metrics}
            for r in results
        ],
    }
    table = [{"number": r.number, "title": r.title, "passed": r.passed, "seconds": r.seconds} for r in results]
    text = "\n".join(r.line() for r in results)
    text += f"\n{sum(r.passed for r in results)}/{len(results)} criteria passed\n"
    return payload, table, text


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output and configuration")
    g.add_argument("--config", help="key = value or JSON file; keys: " + ", ".join(CONFIG_KEYS))
    g.add_argument("--format", choices=["json", "csv", "text"], help="output format (default json; verify defaults to text)")
    g.add_argument("--output", help="write to this path instead of stdout")
    g.add_argument("--seed", type=int, help="seed for randomized checks (default 0)")
    g.add_argument("--rel-tol", type=float, help="series truncation tolerance (default 1e-15)")
    g.add_argument("--max-terms", type=int, help="series term budget (default 10000)")
    return p


def _deformation_flags(p: argparse.ArgumentParser, kind: bool = True):
    if kind:
        p.add_argument("--kind", required=True, choices=sorted(cat.KIND_NAMES))
    for name in ("q", "alpha", "beta", "gamma", "nu", "a", "b", "c", "p"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--l", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdeform", description="Deformed oscillator algebras: numerics and checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common()

    p = sub.add_parser("structure", parents=[common], help="tabulate a structure function")
    _deformation_flags(p)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("classify", parents=[common], help="classify a representation by its weights")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--lambda0", type=float, default=0.0)
    p.add_argument("--kappa0", type=float, default=0.0)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--scan-depth", type=int, default=200)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rep", parents=[common], help="relation residuals of a truncated Fock representation")
    _deformation_flags(p)
    p.add_argument("--dim", type=int, default=40)
    p.add_argument("--report", choices=["json"], default="json")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("hermite", parents=[common], help="q^-1-Hermite polynomial values or Gram table")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--gram", action="store_true")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_hermite)

    p = sub.add_parser("coherent", parents=[common], help="coherent-state coefficients and eigen-residual")
    p.add_argument("--z-re", type=float, required=True)
    p.add_argument("--z-im", type=float, default=0.0)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-24)
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("moments", parents=[common], help="moment-problem measure and resolution of unity")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--k-range", type=int, default=60)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("kerr", parents=[common], help="Kerr spectrum against a matched deformed spectrum")
    p.add_argument("--omega0", type=float, default=1.0)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--matcher", choices=["equal", "nu0"], default="equal")
    p.set_defaults(func=cmd_kerr)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args, "text" if args.command == "verify" else "json")
        out = args.func(args, cfg)
        payload, table = out[0], out[1]
        if cfg.fmt == "json":
            text = to_json(payload) + "\n"
        elif cfg.fmt == "csv":
            if not table:
                raise UsageError(f"{args.command} output is not tabular; use --format json")
            text = to_csv(table)
        elif args.command == "verify":
            text = out[2]
        else:
            raise UsageError("text output is only available for verify")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qdeform: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"qdeform: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(text, cfg.path)
    if args.command == "verify":
        return 0 if payload["passed"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
