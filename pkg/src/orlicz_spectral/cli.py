"""Command-line front end: case configs, solves, verification, batch sweeps.

Configs are strict JSON (schema_version 1, unknown keys fatal).  All numeric
output is formatted with shortest round-trip repr so CSV and JSON agree to
the last bit, and sweep results are merged in config-hash order so parallel
and serial runs produce byte-identical files.

Exit codes: 0 ok; 2 config error; 3 solver failure; 4 bound violation.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import glob as globmod
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__, bounds, eigen, space, young

log = logging.getLogger("orlicz_spectral")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VIOLATION = 4

CSV_COLUMNS = ["case_id", "G", "H", "domain", "mu", "N", "lambda", "residual",
               "theorem_id", "bound_value", "applicable", "pass"]

_LEDGER_KEYS = {"C", "c", "kappa0", "k_hat", "kappa", "c_H", "k"}
_SOLVER_KEYS = {"N", "restarts", "seed", "max_iters"}


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def _require_keys(obj: dict, allowed: set, context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {context}: {sorted(unknown)}")


def _parse_young(spec: dict, context: str) -> young.YoungFunction:
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigError(f"{context} needs a 'family' entry")
    family = spec["family"]
    params = {k: v for k, v in spec.items() if k != "family"}
    allowed = {"power": {"p"}, "power_log": {"p"}, "piecewise_power": {"p", "q"}}
    if family not in allowed:
        raise ConfigError(f"{context}: unknown family {family!r}")
    _require_keys(params, allowed[family], context)
    try:
        return young.make_builtin(family, **params)
    except (young.InvalidParameterError, KeyError) as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def _parse_domain(spec: dict) -> space.DomainGeometry:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("domain needs a 'kind' entry")
    if spec["kind"] == "interval":
        _require_keys(spec, {"kind", "a", "b"}, "domain")
        try:
            return space.DomainGeometry.interval(float(spec["a"]), float(spec["b"]))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"domain: {exc}") from exc
    if spec["kind"] == "ball":
        _require_keys(spec, {"kind", "radius", "dim"}, "domain")
        try:
            return space.DomainGeometry.ball(float(spec["radius"]), int(spec["dim"]))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"domain: {exc}") from exc
    raise ConfigError(f"domain: unknown kind {spec['kind']!r}")


def _parse_weight(spec: dict, domain: space.DomainGeometry) -> space.Weight:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("weight needs a 'kind' entry")
    kind = spec["kind"]
    try:
        if kind == "constant":
            _require_keys(spec, {"kind", "value"}, "weight")
            return space.Weight.constant(domain, float(spec.get("value", 1.0)))
        if kind == "step":
            _require_keys(spec, {"kind", "breakpoint", "left", "right"}, "weight")
            return space.Weight.step(domain, float(spec["breakpoint"]),
                                     float(spec["left"]), float(spec["right"]))
        if kind == "bump":
            _require_keys(spec, {"kind", "center", "width", "amplitude", "base"},
                          "weight")
            return space.Weight.bump(domain, float(spec["center"]),
                                     float(spec["width"]), float(spec["amplitude"]),
                                     float(spec.get("base", 1.0)))
        if kind == "samples":
            _require_keys(spec, {"kind", "values"}, "weight")
            return space.Weight.from_samples(domain, spec["values"])
    except ConfigError:
        raise
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"weight: {exc}") from exc
    raise ConfigError(f"weight: unknown kind {kind!r}")


@dataclass
class CaseConfig:
    case_id: str
    config_sha: str
    raw: dict
    G: young.YoungFunction
    H: young.YoungFunction
    domain: space.DomainGeometry
    weight: space.Weight
    mu_list: list
    solver: dict
    ledger_overrides: dict
    theorems: Optional[list]


def load_config(path: str, seed: Optional[int] = None,
                grid: Optional[int] = None) -> CaseConfig:
    try:
        raw_bytes = Path(path).read_bytes()
        raw = json.loads(raw_bytes)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(raw, seed=seed, grid=grid)


def parse_config(raw: dict, seed: Optional[int] = None,
                 grid: Optional[int] = None) -> CaseConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    allowed = {"schema_version", "case_id", "young_G", "young_H", "weight",
               "domain", "mu_list", "solver", "ledger", "theorems"}
    _require_keys(raw, allowed, "config")
    if raw.get("schema_version") != 1:
        raise ConfigError("config needs schema_version = 1")
    for key in ("young_G", "young_H", "weight", "domain"):
        if key not in raw:
            raise ConfigError(f"config is missing {key!r}")
    G = _parse_young(raw["young_G"], "young_G")
    H = _parse_young(raw["young_H"], "young_H")
    domain = _parse_domain(raw["domain"])
    weight = _parse_weight(raw["weight"], domain)
    mu_list = [float(m) for m in raw.get("mu_list", [1.0])]
    if not mu_list or any(m <= 0 for m in mu_list):
        raise ConfigError("mu_list must be nonempty and positive")
    solver = dict(raw.get("solver", {}))
    _require_keys(solver, _SOLVER_KEYS, "solver")
    if seed is not None:
        solver["seed"] = int(seed)
    if grid is not None:
        solver["N"] = int(grid)
    ledger_overrides = dict(raw.get("ledger", {}))
    _require_keys(ledger_overrides, _LEDGER_KEYS, "ledger")
    theorems = raw.get("theorems")
    if theorems is not None and not isinstance(theorems, list):
        raise ConfigError("theorems must be a list of theorem ids")
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()
    sha = hashlib.sha256(canon).hexdigest()
    case_id = str(raw.get("case_id") or sha[:12])
    return CaseConfig(case_id=case_id, config_sha=sha, raw=raw, G=G, H=H,
                      domain=domain, weight=weight, mu_list=mu_list,
                      solver=solver, ledger_overrides=ledger_overrides,
                      theorems=theorems)


def _solve_options(cfg: CaseConfig) -> eigen.SolveOptions:
    s = cfg.solver
    return eigen.SolveOptions(N=int(s.get("N", 512)),
                              restarts=int(s.get("restarts", 2)),
                              seed=int(s.get("seed", 0)),
                              max_iters=int(s.get("max_iters", 600)))


def _ledger_for(cfg: CaseConfig) -> bounds.ConstantLedger:
    led = bounds.default_ledger(cfg.G, cfg.H, cfg.domain.dim)
    if cfg.ledger_overrides:
        led = led.with_overrides(**{k: float(v) for k, v in cfg.ledger_overrides.items()})
    return led


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def fmt(x) -> str:
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    if x is None:
        return ""
    return str(x)


def _domain_str(d: space.DomainGeometry) -> str:
    if d.kind == "interval":
        return f"interval({fmt(d.a)},{fmt(d.b)})"
    return f"ball(R={fmt(d.radius)},n={d.dim})"


def _report_json(cfg: CaseConfig, report: bounds.VerificationReport) -> dict:
    hyp = report.hypotheses
    return {
        "case_id": cfg.case_id,
        "config_sha256": cfg.config_sha,
        "tool_version": __version__,
        "G": cfg.G.label,
        "H": cfg.H.label,
        "domain": _domain_str(cfg.domain),
        "hypotheses": {
            "delta_prime_G": asdict(hyp.delta_prime_G),
            "delta_prime_H": asdict(hyp.delta_prime_H),
            "sobolev_class": asdict(hyp.sobolev_class) if hyp.sobolev_class else None,
            "sobolev_undecidable": hyp.sobolev_undecidable,
            "prec_HG": asdict(hyp.prec_HG) if hyp.prec_HG else None,
            "prec_prec_G_Gstar": hyp.prec_prec_G_Gstar,
            "hardy_ok": asdict(hyp.hardy_ok) if hyp.hardy_ok else None,
            "weight_class": hyp.weight_class,
            "grids": hyp.grids,
        },
        "ledger": {
            "C": report.ledger.C, "c": report.ledger.c,
            "kappa0": report.ledger.kappa0, "k_hat": report.ledger.k_hat,
            "kappa": report.ledger.kappa, "c_H": report.ledger.c_H,
            "k": report.ledger.k, "provenance": report.ledger.provenance,
        },
        "bounds": [asdict(b) for b in report.bounds],
        "eigenvalues": [
            {"mu": m, "lambda": r.lam, "achieved_mu": r.mu,
             "iterations": r.iterations, "kkt_residual": r.kkt_residual,
             "grid_N": r.grid_N, "restart": r.restart, "label": r.label,
             "u_nodes": [float(v) for v in r.u.values]}
            for m, r in report.eigenvalues
        ],
        "checks": [asdict(c) for c in report.checks],
        "all_passed": report.all_passed,
        "incomplete": report.incomplete,
        "failure_reason": report.failure_reason,
    }


def _csv_rows(cfg: CaseConfig, report: bounds.VerificationReport) -> list[list[str]]:
    rows = []
    lam_by_mu = {m: r for m, r in report.eigenvalues}
    checks = {(c.theorem_id, c.mu): c for c in report.checks}
    for m in sorted(lam_by_mu):
        res = lam_by_mu[m]
        items = report.bounds if report.bounds else [None]
        for b in items:
            check = checks.get((b.theorem_id, m)) if b is not None else None
            rows.append([
                cfg.case_id, cfg.G.label, cfg.H.label, _domain_str(cfg.domain),
                fmt(float(m)), str(res.grid_N), fmt(res.lam), fmt(res.kkt_residual),
                b.theorem_id if b is not None else "",
                fmt(b.value) if b is not None else "",
                fmt(b.applicable) if b is not None else "",
                fmt(check.passed) if check is not None else "",
            ])
    return rows


def _write_csv(path: Path, rows: list[list[str]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    path.write_text(buf.getvalue())


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_young_inspect(args) -> int:
    cfg = load_config(args.config, seed=args.seed, grid=args.grid)
    G = cfg.G
    n = cfg.domain.dim
    lo, hi = young.index_profile(G)
    dp = young.delta_prime_constant(G)
    ip = young.inverse_product_constant(G)
    report = {
        "label": G.label,
        "dimension": n,
        "index_lower": lo,
        "index_upper": hi,
        "delta_prime_constant": dp.value,
        "delta_prime_edge_growing": dp.edge_growing,
        "inverse_product_constant": ip.value,
        "inverse_product_edge_growing": ip.edge_growing,
    }
    try:
        cls = young.sobolev_classify(G, n)
        report["sobolev_class"] = asdict(cls)
        if cls.finite:
            report["sigma_samples"] = {fmt(t): young.sigma(G, n, t)
                                       for t in (0.25, 0.5, 1.0, 2.0)}
        else:
            gstar = young.critical_function(G, n)
            glo, ghi = young.index_profile(gstar)
            report["critical_index_range"] = [glo, ghi]
            report["critical_inverse_at_1"] = young.inverse(gstar, 1.0)
    except young.BorderlineSobolevError as exc:
        report["sobolev_class"] = None
        report["sobolev_undecidable"] = str(exc)
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_solve(args) -> int:
    cfg = load_config(args.config, seed=args.seed, grid=args.grid)
    opts = _solve_options(cfg)
    rows = []
    try:
        sweep = eigen.mu_sweep(
            eigen.EigenProblem(G=cfg.G, H=cfg.H, w=cfg.weight,
                               domain=cfg.domain, mu=cfg.mu_list[0]),
            cfg.mu_list, opts) if len(cfg.mu_list) > 1 else None
        results = (sweep.entries if sweep is not None else
                   [(cfg.mu_list[0],
                     eigen.solve_first(eigen.EigenProblem(
                         G=cfg.G, H=cfg.H, w=cfg.weight, domain=cfg.domain,
                         mu=cfg.mu_list[0]), opts))])
    except (eigen.NonConvergenceError, eigen.DegenerateFieldError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    for m, res in results:
        rows.append([cfg.case_id, cfg.G.label, cfg.H.label,
                     _domain_str(cfg.domain), fmt(float(m)), str(res.grid_N),
                     fmt(res.lam), fmt(res.kkt_residual), "", "", "",
                     res.label])
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_COLUMNS[:8] + ["", "", "", "label"])
    writer.writerows(rows)
    if sweep is not None:
        print(f"# mu*lambda nondecreasing: {fmt(sweep.mu_lambda_nondecreasing)}",
              file=sys.stderr)
    return EXIT_OK


def run_case(cfg: CaseConfig, tol: float = 1e-3) -> tuple[dict, list[list[str]], int]:
    """Run one verification case; returns (report json, csv rows, exit code)."""
    problem = eigen.EigenProblem(G=cfg.G, H=cfg.H, w=cfg.weight,
                                 domain=cfg.domain, mu=cfg.mu_list[0])
    opts = bounds.VerifyOptions(N=int(cfg.solver.get("N", 512)),
                                mu_list=tuple(cfg.mu_list),
                                restarts=int(cfg.solver.get("restarts", 2)),
                                seed=int(cfg.solver.get("seed", 0)),
                                max_iters=int(cfg.solver.get("max_iters", 600)),
                                tol=tol)
    report = bounds.verify_case(problem, ledger=_ledger_for(cfg), opts=opts,
                                theorems=cfg.theorems)
    code = EXIT_OK
    if report.incomplete:
        code = EXIT_SOLVER
    elif not report.all_passed:
        code = EXIT_VIOLATION
    return _report_json(cfg, report), _csv_rows(cfg, report), code


def cmd_verify(args) -> int:
    cfg = load_config(args.config, seed=args.seed, grid=args.grid)
    report_json, rows, code = run_case(cfg)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{cfg.case_id}.json").write_text(
            json.dumps(report_json, indent=2, sort_keys=True) + "\n")
        _write_csv(out / "cases.csv", rows)
    print(json.dumps(report_json["checks"], indent=2, sort_keys=True))
    summary = "PASS" if code == EXIT_OK else (
        "INCOMPLETE" if code == EXIT_SOLVER else "VIOLATION")
    applicable = sum(1 for b in report_json["bounds"] if b["applicable"])
    print(f"# case {cfg.case_id}: {summary} "
          f"({applicable} applicable bounds, {len(report_json['checks'])} checks)",
          file=sys.stderr)
    return code


def _sweep_worker(payload: tuple[str, Optional[int], Optional[int]]) -> tuple[str, dict, list, int, str]:
    path, seed, grid = payload
    try:
        cfg = load_config(path, seed=seed, grid=grid)
    except ConfigError as exc:
        return path, {}, [], EXIT_CONFIG, str(exc)
    try:
        report_json, rows, code = run_case(cfg)
    except Exception as exc:  # noqa: BLE001 - a sweep records, never crashes
        return cfg.config_sha, {"case_id": cfg.case_id, "error": str(exc)}, [], EXIT_SOLVER, str(exc)
    return cfg.config_sha, report_json, rows, code, ""


def cmd_sweep(args) -> int:
    paths: list[str] = []
    for pattern in args.configs:
        paths.extend(sorted(globmod.glob(pattern)))
    if not paths:
        print("no configs matched", file=sys.stderr)
        return EXIT_CONFIG
    payloads = [(p, args.seed, args.grid) for p in paths]
    if args.parallel > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.parallel) as pool:
            results = list(pool.map(_sweep_worker, payloads))
    else:
        results = [_sweep_worker(p) for p in payloads]
    results.sort(key=lambda r: r[0])  # config-hash order: parallel == serial

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    all_rows: list[list[str]] = []
    manifest_cases = []
    codes = []
    for sha, report_json, rows, code, err in results:
        codes.append(code)
        status = {EXIT_OK: "ok", EXIT_SOLVER: "solver-failure",
                  EXIT_VIOLATION: "bound-violation",
                  EXIT_CONFIG: "config-error"}[code]
        case_id = report_json.get("case_id", sha)
        manifest_cases.append({"case_id": case_id, "config_sha256": sha,
                               "status": status, "error": err})
        if rows:
            all_rows.extend(rows)
            (out / f"{case_id}.json").write_text(
                json.dumps(report_json, indent=2, sort_keys=True) + "\n")
    _write_csv(out / "cases.csv", all_rows)
    manifest = {
        "tool_version": __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "parallelism": args.parallel,
        "cases": manifest_cases,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    n_bad = sum(1 for c in codes if c != EXIT_OK)
    print(f"# sweep: {len(codes) - n_bad}/{len(codes)} cases ok -> {out}",
          file=sys.stderr)
    if any(c == EXIT_VIOLATION for c in codes):
        return EXIT_VIOLATION
    if all(c != EXIT_OK for c in codes):
        return EXIT_SOLVER
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orlicz-spectral",
        description="Young-function calculus, g-Laplacian eigenvalues and "
                    "eigenvalue lower-bound verification")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="case config (JSON)")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override solver seed")
        p.add_argument("--grid", type=int, default=None, help="override solver N")

    p_young = sub.add_parser("young", help="Young-function reports")
    young_sub = p_young.add_subparsers(dest="young_command", required=True)
    p_inspect = young_sub.add_parser("inspect", help="indices, constants, tail class")
    common(p_inspect)
    p_inspect.set_defaults(fn=cmd_young_inspect)

    p_solve = sub.add_parser("solve", help="first-eigenvalue solves (CSV rows)")
    common(p_solve)
    p_solve.set_defaults(fn=cmd_solve)

    p_verify = sub.add_parser("verify", help="bounds vs computed eigenvalue")
    common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="batch verification over config globs")
    p_sweep.add_argument("configs", nargs="+", help="config paths or globs")
    p_sweep.add_argument("--out", required=True, help="results directory")
    p_sweep.add_argument("--parallel", type=int, default=1)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--grid", type=int, default=None)
    p_sweep.set_defaults(fn=cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(
        level=os.environ.get("ORLICZ_SPECTRAL_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (eigen.NonConvergenceError, eigen.DegenerateFieldError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
