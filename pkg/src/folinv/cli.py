"""Command-line interface.

Subcommands:
  local invariants   --input FILE
  local check NAME   --input FILE        (NAME = one check or "all")
  global check NAME  --input FILE
  example run NAME   [--k --lambda --n --zeta --lambda2]
  example list

Inputs are JSON documents with polynomials in the shared text grammar.
Exit codes: 0 every check holds, 1 some check fails, 2 input error,
3 computation limit hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .config import Config
from .errors import (
    DegreeCapExceeded,
    FolinvError,
    InputError,
    ParseError,
    PrecisionExhausted,
    WindowTooSmall,
)
from .examples import EXAMPLES, run_example
from .foliation import (
    LocalFoliation,
    SepDivisor,
    adjunction_suite,
    check_balance_identity,
    check_branch_sum_inequality,
    check_gsv_tjurina_bound,
    check_index_transfer,
    check_mu_tau_quarter,
    check_multiplicity_bound,
    check_ratio_bound,
    check_tjurina_positive,
    chi_checked,
    curve_units,
    gsv,
    mult_along_branch,
    mult_along_curve,
    theta_residual,
    tjurina_foliation,
)
from .localring import milnor_curve, tjurina_curve
from .poly import LOCAL_VARS, PROJ_VARS, parse_poly
from .projective import (
    ProjPoint,
    ProjectiveFoliation,
    blowup_chart,
    certify_singularities,
    chart,
    check_cerveau_lins_neto,
    check_global_tjurina,
    check_gsv_sum,
    check_ploski_bound,
    check_soares_bound,
)
from .report import ReportDoc, verdict_entry
from .foliation import _verdict

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_LIMIT = 3

LOCAL_CHECKS = ("transfer", "gsv-bound", "adjunction", "branch-sum", "balance",
                "ratio", "tjurina-positive", "multiplicity-bound",
                "mu-tau-quarter")
GLOBAL_CHECKS = ("euler", "singularities", "genus-multiplicity", "soares",
                 "tjurina", "gsv-sum", "ploski", "blowup")


@dataclass
class JobSpec:
    """A fully parsed unit of work for the runner."""

    kind: str  # "local-invariants" | "local-check" | "global-check" | "example"
    payload: dict = field(default_factory=dict)
    checks: tuple = ()
    config: Config = Config()


def _parse_config(raw, args=None):
    cfg = {"degree_cap": 200, "precision_cap": 4096, "seed": 0}
    for key in cfg:
        if raw and key in raw:
            cfg[key] = int(raw[key])
    if args is not None:
        if getattr(args, "degree_cap", None) is not None:
            cfg["degree_cap"] = args.degree_cap
        if getattr(args, "precision_cap", None) is not None:
            cfg["precision_cap"] = args.precision_cap
        if getattr(args, "seed", None) is not None:
            cfg["seed"] = args.seed
    return Config(**cfg)


def _load_input(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}")


def _local_setup(payload, config):
    try:
        P = parse_poly(payload["P"], LOCAL_VARS)
        Q = parse_poly(payload["Q"], LOCAL_VARS)
    except KeyError as exc:
        raise InputError(f"missing field {exc} in local input")
    F = LocalFoliation(P, Q)
    f = None
    if payload.get("f"):
        f = parse_poly(payload["f"], LOCAL_VARS)
    divisor = None
    if payload.get("divisor"):
        parts = []
        for row in payload["divisor"]:
            parts.append((parse_poly(row["f"], LOCAL_VARS), int(row["coeff"])))
        divisor = SepDivisor.from_factors(F, parts, config)
    return F, f, divisor


def _need(value, what):
    if value is None:
        raise InputError(f"this check needs {what}")
    return value


def run_local_invariants(F, f, divisor, report, config):
    report.invariants["algebraic-multiplicity"] = F.multiplicity()
    report.invariants["milnor-foliation"] = F.milnor(config)
    if f is not None:
        report.invariants["curve-order"] = f.order()
        report.invariants["milnor-curve"] = milnor_curve(f, config=config)
        report.invariants["tjurina-curve"] = tjurina_curve(f, config=config)
        report.invariants["mult-along-curve"] = mult_along_curve(F, f, config)
        report.invariants["tjurina-foliation"] = tjurina_foliation(F, f, config)
        report.invariants["gsv"] = gsv(F, f, config)
        report.invariants["theta-residual"] = theta_residual(f, config)
        units = curve_units(f, config)
        per_branch = []
        for u in units:
            for b in u.branches:
                per_branch.append(
                    {
                        "factor": str(u.factor),
                        "bundle_size": b.bundle_size,
                        "mult-along-branch": mult_along_branch(F, b, config=config),
                    }
                )
        report.invariants["branches"] = per_branch
    if divisor is not None:
        from .foliation import mult_along_divisor

        report.invariants["mult-along-divisor"] = mult_along_divisor(
            F, divisor, config
        )
        ch, warning = chi_checked(F, divisor, config)
        report.invariants["chi"] = ch
        if warning:
            report.warnings.append(warning)


def run_local_check(name, F, f, divisor, report, config):
    if name == "transfer":
        v1, v2 = check_index_transfer(F, _need(f, "a curve f"), config)
        report.add_verdicts([v1, v2])
    elif name == "gsv-bound":
        report.add_verdict(name, check_gsv_tjurina_bound(F, _need(f, "a curve f"), config))
    elif name == "adjunction":
        report.add_verdicts(adjunction_suite(F, _need(f, "a curve f"), config))
    elif name == "branch-sum":
        report.add_verdict(name, check_branch_sum_inequality(F, _need(f, "a curve f"), config))
    elif name == "balance":
        v, v2 = check_balance_identity(F, _need(divisor, "a divisor"), config)
        report.add_verdict("balance-identity", v)
        if v2 is not None:
            report.add_verdict("balance-equivalence", v2)
    elif name == "ratio":
        ratio, v = check_ratio_bound(F, _need(divisor, "a divisor"), config)
        if ratio is not None:
            report.invariants["ratio"] = ratio
        report.add_verdict("ratio-bound", v)
    elif name == "tjurina-positive":
        report.add_verdict(name, check_tjurina_positive(F, _need(f, "a curve f"), config))
    elif name == "multiplicity-bound":
        report.add_verdict(name, check_multiplicity_bound(_need(f, "a curve f"), config))
    elif name == "mu-tau-quarter":
        report.add_verdict(name, check_mu_tau_quarter(_need(f, "a curve f"), config))
    else:
        raise InputError(f"unknown local check {name!r}; known: {', '.join(LOCAL_CHECKS)}")


def _global_setup(payload, config):
    try:
        A = parse_poly(payload["A"], PROJ_VARS)
        B = parse_poly(payload["B"], PROJ_VARS)
        C = parse_poly(payload["C"], PROJ_VARS)
    except KeyError as exc:
        raise InputError(f"missing field {exc} in global input")
    Pf = ProjectiveFoliation(A, B, C)
    curve = None
    if payload.get("curve"):
        curve = parse_poly(payload["curve"], PROJ_VARS)
    points = []
    for row in payload.get("points", []):
        if len(row) != 3:
            raise InputError("points must be coordinate triples")
        points.append(ProjPoint(*[Fraction(str(c)) for c in row]))
    return Pf, curve, points


def run_global_check(name, Pf, curve, points, report, config):
    if name == "euler":
        d = Pf.validate()
        report.invariants["degree"] = d
        report.add_verdict("euler", _verdict("euler", 1, 1))
    elif name == "singularities":
        cert = certify_singularities(Pf, points, config)
        report.invariants["milnor-total"] = cert.total
        report.certificates["jouanolou-expected"] = cert.expected_total
        report.add_verdict(
            "singularities-complete",
            _verdict("singularities-complete", cert.total, cert.expected_total),
        )
    elif name == "genus-multiplicity":
        report.add_verdict(
            name, check_cerveau_lins_neto(Pf, _need(curve, "a curve"), points, config)
        )
    elif name == "soares":
        report.add_verdict(
            name, check_soares_bound(Pf, _need(curve, "a curve"), points, config)
        )
    elif name == "tjurina":
        for v in check_global_tjurina(Pf, _need(curve, "a curve"), points, config):
            report.add_verdict(v.name, v)
    elif name == "gsv-sum":
        report.add_verdict(
            name, check_gsv_sum(Pf, _need(curve, "a curve"), points, config)
        )
    elif name == "ploski":
        report.add_verdict(
            name, check_ploski_bound(_need(curve, "a curve"), points, config)
        )
    elif name == "blowup":
        if not points:
            raise InputError("blow-up check needs at least one point")
        for i, p in enumerate(points):
            loc, _ = chart(Pf, p.home_chart, p, config)
            bu = blowup_chart(loc, config=config)
            report.invariants[f"dicritical-first-step:{p}"] = int(
                bu.dicritical_at_first_step
            )
    else:
        raise InputError(
            f"unknown global check {name!r}; known: {', '.join(GLOBAL_CHECKS)}"
        )


def run_job(job):
    """Execute a JobSpec; returns (ReportDoc, exit_code)."""
    report = ReportDoc()
    started = time.monotonic()
    try:
        if job.kind == "local-invariants":
            F, f, divisor = _local_setup(job.payload, job.config)
            report.inputs = {k: job.payload[k] for k in ("P", "Q", "f", "divisor")
                             if k in job.payload}
            run_local_invariants(F, f, divisor, report, job.config)
        elif job.kind == "local-check":
            F, f, divisor = _local_setup(job.payload, job.config)
            report.inputs = {k: job.payload[k] for k in ("P", "Q", "f", "divisor")
                             if k in job.payload}
            names = job.checks or LOCAL_CHECKS
            for name in names:
                run_local_check(name, F, f, divisor, report, job.config)
        elif job.kind == "global-check":
            Pf, curve, points = _global_setup(job.payload, job.config)
            report.inputs = {
                k: job.payload[k]
                for k in ("A", "B", "C", "curve", "points")
                if k in job.payload
            }
            names = job.checks or GLOBAL_CHECKS
            for name in names:
                run_global_check(name, Pf, curve, points, report, job.config)
        elif job.kind == "example":
            name = job.payload["name"]
            params = {k: v for k, v in job.payload.items() if k != "name"}
            report = run_example(name, job.config, **params)
        else:
            raise InputError(f"unknown job kind {job.kind!r}")
    except (ParseError, InputError) as exc:
        report.warnings.append(f"input error: {exc}")
        report.timing["seconds"] = time.monotonic() - started
        return report, EXIT_INPUT_ERROR
    except (DegreeCapExceeded, PrecisionExhausted, WindowTooSmall) as exc:
        report.warnings.append(f"computation limit: {exc}")
        report.timing["seconds"] = time.monotonic() - started
        return report, EXIT_LIMIT
    except FolinvError as exc:
        report.warnings.append(f"input error: {type(exc).__name__}: {exc}")
        report.timing["seconds"] = time.monotonic() - started
        return report, EXIT_INPUT_ERROR
    report.certificates.setdefault("seed", job.config.seed)
    report.certificates.setdefault("degree_cap", job.config.degree_cap)
    report.certificates.setdefault("precision_cap", job.config.precision_cap)
    report.timing["seconds"] = time.monotonic() - started
    code = EXIT_OK if report.all_hold() else EXIT_CHECK_FAILED
    return report, code


def _emit(report, args):
    text = report.to_text() if args.format == "text" else report.to_json() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(parser):
    parser.add_argument("--input", help="JSON input document")
    parser.add_argument("--out", help="write the report to a file")
    parser.add_argument("--format", choices=("text", "structured"),
                        default="text")
    parser.add_argument("--degree-cap", type=int, default=None)
    parser.add_argument("--precision-cap", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)


def build_parser():
    top = argparse.ArgumentParser(
        prog="folinv",
        description=(
            "Exact invariants of plane curve germs and holomorphic foliations: "
            "Milnor and Tjurina numbers, GSV index, chi-number, semigroups, "
            "and machine-checked identities."
        ),
    )
    sub = top.add_subparsers(dest="domain", required=True)

    local = sub.add_parser("local", help="invariants and checks of germs")
    lsub = local.add_subparsers(dest="action", required=True)
    linv = lsub.add_parser("invariants", help="compute the invariant table")
    _add_common(linv)
    lchk = lsub.add_parser("check", help="run named identity checks")
    lchk.add_argument("name", help=f"one of: all, {', '.join(LOCAL_CHECKS)}")
    _add_common(lchk)

    glob = sub.add_parser("global", help="projective-plane checks")
    gsub = glob.add_subparsers(dest="action", required=True)
    gchk = gsub.add_parser("check", help="run named global checks")
    gchk.add_argument("name", help=f"one of: all, {', '.join(GLOBAL_CHECKS)}")
    _add_common(gchk)

    ex = sub.add_parser("example", help="built-in worked examples")
    esub = ex.add_subparsers(dest="action", required=True)
    erun = esub.add_parser("run", help="run a built-in example")
    erun.add_argument("name", help="suzuki | fk | alcantara")
    erun.add_argument("--k", type=int, default=3)
    erun.add_argument("--lambda", dest="lam", default="1")
    erun.add_argument("--n", type=int, default=2)
    erun.add_argument("--zeta", default="1")
    erun.add_argument("--lambda2", default="1")
    _add_common(erun)
    esub.add_parser("list", help="catalog of built-in examples")
    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.domain == "example" and args.action == "list":
            for name, info in EXAMPLES.items():
                sys.stdout.write(f"{name}: {info['description']}\n")
                for pname, pdesc in info["parameters"].items():
                    sys.stdout.write(f"    --{pname}: {pdesc}\n")
                for key, val in info["expected"].items():
                    sys.stdout.write(f"    expected {key} = {val}\n")
            return EXIT_OK
        if args.domain == "example":
            payload = {"name": args.name}
            if args.name == "fk":
                payload["k"] = args.k
                payload["lambda"] = Fraction(args.lam)
            if args.name == "alcantara":
                payload["n"] = args.n
                payload["zeta"] = Fraction(args.zeta)
                payload["lambda2"] = Fraction(args.lambda2)
            job = JobSpec("example", payload, (), _parse_config(None, args))
            report, code = run_job(job)
            _emit(report, args)
            return code
        if not args.input:
            sys.stderr.write("error: --input FILE is required\n")
            return EXIT_INPUT_ERROR
        try:
            payload = _load_input(args.input)
        except InputError as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_INPUT_ERROR
        config = _parse_config(payload.get("config"), args)
        if args.domain == "local" and args.action == "invariants":
            job = JobSpec("local-invariants", payload, (), config)
        elif args.domain == "local":
            names = tuple(payload.get("checks") or ())
            if args.name != "all":
                names = (args.name,)
            elif not names:
                names = LOCAL_CHECKS
            job = JobSpec("local-check", payload, names, config)
        else:
            names = tuple(payload.get("checks") or ())
            if args.name != "all":
                names = (args.name,)
            elif not names:
                names = GLOBAL_CHECKS
            job = JobSpec("global-check", payload, names, config)
        report, code = run_job(job)
        _emit(report, args)
        return code
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
