"""
Command-line front end.

    regenbound bounds  --n 5 [--alpha A --beta B] [--format csv|json] [--out FILE]
    regenbound gen     mbr --n 5 --q 2 [--out FILE]
    regenbound gen     sum msr mbr --n 5
    regenbound verify  --in code.json [--out report.json]
    regenbound certify --in code.json [--out chain.json]

Exit codes: 0 success/pass, 1 verification or certification failure,
2 usage or parse error.  REGEN_LOG sets the log level (e.g. DEBUG).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bounds
from .code_model import (
    CodeError,
    check_data_collection,
    check_exact_repair,
    dumps_code,
    extract_h_repair,
    loads_code,
)
from .dual_chain import build_chain, certify_all, chain_report
from .instances import parse_recipe

log = logging.getLogger("regenbound")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_FIELDS = ["curve_label", "alpha_over_B_num", "alpha_over_B_den", "beta_over_B_num", "beta_over_B_den"]


@dataclass
class CommandConfig:
    subcommand: str
    input: Path | None = None
    output: Path | None = None
    n: int | None = None
    q: int = 2
    alpha: int | None = None
    beta: int | None = None
    format: str = "csv"
    recipe: tuple[str, ...] = ()


class UsageError(Exception):
    pass


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text)
        log.info("wrote %s", out)


def _read_code(path: Path | None):
    if path is None:
        raise UsageError("--in is required")
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return loads_code(text)
    except CodeError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_bounds(cfg: CommandConfig) -> int:
    n = cfg.n
    if n is None or n < 4:
        raise UsageError(f"bounds needs --n >= 4 (got {n})")
    curves = bounds.all_curves(n)
    rows = [row for c in curves for row in c.to_rows()]
    evaluation = None
    if cfg.alpha is not None or cfg.beta is not None:
        if cfg.alpha is None or cfg.beta is None:
            raise UsageError("--alpha and --beta go together")
        try:
            evaluation = point_evaluation(n, cfg.alpha, cfg.beta)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for key, val in evaluation.items():
            log.info("%s = %s", key, val)
    if cfg.format == "json":
        doc = {"n": n, "curves": rows}
        if evaluation is not None:
            doc["evaluation"] = evaluation
        _emit(json.dumps(doc, indent=1), cfg.output)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        _emit(buf.getvalue(), cfg.output)
    return EXIT_OK


def point_evaluation(n: int, alpha: int, beta: int) -> dict:
    d = n - 1
    out = {
        "alpha": alpha,
        "beta": beta,
        "cutset": bounds.cutset_bound(n, d, d, alpha, beta),
        "theorem1": bounds.theorem1_bound(n, alpha, beta),
        "theorem5_rank": bounds.theorem5_rank_bound(n, alpha, beta),
    }
    if n == 5:
        out["sassenkum"] = bounds.sassenkum_544(alpha, beta)
        out["duursma"] = bounds.duursma_544(alpha, beta)
    return out


def parse_curves_csv(text: str) -> dict[str, list]:
    """Inverse of the CSV writer: label -> list of (alpha/B, beta/B) Fractions."""
    out: dict[str, list] = {}
    for row in csv.DictReader(io.StringIO(text)):
        pt = (
            Fraction(int(row["alpha_over_B_num"]), int(row["alpha_over_B_den"])),
            Fraction(int(row["beta_over_B_num"]), int(row["beta_over_B_den"])),
        )
        out.setdefault(row["curve_label"], []).append(pt)
    return out


def verify_report(code) -> tuple[dict, bool]:
    dc = check_data_collection(code)
    report = {"params": {k: getattr(code.params, k) for k in ("n", "k", "d", "alpha", "beta", "q", "B")}}
    report["data_collection"] = dc.to_dict()
    ok = dc.passed
    if code.scheme is None:
        log.warning("no repair section: checked data collection only")
        report["exact_repair"] = None
    else:
        er = check_exact_repair(code)
        report["exact_repair"] = er.to_dict()
        ok = ok and er.passed
    report["pass"] = ok
    return report, ok


def cmd_verify(cfg: CommandConfig) -> int:
    code = _read_code(cfg.input)
    report, ok = verify_report(code)
    if not report["data_collection"]["pass"]:
        log.error("data collection fails for node subsets %s", report["data_collection"]["failing_subsets"])
    if report["exact_repair"] and not report["exact_repair"]["pass"]:
        log.error("exact repair fails for nodes %s", report["exact_repair"]["failing_nodes"])
    _emit(json.dumps(report, indent=1), cfg.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(cfg: CommandConfig) -> int:
    code = _read_code(cfg.input)
    report, ok = verify_report(code)
    if not ok or code.scheme is None:
        why = "no repair scheme" if code.scheme is None else "code fails verification"
        print(f"certify: {why}; run `verify` for details", file=sys.stderr)
        return EXIT_FAIL
    if code.params.n < 4:
        raise UsageError(f"certify needs n >= 4 (got n={code.params.n})")
    chain = build_chain(extract_h_repair(code))
    reports = certify_all(chain)
    doc = chain_report(chain, reports)
    doc["code"] = report["params"]
    _emit(json.dumps(doc, indent=1), cfg.output)
    for name, r in reports.items():
        log.info("%s: %s (%d checks, %d violations)", name, "pass" if r.passed else "FAIL", len(r.checks), len(r.violations))
    return EXIT_OK if doc["pass"] else EXIT_FAIL


def cmd_gen(cfg: CommandConfig) -> int:
    if cfg.n is None:
        raise UsageError("gen needs --n")
    try:
        code = parse_recipe(list(cfg.recipe), cfg.n, cfg.q).build()
    except (CodeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(dumps_code(code), cfg.output)
    return EXIT_OK


COMMANDS = {"bounds": cmd_bounds, "verify": cmd_verify, "certify": cmd_certify, "gen": cmd_gen}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regenbound", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, n=False, q=False, inp=False):
        if n:
            p.add_argument("--n", type=int, required=True, help="number of nodes")
        if q:
            p.add_argument("--q", type=int, default=2, help="prime field size (default 2)")
        if inp:
            p.add_argument("--in", dest="input", type=Path, required=True, help="code JSON file")
        p.add_argument("--out", dest="output", type=Path, help="output file (default stdout)")

    p = sub.add_parser("bounds", help="emit trade-off curves")
    common(p, n=True)
    p.add_argument("--alpha", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("gen", help="generate an instance: msr | mbr | sum {msr|mbr} {msr|mbr}")
    p.add_argument("recipe", nargs="+")
    common(p, n=True, q=True)

    p = sub.add_parser("verify", help="check data collection and exact repair")
    common(p, inp=True)

    p = sub.add_parser("certify", help="build the dual chain and certify its rank relations")
    common(p, inp=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("REGEN_LOG", "WARNING").upper()
    logging.basicConfig(
        level=level if isinstance(logging.getLevelName(level), int) else "WARNING",
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    cfg = CommandConfig(
        subcommand=args.subcommand,
        input=getattr(args, "input", None),
        output=getattr(args, "output", None),
        n=getattr(args, "n", None),
        q=getattr(args, "q", 2),
        alpha=getattr(args, "alpha", None),
        beta=getattr(args, "beta", None),
        format=getattr(args, "format", "csv"),
        recipe=tuple(getattr(args, "recipe", ())),
    )
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"{cfg.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
