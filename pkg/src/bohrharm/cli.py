"""Command-line front end: ``bohrharm {verify,radius,sharpness,table,area}``.

Exit status is 0 on success, 1 when a checked claim fails, 2 on usage or
schema errors.  CSV floats use 17 significant digits so tables round-trip
and diff cleanly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import functionals as fn
from .families import (
    ExtremalFamilyParams,
    mapping_from_json,
    mobius_area,
    mobius_majorant,
    mobius_square_sum,
    prop1_bohr_sum,
)
from .harmonic import area_quadrature, area_series
from .proof_checks import x_plus
from .radii import (
    compute_K,
    default_a_values,
    empirical_radius,
    family_for,
    lambda_grid,
    parse_lambda_grid,
    solve_radius_prop1,
    solve_radius_thm4,
)
from .series import SchemaError
from .verification import SUITES, RunConfig, run_suite, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SHARPNESS_COLUMNS = ("a", "lambda_abs", "lambda_arg", "value_lo", "value_hi", "verdict", "closed_form")
TABLE_COLUMNS = ("r", "value_lo", "value_hi", "verdict")
VERIFY_COLUMNS = ("suite", "tag", "claim", "subject", "r", "status", "ok")


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


def _csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _config(args) -> RunConfig:
    try:
        return RunConfig(args.order, args.tol, args.seed, args.format, args.out)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_mapping_spec(text: str, order: int):
    """``text`` is inline JSON or a path to a JSON file."""
    src = text
    if not text.lstrip().startswith("{"):
        try:
            src = Path(text).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read mapping spec {text!r}: {exc}") from None
    try:
        obj = json.loads(src)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return mapping_from_json(obj, order)


def parse_r_grid(text: str) -> list[float]:
    """``"start:stop:step"`` with ``stop`` included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("r grid must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"malformed r grid {text!r}") from None
    if not (0.0 <= start <= stop < 1.0) or not step > 0:
        raise UsageError("r grid needs 0 <= start <= stop < 1 and step > 0")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def mobius_closed_form(tag: str, a: float, lam_abs: float, r: float, c: Optional[float]) -> Optional[float]:
    """Exact functional value on the family for real ``a >= 0``, where one is known."""
    maj = mobius_majorant(a, r)
    if tag == "H1":
        return a + (1 + lam_abs) * maj + (fn.H1_CONSTANT if c is None else c) * mobius_area(a, lam_abs, r)
    if tag == "H2":
        return a * a + (1 + lam_abs) * maj + (fn.H2_CONSTANT if c is None else c) * mobius_area(a, lam_abs, r)
    if tag == "L":
        cc = fn.L_CONSTANT if c is None else c
        return a + (1 + lam_abs) * maj + cc * (1 + lam_abs**2) * mobius_square_sum(a, r)
    if tag == "N":
        # |h(z) - a| peaks at z = -r
        return a + (1 + lam_abs) * maj + maj * maj
    if tag == "T4":
        sq = (1 - a * a) ** 2 * r * r / (1 - a * a * r * r)
        return ((a + r) / (1 + a * r)) ** 2 + (1 + lam_abs**2) * sq
    if tag == "bohr":
        return a + maj
    return None


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    config = _config(args)
    rows = run_suite(args.suite, config)
    report = summarize(args.suite, config, rows)
    if config.output_format == "json":
        _emit(_json(report), config.output_path)
    else:
        _emit(_csv(rows, VERIFY_COLUMNS), config.output_path)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_radius(args) -> int:
    config = _config(args)
    which = args.which
    if which == "thm4":
        out = {"selector": which, **solve_radius_thm4().to_json()}
    elif which == "prop1":
        out = {"selector": which, **solve_radius_prop1().to_json()}
    elif which == "K":
        root = solve_radius_prop1()
        out = {"selector": which, "value": compute_K(), "residual": root.residual,
               "bracket": list(root.bracket), "iterations": root.iterations}
    elif which.startswith("empirical:"):
        tag = which.split(":", 1)[1]
        fid = _functional(tag, args.c)
        phases, moduli = _lambda_spec(args.lambda_grid)
        res = empirical_radius(fid, default_a_values(args.a_steps), lambda_grid(phases, moduli),
                               r_tolerance=args.r_tol, order=config.truncation_order)
        out = {"selector": which, **res.to_json()}
        out["residual"] = out["bracket"][1] - out["bracket"][0]
    else:
        raise UsageError(f"unknown radius selector {which!r}; expected thm4, prop1, K or empirical:<tag>")
    if config.output_format == "json":
        _emit(_json(out), config.output_path)
    else:
        row = {"selector": which, "value": out["value"], "residual": out["residual"],
               "bracket_lo": out["bracket"][0], "bracket_hi": out["bracket"][1]}
        _emit(_csv([row], list(row)), config.output_path)
    return EXIT_OK


def _functional(tag: str, c: Optional[float]) -> fn.FunctionalId:
    try:
        return fn.FunctionalId(tag, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _lambda_spec(text: str) -> tuple[int, list[float]]:
    try:
        return parse_lambda_grid(text)
    except ValueError as exc:
        raise UsageError(f"bad lambda grid: {exc}") from None


def sharpness_rows(fid: fn.FunctionalId, r: float, a_steps: int, phases: int, moduli: Sequence[float],
                   order: int) -> list[dict]:
    if not 0.0 < r < 1.0:
        raise UsageError("r must lie in (0, 1)")
    a_values = default_a_values(a_steps)
    if fid.tag == "T4":
        a_values = a_values + [x_plus(0.0, r)]
    prop1 = family_for(fid.tag) == "prop1"
    rows = []
    for a in a_values:
        for lam in lambda_grid(phases, moduli):
            if prop1:
                p = ExtremalFamilyParams("prop1", a, theta=float(np.angle(lam)))
                closed = prop1_bohr_sum(a, r) if fid.tag == "P1" else None
            else:
                p = ExtremalFamilyParams("mobius", a, lam=lam)
                closed = mobius_closed_form(fid.tag, a, abs(lam), r, fid.c_override)
            enc = fn.evaluate(fid, p.expand(order), r)
            rows.append({"a": a, "lambda_abs": abs(lam), "lambda_arg": float(np.angle(lam)),
                         "value_lo": enc.lo, "value_hi": enc.hi, "verdict": enc.verdict(),
                         "closed_form": closed})
    return rows


def cmd_sharpness(args) -> int:
    config = _config(args)
    fid = _functional(args.functional, args.c)
    phases, moduli = _lambda_spec(args.lambda_grid)
    rows = sharpness_rows(fid, args.r, args.a_steps, phases, moduli, config.truncation_order)
    if config.output_format == "json":
        _emit(_json({"functional": fid.tag, "c": fid.c_override, "r": args.r, "rows": rows}), config.output_path)
    else:
        _emit(_csv(rows, SHARPNESS_COLUMNS), config.output_path)
    return EXIT_OK


def cmd_table(args) -> int:
    config = _config(args)
    fid = _functional(args.functional, args.c)
    grid = parse_r_grid(args.grid)
    m = load_mapping_spec(args.mapping, config.truncation_order)
    rows = []
    for r in grid:
        enc = fn.evaluate(fid, m, r)
        rows.append({"r": r, "value_lo": enc.lo, "value_hi": enc.hi, "verdict": enc.verdict()})
    if config.output_format == "json":
        _emit(_json({"functional": fid.tag, "rows": rows}), config.output_path)
    else:
        _emit(_csv(rows, TABLE_COLUMNS), config.output_path)
    return EXIT_OK


def cmd_area(args) -> int:
    config = _config(args)
    if not 0.0 < args.r < 1.0:
        raise UsageError("r must lie in (0, 1)")
    m = load_mapping_spec(args.mapping, config.truncation_order)
    enc = area_series(m, args.r)
    quad = area_quadrature(m, args.r, args.resolution)
    out = {"r": args.r, "series": enc.to_json(), "quadrature": quad,
           "abs_diff": abs(enc.mid - quad)}
    if config.output_format == "json":
        _emit(_json(out), config.output_path)
    else:
        row = {"r": args.r, "series_lo": enc.lo, "series_hi": enc.hi, "quadrature": quad, "abs_diff": out["abs_diff"]}
        _emit(_csv([row], list(row)), config.output_path)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=256, help="truncation order (>= 16)")
    common.add_argument("--tol", type=float, default=1e-12, help="comparison tolerance")
    common.add_argument("--seed", type=int, default=0, help="corpus seed")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="bohrharm", description="Bohr-type inequalities for harmonic mappings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a claim suite")
    p.add_argument("suite", choices=SUITES)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("radius", parents=[common], help="solve for a sharp radius or constant")
    p.add_argument("which", help="thm4, prop1, K or empirical:<functional>")
    p.add_argument("--a-steps", type=int, default=20)
    p.add_argument("--lambda-grid", default="phases=16;moduli=0.9,0.99,0.999,1")
    p.add_argument("--r-tol", type=float, default=1e-6)
    p.add_argument("--c", type=float, default=None, help="override the functional's constant")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("sharpness", parents=[common], help="scan a functional over an extremal family")
    p.add_argument("functional", choices=fn.TAGS)
    p.add_argument("--c", type=float, default=None, help="override the functional's constant")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--a-steps", type=int, default=10)
    p.add_argument("--lambda-grid", default="phases=1;moduli=1")
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("table", parents=[common], help="tabulate a functional over r")
    p.add_argument("functional", choices=fn.TAGS)
    p.add_argument("mapping", help="mapping JSON, inline or a file path")
    p.add_argument("--grid", required=True, help="start:stop:step, stop included")
    p.add_argument("--c", type=float, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("area", parents=[common], help="area functional by series and by quadrature")
    p.add_argument("mapping", help="mapping JSON, inline or a file path")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--resolution", type=int, default=512)
    p.set_defaults(func=cmd_area)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
