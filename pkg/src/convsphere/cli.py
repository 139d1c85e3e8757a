"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad arguments, 3 internal error.
Exact coefficients are printed as ``a/b·pi^k`` next to a decimal rendering.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal

from . import exact, grid, montecarlo, paradox

ENGINES = ("exact", "closed", "gamma", "grid", "mc")
FORMATS = ("text", "csv", "json")
SEED_ENV = "CONVSPHERE_SEED"

GRID_TOLERANCE = 1e-2
Z_LIMIT = 4.0


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    results: dict
    engine: str = "exact"
    passed: bool = field(default=True, repr=False)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "engine": self.engine,
            "inputs": self.inputs,
            "results": self.results,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=False, indent=2)


def fmt_decimal(x, digits: int = 10) -> str:
    """Round a float or Decimal to ``digits`` significant digits (half-even)."""
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        x = Decimal(repr(x))
    return str(Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(Decimal(x)))


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        seed = int(raw, 0)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None
    if not 0 <= seed < 1 << 64:
        raise UsageError(f"{SEED_ENV} must fit in an unsigned 64-bit integer")
    return seed


# -- commands -----------------------------------------------------------------


def cmd_volume(n, r="1", engine="exact", precision=10, cells=4096, samples=10**6, seed=0):
    if engine not in ENGINES:
        raise UsageError(f"unknown engine {engine!r}")
    radius = Decimal(str(r))
    if not radius.is_finite() or radius < 0:
        raise UsageError(f"radius must be a non-negative number, got {r}")
    inputs = {"n": n, "r": str(r), "precision": precision}
    results = {}
    if engine in ("exact", "closed", "gamma"):
        fn = {
            "exact": exact.unit_volume_exact,
            "closed": exact.unit_volume_closed,
            "gamma": exact.unit_volume_gamma,
        }[engine]
        c = fn(n)
        results["C"] = str(c)
        results["C_value"] = str(c.to_decimal(precision))
        results["value"] = str(exact.evaluate_scaled(c, radius, n, precision))
    else:
        if engine == "grid":
            inputs["cells"] = cells
            p = grid.mass_below_one(grid.pdf_numeric(n, cells))
        else:
            inputs.update(samples=samples, seed=seed)
            est = montecarlo.estimate_p_hyper(n, samples, seed)
            p = est.p_hat
            results["std_err"] = fmt_decimal(est.std_err * 2**n, precision)
        c_value = p * 2**n
        results["C_value"] = fmt_decimal(c_value, precision)
        results["value"] = fmt_decimal(c_value * float(radius) ** n, precision)
    return OutputRecord("volume", inputs, results, engine)


def table_rows(n_max: int, precision: int = 10) -> list[dict]:
    rows = []
    for n in range(2, n_max + 1):
        c = exact.unit_volume_exact(n)
        rows.append({
            "n": n,
            "C_n": str(c),
            "value": str(c.to_decimal(precision)),
            "V_n": f"{c}·r^{n}",
        })
    return rows


def cmd_table(n_max, precision=10):
    if n_max < 2:
        raise UsageError("--n-max must be at least 2")
    rows = table_rows(n_max, precision)
    return OutputRecord("table", {"n_max": n_max, "precision": precision}, {"rows": rows})


def cmd_pdf(n, precision=10):
    pdf = exact.pdf_first_part(n)
    mass = pdf.mass()
    return OutputRecord("pdf", {"n": n}, {
        "coeff": str(pdf.coeff),
        "coeff_value": str(pdf.coeff.to_decimal(precision)),
        "exponent": str(pdf.exponent),
        "domain": "0 <= z <= 1",
        "mass": str(mass),
        "mass_value": str(mass.to_decimal(precision)),
    })


def cmd_check(n_max, cells=4096, samples=10**6, seed=0, precision=10):
    if n_max < 1:
        raise UsageError("--n-max must be at least 1")
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        p = exact.p_hyper(n)
        p_val = float(p)
        mass = grid.mass_below_one(grid.pdf_numeric(n, cells))
        rel = abs(mass - p_val) / p_val
        est = montecarlo.estimate_p_hyper(n, samples, seed)
        z = est.z_score(p_val)
        row_ok = rel <= GRID_TOLERANCE and abs(z) <= Z_LIMIT
        ok &= row_ok
        rows.append({
            "n": n,
            "p_hyper": str(p),
            "p_hyper_value": str(p.to_decimal(precision)),
            "grid_mass": fmt_decimal(mass, precision),
            "grid_rel_err": fmt_decimal(rel, 4),
            "mc_p_hat": fmt_decimal(est.p_hat, precision),
            "mc_std_err": fmt_decimal(est.std_err, 4),
            "mc_z": fmt_decimal(z, 4),
            "ok": row_ok,
        })
    inputs = {"n_max": n_max, "cells": cells, "samples": samples, "seed": seed}
    return OutputRecord("check", inputs, {"rows": rows, "passed": ok}, passed=ok)


def cmd_mc(n, samples=10**6, seed=0, coverage=False, workers=1, precision=10):
    inputs = {"n": n, "samples": samples, "seed": seed, "coverage": coverage}
    if coverage:
        est = montecarlo.estimate_coverage(n, samples, seed, workers=workers)
        results = {
            "inner_hits": est.inner_hits,
            "corner_hits": est.corner_hits,
            "frac_inner": fmt_decimal(est.frac_inner, precision),
            "frac_corner": fmt_decimal(est.frac_corner, precision),
            "frac_uncovered": fmt_decimal(est.frac_uncovered, precision),
        }
        return OutputRecord("mc", inputs, results, "mc")
    est = montecarlo.estimate_p_hyper(n, samples, seed, workers=workers)
    p = float(exact.p_hyper(n))
    results = {
        "hits": est.hits,
        "p_hat": fmt_decimal(est.p_hat, precision),
        "std_err": fmt_decimal(est.std_err, precision),
        "p_hyper": str(exact.p_hyper(n)),
        "z": fmt_decimal(est.z_score(p), 4),
    }
    return OutputRecord("mc", inputs, results, "mc")


def cmd_paradox(n, with_mc=False, samples=10**6, seed=0, precision=10):
    rep = paradox.analyze(n)
    results = {}
    for key, value in rep.as_dict().items():
        if key == "n":
            continue
        results[key] = fmt_decimal(value, precision) if isinstance(value, float) else value
    inputs = {"n": n, "with_mc": with_mc}
    passed = True
    if with_mc:
        inputs.update(samples=samples, seed=seed)
        cov = montecarlo.estimate_coverage(n, samples, seed)
        se = cov.std_err(rep.frac_corner_exact)
        z = (cov.frac_corner - rep.frac_corner_exact) / se
        passed = abs(z) <= Z_LIMIT
        results.update(
            mc_frac_inner=fmt_decimal(cov.frac_inner, precision),
            mc_frac_corner=fmt_decimal(cov.frac_corner, precision),
            mc_frac_uncovered=fmt_decimal(cov.frac_uncovered, precision),
            mc_corner_z=fmt_decimal(z, 4),
        )
    return OutputRecord("paradox", inputs, results, passed=passed)


# -- rendering ----------------------------------------------------------------


def _flat_rows(record: OutputRecord) -> list[dict]:
    if "rows" in record.results:
        return record.results["rows"]
    return [{"key": k, "value": v} for k, v in record.results.items()]


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(record: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return record.to_json() + "\n"
    rows = _flat_rows(record)
    header = list(rows[0]) if rows else ["key", "value"]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row[h]) for h in header])
        return buf.getvalue()
    if fmt == "text":
        table = [header] + [[_cell(row[h]) for h in header] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table]
        return "\n".join(lines) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


# -- argument parsing ---------------------------------------------------------


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convsphere",
        description="Hypersphere volumes from convolved densities of squared uniforms.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--precision", type=_positive_int, default=10,
                        help="significant digits of decimal output (default 10)")
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=_positive_int, default=10**6)
    sampling.add_argument("--seed", type=_seed, default=None,
                          help=f"generator seed (default ${SEED_ENV} or 0)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common, sampling], help="V_n(r) with a chosen engine")
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("-r", default="1")
    p.add_argument("--engine", choices=ENGINES, default="exact")
    p.add_argument("--cells", type=_positive_int, default=4096)

    p = sub.add_parser("table", parents=[common], help="C_n for n = 2..n_max")
    p.add_argument("--n-max", type=int, default=6)

    p = sub.add_parser("pdf", parents=[common], help="first part of p_n on [0, 1]")
    p.add_argument("-n", type=_positive_int, required=True)

    p = sub.add_parser("check", parents=[common, sampling], help="exact vs grid vs Monte Carlo")
    p.add_argument("--n-max", type=_positive_int, default=6)
    p.add_argument("--cells", type=_positive_int, default=4096)

    p = sub.add_parser("mc", parents=[common, sampling], help="Monte Carlo estimates")
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("--coverage", action="store_true",
                   help="corner/inner coverage of [-2, 2]^n instead of the unit ball")
    p.add_argument("--workers", type=_positive_int, default=1)

    p = sub.add_parser("paradox", parents=[common, sampling], help="inner-sphere construction")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--with-mc", action="store_true")
    return parser


def dispatch(args) -> OutputRecord:
    seed = getattr(args, "seed", None)
    if seed is None and hasattr(args, "seed"):
        seed = _default_seed()
    prec = args.precision
    if args.command == "volume":
        return cmd_volume(args.n, args.r, args.engine, prec, args.cells, args.samples, seed)
    if args.command == "table":
        return cmd_table(args.n_max, prec)
    if args.command == "pdf":
        return cmd_pdf(args.n, prec)
    if args.command == "check":
        return cmd_check(args.n_max, args.cells, args.samples, seed, prec)
    if args.command == "mc":
        return cmd_mc(args.n, args.samples, seed, args.coverage, args.workers, prec)
    if args.command == "paradox":
        return cmd_paradox(args.n, args.with_mc, args.samples, seed, prec)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        record = dispatch(args)
        out = render(record, args.format)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"convsphere: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # engine failure
        print(f"convsphere: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(out)
    if not record.passed:
        print(f"convsphere: {record.command} failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
