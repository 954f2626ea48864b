"""Command-line front end.

Subcommands
-----------
spectrum   energy levels versus coupling, CSV ``lambda,e1,e2,e3,e4``
curve      heat capacity / concurrence curves, CSV ``beta,nu,concurrence,lambda,c_v``
protocol   recover the coupling from a scenario file, JSON report
bounds     separable bounds versus coupling, CSV ``lambda,e_b,c_v_b,branch,c_v,violated``

Exit codes: 0 success (or UNIQUE for ``protocol``), 1 usage or scenario
error, 2 AMBIGUOUS, 3 EMPTY.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .bounds import check_separable_inequality, heat_capacity_bound
from .entanglement import _pre_concurrence
from .inversion import cv_of_nu_curve, nu_domain
from .model import ModelParams, ThermalContext, _heat_capacity, spectrum
from .protocol import Status
from .scenario import load_scenario, report_dict, run_scenario

FIG1_BETAS = (0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 12.0)
NU_MARGIN = 1e-6
EXIT_OK, EXIT_USAGE, EXIT_AMBIGUOUS, EXIT_EMPTY = 0, 1, 2, 3
_STATUS_EXIT = {Status.UNIQUE: EXIT_OK, Status.AMBIGUOUS: EXIT_AMBIGUOUS, Status.EMPTY: EXIT_EMPTY}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which the protocol reserves for AMBIGUOUS
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """Fixed 9-significant-digit, locale-independent number formatting."""
    s = format(float(x), ".9g")
    return "0" if s == "-0" else s


def parse_range(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"malformed range {text!r}; expected LO,HI") from None
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise UsageError(f"malformed range {text!r}; need finite LO < HI")
    return lo, hi


def parse_floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"malformed list {text!r}; expected comma-separated numbers") from None
    return vals


@contextlib.contextmanager
def _sink(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None or path == "-":
        yield sys.stdout
        return
    buf = io.StringIO()
    yield buf
    Path(path).write_text(buf.getvalue(), newline="")


# --- row generators ---------------------------------------------------------


def spectrum_rows(lo: float, hi: float, h: float, steps: int) -> Iterator[str]:
    if steps < 2:
        raise UsageError("steps must be >= 2")
    yield "lambda,e1,e2,e3,e4"
    for lam in np.linspace(lo, hi, steps):
        e = spectrum(ModelParams(float(lam), h)).energies
        yield ",".join(fmt(v) for v in (lam, *e))


def curve_rows(
    mode: str,
    betas: Sequence[float],
    h: float,
    samples: int,
    lam_range: tuple[float, float] = (0.0, 5.0),
) -> Iterator[str]:
    if samples < 2:
        raise UsageError("samples must be >= 2")
    yield "beta,nu,concurrence,lambda,c_v"
    for beta in betas:
        ctx = ThermalContext(beta)
        if mode == "cv-vs-nu":
            nus = np.linspace(nu_domain(ctx, h).lower, 1.0 - NU_MARGIN, samples)
            lams, cvs = cv_of_nu_curve(nus, ctx, h)
        else:
            lams = np.linspace(*lam_range, samples)
            nus = _pre_concurrence(lams, h, beta)
            cvs = _heat_capacity(lams, h, beta)
        for nu, lam, cv in zip(nus, lams, cvs):
            yield ",".join(fmt(v) for v in (beta, nu, max(0.0, nu), lam, cv))


def bounds_rows(lo: float, hi: float, h: float, beta: float, steps: int) -> Iterator[str]:
    if steps < 2:
        raise UsageError("steps must be >= 2")
    yield "lambda,e_b,c_v_b,branch,c_v,violated"
    ctx = ThermalContext(beta)
    for lam in np.linspace(lo, hi, steps):
        p = ModelParams(float(lam), h)
        b = heat_capacity_bound(p, ctx)
        chk = check_separable_inequality(p, ctx)
        yield ",".join(
            [fmt(lam), fmt(b.e_b), fmt(b.c_v_b), b.branch.value, fmt(chk.c_v),
             "true" if chk.violated else "false"]
        )


# --- commands ---------------------------------------------------------------


def _write_lines(rows: Iterator[str], output: str | None) -> int:
    text = "".join(r + "\n" for r in rows)
    with _sink(output) as out:
        out.write(text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    lo, hi = parse_range(args.lambda_range)
    return _write_lines(spectrum_rows(lo, hi, args.h, args.steps), args.output)


def cmd_curve(args) -> int:
    betas = parse_floats(args.betas) if args.betas else FIG1_BETAS
    lam_range = parse_range(args.lambda_range)
    return _write_lines(curve_rows(args.mode, betas, args.h, args.samples, lam_range), args.output)


def cmd_bounds(args) -> int:
    lo, hi = parse_range(args.lambda_range)
    return _write_lines(bounds_rows(lo, hi, args.h, args.beta, args.steps), args.output)


def protocol_json(path: str | Path) -> tuple[str, Status]:
    sc = load_scenario(path)
    result, sim = run_scenario(sc)
    text = json.dumps(report_dict(sc, result, sim), indent=2, sort_keys=True) + "\n"
    return text, result.status


def cmd_protocol(args) -> int:
    text, status = protocol_json(args.scenario)
    with _sink(args.output) as out:
        out.write(text)
    return _STATUS_EXIT[status]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heatent", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--output", "-o", default=None, help="output path (default stdout)")
        sp.add_argument("--h", type=float, default=1.0, help="magnetic field (default 1)")

    sp = sub.add_parser("spectrum", help="energy levels versus coupling")
    common(sp)
    sp.add_argument("--lambda-range", default="-3,3", help="LO,HI (use --lambda-range=-3,3)")
    sp.add_argument("--steps", type=int, default=121)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("curve", help="heat capacity and concurrence curves")
    common(sp)
    sp.add_argument(
        "--mode", choices=("cv-vs-nu", "cv-vs-lambda", "conc-vs-lambda"), default="cv-vs-nu"
    )
    sp.add_argument("--betas", default=None, help="comma-separated; default is the 9-value set")
    sp.add_argument("--samples", type=int, default=201)
    sp.add_argument("--lambda-range", default="0,5", help="coupling range for *-vs-lambda modes")
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("protocol", help="recover the coupling from a scenario file")
    sp.add_argument("scenario", help="scenario JSON file")
    sp.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    sp.set_defaults(func=cmd_protocol)

    sp = sub.add_parser("bounds", help="separable bounds versus coupling")
    common(sp)
    sp.add_argument("--lambda-range", default="0,3", help="LO,HI")
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=31)
    sp.set_defaults(func=cmd_bounds)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    # ScenarioError, DomainError and UnsupportedRegimeError are ValueErrors
    except (UsageError, ValueError, OSError) as e:
        print(f"heatent {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
