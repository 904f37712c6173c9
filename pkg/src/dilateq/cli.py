"""Command-line front end: every operation as a subcommand with JSON/CSV output.

Exit codes: 0 success, 2 input validation, 3 domain violation (interpolation,
coverage, boundary zeros), 4 numerical non-convergence.  All floats are
printed with 17 significant digits and JSON keys are emitted in a fixed
order, so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import coefficients, expsums, extension, periodicity
from .errors import DomainViolation, InvalidInput, Nonconvergence

#: fixed default seed; reserved for sampled diagnostics, recorded for reproducibility
DEFAULT_SEED = 1729


@dataclass
class RunConfig:
    subcommand: str
    out: str | None
    tol: float | None
    seed: int


# -- serialization -------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    raise TypeError(f"cannot format {type(x)!r}")


def to_json(obj) -> str:
    """Minimal JSON emitter with deterministic 17-digit float formatting."""
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    return _fmt(obj)


def _csv(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(format(float(v), ".17g") for v in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    # output is built in full before this point: a validation failure can
    # never leave a partial file behind
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- input parsing -------------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def _number_list(obj, what: str) -> list[float]:
    if not isinstance(obj, list) or not all(isinstance(v, (int, float)) for v in obj):
        raise InvalidInput(f"{what} must be a JSON array of numbers")
    return [float(v) for v in obj]


def _parse_vector(text: str, what: str) -> list[float]:
    """A vector given inline as a JSON array or as a path to a JSON file."""
    if text.lstrip().startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"inline {what} is not valid JSON: {exc}") from exc
    else:
        obj = _read_json(text)
    return _number_list(obj, what)


def _read_boundary(path: str) -> extension.PiecewiseLinear:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "breakpoints" not in obj or "values" not in obj:
        raise InvalidInput(f"{path} must be an object with 'breakpoints' and 'values'")
    return extension.PiecewiseLinear(
        _number_list(obj["breakpoints"], "breakpoints"),
        _number_list(obj["values"], "values"),
    )


def _shifts(text: str) -> coefficients.ShiftVector:
    return coefficients.ShiftVector(tuple(_parse_vector(text, "shifts")))


# -- subcommands ----------------------------------------------------------------

def _cmd_regularity(args, cfg: RunConfig) -> None:
    vec = coefficients.normalize(_parse_vector(args.coeffs, "coefficients"))
    ri = coefficients.regularity_index(vec)
    _emit(
        to_json(
            {
                "m": ri.m,
                "contraction": ri.contraction,
                "lower_bound": ri.lower_bound,
                "upper_bound": ri.upper_bound,
            }
        )
        + "\n",
        cfg.out,
    )


def _cmd_normalize(args, cfg: RunConfig) -> None:
    vec = coefficients.normalize(_parse_vector(args.coeffs, "coefficients"))
    shifts = coefficients.to_additive(vec)
    _emit(
        to_json({"entries": list(vec.entries), "shifts": list(shifts.entries)}) + "\n",
        cfg.out,
    )


def _extend_for_range(boundary, shifts, lo: float, hi: float, tol: float):
    b_n = shifts.largest
    target = (min(lo, 0.0), max(hi + b_n, b_n))
    return extension.extend(boundary, shifts, target, tol=tol)


def _cmd_extend(args, cfg: RunConfig) -> None:
    shifts = _shifts(args.shifts)
    boundary = _read_boundary(args.boundary)
    lo, hi = args.range
    if not lo < hi:
        raise InvalidInput("range must satisfy lo < hi")
    tol = cfg.tol if cfg.tol is not None else extension.INTERPOLATION_TOL
    sol = _extend_for_range(boundary, shifts, lo, hi, tol)
    w = np.linspace(lo, hi, args.samples)
    values = sol(w)
    report = {
        "interpolation_residual": extension.check_interpolation(boundary, shifts),
        "max_additive_residual": extension.residual_additive(sol, shifts, w),
    }
    _emit(_csv("w,value", zip(w, values)), cfg.out)
    sys.stderr.write(to_json(report) + "\n")


def _cmd_residual(args, cfg: RunConfig) -> None:
    if (args.shifts is None) == (args.coeffs is None):
        raise InvalidInput("give exactly one of --shifts or --coeffs")
    boundary = _read_boundary(args.boundary)
    lo, hi = args.range
    if not lo < hi:
        raise InvalidInput("range must satisfy lo < hi")
    tol = cfg.tol if cfg.tol is not None else extension.INTERPOLATION_TOL
    if args.shifts is not None:
        shifts = _shifts(args.shifts)
        sol = _extend_for_range(boundary, shifts, lo, hi, tol)
        grid = np.linspace(lo, hi, args.samples)
        value = extension.residual_additive(sol, shifts, grid)
    else:
        vec = coefficients.normalize(_parse_vector(args.coeffs, "coefficients"))
        shifts = coefficients.to_additive(vec)
        if lo <= 0.0:
            raise InvalidInput("multiplicative grid must be positive")
        sol = _extend_for_range(boundary, shifts, math.log(lo), math.log(hi), tol)
        grid = np.geomspace(lo, hi, args.samples)
        value = extension.residual_multiplicative(lambda x: sol(np.log(x)), vec, grid)
    _emit(
        to_json(
            {
                "max_residual": value,
                "interpolation_residual": extension.check_interpolation(boundary, shifts),
            }
        )
        + "\n",
        cfg.out,
    )


def _cmd_periodicity(args, cfg: RunConfig) -> None:
    shifts = _parse_vector(args.shifts, "shifts")
    tol = cfg.tol if cfg.tol is not None else periodicity.CERTIFICATE_TOL
    certs = periodicity.find_periodic_alphas(
        shifts, args.alpha_max, grid_step=args.grid_step, tol=tol
    )
    _emit(
        to_json(
            [
                {"alpha": c.alpha, "period": c.period, "residual": c.system_residual}
                for c in certs
            ]
        )
        + "\n",
        cfg.out,
    )


def _cmd_equispaced(args, cfg: RunConfig) -> None:
    alphas = periodicity.equispaced_alphas(args.n, args.d, args.m_max)
    _emit(to_json(alphas) + "\n", cfg.out)


def _cmd_two_term(args, cfg: RunConfig) -> None:
    verdict = periodicity.two_term_periodic_exists(args.p, args.q)
    witness = list(verdict.witness) if verdict.witness is not None else None
    _emit(to_json({"exists": verdict.exists, "witness": witness}) + "\n", cfg.out)


def _cmd_fourier_matrix(args, cfg: RunConfig) -> None:
    mat = periodicity.fourier_matrix(args.k, args.theta, _parse_vector(args.shifts, "shifts"))
    _emit(
        to_json({"entries": [list(r) for r in mat.entries], "det": mat.det}) + "\n",
        cfg.out,
    )


def _cmd_zeros(args, cfg: RunConfig) -> None:
    rect = expsums.SearchRectangle(
        args.re_min, args.re_max, args.im_min, args.im_max, args.grid_re, args.grid_im
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        zeros = expsums.find_zeros(args.n, rect)
    payload = to_json(
        [
            {"re": z.z.real, "im": z.z.imag, "residual": z.modulus_residual, "N": z.n}
            for z in zeros
        ]
    ) + "\n"
    scan_text = None
    if args.scan_csv:
        re, im, mod = expsums.scan_modulus(args.n, rect)
        rows = ((re[j], im[i], mod[i, j]) for i in range(im.size) for j in range(re.size))
        scan_text = _csv("re,im,abs", rows)
    _emit(payload, cfg.out)
    if scan_text is not None:
        Path(args.scan_csv).write_text(scan_text)
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")


def _cmd_mora_solution(args, cfg: RunConfig) -> None:
    alpha = complex(args.re, args.im)
    residual = abs(expsums.power_sum(args.n, alpha))
    if residual > expsums.ZERO_RESIDUAL_TOL:
        raise DomainViolation(
            f"{alpha} is not a zero: |sum| = {residual:.3g} exceeds "
            f"{expsums.ZERO_RESIDUAL_TOL:.0e}"
        )
    sol = expsums.solution_from_zero(
        expsums.ComplexZero(z=alpha, modulus_residual=residual, n=args.n)
    )
    lo, hi = args.range
    if not lo < hi:
        raise InvalidInput("range must satisfy lo < hi")
    x = np.linspace(lo, hi, args.samples)
    check = x[x < 0.0]
    if not sol.continuous_at_zero:
        check = check[np.abs(check) >= 0.01]
    report = {
        "continuous_at_zero": sol.continuous_at_zero,
        "equation_residual": expsums.residual_integer_equation(sol, args.n, check),
    }
    _emit(_csv("x,value", zip(x, sol(x))), cfg.out)
    sys.stderr.write(to_json(report) + "\n")


def _cmd_popoviciu(args, cfg: RunConfig) -> None:
    shifts = _shifts(args.shifts)
    boundary = _read_boundary(args.boundary)
    span = 2 * args.order * args.h
    lo, hi = min(args.x, args.x + span), max(args.x, args.x + span)
    tol = cfg.tol if cfg.tol is not None else extension.INTERPOLATION_TOL
    sol = extension.extend(
        boundary, shifts, (min(lo, 0.0), max(hi, shifts.largest)), tol=tol
    )
    det = extension.popoviciu_determinant(sol, args.x, args.h, args.order)
    _emit(to_json({"det": det}) + "\n", cfg.out)


# -- parser ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--tol", type=float, help="override the subcommand's tolerance")
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="RNG seed (reserved, recorded)"
    )

    parser = argparse.ArgumentParser(
        prog="dilateq",
        description="Solutions of f(x) + f(a1 x) + ... + f(aN x) = 0 from the shell.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("regularity", parents=[common], help="regularity index and bounds")
    p.add_argument("coeffs", help="JSON array of dilation factors (inline or path)")
    p.set_defaults(func=_cmd_regularity)

    p = sub.add_parser("normalize", parents=[common], help="canonical coefficient form")
    p.add_argument("coeffs")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("extend", parents=[common], help="extend boundary data, dump CSV")
    p.add_argument("boundary", help="JSON file with breakpoints/values on [0, bN]")
    p.add_argument("--shifts", required=True, help="JSON array of shifts (inline or path)")
    p.add_argument("--range", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    p.add_argument("--samples", type=int, default=1001)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("residual", parents=[common], help="max equation residual on a grid")
    p.add_argument("--boundary", required=True)
    p.add_argument("--shifts", help="additive form: JSON array of shifts")
    p.add_argument("--coeffs", help="multiplicative form: JSON array of factors")
    p.add_argument("--range", nargs=2, type=float, required=True, metavar=("LO", "HI"))
    p.add_argument("--samples", type=int, default=10001)
    p.set_defaults(func=_cmd_residual)

    p = sub.add_parser("periodicity", parents=[common], help="periodic-solution certificates")
    p.add_argument("--shifts", required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--grid-step", type=float, default=None)
    p.set_defaults(func=_cmd_periodicity)

    p = sub.add_parser("equispaced", parents=[common], help="closed-form frequencies")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=_cmd_equispaced)

    p = sub.add_parser("two-term", parents=[common], help="two-shift rational criterion")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_two_term)

    p = sub.add_parser("fourier-matrix", parents=[common], help="harmonic coupling matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--shifts", required=True)
    p.set_defaults(func=_cmd_fourier_matrix)

    p = sub.add_parser("zeros", parents=[common], help="zeros of 1 + 2^z + ... + N^z")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--re-min", type=float, default=-3.0)
    p.add_argument("--re-max", type=float, default=2.0)
    p.add_argument("--im-min", type=float, default=0.0)
    p.add_argument("--im-max", type=float, default=30.0)
    p.add_argument("--grid-re", type=int, default=61)
    p.add_argument("--grid-im", type=int, default=241)
    p.add_argument("--scan-csv", help="also dump |sum| on the scan grid to this CSV")
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("mora-solution", parents=[common], help="one-sided power solution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--re", type=float, required=True, help="real part of the zero")
    p.add_argument("--im", type=float, required=True, help="imaginary part of the zero")
    p.add_argument("--range", nargs=2, type=float, default=(-5.0, 5.0), metavar=("LO", "HI"))
    p.add_argument("--samples", type=int, default=1001)
    p.set_defaults(func=_cmd_mora_solution)

    p = sub.add_parser("popoviciu", parents=[common], help="Hankel determinant of an extension")
    p.add_argument("--boundary", required=True)
    p.add_argument("--shifts", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_popoviciu)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand, out=args.out, tol=args.tol, seed=args.seed
    )
    if cfg.tol is not None and not cfg.tol > 0.0:
        sys.stderr.write("error: --tol must be positive\n")
        return 2
    try:
        args.func(args, cfg)
    except InvalidInput as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DomainViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except Nonconvergence as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
