"""Command line front end.

Subcommands::

    machinlike generate      --k N [--precision P] [--out PATH] [--allow-huge]
    machinlike compute-pi    (--k N [--u2-file PATH] | --fixture NAME | --formula PATH)
                             [--terms M] [--precision P] [--out PATH] [--exact-coeffs]
    machinlike measure       (--k N | --fixture NAME | --formula PATH) [--allow-huge]
    machinlike verify        --k N [--precision P] [--allow-huge]
    machinlike error-curve   [--series fast|euler] [--terms M] [--samples N]
                             [--x-min X] [--x-max X] [--out PATH]
    machinlike measure-sweep [--k-max N] [--out PATH]

Every command prints a JSON summary to stdout; bulk artifacts (digit
files, CSV tables) go to --out.  Exit codes: 0 success, 2 usage, 3 I/O,
4 domain or parse failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from . import formulas, series, squaring, trigcheck
from .errors import (
    ConsistencyError,
    DegenerateFormulaError,
    DomainError,
    FormulaParseError,
    PrecisionError,
    UsageError,
    VerificationFailure,
)
from .exactmath import (
    coinciding_digits,
    digits_prefix,
    int_digit_count,
    int_log10,
    rational_log10_abs,
    working_context,
)
from .radical import u1_of_k
from .squaring import DESK_SCALE_MAX_K

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DOMAIN = 4
EXIT_VERIFY = 5


@dataclass
class RunConfig:
    """Validated bundle of options for one invocation."""

    command: str
    k: int | None = None
    precision: int = 100
    terms: int | None = None
    out: str | None = None
    formula: str | None = None
    fixture: str | None = None
    u2_file: str | None = None
    series: str = "fast"
    samples: int = 41
    x_min: Fraction | None = None
    x_max: Fraction | None = None
    k_max: int = 16
    allow_huge: bool = False
    exact_coeffs: bool = False

    def __post_init__(self):
        if self.k is not None and not 2 <= self.k <= 64:
            raise UsageError(f"--k must be in 2..64, got {self.k}")
        if self.precision < 20:
            raise UsageError(f"--precision must be >= 20, got {self.precision}")
        if self.terms is not None and self.terms < 1:
            raise UsageError(f"--terms must be >= 1, got {self.terms}")


def _parse_fraction_arg(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag} expects a rational like -1/1000000 or 1e-6: {exc}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="machinlike",
        description="two-term arctangent formula generation, measurement, "
                    "and verification")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, k=False, precision=False, terms=False, out=False,
               formula=False, allow_huge=False, exact_coeffs=False):
        if k:
            p.add_argument("--k", type=int, help="ladder index, 2..64")
        if precision:
            p.add_argument("--precision", type=int, default=100,
                           help="decimal digits (default 100)")
        if terms:
            p.add_argument("--terms", type=int, help="series truncation order")
        if out:
            p.add_argument("--out", help="output file path")
        if formula:
            p.add_argument("--formula", help="formula file to load")
            p.add_argument("--fixture", help="named built-in formula")
        if allow_huge:
            p.add_argument("--allow-huge", action="store_true",
                           help="lift the k <= 20 desk-scale cap")
        if exact_coeffs:
            p.add_argument("--exact-coeffs", action="store_true",
                           help="exact rational coefficients on the closing branch")

    p = sub.add_parser("generate", help="derive the pair (u1, u2) at index k")
    common(p, k=True, precision=True, out=True, allow_huge=True)

    p = sub.add_parser("compute-pi", help="evaluate pi from a formula")
    common(p, k=True, precision=True, terms=True, out=True, formula=True,
           exact_coeffs=True)
    p.add_argument("--u2-file", help="reload a generated closing cotangent")

    p = sub.add_parser("measure", help="digits-per-term measure of a formula")
    common(p, k=True, formula=True, allow_huge=True)

    p = sub.add_parser("verify", help="independent cross-checks at index k")
    common(p, k=True, precision=True, allow_huge=True)

    p = sub.add_parser("error-curve", help="truncation error over an interval")
    common(p, terms=True, out=True)
    p.add_argument("--series", choices=("fast", "euler"), default="fast")
    p.add_argument("--samples", type=int, default=41)
    p.add_argument("--x-min", default="-1/1000000")
    p.add_argument("--x-max", default="1/1000000")

    p = sub.add_parser("measure-sweep", help="measure vs k table")
    common(p, out=True)
    p.add_argument("--k-max", type=int, default=16)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        k=getattr(args, "k", None),
        precision=getattr(args, "precision", 100),
        terms=getattr(args, "terms", None),
        out=getattr(args, "out", None),
        formula=getattr(args, "formula", None),
        fixture=getattr(args, "fixture", None),
        u2_file=getattr(args, "u2_file", None),
        series=getattr(args, "series", "fast"),
        samples=getattr(args, "samples", 41),
        k_max=getattr(args, "k_max", 16),
        allow_huge=getattr(args, "allow_huge", False),
        exact_coeffs=getattr(args, "exact_coeffs", False),
    )
    if args.command == "error-curve":
        cfg.x_min = _parse_fraction_arg(args.x_min, "--x-min")
        cfg.x_max = _parse_fraction_arg(args.x_max, "--x-max")
    return cfg


def _require_k(cfg: RunConfig) -> int:
    if cfg.k is None:
        raise UsageError(f"{cfg.command} requires --k")
    return cfg.k


def _check_desk_scale(cfg: RunConfig) -> None:
    if cfg.k is not None and cfg.k > DESK_SCALE_MAX_K and not cfg.allow_huge:
        raise UsageError(
            f"--k {cfg.k} exceeds the desk-scale cap {DESK_SCALE_MAX_K}; "
            f"pass --allow-huge to proceed (expect long integer runtimes)")


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_generate(cfg: RunConfig) -> int:
    k = _require_k(cfg)
    _check_desk_scale(cfg)
    u1 = u1_of_k(k)
    u2 = squaring.u2_of(u1, k, allow_huge=cfg.allow_huge)
    out = cfg.out or f"u2-k{k}.txt"
    squaring.write_fraction_file(out, u2)

    formula = formulas.two_term_formula(k, allow_huge=cfg.allow_huge, u2_value=u2)
    report = formulas.lehmer_measure(formula)
    check = formulas.validate_formula(formula, cfg.precision)

    num_digits = int_digit_count(u2.numerator)
    den_digits = int_digit_count(u2.denominator)
    payload = {
        "k": k,
        "u1": u1,
        "u2_num_digits": num_digits,
        "u2_den_digits": den_digits,
        "e": str(report.e),
        "valid": check.valid,
        "residual": str(check.residual),
        "validation_precision": check.precision,
        "out": out,
    }
    if num_digits + den_digits <= 60:
        payload["u2"] = f"{u2.numerator}/{u2.denominator}"
    _emit(payload)
    return EXIT_OK if check.valid else EXIT_VERIFY


def _load_formula(cfg: RunConfig) -> formulas.MachinFormula:
    if cfg.fixture is not None and cfg.formula is not None:
        raise UsageError("--fixture and --formula are mutually exclusive")
    if cfg.fixture is not None:
        table = formulas.fixtures()
        if cfg.fixture not in table:
            raise UsageError(
                f"unknown fixture {cfg.fixture!r}; known: {', '.join(sorted(table))}")
        return table[cfg.fixture]
    if cfg.formula is not None:
        return formulas.parse_formula_file(cfg.formula)
    raise UsageError(f"{cfg.command} needs --k, --fixture, or --formula")


def _auto_terms(formula: formulas.MachinFormula, precision: int) -> int:
    """Truncation order that clears `precision` digits on every branch.

    The series argument is x = 1/beta, so the digits-per-term rate is
    log10((p^2 + 4q^2)/p^2) with p = beta.denominator, q = beta.numerator.
    """
    worst = 1
    for _, beta in formula.terms:
        psq = beta.denominator * beta.denominator
        s = psq + 4 * beta.numerator * beta.numerator
        rate = float(rational_log10_abs(Fraction(s, psq), 20))
        worst = max(worst, int((precision + 12) / rate) + 2)
    return worst


def cmd_compute_pi(cfg: RunConfig) -> int:
    precision = cfg.precision
    eval_digits = precision + 8
    if cfg.k is not None:
        k = cfg.k
        _check_desk_scale(cfg)
        u1 = u1_of_k(k)
        if cfg.u2_file is not None:
            u2 = squaring.read_fraction_file(cfg.u2_file)
        else:
            u2 = squaring.u2_of(u1, k, allow_huge=cfg.allow_huge)
        formula = formulas.two_term_formula(k, allow_huge=cfg.allow_huge, u2_value=u2)
        terms = cfg.terms or _auto_terms(formula, precision)
        value = series.pi_two_term(k, u1, u2, terms, eval_digits,
                                   exact_coeffs=cfg.exact_coeffs)
        source = f"two-term-k{k}"
    else:
        formula = _load_formula(cfg)
        terms = cfg.terms or _auto_terms(formula, precision)
        work = eval_digits + 5
        with working_context(work):
            total = Decimal(0)
            for coeff, beta in formula.terms:
                total += coeff * series.arctan_fast(1 / beta, terms, work)
            value = +(4 * total)
        source = formula.name or "formula"

    reference = series.reference_pi(precision)
    matched = coinciding_digits(value, reference)
    payload = {
        "source": source,
        "terms": terms,
        "precision": precision,
        "pi_prefix": digits_prefix(value, 30),
        "coinciding_digits": matched,
    }
    if cfg.out:
        text = digits_prefix(value, precision + 1)
        with open(cfg.out, "w", encoding="ascii") as fh:
            fh.write("3." + text[1:] + "\n")
        payload["out"] = cfg.out
    _emit(payload)
    return EXIT_OK


def cmd_measure(cfg: RunConfig) -> int:
    if cfg.k is not None:
        k = cfg.k
        if k <= DESK_SCALE_MAX_K or cfg.allow_huge:
            u2 = squaring.u2_of(u1_of_k(k), k, allow_huge=cfg.allow_huge)
            formula = formulas.two_term_formula(k, allow_huge=cfg.allow_huge,
                                                u2_value=u2)
            path = "exact"
        else:
            u1 = u1_of_k(k)
            trig = trigcheck.u2_trig(u1, k, 40)
            sign = -1 if trig < 0 else 1
            stand_in = formulas.MagnitudeOnly(sign=sign, magnitude=abs(trig))
            formula = formulas.two_term_formula(k, u2_value=stand_in)
            path = "magnitude"
    else:
        formula = _load_formula(cfg)
        path = "exact"
    report = formulas.lehmer_measure(formula)
    contributions = [
        {"coefficient": coeff, "inverse_log10_cotangent": str(contrib)}
        for (coeff, _), contrib in zip(formula.terms, report.contributions)
    ]
    _emit({
        "formula": formula.name or "formula",
        "e": str(report.e),
        "path": path,
        "contributions": contributions,
    })
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    k = _require_k(cfg)
    _check_desk_scale(cfg)
    result = trigcheck.verify_k(k, precision=cfg.precision,
                                allow_huge=cfg.allow_huge)
    _emit(result.to_json_dict())
    if not result.ok:
        print(f"verification failed at k={k}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_error_curve(cfg: RunConfig) -> int:
    if cfg.samples < 3:
        raise UsageError(f"--samples must be >= 3, got {cfg.samples}")
    terms = cfg.terms or 10
    x_min, x_max = cfg.x_min, cfg.x_max
    if x_min >= x_max:
        raise UsageError("--x-min must be below --x-max")
    step = Fraction(x_max - x_min, cfg.samples - 1)
    out = cfg.out or f"error-curve-{cfg.series}.csv"
    rows = []
    for i in range(cfg.samples):
        x = x_min + i * step
        err = series.series_error(x, terms, series=cfg.series)
        rows.append((x, err))
    with open(out, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "abs_error"])
        for x, err in rows:
            # Decimal zero formats with a stray exponent; pin it by hand
            text = "0.00000E+00" if err == 0 else f"{err:.5E}"
            writer.writerow([f"{float(x):.6E}", text])
    peak = max(rows, key=lambda pair: pair[1])
    _emit({
        "series": cfg.series,
        "terms": terms,
        "samples": cfg.samples,
        "x_min": str(x_min),
        "x_max": str(x_max),
        "peak_error": f"{peak[1]:.5E}",
        "out": out,
    })
    return EXIT_OK


def cmd_measure_sweep(cfg: RunConfig) -> int:
    if cfg.k_max < 2:
        raise UsageError(f"--k-max must be >= 2, got {cfg.k_max}")
    out = cfg.out or "measure-sweep.csv"
    rows = []
    exact_top = min(cfg.k_max, DESK_SCALE_MAX_K)
    with working_context(40):
        for k in range(2, cfg.k_max + 1):
            u1 = u1_of_k(k)
            if k <= exact_top:
                # magnitude needs no reduction; skip the giant gcd
                num, den = squaring.u2_parts(u1, k, allow_huge=True)
                log_u2 = int_log10(abs(num)) - int_log10(den)
                path = "exact"
            else:
                trig = trigcheck.u2_trig(u1, k, 40)
                log_u2 = abs(trig).log10()
                path = "magnitude"
            e = 1 / Decimal(u1).log10() + 1 / log_u2
            rows.append((k, u1, +e, path))
    with open(out, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "u1", "e", "path"])
        for k, u1, e, path in rows:
            writer.writerow([k, u1, f"{e:.6f}", path])
    _emit({
        "k_max": cfg.k_max,
        "rows": len(rows),
        "e_first": f"{rows[0][2]:.6f}",
        "e_last": f"{rows[-1][2]:.6f}",
        "out": out,
    })
    return EXIT_OK


_DISPATCH = {
    "generate": cmd_generate,
    "compute-pi": cmd_compute_pi,
    "measure": cmd_measure,
    "verify": cmd_verify,
    "error-curve": cmd_error_curve,
    "measure-sweep": cmd_measure_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _config_from_args(args)
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormulaParseError, DomainError, DegenerateFormulaError,
            PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (VerificationFailure, ConsistencyError) as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
