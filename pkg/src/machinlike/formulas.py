"""Machin-like formulas as data: pi/4 = sum of coeff * atan(1/cotangent).

Carries the classic published formulas as fixtures, scores any formula by
Lehmer's measure (the labor proxy e = sum of 1/log10 |cotangent|), builds
the generated two-term pairs, and validates a formula numerically against
an independent pi.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from .errors import DomainError, FormulaParseError, PrecisionError
from .exactmath import (
    fraction_to_decimal,
    guard_digits,
    rational_log10_abs,
    round_sig,
    working_context,
)
from .radical import u1_of_k
from .squaring import u2_of
from . import series


@dataclass(frozen=True, slots=True)
class MagnitudeOnly:
    """Stand-in for a cotangent known only by sign and size.

    Lehmer's measure needs log10 |beta| and nothing else, so a term whose
    exact rational is too large to materialize can still be scored.
    """

    sign: int
    magnitude: Decimal

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise DomainError(f"sign must be -1 or 1, got {self.sign}")
        if not self.magnitude.is_finite() or self.magnitude <= 0:
            raise DomainError(f"magnitude must be a positive finite Decimal, got {self.magnitude}")


Cotangent = Fraction | MagnitudeOnly


@dataclass(frozen=True)
class MachinFormula:
    """Terms are (integer coefficient, cotangent) pairs."""

    terms: tuple[tuple[int, Cotangent], ...]
    name: str | None = None

    def __post_init__(self):
        normalized = []
        for index, (coeff, beta) in enumerate(self.terms, start=1):
            try:
                coeff = operator.index(coeff)
            except TypeError:
                raise DomainError(f"term {index}: coefficient must be an integer") from None
            if coeff == 0:
                raise DomainError(f"term {index}: zero coefficient")
            if not isinstance(beta, MagnitudeOnly):
                beta = Fraction(beta)
                size = abs(beta)
            else:
                size = beta.magnitude
            if size <= 1:
                raise DomainError(f"term {index}: |cotangent| must exceed 1, got {beta}")
            normalized.append((coeff, beta))
        if not normalized:
            raise DomainError("a formula needs at least one term")
        object.__setattr__(self, "terms", tuple(normalized))

    def exact(self) -> bool:
        """True when every cotangent is an exact rational."""
        return all(not isinstance(beta, MagnitudeOnly) for _, beta in self.terms)


@dataclass(frozen=True, slots=True)
class MeasureReport:
    """Lehmer's measure with its per-term breakdown.

    ``e`` is the 6-decimal rounding of the sum of ``contributions``;
    each contribution is 1/log10 |cotangent| for one term.
    """

    formula: str | None
    e: Decimal
    contributions: tuple[Decimal, ...]


@dataclass(frozen=True, slots=True)
class ValidationResult:
    valid: bool
    residual: Decimal
    precision: int


def lehmer_measure(formula: MachinFormula) -> MeasureReport:
    """Score a formula: smaller e means fewer series terms per digit."""
    contributions = []
    with working_context(40):
        for _, beta in formula.terms:
            if isinstance(beta, MagnitudeOnly):
                log = beta.magnitude.log10()
            else:
                log = rational_log10_abs(beta, 40)
            contributions.append(1 / log)
        total = sum(contributions)
    return MeasureReport(
        formula=formula.name,
        e=total.quantize(Decimal("0.000001")),
        contributions=tuple(contributions),
    )


def validate_formula(formula: MachinFormula, precision: int) -> ValidationResult:
    """Evaluate the formula's right side and compare against pi/4.

    The threshold |residual| < 10**-(precision - 5) leaves room for the
    evaluation's own rounding while catching any wrong formula, whose
    residual would be astronomically larger.
    """
    if precision < 20:
        raise PrecisionError(f"validation precision must be >= 20, got {precision}")
    if not formula.exact():
        raise DomainError("cannot validate a formula with magnitude-only terms")
    work = precision + guard_digits()
    with working_context(work):
        total = Decimal(0)
        for coeff, beta in formula.terms:
            total += coeff * series.arctan_auto(1 / beta, work)
        residual = total - series.reference_pi(work) / 4
    threshold = Decimal(1).scaleb(-(precision - 5))
    return ValidationResult(
        valid=abs(residual) < threshold,
        residual=round_sig(residual, 10) if residual else Decimal(0),
        precision=precision,
    )


def two_term_formula(k: int, allow_huge: bool = False,
                     u2_value: Cotangent | None = None) -> MachinFormula:
    """The generated pair at depth k: 2**(k-1) atan(1/u1) + atan(1/u2).

    Pass ``u2_value`` (exact or magnitude-only) to reuse a known closing
    cotangent instead of recomputing it.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    u1 = u1_of_k(k)
    if u2_value is None:
        u2_value = u2_of(u1, k, allow_huge)
    return MachinFormula(
        terms=((2 ** (k - 1), Fraction(u1)), (1, u2_value)),
        name=f"two-term-k{k}",
    )


def fixtures() -> dict[str, MachinFormula]:
    """Published formulas with known measures, keyed by short name.

    machin-1706 is the classic 4 atan(1/5) - atan(1/239); the kanada pair
    is the self-check duo behind the 2002 trillion-digit run; lehmer-3term
    held the record measure of its era (its third cotangent is rational);
    chienlih-6term is a modern low-measure six-term identity.
    """
    return {
        "machin-1706": MachinFormula(
            ((4, Fraction(5)), (-1, Fraction(239))), name="machin-1706"),
        "kanada-a": MachinFormula(
            ((44, Fraction(57)), (7, Fraction(239)),
             (-12, Fraction(682)), (24, Fraction(12943))), name="kanada-a"),
        "kanada-b": MachinFormula(
            ((12, Fraction(49)), (32, Fraction(57)),
             (-5, Fraction(239)), (12, Fraction(110443))), name="kanada-b"),
        "lehmer-3term": MachinFormula(
            ((22, Fraction(26)), (-2, Fraction(2057)),
             (-5, Fraction(3240647, 38479))), name="lehmer-3term"),
        "chienlih-6term": MachinFormula(
            ((183, Fraction(239)), (32, Fraction(1023)), (-68, Fraction(5832)),
             (12, Fraction(110443)), (-12, Fraction(4841182)),
             (-100, Fraction(6826318))), name="chienlih-6term"),
    }


_TERM_RE = re.compile(r"([+-]?\d+)\s*\*\s*atan\(\s*([+-]?\d+)\s*/\s*(\d+)\s*\)")


def format_formula(formula: MachinFormula) -> str:
    """One ``coeff * atan(num/den)`` per line; the argument is 1/cotangent."""
    if not formula.exact():
        raise DomainError("cannot serialize a formula with magnitude-only terms")
    lines = []
    for coeff, beta in formula.terms:
        arg = 1 / beta
        lines.append(f"{coeff} * atan({arg.numerator}/{arg.denominator})")
    return "\n".join(lines) + "\n"


def parse_formula_file(path) -> MachinFormula:
    """Parse a formula file written by format_formula.

    '#' comments and blank lines are ignored.  Bad lines are reported by
    number; cotangent domain violations surface with their term index.
    """
    terms = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            match = _TERM_RE.fullmatch(line)
            if match is None:
                raise FormulaParseError(f"unrecognized term: {line!r}", line=lineno)
            coeff, num, den = int(match.group(1)), int(match.group(2)), int(match.group(3))
            if num == 0:
                raise FormulaParseError("zero arctangent argument", line=lineno)
            terms.append((coeff, Fraction(den, num)))
    if not terms:
        raise FormulaParseError("no terms found")
    return MachinFormula(terms=tuple(terms), name=Path(path).stem)


def formula_leading_decimal(beta: Cotangent, precision: int = 30) -> Decimal:
    """The cotangent's value (or signed magnitude) as a Decimal."""
    if isinstance(beta, MagnitudeOnly):
        return beta.magnitude if beta.sign > 0 else -beta.magnitude
    return fraction_to_decimal(beta, precision)
