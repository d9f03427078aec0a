"""Exact complex squaring on the unit circle and the closing cotangent u2.

z(1) = (u1 + i)/(u1 - i) has modulus 1 and rational parts.  Squaring it
k-1 times lands on z(k) = x(k) + i*y(k), still rational and still on the
unit circle, and the closing cotangent of the two-term identity is
u2 = x(k)/(1 - y(k)).  Everything here is exact; no rounding ever enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DegenerateFormulaError, DomainError, FormulaParseError
from .exactmath import complex_add, complex_div, complex_mul, format_rational, parse_rational

# Above this depth the shared-denominator integers pass a million digits
# (they double per step) and the final reduction alone costs minutes.
DESK_SCALE_MAX_K = 20


@dataclass(frozen=True, slots=True)
class ComplexRationalState:
    """z(n) = x + i*y after n-1 exact squarings; x*x + y*y == 1 always."""

    n: int
    x: Fraction
    y: Fraction


def init_state(u1: Fraction | int) -> ComplexRationalState:
    """State for n = 1: z(1) = (u1 + i)/(u1 - i) written out in parts."""
    u1 = Fraction(u1)
    if u1 <= 1:
        raise DomainError(f"u1 must exceed 1, got {u1}")
    d = u1 * u1 + 1
    return ComplexRationalState(n=1, x=(u1 * u1 - 1) / d, y=2 * u1 / d)


def square_step(state: ComplexRationalState) -> ComplexRationalState:
    x, y = state.x, state.y
    return ComplexRationalState(n=state.n + 1, x=(x - y) * (x + y), y=2 * x * y)


def state_at(u1: Fraction | int, k: int, allow_huge: bool = False) -> ComplexRationalState:
    """State after k-1 squarings, i.e. z raised to the 2**(k-1)."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _check_scale(k, allow_huge)
    state = init_state(u1)
    for _ in range(k - 1):
        state = square_step(state)
    return state


def u2_from_state(state: ComplexRationalState) -> Fraction:
    if state.y == 1:
        raise DegenerateFormulaError("y(k) = 1 leaves the closing cotangent undefined")
    return state.x / (1 - state.y)


def _check_scale(k: int, allow_huge: bool) -> None:
    if k > DESK_SCALE_MAX_K and not allow_huge:
        raise DomainError(
            f"k={k} exceeds the desk-scale cap of {DESK_SCALE_MAX_K}: the iteration "
            f"integers double per step, reaching millions of digits past k=20 "
            f"(pass allow_huge=True to proceed anyway)")


def shared_parts(u1: Fraction | int, k: int, allow_huge: bool = False) -> tuple[int, int, int]:
    """Integer fast path: (X, Y, D) with x(k) = X/D and y(k) = Y/D.

    The squaring step maps (X, Y, D) to ((X-Y)(X+Y), 2XY, D*D), so one
    denominator serves both parts and no per-step gcd is ever taken.
    The triple is unreduced apart from the single common factor the
    initial state sheds (2 for odd integer u1).
    """
    u1 = Fraction(u1)
    if u1 <= 1:
        raise DomainError(f"u1 must exceed 1, got {u1}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _check_scale(k, allow_huge)
    p, q = u1.numerator, u1.denominator
    x, y, d = p * p - q * q, 2 * p * q, p * p + q * q
    g = math.gcd(math.gcd(x, y), d)
    x, y, d = x // g, y // g, d // g
    for _ in range(k - 1):
        x, y = (x - y) * (x + y), 2 * x * y
        d *= d
    return x, y, d


def u2_parts(u1: Fraction | int, k: int, allow_huge: bool = False) -> tuple[int, int]:
    """Unreduced (numerator, denominator) of u2, namely (X, D - Y).

    Magnitude-faithful but not canonical; callers that only need the size
    or leading digits of u2 can skip the expensive reduction in u2_of.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2 for a two-term pair, got {k}")
    x, y, d = shared_parts(u1, k, allow_huge)
    if y == d:
        raise DegenerateFormulaError("y(k) = 1 leaves the closing cotangent undefined")
    return x, d - y


def u2_of(u1: Fraction | int, k: int, allow_huge: bool = False) -> Fraction:
    """The closing cotangent in lowest terms.

    The final reduction is not cosmetic: 1 - y(k) is tiny, so X and D - Y
    share an enormous factor and the canonical parts have roughly half
    the digits of the raw ones.  Published values are in lowest terms.
    """
    num, den = u2_parts(u1, k, allow_huge)
    return Fraction(num, den)


def u2_direct_oracle(u1: Fraction | int, k: int, max_k: int = 12) -> Fraction:
    """u2 straight from its definition, with none of the iteration's
    structure: generic complex rational arithmetic squares
    z = (u1 + i)/(u1 - i) and the arctangent argument 2/(z + i) + i is
    inverted.  Deliberately naive, hence the depth limit.

    The imaginary part must cancel to exactly zero; anything else means
    the two routes do not describe the same number.
    """
    u1 = Fraction(u1)
    if u1 <= 1:
        raise DomainError(f"u1 must exceed 1, got {u1}")
    if not 2 <= k <= max_k:
        raise DomainError(f"oracle depth k={k} outside [2, {max_k}]")
    one, zero = Fraction(1), Fraction(0)
    z = complex_div((u1, one), (u1, -one))
    for _ in range(k - 1):
        z = complex_mul(z, z)
    arg = complex_add(complex_div((Fraction(2), zero), complex_add(z, (zero, one))), (zero, one))
    if arg[1] != 0:
        raise ConsistencyError(f"imaginary residue {arg[1]} in the closing arctangent argument")
    if arg[0] == 0:
        raise DegenerateFormulaError("closing arctangent argument vanished")
    return 1 / arg[0]


def write_fraction_file(path, value: Fraction) -> None:
    """One line, ``[-]num/den`` in ASCII decimal, newline terminated."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_rational(value) + "\n")


def read_fraction_file(path) -> Fraction:
    """Read a fraction file.

    Tolerates '#' comment lines, blank lines and a bare integer, but
    exactly one value line must remain.
    """
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(parse_rational(line))
            except FormulaParseError as exc:
                raise FormulaParseError(str(exc), line=lineno) from None
    if len(values) != 1:
        raise FormulaParseError(f"expected exactly one fraction line, found {len(values)}")
    return values[0]
