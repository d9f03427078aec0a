"""Nested square-root ladder and the integer cotangent it pins down.

The ladder a(1) = sqrt(2), a(k) = sqrt(2 + a(k-1)) climbs toward 2, and
the companion ratio a(k)/sqrt(2 - a(k-1)) is the cotangent of a binary
submultiple of the half turn.  Its floor is the integer u1 that anchors a
two-term formula; the fractional part left behind decides how large the
closing cotangent u2 will be.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .errors import DomainError, PrecisionError
from .exactmath import guard_digits, round_sig, working_context

# 2 - a(k-1) shrinks like 4**-k, so every unit of k costs about 0.6
# digits of cancellation; past k = 64 the coefficient 2**(k-1) also stops
# being a sane formula ingredient.
MAX_LADDER_K = 64


@dataclass(frozen=True, slots=True)
class RadicalPoint:
    """Ladder snapshot at depth k, all fields to ``precision`` digits."""

    k: int
    value: Decimal      # a(k)
    previous: Decimal   # a(k-1)
    ratio: Decimal      # a(k)/sqrt(2 - a(k-1))
    precision: int


def ladder_eval(k: int, precision: int) -> RadicalPoint:
    """Evaluate the ladder and its ratio at depth ``k``.

    Carries k extra working digits on top of the guard because the
    subtraction 2 - a(k-1) erases about 0.6*k of them.
    """
    if not 2 <= k <= MAX_LADDER_K:
        raise DomainError(f"k must be in [2, {MAX_LADDER_K}], got {k}")
    if precision < k + 20:
        raise PrecisionError(
            f"precision {precision} is too small for k={k}; need at least {k + 20}")
    with working_context(precision + k + guard_digits()):
        previous = None
        value = Decimal(2).sqrt()
        for _ in range(2, k + 1):
            previous = value
            value = (2 + previous).sqrt()
        gap = 2 - previous
        if gap <= 0:
            raise PrecisionError(f"ladder lost the gap 2 - a({k - 1}); raise precision")
        ratio = value / gap.sqrt()
    return RadicalPoint(
        k=k,
        value=round_sig(value, precision),
        previous=round_sig(previous, precision),
        ratio=round_sig(ratio, precision),
        precision=precision,
    )


def u1_of_k(k: int) -> int:
    """Integer cotangent at depth k: the floor of the ladder ratio.

    The floor is accepted only once two consecutive working precisions
    agree on it, so a ratio grazing an integer cannot be mis-floored by
    rounding.  The ratio itself is irrational, so the loop terminates.
    """
    precision = k + 40
    last = None
    for _ in range(8):
        point = ladder_eval(k, precision)
        floor = int(point.ratio)  # ratio > 1, truncation is the floor
        if floor == last:
            return floor
        last = floor
        precision *= 2
    raise PrecisionError(f"floor of the k={k} ratio did not stabilize below {precision} digits")
