"""Rapidly convergent arctangent series and the pi assembly built on them.

The workhorse expansion is

    atan(x) = 2 * sum_{m>=1} (1/(2m-1)) * a_m/(a_m^2 + b_m^2),

where a_m and b_m are the imaginary and real parts of (1 + 2i/x)^(2m-1).
At x = p/q the scaled parts A_m = a_m * p^(2m-1) and B_m = b_m * p^(2m-1)
are integers obeying

    A_1 = 2q,  B_1 = p,
    A' = A*K + C*B,  B' = B*K - C*A,   K = p^2 - 4q^2,  C = 4pq,
    A^2 + B^2 = (p^2 + 4q^2)^(2m-1),

so every term is an exact integer ratio and each term contributes about
log10((p^2 + 4q^2)/p^2) decimal digits.  Euler's accelerated series and a
complex-arithmetic evaluation of the same sum serve as cross-checks, and
an old-fashioned four-to-one arctangent pair computed with the plain
Maclaurin series provides a pi that shares no code with any of it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, DomainError, PrecisionError
from .exactmath import (
    coinciding_digits,
    complex_div,
    complex_mul,
    fraction_to_decimal,
    guard_digits,
    rational_log10_abs,
    round_sig,
    working_context,
)


@dataclass(frozen=True, slots=True)
class ArctanCoeffState:
    """Exact series coefficients at truncation index m.

    a is the imaginary and b the real part of (1 + 2i/x)^(2m-1); they
    satisfy a*a + b*b == (1 + 4/x^2)^(2m-1) exactly.
    """

    m: int
    a: Fraction
    b: Fraction


@dataclass(frozen=True, slots=True)
class PiSeriesCoeffState:
    """Joint coefficient state of the assembled two-term series.

    (alpha, beta) drive the u1 branch and (gamma, theta) the u2 branch;
    each pair is the (a, b) state of the arctangent series at argument
    1/u1 and 1/u2 respectively, so alpha_1 = 2*u1, beta_1 = 1,
    gamma_1 = 2*u2, theta_1 = 1.  The theta recurrence multiplies by u2,
    not u1; the two branches never mix.
    """

    m: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    theta: Fraction


def arctan_coeff_states(x: Fraction | int):
    """Yield ArctanCoeffState for m = 1, 2, ... at exact rational x != 0."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("x must be nonzero")
    p, q = x.numerator, x.denominator
    big_a, big_b = 2 * q, p
    k_fac, c_fac = p * p - 4 * q * q, 4 * p * q
    ppow, psq = p, p * p
    m = 1
    while True:
        yield ArctanCoeffState(m=m, a=Fraction(big_a, ppow), b=Fraction(big_b, ppow))
        big_a, big_b = big_a * k_fac + c_fac * big_b, big_b * k_fac - c_fac * big_a
        ppow *= psq
        m += 1


def two_term_series_states(u1: Fraction | int, u2: Fraction | int):
    """Yield PiSeriesCoeffState for m = 1, 2, ...

    Exact rationals throughout; meant for analysis and tests at desk
    scale, not for huge u2.
    """
    gen1 = arctan_coeff_states(1 / Fraction(u1))
    gen2 = arctan_coeff_states(1 / Fraction(u2))
    for s1, s2 in zip(gen1, gen2):
        yield PiSeriesCoeffState(m=s1.m, alpha=s1.a, beta=s1.b, gamma=s2.a, theta=s2.b)


def arctan_fast(x: Fraction | int, terms: int, precision: int) -> Decimal:
    """Truncation of the fast series after ``terms`` terms.

    Coefficients stay exact integers; Decimal enters only at the final
    division of each term.  atan(0) is 0 by the defined limit.
    """
    x = Fraction(x)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Decimal(0)
    p, q = x.numerator, x.denominator
    big_a, big_b = 2 * q, p
    k_fac, c_fac = p * p - 4 * q * q, 4 * p * q
    s = p * p + 4 * q * q
    ppow, spow = p, s
    psq, ssq = p * p, s * s
    with working_context(precision + guard_digits()):
        total = Decimal(0)
        for m in range(1, terms + 1):
            total += Decimal(big_a * ppow) / (Decimal(2 * m - 1) * Decimal(spow))
            if m < terms:
                big_a, big_b = big_a * k_fac + c_fac * big_b, big_b * k_fac - c_fac * big_a
                ppow *= psq
                spow *= ssq
        result = 2 * total
    return round_sig(result, precision)


def arctan_fast_exact(x: Fraction | int, terms: int) -> Fraction:
    """The same truncation as arctan_fast, kept as an exact rational."""
    x = Fraction(x)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    big_a, big_b = 2 * q, p
    k_fac, c_fac = p * p - 4 * q * q, 4 * p * q
    s = p * p + 4 * q * q
    ppow, spow = p, s
    psq, ssq = p * p, s * s
    total = Fraction(0)
    for m in range(1, terms + 1):
        total += Fraction(big_a * ppow, (2 * m - 1) * spow)
        if m < terms:
            big_a, big_b = big_a * k_fac + c_fac * big_b, big_b * k_fac - c_fac * big_a
            ppow *= psq
            spow *= ssq
    return 2 * total


def arctan_euler(x: Fraction | int, terms: int, precision: int) -> Decimal:
    """Euler's accelerated series, summed m = 0..terms-1 at working
    precision.  The term ratio is (2m/(2m+1)) * x^2/(1+x^2)."""
    x = Fraction(x)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Decimal(0)
    with working_context(precision + guard_digits()):
        xd = fraction_to_decimal(x, precision + guard_digits())
        ratio = xd * xd / (1 + xd * xd)
        term = xd / (1 + xd * xd)
        total = term
        for m in range(1, terms):
            term = term * ratio * (2 * m) / (2 * m + 1)
            total += term
        result = +total
    return round_sig(result, precision)


def arctan_euler_exact(x: Fraction | int, terms: int) -> Fraction:
    """Exact rational value of the Euler truncation."""
    x = Fraction(x)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Fraction(0)
    ratio = x * x / (1 + x * x)
    term = x / (1 + x * x)
    total = term
    for m in range(1, terms):
        term = term * 2 * m * ratio / (2 * m + 1)
        total += term
    return total


def arctan_complex(x: Fraction | int, terms: int, precision: int) -> Decimal:
    """The fast series evaluated with explicit complex arithmetic.

    The two conjugate power chains are carried independently, so the
    imaginary residue of the sum is a real measure of rounding drift; it
    must stay below 10**-(precision-5).
    """
    x = Fraction(x)
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Decimal(0)
    with working_context(precision + guard_digits()):
        t = fraction_to_decimal(2 / x, precision + guard_digits())
        one, zero = Decimal(1), Decimal(0)
        v = complex_div((one, zero), (one, t))    # 1/(1 + 2i/x)
        u = complex_div((one, zero), (one, -t))   # 1/(1 - 2i/x)
        vsq, usq = complex_mul(v, v), complex_mul(u, u)
        pv, pu = v, u
        sum_re, sum_im = zero, zero
        for m in range(1, terms + 1):
            denom = Decimal(2 * m - 1)
            sum_re += (pv[0] - pu[0]) / denom
            sum_im += (pv[1] - pu[1]) / denom
            if m < terms:
                pv = complex_mul(pv, vsq)
                pu = complex_mul(pu, usq)
        # result is i * sum, which must come out purely real
        residue = abs(sum_re)
        if residue >= Decimal(1).scaleb(-(precision - 5)):
            raise ConsistencyError(
                f"imaginary residue {residue} exceeds 10**-{precision - 5}")
        result = -sum_im
    return round_sig(result, precision)


def _maclaurin_arctan_exact(x: Fraction, terms: int) -> Fraction:
    """Plain alternating Maclaurin partial sum, exact; tail bound is
    |x|^(2*terms+1)/(2*terms+1)."""
    total = Fraction(0)
    power = x
    xsq = x * x
    for n in range(terms):
        contribution = power / (2 * n + 1)
        total += contribution if n % 2 == 0 else -contribution
        power *= xsq
    return total


def series_error(x: Fraction | int, terms: int, series: str = "fast") -> Decimal:
    """|atan(x) - truncation| for the fast or euler series, exactly.

    The truncation is an exact rational; the reference arctangent is a
    Maclaurin partial sum whose tail bound is pushed ten orders below the
    difference being measured, so the leading digits returned are true
    regardless of how tiny the error is.
    """
    x = Fraction(x)
    if series not in ("fast", "euler"):
        raise DomainError(f"series must be 'fast' or 'euler', got {series!r}")
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if x == 0:
        return Decimal(0)
    if abs(x) >= Fraction(9, 10):
        raise DomainError("the Maclaurin reference needs |x| < 0.9")
    exact = arctan_fast_exact if series == "fast" else arctan_euler_exact
    trunc = exact(x, terms)
    # the first omitted term sets the scale of the answer
    scale = abs(exact(x, terms + 1) - trunc)
    target_log = float(rational_log10_abs(scale)) - 15
    lx = float(rational_log10_abs(x))
    needed = max(int((target_log / lx - 1) / 2) + 4, 4)
    for _ in range(6):
        reference = _maclaurin_arctan_exact(x, needed)
        tail = abs(x) ** (2 * needed + 1) / (2 * needed + 1)
        diff = abs(reference - trunc)
        if tail * 10**10 < diff:
            return fraction_to_decimal(diff, 10)
        needed *= 2
    raise ConsistencyError("Maclaurin tail bound failed to clear the measured error")


def _atan_unit_scaled(c: int, scale: int) -> int:
    """atan(1/c)*scale by the alternating unit-fraction Maclaurin series,
    pure integer arithmetic, truncated toward zero termwise."""
    term = scale // c
    total = 0
    n = 1
    csq = c * c
    while term:
        total += term // n if n % 4 == 1 else -(term // n)
        n += 2
        term //= csq
    return total


@lru_cache(maxsize=32)
def _pi_scaled(places: int) -> int:
    # 25 guard digits swallow the termwise floor drift of the two sums
    work = places + 25
    scale = 10**work
    value = 16 * _atan_unit_scaled(5, scale) - 4 * _atan_unit_scaled(239, scale)
    return value // 10**25


def reference_pi(precision: int) -> Decimal:
    """pi with ``precision`` digits after the point, truncated not rounded.

    Built from the classic four-to-one arctangent pair with the plain
    Maclaurin series, on purpose: convergence claims about the fast
    series are tested against a pi that shares no code with it.
    """
    if precision < 1:
        raise DomainError(f"precision must be >= 1, got {precision}")
    scaled = _pi_scaled(precision)
    with working_context(precision + 5):
        return Decimal(scaled).scaleb(-precision)


def _term_rate(x: Fraction) -> float:
    """Decimal digits contributed per series term at argument x."""
    psq = x.numerator * x.numerator
    s = psq + 4 * x.denominator * x.denominator
    return float(rational_log10_abs(Fraction(s, psq), 20))


# beyond ~4000 digits per part, exact coefficients grow by the full part
# width every term; the floating recurrence is the only sane route
_EXACT_PART_BIT_LIMIT = 13_300


def arctan_auto(x: Fraction | int, precision: int) -> Decimal:
    """Arctangent at an exact rational argument, |x| <= 1, with the term
    count sized from the argument itself.

    Small arguments take the exact integer path; arguments with huge
    parts (reciprocals of generated closing cotangents) go through the
    floating coefficient recurrence at working precision.
    """
    x = Fraction(x)
    if x == 0:
        return Decimal(0)
    if abs(x) > 1:
        raise DomainError("arctan_auto expects |x| <= 1; pass the cotangent's reciprocal")
    rate = _term_rate(x)
    terms = int((precision + guard_digits() + 6) / rate) + 2
    size = abs(x.numerator).bit_length() + x.denominator.bit_length()
    if size > _EXACT_PART_BIT_LIMIT:
        work = precision + guard_digits()
        with working_context(work):
            result = _branch_float(1 / x, terms, work)
        return round_sig(result, precision)
    return arctan_fast(x, terms, precision)


def _branch_float(u: Fraction, terms: int, work: int) -> Decimal:
    """atan(1/u) truncated after ``terms`` terms, coefficients carried as
    Decimals at ``work`` digits.

    The recurrence multiplies by (1 + 2iu)^2, a scaled rotation, so the
    relative rounding error grows only linearly in the term count; the
    guard digits inside ``work`` absorb it.  Must run inside a context of
    at least ``work`` digits.
    """
    ud = fraction_to_decimal(u, work)
    a, b = 2 * ud, Decimal(1)
    k_fac = 1 - 4 * ud * ud
    c_fac = 4 * ud
    total = Decimal(0)
    for m in range(1, terms + 1):
        total += a / ((a * a + b * b) * (2 * m - 1))
        if m < terms:
            a, b = a * k_fac + c_fac * b, b * k_fac - c_fac * a
    return 2 * total


def pi_two_term(k: int, u1: Fraction | int, u2: Fraction | int, terms: int,
                precision: int, exact_coeffs: bool = False) -> Decimal:
    """pi from the assembled identity pi = 4*(2^(k-1) atan(1/u1) + atan(1/u2)),
    each branch truncated after ``terms`` terms.

    The u1 branch always uses exact integer coefficients (u1 is small).
    The u2 branch defaults to the floating recurrence because generated
    closing cotangents carry thousands to millions of digits; pass
    exact_coeffs=True to force exact arithmetic there too.
    """
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    try:
        u1, u2 = Fraction(u1), Fraction(u2)
    except TypeError:
        raise DomainError("both cotangents must be exact rationals; "
                          "magnitude-only stand-ins cannot drive the series") from None
    # the 2^(k-1) multiplier amplifies the lead branch error by ~0.3k digits
    work = precision + k + guard_digits()
    lead = arctan_fast(1 / u1, terms, work)
    if exact_coeffs:
        closing = arctan_fast(1 / u2, terms, work)
    else:
        with working_context(work):
            closing = _branch_float(u2, terms, work)
    with working_context(work):
        result = 4 * (Decimal(2) ** (k - 1) * lead + closing)
    return round_sig(result, precision)


@dataclass(frozen=True, slots=True)
class ConvergenceReport:
    """Digits-per-term scan of a two-term pair.

    orders[i] is the truncation M, digits[i] the decimal places agreeing
    with the reference pi.  fitted_rate is the mean forward difference
    over the last ceil(len/2) points; predicted_rate is 4.1/e.
    """

    k: int
    u1: Fraction | int
    u2: Fraction | int
    precision: int
    orders: tuple[int, ...]
    digits: tuple[int, ...]
    fitted_rate: Decimal
    measure: Decimal
    predicted_rate: Decimal


def convergence_scan(k: int, u1: Fraction | int, u2: Fraction | int,
                     max_terms: int, precision: int) -> ConvergenceReport:
    """Measure how many digits each extra term buys, M = 1..max_terms."""
    if max_terms < 3:
        raise DomainError(f"max_terms must be >= 3, got {max_terms}")
    u1, u2 = Fraction(u1), Fraction(u2)
    with working_context(40):
        e = 1 / rational_log10_abs(u1, 30) + 1 / rational_log10_abs(u2, 30)
        predicted = Decimal("4.1") / e
    if precision < int(max_terms * float(predicted)) + 20:
        raise PrecisionError(
            f"precision {precision} cannot resolve {max_terms} terms at "
            f"~{predicted:.1f} digits/term; need {int(max_terms * float(predicted)) + 20}")
    reference = reference_pi(precision)
    digits = []
    for m in range(1, max_terms + 1):
        digits.append(coinciding_digits(reference, pi_two_term(k, u1, u2, m, precision)))
    window = (max_terms + 1) // 2
    tail = digits[-window:]
    with working_context(20):
        fitted = (Decimal(tail[-1]) - Decimal(tail[0])) / (window - 1)
    return ConvergenceReport(
        k=k, u1=u1, u2=u2, precision=precision,
        orders=tuple(range(1, max_terms + 1)),
        digits=tuple(digits),
        fitted_rate=fitted.quantize(Decimal("0.01")),
        measure=e.quantize(Decimal("0.000001")),
        predicted_rate=predicted.quantize(Decimal("0.01")),
    )


def convergence_report_dict(report: ConvergenceReport) -> dict:
    """JSON-ready view; exact rationals and decimals become strings."""
    return {
        "k": report.k,
        "u1": str(report.u1),
        "u2": str(report.u2) if report.u2.denominator < 10**40 else "(large rational)",
        "precision": report.precision,
        "orders": list(report.orders),
        "digits": list(report.digits),
        "fitted_rate": str(report.fitted_rate),
        "measure": str(report.measure),
        "predicted_rate": str(report.predicted_rate),
    }


def write_convergence_csv(report: ConvergenceReport, path) -> None:
    """Columns M, digits, delta; delta is blank on the first row."""
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["M", "digits", "delta"])
        previous = None
        for m, d in zip(report.orders, report.digits):
            writer.writerow([m, d, "" if previous is None else d - previous])
            previous = d
