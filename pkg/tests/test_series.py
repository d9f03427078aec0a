"""Series engines: fast, Euler, complex cross-check, reference pi."""

import json
from decimal import Decimal
from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from machinlike.errors import ConsistencyError, DomainError, PrecisionError
from machinlike.exactmath import coinciding_digits, fraction_to_decimal, round_sig
from machinlike.series import (
    arctan_auto,
    arctan_coeff_states,
    arctan_complex,
    arctan_euler,
    arctan_euler_exact,
    arctan_fast,
    arctan_fast_exact,
    convergence_report_dict,
    convergence_scan,
    pi_two_term,
    reference_pi,
    series_error,
    two_term_series_states,
    write_convergence_csv,
)
from machinlike.squaring import u2_of

PI_30 = Decimal("3.141592653589793238462643383279")


def test_single_term_at_one():
    assert arctan_fast(1, 1, 30) == Decimal("0.8")
    assert arctan_fast_exact(1, 1) == Fraction(4, 5)


def test_fast_series_converges_at_one():
    """At x = 1 each term buys ~log10(5) digits, so 30 terms give ~21."""
    value = arctan_fast(1, 30, 60)
    agreement = coinciding_digits(value, reference_pi(70) / 4)
    assert 20 <= agreement <= 25


def test_fast_series_fifth():
    err = series_error(Fraction(1, 5), 10, series="fast")
    assert str(err).startswith("4.2287")
    assert err.adjusted() == -23


def test_coeff_states_start_values():
    first = next(arctan_coeff_states(Fraction(1, 40)))
    assert (first.a, first.b) == (Fraction(80), Fraction(1))
    # negative arguments flip the odd part only
    first = next(arctan_coeff_states(Fraction(-1, 239)))
    assert (first.a, first.b) == (Fraction(-478), Fraction(1))


@given(st.fractions(min_value=Fraction(-3), max_value=Fraction(3)).filter(lambda f: f != 0))
def test_coeff_magnitude_law(x):
    """a^2 + b^2 == (1 + 4/x^2)^(2m-1) exactly, every step."""
    growth = 1 + 4 / (x * x)
    for state in islice(arctan_coeff_states(x), 5):
        assert state.a ** 2 + state.b ** 2 == growth ** (2 * state.m - 1)


def test_two_term_states_initial_row():
    u2 = u2_of(40, 6)
    first = next(two_term_series_states(40, u2))
    assert first.alpha == 2 * 40
    assert first.beta == 1
    assert first.gamma == 2 * u2
    assert first.theta == 1


def test_two_term_states_branches_stay_independent():
    u2 = u2_of(5, 3)
    rows = list(islice(two_term_series_states(5, u2), 4))
    lead = list(islice(arctan_coeff_states(Fraction(1, 5)), 4))
    close = list(islice(arctan_coeff_states(1 / u2), 4))
    for row, a_state, b_state in zip(rows, lead, close):
        assert (row.alpha, row.beta) == (a_state.a, a_state.b)
        assert (row.gamma, row.theta) == (b_state.a, b_state.b)


def test_euler_matches_fast_in_the_limit():
    for x in (Fraction(1, 5), Fraction(1, 40), Fraction(-3, 7)):
        fast = arctan_fast(x, 60, 50)
        euler = arctan_euler(x, 400, 50)
        assert coinciding_digits(fast, euler) >= 45, x


def test_euler_exact_matches_decimal_path():
    exact = arctan_euler_exact(Fraction(1, 5), 30)
    dec = arctan_euler(Fraction(1, 5), 30, 60)
    assert coinciding_digits(fraction_to_decimal(exact, 70), dec) >= 55


def test_complex_evaluation_agrees_with_integer_path():
    for x in (Fraction(1, 5), Fraction(-1, 239), Fraction(7, 19)):
        fast = arctan_fast(x, 40, 60)
        cx = arctan_complex(x, 40, 60)
        assert coinciding_digits(fast, cx) >= 50, x


def test_zero_argument_short_circuits():
    assert arctan_fast(0, 5, 30) == 0
    assert arctan_euler(0, 5, 30) == 0
    assert arctan_complex(0, 5, 30) == 0
    assert series_error(0, 5) == 0


def test_bad_term_counts():
    for fn in (arctan_fast, arctan_euler, arctan_complex):
        with pytest.raises(DomainError):
            fn(Fraction(1, 5), 0, 30)


def test_series_error_frozen_values():
    x = Fraction(1, 10**6)
    assert str(series_error(x, 10, series="euler")).startswith("2.70260")
    assert str(series_error(x, 10, series="fast")).startswith("4.54130")


def test_series_error_even_in_x():
    x = Fraction(3, 10**7)
    assert series_error(x, 6) == series_error(-x, 6)


def test_series_error_domain():
    with pytest.raises(DomainError):
        series_error(Fraction(1, 10**6), 10, series="maclaurin")
    with pytest.raises(DomainError):
        series_error(Fraction(95, 100), 10)


def test_reference_pi_truncates():
    assert reference_pi(1) == Decimal("3.1")
    assert reference_pi(5) == Decimal("3.14159")
    assert reference_pi(30) == PI_30
    with pytest.raises(DomainError):
        reference_pi(0)


def test_reference_pi_prefix_stability():
    # longer requests refine, never contradict, shorter ones
    long = str(reference_pi(120))
    short = str(reference_pi(60))
    assert long.startswith(short)


def test_arctan_auto_small_argument():
    auto = arctan_auto(Fraction(1, 7), 60)
    explicit = arctan_fast(Fraction(1, 7), 60, 60)
    assert coinciding_digits(auto, explicit) >= 58


def test_arctan_auto_rejects_wide_arguments():
    with pytest.raises(DomainError):
        arctan_auto(Fraction(3, 2), 40)
    assert arctan_auto(0, 40) == 0


def test_arctan_auto_huge_cotangent_path():
    """Closing cotangents with thousands of digits take the floating
    branch; it must agree with the exact integer branch."""
    u2 = u2_of(1303, 11)
    assert len(str(abs(u2.numerator))) > 1500
    auto = arctan_auto(1 / u2, 50)
    exact = arctan_fast(1 / u2, 14, 50)
    assert coinciding_digits(auto, exact) >= 40


def test_pi_two_term_k6():
    u2 = u2_of(40, 6)
    value = pi_two_term(6, 40, u2, 31, 100)
    assert coinciding_digits(value, reference_pi(110)) >= 100


def test_pi_two_term_exact_coeff_branch():
    u2 = u2_of(40, 6)
    floated = pi_two_term(6, 40, u2, 12, 45)
    exact = pi_two_term(6, 40, u2, 12, 45, exact_coeffs=True)
    assert coinciding_digits(floated, exact) >= 40


def test_pi_two_term_rejects_magnitude_stand_in():
    from machinlike.formulas import MagnitudeOnly
    stand_in = MagnitudeOnly(sign=-1, magnitude=Decimal("2.4e8"))
    with pytest.raises(DomainError):
        pi_two_term(27, 85445659, stand_in, 10, 40)


def test_convergence_scan_digits_increase():
    u2 = u2_of(40, 6)
    report = convergence_scan(6, 40, u2, 10, 300)
    assert report.digits == tuple(sorted(report.digits))
    assert len(set(report.digits)) == len(report.digits)
    assert report.fitted_rate > 0
    assert str(report.measure) == "1.167513"


def test_convergence_scan_rate_against_prediction():
    u2 = u2_of(10, 4)
    report = convergence_scan(4, 10, u2, 12, 300)
    assert abs(report.fitted_rate - report.predicted_rate) <= Decimal("0.7")


def test_convergence_scan_guards():
    u2 = u2_of(40, 6)
    with pytest.raises(DomainError):
        convergence_scan(6, 40, u2, 2, 300)
    with pytest.raises(PrecisionError):
        convergence_scan(6, 40, u2, 60, 100)


def test_convergence_csv_and_dict(tmp_path):
    u2 = u2_of(5, 3)
    report = convergence_scan(3, 5, u2, 6, 200)
    path = tmp_path / "conv.csv"
    write_convergence_csv(report, path)
    lines = path.read_text(encoding="ascii").strip().splitlines()
    assert lines[0] == "M,digits,delta"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[2] == ""
    payload = convergence_report_dict(report)
    json.dumps(payload)  # must be serializable as-is
    assert payload["k"] == 3
