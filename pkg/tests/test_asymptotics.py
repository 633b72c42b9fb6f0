import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinnet.asymptotics import (
    RhoEstimate,
    bridge_reduce,
    estimate_rho,
    polynomial_growth_check,
    rho_upper_bound,
    series_coefficients,
    standard_row,
)
from spinnet.cg import standard_evaluate
from spinnet.closed_forms import theta_big
from spinnet.graph import InadmissibleError, drum, dumbbell, scale_decoration, tetrahedron, theta


def test_theta_series_is_theta_normalizer():
    table = series_coefficients(theta(), 6)
    for row in table.rows:
        assert abs(row.value) == theta_big(2 * row.n, 2 * row.n, 2 * row.n)
    assert table.rows[1].value == -24 and table.rows[1].sign_known


def test_exact_rows_match_standard_evaluation():
    net = tetrahedron(2)
    for n in range(3):
        row = standard_row(net, n)
        ev = standard_evaluate(scale_decoration(net, n))
        assert row.value == ev.value if row.sign_known else abs(row.value) == abs(ev.value)


def test_float_mode_agrees_in_log():
    exact = series_coefficients(drum(2), 8)
    approx = series_coefficients(drum(2), 8, mode="float")
    for e, f in zip(exact.rows, approx.rows):
        assert abs(e.log_abs - f.log_abs) < 1e-12


def test_csv_layout():
    csv_text = series_coefficients(theta(), 3).to_csv()
    lines = csv_text.splitlines()
    assert lines[0] == "n,value,mode"
    assert lines[2] == "1,-24,exact"
    assert lines[4].startswith("3,+/-")


def test_upper_bounds():
    assert str(rho_upper_bound(theta())) == "3*log(3)"
    assert str(rho_upper_bound(tetrahedron(2))) == "6*log(3)"
    assert str(rho_upper_bound(drum(2))) == "6*log(3)"
    assert str(rho_upper_bound(drum(3))) == "9*log(3)"
    assert float(rho_upper_bound(drum(2))) == pytest.approx(math.log(729))


def test_synthetic_power_law():
    # a_n = 729^n n^-3: the plain ratio approaches log 729 at rate 3/(N-1)
    n_max = 30
    series = [Fraction(729**n, n**3) if n else Fraction(1) for n in range(n_max + 1)]
    est = estimate_rho(series, window=1)
    assert abs(est.log_rho_ratio - math.log(729)) <= 3 / (n_max - 1)
    assert est.n_used == n_max and est.stride == 1


def test_parity_zeros_use_stride_two():
    series = [Fraction(9**n) if n % 2 == 0 else Fraction(0) for n in range(21)]
    est = estimate_rho(series)
    assert est.stride == 2
    assert est.log_rho_ratio == pytest.approx(math.log(9))


def test_too_short_series():
    with pytest.raises(ValueError):
        estimate_rho([Fraction(1), Fraction(2), Fraction(3)])


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 20), st.integers(0, 4), st.integers(1, 4))
def test_window_never_exceeds_plain_ratio(rate, power, window):
    series = [math.exp(rate * n) * (n + 1) ** power for n in range(25)]
    plain = estimate_rho(series, window=1).log_rho_ratio
    assert estimate_rho(series, window=window).log_rho_ratio <= plain + 1e-12


def test_estimate_json_round_trip():
    est = RhoEstimate(1.0, 0.5, 10, 1, 2.0)
    assert json.loads(est.to_json())["n_used"] == 10
    assert est.within_bound()
    assert not RhoEstimate(2.1, 0.5, 10, 1, 2.0).within_bound()


def test_drum_estimate_below_bound():
    table = series_coefficients(drum(2), 16, mode="float")
    est = estimate_rho(table)
    assert est.within_bound()
    assert est.log_rho_ratio > math.log(729) - 0.5


def test_growth_is_polynomial():
    assert polynomial_growth_check(theta(), 6).polynomial
    report = polynomial_growth_check(tetrahedron(2), 6)
    assert report.polynomial and report.slope < 0


def test_bridge_reduction_factor():
    red = bridge_reduce(dumbbell(3, 4, 0))
    assert not red.zero and red.erased_vertices == 2
    assert red.network.trivial_components == (3, 4)
    assert bridge_reduce(dumbbell(2, 2, 2)).zero


def test_inadmissible_series():
    with pytest.raises(InadmissibleError):
        series_coefficients(theta(1, 1, 1), 3)
