import math

import pytest
from hypothesis import given, strategies as st
from fractions import Fraction

from eulerorient.critical import (PREDICTION, classify_regime, find_omega_c, ratio_estimates, solve_yc, t1,
                                  t_of_q_numeric)


def test_t1_known_values():
    assert abs(t1(0) - 1 / (4 * math.pi)) < 1e-12
    assert abs(t1(1) - 1 / (4 * math.sqrt(3) * math.pi)) < 1e-12


@pytest.mark.parametrize("which", ["omega0", "omega1"])
@pytest.mark.parametrize("v", [0.25, 0.5, 0.9, 1.5, 2.0, 3.0])
def test_yc_residual(which, v):
    c = solve_yc(which, v)
    assert c.residual < 1e-12 and c.label == PREDICTION
    lo, hi = ((0.25, 1.0) if which == "omega0" else (1 / 6, 0.5))
    assert lo < c.y_c < hi


@pytest.mark.parametrize("which,y,t", [("omega0", 0.5, 1 / (4 * math.pi)),
                                       ("omega1", 1 / 3, 1 / (4 * math.sqrt(3) * math.pi))])
@pytest.mark.parametrize("eps", [1e-4, -1e-4])
def test_v1_limits(which, y, t, eps):
    c = solve_yc(which, 1 + eps)
    assert abs(c.y_c - y) < 1e-3 and abs(c.t_c - t) < 1e-3


def test_factor_two_equation_has_no_root_at_v3():
    with pytest.raises(ValueError):
        solve_yc("omega1", 3.0, arccos_factor=2)


def test_regimes():
    assert classify_regime(1).regime == "log"
    assert classify_regime(7).regime == "maplike"
    r = classify_regime(-3)
    assert r.regime == "maplike" and r.t0 < 0


@pytest.mark.parametrize("omega", [-3, -1, -0.5, 0, 1, 3, 7])
def test_regime_stable_in_truncation(omega):
    assert classify_regime(omega, 16).regime == classify_regime(omega, 24).regime


def test_t_increasing_at_omega1():
    ts = [t_of_q_numeric(1, q)[0] for q in (0.1, 0.3, 0.5, 0.7, 0.9)]
    assert ts == sorted(ts)


def test_omega_c():
    assert abs(find_omega_c() - (-0.764)) < 0.01


def test_geometric_ratio_exact():
    r = ratio_estimates([Fraction(2) ** n for n in range(10)])
    assert r.radius == [0.5] * 9
    assert all(x == 0.5 for x in r.radius_linear)


@given(st.fractions(min_value=Fraction(1, 10), max_value=10), st.integers(6, 15))
def test_geometric_ratio_property(r, n):
    est = ratio_estimates([r ** k for k in range(n)])
    assert all(x == pytest.approx(float(1 / r)) for x in est.radius)
    assert all(abs(e) < 1e-9 for e in est.exponent)


def test_zero_coefficients_flagged():
    r = ratio_estimates([0, 1, 2, 4, 8, 16, 32])
    assert r.skipped == [0] and r.n[0] == 1


def test_too_few_coefficients():
    with pytest.raises(ValueError):
        ratio_estimates([1, 2, 3])
