import pytest

from eulerorient.exactalg import OMEGA, ONE, V, ZERO, LaurentX, TSeries
from eulerorient.onecat import (MSeries, check_involution, check_kernel, check_M_basics, check_Z_nonneg,
                                compute_F, compute_M, compute_Q, extract_Q, t_minus_F0)


def _geom(c, power, prec):
    return LaurentX({0: c}, prec=prec).div_one_minus_x(power)


def test_first_two_orders_of_M():
    M = compute_M(3, 8)
    assert M[1].agrees_with(LaurentX({-1: V}) + _geom(ONE, 1, 8), upto=8)
    want = LaurentX({-2: V}) + _geom(OMEGA * V + 1, 2, 8) + _geom(OMEGA, 3, 8)
    assert M[2].agrees_with(want, upto=6)


def test_F0_expansion(M10):
    F = compute_F(M10)
    assert F[1][0] == ONE
    assert F[2][0] == -(OMEGA * V + V + 1)
    assert F[3][0] == -(OMEGA + 1) * (OMEGA * V ** 2 + OMEGA * V + 3 * V + 1)


def test_t_minus_F0_nonnegative(M10):
    s = t_minus_F0(compute_F(M10))
    assert all(c >= 0 for n in range(s.order + 1) for _, c in s[n].items())


def test_Q_first_terms():
    Q = compute_Q(2)
    assert Q[1] == V * (OMEGA * V + OMEGA + 2)
    assert Q[2] == V * (2 * OMEGA ** 2 * V ** 2 + 5 * OMEGA ** 2 * V + 2 * OMEGA ** 2
                        + 8 * OMEGA * V + 8 * OMEGA + 2 * V + 8)


def test_characterisation_at_order_10(M10):
    F = compute_F(M10)
    assert check_M_basics(M10)
    assert check_involution(M10)
    assert check_kernel(M10, F)
    assert check_Z_nonneg(M10, 3, F)
    assert extract_Q(M10, F).order == 8


def _perturbed(M, n, k, c):
    cs = list(M.coeffs)
    cs[n - 1] = cs[n - 1] + LaurentX({k: c})
    return MSeries(tuple(cs), M.x_max, M.omega, M.v)


def test_involution_detects_perturbation():
    M = compute_M(6, 17)
    assert not check_involution(_perturbed(M, 3, 1, ONE))


def test_basics_detects_wrong_initial_condition():
    M = compute_M(4, 9)
    assert not check_M_basics(_perturbed(M, 2, -1, ONE))


def test_specialisation_commutes():
    sym = compute_Q(5)
    num = compute_Q(5, omega=2, v=3)
    assert all(sym[n].subs(2, 3) == num[n] for n in range(6))


@pytest.mark.parametrize("omega", [0, 1])
def test_Z_order_one_vanishes(omega):
    M = compute_M(5, 16, omega=omega)
    v = check_Z_nonneg(M, 3)
    assert v, v.detail
