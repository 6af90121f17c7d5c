import pytest

from eulerorient.closedform import solve_R
from eulerorient.dalg import verify_logderiv, verify_R_ode, verify_v1_limit
from eulerorient.exactalg import TSeries


@pytest.mark.parametrize("which", ["omega0", "omega1"])
def test_R_ode_symbolic(which):
    assert verify_R_ode(which, 10)


def test_R_ode_at_v1():
    assert verify_R_ode("omega0", 10, v=1)


@pytest.mark.parametrize("which", ["omega0", "omega1"])
@pytest.mark.parametrize("v", [2, 3, "2/3"])
def test_logderiv(which, v):
    assert verify_logderiv(which, 8, v)


def test_v1_limit():
    assert verify_v1_limit(10)


def test_ode_detects_wrong_series():
    R = solve_R(0, 8) + TSeries.gen(8).shift(2)
    r = verify_R_ode("omega0", 6, R=R)
    assert not r and r.first_failure() is not None


def test_logderiv_rejects_v1():
    with pytest.raises(ValueError):
        verify_logderiv("omega0", 4, 1)
