from eulerorient.catalytic import (catalytic_M, catalytic_Q, check_E_symmetry, check_omega0_v1_identity,
                                   check_P_equation, solve_pd_system)
from eulerorient.exactalg import V, ZERO
from eulerorient.onecat import compute_M, compute_Q


def test_initial_conditions():
    st = solve_pd_system(4)
    assert st.d(0, 0)[0] == V
    assert all(st.d(0, n).coeffs == {} for n in range(1, 4))
    assert st.p[(0, 0)] == V


def test_Q_matches_onecat_order_6():
    st = solve_pd_system(7)
    Qc, Qo = catalytic_Q(st), compute_Q(6)
    assert all(Qc[n] == Qo[n] for n in range(7))


def test_M_matches_onecat():
    st = solve_pd_system(5, x_degree=6)
    Mc = catalytic_M(st, 4)
    Mo = compute_M(4, 8)
    for n in range(1, 5):
        assert Mc[n].agrees_with(Mo[n], upto=2)


def test_symmetry_and_equations():
    st = solve_pd_system(6)
    assert check_E_symmetry(st)
    assert check_P_equation(st)
    assert check_P_equation(st, via_D=True)


def test_omega0_v1_identity():
    assert check_omega0_v1_identity(solve_pd_system(6, omega=0, v=1))


def test_perturbation_breaks_symmetry():
    st = solve_pd_system(5)
    st.p[(2, 1)] = st.p[(2, 1)] + 1
    assert not check_E_symmetry(st) or not check_P_equation(st)
