from eulerorient.closedform import compute_G, compute_Q1, solve_R
from eulerorient.exactalg import OMEGA, ONE, ZERO
from eulerorient.onecat import compute_Q
from eulerorient.sixvertex import (Rtilde_and_Qtilde, check_F_shape, q_of_t, theta_ratios,
                                   verify_omega_minus1)

W = OMEGA


def test_q_of_t_first_terms():
    q = q_of_t(theta_ratios(4))
    assert [q[n] for n in range(5)] == [ZERO, ONE, 6 + 6 * W, 45 * W ** 2 + 84 * W + 48,
                                        378 * W ** 3 + 998 * W ** 2 + 1076 * W + 436]


def test_R_and_Q_tilde_first_terms():
    R, Q = Rtilde_and_Qtilde(theta_ratios(6))
    assert [R[n] for n in range(5)] == [ZERO, ONE, -(W + 2), -2 * (W + 2) * (1 + W),
                                        -(W + 2) * (9 * W ** 2 + 16 * W + 10)]
    assert [Q[n] for n in range(1, 4)] == [2 + 2 * W, 9 * W ** 2 + 16 * W + 10,
                                           54 * W ** 3 + 132 * W ** 2 + 150 * W + 66]


def test_Q_tilde_equals_onecat_at_v1():
    N = 10
    _, Q = Rtilde_and_Qtilde(theta_ratios(N + 2))
    Qo = compute_Q(N, v=1)
    assert all(Q[n] == Qo[n] for n in range(N + 1))


def test_Q_tilde_specialisations():
    N = 6
    _, Q = Rtilde_and_Qtilde(theta_ratios(N + 2))
    Q1 = compute_Q1(solve_R(1, N + 2, 1), N, 1)
    G = compute_G(solve_R(0, N + 2, 1), N, 1)
    for n in range(1, N + 1):
        assert Q[n].subs(1) == Q1[n]
        assert Q[n].subs(0) == 2 * G[n]


def test_omega_minus1_suite():
    out = verify_omega_minus1(10)
    assert all(out), [v.name for v in out if not v]


def test_F_shapes():
    assert check_F_shape(0)
    assert check_F_shape(1)
