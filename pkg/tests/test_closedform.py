from fractions import Fraction
from math import comb

from eulerorient.closedform import compute_G, compute_Q0, compute_Q1, solve_R, solve_tree_U
from eulerorient.exactalg import ONE, V, ZERO, BivarPoly, TSeries
from eulerorient.onecat import compute_Q


def test_R0_first_terms():
    R = solve_R(0, 4)
    assert [R[n] for n in range(5)] == [ZERO, ONE, -(1 + V), -(1 + 3 * V), -(3 + 14 * V + 3 * V ** 2)]


def test_R1_first_terms():
    R = solve_R(1, 4)
    assert [R[n] for n in range(5)] == [ZERO, ONE, -(2 * V + 1), -2 * (V ** 2 + 4 * V + 1),
                                        -(4 * V ** 3 + 36 * V ** 2 + 56 * V + 9)]


def test_G_first_terms():
    G = compute_G(solve_R(0, 6), 4)
    assert [G[n] for n in range(1, 5)] == [V, V * (V + 4), V * (V + 10) * (V + 2),
                                           V * (V ** 3 + 24 * V ** 2 + 115 * V + 112)]
    assert G.map(lambda c: c.subs(v=1))[1] == ONE


def test_Q1_first_terms():
    Q = compute_Q1(solve_R(1, 5), 3)
    assert [Q[n] for n in range(1, 4)] == [V * (V + 3), V * (V + 6) * (2 * V + 3),
                                           V * (V + 1) * (5 * V ** 2 + 61 * V + 135)]
    assert Q[1].subs(v=1) == 4


def test_v1_reduces_to_k0():
    # at v = 1: t = sum C(2n,n)^2/(n+1) R^(n+1)
    R = solve_R(0, 8, v=1)
    acc = TSeries([ZERO], order=8)
    for n in range(8):
        acc = acc + R ** (n + 1) * BivarPoly(Fraction(comb(2 * n, n) ** 2, n + 1))
    assert acc == TSeries.gen(8)


def test_specialisations_of_onecat():
    N = 8
    Q0 = compute_Q0(solve_R(0, N + 2), N)
    Q1 = compute_Q1(solve_R(1, N + 2), N)
    for omega, want in ((0, Q0), (1, Q1)):
        got = compute_Q(N, omega=omega)
        assert all(got[n] == want[n] for n in range(N + 1))


def test_tree_equations():
    b = solve_tree_U("binary", 4)
    assert b.U0[2] == 1 + V
    u = solve_tree_U("unarybinary", 4)
    assert u.U0[3] == 2 * (1 + 4 * V + V ** 2)
