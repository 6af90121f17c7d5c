"""Closed forms on the lines omega = 0 and omega = 1.

Both cases are driven by a series R defined implicitly by t = Omega(R, u)
with u = t(v-1), where Omega is a triple-binomial double sum.  Everything
else (Q_0 = 2G, Q_1, the explicit M(y) and the tree series) is read off R.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .exactalg import ONE, ZERO, BivarPoly, LaurentX, TSeries, V, WindowOverflow

__all__ = [
    "solve_R", "omega_sum", "compute_Q0", "compute_G", "compute_Q1",
    "explicit_M", "solve_tree_U", "check_R_equation", "TreeSolution",
]

WHICH = ("omega0", "omega1")


def _norm(which) -> str:
    w = str(which).lower().replace("ω", "omega").replace("_", "")
    if w in ("0", "omega0", "w0"):
        return "omega0"
    if w in ("1", "omega1", "w1"):
        return "omega1"
    raise ValueError(f"unknown case {which!r}; expected omega0 or omega1")


@lru_cache(maxsize=None)
def _binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _coef_R(which: str, n: int, k: int) -> Fraction:
    third = _binom(2 * n + k, n) if which == "omega0" else _binom(3 * n + 2 * k, n + k)
    return Fraction(_binom(2 * n, n) * _binom(2 * n + k, k) * third, n + 1)


def _coef_Q(which: str, n: int, k: int) -> Fraction:
    if which == "omega0":
        third = _binom(2 * n + k - 1, n)
    else:
        third = _binom(3 * n + 2 * k - 1, 2 * n + k)
    return Fraction(_binom(2 * n, n) * _binom(2 * n + k, k) * third, n + 1)


def _coef_alt(which: str, n: int, k: int) -> Fraction:
    if which == "omega0":
        third = _binom(2 * n + k + 1, n)
    else:
        third = _binom(3 * n + 2 * k + 1, n + k + 1)
    return Fraction(_binom(2 * n, n) * _binom(2 * n + k, k) * third, n + 1)


def _vpoly(v):
    return V if v is None else BivarPoly(Fraction(v))


def omega_sum(coef, R: TSeries, N: int, v=None, shift_k: int = 0, skip_origin: bool = False,
              extra_terms: int = 0) -> TSeries:
    """sum_{n,k} coef(n,k) t^(k+shift_k) (v-1)^(k+shift_k) R^(n+1), to order N.

    Terms are kept while n+1+k+shift_k <= N; ``extra_terms`` widens that
    bound (used to test that the bound is exact).
    """
    vm1 = _vpoly(v) - 1
    out = [ZERO] * (N + 1)
    Rp = R.truncate(N)
    power = Rp  # R^(n+1)
    n = 0
    while n + 1 + shift_k <= N + extra_terms:
        for k in range(0, N + extra_terms - n - shift_k):
            if skip_origin and n == 0 and k == 0:
                continue
            c = coef(n, k)
            if not c:
                continue
            e = k + shift_k
            if e > N:
                break
            scal = vm1 ** e * c
            for m in range(n + 1, N - e + 1):
                a = power.c[m]
                if a:
                    out[m + e] = out[m + e] + a * scal
        n += 1
        power = power * Rp
    return TSeries(out, zero=ZERO)


def solve_R(which, N: int, v=None) -> TSeries:
    """The series R with t = Omega(R, t(v-1)), by fixed-point passes.

    Each pass R <- R + t - Omega(R, t(v-1)) fixes one more coefficient.
    """
    which = _norm(which)
    if N < 1:
        raise ValueError("N must be >= 1")
    coef = lambda n, k: _coef_R(which, n, k)
    R = TSeries([ZERO, ONE], order=1)
    for p in range(2, N + 1):
        Rp = TSeries(list(R.c) + [ZERO], zero=ZERO)
        Om = omega_sum(coef, Rp, p, v)
        t = TSeries([ZERO, ONE], order=p)
        R = Rp + t - Om
    return R


def check_R_equation(which, R: TSeries, v=None) -> bool:
    which = _norm(which)
    Om = omega_sum(lambda n, k: _coef_R(which, n, k), R, R.order, v)
    t = TSeries([ZERO, ONE], order=R.order)
    return (Om - t).is_zero()


def _div_t2(s: TSeries) -> TSeries:
    return s.shift(-2)


def compute_Q0(R0: TSeries, N: int, v=None) -> TSeries:
    """Q_0 = 2G to order N; checks the alternative form and the v=1 reduction."""
    if R0.order < N + 2:
        raise WindowOverflow(f"R_0 needed to order {N + 2}")
    vv = _vpoly(v)
    L = omega_sum(lambda n, k: _coef_Q("omega0", n, k), R0, N + 2, v, skip_origin=True)
    tv = TSeries([ZERO, ZERO, vv], order=N + 2)
    Q0 = _div_t2(L - tv)
    # 2t^2(2G+v) = t - R0 + sum ... (v-1)^(k+1) t^(k+1) R0^(n+1)
    alt = omega_sum(lambda n, k: _coef_alt("omega0", n, k), R0, N + 2, v, shift_k=1)
    t = TSeries([ZERO, ONE], order=N + 2)
    lhs = (Q0.shift(2) + tv) * 2
    if not (lhs - (t - R0.truncate(N + 2) + alt)).is_zero():
        raise ArithmeticError("alternative expression of Q_0 does not hold")
    if v is None:
        q1 = Q0.map(lambda a: a.subs(v=1))
        r1 = R0.truncate(N + 2).map(lambda a: a.subs(v=1))
        lhs1 = (q1.shift(2) + TSeries([ZERO, ZERO, ONE], order=N + 2)) * 2
        if not (lhs1 - (t - r1)).is_zero():
            raise ArithmeticError("v=1 reduction 2t^2(2G+1) = t - R_0 fails")
    return Q0.truncate(N)


def compute_G(R0: TSeries, N: int, v=None) -> TSeries:
    return compute_Q0(R0, N, v) * Fraction(1, 2)


def compute_Q1(R1: TSeries, N: int, v=None) -> TSeries:
    """Q_1 to order N; checks the alternative form and the v=1 reduction."""
    if R1.order < N + 2:
        raise WindowOverflow(f"R_1 needed to order {N + 2}")
    vv = _vpoly(v)
    L = omega_sum(lambda n, k: _coef_Q("omega1", n, k), R1, N + 2, v, skip_origin=True)
    tv = TSeries([ZERO, ZERO, vv], order=N + 2)
    Q1 = _div_t2(L - tv)
    alt = omega_sum(lambda n, k: _coef_alt("omega1", n, k), R1, N + 2, v, shift_k=1)
    t = TSeries([ZERO, ONE], order=N + 2)
    lhs = (Q1.shift(2) + tv) * 3
    if not (lhs - (t - R1.truncate(N + 2) + alt)).is_zero():
        raise ArithmeticError("alternative expression of Q_1 does not hold")
    if v is None:
        q1 = Q1.map(lambda a: a.subs(v=1))
        r1 = R1.truncate(N + 2).map(lambda a: a.subs(v=1))
        lhs1 = (q1.shift(2) + TSeries([ZERO, ZERO, ONE], order=N + 2)) * 3
        if not (lhs1 - (t - r1)).is_zero():
            raise ArithmeticError("v=1 reduction 3t^2(Q_1+1) = t - R_1 fails")
    return Q1.truncate(N)


def explicit_M(which, R: TSeries, N: int, x_window: int, v=None) -> list:
    """[t^m]M(y) for 1 <= m <= N from the explicit triple sum, as LaurentX up to y^x_window."""
    which = _norm(which)
    if R.order < N:
        raise WindowOverflow(f"R needed to order {N}")
    vm1 = _vpoly(v) - 1
    out = [dict() for _ in range(N + 1)]
    out[1][-1] = vm1
    Rp = R.truncate(N)
    power = Rp
    for n in range(0, N):
        for k in range(0, N - n):
            base = Fraction(_binom(2 * n, n) * _binom(2 * n + k, k), n + 1)
            vk = vm1 ** k
            for j in range(0, x_window + n + k + 2):
                e = j - n - k - 1
                if e > x_window:
                    break
                third = _binom(n + j, n) if which == "omega0" else _binom(2 * n + k + j, j)
                scal = vk * (base * third)
                for m in range(n + 1, N - k + 1):
                    a = power.c[m]
                    if a:
                        d = out[m + k]
                        d[e] = d.get(e, ZERO) + a * scal
        power = power * Rp
    return [None] + [LaurentX(out[m], prec=x_window, zero=ZERO) for m in range(1, N + 1)]


# ---------------------------------------------------------------------------
# tree equations


class TreeSolution:
    """Solution U(x) of a tree equation, order by order in t."""

    def __init__(self, which, U, U0, extra):
        self.which = which
        self.U = U
        self.U0 = U0
        self.extra = extra


def solve_tree_U(which: str, N: int, v=None) -> TreeSolution:
    """Solve the tree equation for U(x) to order N in t.

    ``binary``:  U = (x+1/x)(t+U-U0)(tx + tv/x + (x+1/x)(U-U0))
    ``unarybinary``: U = x(t+U-U0)(tv+U-U0) + (t+U-U0)/x

    Returns U0 = [x^0]U together with ``extra``: for binary trees the
    series [x^0] of x(t+U-U0)(tx+tv/x+(x+1/x)(U-U0)) (root edge solid), for
    unary/binary trees the charge-one series [x^1]U.
    """
    w = which.lower().replace("/", "").replace("_", "").replace("-", "")
    vv = _vpoly(v)
    if w == "binary":
        return _solve_binary(N, vv)
    if w in ("unarybinary", "unary"):
        return _solve_unary_binary(N, vv)
    raise ValueError(f"unknown tree family {which!r}")


def _solve_binary(N: int, vv: BivarPoly) -> TreeSolution:
    Z = LaurentX({}, zero=ZERO)
    xp = LaurentX({1: ONE, -1: ONE}, zero=ZERO)  # x + 1/x
    U = [Z] * (N + 1)
    Vs = [Z] * (N + 1)  # U - U0
    Ut = [Z] * (N + 1)  # root edge solid
    left = [Z] * (N + 1)
    right = [Z] * (N + 1)
    for n in range(1, N + 1):
        left[n - 1] = (LaurentX({0: ONE}, zero=ZERO) if n - 1 == 1 else Z) + Vs[n - 1]
        right[n - 1] = (LaurentX({1: ONE, -1: vv}, zero=ZERO) if n - 1 == 1 else Z) + xp * Vs[n - 1]
        acc = Z
        for a in range(1, n):
            acc = acc + left[a] * right[n - a]
        U[n] = xp * acc
        Ut[n] = LaurentX({1: ONE}, zero=ZERO) * acc
        Vs[n] = U[n] - LaurentX({0: U[n][0]}, zero=ZERO)
    U0 = TSeries([u[0] for u in U], zero=ZERO)
    solid = TSeries([u[0] for u in Ut], zero=ZERO)
    # (1 + x^2) Ut = x^2 U
    for n in range(N + 1):
        if Ut[n] + Ut[n].shift(2) != U[n].shift(2):
            raise ArithmeticError(f"root-solid series is not x^2 U/(1+x^2) at t^{n}")
    return TreeSolution("binary", U, U0, {"solid_root_x0": solid})


def _solve_unary_binary(N: int, vv: BivarPoly) -> TreeSolution:
    # work in y = 1/x: power series in y with a pole of order < n at t^n
    Y = 2 * N + 4
    Z = LaurentX({}, prec=Y, zero=ZERO)
    U = [Z] * (N + 1)
    Vs = [Z] * (N + 1)
    for n in range(1, N + 1):
        left = [(LaurentX({0: ONE}, zero=ZERO) if j == 1 else Z) + Vs[j] for j in range(n)]
        right = [(LaurentX({0: vv}, zero=ZERO) if j == 1 else Z) + Vs[j] for j in range(n)]
        acc = Z
        for a in range(1, n):
            acc = acc + left[a] * right[n - a]
        # x * acc = acc / y
        b = acc.shift(-1)
        if n == 1:
            b = b + LaurentX({1: ONE}, zero=ZERO)  # t/x = t y
        # u_n - y (u_n - [y^0]u_n) = b, i.e. per y-exponent j:
        # j <= 0: u_j = b_j + u_{j-1} (with u_j = 0 for j below the pole)
        # j = 1: u_1 = b_1; j >= 2: u_j = b_j + u_{j-1}
        prec = b.prec
        if prec is None or prec < 1:
            raise WindowOverflow("unary/binary tree window too small")
        lo = b.kmin if b else 0
        lo = min(lo, 0)
        coeffs = {}
        run = ZERO
        for j in range(lo, 1):
            run = run + b[j]
            coeffs[j] = run
        run = ZERO
        for j in range(1, prec + 1):
            run = b[j] if j == 1 else run + b[j]
            coeffs[j] = run
        U[n] = LaurentX(coeffs, prec=prec, zero=ZERO)
        Vs[n] = U[n] - LaurentX({0: U[n][0]}, zero=ZERO)
    U0 = TSeries([u[0] for u in U], zero=ZERO)
    charge1 = TSeries([u[-1] if u.prec is None or u.prec >= -1 else ZERO for u in U], zero=ZERO)
    return TreeSolution("unarybinary", U, U0, {"charge1": charge1})
