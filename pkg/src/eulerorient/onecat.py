"""One-catalytic characterisation: the series M(x), F(x) and Q.

``compute_M`` runs the order-by-order recursion for M(x).  Every [t^n]M
is held as a truncated Laurent series in x whose lowest exponent is -n.
The y-sums of the recursion are reduced to x-independent scalars
([y^j] of powers of M(y)), which makes the [y^-1] extraction exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import flint
import numpy as np

from .exactalg import (ONE, ZERO, BivarPoly, LaurentX, TSeries, WindowOverflow,
                       geometric, widen_window)

__all__ = [
    "MSeries", "Verdict", "compute_M", "compute_F", "extract_Q", "compute_Q",
    "check_Z_nonneg", "check_involution", "check_kernel", "check_M_basics",
    "fit_M_basis", "specialise",
]


def specialise(omega=None, v=None):
    """Return (omega, v) as BivarPoly, either symbolic or exact constants."""
    w = BivarPoly.omega() if omega is None else BivarPoly(Fraction(omega))
    vv = BivarPoly.v() if v is None else BivarPoly(Fraction(v))
    return w, vv


@dataclass(frozen=True)
class MSeries:
    """[t^n]M for 1 <= n <= order, each a LaurentX truncated at ``x_max``."""

    coeffs: tuple
    x_max: int
    omega: BivarPoly
    v: BivarPoly

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> LaurentX:
        if n == 0:
            return LaurentX({}, zero=ZERO)
        if n > self.order:
            raise WindowOverflow(f"t^{n} beyond order {self.order}")
        return self.coeffs[n - 1]

    def as_tseries(self) -> TSeries:
        zero = LaurentX({}, zero=ZERO)
        return TSeries([zero] + list(self.coeffs), zero=zero)


@dataclass
class Verdict:
    """Outcome of an identity check."""

    name: str
    ok: bool
    order: int
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _need(f: LaurentX, prec: int) -> None:
    if f.prec is not None and f.prec < prec:
        raise WindowOverflow(f"precision {f.prec} below required {prec}")


def _cut(f: LaurentX, prec: int) -> LaurentX:
    if f.prec is not None and f.prec < prec:
        raise WindowOverflow(f"precision {f.prec} below required {prec}")
    return f.truncate(prec)


def compute_M(N: int, x_max: int, omega=None, v=None) -> MSeries:
    """Coefficients of M(x) up to t^N, expanded in x up to x^x_max.

    ``omega``/``v`` default to symbolic; pass exact rationals to specialise.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    w, vv = specialise(omega, v)
    P = x_max + N + 2
    one_minus_v = ONE - vv

    Ms: list[LaurentX] = []
    # pow_M[n][m] = [t^m] M^n, pow_W[n][m] = [t^m] W^n with W = M + t(1-v)/x
    pow_M: list[dict] = [None, {}]
    pow_W: list[dict] = [None, {}]
    wpow = [ONE]
    for _ in range(N + 2):
        wpow.append(wpow[-1] * w)

    for m in range(1, N + 1):
        for n in range(2, m + 1):
            if n >= len(pow_M):
                pow_M.append({})
                pow_W.append({})
            accM = accW = None
            for a in range(1, m - n + 2):
                prevM = pow_M[n - 1].get(m - a)
                if prevM is not None and prevM:
                    term = pow_M[1][a] * prevM
                    accM = term if accM is None else accM + term
                prevW = pow_W[n - 1].get(m - a)
                if prevW is not None and prevW:
                    term = pow_W[1][a] * prevW
                    accW = term if accW is None else accW + term
            pow_M[n][m] = accM if accM is not None else LaurentX({}, prec=P, zero=ZERO)
            pow_W[n][m] = accW if accW is not None else LaurentX({}, prec=P, zero=ZERO)

        if m == 1:
            Mm = LaurentX({-1: vv}, zero=ZERO) + geometric(1, P)
        else:
            Mm = LaurentX({}, prec=P, zero=ZERO)
            # local x-sum
            xsum = None
            for n in range(2, m + 1):
                c = pow_M[n][m]
                if c:
                    term = c.scale(wpow[n - 1] / n)
                    xsum = term if xsum is None else xsum + term
            if xsum is not None:
                Mm = Mm + xsum.shift(1).div_one_minus_x()
            # first y-sum: scalars c_{n,j} = [y^j](M^n)_m
            polyA: dict[int, BivarPoly] = {}
            # second y-sum: coefficient of (1-x)^(-p)
            geo: dict[int, BivarPoly] = {}
            for n in range(2, m + 1):
                c = pow_M[n][m]
                cm1 = c[-1]
                S = ZERO
                for k in range(0, m):
                    ck = c[-1 - k]
                    if ck:
                        S = S + wpow[k] * ck
                inv_n = Fraction(1, n)
                if cm1:
                    polyA[-n] = polyA.get(-n, ZERO) + cm1 * inv_n
                if S:
                    polyA[1 - n] = polyA.get(1 - n, ZERO) - S * inv_n
                wn = pow_W[n][m]
                for k in range(0, m):
                    wk = wn[-1 - k]
                    if not wk:
                        continue
                    base = wk * wpow[k] * inv_n
                    for i in range(k + 1):
                        p = n + i
                        geo[p] = geo.get(p, ZERO) + base * math.comb(n - 2 + i, i)
            if polyA:
                Mm = Mm + LaurentX(polyA, prec=P, zero=ZERO).div_one_minus_x()
            for p, c in geo.items():
                if c:
                    Mm = Mm + geometric(p, P).scale(c)
        Ms.append(Mm)
        pow_M[1][m] = Mm
        pow_W[1][m] = Mm + LaurentX({-1: one_minus_v}, zero=ZERO) if m == 1 else Mm

    out = tuple(_cut(Mm, x_max) for Mm in Ms)
    return MSeries(out, x_max, w, vv)


def check_M_basics(M: MSeries) -> Verdict:
    """[x^-1]M = tv and the valuation of [t^n]M is at least -n."""
    for n in range(1, M.order + 1):
        c = M[n]
        if c.valuation() < -n:
            return Verdict("M_basics", False, n, f"valuation below -{n} at t^{n}")
        want = M.v if n == 1 else ZERO
        if c[-1] != want:
            return Verdict("M_basics", False, n, f"[x^-1 t^{n}]M = {c[-1]}")
    return Verdict("M_basics", True, M.order)


def compute_F(M: MSeries) -> TSeries:
    """F(x) = (xM - t(v-1))(1 - omega x - M); raises if a negative x-power survives."""
    N = M.order
    P = M.x_max
    zero = LaurentX({}, zero=ZERO)
    A = [zero] + [M[n].shift(1) for n in range(1, N + 1)]
    A[1] = A[1] - (M.v - 1)
    B = [LaurentX({0: ONE, 1: -M.omega}, zero=ZERO)] + [-M[n] for n in range(1, N + 1)]
    F = [zero]
    for m in range(1, N + 1):
        acc = LaurentX({}, zero=ZERO)
        for a in range(1, m + 1):
            acc = acc + A[a] * B[m - a]
        acc = acc.truncate(P)
        neg = {k: c for k, c in acc.coeffs.items() if k < 0}
        if neg:
            k = min(neg)
            raise ArithmeticError(f"F has a negative x-part at t^{m} x^{k}: {neg[k]}")
        F.append(acc)
    return TSeries(F, zero=zero)


def extract_Q(M: MSeries, F: TSeries | None = None) -> TSeries:
    """Q = [x^-2]M / t^2 - v, cross-checked against the constant-term formula."""
    if F is None:
        F = compute_F(M)
    N = M.order - 2
    if N < 1:
        raise ValueError("need M to order >= 3")
    Q = [ZERO] + [M[n + 2][-2] for n in range(1, N + 1)]
    if M[2][-2] != M.v:
        raise ArithmeticError(f"[t^2 x^-2]M = {M[2][-2]}, expected v")
    # (omega+2) t^2 (Q+v) = t - F(0) + t(v-1)[x^0]M
    for n in range(1, N + 3):
        lhs = ZERO if n == 1 else (M.omega + 2) * (Q[n - 2] if n > 2 else M.v)
        rhs = (ONE if n == 1 else ZERO) - F[n][0] + (M.v - 1) * M[n - 1][0]
        if lhs != rhs:
            raise ArithmeticError(f"alternative Q expression disagrees at t^{n}: {lhs} vs {rhs}")
    return TSeries(Q, zero=ZERO)


def compute_Q(N: int, omega=None, v=None, x_max: int | None = None) -> TSeries:
    """Q to order N (needs M to order N+2)."""
    M = compute_M(N + 2, N + 2 if x_max is None else x_max, omega, v)
    return extract_Q(M)


def t_minus_F0(F: TSeries) -> TSeries:
    return TSeries([ZERO, ONE] + [ZERO] * (F.order - 1), zero=ZERO) - F.map(lambda a: a[0])


# ---------------------------------------------------------------------------
# Z(x,y) check with dense 2D arrays of raw flint polynomials

_CTX = flint.fmpq_mpoly_ctx.get(("w", "v"), "lex")
_Z0 = _CTX.from_dict({})


def _raw(p: BivarPoly):
    return p._p


def _obj(raw):
    # 0-d object array, so numpy broadcasts the polynomial as a scalar
    a = np.empty((), dtype=object)
    a[()] = raw
    return a


class _Grid:
    """Dense array a[i - lo, j - lo] for x^i y^j, i,j in [lo, hi]."""

    __slots__ = ("a", "lo", "hi")

    def __init__(self, lo, hi, a=None):
        self.lo, self.hi = lo, hi
        n = hi - lo + 1
        if a is None:
            a = np.empty((n, n), dtype=object)
            a.fill(_Z0)
        self.a = a

    def get(self, i, j):
        if self.lo <= i <= self.hi and self.lo <= j <= self.hi:
            return self.a[i - self.lo, j - self.lo]
        return _Z0


def _mul_x_series(g: _Grid, f: LaurentX, lo, hi) -> _Grid:
    """g(x,y) * f(x) restricted to [lo,hi]^2 (f has only x >= 0 exponents)."""
    out = _Grid(lo, hi)
    src = g.a
    for k, c in f.coeffs.items():
        if k > hi - lo:
            continue
        raw = c._p
        # out[i+k, j] += c * g[i, j]
        i0 = max(g.lo, lo - k)
        i1 = min(g.hi, hi - k)
        j0 = max(g.lo, lo)
        j1 = min(g.hi, hi)
        if i0 > i1 or j0 > j1:
            continue
        blk = src[i0 - g.lo:i1 - g.lo + 1, j0 - g.lo:j1 - g.lo + 1] * _obj(raw)
        out.a[i0 + k - lo:i1 + k - lo + 1, j0 - lo:j1 - lo + 1] += blk
    return out


def _mul_y_series(g: _Grid, f: LaurentX, lo, hi) -> _Grid:
    gt = _Grid(g.lo, g.hi, g.a.T.copy())
    r = _mul_x_series(gt, f, lo, hi)
    return _Grid(lo, hi, r.a.T.copy())


def _add(g: _Grid, h: _Grid) -> _Grid:
    assert g.lo == h.lo and g.hi == h.hi
    return _Grid(g.lo, g.hi, g.a + h.a)


def _div_xy(g: _Grid) -> _Grid:
    # x^i y^j -> x^(i-1) y^(j-1): same array, shifted window
    return _Grid(g.lo - 1, g.hi - 1, g.a)


def _crop(g: _Grid, lo, hi) -> _Grid:
    out = _Grid(lo, hi)
    a0, a1 = max(lo, g.lo), min(hi, g.hi)
    if a0 <= a1:
        out.a[a0 - lo:a1 - lo + 1, a0 - lo:a1 - lo + 1] = g.a[a0 - g.lo:a1 - g.lo + 1, a0 - g.lo:a1 - g.lo + 1]
    return out


def _div_kernel(g: _Grid, w) -> _Grid:
    """g / (1 - y - omega x), solved by h = g + y h + omega x h in increasing order."""
    h = g.a.copy()
    n = h.shape[0]
    wr = w._p
    for i in range(n):
        for j in range(n):
            acc = h[i, j]
            if j > 0:
                acc = acc + h[i, j - 1]
            if i > 0:
                acc = acc + wr * h[i - 1, j]
            h[i, j] = acc
    return _Grid(g.lo, g.hi, h)


def check_Z_nonneg(M: MSeries, B: int = 3, F: TSeries | None = None) -> Verdict:
    """Expand Z(x,y) up to t^N on the box [-(N+1), B]^2 and look for negative exponents.

    Uses Z = Num(x,y) / Num(y,x) with
    Num(x,y) = (xy - t(v-1))(1 - x - omega y) - F(y).
    Also checks [t^0]Z and the omega(omega-1)(x-y) factor of [t^1]Z.
    """
    if F is None:
        F = compute_F(M)
    N = M.order
    if M.x_max < B + N + 1:
        raise WindowOverflow(f"Z check needs x_max >= {B + N + 1}")
    w, vv = M.omega, M.v
    H = [B + N - m for m in range(N + 1)]
    lo = -(N + 1)
    top = B + N
    # delta_k(x,y): D = xy(1-y-omega x) - delta, delta = t(v-1)(1-y-omega x) + F(x)
    # U = 1/D: U_0 = 1/D0 and U_m = (sum_k delta_k U_{m-k}) / D0
    one = _Grid(lo, top + 1)
    one.a[-lo, -lo] = _raw(ONE)
    U = [_crop(_div_xy(_div_kernel(one, w)), lo, top)]
    vm1 = vv - 1
    for k in range(1, N + 1):
        _need(F[k], top + 1)
    for m in range(1, N + 1):
        acc = _Grid(lo, top + 1)
        for k in range(1, m + 1):
            acc = _add(acc, _mul_x_series(U[m - k], F[k].truncate(top + 1), lo, top + 1))
            if k == 1:
                # (v-1)(1 - y - omega x) U_{m-1}
                base = U[m - 1]
                acc = _add(acc, _mul_x_series(base, LaurentX({0: vm1, 1: -w * vm1}, zero=ZERO), lo, top + 1))
                acc = _add(acc, _mul_y_series(base, LaurentX({1: -vm1}, zero=ZERO), lo, top + 1))
        U.append(_crop(_div_xy(_div_kernel(acc, w)), lo, top))

    # numerator pieces
    Num0 = _Grid(lo, top)
    # xy(1 - x - omega y)
    Num0.a[1 - lo, 1 - lo] = _raw(ONE)
    Num0.a[2 - lo, 1 - lo] = _raw(-ONE)
    Num0.a[1 - lo, 2 - lo] = _raw(-w)
    Z = []
    for m in range(N + 1):
        acc = _crop(_mul_poly2(U[m], Num0, lo, top), lo, top)
        if m >= 1:
            # -(v-1)(1 - x - omega y) U_{m-1}
            base = U[m - 1]
            t1 = _mul_x_series(base, LaurentX({0: -vm1, 1: vm1}, zero=ZERO), lo, top)
            t2 = _mul_y_series(base, LaurentX({1: w * vm1}, zero=ZERO), lo, top)
            acc = _add(acc, _add(t1, t2))
        for a in range(1, m + 1):
            acc = _add(acc, _mul_y_series(U[m - a], (-F[a]).truncate(top), lo, top))
        Z.append(acc)

    def bad(m):
        g = Z[m]
        hi = min(H[m], B)
        for i in range(lo, hi + 1):
            for j in range(lo, hi + 1):
                if (i < 0 or j < 0) and not g.get(i, j).is_zero():
                    return (i, j, BivarPoly._wrap(g.get(i, j)))
        return None

    for m in range(N + 1):
        b = bad(m)
        if b is not None:
            return Verdict("Z_nonneg", False, m, f"[t^{m} x^{b[0]} y^{b[1]}]Z = {b[2]}")
    # [t^0]Z = (1 - x - omega y)/(1 - y - omega x)
    ref = _Grid(lo, top)
    ref.a[-lo, -lo] = _raw(ONE)
    ref.a[1 - lo, -lo] = _raw(-ONE)
    ref.a[-lo, 1 - lo] = _raw(-w)
    ref = _div_kernel(ref, w)
    for i in range(0, B + 1):
        for j in range(0, B + 1):
            if Z[0].get(i, j) != ref.get(i, j):
                return Verdict("Z_nonneg", False, 0, f"[t^0 x^{i} y^{j}]Z differs from the kernel ratio")
    extra = {}
    if N >= 1 and M.omega == BivarPoly.omega():
        for wv in (0, 1):
            for i in range(0, B + 1):
                for j in range(0, B + 1):
                    c = BivarPoly._wrap(Z[1].get(i, j)).subs(omega=wv)
                    if c:
                        return Verdict("Z_nonneg", False, 1, f"[t^1 x^{i} y^{j}]Z nonzero at omega={wv}")
        for d in range(0, B + 1):
            diag = ZERO
            for i in range(0, d + 1):
                diag = diag + BivarPoly._wrap(Z[1].get(i, d - i))
            if diag:
                return Verdict("Z_nonneg", False, 1, f"[t^1]Z at x=y nonzero in degree {d}")
        extra["t1_factor"] = True
    return Verdict("Z_nonneg", True, N, f"box [{lo},{B}]^2", extra)


def _mul_poly2(g: _Grid, p: _Grid, lo, hi) -> _Grid:
    """Product with a sparse polynomial grid p (nonnegative exponents)."""
    out = _Grid(lo, hi)
    n = p.hi - p.lo + 1
    for a in range(n):
        for b in range(n):
            c = p.a[a, b]
            if c.is_zero():
                continue
            di, dj = a + p.lo, b + p.lo
            i0, i1 = max(g.lo, lo - di), min(g.hi, hi - di)
            j0, j1 = max(g.lo, lo - dj), min(g.hi, hi - dj)
            if i0 > i1 or j0 > j1:
                continue
            out.a[i0 + di - lo:i1 + di - lo + 1, j0 + dj - lo:j1 + dj - lo + 1] += \
                g.a[i0 - g.lo:i1 - g.lo + 1, j0 - g.lo:j1 - g.lo + 1] * _obj(c)
    return out


# ---------------------------------------------------------------------------
# involution and kernel identity in the variables (x, s = t/x)


class _BiSeries:
    """Truncated series in x and s, dense array c[i][j] for x^i s^j."""

    __slots__ = ("a", "X", "S")

    def __init__(self, X, S, a=None):
        self.X, self.S = X, S
        if a is None:
            a = np.empty((X + 1, S + 1), dtype=object)
            a.fill(_Z0)
        self.a = a

    def __mul__(self, o):
        out = _BiSeries(self.X, self.S)
        A, Bm = self.a, o.a
        for i in range(self.X + 1):
            for j in range(self.S + 1):
                c = A[i, j]
                if c.is_zero():
                    continue
                out.a[i:, j:] += Bm[: self.X + 1 - i, : self.S + 1 - j] * _obj(c)
        return out

    def __add__(self, o):
        return _BiSeries(self.X, self.S, self.a + o.a)

    def __sub__(self, o):
        return _BiSeries(self.X, self.S, self.a - o.a)

    def scale(self, c):
        return _BiSeries(self.X, self.S, self.a * _obj(c))

    def shift(self, di, dj):
        out = _BiSeries(self.X, self.S)
        if di <= self.X and dj <= self.S:
            out.a[di:, dj:] = self.a[: self.X + 1 - di, : self.S + 1 - dj]
        return out

    def first_nonzero(self):
        for i in range(self.X + 1):
            for j in range(self.S + 1):
                if not self.a[i, j].is_zero():
                    return i, j
        return None


def _to_xs(M: MSeries, X: int, S: int, divide_s: bool) -> _BiSeries:
    """Rewrite sum a_{n,k} t^n x^k as sum a_{n,k} s^n x^(n+k) (optionally / s)."""
    out = _BiSeries(X, S)
    for n in range(1, M.order + 1):
        sj = n - 1 if divide_s else n
        if sj > S:
            continue
        for k, c in M[n].coeffs.items():
            i = n + k
            if i < 0:
                raise ArithmeticError("x-valuation below -n")
            if i <= X:
                out.a[i, sj] = out.a[i, sj] + c._p
    return out


def _xs_window(M: MSeries, X, S):
    if M.order < max(X, S + 1) or M.x_max < max(X, S):
        raise WindowOverflow(f"involution check needs order >= {max(X, S + 1)} and x_max >= {max(X, S)}")


def check_involution(M: MSeries, X: int | None = None, S: int | None = None) -> Verdict:
    """M(M(x)) = x on the region x-degree <= X, s-degree <= S where s = t/x.

    With G = M/s (invertible, constant term v) the identity is checked in
    the inverse-free form  sum a_{n,k} x^n s^(n+k) G^(k+K) = x G^K, K = X.
    """
    X = M.order if X is None else X
    S = M.order - 1 if S is None else S
    _xs_window(M, X, S)
    G = _to_xs(M, X, S, divide_s=True)
    K = X
    kmin = -X
    kmax = S
    powers = {0: _BiSeries(X, S)}
    powers[0].a[0, 0] = _raw(ONE)
    for p in range(1, K + kmax + 1):
        powers[p] = powers[p - 1] * G
    lhs = _BiSeries(X, S)
    for n in range(1, X + 1):
        for k, c in M[n].coeffs.items():
            if k < kmin or n + k > S:
                continue
            term = powers[k + K].shift(n, n + k).scale(c._p)
            lhs = lhs + term
    rhs = powers[K].shift(1, 0)
    diff = lhs - rhs
    bad = diff.first_nonzero()
    if bad is not None:
        return Verdict("involution", False, M.order, f"[x^{bad[0]} s^{bad[1]}] of M(M(x))G^K - xG^K nonzero")
    return Verdict("involution", True, M.order, f"x-degree <= {X}, (t/x)-degree <= {S}")


def check_kernel(M: MSeries, F: TSeries | None = None, X: int | None = None, S: int | None = None) -> Verdict:
    """F(M(x)) = (x M(x) - t(v-1))(1 - x - omega M(x)) in the (x, t/x) region."""
    if F is None:
        F = compute_F(M)
    X = M.order if X is None else X
    S = M.order - 1 if S is None else S
    _xs_window(M, X, S)
    G = _to_xs(M, X, S, divide_s=True)
    kmax = S
    powers = {0: _BiSeries(X, S)}
    powers[0].a[0, 0] = _raw(ONE)
    for p in range(1, kmax + 1):
        powers[p] = powers[p - 1] * G
    lhs = _BiSeries(X, S)
    for n in range(1, min(X, F.order) + 1):
        for k, c in F[n].coeffs.items():
            if n + k > S:
                continue
            lhs = lhs + powers[k].shift(n, n + k).scale(c._p)
    # s x (G - v + 1)(1 - x - omega s G)
    one = powers[0]
    a = (G - one.scale(_raw(M.v - 1))).shift(1, 1)
    b = one - one.shift(1, 0) - G.shift(0, 1).scale(_raw(M.omega))
    rhs = a * b
    bad = (lhs - rhs).first_nonzero()
    if bad is not None:
        return Verdict("kernel", False, M.order, f"[x^{bad[0]} s^{bad[1]}] mismatch")
    return Verdict("kernel", True, M.order, f"x-degree <= {X}, (t/x)-degree <= {S}")


def fit_M_basis(M: MSeries, n: int) -> dict | None:
    """Write [t^n]M as sum_j b_j x^-j + sum_j c_j (1-x)^-j, exactly.

    Returns {('x', j): b_j, ('1-x', j): c_j} or None if the truncated
    expansion is not of that form (the pole order at 1 is at most 2n-1).
    """
    f = M[n]
    out = {}
    neg = {k: c for k, c in f.coeffs.items() if k < 0}
    for k, c in neg.items():
        out[("x", -k)] = c
    rest = f.part(0, None)
    J = 2 * n
    if M.x_max < 2 * J:
        raise WindowOverflow("basis fit needs x_max >= 4n")
    # multiply by (1-x)^J: the result must be a polynomial of degree <= J
    g = rest
    for _ in range(J):
        g = g - g.shift(1)
    g = g.truncate(M.x_max)
    if any(k > J for k in g.coeffs):
        return None
    # solve sum_j c_j (1-x)^(J-j) = g(x) for c_1..c_J (c_0 would be a polynomial part)
    # expand in u = 1-x: g(1-u) gives the coefficients directly
    coeffs_u = {}
    for k, c in g.coeffs.items():
        # x^k = (1-u)^k
        for i in range(k + 1):
            coeffs_u[i] = coeffs_u.get(i, ZERO) + c * ((-1) ** i * math.comb(k, i))
    for i, c in coeffs_u.items():
        if not c:
            continue
        j = J - i
        if j <= 0:
            return None
        out[("1-x", j)] = c
    return out


def widen_check_M(N: int, x_max: int, omega=None, v=None) -> MSeries:
    """compute_M validated by re-running with a 25% wider x window."""
    narrow = compute_M(N, x_max, omega, v)
    wide = compute_M(N, widen_window(x_max), omega, v)
    for n in range(1, N + 1):
        if not wide[n].truncate(x_max) == narrow[n]:
            from .exactalg import WindowMismatch
            raise WindowMismatch(f"[t^{n}]M changed under window widening")
    return narrow
