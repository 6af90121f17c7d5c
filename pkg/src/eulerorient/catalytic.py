"""Two-catalytic system for the patch series P(y) and the D-patch series D(x,y).

Coefficients are solved in the order of the uniqueness induction: at
stage N+1 the x-series d[j][N+1-j] (j >= 2) come from the equation for D,
then d[1][N] from the y^1 extraction of the second equation, then the
scalars p[j][N-j] from its y^(j+1) extraction.

Internally D is divided by v (every D-patch has a local minimum, so the
division is exact); the public ``d`` field multiplies it back.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from .exactalg import ONE, ZERO, BivarPoly, LaurentX, TSeries, WindowOverflow, widen_window
from .onecat import Verdict, specialise

__all__ = ["PDState", "solve_pd_system", "compute_E", "check_E_symmetry",
           "check_P_equation", "catalytic_Q", "catalytic_M", "check_omega0_v1_identity",
           "fit_one_minus_x_basis", "widen_check"]


@dataclass
class PDState:
    """Solved coefficients: p[(j,n)] scalars and delta[(j,n)] = d[j][n]/v as x-series."""

    N: int
    x_degree: int
    omega: BivarPoly
    v: BivarPoly
    p: dict = field(default_factory=dict)
    delta: dict = field(default_factory=dict)

    def d(self, j: int, n: int) -> LaurentX:
        """[y^j t^n]D(x,y) as a truncated series in x."""
        return self.delta[(j, n)].scale(self.v)

    def P(self, j: int, n: int) -> BivarPoly:
        return self.p[(j, n)]

    def scalar(self, k: int, j: int, n: int) -> BivarPoly:
        """[x^k] of delta[j][n]."""
        return self.delta[(j, n)][k]


def _zero(prec=None):
    return LaurentX({}, prec=prec, zero=ZERO)


def solve_pd_system(N: int, x_degree: int | None = None, omega=None, v=None) -> PDState:
    """Determine p[j][n] and d[j][n] for j+n <= N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    X = N + 4 if x_degree is None else x_degree
    # the induction loses one x-order per unit of (j+n); work with a margin
    Xw = X + 2 * N + 4
    w, vv = specialise(omega, v)
    st = PDState(N, X, w, vv)
    p, dl = st.p, st.delta
    one = LaurentX({0: ONE}, zero=ZERO)
    dl[(0, 0)] = one
    p[(0, 0)] = vv
    for n in range(1, N + 2):
        dl[(0, n)] = _zero()
        p[(0, n)] = ZERO
    # stage 1: d[1][0] from (1-x) delta_{1,0} = 1
    dl[(1, 0)] = LaurentX({0: ONE}, prec=Xw, zero=ZERO).div_one_minus_x()

    def H(s: int) -> LaurentX:
        # [t^s] of delta_1(x) + (1/x) P(t/x)
        h = dl[(1, s)]
        neg = {}
        for k in range(0, s + 1):
            c = p.get((k, s - k))
            if c:
                neg[-k - 1] = c
        return h + LaurentX(neg, zero=ZERO) if neg else h

    Hcache = {}
    for stage in range(1, N + 1):
        # after this loop body: delta for j+n <= stage+1, p for j+n <= stage
        Np1 = stage + 1
        for s in range(0, stage):
            if s not in Hcache:
                Hcache[s] = H(s)
        for j in range(2, Np1 + 1):
            n = Np1 - j
            acc = _zero()
            for m in range(0, n + 1):
                a = dl[(j - 1, m)]
                if a:
                    acc = acc + a * Hcache[n - m]
            dl[(j, n)] = acc.part(0, None)
        # d[1][stage]: (1-x) delta_{1,N} = omega delta_{2,N-1} + sum delta_{k+1,m} [x^k]delta_{1,n}
        Nn = stage
        rhs = dl[(2, Nn - 1)].scale(w)
        for k in range(0, Nn):
            for nn in range(0, Nn - k):
                m = Nn - 1 - k - nn
                c = dl[(1, nn)][k]
                if c:
                    rhs = rhs + dl[(k + 1, m)].scale(c)
        dl[(1, Nn)] = rhs.div_one_minus_x()
        # p[j][N-j], j >= 1
        for j in range(1, Nn + 1):
            n = Nn - j
            val = dl[(j + 1, n)] - dl[(j + 1, n)].shift(1) - dl[(j, n)]
            for i in range(1, j):
                k = j - i
                for m in range(0, n + 1):
                    c = p[(k, n - m)]
                    if c:
                        val = val - dl[(i, m)].scale(c)
            if n >= 1:
                val = val - dl[(j + 2, n - 1)].scale(w)
            for k in range(0, n):
                for nn in range(0, n - k):
                    m = n - 1 - k - nn
                    c = dl[(1, nn)][k]
                    if c:
                        val = val - dl[(j + 1 + k, m)].scale(c)
            nonconst = {e: c for e, c in val.coeffs.items() if e != 0}
            if val.prec is not None and val.prec < 1:
                raise WindowOverflow("x window too small to confirm constant p-coefficients")
            if nonconst:
                e = min(nonconst)
                raise ArithmeticError(f"p[{j}][{n}] extraction is not constant in x (x^{e})")
            p[(j, n)] = val[0]
    # final precision check
    for key, f in dl.items():
        if f.prec is not None and f.prec < X and sum(key) <= N:
            raise WindowOverflow(f"d{key} known only to x^{f.prec} < {X}")
    for key in list(dl):
        if dl[key].prec is not None and sum(key) <= N:
            dl[key] = dl[key].truncate(X)
    return st


def catalytic_Q(st: PDState) -> TSeries:
    """Q = [y^1]P - v, known to order N-1."""
    order = st.N - 1
    return TSeries([ZERO] + [st.p[(1, n)] for n in range(1, order + 1)], order=order, zero=ZERO)


def catalytic_M(st: PDState, order: int | None = None) -> list:
    """[t^m]M(x) = sum_{j+l=m-1} p[j][l] x^(-j-1) + d[1][m-1]/v, for 1 <= m <= order."""
    order = st.N + 1 if order is None else order
    out = [None]
    for m in range(1, order + 1):
        neg = {-j - 1: st.p[(j, m - 1 - j)] for j in range(0, m) if st.p.get((j, m - 1 - j))}
        out.append(st.delta[(1, m - 1)] + LaurentX(neg, zero=ZERO))
    return out


def compute_E(st: PDState):
    """Return (E, symmetric) where E[(a,b,n)] = [x^a y^b t^n]E(x,y) for a+b+n <= N.

    E(x,y) = (1/v)[x^{>=0}](D(t/x, y) P(x)).
    """
    E = _E_coeffs(st)
    return E, all(E[(b, a, n)] == c for (a, b, n), c in E.items())


def _E_coeffs(st: PDState) -> dict:
    N = st.N
    E = {}
    for n in range(0, N + 1):
        for a in range(0, N + 1 - n):
            for b in range(0, N + 1 - n - a):
                acc = ZERO
                for k in range(0, n + 1):
                    for m in range(0, n - k + 1):
                        l = n - k - m
                        c = st.delta[(b, m)][k]
                        if c:
                            q = st.p.get((a + k, l))
                            if q:
                                acc = acc + c * q
                E[(a, b, n)] = acc
    return E


def check_E_symmetry(st: PDState, E: dict | None = None) -> Verdict:
    if E is None:
        E = _E_coeffs(st)
    for (a, b, n), c in E.items():
        if E[(b, a, n)] != c:
            return Verdict("E_symmetry", False, n, f"E[{a},{b},{n}] != E[{b},{a},{n}]")
    for (a, b, n), c in E.items():
        if a == 0 and c != st.p[(b, n)]:
            return Verdict("E_symmetry", False, n, f"E(0,y) differs from P(y) at y^{b} t^{n}")
    return Verdict("E_symmetry", True, st.N, "E(x,y)=E(y,x) and E(0,y)=P(y)")


def check_P_equation(st: PDState, E: dict | None = None, via_D: bool = False) -> Verdict:
    """P = v + yP(P+1-v) + (omega t/y)[y^{>1}]P + t[y^{>0}x^1](E(x,y)+E(y,x)).

    With ``via_D`` the last term is replaced by (2t/v)[y^{>0}](P [z^1]D(t/y,z)).
    """
    if E is None and not via_D:
        E = _E_coeffs(st)
    N = st.N
    name = "PD_add" if via_D else "P_equation"
    p, w, vv = st.p, st.omega, st.v
    for b in range(0, N + 1):
        for n in range(0, N + 1 - b):
            rhs = vv if (b, n) == (0, 0) else ZERO
            if b >= 1:
                # [y^{b-1} t^n] P(P + 1 - v)
                acc = p[(b - 1, n)] * (1 - vv)
                for i in range(0, b):
                    for m in range(0, n + 1):
                        acc = acc + p[(i, m)] * p[(b - 1 - i, n - m)]
                rhs = rhs + acc
                if n >= 1 and not via_D:
                    rhs = rhs + E[(1, b, n - 1)] + E[(b, 1, n - 1)]
                elif n >= 1:
                    for k in range(0, n):
                        for nn in range(0, n - k):
                            m = n - 1 - k - nn
                            c = st.delta[(1, nn)][k]
                            if c and (b + k, m) in p:
                                rhs = rhs + 2 * c * p[(b + k, m)]
            if b >= 1 and n >= 1 and (b + 1, n - 1) in p:
                rhs = rhs + w * p[(b + 1, n - 1)]
            if rhs != p[(b, n)]:
                return Verdict(name, False, n, f"mismatch at y^{b} t^{n}")
    return Verdict(name, True, N)


def check_omega0_v1_identity(st: PDState) -> Verdict:
    """At omega=0, v=1: [y^1]D(x,y) = P(t/(1-x))/(1-x)."""
    if st.omega != 0 or st.v != 1:
        raise ValueError("identity holds at omega=0, v=1 only")
    X = st.x_degree
    for n in range(0, st.N):
        rhs = LaurentX({}, prec=X, zero=ZERO)
        for j in range(0, n + 1):
            c = st.p[(j, n - j)]
            if c:
                rhs = rhs + LaurentX({0: c}, prec=X, zero=ZERO).div_one_minus_x(j + 1)
        if not st.delta[(1, n)].truncate(X) == rhs:
            return Verdict("omega0_v1", False, n, f"[y^1 t^{n}]D mismatch")
    return Verdict("omega0_v1", True, st.N - 1)


def fit_one_minus_x_basis(f: LaurentX, margin: int = 2):
    """Smallest K with (1-x)^K f a polynomial of degree <= K (checked to x^prec).

    Returns K, or None if no K leaves ``margin`` verified coefficients.
    """
    if f.prec is None:
        return None if f.kmin is not None and f.kmin < 0 else 0
    g = f
    for K in range(0, f.prec - margin + 1):
        if all(not c for e, c in g.coeffs.items() if e > K):
            return K
        g = (g - g.shift(1)).truncate(f.prec)
    return None


def widen_check(N: int, x_degree: int, omega=None, v=None) -> PDState:
    """Solve twice (window and 25% wider) and insist on identical results."""
    from .exactalg import WindowMismatch

    a = solve_pd_system(N, x_degree, omega, v)
    b = solve_pd_system(N, widen_window(x_degree), omega, v)
    if a.p != b.p:
        raise WindowMismatch("p coefficients changed under widening")
    for k, f in a.delta.items():
        if sum(k) <= N and not (b.delta[k].truncate(x_degree) == f):
            raise WindowMismatch(f"d{k} changed under widening")
    return a
