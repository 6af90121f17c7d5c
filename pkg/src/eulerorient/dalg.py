"""Differential equations in t for R_0, R_1 and log-derivatives of Lbar, checked on truncated series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closedform import _norm, compute_Q0, compute_Q1, solve_R
from .exactalg import ONE, ZERO, BivarPoly, TSeries, V

__all__ = ["OdeResidual", "verify_R_ode", "verify_logderiv", "verify_v1_limit"]


@dataclass(frozen=True)
class OdeResidual:
    which: str
    order_checked: int
    residual: TSeries

    @property
    def ok(self) -> bool:
        return not any(self.residual.c[: self.order_checked + 1])

    def first_failure(self):
        """(order, coefficient) of the first nonzero residual term, or None."""
        for n, c in enumerate(self.residual.c[: self.order_checked + 1]):
            if c:
                return n, c
        return None

    def __bool__(self):
        return self.ok


def _poly_t(coeffs, order: int) -> TSeries:
    """Polynomial in t with BivarPoly coefficients."""
    return TSeries([c if isinstance(c, BivarPoly) else BivarPoly(Fraction(c)) for c in coeffs],
                   order=order, zero=ZERO)


def _vval(v):
    return V if v is None else BivarPoly(Fraction(v))


def verify_R_ode(which, N: int, v=None, R: TSeries | None = None) -> OdeResidual:
    """Residual of the second-order equation satisfied by R, through t^N.

    ``R`` overrides the computed series (order >= N+2), e.g. to test the check itself.
    """
    which = _norm(which)
    if R is None:
        R = solve_R(which, N + 2, v)
    d1 = R.derivative()
    d2 = d1.derivative()
    n = N
    R, d1, d2 = R.truncate(n), d1.truncate(n), d2.truncate(n)
    vm1 = _vval(v) - 1
    t = _poly_t([0, 1], n)
    u = _poly_t([ZERO, vm1], n)
    t2, t3 = t * t, t * t * t
    if which == "omega0":
        res = (t2 * R * (R * R * 16 + (u * u * 8 + u * 20 - 1) * R + u * (u - 1) ** 3) * d2
               - t3 * (R * 4 - u * (u - 1) * 3) * d1 ** 3
               - t2 * u * (u * 8 + 1) * R * d1 * d1 * 3
               + u * u * R * (t * R * 12 - t * (u - 1) ** 2) * d1 * 3
               - u * u * R ** 3 * 16
               + u * u * (u * 4 - 1) * (u - 1) * R * R)
    else:
        res = (t2 * R * (R * R * 27 + (u * 36 - 1) * R - u * (u * 4 - 1) ** 2) * d2
               - t3 * (R * 3 - u * (u * 4 - 1) * 2) * d1 ** 3 * 2
               - t2 * u * (u * 12 + 1) * R * d1 * d1 * 6
               + t * u * u * R * (R * 18 + (u * 4 - 1)) * d1 * 6
               - u * u * R ** 3 * 54
               - u * u * (u * 12 - 1) * R * R * 2)
    return OdeResidual(f"R_ode_{which}", N, res)


def verify_logderiv(which, N: int, v=2) -> OdeResidual:
    """t Lbar' den - k Lbar num through t^N, at a rational v != 1."""
    which = _norm(which)
    if v is None or Fraction(v) == 1:
        raise ValueError("log-derivative identity needs a rational v != 1")
    vv = BivarPoly(Fraction(v))
    n = N + 1
    R = solve_R(which, n + 3, v)
    if which == "omega0":
        Q = compute_Q0(R, n, v)
        extra = Fraction(2, 3)
    else:
        Q = compute_Q1(R, n, v)
        extra = Fraction(1, 2)
    L = (Q + vv).shift(2).truncate(n) + R.truncate(n) * (vv * extra / (vv - 1))
    Lp = L.derivative()
    R1 = R.derivative().truncate(n - 1)
    m = n - 1
    L, Lp, Rm = L.truncate(m), Lp.truncate(m), R.truncate(m)
    t = _poly_t([0, 1], m)
    u = _poly_t([ZERO, vv - 1], m)
    if which == "omega0":
        num = t * t * R1 * R1 + t * u * (1 - u) * R1 + u * u * Rm * 3
        den = t * Rm * R1 * 4 + t * u * (1 - u) * R1 * 3 + u * (u * 8 + 1) * Rm
        k = 4
    else:
        num = t * t * R1 * R1 + t * u * (1 - u * 4) * R1 + u * u * Rm * 6
        den = t * Rm * R1 * 3 + t * u * (1 - u * 4) * R1 * 2 + u * (u * 12 + 1) * Rm
        k = 3
    res = t * Lp * den - L * num * k
    return OdeResidual(f"logderiv_{which}_v{v}", N, res)


def verify_v1_limit(N: int) -> OdeResidual:
    """At omega=0, v=1 the t-derivatives of 2t^2(2G+1) and t - R_0 agree."""
    R = solve_R("omega0", N + 3, 1)
    Q = compute_Q0(R, N + 1, 1)
    lhs = ((Q + 1).shift(2) * 2).truncate(N + 1).derivative()
    rhs = (TSeries.gen(N + 1) - R.truncate(N + 1)).derivative()
    return OdeResidual("v1_limit", N, lhs - rhs)
