"""Critical points: y_c / t_c solvers, t_1(omega), the numeric t(q) landscape, ratio estimators.

The critical-point formulas here are predictions; outputs are labelled as such.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy.optimize import brentq

__all__ = ["CriticalPoint", "solve_yc", "t1", "t_of_q_numeric", "RegimeInfo", "classify_regime",
           "find_omega_c", "ratio_estimates", "PREDICTION"]

PREDICTION = "PREDICTION"

_BRACKETS = {"omega0": ((1, 4), (1, 2), (1, 1)), "omega1": ((1, 6), (1, 3), (1, 2))}


@dataclass(frozen=True)
class CriticalPoint:
    which: str
    v: float
    y_c: float
    t_c: float
    R_c: float
    residual: float
    label: str = PREDICTION


def _norm(which) -> str:
    from .closedform import _norm as n
    return n(which)


def _yc_equation(which: str, v, y, arccos_factor=1):
    """lhs - rhs of the characterisation of y_c, in mpmath.

    For omega=1 the arccos term carries factor 1: with factor 2 there is no
    root for v >= 2 and the roots elsewhere contradict the series coefficients.
    """
    if which == "omega0":
        lhs = 2 * mpmath.pi * v / (v - 1)
        s = mpmath.sqrt(4 * y - 1)
        rhs = 6 * mpmath.atan(s) + (1 - y) * s / (y * (2 * y - 1))
    else:
        lhs = mpmath.pi * v / (v - 1)
        rhs = arccos_factor * mpmath.acos((1 - 4 * y) / (2 * y)) + \
            mpmath.sqrt((6 * y - 1) * (1 - 2 * y)) / (4 * y * (3 * y - 1))
    return lhs - rhs


def solve_yc(which, v: float, iterations: int = 200, arccos_factor: int = 1) -> CriticalPoint:
    """Bisection for y_c on the side of the discontinuity selected by the sign of v-1.

    ``arccos_factor=2`` puts factor 2 on the arccos term of the omega=1 equation.
    """
    which = _norm(which)
    if not v > 0 or v == 1:
        raise ValueError("v must be positive and different from 1")
    lo, mid, hi = _BRACKETS[which]
    a, b = (lo, mid) if v < 1 else (mid, hi)
    with mpmath.workdps(60):
        vv = mpmath.mpf(v)
        A, B = mpmath.mpf(a[0]) / a[1], mpmath.mpf(b[0]) / b[1]
        eps = mpmath.mpf(10) ** -50
        A, B = A + eps, B - eps
        fa, fb = _yc_equation(which, vv, A, arccos_factor), _yc_equation(which, vv, B, arccos_factor)
        if fa * fb > 0:
            raise ValueError(f"no sign change of the y_c equation on ({a[0]}/{a[1]}, {b[0]}/{b[1]}) for v={v}")
        for _ in range(iterations):
            m = (A + B) / 2
            fm = _yc_equation(which, vv, m, arccos_factor)
            if fm == 0:
                A = B = m
                break
            if (fm > 0) == (fa > 0):
                A, fa = m, fm
            else:
                B = m
        y = (A + B) / 2
        res = abs(_yc_equation(which, vv, y, arccos_factor))
        if which == "omega0":
            tc = y * (2 * y - 1) / (vv - 1)
            Rc = y * (1 - y) ** 3
        else:
            tc = y * (3 * y - 1) / (vv - 1)
            Rc = y * (1 - y) ** 2
    return CriticalPoint(which, float(v), float(y), float(tc), float(Rc), float(res))


def t1(omega: float) -> float:
    """t_1 = sqrt(2-omega) / (4 arccos(omega/2) (2+omega)^(3/2)) for omega in (-2, 2)."""
    if not -2 < omega < 2:
        raise ValueError("omega must lie in (-2, 2)")
    return math.sqrt(2 - omega) / (4 * math.acos(omega / 2) * (2 + omega) ** 1.5)


# ---------------------------------------------------------------- numeric t(q)

def _cheb(omega: float, n_max: int):
    s = [1.0]
    c = [1.0]
    sp, cp = -1.0, 1.0
    for _ in range(n_max):
        s.append(-omega * s[-1] - sp)
        sp = s[-2]
        c.append(-omega * c[-1] - cp)
        cp = c[-2]
    return np.array(s), np.array(c)


def t_of_q_numeric(omega: float, q: float, terms: int = 16):
    """(t(q), t'(q)) from the theta-ratio sums with ``terms`` summands."""
    if not abs(q) < 1:
        raise ValueError("|q| must be < 1")
    n = np.arange(terms)
    s, c = _cheb(omega, terms - 1)
    e = n * (n + 1) // 2
    sg = np.where(n % 2 == 1, -1.0, 1.0)
    m = 2 * n + 1.0
    qe = np.power(float(q), e)
    dqe = np.where(e > 0, e * np.power(float(q), np.maximum(e - 1, 0)), 0.0)
    wA, wB, wC, wD = sg * m * c, sg * s, -sg * m * m * s, -sg * m ** 3 * c
    A, B, C, D = (float(np.dot(w, qe)) for w in (wA, wB, wC, wD))
    Ap, Bp, Cp, Dp = (float(np.dot(w, dqe)) for w in (wA, wB, wC, wD))
    if abs(A) < 1e-300:
        raise ZeroDivisionError("pole of t(q): A vanishes")
    k = 16 * (omega + 2)
    t = (C / A - B * D / A ** 2) / k
    dt = ((Cp * A - C * Ap) / A ** 2 - ((Bp * D + B * Dp) * A - 2 * B * D * Ap) / A ** 3) / k
    return t, dt


@dataclass(frozen=True)
class RegimeInfo:
    omega: float
    regime: str
    t0: float | None = None
    q0: float | None = None
    t1: float | None = None
    label: str = PREDICTION


def _stationary_point(omega: float, side: int, terms: int, grid: int = 2000):
    """Stationary point of t(q) nearest to 0 on the given side, unless a pole comes first."""
    qs = np.linspace(0, side * 0.995, grid)[1:]
    prev_q, prev_d, prev_A = 0.0, None, 1.0
    for q in qs:
        a = _A(omega, q, terms)
        if np.sign(a) != np.sign(prev_A):
            return None
        d = t_of_q_numeric(omega, q, terms)[1]
        if prev_d is not None and np.sign(d) != np.sign(prev_d):
            return brentq(lambda x: t_of_q_numeric(omega, x, terms)[1], prev_q, q, xtol=1e-15)
        prev_q, prev_d, prev_A = q, d, a
    return None


def _A(omega, q, terms):
    n = np.arange(terms)
    _, c = _cheb(omega, terms - 1)
    sg = np.where(n % 2 == 1, -1.0, 1.0)
    return float(np.dot(sg * (2 * n + 1) * c, np.power(float(q), n * (n + 1) // 2)))


def classify_regime(omega: float, terms: int = 16) -> RegimeInfo:
    """'log' (singularity t_1) or 'maplike' (stationary point t_0 of t(q))."""
    if abs(abs(omega) - 2) < 1e-9:
        raise ValueError("omega = +-2 is excluded")
    if omega > 2:
        q0 = _stationary_point(omega, 1, terms)
        if q0 is None:
            raise ArithmeticError(f"no stationary point of t(q) found on (0,1) for omega={omega}")
        return RegimeInfo(omega, "maplike", t_of_q_numeric(omega, q0, terms)[0], q0, None)
    q0 = _stationary_point(omega, -1, terms)
    if omega < -2:
        if q0 is None:
            raise ArithmeticError(f"no stationary point of t(q) found on (-1,0) for omega={omega}")
        return RegimeInfo(omega, "maplike", t_of_q_numeric(omega, q0, terms)[0], q0, None)
    tone = t1(omega)
    if q0 is None:
        return RegimeInfo(omega, "log", None, None, tone)
    t0 = t_of_q_numeric(omega, q0, terms)[0]
    regime = "maplike" if abs(t0) < tone else "log"
    return RegimeInfo(omega, regime, t0, q0, tone)


def find_omega_c(lo: float = -1.0, hi: float = -0.5, terms: int = 16, tol: float = 1e-6) -> float:
    """Bisection on the regime change between maplike (omega < omega_c) and log."""
    if classify_regime(lo, terms).regime != "maplike" or classify_regime(hi, terms).regime != "log":
        raise ArithmeticError("regime change not bracketed")
    while hi - lo > tol:
        m = (lo + hi) / 2
        if classify_regime(m, terms).regime == "maplike":
            lo = m
        else:
            hi = m
    return (lo + hi) / 2


# ---------------------------------------------------------------- ratio method

@dataclass
class RatioEstimates:
    n: list = field(default_factory=list)
    radius: list = field(default_factory=list)
    exponent_n: list = field(default_factory=list)
    exponent: list = field(default_factory=list)
    linear_n: list = field(default_factory=list)
    radius_linear: list = field(default_factory=list)
    skipped: list = field(default_factory=list)


def _scalar(x):
    if isinstance(x, float):
        return x
    if hasattr(x, "is_constant"):
        if not x.is_constant():
            raise ValueError("ratio estimates need numeric coefficients")
        return x.constant_value()
    return Fraction(x)


def ratio_estimates(coeffs) -> RatioEstimates:
    """q_n/q_{n+1} and n^2 (1 - q_{n+1} q_{n-1} / q_n^2); zero coefficients are skipped and flagged.

    ``radius_linear`` is the intercept n r_n - (n-1) r_{n-1} of consecutive
    ratios, which removes the 1/n term of r_n = rho (1 + c/n + ...).
    """
    c = [_scalar(x) for x in coeffs]
    if len(c) < 6:
        raise ValueError("need at least 6 coefficients")
    out = RatioEstimates()
    for n in range(len(c) - 1):
        if c[n] == 0 or c[n + 1] == 0:
            out.skipped.append(n)
            continue
        out.n.append(n)
        out.radius.append(float(c[n] / c[n + 1]))
    for i in range(1, len(out.n)):
        n = out.n[i]
        if out.n[i - 1] == n - 1:
            out.linear_n.append(n)
            out.radius_linear.append(n * out.radius[i] - (n - 1) * out.radius[i - 1])
    for n in range(1, len(c) - 1):
        if c[n] == 0:
            continue
        out.exponent_n.append(n)
        out.exponent.append(float(n * n * (1 - c[n + 1] * c[n - 1] / (c[n] * c[n]))))
    return out
