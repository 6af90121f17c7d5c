"""One entry point for the coefficient table of Q, whichever method computes it."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import ZERO, TSeries

METHODS = ("oracle", "catalytic", "onecat", "closedform0", "closedform1", "sixvertex")

__all__ = ["METHODS", "CoeffTable", "compute_coeffs", "parse_value"]


@dataclass
class CoeffTable:
    method: str
    order: int
    omega: Fraction | None
    v: Fraction | None
    Q: TSeries
    R: TSeries | None = None
    R_name: str = ""

    def rows(self):
        for n in range(self.order + 1):
            yield n, self.Q[n], (self.R[n] if self.R is not None else None)


def parse_value(text):
    """None / 'symbolic' stay symbolic; anything else is an exact rational."""
    if text is None:
        return None
    if isinstance(text, str) and text.strip().lower() in ("", "symbolic", "sym", "none"):
        return None
    return Fraction(text)


def _subs(s: TSeries, omega, v) -> TSeries:
    if omega is None and v is None:
        return s
    return TSeries([c.subs(omega, v) for c in s.c], order=s.order, zero=ZERO, var=s.var)


def compute_coeffs(method: str, N: int = 12, omega=None, v=None) -> CoeffTable:
    """Q(t) to order N by ``method``; ``omega``/``v`` None means symbolic."""
    omega, v = parse_value(omega), parse_value(v)
    if N < 1:
        raise ValueError("order must be >= 1")
    if method == "oracle":
        from .oracles import count_partial_orientations
        if N > 5:
            raise ValueError("the brute-force oracle is limited to order <= 5")
        # the t^0 term is the one-vertex map, weight v; Q starts at t^1
        S = count_partial_orientations(N)
        Q = TSeries([ZERO] + list(S.c[1:]), order=N, zero=ZERO)
        return CoeffTable(method, N, omega, v, _subs(Q, omega, v))
    if method == "catalytic":
        from .catalytic import catalytic_Q, solve_pd_system
        return CoeffTable(method, N, omega, v, catalytic_Q(solve_pd_system(N + 1, omega=omega, v=v)))
    if method == "onecat":
        from .onecat import compute_Q
        return CoeffTable(method, N, omega, v, compute_Q(N, omega, v))
    if method in ("closedform0", "closedform1"):
        from .closedform import compute_Q0, compute_Q1, solve_R
        want = 0 if method == "closedform0" else 1
        if omega is not None and omega != want:
            raise ValueError(f"{method} needs omega = {want} (or symbolic)")
        which = f"omega{want}"
        R = solve_R(which, N + 2, v)
        Q = (compute_Q0 if want == 0 else compute_Q1)(R, N, v)
        return CoeffTable(method, N, Fraction(want), v, Q, R.truncate(N), f"R{want}")
    if method == "sixvertex":
        from .sixvertex import Rtilde_and_Qtilde, theta_ratios
        if v is not None and v != 1:
            raise ValueError("sixvertex needs v = 1 (or symbolic)")
        R, Q = Rtilde_and_Qtilde(theta_ratios(N + 2))
        R, Q = R.truncate(N), Q.truncate(N)
        return CoeffTable(method, N, omega, Fraction(1), _subs(Q, omega, None), _subs(R, omega, None), "Rtilde")
    raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
