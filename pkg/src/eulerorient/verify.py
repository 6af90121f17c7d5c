"""Named invariant suites, each returning a list of Verdicts.

Every suite takes ``perturb``: when set, one input coefficient is nudged before
the checks run, so at least one check must fail.  This is how the harness
tests itself.
"""
from __future__ import annotations

import math
import time

from .catalytic import (catalytic_Q, check_E_symmetry, check_omega0_v1_identity, check_P_equation,
                        solve_pd_system)
from .closedform import solve_R
from .dalg import verify_logderiv, verify_R_ode, verify_v1_limit
from .exactalg import LaurentX, TSeries, V, ZERO
from .onecat import (MSeries, Verdict, check_involution, check_kernel, check_M_basics, check_Z_nonneg,
                     compute_F, compute_M, compute_Q, extract_Q)
from .sixvertex import verify_omega_minus1

__all__ = ["SUITES", "run_suite", "run_all", "report"]


def _guard(name: str, order: int, fn) -> Verdict:
    try:
        r = fn()
    except ArithmeticError as e:
        return Verdict(name, False, order, str(e))
    if isinstance(r, Verdict):
        return r
    return Verdict(name, bool(r), order)


def suite_involution(N: int = 10, perturb: bool = False) -> list:
    M = compute_M(N, 2 * N + 6)
    if perturb:
        c = list(M.coeffs)
        c[1] = c[1] + LaurentX({0: V}, zero=ZERO)
        M = MSeries(tuple(c), M.x_max, M.omega, M.v)
    out = [check_M_basics(M)]
    try:
        F = compute_F(M)
    except ArithmeticError as e:
        return out + [Verdict("F_nonnegative", False, N, str(e))]
    out.append(Verdict("F_nonnegative", True, N))
    out.append(_guard("involution", N, lambda: check_involution(M)))
    out.append(_guard("kernel", N, lambda: check_kernel(M, F)))
    out.append(_guard("Z_nonnegative", N, lambda: check_Z_nonneg(M, 3, F)))
    out.append(_guard("Q_alt", N - 2, lambda: extract_Q(M, F) is not None))
    return out


def suite_symmetry(N: int = 10, perturb: bool = False) -> list:
    st = solve_pd_system(N)
    if perturb:
        st.p[(1, 1)] = st.p[(1, 1)] + 1
    out = [check_E_symmetry(st), check_P_equation(st), check_P_equation(st, via_D=True)]
    Qc = catalytic_Q(st)
    Qo = compute_Q(N - 1)
    bad = next((n for n in range(1, N) if Qc[n] != Qo[n]), None)
    out.append(Verdict("catalytic_vs_onecat", bad is None, N - 1, "" if bad is None else f"t^{bad}"))
    st0 = solve_pd_system(N, omega=0, v=1)
    if perturb:
        st0.p[(1, 1)] = st0.p[(1, 1)] + 1
    out.append(check_omega0_v1_identity(st0))
    return out


def suite_odes(N: int = 10, perturb: bool = False) -> list:
    out = []
    for which in ("omega0", "omega1"):
        R = None
        if perturb:
            R = solve_R(which, N + 2)
            R = R + TSeries.gen(N + 2).shift(2)
        r = verify_R_ode(which, N, R=R)
        out.append(Verdict(r.which, r.ok, N,
                           "" if r.ok else f"first nonzero at t^{r.first_failure()[0]}"))
    for which in ("omega0", "omega1"):
        for v in (2, 3):
            r = verify_logderiv(which, N, v)
            out.append(Verdict(r.which, r.ok, N))
    r = verify_v1_limit(N)
    out.append(Verdict(r.which, r.ok, N))
    return out


def suite_omega_minus1(N: int = 10, perturb: bool = False) -> list:
    try:
        return verify_omega_minus1(N, perturb=perturb)
    except ArithmeticError as e:
        return [Verdict("omega_minus1", False, N, str(e))]


def suite_weights(N: int = 10, perturb: bool = False, n_max: int = 200) -> list:
    """Closed-form critical weights: identities, first values, Taylor sums.  ``N`` is unused."""
    from .sampler import D1_closed_form, P_closed_form, WeightIdentityError, critical_weights
    try:
        w = critical_weights(n_max, 1e-10)
    except WeightIdentityError as e:
        return [Verdict("weight_identities", False, n_max, str(e))]
    out = [Verdict("weight_identities", True, n_max,
                   f"relative error {w.identity_error:.2e}, tail {w.tail_bound:.2e}")]
    p, d = list(w.p), list(w.d)
    if perturb:
        p[1] *= 1 + 1e-6
    pi = math.pi
    out.append(Verdict("p0", abs(p[0] - 1 / (4 * pi)) < 1e-14, 0))
    out.append(Verdict("d0", abs(d[0] - (0.25 - 1 / (2 * pi))) < 1e-14, 0))
    out.append(Verdict("p1", abs(p[1] / ((2 - pi / 2) / (16 * pi)) - 1) < 1e-12, 1))
    worst = 0.0
    for x in (-0.3, -0.1, 0.1, 0.3):
        sp = sum(p[n] * x ** n for n in range(len(p)))
        sd = sum(d[n] * x ** n for n in range(len(d)))
        worst = max(worst, abs(sp - float(P_closed_form(x))) / abs(sp),
                    abs(sd - float(D1_closed_form(x))) / abs(sd))
    out.append(Verdict("taylor_sums", worst < 1e-12, n_max, f"relative error {worst:.2e}"))
    return out


SUITES = {
    "involution": suite_involution,
    "symmetry": suite_symmetry,
    "odes": suite_odes,
    "omega_minus1": suite_omega_minus1,
    "weights": suite_weights,
}


def run_suite(suite: str, N: int = 10, perturb: bool = False) -> list:
    """Rows (suite, Verdict, seconds) for one suite, or for every suite when ``suite == 'all'``."""
    names = list(SUITES) if suite == "all" else [suite]
    rows = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
        t0 = time.perf_counter()
        verdicts = SUITES[name](N, perturb)
        dt = time.perf_counter() - t0
        rows.extend((name, v, dt) for v in verdicts)
    return rows


def run_all(N: int = 10) -> bool:
    return all(v.ok for _, v, _ in run_suite("all", N))


def report(rows) -> dict:
    return {
        "ok": all(v.ok for _, v, _ in rows),
        "checks": [{"suite": s, "name": v.name, "ok": bool(v.ok), "order": v.order, "detail": v.detail,
                    "seconds": round(dt, 3)} for s, v, dt in rows],
    }
