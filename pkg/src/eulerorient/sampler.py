"""Critical Boltzmann sampler for patches at omega=0, v=1.

A patch with outer degree 2l and f inner faces is drawn with probability
t_c^(l+1+f) / p_l, t_c = 1/(4 pi).  The weights p_l (patches) and d_j
(D-patches of outer degree 2 with j digons) have closed forms; they are
computed in mpmath and checked against the two linear identities tying them
to the decomposition before any sampling happens.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import gammaln

from .combmap import (LabelledMap, MapError, add_digons, atomic, classify, close_E_to_patch, decontract,
                      flip_E, join_patches, map_stats, patch_to_subpatch)

__all__ = ["CriticalWeights", "WeightIdentityError", "critical_weights", "t_c", "P_closed_form",
           "D1_closed_form", "sample_patch", "SampleTree", "sample_tree", "build_patch", "SamplerStats",
           "validate_patch"]


class WeightIdentityError(ArithmeticError):
    pass


def t_c() -> float:
    return 1 / (4 * math.pi)


@dataclass
class CriticalWeights:
    p: list
    d: list
    tail_bound: float
    n_max: int
    identity_error: float = 0.0
    mp_p: list = field(default_factory=list, repr=False)
    mp_d: list = field(default_factory=list, repr=False)


def _p_d_mp(n: int, dps: int):
    """p_0..p_n and d_0..d_n from the closed forms, at ``dps`` digits."""
    with mpmath.workdps(dps):
        pi = mpmath.pi
        p = [1 / (4 * pi)]
        d = [mpmath.mpf(1) / 4 - 1 / (2 * pi)]
        bracket = 2 - pi / 2
        sd = mpmath.mpf(0)
        for m in range(1, n + 1):
            # bracket = 2 - pi/2 - sum_{k=1}^{m-1} 2^k (k-1)! k! / (2k+1)!
            if m > 1:
                k = m - 1
                bracket -= mpmath.mpf(2) ** k * mpmath.factorial(k - 1) * mpmath.factorial(k) / mpmath.factorial(2 * k + 1)
            p.append(mpmath.binomial(2 * m, m - 1) * bracket / (pi * mpmath.mpf(4) ** (m + 1)))
            k = m - 1
            sd += mpmath.factorial(2 * k + 1) / (mpmath.mpf(2) ** k * mpmath.factorial(k) * mpmath.factorial(k + 2))
            d.append(mpmath.mpf(4) ** m / (2 * pi) * mpmath.factorial(m - 1) * mpmath.factorial(m + 1)
                     / mpmath.factorial(2 * m + 1) * sd)
    return p, d


def _dps_for(n: int) -> int:
    # the bracket in p_n is about 2^-n; keep 30 extra digits beyond the cancellation
    return 40 + int(0.31 * n)


def _p_d_tail(K: int, dps: int = 40):
    """p_0..p_K, d_0..d_K without cancellation.

    The bracket of p_n equals sum_{i >= n} a_i with a_i = 2^i (i-1)! i! / (2i+1)!,
    whose ratio a_{i+1}/a_i = i/(2i+3) < 1/2 makes the tail easy to sum.
    """
    with mpmath.workdps(dps):
        pi = mpmath.pi
        extra = 4 * dps + 10
        a = [mpmath.mpf(0), mpmath.mpf(1) / 3]
        for i in range(1, K + extra):
            a.append(a[-1] * i / (2 * i + 3))
        T = [mpmath.mpf(0)] * (K + extra + 1)
        for i in range(K + extra - 1, 0, -1):
            T[i] = T[i + 1] + a[i]
        p = [1 / (4 * pi)]
        c = mpmath.mpf(1) / 16          # C(2n, n-1) / 4^(n+1) at n = 1
        for n in range(1, K + 1):
            if n > 1:
                c = c * (2 * n) * (2 * n - 1) / ((n - 1) * (n + 1) * 4)
            p.append(c * T[n] / pi)
        d = [mpmath.mpf(1) / 4 - 1 / (2 * pi)]
        r = mpmath.mpf(4) / 3           # 4^n (n-1)! (n+1)! / (2n+1)! at n = 1
        b = mpmath.mpf(1) / 2           # (2k+1)! / (2^k k! (k+2)!) at k = 0
        s = mpmath.mpf(0)
        for n in range(1, K + 1):
            if n > 1:
                r = r * 4 * (n - 1) * (n + 1) / ((2 * n) * (2 * n + 1))
                b = b * (2 * n - 1) / (n + 1)
            s += b
            d.append(r * s / (2 * pi))
    return p, d


def critical_weights(n_max: int = 200, tol: float = 1e-10, check: bool = True) -> CriticalWeights:
    """Closed-form weights p_0..p_{n_max}, d_0..d_{n_max}, both identities checked to ``tol``.

    p_n and d_n for n <= n_max come from the closed forms at enough digits to
    absorb the cancellation in the bracket of p_n.  The infinite sums in the
    identities need weights far beyond n_max; those come from the equivalent
    tail-sum form, which agrees with the closed forms on the overlap.  Errors
    are relative.  Remainders past the cut-off K are bounded (d-identity,
    geometric majorant) or estimated from the j^-5 decay of the summands
    (p-identity) and reported in ``tail_bound``.
    """
    if n_max < 1 or n_max > 200:
        raise ValueError("n_max must be in 1..200")
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    K = 50 * n_max + 1000
    Kd = 4 * n_max + 400
    p_cf, d_cf = _p_d_mp(n_max, _dps_for(n_max))
    p, d = _p_d_tail(K)
    worst = mpmath.mpf(0)
    tail_worst = mpmath.mpf(0)
    with mpmath.workdps(40):
        for n in range(n_max + 1):
            worst = max(worst, abs(p[n] - p_cf[n]) / p_cf[n], abs(d[n] - d_cf[n]) / d_cf[n])
            p[n], d[n] = +p_cf[n], +d_cf[n]
        if check:
            # d_j = sum_k C(k+j, j) p_k.  Past Kd the summand ratio is <= (Kd+j+1)/(2(Kd+1))
            # and p_k <= 2 a_k / (4 pi), a geometric majorant for the remainder.
            aK = mpmath.mpf(2) ** Kd * mpmath.factorial(Kd - 1) * mpmath.factorial(Kd) / mpmath.factorial(2 * Kd + 1)
            for j in range(n_max + 1):
                binom = mpmath.mpf(1)
                s = mpmath.mpf(0)
                for k in range(Kd + 1):
                    s += binom * p[k]
                    binom = binom * (k + j + 1) / (k + 1)
                rho = mpmath.mpf(Kd + j + 1) / (Kd + 1) / 2
                bound = binom * 2 * aK / (4 * mpmath.pi) * rho / (1 - rho)
                worst = max(worst, abs(s - d[j]) / d[j])
                tail_worst = max(tail_worst, bound / d[j])
            # p_l = sum_{j<l} p_j p_{l-1-j} + 2 sum_j p_{l+j} d_j  for l > 0.
            # The summands decay like j^-4; the remainder is removed by fitting the
            # partial sums at J/8, J/4, J/2, J to S - A J^-3 - B J^-4 - C J^-5.
            for l in range(1, n_max + 1):
                J = K - l
                cuts = [J // 8, J // 4, J // 2, J]
                terms = [p[l + j] * d[j] for j in range(J + 1)]
                partial = []
                acc, start = mpmath.mpf(0), 0
                for c in cuts:
                    acc += mpmath.fsum(terms[start:c + 1])
                    start = c + 1
                    partial.append(acc)
                A = mpmath.matrix([[1] + [-mpmath.mpf(c) ** -e for e in (3, 4, 5)] for c in cuts])
                S = mpmath.lu_solve(A, mpmath.matrix(partial))[0]
                total = mpmath.fsum(p[j] * p[l - 1 - j] for j in range(l)) + 2 * S
                worst = max(worst, abs(total - p[l]) / p[l])
                tail_worst = max(tail_worst, 2 * abs(S - partial[-1]) / p[l])
    if worst > tol:
        raise WeightIdentityError(f"weight identities fail: relative error {float(worst):.3e} > {tol}")
    return CriticalWeights([float(x) for x in p[: n_max + 1]], [float(x) for x in d[: n_max + 1]],
                           float(tail_worst), n_max, float(worst), p, d)


def P_closed_form(x: float) -> float:
    """P(x; t_c) = 1/(4x) - (2-x)/(4 pi x sqrt(1-x)) arccos(x/(2-x)), 0 < |x| < 1."""
    x = mpmath.mpf(x)
    return 1 / (4 * x) - (2 - x) / (4 * mpmath.pi * x * mpmath.sqrt(1 - x)) * mpmath.acos(x / (2 - x))


def D1_closed_form(x: float) -> float:
    """[y^1] D(x, y; t_c) = 1/4 - (1-2x)/(4 pi sqrt(x(x-1))) arccos(1/(1-2x)), as a real number."""
    x = mpmath.mpf(x)
    val = mpmath.mpf(1) / 4 - (1 - 2 * x) / (4 * mpmath.pi * mpmath.sqrt(x * (x - 1))) * mpmath.acos(1 / (1 - 2 * x))
    return mpmath.re(val)


# ---------------------------------------------------------------- decomposition tree

@dataclass
class SampleTree:
    """One node of the decomposition: ('atom',) / ('join', j) / ('close', j, k, placement, variant)."""
    ell: int
    kind: str
    children: list = field(default_factory=list)
    j: int = 0
    k: int = 0
    placement: tuple = ()
    variant: str = ""

    def faces(self) -> int:
        total = 0
        stack = [self]
        while stack:
            n = stack.pop()
            if n.kind == "close":
                total += n.k + n.j + 1
            stack.extend(n.children)
        return total


class _TooBig(Exception):
    pass


class _Tables:
    """Cumulative choice distributions, built lazily per outer degree / digon count.

    Built in double precision from the logarithms of the high-precision
    weights: p_n and d_n leave the double range long before the table depth.
    """

    def __init__(self, w: CriticalWeights, mass_tol: float = 1e-12):
        self.w = w
        self.logp = np.array([float(mpmath.log(x)) for x in w.mp_p])
        self.logd = np.array([float(mpmath.log(x)) for x in w.mp_d])
        self.K = len(self.logp) - 1
        self.mass_tol = mass_tol
        self._ell = {}
        self._k = {}
        self.truncated_mass = 0.0

    def ell_choices(self, ell: int):
        if ell not in self._ell:
            if ell > self.K:
                raise _TooBig
            lp, ld = self.logp, self.logd
            join = lp[:ell] + lp[ell - 1::-1] - lp[ell]
            close = math.log(2) + lp[ell:] + ld[: self.K - ell + 1] - lp[ell]
            probs = np.exp(np.concatenate([join, close]))
            opts = [("join", j) for j in range(ell)] + [("close", j) for j in range(self.K - ell + 1)]
            cum = np.cumsum(probs)
            self.truncated_mass = max(self.truncated_mass, float(abs(1 - cum[-1])))
            self._ell[ell] = (opts, list(cum / cum[-1]))
        return self._ell[ell]

    def k_choices(self, j: int):
        if j not in self._k:
            k = np.arange(self.K + 1)
            logb = gammaln(k + j + 1) - gammaln(k + 1) - gammaln(j + 1)
            probs = np.exp(logb + self.logp - self.logd[j])
            cum = np.cumsum(probs)
            self.truncated_mass = max(self.truncated_mass, float(abs(1 - cum[-1])))
            self._k[j] = list(cum / cum[-1])
        return self._k[j]


def _pick(cum: list, u: float) -> int:
    i = bisect_left(cum, u * cum[-1])
    return min(i, len(cum) - 1)


def sample_tree(ell: int, rng: random.Random, tables: _Tables, cap: int = 10 ** 6) -> SampleTree:
    """Decomposition tree of a Boltzmann patch; raises _TooBig past ``cap`` nodes."""
    root = SampleTree(ell, "")
    stack = [root]
    count = 0
    while stack:
        node = stack.pop()
        count += 1
        if count > cap:
            raise _TooBig
        if node.ell == 0:
            node.kind = "atom"
            continue
        opts, cum = tables.ell_choices(node.ell)
        kind, j = opts[_pick(cum, rng.random())]
        node.kind, node.j = kind, j
        if kind == "join":
            node.children = [SampleTree(j, ""), SampleTree(node.ell - 1 - j, "")]
        else:
            k = _pick(tables.k_choices(j), rng.random())
            node.k = k
            node.placement = _random_placement(k, j, rng)
            node.variant = "A" if rng.random() < 0.5 else "B"
            node.children = [SampleTree(node.ell + j, ""), SampleTree(k, "")]
        stack.extend(node.children)
    return root


def _random_placement(k: int, j: int, rng: random.Random) -> tuple:
    """Uniform multiset of size j over max(k+1, 1) slots (stars and bars)."""
    slots = k + 1 if k > 0 else 1
    if slots == 1:
        return (j,)
    bars = sorted(rng.sample(range(j + slots - 1), slots - 1))
    out, prev = [], -1
    for b in bars:
        out.append(b - prev - 1)
        prev = b
    out.append(j + slots - 1 - prev - 1)
    return tuple(out)


def build_patch(tree: SampleTree) -> LabelledMap:
    """Realise a decomposition tree as a labelled map (post-order, no recursion)."""
    built = {}
    order = []
    stack = [tree]
    while stack:
        n = stack.pop()
        order.append(n)
        stack.extend(n.children)
    for n in reversed(order):
        if n.kind == "atom":
            built[id(n)] = atomic(0)
        elif n.kind == "join":
            built[id(n)] = join_patches(built.pop(id(n.children[0])), built.pop(id(n.children[1])))
        else:
            P1 = built.pop(id(n.children[0]))
            P2 = built.pop(id(n.children[1]))
            D = add_digons(P2, n.placement)
            E = decontract(patch_to_subpatch(P1), D)
            if n.variant == "A":
                built[id(n)] = close_E_to_patch(flip_E(E), "A")
            else:
                built[id(n)] = close_E_to_patch(E, "B")
    return built[id(tree)]


def validate_patch(m: LabelledMap, ell: int) -> bool:
    """Patch with outer degree 2 ell and no bicoloured inner face (omega = 0)."""
    try:
        kind = classify(m)
    except MapError:
        return False
    return kind.is_patch and kind.outer_degree == 2 * ell and map_stats(m).inner_bic_quads == 0


@dataclass
class SamplerStats:
    restarts: int = 0
    truncated_mass: float = 0.0


def sample_patch(ell: int, w: CriticalWeights, seed: int, cap: int = 10 ** 6,
                 stats: SamplerStats | None = None, tables: _Tables | None = None,
                 rng: random.Random | None = None) -> LabelledMap:
    """One Boltzmann patch of outer degree 2 ell; deterministic given ``seed``.

    Trees with more than ``cap`` nodes are discarded and redrawn from the same
    random stream; the count is recorded in ``stats``.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    rng = rng or random.Random(seed)
    tables = tables or _Tables(w)
    while True:
        try:
            tree = sample_tree(ell, rng, tables, cap)
            break
        except _TooBig:
            if stats is not None:
                stats.restarts += 1
    if stats is not None:
        stats.truncated_mass = max(stats.truncated_mass, tables.truncated_mass)
    return build_patch(tree)
