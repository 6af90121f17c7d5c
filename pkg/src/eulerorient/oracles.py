"""Brute-force ground truth: rooted planar maps, Eulerian partial orientations, charged trees.

Maps are rotation systems on darts ``0..2e-1`` with the root dart labelled 0.
Every rooted map with e edges is produced from one with e-1 edges by inserting
an edge (either between two corners, or as a pendant edge to a new vertex);
duplicates are removed through a canonical breadth-first relabelling.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .exactalg import ONE, ZERO, BivarPoly, TSeries

__all__ = ["RotationSystem", "enumerate_rooted_planar_maps", "tutte_count",
           "count_partial_orientations", "count_charged_binary_trees",
           "count_unary_binary_trees", "enumerate_binary_trees", "enumerate_unary_binary_trees",
           "maps_to_json"]

MAX_EDGES = 6


@dataclass(frozen=True)
class RotationSystem:
    """Planar map as (sigma, alpha); sigma rotates darts counterclockwise around vertices."""

    sigma: tuple
    alpha: tuple

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def root_dart(self) -> int:
        return 0

    def vertices(self) -> list:
        """Dart cycles of sigma; the atomic map has one dartless vertex."""
        if not self.sigma:
            return [()]
        return _cycles(self.sigma)

    def faces(self) -> list:
        if not self.sigma:
            return [()]
        phi = tuple(self.sigma[self.alpha[d]] for d in range(self.n_darts))
        return _cycles(phi)

    def is_valid(self) -> bool:
        n = self.n_darts
        if sorted(self.sigma) != list(range(n)) or sorted(self.alpha) != list(range(n)):
            return False
        if any(self.alpha[d] == d or self.alpha[self.alpha[d]] != d for d in range(n)):
            return False
        if n and len(_orbit(0, (self.sigma, self.alpha))) != n:
            return False
        return len(self.vertices()) - self.n_edges + len(self.faces()) == 2


def _cycles(perm) -> list:
    seen, out = set(), []
    for d in range(len(perm)):
        if d in seen:
            continue
        cyc, x = [], d
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


def _orbit(start, perms) -> set:
    seen, stack = {start}, [start]
    while stack:
        d = stack.pop()
        for p in perms:
            e = p[d]
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return seen


def _canonical(sigma, alpha, root) -> RotationSystem:
    order = {root: 0}
    queue = [root]
    i = 0
    while i < len(queue):
        d = queue[i]
        i += 1
        for e in (sigma[d], alpha[d]):
            if e not in order:
                order[e] = len(queue)
                queue.append(e)
    n = len(sigma)
    s = [0] * n
    a = [0] * n
    for d, k in order.items():
        s[k] = order[sigma[d]]
        a[k] = order[alpha[d]]
    return RotationSystem(tuple(s), tuple(a))


def _n_cycles(perm) -> int:
    return len(_cycles(perm))


def _is_planar(sigma, alpha) -> bool:
    n = len(sigma)
    phi = [sigma[alpha[d]] for d in range(n)]
    return _n_cycles(sigma) - n // 2 + _n_cycles(phi) == 2


def _children(m: RotationSystem):
    n = m.n_darts
    a, b = n, n + 1
    if n == 0:
        # loop, pendant edge
        yield (1, 0), (1, 0), 0
        yield (0, 1), (1, 0), 0
        return
    base_s = list(m.sigma) + [a, b]
    base_a = list(m.alpha) + [b, a]
    # pendant edge: a at corner c, b alone at a new vertex
    for c in range(n):
        s = list(base_s)
        s[a] = s[c]
        s[c] = a
        s[b] = b
        yield tuple(s), tuple(base_a), 0
    # edge between corners c1 and c2 (same corner: both orders)
    for c1 in range(n):
        for c2 in range(n):
            for first, second in ((a, b), (b, a)) if c1 == c2 else ((a, b),):
                s = list(base_s)
                if c1 == c2:
                    s[second] = s[c1]
                    s[first] = second
                    s[c1] = first
                else:
                    s[a] = s[c1]
                    s[c1] = a
                    s[b] = s[c2]
                    s[c2] = b
                if _is_planar(s, base_a):
                    yield tuple(s), tuple(base_a), 0


@lru_cache(maxsize=None)
def _maps(e: int) -> tuple:
    if e == 0:
        return (RotationSystem((), ()),)
    found = {}
    for m in _maps(e - 1):
        for s, a, root in _children(m):
            # the new edge can also carry the root: try both of its darts
            for r in (root, len(s) - 2, len(s) - 1):
                c = _canonical(s, a, r)
                found.setdefault((c.sigma, c.alpha), c)
    return tuple(sorted(found.values(), key=lambda r: (r.sigma, r.alpha)))


def tutte_count(e: int) -> int:
    """2 * 3^e * (2e)! / (e! (e+2)!)."""
    return 2 * 3 ** e * factorial(2 * e) // (factorial(e) * factorial(e + 2))


def enumerate_rooted_planar_maps(e: int) -> list:
    if not 0 <= e <= MAX_EDGES:
        raise ValueError(f"edge count must be in [0, {MAX_EDGES}]")
    return list(_maps(e))


def maps_to_json(maps) -> str:
    """One JSON array per line: [sigma, alpha]."""
    return "\n".join(json.dumps([list(m.sigma), list(m.alpha)]) for m in maps)


# ---------------------------------------------------------------- orientations

def _orientation_poly(m: RotationSystem) -> dict:
    """Number of undirected edges -> count of Eulerian partial orientations of m."""
    if m.n_darts == 0:
        return {0: 1}
    vid = {}
    for i, cyc in enumerate(m.vertices()):
        for d in cyc:
            vid[d] = i
    edges = [(d, m.alpha[d]) for d in range(m.n_darts) if d < m.alpha[d]]
    nv = len(m.vertices())
    # last edge index touching each vertex, to prune as soon as a vertex is closed
    last = [-1] * nv
    for k, (d1, d2) in enumerate(edges):
        last[vid[d1]] = k
        last[vid[d2]] = k
    closing = [[] for _ in edges]
    for v_, k in enumerate(last):
        closing[k].append(v_)
    bal = [0] * nv
    out: dict = {}

    def rec(k: int, undirected: int):
        if k == len(edges):
            out[undirected] = out.get(undirected, 0) + 1
            return
        u, w = vid[edges[k][0]], vid[edges[k][1]]
        for state in (0, 1, -1):
            if state:
                bal[u] += state
                bal[w] -= state
            if all(bal[x] == 0 for x in closing[k]):
                rec(k + 1, undirected + (state == 0))
            if state:
                bal[u] -= state
                bal[w] += state

    rec(0, 0)
    return out


def count_partial_orientations(e_max: int) -> TSeries:
    """[t^e] = sum over Eulerian partial orientations of omega^#undirected v^#vertices."""
    if not 0 <= e_max <= 5:
        raise ValueError("e_max must be in [0, 5]")
    w, v = BivarPoly.omega(), BivarPoly.v()
    coeffs = []
    for e in range(e_max + 1):
        acc = ZERO
        for m in enumerate_rooted_planar_maps(e):
            nv = len(m.vertices())
            for u, c in _orientation_poly(m).items():
                acc = acc + c * w ** u * v ** nv
        coeffs.append(acc)
    return TSeries(coeffs, order=e_max, zero=ZERO)


# ---------------------------------------------------------------- trees
# binary: ("L",) leaf; ("B", sl, left, sr, right) with edge signs +1 (solid) / -1 (dashed)
# unary/binary: ("L",), ("U", child), ("B", left, right)

def _binary_shapes(n: int):
    if n == 1:
        yield ("L",)
        return
    for k in range(1, n):
        for left in _binary_shapes(k):
            for right in _binary_shapes(n - k):
                yield (left, right)


def _colourings(shape):
    if shape == ("L",):
        yield ("L",)
        return
    left, right = shape
    for sl in (1, -1):
        for sr in (1, -1):
            for cl in _colourings(left):
                for cr in _colourings(right):
                    yield ("B", sl, cl, sr, cr)


def _bin_stats(tree):
    """(charge, special leaves, has balanced proper non-leaf subtree)."""
    if tree[0] == "L":
        return 0, 0, False
    _, sl, l, sr, r = tree
    cl, spl, badl = _bin_stats(l)
    cr, spr, badr = _bin_stats(r)
    bad = badl or badr or (l[0] != "L" and cl == 0) or (r[0] != "L" and cr == 0)
    special = spl + spr + (1 if r[0] == "L" and sr == -1 else 0)
    return sl + cl + sr + cr, special, bad


def enumerate_binary_trees(n: int):
    """All solid/dashed plane binary trees with n leaves."""
    for shape in _binary_shapes(n):
        yield from _colourings(shape)


def _vpoly(counts: dict) -> BivarPoly:
    v = BivarPoly.v()
    acc = ZERO
    for k, c in counts.items():
        acc = acc + c * v ** k
    return acc


def _binary_explicit(n: int, root_solid: bool = False) -> BivarPoly:
    counts: dict = {}
    for tree in enumerate_binary_trees(n):
        if tree[0] == "L":
            continue
        c, sp, bad = _bin_stats(tree)
        if c == 0 and not bad and (not root_solid or tree[1] == 1):
            counts[sp] = counts.get(sp, 0) + 1
    return _vpoly(counts)


def _binary_dp(n_max: int):
    """A[(n, c)] for non-leaf trees with no balanced proper subtree; also root-solid part."""
    v = BivarPoly.v()
    A: dict = {}
    S: dict = {}
    for n in range(2, n_max + 1):
        for k in range(1, n):
            lefts = [(0, ONE)] if k == 1 else [(c, p) for (m, c), p in A.items() if m == k and c != 0]
            rights = [(0, None)] if n - k == 1 else [(c, p) for (m, c), p in A.items() if m == n - k and c != 0]
            for cl, pl in lefts:
                for cr, pr in rights:
                    for sl in (1, -1):
                        for sr in (1, -1):
                            if pr is None:
                                w = pl * v if sr == -1 else pl
                            else:
                                w = pl * pr
                            key = (n, sl + cl + sr + cr)
                            A[key] = A.get(key, ZERO) + w
                            if sl == 1:
                                S[key] = S.get(key, ZERO) + w
    return A, S


def count_charged_binary_trees(n_max: int, explicit_upto: int = 5, root_solid: bool = False) -> TSeries:
    """Balanced solid/dashed binary trees without balanced proper subtrees; equals t - R0.

    With ``root_solid`` only trees whose root has a solid left edge are kept (t^2(v+2G)).
    Sizes up to ``explicit_upto`` are enumerated tree by tree and must agree with the
    charge-indexed recursion used beyond that.
    """
    if not 1 <= n_max <= 8:
        raise ValueError("n_max must be in [1, 8]")
    A, S = _binary_dp(n_max)
    table = S if root_solid else A
    coeffs = [ZERO, ZERO]
    for n in range(2, n_max + 1):
        val = table.get((n, 0), ZERO)
        if n <= explicit_upto and _binary_explicit(n, root_solid) != val:
            raise AssertionError(f"binary tree enumeration disagrees with recursion at {n} leaves")
        coeffs.append(val)
    return TSeries(coeffs[: n_max + 1], order=n_max, zero=ZERO)


def _ub_trees(n: int, u: int):
    """Unary/binary trees with n leaves and u unary vertices."""
    if n == 1 and u == 0:
        yield ("L",)
    if u >= 1:
        for c in _ub_trees(n, u - 1):
            yield ("U", c)
    for k in range(1, n):
        for ul in range(0, u + 1):
            for l in _ub_trees(k, ul):
                for r in _ub_trees(n - k, u - ul):
                    yield ("B", l, r)


def enumerate_unary_binary_trees(n: int, u: int):
    yield from _ub_trees(n, u)


def _ub_stats(tree):
    if tree[0] == "L":
        return 0, 0, False
    if tree[0] == "U":
        c, sp, bad = _ub_stats(tree[1])
        return c - 1, sp, bad or (tree[1][0] != "L" and c == 0)
    _, l, r = tree
    cl, spl, badl = _ub_stats(l)
    cr, spr, badr = _ub_stats(r)
    bad = badl or badr or (l[0] != "L" and cl == 0) or (r[0] != "L" and cr == 0)
    return cl + cr + 1, spl + spr + (r[0] == "L"), bad


def _ub_explicit(n: int, charge: int) -> BivarPoly:
    counts: dict = {}
    u = n - 1 - charge
    if u < 0:
        return ZERO
    for tree in _ub_trees(n, u):
        if tree[0] == "L":
            continue
        c, sp, bad = _ub_stats(tree)
        assert c == charge
        if not bad:
            counts[sp] = counts.get(sp, 0) + 1
    return _vpoly(counts)


def _ub_dp(n_max: int):
    """A[(n, u)] for non-leaf trees with no balanced proper subtree (charge n-1-u).

    Unary counts are capped at n_max-1: no tree of interest has more.
    """
    v = BivarPoly.v()
    umax = n_max - 1
    A: dict = {}
    for n in range(1, n_max + 1):
        for u in range(0, umax + 1):
            acc = ZERO
            # unary root
            if u >= 1:
                if n == 1 and u == 1:
                    acc = acc + ONE
                sub = A.get((n, u - 1))
                if sub and (n - 1) - (u - 1) != 0:
                    acc = acc + sub
            # binary root
            for k in range(1, n):
                for ul in range(0, u + 1):
                    ur = u - ul
                    lsub = A.get((k, ul))
                    rsub = A.get((n - k, ur))
                    lopts = []
                    if k == 1 and ul == 0:
                        lopts.append(ONE)
                    if lsub and (k - 1 - ul) != 0:
                        lopts.append(lsub)
                    ropts = []
                    if n - k == 1 and ur == 0:
                        ropts.append(v)
                    if rsub and (n - k - 1 - ur) != 0:
                        ropts.append(rsub)
                    for a in lopts:
                        for b in ropts:
                            acc = acc + a * b
            if acc:
                A[(n, u)] = acc
    return A


def count_unary_binary_trees(n_max: int, explicit_upto: int = 5):
    """(balanced, charge-one) series of unary/binary trees; equal t - R1 and t^2(v+Q1)."""
    if not 1 <= n_max <= 8:
        raise ValueError("n_max must be in [1, 8]")
    A = _ub_dp(n_max)
    bal, one = [ZERO, ZERO], [ZERO, ZERO]
    for n in range(2, n_max + 1):
        b = A.get((n, n - 1), ZERO)
        c = A.get((n, n - 2), ZERO)
        if n <= explicit_upto:
            if _ub_explicit(n, 0) != b or _ub_explicit(n, 1) != c:
                raise AssertionError(f"unary/binary enumeration disagrees with recursion at {n} leaves")
        bal.append(b)
        one.append(c)
    return (TSeries(bal[: n_max + 1], order=n_max, zero=ZERO),
            TSeries(one[: n_max + 1], order=n_max, zero=ZERO))
