"""Labelled planar maps as rotation systems, patch classification and surgery.

Conventions
-----------
A map is a set of darts (half-edges).  ``next[d]`` is the dart following
``d`` counterclockwise around its origin vertex and ``opp[d]`` is the other
half of its edge.  The face on the right of ``d`` is the orbit of ``d`` under
``d -> next[opp[d]]``; this walks the outer face counterclockwise around the
map.  The *corner* of a dart ``d`` is the sector just before ``d`` in
counterclockwise order; it lies in the face on the right of ``d``.

The root dart ``root`` leaves the root vertex; its corner is the root corner,
and the face on its right is the outer face.  Outer corners are therefore the
corners of ``root, next[opp[root]], ...``, read counterclockwise from the root
corner.  Labels are stored per dart (the label of its origin vertex).  The
atomic map has no darts, ``root == -1`` and its single label in ``atom_label``.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from math import comb

__all__ = ["LabelledMap", "PatchKind", "MapStats", "MapError", "atomic", "single_edge", "classify",
           "map_stats", "shift_labels", "reroot", "negate", "join_patches", "add_digons",
           "digon_placements", "patch_to_subpatch", "subpatch_to_patch", "subpatch_extract",
           "decontract", "flip_E", "close_E_to_patch"]


class MapError(ValueError):
    """Invalid map structure or violated surgery precondition."""


@dataclass(frozen=True)
class LabelledMap:
    next: tuple
    opp: tuple
    dlabel: tuple
    root: int = -1
    atom_label: int = 0

    # ------------------------------------------------------------ structure
    @property
    def darts(self) -> int:
        return len(self.next)

    @property
    def is_atomic(self) -> bool:
        return not self.next

    @property
    def edges(self) -> int:
        return len(self.next) // 2

    def prev(self) -> list:
        p = [0] * len(self.next)
        for d, n in enumerate(self.next):
            p[n] = d
        return p

    def _orbits(self, step) -> list:
        seen = [False] * len(self.next)
        out = []
        for d in range(len(self.next)):
            if seen[d]:
                continue
            cyc = []
            e = d
            while not seen[e]:
                seen[e] = True
                cyc.append(e)
                e = step(e)
            out.append(cyc)
        return out

    def vertices(self) -> list:
        """Darts around each vertex, counterclockwise; vertices ordered by smallest dart."""
        if self.is_atomic:
            return [[]]
        return self._orbits(lambda d: self.next[d])

    def vertex_of(self) -> list:
        out = [0] * len(self.next)
        for i, cyc in enumerate(self.vertices()):
            for d in cyc:
                out[d] = i
        return out

    def faces(self) -> list:
        """Darts with the face on their right, in counterclockwise order around the map."""
        if self.is_atomic:
            return [[]]
        return self._orbits(lambda d: self.next[self.opp[d]])

    @property
    def labels(self) -> list:
        if self.is_atomic:
            return [self.atom_label]
        return [self.dlabel[c[0]] for c in self.vertices()]

    def face_of(self) -> list:
        out = [0] * len(self.next)
        for i, cyc in enumerate(self.faces()):
            for d in cyc:
                out[d] = i
        return out

    @property
    def outer_face(self) -> int:
        return 0 if self.is_atomic else self.face_of()[self.root]

    def outer_darts(self) -> list:
        """Darts of the outer corners, starting with the root."""
        if self.is_atomic:
            return []
        out = [self.root]
        d = self.next[self.opp[self.root]]
        while d != self.root:
            out.append(d)
            d = self.next[self.opp[d]]
        return out

    def outer_labels(self) -> list:
        return [self.dlabel[d] for d in self.outer_darts()]

    @property
    def root_label(self) -> int:
        return self.atom_label if self.is_atomic else self.dlabel[self.root]

    @property
    def inner_faces(self) -> int:
        return 0 if self.is_atomic else len(self.faces()) - 1

    # ------------------------------------------------------------ checks
    def validate(self, weak: bool = False) -> None:
        n = len(self.next)
        if self.is_atomic:
            if self.root != -1:
                raise MapError("atomic map must have root -1")
            return
        if n % 2 or sorted(self.next) != list(range(n)) or len(self.opp) != n or len(self.dlabel) != n:
            raise MapError("next must be a permutation of an even number of darts")
        for d in range(n):
            if self.opp[d] == d or self.opp[self.opp[d]] != d:
                raise MapError("opp must be a fixed-point-free involution")
        if not 0 <= self.root < n:
            raise MapError("root out of range")
        for cyc in self.vertices():
            if len({self.dlabel[d] for d in cyc}) != 1:
                raise MapError("darts of one vertex carry different labels")
        allowed = {-1, 0, 1} if weak else {-1, 1}
        for d in range(n):
            if self.dlabel[self.opp[d]] - self.dlabel[d] not in allowed:
                raise MapError("adjacent labels must differ by 1" + (" or 0" if weak else ""))
        seen = {0}
        todo = [0]
        while todo:
            d = todo.pop()
            for e in (self.next[d], self.opp[d]):
                if e not in seen:
                    seen.add(e)
                    todo.append(e)
        if len(seen) != n:
            raise MapError("map is not connected")
        if len(self.vertices()) - self.edges + len(self.faces()) != 2:
            raise MapError("rotation system is not planar")

    def canonical(self) -> tuple:
        """Relabelling-invariant key: darts numbered in BFS order from the root."""
        if self.is_atomic:
            return ("atomic", self.atom_label)
        order = {self.root: 0}
        queue = deque([self.root])
        while queue:
            d = queue.popleft()
            for e in (self.next[d], self.opp[d]):
                if e not in order:
                    order[e] = len(order)
                    queue.append(e)
        inv = sorted(order, key=order.get)
        return (tuple(order[self.next[d]] for d in inv), tuple(order[self.opp[d]] for d in inv),
                tuple(self.dlabel[d] for d in inv))

    def isomorphic(self, other: "LabelledMap") -> bool:
        return self.canonical() == other.canonical()

    # ------------------------------------------------------------ JSON
    def to_dict(self) -> dict:
        verts = self.vertices()
        vid = self.vertex_of() if not self.is_atomic else []
        return {"darts": self.darts, "next": list(self.next), "opp": list(self.opp),
                "labels": [int(x) for x in self.labels], "vertex": vid, "root": self.root}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "LabelledMap":
        if d["darts"] == 0:
            return atomic(d["labels"][0])
        nxt = tuple(d["next"])
        proto = cls(nxt, tuple(d["opp"]), (0,) * len(nxt), d["root"])
        vid = proto.vertex_of()
        labels = d["labels"]
        m = cls(nxt, tuple(d["opp"]), tuple(labels[vid[e]] for e in range(len(nxt))), d["root"])
        m.validate(weak=True)
        return m

    @classmethod
    def from_json(cls, s: str) -> "LabelledMap":
        return cls.from_dict(json.loads(s))


def atomic(label: int = 0) -> LabelledMap:
    return LabelledMap((), (), (), -1, label)


def single_edge(a: int = 0, b: int = 1) -> LabelledMap:
    return LabelledMap((0, 1), (1, 0), (a, b), 0)


# ---------------------------------------------------------------- mutable builder

class _Builder:
    def __init__(self, m: LabelledMap | None = None):
        if m is None or m.is_atomic:
            self.next, self.opp, self.lab = [], [], []
        else:
            self.next, self.opp, self.lab = list(m.next), list(m.opp), list(m.dlabel)
        self.prev = [0] * len(self.next)
        for d, n in enumerate(self.next):
            self.prev[n] = d

    def new_edge(self, la: int, lb: int) -> tuple:
        a = len(self.next)
        b = a + 1
        self.next += [a, b]
        self.prev += [a, b]
        self.opp += [b, a]
        self.lab += [la, lb]
        return a, b

    def insert_before(self, new: int, d: int) -> None:
        """Put the lone dart ``new`` into the corner of ``d``."""
        p = self.prev[d]
        self.next[p] = new
        self.prev[new] = p
        self.next[new] = d
        self.prev[d] = new

    def chain(self, darts: list) -> None:
        """Make ``darts`` the full counterclockwise rotation of one vertex."""
        k = len(darts)
        for i, d in enumerate(darts):
            self.next[d] = darts[(i + 1) % k]
            self.prev[darts[(i + 1) % k]] = d

    def build(self, root: int) -> LabelledMap:
        return LabelledMap(tuple(self.next), tuple(self.opp), tuple(self.lab), root)


def _renumber(next_, opp, lab, keep: list, root: int) -> LabelledMap:
    idx = {d: i for i, d in enumerate(keep)}
    return LabelledMap(tuple(idx[next_[d]] for d in keep), tuple(idx[opp[d]] for d in keep),
                       tuple(lab[d] for d in keep), idx[root])


# ---------------------------------------------------------------- statistics

@dataclass(frozen=True)
class MapStats:
    inner_digons: int
    inner_quads: int
    inner_bic_quads: int
    local_minima: int
    outer_corners: dict = field(default_factory=dict)


def map_stats(m: LabelledMap) -> MapStats:
    if m.is_atomic:
        return MapStats(0, 0, 0, 1, {})
    faces = m.faces()
    outer = m.face_of()[m.root]
    dig = quad = bic = 0
    for i, f in enumerate(faces):
        if i == outer:
            continue
        if len(f) == 2:
            dig += 1
        elif len(f) == 4:
            quad += 1
            if len({m.dlabel[d] for d in f}) == 2:
                bic += 1
    mins = 0
    for cyc in m.vertices():
        lab = m.dlabel[cyc[0]]
        if all(m.dlabel[m.opp[d]] >= lab for d in cyc):
            mins += 1
    return MapStats(dig, quad, bic, mins, dict(Counter(m.outer_labels())))


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class PatchKind:
    kind: str
    outer_degree: int = 0
    shift: int | None = None
    k: int | None = None
    m: int | None = None
    is_patch: bool = False
    is_C: bool = False
    is_D: bool = False
    is_E: bool = False


def _alternates(labels: list, a: int, b: int) -> bool:
    return all(x == (a if i % 2 == 0 else b) for i, x in enumerate(labels))


def classify(m: LabelledMap) -> PatchKind:
    """Recognise the patch families; ``kind`` is the most specific one."""
    m.validate(weak=True)
    if m.is_atomic:
        return PatchKind("atomic", 0, 0, 0, 0, True, False, True, True)
    if any(abs(m.dlabel[d] - m.dlabel[m.opp[d]]) != 1 for d in range(m.darts)):
        return PatchKind("none", len(m.outer_darts()))
    faces = m.faces()
    fo = m.face_of()
    outer = fo[m.root]
    inner = [f for i, f in enumerate(faces) if i != outer]
    L = m.outer_labels()
    deg = len(L)
    vid = m.vertex_of()
    rv = vid[m.root]
    root_darts = [d for d in range(m.darts) if vid[d] == rv]
    r0 = L[0]
    all_quads = all(len(f) == 4 for f in inner)

    shift = r0 if all_quads and _alternates(L, r0, r0 + 1) else None
    is_patch = shift == 0
    neighbours_up = all(m.dlabel[m.opp[d]] == r0 + 1 for d in root_darts)
    outer_at_root = sum(1 for d in m.outer_darts() if vid[d] == rv)
    is_C = is_patch and neighbours_up and outer_at_root == 1
    is_D = (r0 == 0 and _alternates(L, 0, 1) and neighbours_up
            and all(len(f) == 4 or (len(f) == 2 and any(vid[d] == rv for d in f)) for f in inner))
    ek = None
    if r0 == 0 and all_quads and all(x == 0 for x in L[0::2]):
        odd = L[1::2]
        k = 0
        while k < len(odd) and odd[k] == 1:
            k += 1
        if all(x == -1 for x in odd[k:]):
            ek = k
    is_E = ek is not None
    if is_patch:
        kind = "patch"
    elif shift is not None:
        kind = "l-patch"
    elif is_D:
        kind = "D-patch"
    elif is_E:
        kind = "E-patch"
    else:
        kind = "none"
    return PatchKind(kind, deg, shift, ek, deg // 2 if is_E else None, is_patch, is_C, is_D, is_E)


# ---------------------------------------------------------------- simple transforms

def shift_labels(m: LabelledMap, s: int) -> LabelledMap:
    if m.is_atomic:
        return atomic(m.atom_label + s)
    return LabelledMap(m.next, m.opp, tuple(x + s for x in m.dlabel), m.root)


def reroot(m: LabelledMap, dart: int) -> LabelledMap:
    return LabelledMap(m.next, m.opp, m.dlabel, dart, m.atom_label)


def negate(m: LabelledMap) -> LabelledMap:
    if m.is_atomic:
        return atomic(-m.atom_label)
    return LabelledMap(m.next, m.opp, tuple(-x for x in m.dlabel), m.root)


# ---------------------------------------------------------------- constructions

def join_patches(P1: LabelledMap, P2: LabelledMap) -> LabelledMap:
    """New root edge from the root vertex of P1 to the co-root vertex of P2.

    The old root of P1 follows the new edge counterclockwise at the root vertex;
    the edge of P2 towards its co-root precedes it counterclockwise there.
    """
    b = _Builder(P1)
    off = len(b.next)
    if not P2.is_atomic:
        b.next += [d + off for d in P2.next]
        b.opp += [d + off for d in P2.opp]
        b.lab += list(P2.dlabel)
        b.prev = [0] * len(b.next)
        for d, n in enumerate(b.next):
            b.prev[n] = d
    lab1 = P1.root_label
    lab2 = P2.dlabel[P2.opp[P2.root]] if not P2.is_atomic else lab1 + 1
    x, y = b.new_edge(lab1, lab2)
    if not P1.is_atomic:
        b.insert_before(x, P1.root)
    if not P2.is_atomic:
        b.insert_before(y, P2.next[P2.opp[P2.root]] + off)
    return b.build(x)


def digon_placements(k: int, j: int):
    """All placements of j digons over the k+1 slots (k = half outer degree of the patch)."""
    slots = k + 1 if k > 0 else 1

    def rec(i, left):
        if i == slots - 1:
            yield (left,)
            return
        for a in range(left + 1):
            for rest in rec(i + 1, left - a):
                yield (a,) + rest
    yield from rec(0, j)


def add_digons(P: LabelledMap, placement) -> LabelledMap:
    """D-patch of outer degree 2 built on the patch P shifted to labels 1/2.

    A new root vertex labelled 0 is joined to every outer corner of P labelled 1,
    twice to the root corner; ``placement[i]`` extra parallel edges go to corner
    2i (slot 0 and slot k both sit at the root corner, on either side of the
    outer face).
    """
    placement = tuple(int(a) for a in placement)
    if P.is_atomic:
        k = 0
        if len(placement) != 1:
            raise MapError("atomic patch has one slot")
    else:
        k = len(P.outer_darts()) // 2
        if len(placement) != k + 1:
            raise MapError(f"placement must have {k + 1} slots")
    if any(a < 0 for a in placement):
        raise MapError("negative digon count")
    b = _Builder(shift_labels(P, 1))
    if P.is_atomic:
        groups = [[b.new_edge(1, 0) for _ in range(placement[0] + 1)]]
        at_v = [h for g in reversed(groups) for (_, h) in reversed(g)]
        b.chain([g for (g, _) in groups[0]])
        b.chain(at_v)
        root = groups[0][0][1]
        return b.build(root)
    f = P.outer_darts()
    group = {}
    for i in range(k):
        n = placement[i] + 1 if i else placement[0] + placement[k] + 2
        group[i] = [b.new_edge(1, 0) for _ in range(n)]
        for g, _ in group[i]:
            b.insert_before(g, f[2 * i])
    at_v = []
    for i in [0] + list(range(k - 1, 0, -1)):
        at_v += [h for _, h in reversed(group[i])]
    b.chain(at_v)
    # sectors at v inside group 0 (between h_{t+1} and h_t): t=1..a are slot-0 digons
    root = group[0][placement[0]][1]
    return b.build(root)


def patch_to_subpatch(P: LabelledMap) -> LabelledMap:
    """Move the root one corner counterclockwise and subtract 1: outer labels 0,-1,0,..."""
    if P.is_atomic:
        return atomic(0)
    return shift_labels(reroot(P, P.next[P.opp[P.root]]), -1)


def subpatch_to_patch(S: LabelledMap) -> LabelledMap:
    if S.is_atomic:
        return atomic(0)
    od = S.outer_darts()
    return shift_labels(reroot(S, od[-1]), 1)


def _check_dobrushin(m: LabelledMap) -> tuple:
    lab = m.root_label
    L = m.outer_labels()
    if any(x != lab for x in L[0::2]):
        raise MapError("even outer corners must carry the root label")
    odd = L[1::2]
    k = 0
    while k < len(odd) and odd[k] == lab + 1:
        k += 1
    if any(x != lab - 1 for x in odd[k:]):
        raise MapError("outer corners violate the Dobrushin pattern")
    return lab, k


def subpatch_extract(m: LabelledMap, check_stats: bool = True) -> tuple:
    """(S, C): the subpatch at the root and the map with S contracted to one vertex."""
    m.validate()
    if m.is_atomic:
        return m, atomic(m.atom_label)
    lab, _ = _check_dobrushin(m)
    fo = m.face_of()
    for i, f in enumerate(m.faces()):
        if i != fo[m.root] and len(f) not in (2, 4):
            raise MapError("inner faces must be digons or quadrangles")
    vid = m.vertex_of()
    verts = m.vertices()
    # M': component of the root vertex among vertices labelled <= lab
    inM = {vid[m.root]}
    todo = [vid[m.root]]
    while todo:
        u = todo.pop()
        for d in verts[u]:
            w = vid[m.opp[d]]
            if w not in inM and m.dlabel[m.opp[d]] <= lab:
                inM.add(w)
                todo.append(w)
    mdart = [vid[d] in inM and vid[m.opp[d]] in inM for d in range(m.darts)]
    # faces of M reachable from the outer face without crossing an edge of M'
    reached = {fo[m.root]}
    todo = [fo[m.root]]
    faces = m.faces()
    while todo:
        f = todo.pop()
        for d in faces[f]:
            if mdart[d]:
                continue
            g = fo[m.opp[d]]
            if g not in reached:
                reached.add(g)
                todo.append(g)
    in_S = [mdart[d] or (fo[d] not in reached and fo[m.opp[d]] not in reached) for d in range(m.darts)]
    for d in range(m.darts):
        if not mdart[d] and (fo[d] in reached) != (fo[m.opp[d]] in reached):
            raise MapError("inconsistent subpatch region")
    Sd = [d for d in range(m.darts) if in_S[d]]
    s_verts = {vid[d] for d in Sd} | {vid[m.root]}
    for d in range(m.darts):
        if not in_S[d] and vid[d] in s_verts and (m.dlabel[d], m.dlabel[m.opp[d]]) != (lab, lab + 1):
            raise MapError("an edge leaving the subpatch must go from l to l+1")
    rv = vid[m.root]
    if not Sd:
        return atomic(lab), m
    # rotation of S: restriction of M's rotation
    s_next = {}
    for cyc in verts:
        ds = [d for d in cyc if in_S[d]]
        for i, d in enumerate(ds):
            s_next[d] = ds[(i + 1) % len(ds)]
    root_cycle = verts[rv]
    start = root_cycle.index(m.root)
    rS = next(root_cycle[(start + i) % len(root_cycle)] for i in range(len(root_cycle))
              if in_S[root_cycle[(start + i) % len(root_cycle)]])
    nxt = list(m.next)
    for d in Sd:
        nxt[d] = s_next[d]
    S = _renumber(nxt, m.opp, m.dlabel, Sd, rS)
    # contracted map: walk S's outer face, collecting the other darts in each corner
    s_prev = {n: d for d, n in s_next.items()}
    seq = []
    f = rS
    while True:
        d = m.next[s_prev[f]]
        while d != f:
            seq.append(d)
            d = m.next[d]
        seq.append(("mark", f))
        f = s_next[m.opp[f]]
        if f == rS:
            break
    pos = seq.index(m.root) if not in_S[m.root] else seq.index(("mark", m.root))
    rot = [d for d in seq[pos:] + seq[:pos] if not isinstance(d, tuple)]
    if not rot:
        C = atomic(lab)
    else:
        Cd = [d for d in range(m.darts) if not in_S[d]]
        cn = list(m.next)
        for i, d in enumerate(rot):
            cn[d] = rot[(i + 1) % len(rot)]
        C = _renumber(cn, m.opp, m.dlabel, Cd, rot[0])
    if check_stats:
        _check_extract_stats(m, S, C, lab)
    return S, C


def _check_extract_stats(M, S, C, lab):
    sm, ss, sc = map_stats(M), map_stats(S), map_stats(C)
    ok = (sm.inner_digons == ss.inner_digons
          and sm.inner_quads == ss.inner_quads + sc.inner_quads + sc.inner_digons
          and sm.inner_bic_quads == ss.inner_bic_quads + sc.inner_bic_quads
          and sm.local_minima == ss.local_minima + sc.local_minima - 1
          and sm.outer_corners.get(lab + 1, 0) == sc.outer_corners.get(lab + 1, 0)
          and sm.outer_corners.get(lab - 1, 0) == ss.outer_corners.get(lab - 1, 0) - sc.inner_digons)
    if not ok:
        raise MapError(f"subpatch statistics do not balance: M={sm} S={ss} C={sc}")


def decontract(S: LabelledMap, C: LabelledMap) -> LabelledMap:
    """Inverse of :func:`subpatch_extract`.

    The darts e_1..e_k at the root of C (counterclockwise from the root) are
    reattached to the outer corners of S carrying the root label, starting at
    the root corner and moving one such corner further after each inner digon
    of C between e_i and e_{i+1}.
    """
    if S.is_atomic:
        if not C.is_atomic and map_stats(C).inner_digons:
            raise MapError("C has digons but S is atomic")
        return C
    if C.is_atomic:
        return S
    lab = S.root_label
    if C.root_label != lab:
        raise MapError("root labels of S and C differ")
    LS = S.outer_labels()
    if not _alternates(LS, lab, lab - 1):
        raise MapError("outer corners of S must alternate l, l-1")
    LC = C.outer_labels()
    if not _alternates(LC, lab, lab + 1):
        raise MapError("outer corners of C must alternate l, l+1")
    vidC = C.vertex_of()
    rv = vidC[C.root]
    es = [C.root]
    d = C.next[C.root]
    while d != C.root:
        es.append(d)
        d = C.next[d]
    if any(C.dlabel[C.opp[e]] != lab + 1 for e in es):
        raise MapError("root of C must only see label l+1")
    fC = C.face_of()
    faces = C.faces()
    outerC = fC[C.root]

    def is_digon_between(a, b):
        # sector between a and next[a] = b lies in the face right of b
        f = fC[b]
        return f != outerC and len(faces[f]) == 2

    for f in range(len(faces)):
        if f != outerC and len(faces[f]) == 2 and not any(vidC[x] == rv for x in faces[f]):
            raise MapError("digon of C not incident to its root")
    fS = S.outer_darts()
    ncorner = len(fS) // 2
    digons = sum(1 for i in range(len(es) - 1) if is_digon_between(es[i], es[i + 1]))
    if digons != map_stats(C).inner_digons:
        raise MapError("digons of C must sit at consecutive root edges")
    if digons > ncorner:
        raise MapError("S has too few outer corners labelled l-1")
    attach = {}
    idx = 0
    wrap = []
    for i, e in enumerate(es):
        if i and is_digon_between(es[i - 1], e):
            idx += 1
        if idx == ncorner:
            wrap.append(e)
        else:
            attach.setdefault(idx, []).append(e)
    b = _Builder(S)
    off = len(b.next)
    b.next += [x + off for x in C.next]
    b.opp += [x + off for x in C.opp]
    b.lab += list(C.dlabel)
    b.prev = [0] * len(b.next)
    for x, n in enumerate(b.next):
        b.prev[n] = x
    for i, lst in attach.items():
        corner = fS[2 * i]
        group = ([e + off for e in wrap] if i == 0 else []) + [e + off for e in lst]
        p = b.prev[corner]
        seqd = [p] + group + [corner]
        for a, c in zip(seqd, seqd[1:]):
            b.next[a] = c
            b.prev[c] = a
    return b.build(C.root + off)


def flip_E(E: LabelledMap) -> LabelledMap:
    """Negate the labels of an E-patch and re-root it in Dobrushin form (valid at v=1)."""
    kind = classify(E)
    if not kind.is_E:
        raise MapError("not an E-patch")
    if E.is_atomic:
        return E
    N = negate(E)
    L = N.outer_labels()
    od = N.outer_darts()
    n = len(L)
    for s in range(0, n, 2):
        R = reroot(N, od[s])
        if classify(R).is_E:
            return R
    raise MapError("no Dobrushin re-rooting found")


def close_E_to_patch(E: LabelledMap, which: str) -> LabelledMap:
    """Add the root edge closing an E-patch into a patch, adding one quadrangle.

    ``which='B'``: E has exactly one outer corner labelled 1; labels are raised
    by 1 and the new quadrangle reads 0,1,2,1.  ``which='A'``: E has exactly one
    outer corner labelled -1 and the new quadrangle reads 0,1,0,-1.
    """
    kind = classify(E)
    if not kind.is_E or E.is_atomic:
        raise MapError("not a non-atomic E-patch")
    m = kind.m
    od = E.outer_darts()
    if which == "B":
        if kind.k != 1 or m < 2:
            raise MapError("variant B needs exactly one corner labelled 1 and one labelled -1")
        base = shift_labels(E, 1)
        i0, i1 = 2 * m - 1, 2
    elif which == "A":
        if kind.k != m - 1 or m < 2:
            raise MapError("variant A needs exactly one corner labelled -1 and one labelled 1")
        base = E
        i0, i1 = 2 * m - 2, 1
    else:
        raise ValueError("which must be 'A' or 'B'")
    b = _Builder(base)
    x, y = b.new_edge(base.dlabel[od[i0]], base.dlabel[od[i1]])
    b.insert_before(x, od[i0])
    b.insert_before(y, od[i1])
    return b.build(x)
