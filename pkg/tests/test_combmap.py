from functools import lru_cache
from math import comb

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from eulerorient.combmap import (LabelledMap, MapError, add_digons, atomic, classify, close_E_to_patch,
                                 decontract, digon_placements, flip_E, join_patches, map_stats, negate,
                                 patch_to_subpatch, reroot, shift_labels, single_edge, subpatch_extract,
                                 subpatch_to_patch)
from eulerorient.sampler import critical_weights, sample_patch


@lru_cache(maxsize=None)
def weights():
    return critical_weights(60, 1e-8)


def patch(ell, seed):
    return sample_patch(ell, weights(), seed, cap=400)


patches = st.tuples(st.integers(0, 3), st.integers(0, 10 ** 6)).map(lambda a: patch(*a))
slow = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def test_atomic_and_single_edge():
    a = atomic()
    k = classify(a)
    assert k.kind == "atomic" and k.is_patch and k.is_D and not k.is_C
    e = single_edge(0, 1)
    k = classify(e)
    assert k.kind == "patch" and k.outer_degree == 2 and k.is_C
    assert e.outer_labels() == [0, 1]


def test_corner_convention():
    # join two edges: outer corners read counterclockwise from the root corner
    m = join_patches(single_edge(0, 1), single_edge(0, 1))
    assert m.outer_labels() == [0, 1, 0, 1, 0, 1]
    assert m.outer_darts()[0] == m.root
    assert m.face_of()[m.root] == m.outer_face


def test_local_minimum_root_gives_atomic_subpatch():
    e = single_edge(0, 1)
    S, C = subpatch_extract(e)
    assert S.is_atomic and C.isomorphic(e)


@pytest.mark.parametrize("seed", range(5))
def test_no_upper_corner_gives_atomic_contraction(seed):
    sub = patch_to_subpatch(patch(2, seed))
    assert 1 not in sub.outer_labels()
    S, C = subpatch_extract(sub)
    assert S.isomorphic(sub) and C.is_atomic


@pytest.mark.parametrize("k,j", [(0, 3), (1, 2), (2, 2), (3, 1)])
def test_digon_placements_are_distinct(k, j):
    P = patch(k, 11) if k else atomic()
    while classify(P).outer_degree != 2 * k:
        P = patch(k, 12)
    placements = list(digon_placements(k, j))
    assert len(placements) == comb(k + j, j) if k else len(placements) == 1
    maps = [add_digons(P, pl) for pl in placements]
    for D in maps:
        assert classify(D).is_D and map_stats(D).inner_digons == j
    for i in range(len(maps)):
        for l in range(i + 1, len(maps)):
            assert not maps[i].isomorphic(maps[l])


def test_validate_rejects_broken_involution():
    with pytest.raises(MapError):
        LabelledMap((1, 0), (0, 0), (0, 1), 0).validate()


@given(patches)
@slow
def test_json_round_trip(m):
    back = LabelledMap.from_json(m.to_json())
    assert back == m and back.isomorphic(m)


@given(patches)
@slow
def test_euler_formula(m):
    if not m.is_atomic:
        assert len(m.vertices()) - m.edges + len(m.faces()) == 2


@given(patches)
@slow
def test_subpatch_round_trip(m):
    S, C = subpatch_extract(m)
    assert decontract(S, C).isomorphic(m)


@given(patches)
@slow
def test_subpatch_conversion_inverse(m):
    if not m.is_atomic:
        assert subpatch_to_patch(patch_to_subpatch(m)).isomorphic(m)


@given(patches, patches)
@slow
def test_join_is_patch(a, b):
    j = join_patches(a, b)
    k = classify(j)
    assert k.is_patch and k.outer_degree == classify(a).outer_degree + classify(b).outer_degree + 2
    assert j.inner_faces == a.inner_faces + b.inner_faces


@given(patches, st.integers(-3, 3))
@slow
def test_shift_and_negate(m, s):
    assert shift_labels(shift_labels(m, s), -s) == m
    assert negate(negate(m)).isomorphic(m)


@given(st.integers(1, 3), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 2))
@slow
def test_E_closures_are_patches(ell, s1, s2, j):
    P1 = patch(ell + j, s1)
    k = 1 + s2 % 2
    P2 = patch(k, s2)
    pl = next(iter(digon_placements(k, j)))
    E = decontract(patch_to_subpatch(P1), add_digons(P2, pl))
    assert classify(E).is_E
    faces = P1.inner_faces + P2.inner_faces + k + j + 1
    for closed in (close_E_to_patch(E, "B"), close_E_to_patch(flip_E(E), "A")):
        kind = classify(closed)
        assert kind.is_patch and kind.outer_degree == 2 * ell
        assert closed.inner_faces == faces
