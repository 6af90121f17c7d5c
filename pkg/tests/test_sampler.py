import math
import random
from collections import Counter
from functools import lru_cache

import pytest

from eulerorient.combmap import classify
from eulerorient.sampler import (D1_closed_form, P_closed_form, SamplerStats, _Tables, critical_weights,
                                 sample_patch, sample_tree, build_patch, validate_patch)


@lru_cache(maxsize=None)
def weights(n=60):
    return critical_weights(n, 1e-8)


def test_first_weights():
    w = weights()
    assert abs(w.p[0] - 1 / (4 * math.pi)) < 1e-14
    assert abs(w.d[0] - (0.25 - 1 / (2 * math.pi))) < 1e-14
    assert abs(w.p[1] - (2 - math.pi / 2) / (16 * math.pi)) < 1e-15


@pytest.mark.parametrize("x", [-0.3, -0.1, 0.1, 0.3])
def test_taylor_coefficients(x):
    w = weights()
    assert sum(c * x ** n for n, c in enumerate(w.p)) == pytest.approx(float(P_closed_form(x)), rel=1e-12)
    assert sum(c * x ** n for n, c in enumerate(w.d)) == pytest.approx(float(D1_closed_form(x)), rel=1e-12)


def test_tolerance_floor():
    with pytest.raises(ValueError):
        critical_weights(10, 1e-16)


def test_atomic_for_ell_zero():
    assert sample_patch(0, weights(), seed=1).is_atomic


def test_deterministic_given_seed():
    a = sample_patch(2, weights(), seed=99)
    b = sample_patch(2, weights(), seed=99)
    assert a == b


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_samples_valid_and_face_count_matches_tree(ell):
    tables = _Tables(weights())
    rng = random.Random(ell)
    for _ in range(300):
        tree = sample_tree(ell, rng, tables)
        m = build_patch(tree)
        assert validate_patch(m, ell)
        assert m.inner_faces == tree.faces()


def test_single_edge_frequency():
    n = 4000
    w = weights()
    tables = _Tables(w)
    rng = random.Random(5)
    hits = sum(sample_patch(1, w, 0, tables=tables, rng=rng).inner_faces == 0 for _ in range(n))
    p = 2 / (4 * math.pi - math.pi ** 2)
    assert abs(hits / n - p) < 4 * math.sqrt(p * (1 - p) / n)


def test_uniform_within_size():
    # the two patches of outer degree 2 with one inner face are equally likely
    w = weights()
    tables = _Tables(w)
    rng = random.Random(17)
    counts = Counter()
    while sum(counts.values()) < 600:
        m = sample_patch(1, w, 0, tables=tables, rng=rng)
        if m.inner_faces == 1:
            counts[m.canonical()] += 1
    assert len(counts) == 2
    a, b = counts.values()
    # a - b = 2a - 600 with a ~ Bin(600, 1/2): sd = 2 sqrt(150)
    assert abs(a - b) < 4 * 2 * math.sqrt(150)


def test_restart_counter():
    stats = SamplerStats()
    rng = random.Random(3)
    tables = _Tables(weights())
    for _ in range(200):
        sample_patch(1, weights(), 0, cap=3, stats=stats, tables=tables, rng=rng)
    assert stats.restarts > 0
