import pytest

from eulerorient.closedform import compute_G, compute_Q1, solve_R
from eulerorient.exactalg import OMEGA, V, ZERO, TSeries
from eulerorient.oracles import (count_charged_binary_trees, count_partial_orientations,
                                 count_unary_binary_trees, enumerate_rooted_planar_maps, tutte_count)


@pytest.mark.parametrize("e,count", [(0, 1), (1, 2), (2, 9), (3, 54), (4, 378)])
def test_tutte_counts(e, count):
    assert tutte_count(e) == count
    assert len(enumerate_rooted_planar_maps(e)) == count


def test_orientation_counts_first_terms():
    S = count_partial_orientations(2)
    assert S[1] == OMEGA * V ** 2 + OMEGA * V + 2 * V
    assert S[2] == V * (2 * OMEGA ** 2 * V ** 2 + 5 * OMEGA ** 2 * V + 2 * OMEGA ** 2
                        + 8 * OMEGA * V + 8 * OMEGA + 2 * V + 8)


def test_no_undirected_edges_one_edge():
    # omega = 0 keeps only full orientations; at v = 1 the loop has two
    assert count_partial_orientations(1)[1].subs(0, 1).constant_value() == 2


def test_binary_tree_first_terms():
    b = count_charged_binary_trees(4)
    assert [b[n] for n in (2, 3, 4)] == [1 + V, 1 + 3 * V, 3 + 14 * V + 3 * V ** 2]


def test_unary_binary_first_terms():
    bal, _ = count_unary_binary_trees(4)
    assert [bal[n] for n in (2, 3, 4)] == [1 + 2 * V, 2 * (1 + 4 * V + V ** 2),
                                           4 * V ** 3 + 36 * V ** 2 + 56 * V + 9]


def test_tree_series_match_closed_forms():
    T = TSeries.gen(8)
    assert T - solve_R(0, 8) == count_charged_binary_trees(8)
    bal, one = count_unary_binary_trees(8)
    assert T - solve_R(1, 8) == bal
    assert (compute_Q1(solve_R(1, 8), 6) + V).shift(2).truncate(8) == one
    assert (compute_G(solve_R(0, 8), 6) * 2 + V).shift(2).truncate(8) == count_charged_binary_trees(8, root_solid=True)


def test_oracle_limits():
    with pytest.raises(ValueError):
        count_partial_orientations(6)
    with pytest.raises(ValueError):
        count_charged_binary_trees(9)
