"""The elimination oracle is itself checked on hand-solvable systems."""

from fractions import Fraction

from conelab import oracles


def test_fm_detects_infeasible_interval():
    # x <= 1 and -x <= -2
    assert not oracles.fm_feasible([[Fraction(1), Fraction(1)], [Fraction(-1), Fraction(-2)]], 1)
    assert oracles.fm_feasible([[Fraction(1), Fraction(2)], [Fraction(-1), Fraction(-1)]], 1)


def test_membership_by_explicit_combination():
    gens = [(1, 0), (1, 1)]
    assert oracles.cone_membership(gens, (2, 1))
    assert oracles.cone_membership(gens, (0, 0))
    assert not oracles.cone_membership(gens, (0, -1))
    assert not oracles.cone_membership([], (1, 0))


def test_membership_with_redundant_generators():
    gens = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 3, 0)]
    assert oracles.cone_membership(gens, (5, 7, 0))
    assert not oracles.cone_membership(gens, (5, 7, 1))
    assert not oracles.cone_membership(gens, (-1, 7, 0))


def test_opposite_pair_and_hyperplane():
    assert oracles.has_opposite_pair([(1, 0), (-1, 0)])
    assert not oracles.has_opposite_pair([(1, 0), (1, 1), (0, 0)])
    assert oracles.hyperplane_meets_cone_nontrivially([(1, 0), (0, 1)], 0)
    assert not oracles.hyperplane_meets_cone_nontrivially([(1, 1), (1, -1)], 0)
    assert oracles.hyperplane_meets_cone_nontrivially([(1, 1), (-1, 1)], 0)
