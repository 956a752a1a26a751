import threading
import warnings
from fractions import Fraction

import pytest
from hypothesis import assume, given

from conelab import exact, oracles
from conelab.cone import (RationalCone, contains, facets, h_to_v, halfspace_contains, image_cone,
                          interior_contains, intersect_subspace, is_strongly_convex,
                          level_set_diameter_bounded, lineality_space, relative_interior_contains,
                          same_cone)
from conelab.errors import InputError

from strategies import cones_with_points, generator_sets


def cone(*gens, dim=2):
    return RationalCone(dim, gens)


WEDGE = cone((1, 0), (1, 1))
SYM = cone((1, 1), (1, -1))


# facets


def test_facets_of_wedge():
    normals, eqs = facets(WEDGE)
    assert set(normals) == {(0, 1), (1, -1)} and eqs == []


def test_facets_of_ray():
    normals, eqs = facets(cone((1, 0)))
    assert normals == [(1, 0)] and eqs == [(0, 1)]


def test_facets_of_whole_plane():
    c = cone((1, 1), (1, -1), (-1, 0))
    assert facets(c) == ([], [])
    for e in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
        assert oracles.cone_membership(c.generators, e)
    assert len(lineality_space(c)) == 2


def test_facets_are_canonical_under_generator_order():
    a = RationalCone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    b = RationalCone(3, [(2, 2, 2), (0, 0, 3), (0, 1, 0), (1, 0, 0)])
    assert facets(a) == facets(b)
    assert a == b


# membership


def test_contains_examples():
    assert contains(WEDGE, (2, 1))
    assert contains(WEDGE, (0, 0))
    assert contains(RationalCone(2), (0, 0))
    assert not contains(WEDGE, (0, -1))


def test_contains_dimension_mismatch():
    with pytest.raises(InputError):
        contains(WEDGE, (1, 2, 3))
    with pytest.raises(InputError):
        interior_contains(WEDGE, (1,))


def test_interior_examples():
    assert interior_contains(WEDGE, (2, 1))
    assert not interior_contains(WEDGE, (1, 0))
    ray = cone((1, 0))
    assert (interior_contains(ray, (2, 0)), relative_interior_contains(ray, (2, 0))) == (False, True)


def test_lineality_examples():
    assert lineality_space(WEDGE) == []
    assert not oracles.has_opposite_pair(WEDGE.generators)
    assert lineality_space(cone((1, 0), (-1, 0))) == [(1, 0)]
    assert lineality_space(RationalCone(2)) == []


def test_intersect_subspace_examples():
    assert intersect_subspace(SYM, [(1, 0)]).is_zero()
    half = cone((1, 0), (0, 1), (0, -1))
    assert same_cone(intersect_subspace(half, [(1, 0)]), cone((0, 1), (0, -1)))
    assert intersect_subspace(WEDGE, []) is WEDGE


def test_image_cone_examples():
    assert same_cone(image_cone([[1, 0], [0, 1]], WEDGE), WEDGE)
    proj = image_cone([[1, 0]], SYM)
    assert proj.ambient_dim == 1 and same_cone(proj, RationalCone(1, [(1,)]))
    assert image_cone([[0, 0], [0, 0]], WEDGE).is_zero()
    with pytest.raises(InputError):
        image_cone([[1, 0, 0]], WEDGE)


def test_level_set_examples():
    cert = level_set_diameter_bounded(SYM, 0, 1)
    assert cert.bounded and cert.vertices == ((1, -1), (1, 1)) and cert.squared_diameter == 4
    cert = level_set_diameter_bounded(cone((1, 0), (0, 1)), 0, 1)
    assert not cert.bounded and cert.recession_direction == (0, 1)
    cert = level_set_diameter_bounded(cone((1, 0)), 0, 1)
    assert cert.bounded and cert.vertices == ((1, 0),) and cert.squared_diameter == 0
    with pytest.raises(InputError):
        level_set_diameter_bounded(SYM, 0, 0)


def test_halfspace_examples():
    assert halfspace_contains(SYM, (1, 0))
    assert not halfspace_contains(cone((1, 1)), (0, -1))
    assert halfspace_contains(RationalCone(2), (-5, 7))
    with pytest.raises(InputError):
        halfspace_contains(SYM, (1,))


def test_zero_generators_are_dropped_with_warning():
    with pytest.warns(UserWarning, match="zero generator"):
        c = RationalCone(2, [(0, 0), (1, 0)])
    assert c.generators == ((1, 0),)


def test_generator_length_checked():
    with pytest.raises(InputError):
        RationalCone(2, [(1, 2, 3)])


def test_h_to_v_positive_orthant():
    lin, rays = h_to_v([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [], 3)
    assert lin == [] and sorted(rays) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_facet_cache_is_thread_safe():
    c = RationalCone(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 1), (2, -1, 0, 3)])
    results = []

    def work():
        results.append(facets(c))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


# properties against the elimination oracle


@given(cones_with_points())
def test_contains_agrees_with_oracle(data):
    dim, gens, point = data
    c = RationalCone(dim, gens)
    assert contains(c, point) == oracles.cone_membership(gens, point)


@given(generator_sets())
def test_generators_satisfy_their_facets(data):
    dim, gens = data
    c = RationalCone(dim, gens)
    normals, eqs = facets(c)
    for g in gens:
        assert all(exact.dot(n, g) >= 0 for n in normals)
        assert all(exact.dot(e, g) == 0 for e in eqs)


@given(generator_sets())
def test_round_trip_through_inequalities(data):
    dim, gens = data
    c = RationalCone(dim, gens)
    normals, eqs = facets(c)
    lin, rays = h_to_v(normals, eqs, dim)
    back = RationalCone(dim, list(rays) + list(lin) + [tuple(-x for x in l) for l in lin])
    assert same_cone(back, c)
    assert back == c


@given(generator_sets())
def test_lineality_agrees_with_opposite_pair_oracle(data):
    dim, gens = data
    c = RationalCone(dim, gens)
    assert is_strongly_convex(c) == (not oracles.has_opposite_pair(gens))
    for v in lineality_space(c):
        assert contains(c, v) and contains(c, tuple(-x for x in v))


@given(generator_sets())
def test_sum_of_generators_is_relative_interior(data):
    dim, gens = data
    c = RationalCone(dim, gens)
    total = tuple(sum(g[i] for g in gens) for i in range(dim))
    assert relative_interior_contains(c, total)
    if interior_contains(c, total):
        assert exact.rank(gens, dim) == dim


@given(generator_sets())
def test_positive_rank_cone_meets_rank_hyperplane_trivially(data):
    dim, gens = data
    assume(dim >= 2)
    gens = [(abs(g[0]) + 1,) + tuple(g[1:]) for g in gens]
    c = RationalCone(dim, gens)
    assert intersect_subspace(c, [exact.unit(dim, 0)]).is_zero()
    assert level_set_diameter_bounded(c, 0, 1).bounded


@given(generator_sets())
def test_slice_boundedness_agrees_with_oracle(data):
    dim, gens = data
    c = RationalCone(dim, gens)
    cert = level_set_diameter_bounded(c, 0, 1)
    assert cert.bounded == (not oracles.hyperplane_meets_cone_nontrivially(gens, 0))
    if cert.bounded:
        assert all(v[0] == 1 and contains(c, v) for v in cert.vertices)
    else:
        d = cert.recession_direction
        assert d[0] == 0 and not exact.is_zero(d) and contains(c, d)


@given(generator_sets(), generator_sets())
def test_halfspace_contains_matches_normals(a, b):
    dim, gens = a
    c = RationalCone(dim, gens)
    for n in facets(c)[0]:
        assert halfspace_contains(c, n)
    assert halfspace_contains(c, tuple(Fraction(0) for _ in range(dim)))
