"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from conelab.lattice import GroupPresentation, IntegerMatrix


@st.composite
def integer_matrices(draw, max_size=5, bound=9):
    rows = draw(st.integers(1, max_size))
    cols = draw(st.integers(1, max_size))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=rows * cols, max_size=rows * cols))
    return IntegerMatrix(rows, cols, tuple(entries))


@st.composite
def presentations(draw):
    zeta = draw(st.integers(0, 3))
    factors = draw(st.lists(st.integers(2, 4), max_size=3))
    torsion, theta = [], 1
    for f in factors:
        theta *= f
        torsion.append(theta)
    return GroupPresentation(zeta, tuple(torsion))


@st.composite
def elements(draw, pres):
    free = draw(st.lists(st.integers(-20, 20), min_size=pres.free_rank, max_size=pres.free_rank))
    torsion = [draw(st.integers(0, t - 1)) for t in pres.torsion_orders]
    return pres.element(free, torsion)


@st.composite
def generator_sets(draw, dim=None, max_gens=6, bound=5):
    dim = dim or draw(st.integers(1, 4))
    gens = draw(st.lists(st.tuples(*[st.integers(-bound, bound)] * dim), min_size=1, max_size=max_gens))
    gens = [g for g in gens if any(g)]
    return dim, gens


@st.composite
def cones_with_points(draw):
    dim, gens = draw(generator_sets())
    point = draw(st.tuples(*[st.integers(-6, 6)] * dim))
    return dim, gens, point
