from fractions import Fraction

import pytest

from conelab import exact
from conelab.errors import InputError


def test_as_fraction_accepts_strings_and_ints():
    assert exact.as_fraction("3/6") == Fraction(1, 2)
    assert exact.as_fraction(" -2 ") == -2
    assert exact.as_fraction(7) == 7


@pytest.mark.parametrize("bad", [0.5, True, "1.5", "1/0", "x", None])
def test_as_fraction_rejects(bad):
    with pytest.raises(InputError):
        exact.as_fraction(bad)


def test_format_and_parse_roundtrip():
    v = (Fraction(1, 2), Fraction(-3), Fraction(0))
    text = exact.format_vector(v)
    assert text == "[1/2, -3, 0]"
    assert exact.parse_vector(text) == v
    assert exact.parse_vector("1, 2") == (1, 2)
    assert exact.parse_vector("[]") == ()


def test_primitive_keeps_direction():
    assert exact.primitive((Fraction(2, 3), Fraction(-4, 3))) == (1, -2)
    assert exact.primitive((0, -6)) == (0, -1)


def test_rank_nullspace():
    rows = [(1, 2, 3), (2, 4, 6)]
    assert exact.rank(rows, 3) == 1
    ns = exact.nullspace(rows, 3)
    assert len(ns) == 2
    assert all(exact.dot(r, n) == 0 for r in rows for n in ns)


def test_inverse_and_singular():
    m = ((2, 1), (1, 1))
    inv = exact.inverse(m)
    assert exact.mat_mul(m, inv) == ((1, 0), (0, 1))
    with pytest.raises(InputError):
        exact.inverse(((1, 2), (2, 4)))


def test_projection_onto_span():
    p = exact.project_onto_span((1, 1, 5), [(1, 0, 0), (0, 1, 0)])
    assert p == (1, 1, 0)
