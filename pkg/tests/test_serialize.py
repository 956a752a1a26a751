from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conelab.errors import ParseError
from conelab.serialize import Document, dumps, reader, read_betti, vector_data

TEXT = """{
  "a": {
    "b": [
      "1",
      "2/3"
    ]
  },
  "m": [
    ["1", "2"],
    ["3"]
  ]
}
"""


def test_values_read_exactly():
    r = reader(Document(TEXT))
    assert r.get("a").get("b").vector() == (1, Fraction(2, 3))


def test_errors_carry_line_numbers():
    doc = Document(TEXT, "x.json")
    with pytest.raises(ParseError) as info:
        reader(doc).get("m").int_matrix(2)
    assert info.value.line == 10
    assert str(info.value) == "x.json:10: m[1]: row 2 has 1 entries, expected 2"


def test_missing_key_reported_at_parent():
    with pytest.raises(ParseError, match="a: missing") as info:
        reader(Document(TEXT)).get("a").get("c")
    assert info.value.line == 2


def test_floats_refused_with_line():
    with pytest.raises(ParseError, match="floating-point") as info:
        Document('{\n  "x": [\n    1.5\n  ]\n}\n', "f.json")
    assert info.value.line == 3
    with pytest.raises(ParseError, match="floating-point"):
        Document('{"x": 1e3}')


def test_bare_integers_accepted():
    assert reader(Document('{"n": 7}')).get("n").integer() == 7


def test_syntax_error_has_line():
    with pytest.raises(ParseError) as info:
        Document('{\n  "a": \n}')
    assert info.value.line == 3


def test_non_integer_rejected():
    with pytest.raises(ParseError, match="integer"):
        reader(Document('{"n": "1/2"}')).get("n").integer()


def test_betti_reader():
    b = read_betti(reader(Document('{"prefix": ["1", "2"], "growth": "constant", "coefficients": ["2"]}')))
    assert b.values(4) == [1, 2, 2, 2]


@given(st.lists(st.fractions(max_denominator=50), max_size=6))
def test_vector_round_trip(v):
    text = dumps({"v": vector_data(v)})
    assert reader(Document(text)).get("v").vector() == tuple(v)
    assert dumps(Document(text).data) == text
