import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from baryalg.baryterm import Leaf, Node, random_term
from baryalg.termlang import ErrorKind, SourceError, format_weight, parse, parse_weight, print_term

# (input, kind, byte offset)
MALFORMED = [
    ("", ErrorKind.UNEXPECTED_TOKEN, 0),
    ("x", ErrorKind.UNEXPECTED_TOKEN, 0),
    ("v", ErrorKind.UNEXPECTED_TOKEN, 0),
    ("v0", ErrorKind.MALFORMED_NUMBER, 1),
    ("[1.0](v1,v2)", ErrorKind.WEIGHT_OUT_OF_RANGE, 1),
    ("[0](v1,v2)", ErrorKind.WEIGHT_OUT_OF_RANGE, 1),
    ("[2](v1,v2)", ErrorKind.WEIGHT_OUT_OF_RANGE, 1),
    ("[3/2](v1,v2)", ErrorKind.WEIGHT_OUT_OF_RANGE, 1),
    ("[0.99999999999999999999](v1,v2)", ErrorKind.WEIGHT_OUT_OF_RANGE, 1),
    ("[1/0](v1,v2)", ErrorKind.MALFORMED_NUMBER, 1),
    ("[1.](v1,v2)", ErrorKind.MALFORMED_NUMBER, 1),
    ("[1/](v1,v2)", ErrorKind.MALFORMED_NUMBER, 1),
    ("[](v1,v2)", ErrorKind.UNEXPECTED_TOKEN, 1),
    ("[1/2](v1,v2", ErrorKind.UNBALANCED_PAREN, 11),
    ("[1/2](v1,v2]", ErrorKind.UNBALANCED_PAREN, 11),
    ("[1/2](v1)", ErrorKind.UNBALANCED_PAREN, 8),
    ("[1/2(v1,v2)", ErrorKind.UNEXPECTED_TOKEN, 4),
    ("[1/2", ErrorKind.UNBALANCED_PAREN, 4),
    ("[1/2](v1,v2))", ErrorKind.TRAILING_INPUT, 12),
    ("v1 v2", ErrorKind.TRAILING_INPUT, 3),
    ("[1/2](v1 v2)", ErrorKind.UNEXPECTED_TOKEN, 9),
    ("[1/2]v1", ErrorKind.UNEXPECTED_TOKEN, 5),
    ("[1/2](v1,)", ErrorKind.UNEXPECTED_TOKEN, 9),
    ("[-1/2](v1,v2)", ErrorKind.UNEXPECTED_TOKEN, 1),
    (" v1 x", ErrorKind.TRAILING_INPUT, 5),  # NBSP is two bytes
]


def test_parse_examples():
    assert parse("v1") == Leaf(1)
    assert parse("[1/2](v1,[1/3](v2,v3))") == Node(0.5, Leaf(1), Node(1 / 3, Leaf(2), Leaf(3)))
    assert parse(" [ 0.25 ]\n( v10 ,\tv2 ) ") == Node(0.25, Leaf(10), Leaf(2))


@pytest.mark.parametrize("text, kind, pos", MALFORMED)
def test_malformed_inputs(text, kind, pos):
    with pytest.raises(SourceError) as err:
        parse(text)
    assert err.value.kind is kind
    assert err.value.position == pos
    assert 0 <= err.value.position <= len(text.encode()) + 1


def test_error_message_format():
    with pytest.raises(SourceError, match=r"^WeightOutOfRange at offset 1"):
        parse("[2](v1,v2)")


def test_print_examples():
    assert print_term(Leaf(3)) == "v3"
    assert print_term(Node(0.5, Leaf(1), Leaf(2))) == "[0.5](v1,v2)"
    assert print_term(parse("[1/3](v1,v2)")) == "[0.3333333333333333](v1,v2)"


@given(st.floats(min_value=0, max_value=1, exclude_min=True, exclude_max=True))
def test_weight_text_round_trips_bitwise(p):
    assert parse_weight(format_weight(p)) == p


def test_parse_print_round_trip_random_trees():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        t = random_term(rng, 8, 9, weight_range=(1e-300, 1.0))
        assert parse(print_term(t)) == t


def test_parse_weight():
    assert parse_weight(" 1/4 ") == 0.25
    with pytest.raises(SourceError) as err:
        parse_weight("1.5")
    assert err.value.kind is ErrorKind.WEIGHT_OUT_OF_RANGE
    with pytest.raises(SourceError):
        parse_weight("0.5 0.5")
