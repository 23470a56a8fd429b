import pytest

from concat_reach_core.utils import (
    EMPTY_SET,
    format_state_set,
    generate_name,
    mask_of,
    parse_point,
    parse_range,
    parse_state_set,
    states_of,
    to_str,
)


def test_generate_name_with_prefix():
    name = generate_name("dfa")
    assert name.startswith("dfa_")
    assert len(name) > len("dfa_")
    assert generate_name("dfa", sep="-").startswith("dfa-")


def test_generate_name_separator():
    assert generate_name(sep="+").count("+") == 2
    assert generate_name("dfa", sep="+").count("+") == 3


def test_to_str():
    assert to_str(b"abc") == "abc"
    assert to_str(None) == ""
    assert to_str(12) == "12"


def test_bitset_encoding():
    assert mask_of([1, 3]) == 0b101
    assert list(states_of(0b1101)) == [1, 3, 4]
    assert list(states_of(0)) == []


def test_format_state_set():
    assert format_state_set([3, 1]) == "{1,3}"
    assert format_state_set([]) == EMPTY_SET


@pytest.mark.parametrize(
    "text,states",
    [
        ("{1,3}", {1, 3}),
        ("{1..n}", {1, 2, 3, 4, 5}),
        ("{2..n-1}", {2, 3, 4}),
        ("{n}", {5}),
        ("{}", set()),
        ("∅", set()),
        (" { 1 , 2 } ", {1, 2}),
    ],
)
def test_parse_state_set(text, states):
    assert parse_state_set(text, 5) == frozenset(states)


@pytest.mark.parametrize("text", ["1,3", "{0}", "{6}", "{x}", "{n-5}"])
def test_parse_state_set_rejects(text):
    with pytest.raises(ValueError):
        parse_state_set(text, 5)


def test_parse_point():
    assert parse_point("n", 4) == 4
    assert parse_point("n-1", 4) == 3
    assert parse_point("2", 4) == 2


def test_parse_range():
    assert parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("4") == [4]
    with pytest.raises(ValueError):
        parse_range("6..3")
