import pytest

from concat_reach_core.errors import ParseError
from concat_reach_core.parser import format_dfa, load_dfa, parse_dfa, parse_dfas

from conftest import MASLOV_A, MASLOV_B

TWO_BLOCKS = MASLOV_A + "\n# second operand\n" + MASLOV_B


def test_parse_dfa(maslov_a):
    d = parse_dfa(MASLOV_A)
    assert d == maslov_a
    assert d.name == "A"
    assert d.alphabet == ("a", "b")


def test_parse_several_blocks(maslov_a, maslov_b):
    dfas = parse_dfas(TWO_BLOCKS)
    assert list(dfas) == ["A", "B"]
    assert dfas["B"] == maslov_b
    assert parse_dfa(TWO_BLOCKS) == maslov_a
    assert parse_dfa(TWO_BLOCKS, "B") == maslov_b
    with pytest.raises(ParseError):
        parse_dfa(TWO_BLOCKS, "C")


def test_block_without_header_gets_a_name():
    d = parse_dfa("states 2\nalphabet a\nfinal 2\na: (1,2)\n")
    assert d.name.startswith("dfa_")
    assert d.accepts("a")


def test_format_dfa_parses_back(maslov_b):
    text = format_dfa(maslov_b)
    assert "b: [2,3,3]" in text
    assert parse_dfa(text) == maslov_b


def test_load_dfa_with_block_selector(tmp_path, maslov_b):
    path = tmp_path / "pair.dfa"
    path.write_text(TWO_BLOCKS, encoding="utf8")
    assert load_dfa(f"{path}:B") == maslov_b
    assert load_dfa(path, name="B") == maslov_b


@pytest.mark.parametrize(
    "text,line",
    [
        ("dfa X\nstates 2\nalphabet a\na: (1,2)\nb: id\n", 5),
        ("dfa X\nstates 2\nalphabet a\na: (1,3)\n", 4),
        ("dfa X\nstates two\n", 2),
        ("dfa X\nstates 2\nalphabet a\nbogus line\n", 4),
        ("dfa X\nstates 2\nalphabet a b\na: id\n", 1),
        ("dfa X\nstates 2\nalphabet a\na: id\na: id\n", 5),
        ("dfa X\nalphabet a\na: id\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_dfa(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_empty_text():
    with pytest.raises(ParseError):
        parse_dfa("# nothing here\n")


def test_duplicate_names():
    with pytest.raises(ParseError):
        parse_dfas(MASLOV_A + MASLOV_A)
