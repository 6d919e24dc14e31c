import pytest

from krecon.base_types import StringSet, parse_word
from krecon.errors import InputError
from krecon.formats import (
    format_string_set,
    parse_hitting_set,
    parse_string_set,
    read_hitting_set,
    read_string_set,
)
from tests.conftest import DATA


def test_read_string_set(fig1):
    assert read_string_set(DATA / "fig1.txt") == fig1
    assert read_string_set(DATA / "blank_line.txt").lines() == ["001", "011"]
    ternary = read_string_set(DATA / "ternary.txt")
    assert ternary.alphabet_size == 3 and ternary.m == 3
    assert read_string_set(DATA / "basis3.txt", alphabet_size=4).alphabet_size == 4


@pytest.mark.parametrize(
    "name, message",
    [
        ("ragged.txt", "Line 2: length 2 differs from 3"),
        ("duplicate.txt", "Line 3: duplicate string '001' (first seen on line 1)"),
        ("bad_symbol.txt", "non-digit"),
        ("missing.txt", "Can't read"),
    ],
)
def test_read_string_set_errors(name, message):
    with pytest.raises(InputError) as e:
        read_string_set(DATA / name)
    assert message in str(e.value)
    assert e.value.exit_code == 2


def test_parse_string_set_errors():
    with pytest.raises(InputError):
        parse_string_set(["# nothing here", ""])
    with pytest.raises(InputError):
        parse_string_set(["012"], alphabet_size=2)


def test_format_string_set(fig1):
    assert format_string_set(fig1) == "001\n011\n100\n"
    assert format_string_set([(1, 0), (2, 2)]) == "10\n22\n"


def test_parse_word():
    assert parse_word("0110") == (0, 1, 1, 0)
    assert parse_word([2, 0], n=2, alphabet_size=3) == (2, 0)
    with pytest.raises(InputError):
        parse_word("01x")
    with pytest.raises(InputError):
        parse_word("012", alphabet_size=2)
    with pytest.raises(InputError):
        parse_word("01", n=3)


def test_string_set_validation():
    with pytest.raises(InputError):
        StringSet.from_strings([])
    with pytest.raises(InputError):
        StringSet(2, ((0, 1), (0, 1)))
    with pytest.raises(InputError):
        StringSet(2, ((0, 2),))
    with pytest.raises(InputError):
        StringSet(3, ((0, 1),))
    s = StringSet.from_strings(["10", "01"])
    assert "10" in s and (0, 1) in s and "11" not in s
    assert s.packed == (1, 2)
    assert s.sorted().lines() == ["01", "10"]


def test_read_hitting_set():
    h = read_hitting_set(DATA / "hs_small.txt")
    assert h.universe_size == 3 and h.as_lists() == [[2], [1, 2], [0]]
    assert read_hitting_set(DATA / "hs_unhittable.txt").unhittable
    with pytest.raises(InputError):
        read_hitting_set(DATA / "hs_bad.txt")


@pytest.mark.parametrize(
    "lines",
    [
        [],
        ["3"],
        ["3 x"],
        ["3 2", "0"],
        ["3 1", "0", "1"],
        ["3 1", "0 b"],
    ],
)
def test_parse_hitting_set_errors(lines):
    with pytest.raises(InputError):
        parse_hitting_set(lines)


@pytest.mark.parametrize("line", ["0١", "¹01", "0１"])
def test_non_ascii_digits_rejected(line):
    with pytest.raises(InputError) as e:
        parse_string_set([line, "10"])
    assert "non-digit" in str(e.value) and e.value.exit_code == 2
    with pytest.raises(InputError):
        parse_word(line)
    with pytest.raises(InputError):
        StringSet.from_strings([line])


def test_non_ascii_hitting_set_rejected():
    with pytest.raises(InputError):
        parse_hitting_set(["٣ 1", "0"])
    with pytest.raises(InputError):
        parse_hitting_set(["3 1", "١"])


def test_disagreements():
    s = StringSet.from_strings(["001", "011", "100"])
    # bit i is position i
    assert s.disagreements((0, 0, 0)) == (0b100, 0b110, 0b001)
    assert s.disagreements((0, 0, 1)) == (0, 0b010, 0b101)
    ternary = StringSet.from_strings(["012", "210"])
    assert ternary.disagreements((0, 1, 0)) == (0b100, 0b001)
