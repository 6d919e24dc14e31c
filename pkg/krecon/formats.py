"""
Plain-text formats.

Dataset: one string per line, ASCII digit symbols, all lines of equal length;
blank lines and lines starting with '#' are ignored.

Hitting Set instance: a "n m" header line followed by m lines, each listing the elements of one
set separated by spaces (an empty line is the empty set); '#' lines are comments.
"""

from os import PathLike
from typing import Iterable, Optional, TYPE_CHECKING

from .base_types import StringSet, format_word
from .errors import InputError

if TYPE_CHECKING:
    from .hitting_set import HittingSetInstance


def _read_lines(path: str | PathLike) -> list[str]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read().splitlines()
    except OSError as e:
        raise InputError(f"Can't read '{path}': {e.strerror or e}") from e


def parse_string_set(lines: Iterable[str], alphabet_size: Optional[int] = None) -> StringSet:
    """
    Parses dataset lines into a StringSet.
    Duplicate lines are rejected rather than merged.
    """
    words, first_seen = [], {}
    width = None
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not (line.isascii() and line.isdigit()):
            raise InputError(f"Line {line_no}: '{line}' contains non-digit symbols")
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise InputError(f"Line {line_no}: length {len(line)} differs from {width}")
        if line in first_seen:
            raise InputError(
                f"Line {line_no}: duplicate string '{line}' (first seen on line "
                f"{first_seen[line]})"
            )
        first_seen[line] = line_no
        words.append(tuple(ord(c) - 48 for c in line))
    if not words:
        raise InputError("Dataset contains no strings")
    inferred = max(2, max(max(w) for w in words) + 1)
    if alphabet_size is None:
        alphabet_size = inferred
    elif alphabet_size < inferred:
        raise InputError(
            f"Dataset uses symbol {inferred - 1}, outside the declared alphabet size "
            f"{alphabet_size}"
        )
    return StringSet(n=width, strings=tuple(words), alphabet_size=alphabet_size)


def read_string_set(path: str | PathLike, alphabet_size: Optional[int] = None) -> StringSet:
    return parse_string_set(_read_lines(path), alphabet_size)


def format_string_set(s: StringSet | Iterable) -> str:
    return "".join(format_word(w) + "\n" for w in s)


def parse_hitting_set(lines: Iterable[str]) -> "HittingSetInstance":
    # pylint: disable=import-outside-toplevel
    from .hitting_set import HittingSetInstance

    body = [line for line in lines if not line.lstrip().startswith("#")]
    while body and not body[0].strip():
        body.pop(0)
    if not body:
        raise InputError("Hitting Set instance is empty: expected an 'n m' header")
    header = body[0].split()
    if len(header) != 2 or not all(h.isascii() and h.isdigit() for h in header):
        raise InputError(f"Bad header '{body[0].strip()}': expected 'n m'")
    n, m = int(header[0]), int(header[1])
    rows = body[1 : m + 1]
    if len(rows) < m:
        raise InputError(f"Header announces {m} sets but only {len(rows)} lines follow")
    if any(line.strip() for line in body[m + 1 :]):
        raise InputError(f"Unexpected content after the {m} announced sets")
    sets = []
    for pos, line in enumerate(rows, start=1):
        elements = line.split()
        if not all(e.isascii() and e.isdigit() for e in elements):
            raise InputError(f"Set #{pos}: elements must be integers: '{line.strip()}'")
        sets.append([int(e) for e in elements])
    return HittingSetInstance.from_lists(n, sets)


def read_hitting_set(path: str | PathLike) -> "HittingSetInstance":
    return parse_hitting_set(_read_lines(path))
