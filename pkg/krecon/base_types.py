"""Base types used in krecon: string sets, windows, projections and reconstruction reports."""

from dataclasses import dataclass, field
from functools import cached_property
from operator import itemgetter
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError

Word = tuple[int, ...]
""" A string over the alphabet [0, a), one int per symbol, position 0 first. """

TWordLike = Union[str, Sequence[int]]


def parse_word(
    x: TWordLike, n: Optional[int] = None, alphabet_size: Optional[int] = None
) -> Word:
    """
    Converts '0110' or (0, 1, 1, 0) into a Word, checking length and alphabet when given.
    """
    if isinstance(x, str):
        if x and not (x.isascii() and x.isdigit()):
            raise InputError(f"String '{x}' must consist of ASCII digits")
        word = tuple(ord(c) - 48 for c in x)
    else:
        word = tuple(int(c) for c in x)
    if n is not None and len(word) != n:
        raise InputError(f"String '{format_word(word)}' has length {len(word)}, expected {n}")
    if alphabet_size is not None and any(c < 0 or c >= alphabet_size for c in word):
        raise InputError(
            f"String '{format_word(word)}' uses symbols outside the alphabet [0, {alphabet_size})"
        )
    return word


def format_word(word: Iterable[int]) -> str:
    return "".join(map(str, word))


def pack_word(word: Sequence[int]) -> int:
    """A binary word as an int, bit i holding the symbol at position i."""
    return int("".join(map(str, reversed(word))) or "0", 2)


def restrictor(indices: Sequence[int]) -> Callable[[Sequence[int]], Word]:
    """Returns a function restricting a word to the given positions (in the given order)."""
    if len(indices) == 1:
        i = indices[0]
        return lambda x: (x[i],)
    if not indices:
        return lambda x: ()
    return itemgetter(*indices)


@dataclass(frozen=True)
class Window:
    """A sorted set of column indices; the coordinates of a projection."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if not self.indices:
            raise InputError("Window must contain at least one index")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise InputError(f"Window indices must be strictly increasing: {list(self.indices)}")
        if self.indices[0] < 0:
            raise InputError(f"Window indices must be non-negative: {list(self.indices)}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> "Window":
        return cls(tuple(sorted(set(int(i) for i in indices))))

    def check(self, n: int) -> "Window":
        """Raises InputError unless every index is below n."""
        if self.indices[-1] >= n:
            raise InputError(
                f"Window index {self.indices[-1]} is out of range for strings of length {n}"
            )
        return self

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __str__(self) -> str:
        return ",".join(map(str, self.indices))


@dataclass(frozen=True)
class StringSet:
    """
    A set of m >= 1 distinct strings of length n over the alphabet [0, alphabet_size).
    Keeps the order the strings were given in.
    """

    n: int
    strings: tuple[Word, ...]
    alphabet_size: int = 2

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"String length must be positive, got {self.n}")
        if self.alphabet_size < 2:
            raise InputError(f"Alphabet size must be at least 2, got {self.alphabet_size}")
        if not self.strings:
            raise InputError("A string set must contain at least one string")
        seen = {}
        for pos, word in enumerate(self.strings):
            if len(word) != self.n:
                raise InputError(
                    f"String #{pos + 1} '{format_word(word)}' has length {len(word)}, "
                    f"expected {self.n}"
                )
            if any(c < 0 or c >= self.alphabet_size for c in word):
                raise InputError(
                    f"String #{pos + 1} '{format_word(word)}' uses symbols outside "
                    f"the alphabet [0, {self.alphabet_size})"
                )
            if word in seen:
                raise InputError(
                    f"Duplicate string '{format_word(word)}' (#{seen[word] + 1} and #{pos + 1})"
                )
            seen[word] = pos

    @classmethod
    def from_strings(
        cls, strings: Iterable[TWordLike], alphabet_size: Optional[int] = None
    ) -> "StringSet":
        """
        Builds a set from '0101'-style strings or symbol sequences.
        The alphabet size defaults to (largest symbol + 1), at least 2.
        """
        words = tuple(parse_word(s) for s in strings)
        if not words:
            raise InputError("A string set must contain at least one string")
        if alphabet_size is None:
            alphabet_size = max(2, max(max(w, default=0) for w in words) + 1)
        return cls(n=len(words[0]), strings=words, alphabet_size=alphabet_size)

    @property
    def m(self) -> int:
        return len(self.strings)

    @property
    def is_binary(self) -> bool:
        return self.alphabet_size == 2

    @cached_property
    def members(self) -> frozenset[Word]:
        return frozenset(self.strings)

    @cached_property
    def packed(self) -> tuple[int, ...]:
        """Binary strings as bitmasks, bit i holding the symbol at position i."""
        if not self.is_binary:
            raise InputError("Bit packing is only defined for the binary alphabet")
        return tuple(pack_word(w) for w in self.strings)

    def disagreements(self, x: Word) -> tuple[int, ...]:
        """
        One bitmask per string y, in set order: the positions where y differs from x.
        x must already be a valid word for this set.
        """
        if self.is_binary:
            px = pack_word(x)
            return tuple(p ^ px for p in self.packed)
        return tuple(
            sum(1 << i for i, (a, b) in enumerate(zip(y, x)) if a != b) for y in self.strings
        )

    def sorted(self) -> "StringSet":
        """The same set in canonical (lexicographic) order."""
        return StringSet(self.n, tuple(sorted(self.strings)), self.alphabet_size)

    def word(self, x: TWordLike) -> Word:
        """Parses x as a string compatible with this set."""
        return parse_word(x, self.n, self.alphabet_size)

    def __contains__(self, x) -> bool:
        if isinstance(x, str):
            x = parse_word(x)
        return tuple(x) in self.members

    def __iter__(self) -> Iterator[Word]:
        return iter(self.strings)

    def __len__(self) -> int:
        return len(self.strings)

    def lines(self) -> list[str]:
        return [format_word(w) for w in self.strings]


@dataclass(frozen=True)
class Projection:
    """The distinct patterns of a string set restricted to one window."""

    window: Window
    patterns: frozenset[Word]

    def __contains__(self, pattern) -> bool:
        return tuple(pattern) in self.patterns


@dataclass(frozen=True)
class Membership:
    """Answer to 'is x in Recon_k(S)?'; a witness window is given when it is not."""

    member: bool
    witness: Optional[Window] = None

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class ReconReport:
    """Recon_k(S): the input set plus every string the k-way projections cannot exclude."""

    k: int
    members: StringSet
    extras: int
    counters: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def perfect(self) -> bool:
        return self.extras == 0
