"""
Hitting Set instances, the reductions to and from string non-containment, exact / FPT /
d-approximate solvers, the padding round trip and the toggled-family cross-check.

Sets are int bitmasks over the universe: bit e set <=> element e in the set.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .base_types import StringSet, TWordLike, Word, format_word, parse_word
from .bootstrap import env
from .errors import DecodeError, InputError, check_guard
from .utils import bits_to_mask, iter_bits


@dataclass(frozen=True)
class HittingSetInstance:
    """
    A family of subsets of [0, universe_size), optionally with a budget.
    An empty set in the family makes the instance unhittable; it is kept, not rejected.
    """

    universe_size: int
    sets: tuple[int, ...]
    budget: Optional[int] = None

    def __post_init__(self):
        if self.universe_size < 0:
            raise InputError(f"Universe size must be non-negative, got {self.universe_size}")
        full = (1 << self.universe_size) - 1
        for pos, mask in enumerate(self.sets):
            if mask < 0 or mask & ~full:
                raise InputError(
                    f"Set #{pos + 1} has elements outside the universe [0, {self.universe_size})"
                )
        if self.budget is not None and self.budget < 0:
            raise InputError(f"Budget must be non-negative, got {self.budget}")

    @classmethod
    def from_lists(
        cls, universe_size: int, sets: Iterable[Iterable[int]], budget: Optional[int] = None
    ) -> "HittingSetInstance":
        masks = []
        for pos, elements in enumerate(sets, start=1):
            elements = list(elements)
            bad = [e for e in elements if not 0 <= e < universe_size]
            if bad:
                raise InputError(
                    f"Set #{pos}: elements {bad} are outside the universe [0, {universe_size})"
                )
            masks.append(bits_to_mask(elements))
        return cls(universe_size, tuple(masks), budget)

    def as_lists(self) -> list[list[int]]:
        return [list(iter_bits(mask)) for mask in self.sets]

    @property
    def unhittable(self) -> bool:
        return any(mask == 0 for mask in self.sets)

    @property
    def max_set_size(self) -> int:
        """d: the largest set size (0 for an empty family)."""
        return max((mask.bit_count() for mask in self.sets), default=0)


@dataclass(frozen=True)
class HittingSetSolution:
    hitters: int
    feasible: bool
    optimal: bool = False
    nodes: int = 0
    """ Search-tree nodes expanded. """
    selected: tuple[int, ...] = field(default=())
    """ Indices of the sets picked by the d-approximation (pairwise disjoint). """

    @property
    def size(self) -> int:
        return self.hitters.bit_count()

    @property
    def elements(self) -> list[int]:
        return list(iter_bits(self.hitters))

    def hits(self, h: HittingSetInstance) -> bool:
        return all(mask & self.hitters for mask in h.sets)

    def __bool__(self) -> bool:
        return self.feasible


class NodeLimitReached(Exception):
    """The bounded search expanded more nodes than allowed."""


def from_noncontainment(s: StringSet, x: TWordLike) -> HittingSetInstance:
    """
    One set per string of s: the positions where it disagrees with x.
    A hitting set of size <= k exists iff x is not in Recon_k(s).
    """
    return HittingSetInstance(universe_size=s.n, sets=s.disagreements(s.word(x)))


def to_noncontainment(h: HittingSetInstance) -> tuple[StringSet, Word]:
    """The indicator vectors of the sets (duplicates merged) and the all-zero string."""
    if h.universe_size < 1:
        raise InputError("Universe must contain at least one element")
    if not h.sets:
        raise InputError("Instance has no sets to encode")
    if h.unhittable:
        raise InputError("Empty sets have no indicator-string encoding")
    masks = tuple(dict.fromkeys(h.sets))
    strings = tuple(tuple((mask >> i) & 1 for i in range(h.universe_size)) for mask in masks)
    return StringSet(h.universe_size, strings), (0,) * h.universe_size


def _minimal_sets(sets: Iterable[int]) -> list[int]:
    """Drops duplicates and strict supersets; hitting the rest hits them too."""
    kept: list[int] = []
    for mask in sorted(set(sets), key=lambda m: (m.bit_count(), m)):
        if not any(k & mask == k for k in kept):
            kept.append(mask)
    return kept


def _disjoint_packing(sets: list[int]) -> int:
    """Size of a greedy pairwise-disjoint subfamily: a lower bound on any hitting set."""
    used, count = 0, 0
    for mask in sets:
        if not mask & used:
            used |= mask
            count += 1
    return count


class _Search:
    def __init__(self, node_limit: Optional[int] = None):
        self.nodes = 0
        self.node_limit = node_limit

    def run(self, sets: list[int], chosen: int, budget: int) -> Optional[int]:
        """Depth-first search for a hitting set of at most `budget` more elements."""
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise NodeLimitReached()
        unhit = [mask for mask in sets if not mask & chosen]
        if not unhit:
            return chosen
        if budget == 0 or _disjoint_packing(unhit) > budget:
            return None
        # sets are ordered by size, so unhit[0] is a smallest unhit set
        for e in iter_bits(unhit[0]):
            found = self.run(unhit, chosen | (1 << e), budget - 1)
            if found is not None:
                return found
        return None


def solve_fpt(
    h: HittingSetInstance, k: Optional[int] = None, node_limit: Optional[int] = None
) -> HittingSetSolution:
    """
    Searches for a hitting set of size <= k with a depth-k tree branching on the elements of
    a smallest unhit set, so at most d^k leaves are explored.

    Raises:
        NodeLimitReached: when node_limit is given and exceeded.
    """
    k = h.budget if k is None else k
    if k is None:
        raise InputError("The FPT solver needs a budget k")
    if h.unhittable:
        return HittingSetSolution(0, feasible=False)
    search = _Search(node_limit)
    found = search.run(_minimal_sets(h.sets), 0, k)
    if found is None:
        return HittingSetSolution(0, feasible=False, nodes=search.nodes)
    return HittingSetSolution(found, feasible=True, nodes=search.nodes)


def hittable_within(sets: Iterable[int], k: int, node_limit: Optional[int] = None) -> bool:
    """
    Bare decision form of solve_fpt for raw bitmasks: is there a hitting set of size <= k?
    Supersets are left in place; the search only needs the sets ordered by size.

    Raises:
        NodeLimitReached: when node_limit is given and exceeded.
    """
    ordered = sorted(set(sets), key=int.bit_count)
    if ordered and ordered[0] == 0:
        return False
    return _Search(node_limit).run(ordered, 0, k) is not None


def solve_exact(h: HittingSetInstance) -> HittingSetSolution:
    """
    Minimum-cardinality hitting set: iterative deepening over the budget, starting at the
    disjoint-packing lower bound. The first budget that succeeds is optimal.
    """
    if h.unhittable:
        return HittingSetSolution(0, feasible=False, optimal=True)
    sets = _minimal_sets(h.sets)
    search = _Search()
    for budget in range(_disjoint_packing(sets), h.universe_size + 1):
        found = search.run(sets, 0, budget)
        if found is not None:
            return HittingSetSolution(found, feasible=True, optimal=True, nodes=search.nodes)
    raise AssertionError("Every nonempty family is hit by the whole universe")


def approx_d(h: HittingSetInstance) -> HittingSetSolution:
    """
    Takes every element of the first unhit set (in construction order) until all are hit.
    The selected sets are pairwise disjoint, and any hitting set needs one element of each,
    so the result is at most d times the optimum.
    """
    hitters, selected = 0, []
    for pos, mask in enumerate(h.sets):
        if mask and not mask & hitters:
            hitters |= mask
            selected.append(pos)
    return HittingSetSolution(
        hitters,
        feasible=not h.unhittable,
        optimal=h.max_set_size <= 1,
        selected=tuple(selected),
    )


def min_exclusion_k(s: StringSet, x: TWordLike) -> Optional[int]:
    """
    Least k with x not in Recon_k(s), that is the minimum hitting set size of the disagreement
    sets; None (never excluded) when x is in s.
    """
    h = from_noncontainment(s, x)
    if h.unhittable:
        return None
    return solve_exact(h).size


class PaddedInstance(NamedTuple):
    strings: StringSet
    x: Word
    k: int


def double(word: Iterable[int]) -> Word:
    """d(w): every symbol written twice."""
    return tuple(c for c in word for _ in (0, 1))


def encode_pairs(word: Iterable[int], alphabet_size: int) -> Word:
    """e(w): every symbol c written as the pair (c, c+1 mod a)."""
    return tuple(v for c in word for v in (c, (c + 1) % alphabet_size))


def pad_instance(s: StringSet, x: TWordLike, k: int, y: TWordLike) -> PaddedInstance:
    """
    Embeds the string y into a non-containment instance without changing its answer:
    x is in Recon_k(s) iff d(x)e(y) is in Recon_k of {d(t)e(y) : t in s}.
    The window size stays k: doubled columns leave the minimum hitting set unchanged.
    """
    x = s.word(x)
    y = parse_word(y, alphabet_size=s.alphabet_size)
    if not 1 <= k <= s.n:
        raise InputError(f"Window size k={k} is out of range [1, {s.n}]")
    tail = encode_pairs(y, s.alphabet_size)
    strings = tuple(double(t) + tail for t in s.strings)
    return PaddedInstance(
        StringSet(2 * (s.n + len(y)), strings, s.alphabet_size), double(x) + tail, k
    )


def unpad(padded: PaddedInstance | tuple) -> Word:
    """
    Recovers y from a padded instance: the longest suffix of (c, c+1 mod a) pairs, first symbol
    of each pair. Doubled pairs (c, c) never look like encoded ones.

    Raises:
        DecodeError: if the instance is not shaped like a pad_instance output.
    """
    strings, x, k = padded
    a = strings.alphabet_size
    x = tuple(x)
    if len(x) % 2 or len(x) != strings.n:
        raise DecodeError(f"Padded string '{format_word(x)}' must have even length {strings.n}")
    if not 1 <= k <= strings.n:
        raise DecodeError(f"Padded window size k={k} is out of range [1, {strings.n}]")
    pairs = [x[i : i + 2] for i in range(0, len(x), 2)]
    split = len(pairs)
    while split > 0 and pairs[split - 1][1] == (pairs[split - 1][0] + 1) % a:
        split -= 1
    if any(p[0] != p[1] for p in pairs[:split]):
        raise DecodeError(f"'{format_word(x)}' is not a doubled string followed by encoded pairs")
    y = tuple(p[0] for p in pairs[split:])
    tail = encode_pairs(y, a)
    for t in strings.strings:
        head = t[: 2 * split]
        if t[2 * split :] != tail or any(head[i] != head[i + 1] for i in range(0, len(head), 2)):
            raise DecodeError(f"Padded set string '{format_word(t)}' carries a different padding")
    return y


def toggled_decision(h: HittingSetInstance, k: int, limit: Optional[int] = None) -> bool:
    """
    True iff for every X outside the family, the toggled family {S_i xor X} has a hitting set
    of size <= k. On indicator sets this is exactly "Recon_k = S".
    """
    check_guard(
        "Toggled hitting set", 2**h.universe_size, limit or env.config.enumeration_limit
    )
    family = set(h.sets)
    for toggle in range(1 << h.universe_size):
        if toggle in family:
            continue
        if not solve_fpt(HittingSetInstance(h.universe_size, tuple(m ^ toggle for m in h.sets)), k):
            logging.debug("Toggle %s has no hitting set of size %d", bin(toggle), k)
            return False
    return True
