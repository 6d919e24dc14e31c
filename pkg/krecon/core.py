"""
Definition-level algorithms: projections, k-reconstruction membership, the brute-force
reconstruction oracle, points of no information and of perfect reconstruction, the k=1 and k=2
fast paths and the sparsity bound.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import TYPE_CHECKING, Iterator, Optional, Union

import numpy as np

from .base_types import (
    Membership,
    Projection,
    ReconReport,
    StringSet,
    TWordLike,
    Window,
    Word,
    restrictor,
)
from .bootstrap import env
from .config import SearchStrategy
from .errors import InputError, UnsupportedError, check_guard
from .twosat import TwoSatFormula
from .utils import bits_to_mask

if TYPE_CHECKING:
    from .engines import Engine

# Candidate rows scanned per numpy block
BLOCK_SIZE = 1 << 16
# Windows with at most this many patterns use a lookup table, larger ones np.isin
DENSE_TABLE_LIMIT = 1 << 20


def check_k(s: StringSet, k: int) -> int:
    if not 1 <= k <= s.n:
        raise InputError(f"Window size k={k} is out of range [1, {s.n}]")
    return k


def project(s: StringSet, w: Window) -> Projection:
    """The distinct patterns of s restricted to the window's columns."""
    w.check(s.n)
    get = restrictor(w.indices)
    return Projection(window=w, patterns=frozenset(get(x) for x in s.strings))


def is_member(s: StringSet, x: TWordLike, k: int) -> Membership:
    """
    Decides x ∈ Recon_k(s) straight from the definition.
    Windows are scanned in lexicographic order; the first one whose pattern for x is absent
    from the projection is returned as the witness.
    """
    x = s.word(x)
    check_k(s, k)
    if x in s.members:
        return Membership(True)
    diffs = s.disagreements(x)
    # the window excludes x iff every string disagrees with x somewhere inside it
    for indices in combinations(range(s.n), k):
        mask = bits_to_mask(indices)
        if all(d & mask for d in diffs):
            return Membership(False, Window(indices))
    return Membership(True)


def find_incomplete_window(s: StringSet, k: int) -> Optional[tuple[Window, Word]]:
    """
    Returns the first k-window whose projection misses a pattern, with the missing pattern,
    or None when every k-window projection is complete.
    """
    check_k(s, k)
    full = s.alphabet_size**k
    for indices in combinations(range(s.n), k):
        get = restrictor(indices)
        patterns = {get(x) for x in s.strings}
        if len(patterns) < full:
            symbols = product(range(s.alphabet_size), repeat=k)
            missing = next(p for p in symbols if p not in patterns)
            return Window(indices), missing
    return None


def point_of_no_information(s: StringSet, strategy: Optional[SearchStrategy] = None) -> int:
    """
    Largest k such that every k-window projection holds all a^k patterns; 0 if k=1 fails.
    """
    strategy = strategy or env.config.search
    # a complete k-window needs at least a^k strings
    hi = 0
    while hi < s.n and s.alphabet_size ** (hi + 1) <= s.m:
        hi += 1
    if strategy == SearchStrategy.BINARY:
        lo = 0
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if find_incomplete_window(s, mid) is None:
                lo = mid
            else:
                hi = mid - 1
        return lo
    k = 0
    while k < hi and find_incomplete_window(s, k + 1) is None:
        k += 1
    return k


def is_1_reconstructible(s: StringSet) -> bool:
    """S = Recon_1(S) iff |S| equals the product of per-column alphabet sizes."""
    total = 1
    for i in range(s.n):
        total *= len({x[i] for x in s.strings})
        if total > s.m:
            return False
    return total == s.m


def is_2_reconstructible(s: StringSet) -> bool:
    """
    S = Recon_2(S) for binary S: the satisfying assignments of the pairwise 2-SAT formula are
    exactly Recon_2(S), so S is 2-reconstructible iff the enumeration stops at m solutions.
    """
    check_k(s, 2)
    if not s.is_binary:
        raise UnsupportedError(
            f"The 2-SAT test for 2-reconstructibility needs a binary alphabet, "
            f"got alphabet size {s.alphabet_size}"
        )
    formula = TwoSatFormula.from_pairwise_projections(s)
    found = formula.count_solutions(limit=s.m + 1)
    logging.debug("2-SAT: %d clauses, %d solutions (m=%d)", len(formula.clauses), found, s.m)
    return found == s.m


def recon_product(s: StringSet, limit: Optional[int] = None) -> ReconReport:
    """Recon_1(S): the Cartesian product of the column alphabets."""
    columns = [sorted({x[i] for x in s.strings}) for i in range(s.n)]
    size = 1
    for col in columns:
        size *= len(col)
    check_guard("1-reconstruction", size, limit or env.config.enumeration_limit)
    members = StringSet(s.n, tuple(product(*columns)), s.alphabet_size)
    return ReconReport(k=1, members=members, extras=members.m - s.m)


@dataclass
class _WindowFilter:
    """Accepts candidate rows whose pattern on the window occurs in the string set."""

    indices: list[int]
    weights: np.ndarray
    allowed: np.ndarray
    dense: bool

    def __call__(self, block: np.ndarray) -> np.ndarray:
        codes = block[:, self.indices] @ self.weights
        return self.allowed[codes] if self.dense else np.isin(codes, self.allowed)


def _window_filters(s: StringSet, k: int) -> Iterator[_WindowFilter]:
    a = s.alphabet_size
    rows = np.array(s.strings, dtype=np.int64)
    weights = a ** np.arange(k - 1, -1, -1, dtype=np.int64)
    full = a**k
    for indices in combinations(range(s.n), k):
        codes = np.unique(rows[:, list(indices)] @ weights)
        if len(codes) == full:
            continue
        if full <= DENSE_TABLE_LIMIT:
            table = np.zeros(full, dtype=bool)
            table[codes] = True
            yield _WindowFilter(list(indices), weights, table, True)
        else:
            yield _WindowFilter(list(indices), weights, codes, False)


def candidate_block(n: int, a: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of A^n in lexicographic order, one symbol per column."""
    idx = np.arange(start, stop, dtype=np.int64)
    powers = a ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % a


def _map_blocks(fn, total: int, threads: Optional[int]) -> list:
    starts = range(0, total, BLOCK_SIZE)
    threads = threads or env.config.threads
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, starts))
    return [fn(start) for start in starts]


def recon_brute(
    s: StringSet, k: int, limit: Optional[int] = None, threads: Optional[int] = None
) -> ReconReport:
    """
    Recon_k(S) by checking every candidate of A^n against every k-window.
    The ground truth the other engines are tested against.

    Raises:
        ResourceGuardError: if a^n exceeds the enumeration limit.
    """
    check_k(s, k)
    total = s.alphabet_size**s.n
    check_guard("Brute-force reconstruction", total, limit or env.config.enumeration_limit)
    filters = list(_window_filters(s, k))
    logging.debug("Brute force: %d candidates, %d constraining windows", total, len(filters))

    def scan(start: int) -> np.ndarray:
        block = candidate_block(s.n, s.alphabet_size, start, min(start + BLOCK_SIZE, total))
        mask = np.ones(len(block), dtype=bool)
        for accept in filters:
            mask &= accept(block)
            if not mask.any():
                break
        return block[mask]

    found = [tuple(row) for part in _map_blocks(scan, total, threads) for row in part.tolist()]
    members = StringSet(s.n, tuple(found), s.alphabet_size)
    return ReconReport(k=k, members=members, extras=members.m - s.m)


def hamming_radius(s: StringSet, limit: Optional[int] = None) -> int:
    """d(S): the largest Hamming distance from any string of A^n to its nearest member of S."""
    total = s.alphabet_size**s.n
    check_guard("Hamming radius", total, limit or env.config.enumeration_limit)
    rows = np.array(s.strings, dtype=np.int64)

    def scan(start: int) -> int:
        block = candidate_block(s.n, s.alphabet_size, start, min(start + BLOCK_SIZE, total))
        nearest = np.full(len(block), s.n, dtype=np.int64)
        for row in rows:
            np.minimum(nearest, (block != row).sum(axis=1), out=nearest)
        return int(nearest.max())

    return max(_map_blocks(scan, total, None))


@dataclass(frozen=True)
class SparsityBound:
    """
    bound: the longest prefix of minority fractions (largest first) summing below 1.
    witness: the column-majority string, which lies in Recon_bound(S).
    """

    bound: int
    witness: Word
    minority: tuple[int, ...]


def sparsity_bound(s: StringSet) -> SparsityBound:
    majority, minority = [], []
    for i in range(s.n):
        counts = Counter(x[i] for x in s.strings)
        # most frequent symbol, the lowest one on ties
        symbol = min(counts, key=lambda c: (-counts[c], c))
        majority.append(symbol)
        minority.append(s.m - counts[symbol])
    bound, total = 0, 0
    # sum(d_i / m) < 1  <=>  sum(d_i) < m
    for i in sorted(range(s.n), key=lambda i: (-minority[i], i)):
        if total + minority[i] >= s.m:
            break
        total += minority[i]
        bound += 1
    return SparsityBound(bound=bound, witness=tuple(majority), minority=tuple(minority))


def is_perfect_at(s: StringSet, k: int, engine: Union[str, "Engine", None] = None) -> bool:
    """Recon_k(S) = S, taking the linear-time path at k=1 and the 2-SAT path at binary k=2."""
    check_k(s, k)
    if k == s.n:
        return True
    if k == 1:
        return is_1_reconstructible(s)
    if k == 2 and s.is_binary:
        return is_2_reconstructible(s)
    if engine is None or isinstance(engine, str):
        engine = env.engine(engine or env.config.default_engine)
    return engine.decide(s, k)


def perfect_point(
    s: StringSet,
    engine: Union[str, "Engine", None] = None,
    strategy: Optional[SearchStrategy] = None,
) -> int:
    """The least k with Recon_k(S) = S."""
    strategy = strategy or env.config.search
    if strategy == SearchStrategy.BINARY:
        lo, hi = 1, s.n
        while lo < hi:
            mid = (lo + hi) // 2
            if is_perfect_at(s, mid, engine):
                hi = mid
            else:
                lo = mid + 1
        return lo
    for k in range(1, s.n + 1):
        if is_perfect_at(s, k, engine):
            logging.debug("Perfect reconstruction reached at k=%d", k)
            return k
    return s.n
