"""
Greedy baseline: grows partial strings one index at a time, keeping an extension only if it is
consistent with every window made of the new index and k-1 earlier ones.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .base_types import ReconReport, StringSet, Word, restrictor
from .core import check_k


@dataclass
class GreedyTrace:
    checks: int = 0
    """ (extension, window) tests actually performed; a failing window ends the extension. """
    frontier_sizes: list[int] = field(default_factory=list)
    """ Partial strings alive after each stage, starting with the seed stage. """


def expected_checks(n: int, k: int, alphabet_size: int = 2) -> int:
    """
    The exact check count when nothing is ever rejected (every k-window complete):
    stage i extends a^i partial strings by a symbols, each tested against C(i, k-1) windows.
    """
    return sum(alphabet_size ** (i + 1) * comb(i, k - 1) for i in range(k, n))


def recon_greedy(
    s: StringSet, k: int, permutation: Optional[tuple[int, ...]] = None
) -> tuple[ReconReport, GreedyTrace]:
    """
    Recon_k(S) by extension. Position j of a partial string holds column permutation[j]
    (identity by default). All k-windows are covered once the last index is added.
    """
    check_k(s, k)
    perm = tuple(permutation) if permutation is not None else tuple(range(s.n))
    trace = GreedyTrace()
    projections: dict[tuple[int, ...], set[Word]] = {}

    def projection(window: tuple[int, ...]) -> set[Word]:
        if window not in projections:
            get = restrictor([perm[p] for p in window])
            projections[window] = {get(x) for x in s.strings}
        return projections[window]

    frontier = sorted(projection(tuple(range(k))))
    trace.frontier_sizes.append(len(frontier))
    for i in range(k, s.n):
        windows = [w + (i,) for w in combinations(range(i), k - 1)]
        extended = []
        for partial in frontier:
            for c in range(s.alphabet_size):
                candidate = partial + (c,)
                for w in windows:
                    trace.checks += 1
                    if restrictor(w)(candidate) not in projection(w):
                        break
                else:
                    extended.append(candidate)
        frontier = extended
        trace.frontier_sizes.append(len(frontier))
        logging.debug("Greedy stage %d: %d partial strings", i + 1, len(frontier))

    words = []
    for partial in frontier:
        word = [0] * s.n
        for j, c in enumerate(partial):
            word[perm[j]] = c
        words.append(tuple(word))
    members = StringSet(s.n, tuple(sorted(words)), s.alphabet_size)
    report = ReconReport(
        k=k, members=members, extras=members.m - s.m, counters={"greedy_checks": trace.checks}
    )
    return report, trace
