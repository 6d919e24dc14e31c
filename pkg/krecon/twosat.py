"""
2-CNF formulas over binary string positions.

Literal 2*v + b reads "x_v = b". A clause is a pair of literals, at least one of which must hold.
Satisfiability is checked on the implication graph: the formula (with some variables fixed) is
satisfiable iff no variable shares a strongly connected component with its negation.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .base_types import StringSet, Word

Clause = tuple[int, int]


def literal(var: int, value: int) -> int:
    return 2 * var + value


def negate(lit: int) -> int:
    return lit ^ 1


@dataclass(frozen=True)
class TwoSatFormula:
    n_vars: int
    clauses: tuple[Clause, ...] = field(default=())

    @classmethod
    def from_pairwise_projections(cls, s: StringSet) -> "TwoSatFormula":
        """
        One clause per absent bit pair (bi, bj) of every column pair (i, j): "not (x_i=bi and
        x_j=bj)". The satisfying assignments are exactly Recon_2(s).
        """
        clauses = []
        for i, j in combinations(range(s.n), 2):
            present = {(x[i], x[j]) for x in s.strings}
            if len(present) == 4:
                continue
            for bi in (0, 1):
                for bj in (0, 1):
                    if (bi, bj) not in present:
                        clauses.append((literal(i, 1 - bi), literal(j, 1 - bj)))
        return cls(s.n, tuple(clauses))

    def _base_edges(self) -> tuple[list[int], list[int]]:
        src, dst = [], []
        for a, b in self.clauses:
            src += [negate(a), negate(b)]
            dst += [b, a]
        return src, dst

    def is_satisfiable(self, fixed: Optional[dict[int, int]] = None) -> bool:
        """Satisfiability with the given variables forced (var -> value)."""
        src, dst = self._base_edges()
        for var, value in (fixed or {}).items():
            lit = literal(var, value)
            # forcing l is the clause (l or l): edge not-l -> l
            src.append(negate(lit))
            dst.append(lit)
        size = 2 * self.n_vars
        rows, cols = np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)
        graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
        _, labels = connected_components(graph, directed=True, connection="strong")
        return not np.any(labels[0::2] == labels[1::2])

    def solutions(self, limit: Optional[int] = None) -> Iterator[Word]:
        """
        Branch-and-check enumeration: variables are fixed in index order, 0 before 1, and a
        branch is entered only if the formula stays satisfiable. Every leaf is a solution, so
        the delay between solutions is polynomial. Yields in lexicographic order.
        """
        if not self.is_satisfiable():
            return
        emitted = 0
        fixed: dict[int, int] = {}

        def walk(var: int) -> Iterator[Word]:
            if var == self.n_vars:
                yield tuple(fixed[v] for v in range(self.n_vars))
                return
            for value in (0, 1):
                fixed[var] = value
                if self.is_satisfiable(fixed):
                    yield from walk(var + 1)
                del fixed[var]

        for solution in walk(0):
            yield solution
            emitted += 1
            if limit is not None and emitted >= limit:
                return

    def count_solutions(self, limit: Optional[int] = None) -> int:
        return sum(1 for _ in self.solutions(limit))
