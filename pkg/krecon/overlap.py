"""
Overlap-graph reconstruction.

Columns are reordered so that similar columns sit next to each other, then the string set is
projected onto the n cyclically contiguous k-windows of that order. Layer i holds the distinct
k-mers of window i; an edge joins two k-mers of consecutive layers that overlap in k-1 symbols.
Closed walks through all n layers are exactly the strings consistent with those n windows.
Cycles are counted with per-layer transition blocks, nodes lying on a single cycle are pruned
(that cycle is an input string), the remaining cycles are enumerated and every candidate outside
the input is verified against the windows the cyclic order does not cover, through Hitting Set.
"""

import logging
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

import numpy as np

from .base_types import ReconReport, StringSet, Word, format_word, restrictor
from .bootstrap import env
from .core import check_k, is_1_reconstructible, recon_product
from .errors import InputError
from .hitting_set import HittingSetInstance, NodeLimitReached, hittable_within, solve_exact

# Cycle counts are saturated at this value (unsigned 64-bit)
SATURATED = 2**64 - 1


@dataclass(frozen=True)
class ColumnOrdering:
    """A column permutation and the similarity matrix it was chosen from."""

    permutation: tuple[int, ...]
    similarity: np.ndarray = field(compare=False, repr=False)

    def __post_init__(self):
        if sorted(self.permutation) != list(range(len(self.permutation))):
            raise InputError(f"Column ordering {list(self.permutation)} is not a permutation")

    @classmethod
    def identity(cls, s: StringSet) -> "ColumnOrdering":
        return cls(tuple(range(s.n)), column_similarity(s))

    def __str__(self) -> str:
        return ",".join(map(str, self.permutation))


def column_similarity(s: StringSet) -> np.ndarray:
    """
    Binary: |<u_i, u_j>| with columns rewritten over {-1, +1}.
    Larger alphabets: the number of rows on which two columns agree.
    """
    rows = np.array(s.strings, dtype=np.int64)
    if s.is_binary:
        signed = 2 * rows - 1
        return np.abs(signed.T @ signed)
    return (rows[:, :, None] == rows[:, None, :]).sum(axis=0)


def order_columns(s: StringSet, identity: bool = False) -> ColumnOrdering:
    """
    Greedy chain over column similarity: start from the most similar pair, then keep appending
    the unused column most similar to the chain end. Ties go to the lowest column index.
    """
    if identity or s.n < 3:
        return ColumnOrdering.identity(s)
    sim = column_similarity(s)
    seed, best = (0, 1), -1
    for i in range(s.n):
        for j in range(i + 1, s.n):
            if sim[i, j] > best:
                seed, best = (i, j), sim[i, j]
    chain = list(seed)
    unused = [c for c in range(s.n) if c not in seed]
    while unused:
        end = chain[-1]
        nxt = max(unused, key=lambda c: (sim[end, c], -c))
        chain.append(nxt)
        unused.remove(nxt)
    logging.debug("Column order: %s", ",".join(map(str, chain)))
    return ColumnOrdering(tuple(chain), sim)


@dataclass(frozen=True)
class Layer:
    """
    positions: the window's columns in cyclic order (not sorted).
    nodes: distinct k-mers of the input on those columns, sorted.
    successors: per node, ids of the nodes of the next layer it overlaps with.
    """

    positions: tuple[int, ...]
    nodes: tuple[Word, ...]
    successors: tuple[tuple[int, ...], ...]

    def index(self, kmer: Word) -> Optional[int]:
        i = bisect_left(self.nodes, kmer)
        return i if i < len(self.nodes) and self.nodes[i] == kmer else None

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class OverlapGraph:
    n: int
    k: int
    alphabet_size: int
    ordering: ColumnOrdering
    layers: tuple[Layer, ...]

    @property
    def node_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def edge_count(self) -> int:
        return sum(len(succ) for layer in self.layers for succ in layer.successors)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Global id of each layer's first node."""
        offsets, total = [], 0
        for layer in self.layers:
            offsets.append(total)
            total += len(layer)
        return tuple(offsets)

    def transition(self, i: int, dtype=np.int64) -> np.ndarray:
        """Block of the adjacency matrix from layer i to layer i+1 (mod n)."""
        layer, nxt = self.layers[i], self.layers[(i + 1) % self.n]
        block = np.zeros((len(layer), len(nxt)), dtype=np.int64)
        for u, succ in enumerate(layer.successors):
            block[u, list(succ)] = 1
        return block.astype(dtype)

    def walk(self, word: Word) -> Optional[tuple[int, ...]]:
        """Node ids visited by a full-length string, or None if a node is missing."""
        ids = []
        for layer in self.layers:
            i = layer.index(restrictor(layer.positions)(word))
            if i is None:
                return None
            ids.append(i)
        return tuple(ids)

    def subgraph(self, keep: Sequence[Sequence[bool]]) -> "OverlapGraph":
        """Drops the nodes whose keep flag is False, with their edges."""
        remap = []
        for flags in keep:
            ids, nxt = {}, 0
            for u, flag in enumerate(flags):
                if flag:
                    ids[u] = nxt
                    nxt += 1
            remap.append(ids)
        layers = []
        for i, layer in enumerate(self.layers):
            ids, next_ids = remap[i], remap[(i + 1) % self.n]
            layers.append(
                Layer(
                    positions=layer.positions,
                    nodes=tuple(node for u, node in enumerate(layer.nodes) if u in ids),
                    successors=tuple(
                        tuple(next_ids[v] for v in succ if v in next_ids)
                        for u, succ in enumerate(layer.successors)
                        if u in ids
                    ),
                )
            )
        return OverlapGraph(self.n, self.k, self.alphabet_size, self.ordering, tuple(layers))


def build_graph(s: StringSet, k: int, ordering: Optional[ColumnOrdering] = None) -> OverlapGraph:
    """
    Layer i covers columns perm[i], ..., perm[i+k-1] (indices mod n).
    Successors are found by binary search for every suffix+symbol in the sorted next layer.
    """
    if not 2 <= k <= s.n - 1:
        raise InputError(f"Overlap graphs need 2 <= k <= n-1, got k={k} for n={s.n}")
    ordering = ordering or order_columns(s)
    perm = ordering.permutation
    windows = [tuple(perm[(i + j) % s.n] for j in range(k)) for i in range(s.n)]
    kmers = [tuple(sorted({restrictor(w)(x) for x in s.strings})) for w in windows]
    layers = []
    for i, w in enumerate(windows):
        nxt = kmers[(i + 1) % s.n]
        successors = []
        for u in kmers[i]:
            succ = []
            for c in range(s.alphabet_size):
                target = u[1:] + (c,)
                j = bisect_left(nxt, target)
                if j < len(nxt) and nxt[j] == target:
                    succ.append(j)
            successors.append(tuple(succ))
        layers.append(Layer(w, kmers[i], tuple(successors)))
    g = OverlapGraph(s.n, k, s.alphabet_size, ordering, tuple(layers))
    logging.debug("Overlap graph k=%d: %d nodes, %d edges", k, g.node_count, g.edge_count)
    return g


@dataclass(frozen=True)
class CycleCountTable:
    """Per layer and node, the number of length-n cycles through the node (saturated)."""

    counts: tuple[tuple[int, ...], ...]
    overflow: tuple[tuple[bool, ...], ...]

    @property
    def total(self) -> int:
        """Number of length-n cycles: every cycle crosses layer 0 exactly once."""
        return min(sum(self.counts[0]), SATURATED) if self.counts else 0

    @property
    def overflowed(self) -> bool:
        return any(any(flags) for flags in self.overflow)


def cycle_counts(g: OverlapGraph) -> CycleCountTable:
    """
    Diagonal of A^n, layer by layer. A is block-cyclic, so the block of A^n on layer i is the
    product T_i T_{i+1} ... T_{i-1} of the transition blocks around the cycle. With prefix
    products P_i = T_0 ... T_{i-1} and suffix products Q_i = T_i ... T_{n-1} its diagonal is
    diag(Q_i P_i), computed without forming the full product.
    """
    if any(len(layer) == 0 for layer in g.layers):
        return CycleCountTable(
            tuple((0,) * len(layer) for layer in g.layers),
            tuple((False,) * len(layer) for layer in g.layers),
        )
    widest = max(len(layer) for layer in g.layers)
    # closed walks number at most widest * a^n; fall back to exact Python ints past int64
    dtype = np.int64 if widest * g.alphabet_size**g.n < 2**63 else object
    blocks = [g.transition(i, dtype) for i in range(g.n)]
    prefix = [np.eye(len(g.layers[0]), dtype=np.int64).astype(dtype)]
    for i in range(1, g.n):
        prefix.append(prefix[-1] @ blocks[i - 1])
    suffix = [None] * g.n
    suffix[-1] = blocks[-1]
    for i in range(g.n - 2, -1, -1):
        suffix[i] = blocks[i] @ suffix[i + 1]
    counts, overflow = [], []
    for i in range(g.n):
        diag = (suffix[i] * prefix[i].T).sum(axis=1)
        values = [int(v) for v in diag]
        counts.append(tuple(min(v, SATURATED) for v in values))
        overflow.append(tuple(v > SATURATED for v in values))
    return CycleCountTable(tuple(counts), tuple(overflow))


def adjacency_matrix(g: OverlapGraph, dtype=np.int64) -> np.ndarray:
    """Dense adjacency over global node ids (see OverlapGraph.offsets)."""
    size = g.node_count
    a = np.zeros((size, size), dtype=np.int64)
    for i, layer in enumerate(g.layers):
        src, dst = g.offsets[i], g.offsets[(i + 1) % g.n]
        for u, succ in enumerate(layer.successors):
            for v in succ:
                a[src + u, dst + v] = 1
    return a.astype(dtype)


def dense_power(g: OverlapGraph, power: Optional[int] = None) -> np.ndarray:
    """A^power (A^n by default) by repeated squaring over exact integers."""
    power = g.n if power is None else power
    return np.linalg.matrix_power(adjacency_matrix(g, dtype=object), power)


def prune_unique(
    g: OverlapGraph, s: StringSet, counts: Optional[CycleCountTable] = None
) -> OverlapGraph:
    """
    Repeatedly removes nodes on no cycle, and nodes on exactly one cycle when that cycle is
    still an input string's walk. Counts are recomputed after every pass until nothing changes.
    The cycles removed are input strings only.
    """
    passes, removed = 0, 0
    while True:
        counts = counts or cycle_counts(g)
        anchored = [set() for _ in g.layers]
        # a node on a surviving input walk with count 1 lies on that walk's cycle only
        for word in s.strings:
            ids = g.walk(word)
            if ids is not None:
                for i, u in enumerate(ids):
                    anchored[i].add(u)
        keep = [
            [
                not (c == 0 or (c == 1 and u in anchored[i] and not counts.overflow[i][u]))
                for u, c in enumerate(counts.counts[i])
            ]
            for i in range(g.n)
        ]
        dropped = sum(flags.count(False) for flags in keep)
        if not dropped:
            break
        passes += 1
        removed += dropped
        g = g.subgraph(keep)
        counts = None
    logging.debug("Pruning: %d nodes removed in %d passes, %d left", removed, passes, g.node_count)
    return g


def iter_cycles(g: OverlapGraph) -> Iterator[Word]:
    """
    Yields the strings spelled by the length-n cycles, in no particular order.
    Each node keeps the set of layer-0 nodes it reaches in exactly the remaining number of
    steps, so the depth-first walk never enters a branch that fails to close.
    """
    if any(len(layer) == 0 for layer in g.layers):
        return
    # reach[i][u]: bitmask of layer-0 nodes reachable from node u of layer i in n-i steps
    reach: list[list[int]] = [[] for _ in range(g.n)]
    reach[-1] = [sum(1 << v for v in succ) for succ in g.layers[-1].successors]
    for i in range(g.n - 2, -1, -1):
        nxt = reach[i + 1]
        reach[i] = [_union(nxt[v] for v in succ) for succ in g.layers[i].successors]
    perm = g.ordering.permutation
    for start, kmer in enumerate(g.layers[0].nodes):
        if not (reach[0][start] >> start) & 1:
            continue
        word = [0] * g.n
        for j, c in enumerate(kmer):
            word[perm[j]] = c
        yield from _walk(g, reach, start, 0, start, word)


def _union(masks) -> int:
    total = 0
    for mask in masks:
        total |= mask
    return total


def _walk(g: OverlapGraph, reach, start: int, i: int, u: int, word: list[int]) -> Iterator[Word]:
    if i == g.n - 1:
        yield tuple(word)
        return
    nxt = g.layers[i + 1]
    # layers past n-k only revisit columns already fixed by earlier layers
    column = g.ordering.permutation[(i + g.k) % g.n]
    for v in g.layers[i].successors[u]:
        if not (reach[i + 1][v] >> start) & 1:
            continue
        if i + 1 <= g.n - g.k:
            word[column] = nxt.nodes[v][-1]
        yield from _walk(g, reach, start, i + 1, v, word)


def enumerate_cycles(g: OverlapGraph) -> tuple[Word, ...]:
    """All strings spelled by the graph's length-n cycles, sorted; empty for an empty graph."""
    return tuple(sorted(set(iter_cycles(g))))


def _excluded(s: StringSet, x: Word, k: int, node_limit: int) -> bool:
    """x is outside Recon_k(s): its disagreement sets have a hitting set of size <= k."""
    diffs = s.disagreements(x)
    try:
        return hittable_within(diffs, k, node_limit=node_limit)
    except NodeLimitReached:
        logging.debug("FPT node limit hit for %s, using the exact solver", format_word(x))
        return solve_exact(HittingSetInstance(s.n, diffs)).size <= k


def _candidates(
    s: StringSet,
    k: int,
    ordering: Optional[ColumnOrdering],
    prune: Optional[bool],
    counters: dict,
) -> Iterator[Word]:
    g = build_graph(s, k, ordering)
    counters.update(nodes=g.node_count, edges=g.edge_count)
    if prune is None:
        prune = env.config.prune
    if prune:
        g = prune_unique(g, s)
        counters["pruned_nodes"] = counters["nodes"] - g.node_count
    for word in iter_cycles(g):
        if word not in s.members:
            yield word


def recon_overlap(
    s: StringSet,
    k: int,
    ordering: Optional[ColumnOrdering] = None,
    prune: Optional[bool] = None,
    fpt_node_limit: Optional[int] = None,
    threads: Optional[int] = None,
) -> ReconReport:
    """
    Recon_k(S) through the overlap graph.
    At k = n-1 the cyclic windows are all the windows, so every cycle is a member;
    below that, candidates are kept only if no k-window excludes them.
    """
    check_k(s, k)
    if k == s.n:
        return ReconReport(k=k, members=s.sorted(), extras=0)
    if k == 1:
        return recon_product(s)
    counters: dict[str, int] = {}
    candidates = sorted(_candidates(s, k, ordering, prune, counters))
    counters["candidates"] = len(candidates)
    if k == s.n - 1:
        kept = candidates
    else:
        node_limit = fpt_node_limit or env.config.fpt_node_limit
        threads = threads or env.config.threads

        def survives(x: Word) -> bool:
            return not _excluded(s, x, k, node_limit)

        if threads > 1 and len(candidates) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                flags = list(pool.map(survives, candidates))
        else:
            flags = [survives(x) for x in candidates]
        kept = [x for x, flag in zip(candidates, flags) if flag]
        counters["hitting_set_calls"] = len(candidates)
    members = StringSet(s.n, tuple(sorted(s.strings + tuple(kept))), s.alphabet_size)
    return ReconReport(k=k, members=members, extras=len(kept), counters=counters)


def decide_perfect_at_k(
    s: StringSet,
    k: int,
    ordering: Optional[ColumnOrdering] = None,
    prune: Optional[bool] = None,
    fpt_node_limit: Optional[int] = None,
) -> bool:
    """Recon_k(S) = S; stops at the first verified extra candidate."""
    check_k(s, k)
    if k == s.n:
        return True
    if k == 1:
        return is_1_reconstructible(s)
    node_limit = fpt_node_limit or env.config.fpt_node_limit
    for x in _candidates(s, k, ordering, prune, {}):
        if k == s.n - 1 or not _excluded(s, x, k, node_limit):
            logging.debug("Extra string at k=%d: %s", k, format_word(x))
            return False
    return True


def dump_graph(g: OverlapGraph) -> list[str]:
    """Adjacency listing: "layer node kmer -> successor ids"."""
    lines = [f"# n={g.n} k={g.k} order={g.ordering}"]
    for i, layer in enumerate(g.layers):
        lines.append(f"# layer {i} columns {','.join(map(str, layer.positions))}")
        for u, (kmer, succ) in enumerate(zip(layer.nodes, layer.successors)):
            lines.append(f"{i} {u} {format_word(kmer)} -> {','.join(map(str, succ))}")
    return lines


def dump_matrix(g: OverlapGraph, power: int = 1) -> list[str]:
    """Rows of A^power over global node ids, space separated."""
    matrix = dense_power(g, power)
    return [" ".join(str(int(v)) for v in row) for row in matrix]
