import numpy as np
import pytest

from krecon.base_types import StringSet
from krecon.core import recon_brute, recon_product
from krecon.errors import InputError
from krecon.overlap import (
    SATURATED,
    ColumnOrdering,
    build_graph,
    column_similarity,
    cycle_counts,
    decide_perfect_at_k,
    dense_power,
    dump_graph,
    dump_matrix,
    enumerate_cycles,
    order_columns,
    prune_unique,
    recon_overlap,
)
from tests.conftest import GOLDEN, all_strings, basis, even_parity, random_instances


@pytest.fixture
def fig3_graph(fig3):
    return build_graph(fig3, 3, ColumnOrdering.identity(fig3))


def test_column_similarity(fig1):
    sim = column_similarity(fig1)
    assert sim.shape == (3, 3)
    assert list(np.diag(sim)) == [3, 3, 3]
    assert sim[0, 1] == sim[1, 0]
    ternary = column_similarity(StringSet.from_strings(["012", "010"]))
    assert ternary[0, 2] == 1 and ternary[1, 1] == 2


def test_order_columns():
    s = StringSet.from_strings(["001", "101", "010", "110"])
    ordering = order_columns(s)
    # columns 1 and 2 are complementary
    assert ordering.permutation == (1, 2, 0)
    assert ordering.similarity[1, 2] == 4
    assert str(ordering) == "1,2,0"
    assert order_columns(s, identity=True).permutation == (0, 1, 2)
    for n in (3, 4, 6):
        assert order_columns(basis(n)).permutation == tuple(range(n))
    assert order_columns(StringSet.from_strings(["01", "11"])).permutation == (0, 1)


def test_bad_ordering(fig1):
    with pytest.raises(InputError):
        ColumnOrdering((0, 0, 1), column_similarity(fig1))


def test_build_graph(fig3_graph):
    g = fig3_graph
    assert [len(layer) for layer in g.layers] == [3, 3, 3, 3, 4]
    assert g.node_count == 16
    assert g.layers[3].positions == (3, 4, 0)
    assert g.layers[0].successors[0] == (0, 1)
    assert g.layers[4].index((1, 1, 0)) == 3
    assert g.layers[4].index((1, 1, 1)) is None
    assert g.offsets == (0, 3, 6, 9, 12)


def test_build_graph_range(fig3):
    for k in (1, 5):
        with pytest.raises(InputError):
            build_graph(fig3, k)


def test_dump_graph_golden(fig3_graph):
    expected = (GOLDEN / "fig3_graph.txt").read_text(encoding="utf-8").splitlines()
    assert dump_graph(fig3_graph) == expected


def test_walk(fig3_graph):
    assert fig3_graph.walk((0, 0, 1, 1, 1)) == (0, 1, 2, 1, 2)
    assert fig3_graph.walk((1, 1, 1, 1, 1)) is None


def test_cycle_counts(fig3_graph):
    table = cycle_counts(fig3_graph)
    assert table.counts[0] == (1, 2, 1)
    assert table.counts[4] == (1, 1, 1, 1)
    assert table.total == 4
    assert not table.overflowed


def test_cycle_counts_match_matrix_power(fig3_graph):
    power = dense_power(fig3_graph)
    table = cycle_counts(fig3_graph)
    diag = [int(v) for v in np.diag(power)]
    flat = [c for layer in table.counts for c in layer]
    assert diag == flat
    assert sum(diag) == fig3_graph.n * table.total


def test_cycle_counts_saturate():
    n = 45
    s = StringSet(
        n, tuple(tuple((a * i + b) % 3 for i in range(n)) for a in range(3) for b in range(3)), 3
    )
    g = build_graph(s, 2, ColumnOrdering.identity(s))
    assert all(len(layer) == 9 for layer in g.layers)
    table = cycle_counts(g)
    assert table.overflowed
    assert table.counts[0] == (SATURATED,) * 9
    assert table.total == SATURATED


def test_dump_matrix(fig3_graph):
    rows = dump_matrix(fig3_graph)
    assert len(rows) == 16
    assert rows[0].split() == ["0", "0", "0", "1", "1"] + ["0"] * 11
    diag = [int(row.split()[i]) for i, row in enumerate(dump_matrix(fig3_graph, 5))]
    assert diag[:3] == [1, 2, 1]


def test_enumerate_cycles(fig3, fig3_graph):
    assert enumerate_cycles(fig3_graph) == tuple(sorted(fig3.strings))


def test_prune(fig3, fig3_graph):
    pruned = prune_unique(fig3_graph, fig3)
    assert pruned.node_count == 0
    assert enumerate_cycles(pruned) == ()
    assert cycle_counts(pruned).total == 0


def test_prune_keeps_extras():
    s = basis(4)
    g = build_graph(s, 2, ColumnOrdering.identity(s))
    cycles = set(enumerate_cycles(g))
    assert set(s) | {(0, 0, 0, 0)} <= cycles
    pruned = set(enumerate_cycles(prune_unique(g, s)))
    assert cycles - set(s) <= pruned


def test_recon_overlap_fig3(fig3):
    report = recon_overlap(fig3, 3, ColumnOrdering.identity(fig3))
    assert report.members == fig3.sorted()
    assert report.extras == 0
    assert report.counters["nodes"] == 16
    assert report.counters["pruned_nodes"] == 16


def test_recon_overlap_special_k(fig3):
    assert recon_overlap(fig3, 5).members == fig3.sorted()
    assert recon_overlap(fig3, 1).members == recon_product(fig3).members
    with pytest.raises(InputError):
        recon_overlap(fig3, 6)


def test_recon_overlap_basis():
    report = recon_overlap(basis(4), 3)
    assert set(report.members) == set(basis(4)) | {(0, 0, 0, 0)}
    assert report.extras == 1
    assert "hitting_set_calls" not in report.counters


def test_recon_overlap_parity():
    report = recon_overlap(even_parity(4), 2, prune=False)
    assert report.members.m == 16
    assert report.counters["hitting_set_calls"] == report.counters["candidates"]


@pytest.mark.parametrize("prune", [True, False])
@pytest.mark.parametrize("identity", [True, False])
def test_recon_overlap_matches_brute(prune, identity):
    for s in random_instances(seed=31, count=30, max_n=7, max_m=16, min_n=3):
        ordering = order_columns(s, identity=identity)
        for k in range(2, s.n):
            expected = recon_brute(s, k)
            report = recon_overlap(s, k, ordering, prune=prune)
            assert report.members == expected.members
            assert report.extras == expected.extras
            assert decide_perfect_at_k(s, k, ordering, prune=prune) == expected.perfect


def test_recon_overlap_ternary():
    s = StringSet.from_strings(["0120", "1201", "2012", "0000", "1122"])
    for k in (2, 3):
        assert recon_overlap(s, k).members == recon_brute(s, k).members


def test_recon_overlap_threads():
    for s in random_instances(seed=32, count=10, max_n=7, max_m=20, min_n=5):
        assert (
            recon_overlap(s, 2, threads=3).members
            == recon_overlap(s, 2, threads=1).members
            == recon_brute(s, 2).members
        )


def test_tiny_fpt_node_limit_falls_back():
    for s in random_instances(seed=33, count=10, max_n=7, max_m=12, min_n=5):
        assert recon_overlap(s, 2, fpt_node_limit=1).members == recon_brute(s, 2).members


def random_graphs(seed: int, count: int):
    for s in random_instances(seed=seed, count=count, max_n=8, max_m=24, min_n=3):
        for k in range(2, s.n):
            yield s, k, build_graph(s, k)


def test_graph_size_bounds():
    for s, k, g in random_graphs(seed=34, count=40):
        assert g.node_count <= s.n * min(s.m, 2**k)
        assert g.node_count <= g.edge_count <= 2 * g.node_count


def test_cycle_count_invariants():
    for s, _, g in random_graphs(seed=35, count=40):
        table = cycle_counts(g)
        assert all(c >= 1 for layer in table.counts for c in layer)
        cycles = enumerate_cycles(g)
        assert table.total == len(cycles)
        assert set(s) <= set(cycles)
        if g.node_count <= 200:
            diag = [int(v) for v in np.diag(dense_power(g))]
            assert diag == [c for layer in table.counts for c in layer]


def test_pruning_removes_only_inputs():
    for s, _, g in random_graphs(seed=36, count=40):
        unpruned = set(enumerate_cycles(g))
        pruned = set(enumerate_cycles(prune_unique(g, s)))
        assert pruned <= unpruned
        assert unpruned - pruned <= set(s)


def test_complete_layers_count_every_string():
    for n, k in ((4, 2), (5, 3), (6, 2)):
        g = build_graph(all_strings(n), k)
        assert all(len(layer) == 2**k for layer in g.layers)
        assert cycle_counts(g).total == 2**n
