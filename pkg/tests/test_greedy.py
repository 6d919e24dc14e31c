import pytest

from krecon.base_types import StringSet
from krecon.core import recon_brute
from krecon.engines import GreedyEngine
from krecon.errors import InputError
from krecon.greedy import expected_checks, recon_greedy
from tests.conftest import all_strings, basis, even_parity, random_instances


def test_parity_keeps_everything():
    report, trace = recon_greedy(even_parity(3), 2)
    assert report.members == all_strings(3)
    assert report.extras == 4
    assert trace.checks == 16 == expected_checks(3, 2)
    assert trace.frontier_sizes == [4, 8]
    assert report.counters == {"greedy_checks": 16}


def test_expected_checks():
    assert expected_checks(3, 2) == 16
    assert expected_checks(4, 3) == 2**4 * 3
    assert expected_checks(5, 5) == 0
    assert expected_checks(3, 2, alphabet_size=3) == 27 * 2
    report, trace = recon_greedy(all_strings(6), 3)
    assert report.extras == 0
    assert trace.checks == expected_checks(6, 3)


def test_fig1(fig1):
    report, trace = recon_greedy(fig1, 2)
    assert report.members == fig1.sorted()
    assert trace.checks < expected_checks(3, 2)
    assert trace.frontier_sizes[-1] == 3


def test_k_equals_n(fig3):
    report, trace = recon_greedy(fig3, 5)
    assert report.members == fig3.sorted()
    assert trace.checks == 0


def test_permutation_does_not_change_result():
    s = basis(5)
    natural, _ = recon_greedy(s, 3)
    permuted, _ = recon_greedy(s, 3, permutation=(4, 2, 0, 3, 1))
    assert natural.members == permuted.members


def test_bad_k(fig1):
    with pytest.raises(InputError):
        recon_greedy(fig1, 0)


def test_matches_brute():
    for s in random_instances(seed=41, count=40, max_n=7, max_m=20):
        for k in range(1, s.n + 1):
            report, _ = recon_greedy(s, k)
            assert report.members == recon_brute(s, k).members


def test_engine(fig1):
    assert GreedyEngine().recon(fig1, 2).perfect
    assert GreedyEngine(identity_order=False).recon(basis(4), 3).extras == 1


def test_frontier_holds_prefix_reconstruction():
    for s in random_instances(seed=42, count=40, max_n=7, max_m=20):
        for k in range(1, s.n + 1):
            _, trace = recon_greedy(s, k)
            assert len(trace.frontier_sizes) == s.n - k + 1
            for stage, size in enumerate(trace.frontier_sizes):
                i = k + stage
                prefix = StringSet(i, tuple(sorted({w[:i] for w in s})))
                # partial strings alive after a stage pass every window inside their prefix
                assert size == recon_brute(prefix, k).members.m
