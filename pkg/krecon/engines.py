"""
Reconstruction engines selectable by name (see Config.engines).
Every engine computes the same Recon_k(S); they differ only in how.
"""

import abc
from dataclasses import dataclass
from typing import Optional

from .base_types import ReconReport, StringSet
from .core import recon_brute
from .greedy import recon_greedy
from .overlap import decide_perfect_at_k, order_columns, recon_overlap


class Engine(abc.ABC):
    """Computes k-reconstructions and decides perfect reconstruction at a given k."""

    @abc.abstractmethod
    def recon(self, s: StringSet, k: int) -> ReconReport:
        raise NotImplementedError()

    def decide(self, s: StringSet, k: int) -> bool:
        return self.recon(s, k).perfect


@dataclass
class BruteEngine(Engine):
    """Definition-level oracle over all a^n candidates."""

    limit: Optional[int] = None
    threads: Optional[int] = None

    def recon(self, s: StringSet, k: int) -> ReconReport:
        return recon_brute(s, k, limit=self.limit, threads=self.threads)


@dataclass
class OverlapEngine(Engine):
    """Overlap graph with cycle counting, pruning and Hitting Set verification."""

    prune: Optional[bool] = None
    fpt_node_limit: Optional[int] = None
    identity_order: bool = False
    threads: Optional[int] = None

    def recon(self, s: StringSet, k: int) -> ReconReport:
        return recon_overlap(
            s,
            k,
            ordering=order_columns(s, identity=self.identity_order),
            prune=self.prune,
            fpt_node_limit=self.fpt_node_limit,
            threads=self.threads,
        )

    def decide(self, s: StringSet, k: int) -> bool:
        return decide_perfect_at_k(
            s,
            k,
            ordering=order_columns(s, identity=self.identity_order),
            prune=self.prune,
            fpt_node_limit=self.fpt_node_limit,
        )


@dataclass
class GreedyEngine(Engine):
    """Index-by-index extension baseline; natural column order unless told otherwise."""

    identity_order: bool = True

    def recon(self, s: StringSet, k: int) -> ReconReport:
        permutation = None if self.identity_order else order_columns(s).permutation
        report, _ = recon_greedy(s, k, permutation)
        return report
