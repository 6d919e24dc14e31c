"""Reconstruction of string sets from their k-way projections."""

from .base_types import StringSet, Window, ReconReport
from .core import (
    project,
    is_member,
    recon_brute,
    point_of_no_information,
    perfect_point,
    sparsity_bound,
)
from .formats import read_string_set
from .greedy import recon_greedy
from .hitting_set import HittingSetInstance, approx_d, solve_exact, solve_fpt
from .overlap import recon_overlap

__all__ = [
    "StringSet",
    "Window",
    "ReconReport",
    "project",
    "is_member",
    "recon_brute",
    "recon_overlap",
    "recon_greedy",
    "point_of_no_information",
    "perfect_point",
    "sparsity_bound",
    "read_string_set",
    "HittingSetInstance",
    "solve_exact",
    "solve_fpt",
    "approx_d",
]
