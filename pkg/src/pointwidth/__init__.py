"""Exact Max-CSP solving by dynamic programming over point decompositions."""

from .beta import beta_elimination_order, build_beta_pd, is_beta_order
from .decomposition import (
    PointDecomposition,
    RootedTree,
    SimplifiedPointDecomposition,
    SubBag,
    ValidationReport,
    is_flat,
    restrict_tstructure,
    validate_pd,
    validate_spd,
    width_of_pd,
)
from .errors import (
    InvalidDecompositionError,
    InvalidInputError,
    NotChordalError,
    PointWidthError,
    SizeLimitError,
)
from .graphs import Graph, WeightedGraph, brute_mwis, chordal_mwis, peo
from .hypergraph import Hypergraph, Point, beta_cover_number, cover_number
from .maxcsp import Constraint, MaxCspInstance, brute_force_opt, hypergraph_of
from .mim import (
    BranchDecomposition,
    build_simplified_from_branch,
    build_spd_from_order,
    coverwidth_of_order,
    flatten,
    gen_hn,
    mim_width_of_branch,
)
from .solver import solve

__all__ = [
    "BranchDecomposition",
    "Constraint",
    "Graph",
    "Hypergraph",
    "InvalidDecompositionError",
    "InvalidInputError",
    "MaxCspInstance",
    "NotChordalError",
    "Point",
    "PointDecomposition",
    "PointWidthError",
    "RootedTree",
    "SimplifiedPointDecomposition",
    "SizeLimitError",
    "SubBag",
    "ValidationReport",
    "WeightedGraph",
    "beta_cover_number",
    "beta_elimination_order",
    "brute_force_opt",
    "brute_mwis",
    "build_beta_pd",
    "build_simplified_from_branch",
    "build_spd_from_order",
    "chordal_mwis",
    "cover_number",
    "coverwidth_of_order",
    "flatten",
    "gen_hn",
    "hypergraph_of",
    "is_beta_order",
    "is_flat",
    "mim_width_of_branch",
    "peo",
    "restrict_tstructure",
    "solve",
    "validate_pd",
    "validate_spd",
    "width_of_pd",
]
