"""Maximal and maximum balanced cliques in signed networks."""

from .enumeration import collect, enumerate_cliques, mbc_enum, mbc_enum_star
from .graph import (
    BalancedClique,
    SignedGraph,
    check_balanced_clique,
    degeneracy,
    load_edge_list,
    synthesize_signed,
)
from .maximum import mbcs_baseline, mbcs_ssp, mbcs_ssp_star, search_maximum
from .oracle import brute_enum, brute_max
from .reduction import edge_reduction, edge_reduction_plus, vertex_reduction

__version__ = "0.1.0"

__all__ = [
    "BalancedClique", "SignedGraph", "brute_enum", "brute_max", "check_balanced_clique",
    "collect", "degeneracy", "edge_reduction", "edge_reduction_plus", "enumerate_cliques",
    "load_edge_list", "mbc_enum", "mbc_enum_star", "mbcs_baseline", "mbcs_ssp",
    "mbcs_ssp_star", "search_maximum", "synthesize_signed", "vertex_reduction",
]
