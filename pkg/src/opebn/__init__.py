"""Exact Bayesian network structure learning by shortest-path search over
the order lattice, with optimal path extension."""

from .core import LearnedNetwork, MAX_VARS
from .ingest import Dataset, parse, binarize_mean, summary
from .scoring import mdl_local_score, contingency_counts
from .pgraph import ParentGraph, PgEntry, build, query_d, best, reduction_ratio
from .search import SearchState, SearchStats, astar, bfs, heuristic, path_extension
from .reconstruct import backtrack, build_network

__all__ = [
    "LearnedNetwork", "MAX_VARS",
    "Dataset", "parse", "binarize_mean", "summary",
    "mdl_local_score", "contingency_counts",
    "ParentGraph", "PgEntry", "build", "query_d", "best", "reduction_ratio",
    "SearchState", "SearchStats", "astar", "bfs", "heuristic", "path_extension",
    "backtrack", "build_network",
]

__version__ = "0.1.0"
