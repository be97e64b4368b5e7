"""Exact solvers for Eulerian edge-deletion problems.

Given a graph and a budget k, decide whether at most k edges can be
deleted so that the remainder is connected and Eulerian (all degrees
even), connected with all degrees odd, or -- in the directed case --
weakly connected and balanced.  The solvers run a dynamic program over
partial path systems whose per-cell families are pruned down to
representative subfamilies in the co-graphic matroid of the input.
"""

from .graphs import Graph, Digraph, ParseError, parse_instance
from .solver import (
    SolveResult,
    SolverError,
    solve_co_connected_tjoin,
    solve_ueed,
    solve_ucoed,
    solve_directed,
    solve_deed,
)

__all__ = [
    "Graph",
    "Digraph",
    "ParseError",
    "parse_instance",
    "SolveResult",
    "SolverError",
    "solve_co_connected_tjoin",
    "solve_ueed",
    "solve_ucoed",
    "solve_directed",
    "solve_deed",
]

__version__ = "0.1.0"
