"""Exhaustive reference computations for small instances.

Nothing here is efficient. Every routine enumerates directly so it can check
the parent graph and the solvers without sharing their code paths.
"""

import math
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
from itertools import permutations, product
from math import comb

from .core import iter_members

MAX_ORDERING_VARS = 8
MAX_DAG_VARS = 4
MAX_COUNT_VARS = 12


class OracleCapacityError(ValueError):
    pass


def subsets(u: int):
    """Every subset of bitmask ``u``, including ``u`` and the empty set."""
    sub = u
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & u


def d_bruteforce(scorer, data, child: int, u: int, max_parents=None) -> float:
    """Best score of ``child`` over all parent sets drawn from ``u``."""
    if (u >> child) & 1:
        raise ValueError("child must not be in the candidate set")
    return min(scorer(data, child, v) for v in subsets(u)
               if max_parents is None or bin(v).count("1") <= max_parents)


def best_score_bruteforce(pg=None, *, scorer=None, data=None, max_parents=None):
    """Minimum over all orderings of the summed best-parent scores.

    Works from a parent graph, or directly from ``scorer`` and ``data``.
    Returns ``(score, ordering)``; ties keep the lexicographically first
    ordering.
    """
    if pg is not None:
        n = pg.n
        d = pg.query_d
    else:
        n = data.n

        @lru_cache(maxsize=None)
        def d(child, u):
            return d_bruteforce(scorer, data, child, u, max_parents)

    if n > MAX_ORDERING_VARS:
        raise OracleCapacityError(f"ordering enumeration limited to n <= {MAX_ORDERING_VARS}")
    best, best_order = float("inf"), None
    for order in permutations(range(n)):
        terms = []
        seen = 0
        for v in order:
            terms.append(d(v, seen))
            seen |= 1 << v
        total = math.fsum(terms)
        if total < best:
            best, best_order = total, list(order)
    return best, best_order


def completion_cost_bruteforce(pg, u: int) -> float:
    """Shortest lattice distance from node ``u`` to the full set."""
    rest = [i for i in range(pg.n) if not (u >> i) & 1]
    best = float("inf")
    for order in permutations(rest):
        total = 0.0
        seen = u
        for v in order:
            total += pg.query_d(v, seen)
            seen |= 1 << v
        best = min(best, total)
    return best if rest else 0.0


def count_dags(n: int) -> int:
    """Number of labelled DAGs on ``n`` nodes by the inclusion-exclusion recurrence."""
    if not 1 <= n <= MAX_COUNT_VARS:
        raise OracleCapacityError(f"count_dags supports 1 <= n <= {MAX_COUNT_VARS}")
    c = [1]
    for k in range(1, n + 1):
        c.append(sum((-1) ** (i + 1) * comb(k, i) * 2 ** (i * (k - i)) * c[k - i]
                     for i in range(1, k + 1)))
    return c[n]


def is_acyclic(parents) -> bool:
    graph = {v: list(iter_members(p)) for v, p in enumerate(parents)}
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


def enumerate_dags(n: int):
    """Yield every DAG on ``n`` nodes as a tuple of parent bitmasks."""
    if not 1 <= n <= MAX_DAG_VARS:
        raise OracleCapacityError(f"DAG enumeration limited to n <= {MAX_DAG_VARS}")
    choices = []
    for v in range(n):
        others = sum(1 << j for j in range(n) if j != v)
        choices.append(list(subsets(others)))
    for parents in product(*choices):
        if is_acyclic(parents):
            yield parents


def enumerate_dags_score(scorer, data) -> float:
    """Minimum total score over every DAG, found without any ordering argument."""
    cache = {}

    def s(v, p):
        if (v, p) not in cache:
            cache[v, p] = scorer(data, v, p)
        return cache[v, p]

    return min(sum(s(v, p) for v, p in enumerate(parents)) for parents in enumerate_dags(data.n))
