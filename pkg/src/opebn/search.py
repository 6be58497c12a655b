"""Shortest-path search over the order lattice.

Nodes are variable sets; the edge from ``U`` to ``U | {X_i}`` costs
``d(X_i, U)``. Both solvers optionally apply optimal path extension: any
variable whose optimal parent set is already inside the node is appended
immediately, since some optimal completion adds it next.
"""

import heapq
from dataclasses import dataclass, field

from .core import LearnedNetwork, cardinality, full_set
from .pgraph import ParentGraph
from .reconstruct import backtrack, build_network


class SearchInvariantError(AssertionError):
    pass


@dataclass(slots=True)
class SearchState:
    set: int
    g: float
    h: float
    p: int = 0
    ext: tuple[int, ...] = ()
    f: float = field(init=False)

    def __post_init__(self):
        self.f = self.g + self.h


@dataclass
class SearchStats:
    expanded: int = 0
    generated: int = 0
    extended_vars: int = 0
    peak_open: int = 0
    peak_closed: int = 0


@dataclass
class SearchResult:
    network: LearnedNetwork
    stats: SearchStats
    goal: SearchState
    closed: dict


def heuristic(pg: ParentGraph, s: int) -> float:
    """Sum of unconstrained optimal scores of every variable outside ``s``."""
    return sum(pg.best(i).score for i in range(pg.n) if not (s >> i) & 1)


def path_extension(pg: ParentGraph, state: SearchState) -> SearchState:
    """Append, to fixpoint, every variable whose optimal parents lie inside the node.

    Variables are scanned in ascending index order on every pass.
    """
    n = pg.n
    s, g, h = state.set, state.g, state.h
    ext = list(state.ext)
    extended = True
    while extended:
        extended = False
        for i in range(n):
            if (s >> i) & 1:
                continue
            opt = pg.best(i)
            if opt.set & ~s == 0:
                g += opt.score
                h -= opt.score
                s |= 1 << i
                ext.append(i)
                extended = True
    if s == state.set:
        return state
    return SearchState(s, g, h, state.p, tuple(ext))


def _check_consistent(v: SearchState, d: float, child_h: float, tol: float = 1e-12):
    if v.h > d + child_h + tol * max(1.0, abs(v.h)):
        raise SearchInvariantError(
            f"heuristic inconsistent at {v.set:x}: h={v.h!r} > {d!r} + {child_h!r}")


def _successors(pg, v, goal, use_extension, stats, check):
    """Yield successor states of ``v`` in ascending order of the added variable."""
    for i in range(pg.n):
        bit = 1 << i
        if v.set & bit:
            continue
        d = pg.query_d(i, v.set)
        u = SearchState(v.set | bit, v.g + d, v.h - pg.best(i).score, v.set)
        if check:
            _check_consistent(v, d, heuristic(pg, u.set))
        stats.generated += 1
        if use_extension:
            ext = path_extension(pg, u)
            stats.extended_vars += len(ext.ext)
            u = ext
        yield u


def _finish(pg, goal, closed, stats) -> SearchResult:
    ordering = backtrack(goal, closed)
    return SearchResult(build_network(pg, ordering), stats, goal, closed)


def run_astar(pg: ParentGraph, use_extension: bool = True, check: bool = False) -> SearchResult:
    """A* with the relaxed-acyclicity heuristic.

    The open list is a binary heap with lazy deletion; on equal ``f`` deeper
    nodes pop first, then smaller bitmasks. ``check`` enables heuristic
    consistency and monotone-``f`` assertions.
    """
    goal = full_set(pg.n)
    root = SearchState(0, 0.0, heuristic(pg, 0))
    stats = SearchStats()
    open_states = {0: root}
    heap = [(root.f, 0, 0)]
    closed: dict[int, SearchState] = {}
    last_f = float("-inf")
    stats.peak_open = 1

    while heap:
        f, _, s = heapq.heappop(heap)
        v = open_states.get(s)
        if v is None or v.f != f:
            continue
        del open_states[s]
        closed[s] = v
        stats.expanded += 1
        stats.peak_closed = max(stats.peak_closed, len(closed))
        if check:
            if v.f < last_f - 1e-12 * max(1.0, abs(last_f)):
                raise SearchInvariantError(f"f decreased from {last_f!r} to {v.f!r}")
            last_f = max(last_f, v.f)
        if s == goal:
            return _finish(pg, v, closed, stats)

        for u in _successors(pg, v, goal, use_extension, stats, check):
            if u.set in closed:
                continue
            incumbent = open_states.get(u.set)
            if incumbent is not None and incumbent.g <= u.g:
                continue
            open_states[u.set] = u
            heapq.heappush(heap, (u.f, -cardinality(u.set), u.set))
        stats.peak_open = max(stats.peak_open, len(open_states))

    raise SearchInvariantError("open list exhausted before reaching the goal")


def run_bfs(pg: ParentGraph, use_extension: bool = False, check: bool = False) -> SearchResult:
    """Layer-by-layer dynamic programming over the lattice.

    Nodes are bucketed by cardinality and each keeps its best ``g``; extended
    successors land in the bucket of their new size.
    """
    n = pg.n
    goal = full_set(n)
    buckets: list[dict[int, SearchState]] = [dict() for _ in range(n + 1)]
    buckets[0][0] = SearchState(0, 0.0, heuristic(pg, 0))
    stats = SearchStats(peak_open=1)
    closed: dict[int, SearchState] = {}
    pending = 1

    for k in range(n + 1):
        layer = buckets[k]
        for s in sorted(layer):
            v = layer[s]
            pending -= 1
            closed[s] = v
            stats.expanded += 1
            if s == goal:
                continue
            for u in _successors(pg, v, goal, use_extension, stats, check):
                bucket = buckets[cardinality(u.set)]
                incumbent = bucket.get(u.set)
                if incumbent is None:
                    pending += 1
                elif incumbent.g <= u.g:
                    continue
                bucket[u.set] = u
            stats.peak_open = max(stats.peak_open, pending)
        buckets[k] = {}
        stats.peak_closed = len(closed)

    return _finish(pg, closed[goal], closed, stats)


def astar(pg: ParentGraph, use_extension: bool = True, check: bool = False):
    res = run_astar(pg, use_extension, check)
    return res.network, res.stats


def bfs(pg: ParentGraph, use_extension: bool = False, check: bool = False):
    res = run_bfs(pg, use_extension, check)
    return res.network, res.stats


SOLVERS = {
    "bfs": lambda pg, check=False: run_bfs(pg, False, check),
    "bfs-ope": lambda pg, check=False: run_bfs(pg, True, check),
    "astar": lambda pg, check=False: run_astar(pg, False, check),
    "astar-ope": lambda pg, check=False: run_astar(pg, True, check),
}


def solve(pg: ParentGraph, solver: str = "astar-ope", check: bool = False) -> SearchResult:
    try:
        run = SOLVERS[solver]
    except KeyError:
        raise ValueError(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}") from None
    return run(pg, check)
