"""Parent graph: for every variable, the score-sorted vector of its maximal
candidate parent sets.

A set ``U`` is kept for ``X_i`` only when ``s(X_i, U)`` is strictly better
than the best score reachable from any proper subset of ``U``. The best
parent set drawn from any ``U`` is then the first stored entry contained in
``U``.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Callable, NamedTuple, Optional, Sequence

from .core import cardinality, check_n, from_hex, to_hex
from .scoring import mdl_local_score


class PgEntry(NamedTuple):
    set: int
    score: float


class PGraphError(ValueError):
    """Malformed or internally inconsistent parent graph."""


def _sort_key(e: PgEntry):
    return (e.score, cardinality(e.set), e.set)


class ParentGraph:
    def __init__(self, n: int, vectors: Sequence[Sequence[PgEntry]], max_parents: Optional[int] = None):
        check_n(n)
        if len(vectors) != n:
            raise PGraphError(f"expected {n} vectors, got {len(vectors)}")
        self.n = n
        self.max_parents = max_parents
        self.vectors: tuple[tuple[PgEntry, ...], ...] = tuple(
            tuple(PgEntry(int(s), float(sc)) for s, sc in vec) for vec in vectors
        )
        self._validate()
        self._best = tuple(vec[0] for vec in self.vectors)

    def _validate(self):
        limit = 1 << self.n
        for i, vec in enumerate(self.vectors):
            if not vec:
                raise PGraphError(f"variable {i} has no entries")
            seen = set()
            for e in vec:
                if e.set >= limit or (e.set >> i) & 1:
                    raise PGraphError(f"variable {i}: invalid parent set {to_hex(e.set)}")
                if e.set in seen:
                    raise PGraphError(f"variable {i}: duplicate parent set {to_hex(e.set)}")
                seen.add(e.set)
            if 0 not in seen:
                raise PGraphError(f"variable {i}: empty parent set missing")
            keys = [_sort_key(e) for e in vec]
            if any(a > b for a, b in zip(keys, keys[1:])):
                raise PGraphError(f"variable {i}: entries not in ascending score order")

    @classmethod
    def from_lists(cls, vectors, max_parents=None) -> "ParentGraph":
        """Build from per-variable ``[(set, score), ...]`` lists in any order."""
        vecs = [sorted((PgEntry(s, sc) for s, sc in vec), key=_sort_key) for vec in vectors]
        return cls(len(vecs), vecs, max_parents)

    def __eq__(self, other):
        return isinstance(other, ParentGraph) and self.n == other.n and self.vectors == other.vectors

    def __repr__(self):
        return f"ParentGraph(n={self.n}, entries={self.size()})"

    def size(self) -> int:
        return sum(len(v) for v in self.vectors)

    def counts(self) -> list[int]:
        return [len(v) for v in self.vectors]

    def best(self, child: int) -> PgEntry:
        return self._best[child]

    def query_d(self, child: int, u: int) -> float:
        return self.query(child, u).score

    def query(self, child: int, u: int) -> PgEntry:
        """First (best) stored entry for ``child`` whose set lies inside ``u``."""
        for e in self.vectors[child]:
            if e.set & ~u == 0:
                return e
        raise PGraphError(f"no entry for variable {child} inside {to_hex(u)}")


def query_d(pg: ParentGraph, child: int, u: int) -> float:
    return pg.query_d(child, u)


def best(pg: ParentGraph, child: int) -> PgEntry:
    return pg.best(child)


def _child_vector(n: int, child: int, score: Callable[[int, int], float], max_parents: int) -> list[PgEntry]:
    """Layered DP over subsets of the other variables, keeping one layer of d."""
    others = [j for j in range(n) if j != child]
    empty = score(child, 0)
    kept = [PgEntry(0, empty)]
    prev = {0: empty}
    for k in range(1, max_parents + 1):
        layer = {}
        for combo in combinations(others, k):
            u = 0
            for j in combo:
                u |= 1 << j
            best_sub = min(prev[u & ~(1 << j)] for j in combo)
            s = score(child, u)
            if s < best_sub:
                kept.append(PgEntry(u, s))
                layer[u] = s
            else:
                layer[u] = best_sub
        prev = layer
    kept.sort(key=_sort_key)
    return kept


def build_from_scores(n: int, score: Callable[[int, int], float], max_parents: Optional[int] = None,
                      threads: int = 1) -> ParentGraph:
    """Build a parent graph from a local score function ``score(child, parents)``."""
    check_n(n)
    if max_parents is None:
        max_parents = n - 1
    if max_parents < 0:
        raise ValueError("max_parents must be non-negative")
    max_parents = min(max_parents, n - 1)

    def one(child):
        return _child_vector(n, child, score, max_parents)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vectors = list(pool.map(one, range(n)))
    else:
        vectors = [one(i) for i in range(n)]
    return ParentGraph(n, vectors, max_parents)


def build(data, scorer=mdl_local_score, max_parents: Optional[int] = None, threads: int = 1) -> ParentGraph:
    return build_from_scores(data.n, lambda c, u: scorer(data, c, u), max_parents, threads)


def reduction_ratio_from_counts(n: int, entries: int) -> float:
    """Full per-variable memoization size ``n * 2**(n-1)`` over stored entries."""
    return n * 2.0 ** (n - 1) / entries


def reduction_ratio(pg: ParentGraph) -> float:
    return reduction_ratio_from_counts(pg.n, pg.size())


def format_score(x: float) -> str:
    return format(x, ".17g")


def serialize(pg: ParentGraph) -> str:
    lines = [f"pgraph 1 {pg.n}"]
    for i, vec in enumerate(pg.vectors):
        lines.append(f"var {i} {len(vec)}")
        lines.extend(f"{to_hex(e.set)} {format_score(e.score)}" for e in vec)
    return "\n".join(lines) + "\n"


def deserialize(text) -> ParentGraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise PGraphError("empty parent graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "pgraph" or head[1] != "1":
        raise PGraphError(f"bad header: {lines[0]!r}")
    try:
        n = int(head[2])
        check_n(n)
    except ValueError as exc:
        raise PGraphError(f"bad header: {exc}") from None

    pos = 1
    vectors = []
    try:
        for i in range(n):
            tag, idx, count = lines[pos].split()
            if tag != "var" or int(idx) != i:
                raise PGraphError(f"expected 'var {i} <count>', got {lines[pos]!r}")
            count = int(count)
            entries = []
            for ln in lines[pos + 1: pos + 1 + count]:
                s, sc = ln.split()
                entries.append(PgEntry(from_hex(s), float(sc)))
            if len(entries) != count:
                raise PGraphError(f"variable {i}: expected {count} entries, found {len(entries)}")
            vectors.append(entries)
            pos += 1 + count
    except IndexError:
        raise PGraphError("truncated parent graph file") from None
    except ValueError as exc:
        if isinstance(exc, PGraphError):
            raise
        raise PGraphError(f"malformed line: {exc}") from None
    if pos != len(lines):
        raise PGraphError("trailing data after last variable")
    return ParentGraph(n, vectors)
