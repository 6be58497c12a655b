"""Recover the optimal ordering and DAG from the goal state."""

import math
from typing import Mapping, Optional, Sequence

from .core import LearnedNetwork, iter_members


class BacktrackError(RuntimeError):
    """The predecessor chain from the goal to the root is broken."""


def backtrack(goal, closed: Mapping[int, object]) -> list[int]:
    """Walk predecessor links from ``goal`` to the root.

    Each hop contributes its expansion variable followed by the variables
    that path extension appended after it.
    """
    hops = []
    state = goal
    while state.set != 0:
        ext_bits = 0
        for i in state.ext:
            ext_bits |= 1 << i
        added = state.set & ~state.p & ~ext_bits
        if added == 0 or added & (added - 1):
            raise BacktrackError(f"state {state.set:x} does not add exactly one expansion variable")
        hops.append([added.bit_length() - 1, *state.ext])
        try:
            state = closed[state.p]
        except KeyError:
            raise BacktrackError(f"predecessor {state.p:x} missing from closed list") from None
    ordering = [v for hop in reversed(hops) for v in hop]
    return ordering


def build_network(pg, ordering: Sequence[int]) -> LearnedNetwork:
    if sorted(ordering) != list(range(pg.n)):
        raise ValueError("ordering must be a permutation of all variables")
    parents = [0] * pg.n
    terms = [0.0] * pg.n
    seen = 0
    for v in ordering:
        e = pg.query(v, seen)
        parents[v] = e.set
        terms[v] = e.score
        seen |= 1 << v
    # correctly rounded, so the same DAG scores identically under any ordering
    return LearnedNetwork(tuple(ordering), tuple(parents), math.fsum(terms))


def _names(n: int, names: Optional[Sequence[str]]) -> Sequence[str]:
    return names if names is not None else [f"X{i}" for i in range(n)]


def format_network(net: LearnedNetwork, names: Optional[Sequence[str]] = None) -> str:
    names = _names(net.n, names)
    lines = [f"score {format(net.score, '.17g')}"]
    for v in net.ordering:
        lines.append(" ".join([names[v], "<-", *(names[p] for p in iter_members(net.parents[v]))]))
    return "\n".join(lines) + "\n"


def parse_network(text: str, names: Sequence[str]) -> LearnedNetwork:
    """Inverse of ``format_network`` given the variable names."""
    index = {name: i for i, name in enumerate(names)}
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tag, value = lines[0].split()
    if tag != "score":
        raise ValueError("network file must start with a score line")
    ordering = []
    parents = [0] * len(names)
    for ln in lines[1:]:
        child, arrow, *pars = ln.split()
        if arrow != "<-":
            raise ValueError(f"malformed network line {ln!r}")
        ordering.append(index[child])
        for p in pars:
            parents[index[child]] |= 1 << index[p]
    return LearnedNetwork(tuple(ordering), tuple(parents), float(value))


def to_dot(net: LearnedNetwork, names: Optional[Sequence[str]] = None) -> str:
    names = _names(net.n, names)
    lines = ["digraph bn {"]
    lines.extend(f'  "{names[v]}";' for v in net.ordering)
    for v in net.ordering:
        lines.extend(f'  "{names[p]}" -> "{names[v]}";' for p in iter_members(net.parents[v]))
    lines.append("}")
    return "\n".join(lines) + "\n"
