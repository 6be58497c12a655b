"""Bitmask variable sets and the learned-network result type.

A variable set is a plain ``int`` whose bit ``i`` is set iff variable ``i``
is a member. The problem size ``n`` is carried by the caller, never by the
value, so sets stay cheap on the search hot path.
"""

from dataclasses import dataclass
from typing import Iterator, Sequence

MAX_VARS = 64

EMPTY = 0


class CapacityError(ValueError):
    """Problem size outside what a single machine word can encode."""


def check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise CapacityError(f"number of variables must be in [1, {MAX_VARS}], got {n}")


def full_set(n: int) -> int:
    check_n(n)
    return (1 << n) - 1


def singleton(i: int) -> int:
    return 1 << i


def from_members(members: Sequence[int]) -> int:
    bits = 0
    for i in members:
        bits |= 1 << i
    return bits


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def contains(s: int, i: int) -> bool:
    return (s >> i) & 1 == 1


def insert(s: int, i: int) -> int:
    return s | (1 << i)


def remove(s: int, i: int) -> int:
    return s & ~(1 << i)


def complement(s: int, n: int) -> int:
    return full_set(n) & ~s


def cardinality(s: int) -> int:
    return bin(s).count("1")


def iter_members(s: int) -> Iterator[int]:
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def members(s: int) -> list[int]:
    """Members of ``s`` in ascending order."""
    return list(iter_members(s))


def to_hex(s: int) -> str:
    return format(s, "x")


def from_hex(text: str) -> int:
    return int(text, 16)


@dataclass(frozen=True)
class LearnedNetwork:
    """An optimal ordering, the parent set chosen for every variable, and the
    total score of the resulting DAG."""

    ordering: tuple[int, ...]
    parents: tuple[int, ...]
    score: float

    @property
    def n(self) -> int:
        return len(self.ordering)

    def edges(self) -> list[tuple[int, int]]:
        return [(p, child) for child in range(self.n) for p in iter_members(self.parents[child])]

    def is_consistent(self) -> bool:
        """True if the ordering is a permutation and every parent precedes its child."""
        if sorted(self.ordering) != list(range(self.n)):
            return False
        seen = EMPTY
        for v in self.ordering:
            if not is_subset(self.parents[v], seen):
                return False
            seen |= 1 << v
        return True
