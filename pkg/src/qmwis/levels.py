"""Vertex multi-families, level sets, and branchable-vertex detection.

A multi-family is an ordered multiset of vertex sets. Duplicates and empty
members are kept and counted: subtraction replaces each member S by S - X
without dropping anything, so the family size is invariant under subtraction.
The i-th level L(F, i) collects the vertices lying in at least i members.

A vertex v is branchable relative to (F, N) when its closed neighborhood
covers at least Delta_i = N / 2^i vertices of level i for some i >= 1.
Levels are monotone decreasing in i and Delta_i <= 1 once i >= ceil(log2 N),
so the search never needs to look past i = ceil(log2 N) + 1: a vertex on a
later non-empty level already qualifies at the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .graph import Graph


def ceil_log2(x: int) -> int:
    """ceil(log2 x) for x >= 1, with ceil_log2(1) = 0."""
    if x < 1:
        raise ValueError(f"ceil_log2 requires x >= 1, got {x}")
    return (x - 1).bit_length()


class VertexMultiFamily:
    """Ordered multiset of vertex sets with level-set queries.

    Immutable. Multiplicity counts and level sets are computed once and
    shared by every query.
    """

    __slots__ = ("_members", "_counts", "_levels")

    def __init__(self, members: Iterable[Iterable[int]] = ()):
        self._members: tuple[frozenset[int], ...] = tuple(frozenset(m) for m in members)
        counts: dict[int, int] = {}
        for member in self._members:
            for v in member:
                counts[v] = counts.get(v, 0) + 1
        self._counts = counts
        self._levels: dict[int, frozenset[int]] = {}

    @property
    def members(self) -> tuple[frozenset[int], ...]:
        return self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self._members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexMultiFamily):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"VertexMultiFamily({list(map(sorted, self._members))!r})"

    def multiplicity(self, v: int) -> int:
        """Number of members containing v."""
        return self._counts.get(v, 0)

    def max_multiplicity(self) -> int:
        return max(self._counts.values(), default=0)

    def level(self, i: int) -> frozenset[int]:
        """L(F, i): vertices contained in at least i members."""
        if i < 1:
            raise ValueError(f"level index must be >= 1, got {i}")
        cached = self._levels.get(i)
        if cached is None:
            cached = frozenset(v for v, c in self._counts.items() if c >= i)
            self._levels[i] = cached
        return cached

    def add(self, member: Iterable[int]) -> "VertexMultiFamily":
        """New family with one more member appended."""
        return VertexMultiFamily(self._members + (frozenset(member),))

    def subtract(self, xs: Iterable[int]) -> "VertexMultiFamily":
        """F - X: every member minus X, order and count preserved."""
        xset = frozenset(xs)
        return VertexMultiFamily(m - xset for m in self._members)


def level_set(family: VertexMultiFamily, i: int) -> frozenset[int]:
    """L(F, i) as a standalone operation."""
    return family.level(i)


def family_subtract(family: VertexMultiFamily, xs: Iterable[int]) -> VertexMultiFamily:
    """F - X as a standalone operation."""
    return family.subtract(xs)


def branch_threshold(capacity_n: int, i: int) -> Fraction:
    """Delta_i = N / 2^i as an exact rational."""
    if capacity_n < 1:
        raise ValueError(f"N must be >= 1, got {capacity_n}")
    if i < 1:
        raise ValueError(f"threshold index must be >= 1, got {i}")
    return Fraction(capacity_n, 2**i)


@dataclass(frozen=True)
class LevelView:
    """A family paired with the capacity N it is measured against."""

    family: VertexMultiFamily
    capacity_n: int

    def __post_init__(self) -> None:
        if self.capacity_n < 1:
            raise ValueError(f"N must be >= 1, got {self.capacity_n}")

    def max_level_index(self) -> int:
        """The level search cap, ceil(log2 N) + 1."""
        return ceil_log2(self.capacity_n) + 1


def find_branchable(g: Graph, view: LevelView) -> int | None:
    """A branchable vertex of g relative to view, or None.

    A vertex qualifies when |N[v] cap L(F, i)| >= N / 2^i for some
    1 <= i <= ceil(log2 N) + 1, checked as the integer comparison
    |N[v] cap L(F, i)| * 2^i >= N. Among qualifying vertices the one with
    the largest violation max_i |N[v] cap L(F, i)| * 2^i wins; ties go to
    the smallest vertex id.
    """
    n_cap = view.capacity_n
    levels: list[frozenset[int]] = []
    for i in range(1, view.max_level_index() + 1):
        li = view.family.level(i)
        if not li:
            break
        levels.append(li)
    if not levels:
        return None
    best: int | None = None
    best_score = 0
    for v in g.vertex_ids():
        closed = g.adj(v) | {v}
        score = 0
        for idx, li in enumerate(levels):
            hits = len(closed & li)
            if hits == 0:
                break
            score = max(score, hits << (idx + 1))
        if score >= n_cap and score > best_score:
            best = v
            best_score = score
    return best
