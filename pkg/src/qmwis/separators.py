"""Constructive balanced separators built from induced dominating paths.

The core routine grows an induced path by repeatedly descending into the
largest component left after deleting the path's closed neighborhood. Once
no remaining component holds more than half the current graph, the path's
closed neighborhood is a |V(G)|/2-balanced separator. The refined form
drives the residual component bound down to |V(G)|/2^i by recursing on the
parameter i and re-running the path construction inside each component that
is still too large.

All balance comparisons are exact: a component C violates the bound
|V(G)|/2^i iff |C| * 2^i > |V(G)|, checked in integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .graph import Graph, closed_neighborhood, connected_components, induced_subgraph, remove_vertices


@dataclass(frozen=True)
class SeparatorCore:
    """A vertex set X whose closed neighborhood balances the source graph.

    balance_bound is |V(G)|/2^i for the graph G the core was built from: no
    component of G - N[X] has more than balance_bound vertices.
    """

    core: frozenset[int]
    parameter_i: int
    balance_bound: Fraction


def _largest_component(components: list[frozenset[int]]) -> frozenset[int]:
    # Ties broken by smallest contained vertex id; the component list is
    # already ordered by smallest id, so the first maximum wins.
    return max(components, key=len)


def gyarfas_path(g: Graph, start: int) -> list[int]:
    """An induced path from start whose neighborhood splits g in half.

    Every component of g - N[V(P)] has at most |V(g)|/2 vertices for the
    returned path P. On a graph with no induced path on k vertices the
    result has at most k - 1 vertices.

    Args:
        g: connected host graph.
        start: vertex the path begins at.

    Raises:
        ValueError: if start is outside g or g is disconnected.
    """
    if start not in g:
        raise ValueError(f"start vertex {start} is not in the graph")
    if len(connected_components(g)) != 1:
        raise ValueError("gyarfas_path requires a connected graph")

    path = [start]
    current = g
    tail = start
    while True:
        rest = remove_vertices(current, current.closed(tail))
        components = connected_components(rest)
        if not components:
            return path
        largest = _largest_component(components)
        if 2 * len(largest) <= current.n:
            return path
        # N(C) of a component C of g - N[tail] lies inside N(tail), so the
        # smallest neighbor of C is a valid next path vertex.
        neighbors = closed_neighborhood(current, largest) - largest
        nxt = min(neighbors)
        current = induced_subgraph(current, largest | {nxt})
        path.append(nxt)
        tail = nxt


def balanced_separator_core(g: Graph, i: int) -> SeparatorCore:
    """A core X with N[X] a |V(g)|/2^i-balanced separator of g.

    For i = 1 this is the path construction applied to the one component
    that can exceed half the graph (if any). For larger i the level i - 1
    core is refined: every component of g - N[X'] still larger than
    |V(g)|/2^i contributes the path construction run inside it. When
    2^i >= |V(g)| the bound is at most 1 vertex per component and the whole
    vertex set is returned; the size bound |X| <= 2^(i+1) * k for graphs
    with no induced k-vertex path still holds since |X| <= 2^i.

    The total number of path constructions is O(|V(g)|) across the whole
    recursion: at most 2^j of them at parameter j, each on disjoint
    components of at least |V(g)|/2^j vertices.
    """
    if i < 1:
        raise ValueError(f"separator parameter must be >= 1, got {i}")
    n = g.n
    bound = Fraction(n, 2**i)
    if 2**i >= n:
        return SeparatorCore(core=g.vertices, parameter_i=i, balance_bound=bound)

    if i == 1:
        core: set[int] = set()
        for comp in connected_components(g):
            if 2 * len(comp) > n:
                sub = induced_subgraph(g, comp)
                core.update(gyarfas_path(sub, min(comp)))
        return SeparatorCore(core=frozenset(core), parameter_i=1, balance_bound=bound)

    inner = balanced_separator_core(g, i - 1)
    core = set(inner.core)
    rest = remove_vertices(g, closed_neighborhood(g, inner.core))
    for comp in connected_components(rest):
        if len(comp) * 2**i > n:
            sub = induced_subgraph(g, comp)
            core.update(gyarfas_path(sub, min(comp)))
    return SeparatorCore(core=frozenset(core), parameter_i=i, balance_bound=bound)


def verify_balanced(g: Graph, separator: frozenset[int], bound: Rational) -> bool:
    """True iff every component of g - separator has at most bound vertices."""
    rest = remove_vertices(g, separator)
    return all(len(c) <= bound for c in connected_components(rest))
