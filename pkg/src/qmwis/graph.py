"""Immutable undirected graphs with stable integer vertex identities.

Every structure in this package operates on induced subgraphs of one root
graph. Vertex ids never change when a subgraph is taken, so vertex sets
computed against the root (separator families, witnesses, weight maps) stay
meaningful at every recursion depth.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

WeightMap = dict[int, int]


class Graph:
    """Simple undirected graph over non-negative integer vertex ids.

    Instances are immutable after construction and safe for unrestricted
    concurrent reads. Adjacency is exposed as frozensets; all iteration
    helpers yield vertices in sorted order so downstream algorithms are
    deterministic.
    """

    __slots__ = ("_adj", "_ids", "_vset", "_hash")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vset = set()
        for v in vertices:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"vertex ids must be integers >= 0, got {v!r}")
            vset.add(v)
        adj: dict[int, set[int]] = {v: set() for v in vset}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._ids = tuple(sorted(vset))
        self._vset = frozenset(vset)
        self._hash: int | None = None

    @classmethod
    def _from_adj(cls, adj: dict[int, frozenset[int]]) -> "Graph":
        # Trusted fast path: adj must already be symmetric and closed.
        g = object.__new__(cls)
        g._adj = adj
        g._ids = tuple(sorted(adj))
        g._vset = frozenset(adj)
        g._hash = None
        return g

    @property
    def vertices(self) -> frozenset[int]:
        return self._vset

    def vertex_ids(self) -> tuple[int, ...]:
        """All vertex ids in increasing order."""
        return self._ids

    @property
    def n(self) -> int:
        return len(self._ids)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, in lexicographic order."""
        for u in self._ids:
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def adj(self, v: int) -> frozenset[int]:
        """Open neighborhood N(v)."""
        return self._adj[v]

    def closed(self, v: int) -> frozenset[int]:
        """Closed neighborhood N[v]."""
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, frozenset())

    def has_vertex(self, v: int) -> bool:
        return v in self._vset

    def __contains__(self, v: int) -> bool:
        return v in self._vset

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vset, frozenset(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def closed_neighborhood(g: Graph, xs: Iterable[int]) -> frozenset[int]:
    """N[X]: the union of closed neighborhoods of the vertices in xs.

    Args:
        g: host graph.
        xs: vertex set, must be contained in V(g).

    Returns:
        frozenset containing xs and every neighbor of a vertex of xs.
    """
    result: set[int] = set()
    for x in xs:
        if x not in g:
            raise ValueError(f"vertex {x} is not in the graph")
        result.add(x)
        result |= g.adj(x)
    return frozenset(result)


def open_neighborhood(g: Graph, xs: Iterable[int]) -> frozenset[int]:
    """N(X) = N[X] minus X."""
    xset = frozenset(xs)
    return closed_neighborhood(g, xset) - xset


def induced_subgraph(g: Graph, xs: Iterable[int]) -> Graph:
    """The subgraph induced by xs, with vertex ids preserved."""
    xset = frozenset(xs)
    if not xset <= g.vertices:
        bad = sorted(xset - g.vertices)[:3]
        raise ValueError(f"vertices {bad} are not in the graph")
    return Graph._from_adj({v: g.adj(v) & xset for v in xset})


def remove_vertices(g: Graph, xs: Iterable[int]) -> Graph:
    """G - X. Vertices of xs outside the graph are ignored."""
    xset = frozenset(xs)
    return Graph._from_adj({v: g.adj(v) - xset for v in g.vertices - xset})


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by smallest contained id."""
    seen: set[int] = set()
    components: list[frozenset[int]] = []
    for root in g.vertex_ids():
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adj(u):
                if v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        components.append(frozenset(comp))
    return components


def shortest_path(g: Graph, a: int, b: int) -> list[int] | None:
    """A shortest a-b path as a vertex list, or None if disconnected.

    BFS with neighbors explored in sorted order, so the returned path is
    deterministic. Any shortest path in a graph is an induced path.
    """
    if a not in g or b not in g:
        raise ValueError("both endpoints must be vertices of the graph")
    if a == b:
        return [a]
    parent: dict[int, int] = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for v in sorted(g.adj(u)):
            if v in parent:
                continue
            parent[v] = u
            if v == b:
                path = [b]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            queue.append(v)
    return None


def total_weight(w: WeightMap, xs: Iterable[int]) -> int:
    """w(S): sum of the weights of the vertices in xs."""
    return sum(w[v] for v in xs)


def validate_weights(g: Graph, w: WeightMap) -> None:
    """Check that w defines a non-negative integer weight for every vertex."""
    for v in g.vertex_ids():
        if v not in w:
            raise ValueError(f"no weight for vertex {v}")
        wv = w[v]
        if not isinstance(wv, int) or isinstance(wv, bool) or wv < 0:
            raise ValueError(f"weight of vertex {v} must be an integer >= 0, got {wv!r}")


def is_independent_set(g: Graph, xs: Iterable[int]) -> bool:
    """True iff no two vertices of xs are adjacent in g."""
    xlist = [x for x in xs]
    xset = set(xlist)
    if len(xset) != len(xlist):
        return False
    for v in xset:
        if v not in g:
            raise ValueError(f"vertex {v} is not in the graph")
        if g.adj(v) & xset:
            return False
    return True
