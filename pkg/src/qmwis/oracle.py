"""Ground-truth brute force, induced-path checking, and instance generators.

The brute-force solver is the independent reference every equivalence test
compares against. It is deliberately simple: bitmask branch and bound with a
greedy weighted clique-cover bound, validated in the test suite against a
raw subset enumeration on small graphs.

Generators are fully deterministic functions of their spec: the same kind,
size, parameters, and seed always produce the identical graph and weights
(edges are drawn before weights, so the draw order is part of the format).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, WeightMap

DEFAULT_BRUTE_FORCE_CAP = 25


class GraphTooLarge(ValueError):
    """Raised when a brute-force call exceeds its configured size cap."""


def brute_force_mwis(
    g: Graph,
    w: WeightMap,
    max_size: int = DEFAULT_BRUTE_FORCE_CAP,
) -> tuple[int, frozenset[int]]:
    """Exact maximum-weight independent set by branch and bound.

    Args:
        g: graph, at most max_size vertices.
        w: non-negative integer vertex weights.
        max_size: refusal threshold; exponential search must stay small.

    Returns:
        (weight, witness) with witness an independent set of that weight.

    Raises:
        GraphTooLarge: when |V(g)| > max_size.
    """
    n = g.n
    if n > max_size:
        raise GraphTooLarge(f"brute force refuses {n} > {max_size} vertices")
    if n == 0:
        return 0, frozenset()

    # Sort by degree so high-degree vertices are decided first; stable
    # tie-break on id keeps the search order deterministic.
    ids = sorted(g.vertex_ids(), key=lambda v: (-g.degree(v), v))
    index = {v: j for j, v in enumerate(ids)}
    adj_mask = [0] * n
    for v in ids:
        m = 0
        for u in g.adj(v):
            m |= 1 << index[u]
        adj_mask[index[v]] = m
    weights = [w[v] for v in ids]

    best_weight = 0
    best_set = 0

    def clique_cover_bound(cand: int) -> int:
        # Greedily pack candidates into cliques; an independent set takes at
        # most the heaviest vertex from each clique.
        bound = 0
        remaining = cand
        while remaining:
            j = (remaining & -remaining).bit_length() - 1
            clique = 1 << j
            clique_max = weights[j]
            pool = remaining & adj_mask[j]
            remaining &= ~(1 << j)
            while pool:
                t = (pool & -pool).bit_length() - 1
                clique |= 1 << t
                if weights[t] > clique_max:
                    clique_max = weights[t]
                pool &= adj_mask[t]
                remaining &= ~(1 << t)
                pool &= remaining
            bound += clique_max
        return bound

    def expand(cand: int, current: int, chosen: int) -> None:
        nonlocal best_weight, best_set
        if not cand:
            if current > best_weight:
                best_weight = current
                best_set = chosen
            return
        if current + clique_cover_bound(cand) <= best_weight:
            return
        j = (cand & -cand).bit_length() - 1
        bit = 1 << j
        expand(cand & ~bit & ~adj_mask[j], current + weights[j], chosen | bit)
        expand(cand & ~bit, current, chosen)

    expand((1 << n) - 1, 0, 0)
    witness = frozenset(ids[j] for j in range(n) if best_set >> j & 1)
    return best_weight, witness


def enumerate_mwis(g: Graph, w: WeightMap) -> tuple[int, frozenset[int]]:
    """Raw 2^n reference used to validate the branch-and-bound oracle."""
    ids = g.vertex_ids()
    n = len(ids)
    if n > 20:
        raise GraphTooLarge(f"raw enumeration refuses {n} > 20 vertices")
    index = {v: j for j, v in enumerate(ids)}
    adj_mask = [0] * n
    for v in ids:
        for u in g.adj(v):
            adj_mask[index[v]] |= 1 << index[u]
    best_weight = 0
    best_mask = 0
    for mask in range(1 << n):
        ok = True
        weight = 0
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            if adj_mask[j] & mask:
                ok = False
                break
            weight += w[ids[j]]
            m &= m - 1
        if ok and weight > best_weight:
            best_weight = weight
            best_mask = mask
    return best_weight, frozenset(ids[j] for j in range(n) if best_mask >> j & 1)


def longest_induced_path_at_most(g: Graph, k: int) -> bool:
    """True iff g has no induced path on k vertices.

    Depth-first extension of induced paths: the next vertex must be adjacent
    to the current endpoint and non-adjacent to every earlier path vertex.
    Returns as soon as one k-vertex induced path is found.
    """
    if k < 1:
        raise ValueError(f"path length must be >= 1, got {k}")
    if k == 1:
        return g.n == 0
    if k == 2:
        return g.edge_count == 0

    def extend(path: list[int], banned: frozenset[int]) -> bool:
        # banned holds N[path without the endpoint]; candidates keep the
        # path induced.
        if len(path) == k:
            return True
        tail = path[-1]
        for nxt in sorted(g.adj(tail) - banned):
            if extend(path + [nxt], banned | g.adj(tail) | {tail}):
                return True
        return False

    for start in g.vertex_ids():
        if extend([start], frozenset({start})):
            return False
    return True


class GenerationError(RuntimeError):
    """Rejection sampling ran out of attempts."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic description of one generated instance.

    kind is one of random-gnp, cograph, pk-free-rejection, path, cycle,
    star, complete. Edge probability p applies to the gnp-based kinds and
    path_bound k to pk-free-rejection. Weights are drawn uniformly from
    weight_range after the edges.
    """

    kind: str
    size: int
    seed: int
    p: float | None = None
    path_bound: int | None = None
    weight_range: tuple[int, int] = (0, 100)
    max_attempts: int = 5000

    KINDS = ("random-gnp", "cograph", "pk-free-rejection", "path", "cycle", "star", "complete")


def _gnp_edges(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < p:
                edges.append((u, v))
    return edges


def _cograph_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    # Random union/join recursion over id ranges; joins and unions are
    # equally likely. The result never contains an induced 4-vertex path.
    edges: list[tuple[int, int]] = []

    def build(lo: int, hi: int) -> None:
        size = hi - lo + 1
        if size <= 1:
            return
        split = rng.randint(1, size - 1)
        mid = lo + split - 1
        build(lo, mid)
        build(mid + 1, hi)
        if rng.random() < 0.5:
            for u in range(lo, mid + 1):
                for v in range(mid + 1, hi + 1):
                    edges.append((u, v))

    build(1, n)
    return edges


def generate(spec: GeneratorSpec) -> tuple[Graph, WeightMap]:
    """Build the graph and weights described by spec.

    Raises:
        ValueError: on an unknown kind or missing kind parameters.
        GenerationError: when rejection sampling exhausts max_attempts.
    """
    n = spec.size
    if n < 0:
        raise ValueError(f"size must be >= 0, got {n}")
    rng = random.Random(spec.seed)
    vertices = list(range(1, n + 1))

    if spec.kind == "random-gnp":
        if spec.p is None:
            raise ValueError("random-gnp needs an edge probability p")
        graph = Graph(vertices, _gnp_edges(n, spec.p, rng))
    elif spec.kind == "cograph":
        graph = Graph(vertices, _cograph_edges(n, rng))
    elif spec.kind == "pk-free-rejection":
        if spec.p is None or spec.path_bound is None:
            raise ValueError("pk-free-rejection needs p and path_bound")
        graph = None
        for _ in range(spec.max_attempts):
            candidate = Graph(vertices, _gnp_edges(n, spec.p, rng))
            if longest_induced_path_at_most(candidate, spec.path_bound):
                graph = candidate
                break
        if graph is None:
            raise GenerationError(
                f"no P{spec.path_bound}-free sample in {spec.max_attempts} attempts "
                f"(n={n}, p={spec.p})"
            )
    elif spec.kind == "path":
        graph = Graph(vertices, [(i, i + 1) for i in range(1, n)])
    elif spec.kind == "cycle":
        edges = [(i, i + 1) for i in range(1, n)]
        if n >= 3:
            edges.append((1, n))
        graph = Graph(vertices, edges)
    elif spec.kind == "star":
        graph = Graph(vertices, [(1, i) for i in range(2, n + 1)])
    elif spec.kind == "complete":
        graph = Graph(vertices, [(u, v) for u in vertices for v in vertices if u < v])
    else:
        raise ValueError(f"unknown generator kind {spec.kind!r}")

    lo, hi = spec.weight_range
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid weight range {spec.weight_range}")
    weights = {v: rng.randint(lo, hi) for v in sorted(graph.vertices)}
    return graph, weights


def make_bruteforce_solver(max_size: int = DEFAULT_BRUTE_FORCE_CAP):
    """A (graph, weights) -> weight callable around brute_force_mwis."""

    def solve(g: Graph, w: WeightMap) -> int:
        return brute_force_mwis(g, w, max_size=max_size)[0]

    return solve
