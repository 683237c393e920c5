"""Solve a few small graphs and cross-check the answers by brute force.

The solver is exact, so on anything small enough to enumerate the two
numbers must agree. Run: python3 demos/01_solve_and_compare.py
"""

import itertools
import random

from qmwis import Graph, brute_force_mwis, solve_pkfree, verify_witness


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    ids = range(1, n + 1)
    edges = [(u, v) for u, v in itertools.combinations(ids, 2) if rng.random() < p]
    return Graph(ids, edges)


def main() -> None:
    # a 5-cycle with one heavy vertex: the heavy vertex plus its antipode win
    c5 = Graph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    weights = {1: 10, 2: 1, 3: 2, 4: 2, 5: 1}
    result = solve_pkfree(c5, weights)
    print(f"C5 with a heavy vertex: weight {result.weight}, witness {sorted(result.witness)}")

    rng = random.Random(7)
    agreements = 0
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 16), rng.choice([0.2, 0.5, 0.8]))
        w = {v: rng.randint(0, 100) for v in g.vertex_ids()}
        reference, _ = brute_force_mwis(g, w)
        got = solve_pkfree(g, w)
        assert got.weight == reference, (got.weight, reference)
        verify_witness(g, w, got.weight, got.witness)
        agreements += 1
    print(f"{agreements} random graphs: solver and brute force agree on every one")


if __name__ == "__main__":
    main()
