"""Random graphs for randomized checks; every generator takes an explicit ``random.Random``."""
from __future__ import annotations

import random

from .algebra import Poly, RingElem
from .graph import Edge, WeightedGraph


def random_weight(rng: random.Random, kind: str = "int") -> RingElem:
    if kind == "int":
        return rng.randint(1, 3)
    if kind == "signed":
        return rng.choice([-2, -1, 1, 2, 3])
    if kind == "poly":
        if rng.random() < 0.25:
            return rng.randint(1, 2)
        return Poly.monomial(rng.randint(0, 2), rng.randint(0, 2), rng.choice([1, 1, 2, -1]))
    raise ValueError(f"unknown weight kind {kind!r}")


def random_graph(
    rng: random.Random,
    n_vertices: int,
    n_edges: int,
    weights: str = "int",
    p_directed: float = 0.5,
    loops: bool = True,
) -> WeightedGraph:
    """Multigraph on labels (0,), (1,), ... mixing directed and undirected edges."""
    es = []
    for _ in range(n_edges):
        t = rng.randrange(n_vertices)
        h = rng.randrange(n_vertices)
        if t == h and not loops:
            continue
        directed = t == h or rng.random() < p_directed
        es.append(Edge(t, h, directed, random_weight(rng, weights)))
    return WeightedGraph(tuple((i,) for i in range(n_vertices)), tuple(es))


def random_bipartite_graph(
    rng: random.Random, n_left: int, n_right: int, n_edges: int, weights: str = "int", p_directed: float = 0.3
) -> WeightedGraph:
    """Edges only between the first n_left vertices and the remaining n_right."""
    n = n_left + n_right
    es = []
    for _ in range(n_edges):
        u = rng.randrange(n_left)
        v = n_left + rng.randrange(n_right)
        if rng.random() < 0.5:
            u, v = v, u
        es.append(Edge(u, v, rng.random() < p_directed, random_weight(rng, weights)))
    return WeightedGraph(tuple((i,) for i in range(n)), tuple(es))
