"""Exact walk counting.

The engine propagates a sparse row vector through the out-arc lists, so
``c_n(u -> v)`` is the ``(u, v)`` entry of ``W^n`` without ever forming a
dense matrix.  ``count_walks_oracle`` is an independent depth-first
enumeration of edge sequences used to cross-check the engine.
"""
from __future__ import annotations

import os
from collections import defaultdict
from typing import Sequence

from .algebra import EgfMatrix, EgfSeq, RingElem
from .graph import WeightedGraph

DEFAULT_ORACLE_BOUND = 8
DEFAULT_ORACLE_BALL = 200


class InsufficientWindowError(ValueError):
    """A lattice window is too small for walks of the requested length."""


class OracleBoundError(ValueError):
    pass


def _check_window(G: WeightedGraph, source: int, order: int) -> None:
    if G.window is None:
        return
    if G.window.exact_order(G.vertices[source]) < order:
        raise InsufficientWindowError(
            f"window of radius {G.window.radius} around {G.window.center} is too small "
            f"for walks of length {order} from {G.vertices[source]}"
        )


def walk_distribution(G: WeightedGraph, source, order: int) -> list[dict[int, RingElem]]:
    """For n = 0..order, the nonzero entries of row ``source`` of W^n."""
    s = G.vertex_index(source)
    _check_window(G, s, order)
    vec: dict[int, RingElem] = {s: 1}
    out = [vec]
    arcs = G.out_arcs
    for _ in range(order):
        nxt: dict[int, RingElem] = defaultdict(int)
        for u, x in vec.items():
            for v, w in arcs[u]:
                nxt[v] = nxt[v] + x * w
        vec = {v: x for v, x in nxt.items() if x != 0}
        out.append(vec)
    return out


def count_walks(G: WeightedGraph, source, target, order: int) -> EgfSeq:
    t = G.vertex_index(target)
    return EgfSeq(d.get(t, 0) for d in walk_distribution(G, source, order))


def egf_matrix(G: WeightedGraph, order: int, vertices: Sequence | None = None) -> EgfMatrix:
    """C(G) truncated at ``order``; optionally only the block on ``vertices``."""
    labels = list(G.vertices) if vertices is None else list(vertices)
    idx = [G.vertex_index(v) for v in labels]
    rows = []
    for u in labels:
        dist = walk_distribution(G, u, order)
        rows.append([EgfSeq(d.get(j, 0) for d in dist) for j in idx])
    return EgfMatrix(rows)


def oracle_bound() -> int:
    raw = os.environ.get("LATTICEWALK_ORACLE_BOUND")
    return int(raw) if raw else DEFAULT_ORACLE_BOUND


def count_walks_oracle(
    G: WeightedGraph,
    source,
    target,
    order: int,
    bound: int | None = None,
    max_ball: int = DEFAULT_ORACLE_BALL,
) -> EgfSeq:
    """Sum of weight products over all edge sequences, by depth-first search."""
    bound = oracle_bound() if bound is None else bound
    if order > bound:
        raise OracleBoundError(f"oracle limited to length {bound}, asked for {order}")
    s, t = G.vertex_index(source), G.vertex_index(target)
    _check_window(G, s, order)

    # adjacency rebuilt from the raw edge list on purpose
    steps: dict[int, list[tuple[int, RingElem]]] = defaultdict(list)
    for e in G.edges:
        steps[e.tail].append((e.head, e.weight))
        if not e.directed:
            steps[e.head].append((e.tail, e.weight))

    ball, frontier = {s}, [s]
    for _ in range(order):
        frontier = [v for u in frontier for v, _ in steps[u] if v not in ball]
        ball.update(frontier)
        if len(ball) > max_ball:
            raise OracleBoundError(f"ball around {source} exceeds {max_ball} vertices")

    totals: list[RingElem] = [0] * (order + 1)

    def dfs(u: int, depth: int, weight: RingElem) -> None:
        if u == t:
            totals[depth] = totals[depth] + weight
        if depth == order:
            return
        for v, w in steps[u]:
            dfs(v, depth + 1, weight * w)

    dfs(s, 0, 1)
    return EgfSeq(totals)


def count_composite_walks(G: WeightedGraph, waypoints: Sequence, order: int) -> EgfSeq:
    """Walks from waypoints[0] to waypoints[-1] visiting the inner waypoints in order.

    State is (vertex, number of inner waypoints matched); the counter
    advances greedily whenever the walk stands on the next waypoint, so
    each walk is counted once.
    """
    if len(waypoints) < 3:
        raise ValueError("a composite walk needs at least one inner waypoint; use count_walks")
    wp = [G.vertex_index(v) for v in waypoints]
    inner, target = wp[1:-1], wp[-1]
    k = len(inner)
    _check_window(G, wp[0], order)

    def advance(v: int, j: int) -> int:
        while j < k and inner[j] == v:
            j += 1
        return j

    state: dict[tuple[int, int], RingElem] = {(wp[0], advance(wp[0], 0)): 1}
    coeffs = [state.get((target, k), 0)]
    arcs = G.out_arcs
    for _ in range(order):
        nxt: dict[tuple[int, int], RingElem] = defaultdict(int)
        for (u, j), x in state.items():
            for v, w in arcs[u]:
                key = (v, advance(v, j))
                nxt[key] = nxt[key] + x * w
        state = {key: x for key, x in nxt.items() if x != 0}
        coeffs.append(state.get((target, k), 0))
    return EgfSeq(coeffs)
