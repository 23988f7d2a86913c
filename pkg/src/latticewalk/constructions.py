"""Product and power constructions on weighted graphs.

Product vertices are labelled by concatenating constituent labels; power
vertices by concatenating the labels of a sorted index tuple.  All orders
are derived from the constituents' canonical orders, so the Kronecker
index ``i1 * |V2| + i2`` always matches the product's vertex list.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement, product

from .algebra import RingElem
from .graph import (
    Edge,
    GraphError,
    WeightMatrix,
    WeightedGraph,
    arc_expand,
    compute_bipartition,
    induced_subgraph,
)

#: largest n for which bipower edges are enumerated tuple by tuple
BIPOWER_MAX_N = 3


class BipartitenessError(GraphError):
    pass


def _flat(labels) -> tuple[int, ...]:
    return tuple(x for lab in labels for x in lab)


def cartesian_product(G1: WeightedGraph, G2: WeightedGraph) -> WeightedGraph:
    n2 = len(G2)
    verts = tuple(_flat((v1, v2)) for v1 in G1.vertices for v2 in G2.vertices)
    es: list[Edge] = []
    for i1 in range(len(G1)):
        for e in G2.edges:
            es.append(Edge(i1 * n2 + e.tail, i1 * n2 + e.head, e.directed, e.weight))
    for e in G1.edges:
        for i2 in range(n2):
            es.append(Edge(e.tail * n2 + i2, e.head * n2 + i2, e.directed, e.weight))
    return WeightedGraph(verts, tuple(es))


def cartesian_power(G: WeightedGraph, n: int) -> WeightedGraph:
    out = WeightedGraph(((),))
    for _ in range(n):
        out = cartesian_product(out, G)
    return out


def kronecker_sum(W1: WeightMatrix, W2: WeightMatrix) -> WeightMatrix:
    """W1 (x) I + I (x) W2 in vertex-pair lex order."""
    n1, n2 = W1.size, W2.size
    rows: list[dict[int, RingElem]] = []
    for i1 in range(n1):
        for i2 in range(n2):
            r: dict[int, RingElem] = {}
            for j1, w in W1.row(i1).items():
                k = j1 * n2 + i2
                r[k] = r.get(k, 0) + w
            for j2, w in W2.row(i2).items():
                k = i1 * n2 + j2
                r[k] = r.get(k, 0) + w
            rows.append(r)
    return WeightMatrix(rows)


def kronecker_product(W1: WeightMatrix, W2: WeightMatrix) -> WeightMatrix:
    n2 = W2.size
    rows = []
    for i1 in range(W1.size):
        for i2 in range(n2):
            rows.append({
                j1 * n2 + j2: w1 * w2
                for j1, w1 in W1.row(i1).items()
                for j2, w2 in W2.row(i2).items()
            })
    return WeightMatrix(rows)


def biproduct(G1: WeightedGraph, G2: WeightedGraph) -> WeightedGraph:
    """Edges move in both coordinates at once.

    Two undirected edges give the two undirected edges (t1,t2)-(h1,h2) and
    (t1,h2)-(h1,t2).  A pair with a directed member gives arcs; an
    undirected member contributes both of its orientations.
    """
    n2 = len(G2)
    verts = tuple(_flat((v1, v2)) for v1 in G1.vertices for v2 in G2.vertices)
    es: list[Edge] = []
    for e1 in G1.edges:
        for e2 in G2.edges:
            w = e1.weight * e2.weight
            t1, h1, t2, h2 = e1.tail, e1.head, e2.tail, e2.head
            if not e1.directed and not e2.directed:
                es.append(Edge(t1 * n2 + t2, h1 * n2 + h2, False, w))
                es.append(Edge(t1 * n2 + h2, h1 * n2 + t2, False, w))
                continue
            o1 = [(t1, h1)] if e1.directed else [(t1, h1), (h1, t1)]
            o2 = [(t2, h2)] if e2.directed else [(t2, h2), (h2, t2)]
            for (a1, b1) in o1:
                for (a2, b2) in o2:
                    es.append(Edge(a1 * n2 + a2, b1 * n2 + b2, True, w))
    return WeightedGraph(verts, tuple(es))


def _require_bipartition(G: WeightedGraph) -> tuple[int, ...]:
    """The stored bipartition if any (lattice windows use coordinate parity), else a computed one."""
    bp = G.bipartition if G.bipartition is not None else compute_bipartition(G)
    if bp is None:
        raise BipartitenessError("graph is not bipartite")
    return bp


def parity_product(G1: WeightedGraph, G2: WeightedGraph, parity: int) -> WeightedGraph:
    """Even (parity 0) or odd (parity 1) product: the biproduct on vertices of that parity."""
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    bp1, bp2 = _require_bipartition(G1), _require_bipartition(G2)
    n2 = len(G2)
    keep = [
        i1 * n2 + i2
        for i1 in range(len(G1))
        for i2 in range(n2)
        if (bp1[i1] + bp2[i2]) % 2 == parity
    ]
    return induced_subgraph(biproduct(G1, G2), keep)


def _power_vertices(G: WeightedGraph, tuples) -> tuple[tuple, ...]:
    return tuple(_flat(G.vertices[i] for i in t) for t in tuples)


def symmetric_power(G: WeightedGraph, n: int) -> WeightedGraph:
    """S^n G on nondecreasing index tuples; an edge per (position, edge of G)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    tuples = list(combinations_with_replacement(range(len(G)), n))
    pos = {t: k for k, t in enumerate(tuples)}
    es: list[Edge] = []
    for k, t in enumerate(tuples):
        for i in range(n):
            rest = t[:i] + t[i + 1:]
            for v, w in G.out_arcs[t[i]]:
                target = tuple(sorted(rest + (v,)))
                es.append(Edge(k, pos[target], True, w))
    return WeightedGraph(_power_vertices(G, tuples), tuple(es))


def exterior_power(G: WeightedGraph, n: int) -> WeightedGraph:
    """Lambda^n G on strictly increasing tuples; weight (-1)^(j-i) w(e).

    j is the position of the new entry after re-sorting.  A replacement
    that duplicates another entry leaves the vertex set and is dropped.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    tuples = list(combinations(range(len(G)), n))
    pos = {t: k for k, t in enumerate(tuples)}
    es: list[Edge] = []
    for k, t in enumerate(tuples):
        for i in range(n):
            rest = t[:i] + t[i + 1:]
            for v, w in G.out_arcs[t[i]]:
                if v in rest:
                    continue
                target = tuple(sorted(rest + (v,)))
                j = target.index(v)
                es.append(Edge(k, pos[target], True, w if (j - i) % 2 == 0 else -w))
    return WeightedGraph(_power_vertices(G, tuples), tuple(es))


def _parity_filter(G: WeightedGraph, tuples, n: int, parity: int | None):
    if parity is None:
        return tuples
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if n % 2:
        raise ValueError("parity subgraphs of bipowers need even n")
    bp = _require_bipartition(G)
    return [t for t in tuples if sum(bp[i] for i in t) % 2 == parity]


def _sign(perm: tuple[int, ...]) -> int:
    s = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _bipower(G: WeightedGraph, n: int, parity: int | None, strict: bool) -> WeightedGraph:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > BIPOWER_MAX_N:
        raise ValueError(
            f"bipower edge enumeration is limited to n <= {BIPOWER_MAX_N}; "
            "use the per-length permanent/determinant instead"
        )
    D = arc_expand(G)
    gen = combinations if strict else combinations_with_replacement
    tuples = _parity_filter(D, list(gen(range(len(D)), n)), n, parity)
    pos = {t: k for k, t in enumerate(tuples)}
    es: list[Edge] = []
    for k, t in enumerate(tuples):
        for choice in product(*(D.out_arcs[u] for u in t)):
            heads = tuple(v for v, _w in choice)
            if strict and len(set(heads)) < n:
                continue
            target = tuple(sorted(heads))
            w: RingElem = 1
            for _v, x in choice:
                w = w * x
            if strict:
                sigma = tuple(target.index(h) for h in heads)
                w = w * _sign(sigma)
            es.append(Edge(k, pos[target], True, w))
    return WeightedGraph(_power_vertices(D, tuples), tuple(es))


def symmetric_bipower(G: WeightedGraph, n: int, parity: int | None = None) -> WeightedGraph:
    """S^n_2 G: one arc per n-tuple of edges leaving the entries of a vertex.

    The target is the sorted tuple of heads.  ``parity`` selects the even
    or odd subgraph (bipartite G, even n).
    """
    return _bipower(G, n, parity, strict=False)


def exterior_bipower(G: WeightedGraph, n: int, parity: int | None = None) -> WeightedGraph:
    """Lambda^n_2 G: as the symmetric bipower with weight sgn(sigma) * prod w.

    Edge tuples with a repeated head are dropped.
    """
    return _bipower(G, n, parity, strict=True)


def sorting_map(G: WeightedGraph, n: int) -> dict[tuple, tuple]:
    """Vertex map G^n -> S^n G sorting the entries (labels of cartesian_power / symmetric_power)."""
    out = {}
    for t in product(range(len(G)), repeat=n):
        out[_flat(G.vertices[i] for i in t)] = _flat(G.vertices[i] for i in sorted(t))
    return out
