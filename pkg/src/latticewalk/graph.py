"""Weighted multigraphs, weight matrices and finite windows of the lattices.

Vertices carry integer-tuple labels; their list order is the canonical
linear order used by the power constructions.  Undirected edges are stored
once and expanded into two arcs only when a matrix or an adjacency list is
built.  Loops are always directed.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, NamedTuple, Sequence

from .algebra import A, B, Poly, RingElem

Label = tuple[int, ...]


class GraphError(ValueError):
    """Structurally invalid graph."""


class VertexNotFoundError(KeyError):
    pass


class UnsupportedKindError(ValueError):
    pass


class GraphFormatError(ValueError):
    """Malformed graph JSON; the message names the offending field."""


class Edge(NamedTuple):
    tail: int
    head: int
    directed: bool
    weight: RingElem = 1


def as_label(v) -> Label:
    if isinstance(v, int):
        return (v,)
    return tuple(int(x) for x in v)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    vertices: tuple[Label, ...]
    edges: tuple[Edge, ...] = ()
    bipartition: tuple[int, ...] | None = None
    window: "LatticeWindow | None" = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(as_label(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise GraphError("vertex labels must be unique")
        for e in self.edges:
            if not (0 <= e.tail < n and 0 <= e.head < n):
                raise GraphError(f"edge {e} refers to a missing vertex")
            if e.tail == e.head and not e.directed:
                raise GraphError("loops must be directed")
        if self.bipartition is not None:
            bp = tuple(self.bipartition)
            object.__setattr__(self, "bipartition", bp)
            if len(bp) != n or any(p not in (0, 1) for p in bp):
                raise GraphError("bipartition needs one parity in {0,1} per vertex")
            for e in self.edges:
                if bp[e.tail] == bp[e.head]:
                    raise GraphError(f"edge {e} does not cross the bipartition")

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple], **kw) -> "WeightedGraph":
        """Build from vertex labels and (tail_label, head_label, directed[, weight]) tuples."""
        verts = [as_label(v) for v in vertices]
        idx = {v: i for i, v in enumerate(verts)}
        es = []
        for e in edges:
            t, h, d = e[0], e[1], e[2]
            w = e[3] if len(e) > 3 else 1
            es.append(Edge(idx[as_label(t)], idx[as_label(h)], bool(d), w))
        return cls(tuple(verts), tuple(es), **kw)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[Label, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def vertex_index(self, v) -> int:
        try:
            return self.index[as_label(v)]
        except KeyError:
            raise VertexNotFoundError(f"vertex {v!r} is not in the graph") from None

    @cached_property
    def out_arcs(self) -> tuple[tuple[tuple[int, RingElem], ...], ...]:
        """Per vertex, the (head, weight) pairs of all edges leaving it."""
        out: list[list[tuple[int, RingElem]]] = [[] for _ in self.vertices]
        for e in self.edges:
            out[e.tail].append((e.head, e.weight))
            if not e.directed:
                out[e.head].append((e.tail, e.weight))
        return tuple(tuple(o) for o in out)

    @cached_property
    def in_arcs(self) -> tuple[tuple[tuple[int, RingElem], ...], ...]:
        inc: list[list[tuple[int, RingElem]]] = [[] for _ in self.vertices]
        for u, arcs in enumerate(self.out_arcs):
            for v, w in arcs:
                inc[v].append((u, w))
        return tuple(tuple(i) for i in inc)

    def is_directed(self) -> bool:
        return all(e.directed for e in self.edges)

    def ball(self, source: int, radius: int, reverse: bool = False) -> set[int]:
        """Vertices reachable from ``source`` along at most ``radius`` arcs."""
        arcs = self.in_arcs if reverse else self.out_arcs
        seen = {source}
        frontier = [source]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for v, _w in arcs[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return seen


class WeightMatrix:
    """Sparse square matrix over the ring of weights; zero entries are not stored."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[dict[int, RingElem]]):
        self._rows = tuple({j: w for j, w in r.items() if w != 0} for r in rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[RingElem]]) -> "WeightMatrix":
        return cls([{j: w for j, w in enumerate(r)} for r in dense])

    @property
    def size(self) -> int:
        return len(self._rows)

    def row(self, i: int) -> dict[int, RingElem]:
        return self._rows[i]

    def __getitem__(self, ij) -> RingElem:
        i, j = ij
        return self._rows[i].get(j, 0)

    def to_dense(self) -> list[list[RingElem]]:
        n = self.size
        return [[r.get(j, 0) for j in range(n)] for r in self._rows]

    def transpose(self) -> "WeightMatrix":
        cols: list[dict[int, RingElem]] = [{} for _ in self._rows]
        for i, r in enumerate(self._rows):
            for j, w in r.items():
                cols[j][i] = w
        return WeightMatrix(cols)

    def row_sums(self) -> list[RingElem]:
        return [sum(r.values(), 0) for r in self._rows]

    def col_sums(self) -> list[RingElem]:
        return self.transpose().row_sums()

    def __eq__(self, other):
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __repr__(self):
        return f"WeightMatrix({self.to_dense()!r})"


def weight_matrix(G: WeightedGraph) -> WeightMatrix:
    rows: list[dict[int, RingElem]] = [{} for _ in G.vertices]
    for u, arcs in enumerate(G.out_arcs):
        r = rows[u]
        for v, w in arcs:
            r[v] = r.get(v, 0) + w
    return WeightMatrix(rows)


def arc_expand(G: WeightedGraph) -> WeightedGraph:
    """Replace each undirected edge by a pair of opposite arcs of the same weight."""
    es = []
    for e in G.edges:
        es.append(Edge(e.tail, e.head, True, e.weight))
        if not e.directed:
            es.append(Edge(e.head, e.tail, True, e.weight))
    return WeightedGraph(G.vertices, tuple(es), G.bipartition, G.window)


def reverse(G: WeightedGraph) -> WeightedGraph:
    """Flip every arc; W(reverse(G)) is the transpose of W(G)."""
    es = tuple(Edge(e.head, e.tail, e.directed, e.weight) for e in G.edges)
    return WeightedGraph(G.vertices, es, G.bipartition, G.window)


def forget_direction(G: WeightedGraph) -> WeightedGraph:
    """|G|: every non-loop edge becomes undirected."""
    es = tuple(Edge(e.tail, e.head, e.tail == e.head, e.weight) for e in G.edges)
    return WeightedGraph(G.vertices, es, G.bipartition, G.window)


def _undirected_neighbours(G: WeightedGraph) -> list[set[int]]:
    nb: list[set[int]] = [set() for _ in G.vertices]
    for e in G.edges:
        nb[e.tail].add(e.head)
        nb[e.head].add(e.tail)
    return nb


def is_connected(G: WeightedGraph) -> bool:
    if len(G) <= 1:
        return True
    nb = _undirected_neighbours(G)
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nb[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(G)


def compute_bipartition(G: WeightedGraph) -> tuple[int, ...] | None:
    """A 2-colouring with every edge crossing, or None.

    Each component is coloured from its lowest-index vertex, which gets 0.
    """
    if any(e.tail == e.head for e in G.edges):
        return None
    nb = _undirected_neighbours(G)
    colour: list[int | None] = [None] * len(G)
    for start in range(len(G)):
        if colour[start] is not None:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in nb[u]:
                if colour[v] is None:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return tuple(colour)  # type: ignore[arg-type]


def induced_subgraph(G: WeightedGraph, keep: Iterable[int]) -> WeightedGraph:
    """Complete subgraph on the given vertex indices (canonical order kept)."""
    kept = sorted(set(keep))
    new = {old: i for i, old in enumerate(kept)}
    es = tuple(
        Edge(new[e.tail], new[e.head], e.directed, e.weight)
        for e in G.edges
        if e.tail in new and e.head in new
    )
    bp = None if G.bipartition is None else tuple(G.bipartition[i] for i in kept)
    return WeightedGraph(tuple(G.vertices[i] for i in kept), es, bp)


def relabel(G: WeightedGraph, fn: Callable[[Label], Label]) -> WeightedGraph:
    """Apply ``fn`` to every label and re-sort the vertices lexicographically."""
    labels = [as_label(fn(v)) for v in G.vertices]
    order = sorted(range(len(G)), key=lambda i: labels[i])
    pos = {old: new for new, old in enumerate(order)}
    es = tuple(Edge(pos[e.tail], pos[e.head], e.directed, e.weight) for e in G.edges)
    return WeightedGraph(tuple(labels[i] for i in order), es)


# ---------------------------------------------------------------------------
# lattice windows
# ---------------------------------------------------------------------------

_KIND_ALIASES = {
    "R": "R", "R(a,b)": "Rab", "Rab": "Rab",
    "P": "P", "P(a,b)": "Pab", "Pab": "Pab",
    "K1": "K1", "K1(m)": "K1",
    "R2": "R2", "R^2": "R2",
    "RxP": "RxP", "RP": "RxP",
    "C": "C", "cycle": "C",
}

_DIMS = {"R": 1, "Rab": 1, "P": 1, "Pab": 1, "K1": 1, "R2": 2, "RxP": 2, "C": 1}


@dataclass(frozen=True)
class LatticeWindow:
    """Ball of ``radius`` around ``center`` in one of the infinite lattices.

    ``m`` is the loop weight of K1(m); ``q`` the length of the cycle C_q.
    """
    kind: str
    center: Label = (0,)
    radius: int = 0
    m: RingElem = 1
    q: int | None = None

    def __post_init__(self):
        kind = _KIND_ALIASES.get(self.kind)
        if kind is None:
            raise UnsupportedKindError(f"unknown lattice kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        c = as_label(self.center)
        if len(c) == 1 and _DIMS[kind] == 2:
            c = (c[0], 0)
        if len(c) != _DIMS[kind]:
            raise ValueError(f"center {c} has wrong dimension for {kind}")
        if kind == "C":
            if not self.q or self.q < 1:
                raise ValueError("cycle window needs q >= 1")
            c = (c[0] % self.q,)
        if kind == "K1":
            c = (0,)
        if kind in ("P", "Pab") and c[0] < 0 or kind == "RxP" and c[1] < 0:
            raise ValueError("P coordinates must be nonnegative")
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        object.__setattr__(self, "center", c)

    def covers_all(self) -> bool:
        if self.kind == "K1":
            return True
        if self.kind == "C":
            return 2 * self.radius + 1 >= self.q
        return False

    def distance(self, v: Label) -> int:
        c = self.center
        if self.kind == "K1":
            return 0
        if self.kind == "C":
            d = (v[0] - c[0]) % self.q
            return min(d, self.q - d)
        return sum(abs(x - y) for x, y in zip(v, c))

    def exact_order(self, v: Label) -> float:
        """Largest walk length from ``v`` that cannot feel the window boundary."""
        if self.covers_all():
            return float("inf")
        return self.radius - self.distance(v)

    def interior(self, G: WeightedGraph) -> list[int]:
        """Indices of vertices whose whole lattice neighbourhood lies in the window."""
        return [i for i, v in enumerate(G.vertices) if self.exact_order(v) >= 1]


def _coordinate_parity(G: WeightedGraph) -> WeightedGraph:
    bp = tuple(sum(v) % 2 for v in G.vertices)
    return WeightedGraph(G.vertices, G.edges, bp, G.window)


def materialize_lattice(spec: LatticeWindow) -> WeightedGraph:
    kind, r = spec.kind, spec.radius
    if kind in ("R", "Rab", "P", "Pab"):
        c = spec.center[0]
        lo = c - r if kind in ("R", "Rab") else max(0, c - r)
        xs = list(range(lo, c + r + 1))
        if kind in ("R", "P"):
            es = [((x,), (x + 1,), False, 1) for x in xs[:-1]]
        else:
            es = []
            for x in xs[:-1]:
                es.append(((x,), (x + 1,), True, A))
                es.append(((x + 1,), (x,), True, B))
        return _coordinate_parity(WeightedGraph.from_edges(xs, es, window=spec))
    if kind == "K1":
        return WeightedGraph(((0,),), (Edge(0, 0, True, spec.m),), window=spec)
    if kind in ("R2", "RxP"):
        cx, cy = spec.center
        verts = sorted(
            (x, y)
            for x in range(cx - r, cx + r + 1)
            for y in range(cy - r, cy + r + 1)
            if abs(x - cx) + abs(y - cy) <= r and (kind == "R2" or y >= 0)
        )
        vs = set(verts)
        es = []
        for x, y in verts:
            for nb in ((x + 1, y), (x, y + 1)):
                if nb in vs:
                    es.append(((x, y), nb, False, 1))
        return _coordinate_parity(WeightedGraph.from_edges(verts, es, window=spec))
    if kind == "C":
        q, c = spec.q, spec.center[0]
        if spec.covers_all():
            if q == 1:
                return WeightedGraph(((0,),), (Edge(0, 0, True, 1), Edge(0, 0, True, 1)), window=spec)
            es = [(x, (x + 1) % q, False, 1) for x in range(q)]
            return WeightedGraph.from_edges(range(q), es, window=spec)
        xs = [c + d for d in range(-r, r + 1)]
        verts = sorted(x % q for x in xs)
        es = [(x % q, (x + 1) % q, False, 1) for x in xs[:-1]]
        return WeightedGraph.from_edges(verts, es, window=spec)
    raise UnsupportedKindError(kind)  # pragma: no cover


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def weight_to_json(w: RingElem) -> Any:
    if isinstance(w, Poly):
        return [{"a": m["a"], "b": m["b"], "c": int(m["c"])} for m in w.to_monomials()]
    return w


def _weight_from_json(obj: Any, where: str) -> RingElem:
    if isinstance(obj, bool):
        raise GraphFormatError(f"{where}: weight must be an integer or a monomial list")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj)
        except ValueError:
            raise GraphFormatError(f"{where}: cannot parse weight {obj!r}") from None
    if isinstance(obj, dict):
        obj = [obj]
    if isinstance(obj, list):
        for k, m in enumerate(obj):
            if not isinstance(m, dict) or not set(m) <= {"a", "b", "c"}:
                raise GraphFormatError(f"{where}[{k}]: monomial must be an object with keys a, b, c")
        try:
            return Poly.from_monomials(obj)
        except (TypeError, ValueError) as exc:
            raise GraphFormatError(f"{where}: {exc}") from None
    raise GraphFormatError(f"{where}: weight must be an integer or a monomial list")


def graph_from_json(obj: Any) -> WeightedGraph:
    if not isinstance(obj, dict):
        raise GraphFormatError("graph: top level must be an object")
    verts = obj.get("vertices")
    if not isinstance(verts, list):
        raise GraphFormatError("vertices: missing or not a list")
    labels = []
    for i, v in enumerate(verts):
        if isinstance(v, int) and not isinstance(v, bool):
            labels.append((v,))
        elif isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            labels.append(tuple(v))
        else:
            raise GraphFormatError(f"vertices[{i}]: label must be a list of integers")
    edges = []
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFormatError("edges: not a list")
    for k, e in enumerate(raw_edges):
        where = f"edges[{k}]"
        if not isinstance(e, dict):
            raise GraphFormatError(f"{where}: must be an object")
        for key in ("tail", "head"):
            x = e.get(key)
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(labels):
                raise GraphFormatError(f"{where}.{key}: must be a vertex index in [0, {len(labels)})")
        directed = e.get("directed", False)
        if not isinstance(directed, bool):
            raise GraphFormatError(f"{where}.directed: must be a boolean")
        if e["tail"] == e["head"]:
            directed = True
        w = _weight_from_json(e.get("weight", 1), f"{where}.weight")
        edges.append(Edge(e["tail"], e["head"], directed, w))
    bp = obj.get("bipartition")
    try:
        return WeightedGraph(tuple(labels), tuple(edges), None if bp is None else tuple(bp))
    except GraphError as exc:
        raise GraphFormatError(f"graph: {exc}") from None


def load_graph(text: str) -> WeightedGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph_from_json(obj)


def graph_to_json(G: WeightedGraph) -> dict:
    out: dict[str, Any] = {
        "vertices": [list(v) for v in G.vertices],
        "edges": [
            {"tail": e.tail, "head": e.head, "directed": e.directed, "weight": weight_to_json(e.weight)}
            for e in G.edges
        ],
    }
    if G.bipartition is not None:
        out["bipartition"] = list(G.bipartition)
    return out
