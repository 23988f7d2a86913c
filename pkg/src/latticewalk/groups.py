"""Walks on Cayley graphs of finitely generated abelian groups, and coverings.

A group is Z^d modulo a lattice of relations kept in integer echelon form,
which gives every coset a unique reduced representative.  Free rank and
torsion orders are the common special case; quotients just add relations.
Walk counts are coefficients of convolution powers of the generator
element in the group algebra.
"""
from __future__ import annotations

import math
from collections import defaultdict
from itertools import product
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import EgfSeq, RingElem
from .graph import Edge, GraphFormatError, WeightedGraph, _weight_from_json, as_label, reverse, weight_matrix
from .walks import walk_distribution

Element = tuple[int, ...]


class SurjectivityError(ValueError):
    pass


class SemicoveringPreconditionError(ValueError):
    pass


def _echelon(rows: Iterable[Sequence[int]], dim: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Integer row echelon form as (pivot column, row) pairs with positive pivots."""
    work = [list(r) for r in rows if any(r)]
    out = []
    for col in range(dim):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        work = [r for r in work if r[col] == 0]
        # Euclid on the column until a single row is left with a nonzero entry
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            rest = []
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col] != 0:
                    rest.append(r)
                elif any(r):
                    work.append(r)
            live = [piv] + rest
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append((col, tuple(piv)))
    return tuple(out)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/q_1 + ... + Z/q_k, optionally modulo extra relations."""
    free_rank: int = 1
    torsion: tuple[int, ...] = ()
    relations: tuple[tuple[int, ...], ...] = ()
    _echelon: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if any(q < 2 for q in self.torsion):
            raise ValueError("torsion orders must be >= 2")
        d = self.dim
        rels = [tuple(r) for r in self.relations]
        if any(len(r) != d for r in rels):
            raise ValueError(f"relations must have length {d}")
        object.__setattr__(self, "relations", tuple(rels))
        tors = []
        for i, q in enumerate(self.torsion):
            r = [0] * d
            r[self.free_rank + i] = q
            tors.append(r)
        object.__setattr__(self, "_echelon", _echelon(tors + [list(r) for r in rels], d))

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_finite(self) -> bool:
        return len(self._echelon) == self.dim

    def order(self) -> int | None:
        if not self.is_finite():
            return None
        return math.prod(row[col] for col, row in self._echelon)

    def reduce(self, x: Sequence[int]) -> Element:
        v = list(x)
        if len(v) != self.dim:
            raise ValueError(f"element {tuple(x)} has wrong length for a rank-{self.dim} group")
        for col, row in self._echelon:
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def zero(self) -> Element:
        return (0,) * self.dim

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def elements(self) -> list[Element]:
        """All reduced elements of a finite group, sorted."""
        if not self.is_finite():
            raise ValueError("group is infinite")
        pivots = dict(self._echelon)
        ranges = [range(pivots[c][c]) for c in range(self.dim)]
        return sorted({self.reduce(p) for p in product(*ranges)})

    def quotient(self, sublattice: Iterable[Sequence[int]]) -> "AbelianGroup":
        return AbelianGroup(self.free_rank, self.torsion, self.relations + tuple(tuple(r) for r in sublattice))


@dataclass(frozen=True)
class CayleySpec:
    """The Cayley graph (Gamma, 0, (w_1)g_1, ..., (w_d)g_d)."""
    group: AbelianGroup
    generators: tuple[tuple[Element, RingElem], ...]

    def __post_init__(self):
        gens = tuple((self.group.reduce(g), w) for g, w in self.generators)
        if not gens:
            raise ValueError("need at least one generator")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def line(cls, a: RingElem = 1, b: RingElem = 1) -> "CayleySpec":
        """Z with +1 of weight a and -1 of weight b (the graph R, or R(a,b))."""
        return cls(AbelianGroup(1), (((1,), a), ((-1,), b)))

    def quotient(self, sublattice: Iterable[Sequence[int]]) -> "CayleySpec":
        return CayleySpec(self.group.quotient(sublattice), self.generators)


def cayley_distribution(spec: CayleySpec, order: int) -> list[dict[Element, RingElem]]:
    """Supports of the powers (sum w_i g_i)^n, n = 0..order."""
    grp = spec.group
    cur: dict[Element, RingElem] = {grp.zero(): 1}
    out = [cur]
    for _ in range(order):
        nxt: dict[Element, RingElem] = defaultdict(int)
        for x, c in cur.items():
            for g, w in spec.generators:
                y = grp.add(x, g)
                nxt[y] = nxt[y] + c * w
        cur = {k: v for k, v in nxt.items() if v != 0}
        out.append(cur)
    return out


def cayley_counts(spec: CayleySpec, g: Sequence[int], order: int) -> EgfSeq:
    """c_n(G, g): coefficient of g in the n-th power of the generator element."""
    key = spec.group.reduce(as_label(g))
    return EgfSeq(d.get(key, 0) for d in cayley_distribution(spec, order))


def quotient_counts(spec: CayleySpec, sublattice: Iterable[Sequence[int]], g: Sequence[int], order: int) -> EgfSeq:
    """Fiber sum of counts on the cover: sum over h in the sublattice of c(G, g + h).

    Only the finitely many fiber elements inside the radius-``order`` ball
    contribute; the rest vanish.
    """
    quot = spec.group.quotient(sublattice)
    key = quot.reduce(as_label(g))
    out = []
    for d in cayley_distribution(spec, order):
        acc: RingElem = 0
        for x, c in d.items():
            if quot.reduce(x) == key:
                acc = acc + c
        out.append(acc)
    return EgfSeq(out)


def direct_sum(s1: CayleySpec, s2: CayleySpec) -> CayleySpec:
    """Cayley data of the Cartesian product: group G1 + G2, generators (g,0) and (0,h)."""
    g1, g2 = s1.group, s2.group
    d1, d2 = g1.dim, g2.dim

    def embed(rows, left):
        return [tuple(r) + (0,) * d2 if left else (0,) * d1 + tuple(r) for r in rows]

    def tors_rows(grp):
        rows = []
        for i, q in enumerate(grp.torsion):
            r = [0] * grp.dim
            r[grp.free_rank + i] = q
            rows.append(tuple(r))
        return rows

    rels = embed(tors_rows(g1) + list(g1.relations), True) + embed(tors_rows(g2) + list(g2.relations), False)
    group = AbelianGroup(d1 + d2, (), tuple(rels))
    gens = [(tuple(g) + (0,) * d2, w) for g, w in s1.generators]
    gens += [((0,) * d1 + tuple(h), w) for h, w in s2.generators]
    return CayleySpec(group, tuple(gens))


def cayley_window(spec: CayleySpec, radius: int) -> WeightedGraph:
    """Finite Cayley graph on the elements reachable from 0 in <= radius steps.

    Walks of length <= radius from 0 are counted exactly on it.  For a finite
    group and a large enough radius this is the whole Cayley graph.
    """
    grp = spec.group
    seen = {grp.zero()}
    frontier = [grp.zero()]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g, _w in spec.generators:
                y = grp.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    verts = sorted(seen)
    idx = {v: i for i, v in enumerate(verts)}
    es = []
    for x in verts:
        for g, w in spec.generators:
            y = grp.add(x, g)
            if y in idx:
                es.append(Edge(idx[x], idx[y], True, w))
    return WeightedGraph(tuple(verts), tuple(es))


# ---------------------------------------------------------------------------
# semicoverings
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VertexMap:
    """A surjective map V(source) -> V(target), stored as target indices."""
    source: WeightedGraph
    target: WeightedGraph
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source):
            raise ValueError("one image per source vertex required")
        if set(self.images) != set(range(len(self.target))):
            raise SurjectivityError("vertex map is not surjective")

    @classmethod
    def build(cls, G1: WeightedGraph, G2: WeightedGraph, pi) -> "VertexMap":
        """From a label->label mapping or a callable on labels."""
        if isinstance(pi, VertexMap):
            return pi
        f: Callable = pi.__getitem__ if isinstance(pi, Mapping) else pi
        return cls(G1, G2, tuple(G2.vertex_index(f(v)) for v in G1.vertices))

    def fiber(self, v: int) -> list[int]:
        return [i for i, x in enumerate(self.images) if x == v]

    def fiber_sizes(self) -> list[int]:
        sizes = [0] * len(self.target)
        for x in self.images:
            sizes[x] += 1
        return sizes


def _fiber_rows_match(pi: VertexMap, W1, W2, rows: Iterable[int]) -> bool:
    for u1 in rows:
        agg: dict[int, RingElem] = defaultdict(int)
        for vj, w in W1.row(u1).items():
            agg[pi.images[vj]] = agg[pi.images[vj]] + w
        agg = {k: x for k, x in agg.items() if x != 0}
        if agg != W2.row(pi.images[u1]):
            return False
    return True


def verify_left_semicovering(pi, G1: WeightedGraph, G2: WeightedGraph, rows: Iterable[int] | None = None) -> bool:
    """W(G2)[pi(u1), v] == sum over v_j in pi^-1(v) of W(G1)[u1, v_j].

    ``rows`` restricts the check to the given source vertices, which is
    all a transfer of walks of bounded length needs.
    """
    vm = VertexMap.build(G1, G2, pi)
    rows = range(len(G1)) if rows is None else rows
    return _fiber_rows_match(vm, weight_matrix(G1), weight_matrix(G2), rows)


def verify_right_semicovering(pi, G1: WeightedGraph, G2: WeightedGraph, rows: Iterable[int] | None = None) -> bool:
    """Mirror image of the left condition, on columns."""
    vm = VertexMap.build(G1, G2, pi)
    rows = range(len(G1)) if rows is None else rows
    return _fiber_rows_match(vm, weight_matrix(G1).transpose(), weight_matrix(G2).transpose(), rows)


def semicovering_transfer(
    pi, G1: WeightedGraph, G2: WeightedGraph, base, other, order: int, side: str = "left"
) -> tuple[EgfSeq, EgfSeq]:
    """Both sides of the fiber-sum identity for a semicovering.

    Left: ``base`` = u1 in G1, ``other`` = v in G2; returns
    (c(G2, pi(u1) -> v), sum over v_j in pi^-1(v) of c(G1, u1 -> v_j)).
    Right: ``base`` = v1 in G1, ``other`` = u in G2; returns
    (c(G2, u -> pi(v1)), sum over u_i in pi^-1(u) of c(G1, u_i -> v1)).
    The semicovering condition is checked on every vertex a walk of
    length < order can reach, and must hold.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    vm = VertexMap.build(G1, G2, pi)
    b = G1.vertex_index(base)
    o = G2.vertex_index(other)
    left = side == "left"
    H1, H2 = (G1, G2) if left else (reverse(G1), reverse(G2))
    local = H1.ball(b, max(order - 1, 0))
    check = verify_left_semicovering if left else verify_right_semicovering
    if not check(vm, G1, G2, rows=sorted(local)):
        raise SemicoveringPreconditionError(f"map is not a {side} semicovering around {base}")
    image = G2.vertices[vm.images[b]]
    direct = [d.get(o, 0) for d in walk_distribution(H2, image, order)]
    fiber = set(vm.fiber(o))
    lifted = []
    for d in walk_distribution(H1, base, order):
        acc: RingElem = 0
        for j, x in d.items():
            if j in fiber:
                acc = acc + x
        lifted.append(acc)
    return EgfSeq(direct), EgfSeq(lifted)


def check_semiregular(G: WeightedGraph, side: str = "left", vertices: Iterable[int] | None = None) -> RingElem | None:
    """Common row sum (left), column sum (right) or both (weak) of W(G), or None.

    For lattice windows only the window interior is inspected by default,
    since boundary rows are truncation artefacts.
    """
    if side not in ("left", "right", "weak"):
        raise ValueError("side must be left, right or weak")
    if vertices is None:
        vertices = G.window.interior(G) if G.window is not None else range(len(G))
    vs = list(vertices)
    if not vs:
        return None
    W = weight_matrix(G)
    sums = []
    if side in ("left", "weak"):
        rs = W.row_sums()
        sums += [rs[i] for i in vs]
    if side in ("right", "weak"):
        cs = W.col_sums()
        sums += [cs[i] for i in vs]
    first = sums[0]
    return first if all(s == first for s in sums) else None


def add_uniform_loops(G: WeightedGraph, m: RingElem) -> WeightedGraph:
    """G with one directed loop of weight m at each vertex."""
    loops = tuple(Edge(i, i, True, m) for i in range(len(G)))
    return WeightedGraph(G.vertices, G.edges + loops, None, G.window)


def cayley_from_json(obj) -> CayleySpec:
    """{"free_rank": r, "torsion": [q, ...], "generators": [{"elem": [...], "weight": w}, ...]}."""
    if not isinstance(obj, dict):
        raise GraphFormatError("cayley spec: top level must be an object")
    r = obj.get("free_rank", 1)
    tors = obj.get("torsion", [])
    gens = obj.get("generators")
    if not isinstance(r, int) or r < 0:
        raise GraphFormatError("free_rank: must be a nonnegative integer")
    if not isinstance(tors, list) or not all(isinstance(q, int) for q in tors):
        raise GraphFormatError("torsion: must be a list of integers")
    if not isinstance(gens, list) or not gens:
        raise GraphFormatError("generators: missing or empty")
    out = []
    for i, g in enumerate(gens):
        where = f"generators[{i}]"
        if not isinstance(g, dict) or not isinstance(g.get("elem"), list):
            raise GraphFormatError(f"{where}.elem: missing or not a list")
        if len(g["elem"]) != r + len(tors):
            raise GraphFormatError(f"{where}.elem: expected {r + len(tors)} coordinates")
        out.append((tuple(g["elem"]), _weight_from_json(g.get("weight", 1), f"{where}.weight")))
    try:
        return CayleySpec(AbelianGroup(r, tuple(tors)), tuple(out))
    except ValueError as exc:
        raise GraphFormatError(f"cayley spec: {exc}") from None
