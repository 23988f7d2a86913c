"""Command-line interface.

Exit status: 0 on success, 2 on usage or input errors, 1 when a
verification or identity check fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from typing import Any, Sequence

from .algebra import EgfSeq, Poly, egf_hadamard, egf_mul
from .closed_forms import (
    bessel_coeffs,
    bessel_P_coeffs,
    check_identity,
    closed_composite_R,
    closed_composite_R_ab,
    determinant,
    determinant_egf,
    per_length,
    permanent,
    permanent_egf,
    wave_graph_count,
)
from .constructions import (
    biproduct,
    cartesian_product,
    exterior_bipower,
    exterior_power,
    parity_product,
    symmetric_bipower,
    symmetric_power,
)
from .generators import random_graph
from .graph import GraphError, LatticeWindow, WeightedGraph, load_graph, materialize_lattice
from .groups import (
    AbelianGroup,
    CayleySpec,
    add_uniform_loops,
    cayley_counts,
    cayley_from_json,
    quotient_counts,
)
from .walks import count_composite_walks, count_walks, count_walks_oracle, egf_matrix, walk_distribution

LATTICES = ("R", "P", "Rab", "Pab", "R2", "RxP", "K1", "C")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- output

def coeff(x) -> Any:
    """Decimal string for integers, sorted monomial list for polynomials."""
    if isinstance(x, Poly):
        return x.to_monomials()
    return str(x)


def seq(s: EgfSeq) -> list:
    return [coeff(x) for x in s]


def _plain_value(v: Any) -> str:
    if isinstance(v, list) and v and isinstance(v[0], dict) and set(v[0]) == {"a", "b", "c"}:
        return str(Poly.from_monomials(v))
    if isinstance(v, list):
        return " ".join(_plain_value(x) for x in v)
    if isinstance(v, (dict,)):
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "null" if v is None else str(v)


def render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload)
    if fmt == "plain":
        if isinstance(payload, dict):
            return "\n".join(f"{k}: {_plain_value(v)}" for k, v in payload.items())
        return _plain_value(payload)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, list):
        w.writerow(["n", "value"])
        for n, v in enumerate(payload):
            w.writerow([n, _plain_value(v)])
    else:
        w.writerow(["key", "value"])
        for k, v in payload.items():
            w.writerow([k, _plain_value(v)])
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------- parsing

def parse_label(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse vertex {text!r}; expected comma-separated integers") from None


def parse_labels(text: str) -> list[tuple[int, ...]]:
    return [parse_label(part) for part in text.split(";")]


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None


def _read_graph(path: str) -> WeightedGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return load_graph(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _window(args, kind: str, center, radius: int) -> WeightedGraph:
    return materialize_lattice(LatticeWindow(kind, center, radius, m=args.m, q=args.q))


def _source_graph(args, center, reach: int, kind: str | None = None, path: str | None = None) -> WeightedGraph:
    """A graph file, or a lattice window around ``center`` large enough for ``reach`` steps."""
    kind = kind if kind is not None else getattr(args, "lattice", None)
    path = path if path is not None else getattr(args, "graph", None)
    if path:
        return _read_graph(path)
    if not kind:
        raise UsageError("give either --lattice or --graph")
    return _window(args, kind, center, reach)


def _reach(center, labels, order: int) -> int:
    c = tuple(center)
    far = max((sum(abs(x - y) for x, y in zip(v, c)) for v in labels), default=0)
    return max(order, far)


# ---------------------------------------------------------------- commands

def cmd_count(args) -> tuple[Any, bool]:
    src, dst = parse_label(args.source), parse_label(args.target)
    G = _source_graph(args, src, _reach(src, [dst], args.order))
    if G.window is not None:
        src, dst = G.window.center, _normalise(G, dst)
        if dst not in G.index:
            return seq(EgfSeq.zero(args.order)), True
    counts = count_walks(G, src, dst, args.order)
    if not args.verify:
        return seq(counts), True
    oracle = count_walks_oracle(G, src, dst, args.order)
    return {"counts": seq(counts), "oracle": seq(oracle), "equal": counts == oracle}, counts == oracle


def _normalise(G: WeightedGraph, label):
    w = G.window
    if w.kind == "C":
        return (label[0] % w.q,)
    if w.kind == "K1":
        return (0,)
    return label


def cmd_composite(args) -> tuple[Any, bool]:
    if args.increments is not None:
        incs = parse_ints(args.increments)
        points, acc = [(0,)], 0
        for d in incs:
            acc += d
            points.append((acc,))
    elif args.waypoints is not None:
        incs = None
        points = parse_labels(args.waypoints)
    else:
        raise UsageError("give --waypoints or --increments")
    if len(points) < 3:
        raise UsageError("a composite walk needs at least three waypoints (two increments)")
    G = _source_graph(args, points[0], _reach(points[0], points, args.order))
    counts = count_composite_walks(G, points, args.order)
    if not args.verify:
        return seq(counts), True
    if incs is None or args.graph or args.lattice not in ("R", "Rab"):
        raise UsageError("--verify needs --increments on --lattice R or Rab")
    closed = closed_composite_R if args.lattice == "R" else closed_composite_R_ab
    expected = EgfSeq(closed(n, incs) for n in range(args.order + 1))
    ok = expected == counts
    return {"counts": seq(counts), "closed_form": seq(expected), "equal": ok}, ok


def _cayley_spec(args) -> CayleySpec:
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                obj = json.load(fh)
        except OSError as exc:
            raise UsageError(f"{args.spec}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.spec}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        try:
            return cayley_from_json(obj)
        except GraphError as exc:
            raise UsageError(f"{args.spec}: {exc}") from None
    tors = parse_ints(args.torsion) if args.torsion else []
    grp = AbelianGroup(args.free_rank, tuple(tors))
    if not args.gen:
        raise UsageError("give --spec or at least one --gen")
    gens = [(tuple(parse_ints(g)), 1) for g in args.gen]
    return CayleySpec(grp, tuple(gens))


def cmd_cayley(args) -> tuple[Any, bool]:
    spec = _cayley_spec(args)
    g = tuple(parse_ints(args.element))
    if len(g) != spec.group.dim:
        raise UsageError(f"element needs {spec.group.dim} coordinates")
    if args.quotient:
        rels = [tuple(parse_ints(r)) for r in args.quotient.split(";")]
        direct = cayley_counts(spec.quotient(rels), g, args.order)
        lifted = quotient_counts(spec, rels, g, args.order)
        ok = direct == lifted
        return {"quotient": seq(direct), "fiber_sum": seq(lifted), "equal": ok}, ok
    return seq(cayley_counts(spec, g, args.order)), True


def cmd_product_count(args) -> tuple[Any, bool]:
    src, dst = parse_labels(args.source), parse_labels(args.target)
    if len(src) != 2 or len(dst) != 2:
        raise UsageError("--from and --to take two vertices separated by ';'")
    graphs = []
    for side, kind, path in ((0, args.left, args.left_graph), (1, args.right, args.right_graph)):
        graphs.append(_source_graph(args, src[side], _reach(src[side], [dst[side]], args.order), kind, path))
    G1, G2 = graphs
    try:
        c1 = count_walks(G1, src[0], dst[0], args.order)
        c2 = count_walks(G2, src[1], dst[1], args.order)
    except KeyError as exc:
        raise UsageError(f"vertex not in graph: {exc}") from None
    if args.product == "cartesian":
        P, predicted = cartesian_product(G1, G2), egf_mul(c1, c2)
    elif args.product == "biproduct":
        P, predicted = biproduct(G1, G2), egf_hadamard(c1, c2)
    else:
        P = parity_product(G1, G2, 0 if args.product == "even" else 1)
        predicted = egf_hadamard(c1, c2)
    u, v = src[0] + src[1], dst[0] + dst[1]
    if u not in P.index or v not in P.index:
        raise UsageError("the chosen vertices do not lie in this product")
    direct = count_walks(P, u, v, args.order)
    ok = direct == predicted
    return {"product": seq(direct), "factorized": seq(predicted), "equal": ok}, ok


def _multiplicity_factor(labels) -> int:
    out = 1
    for lab in set(labels):
        out *= math.factorial(labels.count(lab))
    return out


def cmd_power_count(args) -> tuple[Any, bool]:
    src, dst = parse_labels(args.source), parse_labels(args.target)
    n = len(src)
    if len(dst) != n:
        raise UsageError("--from and --to need the same number of vertices")
    G = _source_graph(args, src[0], _reach(src[0], src + dst, args.order) + n)
    try:
        si = sorted(G.vertex_index(v) for v in src)
        ti = sorted(G.vertex_index(v) for v in dst)
    except KeyError as exc:
        raise UsageError(f"vertex not in graph: {exc}") from None
    strict = args.power in ("ext", "ext2")
    if strict and (len(set(si)) < n or len(set(ti)) < n):
        raise UsageError("exterior powers need distinct vertices")
    build = {"sym": symmetric_power, "ext": exterior_power, "sym2": symmetric_bipower, "ext2": exterior_bipower}
    H = build[args.power](G, n)
    flat = lambda idx: tuple(x for i in idx for x in G.vertices[i])  # noqa: E731
    direct = count_walks(H, flat(si), flat(ti), args.order)
    involved = sorted({G.vertices[i] for i in si + ti})
    full = egf_matrix(G, args.order, involved)
    pos = {lab: k for k, lab in enumerate(involved)}
    block = full.block([pos[G.vertices[i]] for i in si], [pos[G.vertices[i]] for i in ti])
    if args.power == "sym":
        expansion = permanent_egf(block)
    elif args.power == "ext":
        expansion = determinant_egf(block)
    elif args.power == "sym2":
        expansion = per_length(block, permanent)
    else:
        expansion = per_length(block, determinant)
    factor = 1 if strict else _multiplicity_factor([G.vertices[i] for i in ti])
    ok = direct.scale(factor) == expansion
    return {"power": seq(direct), "multiplicity": str(factor), "expansion": seq(expansion), "equal": ok}, ok


def cmd_covering_check(args) -> tuple[Any, bool]:
    if args.mode == "quotient":
        q = args.q or 2
        if q < 1:
            raise UsageError("--q must be >= 1")
        g = parse_label(args.element)
        line = CayleySpec.line()
        direct = cayley_counts(line.quotient([(q,)]), g, args.order)
        lifted = quotient_counts(line, [(q,)], g, args.order)
        cyc = materialize_lattice(LatticeWindow("C", (0,), args.order, q=q))
        oracle = count_walks(cyc, (0,), (g[0] % q,), args.order)
        ok = direct == lifted == oracle
        return {"quotient": seq(direct), "fiber_sum": seq(lifted), "cycle_graph": seq(oracle), "equal": ok}, ok
    if args.mode == "semiregular":
        kind = args.lattice or "R"
        G = _window(args, kind, (0,), args.order)
        totals = []
        for d in walk_distribution(G, G.window.center, args.order):
            acc = 0
            for x in d.values():
                acc = acc + x
            totals.append(acc)
        m = {"R": 2, "K1": args.m, "C": 2}.get(G.window.kind)
        if m is None:
            raise UsageError("semiregular mode supports R, K1 and C")
        expected = EgfSeq(m ** n for n in range(args.order + 1))
        got = EgfSeq(totals)
        ok = got == expected
        return {"row_sums": seq(got), "expected": seq(expected), "equal": ok}, ok
    rng = random.Random(args.seed)
    failures = 0
    for _ in range(args.trials):
        G = random_graph(rng, rng.randint(1, 5), rng.randint(0, 8))
        H = add_uniform_loops(G, args.m)
        u, v = rng.randrange(len(G)), rng.randrange(len(G))
        lhs = count_walks(H, G.vertices[u], G.vertices[v], args.order)
        rhs = egf_mul(EgfSeq.exp(args.m, args.order), count_walks(G, G.vertices[u], G.vertices[v], args.order))
        failures += lhs != rhs
    return {"trials": str(args.trials), "failures": str(failures), "equal": failures == 0}, failures == 0


def cmd_identity(args) -> tuple[Any, bool]:
    if args.name == "eq38":
        ranges = {"k_max": args.k_max, "ab_max": args.ab_max}
    else:
        ranges = {"n_max": args.n_max}
    report = check_identity(args.name, **ranges)
    return report, report["pass"]


def cmd_wave(args) -> tuple[Any, bool]:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    formula, det = wave_graph_count(args.k)
    return {"formula": coeff(formula), "determinant_route": coeff(det), "equal": formula == det}, formula == det


def cmd_bessel(args) -> tuple[Any, bool]:
    if args.m < 0:
        raise UsageError("--m must be >= 0")
    fn = bessel_P_coeffs if args.half_line else bessel_coeffs
    return seq(fn(args.m, args.order)), True


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser, order_default: int = 8) -> None:
    p.add_argument("--order", type=int, default=order_default, help="largest walk length N (default %(default)s)")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work runs on one thread")


def _graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--lattice", choices=LATTICES, help="infinite lattice, cut to an exact window")
    src.add_argument("--graph", metavar="FILE", help="graph in the JSON graph format")
    p.add_argument("--m", type=int, default=1, help="loop weight of K1")
    p.add_argument("--q", type=int, default=None, help="length of the cycle C")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticewalk", description="Exact walk counts on weighted graphs, lattices and their products."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "count",
        help="walk counts c_0..c_N between two vertices",
        description="Count walks of each length 0..N from one vertex to another, as powers of the weight matrix. "
        "Lattices are cut to a window in which every count is exact.",
    )
    _common(p)
    _graph_source(p)
    p.add_argument("--from", dest="source", required=True, help="vertex, e.g. 0 or 1,2")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--verify", action="store_true", help="cross-check against depth-first enumeration")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser(
        "composite",
        help="walks visiting a list of vertices in order",
        description="Count walks that pass through the given waypoints in order. With --increments on the line R "
        "the waypoints are 0, m1, m1+m2, ... and --verify compares with the binomial closed form C(n, (n-m)/2), "
        "m = |m1| + ... + |mk|.",
    )
    _common(p)
    _graph_source(p)
    p.add_argument("--waypoints", help="vertices separated by ';'")
    p.add_argument("--increments", help="comma-separated steps m1,...,mk on the line")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_composite)

    p = sub.add_parser(
        "cayley",
        help="walk counts on a Cayley graph of an abelian group",
        description="Coefficient of an element in the powers of the generator sum in the group algebra. "
        "--quotient adds relations and checks the fiber-sum identity for the quotient covering.",
    )
    _common(p)
    p.add_argument("--spec", metavar="FILE", help="Cayley data as JSON")
    p.add_argument("--free-rank", type=int, default=1)
    p.add_argument("--torsion", help="comma-separated torsion orders")
    p.add_argument("--gen", action="append", help="generator (weight 1), repeatable")
    p.add_argument("--element", default="0", help="target element, comma-separated")
    p.add_argument("--quotient", help="relation vectors separated by ';'")
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser(
        "product-count",
        help="walk counts on a Cartesian, bi-, even or odd product",
        description="Materialize a product of two graphs and compare its walk counts with the factorized form: "
        "the EGF product for the Cartesian product, the coefficient-wise product for the biproduct and for "
        "the even and odd products of bipartite graphs.",
    )
    _common(p)
    p.add_argument("--product", choices=("cartesian", "biproduct", "even", "odd"), default="cartesian")
    p.add_argument("--left", choices=LATTICES)
    p.add_argument("--right", choices=LATTICES)
    p.add_argument("--left-graph", metavar="FILE")
    p.add_argument("--right-graph", metavar="FILE")
    p.add_argument("--from", dest="source", required=True, help="two vertices separated by ';'")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--q", type=int, default=None)
    p.set_defaults(func=cmd_product_count)

    p = sub.add_parser(
        "power-count",
        help="walk counts on symmetric and exterior powers and bipowers",
        description="Count walks on a materialized symmetric or exterior power (or bipower) and compare with the "
        "permanent or determinant of the block of walk-count EGFs; bipowers use per-length coefficient matrices. "
        "Symmetric counts carry a factor prod(mult!) over repeated target vertices.",
    )
    _common(p, order_default=6)
    _graph_source(p)
    p.add_argument("--power", choices=("sym", "ext", "sym2", "ext2"), default="sym")
    p.add_argument("--from", dest="source", required=True, help="n vertices separated by ';'")
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_power_count)

    p = sub.add_parser(
        "covering-check",
        help="covering and semiregularity laws",
        description="quotient: Z -> Z/q fiber sums against the cycle graph; semiregular: total walk mass m^n "
        "from a vertex of R, C or K1(m); loops: adding loops of weight m multiplies the EGF by e^(mt), "
        "on random graphs.",
    )
    _common(p)
    p.add_argument("--mode", choices=("quotient", "semiregular", "loops"), default="quotient")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--lattice", choices=("R", "K1", "C"))
    p.add_argument("--element", default="0")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_covering_check)

    p = sub.add_parser(
        "identity",
        help="check a binomial identity over a grid",
        description="Evaluate both sides of a binomial identity exactly over a finite grid and report the first "
        "counterexample: eq38 (sum of multinomials equals a product of binomials), eqbin (ballot difference), "
        "corp3 (weighted binomial sums), eqRP5 and eqRP6 (products of binomials).",
    )
    _common(p)
    p.add_argument("--name", required=True, choices=("eq38", "eqbin", "corp3", "eqRP5", "eqRP6"))
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--ab-max", type=int, default=4)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser(
        "wave",
        help="plane symplectic wave graphs on 2k vertices",
        description="Count plane symplectic wave graphs on 2k vertices by the factorial formula and by the "
        "determinant of the walk-count block of the half-line on vertices 0 and 1.",
    )
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_wave)

    p = sub.add_parser(
        "bessel",
        help="integer coefficients of I_m(2t) and (m+1) I_(m+1)(2t)/t",
        description="Walk-count coefficient sequences of the modified Bessel series: I_m(2t) on the line, or "
        "(m+1) I_(m+1)(2t)/t on the half-line with --half-line.",
    )
    _common(p)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--half-line", action="store_true")
    p.set_defaults(func=cmd_bessel)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order < 0:
        parser.error("--order must be >= 0")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        payload, ok = args.func(args)
    except UsageError as exc:
        print(f"latticewalk {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"latticewalk {args.command}: {exc}", file=sys.stderr)
        return 2
    print(render(payload, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
