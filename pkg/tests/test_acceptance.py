"""Acceptance suite: eleven exact criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import random
import sys
import time
from itertools import combinations, product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import frobenius_character  # noqa: E402

from latticewalk.algebra import EgfMatrix, EgfSeq, egf_hadamard, egf_mul  # noqa: E402
from latticewalk.characters import class_size, partitions, sn_character  # noqa: E402
from latticewalk.closed_forms import (  # noqa: E402
    check_identity,
    closed_composite_R,
    closed_composite_R_ab,
    closed_P,
    closed_P_ab,
    closed_R,
    closed_R2,
    closed_R_ab,
    closed_RxP,
    closed_RxP_from_axis,
    determinant_egf,
    hadamard_determinant,
    hadamard_permanent,
    immanant_egf,
    permanent_egf,
    wave_determinant_route,
    wave_formula,
)
from latticewalk.constructions import (  # noqa: E402
    biproduct,
    cartesian_product,
    exterior_bipower,
    exterior_power,
    kronecker_sum,
    parity_product,
    symmetric_bipower,
    symmetric_power,
)
from latticewalk.generators import random_bipartite_graph, random_graph  # noqa: E402
from latticewalk.graph import LatticeWindow, materialize_lattice, weight_matrix  # noqa: E402
from latticewalk.groups import CayleySpec, add_uniform_loops, cayley_counts, quotient_counts  # noqa: E402
from latticewalk.walks import count_composite_walks, count_walks, count_walks_oracle, egf_matrix  # noqa: E402

SEED = 20240601
RESULTS: dict[int, tuple[bool, str]] = {}


def window(kind, r, center=(0,), **kw):
    return materialize_lattice(LatticeWindow(kind, center, r, **kw))


def seq(f, N):
    return EgfSeq(f(n) for n in range(N + 1))


# ---------------------------------------------------------------- criteria

def criterion_1():
    """count_walks equals the DFS oracle on >= 200 random graphs."""
    rng = random.Random(SEED + 1)
    t0 = time.perf_counter()
    graphs = pairs = 0
    for g in range(240):
        weights = "poly" if g % 2 else "int"
        G = random_graph(rng, rng.randint(1, 6), rng.randint(0, 9), weights)
        N = rng.randint(0, 6)
        for u, v in product(G.vertices, repeat=2):
            if count_walks(G, u, v, N) != count_walks_oracle(G, u, v, N):
                return False, f"mismatch on graph {g} at {u}->{v}"
            pairs += 1
        graphs += 1
    dt = time.perf_counter() - t0
    return dt < 10, f"{graphs} graphs, {pairs} vertex pairs, {dt:.2f}s (limit 10s)"


def criterion_2():
    """C(G1 x G2) = C(G1) (x) C(G2) and W(G1 x G2) = W1 (+) W2 to order 8."""
    rng = random.Random(SEED + 2)
    N = 8
    for k in range(50):
        weights = "poly" if k % 3 == 0 else "int"
        G1 = random_graph(rng, rng.randint(1, 3), rng.randint(0, 5), weights)
        G2 = random_graph(rng, rng.randint(1, 3), rng.randint(0, 5), weights)
        P = cartesian_product(G1, G2)
        if weight_matrix(P) != kronecker_sum(weight_matrix(G1), weight_matrix(G2)):
            return False, f"weight matrix mismatch on pair {k}"
        if egf_matrix(P, N) != egf_matrix(G1, N).kron(egf_matrix(G2, N)):
            return False, f"EGF matrix mismatch on pair {k}"
    return True, "50 random pairs, order 8"


def criterion_3():
    """Biproduct and parity products multiply counts coefficient-wise."""
    rng = random.Random(SEED + 3)
    N = 8
    for k in range(50):
        G1 = random_graph(rng, rng.randint(1, 3), rng.randint(0, 5), "poly" if k % 4 == 0 else "int")
        G2 = random_graph(rng, rng.randint(1, 3), rng.randint(0, 5))
        B = biproduct(G1, G2)
        for u1, v1, u2, v2 in product(G1.vertices, G1.vertices, G2.vertices, G2.vertices):
            lhs = count_walks(B, u1 + u2, v1 + v2, N)
            if lhs != egf_hadamard(count_walks(G1, u1, v1, N), count_walks(G2, u2, v2, N)):
                return False, f"biproduct mismatch on pair {k}"
    checked = 0
    for k in range(50):
        G1 = random_bipartite_graph(rng, rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 4))
        G2 = random_bipartite_graph(rng, rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 4))
        n1 = len(G1.vertices[0])
        for parity in (0, 1):
            E = parity_product(G1, G2, parity)
            for u, v in product(E.vertices, repeat=2):
                rhs = egf_hadamard(count_walks(G1, u[:n1], v[:n1], N), count_walks(G2, u[n1:], v[n1:], N))
                if count_walks(E, u, v, N) != rhs:
                    return False, f"parity-{parity} mismatch on bipartite pair {k}"
                checked += 1
    return True, f"50 random pairs plus 50 bipartite pairs ({checked} parity-product entries), order 8"


def criterion_4():
    """Closed forms on R, R(a,b), P, P(a,b) for |m|, k, l <= 4, n <= 12."""
    t0 = time.perf_counter()
    N = 12
    R, Rab = window("R", N + 4), window("Rab", N + 4)
    for m in range(-4, 5):
        if count_walks(R, 0, m, N) != seq(lambda n: closed_R(n, m), N):
            return False, f"closed_R at m={m}"
        if count_walks(Rab, 0, m, N) != seq(lambda n: closed_R_ab(n, m), N):
            return False, f"closed_R_ab at m={m}"
    for k in range(5):
        P, Pab = window("P", N + 4, (k,)), window("Pab", N + 4, (k,))
        for l in range(5):
            if count_walks(P, k, l, N) != seq(lambda n: closed_P(n, k, l), N):
                return False, f"closed_P at k={k}, l={l}"
            if count_walks(Pab, k, l, N) != seq(lambda n: closed_P_ab(n, k, l), N):
                return False, f"closed_P_ab at k={k}, l={l}"
    dt = time.perf_counter() - t0
    return dt < 5, f"all |m|, k, l <= 4, n <= 12, {dt:.2f}s (limit 5s)"


def criterion_5():
    """Composite closed form against the waypoint DP, and the reflection identity."""
    N = 10
    R, Rab = window("R", N + 8), window("Rab", N + 8)
    lists = 0
    for k in range(1, 4):
        for ms in product(range(-2, 3), repeat=k):
            pts = [0]
            for d in ms:
                pts.append(pts[-1] + d)
            if k == 1:
                # no inner waypoint: a plain walk 0 -> m1
                got, got_ab = count_walks(R, 0, pts[1], N), count_walks(Rab, 0, pts[1], N)
            else:
                got, got_ab = count_composite_walks(R, pts, N), count_composite_walks(Rab, pts, N)
            if got != seq(lambda n: closed_composite_R(n, list(ms)), N):
                return False, f"unweighted mismatch at increments {ms}"
            if got_ab != seq(lambda n: closed_composite_R_ab(n, list(ms)), N):
                return False, f"weighted mismatch at increments {ms}"
            lists += 1
    for k in range(4):
        for l in range(4):
            line = window("R", N + 4, (k,))
            through = count_composite_walks(line, [k, -1, l], N)
            if count_walks(window("P", N + 4, (k,)), k, l, N) != count_walks(line, k, l, N) - through:
                return False, f"reflection identity at k={k}, l={l}"
    return True, f"{lists} increment lists (k <= 3, |m_i| <= 2), reflection for k, l <= 3, n <= 10"


def criterion_6():
    """Square and half-plane lattice closed forms on windows, and the R^2 factorization."""
    N = 10
    R2 = window("R2", N + 4, (0, 0))
    col = lambda m: seq(lambda n: closed_R(n, m), N)  # noqa: E731
    for m1 in range(-3, 4):
        for m2 in range(-3, 4):
            got = count_walks(R2, (0, 0), (m1, m2), N)
            if got != seq(lambda n: closed_R2(n, m1, m2), N):
                return False, f"closed_R2 at ({m1},{m2})"
            if got != egf_mul(col(m1), col(m2)):
                return False, f"product form at ({m1},{m2})"
    for k1 in range(-3, 4):
        for k2 in range(4):
            G = window("RxP", N + 4, (k1, k2))
            for l1 in range(-3, 4):
                for l2 in range(4):
                    got = count_walks(G, (k1, k2), (l1, l2), N)
                    if got != seq(lambda n: closed_RxP(n, k1, k2, l1, l2), N):
                        return False, f"closed_RxP at {(k1, k2, l1, l2)}"
                    if k2 == 0 and got != seq(lambda n: closed_RxP_from_axis(n, k1, l1, l2), N):
                        return False, f"closed_RxP_from_axis at {(k1, l1, l2)}"
    return True, "n <= 10, coordinates <= 3"


def _power_blocks(G, N, labels):
    """All 2-subsets of ``labels`` as sources and targets."""
    C = egf_matrix(G, N, labels)
    tuples = list(combinations(range(len(labels)), 2))
    S, L = symmetric_power(G, 2), exterior_power(G, 2)
    S2, L2 = symmetric_bipower(G, 2), exterior_bipower(G, 2)
    count = 0
    for src in tuples:
        for dst in tuples:
            blk = C.block(list(src), list(dst))
            a = tuple(x for i in src for x in labels[i])
            b = tuple(x for i in dst for x in labels[i])
            if count_walks(S, a, b, N) != permanent_egf(blk):
                return False, f"S^2 at {a}->{b}"
            if count_walks(L, a, b, N) != determinant_egf(blk):
                return False, f"Lambda^2 at {a}->{b}"
            if count_walks(S2, a, b, N) != hadamard_permanent(blk):
                return False, f"S^2_2 at {a}->{b}"
            if count_walks(L2, a, b, N) != hadamard_determinant(blk):
                return False, f"Lambda^2_2 at {a}->{b}"
            count += 1
    return True, count


def criterion_7():
    """Symmetric and exterior squares (and bipowers) against permanents and determinants."""
    N = 8
    total = 0
    for kind in ("R", "P"):
        G = window(kind, N + 4)
        ok, info = _power_blocks(G, N, [(x,) for x in range(4)])
        if not ok:
            return False, f"{kind} window: {info}"
        total += info
    rng = random.Random(SEED + 7)
    for k in range(10):
        G = random_graph(rng, 4, rng.randint(2, 7), "poly" if k % 2 else "int")
        ok, info = _power_blocks(G, N, list(G.vertices))
        if not ok:
            return False, f"random graph {k}: {info}"
        total += info
    return True, f"{total} source/target pairs on R, P windows and 10 random 4-vertex graphs, n <= 8"


def criterion_8():
    """Immanants at (n) and (1^n) and character orthogonality."""
    rng = random.Random(SEED + 8)
    for size in (3, 4):
        for _ in range(10):
            M = EgfMatrix([[EgfSeq(rng.randint(-3, 3) for _ in range(6)) for _ in range(size)] for _ in range(size)])
            if immanant_egf(M, (size,)) != permanent_egf(M):
                return False, f"(n) immanant differs from permanent at size {size}"
            if immanant_egf(M, (1,) * size) != determinant_egf(M):
                return False, f"(1^n) immanant differs from determinant at size {size}"
    for n in range(1, 7):
        parts = list(partitions(n))
        for lam in parts:
            for lam2 in parts:
                s = sum(class_size(mu) * sn_character(lam, mu) * sn_character(lam2, mu) for mu in parts)
                expected = math.factorial(n) if lam == lam2 else 0
                if s != expected:
                    return False, f"orthogonality fails at {lam}, {lam2}"
            for mu in parts:
                if sn_character(lam, mu) != frobenius_character(lam, mu):
                    return False, f"character {lam} at {mu} disagrees with the Frobenius formula"
    return True, "20 random matrices of sizes 3 and 4; orthogonality for n <= 6"


def criterion_9():
    """Quotient fiber sums, semiregular mass law, loop-addition law."""
    N = 10
    line = CayleySpec.line()
    for q in (2, 3, 4, 5):
        cyc = window("C", N, q=q)
        for g in range(q):
            direct = cayley_counts(line.quotient([(q,)]), (g,), N)
            if direct != quotient_counts(line, [(q,)], (g,), N) or direct != count_walks(cyc, 0, g, N):
                return False, f"fiber sum fails for q={q}, g={g}"
    R = window("R", N)
    mass = [sum(count_walks(R, 0, v, N)[n] for v in R.vertices) for n in range(N + 1)]
    if mass != [2 ** n for n in range(N + 1)]:
        return False, "row-sum law on R"
    for m in (1, 2, 3, 5):
        if count_walks(window("K1", 0, m=m), 0, 0, N).coeffs != tuple(m ** n for n in range(N + 1)):
            return False, f"row-sum law on K1({m})"
    rng = random.Random(SEED + 9)
    for k in range(20):
        G = random_graph(rng, rng.randint(1, 5), rng.randint(0, 8), "poly" if k % 2 else "int")
        m = rng.choice([1, 2, 3, -1])
        H = add_uniform_loops(G, m)
        for u, v in product(G.vertices, repeat=2):
            if count_walks(H, u, v, N) != egf_mul(EgfSeq.exp(m, N), count_walks(G, u, v, N)):
                return False, f"loop law on random graph {k}"
    return True, "q in {2,3,4,5}, n <= 10; R and K1(m); 20 random graphs"


def criterion_10():
    """Identity checkers over their grids."""
    t0 = time.perf_counter()
    grids = [("eq38", {"k_max": 8, "ab_max": 4}), ("eqbin", {"n_max": 20}), ("corp3", {"n_max": 20}),
             ("eqRP5", {"n_max": 16}), ("eqRP6", {"n_max": 12})]
    points = 0
    for name, ranges in grids:
        rep = check_identity(name, **ranges)
        if not rep["pass"]:
            return False, f"{name} fails at {rep['counterexample']}"
        points += rep["checked"]
    dt = time.perf_counter() - t0
    return dt < 5, f"{points} grid points, {dt:.2f}s (limit 5s)"


def criterion_11():
    """Wave-graph count: formula, determinant route and direct count on the exterior square of P."""
    t0 = time.perf_counter()
    values = []
    for k in range(1, 9):
        formula, det = wave_formula(k), wave_determinant_route(k)
        L = exterior_power(window("P", 2 * k + 1), 2)
        direct = count_walks(L, (0, 1), (0, 1), 2 * k)[2 * k]
        if not formula == det == direct:
            return False, f"k={k}: formula {formula}, determinant {det}, direct {direct}"
        values.append(formula)
    if values[:2] != [1, 3]:
        return False, f"small values {values[:2]}"
    dt = time.perf_counter() - t0
    return dt < 30, f"k = 1..8 -> {values}, {dt:.2f}s (limit 30s)"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = CRITERIA[number]()
    RESULTS[number] = (ok, detail)
    assert ok, detail


def report_lines() -> list[str]:
    lines = []
    for number in sorted(CRITERIA):
        if number in RESULTS:
            ok, detail = RESULTS[number]
            lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {CRITERIA[number].__doc__.strip()} [{detail}]")
    return lines


if __name__ == "__main__":
    failed = 0
    for number, fn in sorted(CRITERIA.items()):
        ok, detail = fn()
        RESULTS[number] = (ok, detail)
        failed += not ok
    print("\n".join(report_lines()))
    sys.exit(1 if failed else 0)
