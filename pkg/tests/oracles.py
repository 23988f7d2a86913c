"""Independent reference implementations used only by the tests.

Nothing here shares code paths with the package beyond the ring types:
walks are enumerated or taken from dense matrix powers, permanents from
permutation sums, characters from the Frobenius formula.
"""
from __future__ import annotations

import math
from collections import Counter
from itertools import permutations, product

from latticewalk.algebra import Poly


def dense_matrix(G):
    n = len(G)
    W = [[0] * n for _ in range(n)]
    for e in G.edges:
        W[e.tail][e.head] = W[e.tail][e.head] + e.weight
        if not e.directed:
            W[e.head][e.tail] = W[e.head][e.tail] + e.weight
    return W


def matmul(X, Y):
    n, k, m = len(X), len(Y), len(Y[0]) if Y else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = X[i][t]
            if x == 0:
                continue
            for j in range(m):
                if Y[t][j] != 0:
                    out[i][j] = out[i][j] + x * Y[t][j]
    return out


def matrix_power_counts(G, s: int, t: int, order: int) -> list:
    """c_n(s -> t) as the (s, t) entry of dense powers of W."""
    W = dense_matrix(G)
    n = len(W)
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    out = [P[s][t]]
    for _ in range(order):
        P = matmul(P, W)
        out.append(P[s][t])
    return out


def lattice_walks(steps, source, target, order, allowed=lambda v: True, weight=None):
    """Sum over step sequences in Z^d staying in ``allowed``; weight(step) defaults to 1."""
    out = []
    for n in range(order + 1):
        total = 0
        for seq in product(range(len(steps)), repeat=n):
            v = tuple(source)
            w = 1
            ok = True
            for k in seq:
                v = tuple(a + b for a, b in zip(v, steps[k]))
                if not allowed(v):
                    ok = False
                    break
                if weight is not None:
                    w = w * weight(steps[k])
            if ok and v == tuple(target):
                total = total + w
        out.append(total)
    return out


def visits_in_order(path, waypoints) -> bool:
    """Exhaustive check for t_1 <= ... <= t_k with path[t_i] == waypoints[i]."""
    def rec(i, start):
        if i == len(waypoints):
            return True
        return any(path[t] == waypoints[i] and rec(i + 1, t) for t in range(start, len(path)))

    return rec(0, 0)


def composite_walks(G, waypoints_idx, order):
    """Enumerate vertex paths of each length and filter by ordered visitation."""
    adj = [[] for _ in range(len(G))]
    for e in G.edges:
        adj[e.tail].append((e.head, e.weight))
        if not e.directed:
            adj[e.head].append((e.tail, e.weight))
    s, inner, t = waypoints_idx[0], waypoints_idx[1:-1], waypoints_idx[-1]
    out = [0] * (order + 1)

    def dfs(path, w):
        n = len(path) - 1
        if path[-1] == t and visits_in_order(path, inner):
            out[n] = out[n] + w
        if n == order:
            return
        for v, x in adj[path[-1]]:
            path.append(v)
            dfs(path, w * x)
            path.pop()

    dfs([s], 1)
    return out


def perm_sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def brute_expansion(rows, weight_of, mul, one):
    n = len(rows)
    total = None
    for p in permutations(range(n)):
        c = weight_of(p)
        if c == 0:
            continue
        acc = one
        for i in range(n):
            acc = mul(acc, rows[i][p[i]])
        term = acc.scale(c) if hasattr(acc, "scale") else c * acc
        total = term if total is None else total + term
    return total


def cycle_lengths(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, k = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def frobenius_character(lam, mu) -> int:
    """chi_lambda(mu) = [x^(lambda + delta)] a_delta * prod_i p_{mu_i}."""
    ell = len(lam)
    poly = Counter()
    for p in permutations(range(ell)):
        exps = tuple(ell - 1 - p[i] for i in range(ell))
        poly[exps] += perm_sign(p)
    for r in mu:
        nxt = Counter()
        for exps, c in poly.items():
            for i in range(ell):
                e = list(exps)
                e[i] += r
                nxt[tuple(e)] += c
        poly = nxt
    key = tuple(lam[i] + ell - 1 - i for i in range(ell))
    return poly.get(key, 0)


def hook_dimension(lam) -> int:
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])]
    h = 1
    for i, p in enumerate(lam):
        for j in range(p):
            h *= p - j + conj[j] - i - 1
    return math.factorial(n) // h


def poly_eval(x, a, b):
    return x.subs(a, b) if isinstance(x, Poly) else x
