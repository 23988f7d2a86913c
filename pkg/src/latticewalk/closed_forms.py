"""Closed-form walk counts, matrix expansions over EGF sequences, identity checks.

Permanents, determinants and immanants are computed twice over: with the
EGF product (symmetric and exterior powers) and with the coefficient-wise
product (bipowers), the latter also as scalar expansions of the per-length
coefficient matrices.
"""
from __future__ import annotations

import math
from itertools import permutations
from typing import Callable, Sequence

from .algebra import (
    A,
    B,
    EgfMatrix,
    EgfSeq,
    RingElem,
    binomial,
    egf_hadamard,
    egf_mul,
    exact_div,
)
from .characters import as_partition, cycle_type, sn_character

#: largest size for which the subset recursion is used by default
DP_MAX_SIZE = 8
#: immanants enumerate all permutations; this is the hard cap
IMMANANT_MAX_SIZE = 8


class ShapeError(ValueError):
    pass


# ---------------------------------------------------------------- expansions

def _as_rows(M) -> list[list]:
    rows = M.rows if isinstance(M, EgfMatrix) else [list(r) for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("matrix must be square")
    return rows


def _laplace(rows, mul: Callable, one, signed: bool):
    """Row-by-row expansion over subsets of used columns.

    f[mask] sums the products of the first popcount(mask) rows over
    injections onto mask.  Choosing column j after mask adds one inversion
    per already used column greater than j.
    """
    n = len(rows)
    f = {0: one}
    for i in range(n):
        nxt: dict = {}
        for mask, acc in f.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                term = mul(acc, rows[i][j])
                if signed and bin(mask >> (j + 1)).count("1") % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        f = nxt
    return f[(1 << n) - 1]


def _ryser(rows, mul: Callable, add_zero):
    """per = (-1)^n sum over column subsets S of (-1)^|S| prod_i sum_{j in S} a_ij."""
    n = len(rows)
    total = add_zero
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = None
        for i in range(n):
            s = add_zero
            for j in cols:
                s = s + rows[i][j]
            prod = s if prod is None else mul(prod, s)
        total = total + prod if (n - len(cols)) % 2 == 0 else total - prod
    return total


def _immanant(rows, lam, mul: Callable, one, zero):
    n = len(rows)
    if n > IMMANANT_MAX_SIZE:
        raise ValueError(f"immanants are limited to size <= {IMMANANT_MAX_SIZE}")
    lam = as_partition(lam)
    if sum(lam) != n:
        raise ShapeError(f"partition of {sum(lam)} does not match matrix size {n}")
    chars: dict = {}
    total = zero
    for sigma in permutations(range(n)):
        mu = cycle_type(sigma)
        if mu not in chars:
            chars[mu] = sn_character(lam, mu)
        chi = chars[mu]
        if chi == 0:
            continue
        acc = one
        for i in range(n):
            acc = mul(acc, rows[i][sigma[i]])
        total = total + (acc.scale(chi) if isinstance(acc, EgfSeq) else chi * acc)
    return total


def _order(rows) -> int:
    return rows[0][0].order if rows else 0


def _egf_permanent(M: EgfMatrix, mul, one_of, method: str) -> EgfSeq:
    rows = _as_rows(M)
    N = _order(rows) if rows else M.order
    if method == "auto":
        method = "dp" if len(rows) <= DP_MAX_SIZE else "ryser"
    if method == "dp":
        return _laplace(rows, mul, one_of(N), signed=False)
    if method == "ryser":
        if not rows:
            return one_of(N)
        return _ryser(rows, mul, EgfSeq.zero(N))
    raise ValueError(f"unknown method {method!r}")


def _ones(N: int) -> EgfSeq:
    return EgfSeq([1] * (N + 1))


def permanent_egf(M: EgfMatrix, method: str = "auto") -> EgfSeq:
    """Permanent with the EGF product; ``method`` is "dp", "ryser" or "auto"."""
    return _egf_permanent(M, egf_mul, EgfSeq.one, method)


def determinant_egf(M: EgfMatrix) -> EgfSeq:
    rows = _as_rows(M)
    return _laplace(rows, egf_mul, EgfSeq.one(_order(rows) if rows else M.order), signed=True)


def immanant_egf(M: EgfMatrix, lam: Sequence[int]) -> EgfSeq:
    rows = _as_rows(M)
    N = _order(rows) if rows else M.order
    return _immanant(rows, lam, egf_mul, EgfSeq.one(N), EgfSeq.zero(N))


def hadamard_permanent(M: EgfMatrix, method: str = "auto") -> EgfSeq:
    return _egf_permanent(M, egf_hadamard, _ones, method)


def hadamard_determinant(M: EgfMatrix) -> EgfSeq:
    rows = _as_rows(M)
    return _laplace(rows, egf_hadamard, _ones(_order(rows) if rows else M.order), signed=True)


def hadamard_immanant(M: EgfMatrix, lam: Sequence[int]) -> EgfSeq:
    rows = _as_rows(M)
    N = _order(rows) if rows else M.order
    return _immanant(rows, lam, egf_hadamard, _ones(N), EgfSeq.zero(N))


def _mul(x, y):
    return x * y


def permanent(rows: Sequence[Sequence[RingElem]]) -> RingElem:
    return _laplace(_as_rows(rows), _mul, 1, signed=False)


def determinant(rows: Sequence[Sequence[RingElem]]) -> RingElem:
    return _laplace(_as_rows(rows), _mul, 1, signed=True)


def immanant(rows: Sequence[Sequence[RingElem]], lam: Sequence[int]) -> RingElem:
    return _immanant(_as_rows(rows), lam, _mul, 1, 0)


def per_length(M: EgfMatrix, fn: Callable) -> EgfSeq:
    """Apply a scalar expansion to each coefficient matrix of M."""
    return EgfSeq(fn(M.coefficient_matrix(n)) for n in range(M.order + 1))


# ---------------------------------------------------------------- lattices

def _numeric_zero(x) -> bool:
    return isinstance(x, int) and x == 0


def closed_R(n: int, m: int) -> int:
    """Walks of length n from 0 to m on the integer line."""
    if n < 0 or (n - m) % 2:
        return 0
    return binomial(n, (n - m) // 2)


def closed_R_ab(n: int, m: int, a: RingElem = A, b: RingElem = B) -> RingElem:
    """Weighted count on R(a, b): steps right weigh a, steps left weigh b."""
    if _numeric_zero(b):
        return a ** m if n == m >= 0 else 0
    if _numeric_zero(a):
        return b ** (-m) if n == -m >= 0 else 0
    c = closed_R(n, m)
    if c == 0:
        return 0
    return c * a ** ((n + m) // 2) * b ** ((n - m) // 2)


def _check_half_line(*coords: int) -> None:
    if any(x < 0 for x in coords):
        raise ValueError(f"half-line coordinates must be >= 0, got {coords}")


def closed_P(n: int, k: int, l: int) -> int:
    """Walks of length n from k to l on the half-line, by reflection."""
    _check_half_line(k, l)
    if n < 0 or (n + k - l) % 2:
        return 0
    return binomial(n, (n + k - l) // 2) - binomial(n, (n - k - l) // 2 - 1)


def closed_P_ab(n: int, k: int, l: int, a: RingElem = A, b: RingElem = B) -> RingElem:
    _check_half_line(k, l)
    if _numeric_zero(b):
        return a ** (l - k) if n == l - k >= 0 else 0
    if _numeric_zero(a):
        return b ** (k - l) if n == k - l >= 0 else 0
    c = closed_P(n, k, l)
    if c == 0:
        return 0
    return c * a ** ((n - k + l) // 2) * b ** ((n + k - l) // 2)


def closed_R2(n: int, m1: int, m2: int) -> int:
    """Walks of length n from the origin to (m1, m2) on the square lattice."""
    if n < 0 or (n - m1 - m2) % 2:
        return 0
    return binomial(n, (n - m1 - m2) // 2) * binomial(n, (n + m1 - m2) // 2)


def closed_RxP(n: int, k1: int, k2: int, l1: int, l2: int) -> int:
    """Walks (k1, k2) -> (l1, l2) on the upper half-plane lattice R x P."""
    _check_half_line(k2, l2)
    d = l1 - k1
    if n < 0 or (n - d - (l2 - k2)) % 2:
        return 0
    e, f = abs(l2 - k2), l2 + k2 + 2
    return (
        binomial(n, (n - d - e) // 2) * binomial(n, (n + d - e) // 2)
        - binomial(n, (n - d - f) // 2) * binomial(n, (n + d - f) // 2)
    )


def closed_RxP_from_axis(n: int, k: int, l: int, m: int) -> int:
    """Walks (k, 0) -> (l, m) on R x P, as an exact (m+1)/(n+1) quotient."""
    _check_half_line(m)
    d = l - k
    if n < 0 or (n - d - m) % 2:
        return 0
    num = (m + 1) * binomial(n + 1, (n - d - m) // 2) * binomial(n + 1, (n + d - m) // 2)
    return exact_div(num, n + 1)


def closed_composite_R(n: int, ms: Sequence[int]) -> int:
    """Walks on R visiting 0, m1, m1+m2, ... in order, with m = sum |m_i|."""
    if not ms:
        raise ValueError("need at least one increment")
    return closed_R(n, sum(abs(x) for x in ms))


def closed_composite_R_ab(n: int, ms: Sequence[int], a: RingElem = A, b: RingElem = B) -> RingElem:
    if not ms:
        raise ValueError("need at least one increment")
    m = sum(abs(x) for x in ms)
    M = sum(ms)
    if _numeric_zero(b):
        return a ** m if all(x >= 0 for x in ms) and n == m else 0
    if _numeric_zero(a):
        return b ** m if all(x <= 0 for x in ms) and n == m else 0
    c = closed_R(n, m)
    if c == 0:
        return 0
    return c * a ** ((n + M) // 2) * b ** ((n - M) // 2)


def bessel_coeffs(m: int, N: int) -> EgfSeq:
    """Coefficients n! [t^n] I_m(2t), n = 0..N."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return EgfSeq(closed_R(n, m) for n in range(N + 1))


def bessel_P_coeffs(m: int, N: int) -> EgfSeq:
    """Coefficients of (m+1) I_{m+1}(2t) / t, computed through an exact division."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = []
    for n in range(N + 1):
        if n < m or (n - m) % 2:
            out.append(0)
        else:
            out.append(exact_div((m + 1) * binomial(n + 1, (n - m) // 2), n + 1))
    return EgfSeq(out)


# ---------------------------------------------------------------- identities

def _multinomial4(n: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


def _grid_eq38(k_max: int = 8, ab_max: int = 4):
    for k in range(k_max + 1):
        for a in range(ab_max + 1):
            for b in range(ab_max + 1):
                n = 2 * k + a + b
                lhs = sum(_multinomial4(n, (i, i + a, k - i, k - i + b)) for i in range(k + 1))
                rhs = binomial(n, k) * binomial(n, k + a)
                yield {"k": k, "a": a, "b": b}, lhs, rhs


def _grid_eqbin(n_max: int = 20):
    for n in range(n_max + 1):
        for m in range(n % 2, n + 1, 2):
            i = (n - m) // 2
            lhs = (n + 1) * (binomial(n, i) - binomial(n, i - 1))
            rhs = (m + 1) * binomial(n + 1, i)
            yield {"n": n, "m": m}, lhs, rhs


def _grid_corp3(n_max: int = 20):
    for n in range(1, n_max + 1):
        terms = [(n - 2 * i) * binomial(n, i) for i in range(n + 1)]
        for k in range(n + 1):
            acc = 0
            for l in range(k, n + 1):
                acc += terms[l]
                rhs = n * (binomial(n - 1, l) - binomial(n - 1, k - 1))
                yield {"n": n, "k": k, "l": l}, acc, rhs


def _grid_eqRP5(n_max: int = 16):
    for n in range(n_max + 1):
        for i in range(n + 2):
            for j in range(n + 2):
                lhs = (n + 1) * (binomial(n, i) * binomial(n, j) - binomial(n, i - 1) * binomial(n, j - 1))
                rhs = (n - i - j + 1) * binomial(n + 1, i) * binomial(n + 1, j)
                yield {"n": n, "i": i, "j": j}, lhs, rhs


def _grid_eqRP6(n_max: int = 12):
    for n in range(1, n_max + 1):
        for m in range(-n, n + 1):
            terms = [(n - m - 2 * i) * binomial(n, i) * binomial(n, m + i) for i in range(n + 1)]
            for k in range(n + 1):
                acc = 0
                for l in range(k, n + 1):
                    acc += terms[l]
                    rhs = n * (
                        binomial(n - 1, l) * binomial(n - 1, m + l)
                        - binomial(n - 1, k - 1) * binomial(n - 1, m + k - 1)
                    )
                    yield {"n": n, "m": m, "k": k, "l": l}, acc, rhs


IDENTITIES: dict[str, Callable] = {
    "eq38": _grid_eq38,
    "eqbin": _grid_eqbin,
    "corp3": _grid_corp3,
    "eqRP5": _grid_eqRP5,
    "eqRP6": _grid_eqRP6,
}


def check_identity(name: str, **ranges: int) -> dict:
    """Evaluate both sides of a named identity over a finite grid.

    eq38 takes ``k_max`` and ``ab_max``; the others take ``n_max``.
    Sides that carry a division are compared after clearing denominators.
    """
    if name not in IDENTITIES:
        raise ValueError(f"unknown identity {name!r}; choose from {sorted(IDENTITIES)}")
    checked = 0
    for point, lhs, rhs in IDENTITIES[name](**ranges):
        checked += 1
        if lhs != rhs:
            return {
                "identity": name,
                "range": dict(ranges),
                "pass": False,
                "checked": checked,
                "counterexample": {**point, "lhs": str(lhs), "rhs": str(rhs)},
            }
    return {"identity": name, "range": dict(ranges), "pass": True, "checked": checked, "counterexample": None}


# ---------------------------------------------------------------- wave graphs

def wave_formula(k: int) -> int:
    """(2k)! (2k+2)! 6 / (k! (k+1)! (k+2)! (k+3)!), with divisibility asserted."""
    if k < 1:
        raise ValueError("k must be >= 1")
    f = math.factorial
    return exact_div(f(2 * k) * f(2 * k + 2) * 6, f(k) * f(k + 1) * f(k + 2) * f(k + 3))


def p_block(order: int) -> EgfMatrix:
    """The block of C(P) on the vertices 0 and 1, from the closed form."""
    return EgfMatrix([
        [EgfSeq(closed_P(n, i, j) for n in range(order + 1)) for j in (0, 1)]
        for i in (0, 1)
    ])


def wave_determinant_route(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return determinant_egf(p_block(2 * k))[2 * k]


def wave_graph_count(k: int) -> tuple[int, int]:
    """(formula route, determinant route) for plane symplectic wave graphs on 2k vertices."""
    return wave_formula(k), wave_determinant_route(k)


__all__ = [
    "ShapeError",
    "permanent_egf",
    "determinant_egf",
    "immanant_egf",
    "hadamard_permanent",
    "hadamard_determinant",
    "hadamard_immanant",
    "permanent",
    "determinant",
    "immanant",
    "per_length",
    "closed_R",
    "closed_R_ab",
    "closed_P",
    "closed_P_ab",
    "closed_R2",
    "closed_RxP",
    "closed_RxP_from_axis",
    "closed_composite_R",
    "closed_composite_R_ab",
    "bessel_coeffs",
    "bessel_P_coeffs",
    "check_identity",
    "wave_formula",
    "wave_determinant_route",
    "wave_graph_count",
    "p_block",
]
