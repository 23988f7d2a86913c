"""Exact scalar arithmetic and truncated exponential series.

Two rings of weights are supported: Python ``int`` (unbounded) and
:class:`Poly`, sparse polynomials in two formal weights ``a`` and ``b``
with integer coefficients.  Exponential series are stored by their walk
counts ``c_0 .. c_N`` (not divided by ``n!``), so the product of series is
a binomial convolution and everything stays inside the ring.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import zip_longest
from typing import Iterable, Iterator, Sequence, Union


class OrderMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


class Poly:
    """Sparse polynomial in ``a`` and ``b`` with integer coefficients.

    Terms are stored as ``{(exp_a, exp_b): coeff}`` with zero coefficients
    removed.  Instances are immutable and hashable; comparison with ``int``
    works for constant polynomials.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial a^{i} b^{j}")
            if c:
                clean[(int(i), int(j))] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exp_a: int, exp_b: int, coeff: int = 1) -> "Poly":
        return cls({(exp_a, exp_b): coeff})

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def subs(self, a, b):
        """Evaluate at ``a``, ``b`` (any ring values; ``0**0 == 1``)."""
        total = 0
        for (i, j), c in self._terms.items():
            total = total + c * (a ** i) * (b ** j)
        return total

    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out.get(k, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in o._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("Poly supports only nonnegative integer powers")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._terms.get((0, 0), 0))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("a" if i == 1 else f"a^{i}"),
                    "" if j == 0 else ("b" if j == 1 else f"b^{j}"),
                ) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_monomials(self) -> list[dict]:
        """Canonical serialisation: sorted list of {"a","b","c"} with string coefficients."""
        return [
            {"a": i, "b": j, "c": str(c)}
            for (i, j), c in sorted(self._terms.items())
        ]

    @classmethod
    def from_monomials(cls, items: Iterable[dict]) -> "Poly":
        out: dict[tuple[int, int], int] = {}
        for m in items:
            k = (int(m.get("a", 0)), int(m.get("b", 0)))
            out[k] = out.get(k, 0) + int(m.get("c", 1))
        return cls(out)


RingElem = Union[int, Poly]

#: the formal weights of the directed linear graphs
A = Poly.monomial(1, 0)
B = Poly.monomial(0, 1)


def is_zero(x: RingElem) -> bool:
    return x == 0


@lru_cache(maxsize=None)
def _binomial_row(n: int) -> tuple[int, ...]:
    return tuple(math.comb(n, k) for k in range(n + 1))


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n! / prod(parts!) when the parts are nonnegative and sum to n, else 0."""
    if any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = 1
    rest = n
    for p in parts:
        out *= math.comb(rest, p)
        rest -= p
    return out


def exact_div(num: int, den: int) -> int:
    """Integer division that must be exact; a remainder is a bug."""
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return q


class EgfSeq:
    """Truncated exponential series sum c_n t^n / n!, stored as (c_0, ..., c_N)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RingElem]):
        c = tuple(coeffs)
        if not c:
            raise ValueError("an EgfSeq needs at least the constant coefficient")
        self._coeffs = c

    @classmethod
    def zero(cls, order: int) -> "EgfSeq":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "EgfSeq":
        return cls([1] + [0] * order)

    @classmethod
    def exp(cls, m: RingElem, order: int) -> "EgfSeq":
        """e^{mt}: coefficients m^n."""
        out = [1]
        for _ in range(order):
            out.append(out[-1] * m)
        return cls(out)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[RingElem, ...]:
        return self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[RingElem]:
        return iter(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def _check(self, other: "EgfSeq") -> None:
        if not isinstance(other, EgfSeq):
            raise TypeError(f"expected EgfSeq, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: "EgfSeq") -> "EgfSeq":
        self._check(other)
        return EgfSeq(x + y for x, y in zip(self._coeffs, other._coeffs))

    def __sub__(self, other: "EgfSeq") -> "EgfSeq":
        self._check(other)
        return EgfSeq(x - y for x, y in zip(self._coeffs, other._coeffs))

    def __neg__(self) -> "EgfSeq":
        return EgfSeq(-x for x in self._coeffs)

    def scale(self, r: RingElem) -> "EgfSeq":
        return EgfSeq(r * x for x in self._coeffs)

    def truncate(self, order: int) -> "EgfSeq":
        if order > self.order:
            raise OrderMismatchError("cannot extend a truncated series")
        return EgfSeq(self._coeffs[: order + 1])

    def __eq__(self, other):
        if isinstance(other, EgfSeq):
            return self._coeffs == other._coeffs
        if isinstance(other, (list, tuple)):
            return len(other) == len(self._coeffs) and all(
                x == y for x, y in zip_longest(self._coeffs, other)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"EgfSeq({list(self._coeffs)!r})"


def egf_mul(x: EgfSeq, y: EgfSeq) -> EgfSeq:
    """Product of exponential series: binomial convolution of the counts."""
    x._check(y)
    xs, ys = x.coeffs, y.coeffs
    out = []
    for n in range(len(xs)):
        row = _binomial_row(n)
        acc = 0
        for j in range(n + 1):
            xj = xs[j]
            if xj == 0:
                continue
            yk = ys[n - j]
            if yk == 0:
                continue
            acc = acc + row[j] * xj * yk
        out.append(acc)
    return EgfSeq(out)


def egf_hadamard(x: EgfSeq, y: EgfSeq) -> EgfSeq:
    """Coefficient-wise product."""
    x._check(y)
    return EgfSeq(a * b for a, b in zip(x.coeffs, y.coeffs))


class EgfMatrix:
    """Square matrix of EgfSeq entries sharing one truncation order."""

    __slots__ = ("_rows", "_order")

    def __init__(self, rows: Iterable[Iterable[EgfSeq]]):
        rs = tuple(tuple(r) for r in rows)
        if any(len(r) != len(rs) for r in rs):
            raise ValueError("EgfMatrix must be square")
        orders = {e.order for r in rs for e in r}
        if len(orders) > 1:
            raise OrderMismatchError(f"mixed truncation orders {sorted(orders)}")
        self._rows = rs
        self._order = orders.pop() if orders else 0

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[tuple[EgfSeq, ...], ...]:
        return self._rows

    def __getitem__(self, ij) -> EgfSeq:
        i, j = ij
        return self._rows[i][j]

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "EgfMatrix":
        return EgfMatrix([[self._rows[i][j] for j in cols] for i in rows])

    def coefficient_matrix(self, n: int) -> list[list[RingElem]]:
        """The scalar matrix of n-th coefficients."""
        return [[e[n] for e in r] for r in self._rows]

    def kron(self, other: "EgfMatrix") -> "EgfMatrix":
        """Tensor product with egf_mul as the scalar product."""
        m = other.size
        return EgfMatrix(
            [
                [egf_mul(self._rows[i1][j1], other._rows[i2][j2])
                 for j1 in range(self.size) for j2 in range(m)]
                for i1 in range(self.size) for i2 in range(m)
            ]
        )

    def __eq__(self, other):
        if not isinstance(other, EgfMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __repr__(self):
        return f"EgfMatrix(size={self.size}, order={self.order})"
