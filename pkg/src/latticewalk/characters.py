"""Partitions and irreducible characters of the symmetric group.

Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets:
removing a rim hook of length r moves one bead from b to b - r, with sign
(-1)^(beads strictly between).
"""
from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]


def as_partition(parts: Sequence[int]) -> Partition:
    lam = tuple(int(p) for p in parts)
    if any(p <= 0 for p in lam):
        raise ValueError(f"partition parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"partition must be weakly decreasing: {lam}")
    return lam


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def centralizer_order(mu: Partition) -> int:
    z = 1
    for part, mult in Counter(mu).items():
        z *= part ** mult * math.factorial(mult)
    return z


def class_size(mu: Partition) -> int:
    return math.factorial(sum(mu)) // centralizer_order(mu)


def _beta_set(lam: Partition) -> tuple[int, ...]:
    ell = len(lam)
    return tuple(p + ell - 1 - i for i, p in enumerate(lam))


def _from_beta(beta: Sequence[int]) -> Partition:
    bs = sorted(beta, reverse=True)
    ell = len(bs)
    return tuple(p for p in (b - (ell - 1 - i) for i, b in enumerate(bs)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beta = _beta_set(lam)
    members = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in members:
            continue
        height = sum(1 for x in beta if target < x < b)
        new = _from_beta([target if x == b else x for x in beta])
        total += (-1) ** height * _mn(new, rest)
    return total


def sn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi_lambda evaluated on the class of cycle type mu."""
    lam = as_partition(lam)
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    as_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"|lambda| = {sum(lam)} differs from |mu| = {sum(mu)}")
    return _mn(lam, mu)


def hook_length_dimension(lam: Sequence[int]) -> int:
    """f^lambda = n! / prod of hook lengths."""
    lam = as_partition(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, p in enumerate(lam):
        for j in range(p):
            hooks *= (p - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(sum(lam)) // hooks
