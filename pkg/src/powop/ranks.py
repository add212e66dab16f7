"""Rank data for the K(n-1)-local symmetric-group rings.

``sublattice_count_closed(p, r, m)`` counts index-``p^m`` sublattices of
``Z_p^r``.  ``zpn_set_count(p, r, k)`` counts isomorphism classes of ``k``-element
``Z_p^r``-sets: every transitive one is ``Z_p^r / L`` for an open sublattice
``L`` of index ``p^m`` (orbit-stabilizer), so the generating function is
``prod_m (1 - x^{p^m})^{-c_m}`` with ``c_m = sublattice_count_closed(p, r, m)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from powop.padic import require_prime

BRUTE_MAX_RANK = 6
BRUTE_MAX_M = 8
BRUTE_MAX_OFFDIAG = 10**7


@dataclass(frozen=True)
class RankQuery:
    p: int
    r: int
    m: int | None = None
    k: int | None = None

    def __post_init__(self):
        require_prime(self.p)
        if self.r < 1:
            raise ValueError("lattice rank r must be >= 1")
        if (self.m is None) == (self.k is None):
            raise ValueError("give exactly one of m (index exponent) or k (set order)")
        if self.m is not None and self.m < 0:
            raise ValueError("index exponent m must be >= 0")
        if self.k is not None and self.k < 1:
            raise ValueError("set order k must be >= 1")

    def evaluate(self) -> int:
        if self.m is not None:
            return sublattice_count_closed(self.p, self.r, self.m)
        return zpn_set_count(self.p, self.r, self.k)


def sublattice_count_closed(p: int, r: int, m: int) -> int:
    require_prime(p)
    num = den = 1
    for t in range(1, r):
        num *= p ** (m + t) - 1
        den *= p**t - 1
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def _diagonals(m: int, r: int):
    """Exponent vectors ``(e_1, ..., e_r)`` of non-negative integers summing to ``m``."""
    for cuts in itertools.combinations(range(m + r - 1), r - 1):
        prev = -1
        out = []
        for c in (*cuts, m + r - 1):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def hermite_bases(p: int, r: int, m: int):
    """Every upper-triangular HNF basis of an index-``p^m`` sublattice of ``Z^r``.

    Diagonal ``p^{e_j}``; entries above the diagonal in ``[0, diagonal of their column)``.
    """
    for exps in _diagonals(m, r):
        diag = [p**e for e in exps]
        slots = [(i, j) for j in range(r) for i in range(j)]
        for fill in itertools.product(*(range(diag[j]) for _, j in slots)):
            mat = [[0] * r for _ in range(r)]
            for j in range(r):
                mat[j][j] = diag[j]
            for (i, j), v in zip(slots, fill):
                mat[i][j] = v
            yield tuple(map(tuple, mat))


def sublattice_count_bruteforce(p: int, r: int, m: int) -> int:
    require_prime(p)
    if r < 1 or m < 0:
        raise ValueError("need r >= 1 and m >= 0")
    if r > BRUTE_MAX_RANK or m > BRUTE_MAX_M or p ** (m * (r - 1)) > BRUTE_MAX_OFFDIAG:
        raise ValueError(
            f"brute force limited to r <= {BRUTE_MAX_RANK}, m <= {BRUTE_MAX_M} "
            f"and p^(m(r-1)) <= {BRUTE_MAX_OFFDIAG}; got p={p}, r={r}, m={m}"
        )
    seen = set()
    for basis in hermite_bases(p, r, m):
        det = 1
        for j in range(r):
            det *= basis[j][j]
        if det == p**m:
            seen.add(basis)
    return len(seen)


def zpn_set_count(p: int, r: int, k: int) -> int:
    """Coefficient of ``x^k`` in ``prod_{m>=0} (1 - x^{p^m})^{-c_m}``."""
    require_prime(p)
    if k < 1:
        raise ValueError("k must be >= 1")
    ways = [1] + [0] * k
    size, m = 1, 0
    while size <= k:
        c = sublattice_count_closed(p, r, m)
        # (1 - x^size)^(-c) = sum_j binom(c + j - 1, j) x^(size j)
        weights = [comb(c + j - 1, j) for j in range(k // size + 1)]
        ways = [
            sum(weights[j] * ways[total - size * j] for j in range(total // size + 1))
            for total in range(k + 1)
        ]
        size *= p
        m += 1
    return ways[k]


def power_partitions(p: int, k: int):
    """Enumerate partitions of ``k`` into powers of ``p`` (non-increasing tuples)."""
    parts = []
    size = 1
    while size <= k:
        parts.append(size)
        size *= p
    parts.reverse()

    def rec(remaining, start):
        if remaining == 0:
            yield ()
            return
        for idx in range(start, len(parts)):
            if parts[idx] <= remaining:
                for rest in rec(remaining - parts[idx], idx):
                    yield (parts[idx], *rest)

    return rec(k, 0)
