"""Fixed-precision p-adic integers.

Elements are residues modulo ``p**N`` stored as canonical representatives in
``[0, p**N)``.  A signed minimal representative is produced only for display.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass


class PrecisionError(ArithmeticError):
    """Raised when an operation is impossible at the working precision."""


class NotInvertibleError(PrecisionError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (adequate for small primes)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


def valuation(n: int, p: int, cap: int) -> int:
    """Largest ``v <= cap`` with ``p**v | n``; ``cap`` for ``n == 0``."""
    if n == 0:
        return cap
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def signed_residue(r: int, modulus: int) -> int:
    """Minimal representative of ``r`` in ``(-modulus/2, modulus/2]``."""
    r %= modulus
    return r - modulus if 2 * r > modulus else r


@functools.lru_cache(maxsize=None)
def _context(p: int, N: int) -> PadicContext:
    return PadicContext(p, N)


@dataclass(frozen=True)
class PadicContext:
    p: int
    N: int

    def __post_init__(self):
        require_prime(self.p)
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f"precision must be an integer >= 1, got {self.N!r}")

    @classmethod
    def get(cls, p: int, N: int) -> PadicContext:
        return _context(p, N)

    @functools.cached_property
    def modulus(self) -> int:
        return self.p**self.N

    def __call__(self, value: int) -> PadicInt:
        return PadicInt(self, value)

    def lower(self, k: int = 1) -> PadicContext:
        return PadicContext.get(self.p, self.N - k)

    def __repr__(self):
        return f"PadicContext(p={self.p}, N={self.N})"


class PadicInt:
    """Residue of a p-adic integer modulo ``p**N``."""

    __slots__ = ("ctx", "residue")

    def __init__(self, ctx: PadicContext, value: int):
        self.ctx = ctx
        self.residue = value % ctx.modulus

    def _check(self, other) -> PadicInt:
        if isinstance(other, int):
            return PadicInt(self.ctx, other)
        if not isinstance(other, PadicInt):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.ctx, self.residue + other.residue)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.ctx, self.residue - other.residue)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return PadicInt(self.ctx, -self.residue)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return PadicInt(self.ctx, self.residue * other.residue)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.ctx.modulus
        if isinstance(other, PadicInt):
            return self.ctx == other.ctx and self.residue == other.residue
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.residue))

    def __bool__(self):
        return self.residue != 0

    def valuation(self) -> int:
        return valuation(self.residue, self.ctx.p, self.ctx.N)

    def is_unit(self) -> bool:
        return self.residue % self.ctx.p != 0

    def invert(self) -> PadicInt:
        if not self.is_unit():
            raise NotInvertibleError(f"{self.residue} is not a unit mod {self.ctx.p}^{self.ctx.N}")
        return PadicInt(self.ctx, pow(self.residue, -1, self.ctx.modulus))

    def shift_down(self) -> PadicInt:
        """Exact division by ``p``; the result lives at precision ``N - 1``."""
        if self.ctx.N < 2:
            raise PrecisionError("cannot divide by p at precision 1")
        if self.residue % self.ctx.p:
            raise PrecisionError("division by p requires valuation >= 1")
        return PadicInt(self.ctx.lower(), self.residue // self.ctx.p)

    def reduce(self, N: int) -> PadicInt:
        """Image at the lower precision ``N``."""
        if N > self.ctx.N:
            raise PrecisionError("cannot raise precision by reduction")
        return PadicInt(PadicContext.get(self.ctx.p, N), self.residue)

    def signed(self) -> int:
        return signed_residue(self.residue, self.ctx.modulus)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PadicInt({self.signed()} mod {self.ctx.p}^{self.ctx.N})"


def p_add(x: PadicInt, y: PadicInt) -> PadicInt:
    return x + y


def p_mul(x: PadicInt, y: PadicInt) -> PadicInt:
    return x * y


def p_valuation(x: PadicInt) -> int:
    return x.valuation()


def p_invert(x: PadicInt) -> PadicInt:
    return x.invert()
