"""Finite-support elements of the completed Laurent ring Z_p((h))^_p mod p^N.

A series is a sparse table ``{exponent: residue}`` with every residue in
``[0, p**N)`` and nonzero.  Positive support is capped at ``max_exp``.  On the
negative side the default policy is self-limiting: coefficients of deep
negative powers gain p-adic valuation and vanish mod ``p**N`` on their own.
An explicit floor may be set instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from powop.kernels import convolve_mod
from powop.padic import NotInvertibleError, PadicContext, PadicInt, signed_residue, valuation


class WindowError(ArithmeticError):
    """The retained exponent window is too small for the requested operation."""


@dataclass(frozen=True)
class SeriesPrecision:
    ctx: PadicContext
    max_exp: int
    floor: int | None = None

    def __post_init__(self):
        if self.floor is not None and self.floor > -1:
            raise ValueError(f"explicit exponent floor must be <= -1, got {self.floor}")

    @classmethod
    def default(cls, p: int, N: int, max_exp: int | None = None, floor: int | None = None):
        return cls(PadicContext.get(p, N), 2 * p if max_exp is None else max_exp, floor)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def N(self) -> int:
        return self.ctx.N

    @property
    def min_exp_policy(self) -> str | int:
        return "self-limiting" if self.floor is None else self.floor

    def widened(self, extra_top: int = 4, extra_bottom: int = 8) -> SeriesPrecision:
        floor = None if self.floor is None else self.floor - extra_bottom
        return SeriesPrecision(self.ctx, self.max_exp + extra_top, floor)

    def at_precision(self, N: int) -> SeriesPrecision:
        return SeriesPrecision(PadicContext.get(self.p, N), self.max_exp, self.floor)

    def keeps(self, exp: int) -> bool:
        return exp <= self.max_exp and (self.floor is None or exp >= self.floor)

    def join(self, other: SeriesPrecision) -> SeriesPrecision:
        if other is self:
            return self
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
        if other == self:
            return self
        floors = [f for f in (self.floor, other.floor) if f is not None]
        return SeriesPrecision(self.ctx, min(self.max_exp, other.max_exp), max(floors) if floors else None)


class HLaurentSeries:
    """Truncated element of W((h))^_p with coefficients in Z_p."""

    __slots__ = ("prec", "_terms")

    def __init__(self, prec: SeriesPrecision, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        self.prec = prec
        m = prec.ctx.modulus
        items = terms.items() if isinstance(terms, Mapping) else terms
        table = {}
        for k, c in items:
            c = int(c) % m
            if c and prec.keeps(k):
                table[k] = c
        self._terms = table

    @classmethod
    def _raw(cls, prec: SeriesPrecision, table: dict) -> HLaurentSeries:
        # table is already reduced and windowed
        obj = cls.__new__(cls)
        obj.prec = prec
        obj._terms = table
        return obj

    @classmethod
    def zero(cls, prec):
        return cls._raw(prec, {})

    @classmethod
    def one(cls, prec):
        return cls(prec, {0: 1})

    @classmethod
    def monomial(cls, prec, exp: int, coeff: int = 1):
        return cls(prec, {exp: coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def ctx(self) -> PadicContext:
        return self.prec.ctx

    @property
    def terms(self) -> dict[int, PadicInt]:
        return {k: PadicInt(self.ctx, c) for k, c in self._terms.items()}

    def residues(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exp: int) -> PadicInt:
        return PadicInt(self.ctx, self._terms.get(exp, 0))

    def signed_coeff(self, exp: int) -> int:
        return signed_residue(self._terms.get(exp, 0), self.ctx.modulus)

    def signed_terms(self) -> list[tuple[int, int]]:
        """``(exponent, signed coefficient)`` pairs by descending exponent."""
        m = self.ctx.modulus
        return [(k, signed_residue(self._terms[k], m)) for k in sorted(self._terms, reverse=True)]

    def support(self) -> list[int]:
        return sorted(self._terms)

    def top(self) -> int | None:
        return max(self._terms) if self._terms else None

    def bottom(self) -> int | None:
        return min(self._terms) if self._terms else None

    def valuation(self) -> int:
        """Minimum p-adic valuation over all coefficients (``N`` for zero)."""
        p, N = self.ctx.p, self.ctx.N
        return min((valuation(c, p, N) for c in self._terms.values()), default=N)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, HLaurentSeries):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, int):
            return self == HLaurentSeries(self.prec, {0: other})
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self._terms.items())))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> HLaurentSeries:
        if isinstance(other, HLaurentSeries):
            return other
        if isinstance(other, PadicInt):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return HLaurentSeries(self.prec, {0: other.residue})
        if isinstance(other, int):
            return HLaurentSeries(self.prec, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = self.prec.join(other.prec)
        m = prec.ctx.modulus
        table = dict(self._terms)
        for k, c in other._terms.items():
            s = (table.get(k, 0) + c) % m
            if s:
                table[k] = s
            else:
                table.pop(k, None)
        if prec is not self.prec:
            table = {k: c for k, c in table.items() if prec.keeps(k)}
        return HLaurentSeries._raw(prec, table)

    __radd__ = __add__

    def __neg__(self):
        m = self.ctx.modulus
        return HLaurentSeries._raw(self.prec, {k: m - c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> HLaurentSeries:
        m = self.ctx.modulus
        c %= m
        table = {}
        for k, v in self._terms.items():
            r = v * c % m
            if r:
                table[k] = r
        return HLaurentSeries._raw(self.prec, table)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = self.prec.join(other.prec)
        if not self._terms or not other._terms:
            return HLaurentSeries._raw(prec, {})
        lo_a, lo_b = min(self._terms), min(other._terms)
        hi_a, hi_b = max(self._terms), max(other._terms)
        # exponents of the product above max_exp are discarded anyway
        hi_a = min(hi_a, prec.max_exp - lo_b)
        hi_b = min(hi_b, prec.max_exp - lo_a)
        if hi_a < lo_a or hi_b < lo_b:
            return HLaurentSeries._raw(prec, {})
        a = _dense(self._terms, lo_a, hi_a)
        b = _dense(other._terms, lo_b, hi_b)
        out = convolve_mod(a, b, prec.ctx.modulus)
        base = lo_a + lo_b
        floor = prec.floor
        table = {}
        for i, c in enumerate(out):
            if c:
                k = base + i
                if k <= prec.max_exp and (floor is None or k >= floor):
                    table[k] = c
        return HLaurentSeries._raw(prec, table)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = HLaurentSeries.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> HLaurentSeries:
        """Multiply by ``h**k``."""
        return HLaurentSeries(self.prec, {e + k: c for e, c in self._terms.items()})

    def monomial_div(self, k: int) -> HLaurentSeries:
        """Exact division by ``h**k``."""
        if k < 0:
            raise ValueError("monomial_div expects k >= 0")
        return self.shift(-k)

    def reduce(self) -> HLaurentSeries:
        """Normalize: drop zero residues and enforce the exponent window."""
        return HLaurentSeries(self.prec, self._terms)

    def at_precision(self, N: int) -> HLaurentSeries:
        """Image under reduction to ``p**N`` (``N`` at most the current precision)."""
        if N > self.ctx.N:
            raise ValueError("cannot raise precision by reduction")
        return HLaurentSeries(self.prec.at_precision(N), self._terms)

    def with_precision(self, prec: SeriesPrecision) -> HLaurentSeries:
        """Re-window into ``prec`` (same prime; precision may only drop)."""
        if prec.p != self.ctx.p or prec.N > self.ctx.N:
            raise ValueError(f"cannot move series from {self.ctx} to {prec.ctx}")
        return HLaurentSeries(prec, self._terms)

    def mod_p(self) -> dict[int, int]:
        """Reduction modulo ``p`` as ``{exponent: residue in [1, p)}``."""
        p = self.ctx.p
        return {k: c % p for k, c in sorted(self._terms.items()) if c % p}

    def invert_unit(self, max_iterations: int | None = None) -> HLaurentSeries:
        """Inverse of a unit ``c h^m (1 + eps)``.

        ``c h^m`` is the lowest-exponent term with unit coefficient; every
        term of ``eps`` then has positive h-exponent or positive valuation.
        The result is exact on the retained window.
        """
        p, N = self.ctx.p, self.ctx.N
        m = self.ctx.modulus
        units = [k for k, c in self._terms.items() if c % p]
        if not units:
            raise NotInvertibleError("series is not a unit: no coefficient is a p-adic unit")
        lead = min(units)
        c_inv = pow(self._terms[lead], -1, m)
        eps = {k - lead: c * c_inv % m for k, c in self._terms.items()}
        eps[0] = (eps[0] - 1) % m
        eps = {k: c for k, c in eps.items() if c}
        has_up = any(k > 0 for k in eps)
        down = [(k, valuation(c, p, N)) for k, c in eps.items() if k < 0]
        margin = 0
        if has_up and down:
            # a dropped term above the cap re-enters the window only by
            # descending, and every descent of d costs at least rate*d valuation
            rate = min(v / -k for k, v in down)
            margin = int(N / rate) + 1
        work = SeriesPrecision(self.ctx, self.prec.max_exp + lead + margin, None)
        neg_eps = HLaurentSeries(work, {k: -c for k, c in eps.items()})
        one = HLaurentSeries.one(work)
        y = one
        budget = max_iterations or 4 * (N + 1) * (self.prec.max_exp - (self.bottom() or 0) + margin + 2)
        for _ in range(budget):
            nxt = one + neg_eps * y
            if nxt == y:
                break
            y = nxt
        else:
            raise WindowError(
                f"unit inversion did not stabilize within {budget} steps; enlarge max_exp"
            )
        return HLaurentSeries(self.prec, {k - lead: c * c_inv for k, c in y._terms.items()})

    # -- display --------------------------------------------------------------

    def __repr__(self):
        from powop.serialize import format_series

        return f"HLaurentSeries({format_series(self)} mod {self.ctx.p}^{self.ctx.N})"


def _dense(table: dict, lo: int, hi: int) -> list:
    out = [0] * (hi - lo + 1)
    for k, c in table.items():
        if lo <= k <= hi:
            out[k - lo] = c
    return out


def series_add(x: HLaurentSeries, y: HLaurentSeries) -> HLaurentSeries:
    return x + y


def series_mul(x: HLaurentSeries, y: HLaurentSeries) -> HLaurentSeries:
    return x * y


def monomial_div(x: HLaurentSeries, k: int) -> HLaurentSeries:
    return x.monomial_div(k)


def series_invert_unit(x: HLaurentSeries) -> HLaurentSeries:
    return x.invert_unit()


def reduce(x: HLaurentSeries) -> HLaurentSeries:
    return x.reduce()
