"""The degree-(p+1) polynomial w(h, alpha) and exact polynomial types.

``HPolynomial`` holds exact integer polynomials in ``h``; ``AlphaPolynomial``
holds polynomials in ``alpha`` whose coefficients are ``HPolynomial``.
"""

from __future__ import annotations

import functools
from math import comb
from typing import Iterable, Mapping

from powop.padic import require_prime
from powop.series import HLaurentSeries, SeriesPrecision, WindowError


class HPolynomial:
    """Exact integer-coefficient polynomial in ``h`` (sparse, normalized)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs}
        for k in coeffs:
            if k < 0:
                raise ValueError("HPolynomial exponents must be non-negative")
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    @classmethod
    def h(cls, power: int = 1, coeff: int = 1) -> HPolynomial:
        return cls({power: coeff})

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant(self) -> int:
        return self.coeffs.get(0, 0)

    def __getitem__(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def __add__(self, other):
        if isinstance(other, int):
            other = HPolynomial(other)
        if not isinstance(other, HPolynomial):
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return HPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return HPolynomial({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HPolynomial({k: c * other for k, c in self.coeffs.items()})
        if not isinstance(other, HPolynomial):
            return NotImplemented
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return HPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = HPolynomial(other)
        if not isinstance(other, HPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def mod(self, p: int) -> HPolynomial:
        return HPolynomial({k: c % p for k, c in self.coeffs.items()})

    def to_series(self, prec: SeriesPrecision) -> HLaurentSeries:
        if self.degree() > prec.max_exp:
            raise WindowError(f"h-degree {self.degree()} exceeds max_exp {prec.max_exp}; enlarge max_exp")
        return HLaurentSeries(prec, self.coeffs)

    def __str__(self):
        from powop.serialize import format_terms

        return format_terms(sorted(self.coeffs.items(), reverse=True))

    def __repr__(self):
        return f"HPolynomial({self})"


class AlphaPolynomial:
    """Polynomial in ``alpha`` with ``HPolynomial`` coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[HPolynomial | int]):
        cs = [c if isinstance(c, HPolynomial) else HPolynomial(c) for c in coeffs]
        while cs and not cs[-1].coeffs:
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> HPolynomial:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else HPolynomial()

    def __eq__(self, other):
        if not isinstance(other, AlphaPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return AlphaPolynomial(self[i] + other[i] for i in range(n))

    def __mul__(self, other):
        if isinstance(other, (int, HPolynomial)):
            return AlphaPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return AlphaPolynomial([])
        out = [HPolynomial() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return AlphaPolynomial(out)

    def derivative(self) -> AlphaPolynomial:
        return AlphaPolynomial(c * i for i, c in enumerate(self.coeffs) if i)

    def mod(self, p: int) -> AlphaPolynomial:
        return AlphaPolynomial(c.mod(p) for c in self.coeffs)

    def evaluate(self, a: HLaurentSeries) -> HLaurentSeries:
        """Horner evaluation at ``alpha = a`` inside the series ring of ``a``."""
        prec = a.prec
        acc = HLaurentSeries.zero(prec)
        for c in reversed(self.coeffs):
            acc = acc * a + c.to_series(prec)
        return acc

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.coeffs:
                parts.append(f"({c})" + ("" if i == 0 else "a" if i == 1 else f"a^{i}"))
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"AlphaPolynomial({self})"


def _closed_form_constant(p: int, i: int) -> int:
    # binom(p, -1) is taken as 0
    b = comb(p, i - 1) if i >= 1 else 0
    return (-1) ** (p * (p - i + 1)) * (b + (-1) ** (p + 1) * p * comb(p, i))


@functools.lru_cache(maxsize=None)
def w_coefficients(p: int) -> tuple[HPolynomial, ...]:
    """``[w_0, ..., w_{p+1}]`` from the binomial closed form, with ``w_1 = -h``."""
    require_prime(p)
    ws = [HPolynomial(_closed_form_constant(p, i)) for i in range(p + 2)]
    ws[1] = HPolynomial.h(1, -1)
    return tuple(ws)


@functools.lru_cache(maxsize=None)
def w_expand_oracle(p: int) -> tuple[HPolynomial, ...]:
    """Coefficients of w by multiplying out ``(a-p)(a+(-1)^p)^p - (h-p^2+(-1)^p) a``."""
    require_prime(p)
    sign = (-1) ** p
    poly = AlphaPolynomial([-p, 1])
    for _ in range(p):
        poly = poly * AlphaPolynomial([sign, 1])
    linear = HPolynomial.h() + (sign - p * p)
    poly = poly + AlphaPolynomial([0, -linear])
    return tuple(poly[i] for i in range(p + 2))


@functools.lru_cache(maxsize=None)
def w_polynomial(p: int) -> AlphaPolynomial:
    return AlphaPolynomial(w_coefficients(p))


def w_eval(w: AlphaPolynomial, a: HLaurentSeries) -> HLaurentSeries:
    return w.evaluate(a)


def w_derivative(w: AlphaPolynomial) -> AlphaPolynomial:
    return w.derivative()
