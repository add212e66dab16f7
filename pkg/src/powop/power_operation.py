"""Total power operation psi^p on E^0 (as an alpha-polynomial) and on F^0.

``psi_E`` assembles ``alpha + sum_i alpha^i sum_tau w_{tau+1} d_{i,tau}`` with
exact integers.  ``psi_F`` specializes it at the root alpha* of w.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator

from powop.padic import require_prime
from powop.series import HLaurentSeries, SeriesPrecision
from powop.solver import solve_alpha
from powop.weierstrass import AlphaPolynomial, HPolynomial, w_coefficients


@dataclass(frozen=True)
class CompositionSpec:
    """Compositions of ``total`` into ``parts`` parts in ``[lower, upper]``, last part >= ``last_min``."""

    total: int
    parts: int
    upper: int
    last_min: int
    lower: int = 1

    def __post_init__(self):
        if self.parts < 1:
            raise ValueError("parts must be >= 1")

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return compositions(self)


def compositions(spec: CompositionSpec) -> Iterator[tuple[int, ...]]:
    """Backtracking enumeration in lexicographic order."""
    lo, hi, last_min = spec.lower, spec.upper, spec.last_min
    prefix: list[int] = []

    def rec(remaining: int, slots: int):
        if slots == 1:
            if max(lo, last_min) <= remaining <= hi:
                yield (*prefix, remaining)
            return
        # the remaining slots - 1 parts need at least lo each, the last one max(lo, last_min)
        reserve_min = lo * (slots - 2) + max(lo, last_min)
        reserve_max = hi * (slots - 1)
        for m in range(lo, hi + 1):
            rest = remaining - m
            if rest < reserve_min:
                break
            if rest > reserve_max:
                continue
            prefix.append(m)
            yield from rec(rest, slots - 1)
            prefix.pop()

    return rec(spec.total, spec.parts)


def _check_indices(p: int, i: int, tau: int):
    require_prime(p)
    if not 0 <= i <= p:
        raise ValueError(f"i must lie in 0..{p}, got {i}")
    if not 1 <= tau <= p:
        raise ValueError(f"tau must lie in 1..{p}, got {tau}")


@functools.lru_cache(maxsize=None)
def d_coefficient(p: int, i: int, tau: int) -> HPolynomial:
    """``d_{i,tau}`` by explicit enumeration of the constrained compositions."""
    _check_indices(p, i, tau)
    w = w_coefficients(p)
    w0 = w[0].constant()
    total = HPolynomial()
    for n in range(tau):
        inner = HPolynomial()
        for comp in CompositionSpec(total=tau + i, parts=tau - n, upper=p + 1, last_min=i + 1):
            term = HPolynomial(1)
            for m in comp:
                term = term * w[m]
            inner = inner + term
        total = total + inner * ((-1) ** (tau - n) * w0**n)
    return total


@functools.lru_cache(maxsize=None)
def d_coefficient_oracle(p: int, i: int, tau: int) -> HPolynomial:
    """``d_{i,tau}`` by dynamic programming over (part count, running total)."""
    _check_indices(p, i, tau)
    w = w_coefficients(p)
    w0 = w[0].constant()
    target = tau + i
    # free[k][s]: sum over k unconstrained parts in 1..p+1 with sum s of the w-products
    free = [[HPolynomial() for _ in range(target + 1)] for _ in range(tau + 1)]
    free[0][0] = HPolynomial(1)
    for k in range(1, tau + 1):
        for s in range(target + 1):
            acc = HPolynomial()
            for m in range(1, min(p + 1, s) + 1):
                if free[k - 1][s - m].coeffs:
                    acc = acc + free[k - 1][s - m] * w[m]
            free[k][s] = acc
    result = HPolynomial()
    for n in range(tau):
        parts = tau - n
        inner = HPolynomial()
        for last in range(i + 1, p + 2):
            if last <= target:
                inner = inner + free[parts - 1][target - last] * w[last]
        result = result + inner * ((-1) ** (tau - n) * w0**n)
    return result


def inner_sums(p: int, d=d_coefficient) -> list[HPolynomial]:
    """``[sum_tau w_{tau+1} d_{i,tau} for i in 0..p]`` without the standalone alpha."""
    w = w_coefficients(p)
    return [
        sum((w[tau + 1] * d(p, i, tau) for tau in range(1, p + 1)), HPolynomial())
        for i in range(p + 1)
    ]


@functools.lru_cache(maxsize=None)
def psi_E(p: int) -> AlphaPolynomial:
    """Image of ``h`` under psi^p_E as a polynomial in alpha.

    The standalone ``+alpha`` is folded into the alpha^1 coefficient.
    """
    require_prime(p)
    coeffs = inner_sums(p)
    coeffs[1] = coeffs[1] + 1
    return AlphaPolynomial(coeffs)


def specialize_alpha(psi: AlphaPolynomial, alpha_star: HLaurentSeries) -> HLaurentSeries:
    """Apply ``t: alpha -> alpha*`` to an alpha-polynomial (Horner order)."""
    return psi.evaluate(alpha_star)


def assemble_termwise(p: int, alpha_star: HLaurentSeries) -> HLaurentSeries:
    """``alpha* + sum_i (alpha*)^i sum_tau w_{tau+1} d_{i,tau}`` in its printed term order,
    using the enumeration-free DP coefficients."""
    prec = alpha_star.prec
    total = alpha_star
    power = HLaurentSeries.one(prec)
    for i, c in enumerate(inner_sums(p, d_coefficient_oracle)):
        if i:
            power = power * alpha_star
        total = total + c.to_series(prec) * power
    return total


def trusted_floor(prec: SeriesPrecision, p: int) -> int | None:
    """Exponent above which psi_F is exact under ``prec`` (``None``: everywhere).

    Missing alpha* terms below an explicit floor are multiplied by h-powers up
    to ``h^p`` during assembly.
    """
    if prec.floor is None:
        return None
    return prec.floor + p - 1


def _above(series: HLaurentSeries, floor: int | None) -> HLaurentSeries:
    if floor is None:
        return series
    return HLaurentSeries(series.prec, {k: c for k, c in series.residues().items() if k > floor})


@dataclass(frozen=True)
class PsiResult:
    series: HLaurentSeries
    alpha: object  # SolveReport
    termwise_agrees: bool


def psi_F_report(
    p: int, N: int, window: SeriesPrecision | None = None, method: str = "fixed_point"
) -> PsiResult:
    report = solve_alpha(p, N, method, window)
    cut = trusted_floor(report.alpha_star.prec, p)
    series = _above(specialize_alpha(psi_E(p), report.alpha_star), cut)
    check = _above(assemble_termwise(p, report.alpha_star), cut)
    return PsiResult(series, report, series == check)


def psi_F(p: int, N: int, window: SeriesPrecision | None = None) -> HLaurentSeries:
    """psi^p_F(h) in F^0, correct modulo ``p**N`` on the retained window."""
    result = psi_F_report(p, N, window)
    if not result.termwise_agrees:
        raise ArithmeticError(f"psi_F assembly orders disagree for p={p}, N={N}")
    return result.series


@dataclass(frozen=True)
class FrobeniusCheck:
    ok: bool
    exponent: int | None = None
    coefficient: int | None = None

    def __bool__(self):
        return self.ok


def frobenius_check(psi: HLaurentSeries, p: int) -> FrobeniusCheck:
    """Is ``psi`` congruent to exactly ``h^p`` modulo ``p``?

    On failure the witness is the highest offending exponent and its residue mod p.
    """
    reduced = psi.mod_p()
    expected = {p: 1}
    if reduced == expected:
        return FrobeniusCheck(True)
    bad = [k for k in set(reduced) | set(expected) if reduced.get(k, 0) != expected.get(k, 0)]
    k = max(bad)
    return FrobeniusCheck(False, k, reduced.get(k, 0))


def window_stable(p: int, N: int, window: SeriesPrecision, floor: int | None) -> bool:
    """Reported coefficients (exponents above ``floor``) survive a wider window."""
    base = psi_F(p, N, window)
    wide = psi_F(p, N, window.widened(4, 8))
    keep = lambda s: {k: c for k, c in s.residues().items() if (floor is None or k > floor) and k <= window.max_exp}
    return keep(base) == keep(wide)
