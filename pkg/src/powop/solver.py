"""The unique root alpha* of w(h, alpha) in W((h))^_p.

Two independent routes:

* ``solve_alpha_fixed_point`` iterates ``alpha <- h^-1 (w_0 + sum_{i>=2} w_i alpha^i)``
  from ``alpha = 0``.  It only ever divides by the monomial ``h`` and is the
  authoritative method.
* ``solve_alpha_newton`` runs Hensel/Newton iteration ``alpha <- alpha - w/w'``
  using windowed unit inversion; it serves as a cross-check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from powop.padic import require_prime
from powop.series import HLaurentSeries, SeriesPrecision
from powop.weierstrass import AlphaPolynomial, w_polynomial

log = logging.getLogger(__name__)


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SolveReport:
    alpha_star: HLaurentSeries
    iterations: int
    residual_valuation: int
    method: str
    # valuation of successive differences (fixed point) or residuals (newton)
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def verified(self) -> bool:
        return self.residual_valuation >= self.alpha_star.ctx.N


def _precision(p: int, N: int, window: SeriesPrecision | None) -> SeriesPrecision:
    require_prime(p)
    if not isinstance(N, int) or N < 2:
        raise ValueError(f"precision N must be an integer >= 2, got {N!r}")
    if window is None:
        return SeriesPrecision.default(p, N)
    if window.p != p or window.N != N:
        raise ValueError(f"window context {window.ctx} does not match p={p}, N={N}")
    return window


def residual(alpha: HLaurentSeries, w: AlphaPolynomial | None = None) -> HLaurentSeries:
    w = w_polynomial(alpha.ctx.p) if w is None else w
    return w.evaluate(alpha)


def residual_valuation(alpha: HLaurentSeries, w: AlphaPolynomial | None = None) -> int:
    """Valuation of w(h, alpha) over the exponents the window determines exactly.

    Under an explicit floor the missing tail of alpha is lifted by the ``-h alpha``
    term, so the residual is only meaningful from ``floor + 1`` upward.
    """
    return _windowed_valuation(residual(alpha, w))


def _windowed_valuation(r: HLaurentSeries) -> int:
    floor = r.prec.floor
    if floor is not None:
        r = HLaurentSeries(r.prec, {k: c for k, c in r.residues().items() if k > floor})
    return r.valuation()


def solve_alpha_fixed_point(
    p: int, N: int, window: SeriesPrecision | None = None, max_iterations: int | None = None
) -> SolveReport:
    prec = _precision(p, N, window)
    w = w_polynomial(p)
    # h^-1 (w_0 + w_2 a^2 + ... + w_{p+1} a^{p+1}), Horner form with the
    # linear term removed
    tail = AlphaPolynomial([w[0], 0, *w.coeffs[2:]])
    budget = 4 * N if max_iterations is None else max_iterations
    alpha = HLaurentSeries.zero(prec)
    history = []
    for step in range(1, budget + 1):
        nxt = tail.evaluate(alpha).monomial_div(1)
        diff = nxt - alpha
        alpha = nxt
        if diff.is_zero():
            break
        history.append(diff.valuation())
    else:
        raise ConvergenceError(f"fixed-point iteration did not stabilize in {budget} steps (p={p}, N={N})")
    res = residual_valuation(alpha, w)
    log.debug("fixed point p=%d N=%d: %d steps, residual valuation %d", p, N, step, res)
    if res < N:
        raise ConvergenceError(f"fixed point has residual valuation {res} < {N}")
    return SolveReport(alpha, step, res, "fixed_point", tuple(history))


def solve_alpha_newton(
    p: int, N: int, window: SeriesPrecision | None = None, max_iterations: int | None = None
) -> SolveReport:
    prec = _precision(p, N, window)
    if prec.max_exp < p + 1:
        raise ValueError(f"Newton mode needs max_exp >= p+1 = {p + 1}, got {prec.max_exp}")
    w = w_polynomial(p)
    dw = w.derivative()
    budget = 2 * N.bit_length() + 4 if max_iterations is None else max_iterations
    alpha = HLaurentSeries.zero(prec)
    history = []
    for step in range(1, budget + 1):
        r = w.evaluate(alpha)
        v = _windowed_valuation(r)
        history.append(v)
        if v >= N:
            break
        alpha = alpha - r * dw.evaluate(alpha).invert_unit()
    else:
        raise ConvergenceError(f"Newton iteration did not converge in {budget} steps (p={p}, N={N})")
    return SolveReport(alpha, step - 1, history[-1], "newton", tuple(history))


def eq12_closed_forms(p: int) -> tuple[int, int]:
    """Closed forms of the ``h^-1`` and ``h^-3`` coefficients of alpha*."""
    require_prime(p)
    sign = (-1) ** (p + 1)
    c1 = sign * p
    c3 = (2 + sign * p * (p - 1)) * p**3 // 2
    return c1, c3


def solve_alpha(p: int, N: int, method: str = "fixed_point", window: SeriesPrecision | None = None) -> SolveReport:
    if method == "fixed_point":
        return solve_alpha_fixed_point(p, N, window)
    if method == "newton":
        return solve_alpha_newton(p, N, window)
    raise ValueError(f"unknown method {method!r}")
