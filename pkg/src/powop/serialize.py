"""Text and JSON forms of series and polynomials."""

from __future__ import annotations

import json

from powop.padic import PadicContext
from powop.series import HLaurentSeries, SeriesPrecision


def _monomial(exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return "h"
    return f"h^{exp}"


def format_terms(terms) -> str:
    """Render ``(exponent, coefficient)`` pairs, already in display order."""
    out = []
    for exp, c in terms:
        if c == 0:
            continue
        mono = _monomial(exp)
        mag = abs(c)
        body = mono if (mag == 1 and mono) else f"{mag}{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out) or "0"


def visible_terms(series: HLaurentSeries, floor: int | None = None) -> list[tuple[int, int]]:
    """Signed terms by descending exponent, keeping exponents above ``floor``."""
    return [(k, c) for k, c in series.signed_terms() if floor is None or k > floor]


def format_series(series: HLaurentSeries, floor: int | None = None) -> str:
    text = format_terms(visible_terms(series, floor))
    if floor is not None:
        text += f" + O(h^{floor})"
    return text


def series_to_dict(series: HLaurentSeries, floor: int | None = None) -> dict:
    return {
        "p": series.ctx.p,
        "padic_precision": series.ctx.N,
        "terms": [{"exp": k, "coeff": str(c)} for k, c in visible_terms(series, floor)],
        "truncation_floor": floor,
    }


def series_from_dict(data: dict, max_exp: int | None = None) -> tuple[HLaurentSeries, int | None]:
    p, N = int(data["p"]), int(data["padic_precision"])
    terms = {int(t["exp"]): int(t["coeff"]) for t in data["terms"]}
    top = max(terms, default=0)
    cap = max(2 * p, top) if max_exp is None else max_exp
    prec = SeriesPrecision(PadicContext.get(p, N), cap)
    return HLaurentSeries(prec, terms), data.get("truncation_floor")


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def series_to_json(series: HLaurentSeries, floor: int | None = None) -> str:
    return dumps(series_to_dict(series, floor))


def series_from_json(text: str) -> tuple[HLaurentSeries, int | None]:
    return series_from_dict(json.loads(text))
