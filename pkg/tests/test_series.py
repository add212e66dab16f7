import pytest
from hypothesis import given, strategies as st

from powop.padic import NotInvertibleError, PadicContext
from powop.series import (
    HLaurentSeries,
    SeriesPrecision,
    monomial_div,
    reduce,
    series_add,
    series_invert_unit,
    series_mul,
)

from conftest import series_in, series_triples


def S(p, N, terms, max_exp=None, floor=None):
    return HLaurentSeries(SeriesPrecision.default(p, N, max_exp, floor), terms)


def test_add_examples():
    assert series_add(S(2, 16, {-1: -2}), S(2, 16, {-1: 2})).is_zero()
    total = series_add(S(2, 16, {2: 1}), S(2, 16, {-1: -6}))
    assert total.signed_terms() == [(2, 1), (-1, -6)]
    assert series_add(S(3, 2, {1: 8}), S(3, 2, {1: 1})).is_zero()


def test_mul_examples():
    x = S(2, 16, {-1: -2})
    assert (x * x).signed_terms() == [(-2, 4)]
    y = S(2, 16, {-1: -2, -4: -8})
    # (-2/h - 8/h^4)^2 = 4/h^2 + 2*16/h^5 + 64/h^8
    assert series_mul(y, y).signed_terms() == [(-2, 4), (-5, 32), (-8, 64)]
    assert y * HLaurentSeries.one(y.prec) == y


def test_mul_respects_max_exp():
    x = S(3, 5, {4: 1}, max_exp=6)
    assert (x * x).is_zero()
    assert (x * S(3, 5, {2: 1, -1: 1}, max_exp=6)).signed_terms() == [(6, 1), (3, 1)]


def test_monomial_div_examples():
    assert monomial_div(S(3, 8, {0: 3}), 1).signed_terms() == [(-1, 3)]
    assert monomial_div(S(3, 8, {2: 1, -1: -6}), 2).signed_terms() == [(0, 1), (-3, -6)]
    assert monomial_div(S(3, 8, {}), 5).is_zero()


def test_reduce_examples():
    assert reduce(S(2, 3, {-9: 8})).is_zero()
    x = S(3, 2, {5: 9, 1: 1})
    assert reduce(x).signed_terms() == [(1, 1)]
    assert reduce(reduce(x)) == reduce(x)


def test_invert_examples():
    prec = SeriesPrecision.default(3, 4)
    h = HLaurentSeries.monomial(prec, 1)
    assert h.invert_unit() == HLaurentSeries.monomial(prec, -1)
    inv = series_invert_unit(h + 3)
    assert inv.signed_terms() == [(-1, 1), (-2, -3), (-3, 9), (-4, -27)]
    assert inv * (h + 3) == 1
    with pytest.raises(NotInvertibleError):
        S(2, 8, {1: 2}).invert_unit()


def _reliable(x, prod):
    """Restrict a product to exponents not touched by terms beyond max_exp."""
    # coefficient e of the product reads inverse coefficients up to e - bottom(x)
    cut = x.prec.max_exp + x.bottom()
    return {k: c for k, c in prod.residues().items() if k <= cut}


def test_invert_with_upward_tail():
    # 1 + h + 2/h at p=2: the unit part has a positive-exponent tail
    prec = SeriesPrecision.default(2, 10, max_exp=12)
    x = HLaurentSeries(prec, {0: 1, 1: 1, -1: 2})
    inv = x.invert_unit()
    assert _reliable(x, x * inv) == {0: 1}
    wide = HLaurentSeries(prec.widened(6), x.residues()).invert_unit()
    assert {k: c for k, c in wide.residues().items() if k <= prec.max_exp} == inv.residues()


def test_floor_policy():
    prec = SeriesPrecision.default(2, 10, floor=-5)
    x = HLaurentSeries(prec, {-1: 2, -6: 4})
    assert x.support() == [-1]
    assert (x * x * x).support() == [-3]
    with pytest.raises(ValueError):
        SeriesPrecision.default(2, 10, floor=0)


def test_context_mismatch():
    with pytest.raises(ValueError):
        S(2, 8, {0: 1}) + S(3, 8, {0: 1})


def test_display():
    x = S(3, 32, {3: 1, 2: -6, 1: -96, 0: 594, -1: -1158, -2: 14580, -3: 5})
    from powop.serialize import format_series

    assert format_series(x, -3) == "h^3 - 6h^2 - 96h + 594 - 1158h^-1 + 14580h^-2 + O(h^-3)"


@given(series_triples())
def test_ring_axioms(t):
    prec, x, y, z = t
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x * y == y * x
    assert (x - x).is_zero()
    assert x * HLaurentSeries.one(prec) == x
    # associativity and distributivity hold exactly only away from the max_exp cap
    low = lambda s: HLaurentSeries(prec, {k: c for k, c in s.residues().items() if k <= 0})
    a, b, c = low(x), low(y), low(z)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series_triples())
def test_reduce_idempotent(t):
    _, x, _, _ = t
    assert reduce(reduce(x)) == reduce(x)


@given(series_triples(), st.integers(min_value=1, max_value=5))
def test_mul_lifting_coherence(t, k):
    prec, x, y, _ = t
    hi = prec.at_precision(prec.N + k)
    xh, yh = HLaurentSeries(hi, x.residues()), HLaurentSeries(hi, y.residues())
    assert (xh * yh).at_precision(prec.N) == x * y
    assert (xh + yh).at_precision(prec.N) == x + y


@given(series_triples(), st.integers(min_value=0, max_value=10))
def test_monomial_div_inverts_shift(t, k):
    prec, x, _, _ = t
    top = x.top() if x else 0
    if k <= prec.max_exp - top:
        hk = HLaurentSeries.monomial(prec, k)
        assert monomial_div(series_mul(x, hk), k) == x


@given(st.data())
def test_invert_unit_property(data):
    p, N = data.draw(st.sampled_from([(2, 8), (3, 5), (5, 4)]))
    prec = SeriesPrecision.default(p, N, max_exp=10)
    lead = data.draw(st.integers(min_value=-3, max_value=3))
    unit = data.draw(st.integers(min_value=1, max_value=p - 1))
    terms = {lead: unit}
    # lower terms carry positive valuation, higher terms are arbitrary
    for k in data.draw(st.lists(st.integers(min_value=lead - 6, max_value=lead - 1), max_size=3)):
        terms[k] = p * data.draw(st.integers(min_value=1, max_value=p**N))
    for k in data.draw(st.lists(st.integers(min_value=lead + 1, max_value=6), max_size=3)):
        terms[k] = data.draw(st.integers(min_value=0, max_value=p**N))
    x = HLaurentSeries(prec, terms)
    inv = x.invert_unit()
    assert _reliable(x, x * inv) == {0: 1}
    wide = HLaurentSeries(prec.widened(6), terms).invert_unit()
    assert {k: c for k, c in wide.residues().items() if k <= prec.max_exp} == inv.residues()
