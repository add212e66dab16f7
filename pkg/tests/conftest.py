import pytest
from hypothesis import settings, strategies as st

from powop.padic import PadicContext
from powop.series import HLaurentSeries, SeriesPrecision

settings.register_profile("repo", derandomize=True, max_examples=150, deadline=None)
settings.load_profile("repo")

CONTEXTS = [(2, 5), (2, 20), (3, 4), (3, 12), (5, 7), (7, 3), (13, 64)]


@st.composite
def padic_triples(draw, contexts=CONTEXTS):
    p, N = draw(st.sampled_from(contexts))
    ctx = PadicContext.get(p, N)
    vals = st.integers(min_value=0, max_value=ctx.modulus - 1)
    return ctx, draw(vals), draw(vals), draw(vals)


@st.composite
def series_in(draw, prec, max_terms=8, low=-20):
    m = prec.ctx.modulus
    terms = draw(
        st.dictionaries(
            st.integers(min_value=low, max_value=prec.max_exp),
            st.integers(min_value=0, max_value=m - 1),
            max_size=max_terms,
        )
    )
    return HLaurentSeries(prec, terms)


@st.composite
def series_triples(draw):
    p, N = draw(st.sampled_from([(2, 8), (3, 6), (5, 4), (13, 30)]))
    prec = SeriesPrecision.default(p, N, max_exp=40)
    return prec, draw(series_in(prec)), draw(series_in(prec)), draw(series_in(prec))


@pytest.fixture
def ctx23():
    return PadicContext.get(2, 5)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
