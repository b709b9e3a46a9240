from fractions import Fraction

import pytest
from hypothesis import strategies as st

from monosym.partitions import partitions
from monosym.polycore import Poly
from monosym.qlinalg import INCONSISTENT, QMatrix, solve
from monosym.symfunc import power_sum

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def x(n, k):
    """1-based variable helper for readable tests."""
    return Poly.var(n, k - 1)


def brute_repr(f: Poly) -> dict:
    """Coefficients of f on power-sum products p_mu, by a dense linear solve.

    Independent of the leading-term / Newton route used by the library.
    """
    n = f.n_vars
    d = f.degree()
    mus = [mu for mu in partitions(d) if all(k <= n for k in mu)]
    cols = []
    for mu in mus:
        p = Poly.const(n, 1)
        for k in mu:
            p = p * power_sum(n, k)
        cols.append(p)
    keys = sorted({e for c in cols for e in c.terms} | set(f.terms))
    m = QMatrix.from_columns([[c.coeff(k) for k in keys] for c in cols], rows=len(keys))
    sol = solve(m, [f.coeff(k) for k in keys])
    assert sol is not INCONSISTENT
    return {tuple(mu): c for mu, c in zip(mus, sol) if c}


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, n=3, max_deg=3, max_terms=5):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n)))
        terms[e] = draw(coefficients)
    return Poly(n, terms)


def rational_points(n):
    return st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=n, max_size=n)


F = Fraction
