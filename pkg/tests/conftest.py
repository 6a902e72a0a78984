"""Shared fixtures and an independent dictionary oracle for Laurent polynomials."""
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nalyap.laurent import GRat, Series
from nalyap.specparse import bundled_spec


@pytest.fixture(scope="session")
def schrodinger():
    return bundled_spec("schrodinger")


@pytest.fixture(scope="session")
def affine():
    return bundled_spec("affine")


@pytest.fixture(scope="session")
def nonelem():
    return bundled_spec("nonelem")


@pytest.fixture(scope="session")
def zeroinfty():
    return bundled_spec("zeroinfty")


# --- oracle: {Fraction exponent: (Fraction re, Fraction im)} -----------------


def poly_mul(p, q):
    out = {}
    for e1, (a, b) in p.items():
        for e2, (c, d) in q.items():
            re, im = out.get(e1 + e2, (Fraction(0), Fraction(0)))
            out[e1 + e2] = (re + a * c - b * d, im + a * d + b * c)
    return {e: v for e, v in out.items() if v != (0, 0)}


def poly_add(p, q):
    out = dict(p)
    for e, (c, d) in q.items():
        a, b = out.get(e, (Fraction(0), Fraction(0)))
        out[e] = (a + c, b + d)
    return {e: v for e, v in out.items() if v != (0, 0)}


def poly_of(s: Series):
    """Oracle view of an exact series."""
    out = {}
    for k, c in enumerate(s.coeffs):
        if c:
            out[Fraction(s.val + k, s.ram)] = (c.re, c.im)
    return out


def series_of(p):
    """Build a Series from oracle data through monomials only."""
    s = Series.zero()
    for e, (a, b) in p.items():
        s = s + Series.monomial(GRat(a, b), e)
    return s


small_q = st.fractions(min_value=-4, max_value=4, max_denominator=4)
coeff = st.tuples(small_q, small_q)


@st.composite
def laurent_polys(draw, max_terms=5, lo=-3, hi=4, allow_zero=True):
    n = draw(st.integers(0 if allow_zero else 1, max_terms))
    exps = draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n, unique=True))
    p = {}
    for e in exps:
        c = draw(coeff.filter(lambda c: c != (0, 0)))
        p[Fraction(e)] = c
    return p


# --- acceptance report --------------------------------------------------------

ACCEPTANCE = {}  # criterion number -> (ok, one-line detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
