from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laurent_polys, series_of
from nalyap.laurent import GRat, Series, t
from nalyap.specparse import (
    DetNotOne,
    LaurentSyntaxError,
    NonMonomialDivision,
    SpecError,
    bundled_spec,
    bundled_spec_path,
    format_series,
    parse_laurent,
    parse_spec,
    spec_hash,
)
from nalyap.walks import WeightsNotNormalized


@pytest.mark.parametrize(
    "src, expect",
    [
        ("2/t - t", 2 / t - t),
        ("(1+t)^3", Series.from_coeffs([1, 3, 3, 1])),
        ("-(t)", -t),
        ("3/4", Series.const(Fraction(3, 4))),
        ("i*t", Series.monomial(GRat(0, 1), 1)),
        ("1/t^2", t ** -2),
        ("  -1/t +  t ", -1 / t + t),
        ("(2 - 3*i)/(2*t)", Series.monomial(GRat(1, Fraction(-3, 2)), -1)),
        (b"t*t", t * t),
    ],
)
def test_parse_examples(src, expect):
    assert parse_laurent(src) == expect


@pytest.mark.parametrize(
    "src, offset",
    [("t^-1", 2), ("", 0), ("1 +", 3), ("x", 0), ("2**t", 2), ("(1+t", 4), ("t^", 2), ("1 2", 2)],
)
def test_syntax_errors_carry_offsets(src, offset):
    with pytest.raises(LaurentSyntaxError) as info:
        parse_laurent(src)
    assert info.value.offset == offset


def test_division_by_non_monomial():
    with pytest.raises(NonMonomialDivision):
        parse_laurent("1/(1+t)")
    with pytest.raises((NonMonomialDivision, ZeroDivisionError)):
        parse_laurent("1/0")


def test_resource_limits():
    with pytest.raises(LaurentSyntaxError):
        parse_laurent("t^100000")
    with pytest.raises(LaurentSyntaxError):
        parse_laurent("(" * 500 + "t" + ")" * 500)


@given(laurent_polys(max_terms=6))
def test_format_round_trip(p):
    f = series_of(p)
    assert parse_laurent(format_series(f)) == f


@given(st.binary(max_size=40))
@settings(max_examples=300)
def test_fuzz_never_crashes(data):
    try:
        parse_laurent(data)
    except (LaurentSyntaxError, NonMonomialDivision, ZeroDivisionError):
        pass


@given(st.text(alphabet="t i0123456789+-*/^() ", max_size=30))
@settings(max_examples=300)
def test_fuzz_grammar_alphabet(src):
    try:
        f = parse_laurent(src)
    except (LaurentSyntaxError, NonMonomialDivision, ZeroDivisionError):
        return
    assert f.is_exact


SPEC = """
[[generator]]
name = "A"
matrix = [["1/t", "1"], ["0", "t"]]
weight = "1/3"

[[generator]]
name = "B"
matrix = [["1", "1"], ["0", "1"]]
weight = "2/3"
"""


def test_parse_spec_basic():
    sp = parse_spec(SPEC)
    assert sp.names == ("A", "B")
    assert sp.weights == (Fraction(1, 3), Fraction(2, 3))
    assert sp.mats[0].a == 1 / t


def test_symmetrize_halves_weights():
    sp = parse_spec("symmetrize = true\n" + SPEC)
    assert sp.names == ("A", "B", "A^-1", "B^-1")
    assert sp.weights == (Fraction(1, 6), Fraction(1, 3), Fraction(1, 6), Fraction(1, 3))
    assert sp.mats[2].a == t


def test_spec_errors():
    with pytest.raises(DetNotOne):
        parse_spec(SPEC.replace('["0", "t"]', '["0", "2*t"]'))
    with pytest.raises(WeightsNotNormalized):
        parse_spec(SPEC.replace('"2/3"', '"1/3"'))
    with pytest.raises(SpecError):
        parse_spec("not toml [[[")
    with pytest.raises(SpecError):
        parse_spec("x = 1")
    with pytest.raises(LaurentSyntaxError):
        parse_spec(SPEC.replace('"1/t"', '"t^-1"'))


def test_bundled_specs_load():
    for name in ("schrodinger", "affine", "nonelem", "zeroinfty"):
        sp = bundled_spec(name)
        assert len(sp) == 2 and sum(sp.weights) == 1
        src = bundled_spec_path(name).read_text()
        assert len(spec_hash(src)) == 64
