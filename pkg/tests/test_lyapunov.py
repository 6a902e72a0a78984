import math
from fractions import Fraction

import pytest

from nalyap.lyapunov import (
    SweepRow,
    TooFewHyperbolic,
    chi_c,
    chi_na_exact,
    chi_na_kingman,
    chi_trace,
    furstenberg_estimate,
    mean_lognorm,
    resolve_chi_na,
    sweep,
)
from nalyap.sl2na import MatNA
from nalyap.walks import CapExceeded, MeasureSpec


def test_schrodinger_exact_values(schrodinger):
    for n in range(1, 6):
        assert chi_na_exact(schrodinger, n) == 1


def test_subadditivity_small(affine):
    a = {n: mean_lognorm(affine, n) for n in range(1, 6)}
    for m in range(1, 5):
        for n in range(1, 6 - m):
            assert a[m + n] <= a[m] + a[n]


def test_exact_cap(nonelem):
    with pytest.raises(CapExceeded):
        chi_na_exact(nonelem, 12, cap=1000)


def test_kingman_basic(nonelem, affine):
    est = chi_na_kingman(nonelem, 40, 10, seed=1)
    assert est.value == 1.0 and est.stderr == 0.0
    est = chi_na_kingman(affine, 200, 20, seed=1)
    assert abs(est.value - 0.5) < 0.1


def test_kingman_worker_independent(affine):
    a = chi_na_kingman(affine, 50, 8, seed=3, workers=1)
    b = chi_na_kingman(affine, 50, 8, seed=3, workers=2)
    assert a.as_dict() == b.as_dict()


def test_chi_c_identity_and_schrodinger(schrodinger):
    est = chi_c(MeasureSpec.build([MatNA.identity()]), 0.1, 20, 3)
    assert est.value == 0.0
    est = chi_c(schrodinger, 1e-3, 500, 10)
    assert abs(est.value / math.log(1e3) - 1) < 0.15
    with pytest.raises(ValueError):
        chi_c(schrodinger, 2.0)


def test_trace_and_furstenberg_na(nonelem):
    tr = chi_trace(nonelem, "na", 60, 20, seed=2)
    assert tr.extra["hyperbolic_fraction"] >= 0.9
    assert tr.value == pytest.approx(1.0, abs=0.05)
    fu = furstenberg_estimate(nonelem, "na", 30, 50, seed=2)
    assert fu.value == pytest.approx(1.0, abs=0.1)


def test_trace_complex(nonelem):
    tr = chi_trace(nonelem, "complex", 200, 10, seed=2, t0=1e-3)
    assert tr.value / math.log(1e3) == pytest.approx(1.0, abs=0.15)


def test_too_few_hyperbolic():
    sp = MeasureSpec.build([MatNA.from_rows([[0, -1], [1, 0]])])
    with pytest.raises(TooFewHyperbolic):
        chi_trace(sp, "na", 4, 4)


def test_resolve_and_sweep(affine):
    val, src = resolve_chi_na(affine)
    assert (val, src) == (0.5, "affine-closed-form")
    res = sweep(affine, [1e-2, 1e-3], 300, 5, chi_na=0.5)
    assert [r.t for r in res.rows] == [1e-2, 1e-3]
    row = res.rows[0]
    assert row.chi_ratio == pytest.approx(row.chi / math.log(100))
    assert row.abs_error == pytest.approx(abs(row.chi_ratio - 0.5))
    assert SweepRow.CSV_COLUMNS[0] == "t" and len(row.csv_values()) == 8
