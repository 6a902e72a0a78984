import math

import numpy as np
import pytest

from nalyap.laurent import Series, t
from nalyap.sl2c import (
    DetDrift,
    MatC,
    P1C,
    attracting_fixed_point_c,
    classify_c,
    dist_c,
    eigenvalues_c,
    lognorm_c,
    mobius_apply_c,
    product_c,
    repelling_fixed_point_c,
    sigma_c,
    specialize,
)
from nalyap.sl2na import MatNA


def random_sl2(rng):
    a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
    return MatC(a, b, c, (1 + b * c) / a)


def test_specialize_and_det_check():
    M = MatNA.from_rows([[1 / t, 1], [0, t]])
    m = specialize(M, 0.1)
    assert m.a == pytest.approx(10) and m.d == pytest.approx(0.1)
    assert m.det() == pytest.approx(1)
    bad = MatNA(Series.const(2), Series.zero(), Series.zero(), Series.const(1))
    with pytest.raises(DetDrift):
        specialize(bad, 0.1)


def test_products_agree_with_numpy():
    rng = np.random.default_rng(0)
    mats = [random_sl2(rng) for _ in range(3)]
    word = [int(k) for k in rng.integers(0, 3, size=40)]
    M, acc = product_c(mats, word, "left")
    ref = np.eye(2, dtype=complex)
    for w in word:
        ref = mats[w].to_array() @ ref
    assert np.allclose(math.exp(acc) * M.to_array(), ref, rtol=1e-9)
    M, acc = product_c(mats, word, "right")
    ref = np.eye(2, dtype=complex)
    for w in word:
        ref = ref @ mats[w].to_array()
    assert np.allclose(math.exp(acc) * M.to_array(), ref, rtol=1e-9)
    assert lognorm_c(M) == pytest.approx(0.0)


def test_cocycle_c():
    rng = np.random.default_rng(1)
    for _ in range(50):
        A, B = random_sl2(rng), random_sl2(rng)
        v = P1C.make(*(rng.normal(size=2) + 1j * rng.normal(size=2)))
        lhs = sigma_c(A @ B, v)
        rhs = sigma_c(A, mobius_apply_c(B, v)) + sigma_c(B, v)
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_eigen_and_fixed_points():
    M = MatC(4, 1, 0, 0.25)
    big, small = eigenvalues_c(M)
    assert big == pytest.approx(4) and small == pytest.approx(0.25)
    assert classify_c(M)
    assert not classify_c(MatC(0, -1, 1, 0))
    att = attracting_fixed_point_c(M)
    rep = repelling_fixed_point_c(M)
    assert dist_c(att, P1C.make(1, 0)) < 1e-12
    assert dist_c(mobius_apply_c(M, rep), rep) < 1e-12


def test_small_eigenvalue_is_stable():
    # trace ~ 1e8: naive (tr - sqrt(tr^2 - 4)) / 2 loses every digit
    M = MatC(1e8, 1, -1, 0)
    big, small = eigenvalues_c(M)
    assert small == pytest.approx(1e-8, rel=1e-12)


def test_p1c_normalization():
    p = P1C.make(3, 4j)
    assert max(abs(p.x), abs(p.y)) == pytest.approx(1)
    with pytest.raises(ZeroDivisionError):
        P1C.make(0, 0)
