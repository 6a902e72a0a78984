from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from nalyap.laurent import PrecisionExhausted, t
from nalyap.sl2na import MatNA, lognorm
from nalyap.walks import (
    CapExceeded,
    Estimate,
    MeasureSpec,
    ProductTracker,
    WeightsNotNormalized,
    enumerate_mu_n,
    left_product_na,
    map_samples,
    product_na,
    sample_word,
    stream,
    tracked_left_product,
    tracked_right_product,
)


def test_weights_must_normalize():
    with pytest.raises(WeightsNotNormalized):
        MeasureSpec.build([MatNA.identity()], [Fraction(1, 2)])
    with pytest.raises(WeightsNotNormalized):
        MeasureSpec.build([MatNA.identity(), MatNA.identity()], [1, 0])


def test_streams_are_reproducible_and_independent(nonelem):
    a = sample_word(nonelem, 50, stream(7, 3))
    b = sample_word(nonelem, 50, stream(7, 3))
    c = sample_word(nonelem, 50, stream(7, 4))
    assert a == b and a != c


def test_sample_word_frequencies():
    sp = MeasureSpec.build([MatNA.identity()] * 3, [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)])
    w = sample_word(sp, 60000, stream(1))
    cnt = Counter(w)
    for k, p in enumerate(sp.weights):
        assert abs(cnt[k] / len(w) - float(p)) < 0.01


def test_enumerate_mu_n(nonelem):
    words = enumerate_mu_n(nonelem, 3)
    assert len(words) == 8 and sum(p for _, p in words) == 1
    with pytest.raises(CapExceeded):
        enumerate_mu_n(nonelem, 30)


def test_product_orders(nonelem):
    word = (0, 1, 1)
    D, E = nonelem.mats
    assert product_na(nonelem, word) == D @ E @ E
    assert left_product_na(nonelem, word) == E @ E @ D


def test_tracker_matches_exact_product(nonelem):
    rng = stream(5)
    for n in (1, 5, 12, 20):
        word = sample_word(nonelem, n, rng)
        tr = tracked_left_product(nonelem, word)
        exact = left_product_na(nonelem, word)
        assert tr.lognorm() == lognorm(exact)
        assert tr.matrix().approx_equal(exact)
        tr = tracked_right_product(nonelem, word)
        exact = product_na(nonelem, word)
        assert tr.lognorm() == lognorm(exact)
        assert tr.matrix().approx_equal(exact)


def test_tracker_monomial_walk_stays_exact(zeroinfty):
    word = sample_word(zeroinfty, 300, stream(2))
    tr = tracked_left_product(zeroinfty, word)
    assert tr.matrix().is_exact
    assert tr.lognorm() == lognorm(left_product_na(zeroinfty, word))


def test_tracker_small_budget_fails_loudly():
    # with no t-adic digits to spare, the first inexact step cannot be certified
    tr = ProductTracker(budget=0)
    with pytest.raises(PrecisionExhausted):
        for _ in range(5):
            tr.apply(MatNA.from_rows([[2 / t - t, -1 / t + t], [2 / t - 2 * t, -1 / t + 2 * t]]))
            tr.apply(MatNA.from_rows([[1, 1 / t], [0, 1]]))


def test_map_samples_worker_independent():
    def sq(i):
        return i * i
    assert map_samples(sq, 5) == [0, 1, 4, 9, 16]


def test_estimate_from_values():
    e = Estimate.from_values([1.0, 2.0, 3.0], 10, 0)
    assert e.value == 2.0
    assert e.stderr == pytest.approx(np.std([1, 2, 3], ddof=1) / np.sqrt(3))
    assert Estimate.from_values([1.0], 1, 0).stderr == 0.0
