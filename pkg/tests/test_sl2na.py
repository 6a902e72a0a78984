from fractions import Fraction

import numpy as np
import pytest

from nalyap.laurent import INF, Series, t
from nalyap.sl2na import (
    BallNA,
    Kind,
    MatNA,
    NormOne,
    NotHyperbolic,
    P1NA,
    att_rep_balls,
    classify,
    dhyp,
    dsph_na,
    eigenvalues,
    fixed_points,
    kak,
    lognorm,
    mobius_apply,
    sigma_na,
)

D = MatNA.diag(1 / t)
H = MatNA.from_rows([[1, 1], [1, 2]])
ZERO, INFTY = P1NA.zero(), P1NA.infinity()


def random_word_matrix(spec, rng, max_len=10):
    n = int(rng.integers(1, max_len + 1))
    M = MatNA.identity()
    for k in rng.integers(0, len(spec), size=n):
        M = M @ spec.mats[int(k)]
    return M


def random_point(rng):
    if rng.integers(0, 10) == 0:
        return INFTY
    cs = [int(c) for c in rng.integers(-2, 3, size=4)]
    if not any(cs):
        cs[1] = 1
    return P1NA.from_series(Series.from_coeffs(cs, val=int(rng.integers(-2, 2))))


# --- basic operations --------------------------------------------------------


def test_matrix_basics():
    M = MatNA.from_rows([[1 / t, 1], [0, t]])
    assert M.det() == Series.const(1)
    assert M @ M.inverse() == MatNA.identity()
    assert M.trace() == 1 / t + t
    assert lognorm(M) == 1 and lognorm(M.inverse()) == 1
    assert lognorm(MatNA.identity()) == 0
    assert H.is_integral() and not M.is_integral()


def test_dsph_examples():
    assert dsph_na(ZERO, INFTY) == 0
    assert dsph_na(ZERO, ZERO) == INF
    assert dsph_na(P1NA.from_series(t), ZERO) == 1


def test_mobius_examples():
    z = mobius_apply(D, P1NA.from_series(1))
    assert z == P1NA(1, t * t)
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = random_point(rng)
        assert mobius_apply(D @ H, mobius_apply((D @ H).inverse(), v)) == v


def test_classify_kinds():
    assert classify(D) is Kind.HYPERBOLIC
    assert classify(MatNA.identity()) is Kind.IDENTITY
    assert classify(MatNA.from_rows([[1, 1], [0, 1]])) is Kind.PARABOLIC
    assert classify(MatNA.from_rows([[0, -1], [1, 0]])) is Kind.STRICTLY_ELLIPTIC
    assert classify(H) is Kind.STRICTLY_ELLIPTIC  # trace 3 has order 0


def test_fixed_point_examples():
    att, rep = fixed_points(D)
    assert att == INFTY and rep == ZERO
    M = H @ D @ H.inverse()
    att, rep = fixed_points(M)
    assert att == mobius_apply(H, INFTY) and rep == mobius_apply(H, ZERO)
    N = MatNA.from_rows([[1 / t, 1], [0, t]])
    att, rep = fixed_points(N, 20)
    assert att == INFTY
    expect = -t * (1 - t * t).inv(20)
    assert rep.affine(20).approx_equal(expect)
    assert mobius_apply(N, rep) == rep
    with pytest.raises(NotHyperbolic):
        fixed_points(H)


def test_eigenvalues_multiply_to_one():
    M = H @ D @ D @ H.inverse() @ D
    big, small = eigenvalues(M, 20)
    assert (big * small).approx_equal(Series.const(1))
    assert big.ord < 0 < small.ord


def test_att_rep_balls_diagonal():
    B_att, B_rep = att_rep_balls(D)
    assert B_rep.disk() == (Series.zero(), 1)
    assert B_att.contains(INFTY) and B_att.contains(P1NA(1, t))
    assert not B_att.contains(P1NA.from_series(1))
    with pytest.raises(NormOne):
        att_rep_balls(H)


def test_dhyp_examples():
    g = BallNA.gauss()
    assert dhyp(g, BallNA.affine(0, 2)) == 2
    assert dhyp(BallNA.affine(0, 1), BallNA.affine(t, 2)) == 1
    assert dhyp(BallNA.affine(0, 2), BallNA.affine(1, 2)) == 4
    assert dhyp(BallNA.affine(0, -1), g) == 1
    assert dhyp(BallNA.affine(1 / t, 0), g) == 2


# --- invariants on random words ------------------------------------------------


def test_kak_invariants(nonelem):
    rng = np.random.default_rng(11)
    for _ in range(100):
        M = random_word_matrix(nonelem, rng)
        m, a, n = kak(M, 40)
        assert lognorm(a) == lognorm(M)
        assert (m @ a @ n).approx_equal(M)
        assert m.is_integral() and n.is_integral()
        assert m.det().approx_equal(Series.const(1)) and n.det().approx_equal(Series.const(1))


def test_norm_axioms(nonelem):
    rng = np.random.default_rng(12)
    for _ in range(100):
        A = random_word_matrix(nonelem, rng, 6)
        B = random_word_matrix(nonelem, rng, 6)
        assert lognorm(A) >= 0
        assert lognorm(A @ B) <= lognorm(A) + lognorm(B)
        assert lognorm(A) == lognorm(A.inverse())


def test_cocycle_and_bounds(nonelem):
    rng = np.random.default_rng(13)
    for _ in range(200):
        A = random_word_matrix(nonelem, rng, 6)
        B = random_word_matrix(nonelem, rng, 6)
        v = random_point(rng)
        assert sigma_na(A @ B, v) == sigma_na(A, mobius_apply(B, v)) + sigma_na(B, v)
        s = sigma_na(A, v)
        assert -lognorm(A) <= s <= lognorm(A)


def test_trace_norm_identity_and_two_points(nonelem):
    rng = np.random.default_rng(14)
    seen = 0
    while seen < 50:
        M = random_word_matrix(nonelem, rng)
        assert max(sigma_na(M, ZERO), sigma_na(M, INFTY)) == lognorm(M)
        if classify(M) is not Kind.HYPERBOLIC:
            continue
        seen += 1
        att, rep = fixed_points(M, 40)
        assert lognorm(M) == -M.trace().ord + max(dsph_na(att, rep), 0)


def test_expansion_off_repelling_ball(nonelem):
    # Outside B_rep the image lands in B_att and 0 < sigma <= lognorm; full
    # expansion sigma = lognorm holds exactly when n(v) leaves the open unit
    # disk (for diag(t^-4, t^4) and v = [t : 1] one gets sigma = 3, not 4).
    rng = np.random.default_rng(15)
    for _ in range(30):
        M = random_word_matrix(nonelem, rng)
        if lognorm(M) == 0:
            continue
        m, a, n = kak(M, 40)
        B_att, B_rep = att_rep_balls(M, 40)
        if classify(M) is Kind.HYPERBOLIC:
            att, rep = fixed_points(M, 40)
            assert B_att.contains(att) and B_rep.contains(rep)
        for _ in range(10):
            v = random_point(rng)
            s = sigma_na(M, v)
            assert (s == lognorm(M)) == (dsph_na(mobius_apply(n, v), ZERO) == 0)
            if not B_rep.contains(v):
                assert 0 < s <= lognorm(M)
                assert B_att.contains(mobius_apply(M, v))


def test_full_expansion_needs_more_than_leaving_b_rep():
    M = MatNA.diag(t ** -4)
    v = P1NA.from_series(t)
    _, B_rep = att_rep_balls(M)
    assert not B_rep.contains(v)
    assert sigma_na(M, v) == 3 and lognorm(M) == 4


def test_ball_affine_round_trip():
    for a, rho in [(0, 2), (1, 0), (t, 3), (1 / t, Fraction(1, 2)), (0, -2), (1 / t, -3)]:
        b = BallNA.affine(a, rho)
        a2, rho2 = b.disk()
        assert rho2 == rho
        assert BallNA.affine(a2, rho2).same_point(b)
