"""Lyapunov exponent estimators on the t-adic and the complex side.

t-adic values are in valuation units (multiples of ``log(1/|t|)``); complex
values are raw natural-log growth rates, so degeneration comparisons
divide them by ``log(1/|t|)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

from .classify import (
    AFFINE,
    ZERO_INFTY,
    chi_na_affine,
    chi_na_zero_infty,
    classify_spec,
)
from .laurent import DEFAULT_TERMS, PrecisionExhausted
from .sl2c import (
    attracting_fixed_point_c,
    eigenvalues_c,
    lognorm_c,
    sigma_c,
)
from .sl2na import MatNA, fixed_points, lognorm, sigma_na
from .walks import (
    Estimate,
    MeasureSpec,
    map_samples,
    product_c,
    sample_word,
    stream,
    tracked_left_product,
    tracked_right_product,
)

LOX_TOL = 1e-6


class TooFewHyperbolic(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# t-adic side


def _kingman_sample(spec, n, seed, terms, i):
    word = sample_word(spec, n, stream(seed, i))
    return tracked_left_product(spec, word, terms).lognorm()


def chi_na_kingman(spec: MeasureSpec, n: int = 400, S: int = 50, seed: int = 0,
                   terms: int = DEFAULT_TERMS, workers: int = 1) -> Estimate:
    """Mean of ``lognorm(g_{w_n} ... g_{w_1}) / n`` over ``S`` sampled words."""
    if n < 1 or S < 1:
        raise ValueError("n and S must be >= 1")
    norms = map_samples(partial(_kingman_sample, spec, n, seed, terms), S, workers)
    vals = [Fraction(x, n) for x in norms]
    est = Estimate.from_values([float(v) for v in vals], n, seed)
    est.value = float(sum(vals, Fraction(0)) / S)
    return est


def mean_lognorm(spec: MeasureSpec, n: int, cap: int = 10**6) -> Fraction:
    """``a_n = sum_w p(w) lognorm(g_{w_n} ... g_{w_1})`` by exhaustive enumeration."""
    k = len(spec)
    if k ** n > cap:
        from .walks import CapExceeded

        raise CapExceeded(f"{k}^{n} words exceed the cap {cap}")
    if n == 0:
        return Fraction(0)
    total = Fraction(0)

    def rec(M: MatNA, p: Fraction, depth: int):
        nonlocal total
        if depth == n:
            total += p * lognorm(M)
            return
        for j, g in enumerate(spec.mats):
            rec(g @ M, p * spec.weights[j], depth + 1)

    rec(MatNA.identity(), Fraction(1), 0)
    return total


def chi_na_exact(spec: MeasureSpec, n: int, cap: int = 10**6) -> Fraction:
    """The subadditive upper approximant ``a_n / n`` exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return mean_lognorm(spec, n, cap) / n


# ---------------------------------------------------------------------------
# complex side


def _chi_c_sample(spec, mats, n, seed, i):
    word = sample_word(spec, n, stream(seed, i))
    M, acc = product_c(spec, word, None, "left", mats)
    return (acc + lognorm_c(M)) / n


def chi_c(spec: MeasureSpec, t0, n: int = 2000, S: int = 100, seed: int = 0,
          workers: int = 1) -> Estimate:
    """Mean of ``log||g_{w_n} ... g_{w_1}|| / n`` at ``t = t0``."""
    if not 0 < abs(t0) < 1:
        raise ValueError("need 0 < |t0| < 1")
    mats = spec.specialize(t0)
    vals = map_samples(partial(_chi_c_sample, spec, mats, n, seed), S, workers)
    return Estimate.from_values(vals, n, seed, t=t0)


# ---------------------------------------------------------------------------
# trace and Furstenberg estimators


def _trace_sample(spec, side, mats, n, seed, terms, i):
    word = sample_word(spec, n, stream(seed, i))
    if side == "na":
        M = tracked_right_product(spec, word, terms).matrix()
        tr = M.trace()
        if tr.is_zero() or tr.ord >= 0:
            return None
        return float(-tr.ord / n)
    M, acc = product_c(spec, word, None, "right", mats)
    big, _ = eigenvalues_c(M)
    if big == 0 or abs(acc + math.log(abs(big))) <= LOX_TOL:
        return None
    tr = abs(M.trace())
    if tr == 0:
        return None
    return (acc + math.log(tr)) / n


def chi_trace(spec: MeasureSpec, side: str = "na", n: int = 400, S: int = 50, seed: int = 0,
              t0=None, terms: int = DEFAULT_TERMS, workers: int = 1) -> Estimate:
    """Mean of ``log|tr(g_{w_1} ... g_{w_n})| / n`` over hyperbolic samples.

    ``extra["hyperbolic_fraction"]`` reports how many samples qualified.
    """
    mats = None if side == "na" else spec.specialize(t0)
    if side not in ("na", "complex"):
        raise ValueError("side must be 'na' or 'complex'")
    res = map_samples(partial(_trace_sample, spec, side, mats, n, seed, terms), S, workers)
    good = [v for v in res if v is not None]
    frac = len(good) / S
    if frac < 0.5:
        raise TooFewHyperbolic(f"only {len(good)} of {S} samples are hyperbolic")
    return Estimate.from_values(good, n, seed, hyperbolic_fraction=frac, side=side)


def _furst_sample(spec, side, mats, n_mix, seed, terms, i):
    rng = stream(seed, i)
    word = sample_word(spec, n_mix, rng)
    g = sample_word(spec, 1, rng)[0]
    if side == "na":
        M = tracked_right_product(spec, word, terms).matrix()
        tr = M.trace()
        if tr.is_zero() or tr.ord >= 0:
            return None
        v, _ = fixed_points(M, terms)
        return float(sigma_na(spec.mats[g], v))
    M, acc = product_c(spec, word, None, "right", mats)
    big, _ = eigenvalues_c(M)
    if big == 0 or abs(acc + math.log(abs(big))) <= LOX_TOL:
        return None
    v = attracting_fixed_point_c(M)
    return sigma_c(mats[g], v)


def furstenberg_estimate(spec: MeasureSpec, side: str = "na", n_mix: int = 60, S: int = 200,
                         seed: int = 0, t0=None, terms: int = DEFAULT_TERMS,
                         workers: int = 1) -> Estimate:
    """Average of ``sigma(g, v)`` with ``g ~ mu`` and ``v`` approximately stationary.

    ``v`` is the attracting fixed point of ``g_{w_1} ... g_{w_{n_mix}}``;
    non-hyperbolic samples are dropped and counted.
    """
    if side not in ("na", "complex"):
        raise ValueError("side must be 'na' or 'complex'")
    mats = None if side == "na" else spec.specialize(t0)
    res = map_samples(partial(_furst_sample, spec, side, mats, n_mix, seed, terms), S, workers)
    good = [v for v in res if v is not None]
    frac = len(good) / S
    if frac < 0.5:
        raise TooFewHyperbolic(f"only {len(good)} of {S} samples are hyperbolic")
    return Estimate.from_values(good, n_mix, seed, hyperbolic_fraction=frac, side=side)


# ---------------------------------------------------------------------------
# degeneration sweep


@dataclass
class SweepRow:
    t: float
    chi: float
    chi_ratio: float
    chi_na: float
    abs_error: float
    n: int
    S: int
    seed: int
    chi_stderr: float = 0.0

    CSV_COLUMNS = ("t", "chi", "chi_ratio", "chi_na", "abs_error", "n", "S", "seed")

    def csv_values(self):
        return [getattr(self, c) for c in self.CSV_COLUMNS]


@dataclass
class SweepResult:
    rows: list
    chi_na: float
    chi_na_source: str
    monotone: bool
    detail: dict = field(default_factory=dict)


def resolve_chi_na(spec: MeasureSpec, n: int = 400, S: int = 50, seed: int = 0,
                   klass=None, terms: int = DEFAULT_TERMS, workers: int = 1):
    """``(value, source)`` using the closed forms when the class allows it."""
    if klass is None:
        klass = classify_spec(spec)
    if klass.tag == AFFINE:
        return float(chi_na_affine(spec, klass.conjugator)), "affine-closed-form"
    if klass.tag == ZERO_INFTY:
        return float(chi_na_zero_infty(spec, klass.conjugator)), "zero-infinity-closed-form"
    est = chi_na_kingman(spec, n, S, seed, terms, workers)
    return est.value, "kingman"


def sweep(spec: MeasureSpec, t_list, n: int = 2000, S: int = 100, seed: int = 0,
          chi_na: float | None = None, chi_na_source: str = "given",
          n_na: int = 400, S_na: int = 50, workers: int = 1) -> SweepResult:
    """One row per ``t``: ``chi(t)``, ``chi(t)/log(1/t)`` and its distance to ``chi_na``."""
    if chi_na is None:
        chi_na, chi_na_source = resolve_chi_na(spec, n_na, S_na, seed, workers=workers)
    rows = []
    for t0 in t_list:
        if not 0 < t0 < 1:
            raise ValueError("sweep values of t must lie in (0, 1)")
        est = chi_c(spec, t0, n, S, seed, workers)
        ratio = est.value / math.log(1 / t0)
        rows.append(SweepRow(float(t0), est.value, ratio, float(chi_na), abs(ratio - chi_na),
                             n, S, seed, est.stderr))
    errs = [r.abs_error for r in rows]
    mono = all(b <= a for a, b in zip(errs, errs[1:]))
    return SweepResult(rows, float(chi_na), chi_na_source, mono)
