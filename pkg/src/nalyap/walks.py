"""Random walks on SL(2): word sampling, products on both sides, exact enumeration.

PRNG: numpy's Philox4x64-10 counter-based generator.  Sample ``i`` of a run
with seed ``s`` uses the stream keyed by ``s * 2**64 + i``, so every sample
is reproducible on its own and the order in which samples are computed
(or the number of workers) never changes the result.

Indices are drawn exactly: with weights ``p_k = m_k / Q`` over a common
denominator ``Q`` we draw a uniform integer in ``[0, Q)`` and look it up in
the cumulative numerators.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .laurent import DEFAULT_TERMS, INF, PrecisionExhausted, Series
from .sl2c import MatC, product_c as _product_c_mats, specialize
from .sl2na import MatNA, lognorm, mobius_apply, P1NA, _sigma_and_image

Word = tuple  # tuple[int, ...] of generator indices


class CapExceeded(ValueError):
    pass


class WeightsNotNormalized(ValueError):
    pass


@dataclass(frozen=True)
class MeasureSpec:
    """Finitely supported probability measure on exact SL(2) matrices."""

    names: tuple
    mats: tuple
    weights: tuple
    symmetric: bool = False
    defaults: dict = field(default_factory=dict, compare=False)
    source: str = field(default="", compare=False)

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "mats", tuple(self.mats))
        if len(w) != len(self.mats) or len(self.names) != len(self.mats):
            raise ValueError("names, matrices and weights must have equal length")
        if not w or any(x <= 0 for x in w) or sum(w) != 1:
            raise WeightsNotNormalized(f"weights {[str(x) for x in w]} must be positive and sum to 1")

    @classmethod
    def build(cls, gens: Sequence, weights=None, symmetric=False, **kw) -> "MeasureSpec":
        """Convenience constructor from matrices (names default to g0, g1, ...)."""
        mats = [g if isinstance(g, MatNA) else MatNA.from_rows(g) for g in gens]
        if weights is None:
            weights = [Fraction(1, len(mats))] * len(mats)
        names = kw.pop("names", [f"g{k}" for k in range(len(mats))])
        return cls(tuple(names), tuple(mats), tuple(weights), symmetric, **kw)

    def __len__(self):
        return len(self.mats)

    def inverted(self) -> "MeasureSpec":
        """The measure of inverses (check-mu)."""
        return MeasureSpec(
            tuple(f"{n}^-1" for n in self.names),
            tuple(m.inverse() for m in self.mats),
            self.weights,
            self.symmetric,
            self.defaults,
            self.source,
        )

    def conjugated(self, h: MatNA) -> "MeasureSpec":
        """Generators replaced by ``h^{-1} g h``."""
        return MeasureSpec(self.names, tuple(g.conj_by(h) for g in self.mats),
                           self.weights, self.symmetric, self.defaults, self.source)

    def specialize(self, t0) -> list:
        return [specialize(g, t0) for g in self.mats]

    def _cumulative(self):
        Q = 1
        for w in self.weights:
            Q = Q * w.denominator // math.gcd(Q, w.denominator)
        cum = np.cumsum([int(w * Q) for w in self.weights])
        return Q, cum


@dataclass
class Estimate:
    value: float
    stderr: float
    n_steps: int
    n_samples: int
    seed: int
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_values(cls, values, n, seed, **extra) -> "Estimate":
        arr = np.asarray(values, dtype=float)
        S = len(arr)
        if S == 0:
            return cls(math.nan, math.nan, n, 0, seed, dict(extra))
        sd = float(arr.std(ddof=1)) if S > 1 else 0.0
        return cls(float(arr.mean()), sd / math.sqrt(S), n, S, seed, dict(extra))

    def as_dict(self) -> dict:
        d = {
            "value": self.value,
            "stderr": self.stderr,
            "n_steps": self.n_steps,
            "n_samples": self.n_samples,
            "seed": self.seed,
        }
        d.update(self.extra)
        return d


def stream(seed: int, index: int = 0) -> np.random.Generator:
    """Independent reproducible stream for sample ``index`` of run ``seed``."""
    key = (int(seed) % (1 << 64)) * (1 << 64) + int(index)
    return np.random.Generator(np.random.Philox(key=key))


def sample_word(spec: MeasureSpec, n: int, rng: np.random.Generator) -> Word:
    """``n`` i.i.d. generator indices with the measure's exact weights."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Q, cum = spec._cumulative()
    draws = rng.integers(0, Q, size=n)
    return tuple(int(k) for k in np.searchsorted(cum, draws, side="right"))


def product_na(spec: MeasureSpec, word: Word) -> MatNA:
    """``g_{w_1} ... g_{w_n}`` exactly."""
    M = MatNA.identity()
    for w in word:
        M = M @ spec.mats[w]
    return M


def left_product_na(spec: MeasureSpec, word: Word) -> MatNA:
    """``g_{w_n} ... g_{w_1}`` exactly."""
    M = MatNA.identity()
    for w in word:
        M = spec.mats[w] @ M
    return M


def product_c(spec: MeasureSpec, word: Word, t0, order: str = "left", mats=None):
    """Renormalized complex product; see :func:`nalyap.sl2c.product_c`."""
    if mats is None:
        mats = spec.specialize(t0)
    return _product_c_mats(mats, word, order)


def enumerate_mu_n(spec: MeasureSpec, n: int, cap: int = 10**6):
    """All words of length ``n`` with their exact probabilities."""
    k = len(spec)
    if k ** n > cap:
        raise CapExceeded(f"{k}^{n} words exceed the cap {cap}")
    out = []
    for word in itertools.product(range(k), repeat=n):
        p = Fraction(1)
        for w in word:
            p *= spec.weights[w]
        out.append((word, p))
    return out


def _span(f: Series):
    """Highest t-exponent present (0 for zero)."""
    if f.is_zero():
        return 0
    return Fraction(f.val + len(f) - 1, f.ram)


class _Column:
    """One column of a long product, kept as ``t^(-S) * (V + error)``.

    ``V`` is a normalized vector; ``r`` is the projective precision of its
    direction and ``s`` the precision of its scale (both in t-units).
    """

    __slots__ = ("S", "x", "y", "r", "s")

    def __init__(self, x, y):
        self.S = Fraction(0)
        self.x, self.y = x, y
        self.r = INF
        self.s = INF

    def apply(self, g: MatNA, Lg, budget):
        v = P1NA(self.x, self.y, normalized=True)
        sigma, wx, wy, prec = _sigma_and_image(g, v)
        r, s = self.r, self.s
        if prec == INF and _span(wx) <= budget and _span(wy) <= budget:
            # short exact columns stay exact (e.g. monomial walks)
            self.x, self.y = wx, wy
            self.S += sigma
            return
        if r != INF and not r > Lg - sigma:
            raise PrecisionExhausted("column direction lost its precision; raise the term budget")
        new_r = min(r + 2 * sigma, budget)
        new_s = min(s, r + sigma - Lg, budget)
        if not new_s > 0:
            raise PrecisionExhausted("column scale lost its precision")
        self.x, self.y = wx.truncate_t(new_r), wy.truncate_t(new_r)
        self.r, self.s = new_r, new_s
        self.S += sigma


class ProductTracker:
    """Left-multiplies a running product ``M <- g M`` keeping only certified data.

    The exact product of a few hundred generators has enormous coefficients,
    so each column is stored projectively (a normalized vector truncated to
    ``budget`` t-adic digits) plus its exact log-scale.  Because ``det = 1``
    the projective error of a column shrinks by ``2 sigma`` per step, so the
    budget is never exhausted for expanding walks.  ``lognorm`` stays exact.
    """

    def __init__(self, budget=DEFAULT_TERMS):
        self.budget = Fraction(budget)
        self.cols = [_Column(Series.const(1), Series.zero()), _Column(Series.zero(), Series.const(1))]
        self._lognorms = {}
        self.steps = 0

    def apply(self, g: MatNA):
        Lg = self._lognorms.get(id(g))
        if Lg is None:
            Lg = lognorm(g)
            self._lognorms[id(g)] = Lg
        for c in self.cols:
            c.apply(g, Lg, self.budget)
        self.steps += 1

    def lognorm(self):
        return max(c.S for c in self.cols)

    def matrix(self) -> MatNA:
        """The product with each entry known to its certified precision."""
        ent = []
        for c in self.cols:
            p = min(c.r, c.s)
            ent.append((c.x.truncate_t(p).shift(-c.S), c.y.truncate_t(p).shift(-c.S)))
        (a, cc), (b, d) = ent
        return MatNA(a, b, cc, d)


def tracked_left_product(spec: MeasureSpec, word: Word, budget=DEFAULT_TERMS) -> ProductTracker:
    """Tracker for ``g_{w_n} ... g_{w_1}``."""
    tr = ProductTracker(budget)
    for w in word:
        tr.apply(spec.mats[w])
    return tr


def tracked_right_product(spec: MeasureSpec, word: Word, budget=DEFAULT_TERMS) -> ProductTracker:
    """Tracker for ``g_{w_1} ... g_{w_n}`` (factors applied right to left)."""
    tr = ProductTracker(budget)
    for w in reversed(word):
        tr.apply(spec.mats[w])
    return tr


def map_samples(fn: Callable, S: int, workers: int = 1):
    """Evaluate ``fn(i)`` for ``i < S`` and return results ordered by ``i``.

    ``fn`` must be picklable when ``workers > 1``.  Each sample owns its PRNG
    stream, so the merged result does not depend on ``workers``.
    """
    if workers <= 1 or S <= 1:
        return [fn(i) for i in range(S)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, range(S), chunksize=max(1, S // (4 * workers))))
