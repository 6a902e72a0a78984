"""The hybrid seminorm and the hybrid expansion cocycle.

Over the closed disk of radius ``1/e`` a Laurent polynomial ``f`` has the
seminorm ``|f(t)|^(-1/log|t|)`` at ``t != 0`` and ``exp(-ord f)`` at
``t = 0``.  Dividing the complex expansion ``sigma(g_t, z)`` by
``log(1/|t|)`` gives a cocycle that continues to the t-adic ``sigma_na``.
The radius ``1/e`` is a convention; any fixed radius below 1 would do.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .laurent import Series
from .sl2c import P1C, sigma_c, specialize
from .sl2na import MatNA, P1NA, lognorm, sigma_na
from .walks import MeasureSpec

RADIUS = math.exp(-1)


@dataclass(frozen=True)
class ArchPoint:
    t: complex
    z: P1C

    def __post_init__(self):
        if not 0 < abs(self.t) <= RADIUS * (1 + 1e-12):
            raise ValueError("archimedean hybrid points need 0 < |t| <= 1/e")


@dataclass(frozen=True)
class NAPoint:
    v: P1NA


HybridPoint = Union[ArchPoint, NAPoint]


def hybrid_seminorm(f: Series, t) -> float:
    """``|f(t)|^(-1/log|t|)``, and ``exp(-ord f)`` at ``t = 0``."""
    if t == 0:
        o = f.ord
        return 0.0 if o == math.inf else math.exp(-o)
    if abs(t) > RADIUS * (1 + 1e-12):
        raise ValueError("|t| must be at most 1/e")
    v = abs(f.evaluate_at(t))
    if v == 0:
        return 0.0
    return math.exp(math.log(v) / math.log(1 / abs(t)))


def point_at(v: P1NA, t) -> P1C:
    """Specialization ``z(t)`` of an exact series point."""
    return P1C.make(v.x.evaluate_at(t), v.y.evaluate_at(t))


def sigma_hyb(g: MatNA, p: HybridPoint) -> float:
    if isinstance(p, NAPoint):
        return float(sigma_na(g, p.v))
    return sigma_c(specialize(g, p.t), p.z) / math.log(1 / abs(p.t))


def continuity_check(g: MatNA, v: P1NA, t_grid):
    """Rows ``(t, |sigma_hyb(g, (t, z(t))) - sigma_na(g, v)|)``."""
    target = sigma_hyb(g, NAPoint(v))
    rows = []
    for t0 in t_grid:
        val = sigma_hyb(g, ArchPoint(t0, point_at(v, t0)))
        rows.append((t0, abs(val - target)))
    return rows


def uniform_disk_constant(spec: MeasureSpec) -> float:
    """A constant ``C`` with ``log sup_{|t|<=1/2} ||t^L(w) w(t)|| <= C length(w)``.

    Each rescaled generator ``t^alpha g`` is a polynomial matrix; its sup on
    the disk of radius 1/2 is bounded by the sum of absolute coefficients
    times ``2^-k``.  Multiplying ``n`` of them and rescaling by at most
    ``t^(-n A)`` gives ``C = A log 2 + max log bound``.
    """
    A = max(lognorm(g) for g in spec.mats)
    best = -math.inf
    for g in spec.mats:
        a = lognorm(g)
        bound = 0.0
        for e in g.entries:
            s = e.shift(a)
            tot = 0.0
            for k, c in enumerate(s.coeffs):
                if c:
                    tot += abs(complex(c)) * 0.5 ** ((s.val + k) / s.ram)
            bound = max(bound, tot)
        best = max(best, math.log(bound))
    return float(A) * math.log(2) + best
