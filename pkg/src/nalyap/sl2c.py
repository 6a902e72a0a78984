"""The complex side: a Laurent family specialized at a fixed nonzero ``t``.

Matrices are plain 2x2 complex quadruples; long products are renormalized at
every step and the discarded log-scale is returned separately.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .sl2na import MatNA

DET_TOL = 1e-6
CLASSIFY_TOL = 1e-6


class DetDrift(ArithmeticError):
    pass


@dataclass(frozen=True)
class MatC:
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls) -> "MatC":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def from_array(cls, arr) -> "MatC":
        arr = np.asarray(arr, dtype=complex)
        return cls(complex(arr[0, 0]), complex(arr[0, 1]), complex(arr[1, 0]), complex(arr[1, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, o: "MatC") -> "MatC":
        return MatC(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MatC":
        return MatC(self.d, -self.b, -self.c, self.a)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def maxabs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))


@dataclass(frozen=True)
class P1C:
    """Point of the complex projective line, normalized to ``max(|x|, |y|) = 1``."""

    x: complex
    y: complex

    @classmethod
    def make(cls, x, y=1.0) -> "P1C":
        x, y = complex(x), complex(y)
        s = max(abs(x), abs(y))
        if s == 0:
            raise ZeroDivisionError("both coordinates vanish")
        return cls(x / s, y / s)

    def affine(self) -> complex:
        return self.x / self.y if self.y != 0 else complex(math.inf)


def dist_c(p: P1C, q: P1C) -> float:
    """Chordal-type distance ``|x1 y2 - x2 y1|`` of max-normalized representatives."""
    return abs(p.x * q.y - q.x * p.y)


def specialize(M: MatNA, t0) -> MatC:
    """Evaluate an exact matrix at ``t0``; checks ``|det - 1| <= 1e-6``."""
    m = MatC(*(e.evaluate_at(t0) for e in M.entries))
    if abs(m.det() - 1) > DET_TOL:
        raise DetDrift(f"|det - 1| = {abs(m.det() - 1):.3g} at t = {t0}")
    return m


def lognorm_c(M: MatC) -> float:
    """``log`` of the max-abs entry norm."""
    return math.log(M.maxabs())


def sigma_c(M: MatC, v: P1C) -> float:
    """``log(||M v|| / ||v||)`` in the max norm."""
    x = M.a * v.x + M.b * v.y
    y = M.c * v.x + M.d * v.y
    return math.log(max(abs(x), abs(y)) / max(abs(v.x), abs(v.y)))


def mobius_apply_c(M: MatC, v: P1C) -> P1C:
    return P1C.make(M.a * v.x + M.b * v.y, M.c * v.x + M.d * v.y)


def eigenvalues_c(M: MatC):
    """``(lam_big, lam_small)`` via the cancellation-free quadratic formula."""
    tr, det = M.trace(), M.det()
    root = cmath.sqrt(tr * tr - 4 * det)
    if (tr.conjugate() * root).real < 0:
        root = -root
    big = (tr + root) / 2
    if big == 0:
        return 0j, 0j
    return big, det / big


def classify_c(M: MatC, tol: float = CLASSIFY_TOL) -> bool:
    """True iff loxodromic: eigenvalue moduli differ from 1 by more than ``tol``."""
    big, small = eigenvalues_c(M)
    scale = math.sqrt(abs(M.det())) or 1.0
    return abs(abs(big) / scale - 1) > tol


def _eigvec_c(M: MatC, lam: complex) -> P1C:
    c1 = (M.b, lam - M.a)
    c2 = (lam - M.d, M.c)
    n1 = max(abs(c1[0]), abs(c1[1]))
    n2 = max(abs(c2[0]), abs(c2[1]))
    x, y = c1 if n1 >= n2 else c2
    if max(abs(x), abs(y)) == 0:
        # scalar matrix: every point is fixed; pick 0
        return P1C(0j, 1 + 0j)
    return P1C.make(x, y)


def attracting_fixed_point_c(M: MatC) -> P1C:
    big, _ = eigenvalues_c(M)
    return _eigvec_c(M, big)


def repelling_fixed_point_c(M: MatC) -> P1C:
    _, small = eigenvalues_c(M)
    return _eigvec_c(M, small)


def product_c(mats, word, order: str = "left"):
    """Renormalized product of ``mats[w]`` along ``word``.

    ``order="left"`` gives ``g_{w_n} ... g_{w_1}``, ``"right"`` gives
    ``g_{w_1} ... g_{w_n}``.  Returns ``(M_normalized, log_scale)`` with the
    true product equal to ``exp(log_scale) * M_normalized``.
    """
    quads = [(m.a, m.b, m.c, m.d) for m in mats]
    a, b, c, d = 1 + 0j, 0j, 0j, 1 + 0j
    acc = 0.0
    log = math.log
    for w in word:
        ga, gb, gc, gd = quads[w]
        if order == "left":
            a, b, c, d = ga * a + gb * c, ga * b + gb * d, gc * a + gd * c, gc * b + gd * d
        else:
            a, b, c, d = a * ga + b * gc, a * gb + b * gd, c * ga + d * gc, c * gb + d * gd
        s = max(abs(a), abs(b), abs(c), abs(d))
        a, b, c, d = a / s, b / s, c / s, d / s
        acc += log(s)
    return MatC(a, b, c, d), acc
