"""SL(2) over the t-adic field: norms, Cartan decomposition, fixed points, balls.

Points of the projective line are kept as normalized coordinate pairs
``[x : y]`` with ``min(ord x, ord y) = 0``.  Distances are reported as
valuation orders, so ``dsph_na(p, q) = r`` means the spherical distance is
``e**(-r)``; larger means closer.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .laurent import (
    DEFAULT_TERMS,
    INF,
    PrecisionExhausted,
    Series,
    min_ord,
)


class NotHyperbolic(ValueError):
    pass


class NormOne(ValueError):
    pass


class NotSL2(ValueError):
    pass


class Kind(enum.Enum):
    IDENTITY = "identity"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    STRICTLY_ELLIPTIC = "strictly_elliptic"


def _S(x) -> Series:
    return x if isinstance(x, Series) else Series.coerce(x)


@dataclass(frozen=True)
class MatNA:
    """2x2 matrix ``[[a, b], [c, d]]`` with Series entries."""

    a: Series
    b: Series
    c: Series
    d: Series

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _S(getattr(self, name)))

    @classmethod
    def identity(cls) -> "MatNA":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "MatNA":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def diag(cls, x) -> "MatNA":
        x = _S(x)
        return cls(x, 0, 0, x.inv())

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, o: "MatNA") -> "MatNA":
        return MatNA(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MatNA":
        """Inverse of a determinant-one matrix (the adjugate)."""
        return MatNA(self.d, -self.b, -self.c, self.a)

    def det(self) -> Series:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Series:
        return self.a + self.d

    def conj_by(self, h: "MatNA") -> "MatNA":
        """``h^{-1} M h``."""
        return h.inverse() @ self @ h

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for e in self.entries)

    @property
    def precision(self):
        return min(e.prec_t for e in self.entries)

    def exact_center(self) -> "MatNA":
        return MatNA(*(e.exact_center() for e in self.entries))

    def truncate_t(self, p) -> "MatNA":
        return MatNA(*(e.truncate_t(p) for e in self.entries))

    def approx_equal(self, other: "MatNA") -> bool:
        """Entrywise equality up to the joint precision."""
        return all(e.approx_equal(f) for e, f in zip(self.entries, other.entries))

    def is_integral(self) -> bool:
        return all(e.ord_lower_bound() >= 0 for e in self.entries)

    def check_sl2(self):
        dt = self.det() - 1
        if not dt.is_zero():
            raise NotSL2(f"determinant is {self.det()}, not 1")

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def _normalize_pair(x: Series, y: Series):
    m = min_ord(x, y)
    if m == INF:
        raise PrecisionExhausted("both projective coordinates vanish")
    if m != 0:
        x, y = x.shift(-m), y.shift(-m)
    return x, y


class P1NA:
    """Point ``[x : y]`` of the projective line over the t-adic field."""

    __slots__ = ("x", "y")
    __hash__ = None  # equality is only up to precision

    def __init__(self, x, y=1, normalized: bool = False):
        x, y = _S(x), _S(y)
        if not normalized:
            x, y = _normalize_pair(x, y)
        self.x, self.y = x, y

    @classmethod
    def from_series(cls, z) -> "P1NA":
        return cls(_S(z), Series.const(1))

    @classmethod
    def infinity(cls) -> "P1NA":
        return cls(Series.const(1), Series.zero(), normalized=True)

    @classmethod
    def zero(cls) -> "P1NA":
        return cls(Series.zero(), Series.const(1), normalized=True)

    @property
    def precision(self):
        """Absolute t-precision of the normalized coordinates."""
        return min(self.x.prec_t, self.y.prec_t)

    @property
    def is_exact(self) -> bool:
        return self.precision == INF

    def is_infinity(self) -> bool:
        return self.y.is_zero() and self.y.prec_t > 0

    def in_unit_disk(self) -> bool:
        """``|z| <= 1``, i.e. ``ord y == 0``."""
        return self.y.ord_lower_bound() == 0 and not self.y.is_zero()

    def affine(self, terms: int | None = None) -> Series:
        """The coordinate ``z = x / y`` (raises on infinity)."""
        if self.y.is_exact_zero():
            raise ZeroDivisionError("point at infinity has no affine coordinate")
        if self.y.is_exact and len(self.y) == 1:
            return self.x * self.y.inv()
        return self.x * self.y.inv(terms)

    def truncate_t(self, p) -> "P1NA":
        return P1NA(self.x.truncate_t(p), self.y.truncate_t(p), normalized=True)

    def exact_center(self) -> "P1NA":
        return P1NA(self.x.exact_center(), self.y.exact_center())

    def wedge(self, other: "P1NA") -> Series:
        return self.x * other.y - other.x * self.y

    def __eq__(self, other):
        if not isinstance(other, P1NA):
            return NotImplemented
        return self.wedge(other).is_zero()

    def __repr__(self):
        return f"P1NA([{self.x} : {self.y}])"


def dsph_na(p: P1NA, q: P1NA):
    """Order of the spherical distance; ``INF`` when indistinguishable."""
    w = p.wedge(q)
    if w.is_zero():
        return INF
    return w.ord


def lognorm(M: MatNA):
    """``log ||M||`` in valuation units: ``-min ord`` of the entries."""
    return -min_ord(*M.entries)


def _apply_centers(M: MatNA, x: Series, y: Series):
    return M.a * x + M.b * y, M.c * x + M.d * y


def sigma_na(M: MatNA, v: P1NA):
    """Expansion ``log(||M v|| / ||v||)`` for the normalized representative."""
    return _sigma_and_image(M, v)[0]


def _sigma_and_image(M: MatNA, v: P1NA, cap=None):
    exact = M.is_exact and v.is_exact
    Mc = M if M.is_exact else M.exact_center()
    x, y = (v.x, v.y) if v.is_exact else (v.x.exact_center(), v.y.exact_center())
    wx, wy = _apply_centers(Mc, x, y)
    m = min_ord(wx, wy)
    if m == INF:
        raise PrecisionExhausted("image vector vanishes")
    sigma = -m
    wx, wy = wx.shift(-m), wy.shift(-m)
    if exact:
        if cap is not None and cap != INF:
            wx, wy = wx.truncate_t(cap), wy.truncate_t(cap)
        return sigma, wx, wy, INF
    r = v.precision
    q = M.precision
    L = lognorm(Mc)
    new = INF
    if r != INF:
        if not r > L - sigma:
            raise PrecisionExhausted("point precision too low to certify the expansion")
        new = min(new, r + 2 * sigma)
    if q != INF:
        if not q > -sigma:
            raise PrecisionExhausted("matrix precision too low to certify the expansion")
        new = min(new, q + sigma)
    if cap is not None:
        new = min(new, cap)
    return sigma, wx.truncate_t(new), wy.truncate_t(new), new


def mobius_apply(M: MatNA, z: P1NA, cap=None) -> P1NA:
    """Image ``M z``.

    For inexact data the image precision follows the derivative of the
    Mobius map: a ball of order ``r`` around ``z`` goes to a ball of order
    ``r + 2 sigma(M, z)``, valid once ``r > lognorm(M) - sigma``.  ``cap``
    bounds the kept t-precision.
    """
    _, wx, wy, _ = _sigma_and_image(M, z, cap)
    return P1NA(wx, wy, normalized=True)


def classify(M: MatNA) -> Kind:
    tr = M.trace()
    if not tr.is_zero():
        if tr.ord < 0:
            return Kind.HYPERBOLIC
    elif tr.prec_t <= 0:
        raise PrecisionExhausted("trace order not determined")
    disc = tr * tr - 4
    if not disc.is_zero():
        return Kind.STRICTLY_ELLIPTIC
    if not disc.is_exact:
        raise PrecisionExhausted("cannot separate parabolic from elliptic at this precision")
    if M.b.is_exact_zero() and M.c.is_exact_zero() and (M.a - M.d).is_exact_zero():
        return Kind.IDENTITY
    if M.b.is_zero() and M.c.is_zero() and (M.a - M.d).is_zero():
        raise PrecisionExhausted("cannot separate identity from parabolic at this precision")
    return Kind.PARABOLIC


_P = MatNA(0, -1, 1, 0)


def kak(M: MatNA, terms: int | None = None):
    """Cartan decomposition ``M = m @ a @ n`` with ``m, n`` integral and
    ``a = diag(t^-L, t^L)``, ``L = lognorm(M)``.

    Smith-style pivoting: move an entry of minimal order to the corner with
    the integral swap ``[[0,-1],[1,0]]``, then clear its row and column with
    integral elementary matrices.
    """
    L = lognorm(M)
    if L == 0:
        return M, MatNA.identity(), MatNA.identity()
    ords = [e.ord_lower_bound() for e in M.entries]
    k = ords.index(min(ords))
    R = _P if k in (2, 3) else MatNA.identity()
    C = _P if k in (1, 3) else MatNA.identity()
    Mp = R @ M @ C
    ap, bp, cp = Mp.a, Mp.b, Mp.c
    ainv = ap.inv(terms)
    Er_inv = MatNA(1, 0, cp * ainv, 1)
    Ec_inv = MatNA(1, bp * ainv, 0, 1)
    lam = Series.monomial(1, -L)
    u = ap * lam.inv()
    n = MatNA(u, 0, 0, u.inv(terms)) @ Ec_inv @ C.inverse()
    m = R.inverse() @ Er_inv
    a = MatNA(lam, 0, 0, lam.inv())
    return m, a, n


def _eigvec(M: MatNA, lam: Series) -> P1NA:
    c1 = (M.b, lam - M.a)
    c2 = (lam - M.d, M.c)
    b1 = min(x.ord_lower_bound() for x in c1)
    b2 = min(x.ord_lower_bound() for x in c2)
    x, y = c1 if b1 <= b2 else c2
    return P1NA(x, y)


def eigenvalues(M: MatNA, terms: int | None = None):
    """``(lambda_big, lambda_small)`` for a hyperbolic matrix."""
    tr = M.trace()
    root = (1 - 4 * (tr * tr).inv(terms)).sqrt(terms)
    big = tr * (1 + root) * Series.const(Fraction(1, 2))
    return big, big.inv(terms)


def fixed_points(M: MatNA, terms: int | None = None):
    """``(z_att, z_rep)`` of a hyperbolic matrix."""
    if classify(M) is not Kind.HYPERBOLIC:
        raise NotHyperbolic("matrix is not hyperbolic")
    big, small = eigenvalues(M, terms)
    return _eigvec(M, big), _eigvec(M, small)


@dataclass(frozen=True, eq=False)
class BallNA:
    """Closed spherical ball ``{v : dsph_na(v, center) >= r}`` with ``r >= 0``.

    Its boundary type-2 point is described by :meth:`disk`; radius 0 is the
    whole line, whose point is the Gauss point.
    """

    center: P1NA
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r < 0:
            raise ValueError("spherical balls have radius order >= 0")

    @classmethod
    def gauss(cls) -> "BallNA":
        return cls(P1NA.zero(), Fraction(0))

    @classmethod
    def affine(cls, a, rho) -> "BallNA":
        """The type-2 point of the affine disk ``{ord(z - a) >= rho}``."""
        a, rho = _S(a), Fraction(rho)
        oa = a.ord_lower_bound()
        if oa >= 0 and rho >= 0:
            return cls(P1NA.from_series(a), rho)
        if oa >= rho:  # disk contains 0 and reaches past the unit disk
            return cls(P1NA.infinity(), -rho)
        # 0 outside the disk and |a| > 1: read it in the chart w = 1/z
        return cls(P1NA.from_series(a), rho - 2 * oa)

    @property
    def flipped(self) -> bool:
        """True when the ball is naturally described in the chart ``1/z``."""
        return not self.center.in_unit_disk()

    def contains(self, v: P1NA) -> bool:
        return dsph_na(v, self.center) >= self.r

    def disk(self, terms: int | None = None):
        """``(a, rho)``: the affine disk of the same type-2 point."""
        if self.r == 0:
            return Series.zero(), Fraction(0)
        if not self.flipped:
            return self.center.affine(terms), self.r
        # ball {ord(w - b) >= r} with b = y/x, ord b > 0
        b = self.center.y * self.center.x.inv(terms)
        if b.ord_lower_bound() >= self.r:
            return Series.zero(), -self.r
        s = b.ord
        return b.inv(terms), self.r - 2 * s

    def same_point(self, other: "BallNA") -> bool:
        return dhyp(self, other) == 0

    def __repr__(self):
        return f"BallNA(center={self.center!r}, r={self.r})"


def _join_order(a, rho, b, sig):
    m = min(rho, sig)
    diff = a - b
    if diff.is_zero():
        if diff.prec_t < m:
            raise PrecisionExhausted("disk centers not resolved")
        return m
    return min(m, diff.ord)


def dhyp(x: BallNA, y: BallNA):
    """Hyperbolic distance between the type-2 points of two balls."""
    a, rho = x.disk()
    b, sig = y.disk()
    j = _join_order(a, rho, b, sig)
    return (rho - j) + (sig - j)


def att_rep_balls(M: MatNA, terms: int | None = None):
    """``(B_att, B_rep)`` of radius order ``lognorm(M)``.

    Everything outside ``B_rep`` is mapped into ``B_att``.
    """
    L = lognorm(M)
    if L == 0:
        raise NormOne("lognorm is 0; no attracting/repelling balls")
    m, _, n = kak(M, terms)
    rep = mobius_apply(n.inverse(), P1NA.zero())
    att = mobius_apply(m, P1NA.infinity())
    return BallNA(att, L), BallNA(rep, L)


def point_key(p: P1NA, digits=8, terms: int | None = None):
    """Hashable chart-and-coefficients key of ``p`` truncated at ``t^digits``.

    Points that are equal up to precision share a key whenever both are
    known to at least ``digits``; different keys certify distinct points.
    """
    if p.in_unit_disk():
        chart, s = "z", p.affine(terms)
    else:
        chart, s = "w", p.y * p.x.inv(terms)
    if s.prec_t < digits:
        raise PrecisionExhausted("point not known to the key precision")
    s = s.truncate_t(digits)
    return chart, s._key()
