"""Truncated Laurent/Puiseux series over the Gaussian rationals.

A :class:`Series` lives in the variable ``u = t**(1/ram)`` and stores a finite
run of exact coefficients starting at its leading term, together with an
absolute precision ``prec`` (in powers of ``u``): every coefficient of an
exponent ``< prec`` is known exactly.  Exact Laurent polynomials carry
``prec = INF``.

Coefficients are kept as Gaussian-integer numerators over one common positive
denominator, which keeps multiplication in plain integer arithmetic.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

INF = math.inf
DEFAULT_TERMS = 64


class PrecisionExhausted(ArithmeticError):
    """The working precision does not determine the requested quantity."""


class CoefficientNotASquare(ValueError):
    pass


class InexactSeries(ValueError):
    pass


@dataclass(frozen=True)
class GRat:
    """Exact Gaussian rational ``re + i*im``."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GRat":
        if isinstance(x, GRat):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(Fraction(x))
        if isinstance(x, float):
            return cls(Fraction(x))
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __add__(self, other):
        o = GRat.coerce(other)
        return GRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GRat.coerce(other)
        return GRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GRat.coerce(other) - self

    def __mul__(self, other):
        o = GRat.coerce(other)
        return GRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GRat(self.re, -self.im)

    def __truediv__(self, other):
        o = GRat.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GRat(p.re / n, p.im / n)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _exact_sqrt_fraction(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def grat_sqrt(c: GRat) -> GRat | None:
    """Exact square root in Q(i), or ``None`` when ``c`` is not a square there."""
    x, y = c.re, c.im
    if y == 0:
        r = _exact_sqrt_fraction(abs(x))
        if r is None:
            return None
        return GRat(r) if x >= 0 else GRat(0, r)
    m = _exact_sqrt_fraction(x * x + y * y)
    if m is None:
        return None
    a = _exact_sqrt_fraction((x + m) / 2)
    if a is None or a == 0:
        return None
    return GRat(a, y / (2 * a))


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _as_t_exponent(e) -> Fraction:
    return Fraction(e)


class Series:
    """Immutable truncated Laurent/Puiseux series with Q(i) coefficients.

    Use the constructors :meth:`from_coeffs`, :meth:`monomial` and
    :meth:`zero` rather than calling ``Series(...)`` directly.
    """

    __slots__ = ("ram", "val", "prec", "_re", "_im", "_den")

    def __init__(self, re, im, den, val, ram=1, prec=INF, _normalized=False):
        if _normalized:
            self.ram, self.val, self.prec = ram, val, prec
            self._re, self._im, self._den = re, im, den
            return
        re = list(re)
        im = [0] * len(re) if im is None else list(im)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if prec != INF:
            keep = max(0, min(len(re), prec - val))
            re, im = re[:keep], im[:keep]
        lo = 0
        while lo < len(re) and re[lo] == 0 and im[lo] == 0:
            lo += 1
        hi = len(re)
        while hi > lo and re[hi - 1] == 0 and im[hi - 1] == 0:
            hi -= 1
        re, im = re[lo:hi], im[lo:hi]
        val = val + lo
        if not re:
            val = 0
            den = 1
        elif den != 1:
            g = den
            for x in re:
                if g == 1:
                    break
                g = gcd(g, x)
            for x in im:
                if g == 1:
                    break
                g = gcd(g, x)
            if g != 1:
                re = [x // g for x in re]
                im = [x // g for x in im]
                den //= g
        if not any(im):
            im = None
        else:
            im = tuple(im)
        self.ram, self.val, self.prec = ram, val, prec
        self._re, self._im, self._den = tuple(re), im, den
        if prec == INF and re:
            self._reduce_ram()

    def _reduce_ram(self):
        if self.ram == 1:
            return
        g = self.ram
        for k, (r, i) in enumerate(self._iter_num()):
            if r or i:
                g = gcd(g, self.val + k)
                if g == 1:
                    return
        if g == 1:
            return
        re = [0] * ((len(self._re) - 1) // g + 1)
        im = [0] * len(re)
        off = self.val % g
        for k, (r, i) in enumerate(self._iter_num()):
            if r or i:
                re[(k + off) // g - 0] = r
                im[(k + off) // g - 0] = i
        # val is a multiple of g because the leading coefficient is nonzero
        self.val //= g
        self.ram //= g
        self._re = tuple(re)
        self._im = tuple(im) if any(im) else None

    def _iter_num(self):
        im = self._im if self._im is not None else (0,) * len(self._re)
        return zip(self._re, im)

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def from_coeffs(cls, coeffs: Iterable, val: int = 0, ram: int = 1, prec=INF) -> "Series":
        """Series ``sum c_k u**(val+k)`` with ``u = t**(1/ram)``; ``prec`` in u-units."""
        gs = [GRat.coerce(c) for c in coeffs]
        den = 1
        for g in gs:
            den = _lcm(den, _lcm(g.re.denominator, g.im.denominator))
        re = [int(g.re * den) for g in gs]
        im = [int(g.im * den) for g in gs]
        return cls(re, im, den, val, ram, prec)

    @classmethod
    def monomial(cls, c=1, exponent=0) -> "Series":
        """``c * t**exponent`` with a rational exponent."""
        e = Fraction(exponent)
        return cls.from_coeffs([c], val=e.numerator, ram=e.denominator)

    @classmethod
    def const(cls, c) -> "Series":
        return cls.from_coeffs([c])

    @classmethod
    def zero(cls, prec=INF, ram: int = 1) -> "Series":
        return cls((), None, 1, 0, ram, prec)

    @classmethod
    def coerce(cls, x) -> "Series":
        if isinstance(x, Series):
            return x
        return cls.const(x)

    # ------------------------------------------------------------------
    # inspection
    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_zero(self) -> bool:
        """True when no coefficient below the precision is nonzero."""
        return not self._re

    def is_exact_zero(self) -> bool:
        return not self._re and self.prec == INF

    @property
    def den(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(GRat(Fraction(r, d), Fraction(i, d)) for r, i in self._iter_num())

    def __len__(self):
        return len(self._re)

    @property
    def ord(self):
        """Exact t-order in Q; ``INF`` for the exact zero series."""
        if not self._re:
            if self.prec == INF:
                return INF
            raise PrecisionExhausted(
                f"series is O(t^{Fraction(self.prec, self.ram)}); its order is unknown"
            )
        return Fraction(self.val, self.ram)

    @property
    def logabs_na(self):
        o = self.ord
        return -INF if o == INF else -o

    def ord_lower_bound(self):
        """The order if known, otherwise the precision (a lower bound for it)."""
        if self._re:
            return Fraction(self.val, self.ram)
        return INF if self.prec == INF else Fraction(self.prec, self.ram)

    @property
    def prec_t(self):
        return INF if self.prec == INF else Fraction(self.prec, self.ram)

    @property
    def leading(self) -> GRat:
        if not self._re:
            raise PrecisionExhausted("zero series has no leading coefficient")
        i = self._im[0] if self._im is not None else 0
        return GRat(Fraction(self._re[0], self._den), Fraction(i, self._den))

    def coeff(self, exponent) -> GRat:
        """Coefficient of ``t**exponent``."""
        e = Fraction(exponent) * self.ram
        if e.denominator != 1:
            return GRat(0)
        k = int(e)
        if self.prec != INF and k >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{exponent} is beyond the precision")
        j = k - self.val
        if not self._re or j < 0 or j >= len(self._re):
            return GRat(0)
        i = self._im[j] if self._im is not None else 0
        return GRat(Fraction(self._re[j], self._den), Fraction(i, self._den))

    # ------------------------------------------------------------------
    # structural helpers
    def lift(self, ram: int) -> "Series":
        """Re-express in ``u' = t**(1/ram)``; ``ram`` must be a multiple of ``self.ram``."""
        if ram == self.ram:
            return self
        if ram % self.ram:
            raise ValueError("ramification can only be lifted to a multiple")
        f = ram // self.ram
        n = len(self._re)
        re = [0] * ((n - 1) * f + 1) if n else []
        im = [0] * len(re)
        for k, (r, i) in enumerate(self._iter_num()):
            re[k * f] = r
            im[k * f] = i
        prec = INF if self.prec == INF else self.prec * f
        return Series(tuple(re), tuple(im) if self._im is not None else None,
                      self._den, self.val * f, ram, prec, _normalized=True)

    def _dense(self, lo: int, hi: int):
        """Numerator lists covering u-exponents [lo, hi)."""
        n = hi - lo
        re = [0] * n
        im = [0] * n
        im_src = self._im
        for k, r in enumerate(self._re):
            j = self.val + k - lo
            if 0 <= j < n:
                re[j] = r
                if im_src is not None:
                    im[j] = im_src[k]
        return re, im

    def truncate(self, prec) -> "Series":
        """Forget everything at u-exponents ``>= prec``."""
        if prec >= self.prec:
            return self
        return Series(self._re, self._im, self._den, self.val, self.ram, prec)

    def truncate_t(self, p) -> "Series":
        """Truncate at t-precision ``p`` (a rational)."""
        if p == INF:
            return self
        return self.truncate(_ceil_frac(Fraction(p) * self.ram))

    def truncate_rel(self, terms: int) -> "Series":
        """Keep the leading coefficient and ``terms`` more."""
        if not self._re:
            return self
        return self.truncate(self.val + terms + 1)

    def exact_center(self) -> "Series":
        """The stored coefficients read as an exact Laurent polynomial."""
        if self.prec == INF:
            return self
        return Series(self._re, self._im, self._den, self.val, self.ram, INF)

    def with_prec_t(self, p) -> "Series":
        """Exact center truncated to t-precision ``p`` (precision may be raised)."""
        s = self.exact_center()
        return s.truncate_t(p) if p != INF else s

    def shift(self, e) -> "Series":
        """Multiply by ``t**e`` (exact)."""
        e = Fraction(e)
        s = self
        if (e * s.ram).denominator != 1:
            s = s.lift(_lcm(s.ram, e.denominator))
        k = int(e * s.ram)
        prec = INF if s.prec == INF else s.prec + k
        if not s._re:
            return Series.zero(prec, s.ram)
        return Series(s._re, s._im, s._den, s.val + k, s.ram, prec, _normalized=True)

    def scale(self, c) -> "Series":
        return self * Series.const(c)

    # ------------------------------------------------------------------
    # arithmetic
    @staticmethod
    def _common(f: "Series", g: "Series"):
        if f.ram == g.ram:
            return f, g
        r = _lcm(f.ram, g.ram)
        return f.lift(r), g.lift(r)

    def __neg__(self):
        im = None if self._im is None else tuple(-x for x in self._im)
        return Series(tuple(-x for x in self._re), im, self._den, self.val,
                      self.ram, self.prec, _normalized=True)

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.coerce(other)
        f, g = Series._common(self, other)
        prec = min(f.prec, g.prec)
        if not g._re:
            return f.truncate(prec) if prec != INF else f
        if not f._re:
            return g.truncate(prec) if prec != INF else g
        lo = min(f.val, g.val)
        hi = max(f.val + len(f._re), g.val + len(g._re))
        if prec != INF:
            hi = min(hi, prec)
        if hi <= lo:
            return Series.zero(prec, f.ram)
        den = _lcm(f._den, g._den)
        fr, fi = f._dense(lo, hi)
        gr, gi = g._dense(lo, hi)
        a, b = den // f._den, den // g._den
        if a != 1:
            fr = [x * a for x in fr]
            fi = [x * a for x in fi]
        if b != 1:
            gr = [x * b for x in gr]
            gi = [x * b for x in gi]
        re = [x + y for x, y in zip(fr, gr)]
        im = [x + y for x, y in zip(fi, gi)]
        return Series(re, im, den, lo, f.ram, prec)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return Series.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            other = Series.coerce(other)
        f, g = Series._common(self, other)
        if f.is_exact_zero() or g.is_exact_zero():
            return Series.zero(ram=f.ram)
        vf = f.val if f._re else f.prec
        vg = g.val if g._re else g.prec
        prec = min(vf + g.prec, vg + f.prec)
        if not f._re or not g._re:
            return Series.zero(prec, f.ram)
        v = f.val + g.val
        n = len(f._re) + len(g._re) - 1
        if prec != INF:
            n = min(n, prec - v)
        if n <= 0:
            return Series.zero(prec, f.ram)
        re, im = _gauss_conv(f._re, f._im, g._re, g._im, n)
        return Series(re, im, f._den * g._den, v, f.ram, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Series):
            other = Series.coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return Series.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inv() ** (-k)
        result = Series.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inv(self, terms: int | None = None) -> "Series":
        """Multiplicative inverse; non-monomials give ``terms`` extra known coefficients."""
        if not self._re:
            if self.prec == INF:
                raise ZeroDivisionError("inverse of the zero series")
            raise PrecisionExhausted("inverse of a series indistinguishable from zero")
        terms = DEFAULT_TERMS if terms is None else terms
        rel = INF if self.prec == INF else self.prec - self.val
        if len(self._re) == 1 and rel == INF:
            c = self.leading
            return Series.from_coeffs([GRat(1) / c], val=-self.val, ram=self.ram)
        k = min(rel, terms + 1)
        re, im, den = _unit_inverse(self._re, self._im or (0,) * len(self._re), self._den, k)
        return Series(re, im, den, -self.val, self.ram, -self.val + k)

    def sqrt(self, terms: int | None = None, allow_float: bool = False):
        """Square root with leading coefficient a Q(i) square root of ours.

        Odd valuations double the ramification index.  If the leading
        coefficient is not a square in Q(i), either raise
        :class:`CoefficientNotASquare` or, with ``allow_float``, return a
        :class:`FloatSeries` (flagged float-coefficient result).
        """
        if not self._re:
            if self.prec == INF:
                return self
            raise PrecisionExhausted("square root of a series indistinguishable from zero")
        terms = DEFAULT_TERMS if terms is None else terms
        f = self if self.val % 2 == 0 else self.lift(2 * self.ram)
        c0 = f.leading
        r0 = grat_sqrt(c0)
        if r0 is None:
            if allow_float:
                return FloatSeries.sqrt_of(f, terms)
            raise CoefficientNotASquare(f"leading coefficient {c0} is not a square in Q(i)")
        rel = INF if f.prec == INF else f.prec - f.val
        k = min(rel, terms + 1)
        unit = (f.shift(Fraction(-f.val, f.ram))) * Series.const(GRat(1) / c0)
        s = _unit_sqrt(unit, k)
        out = s * Series.const(r0)
        out = out.shift(Fraction(f.val // 2, f.ram))
        if rel == INF:
            cand = out.exact_center()
            if cand * cand == f:
                return cand
        return out

    def evaluate_at(self, t0) -> complex:
        """Value of the exact Laurent/Puiseux polynomial at ``t0`` (principal branch)."""
        if self.prec != INF:
            raise InexactSeries("cannot evaluate a series with a finite precision marker")
        if not self._re:
            return 0j
        t0 = complex(t0)
        if t0 == 0:
            raise ZeroDivisionError("evaluation at t = 0")
        if self.ram == 1:
            u0 = t0
        elif t0.imag == 0 and t0.real > 0:
            u0 = complex(t0.real ** (1.0 / self.ram))
        else:
            u0 = cmath.exp(cmath.log(t0) / self.ram)
        acc = 0j
        im = self._im or (0,) * len(self._re)
        for r, i in zip(reversed(self._re), reversed(im)):
            acc = acc * u0 + complex(Fraction(r, self._den)) + 1j * float(Fraction(i, self._den))
        return acc * u0 ** self.val

    # ------------------------------------------------------------------
    def _key(self):
        g = self.ram
        if self.prec != INF:
            g = gcd(g, self.prec)
        for k, (r, i) in enumerate(self._iter_num()):
            if r or i:
                g = gcd(g, self.val + k)
        s = self
        nums = tuple((r, i) for r, i in self._iter_num())
        if g > 1:
            nums = tuple(x for k, x in enumerate(nums) if (s.val + k) % g == 0)
        prec = INF if self.prec == INF else self.prec // g
        return (self.ram // g, self.val // g if self._re else 0, nums, self._den, prec)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GRat, complex)):
            other = Series.const(other)
        if not isinstance(other, Series):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def approx_equal(self, other) -> bool:
        """Equal up to the joint precision."""
        return (self - Series.coerce(other)).is_zero()

    def __repr__(self):
        return f"Series({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = Fraction(self.val + k, self.ram)
            cs = str(c)
            if c.im and c.re:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                tp = "t" if e == 1 else f"t^{e}" if e.denominator == 1 else f"t^({e})"
                parts.append(tp if c == GRat(1) else f"-{tp}" if c == GRat(-1) else f"{cs}*{tp}")
        if self.prec != INF:
            p = Fraction(self.prec, self.ram)
            parts.append(f"O(t^{p})" if p.denominator == 1 else f"O(t^({p}))")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _gauss_conv(ar, ai, br, bi, n):
    """Truncated product of Gaussian-integer coefficient sequences."""
    if len(ar) < len(br):
        ar, ai, br, bi = br, bi, ar, ai
    re = [0] * n
    im = [0] * n if (ai is not None or bi is not None) else None
    la = len(ar)
    for j, bj in enumerate(br):
        if j >= n:
            break
        bij = bi[j] if bi is not None else 0
        lim = min(la, n - j)
        if bj:
            for k in range(lim):
                re[k + j] += ar[k] * bj
            if ai is not None:
                for k in range(lim):
                    im[k + j] += ai[k] * bj
        if bij:
            for k in range(lim):
                im[k + j] += ar[k] * bij
            if ai is not None:
                for k in range(lim):
                    re[k + j] -= ai[k] * bij
    return re, im


def _unit_inverse(re, im, den, k):
    """First ``k`` coefficients of ``1/f`` for ``f = (re + i im)/den`` with re[0]+i im[0] != 0.

    Returns numerators and a common denominator.
    """
    c0 = (re[0], im[0])
    nrm = c0[0] * c0[0] + c0[1] * c0[1]
    cc = (c0[0], -c0[1])
    # h_k = -conj(c0) * sum_{j=1..k} c_j h_{k-j} N^{j-1};  g_k = h_k / N^{k+1}
    hr = [cc[0]]
    hi = [cc[1]]
    npow = [1]
    for _ in range(k):
        npow.append(npow[-1] * nrm)
    n = len(re)
    for m in range(1, k):
        sr = si = 0
        for j in range(1, min(m, n - 1) + 1):
            cr, ci = re[j], im[j]
            if not cr and not ci:
                continue
            xr, xi = hr[m - j], hi[m - j]
            w = npow[j - 1]
            sr += (cr * xr - ci * xi) * w
            si += (cr * xi + ci * xr) * w
        hr.append(-(cc[0] * sr - cc[1] * si))
        hi.append(-(cc[0] * si + cc[1] * sr))
    # g = den * sum h_m N^{-(m+1)} u^m  -> common denominator N^k
    top = npow[k]
    out_r = [hr[m] * npow[k - m - 1] * den for m in range(k)]
    out_i = [hi[m] * npow[k - m - 1] * den for m in range(k)]
    return out_r, out_i, top


def _unit_sqrt(unit: Series, k: int) -> Series:
    """First ``k`` coefficients of ``sqrt(1 + h)`` for a unit series with constant term 1."""
    n = len(unit._re)
    den = unit._den
    hre = [0] * k
    him = [0] * k
    im_src = unit._im or (0,) * n
    for j in range(1, min(n, k)):
        hre[j] = unit._re[j]
        him[j] = im_src[j]
    # s_m = sig_m / (den^m 2^(2m-1));  sig_m = H_m den^(m-1) 4^(m-1) - sum_{j=1}^{m-1} sig_j sig_{m-j}
    sr = [0] * k
    si = [0] * k
    dpow = [1]
    for _ in range(k):
        dpow.append(dpow[-1] * den)
    for m in range(1, k):
        w = dpow[m - 1] << (2 * (m - 1))
        ar, ai = hre[m] * w, him[m] * w
        for j in range(1, m):
            xr, xi, yr, yi = sr[j], si[j], sr[m - j], si[m - j]
            ar -= xr * yr - xi * yi
            ai -= xr * yi + xi * yr
        sr[m], si[m] = ar, ai
    # common denominator den^(k-1) 2^(2k-3) for k >= 2
    if k <= 1:
        return Series([1], None, 1, 0, unit.ram, unit.val + k if unit.prec != INF else k)
    K = k - 1
    top = dpow[K] << (2 * K - 1)
    out_r = [top]
    out_i = [0]
    for m in range(1, k):
        f = dpow[K - m] << (2 * (K - m))
        out_r.append(sr[m] * f)
        out_i.append(si[m] * f)
    return Series(out_r, out_i, top, 0, unit.ram, k)


class FloatSeries:
    """Float-coefficient series produced only by the opt-in ``sqrt`` fallback."""

    is_float_fallback = True

    def __init__(self, coeffs: Sequence[complex], val: int, ram: int, prec: int):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.val, self.ram, self.prec = val, ram, prec

    @property
    def ord(self):
        return Fraction(self.val, self.ram)

    @classmethod
    def sqrt_of(cls, f: Series, terms: int) -> "FloatSeries":
        rel = INF if f.prec == INF else f.prec - f.val
        k = int(min(rel, terms + 1))
        c = np.zeros(k, dtype=complex)
        for j, g in enumerate(f.coeffs[:k]):
            c[j] = complex(g)
        h = c / c[0]
        s = np.zeros(k, dtype=complex)
        s[0] = 1.0
        for m in range(1, k):
            s[m] = (h[m] - np.dot(s[1:m], s[m - 1:0:-1])) / 2
        return cls(s * cmath.sqrt(c[0]), f.val // 2, f.ram, f.val // 2 + k)

    def evaluate_at(self, t0) -> complex:
        u0 = cmath.exp(cmath.log(complex(t0)) / self.ram)
        return complex(np.polyval(self.coeffs[::-1], u0) * u0 ** self.val)

    def __repr__(self):
        return f"FloatSeries(val={self.val}, ram={self.ram}, prec={self.prec}, n={len(self.coeffs)})"


def min_ord(*fs: Series):
    """Exact ``min(ord f)`` over the arguments.

    Raises :class:`PrecisionExhausted` when an entry that is zero to its
    precision might still undercut the known orders.
    """
    known = [f.ord for f in fs if f._re]
    bound = [f.ord_lower_bound() for f in fs if not f._re]
    m = min(known) if known else INF
    for b in bound:
        if b <= m:
            if b == INF:
                continue
            raise PrecisionExhausted("minimum order not determined at this precision")
    return m


t = Series.monomial(1, 1)

# functional spellings of the operations


def add(f: Series, g: Series) -> Series:
    return f + g


def mul(f: Series, g: Series) -> Series:
    return f * g


def inv(f: Series, terms: int | None = None) -> Series:
    return f.inv(terms)


def sqrt(f: Series, terms: int | None = None, allow_float: bool = False):
    return f.sqrt(terms, allow_float)


def evaluate_at(f: Series, t0) -> complex:
    return f.evaluate_at(t0)


def ord(f: Series):  # noqa: A001 - mirrors the valuation's usual name
    return f.ord


def logabs_na(f: Series):
    return f.logabs_na
