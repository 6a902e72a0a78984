"""Certify non-elementary groups and handle the elementary closed forms.

Words in this module run over the group alphabet: letter ``k + 1`` is
generator ``k`` and ``-(k + 1)`` is its inverse.  Candidate words are
visited by length, then lexicographically in the order
``g0, g0^-1, g1, g1^-1, ...``, skipping immediate cancellations.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .laurent import CoefficientNotASquare, PrecisionExhausted, Series
from .sl2na import (
    Kind,
    MatNA,
    P1NA,
    _eigvec,
    classify,
    fixed_points,
    mobius_apply,
    point_key,
)
from .walks import MeasureSpec

log = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 6
SEARCH_TERMS = 24


class EllipticUnresolved(ValueError):
    pass


class NotAffine(ValueError):
    pass


class NoSwapElement(ValueError):
    pass


NON_ELEMENTARY = "NonElementaryCertified"
AFFINE = "Affine"
ZERO_INFTY = "ZeroInfty"
GOOD_REDUCTION = "GoodReductionSuspected"
UNDETERMINED = "Undetermined"


@dataclass
class GroupClass:
    tag: str
    depth: int
    witness: Optional[tuple] = None
    conjugator: Optional[MatNA] = None
    detail: dict = field(default_factory=dict)


@dataclass
class FixedPointStructure:
    kind: str  # "two", "one" or "none"
    points: tuple = ()
    swap: bool = False


def _alphabet(spec: MeasureSpec):
    out = []
    for k in range(len(spec)):
        out += [k + 1, -(k + 1)]
    return out


def letter_matrix(spec: MeasureSpec, letter: int) -> MatNA:
    g = spec.mats[abs(letter) - 1]
    return g if letter > 0 else g.inverse()


def word_matrix(spec: MeasureSpec, word) -> MatNA:
    M = MatNA.identity()
    for a in word:
        M = M @ letter_matrix(spec, a)
    return M


def word_label(spec: MeasureSpec, word) -> list:
    return [spec.names[abs(a) - 1] + ("" if a > 0 else "^-1") for a in word]


def reduced_words(spec: MeasureSpec, max_len: int):
    """Reduced group words in (length, lexicographic) order, with their matrices."""
    alpha = _alphabet(spec)
    level = [((), MatNA.identity())]
    for _ in range(max_len):
        nxt = []
        for word, M in level:
            for a in alpha:
                if word and word[-1] == -a:
                    continue
                w2 = word + (a,)
                M2 = M @ letter_matrix(spec, a)
                nxt.append((w2, M2))
                yield w2, M2
        level = nxt


def _distinct(points) -> bool:
    for p, q in itertools.combinations(points, 2):
        if p == q:
            return False
    return True


def _search(spec: MeasureSpec, max_len: int, terms: int):
    seen = []          # (word, fixed points) of hyperbolic words, in search order
    buckets = {}       # point key -> indices into seen
    n_hyp = 0
    digits = max(1, terms // 2)
    for word, M in reduced_words(spec, max_len):
        if classify(M) is not Kind.HYPERBOLIC:
            continue
        n_hyp += 1
        fp = fixed_points(M, terms)
        keys = [point_key(z, digits, terms) for z in fp]
        # equal truncated keys count as a shared point (conservative)
        sharing = set()
        for k in keys:
            sharing.update(buckets.get(k, ()))
        if len(sharing) < len(seen):
            for j in range(len(seen)):
                if j not in sharing and _distinct(seen[j][1] + fp):
                    return (seen[j][0], word), n_hyp
        idx = len(seen)
        seen.append((word, fp))
        for k in keys:
            buckets.setdefault(k, []).append(idx)
    return None, n_hyp


def find_hyperbolic_pair(spec: MeasureSpec, max_len: int = DEFAULT_MAX_LEN, terms: int = SEARCH_TERMS):
    """First two hyperbolic words whose four fixed points are pairwise distinct."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return _search(spec, max_len, terms)[0]


def verify_witness(spec: MeasureSpec, pair, terms: int = SEARCH_TERMS) -> bool:
    """Independent re-check of a certificate returned by :func:`find_hyperbolic_pair`."""
    pts = []
    for w in pair:
        M = word_matrix(spec, w)
        if classify(M) is not Kind.HYPERBOLIC:
            return False
        pts += list(fixed_points(M, terms))
    return _distinct(pts)


def generator_fixed_points(g: MatNA, terms: int = SEARCH_TERMS):
    """Fixed points of one generator; ``None`` means every point is fixed."""
    kind = classify(g)
    if kind is Kind.IDENTITY:
        return None
    if kind is Kind.HYPERBOLIC:
        return list(fixed_points(g, terms))
    tr = g.trace()
    half = Series.const(Fraction(1, 2))
    if kind is Kind.PARABOLIC:
        return [_eigvec(g, tr * half)]
    try:
        s = (tr * tr - 4).sqrt(terms)
    except CoefficientNotASquare as exc:
        raise EllipticUnresolved(str(exc)) from None
    return [_eigvec(g, (tr + s) * half), _eigvec(g, (tr - s) * half)]


def is_fixed(g: MatNA, z: P1NA) -> bool:
    wx = g.a * z.x + g.b * z.y
    wy = g.c * z.x + g.d * z.y
    return (wx * z.y - wy * z.x).is_zero()


def _swaps(g: MatNA, p: P1NA, q: P1NA) -> bool:
    return mobius_apply(g, p) == q and mobius_apply(g, q) == p


def common_fixed_points(spec: MeasureSpec, max_candidates: int = 16,
                        terms: int = SEARCH_TERMS) -> FixedPointStructure:
    """Common fixed points, or an invariant pair (possibly swapped)."""
    sets = []
    gens = []
    for g in spec.mats:
        fs = generator_fixed_points(g, terms)
        if fs is not None:
            sets.append(fs)
            gens.append(g)
    if not gens:
        return FixedPointStructure("two", (P1NA.infinity(), P1NA.zero()))
    common = [z for z in sets[0] if all(is_fixed(g, z) for g in gens)]
    if len(common) >= 2:
        return FixedPointStructure("two", tuple(common[:2]))
    if len(common) == 1:
        return FixedPointStructure("one", (common[0],))
    tried = 0
    for fs in sets:
        if len(fs) != 2 or fs[0] == fs[1]:
            continue
        tried += 1
        if tried > max_candidates:
            break
        p, q = fs
        ok, swap = True, False
        for g in gens:
            if is_fixed(g, p) and is_fixed(g, q):
                continue
            if _swaps(g, p, q):
                swap = True
                continue
            ok = False
            break
        if ok:
            return FixedPointStructure("two", (p, q), swap)
    return FixedPointStructure("none")


def conjugator_to_infinity(z: P1NA, terms: int | None = None) -> MatNA:
    """``h`` in SL(2) with ``h(inf) = z``."""
    x, y = z.x, z.y
    if x.ord_lower_bound() == 0 and not x.is_zero():
        return MatNA(x, 0, y, x.inv(terms))
    return MatNA(x, -y.inv(terms), y, 0)


def conjugator_pair(z_inf: P1NA, z_zero: P1NA, terms: int | None = None) -> MatNA:
    """``h`` in SL(2) with ``h(inf) = z_inf`` and ``h(0) = z_zero``."""
    k = z_inf.wedge(z_zero).inv(terms)
    return MatNA(z_inf.x, z_zero.x * k, z_inf.y, z_zero.y * k)


def _upper_triangular(spec: MeasureSpec) -> bool:
    return all(g.c.is_exact_zero() for g in spec.mats)


def chi_na_affine(spec: MeasureSpec, conjugator: MatNA | None = None) -> Fraction:
    """``|sum p_i log|alpha_i||`` after conjugating to upper-triangular form."""
    if conjugator is None and not _upper_triangular(spec):
        st = common_fixed_points(spec)
        if st.kind == "none":
            raise NotAffine("no common fixed point")
        conjugator = conjugator_to_infinity(st.points[0])
    mats = spec.mats if conjugator is None else [g.conj_by(conjugator) for g in spec.mats]
    total = Fraction(0)
    for p, g in zip(spec.weights, mats):
        if not g.c.is_zero():
            raise NotAffine("conjugated generator is not upper triangular")
        total += p * g.a.logabs_na
    return abs(total)


def _diag_or_swap(g: MatNA):
    if g.b.is_zero() and g.c.is_zero():
        return "diagonal"
    if g.a.is_zero() and g.d.is_zero():
        return "swap"
    return None


def chi_na_zero_infty(spec: MeasureSpec, conjugator: MatNA | None = None,
                      report: dict | None = None) -> Fraction:
    """Exactly 0 once the preconditions (invariant pair, one swap) are verified.

    ``report``, if given, receives the verified preconditions.
    """
    if conjugator is None and not all(_diag_or_swap(g) for g in spec.mats):
        st = common_fixed_points(spec)
        if st.kind != "two":
            raise NoSwapElement("no invariant pair of points")
        conjugator = conjugator_pair(*st.points)
    mats = spec.mats if conjugator is None else [g.conj_by(conjugator) for g in spec.mats]
    roles = []
    for name, g in zip(spec.names, mats):
        role = _diag_or_swap(g)
        if role is None:
            raise NoSwapElement(f"generator {name!r} does not preserve the pair {{0, inf}}")
        roles.append(role)
    if "swap" not in roles:
        raise NoSwapElement("no generator swaps 0 and infinity; use the affine formula")
    info = {
        "invariant_pair": "{0, inf}",
        "conjugated": conjugator is not None,
        "roles": dict(zip(spec.names, roles)),
    }
    log.info("zero-infinity preconditions verified: %s", info)
    if report is not None:
        report.update(info)
    return Fraction(0)


def classify_spec(spec: MeasureSpec, max_len: int = DEFAULT_MAX_LEN,
                  terms: int = SEARCH_TERMS) -> GroupClass:
    pair, n_hyp = _search(spec, max_len, terms)
    if pair is not None:
        return GroupClass(NON_ELEMENTARY, max_len, witness=pair,
                          detail={"witness_labels": [word_label(spec, w) for w in pair]})
    try:
        st = common_fixed_points(spec, terms=terms)
    except (EllipticUnresolved, PrecisionExhausted) as exc:
        return GroupClass(UNDETERMINED, max_len, detail={"reason": str(exc)})
    if st.kind == "two" and st.swap:
        return GroupClass(ZERO_INFTY, max_len, conjugator=conjugator_pair(*st.points))
    if st.kind in ("one", "two"):
        return GroupClass(AFFINE, max_len, conjugator=conjugator_to_infinity(st.points[0]))
    if n_hyp == 0:
        return GroupClass(GOOD_REDUCTION, max_len)
    return GroupClass(UNDETERMINED, max_len, detail={"hyperbolic_words_seen": n_hyp})
