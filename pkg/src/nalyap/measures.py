"""Stationary samples, models given by finitely many type-2 points, residual measures.

A model is a finite set of marked type-2 points (always containing the
Gauss point).  A type-1 point ``z`` picks a *branch* at each marked point
``x = disk(a, rho)``: either it lies outside the disk, or it lies inside
and sits in the residue class given by the coefficient of ``t^rho`` in
``z - a``.  The tuple of branches is the point's component signature; two
points lie in the same connected component of the complement of the model
exactly when their signatures agree.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from .laurent import DEFAULT_TERMS, GRat, PrecisionExhausted, Series
from .lyapunov import LOX_TOL, TooFewHyperbolic
from .sl2c import P1C, attracting_fixed_point_c, eigenvalues_c
from .sl2na import BallNA, MatNA, P1NA, att_rep_balls, dhyp, fixed_points, mobius_apply
from .walks import MeasureSpec, map_samples, product_c, sample_word, stream, tracked_right_product

OUT = "out"


class UnmatchedMass(RuntimeError):
    pass


@dataclass
class P1Sample:
    """Attracting fixed points of sampled products (excluded samples dropped)."""

    points: list
    side: str
    n: int
    S: int
    seed: int
    excluded: int = 0
    t0: complex | None = None
    reversed: bool = False

    @property
    def weight(self) -> float:
        return 1.0 / self.S


@dataclass
class ModelSpec:
    marked: tuple

    def __post_init__(self):
        marked = list(self.marked)
        g = BallNA.gauss()
        if not any(dhyp(b, g) == 0 for b in marked):
            marked.insert(0, g)
        for i in range(len(marked)):
            for j in range(i):
                if dhyp(marked[i], marked[j]) == 0:
                    raise ValueError("marked type-2 points must be pairwise distinct")
        self.marked = tuple(marked)
        self._disks = [b.disk() for b in self.marked]

    @classmethod
    def trivial(cls) -> "ModelSpec":
        return cls((BallNA.gauss(),))

    @property
    def disks(self):
        return self._disks

    def radius_bound(self):
        """``max dhyp(x, Gauss)`` over marked points."""
        g = BallNA.gauss()
        return max(dhyp(b, g) for b in self.marked)


@dataclass
class Atom:
    key: tuple
    mass: float
    count: int
    label: str


@dataclass
class EmpiricalMeasure:
    atoms: list
    deficit: float = 0.0

    def masses(self) -> dict:
        return {a.key: a.mass for a in self.atoms}


# ---------------------------------------------------------------------------
# branches and signatures


def branch(z: P1NA, a: Series, rho) -> object:
    """``OUT`` or the residue (coefficient of ``t^rho`` in ``z - a``)."""
    if z.y.is_zero():
        if z.y.prec_t > 0 or z.y.is_exact:
            return OUT
        raise PrecisionExhausted("cannot tell whether the point is infinity")
    oy = z.y.ord
    d = z.x - a * z.y
    if d.is_zero():
        if d.prec_t - oy > rho:
            return GRat(0)
        raise PrecisionExhausted("point not resolved at this marked radius")
    od = d.ord - oy
    if od < rho:
        return OUT
    if od > rho:
        return GRat(0)
    return d.leading / z.y.leading


def signature(z: P1NA, model: ModelSpec) -> tuple:
    return tuple(branch(z, a, rho) for a, rho in model.disks)


def same_component(z1: P1NA, z2: P1NA, model: ModelSpec) -> bool:
    return signature(z1, model) == signature(z2, model)


def _sig_label(sig) -> str:
    return "(" + ", ".join("inf" if s == OUT else str(s) for s in sig) + ")"


def _sig_key(sig):
    # deterministic ordering: OUT last, residues by (re, im)
    return tuple((1, 0, 0) if s == OUT else (0, s.re, s.im) for s in sig)


# ---------------------------------------------------------------------------
# sampling


def _stat_sample(spec, side, mats, n, seed, terms, i):
    word = sample_word(spec, n, stream(seed, i))
    if side == "na":
        M = tracked_right_product(spec, word, terms).matrix()
        tr = M.trace()
        if tr.is_zero() or tr.ord >= 0:
            return None
        return fixed_points(M, terms)[0]
    M, acc = product_c(spec, word, None, "right", mats)
    big, _ = eigenvalues_c(M)
    if big == 0 or abs(acc + math.log(abs(big))) <= LOX_TOL:
        return None
    return attracting_fixed_point_c(M)


def sample_stationary(spec: MeasureSpec, side: str = "na", n: int = 60, S: int = 200,
                      seed: int = 0, t0=None, reversed: bool = False,
                      terms: int = DEFAULT_TERMS, workers: int = 1) -> P1Sample:
    """Attracting fixed points of ``g_{w_1} ... g_{w_n}``.

    With ``reversed=True`` the inverse generators are used, which samples
    the stationary measure of the inverted walk.
    """
    if side not in ("na", "complex"):
        raise ValueError("side must be 'na' or 'complex'")
    sp = spec.inverted() if reversed else spec
    mats = None if side == "na" else sp.specialize(t0)
    res = map_samples(partial(_stat_sample, sp, side, mats, n, seed, terms), S, workers)
    pts = [p for p in res if p is not None]
    if len(pts) * 2 < S:
        raise TooFewHyperbolic(f"only {len(pts)} of {S} samples are hyperbolic")
    return P1Sample(pts, side, n, S, seed, S - len(pts), t0, reversed)


def residual_measure(sample: P1Sample, model: ModelSpec) -> EmpiricalMeasure:
    """Empirical mass of each component of the complement of the model."""
    counts = Counter(signature(z, model) for z in sample.points)
    atoms = [Atom(sig, c / sample.S, c, _sig_label(sig)) for sig, c in counts.items()]
    atoms.sort(key=lambda a: (-a.count, _sig_key(a.key)))
    return EmpiricalMeasure(atoms, sample.excluded / sample.S)


# ---------------------------------------------------------------------------
# comparison with the complex side


def complex_signature(z: P1C, model: ModelSpec, t0, margin: float = 0.25) -> tuple:
    """Float shadow of :func:`signature` at ``t = t0``.

    Inside the marked disk ``(a, rho)`` means ``|z - a(t0)| <= |t0|^(rho - margin)``;
    the branch is then the rescaled offset ``(z - a(t0)) / t0^rho``.
    """
    out = []
    zc = z.affine() if z.y != 0 else None
    for a, rho in model.disks:
        if zc is None or not math.isfinite(abs(zc)):
            out.append(OUT)
            continue
        ac = a.exact_center().evaluate_at(t0)
        diff = zc - ac
        if abs(diff) <= abs(t0) ** (float(rho) - margin):
            out.append(diff / complex(t0) ** float(rho))
        else:
            out.append(OUT)
    return tuple(out)


def _compatible(s1, s2, tol) -> float | None:
    """Max residue distance if both signatures choose the same branches."""
    worst = 0.0
    for a, b in zip(s1, s2):
        if (a == OUT) != (b == OUT):
            return None
        if a == OUT:
            continue
        d = abs(complex(a) - complex(b))
        if d > tol:
            return None
        worst = max(worst, d)
    return worst


@dataclass
class ResidualComparison:
    tv: float
    matched: list
    unmatched_mass: float
    na_measure: EmpiricalMeasure
    clusters: list = field(default_factory=list)
    cluster_tol: float = 0.0

    def as_dict(self) -> dict:
        return {
            "tv": self.tv,
            "unmatched_mass": self.unmatched_mass,
            "cluster_tol": self.cluster_tol,
            "matched": [
                {"atom": lab, "na_mass": a, "complex_mass": b} for lab, a, b in self.matched
            ],
        }


def compare_residual(spec: MeasureSpec, model: ModelSpec, t0, n: int = 60, S: int = 2000,
                     seed: int = 0, cluster_tol: float | None = None, margin: float = 0.25,
                     terms: int = DEFAULT_TERMS, workers: int = 1) -> ResidualComparison:
    """Total-variation distance between the t-adic residual measure and the
    clustered complex stationary sample at ``t0``.

    Both sides are normalized by their included (hyperbolic) samples.
    """
    if cluster_tol is None:
        cluster_tol = abs(t0) ** 0.5
    na = sample_stationary(spec, "na", n, S, seed, terms=terms, workers=workers)
    meas = residual_measure(na, model)
    cs = sample_stationary(spec, "complex", n, S, seed, t0=t0, workers=workers)
    clusters = []  # [signature representative, count]
    for z in cs.points:
        sig = complex_signature(z, model, t0, margin)
        for cl in clusters:
            if _compatible(cl[0], sig, cluster_tol) is not None:
                cl[1] += 1
                break
        else:
            clusters.append([sig, 1])
    n_na = len(na.points)
    n_c = len(cs.points)
    c_mass = {a.key: 0 for a in meas.atoms}
    unmatched = 0
    for sig, cnt in clusters:
        best, best_d = None, None
        for a in meas.atoms:
            d = _compatible(a.key, sig, cluster_tol)
            if d is not None and (best_d is None or d < best_d):
                best, best_d = a, d
        if best is None:
            unmatched += cnt
        else:
            c_mass[best.key] += cnt
    unmatched_frac = unmatched / n_c
    matched = [(a.label, a.count / n_na, c_mass[a.key] / n_c) for a in meas.atoms]
    tv = 0.5 * (sum(abs(x - y) for _, x, y in matched) + unmatched_frac)
    report = ResidualComparison(tv, matched, unmatched_frac, meas, clusters, cluster_tol)
    if unmatched_frac > 0.2:
        raise UnmatchedMass(f"{unmatched_frac:.1%} of the complex mass matches no atom")
    return report


# ---------------------------------------------------------------------------
# north-south dynamics on a model


def random_component_points(model: ModelSpec, rng: np.random.Generator, count: int = 20,
                            max_tries: int = 20000, degree: int = 3, span: int = 3):
    """Exact Laurent-polynomial points lying in pairwise different components.

    Candidates are ``sum_{k=-1}^{degree} c_k t^k`` with integer ``c_k`` in
    ``[-span, span]`` (the ``t^-1`` term is present one time in four), plus
    the point at infinity.
    """
    pts, sigs = [], set()
    cand = [P1NA.infinity()]
    for _ in range(max_tries):
        if len(pts) >= count:
            break
        if not cand:
            cs = [int(c) for c in rng.integers(-span, span + 1, size=degree + 2)]
            if rng.integers(0, 4) != 0:
                cs[0] = 0
            cand.append(P1NA.from_series(Series.from_coeffs(cs, val=-1)))
        z = cand.pop()
        s = signature(z, model)
        if s not in sigs:
            sigs.add(s)
            pts.append(z)
    return pts


@dataclass
class NorthSouthReport:
    ok: bool
    rep_signature: tuple
    att_signature: tuple
    checked: int
    skipped: int
    failures: list


def north_south(M: MatNA, model: ModelSpec, points) -> NorthSouthReport:
    """Check that points outside the repelling component land in one component."""
    B_att, B_rep = att_rep_balls(M)
    rep_sig = signature(B_rep.center, model)
    att_sig = signature(B_att.center, model)
    fails, checked, skipped = [], 0, 0
    for z in points:
        if signature(z, model) == rep_sig:
            skipped += 1
            continue
        checked += 1
        img = signature(mobius_apply(M, z), model)
        if img != att_sig:
            fails.append((z, img))
    return NorthSouthReport(not fails, rep_sig, att_sig, checked, skipped, fails)
