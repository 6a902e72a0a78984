"""Command line interface: ``nalyap <subcommand> --spec FILE [options]``.

Exit codes: 0 success, 1 usage or configuration error, 2 computational
error (a JSON record ``{"error": ..., "message": ...}`` is printed).

Seed precedence: ``--seed`` flag, then the ``NALYAP_SEED`` environment
variable, then ``seed`` under ``[defaults]`` in the config file, then 0.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .classify import (
    EllipticUnresolved,
    NoSwapElement,
    NotAffine,
    classify_spec,
    word_label,
)
from .hybrid import continuity_check
from .laurent import DEFAULT_TERMS, PrecisionExhausted
from .lyapunov import (
    SweepRow,
    TooFewHyperbolic,
    chi_c,
    chi_na_exact,
    chi_na_kingman,
    chi_trace,
    sweep,
)
from .measures import ModelSpec, UnmatchedMass, compare_residual, sample_stationary, signature
from .sl2c import DetDrift
from .sl2na import BallNA, NormOne, NotHyperbolic, P1NA, kak, lognorm
from .specparse import (
    DetNotOne,
    LaurentSyntaxError,
    NonMonomialDivision,
    SpecError,
    parse_laurent,
    parse_spec,
    spec_hash,
)
from .walks import CapExceeded, WeightsNotNormalized, product_na

SEED_ENV = "NALYAP_SEED"

COMPUTATIONAL_ERRORS = (
    PrecisionExhausted,
    TooFewHyperbolic,
    UnmatchedMass,
    CapExceeded,
    NotAffine,
    NoSwapElement,
    EllipticUnresolved,
    DetDrift,
    NotHyperbolic,
    NormOne,
    ZeroDivisionError,
    OverflowError,
)
CONFIG_ERRORS = (
    SpecError,
    DetNotOne,
    WeightsNotNormalized,
    LaurentSyntaxError,
    NonMonomialDivision,
    OSError,
    UnicodeDecodeError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nalyap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nalyap {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, n=False, t=None, side=False):
        sp.add_argument("--spec", required=True, help="measure configuration (TOML)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--terms", type=int, default=DEFAULT_TERMS,
                        help="t-adic digits kept beyond the leading term")
        if n:
            sp.add_argument("--n", type=int, default=None, help="walk length")
            sp.add_argument("--S", type=int, default=None, help="number of samples")
        if t == "one":
            sp.add_argument("--t", type=float, default=None, help="specialization parameter")
        elif t == "many":
            sp.add_argument("--t", type=_floats, default=None, help="comma-separated t values")
        if side:
            sp.add_argument("--side", choices=["na", "complex"], default="na")

    sp = sub.add_parser("classify", help="certify non-elementary or find an elementary form")
    common(sp)
    sp.add_argument("--max-len", type=int, default=6)

    sp = sub.add_parser("chi-na", help="t-adic exponent by Kingman averages")
    common(sp, n=True)

    sp = sub.add_parser("chi-exact", help="exact subadditive approximants a_n/n")
    common(sp)
    sp.add_argument("--n", type=_ints, default=[1, 2, 3, 4])
    sp.add_argument("--cap", type=int, default=10**6)

    sp = sub.add_parser("chi", help="complex exponent at one t")
    common(sp, n=True, t="one")

    sp = sub.add_parser("sweep", help="degeneration sweep over t (CSV)")
    common(sp, n=True, t="many")
    sp.add_argument("--n-na", type=int, default=400)
    sp.add_argument("--S-na", type=int, default=50)

    sp = sub.add_parser("trace", help="trace estimator and hyperbolic fraction")
    common(sp, n=True, t="one", side=True)

    sp = sub.add_parser("stationary", help="stationary sample dump (CSV)")
    common(sp, n=True, t="one", side=True)
    sp.add_argument("--reversed", action="store_true", help="sample with inverse generators")

    sp = sub.add_parser("residual", help="compare residual measures at t (JSON)")
    common(sp, n=True, t="one")
    sp.add_argument("--cluster-tol", type=float, default=None)
    sp.add_argument("--margin", type=float, default=0.25)
    sp.add_argument("--mark", action="append", default=[],
                    help="extra marked disk 'a;rho' with a in the Laurent grammar")

    sp = sub.add_parser("hybrid-check", help="hybrid continuity table (CSV)")
    common(sp, t="many")
    sp.add_argument("--point", action="append", default=None,
                    help="affine coordinate of a test point (Laurent grammar); repeatable")

    sp = sub.add_parser("kak", help="Cartan decomposition of a word")
    common(sp)
    sp.add_argument("--word", required=True, help="comma-separated generator names")
    return p


# ---------------------------------------------------------------------------


def _resolve_seed(args, spec) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return int(spec.defaults.get("seed", 0))


def _default(args, spec, name, fallback):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return spec.defaults.get(name, fallback)


def _frac(q: Fraction):
    return str(q) if q.denominator != 1 else int(q)


def _header(cmd, seed, params, src):
    return {
        "tool": "nalyap",
        "version": __version__,
        "command": cmd,
        "seed": seed,
        "params": params,
        "spec_sha256": spec_hash(src),
    }


def _emit_json(obj, out):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    _write(text, out)


def _emit_csv(header: dict, columns, rows, out):
    buf = io.StringIO()
    for k in sorted(header):
        buf.write(f"# {k}: {json.dumps(header[k], sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    _write(buf.getvalue(), out)


def _write(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    with open(args.spec, encoding="utf-8") as fh:
        src = fh.read()
    spec = parse_spec(src)
    seed = _resolve_seed(args, spec)
    cmd = args.command
    W = max(1, args.workers)
    terms = args.terms

    if cmd == "classify":
        gc = classify_spec(spec, args.max_len)
        res = {"class": gc.tag, "depth": gc.depth}
        if gc.witness is not None:
            res["witness"] = [word_label(spec, w) for w in gc.witness]
        if gc.conjugator is not None:
            res["conjugator"] = str(gc.conjugator)
        res.update({k: v for k, v in gc.detail.items() if k != "witness_labels"})
        _emit_json({**_header(cmd, seed, {"max_len": args.max_len}, src), "result": res}, args.out)
        return 0

    if cmd == "chi-na":
        n, S = _default(args, spec, "n", 400), _default(args, spec, "S", 50)
        est = chi_na_kingman(spec, n, S, seed, terms, W)
        params = {"n": n, "S": S, "terms": terms}
        _emit_json({**_header(cmd, seed, params, src), "result": est.as_dict()}, args.out)
        return 0

    if cmd == "chi-exact":
        vals = {str(n): _frac(chi_na_exact(spec, n, args.cap)) for n in args.n}
        params = {"n": args.n, "cap": args.cap}
        _emit_json({**_header(cmd, seed, params, src), "result": {"a_n_over_n": vals}}, args.out)
        return 0

    if cmd == "chi":
        n, S = _default(args, spec, "n", 2000), _default(args, spec, "S", 100)
        t0 = args.t if args.t is not None else float(spec.defaults.get("t0", 1e-3))
        est = chi_c(spec, t0, n, S, seed, W)
        res = est.as_dict()
        res["ratio"] = est.value / math.log(1 / abs(t0))
        params = {"n": n, "S": S, "t": t0}
        _emit_json({**_header(cmd, seed, params, src), "result": res}, args.out)
        return 0

    if cmd == "sweep":
        n = args.n if args.n is not None else 2000
        S = args.S if args.S is not None else 100
        ts = args.t if args.t is not None else list(spec.defaults.get("t", [1e-2, 1e-3, 1e-4]))
        res = sweep(spec, ts, n, S, seed, n_na=args.n_na, S_na=args.S_na, workers=W)
        params = {"n": n, "S": S, "t": ts, "n_na": args.n_na, "S_na": args.S_na,
                  "chi_na_source": res.chi_na_source, "monotone": res.monotone}
        _emit_csv(_header(cmd, seed, params, src), SweepRow.CSV_COLUMNS,
                  [r.csv_values() for r in res.rows], args.out)
        return 0

    if cmd == "trace":
        n, S = _default(args, spec, "n", 400), _default(args, spec, "S", 50)
        t0 = args.t if args.t is not None else 1e-3
        est = chi_trace(spec, args.side, n, S, seed, t0 if args.side == "complex" else None, terms, W)
        params = {"n": n, "S": S, "side": args.side, "terms": terms}
        if args.side == "complex":
            params["t"] = t0
        _emit_json({**_header(cmd, seed, params, src), "result": est.as_dict()}, args.out)
        return 0

    if cmd == "stationary":
        n, S = args.n or 60, args.S or 200
        t0 = args.t if args.t is not None else 1e-3
        smp = sample_stationary(spec, args.side, n, S, seed,
                                t0 if args.side == "complex" else None, args.reversed, terms, W)
        params = {"n": n, "S": S, "side": args.side, "reversed": args.reversed,
                  "excluded": smp.excluded}
        if args.side == "na":
            model = ModelSpec.trivial()
            rows = []
            for k, z in enumerate(smp.points):
                r = signature(z, model)[0]
                rows.append([k, "inf" if r == "out" else str(r), str(z.x), str(z.y)])
            cols = ["index", "residue", "x", "y"]
        else:
            params["t"] = t0
            rows = [[k, z.x.real, z.x.imag, z.y.real, z.y.imag] for k, z in enumerate(smp.points)]
            cols = ["index", "x_re", "x_im", "y_re", "y_im"]
        _emit_csv(_header(cmd, seed, params, src), cols, rows, args.out)
        return 0

    if cmd == "residual":
        n, S = args.n or 60, args.S or 2000
        t0 = args.t if args.t is not None else 1e-3
        marks = []
        for m in args.mark:
            if ";" not in m:
                raise UsageError("--mark expects 'a;rho'")
            a, rho = m.split(";", 1)
            marks.append(BallNA.affine(parse_laurent(a), Fraction(rho.strip())))
        model = ModelSpec(tuple(marks))
        rep = compare_residual(spec, model, t0, n, S, seed, args.cluster_tol, args.margin, terms, W)
        params = {"n": n, "S": S, "t": t0, "margin": args.margin, "marks": args.mark,
                  "cluster_tol": rep.cluster_tol}
        _emit_json({**_header(cmd, seed, params, src), "result": rep.as_dict()}, args.out)
        return 0

    if cmd == "hybrid-check":
        ts = args.t if args.t is not None else [1e-2, 1e-3, 1e-4, 1e-5]
        pts = args.point or ["1"]
        rows = []
        for name, g in zip(spec.names, spec.mats):
            for ptxt in pts:
                v = P1NA.from_series(parse_laurent(ptxt))
                for t0, dev in continuity_check(g, v, ts):
                    rows.append([name, ptxt, t0, dev])
        params = {"t": ts, "points": pts}
        _emit_csv(_header(cmd, seed, params, src), ["generator", "point", "t", "deviation"],
                  rows, args.out)
        return 0

    if cmd == "kak":
        names = [x.strip() for x in args.word.split(",") if x.strip()]
        idx = []
        for nm in names:
            if nm not in spec.names:
                raise UsageError(f"unknown generator {nm!r}; known: {', '.join(spec.names)}")
            idx.append(spec.names.index(nm))
        M = product_na(spec, tuple(idx))
        m, a, nn = kak(M, terms)
        res = {"matrix": str(M), "lognorm": _frac(lognorm(M)), "m": str(m), "a": str(a), "n": str(nn)}
        _emit_json({**_header(cmd, seed, {"word": names}, src), "result": res}, args.out)
        return 0

    raise UsageError("missing subcommand")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing subcommand")
        return _run(args)
    except UsageError as exc:
        print(f"nalyap: usage error: {exc}", file=sys.stderr)
        return 1
    except CONFIG_ERRORS as exc:
        print(f"nalyap: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except COMPUTATIONAL_ERRORS as exc:
        rec = {"error": type(exc).__name__, "message": str(exc), "tool": "nalyap",
               "version": __version__}
        print(json.dumps(rec, sort_keys=True))
        print(f"nalyap: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():  # pragma: no cover - console entry point
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
