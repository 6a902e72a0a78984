"""Parsing Laurent polynomials and measure configurations.

Expression grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom ('^' int)?
    atom   := int | 'i' | 't' | '(' expr ')'

A rational literal ``p/q`` is read as a division of two integers.  Division
is exact, so the divisor must be a nonzero monomial.  Negative exponents are
written as divisions (``1/t^2``).

Configurations are TOML documents::

    symmetrize = false

    [defaults]
    n = 400
    S = 50

    [[generator]]
    name = "A"
    matrix = [["1/t", "0"], ["0", "t"]]
    weight = "1/2"
"""
from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from .laurent import GRat, Series
from .sl2na import MatNA
from .walks import MeasureSpec, WeightsNotNormalized

MAX_EXPONENT = 10_000
MAX_INT_DIGITS = 4_000


class LaurentSyntaxError(ValueError):
    """Malformed expression; ``offset`` is a byte offset into the source."""

    def __init__(self, msg, offset, expected=""):
        super().__init__(f"{msg} at byte {offset}" + (f" (expected {expected})" if expected else ""))
        self.offset = offset
        self.expected = expected


class NonMonomialDivision(ValueError):
    pass


class DetNotOne(ValueError):
    def __init__(self, name, det=None):
        super().__init__(f"generator {name!r} has determinant {det}, not 1")
        self.name = name


class SpecError(ValueError):
    """Structural problem in a configuration file."""


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, ImagUnit, Var, Neg, BinOp, Pow]


def evaluate(node: Node) -> Series:
    if isinstance(node, Num):
        return Series.const(node.value)
    if isinstance(node, ImagUnit):
        return Series.const(GRat(0, 1))
    if isinstance(node, Var):
        return Series.monomial(1, 1)
    if isinstance(node, Neg):
        return -evaluate(node.arg)
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exp
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right.is_zero() or len(right) != 1:
        raise NonMonomialDivision(
            f"divisor at byte {node.offset} is not a nonzero monomial: {right}"
        )
    return left * right.inv()


# ---------------------------------------------------------------------------
# tokenizer + recursive descent


class _Parser:
    def __init__(self, src: bytes):
        self.src = src
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        if self.pos >= len(self.src):
            return ""
        return chr(self.src[self.pos])

    def eat(self, ch: str):
        if self.peek() != ch:
            raise LaurentSyntaxError(f"unexpected {self._desc()}", self.pos, repr(ch))
        self.pos += 1

    def _desc(self):
        c = self.peek()
        return "end of input" if not c else repr(c)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            raise LaurentSyntaxError(f"unexpected {self._desc()}", self.pos, "operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek() in ("+", "-") and self.peek():
            op = self.peek()
            at = self.pos
            self.pos += 1
            node = BinOp(op, node, self.term(), at)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            at = self.pos
            self.pos += 1
            node = BinOp(op, node, self.factor(), at)
        return node

    def factor(self) -> Node:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return Neg(self.factor())
        if c == "+":
            self.pos += 1
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.peek()
            at = self.pos
            k = self.integer("non-negative integer exponent")
            if k > MAX_EXPONENT:
                raise LaurentSyntaxError(f"exponent {k} too large", at, f"exponent <= {MAX_EXPONENT}")
            return Pow(base, k)
        return base

    def integer(self, what="integer") -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.src) and 48 <= self.src[self.pos] <= 57:
            self.pos += 1
        if self.pos == start:
            raise LaurentSyntaxError(f"unexpected {self._desc()}", start, what)
        if self.pos - start > MAX_INT_DIGITS:
            raise LaurentSyntaxError("integer literal too long", start, f"at most {MAX_INT_DIGITS} digits")
        return int(self.src[start:self.pos].decode("ascii"))

    def atom(self) -> Node:
        c = self.peek()
        if c == "(":
            self.pos += 1
            node = self.expr()
            self.eat(")")
            return node
        if c == "i":
            self.pos += 1
            return ImagUnit()
        if c == "t":
            self.pos += 1
            return Var()
        if c.isdigit() and c.isascii():
            return Num(self.integer())
        raise LaurentSyntaxError(f"unexpected {self._desc()}", self.pos, "number, 'i', 't' or '('")


_MAX_DEPTH = 200


def parse_expr(src) -> Node:
    """Parse to an AST without evaluating."""
    data = src.encode("utf-8") if isinstance(src, str) else bytes(src)
    depth = 0
    for k, b in enumerate(data):
        if b == 40:
            depth += 1
            if depth > _MAX_DEPTH:
                raise LaurentSyntaxError("parentheses nested too deeply", k)
        elif b == 41:
            depth -= 1
    p = _Parser(data)
    try:
        return p.parse()
    except RecursionError:
        raise LaurentSyntaxError("expression nested too deeply", p.pos) from None


def parse_laurent(src) -> Series:
    """Exact Series denoted by ``src`` (``str`` or ``bytes``)."""
    return evaluate(parse_expr(src))


def format_series(f: Series) -> str:
    """Render an exact Laurent polynomial in the input grammar."""
    if not f.is_exact or f.ram != 1:
        raise ValueError("only exact Laurent polynomials can be printed in the grammar")
    if f.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        e = f.val + k
        cs = _fmt_grat(c)
        if e == 0:
            mono = cs
        else:
            tp = "t" if abs(e) == 1 else f"t^{abs(e)}"
            mono = f"{cs}*{tp}" if e > 0 else f"{cs}/{tp}"
        parts.append(mono)
    return " + ".join(parts)


def _fmt_q(q: Fraction) -> str:
    s = f"{abs(q.numerator)}" if q.denominator == 1 else f"{abs(q.numerator)}/{q.denominator}"
    return f"(-{s})" if q < 0 else s


def _fmt_grat(c: GRat) -> str:
    if not c.im:
        return f"({_fmt_q(c.re)})"
    return f"({_fmt_q(c.re)} + {_fmt_q(c.im)}*i)"


# ---------------------------------------------------------------------------
# configurations


def _weight(x, name) -> Fraction:
    try:
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, int):
            return Fraction(x)
    except (ValueError, ZeroDivisionError):
        pass
    raise SpecError(f"weight of {name!r} must be an integer or a rational string like '1/2'")


def parse_spec(src: str) -> MeasureSpec:
    """MeasureSpec from TOML configuration text."""
    try:
        doc = tomllib.loads(src)
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"invalid TOML: {exc}") from None
    gens = doc.get("generator")
    if not isinstance(gens, list) or not gens:
        raise SpecError("configuration needs at least one [[generator]] table")
    names, mats, weights = [], [], []
    for k, g in enumerate(gens):
        if not isinstance(g, dict):
            raise SpecError("each generator must be a table")
        name = str(g.get("name", f"g{k}"))
        rows = g.get("matrix")
        if (not isinstance(rows, list) or len(rows) != 2
                or any(not isinstance(r, list) or len(r) != 2 for r in rows)):
            raise SpecError(f"generator {name!r}: matrix must be a 2x2 array of strings")
        ent = []
        for r in rows:
            for e in r:
                if not isinstance(e, (str, int)):
                    raise SpecError(f"generator {name!r}: entries must be strings")
                try:
                    ent.append(parse_laurent(str(e)))
                except LaurentSyntaxError as exc:
                    exc.args = (f"generator {name!r}: {exc.args[0]}",)
                    raise
        M = MatNA(*ent)
        det = M.det()
        if det != Series.const(1):
            raise DetNotOne(name, det)
        names.append(name)
        mats.append(M)
        weights.append(_weight(g.get("weight", None), name) if "weight" in g else None)
    if any(w is None for w in weights):
        if all(w is None for w in weights):
            weights = [Fraction(1, len(mats))] * len(mats)
        else:
            raise SpecError("either all or no generators must carry a weight")
    if any(w <= 0 for w in weights) or sum(weights) != 1:
        raise WeightsNotNormalized(f"weights {[str(w) for w in weights]} must be positive and sum to 1")
    symmetric = bool(doc.get("symmetrize", False))
    if symmetric:
        inv_names = [f"{n}^-1" for n in names]
        mats = mats + [m.inverse() for m in mats]
        names = names + inv_names
        weights = [w / 2 for w in weights] * 2
    defaults = dict(doc.get("defaults", {}))
    return MeasureSpec(tuple(names), tuple(mats), tuple(weights), symmetric, defaults, src)


def load_spec(path) -> MeasureSpec:
    return parse_spec(Path(path).read_text(encoding="utf-8"))


def spec_hash(src: str) -> str:
    return hashlib.sha256(src.encode("utf-8")).hexdigest()


SPEC_DIR = Path(__file__).parent / "specs"


def bundled_spec_path(name: str) -> Path:
    """Path of a configuration shipped with the package (``schrodinger``, ``affine``, ...)."""
    p = SPEC_DIR / (name if name.endswith(".cfg") else name + ".cfg")
    if not p.exists():
        raise FileNotFoundError(p)
    return p


def bundled_spec(name: str) -> MeasureSpec:
    return load_spec(bundled_spec_path(name))
