"""Text input: ideal files, classical polynomials over Q(t), tropical polynomials.

Tropical grammar::

    poly  := 'inf' | term | 'min' '(' term (',' term)* ')'
    term  := rational | [rational '+'] word
    word  := '1' | factor ('*' factor)*
    factor:= name ['^' integer]

The word ``1`` is the constant monomial, so ``1`` alone is the constant with
coefficient 0; ``2 + 1`` (or just ``2``) is the constant with coefficient 2.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import ParseError
from .field import RatFunc, ValuedPoly
from .poly import Flavor, TropPoly, default_names
from .scalar import INF

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


def tokenize(text: str, line: int | None = None) -> list:
    """(kind, value, column) triples; columns are 1-based."""
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Cursor:
    def __init__(self, tokens, line):
        self.tokens = tokens
        self.i = 0
        self.line = line

    @property
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, value) -> bool:
        if self.peek[0] in ("op", "name") and self.peek[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            self.fail(f"expected {value!r}")

    def fail(self, message, tok=None):
        tok = tok or self.peek
        found = tok[1] or "end of input"
        raise ParseError(f"{message}, found {found!r}", self.line, tok[2])

    def done(self):
        if self.peek[0] != "end":
            self.fail("unexpected trailing input")


# -- tropical polynomials ------------------------------------------------------------


def _rational(cur: _Cursor):
    """Optional sign, integer, optional '/integer'.  Returns None if absent."""
    start = cur.i
    sign = -1 if cur.accept("-") else 1
    if cur.peek[0] != "num":
        cur.i = start
        return None
    value = Fraction(int(cur.next()[1]))
    if cur.accept("/"):
        tok = cur.next()
        if tok[0] != "num" or int(tok[1]) == 0:
            cur.fail("expected a nonzero denominator", tok)
        value /= int(tok[1])
    return sign * value


def _word(cur: _Cursor, index: dict, nvars: int, laurent: bool) -> tuple:
    u = [0] * nvars
    if cur.peek[0] == "num" and cur.peek[1] == "1":
        cur.next()
        return tuple(u)
    while True:
        tok = cur.next()
        if tok[0] != "name" or tok[1] not in index:
            cur.fail("expected a variable", tok)
        e = 1
        if cur.accept("^"):
            neg = cur.accept("-")
            etok = cur.next()
            if etok[0] != "num":
                cur.fail("expected an integer exponent", etok)
            e = -int(etok[1]) if neg else int(etok[1])
            if e < 0 and not laurent:
                cur.fail("negative exponent in a projective polynomial", etok)
        u[index[tok[1]]] += e
        if not cur.accept("*"):
            return tuple(u)


def _trop_term(cur: _Cursor, index, nvars, laurent):
    after = cur.tokens[cur.i + 1][1] if cur.i + 1 < len(cur.tokens) else ""
    if cur.peek[:2] == ("num", "1") and after not in ("/", "+"):
        cur.next()
        return (0,) * nvars, Fraction(0)
    coef = _rational(cur)
    if coef is None:
        if cur.accept("inf"):
            return None
        return _word(cur, index, nvars, laurent), Fraction(0)
    if cur.accept("+"):
        return _word(cur, index, nvars, laurent), coef
    return (0,) * nvars, coef


def parse_trop(text: str, names: Sequence[str] | None = None, nvars: int | None = None,
               flavor: Flavor = Flavor.PROJECTIVE, line: int | None = None) -> TropPoly:
    """Parse a tropical polynomial over the given variable names."""
    if names is None:
        if nvars is None:
            raise ValueError("give either variable names or nvars")
        names = default_names(nvars, flavor)
    names = list(names)
    index = {n: i for i, n in enumerate(names)}
    laurent = flavor is Flavor.LAURENT
    cur = _Cursor(tokenize(text, line), line)
    terms = []
    if cur.accept("inf"):
        pass
    elif cur.accept("min"):
        cur.expect("(")
        while True:
            t = _trop_term(cur, index, len(names), laurent)
            if t is not None:
                terms.append(t)
            if not cur.accept(","):
                break
        cur.expect(")")
    else:
        t = _trop_term(cur, index, len(names), laurent)
        if t is not None:
            terms.append(t)
    cur.done()
    return TropPoly(terms, len(names), flavor)


# -- polynomials over K ---------------------------------------------------------------------


class _Expr:
    """Recursive-descent parser for expressions in Q(t)[x]."""

    def __init__(self, cur: _Cursor, index: dict, nvars: int, flavor: Flavor):
        self.cur = cur
        self.index = index
        self.nvars = nvars
        self.flavor = flavor

    def const(self, c) -> ValuedPoly:
        return ValuedPoly({(0,) * self.nvars: c}, self.nvars, self.flavor)

    @staticmethod
    def scalar_of(p: ValuedPoly):
        """The K-value of a polynomial without variables, else None."""
        keys = set(p.support())
        if not keys:
            return RatFunc()
        if keys == {(0,) * p.nvars}:
            return p.coef(keys.pop())
        return None

    def sum(self) -> ValuedPoly:
        cur = self.cur
        neg = cur.accept("-")
        if not neg:
            cur.accept("+")
        out = self.product()
        if neg:
            out = -out
        while True:
            if cur.accept("+"):
                out = out + self.product()
            elif cur.accept("-"):
                out = out - self.product()
            else:
                return out

    def product(self) -> ValuedPoly:
        cur = self.cur
        out = self.power()
        while True:
            if cur.accept("*"):
                out = out * self.power()
            elif cur.peek[1] == "/":
                tok = cur.next()
                rhs = self.power()
                c = self.scalar_of(rhs)
                if c is None:
                    cur.fail("can only divide by an element of Q(t)", tok)
                if not c:
                    cur.fail("division by zero", tok)
                out = out * c.inverse()
            else:
                return out

    def power(self) -> ValuedPoly:
        cur = self.cur
        base = self.atom()
        if cur.peek[1] == "^":
            tok = cur.next()
            neg = cur.accept("-")
            etok = cur.next()
            if etok[0] != "num":
                cur.fail("expected an integer exponent", etok)
            k = int(etok[1])
            if neg:
                c = self.scalar_of(base)
                if c is None or not c:
                    cur.fail("negative powers need a nonzero element of Q(t)", tok)
                return self.const(c ** (-k))
            return base ** k
        return base

    def atom(self) -> ValuedPoly:
        cur = self.cur
        tok = cur.next()
        kind, value, _ = tok
        if kind == "num":
            return self.const(int(value))
        if kind == "name":
            if value == "t":
                return self.const(RatFunc.t_power(1))
            if value in self.index:
                u = [0] * self.nvars
                u[self.index[value]] = 1
                return ValuedPoly.monomial(u, 1, self.flavor)
            cur.fail("unknown variable", tok)
        if value == "(":
            out = self.sum()
            cur.expect(")")
            return out
        if value == "-":
            return -self.power()
        cur.fail("expected a number, t, a variable or '('", tok)


def parse_valued(text: str, names: Sequence[str], flavor: Flavor = Flavor.PROJECTIVE,
                 line: int | None = None) -> ValuedPoly:
    names = list(names)
    if "t" in names:
        raise ValueError("'t' is reserved for the uniformizer")
    cur = _Cursor(tokenize(text, line), line)
    expr = _Expr(cur, {n: i for i, n in enumerate(names)}, len(names), flavor)
    out = expr.sum()
    cur.done()
    return out


def parse_coefficient(text: str) -> RatFunc:
    """An element of Q(t) such as ``(3*t^2-1)/(2*t)``."""
    p = parse_valued(text, [])
    return p.coef(())


# -- ideal files ------------------------------------------------------------------------------

_RING = re.compile(r"^ring:\s*vars\s*=\s*\[(?P<vars>[^\]]*)\]\s*field\s*=\s*(?P<field>\S+)\s*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_ideal_text(text: str):
    from .pipeline import IdealSpec, Valuation

    names = mode = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        body = body.strip()
        if names is None:
            m = _RING.match(body)
            if not m:
                raise ParseError("expected 'ring: vars=[...] field=Q(t)' before any generator",
                                 lineno, indent + 1)
            names = [v.strip() for v in m.group("vars").split(",") if v.strip()]
            for v in names:
                if not _NAME.match(v) or v in ("t", "min", "inf"):
                    raise ParseError(f"bad variable name {v!r}", lineno,
                                     indent + 1 + body.index(v))
            if len(set(names)) != len(names) or not names:
                raise ParseError("variable names must be distinct and nonempty", lineno, indent + 1)
            fld = m.group("field")
            if fld not in ("Q(t)", "Q"):
                raise ParseError(f"unknown field {fld!r}; use Q(t) or Q", lineno,
                                 indent + 1 + m.start("field"))
            mode = Valuation(fld)
            continue
        if not body.startswith("gen:"):
            raise ParseError("expected a 'gen:' line", lineno, indent + 1)
        offset = indent + 4 + (len(body[4:]) - len(body[4:].lstrip()))
        try:
            g = parse_valued(body[4:].strip(), names, line=lineno)
        except ParseError as exc:
            raise ParseError(exc.message, lineno, (exc.col or 1) + offset) from None
        if g.is_zero():
            raise ParseError("generator is zero", lineno, offset + 1)
        if not g.is_homogeneous():
            raise ParseError("generator is not homogeneous", lineno, offset + 1)
        if mode is Valuation.TRIVIAL and not all(c.is_const() for _, c in g.items()):
            raise ParseError("generator involves t but the field is Q", lineno, offset + 1)
        gens.append(g)
    if names is None:
        raise ParseError("missing 'ring:' header", 1, 1)
    return IdealSpec(names, gens, mode)


def parse_ideal(path) -> "IdealSpec":
    return parse_ideal_text(Path(path).read_text(encoding="utf-8"))


def parse_weight(text: str) -> list:
    out = []
    for i, item in enumerate(text.split(",")):
        item = item.strip()
        try:
            out.append(Fraction(item))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight entry {item!r}", None, i + 1) from None
        if "." in item or "e" in item.lower():
            raise ParseError(f"weights must be exact rationals, got {item!r}", None, i + 1)
    return out
