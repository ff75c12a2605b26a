"""The valued field K = Q(t) with the t-adic valuation, residue field Q.

Univariate polynomials in ``t`` are plain tuples of coefficients, lowest degree
first, with no trailing zeros (``()`` is zero).  Coefficients may be ``int`` or
``Fraction``; the integer-only paths are used by the fraction-free
determinants in :mod:`tropsch.linalg`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .poly import Exponent, Flavor, TropPoly, dot, grevlex_key
from .scalar import INF, TropScalar, scalar

# -- univariate polynomial helpers -------------------------------------------


def ptrim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return ptrim(out)


def pneg(a) -> tuple:
    return tuple(-x for x in a)


def psub(a, b) -> tuple:
    return padd(a, pneg(b))


def pmul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return ptrim(out)


def pscale(a, c) -> tuple:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pdivmod(a, b):
    """Division with remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = list(ptrim(a))
    return ptrim(q), ptrim(a)


def pdiv_exact(a, b) -> tuple:
    """Exact quotient; integer coefficients stay integers when divisible."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while a:
        top = a[-1]
        if isinstance(top, int) and isinstance(lead, int):
            c, r = divmod(top, lead)
            if r:
                c = Fraction(top, lead)
        else:
            c = Fraction(top) / lead
        shift = len(a) - len(b)
        if shift < 0:
            raise ArithmeticError("division is not exact")
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = list(ptrim(a))
    return ptrim(q)


def pmonic(a) -> tuple:
    if not a:
        return ()
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def pgcd(a, b) -> tuple:
    """Monic gcd over Q."""
    a, b = ptrim(a), ptrim(b)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return pmonic(a)


def pord(a) -> TropScalar:
    """t-adic order: index of the lowest nonzero coefficient."""
    for i, x in enumerate(a):
        if x != 0:
            return i
    return INF


def pdeg(a) -> int:
    return len(a) - 1


def pformat(a, var="t") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        c = Fraction(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- rational functions -------------------------------------------------------


class RatFunc:
    """An element of Q(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,), _normalized=False):
        if isinstance(num, (int, Fraction)):
            num = (num,)
        num = ptrim(Fraction(x) for x in num)
        den = ptrim(Fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (Fraction(1),)
        elif not _normalized and den != (1,):
            g = pgcd(num, den)
            if g != (1,):
                num = pdiv_exact(num, g)
                den = pdiv_exact(den, g)
            lead = den[-1]
            if lead != 1:
                num = pscale(num, 1 / lead)
                den = pscale(den, 1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls((Fraction(c),), (Fraction(1),), _normalized=True)

    @classmethod
    def t_power(cls, k: int) -> "RatFunc":
        if k >= 0:
            return cls((0,) * k + (1,), (1,), _normalized=True)
        return cls((1,), (0,) * (-k) + (1,), _normalized=True)

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        raise TypeError(f"cannot coerce {x!r} into Q(t)")

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return len(self.num) <= 1 and self.den == (1,)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(pneg(self.num), self.den, _normalized=True)

    def __add__(self, other):
        other = RatFunc.coerce(other)
        if self.den == other.den:
            return RatFunc(padd(self.num, other.num), self.den)
        return RatFunc(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                       pmul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        if not self.num or not other.num:
            return RatFunc()
        if self.den == (1,) and other.den == (1,):
            return RatFunc(pmul(self.num, other.num), (1,), _normalized=True)
        return RatFunc(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(t)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == (1,):
            return pformat(self.num)
        num = pformat(self.num)
        if sum(1 for c in self.num if c) > 1:
            num = f"({num})"
        den = pformat(self.den)
        if sum(1 for c in self.den if c) > 1 or (len(self.den) > 1 and self.den[-1] != 1):
            den = f"({den})"
        return f"{num}/{den}"


T = RatFunc.t_power(1)


def val(a) -> TropScalar:
    """t-adic valuation; ``inf`` for zero."""
    a = RatFunc.coerce(a)
    if not a.num:
        return INF
    return Fraction(pord(a.num) - pord(a.den))


def residue(a) -> Fraction:
    """Image of ``t^(-val a) * a`` in the residue field Q."""
    a = RatFunc.coerce(a)
    if not a.num:
        raise ValueError("zero has no residue")
    return Fraction(a.num[pord(a.num)]) / a.den[pord(a.den)]


# -- polynomials over K --------------------------------------------------------


class ValuedPoly:
    """A polynomial over K: finite map exponent -> nonzero RatFunc."""

    __slots__ = ("_terms", "nvars", "flavor")

    def __init__(self, terms=(), nvars: int | None = None,
                 flavor: Flavor = Flavor.PROJECTIVE):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for u, c in items:
            u = tuple(int(x) for x in u)
            if nvars is None:
                nvars = len(u)
            elif len(u) != nvars:
                raise ValueError(f"exponent {u} has length {len(u)}, expected {nvars}")
            c = RatFunc.coerce(c)
            acc[u] = acc[u] + c if u in acc else c
        if nvars is None:
            raise ValueError("nvars is required for the zero polynomial")
        self._terms = {u: c for u, c in acc.items() if c}
        self.nvars = nvars
        self.flavor = flavor

    @classmethod
    def zero(cls, nvars, flavor=Flavor.PROJECTIVE):
        return cls((), nvars, flavor)

    @classmethod
    def monomial(cls, u, coef=1, flavor=Flavor.PROJECTIVE):
        return cls({tuple(u): coef}, len(u), flavor)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coef(self, u) -> RatFunc:
        return self._terms.get(tuple(u), RatFunc())

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({sum(u) for u in self._terms}) <= 1

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(u) for u in self._terms)

    def __eq__(self, other):
        if not isinstance(other, ValuedPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: "ValuedPoly") -> "ValuedPoly":
        return ValuedPoly(list(self.items()) + list(other.items()), self.nvars, self.flavor)

    def __neg__(self):
        return ValuedPoly({u: -c for u, c in self.items()}, self.nvars, self.flavor)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ValuedPoly):
            out = []
            for u, a in self.items():
                for v, b in other.items():
                    out.append((tuple(x + y for x, y in zip(u, v)), a * b))
            return ValuedPoly(out, self.nvars, self.flavor)
        c = RatFunc.coerce(other)
        return ValuedPoly({u: a * c for u, a in self.items()}, self.nvars, self.flavor)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not polynomials")
        out = ValuedPoly.monomial((0,) * self.nvars, 1, self.flavor)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, a: Exponent) -> "ValuedPoly":
        """Multiply by the monomial x^a."""
        return ValuedPoly({tuple(x + y for x, y in zip(u, a)): c for u, c in self.items()},
                          self.nvars, self.flavor)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def __repr__(self):
        return f"ValuedPoly({format_valued(self)!r})"


def format_valued(f: ValuedPoly, names: Sequence[str] | None = None) -> str:
    from .poly import default_names, format_monomial
    if names is None:
        names = default_names(f.nvars, f.flavor)
    if f.is_zero():
        return "0"
    pieces = []
    for u, c in f.sorted_terms():
        mono = format_monomial(u, names)
        text = str(c)
        neg = text.startswith("-") and c.den == (1,) and sum(1 for x in c.num if x) == 1
        if neg:
            text = text[1:]
        elif " " in text and c.den == (1,):
            text = f"({text})"
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        pieces.append(("-" if neg else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def trop_of(f: ValuedPoly) -> TropPoly:
    """Coefficient-wise valuation."""
    return TropPoly({u: val(c) for u, c in f.items()}, f.nvars, f.flavor)


def initial_form_classical(f: ValuedPoly, w: Sequence) -> ValuedPoly:
    """Sum over the terms minimising val(c_u) + w.u of residue(c_u) x^u, over Q.

    Only residues of ``t^(-val c) c`` enter, so rational weights need no
    extension of K.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no initial form")
    w = [scalar(x) for x in w]
    if len(w) != f.nvars or INF in w:
        raise ValueError("weight vector must be finite with one entry per variable")
    weights = {u: val(c) + dot(w, u) for u, c in f.items()}
    gamma = min(weights.values())
    return ValuedPoly({u: residue(c) for u, c in f.items() if weights[u] == gamma},
                      f.nvars, f.flavor)
