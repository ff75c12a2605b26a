"""Tropical polynomials in S (Laurent) and S~ (projective), and relations.

Elements are formal: two polynomials are equal iff their term maps agree, not
when they define the same piecewise-linear function.  The empty term map is
the polynomial ``inf``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalar import INF, TropScalar, format_scalar, scalar

Exponent = tuple


class Flavor(Enum):
    LAURENT = "laurent"
    PROJECTIVE = "projective"


def grevlex_key(u: Exponent):
    """Sort key putting higher degree first, then larger in grevlex first."""
    return (-sum(u), tuple(reversed(u)))


def dot(w: Sequence[TropScalar], u: Exponent) -> TropScalar:
    total = Fraction(0)
    for wi, ui in zip(w, u):
        if ui == 0:
            continue
        if wi == INF:
            if ui < 0:
                raise ValueError("inf weight against a negative exponent")
            return INF
        total += wi * ui
    return total


class TropPoly:
    """A finitely supported map from exponent vectors to finite rationals."""

    __slots__ = ("_terms", "nvars", "flavor", "_hash")

    def __init__(self, terms=(), nvars: int | None = None,
                 flavor: Flavor = Flavor.PROJECTIVE):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for u, a in items:
            u = tuple(int(x) for x in u)
            a = scalar(a)
            if a == INF:
                continue
            if nvars is None:
                nvars = len(u)
            elif len(u) != nvars:
                raise ValueError(f"exponent {u} has length {len(u)}, expected {nvars}")
            if flavor is Flavor.PROJECTIVE and min(u, default=0) < 0:
                raise ValueError(f"projective exponent {u} has a negative entry")
            if u not in acc or a < acc[u]:
                acc[u] = a
        if nvars is None:
            raise ValueError("nvars is required for the empty polynomial")
        self._terms = acc
        self.nvars = nvars
        self.flavor = flavor
        self._hash = None

    @classmethod
    def monomial(cls, u: Exponent, coef=0, flavor=Flavor.PROJECTIVE):
        return cls({tuple(u): coef}, len(u), flavor)

    @classmethod
    def infinity(cls, nvars: int, flavor=Flavor.PROJECTIVE):
        return cls((), nvars, flavor)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coef(self, u: Exponent) -> TropScalar:
        return self._terms.get(tuple(u), INF)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_infinity(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __contains__(self, u):
        return tuple(u) in self._terms

    def __eq__(self, other):
        if not isinstance(other, TropPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.flavor is other.flavor
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.flavor, frozenset(self._terms.items())))
        return self._hash

    def __le__(self, other: "TropPoly") -> bool:
        """Coefficient-wise comparison (absent terms are inf)."""
        return all(self.coef(u) <= b for u, b in other.items())

    def __repr__(self):
        return f"TropPoly({format_poly(self)!r})"

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def shift(self, a: TropScalar) -> "TropPoly":
        """Tropical product with the constant ``a``."""
        if a == INF:
            return TropPoly.infinity(self.nvars, self.flavor)
        return TropPoly({u: c + a for u, c in self._terms.items()}, self.nvars, self.flavor)

    def is_homogeneous(self, grading=None) -> bool:
        degs = {_graded_degree(u, grading) for u in self._terms}
        return len(degs) <= 1


@dataclass(frozen=True)
class Relation:
    lhs: TropPoly
    rhs: TropPoly

    def __post_init__(self):
        if (self.lhs.nvars, self.lhs.flavor) != (self.rhs.nvars, self.rhs.flavor):
            raise ValueError("both sides of a relation must live in the same semiring")

    def reversed(self) -> "Relation":
        return Relation(self.rhs, self.lhs)


def _check_same(F: TropPoly, G: TropPoly):
    if F.nvars != G.nvars or F.flavor is not G.flavor:
        raise ValueError("tropical polynomials live in different semirings")


def _graded_degree(u, grading=None):
    if grading is None:
        return sum(u)
    return sum(g * x for g, x in zip(grading, u))


def support(F: TropPoly) -> frozenset:
    return F.support()


def delete_term(F: TropPoly, v: Exponent) -> TropPoly:
    """``F`` with the term of monomial ``v`` removed."""
    v = tuple(v)
    if v not in F:
        raise KeyError(f"{v} is not in the support")
    terms = F.terms
    del terms[v]
    return TropPoly(terms, F.nvars, F.flavor)


def bend_relations(F: TropPoly) -> list[Relation]:
    return [Relation(F, delete_term(F, v)) for v, _ in F.sorted_terms()]


def evaluate(F: TropPoly, w: Sequence) -> TropScalar:
    if len(w) != F.nvars:
        raise ValueError(f"point has {len(w)} coordinates, expected {F.nvars}")
    w = [scalar(x) for x in w]
    best = INF
    for u, a in F.items():
        val = dot(w, u)
        if val != INF:
            val = a + val
        if val < best:
            best = val
    return best


def t_poly_add(F: TropPoly, G: TropPoly) -> TropPoly:
    _check_same(F, G)
    return TropPoly(list(F.items()) + list(G.items()), F.nvars, F.flavor)


def t_poly_mul(F: TropPoly, G: TropPoly) -> TropPoly:
    _check_same(F, G)
    out = []
    for u, a in F.items():
        for v, b in G.items():
            out.append((tuple(x + y for x, y in zip(u, v)), a + b))
    return TropPoly(out, F.nvars, F.flavor)


def graded_piece(F: TropPoly, d: int, grading=None) -> TropPoly:
    return TropPoly({u: a for u, a in F.items() if _graded_degree(u, grading) == d},
                    F.nvars, F.flavor)


def degree(F: TropPoly) -> int:
    """Largest coordinate sum over the support (over all coordinates)."""
    if F.is_infinity():
        raise ValueError("the polynomial inf has no degree")
    return max(sum(u) for u in F.support())


def homogenize(F: TropPoly) -> TropPoly:
    """Laurent polynomial with non-negative exponents -> projective, x0 first."""
    if F.flavor is not Flavor.LAURENT:
        raise ValueError("homogenize expects a Laurent-flavor polynomial")
    if any(x < 0 for u in F.support() for x in u):
        raise ValueError("cannot homogenize a polynomial with negative exponents")
    if F.is_infinity():
        return TropPoly.infinity(F.nvars + 1)
    top = degree(F)
    return TropPoly({(top - sum(u),) + u: a for u, a in F.items()}, F.nvars + 1)


def homogenize_relation(r: Relation) -> Relation:
    """Homogenise both sides, padding the lower-degree side by a power of x0."""
    F, G = r.lhs, r.rhs
    if F.is_infinity() or G.is_infinity():
        raise ValueError("both sides must be nonempty to homogenize a relation")
    Fh, Gh = homogenize(F), homogenize(G)
    gap = degree(F) - degree(G)
    pad = TropPoly.monomial((abs(gap),) + (0,) * F.nvars)
    if gap > 0:
        Gh = t_poly_mul(Gh, pad)
    elif gap < 0:
        Fh = t_poly_mul(Fh, pad)
    return Relation(Fh, Gh)


def dehomogenize(F: TropPoly) -> TropPoly:
    """Substitute x0 = 0: drop the first coordinate, merging collisions by min."""
    if F.flavor is not Flavor.PROJECTIVE:
        raise ValueError("dehomogenize expects a projective-flavor polynomial")
    return TropPoly([(u[1:], a) for u, a in F.items()], F.nvars - 1, Flavor.LAURENT)


def _attaining(F: TropPoly, w, gamma) -> TropPoly:
    out = {}
    for u, a in F.items():
        if a + dot(w, u) == gamma:
            out[u] = 0
    return TropPoly(out, F.nvars, F.flavor)


def initial_form(F: TropPoly, w: Sequence) -> TropPoly:
    """Boolean-coefficient polynomial of the terms attaining ``F(w)``."""
    if F.is_infinity():
        raise ValueError("the polynomial inf has no initial form")
    w = [scalar(x) for x in w]
    if INF in w:
        raise ValueError("weights must be finite")
    return _attaining(F, w, evaluate(F, w))


def initial_relation(r: Relation, w: Sequence) -> Relation:
    w = [scalar(x) for x in w]
    if INF in w:
        raise ValueError("weights must be finite")
    gamma = min(evaluate(r.lhs, w), evaluate(r.rhs, w))
    if gamma == INF:
        return r
    return Relation(_attaining(r.lhs, w, gamma), _attaining(r.rhs, w, gamma))


def _int_det(A) -> Fraction:
    m = [[Fraction(x) for x in row] for row in A]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def monomial_change(F: TropPoly, A: Sequence[Sequence[int]]) -> TropPoly:
    """Apply u -> A u to every exponent; A must lie in GL(n, Z)."""
    if F.flavor is not Flavor.LAURENT:
        raise ValueError("monomial changes act on Laurent polynomials")
    n = F.nvars
    if len(A) != n or any(len(row) != n for row in A):
        raise ValueError(f"matrix must be {n}x{n}")
    if any(int(x) != x for row in A for x in row) or abs(_int_det(A)) != 1:
        raise ValueError("matrix is not unimodular")
    out = {}
    for u, a in F.items():
        out[tuple(sum(int(A[i][j]) * u[j] for j in range(n)) for i in range(n))] = a
    return TropPoly(out, n, Flavor.LAURENT)


def default_names(nvars: int, flavor: Flavor) -> list[str]:
    start = 0 if flavor is Flavor.PROJECTIVE else 1
    return [f"x{i}" for i in range(start, start + nvars)]


def format_monomial(u: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, u):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(F: TropPoly, names: Sequence[str] | None = None) -> str:
    """Text form ``min(c1 + m1, ...)``; a single term is printed bare."""
    if names is None:
        names = default_names(F.nvars, F.flavor)
    if F.is_infinity():
        return "inf"
    out = []
    for u, a in F.sorted_terms():
        mono = format_monomial(u, names) or "1"
        if a == 0:
            out.append(mono)
        else:
            out.append(f"{format_scalar(a)} + {mono}")
    if len(out) == 1:
        return out[0]
    return "min(" + ", ".join(out) + ")"


def format_relation(r: Relation, names=None) -> str:
    return f"{format_poly(r.lhs, names)} ~ {format_poly(r.rhs, names)}"
