"""Exact linear algebra over K = Q(t) for graded pieces of homogeneous ideals.

A :class:`KMatrix` is a list of rows of :class:`~tropsch.field.RatFunc` whose
columns are labelled by the degree-d monomials in grevlex order.  Minors are
evaluated fraction-free: each row of a reduced matrix is scaled once into
Z[t], and the determinant of a polynomial submatrix is taken by Bareiss
elimination.  Only the t-adic order of the result is ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import lcm
from typing import Sequence

from .field import (RatFunc, ValuedPoly, pdiv_exact, pgcd, pmul, pord, pscale,
                    psub, ptrim, residue, val)
from .poly import Exponent, dot, grevlex_key
from .scalar import INF, TropScalar, scalar


def monomials(nvars: int, d: int) -> tuple:
    """All exponents of total degree ``d`` in ``nvars`` variables, grevlex-descending."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        u = [0] * nvars
        for i in combo:
            u[i] += 1
        out.append(tuple(u))
    return tuple(sorted(out, key=grevlex_key))


@dataclass
class KMatrix:
    rows: list
    cols: tuple
    pivots: tuple | None = None
    origin: list | None = field(default=None, repr=False)

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    @property
    def is_reduced(self) -> bool:
        return self.pivots is not None

    def row_poly(self, i: int) -> ValuedPoly:
        return ValuedPoly({u: c for u, c in zip(self.cols, self.rows[i]) if c},
                          len(self.cols[0]) if self.cols else 0)

    def polys(self) -> list:
        return [self.row_poly(i) for i in range(len(self.rows))]

    def to_json(self):
        return {"cols": [list(u) for u in self.cols],
                "rows": [[str(c) for c in r] for r in self.rows]}

    @cached_property
    def _scaled(self):
        """Rows scaled into Z[t] plus the t-order each scaling introduced."""
        rows, shifts = [], []
        for r in self.rows:
            den = (1,)
            for c in r:
                if c and c.den != (1,):
                    g = pgcd(den, c.den)
                    den = pdiv_exact(pmul(den, c.den), g)
            polys = [pmul(c.num, pdiv_exact(den, c.den)) if c else () for c in r]
            m = 1
            for p in polys:
                for x in p:
                    m = lcm(m, Fraction(x).denominator)
            rows.append([tuple(int(Fraction(x) * m) for x in p) for p in polys])
            shifts.append(pord(den))
        return rows, shifts


def macaulay_matrix(gens: Sequence[ValuedPoly], d: int, nvars: int | None = None) -> KMatrix:
    """Rows x^a * g for every generator g and monomial x^a of degree d - deg g."""
    if nvars is None:
        if not gens:
            raise ValueError("nvars is required when there are no generators")
        nvars = gens[0].nvars
    cols = monomials(nvars, d)
    index = {u: j for j, u in enumerate(cols)}
    rows, origin = [], []
    for gi, g in enumerate(gens):
        if g.is_zero():
            raise ValueError("generators must be nonzero")
        if not g.is_homogeneous():
            raise ValueError(f"generator {gi} is not homogeneous")
        e = g.degree()
        for a in monomials(nvars, d - e):
            row = [RatFunc()] * len(cols)
            for u, c in g.shift(a).items():
                row[index[u]] = c
            rows.append(row)
            origin.append((gi, a))
    return KMatrix(rows, cols, origin=origin)


def _entry_cost(c: RatFunc):
    return (len(c.num) + len(c.den), 0 if c.is_const() else 1)


def row_reduce(M: KMatrix) -> KMatrix:
    """Reduced row-echelon form over K, zero rows dropped."""
    rows = [list(r) for r in M.rows if any(r)]
    ncols = len(M.cols)
    pivots = []
    top = 0
    for j in range(ncols):
        cands = [i for i in range(top, len(rows)) if rows[i][j]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _entry_cost(rows[i][j]))
        rows[top], rows[p] = rows[p], rows[top]
        inv = rows[top][j].inverse()
        rows[top] = [c * inv if c else c for c in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][j]:
                f = rows[i][j]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[top])]
        pivots.append(j)
        top += 1
        if top == len(rows):
            break
    rows = rows[:top]
    return KMatrix(rows, M.cols, tuple(M.cols[j] for j in pivots))


def rank(M: KMatrix) -> int:
    return len(M.rows) if M.is_reduced else len(row_reduce(M).rows)


def poly_det(mat) -> tuple:
    """Determinant of a square matrix over Z[t] (or Q[t]) by Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return (1,)
    m = [[ptrim(p) for p in r] for r in mat]
    if n == 1:
        return m[0][0]
    if n == 2:
        return psub(pmul(m[0][0], m[1][1]), pmul(m[0][1], m[1][0]))
    sign = 1
    prev = (1,)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return ()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(m[i][j], m[k][k]), pmul(m[i][k], m[k][j]))
                m[i][j] = pdiv_exact(num, prev) if num else ()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else pscale(det, -1)


def poly_rank(mat) -> int:
    """Rank over Q(t) of a matrix of polynomials, by fraction-free elimination."""
    m = [list(r) for r in mat if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][j]
        for i in range(r + 1, len(m)):
            f = m[i][j]
            if f:
                m[i] = [psub(pmul(a, p), pmul(f, b)) for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def minor_val(M: KMatrix, cols) -> TropScalar:
    """Valuation of the maximal minor of a reduced matrix on the given columns."""
    if not M.is_reduced:
        M = row_reduce(M)
    cols = set(cols)
    if len(cols) != len(M.rows):
        raise ValueError(f"need {len(M.rows)} columns, got {len(cols)}")
    idx = {u: j for j, u in enumerate(M.cols)}
    if not cols <= idx.keys():
        raise ValueError("unknown column label")
    prow = [i for i, p in enumerate(M.pivots) if p not in cols]
    pcol = [idx[u] for u in M.cols if u in cols and u not in set(M.pivots)]
    return _sub_det_val(M, prow, pcol)


def _sub_det_val(M: KMatrix, rows_, cols_) -> TropScalar:
    scaled, shifts = M._scaled
    sub = [[scaled[i][j] for j in cols_] for i in rows_]
    det = poly_det(sub)
    if not det:
        return INF
    return Fraction(pord(det) - sum(shifts[i] for i in rows_))


def kernel_basis(M: KMatrix) -> KMatrix:
    """Basis of the right kernel, one vector per non-pivot column."""
    R = M if M.is_reduced else row_reduce(M)
    piv = {u: i for i, u in enumerate(R.pivots)}
    index = {u: j for j, u in enumerate(R.cols)}
    out = []
    for j, u in enumerate(R.cols):
        if u in piv:
            continue
        vec = [RatFunc()] * len(R.cols)
        vec[j] = RatFunc.const(1)
        for p, i in piv.items():
            c = R.rows[i][j]
            if c:
                vec[index[p]] = -c
        out.append(vec)
    return KMatrix(out, R.cols)


def det_val_direct(rows) -> TropScalar:
    """Valuation of a square determinant by Gaussian elimination in Q(t).

    Independent of the fraction-free path; used as a cross-check.
    """
    m = [list(r) for r in rows]
    n = len(m)
    det = RatFunc.const(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return INF
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k].inverse()
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return val(det)


@dataclass
class InitialSpace:
    """A Q-basis of in_w of a K-row space, with the K-rows it came from."""
    cols: tuple
    rows: list          # rows over Q (Fractions)
    witnesses: list     # rows over K; in_w(witnesses[i]) == rows[i]
    pivots: tuple

    def polys(self) -> list:
        return [ValuedPoly({u: c for u, c in zip(self.cols, r) if c}, len(self.cols[0]))
                for r in self.rows]

    def witness_polys(self) -> list:
        return [ValuedPoly({u: c for u, c in zip(self.cols, r) if c}, len(self.cols[0]))
                for r in self.witnesses]

    @property
    def dim(self) -> int:
        return len(self.rows)


def initial_space(M: KMatrix, w: Sequence) -> InitialSpace:
    """Weight-adapted elimination producing a basis of {in_w(f)} over Q.

    At each step the remaining entry of least weight val(c) + w.u is used as
    pivot (ties: column order, then row order); its column is cleared from
    every other row.  Each finished row then has a distinct pivot monomial in
    its initial form and no other pivot monomial, so the initial forms are
    independent and span a space of dimension rank(M).
    """
    R = M if M.is_reduced else row_reduce(M)
    w = [scalar(x) for x in w]
    if R.cols and len(w) != len(R.cols[0]):
        raise ValueError("weight vector has the wrong length")
    colw = [dot(w, u) for u in R.cols]
    rows = [list(r) for r in R.rows]
    remaining = set(range(len(rows)))
    order = []
    while remaining:
        best = None
        for i in remaining:
            for j, c in enumerate(rows[i]):
                if c:
                    key = (val(c) + colw[j], j, i)
                    if best is None or key < best:
                        best = key
        _, j, i = best
        inv = rows[i][j].inverse()
        rows[i] = [c * inv if c else c for c in rows[i]]
        for k in range(len(rows)):
            if k != i and rows[k][j]:
                f = rows[k][j]
                rows[k] = [a - f * b if b else a for a, b in zip(rows[k], rows[i])]
        remaining.discard(i)
        order.append((i, j))
    qrows, wits, pivs = [], [], []
    for i, j in order:
        r = rows[i]
        weights = [val(c) + colw[k] if c else INF for k, c in enumerate(r)]
        gamma = min(weights)
        qrows.append([residue(c) if weights[k] == gamma else Fraction(0)
                      for k, c in enumerate(r)])
        wits.append(r)
        pivs.append(R.cols[j])
    return InitialSpace(R.cols, qrows, wits, tuple(pivs))


def const_matrix(rows, cols) -> KMatrix:
    """A KMatrix with rational entries (trivially valued)."""
    return KMatrix([[RatFunc.const(x) for x in r] for r in rows], tuple(cols))
