"""Shared corpus and brute-force oracles for the test suite.

The oracles deliberately avoid the package's fraction-free minors and
exchange-descent code: they use plain Gaussian elimination over Q(t) and
exhaustive scans.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from tropsch.field import RatFunc, ValuedPoly, val
from tropsch.parsing import parse_ideal_text

CORPUS_TEXT = {
    # the worked example with four variables
    "example4": """ring: vars=[x,y,z,w] field=Q(t)
gen: x + y + t*z
gen: x + y + t^2*w""",
    "line": """ring: vars=[x,y,z] field=Q(t)
gen: x + y + t*z""",
    "xy": """ring: vars=[x,y] field=Q
gen: x + y""",
    "xy3": """ring: vars=[x,y,z] field=Q
gen: x + y""",
    "conic_t": """ring: vars=[x,y,z] field=Q(t)
gen: x*y + t*z^2""",
    "conic_q": """ring: vars=[x,y,z] field=Q
gen: x*y - z^2
""",
    "point": """ring: vars=[x,y,z] field=Q(t)
gen: x - t*y
gen: y - t*z""",
    "loopy": """ring: vars=[x,y,z] field=Q(t)
gen: x
gen: y + t*z""",
    "ratcoef": """ring: vars=[x,y,z] field=Q(t)
gen: x + y/(1 - t) + t^-1*z""",
    "zero": """ring: vars=[x,y,z] field=Q(t)""",
}


def corpus(name):
    return parse_ideal_text(CORPUS_TEXT[name])


SMALL = ["line", "xy3", "conic_t", "conic_q", "point", "loopy", "ratcoef"]


# -- linear algebra over Q(t), the slow and obvious way ------------------------------------


def rank_rows(rows) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    r = 0
    for j in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][j].inverse()
        for i in range(r + 1, len(m)):
            if m[i][j]:
                f = m[i][j] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def restrict_cols(M, keep):
    idx = [j for j, u in enumerate(M.cols) if u in keep]
    return [[row[j] for j in idx] for row in M.rows]


def brute_force_circuits(M) -> set:
    """Minimal supports of nonzero elements of the row space of M."""
    k = rank_rows(M.rows)
    cols = list(M.cols)
    found = []
    for size in range(1, len(cols) - k + 2):
        for S in combinations(cols, size):
            S = frozenset(S)
            if any(C <= S for C in found):
                continue
            outside = [u for u in cols if u not in S]
            if rank_rows(restrict_cols(M, outside)) < k:
                found.append(S)
    return set(found)


def element_with_support(M, C) -> dict:
    """The (unique up to scale) row-space element supported on C, by elimination."""
    order = [u for u in M.cols if u not in C] + [u for u in M.cols if u in C]
    pos = {u: j for j, u in enumerate(M.cols)}
    m = [[row[pos[u]] for u in order] for row in M.rows]
    r = 0
    outside = len(M.cols) - len(C)
    for j in range(len(order)):
        piv = next((i for i in range(r, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][j].inverse()
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][j]:
                f = m[i][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        if j >= outside:
            return {u: c for u, c in zip(order, m[r]) if c}
        r += 1
    raise AssertionError("no element supported on C")


def normalized_vals(coefs: dict, anchor) -> dict:
    base = val(coefs[anchor])
    return {u: val(c) - base for u, c in coefs.items()}


# -- random generators ---------------------------------------------------------------------


def random_ratfunc(rng: random.Random, allow_neg=True) -> RatFunc:
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
    k = rng.randint(-2 if allow_neg else 0, 3)
    out = RatFunc.const(c) * RatFunc.t_power(k)
    if rng.random() < 0.3:
        out = out * (RatFunc.const(1) + RatFunc.t_power(rng.randint(1, 2)))
    if rng.random() < 0.2:
        out = out / (RatFunc.const(1) - RatFunc.t_power(1))
    return out


def random_element(M, rng: random.Random) -> ValuedPoly:
    """A random K-combination of the rows of a Macaulay matrix (nonzero)."""
    if not M.rows:
        raise ValueError("the piece has no rows to combine")
    nv = len(M.cols[0])
    while True:
        f = ValuedPoly.zero(nv)
        for i in range(len(M.rows)):
            if rng.random() < 0.7:
                f = f + M.row_poly(i) * random_ratfunc(rng)
        if not f.is_zero():
            return f


def random_coefs(labels, rng: random.Random, density=0.6, lo=-5, hi=5) -> dict:
    out = {}
    for u in labels:
        if rng.random() < density:
            out[u] = Fraction(rng.randint(lo * 2, hi * 2), 2)
    if not out and labels:
        out[rng.choice(list(labels))] = Fraction(rng.randint(lo, hi))
    return out
