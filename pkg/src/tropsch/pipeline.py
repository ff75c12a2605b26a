"""Per-degree orchestration: graded pieces, matroids, Hilbert values, initial forms."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Sequence

from .config import DEFAULT_CAPS, Caps
from .congruence import PiContext
from .errors import CapExceeded, NoMatroidError
from .field import ValuedPoly, format_valued, val
from .linalg import (InitialSpace, KMatrix, const_matrix, initial_space,
                     macaulay_matrix, monomials, row_reduce)
from .matroid import ValuatedMatroid, from_ideal_piece
from .poly import dot
from .scalar import INF, scalar


class Valuation(Enum):
    T_ADIC = "Q(t)"
    TRIVIAL = "Q"


@dataclass
class IdealSpec:
    vars: list
    gens: list
    mode: Valuation = Valuation.T_ADIC

    def __post_init__(self):
        n = len(self.vars)
        if len(set(self.vars)) != n:
            raise ValueError("variable names must be distinct")
        for i, g in enumerate(self.gens):
            if g.nvars != n:
                raise ValueError(f"generator {i} has {g.nvars} variables, expected {n}")
            if g.is_zero():
                raise ValueError(f"generator {i} is zero")
            if not g.is_homogeneous():
                raise ValueError(f"generator {i} is not homogeneous")
            if self.mode is Valuation.TRIVIAL and not all(c.is_const() for _, c in g.items()):
                raise ValueError(f"generator {i} involves t but the field is Q")

    @property
    def nvars(self) -> int:
        return len(self.vars)


@dataclass
class DegreeModel:
    d: int
    cols: tuple
    macaulay: KMatrix = field(repr=False)
    reduced: KMatrix = field(repr=False)
    matroid: ValuatedMatroid = field(repr=False)
    context: PiContext = field(repr=False)

    @property
    def hilbert(self) -> int:
        return len(self.cols) - len(self.reduced.rows)

    def recorded_elements(self) -> list:
        """Macaulay rows followed by reduced rows, as polynomials."""
        return self.macaulay.polys() + self.reduced.polys()


def _check_size(spec: IdealSpec, d: int, caps: Caps) -> int:
    if d < 0:
        raise ValueError("degree must be non-negative")
    size = comb(spec.nvars + d - 1, d)
    if size > caps.monomials:
        raise CapExceeded(f"degree {d} has {size} monomials, above the cap {caps.monomials}")
    return size


def graded_piece_matrix(spec: IdealSpec, d: int, caps: Caps = DEFAULT_CAPS) -> KMatrix:
    _check_size(spec, d, caps)
    return macaulay_matrix(spec.gens, d, spec.nvars)


def build_degree(spec: IdealSpec, d: int, caps: Caps = DEFAULT_CAPS) -> DegreeModel:
    M = graded_piece_matrix(spec, d, caps)
    R = row_reduce(M)
    vm = from_ideal_piece(R, caps)
    return DegreeModel(d, M.cols, M, R, vm, PiContext(vm, d))


def hilbert_value(spec: IdealSpec, d: int, caps: Caps = DEFAULT_CAPS) -> int:
    M = graded_piece_matrix(spec, d, caps)
    return len(M.cols) - len(row_reduce(M).rows)


def hilbert_function(spec: IdealSpec, dmax: int, caps: Caps = DEFAULT_CAPS,
                     workers: int | None = None) -> list:
    """[(d, HF(d)) for 0 <= d <= dmax], computed per degree."""
    degrees = range(dmax + 1)
    for d in degrees:
        _check_size(spec, d, caps)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda d: hilbert_value(spec, d, caps), degrees))
    else:
        values = [hilbert_value(spec, d, caps) for d in degrees]
    return list(zip(degrees, values))


def _weights(spec: IdealSpec, w) -> list:
    w = [scalar(x) for x in w]
    if len(w) != spec.nvars:
        raise ValueError(f"weight vector needs {spec.nvars} entries, got {len(w)}")
    if INF in w:
        raise ValueError("weights must be finite")
    return w


def initial_degree_model(spec: IdealSpec, w, d: int, caps: Caps = DEFAULT_CAPS):
    """(Q-basis of in_w(I)_d, its trivially valued matroid or None if L_d = 0)."""
    w = _weights(spec, w)
    R = row_reduce(graded_piece_matrix(spec, d, caps))
    space = initial_space(R, w)
    if space.dim == len(R.cols):
        return space, None
    return space, from_ideal_piece(const_matrix(space.rows, R.cols), caps)


@dataclass
class MatroidCheck:
    agree: bool
    expected: list   # argmin bases from p and w
    actual: list     # bases of the initial matroid

    def __bool__(self):
        return self.agree


def initial_matroid_check(spec: IdealSpec, w, d: int, caps: Caps = DEFAULT_CAPS) -> MatroidCheck:
    """Compare the matroid of in_w(I)_d with the argmin of p(B) - sum of w.u over B."""
    w = _weights(spec, w)
    model = build_degree(spec, d, caps)
    vm = model.matroid
    scores = {B: vm.p(B) - sum(dot(w, u) for u in B) for B in vm.bases()}
    low = min(scores.values())
    expected = sorted((vm.ordered(B) for B, s in scores.items() if s == low))
    _, im = initial_degree_model(spec, w, d, caps)
    actual = sorted(im.ordered(B) for B in im.bases())
    return MatroidCheck(expected == actual, expected, actual)


@dataclass
class PointVerdict:
    ok: bool
    dmax: int
    witness: ValuedPoly | None = None
    degree: int | None = None
    exact: bool = False

    @property
    def status(self) -> str:
        return f"PASS-UP-TO-DEGREE({self.dmax})" if self.ok else "FAIL"

    def __bool__(self):
        return self.ok


def _min_attained_twice(f: ValuedPoly, w) -> bool:
    vals = sorted(val(c) + dot(w, u) for u, c in f.items())
    return len(vals) >= 2 and vals[0] == vals[1]


def bend_check_point(spec: IdealSpec, w, dmax: int, caps: Caps = DEFAULT_CAPS) -> PointVerdict:
    """Necessary condition for w to lie on the tropical variety.

    Checks that trop(f)(w) attains its minimum twice for every recorded element
    of I_d, d <= dmax: Macaulay rows, reduced rows, and the rows of the
    w-adapted echelon form (which expose monomials of in_w(I)).  For a principal
    ideal checked up to the generator degree the answer is exact.
    """
    w = _weights(spec, w)
    for d in range(dmax + 1):
        M = graded_piece_matrix(spec, d, caps)
        if not M.rows:
            continue
        R = row_reduce(M)
        elements = M.polys() + R.polys() + initial_space(R, w).witness_polys()
        for f in elements:
            if not _min_attained_twice(f, w):
                return PointVerdict(False, dmax, f, d)
    exact = len(spec.gens) == 1 and dmax >= spec.gens[0].degree()
    return PointVerdict(True, dmax, exact=exact)


def describe_element(spec: IdealSpec, f: ValuedPoly) -> str:
    return format_valued(f, spec.vars)
