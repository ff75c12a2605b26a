"""Canonical forms for the congruence generated by bend relations.

Two homogeneous tropical polynomials of degree d are congruent iff their
canonical forms pi(F) agree.  ``pi_direct`` evaluates the circuit formula;
``pi_fast`` uses a w_F-minimal basis and one fundamental circuit per
coordinate.  Loops of the matroid (monomials lying in I_d) are dropped: their
coefficient never affects the class, and pi reports them as inf.
"""
from __future__ import annotations

from typing import Mapping

from .matroid import ValuatedMatroid
from .poly import Flavor, TropPoly, graded_piece
from .scalar import INF, TropScalar, ext_sub


class PiContext:
    """Everything pi needs for one degree: the valuated matroid and its loops."""

    def __init__(self, matroid: ValuatedMatroid, degree: int | None = None):
        self.matroid = matroid
        self.degree = degree
        self.loops = matroid.loops()
        self.nvars = len(matroid.monomial(matroid.ground[0])) if matroid.ground else 0
        self._circuits = None
        self._vcircuits: dict = {}

    # -- bookkeeping ------------------------------------------------------------------

    def coefficients(self, F: TropPoly) -> dict:
        """Coefficients of F keyed by ground label, with loops removed."""
        vm = self.matroid
        out = {}
        for u, a in F.items():
            try:
                e = vm.label(u)
            except ValueError:
                e = None
            if e not in vm._index or vm.monomial(e) != tuple(u):
                raise ValueError(f"monomial {u} is not in the ground set of degree {self.degree}")
            if e not in self.loops:
                out[e] = a
        return out

    def circuits(self) -> list:
        """Circuits of size at least two (loops excluded)."""
        if self._circuits is None:
            self._circuits = [C for C in self.matroid.circuits() if len(C) > 1]
        return self._circuits

    def valuated_circuit(self, C, u) -> dict:
        """G_{C,u} as a label -> value map."""
        C = frozenset(C)
        if C not in self._vcircuits:
            vm = self.matroid
            first = vm.ordered(C)[0]
            self._vcircuits[C] = vm.coefficients(vm.valuated_circuit(C, first))
        G = self._vcircuits[C]
        return {v: g - G[u] for v, g in G.items()}

    def closure_support(self, F: TropPoly) -> frozenset:
        supp = frozenset(self.coefficients(F))
        if not supp:
            return frozenset()
        return self.matroid.closure(supp) - self.loops

    def _poly(self, coefs: Mapping) -> TropPoly:
        if not self.matroid.ground:
            return TropPoly.infinity(self.nvars)
        return self.matroid.vector(coefs)


def lambda_(ctx: PiContext, C, u, F: TropPoly) -> TropScalar:
    """Least lambda with lambda + (G_{C,u} without u) >= F."""
    G = ctx.valuated_circuit(C, u)
    coefs = ctx.coefficients(F) if isinstance(F, TropPoly) else F
    others = [v for v in G if v != u]
    if not others:
        raise ValueError("lambda is undefined on a loop")
    by_max = max(ext_sub(coefs.get(v, INF), G[v]) for v in others)
    # least candidate satisfying the inequality directly
    cands = sorted({coefs[v] - G[v] for v in others if v in coefs} | {INF})
    by_min = next(lam for lam in cands
                  if all(lam + G[v] >= coefs.get(v, INF) for v in others))
    assert by_max == by_min, (by_max, by_min)
    return by_max


def pi_direct(ctx: PiContext, F: TropPoly) -> TropPoly:
    """pi(F) from the circuit formula, one coordinate at a time."""
    coefs = ctx.coefficients(F)
    supp = frozenset(coefs)
    out = dict(coefs)
    for C in ctx.circuits():
        for u in C:
            if not C - {u} <= supp:
                continue
            lam = lambda_(ctx, C, u, coefs)
            if lam < out.get(u, INF):
                out[u] = lam
    return ctx._poly(out)


def fast_basis(ctx: PiContext, F: TropPoly) -> frozenset:
    """B_F: a basis of E_F minimising p(B) + sum of F over B.

    Coefficients missing on E_F count as arbitrarily large; ties resolve to the
    lexicographically least basis in ground order.
    """
    E = ctx.closure_support(F)
    if not E:
        return frozenset()
    return ctx.matroid.greedy_min_basis(E, ctx.coefficients(F))


def pi_fast(ctx: PiContext, F: TropPoly) -> TropPoly:
    """pi(F) from a w_F-minimal basis and fundamental circuits."""
    vm = ctx.matroid
    coefs = ctx.coefficients(F)
    E = ctx.closure_support(F)
    if not E:
        return ctx._poly({})
    B = vm.greedy_min_basis(E, coefs)
    pB = vm.p_extend(B)
    out = {u: coefs[u] for u in B}
    for u in E - B:
        C = vm.fundamental_circuit(B, u)
        out[u] = max(coefs[v] - vm.p_extend((B | {u}) - {v}) + pB for v in C - {u})
    return ctx._poly(out)


def pi(ctx: PiContext, F: TropPoly, method: str = "fast") -> TropPoly:
    if method == "fast":
        return pi_fast(ctx, F)
    if method == "direct":
        return pi_direct(ctx, F)
    raise ValueError(f"unknown method {method!r}")


def equiv(ctx: PiContext, F: TropPoly, G: TropPoly, method: str = "fast") -> bool:
    """Whether F ~ G lies in the congruence (same canonical form)."""
    return pi(ctx, F, method) == pi(ctx, G, method)


def degrees_of(F: TropPoly) -> set:
    return {sum(u) for u in F.support()}


def equiv_graded(contexts: Mapping[int, PiContext], F: TropPoly, G: TropPoly,
                 method: str = "fast") -> bool:
    """Compare graded pieces degree by degree; equal pieces need no context."""
    if F.flavor is not Flavor.PROJECTIVE or G.flavor is not Flavor.PROJECTIVE:
        raise ValueError("homogenize Laurent polynomials before comparing them")
    for d in sorted(degrees_of(F) | degrees_of(G)):
        Fd, Gd = graded_piece(F, d), graded_piece(G, d)
        if Fd == Gd:
            continue
        if d not in contexts:
            raise KeyError(f"no model for degree {d}")
        # None marks a degree where I_d holds every monomial: all pieces agree
        if contexts[d] is not None and not equiv(contexts[d], Fd, Gd, method):
            return False
    return True
