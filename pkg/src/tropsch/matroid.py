"""Valuated matroids (min convention) and their underlying matroids.

A valuated matroid is a basis valuation ``p`` on the r-subsets of an ordered
ground set.  ``p`` is an oracle with a memo cache; nothing is materialised
unless a caller asks for all bases.

Optimisation over bases (``p_extend``, ``greedy_min_basis``) runs a
steepest single-exchange descent.  For a valuated matroid every local
optimum of ``p(B) + sum of element weights`` is global, and this remains true
when the weights take values in a lexicographically ordered group, which is
how "large enough" surrogates and deterministic tie-breaking are encoded
exactly.  An exhaustive scan is available as an independent check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Mapping

from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, NoMatroidError
from .linalg import KMatrix, minor_val, poly_rank, row_reduce
from .poly import Flavor, TropPoly
from .scalar import INF, TropScalar, ext_sub, scalar


def _exponent_ground(ground) -> bool:
    return bool(ground) and all(
        isinstance(e, tuple) and all(isinstance(x, int) for x in e) for e in ground
    ) and len({len(e) for e in ground}) == 1


class Matroid:
    """A matroid given by a basis predicate and, optionally, a rank oracle."""

    def __init__(self, ground, rank: int, is_basis: Callable | None = None,
                 rank_oracle: Callable | None = None, caps: Caps = DEFAULT_CAPS):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set has repeated elements")
        self.rank = rank
        self.caps = caps
        self._index = {e: i for i, e in enumerate(self.ground)}
        self._basis_pred = is_basis
        self._rank_oracle = rank_oracle
        self._bases = None
        self._circuits = None
        self._rank_cache: dict = {}

    # -- helpers ---------------------------------------------------------------

    def _set(self, A) -> frozenset:
        A = frozenset(A)
        unknown = A - self._index.keys()
        if unknown:
            raise KeyError(f"not in the ground set: {sorted(unknown, key=repr)}")
        return A

    def ordered(self, A) -> tuple:
        return tuple(sorted(A, key=self._index.__getitem__))

    def is_basis(self, B) -> bool:
        B = frozenset(B)
        if len(B) != self.rank:
            return False
        if self._bases is not None:
            return B in self._bases_set
        return self._basis_pred(B)

    # -- enumeration -------------------------------------------------------------

    def bases(self) -> list:
        """All bases, in lexicographic order of the ground order."""
        if self._bases is None:
            n = comb(len(self.ground), self.rank)
            if n > self.caps.exhaustive:
                raise CapExceeded(f"{n} candidate bases exceed the exhaustive cap "
                                  f"{self.caps.exhaustive}")
            self._bases = [frozenset(B) for B in combinations(self.ground, self.rank)
                           if self._basis_pred(frozenset(B))]
            self._bases_set = frozenset(self._bases)
        return list(self._bases)

    def rank_of(self, A) -> int:
        A = self._set(A)
        if A in self._rank_cache:
            return self._rank_cache[A]
        if self._rank_oracle is not None:
            r = self._rank_oracle(A)
        else:
            r = max((len(A & B) for B in self.bases()), default=0)
        self._rank_cache[A] = r
        return r

    def is_independent(self, A) -> bool:
        A = frozenset(A)
        return self.rank_of(A) == len(A)

    def closure(self, A) -> frozenset:
        A = self._set(A)
        r = self.rank_of(A)
        return frozenset(e for e in self.ground if e in A or self.rank_of(A | {e}) == r)

    def loops(self) -> frozenset:
        return frozenset(e for e in self.ground if self.rank_of({e}) == 0)

    def circuits(self) -> list:
        """All circuits, as fundamental circuits over every basis."""
        if self._circuits is None:
            if len(self.ground) > self.caps.circuits:
                raise CapExceeded(f"{len(self.ground)} ground elements exceed the "
                                  f"circuit cap {self.caps.circuits}")
            found = set()
            for B in self.bases():
                for u in self.ground:
                    if u in B:
                        continue
                    C = frozenset(v for v in B if self.is_basis(B - {v} | {u})) | {u}
                    found.add(C)
            self._circuits = sorted(found, key=lambda C: (len(C), [self._index[e] for e in self.ordered(C)]))
        return list(self._circuits)

    def is_circuit(self, C) -> bool:
        C = self._set(C)
        return (bool(C) and not self.is_independent(C)
                and all(self.is_independent(C - {e}) for e in C))

    def fundamental_circuit(self, B, u) -> frozenset:
        """The unique circuit inside ``B + u`` (B independent, u in cl(B) - B)."""
        B = self._set(B)
        if u not in self._index:
            raise KeyError(f"{u!r} is not in the ground set")
        if not self.is_independent(B):
            raise ValueError("B is not independent")
        if u in B:
            raise ValueError("u already lies in B")
        if self.is_independent(B | {u}):
            raise ValueError("u is not in the closure of B")
        return frozenset(v for v in B if self.is_independent(B - {v} | {u})) | {u}

    def restrict(self, E) -> "Matroid":
        E = self._set(E)
        ground = self.ordered(E)
        r = self.rank_of(E)
        return Matroid(ground, r, lambda B: self.is_independent(B),
                       lambda A: self.rank_of(A), self.caps)


class ValuatedMatroid(Matroid):
    """Basis valuation oracle ``p`` on the r-subsets of ``ground``.

    ``p`` is a mapping (absent subsets are inf) or a callable returning a
    tropical scalar for a frozenset.  ``offset`` is subtracted from every
    finite value read through :meth:`p`.
    """

    def __init__(self, ground, rank: int, p, *, rank_oracle=None,
                 provenance: str = "SYNTHETIC", caps: Caps = DEFAULT_CAPS,
                 offset=Fraction(0), check: bool = True):
        if isinstance(p, Mapping):
            table = {frozenset(B): scalar(v) for B, v in p.items()}
            oracle = lambda B: table.get(B, INF)
        else:
            table = None
            oracle = p
        self._oracle = oracle
        self._pcache: dict = {}
        self.offset = offset
        self.provenance = provenance
        super().__init__(ground, rank, lambda B: self._raw(B) != INF, rank_oracle, caps)
        if table is not None:
            for B in table:
                if len(B) != rank or not B <= self._index.keys():
                    raise ValueError(f"{sorted(B, key=repr)} is not an r-subset of the ground set")
        self.monomial_flavor = _exponent_ground(self.ground)
        if check and not self._has_finite_basis():
            raise ValueError("a valuated matroid needs at least one finite basis value")

    def _has_finite_basis(self) -> bool:
        if comb(len(self.ground), self.rank) <= self.caps.exhaustive:
            return bool(self.bases())
        return True

    def _raw(self, B: frozenset) -> TropScalar:
        try:
            return self._pcache[B]
        except KeyError:
            v = self._oracle(B)
            self._pcache[B] = v
            return v

    def p(self, B) -> TropScalar:
        B = self._set(B)
        if len(B) != self.rank:
            raise ValueError(f"p is defined on {self.rank}-subsets, got {len(B)}")
        v = self._raw(B)
        return v if v == INF else v - self.offset

    def table(self) -> dict:
        return {B: self.p(B) for B in self.bases()}

    def underlying(self) -> Matroid:
        return Matroid(self.ground, self.rank, self.is_basis, self._rank_oracle, self.caps)

    # -- ground labels as monomials ------------------------------------------------

    def monomial(self, e) -> tuple:
        if self.monomial_flavor:
            return e
        u = [0] * len(self.ground)
        u[self._index[e]] = 1
        return tuple(u)

    def label(self, u) -> Hashable:
        if self.monomial_flavor:
            return tuple(u)
        return self.ground[list(u).index(1)]

    def vector(self, coefs: Mapping) -> TropPoly:
        """Tropical polynomial with the given coefficient per ground element."""
        nv = len(self.ground[0]) if self.monomial_flavor else len(self.ground)
        return TropPoly({self.monomial(e): a for e, a in coefs.items()}, nv, Flavor.PROJECTIVE)

    def coefficients(self, H: TropPoly) -> dict:
        return {self.label(u): a for u, a in H.items()}

    # -- optimisation over bases ------------------------------------------------------

    def _start_basis(self, cost) -> frozenset:
        B = set()
        for e in sorted(self.ground, key=lambda e: (cost(e), self._index[e])):
            if len(B) == self.rank:
                break
            if self.is_independent(B | {e}):
                B.add(e)
        return frozenset(B)

    def _key(self, B, cost):
        pb = self._raw(B)
        if pb == INF:
            return None
        tiers = [0, 0]
        value = pb
        tie_in = tie_out = 0
        for e in B:
            c = cost(e)
            tiers[0] += c[0]
            tiers[1] += c[1]
            value += c[2]
            if c[0] > 0:
                tie_out += 1 << self._index[e]
            else:
                tie_in += 1 << self._index[e]
        return (tiers[0], tiers[1], value, tie_in, tie_out)

    def _optimize(self, cost, method: str = "descent"):
        """Basis minimising ``(tier0, tier1, p + value, tie-break)`` in lex order.

        ``cost(e)`` returns ``(tier0, tier1, value)``.  Returns ``(B, key)``.
        """
        if method == "exhaustive":
            best = None
            for B in self.bases():
                k = self._key(B, cost)
                if best is None or k < best[1]:
                    best = (B, k)
            return best
        if method != "descent":
            raise ValueError(f"unknown method {method!r}")
        B = self._start_basis(cost)
        key = self._key(B, cost)
        outside = [e for e in self.ground]
        while True:
            best = None
            for b in self.ordered(B):
                rest = B - {b}
                for e in outside:
                    if e in B:
                        continue
                    cand = rest | {e}
                    k = self._key(cand, cost)
                    if k is not None and k < key and (best is None or k < best[1]):
                        best = (cand, k)
            if best is None:
                return B, key
            B, key = best

    def min_basis(self, method: str = "descent"):
        B, k = self._optimize(lambda e: (0, 0, 0), method)
        return B, k[2] - self.offset

    def p_extend(self, A, method: str = "descent") -> TropScalar:
        """min p(B) over bases containing A; inf iff A is dependent."""
        A = self._set(A)
        if len(A) > self.rank:
            return INF
        if len(A) == self.rank:
            return self.p(A)
        cache = self.__dict__.setdefault("_extend_cache", {})
        if method == "descent" and A in cache:
            return cache[A]
        if self._rank_oracle is not None and not self.is_independent(A):
            out = INF
        else:
            B, k = self._optimize(lambda e: (0 if e in A else 1, 0, 0), method)
            out = INF if not A <= B else k[2] - self.offset
        if method == "descent":
            cache[A] = out
        return out

    def greedy_min_basis(self, E, weights: Mapping, method: str = "descent") -> frozenset:
        """Maximal independent B in E minimising p_extend(B) + sum of weights.

        Elements of E whose weight is inf (or missing) act as arbitrarily large
        finite weights; a ValueError is raised if an optimum still needs one.
        Ties are broken towards the lexicographically least set in ground order.
        """
        E = self._set(E)
        w = {e: scalar(weights[e]) if e in weights else INF for e in E}

        def cost(e):
            if e not in E:
                return (1, 0, 0)
            if w[e] == INF:
                return (0, 1, 0)
            return (0, 0, w[e])

        B, _ = self._optimize(cost, method)
        B = B & E
        if any(w[e] == INF for e in B):
            raise ValueError("every basis of E uses an element of infinite weight")
        return B

    # -- circuits and vectors -----------------------------------------------------------

    def valuated_circuit(self, C, u) -> TropPoly:
        """Valuated circuit with support C, normalised to coefficient 0 at u."""
        C = self._set(C)
        if u not in C:
            raise ValueError("u must lie in C")
        if not self.is_circuit(C):
            raise ValueError("C is not a circuit")
        base = self.p_extend(C - {u})
        return self.vector({v: self.p_extend(C - {v}) - base for v in C})

    def valuated_circuit_from(self, B, u) -> TropPoly:
        """The same valuated circuit computed from a witness independent set B."""
        C = self.fundamental_circuit(B, u)
        B = frozenset(B)
        base = self.p_extend(B)
        return self.vector({v: self.p_extend((B | {u}) - {v}) - base for v in C})

    def is_vector(self, H: TropPoly) -> bool:
        """True iff H is a min-plus combination of valuated circuits (residuation)."""
        if H.is_infinity():
            return True
        coefs = self.coefficients(H)
        combo: dict = {}
        for C in self.circuits():
            G = self.coefficients(self.valuated_circuit(C, self.ordered(C)[0]))
            mu = max(ext_sub(coefs.get(e, INF), g) for e, g in G.items())
            if mu == INF:
                continue
            for e, g in G.items():
                if mu + g < combo.get(e, INF):
                    combo[e] = mu + g
        return combo == coefs

    # -- axioms and restriction --------------------------------------------------------

    def check_plucker(self, exhaustive: bool = True, samples: int = 2000,
                      rng: random.Random | None = None) -> "PluckerVerdict":
        """Check the three-term exchange inequality over pairs of bases."""
        bases = self.bases()
        if not bases:
            return PluckerVerdict(False, None, 0, "no basis has a finite value")
        if exhaustive:
            pairs = ((B, B2) for B in bases for B2 in bases if B != B2)
        else:
            rng = rng or random.Random(0)
            pairs = ((rng.choice(bases), rng.choice(bases)) for _ in range(samples))
        checked = 0
        for B, B2 in pairs:
            if B == B2:
                continue
            lhs = self.p(B) + self.p(B2)
            for u in self.ordered(B - B2):
                ok = False
                for v in self.ordered(B2 - B):
                    a, b = self.p(B - {u} | {v}), self.p(B2 - {v} | {u})
                    if a != INF and b != INF and lhs >= a + b:
                        ok = True
                        break
                checked += 1
                if not ok:
                    return PluckerVerdict(False, (self.ordered(B), self.ordered(B2), u),
                                          checked, "exchange inequality fails")
        return PluckerVerdict(True, None, checked, "")

    def restrict(self, E) -> "ValuatedMatroid":
        E = self._set(E)
        r = self.rank_of(E)
        return ValuatedMatroid(self.ordered(E), r, lambda B: self.p_extend(B),
                               rank_oracle=lambda A: self.rank_of(A),
                               provenance="RESTRICTION", caps=self.caps)


@dataclass
class PluckerVerdict:
    ok: bool
    violation: tuple | None
    checked: int
    message: str

    def __bool__(self):
        return self.ok


def from_ideal_piece(M: KMatrix, caps: Caps = DEFAULT_CAPS) -> ValuatedMatroid:
    """The valuated matroid of L_d = I_d^perp, read from complementary minors of I_d.

    Values are normalised so that the minimum over all bases is 0.
    """
    R = M if M.is_reduced else row_reduce(M)
    cols = R.cols
    k, n = len(R.rows), len(cols)
    if k == n:
        raise NoMatroidError("the graded piece is the whole space; L_d = 0")
    r = n - k
    piv = set(R.pivots)
    pidx = {u: i for i, u in enumerate(R.pivots)}
    cidx = {u: j for j, u in enumerate(cols)}
    free = [u for u in cols if u not in piv]
    scaled, _ = R._scaled
    allcols = frozenset(cols)

    def raw(B):
        return minor_val(R, allcols - B)

    def rank_oracle(A):
        rows = [pidx[u] for u in A if u in piv]
        others = [cidx[u] for u in free if u not in A]
        sub = [[scaled[i][j] for j in others] for i in rows]
        return sum(1 for u in A if u not in piv) + (poly_rank(sub) if sub and others else 0)

    vm = ValuatedMatroid(cols, r, raw, rank_oracle=rank_oracle, provenance="REALIZED",
                         caps=caps, check=False)
    vm.reduced = R
    _, low = vm.min_basis()
    vm.offset = low
    vm._extend_cache = {}
    return vm
