from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsch.parsing import parse_trop
from tropsch.poly import (Flavor, Relation, TropPoly, bend_relations, dehomogenize,
                          delete_term, evaluate, format_poly, graded_piece,
                          homogenize, homogenize_relation, initial_form, initial_relation,
                          monomial_change, t_poly_add, t_poly_mul)
from tropsch.scalar import INF, t_add, t_mul

L = Flavor.LAURENT


def lp(text, names="x,y,z"):
    return parse_trop(text, names.split(","), flavor=L)


def pp(text, names="x0,x1,x2"):
    return parse_trop(text, names.split(","))


coef = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 4))


def polys(n=2, lo=-2, hi=3, flavor=L, min_size=0):
    exps = st.tuples(*[st.integers(lo, hi)] * n)
    return st.dictionaries(exps, coef, min_size=min_size, max_size=5).map(
        lambda d: TropPoly(d, n, flavor))


points = st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 4)),
                  min_size=2, max_size=2)


def test_collapse_by_min_and_inf_dropped():
    F = TropPoly([((1, 0), 3), ((1, 0), 1), ((0, 1), INF)], 2)
    assert F.terms == {(1, 0): 1}
    assert TropPoly.infinity(2).is_infinity()
    with pytest.raises(ValueError):
        TropPoly({(-1, 0): 0}, 2)


def test_delete_and_bend():
    F = lp("min(x, 1 + y, 2 + z)")
    rels = bend_relations(F)
    assert len(rels) == 3
    assert all(r.lhs == F and len(r.rhs) == 2 for r in rels)
    with pytest.raises(KeyError):
        delete_term(F, (5, 5, 5))


@given(polys(min_size=1))
def test_delete_then_readd(F):
    u, a = next(iter(F.items()))
    G = delete_term(F, u)
    assert t_poly_add(G, TropPoly({u: a}, F.nvars, F.flavor)) == F


@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(F, G, w):
    assert evaluate(t_poly_add(F, G), w) == t_add(evaluate(F, w), evaluate(G, w))
    assert evaluate(t_poly_mul(F, G), w) == t_mul(evaluate(F, w), evaluate(G, w))


@given(polys(lo=0))
def test_graded_decomposition(F):
    pieces = [graded_piece(F, d) for d in {sum(u) for u in F.support()}]
    total = TropPoly.infinity(F.nvars, F.flavor)
    for P in pieces:
        assert P.is_homogeneous()
        total = t_poly_add(total, P)
    assert total == F


def test_homogenize_goldens():
    assert homogenize(lp("min(0 + x, 1)", "x")) == pp("min(x1, x0)", "x0,x1")
    assert homogenize(lp("min(x, 1 + y^2)", "x,y")) == pp("min(x0*x1, 1 + x2^2)")
    assert homogenize(TropPoly.infinity(2, L)).is_infinity()


def test_homogenize_relation_goldens():
    r = homogenize_relation(Relation(lp("min(x, 1)", "x"), lp("x", "x")))
    assert (r.lhs, r.rhs) == (pp("min(x1, x0)", "x0,x1"), pp("x1", "x0,x1"))
    r = homogenize_relation(Relation(lp("min(x^2, 1)", "x"), lp("x", "x")))
    assert (r.lhs, r.rhs) == (pp("min(x1^2, x0^2)", "x0,x1"), pp("x0*x1", "x0,x1"))
    r = homogenize_relation(Relation(lp("x", "x"), lp("min(x^2, 1)", "x")))
    assert r.lhs == pp("x0*x1", "x0,x1")
    with pytest.raises(ValueError):
        homogenize_relation(Relation(lp("x", "x"), TropPoly.infinity(1, L)))


@given(polys(lo=0), polys(lo=0))
def test_homogenized_relation_sides_share_a_degree(F, G):
    if F.is_infinity() or G.is_infinity():
        return
    r = homogenize_relation(Relation(F, G))
    degs = {sum(u) for u in r.lhs.support()} | {sum(u) for u in r.rhs.support()}
    assert len(degs) == 1


def test_dehomogenize_goldens():
    assert dehomogenize(pp("min(x1, x0)", "x0,x1")) == lp("min(x, 1)", "x")
    assert dehomogenize(pp("min(x0*x1, 1 + x1)", "x0,x1")) == lp("x", "x")
    assert dehomogenize(TropPoly.infinity(3)).is_infinity()


@given(polys(lo=0))
def test_dehomogenize_homogenize(F):
    assert dehomogenize(homogenize(F)) == F
    assert homogenize(F).is_homogeneous()


def test_initial_form_goldens():
    F = lp("min(0 + x, 1 + y, 2 + z)")
    assert initial_form(F, [2, 1, 3]) == lp("min(x, y)")
    assert initial_form(F, [1, 2, 2]) == lp("x")
    with pytest.raises(ValueError):
        initial_form(TropPoly.infinity(3, L), [0, 0, 0])


def test_initial_relation_goldens():
    r = Relation(lp("min(0 + x, 1 + y, 2 + z)"), lp("min(1 + y, 2 + z)"))
    s = initial_relation(r, [2, 1, 3])
    assert (s.lhs, s.rhs) == (lp("min(x, y)"), lp("y"))
    s = initial_relation(r, [1, 2, 2])
    assert (s.lhs, s.rhs) == (lp("x"), TropPoly.infinity(3, L))
    assert initial_relation(Relation(r.lhs, r.lhs), [0, 0, 0]).lhs == initial_form(r.lhs, [0, 0, 0])


@given(polys(min_size=1), points)
def test_initial_form_attains_value(F, w):
    P = initial_form(F, w)
    value = evaluate(F, w)
    assert P.support() and all(a == 0 for _, a in P.items())
    assert all(F.coef(u) + sum(a * b for a, b in zip(w, u)) == value for u in P.support())


def test_monomial_change_goldens():
    F = lp("min(x, 1 + y)", "x,y")
    assert monomial_change(F, [[1, 0], [0, 1]]) == F
    assert monomial_change(F, [[0, 1], [1, 0]]) == lp("min(y, 1 + x)", "x,y")
    assert monomial_change(lp("x", "x,y"), [[1, 1], [0, 1]]) == lp("x", "x,y")
    with pytest.raises(ValueError):
        monomial_change(F, [[2, 0], [0, 1]])


unimodular = st.sampled_from([[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]],
                              [[1, 0], [-2, 1]], [[2, 1], [1, 1]], [[-1, 0], [0, 1]]])


@given(polys(), polys(), unimodular)
def test_monomial_change_is_an_automorphism(F, G, A):
    assert monomial_change(t_poly_add(F, G), A) == t_poly_add(monomial_change(F, A),
                                                               monomial_change(G, A))
    assert monomial_change(t_poly_mul(F, G), A) == t_poly_mul(monomial_change(F, A),
                                                               monomial_change(G, A))


@given(polys(lo=0, flavor=Flavor.PROJECTIVE))
@settings(max_examples=50)
def test_format_round_trip(F):
    assert parse_trop(format_poly(F), nvars=F.nvars) == F


def test_format_examples():
    assert format_poly(pp("min(x0, 1 + x1, 2 + x2)")) == "min(x0, 1 + x1, 2 + x2)"
    assert format_poly(TropPoly.infinity(2)) == "inf"
    assert format_poly(TropPoly({(0, 0): Fraction(-1, 2)}, 2)) == "-1/2 + 1"


def test_mixed_semirings_rejected():
    with pytest.raises(ValueError):
        t_poly_add(lp("x"), pp("x0"))
    with pytest.raises(ValueError):
        Relation(lp("x"), pp("x0"))
