import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SMALL, corpus, random_element, random_ratfunc, rank_rows
from tropsch.field import RatFunc, T, val
from tropsch.linalg import (KMatrix, det_val_direct, initial_space, kernel_basis,
                            macaulay_matrix, minor_val, monomials, poly_det, rank,
                            row_reduce)
from tropsch.pipeline import graded_piece_matrix

seeds = st.integers(0, 10**6)


def example_matrix():
    return graded_piece_matrix(corpus("example4"), 1)


def test_monomial_order():
    assert monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials(4, 3)) == 20
    assert monomials(3, -1) == ()


def test_macaulay_rows_and_origin():
    M = example_matrix()
    assert M.rows == [[1, 1, T, 0], [1, 1, 0, T ** 2]]
    M2 = graded_piece_matrix(corpus("example4"), 2)
    assert len(M2.rows) == 8 and M2.origin[0] == (0, (1, 0, 0, 0))


def test_row_reduce_example():
    R = row_reduce(example_matrix())
    assert R.rows == [[1, 1, 0, T ** 2], [0, 0, 1, -T]]
    assert R.pivots == ((1, 0, 0, 0), (0, 0, 1, 0))
    K = kernel_basis(R)
    assert K.rows == [[-1, 1, 0, 0], [-T ** 2, 0, T, 1]]


def test_minor_values_example():
    R = row_reduce(example_matrix())
    x, y, z, w = R.cols
    got = {frozenset(S): minor_val(R, S) for S in combinations(R.cols, 2)}
    assert got[frozenset({x, y})] == float("inf")
    assert got[frozenset({x, z})] == 0
    assert got[frozenset({x, w})] == 1
    assert got[frozenset({z, w})] == 2


@given(seeds)
@settings(max_examples=30)
def test_minors_match_direct_elimination(seed):
    rng = random.Random(seed)
    spec = corpus(rng.choice(SMALL + ["example4"]))
    d = rng.randint(1, 2)
    M = graded_piece_matrix(spec, d)
    R = row_reduce(M)
    if not R.rows:
        return
    cols = rng.sample(list(R.cols), len(R.rows))
    idx = [R.cols.index(u) for u in cols]
    direct = det_val_direct([[row[j] for j in idx] for row in R.rows])
    assert minor_val(R, cols) == direct


@given(seeds)
@settings(max_examples=30)
def test_kernel_is_orthogonal_and_rank_is_stable(seed):
    rng = random.Random(seed)
    spec = corpus(rng.choice(SMALL))
    M = graded_piece_matrix(spec, rng.randint(1, 3))
    R = row_reduce(M)
    assert rank(M) == rank_rows(M.rows) == len(R.rows)
    for v in kernel_basis(R).rows:
        for row in M.rows:
            assert sum((a * b for a, b in zip(row, v)), RatFunc()) == 0


def test_poly_det_against_direct():
    rng = random.Random(5)
    for n in range(1, 5):
        for _ in range(5):
            mat = [[tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 3))) for _ in range(n)]
                   for _ in range(n)]
            K = [[RatFunc(p) for p in row] for row in mat]
            d = poly_det(mat)
            assert (val(RatFunc(d)) if d else float("inf")) == det_val_direct(K)


def test_initial_space_examples():
    R = row_reduce(example_matrix())
    S = initial_space(R, [0, 0, 0, 0])
    assert S.dim == 2
    polys = {tuple(sorted(p.support())) for p in S.polys()}
    assert polys == {((0, 0, 1, 0),), ((0, 1, 0, 0), (1, 0, 0, 0))}
    line = graded_piece_matrix(corpus("line"), 1)
    S = initial_space(line, [0, 0, -1])
    assert [dict(p.items()) for p in S.polys()] == [{(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}]
    with pytest.raises(ValueError):
        initial_space(line, [0, 0])


@given(seeds)
@settings(max_examples=25)
def test_initial_space_witnesses(seed):
    rng = random.Random(seed)
    spec = corpus(rng.choice(SMALL))
    M = graded_piece_matrix(spec, rng.randint(1, 3))
    w = [rng.randint(-3, 3) for _ in spec.vars]
    S = initial_space(M, w)
    assert S.dim == rank(M)
    # every witness lies in the row space and has the recorded initial form
    for f, g in zip(S.witness_polys(), S.polys()):
        from tropsch.field import initial_form_classical
        ini = initial_form_classical(f, w)
        assert ini == g
        rows = [list(r) for r in M.rows] + [[f.coef(u) for u in M.cols]]
        assert rank_rows(rows) == rank(M)


def test_macaulay_rejects_inhomogeneous():
    from tropsch.field import ValuedPoly
    g = ValuedPoly({(1, 0): 1, (0, 2): 1}, 2)
    with pytest.raises(ValueError):
        macaulay_matrix([g], 2)
