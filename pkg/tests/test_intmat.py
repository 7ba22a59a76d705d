import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qca import intmat
from qca.errors import NotSkewSymmetrizable
from strategies import int_matrix


def test_symmetrizer_examples():
    assert intmat.skew_symmetrizer(((0, 1), (-1, 0))) == (1, 1)
    assert intmat.skew_symmetrizer(((0, 1), (-2, 0))) == (2, 1)
    with pytest.raises(NotSkewSymmetrizable):
        intmat.skew_symmetrizer(((0, 1), (1, 0)))


def test_symmetrizer_inconsistent_cycle():
    # ratios around the triangle multiply to 2, not 1
    B = ((0, 1, -1), (-1, 0, 1), (2, -1, 0))
    with pytest.raises(NotSkewSymmetrizable):
        intmat.skew_symmetrizer(B)


def _random_symmetrizable(rng, n):
    E = [rng.choice((1, 2, 3)) for _ in range(n)]
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = rng.randint(-2, 2)
            S[i][j], S[j][i] = s, -s
    return tuple(tuple(S[i][j] * E[j] for j in range(n)) for i in range(n))


def test_symmetrizer_minimal(rng):
    for _ in range(200):
        n = rng.randint(1, 5)
        B = _random_symmetrizable(rng, n)
        D = intmat.skew_symmetrizer(B)
        DB = intmat.matmul(intmat.diag(D), B)
        assert intmat.is_skew_symmetric(DB)
        assert all(d >= 1 for d in D)
        # minimal: brute force over smaller positive diagonals on each component
        for comp in intmat.symmetrizer_components(B):
            sub = intmat.submatrix(B, comp, comp)
            dsub = tuple(D[i] for i in comp)
            for cand in itertools.product(range(1, max(dsub) + 1), repeat=len(comp)):
                if intmat.is_skew_symmetric(intmat.matmul(intmat.diag(cand), sub)):
                    # every valid symmetrizer is a multiple of the minimal one
                    ratio = cand[0] / dsub[0]
                    assert all(c == ratio * d for c, d in zip(cand, dsub))
                    assert ratio >= 1


def test_nullspace_examples():
    assert intmat.integer_nullspace(((1, -1),)) == [(1, 1)]
    assert intmat.integer_nullspace(intmat.identity(2)) == []
    assert intmat.integer_nullspace(((2, 4),)) == [(2, -1)]


def test_nullspace_brute_force_generator():
    # smallest nonzero integer solutions of 2x + 4y = 0 are +-(2, -1)
    sols = [(x, y) for x in range(-4, 5) for y in range(-4, 5) if (x, y) != (0, 0) and 2 * x + 4 * y == 0]
    smallest = min(sols, key=lambda p: abs(p[0]) + abs(p[1]))
    assert smallest in ((2, -1), (-2, 1))


def test_nullspace_empty_rows():
    assert intmat.integer_nullspace((), ncols=3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_nullspace_rank_nullity_against_sympy():
    rng = random.Random(7)
    for _ in range(150):
        A = tuple(tuple(rng.randint(-5, 5) for _ in range(6)) for _ in range(4))
        basis = intmat.integer_nullspace(A)
        rank = sympy.Matrix(A).rank()
        assert len(basis) == 6 - rank
        assert intmat.rational_rank(A) == rank
        for x in basis:
            assert all(v == 0 for v in intmat.matvec(A, x))
        if basis:
            assert sympy.Matrix(basis).rank() == len(basis)


def test_nullspace_is_saturated():
    # the kernel lattice of [[2, 2, 4]] contains (1, -1, 0); a rational basis scaled by 2 would not be saturated
    basis = intmat.integer_nullspace(((2, 2, 4),))
    H = intmat.hermite_normal_form(basis + [(1, -1, 0)])
    assert H == intmat.hermite_normal_form(basis)


@given(int_matrix(3, 5, -3, 3))
def test_nullspace_property(A):
    basis = intmat.integer_nullspace(A)
    for x in basis:
        assert intmat.matvec(A, x) == (0, 0, 0)
        from math import gcd

        assert gcd(*x) == 1
    assert len(basis) == 5 - intmat.rational_rank(A)
    # canonical: recomputing on a row-permuted matrix gives the same basis
    assert intmat.integer_nullspace(A[::-1]) == basis


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_hnf_lattice_invariant(rows):
    H = intmat.hermite_normal_form(rows)
    # same lattice: adding the HNF rows to the original does not change the HNF
    assert intmat.hermite_normal_form(rows + H) == H
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    assert pivots == sorted(set(pivots))
    for r, p in zip(H, pivots):
        assert r[p] > 0
        for other in H:
            if other is not r:
                assert 0 <= other[p] < r[p] or other[p] == 0


def test_matrix_helpers():
    A = ((1, 2), (3, 4))
    assert intmat.matmul(A, intmat.identity(2)) == A
    assert intmat.transpose(A) == ((1, 3), (2, 4))
    assert intmat.direct_sum(A, ((5,),)) == ((1, 2, 0), (3, 4, 0), (0, 0, 5))
    S = intmat.skew_from_upper((1, 2, 3), 3)
    assert intmat.is_skew_symmetric(S) and intmat.upper_entries(S) == (1, 2, 3)
