from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detstrata import exactfield as ef

from _support import P, oracle_rank

small_matrices = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(st.lists(st.sampled_from([0, 0, 1, 2, P - 1, P - 2, 12345]),
                                    min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_rank_matches_plain_elimination(rows):
    assert ef.rank(np.array(rows), P) == oracle_rank(rows)


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_rref_is_canonical_and_spans_the_row_space(rows):
    m = np.array(rows, dtype=np.int64)
    red, piv = ef.rref(m, P)
    # unit pivots, zeros elsewhere in pivot columns
    for k, c in enumerate(piv):
        assert red[k, c] == 1
        assert np.count_nonzero(red[:, c]) == 1
    assert list(piv) == sorted(piv)
    # a row permutation does not change the result
    red2, piv2 = ef.rref(m[::-1], P)
    assert piv2 == piv and np.array_equal(red2, red)
    # original rows reduce to zero
    assert not np.any(ef.reduce_against(m, red, piv, P))


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_kernel_basis_is_a_basis_of_the_null_space(rows):
    m = np.array(rows, dtype=np.int64)
    ker = ef.kernel_basis(m, P)
    assert not np.any(ef.matmul(m, ker.T, P)) if ker.size else True
    assert ker.shape[0] == m.shape[1] - oracle_rank(rows)
    if ker.shape[0]:
        assert oracle_rank(ker.tolist()) == ker.shape[0]


def test_matmul_is_exact_for_large_residues():
    rng = np.random.default_rng(0)
    a = rng.integers(0, P, size=(9, 300))
    b = rng.integers(0, P, size=(300, 5))
    expected = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(300)) % P for j in range(5)]
                for i in range(9)]
    assert ef.matmul(a, b, P).tolist() == expected


def test_solve_and_left_kernel():
    m = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    x = ef.solve(m, [6, 12, 2], P)
    assert x is not None
    assert (ef.matmul(m, x[:, None], P).ravel() == [6, 12, 2]).all()
    assert ef.solve(m, [1, 0, 0], P) is None
    y = ef.left_kernel(m, P)
    assert y.shape[0] == 1 and not np.any(ef.matmul(y, m, P))


def test_intersection_dim():
    u = np.array([[1, 0, 0], [0, 1, 0]])
    v = np.array([[0, 1, 0], [0, 0, 1]])
    assert ef.intersection_dim(u, v, P) == 1
    assert ef.intersection_dim(u, np.zeros((0, 3), dtype=np.int64), P) == 0


def test_inverse_and_prime_checks():
    assert ef.inv_mod(2, P) * 2 % P == 1
    assert ef.is_prime(P) and not ef.is_prime(32001)
    with pytest.raises(ValueError):
        ef.check_prime(32001)
    with pytest.raises(ZeroDivisionError):
        ef.inv_mod(0, P)


def test_empty_inputs():
    red, piv = ef.rref(np.zeros((0, 4), dtype=np.int64), P)
    assert red.shape == (0, 4) and piv == ()
    assert ef.rank(np.zeros((3, 0), dtype=np.int64), P) == 0
