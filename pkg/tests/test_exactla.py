import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symend import exactla as la
from symend.gf import GF

SMALL = [(2, 1), (3, 1), (2, 2)]


def _all_vectors(F, n):
    return np.array(list(itertools.product(range(F.q), repeat=n)), dtype=np.int64)


def _brute_kernel_size(F, M):
    V = _all_vectors(F, M.shape[1])
    return sum(1 for v in V if not la.matmul(F, M, v[:, None]).any())


def _random_matrix(F, seed, rows, cols, rank_cap=None):
    rng = np.random.default_rng(seed)
    if rank_cap is None:
        return F.random(rng, (rows, cols))
    A = F.random(rng, (rows, rank_cap))
    B = F.random(rng, (rank_cap, cols))
    return la.matmul(F, A, B)


def test_identity_nullspace(F2):
    assert la.nullspace(F2, la.identity(3)).dim == 0


def test_jordan_solve(F2):
    A = la.jordan_block(F2, 2, 1)
    x = la.solve_linear(F2, A, [1, 0])
    assert la.matmul(F2, A, x[:, None]).ravel().tolist() == [1, 0]


def test_jordan_block_nilpotent_part(F2):
    J = la.jordan_block(F2, 3, 1)
    N = la.sub(F2, J, la.identity(3))
    N2 = la.matmul(F2, N, N)
    assert N2.any()
    assert not la.matmul(F2, N2, N).any()


def test_inconsistent_system_returns_none(F2):
    A = np.array([[1, 0], [1, 0]])
    assert la.solve_linear(F2, A, [0, 1]) is None


def test_singular_inverse_is_none(F4):
    assert la.inverse(F4, np.array([[1, 2], [1, 2]])) is None


def test_elementary_is_one_based():
    E = la.elementary(3, 3, 1)
    assert E[2, 0] == 1 and E.sum() == 1


@pytest.mark.parametrize("p,e", SMALL)
@given(seed=st.integers(0, 10 ** 6), rows=st.integers(1, 4), cols=st.integers(1, 4),
       cap=st.integers(0, 4))
def test_rank_nullity_against_enumeration(p, e, seed, rows, cols, cap):
    F = GF(p, e)
    M = _random_matrix(F, seed, rows, cols, min(cap, rows, cols) or None)
    N = la.nullspace(F, M)
    assert la.rank(F, M) + N.dim == cols
    assert F.q ** N.dim == _brute_kernel_size(F, M)
    assert not la.matmul(F, M, N.basis.T).any()


@pytest.mark.parametrize("p,e", [(2, 1), (3, 2), (2, 16), (3, 10)])
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 7))
def test_inverse_roundtrip(p, e, seed, n):
    F = GF(p, e)
    A = _random_matrix(F, seed, n, n)
    inv = la.inverse(F, A)
    if inv is None:
        assert la.rank(F, A) < n
    else:
        assert np.array_equal(la.matmul(F, A, inv), la.identity(n))
        assert np.array_equal(la.matmul(F, inv, A), la.identity(n))


@pytest.mark.parametrize("p,e", [(2, 4), (3, 2)])
@given(seed=st.integers(0, 10 ** 6), n=st.integers(2, 6), a=st.integers(1, 4), b=st.integers(1, 4))
def test_subspace_dimension_formula(p, e, seed, n, a, b):
    F = GF(p, e)
    rng = np.random.default_rng(seed)
    # share a common random vector so intersections are often nonzero
    common = F.random(rng, (1, n))
    U = la.span(F, np.vstack([common, F.random(rng, (min(a, n) - 1, n))]), n)
    W = la.span(F, np.vstack([common, F.random(rng, (min(b, n) - 1, n))]), n)
    S, I = U.sum(W), U.intersect(W)
    assert S.dim + I.dim == U.dim + W.dim
    assert I.is_subspace_of(U) and I.is_subspace_of(W)
    assert U.is_subspace_of(S) and W.is_subspace_of(S)


def test_subspace_canonical_and_reduce(F16):
    rng = np.random.default_rng(2)
    B = F16.random(rng, (3, 6))
    U1 = la.span(F16, B)
    mix = la.matmul(F16, F16.random(rng, (3, 3)), B)
    U2 = la.span(F16, mix)
    if U2.dim == 3:
        assert U1 == U2
    v = la.lincomb(F16, [5, 7, 9], B)
    assert U1.contains(v)
    assert not U1.reduce(v).any()
    assert np.array_equal(la.lincomb(F16, U1.coords(v), U1.basis), v)


def test_left_nullspace(F4):
    M = np.array([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
    L = la.left_nullspace(F4, M)
    assert not la.matmul(F4, L.basis, M).any()
    assert L.dim == 3 - la.rank(F4, M)


def test_kron_mixed_product(F16):
    rng = np.random.default_rng(4)
    A, B = F16.random(rng, (2, 3)), F16.random(rng, (2, 2))
    C, D = F16.random(rng, (3, 2)), F16.random(rng, (2, 3))
    lhs = la.matmul(F16, la.kron(F16, A, B), la.kron(F16, C, D))
    rhs = la.kron(F16, la.matmul(F16, A, C), la.matmul(F16, B, D))
    assert np.array_equal(lhs, rhs)


def test_invertible_in_span(Fbig):
    basis = np.array([la.identity(3), la.elementary(3, 1, 2)])
    c = la.invertible_in_span(Fbig, basis, rng_seed=1)
    assert c is not None
    assert la.inverse(Fbig, la.lincomb(Fbig, c, basis)) is not None
    nil = np.array([la.elementary(3, 1, 2), la.elementary(3, 2, 3)])
    assert la.invertible_in_span(Fbig, nil, rng_seed=1) is None


def test_matrix_json_roundtrip(Fbig):
    rng = np.random.default_rng(7)
    M = Fbig.random(rng, (3, 4))
    F2, M2 = la.mat_from_json(la.mat_to_json(Fbig, M))
    assert F2.spec == Fbig.spec and np.array_equal(M, M2)
