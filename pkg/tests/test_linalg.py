from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccat.linalg import (
    Matrix,
    ModulusMismatch,
    NotPrime,
    ShapeMismatch,
    Subspace,
    all_vectors,
    check_prime,
    image,
    inv_mod,
    inverse,
    kernel,
    quotient_basis,
    rank,
    rref,
    solve,
)


@st.composite
def matrices(draw, max_dim=4, primes=(2, 3, 5)):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return Matrix(np.array(vals, dtype=np.int64).reshape(r, c), p)


def brute_kernel_size(A: Matrix) -> int:
    return sum(1 for v in product(range(A.p), repeat=A.cols)
               if not (A.a @ np.array(v, dtype=np.int64) % A.p).any()) if A.cols else 1


def test_check_prime():
    assert check_prime(7) == 7
    for bad in (0, 1, 4, 9, 1 << 17):
        with pytest.raises(NotPrime):
            check_prime(bad)


def test_inv_mod():
    for p in (2, 3, 5, 7, 11):
        for a in range(1, p):
            assert a * inv_mod(a, p) % p == 1


def test_shape_and_modulus_errors():
    A = Matrix([[1, 0]], 2)
    with pytest.raises(ShapeMismatch):
        A @ A
    with pytest.raises(ModulusMismatch):
        A + Matrix([[1, 0]], 3)


def test_rref_example():
    R, piv = rref(Matrix([[1, 1, 0], [1, 1, 1]], 2))
    assert piv == [0, 2]
    assert R.tolist() == [[1, 1, 0], [0, 0, 1]]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_matches_enumeration(A):
    K = kernel(A)
    assert A.p ** K.dim == brute_kernel_size(A)
    assert rank(A) + K.dim == A.cols
    assert image(A).dim == rank(A)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_vectors_are_killed(A):
    for v in kernel(A).basis.a:
        assert not (A.a @ v % A.p).any()


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=3), st.data())
def test_solve_agrees_with_enumeration(A, data):
    b = data.draw(st.lists(st.integers(0, A.p - 1), min_size=A.rows, max_size=A.rows))
    B = Matrix.column(b, A.p) if A.rows else Matrix.zeros(0, 1, A.p)
    x = solve(A, B)
    solvable = any(np.array_equal(A.a @ np.array(v, dtype=np.int64) % A.p, np.array(b) % A.p)
                   for v in product(range(A.p), repeat=A.cols)) if A.cols else not any(b)
    assert (x is not None) == solvable
    if x is not None:
        assert A @ x == B


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=3))
def test_inverse(A):
    if A.rows != A.cols:
        return
    inv = inverse(A)
    if rank(A) == A.rows:
        assert inv is not None
        assert A @ inv == Matrix.identity(A.rows, A.p)
    else:
        assert inv is None


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=4))
def test_quotient_dimension(A):
    n = A.cols
    V = Subspace.whole(n, A.p)
    W = kernel(A)
    Q = quotient_basis(V, W)
    assert Q.dim == n - W.dim
    for v in W.basis.a:
        assert not any(Q.coordinates([int(x) for x in v]))


def test_subspace_enumeration():
    S = Subspace.span([[1, 1, 0], [0, 1, 1]], 3, 2)
    vecs = set(S.vectors())
    assert len(vecs) == 4
    assert all(S.contains(v) for v in vecs)
    assert sum(1 for v in all_vectors(3, 2) if S.contains(v)) == 4
