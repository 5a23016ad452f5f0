"""Exact linear algebra over prime fields F_p.

Matrices are immutable wrappers around integer arrays whose entries are
kept reduced modulo ``p``.  Elimination is written out by hand; numpy is
only the storage and the vectorised row operation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np


class ShapeMismatch(ValueError):
    pass


class ModulusMismatch(ValueError):
    pass


class NotSubspace(ValueError):
    pass


class NotPrime(ValueError):
    pass


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 2 or p >= 1 << 16:
        raise NotPrime(f"modulus must be a prime below 2^16, got {p!r}")
    p = int(p)
    for q in range(2, int(p**0.5) + 1):
        if p % q == 0:
            raise NotPrime(f"{p} is not prime")
    return p


@lru_cache(maxsize=None)
def _inverses(p: int) -> tuple[int, ...]:
    return (0,) + tuple(pow(a, -1, p) for a in range(1, p))


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return _inverses(p)[a]


class Matrix:
    """An immutable ``rows x cols`` matrix over F_p."""

    __slots__ = ("a", "p", "_hash")

    def __init__(self, data, p: int, shape: tuple[int, int] | None = None):
        p = check_prime(p)
        arr = np.array(data, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise ShapeMismatch(f"expected a 2-d array, got shape {arr.shape}")
        arr = arr % p
        arr.flags.writeable = False
        self.a = arr
        self.p = p
        self._hash = None

    @classmethod
    def _raw(cls, arr: np.ndarray, p: int) -> "Matrix":
        m = cls.__new__(cls)
        arr = arr % p
        arr.flags.writeable = False
        m.a = arr
        m.p = p
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls._raw(np.zeros((rows, cols), dtype=np.int64), check_prime(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls._raw(np.eye(n, dtype=np.int64), check_prime(p))

    @classmethod
    def column(cls, values: Sequence[int], p: int) -> "Matrix":
        return cls(list(values), p, shape=(len(values), 1))

    @classmethod
    def row(cls, values: Sequence[int], p: int) -> "Matrix":
        return cls(list(values), p, shape=(1, len(values)))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def _same_field(self, other: "Matrix") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"moduli {self.p} and {other.p} differ")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._raw(self.a @ other.a, self.p)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.a + other.a, self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(self.a - other.a, self.p)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(-self.a, self.p)

    def scale(self, c: int) -> "Matrix":
        return Matrix._raw(self.a * (c % self.p), self.p)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.a.T.copy(), self.p)

    def is_zero(self) -> bool:
        return not self.a.any()

    def flat(self) -> np.ndarray:
        return self.a.reshape(-1)

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.shape, self.a.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.a.tolist()}, p={self.p})"


def hstack(blocks: Sequence[Matrix], rows: int, p: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows, 0, p)
    return Matrix._raw(np.hstack([b.a for b in blocks]), p)


def vstack(blocks: Sequence[Matrix], cols: int, p: int) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols, p)
    return Matrix._raw(np.vstack([b.a for b in blocks]), p)


def block(grid: Sequence[Sequence[Matrix]], p: int) -> Matrix:
    """Assemble a block matrix; every row of blocks must be non-empty."""
    return Matrix._raw(np.block([[b.a for b in row] for row in grid]), p)


def block_diag(blocks: Sequence[Matrix], p: int) -> Matrix:
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i : i + b.rows, j : j + b.cols] = b.a
        i += b.rows
        j += b.cols
    return Matrix._raw(out, p)


def _rref_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy() % p
    rows, cols = a.shape
    inv = _inverses(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * inv[piv]) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a -= np.outer(col, a[r])
            a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a, piv = _rref_array(A.a, A.p)
    return Matrix._raw(a, A.p), piv


def rank(A: Matrix) -> int:
    return len(_rref_array(A.a, A.p)[1])


def solve(A: Matrix, b: Matrix) -> Matrix | None:
    """Canonical solution of ``A x = b`` (free variables set to 0), or None."""
    A._same_field(b)
    if A.rows != b.rows:
        raise ShapeMismatch(f"A has {A.rows} rows but b has {b.rows}")
    n = A.cols
    aug, piv = _rref_array(np.hstack([A.a, b.a]), A.p)
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, c in enumerate(piv):
        if c >= n:
            return None
        x[c] = aug[i, n:]
    return Matrix._raw(x, A.p)


def inverse(A: Matrix) -> Matrix | None:
    if A.rows != A.cols:
        return None
    return solve(A, Matrix.identity(A.rows, A.p)) if rank(A) == A.rows else None


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n, stored by its RREF basis (one vector per row)."""

    ambient: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Matrix | Iterable[Sequence[int]], ambient: int, p: int) -> "Subspace":
        if isinstance(vectors, Matrix):
            M = vectors
        else:
            rows = [list(v) for v in vectors]
            M = Matrix(rows, p, shape=(len(rows), ambient)) if rows else Matrix.zeros(0, ambient, p)
        if M.cols != ambient:
            raise ShapeMismatch(f"vectors have length {M.cols}, ambient is {ambient}")
        R, piv = rref(M)
        return cls(ambient, Matrix._raw(R.a[: len(piv)].copy(), p))

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, Matrix.zeros(0, ambient, p))

    @classmethod
    def whole(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient, p))

    @property
    def p(self) -> int:
        return self.basis.p

    @property
    def dim(self) -> int:
        return self.basis.rows

    def contains(self, v: Sequence[int]) -> bool:
        row = Matrix(list(v), self.p, shape=(1, self.ambient))
        return rank(vstack([self.basis, row], self.ambient, self.p)) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise ShapeMismatch("ambient dimensions differ")
        both = vstack([self.basis, other.basis], self.ambient, self.p)
        return rank(both) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(vstack([self.basis, other.basis], self.ambient, self.p), self.ambient, self.p)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All p^dim vectors of the subspace, in coefficient order."""
        for coeffs in product(range(self.p), repeat=self.dim):
            v = np.zeros(self.ambient, dtype=np.int64)
            for c, row in zip(coeffs, self.basis.a):
                if c:
                    v += c * row
            yield tuple(int(x) for x in v % self.p)


def kernel(A: Matrix) -> Subspace:
    """Basis of ``{x : A x = 0}`` as a Subspace of F_p^cols."""
    R, piv = rref(A)
    n = A.cols
    free = [c for c in range(n) if c not in set(piv)]
    vecs = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        vecs[k, f] = 1
        for i, c in enumerate(piv):
            vecs[k, c] = -R.a[i, f]
    return Subspace.span(Matrix._raw(vecs, A.p), n, A.p)


def image(A: Matrix) -> Subspace:
    """Column space of A."""
    return Subspace.span(A.T, A.rows, A.p)


@dataclass(frozen=True)
class Quotient:
    """Coset data for V / W: ``representatives`` extend a basis of W to one of V."""

    V: Subspace
    W: Subspace
    representatives: Matrix

    @property
    def dim(self) -> int:
        return self.representatives.rows

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the coset v + W in the representative basis."""
        p = self.V.p
        basis = vstack([self.representatives, self.W.basis], self.V.ambient, p)
        x = solve(basis.T, Matrix.column(list(v), p))
        if x is None:
            raise NotSubspace("vector does not lie in V")
        return tuple(int(c) for c in x.a[: self.dim, 0])


def quotient_basis(V: Subspace, W: Subspace) -> Quotient:
    """Coset representatives of V / W; raises NotSubspace unless W is inside V."""
    if V.ambient != W.ambient:
        raise ShapeMismatch("ambient dimensions differ")
    if not V.contains_space(W):
        raise NotSubspace("W is not contained in V")
    p = V.p
    # pivot columns of [W^T | V^T] beyond the W block pick the representatives
    cols = np.hstack([W.basis.a.T, V.basis.a.T]).reshape(V.ambient, W.dim + V.dim)
    _, piv = _rref_array(cols, p)
    reps = [V.basis.a[c - W.dim] for c in piv if c >= W.dim]
    R = Matrix._raw(np.array(reps, dtype=np.int64).reshape(len(reps), V.ambient), p)
    return Quotient(V, W, R)


class Coordinatizer:
    """Fast coordinates with respect to a fixed list of independent row vectors.

    Picks pivot columns once; afterwards a coordinate lookup is a single
    small matrix product, valid for vectors inside the span.
    """

    __slots__ = ("p", "n", "cols", "inv", "basis")

    def __init__(self, basis: Matrix):
        self.p = basis.p
        self.n = basis.rows
        self.basis = basis
        _, piv = _rref_array(basis.a, basis.p)
        if len(piv) != basis.rows:
            raise ValueError("basis vectors are dependent")
        self.cols = np.array(piv, dtype=np.int64)
        sub = Matrix._raw(basis.a[:, self.cols].copy(), basis.p)
        inv = inverse(sub)
        assert inv is not None
        self.inv = inv.a

    def __call__(self, v: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return np.zeros(0, dtype=np.int64)
        return (v[self.cols] @ self.inv) % self.p

    def check(self, v: np.ndarray) -> np.ndarray | None:
        """Coordinates if v lies in the span, else None."""
        c = self(v)
        back = (c @ self.basis.a) % self.p if self.n else np.zeros_like(v)
        return c if np.array_equal(back, v % self.p) else None


def all_vectors(n: int, p: int) -> Iterator[tuple[int, ...]]:
    return product(range(p), repeat=n)
