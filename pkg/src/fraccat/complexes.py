"""Bounded complexes over finite-dimensional F_p-algebras and their homotopy category.

Conventions: modules are right modules with elements as column vectors, so
``x·a_i = action[i] @ x`` and ``action[j] @ action[i] = Σ_k c_ij^k action[k]``.
A module map M → N is an ``(dim N) x (dim M)`` matrix.  Grading is
cohomological; ``shift(X, 1)`` has ``X[1]^n = X^{n+1}`` with differential ``-d``.
The cone of φ: X → Y has ``C^n = X^{n+1} ⊕ Y^n`` and differential
``[[-d_X, 0], [φ, d_Y]]``; its triangle is ``X → Y → C → X[1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .linalg import (
    Coordinatizer,
    Matrix,
    Subspace,
    block,
    block_diag,
    check_prime,
    inverse,
    kernel,
    quotient_basis,
    rank,
    solve,
    vstack,
)


class AlgebraMismatch(ValueError):
    pass


class CapsTooSmall(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# algebras and modules


class FinAlgebra:
    """Associative unital algebra with basis ``labels`` and structure constants ``mult[i][j]``."""

    def __init__(self, p: int, labels: Sequence[str], mult, unit: Sequence[int], name: str = ""):
        self.p = check_prime(p)
        self.labels = tuple(labels)
        d = len(self.labels)
        self.mult = (np.array(mult, dtype=np.int64).reshape(d, d, d) % self.p) if d else np.zeros((0, 0, 0), dtype=np.int64)
        self.mult.flags.writeable = False
        self.unit = tuple(int(u) % self.p for u in unit)
        self.name = name or "A"

    def __repr__(self) -> str:
        return f"<FinAlgebra {self.name} over F_{self.p}, dim {self.dim}>"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return np.einsum("i,j,ijk->k", u, v, self.mult) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def violations(self) -> list[tuple]:
        out = []
        d = self.dim
        u = np.array(self.unit, dtype=np.int64)
        for i in range(d):
            e = self.basis_vector(i)
            if not np.array_equal(self.mul(u, e), e) or not np.array_equal(self.mul(e, u), e):
                out.append(("unit", self.labels[i]))
        for i, j, k in product(range(d), repeat=3):
            a, b, c = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if not np.array_equal(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c))):
                out.append(("associativity", (self.labels[i], self.labels[j], self.labels[k])))
        return out

    def is_idempotent(self, e: Sequence[int]) -> bool:
        e = np.asarray(e, dtype=np.int64) % self.p
        return np.array_equal(self.mul(e, e), e)

    def left_mult(self, a: Sequence[int]) -> Matrix:
        """Matrix of x ↦ a·x on A."""
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(np.array(cols, dtype=np.int64).T.reshape(self.dim, self.dim), self.p)

    def right_mult(self, a: Sequence[int]) -> Matrix:
        """Matrix of x ↦ x·a on A."""
        cols = [self.mul(self.basis_vector(j), a) for j in range(self.dim)]
        return Matrix(np.array(cols, dtype=np.int64).T.reshape(self.dim, self.dim), self.p)

    def regular_module(self) -> "FinModule":
        return FinModule(self, self.dim, [self.right_mult(self.basis_vector(i)) for i in range(self.dim)])

    def projective(self, e: Sequence[int]) -> "FinModule":
        """The right ideal eA as a right module."""
        A = self.regular_module()
        img = [self.mul(e, self.basis_vector(j)) for j in range(self.dim)]
        return A.submodule(Subspace.span(img, self.dim, self.p))[0]


def zero_algebra(p: int) -> FinAlgebra:
    return FinAlgebra(p, [], [], [], name="0")


def field_algebra(p: int) -> FinAlgebra:
    return FinAlgebra(p, ["1"], [[[1]]], [1], name=f"F{p}")


def product_algebra(p: int, k: int = 2) -> FinAlgebra:
    """F_p × ... × F_p with orthogonal idempotent basis e1..ek."""
    mult = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        mult[i, i, i] = 1
    return FinAlgebra(p, [f"e{i + 1}" for i in range(k)], mult, [1] * k, name="x".join([f"F{p}"] * k))


def dual_numbers(p: int) -> FinAlgebra:
    """F_p[x]/(x²) with basis 1, x."""
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = 1
    mult[1, 0, 1] = 1
    return FinAlgebra(p, ["1", "x"], mult, [1, 0], name=f"F{p}[x]/(x^2)")


def corner_algebra(A: FinAlgebra, e: Sequence[int]) -> tuple[FinAlgebra, Matrix]:
    """eAe with unit e, and the matrix whose columns embed its basis into A."""
    vecs = [A.mul(A.mul(e, A.basis_vector(i)), e) for i in range(A.dim)]
    sub = Subspace.span(vecs, A.dim, A.p)
    return _subalgebra(A, sub, e, name=f"eAe({A.name})")


def _subalgebra(A: FinAlgebra, sub: Subspace, unit, name: str) -> tuple[FinAlgebra, Matrix]:
    k = sub.dim
    if k == 0:
        return zero_algebra(A.p), Matrix.zeros(A.dim, 0, A.p)
    coord = Coordinatizer(sub.basis)
    mult = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            c = coord.check(A.mul(sub.basis.a[i], sub.basis.a[j]))
            if c is None:
                raise ValueError("subspace is not closed under multiplication")
            mult[i, j] = c
    u = coord.check(np.asarray(unit, dtype=np.int64) % A.p)
    if u is None:
        raise ValueError("unit does not lie in the subspace")
    return FinAlgebra(A.p, [f"b{i}" for i in range(k)], mult, u, name=name), sub.basis.T


def two_sided_ideal(A: FinAlgebra, e: Sequence[int]) -> Subspace:
    vecs = [A.mul(A.mul(A.basis_vector(i), e), A.basis_vector(j)) for i in range(A.dim) for j in range(A.dim)]
    return Subspace.span(vecs, A.dim, A.p)


def quotient_algebra(A: FinAlgebra, e: Sequence[int]) -> tuple[FinAlgebra, Matrix]:
    """A/AeA and the projection matrix A → A/AeA."""
    I = two_sided_ideal(A, e)
    q = quotient_basis(Subspace.whole(A.dim, A.p), I)
    k = q.dim
    if k == 0:
        return zero_algebra(A.p), Matrix.zeros(0, A.dim, A.p)
    full = vstack([q.representatives, I.basis], A.dim, A.p)
    coord = Coordinatizer(full)
    proj = np.array([coord(A.basis_vector(j))[:k] for j in range(A.dim)], dtype=np.int64).T
    P = Matrix(proj, A.p, shape=(k, A.dim))
    reps = q.representatives.a
    mult = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            mult[i, j] = (P.a @ A.mul(reps[i], reps[j])) % A.p
    unit = (P.a @ np.array(A.unit, dtype=np.int64)) % A.p
    return FinAlgebra(A.p, [f"q{i}" for i in range(k)], mult, unit, name=f"A/AeA({A.name})"), P


class FinModule:
    """Finite-dimensional right module given by one action matrix per basis element."""

    __slots__ = ("algebra", "dim", "action", "_key", "__dict__")

    def __init__(self, algebra: FinAlgebra, dim: int, action: Sequence[Matrix]):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element is required")
        for m in self.action:
            if m.shape != (dim, dim):
                raise ValueError("action matrices must be square of the module dimension")
        self._key = (id(algebra), dim, tuple(m.a.tobytes() for m in self.action))

    @classmethod
    def zero(cls, algebra: FinAlgebra) -> "FinModule":
        return cls(algebra, 0, [Matrix.zeros(0, 0, algebra.p)] * algebra.dim)

    @property
    def p(self) -> int:
        return self.algebra.p

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinModule) and self.algebra is other.algebra and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"<FinModule dim {self.dim} over {self.algebra.name}>"

    def act(self, a: Sequence[int]) -> Matrix:
        """Matrix of x ↦ x·a for an algebra element a."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for c, m in zip(a, self.action):
            if c:
                out += int(c) * m.a
        return Matrix(out, self.p, shape=(self.dim, self.dim))

    def violations(self) -> list[tuple]:
        A = self.algebra
        out = []
        if self.act(A.unit) != Matrix.identity(self.dim, self.p):
            out.append(("unit",))
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[j] @ self.action[i]
                rhs = self.act(A.mul(A.basis_vector(i), A.basis_vector(j)))
                if lhs != rhs:
                    out.append(("associativity", (A.labels[i], A.labels[j])))
        return out

    def submodule(self, sub: Subspace) -> tuple["FinModule", Matrix]:
        """Submodule on a closed subspace, with its inclusion matrix."""
        basis = sub.basis
        incl = basis.T
        if sub.dim == 0:
            return FinModule.zero(self.algebra), Matrix.zeros(self.dim, 0, self.p)
        coord = Coordinatizer(basis)
        acts = []
        for m in self.action:
            imgs = (m.a @ incl.a) % self.p
            cols = []
            for k in range(sub.dim):
                c = coord.check(imgs[:, k])
                if c is None:
                    raise ValueError("subspace is not a submodule")
                cols.append(c)
            acts.append(Matrix(np.array(cols, dtype=np.int64).T.reshape(sub.dim, sub.dim), self.p))
        return FinModule(self.algebra, sub.dim, acts), incl

    def quotient(self, sub: Subspace) -> tuple["FinModule", Matrix]:
        """Quotient module by a submodule, with the projection matrix."""
        q = quotient_basis(Subspace.whole(self.dim, self.p), sub)
        reps = q.representatives
        k = reps.rows
        full = vstack([reps, sub.basis], self.dim, self.p)
        coord = Coordinatizer(full)
        proj = np.zeros((k, self.dim), dtype=np.int64)
        for j in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[j] = 1
            proj[:, j] = coord(e)[:k]
        P = Matrix(proj, self.p, shape=(k, self.dim))
        acts = []
        for m in self.action:
            acts.append(P @ m @ reps.T if k else Matrix.zeros(0, 0, self.p))
        return FinModule(self.algebra, k, acts), P

    def restrict(self, algebra: FinAlgebra, embedding: Matrix) -> "FinModule":
        """Restriction of scalars along an algebra map given by ``embedding`` (columns are images)."""
        acts = [self.act(embedding.a[:, i]) for i in range(algebra.dim)]
        return FinModule(algebra, self.dim, acts)


def direct_sum_modules(mods: Sequence[FinModule], algebra: FinAlgebra) -> FinModule:
    if not mods:
        return FinModule.zero(algebra)
    n = sum(m.dim for m in mods)
    acts = [block_diag([m.action[i] for m in mods], algebra.p) for i in range(algebra.dim)]
    return FinModule(algebra, n, acts)


_HOM_CACHE: dict = {}


def module_hom_basis(M: FinModule, N: FinModule) -> list[Matrix]:
    """Basis of Hom_A(M, N) as ``dim N x dim M`` matrices."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    key = (M, N)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    p = M.p
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        _HOM_CACHE[key] = []
        return []
    rows = []
    In, Im = np.eye(n, dtype=np.int64), np.eye(m, dtype=np.int64)
    for rm, rn in zip(M.action, N.action):
        rows.append(np.kron(In, rm.a.T) - np.kron(rn.a, Im))
    K = kernel(Matrix(np.vstack(rows), p)) if rows else Subspace.whole(n * m, p)
    out = [Matrix(v, p, shape=(n, m)) for v in K.basis.a]
    _HOM_CACHE[key] = out
    return out


def clear_caches() -> None:
    _HOM_CACHE.clear()


# ---------------------------------------------------------------------------
# complexes and chain maps


class ChainComplex:
    """Bounded complex; ``mods[k]`` sits in degree ``lo + k`` and ``diffs[k]: mods[k] → mods[k+1]``."""

    def __init__(self, algebra: FinAlgebra, lo: int, mods: Sequence[FinModule], diffs: Sequence[Matrix], label: str = ""):
        mods = list(mods)
        diffs = list(diffs)
        if len(diffs) != max(len(mods) - 1, 0):
            raise ValueError("need one differential between consecutive components")
        while mods and mods[0].dim == 0:
            mods.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        while mods and mods[-1].dim == 0:
            mods.pop()
            if diffs:
                diffs.pop()
        if not mods:
            lo = 0
        self.algebra = algebra
        self.lo = lo
        self.mods = tuple(mods)
        self.diffs = tuple(diffs)
        self.label = label
        for k, d in enumerate(self.diffs):
            if d.shape != (self.mods[k + 1].dim, self.mods[k].dim):
                raise ValueError(f"differential {lo + k} has shape {d.shape}")
        self._key = (id(algebra), lo, tuple(m._key for m in self.mods), tuple(d.a.tobytes() for d in self.diffs))

    @classmethod
    def zero(cls, algebra: FinAlgebra) -> "ChainComplex":
        return cls(algebra, 0, [], [], label="0")

    @classmethod
    def stalk(cls, M: FinModule, degree: int = 0, label: str = "") -> "ChainComplex":
        return cls(M.algebra, degree, [M], [], label=label)

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def hi(self) -> int:
        return self.lo + len(self.mods) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return not self.mods

    def module(self, n: int) -> FinModule:
        if self.lo <= n <= self.hi:
            return self.mods[n - self.lo]
        return FinModule.zero(self.algebra)

    def dim(self, n: int) -> int:
        return self.module(n).dim

    def total_dim(self) -> int:
        return sum(m.dim for m in self.mods)

    def d(self, n: int) -> Matrix:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return Matrix.zeros(self.dim(n + 1), self.dim(n), self.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChainComplex) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"<ChainComplex {self.describe()}>"

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.is_zero():
            return "0"
        dims = ",".join(str(m.dim) for m in self.mods)
        return f"[{self.lo}..{self.hi}] dims({dims})"

    def violations(self) -> list[tuple]:
        out = []
        for n in range(self.lo, self.hi - 1):
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                out.append(("d-squared", n))
        for n in range(self.lo, self.hi):
            d = self.d(n)
            M, N = self.module(n), self.module(n + 1)
            for rm, rn in zip(M.action, N.action):
                if d @ rm != rn @ d:
                    out.append(("not-linear", n))
                    break
        for m in self.mods:
            if m.violations():
                out.append(("module", m))
        return out


class ChainMap:
    __slots__ = ("source", "target", "comps", "_key")

    def __init__(self, source: ChainComplex, target: ChainComplex, comps: dict[int, Matrix]):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("chain map between complexes over different algebras")
        self.source = source
        self.target = target
        p = source.p
        clean = {}
        for n, m in comps.items():
            if source.dim(n) and target.dim(n):
                if m.shape != (target.dim(n), source.dim(n)):
                    raise ValueError(f"component {n} has shape {m.shape}")
                if not m.is_zero():
                    clean[n] = m
        self.comps = clean
        self._key = None
        _ = p

    def __getitem__(self, n: int) -> Matrix:
        m = self.comps.get(n)
        if m is None:
            return Matrix.zeros(self.target.dim(n), self.source.dim(n), self.source.p)
        return m

    def key(self):
        if self._key is None:
            self._key = (self.source, self.target, tuple(sorted((n, m.a.tobytes()) for n, m in self.comps.items())))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ChainMap) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}: {m.a.tolist()}" for n, m in sorted(self.comps.items()))
        return f"ChainMap({self.source.describe()} -> {self.target.describe()}; {inner})"

    def is_chain_map(self) -> bool:
        X, Y = self.source, self.target
        for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
            if Y.d(n) @ self[n] != self[n + 1] @ X.d(n):
                return False
        for n, m in self.comps.items():
            for rx, ry in zip(X.module(n).action, Y.module(n).action):
                if m @ rx != ry @ m:
                    return False
        return True


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise ValueError("maps are not composable")
    comps = {}
    for n in f.comps:
        if n in g.comps:
            comps[n] = g.comps[n] @ f.comps[n]
    return ChainMap(f.source, g.target, comps)


def add_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.source != g.source or f.target != g.target:
        raise ValueError("maps are not parallel")
    comps = dict(f.comps)
    for n, m in g.comps.items():
        comps[n] = comps[n] + m if n in comps else m
    return ChainMap(f.source, f.target, comps)


def scale_map(c: int, f: ChainMap) -> ChainMap:
    return ChainMap(f.source, f.target, {n: m.scale(c) for n, m in f.comps.items()})


def zero_map(X: ChainComplex, Y: ChainComplex) -> ChainMap:
    return ChainMap(X, Y, {})


def identity_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {n: Matrix.identity(X.dim(n), X.p) for n in X.degrees})


def shift(X: ChainComplex, k: int) -> ChainComplex:
    """X[k] with X[k]^n = X^{n+k} and differential (-1)^k d."""
    if k == 0 or X.is_zero():
        return X
    sign = -1 if k % 2 else 1
    diffs = [d.scale(sign) for d in X.diffs]
    return ChainComplex(X.algebra, X.lo - k, X.mods, diffs)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n - k: m for n, m in f.comps.items()})


@dataclass(frozen=True)
class Biproduct:
    obj: ChainComplex
    injections: tuple[ChainMap, ...]
    projections: tuple[ChainMap, ...]


def direct_sum(parts: Sequence[ChainComplex], algebra: FinAlgebra | None = None) -> Biproduct:
    A = algebra if algebra is not None else parts[0].algebra
    if not parts:
        Z = ChainComplex.zero(A)
        return Biproduct(Z, (), ())
    lo = min(X.lo for X in parts if not X.is_zero()) if any(not X.is_zero() for X in parts) else 0
    hi = max(X.hi for X in parts if not X.is_zero()) if any(not X.is_zero() for X in parts) else -1
    mods = [direct_sum_modules([X.module(n) for X in parts], A) for n in range(lo, hi + 1)]
    diffs = [block_diag([X.d(n) for X in parts], A.p) for n in range(lo, hi)]
    S = ChainComplex(A, lo, mods, diffs)
    inj, proj = [], []
    for idx, X in enumerate(parts):
        ic, pc = {}, {}
        for n in range(lo, hi + 1):
            off = sum(Y.dim(n) for Y in parts[:idx])
            tot = S.dim(n)
            if X.dim(n) == 0:
                continue
            I = np.zeros((tot, X.dim(n)), dtype=np.int64)
            I[off : off + X.dim(n), :] = np.eye(X.dim(n), dtype=np.int64)
            ic[n] = Matrix(I, A.p)
            pc[n] = Matrix(I.T.copy(), A.p)
        inj.append(ChainMap(X, S, ic))
        proj.append(ChainMap(S, X, pc))
    return Biproduct(S, tuple(inj), tuple(proj))


@dataclass(frozen=True)
class Triangle:
    """X --u--> Y --v--> Z --w--> X[1]."""

    u: ChainMap
    v: ChainMap
    w: ChainMap

    @property
    def X(self) -> ChainComplex:
        return self.u.source

    @property
    def Y(self) -> ChainComplex:
        return self.u.target

    @property
    def Z(self) -> ChainComplex:
        return self.v.target


def mapping_cone(phi: ChainMap) -> Triangle:
    """Strict cone triangle X → Y → cone(φ) → X[1]."""
    X, Y = phi.source, phi.target
    A = X.algebra
    p = A.p
    if X.is_zero() and Y.is_zero():
        Z = ChainComplex.zero(A)
        return Triangle(phi, zero_map(Y, Z), zero_map(Z, shift(X, 1)))
    los = [n for n in ([X.lo - 1] if not X.is_zero() else []) + ([Y.lo] if not Y.is_zero() else [])]
    his = [n for n in ([X.hi - 1] if not X.is_zero() else []) + ([Y.hi] if not Y.is_zero() else [])]
    lo, hi = min(los), max(his)
    mods = [direct_sum_modules([X.module(n + 1), Y.module(n)], A) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo, hi):
        a, b = X.dim(n + 1), Y.dim(n)
        a2, b2 = X.dim(n + 2), Y.dim(n + 1)
        D = np.zeros((a2 + b2, a + b), dtype=np.int64)
        D[:a2, :a] = -X.d(n + 1).a
        D[a2:, :a] = phi[n + 1].a
        D[a2:, a:] = Y.d(n).a
        diffs.append(Matrix(D, p))
    C = ChainComplex(A, lo, mods, diffs)
    X1 = shift(X, 1)
    ic, pc = {}, {}
    for n in range(lo, hi + 1):
        a, b = X.dim(n + 1), Y.dim(n)
        if b:
            I = np.zeros((a + b, b), dtype=np.int64)
            I[a:, :] = np.eye(b, dtype=np.int64)
            ic[n] = Matrix(I, p)
        if a:
            P = np.zeros((a, a + b), dtype=np.int64)
            P[:, :a] = np.eye(a, dtype=np.int64)
            pc[n] = Matrix(P, p)
    return Triangle(phi, ChainMap(Y, C, ic), ChainMap(C, X1, pc))


def cohomology(X: ChainComplex, n: int) -> tuple[int, Matrix]:
    """Dimension of H^n and a basis of representative cycles (one per row)."""
    p = X.p
    Zn = kernel(X.d(n))
    Bn = Subspace.span(X.d(n - 1).T, X.dim(n), p)
    q = quotient_basis(Zn, Bn)
    return q.dim, q.representatives


def cohomology_dims(X: ChainComplex) -> dict[int, int]:
    return {n: cohomology(X, n)[0] for n in X.degrees}


def induced_on_cohomology_bijective(phi: ChainMap, n: int) -> bool:
    X, Y = phi.source, phi.target
    hx, reps = cohomology(X, n)
    hy, _ = cohomology(Y, n)
    if hx != hy:
        return False
    if hx == 0:
        return True
    p = X.p
    By = Subspace.span(Y.d(n - 1).T, Y.dim(n), p)
    imgs = (phi[n] @ reps.T).T
    span = Subspace.span(vstack([imgs, By.basis], Y.dim(n), p), Y.dim(n), p)
    return span.dim - By.dim == hx


def is_quasi_iso(phi: ChainMap) -> bool:
    X, Y = phi.source, phi.target
    degs = set(X.degrees) | set(Y.degrees)
    return all(induced_on_cohomology_bijective(phi, n) for n in sorted(degs))


def restricted_cohomology_dims(X: ChainComplex, e: Sequence[int]) -> dict[int, int]:
    """Nonzero dimensions of H^n(X·e); for projective eA these equal dim Hom_K(eA[-n], X)."""
    p = X.p
    images = {n: Subspace.span(X.module(n).act(e).T, X.dim(n), p) for n in range(X.lo - 1, X.hi + 2)}
    out = {}
    for n in X.degrees:
        Vn = images[n]
        if Vn.dim == 0:
            continue
        ker_dim = Vn.dim - rank(X.d(n) @ Vn.basis.T)
        Vprev = images[n - 1]
        im_dim = rank(X.d(n - 1) @ Vprev.basis.T) if Vprev.dim else 0
        if ker_dim - im_dim:
            out[n] = ker_dim - im_dim
    return out


def fingerprint(X: ChainComplex, idempotents: Sequence[Sequence[int]]) -> tuple:
    """Cohomology dimensions of X·e for each idempotent, as a tuple of (degree, dim) pairs."""
    return tuple(tuple(sorted(restricted_cohomology_dims(X, e).items())) for e in idempotents)


def translate_fingerprint(fp: tuple, k: int) -> tuple:
    return tuple(tuple((n - k, d) for n, d in part) for part in fp)


def fingerprint_floor(fp: tuple) -> int | None:
    degs = [n for part in fp for n, _ in part]
    return min(degs) if degs else None


# ---------------------------------------------------------------------------
# hom spaces in the homotopy category


class HomSpace:
    """Chain maps X → Y modulo null-homotopic maps.

    Chain maps are parametrised by coefficients on degreewise module-hom
    bases; the null-homotopic subspace is the image of h ↦ dh + hd.
    """

    def __init__(self, X: ChainComplex, Y: ChainComplex):
        if X.algebra is not Y.algebra:
            raise AlgebraMismatch("complexes over different algebras")
        self.X, self.Y = X, Y
        p = X.p
        self.p = p
        degs = [n for n in X.degrees if Y.dim(n)]
        self.degrees = degs
        self.blocks: dict[int, list[Matrix]] = {n: module_hom_basis(X.module(n), Y.module(n)) for n in degs}
        self.offset: dict[int, int] = {}
        N = 0
        for n in degs:
            self.offset[n] = N
            N += len(self.blocks[n])
        self.N = N
        self._coord = {
            n: Coordinatizer(Matrix(np.array([b.flat() for b in self.blocks[n]], dtype=np.int64).reshape(len(self.blocks[n]), -1), p))
            for n in degs
            if self.blocks[n]
        }
        # chain condition: d_Y F^n - F^{n+1} d_X = 0 in every degree
        eqs = []
        for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
            r, c = Y.dim(n + 1), X.dim(n)
            if r == 0 or c == 0:
                continue
            cols = np.zeros((r * c, N), dtype=np.int64)
            if n in self.offset:
                for k, B in enumerate(self.blocks[n]):
                    cols[:, self.offset[n] + k] += (Y.d(n) @ B).flat()
            if n + 1 in self.offset:
                for k, B in enumerate(self.blocks[n + 1]):
                    cols[:, self.offset[n + 1] + k] -= (B @ X.d(n)).flat()
            eqs.append(cols)
        if N == 0:
            self.cycles = Subspace.zero(0, p)
        elif eqs:
            self.cycles = kernel(Matrix(np.vstack(eqs), p))
        else:
            self.cycles = Subspace.whole(N, p)
        nulls = []
        self._homotopies: list[tuple[int, Matrix]] = []
        for n in range(X.lo, X.hi + 1):
            if Y.dim(n - 1) == 0:
                continue
            for H in module_hom_basis(X.module(n), Y.module(n - 1)):
                self._homotopies.append((n, H))
                v = np.zeros(N, dtype=np.int64)
                if n in self.offset:
                    v[self.offset[n] : self.offset[n] + len(self.blocks[n])] += self._coords_block(n, Y.d(n - 1) @ H)
                if n - 1 in self.offset:
                    v[self.offset[n - 1] : self.offset[n - 1] + len(self.blocks[n - 1])] += self._coords_block(n - 1, H @ X.d(n - 1))
                nulls.append(v % p)
        self.boundaries = Subspace.span(Matrix(np.array(nulls, dtype=np.int64).reshape(len(nulls), N), p), N, p)
        q = quotient_basis(self.cycles, self.boundaries)
        self.reps = q.representatives
        self.dim = q.dim
        full = vstack([self.reps, self.boundaries.basis], N, p)
        self._qcoord = Coordinatizer(full) if full.rows else None

    def _coords_block(self, n: int, F: Matrix) -> np.ndarray:
        coord = self._coord.get(n)
        if coord is None:
            if not F.is_zero():
                raise ValueError("component is not a module map")
            return np.zeros(0, dtype=np.int64)
        c = coord.check(F.flat())
        if c is None:
            raise ValueError("component is not a module map")
        return c

    def param(self, f: ChainMap) -> np.ndarray:
        v = np.zeros(self.N, dtype=np.int64)
        for n in self.degrees:
            if self.blocks[n]:
                v[self.offset[n] : self.offset[n] + len(self.blocks[n])] = self._coords_block(n, f[n])
        return v

    def from_param(self, v: np.ndarray) -> ChainMap:
        comps = {}
        for n in self.degrees:
            acc = None
            for k, B in enumerate(self.blocks[n]):
                c = int(v[self.offset[n] + k]) % self.p
                if c:
                    term = B.scale(c)
                    acc = term if acc is None else acc + term
            if acc is not None:
                comps[n] = acc
        return ChainMap(self.X, self.Y, comps)

    def coords(self, f: ChainMap) -> tuple[int, ...]:
        if self.dim == 0:
            return ()
        c = self._qcoord.check(self.param(f))
        if c is None:
            raise ValueError("not a chain map")
        return tuple(int(x) for x in c[: self.dim])

    def is_null(self, f: ChainMap) -> bool:
        return self.dim == 0 or not any(self.coords(f))

    def basis(self) -> list[ChainMap]:
        return [self.from_param(r) for r in self.reps.a]

    def homotopy(self, f: ChainMap) -> dict[int, Matrix] | None:
        """Degree -1 maps s^n: X^n → Y^{n-1} with f = d s + s d, or None if f is not null-homotopic."""
        p = self.p
        if not self._homotopies:
            return {} if not f.comps else None
        G = np.array([self._null_vector(n, H) for n, H in self._homotopies], dtype=np.int64)
        x = solve(Matrix(G.T, p, shape=(self.N, len(self._homotopies))), Matrix.column(list(self.param(f)), p)) if self.N else Matrix.zeros(len(self._homotopies), 1, p)
        if x is None:
            return None
        out: dict[int, Matrix] = {}
        for c, (n, H) in zip(x.a[:, 0], self._homotopies):
            if c:
                out[n] = out[n] + H.scale(int(c)) if n in out else H.scale(int(c))
        return out

    def _null_vector(self, n: int, H: Matrix) -> np.ndarray:
        X, Y = self.X, self.Y
        v = np.zeros(self.N, dtype=np.int64)
        if n in self.offset:
            v[self.offset[n] : self.offset[n] + len(self.blocks[n])] += self._coords_block(n, Y.d(n - 1) @ H)
        if n - 1 in self.offset:
            v[self.offset[n - 1] : self.offset[n - 1] + len(self.blocks[n - 1])] += self._coords_block(n - 1, H @ X.d(n - 1))
        return v % self.p

    def chain_map_basis(self) -> list[ChainMap]:
        return [self.from_param(r) for r in self.cycles.basis.a]

    def element(self, c: Sequence[int]) -> ChainMap:
        v = np.zeros(self.N, dtype=np.int64)
        for ci, r in zip(c, self.reps.a):
            if ci:
                v += int(ci) * r
        return self.from_param(v % self.p)


def hom_complexes(X: ChainComplex, Y: ChainComplex) -> list[ChainMap]:
    """Basis of the space of chain maps X → Y."""
    return HomSpace(X, Y).chain_map_basis()


def homotopy_classes(X: ChainComplex, Y: ChainComplex) -> HomSpace:
    return HomSpace(X, Y)


# ---------------------------------------------------------------------------
# linear categories


class LinearCategory:
    """Shared machinery for F_p-linear categories with computable hom spaces.

    Subclasses provide ``hom_dim``, ``basis``, ``coords``, ``compose``,
    ``identity``, ``zero``, ``add``, ``scale``, ``direct_sum`` and ``weak_kernel``.
    """

    p: int

    def from_coords(self, X, Y, c: Sequence[int]):
        f = self.zero(X, Y)
        for ci, b in zip(c, self.basis(X, Y)):
            if ci % self.p:
                f = self.add(f, self.scale(ci, b))
        return f

    def sub(self, f, g):
        return self.add(f, self.scale(-1, g))

    def is_zero(self, f) -> bool:
        return not any(self.coords(f))

    def equal(self, f, g) -> bool:
        return self.is_zero(self.sub(f, g))

    def elements(self, X, Y) -> Iterator:
        for c in product(range(self.p), repeat=self.hom_dim(X, Y)):
            yield self.from_coords(X, Y, c)

    def matrix_of(self, func: Callable, X, Y, U, V) -> Matrix:
        """Matrix of a linear map Hom(X, Y) → Hom(U, V) given on morphisms."""
        cols = [self.coords(func(b)) for b in self.basis(X, Y)]
        m, n = self.hom_dim(U, V), self.hom_dim(X, Y)
        if not cols:
            return Matrix.zeros(m, 0, self.p)
        return Matrix(np.array(cols, dtype=np.int64).T.reshape(m, n), self.p)

    def solve_for(self, X, Y, constraints: Sequence[tuple[Callable, object, object, object]]):
        """Find h: X → Y with ``func(h) == target`` for each ``(func, U, V, target)``.

        Returns (particular solution, list of kernel basis morphisms) or None.
        """
        n = self.hom_dim(X, Y)
        blocks, rhs = [], []
        for func, U, V, target in constraints:
            blocks.append(self.matrix_of(func, X, Y, U, V))
            rhs.extend(self.coords(target))
        rows = sum(b.rows for b in blocks)
        A = vstack(blocks, n, self.p) if blocks else Matrix.zeros(0, n, self.p)
        b = Matrix(np.array(rhs, dtype=np.int64).reshape(rows, 1), self.p) if rows else Matrix.zeros(0, 1, self.p)
        x = solve(A, b)
        if x is None:
            return None
        h0 = self.from_coords(X, Y, [int(v) for v in x.a[:, 0]])
        K = kernel(A)
        return h0, [self.from_coords(X, Y, [int(v) for v in row]) for row in K.basis.a]

    def inverse(self, f):
        X, Y = self.source(f), self.target(f)
        if self.hom_dim(X, X) == 0 and self.hom_dim(Y, Y) == 0:
            return self.zero(Y, X)
        sol = self.solve_for(Y, X, [(lambda g: self.compose(g, f), X, X, self.identity(X))])
        if sol is None:
            return None
        g = sol[0]
        return g if self.equal(self.compose(f, g), self.identity(Y)) else None

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def find_iso(self, X, Y, limit: int | None = None):
        """First isomorphism X → Y in coefficient order, or None."""
        d = self.hom_dim(X, Y)
        if d != self.hom_dim(Y, X) or self.hom_dim(X, X) != self.hom_dim(Y, Y):
            return None
        if self.hom_dim(X, X) == 0:
            return self.zero(X, Y)
        for k, f in enumerate(self.elements(X, Y)):
            if limit is not None and k >= limit:
                break
            if self.is_iso(f):
                return f
        return None

    def is_zero_object(self, X) -> bool:
        return self.hom_dim(X, X) == 0

    def comp_tensor(self, X, Y, Z) -> np.ndarray:
        """T with coords(g∘f)[k] = Σ_ij T[k, i, j] g_i f_j for f: X → Y, g: Y → Z."""
        cache = self.__dict__.setdefault("_tensors", {})
        key = (X, Y, Z)
        hit = cache.get(key)
        if hit is None:
            bf, bg = self.basis(X, Y), self.basis(Y, Z)
            hit = np.zeros((self.hom_dim(X, Z), len(bg), len(bf)), dtype=np.int64)
            for i, g in enumerate(bg):
                for j, f in enumerate(bf):
                    hit[:, i, j] = self.coords(self.compose(g, f))
            cache[key] = hit
        return hit

    def left_action(self, g, X) -> np.ndarray:
        """Matrix of f ↦ g∘f on Hom(X, source g), in coordinates."""
        T = self.comp_tensor(X, self.source(g), self.target(g))
        return np.einsum("kij,i->kj", T, np.array(self.coords(g), dtype=np.int64)) % self.p

    def right_action(self, f, Z) -> np.ndarray:
        """Matrix of g ↦ g∘f on Hom(target f, Z), in coordinates."""
        T = self.comp_tensor(self.source(f), self.target(f), Z)
        return np.einsum("kij,j->ki", T, np.array(self.coords(f), dtype=np.int64)) % self.p

    def automorphism_coords(self, X) -> list[tuple[int, ...]]:
        """Coordinates of all invertible endomorphisms: a is a unit iff a∘− is bijective on End(X)."""
        d = self.hom_dim(X, X)
        if d == 0:
            return [()]
        T = self.comp_tensor(X, X, X)
        out = []
        for c in product(range(self.p), repeat=d):
            L = np.einsum("kij,i->kj", T, np.array(c, dtype=np.int64)) % self.p
            if rank(Matrix._raw(L, self.p)) == d:
                out.append(c)
        return out

    def kernel_dim_of(self, func, X, Y, U, V) -> int:
        M = self.matrix_of(func, X, Y, U, V)
        return M.cols - rank(M)


class KbCategory(LinearCategory):
    """Homotopy category of bounded complexes of finite-dimensional modules."""

    def __init__(self, algebra: FinAlgebra, name: str = "", projective: bool = False):
        self.algebra = algebra
        self.p = algebra.p
        self.name = name or f"K^b({algebra.name})"
        self.projective = projective
        self._homs: dict = {}

    def __repr__(self) -> str:
        return f"<KbCategory {self.name}>"

    def hom(self, X: ChainComplex, Y: ChainComplex) -> HomSpace:
        key = (X, Y)
        h = self._homs.get(key)
        if h is None:
            h = HomSpace(X, Y)
            self._homs[key] = h
        return h

    def hom_dim(self, X, Y) -> int:
        return self.hom(X, Y).dim

    def basis(self, X, Y) -> list[ChainMap]:
        return self.hom(X, Y).basis()

    def coords(self, f: ChainMap) -> tuple[int, ...]:
        return self.hom(f.source, f.target).coords(f)

    def from_coords(self, X, Y, c):
        return self.hom(X, Y).element(c)

    def source(self, f: ChainMap) -> ChainComplex:
        return f.source

    def target(self, f: ChainMap) -> ChainComplex:
        return f.target

    def compose(self, g: ChainMap, f: ChainMap) -> ChainMap:
        return compose_maps(g, f)

    def add(self, f, g):
        return add_maps(f, g)

    def scale(self, c, f):
        return scale_map(c, f)

    def zero(self, X, Y):
        return zero_map(X, Y)

    def identity(self, X):
        return identity_map(X)

    def zero_object(self) -> ChainComplex:
        return ChainComplex.zero(self.algebra)

    def direct_sum(self, parts: Sequence[ChainComplex]) -> Biproduct:
        return direct_sum(parts, self.algebra)

    def shift(self, X, k: int = 1):
        return shift(X, k)

    def shift_map(self, f, k: int = 1):
        return shift_map(f, k)

    def cone(self, f) -> Triangle:
        return mapping_cone(f)

    def weak_kernel(self, f: ChainMap) -> ChainMap:
        """cone(f)[-1] → X, the first map of the triangle rotated backwards."""
        tri = mapping_cone(f)
        w = shift_map(tri.w, -1)
        return scale_map(-1, ChainMap(w.source, f.source, w.comps))

    def is_iso(self, f) -> bool:
        # between bounded complexes of projectives the homotopy equivalences are the quasi-isomorphisms
        if self.projective:
            return is_quasi_iso(f)
        return self.inverse(f) is not None


@dataclass(frozen=True)
class VectMap:
    source: int
    target: int
    mat: Matrix


class VectCategory(LinearCategory):
    """Finite-dimensional F_p-vector spaces; objects are dimensions."""

    def __init__(self, p: int, max_dim: int = 2):
        self.p = check_prime(p)
        self.max_dim = max_dim
        self.name = f"vect(F{p})"

    def __repr__(self) -> str:
        return f"<VectCategory F_{self.p}>"

    def objects(self) -> list[int]:
        return list(range(self.max_dim + 1))

    def hom_dim(self, X, Y) -> int:
        return X * Y

    def basis(self, X, Y) -> list[VectMap]:
        out = []
        for i in range(Y):
            for j in range(X):
                m = np.zeros((Y, X), dtype=np.int64)
                m[i, j] = 1
                out.append(VectMap(X, Y, Matrix(m, self.p)))
        return out

    def coords(self, f: VectMap) -> tuple[int, ...]:
        return tuple(int(v) for v in f.mat.flat())

    def from_coords(self, X, Y, c):
        return VectMap(X, Y, Matrix(list(c), self.p, shape=(Y, X)) if X * Y else Matrix.zeros(Y, X, self.p))

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def compose(self, g, f):
        return VectMap(f.source, g.target, g.mat @ f.mat)

    def add(self, f, g):
        return VectMap(f.source, f.target, f.mat + g.mat)

    def scale(self, c, f):
        return VectMap(f.source, f.target, f.mat.scale(c))

    def zero(self, X, Y):
        return VectMap(X, Y, Matrix.zeros(Y, X, self.p))

    def identity(self, X):
        return VectMap(X, X, Matrix.identity(X, self.p))

    def zero_object(self) -> int:
        return 0

    def direct_sum(self, parts: Sequence[int]):
        n = sum(parts)
        inj, proj = [], []
        off = 0
        for k in parts:
            I = np.zeros((n, k), dtype=np.int64)
            I[off : off + k, :] = np.eye(k, dtype=np.int64)
            inj.append(VectMap(k, n, Matrix(I, self.p)))
            proj.append(VectMap(n, k, Matrix(I.T.copy(), self.p)))
            off += k
        return _VectBiproduct(n, tuple(inj), tuple(proj))

    def weak_kernel(self, f: VectMap) -> VectMap:
        K = kernel(f.mat)
        return VectMap(K.dim, f.source, K.basis.T if K.dim else Matrix.zeros(f.source, 0, self.p))

    def is_iso(self, f) -> bool:
        return f.source == f.target and (f.source == 0 or inverse(f.mat) is not None)


@dataclass(frozen=True)
class _VectBiproduct:
    obj: int
    injections: tuple
    projections: tuple


# ---------------------------------------------------------------------------
# enumeration of complexes of projectives within caps


def projective_sums(indecomposables: Sequence[tuple[str, FinModule]], dim_cap: int):
    """All multisets of indecomposable projectives with total dimension ≤ dim_cap, smallest first."""
    out = [()]
    for k in range(1, dim_cap + 1):
        for combo in combinations_with_replacement(range(len(indecomposables)), k):
            if sum(indecomposables[i][1].dim for i in combo) <= dim_cap:
                out.append(combo)
    out.sort(key=lambda c: (sum(indecomposables[i][1].dim for i in c), c))
    return out


def enumerate_complexes(algebra: FinAlgebra, indecomposables: Sequence[tuple[str, FinModule]],
                        degrees: Sequence[int], dim_cap: int) -> list[ChainComplex]:
    """Every complex of projectives supported in ``degrees`` within the per-degree cap."""
    sums = projective_sums(indecomposables, dim_cap)
    mods = {c: direct_sum_modules([indecomposables[i][1] for i in c], algebra) for c in sums}
    labels = {c: "+".join(indecomposables[i][0] for i in c) or "0" for c in sums}
    out = []
    degs = list(degrees)
    for choice in product(sums, repeat=len(degs)):
        ms = [mods[c] for c in choice]
        spaces = []
        for k in range(len(degs) - 1):
            spaces.append(list(_module_maps(ms[k], ms[k + 1])))
        for diffs in product(*spaces) if spaces else [()]:
            ok = all((diffs[k + 1] @ diffs[k]).is_zero() for k in range(len(diffs) - 1))
            if not ok:
                continue
            X = ChainComplex(algebra, degs[0], ms, list(diffs))
            parts = [f"{degs[k]}:{labels[c]}" for k, c in enumerate(choice) if c]
            X.label = " ".join(parts) if parts else "0"
            if any(d.is_zero() is False for d in diffs):
                X.label += " d=" + ";".join("".join(str(int(v)) for v in d.flat()) for d in diffs)
            out.append(X)
    return out


def _module_maps(M: FinModule, N: FinModule) -> Iterator[Matrix]:
    B = module_hom_basis(M, N)
    p = M.p
    if not B:
        yield Matrix.zeros(N.dim, M.dim, p)
        return
    for c in product(range(p), repeat=len(B)):
        acc = np.zeros((N.dim, M.dim), dtype=np.int64)
        for ci, b in zip(c, B):
            if ci:
                acc += ci * b.a
        yield Matrix(acc, p)
