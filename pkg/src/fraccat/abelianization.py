"""Coherent functors on an F_p-linear category, stored as presentations.

A presentation φ: X → Y stands for the functor coker(Hom(−, X) → Hom(−, Y)).
All computations are linear algebra on the presenting morphisms; evaluating a
functor on an actual object is available only as a cross-check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .complexes import CapsTooSmall, LinearCategory
from .linalg import Matrix, Subspace, hstack, kernel, quotient_basis, rank, solve
from .triangulated import (LinearFunctor, NotCohomological, TriangulatedModel, check_cohomological,
                           cone_triangles)


class AmbientMismatch(ValueError):
    pass


class NoWeakKernels(TypeError):
    pass


@dataclass(frozen=True, eq=False)
class Presentation:
    cat: LinearCategory
    phi: object
    label: str = ""

    @property
    def X(self):
        return self.cat.source(self.phi)

    @property
    def Y(self):
        return self.cat.target(self.phi)

    @cached_property
    def key(self):
        return (id(self.cat), self.X, self.Y, tuple(self.cat.coords(self.phi)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Presentation) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<Presentation {self.label or self.key[1:]}>"


def representable(cat: LinearCategory, X, label: str = "") -> Presentation:
    """h_X, presented by 0 → X."""
    return Presentation(cat, cat.zero(cat.zero_object(), X), label or f"h({_describe(X)})")


def _describe(X) -> str:
    return X.describe() if hasattr(X, "describe") else str(X)


@dataclass(frozen=True, eq=False)
class CoherentMap:
    """A map of presentations given by a square φ'∘a = b∘φ; only the class of b matters."""

    source: Presentation
    target: Presentation
    a: object
    b: object

    def commutes(self) -> bool:
        cat = self.source.cat
        return cat.equal(cat.compose(self.target.phi, self.a), cat.compose(self.b, self.source.phi))


@dataclass
class _Hom:
    quotient: object
    reps: list[CoherentMap]


class Abelianization(LinearCategory):
    """Coherent functors over ``cat`` with maps computed from commuting squares."""

    def __init__(self, cat: LinearCategory, name: str = ""):
        self.cat = cat
        self.p = cat.p
        self.name = name or f"coherent functors on {getattr(cat, 'name', cat)}"
        self._homs: dict = {}

    def __repr__(self) -> str:
        return f"<Abelianization {self.name}>"

    def _check(self, *Fs: Presentation) -> None:
        for F in Fs:
            if F.cat is not self.cat:
                raise AmbientMismatch("presentation lives over a different ambient category")

    # -- hom spaces ---------------------------------------------------------

    def hom(self, F: Presentation, G: Presentation) -> _Hom:
        self._check(F, G)
        key = (F, G)
        hit = self._homs.get(key)
        if hit is not None:
            return hit
        cat, p = self.cat, self.p
        X, Y, X2, Y2 = F.X, F.Y, G.X, G.Y
        nY, nX = cat.hom_dim(Y, Y2), cat.hom_dim(X, X2)
        m = cat.hom_dim(X, Y2)
        R = _action(cat.right_action(F.phi, Y2), m, nY) if nY and m else np.zeros((m, nY), dtype=np.int64)
        L = _action(cat.left_action(G.phi, X), m, nX) if nX and m else np.zeros((m, nX), dtype=np.int64)
        # squares: R b = L a
        squares = kernel(Matrix(np.hstack([R, (-L) % p]).reshape(m, nY + nX), p)) if nY + nX else None
        if squares is None or nY == 0:
            V = Subspace.zero(nY, p)
            squares_rows = np.zeros((0, nY + nX), dtype=np.int64)
        else:
            squares_rows = squares.basis.a
            V = Subspace.span(Matrix._raw(squares_rows[:, :nY].copy(), p), nY, p)
        k = cat.hom_dim(Y, X2)
        N = (_action(cat.left_action(G.phi, Y), nY, k) if k and nY else np.zeros((nY, k), dtype=np.int64))
        W = Subspace.span(Matrix._raw(N.T.copy(), p), nY, p) if k and nY else Subspace.zero(nY, p)
        Qt = quotient_basis(V, W)
        reps = []
        for row in Qt.representatives.a:
            b = cat.from_coords(Y, Y2, [int(v) for v in row])
            a = self._lift_a(F, G, b)
            reps.append(CoherentMap(F, G, a, b))
        hit = _Hom(Qt, reps)
        self._homs[key] = hit
        return hit

    def _lift_a(self, F: Presentation, G: Presentation, b):
        cat = self.cat
        sol = cat.solve_for(F.X, G.X, [(lambda a: cat.compose(G.phi, a), F.X, G.Y, cat.compose(b, F.phi))])
        if sol is None:
            return None
        return sol[0]

    def hom_dim(self, F, G) -> int:
        return self.hom(F, G).quotient.dim

    def basis(self, F, G) -> list[CoherentMap]:
        return list(self.hom(F, G).reps)

    def coords(self, f: CoherentMap) -> tuple[int, ...]:
        Qt = self.hom(f.source, f.target).quotient
        if Qt.V.ambient == 0:
            return ()
        return Qt.coordinates(self.cat.coords(f.b))

    def source(self, f: CoherentMap) -> Presentation:
        return f.source

    def target(self, f: CoherentMap) -> Presentation:
        return f.target

    def compose(self, g: CoherentMap, f: CoherentMap) -> CoherentMap:
        cat = self.cat
        return CoherentMap(f.source, g.target, cat.compose(g.a, f.a), cat.compose(g.b, f.b))

    def add(self, f: CoherentMap, g: CoherentMap) -> CoherentMap:
        cat = self.cat
        return CoherentMap(f.source, f.target, cat.add(f.a, g.a), cat.add(f.b, g.b))

    def scale(self, c: int, f: CoherentMap) -> CoherentMap:
        cat = self.cat
        return CoherentMap(f.source, f.target, cat.scale(c, f.a), cat.scale(c, f.b))

    def zero(self, F, G) -> CoherentMap:
        cat = self.cat
        return CoherentMap(F, G, cat.zero(F.X, G.X), cat.zero(F.Y, G.Y))

    def identity(self, F) -> CoherentMap:
        cat = self.cat
        return CoherentMap(F, F, cat.identity(F.X), cat.identity(F.Y))

    def zero_object(self) -> Presentation:
        return representable(self.cat, self.cat.zero_object(), "0")

    def yoneda(self, f) -> CoherentMap:
        """h(f): h_X → h_Y."""
        cat = self.cat
        X, Y = cat.source(f), cat.target(f)
        Z = cat.zero_object()
        return CoherentMap(representable(cat, X), representable(cat, Y), cat.zero(Z, Z), f)

    def direct_sum(self, parts: Sequence[Presentation]) -> Presentation:
        cat = self.cat
        BX = cat.direct_sum([F.X for F in parts])
        BY = cat.direct_sum([F.Y for F in parts])
        phi = cat.zero(BX.obj, BY.obj)
        for F, pi, iota in zip(parts, BX.projections, BY.injections):
            phi = cat.add(phi, cat.compose(iota, cat.compose(F.phi, pi)))
        return Presentation(cat, phi, " + ".join(F.label for F in parts))

    def find_iso(self, F, G, limit: int | None = None):
        if any(evaluate(F, W) != evaluate(G, W) for W in self._probe_objects(F, G)):
            return None
        return super().find_iso(F, G, limit)

    def _probe_objects(self, F, G) -> list:
        return [F.X, F.Y, G.X, G.Y]


def _action(M: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64).reshape(rows, cols)


# ---------------------------------------------------------------------------
# cokernels and kernels


def hom_coherent(F: Presentation, G: Presentation, ab: Abelianization | None = None) -> list[CoherentMap]:
    if F.cat is not G.cat:
        raise AmbientMismatch("presentations over different ambient categories")
    ab = ab or Abelianization(F.cat)
    return ab.basis(F, G)


def cokernel_pres(theta: CoherentMap) -> tuple[Presentation, CoherentMap]:
    """coker θ presented by [b, φ']: Y ⊕ X' → Y', with the projection from the target."""
    cat = theta.source.cat
    G = theta.target
    B = cat.direct_sum([theta.source.Y, G.X])
    psi = cat.add(cat.compose(theta.b, B.projections[0]), cat.compose(G.phi, B.projections[1]))
    C = Presentation(cat, psi, f"coker({G.label})")
    return C, CoherentMap(G, C, B.injections[1], cat.identity(G.Y))


def kernel_pres(theta: CoherentMap) -> tuple[Presentation, CoherentMap]:
    """Kernel by two weak kernels: Y0 → X2 ⊕ Y1 → Y2, then X0 → X1 ⊕ Y0 → Y1."""
    cat = theta.source.cat
    if not hasattr(cat, "weak_kernel"):
        raise NoWeakKernels(f"{cat!r} provides no weak kernels")
    F1, F2 = theta.source, theta.target
    S1 = cat.direct_sum([F2.X, F1.Y])
    mu = cat.add(cat.compose(F2.phi, S1.projections[0]), cat.compose(theta.b, S1.projections[1]))
    k1 = cat.weak_kernel(mu)
    c = cat.compose(S1.projections[1], k1)
    Y0 = cat.source(k1)
    S2 = cat.direct_sum([F1.X, Y0])
    nu = cat.add(cat.compose(F1.phi, S2.projections[0]), cat.compose(c, S2.projections[1]))
    k2 = cat.weak_kernel(nu)
    a0 = cat.compose(S2.projections[0], k2)
    phi0 = cat.scale(-1, cat.compose(S2.projections[1], k2))
    K = Presentation(cat, phi0, f"ker({F1.label})")
    return K, CoherentMap(K, F1, a0, c)


def weak_kernel(model: TriangulatedModel, phi, check: bool = True):
    """cone(φ)[−1] → X; raises CapsTooSmall if the cone leaves the model."""
    cat = model.cat
    k = cat.weak_kernel(phi)
    if model.locate(cat.source(k)) is None:
        raise CapsTooSmall(f"weak kernel source {cat.source(k).describe()} leaves the model {model.name}")
    if check and not weak_kernel_exact(cat, k, phi, model.objects):
        raise AssertionError("weak kernel sequence is not exact")
    return k


def weak_kernel_exact(cat: LinearCategory, k, phi, objects) -> bool:
    """Hom(W, K) → Hom(W, X) → Hom(W, Y) exact at the middle for every W."""
    from .triangulated import _exact_at_middle

    X = cat.source(phi)
    for W in objects:
        A = _left_matrix(cat, k, W)
        B = _left_matrix(cat, phi, W)
        if not _exact_at_middle(A, B, cat.hom_dim(W, X)):
            return False
    return True


def _left_matrix(cat: LinearCategory, f, W) -> Matrix:
    rows, cols = cat.hom_dim(W, cat.target(f)), cat.hom_dim(W, cat.source(f))
    if rows == 0 or cols == 0:
        return Matrix.zeros(rows, cols, cat.p)
    return Matrix(_action(cat.left_action(f, W), rows, cols), cat.p)


# ---------------------------------------------------------------------------
# pointwise evaluation (test oracle)


def _value_space(F: Presentation, W):
    cat = F.cat
    n = cat.hom_dim(W, F.Y)
    rel = _left_matrix(cat, F.phi, W)
    Wsub = Subspace.span(rel.T, n, cat.p) if rel.cols and n else Subspace.zero(n, cat.p)
    return quotient_basis(Subspace.whole(n, cat.p), Wsub)


def evaluate(F: Presentation, W) -> int:
    """dim F(W) = dim Hom(W, Y) / φ∘Hom(W, X)."""
    cat = F.cat
    n = cat.hom_dim(W, F.Y)
    rel = _left_matrix(cat, F.phi, W)
    return n - (rank(rel) if rel.rows and rel.cols else 0)


def evaluate_map(theta: CoherentMap, W) -> Matrix:
    """θ_W: F(W) → G(W) in the coset bases of both sides."""
    cat = theta.source.cat
    Qs, Qt = _value_space(theta.source, W), _value_space(theta.target, W)
    B = _left_matrix(cat, theta.b, W)
    cols = [Qt.coordinates([int(v) for v in (B.a @ row) % cat.p]) for row in Qs.representatives.a]
    if not cols:
        return Matrix.zeros(Qt.dim, 0, cat.p)
    return Matrix(np.array(cols, dtype=np.int64).T.reshape(Qt.dim, len(cols)), cat.p)


def pointwise_rank(theta: CoherentMap, W) -> int:
    M = evaluate_map(theta, W)
    return rank(M) if M.rows and M.cols else 0


# ---------------------------------------------------------------------------
# universal properties


def _post_matrix(ab: Abelianization, g: CoherentMap, T: Presentation) -> Matrix:
    """Hom(T, source g) → Hom(T, target g), f ↦ g∘f."""
    return ab.matrix_of(lambda f: ab.compose(g, f), T, g.source, T, g.target)


def _pre_matrix(ab: Abelianization, f: CoherentMap, T: Presentation) -> Matrix:
    """Hom(target f, T) → Hom(source f, T), g ↦ g∘f."""
    return ab.matrix_of(lambda g: ab.compose(g, f), f.target, T, f.source, T)


def _rk(M: Matrix) -> int:
    return rank(M) if M.rows and M.cols else 0


def kernel_universal(ab: Abelianization, theta: CoherentMap, iota: CoherentMap, tests: Sequence[Presentation]) -> list[str]:
    """θ∘ι = 0 and Hom(T, K) ≅ {g: T → F : θ∘g = 0} via ι∘− for every test object."""
    bad = []
    if not ab.is_zero(ab.compose(theta, iota)):
        bad.append("composite with the inclusion is nonzero")
    for T in tests:
        I = _post_matrix(ab, iota, T)
        Th = _post_matrix(ab, theta, T)
        nF = ab.hom_dim(T, theta.source)
        ker_dim = nF - _rk(Th)
        if _rk(I) != I.cols or _rk(I) != ker_dim:
            bad.append(f"kernel property fails against {T.label}")
    return bad


def cokernel_universal(ab: Abelianization, theta: CoherentMap, pi: CoherentMap, tests: Sequence[Presentation]) -> list[str]:
    bad = []
    if not ab.is_zero(ab.compose(pi, theta)):
        bad.append("composite with the projection is nonzero")
    for T in tests:
        P = _pre_matrix(ab, pi, T)
        Th = _pre_matrix(ab, theta, T)
        nG = ab.hom_dim(theta.target, T)
        ker_dim = nG - _rk(Th)
        if _rk(P) != P.cols or _rk(P) != ker_dim:
            bad.append(f"cokernel property fails against {T.label}")
    return bad


def image_factorizations_agree(ab: Abelianization, theta: CoherentMap) -> bool:
    """coker(ker θ → F) ≅ ker(G → coker θ)."""
    _, iota = kernel_pres(theta)
    coim, _ = cokernel_pres(iota)
    _, pi = cokernel_pres(theta)
    im, _ = kernel_pres(pi)
    return ab.find_iso(coim, im) is not None


def is_zero_presentation(ab: Abelianization, F: Presentation) -> bool:
    """coker φ = 0 iff id_Y factors through φ."""
    cat = ab.cat
    if cat.is_zero_object(F.Y):
        return True
    return cat.solve_for(F.Y, F.X, [(lambda k: cat.compose(F.phi, k), F.Y, F.Y, cat.identity(F.Y))]) is not None


@dataclass
class CoherentReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list] = field(default_factory=dict)

    def tick(self, name: str, ok: bool, witness=None) -> None:
        self.checked[name] = self.checked.get(name, 0) + 1
        if not ok:
            self.failures.setdefault(name, []).append(witness)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return "\n".join(f"{k}: {'pass' if k not in self.failures else 'FAIL'} "
                         f"({v} checked, {len(self.failures.get(k, []))} failures)" for k, v in self.checked.items())


def sample_maps(ab: Abelianization, pairs: Sequence[tuple[Presentation, Presentation]], count: int, seed: int = 0) -> list[CoherentMap]:
    """``count`` maps drawn from the given hom spaces, zero maps and basis maps first."""
    rng = random.Random(seed)
    out = []
    for F, G in pairs:
        out.append(ab.zero(F, G))
        out.extend(ab.basis(F, G))
    nonempty = [(F, G) for F, G in pairs if ab.hom_dim(F, G)]
    while len(out) < count and nonempty:
        F, G = nonempty[rng.randrange(len(nonempty))]
        out.append(ab.from_coords(F, G, [rng.randrange(ab.p) for _ in range(ab.hom_dim(F, G))]))
    return out[:max(count, len(out))]


def verify_abelian(ab: Abelianization, maps: Sequence[CoherentMap], tests: Sequence[Presentation],
                   evaluation_objects: Sequence | None = None) -> CoherentReport:
    """Kernel and cokernel universal properties, image factorizations, and pointwise agreement."""
    rep = CoherentReport()
    for theta in maps:
        K, iota = kernel_pres(theta)
        C, pi = cokernel_pres(theta)
        tag = (theta.source.label, theta.target.label, ab.coords(theta))
        rep.tick("square commutes", iota.commutes() and pi.commutes(), tag)
        rep.tick("kernel universal", not kernel_universal(ab, theta, iota, tests), tag)
        rep.tick("cokernel universal", not cokernel_universal(ab, theta, pi, tests), tag)
        rep.tick("image factorization", image_factorizations_agree(ab, theta), tag)
        for W in evaluation_objects or ():
            r = pointwise_rank(theta, W)
            ok = (evaluate(K, W) == evaluate(theta.source, W) - r
                  and evaluate(C, W) == evaluate(theta.target, W) - r
                  and pointwise_rank(iota, W) == evaluate(K, W))
            rep.tick("pointwise kernel and cokernel", ok, (tag, _describe(W)))
    return rep


def verify_yoneda(ab: Abelianization, objects: Sequence) -> CoherentReport:
    """Hom(h_X, h_Y) → C(X, Y) is bijective and h preserves composition."""
    cat = ab.cat
    rep = CoherentReport()
    for X in objects:
        for Y in objects:
            hX, hY = representable(cat, X), representable(cat, Y)
            ok = ab.hom_dim(hX, hY) == cat.hom_dim(X, Y)
            ok = ok and all(tuple(ab.coords(ab.yoneda(f))) == tuple(cat.coords(f)) for f in cat.basis(X, Y))
            rep.tick("yoneda bijection", ok, (_describe(X), _describe(Y)))
    return rep


# ---------------------------------------------------------------------------
# the universal cohomological functor and its extensions


@dataclass
class CohomologicalTable:
    model: TriangulatedModel
    ab: Abelianization
    objects: list[Presentation]
    report: CoherentReport

    def of(self, f) -> CoherentMap:
        return self.ab.yoneda(f)


def exact_at(ab: Abelianization, f: CoherentMap, g: CoherentMap) -> bool:
    """im f = ker g, decided by factoring f through ker g and testing the factor is epi."""
    if not ab.is_zero(ab.compose(g, f)):
        return False
    K, iota = kernel_pres(g)
    sol = ab.solve_for(f.source, K, [(lambda h: ab.compose(iota, h), f.source, f.target, f)])
    if sol is None:
        return False
    C, _ = cokernel_pres(sol[0])
    return is_zero_presentation(ab, C)


def universal_cohomological(model: TriangulatedModel, limit: int | None = None, seed: int = 0) -> CohomologicalTable:
    """X ↦ h_X on the model; checks every cone triangle goes to an exact sequence."""
    cat = model.cat
    ab = Abelianization(cat)
    rep = CoherentReport()
    objs = [representable(cat, X, model.label(i)) for i, X in enumerate(model.objects)]
    for i, X in enumerate(model.objects):
        if model.cat.is_zero_object(X):
            rep.tick("zero goes to zero", is_zero_presentation(ab, objs[i]), model.label(i))
    for tri in cone_triangles(model, limit, seed):
        hu, hv, hw = ab.yoneda(tri.u), ab.yoneda(tri.v), ab.yoneda(tri.w)
        ok = exact_at(ab, hu, hv) and exact_at(ab, hv, hw)
        rep.tick("triangle to exact sequence", ok, tri.X.describe() + " -> " + tri.Y.describe())
    return CohomologicalTable(model, ab, objs, rep)


class ExtendedFunctor:
    """H̄ on presentations: H̄(φ) = coker Hφ, with maps induced by H(b)."""

    def __init__(self, H: LinearFunctor, p: int):
        self.H, self.p = H, p

    def _coker(self, F: Presentation):
        n = self.H.dim(F.Y)
        M = self.H.matrix(F.phi) if self.H.dim(F.X) and n else Matrix.zeros(n, 0, self.p)
        Wsub = Subspace.span(M.T, n, self.p) if M.cols and n else Subspace.zero(n, self.p)
        return quotient_basis(Subspace.whole(n, self.p), Wsub)

    def dim(self, F: Presentation) -> int:
        return self._coker(F).dim

    def matrix(self, theta: CoherentMap) -> Matrix:
        Qs, Qt = self._coker(theta.source), self._coker(theta.target)
        if Qs.dim == 0 or Qt.dim == 0:
            return Matrix.zeros(Qt.dim, Qs.dim, self.p)
        B = self.H.matrix(theta.b)
        cols = [Qt.coordinates([int(v) for v in (B.a @ row) % self.p]) for row in Qs.representatives.a]
        return Matrix(np.array(cols, dtype=np.int64).T.reshape(Qt.dim, len(cols)), self.p)


def _exact_seq(A: Matrix, B: Matrix, mid: int) -> bool:
    from .triangulated import _exact_at_middle

    return _exact_at_middle(A, B, mid)


def extend_cohomological(model: TriangulatedModel, H: LinearFunctor, maps: Sequence[CoherentMap] | None = None,
                         triangles=None) -> tuple[ExtendedFunctor, CoherentReport]:
    """Extend a cohomological H to H̄ and check H = H̄∘h, functoriality and exactness on kernel/cokernel sequences."""
    bad = check_cohomological(model, H, triangles)
    if bad is not None:
        raise NotCohomological(f"{H.name} is not cohomological", bad)
    cat = model.cat
    ab = Abelianization(cat)
    Hb = ExtendedFunctor(H, model.p)
    rep = CoherentReport()
    for i, X in enumerate(model.objects):
        rep.tick("agrees on representables", Hb.dim(representable(cat, X)) == H.dim(X), model.label(i))
    if maps is None:
        objs = [representable(cat, X, model.label(i)) for i, X in enumerate(model.objects)]
        maps = sample_maps(ab, [(F, G) for F in objs for G in objs], 20)
    for theta in maps:
        K, iota = kernel_pres(theta)
        C, pi = cokernel_pres(theta)
        mi, mt, mp = Hb.matrix(iota), Hb.matrix(theta), Hb.matrix(pi)
        dK, dF, dG, dC = Hb.dim(K), Hb.dim(theta.source), Hb.dim(theta.target), Hb.dim(C)
        ok = (_rk(mi) == dK and _exact_seq(mi, mt, dF) and _exact_seq(mt, mp, dG) and _rk(mp) == dC)
        rep.tick("exact on kernel-cokernel sequences", ok, (theta.source.label, theta.target.label))
        comp = Hb.matrix(ab.compose(theta, iota))
        ok2 = comp.is_zero() and (mt @ mi).is_zero() if mi.cols and mt.rows else True
        rep.tick("functorial", ok2, (theta.source.label, theta.target.label))
    return Hb, rep


# ---------------------------------------------------------------------------
# semisimple ambients


def all_presentations(cat, max_dim: int) -> Iterator[Presentation]:
    """Every φ: m → n in vect with m, n ≤ max_dim."""
    for m in range(max_dim + 1):
        for n in range(max_dim + 1):
            for f in cat.elements(m, n):
                yield Presentation(cat, f, f"{m}->{n}:{''.join(str(int(v)) for v in f.mat.flat())}")


@dataclass
class CollapseReport:
    presentations: int
    matched: int
    hom_mismatches: list
    classes: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.matched == self.presentations and not self.hom_mismatches


def semisimple_collapse(cat, max_dim: int = 2) -> CollapseReport:
    """Each presentation over vect is isomorphic to h_V with V = coker φ, and hom dimensions agree."""
    ab = Abelianization(cat)
    pres = list(all_presentations(cat, max_dim))
    matched = 0
    classes: dict[int, int] = {}
    dims = {}
    for F in pres:
        d = F.Y - _rk(F.phi.mat)
        dims[F] = d
        if ab.find_iso(F, representable(cat, d)) is not None:
            matched += 1
            classes[d] = classes.get(d, 0) + 1
    mism = []
    for F in pres:
        for G in pres:
            if ab.hom_dim(F, G) != dims[F] * dims[G]:
                mism.append((F.label, G.label))
    return CollapseReport(len(pres), matched, mism, classes)
