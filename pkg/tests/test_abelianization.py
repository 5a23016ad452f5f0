from itertools import product
from math import log

import numpy as np
import pytest

from fraccat.abelianization import (
    Abelianization,
    AmbientMismatch,
    CoherentMap,
    NoWeakKernels,
    Presentation,
    cokernel_pres,
    evaluate,
    extend_cohomological,
    hom_coherent,
    is_zero_presentation,
    kernel_pres,
    representable,
    sample_maps,
    semisimple_collapse,
    universal_cohomological,
    verify_abelian,
    verify_yoneda,
    weak_kernel,
    weak_kernel_exact,
)
from fraccat.complexes import ChainComplex, LinearCategory, VectCategory, direct_sum, shift
from fraccat.fixtures import dual_model, product_model, vect_model
from fraccat.triangulated import HomFunctor, ZeroFunctor


@pytest.fixture(scope="module")
def dual():
    return dual_model(2, 1, 2)


@pytest.fixture(scope="module")
def vect():
    return VectCategory(2, 2)


def _elements(cat, X, Y):
    return {tuple(cat.coords(f)): f for f in cat.elements(X, Y)}


def brute_value_size(F, W):
    """|F(W)| = |Hom(W, Y)| / |φ∘Hom(W, X)|, counting elements."""
    cat = F.cat
    image = {tuple(cat.coords(cat.compose(F.phi, g))) for g in cat.elements(W, F.X)}
    return len(_elements(cat, W, F.Y)) // len(image)


def brute_kernel_size(theta, W):
    """Number of classes y in F(W) with θ(y) = 0 in G(W)."""
    cat = theta.source.cat
    F, G = theta.source, theta.target
    im_F = {tuple(cat.coords(cat.compose(F.phi, g))) for g in cat.elements(W, F.X)}
    im_G = {tuple(cat.coords(cat.compose(G.phi, g))) for g in cat.elements(W, G.X)}
    killed = sum(1 for y in cat.elements(W, F.Y) if tuple(cat.coords(cat.compose(theta.b, y))) in im_G)
    return killed // len(im_F)


def test_yoneda(vect, dual):
    assert verify_yoneda(Abelianization(vect), vect.objects()).ok
    assert verify_yoneda(Abelianization(dual.cat), dual.objects).ok


def test_hom_examples(vect):
    ab = Abelianization(vect)
    zero = Presentation(vect, vect.identity(2))
    assert is_zero_presentation(ab, zero)
    assert ab.hom_dim(zero, representable(vect, 2)) == 0
    F = Presentation(vect, vect.zero(1, 1))
    assert len(hom_coherent(F, representable(vect, 1), ab)) == 1
    with pytest.raises(AmbientMismatch):
        hom_coherent(F, representable(VectCategory(3, 2), 1))


def test_cokernel_examples(vect):
    ab = Abelianization(vect)
    G = representable(vect, 2)
    C, _ = cokernel_pres(ab.identity(G))
    assert is_zero_presentation(ab, C)
    F = representable(vect, 1)
    C, _ = cokernel_pres(ab.zero(F, G))
    assert ab.find_iso(C, G) is not None


def test_kernel_examples(dual):
    cat = dual.cat
    ab = Abelianization(cat)
    X, Y = dual.objects[1], dual.objects[3]
    F, G = representable(cat, X), representable(cat, Y)
    K, _ = kernel_pres(ab.zero(F, G))
    assert ab.find_iso(K, F) is not None
    K, _ = kernel_pres(ab.identity(F))
    assert is_zero_presentation(ab, K)


def test_weak_kernels(dual):
    cat = dual.cat
    for X in dual.objects:
        k = weak_kernel(dual, cat.identity(X))
        assert cat.is_zero_object(cat.source(k))
        for Y in dual.objects:
            k = cat.weak_kernel(cat.zero(X, Y))
            S = direct_sum([X, shift(Y, -1)], cat.algebra).obj
            assert cat.find_iso(cat.source(k), S) is not None
            for f in cat.basis(X, Y):
                assert weak_kernel_exact(cat, cat.weak_kernel(f), f, dual.objects)


def test_no_weak_kernels():
    class Bare(LinearCategory):
        """An ambient with composition but no weak kernels."""

    F = Presentation(Bare(), None, "F")
    with pytest.raises(NoWeakKernels):
        kernel_pres(CoherentMap(F, F, None, None))


@pytest.mark.parametrize("which", ["vect", "dual"])
def test_kernels_and_cokernels_evaluate_pointwise(which, vect, dual):
    cat, objects = (vect, vect.objects()) if which == "vect" else (dual.cat, list(dual.objects))
    ab = Abelianization(cat)
    reps = [representable(cat, X) for X in objects]
    maps = sample_maps(ab, [(F, G) for F in reps for G in reps], 25, seed=1)[:25]
    for theta in maps:
        K, _ = kernel_pres(theta)
        C, _ = cokernel_pres(theta)
        for W in objects:
            p = cat.p
            ker = brute_kernel_size(theta, W)
            src, tgt = brute_value_size(theta.source, W), brute_value_size(theta.target, W)
            assert p ** evaluate(K, W) == ker
            assert p ** evaluate(C, W) == tgt * ker // src
    rep = verify_abelian(ab, maps, reps, objects)
    assert rep.ok, rep.summary()


def test_pointwise_injective_map_has_zero_kernel(dual):
    cat = dual.cat
    ab = Abelianization(cat)
    reps = [representable(cat, X) for X in dual.objects]
    found = 0
    for theta in sample_maps(ab, [(F, G) for F in reps for G in reps], 60, seed=2):
        if all(brute_kernel_size(theta, W) == 1 for W in dual.objects):
            found += 1
            K, _ = kernel_pres(theta)
            assert is_zero_presentation(ab, K)
    assert found


def test_universal_cohomological(dual):
    table = universal_cohomological(dual, limit=20, seed=1)
    assert table.report.ok, table.report.summary()
    assert table.report.checked.get("triangle to exact sequence") == 20
    assert table.report.checked.get("zero goes to zero") == 1


def test_extend_cohomological(dual):
    cat = dual.cat
    A0 = ChainComplex.stalk(cat.algebra.regular_module(), 0)
    H = HomFunctor(cat, A0)
    Hb, rep = extend_cohomological(dual, H)
    assert rep.ok
    for X in dual.objects:
        assert Hb.dim(representable(cat, X)) == cat.hom_dim(A0, X)
    Z, rep = extend_cohomological(dual, ZeroFunctor(2))
    assert rep.ok and all(Z.dim(representable(cat, X)) == 0 for X in dual.objects)


def test_extend_on_product_model():
    M = product_model(2, 1, 1)
    P1 = ChainComplex.stalk(M.cat.algebra.projective((0, 1)), 0)
    _, rep = extend_cohomological(M, HomFunctor(M.cat, P1))
    assert rep.ok
    assert rep.checked["exact on kernel-cokernel sequences"] >= 20


def test_semisimple_collapse_counts():
    col = semisimple_collapse(VectCategory(2, 2), max_dim=2)
    assert col.ok
    # oracle: classify every matrix m → n (m, n ≤ 2) over F_2 by n − rank, counting images
    expected = {}
    for m in range(3):
        for n in range(3):
            for vals in product(range(2), repeat=m * n):
                A = np.array(vals, dtype=np.int64).reshape(n, m)
                image = {tuple(A @ np.array(v) % 2) for v in product(range(2), repeat=m)}
                d = n - round(log(len(image), 2))
                expected[d] = expected.get(d, 0) + 1
    assert col.presentations == sum(expected.values())
    assert col.classes == expected
