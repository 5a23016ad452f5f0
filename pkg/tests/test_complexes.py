from itertools import product
from math import log

import numpy as np
import pytest

from fraccat.complexes import (
    AlgebraMismatch,
    ChainComplex,
    ChainMap,
    cohomology,
    cohomology_dims,
    compose_maps,
    dual_numbers,
    field_algebra,
    hom_complexes,
    homotopy_classes,
    identity_map,
    is_quasi_iso,
    mapping_cone,
    product_algebra,
    shift,
    zero_map,
)
from fraccat.fixtures import dual_model, vect_model
from fraccat.linalg import Matrix, rank

F2 = field_algebra(2)
F = F2.regular_module()
ONE = Matrix([[1]], 2)
ZERO = Matrix([[0]], 2)


def two_term(d):
    return ChainComplex(F2, 0, [F, F], [d])


def stalk(n=0):
    return ChainComplex.stalk(F, n)


def _key(maps):
    return tuple(m.a.tobytes() for m in maps)


def brute_module_maps(M, N):
    p = M.p
    out = []
    for vals in product(range(p), repeat=M.dim * N.dim):
        f = Matrix(np.array(vals, dtype=np.int64).reshape(N.dim, M.dim), p, shape=(N.dim, M.dim))
        if all(f @ a == b @ f for a, b in zip(M.action, N.action)):
            out.append(f)
    return out


def brute_hom_dims(X, Y):
    """(dim chain maps, dim K-hom) by listing every degreewise candidate and every homotopy."""
    p = X.p
    degs = sorted(set(X.degrees) | set(Y.degrees) | {n - 1 for n in X.degrees} | {n + 1 for n in X.degrees})
    if X.is_zero() or Y.is_zero():
        return 0, 0
    lo, hi = degs[0], degs[-1]
    span = range(lo, hi + 1)
    choices = [brute_module_maps(X.module(n), Y.module(n)) for n in span]
    chain = set()
    for fs in product(*choices):
        f = dict(zip(span, fs))
        if all(Y.d(n) @ f[n] == f[n + 1] @ X.d(n) for n in range(lo, hi)):
            chain.add(_key(fs))
    hchoices = [brute_module_maps(X.module(n), Y.module(n - 1)) for n in range(lo, hi + 2)]
    null = set()
    for hs in product(*hchoices):
        h = dict(zip(range(lo, hi + 2), hs))
        null.add(_key([Y.d(n - 1) @ h[n] + h[n + 1] @ X.d(n) for n in span]))
    assert null <= chain
    return round(log(len(chain), p)), round(log(len(chain) // len(null), p))


MODELS = {M.name: M for M in (vect_model(2, 1, 2), dual_model(2, 1, 2))}


def model_objects():
    return [(name, M.label(i), X) for name, M in MODELS.items() for i, X in enumerate(M.objects)]


def test_chain_map_examples():
    assert len(hom_complexes(stalk(), stalk())) == 1
    assert len(hom_complexes(two_term(ONE), stalk())) == 1
    assert hom_complexes(stalk(), shift(stalk(), 1)) == []


def test_homotopy_examples():
    assert homotopy_classes(stalk(), stalk()).dim == 1
    C = mapping_cone(identity_map(stalk())).Z
    for Y in (stalk(), stalk(1), two_term(ZERO), C):
        assert homotopy_classes(C, Y).dim == 0
    assert homotopy_classes(stalk(), stalk(1)).dim == 0


def test_cone_examples():
    C = mapping_cone(identity_map(stalk())).Z
    assert (C.lo, C.hi) == (-1, 0)
    assert all(v == 0 for v in cohomology_dims(C).values())
    Z = mapping_cone(zero_map(stalk(), stalk())).Z
    assert cohomology_dims(Z) == {-1: 1, 0: 1}
    X = two_term(ZERO)
    proj = ChainMap(X, stalk(), {0: ONE})
    assert proj.is_chain_map()
    Zp = mapping_cone(proj).Z
    # long exact sequence: H^0 X → H^0 Y is onto, H^1 X survives one degree down
    assert {n: d for n, d in cohomology_dims(Zp).items() if d} == {0: 1}


def test_cohomology_examples():
    assert cohomology_dims(two_term(ONE)) == {0: 0, 1: 0}
    assert cohomology_dims(two_term(ZERO)) == {0: 1, 1: 1}
    assert cohomology(stalk(), 5)[0] == 0


def test_quasi_iso_examples():
    assert is_quasi_iso(identity_map(two_term(ZERO)))
    zero = ChainComplex.zero(F2)
    assert not is_quasi_iso(zero_map(zero, stalk()))
    assert is_quasi_iso(zero_map(two_term(ONE), zero))


def test_shift_conventions():
    X = two_term(ONE)
    assert shift(X, 0) == X
    assert shift(shift(X, 1), -1) == X
    S = shift(stalk(), 2)
    assert (S.lo, S.hi) == (-2, -2)
    Y = ChainComplex(F2, 0, [F, F], [ONE])
    assert shift(Y, 1).d(-1) == -ONE


def test_algebra_mismatch():
    other = ChainComplex.stalk(product_algebra(2, 2).regular_module())
    with pytest.raises(AlgebraMismatch):
        hom_complexes(stalk(), other)


@pytest.mark.parametrize("name,label,X", model_objects(), ids=lambda v: v if isinstance(v, str) else "")
def test_hom_dims_match_enumeration(name, label, X):
    objs = list(MODELS[name].objects)
    for Y in objs + [shift(objs[-1], 1)]:
        H = homotopy_classes(X, Y)
        assert (len(hom_complexes(X, Y)), H.dim) == brute_hom_dims(X, Y)


@pytest.mark.parametrize("build", [vect_model, dual_model])
def test_constructors_keep_dd_zero(build):
    M = build(2, 1, 2)
    for X in M.objects:
        assert not X.violations()
        for Y in M.objects:
            for f in homotopy_classes(X, Y).basis():
                T = mapping_cone(f)
                assert not T.Z.violations()
                assert all(m.is_chain_map() for m in (T.u, T.v, T.w))
                assert not shift(T.Z, 1).violations()


def test_acyclic_complexes_over_field_are_contractible():
    M = vect_model(2, 1, 2)
    for X in M.objects:
        if not any(cohomology_dims(X).values()):
            assert homotopy_classes(X, X).is_null(identity_map(X))


@pytest.mark.parametrize("build", [vect_model, dual_model])
def test_cone_contractible_iff_iso(build):
    M = build(2, 1, 2)
    cat = M.cat
    for X in M.objects:
        for Y in M.objects:
            for f in homotopy_classes(X, Y).basis():
                Z = mapping_cone(f).Z
                contractible = homotopy_classes(Z, Z).dim == 0
                assert contractible == cat.is_iso(f)


def _image_dim(cat, C, maps_in, after):
    """Dimension of the image of g ↦ after∘g on Hom(C, source)."""
    rows = [cat.coords(cat.compose(after, g)) for g in maps_in]
    if not rows or not rows[0]:
        return 0
    return rank(Matrix(rows, cat.algebra.p))


@pytest.mark.parametrize("build", [vect_model, dual_model])
def test_hom_into_cone_triangle_is_exact(build):
    M = build(2, 1, 2)
    cat = M.cat
    for X in M.objects:
        for Y in M.objects:
            for f in homotopy_classes(X, Y).basis()[:2]:
                T = mapping_cone(f)
                for C in M.objects:
                    BX, BY = cat.basis(C, T.X), cat.basis(C, T.Y)
                    im_u = _image_dim(cat, C, BX, T.u)
                    ker_v = len(BY) - _image_dim(cat, C, BY, T.v)
                    assert im_u == ker_v
                    assert all(cat.is_zero(cat.compose(T.v, cat.compose(T.u, g))) for g in BX)
