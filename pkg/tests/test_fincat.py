import random

from hypothesis import given, settings
from hypothesis import strategies as st

from fraccat.fincat import (
    FinFunctor,
    find_left_adjoint,
    hom_bijections_hold,
    hom_table,
    identity_functor,
    inclusion_functor,
    is_localization_functor,
    local_object_criteria,
    local_objects,
    localization_functors,
    path_localization_oracle,
    random_category,
    validate_category,
)
from fraccat.fixtures import chain3, corrupted_interval, interval, parallel_pair, poset_fixtures, span


def poset_local(C, sigma, x):
    """Locality in a poset: at most one arrow per hom-set, so compare emptiness only."""
    for s in sigma:
        w, w2 = C.src(s), C.dst(s)
        if bool(C.hom(w2, x)) != bool(C.hom(w, x)):
            return False
    return True


def test_fixtures_are_valid():
    for build in (interval, chain3, span, parallel_pair):
        assert validate_category(build()).valid


def test_corrupted_table_reports_composite():
    rep = validate_category(corrupted_interval())
    assert not rep.valid
    assert rep.violations[0] == ("composite-typing", ("σ", "1_X"))


def test_oracle_interval_collapses_to_point():
    O = path_localization_oracle(interval(), ["σ"], 6)
    assert O.stabilized
    assert set(O.counts.values()) == {1}
    assert O.category.isomorphic("X", "Y") is not None
    assert validate_category(O.category).valid


def test_oracle_identities_give_back_category():
    for C in (interval(), chain3(), parallel_pair()):
        O = path_localization_oracle(C, [], 2)
        assert O.counts == hom_table(C)


def test_oracle_chain_inverting_upper_arrow():
    C = chain3()
    O = path_localization_oracle(C, ["τ"], 6)
    assert O.stabilized
    Q = O.category
    assert Q.isomorphic("Y", "Z") is not None
    assert Q.isomorphic("X", "Y") is None
    assert O.counts[("X", "Y")] == 1 and O.counts[("Y", "X")] == 0


def test_left_adjoint_of_terminal_inclusion():
    C = interval()
    res = find_left_adjoint(inclusion_functor(C.full_subcategory(["Y"]), C))
    assert res
    assert res.functor.obj_map == {"X": "Y", "Y": "Y"}
    assert res.unit["X"] == "σ"


def test_left_adjoint_of_identity():
    C = interval()
    res = find_left_adjoint(identity_functor(C))
    assert res.functor.obj_map == {"X": "X", "Y": "Y"}
    assert res.unit.components == dict(C.identities)


def test_left_adjoint_missing_reports_object():
    C = interval()
    res = find_left_adjoint(inclusion_functor(C.full_subcategory(["X"]), C))
    assert not res
    assert res.failed_at == "Y"


def test_local_objects_examples():
    assert local_objects(interval(), ["σ"]) == ["Y"]
    assert local_objects(chain3(), ["τ"]) == ["X", "Z"]
    for C in (interval(), chain3(), span()):
        assert local_objects(C, C.identities.values()) == list(C.objects)


def test_local_objects_match_poset_rule():
    for C in poset_fixtures(3):
        mors = [m.id for m in C.morphisms if not C.is_identity(m.id)]
        for k in range(1 << len(mors)):
            sigma = [m for i, m in enumerate(mors) if k >> i & 1]
            assert local_objects(C, sigma) == [x for x in C.objects if poset_local(C, sigma, x)]


def test_localization_functor_examples():
    C = interval()
    L = FinFunctor(C, C, {"X": "Y", "Y": "Y"}, {"1_X": "1_Y", "1_Y": "1_Y", "σ": "1_Y"})
    assert is_localization_functor(L, {"X": "σ", "Y": "1_Y"})
    assert is_localization_functor(identity_functor(C), dict(C.identities))
    K = FinFunctor(C, C, {"X": "X", "Y": "X"}, {"1_X": "1_X", "1_Y": "1_X", "σ": "1_X"})
    res = is_localization_functor(K, {"X": "1_X"})
    assert not res and res.witness == "Y"


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_random_categories_are_valid(seed):
    C = random_category(random.Random(seed), 4, 12)
    assert validate_category(C).valid


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_localization_functors_from_reflective_subcategories(seed):
    C = random_category(random.Random(seed), 4, 12)
    for L, eta, keep in localization_functors(C):
        assert L.is_valid()
        assert is_localization_functor(L, eta)
        verdicts = [local_object_criteria(L, eta, x) for x in C.objects]
        assert all(len(set(v)) == 1 for v in verdicts)
        # local objects are exactly those isomorphic to a kept object
        local = {x for x, v in zip(C.objects, verdicts) if v[0]}
        assert local == {x for x in C.objects if any(C.isomorphic(x, k) for k in keep)}


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_left_adjoint_hom_bijections(seed):
    C = random_category(random.Random(seed), 4, 10)
    for mask in range(1, 1 << len(C.objects)):
        D = C.full_subcategory([x for i, x in enumerate(C.objects) if mask >> i & 1])
        G = inclusion_functor(D, C)
        res = find_left_adjoint(G)
        if res:
            assert res.functor.is_valid()
            assert res.unit.is_valid()
            assert hom_bijections_hold(G, res.functor, res.unit)[0]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_unit_comparison_is_unique_iso(seed):
    """Two reflections of X into local objects differ by exactly one isomorphism."""
    C = random_category(random.Random(seed), 4, 10)
    for L, eta, _ in localization_functors(C):
        local = [y for y in C.objects if C.is_iso(eta[y])]
        for x in C.objects:
            for y in local:
                for e in C.hom(x, y):
                    if not L.target.is_iso(L.on_mor(e)):
                        continue
                    phis = [p for p in C.hom(L(x), y) if C.compose(p, eta[x]) == e]
                    assert len(phis) == 1 and C.is_iso(phis[0])
