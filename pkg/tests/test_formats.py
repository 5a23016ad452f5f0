import numpy as np
import pytest

from fraccat.fincat import hom_table, validate_category
from fraccat.fixtures import CATEGORIES, chain3, interval, parallel_pair
from fraccat.formats import (
    FIXTURE_ENV,
    ParseError,
    designated,
    dump_algebra,
    dump_category,
    dump_ring,
    load_algebra,
    load_category,
    load_model,
    load_ring,
    parse_algebra,
    parse_category,
    parse_int_list,
    parse_model,
    parse_ring,
    resolve,
)
from fraccat.modloc import FinCommRing
from fraccat.report import Report, parse_summary


def where(exc):
    return exc.value.line, exc.value.column


@pytest.mark.parametrize("build", list(CATEGORIES.values()))
def test_category_round_trip(build):
    C = build()
    cf = parse_category(dump_category(C, {"all": tuple(m.id for m in C.morphisms)}))
    D = cf.category
    assert D.objects == C.objects
    assert [(m.id, m.src, m.dst) for m in D.morphisms] == [(m.id, m.src, m.dst) for m in C.morphisms]
    assert D.composition == C.composition
    assert cf.sets["all"] == tuple(m.id for m in C.morphisms)


def test_fixture_files_match_builders():
    for name, build in (("interval.cat", interval), ("chain3.cat", chain3), ("parallel.cat", parallel_pair)):
        cf = load_category(f"fixtures/{name}")
        assert validate_category(cf.category).valid
        assert hom_table(cf.category) == hom_table(build())
    assert load_category("interval.cat").sets["sigma"] == ("σ",)


def test_identities_added():
    cf = parse_category("objects X Y\nmorphism s X Y\ncompose s 1_X s\n")
    assert set(cf.added_identities) == {"1_X", "1_Y"}
    assert validate_category(cf.category).valid


def test_corrupted_fixture_parses_but_is_invalid():
    cf = load_category("corrupted-interval.cat")
    assert validate_category(cf.category).violations[0] == ("composite-typing", ("σ", "1_X"))


@pytest.mark.parametrize("text,pos", [
    ("objects X Y\nmorphism s X Q\n", (2, 14)),
    ("objects X Y\nmorphism s X Y\ncompose s t s\n", (3, 11)),
    ("objects X\nfrobnicate X\n", (2, 1)),
    ("objects X Y\nmorphism s X Y\nset sigma s u\n", (3, 13)),
    ("objects X Y\nmorphism s X\n", (2, 1)),
])
def test_category_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_category(text, "t.cat")
    assert where(exc) == pos
    assert str(exc.value).startswith(f"t.cat:{pos[0]}:{pos[1]}:")


def test_designated_sets():
    cf = load_category("interval.cat")
    assert designated(cf, "sigma") == ("σ",)
    assert designated(cf, "σ,1_X") == ("σ", "1_X")
    with pytest.raises(ParseError) as exc:
        designated(cf, "σ,nope")
    assert where(exc) == (1, 3)


def test_algebra_round_trip():
    for name in ("field", "dual", "product"):
        A = load_algebra(name).algebra
        B = parse_algebra(dump_algebra(A)).algebra
        assert B.labels == A.labels and B.p == A.p
        assert np.array_equal(B.mult, A.mult) and np.array_equal(B.unit, A.unit)


def test_algebra_file_with_complex():
    af = load_algebra("dual.alg")
    assert not af.algebra.violations()
    K = af.complexes["Kx"]
    assert not K.violations() and (K.lo, K.hi) == (0, 1)


@pytest.mark.parametrize("text,pos", [
    ("algebra A\nmodulus 4\n", (2, 9)),
    ("algebra A\nmodulus 2\nbasis 1\nunit 1\nproduct 1 1 = 1\nmodule M 1\naction M 1 = 2 0\n", (7, 14)),
    ("algebra A\nmodulus 2\nbasis 1 x\nunit 1 0\nproduct 1 1 = 1 0\nproduct 1 x = 0 1\nproduct x 1 = 0 1\n"
     "module M 2\naction M 1 = 1 0 0 1\naction M x = 0 0 1 0\ncomplex C 0 M M\ndifferential C 0 = 0 1 0 0\n", (12, 20)),
])
def test_algebra_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text, "a.alg")
    assert where(exc) == pos


def test_models():
    for name, dim, n in (("vect", 1, 1), ("dual", 2, 1), ("product", 2, 2)):
        mf = load_model(name)
        assert mf.algebra.algebra.dim == dim and len(mf.projectives) == n
        assert (mf.window, mf.dim_cap) == (1, 2)
    mf = parse_model("model m\nalgebra dual\nwindow 0\n")
    assert mf.window == 0 and mf.projectives == [("A", (1, 0))]
    with pytest.raises(ParseError) as exc:
        parse_model("algebra dual\nprojective B 0 1\n")
    assert where(exc) == (2, 14)
    with pytest.raises(ParseError) as exc:
        parse_model("algebra nowhere.alg\n")
    assert where(exc) == (1, 9)


def test_ring_round_trip_and_errors():
    R = load_ring("z6.ring")
    S = parse_ring(dump_ring(R))
    assert np.array_equal(S.add, R.add) and np.array_equal(S.mul, R.mul)
    assert np.array_equal(load_ring("z6").mul, FinCommRing.integers_mod(6).mul)
    bad = dump_ring(R).replace("mul 2 : 0 2 4 0 2 4", "mul 2 : 0 2 4 0 2 5")
    with pytest.raises(ParseError):
        parse_ring(bad)
    with pytest.raises(ParseError) as exc:
        parse_ring(dump_ring(R).replace("add 3 : 3 4 5 0 1 2", "add 3 : 3 4 5 0 1 9"))
    assert where(exc) == (8, 19)


def test_int_lists():
    assert parse_int_list("1, 3,", "--mult") == [1, 3]
    with pytest.raises(ParseError) as exc:
        parse_int_list("1,x", "--mult")
    assert where(exc) == (1, 3)


def test_fixture_dir_override(tmp_path, monkeypatch):
    (tmp_path / "mine.cat").write_text("objects A\n", encoding="utf-8")
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    assert resolve("fixtures/mine.cat") == tmp_path / "mine.cat"
    assert load_category("mine.cat").category.objects == ("A",)
    with pytest.raises(ParseError):
        resolve("interval.cat")


def test_report_rendering():
    r = Report("demo", {"seed": 1})
    r.section("first").check("fine", True)
    s = r.section("second")
    s.check("broken", False, "witness")
    s.table(["a", "bb"], [[1, 2]])
    text = r.render()
    assert parse_summary(text) == {"status": "FAIL", "sections": "2", "passed": "1", "failed": "1"}
    assert "section: FAIL | second" in text
    assert "[FAIL] broken (witness)" in text
    assert text.endswith("\n")
