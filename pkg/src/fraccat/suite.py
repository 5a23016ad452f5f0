"""The acceptance suite: seven computational checks whose combined report must be reproducible.

Each check returns a report section.  Timings are kept out of the report so
that two runs with the same configuration render byte-identical text.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .abelianization import (
    Abelianization,
    cokernel_pres,
    representable,
    sample_maps,
    semisimple_collapse,
    verify_abelian,
    verify_yoneda,
)
from .complexes import ChainComplex, VectCategory
from .config import RunConfig
from .fincat import local_object_criteria, localization_functors, path_localization_oracle, random_category
from .fixtures import designated_subsets, dual_model, poset_fixtures, product_model, vect_model
from .fractions import build_fraction_category, check_calculus_left
from .modloc import FinCommRing, localize_ring, mult_set, verify_localization_adjunction
from .report import Report, Section
from .triangulated import (
    bousfield_harness,
    corrupted_cone,
    gamma_triangle,
    restriction_hom_dim,
    thick_closure,
    verdier_quotient,
    verify_axioms,
    whole_subcategory,
    zero_subcategory,
)


def fraction_oracle_agreement(cfg: RunConfig) -> Section:
    sec = Section("Fraction hom-sets agree with the path localization on small posets")
    cap = cfg.caps.path_len_cap
    posets = systems = mismatches = unstable = 0
    first = ""
    for C in poset_fixtures(4):
        posets += 1
        for sig in designated_subsets(C):
            if not check_calculus_left(C, sig).ok:
                continue
            systems += 1
            F = build_fraction_category(C, sig)
            O = path_localization_oracle(C, sig, cap)
            unstable += not O.stabilized
            for x in C.objects:
                for y in C.objects:
                    a, b = len(F.category.hom(x, y)), O.counts.get((x, y), 0)
                    if a != b:
                        mismatches += 1
                        first = first or f"{C.name} {sorted(sig)} ({x},{y}): fractions {a}, paths {b}"
    sec.info("poset categories (up to isomorphism, at most 4 objects)", posets)
    sec.info("designated sets satisfying the left fraction axioms", systems)
    sec.info("path length cap", cap)
    sec.check("path enumeration stabilized for every designated set", unstable == 0, f"{unstable} unstable")
    sec.check("hom-set sizes agree", mismatches == 0, first or "0 mismatches")
    return sec


def local_object_agreement(cfg: RunConfig, wanted: int = 100, max_tries: int = 20000) -> Section:
    sec = Section("Five characterisations of local objects agree on random finite categories")
    rng = random.Random(cfg.seed)
    cats = tries = functors = objects = bad = 0
    first = ""
    while cats < wanted and tries < max_tries:
        tries += 1
        C = random_category(rng, 4, 12, name=f"random#{tries}")
        Ls = localization_functors(C)
        if not Ls:
            continue
        cats += 1
        for L, eta, keep in Ls:
            functors += 1
            for x in C.objects:
                objects += 1
                v = local_object_criteria(L, eta, x)
                if len(set(v)) != 1:
                    bad += 1
                    first = first or f"{C.name} image {keep} object {x}: {v}"
    sec.info("random categories drawn", tries)
    sec.info("categories admitting a localization functor", cats)
    sec.info("localization functors examined", functors)
    sec.info("object verdicts compared", objects)
    sec.check(f"{wanted} categories found", cats == wanted)
    sec.check("all five conditions agree", bad == 0, first or "0 disagreements")
    return sec


def _idempotent_setup(cfg: RunConfig):
    M = product_model(2, cfg.caps.window, cfg.caps.dim_cap)
    A = M.cat.algebra
    P1 = ChainComplex.stalk(A.projective((0, 1)), 0)
    S = thick_closure(M, [M.index_of(P1)])
    return M, S


def verdier_restriction_agreement(cfg: RunConfig) -> Section:
    sec = Section("Verdier quotient hom dimensions match restriction along the idempotent")
    M, S = _idempotent_setup(cfg)
    e = (1, 0)
    sec.info("model", f"{M.name}, {len(M)} objects")
    sec.info("thick subcategory generated by P1", f"{len(S.members)} objects")
    Q = verdier_quotient(M, S, seed=cfg.seed)
    sec.check("designated morphisms form a multiplicative system compatible with shift", Q.verdict.ok,
              f"{Q.verdict.checked} samples")
    pairs = bad = 0
    first = ""
    for i, j in M.pairs():
        X, Y = M.objects[i], M.objects[j]
        pairs += 1
        a, b = Q.hom_dim(X, Y), restriction_hom_dim(X, Y, e)
        if a != b:
            bad += 1
            first = first or f"({M.label(i)}, {M.label(j)}): quotient {a}, restriction {b}"
    sec.check("local approximations stabilized", Q.stabilized())
    sec.check(f"hom dimensions agree on all {pairs} object pairs", bad == 0, first or "0 mismatches")
    sec.info("objects killed by the quotient", len(Q.kernel_objects()))
    return sec


def bousfield_consistency(cfg: RunConfig) -> Section:
    sec = Section("Bousfield localization conditions agree and give orthogonal pairs")
    M, S = _idempotent_setup(cfg)
    for name, T in (("thick(P1)", S), ("zero", zero_subcategory(M)), ("everything", whole_subcategory(M))):
        v = bousfield_harness(M, T)
        conds = " ".join(f"{k}={'T' if v.conditions[k] else 'F'}" for k in sorted(v.conditions))
        sec.check(f"{name}: six conditions return the same answer", v.consistent, conds)
        if v.localization is None:
            sec.check(f"{name}: no localization found, matching the conditions", not any(v.conditions.values()))
            continue
        sec.check(f"{name}: kernel and image form an orthogonal pair", v.orthogonal_pair)
        bad = [M.label(i) for i in range(len(M)) if not gamma_triangle(M, v.localization, T, i).ok]
        sec.check(f"{name}: acyclic-local triangle for every object", not bad, ", ".join(bad) or f"{len(M)} objects")
    return sec


def triangulated_axioms(cfg: RunConfig) -> Section:
    sec = Section("Triangulated category axioms on homotopy categories of complexes")
    for build in (vect_model, dual_model):
        M = build(2, cfg.caps.window, cfg.caps.dim_cap)
        rep = verify_axioms(M, budget=cfg.caps.tr4_budget, seed=cfg.seed)
        sec.info("model", f"{M.name}, {len(M)} objects")
        for ax in ("TR1", "TR2", "TR3", "TR4"):
            n = rep.checked.get(ax, 0)
            fails = rep.failures.get(ax, [])
            sec.check(f"{M.name} {ax}", not fails, f"{n} checked, {len(fails)} failures"
                      + (f", first {fails[0]}" if fails else ""))
    bad = vect_model(2, cfg.caps.window, cfg.caps.dim_cap).with_cone(corrupted_cone, "corrupted cones")
    rep = verify_axioms(bad, budget=3, seed=cfg.seed, tr3_pairs=10)
    sec.check("control: cones with a zeroed connecting map are rejected", not rep.ok,
              ", ".join(f"{k} fails" for k in sorted(rep.failures) if rep.failures[k]))
    return sec


def abelianization_checks(cfg: RunConfig, maps_per_fixture: int = 20) -> Section:
    sec = Section("Abelian envelope: Yoneda embedding, kernels, cokernels and the semisimple case")
    V = VectCategory(2, cfg.caps.dim_cap)
    fixtures = [("vect", V, list(V.objects()))]
    for build in (vect_model, dual_model):
        M = build(2, cfg.caps.window, cfg.caps.dim_cap)
        fixtures.append((M.name, M.cat, list(M.objects)))
    for name, cat, objects in fixtures:
        ab = Abelianization(cat)
        y = verify_yoneda(ab, objects)
        sec.check(f"{name}: Yoneda bijection on all object pairs", y.ok, f"{y.checked.get('yoneda bijection', 0)} pairs")
        reps = [representable(cat, X) for X in objects]
        nonzero = [F for F, X in zip(reps, objects) if cat.hom_dim(X, X)]
        pairs = [(F, G) for F in nonzero for G in nonzero]
        seeds = sample_maps(ab, pairs, 4, seed=cfg.seed)
        extra = [cokernel_pres(t)[0] for t in seeds if ab.hom_dim(t.source, t.target)]
        pool = nonzero + extra
        maps = sample_maps(ab, [(F, G) for F in pool for G in pool], maps_per_fixture, seed=cfg.seed)
        rng = random.Random(cfg.seed)
        rng.shuffle(maps)
        maps = maps[:max(maps_per_fixture, 20)]
        rep = verify_abelian(ab, maps, reps + extra, objects)
        counts = ", ".join(f"{k} {v}" for k, v in rep.checked.items())
        sec.check(f"{name}: kernel and cokernel universal properties on {len(maps)} maps", rep.ok, counts)
    col = semisimple_collapse(V, max_dim=2)
    sec.check("vect: every presentation is representable and homs agree", col.ok,
              f"{col.matched}/{col.presentations} matched, classes by dimension {dict(sorted(col.classes.items()))}")
    return sec


def _pair_class_count(m: int, S: list[int]) -> int:
    """Number of classes of pairs (x, s) in Z/m × S, by direct enumeration of the relation."""
    pairs = [(a, s) for a in range(m) for s in S]
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (x, s) in enumerate(pairs):
        for j, (y, t) in enumerate(pairs):
            if any((u * (t * x - s * y)) % m == 0 for u in S):
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(pairs))})


def module_localization(cfg: RunConfig) -> Section:
    sec = Section("Localization of rings and modules and its adjunction")
    cap = cfg.caps.module_order_cap
    for m, members, expected in ((6, (1, 3), 2), (4, (1, 2), 1)):
        A = FinCommRing.integers_mod(m)
        S = mult_set(A, members, close=True)
        F = localize_ring(A, S)
        oracle = _pair_class_count(m, sorted(S.members))
        elems = " ".join(F.label(c) for c in F.ring.elements)
        sec.check(f"Z/{m} localized at {sorted(S.members)} has order {expected}", F.order == expected == oracle,
                  f"order {F.order}, pair enumeration {oracle}, elements {elems}")
        rep = verify_localization_adjunction(A, S, cap)
        sec.info(f"Z/{m}: modules of order <= {cap}", f"{rep.modules} over the ring, {rep.fraction_modules} over the fractions")
        for name in rep.checks:
            sec.check(f"Z/{m}: {name}", rep.checks[name], rep.witnesses.get(name, ""))
        sec.info(f"Z/{m}: local modules", ", ".join(rep.local_modules))
    return sec


@dataclass(frozen=True)
class Criterion:
    key: int
    run: Callable[[RunConfig], Section]
    limit: float | None


CRITERIA = (
    Criterion(1, fraction_oracle_agreement, 10.0),
    Criterion(2, local_object_agreement, 60.0),
    Criterion(3, verdier_restriction_agreement, 120.0),
    Criterion(4, bousfield_consistency, 120.0),
    Criterion(5, triangulated_axioms, 300.0),
    Criterion(6, abelianization_checks, 300.0),
    Criterion(7, module_localization, 30.0),
)


def run_criterion(c: Criterion, cfg: RunConfig) -> tuple[Section, float]:
    t = time.perf_counter()
    sec = c.run(cfg)
    return sec, time.perf_counter() - t


def run_suite(cfg: RunConfig, only: tuple[int, ...] = ()) -> tuple[Report, dict[int, float]]:
    from .cli import report_header

    report = Report("suite", report_header(cfg))
    timings: dict[int, float] = {}
    for c in CRITERIA:
        if only and c.key not in only:
            continue
        sec, dt = run_criterion(c, cfg)
        report.sections.append(sec)
        timings[c.key] = dt
    return report, timings
