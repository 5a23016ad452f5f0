"""Command-line front end.

Every command writes a structured text report (see :mod:`fraccat.report`) and
exits 0 when every check passes, 1 when some check fails, and 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .abelianization import (
    Abelianization,
    cokernel_pres,
    representable,
    sample_maps,
    semisimple_collapse,
    universal_cohomological,
    verify_abelian,
    verify_yoneda,
)
from .complexes import CapsTooSmall, VectCategory
from .config import DEFAULT_SEED, Caps, RunConfig
from .fincat import (
    find_left_adjoint,
    inclusion_functor,
    local_object_criteria,
    local_objects,
    localization_functors,
    path_localization_oracle,
    validate_category,
)
from .formats import (
    CategoryFile,
    ParseError,
    designated,
    load_algebra,
    load_category,
    load_model,
    load_ring,
    parse_int_list,
)
from .fractions import CalculusFails, build_fraction_category, check_calculus_left, saturation
from .linalg import NotPrime
from .modloc import localize_ring, mult_set, verify_localization_adjunction
from .report import Report
from .triangulated import (
    NotThick,
    ThickSubcat,
    TriangulatedModel,
    bousfield_harness,
    check_thick,
    find_localization,
    gamma_triangle,
    kb_model,
    perp_left,
    perp_right,
    recollement_from_idempotent,
    restriction_hom_dim,
    thick_closure,
    verdier_quotient,
    verify_axioms,
)


def report_header(cfg: RunConfig) -> dict[str, object]:
    head: dict[str, object] = {"version": __version__, "seed": cfg.seed, "p": cfg.p, "caps": cfg.caps.describe()}
    if cfg.inputs:
        head["inputs"] = " ".join(cfg.inputs)
    for k, v in cfg.options:
        if v is not None and v is not False:
            head[k] = ",".join(map(str, v)) if isinstance(v, tuple) else v
    return head


# ---------------------------------------------------------------------------
# finite categories


def _category(cfg: RunConfig) -> CategoryFile:
    return load_category(cfg.inputs[0])


def _sigma(cf: CategoryFile, cfg: RunConfig) -> tuple[str, ...]:
    spec = cfg.option("sigma")
    if spec is None:
        raise ParseError("--sigma is required", "--sigma", 0, 0)
    return designated(cf, spec)


def _require_valid(rep: Report, cf: CategoryFile) -> bool:
    v = validate_category(cf.category)
    sec = rep.section("Category axioms")
    sec.info("category", f"{cf.category.name}: {len(cf.category.objects)} objects, {len(cf.category.morphisms)} morphisms")
    if cf.added_identities:
        sec.info("identities added", " ".join(cf.added_identities))
    if v.valid:
        sec.check("identities, typing, unit laws and associativity", True)
    for kind, w in v.violations:
        sec.check(kind, False, " ".join(map(str, w)))
    return v.valid


def cmd_check_category(cfg: RunConfig, rep: Report) -> None:
    cf = _category(cfg)
    if _require_valid(rep, cf):
        sec = rep.section("Hom-set sizes")
        C = cf.category
        sec.table(["", *C.objects], [[x, *(len(C.hom(x, y)) for y in C.objects)] for x in C.objects])


def _lf_section(rep: Report, C, sig) -> bool:
    lf = check_calculus_left(C, sig)
    sec = rep.section("Left fraction axioms")
    sec.info("designated", " ".join(sig) or "(identities only)")
    if lf.notice:
        sec.info("note", lf.notice)
    for name, label in (("lf1", "LF1 identities and composites"), ("lf2", "LF2 completion of spans"),
                        ("lf3", "LF3 equalization")):
        ok = getattr(lf, name)
        sec.check(label, ok, "" if ok else f"witness {lf.witnesses[name]}")
    return lf.ok


def cmd_check_lf(cfg: RunConfig, rep: Report) -> None:
    cf = _category(cfg)
    if _require_valid(rep, cf):
        _lf_section(rep, cf.category, _sigma(cf, cfg))


def cmd_localize(cfg: RunConfig, rep: Report) -> None:
    cf = _category(cfg)
    if not _require_valid(rep, cf):
        return
    C, sig = cf.category, _sigma(cf, cfg)
    if not _lf_section(rep, C, sig):
        return
    frac = build_fraction_category(C, sig)
    F = frac.category
    sec = rep.section("Category of fractions")
    sec.info("classes", len(frac.classes))
    sec.table(["", *C.objects], [[x, *(len(F.hom(x, y)) for y in C.objects)] for x in C.objects])
    sec.add("hom-sets:")
    for x in C.objects:
        for y in C.objects:
            members = " ".join(F.hom(x, y))
            sec.add(f"  {x} -> {y}: {members or '(empty)'}")
    sec.check("fraction category satisfies the category axioms", validate_category(F).valid)
    inv = [m for m in sig if not F.is_iso(frac.functor.on_mor(m))]
    sec.check("quotient functor inverts the designated morphisms", not inv, ", ".join(inv))
    cap = cfg.caps.path_len_cap
    O = path_localization_oracle(C, sig, cap)
    sec = rep.section("Agreement with the path localization")
    sec.info("path length cap", cap)
    sec.check("path enumeration stabilized", O.stabilized)
    bad = [(x, y, len(F.hom(x, y)), O.counts.get((x, y), 0)) for x in C.objects for y in C.objects
           if len(F.hom(x, y)) != O.counts.get((x, y), 0)]
    sec.check("hom-set sizes agree", not bad, "; ".join(f"{x}->{y}: {a} vs {b}" for x, y, a, b in bad))


def cmd_local_objects(cfg: RunConfig, rep: Report) -> None:
    cf = _category(cfg)
    if not _require_valid(rep, cf):
        return
    C = cf.category
    if cfg.option("sigma") is not None:
        sig = _sigma(cf, cfg)
        sec = rep.section("Objects local for the designated morphisms")
        sec.info("designated", " ".join(sig))
        sec.info("local objects", " ".join(local_objects(C, sig)) or "(none)")
        D = C.full_subcategory(local_objects(C, sig))
        res = find_left_adjoint(inclusion_functor(D, C)) if D.objects else None
        sec.info("inclusion of local objects has a left adjoint", bool(res))
    Ls = localization_functors(C)
    sec = rep.section("Five characterisations of local objects agree")
    sec.info("localization functors found", len(Ls))
    for L, eta, keep in Ls:
        verdicts = {x: local_object_criteria(L, eta, x) for x in C.objects}
        agree = all(len(set(v)) == 1 for v in verdicts.values())
        local = [x for x, v in verdicts.items() if all(v)]
        sec.check(f"image {{{', '.join(keep)}}}", agree,
                  "local: " + (" ".join(local) or "(none)")
                  + ("" if agree else "; " + ", ".join(f"{x} {v}" for x, v in verdicts.items() if len(set(v)) != 1)))


def cmd_saturate(cfg: RunConfig, rep: Report) -> None:
    cf = _category(cfg)
    if not _require_valid(rep, cf):
        return
    C, sig = cf.category, _sigma(cf, cfg)
    O = path_localization_oracle(C, sig, cfg.caps.path_len_cap)
    by_paths = sorted((m.id for m in C.morphisms if O.category.is_iso(O.functor.on_mor(m.id))), key=C.index)
    sec = rep.section("Saturation of the designated morphisms")
    sec.info("designated", " ".join(sig))
    sec.check("path enumeration stabilized", O.stabilized)
    sec.info("inverted in the path localization", " ".join(by_paths))
    try:
        sat = saturation(C, sig)
    except CalculusFails as exc:
        sec.check("saturation via the category of fractions", False, f"fraction axioms fail: {exc.args[0].summary()}")
        return
    sec.info("inverted in the category of fractions", " ".join(sat.ordered()))
    sec.check("both constructions invert the same morphisms", sat.ordered() == by_paths)
    sec.check("saturation contains the designated morphisms", set(sig) <= set(sat.members))
    sec.check("saturation is idempotent", saturation(C, sat).members == sat.members)


# ---------------------------------------------------------------------------
# triangulated models


def _model(cfg: RunConfig) -> TriangulatedModel:
    mf = load_model(cfg.inputs[0], cfg.p)
    window = cfg.option("window_override")
    dim_cap = cfg.option("dim_cap_override")
    A = mf.algebra.algebra
    indec = [(name, A.projective(e)) for name, e in mf.projectives]
    idems = [e for _, e in mf.projectives]
    M = kb_model(A, indec, idems, mf.window if window is None else window, mf.dim_cap if dim_cap is None else dim_cap,
                 name=mf.name)
    M.__dict__["_named"] = mf.algebra.complexes
    return M


def _object(M: TriangulatedModel, label: str) -> int:
    named = M.__dict__.get("_named", {})
    if label in named:
        i = M.index_of(named[label])
        if i is None:
            loc = M.locate(named[label])
            if loc is None:
                raise ParseError(f"complex '{label}' lies outside the model caps", "--gen", 0, 0)
            i = loc.index
        return i
    for i in range(len(M)):
        if M.label(i) == label:
            return i
    try:
        i = int(label)
    except ValueError:
        raise ParseError(f"no object labelled '{label}' (try kb-build to list labels)", "--gen", 0, 0) from None
    if not 0 <= i < len(M):
        raise ParseError(f"object index {i} out of range", "--gen", 0, 0)
    return i


def _thick(cfg: RunConfig, M: TriangulatedModel) -> ThickSubcat:
    gens = cfg.option("gen") or []
    return thick_closure(M, [_object(M, g) for g in gens])


def cmd_kb_build(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    sec = rep.section("Model of the homotopy category")
    sec.info("model", M.name)
    sec.info("algebra", f"{M.cat.algebra.name}, dimension {M.cat.algebra.dim} over F_{M.p}")
    sec.info("window", M.window)
    sec.info("dim_cap", M.dim_cap)
    sec.info("objects", len(M))
    bad = [M.label(i) for i, X in enumerate(M.objects) if X.violations()]
    sec.check("every object is a complex of modules", not bad, ", ".join(bad))
    dup = [(M.label(i), M.label(j)) for i, j in M.pairs() if i < j and M.cat.find_iso(M.objects[i], M.objects[j])]
    sec.check("objects are pairwise non-isomorphic", not dup, ", ".join(f"{a} ~ {b}" for a, b in dup[:3]))
    sec = rep.section("Objects and endomorphism dimensions")
    sec.table(["index", "label", "dim End", "shift orbit"],
              [[i, M.label(i), M.hom_dim(X, X), M.orbit[i]] for i, X in enumerate(M.objects)])


def cmd_verify_tr(cfg: RunConfig, rep: Report) -> None:
    from .triangulated import corrupted_cone

    M = _model(cfg)
    if cfg.option("corrupt"):
        M = M.with_cone(corrupted_cone, f"{M.name} with corrupted cones")
    r = verify_axioms(M, budget=cfg.caps.tr4_budget, seed=cfg.seed, tr3_pairs=cfg.option("tr3_pairs"))
    titles = {"TR1": "TR1 identity and cone triangles are exact",
              "TR2": "TR2 rotated triangles are exact",
              "TR3": "TR3 commuting squares extend to triangle maps",
              "TR4": "TR4 octahedra exist (sampled)"}
    for ax in ("TR1", "TR2", "TR3", "TR4"):
        sec = rep.section(titles[ax])
        fails = r.failures.get(ax, [])
        sec.info("model", M.name)
        sec.check(f"{r.checked.get(ax, 0)} checked", not fails, f"{len(fails)} failures" if fails else "")
        for w in fails[:5]:
            sec.add(f"  witness: {w}")


def cmd_thick(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    S = _thick(cfg, M)
    sec = rep.section("Thick closure")
    sec.info("generators", " ".join(M.label(i) for i in S.generators) or "(none)")
    sec.info("members", len(S.members))
    for lab in S.labels():
        sec.add(f"  {lab}")
    sec.check("no cone escaped the model caps", not S.escaped, "; ".join(S.escaped[:3]))
    try:
        check_thick(M, S.members)
        closed = True
    except NotThick:
        closed = False
    sec.check("closed under shifts, cones and summands", closed)


def cmd_verdier(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    S = _thick(cfg, M)
    Q = verdier_quotient(M, S, seed=cfg.seed)
    sec = rep.section("Verdier quotient")
    sec.info("killed subcategory", f"{len(S.members)} objects generated by "
             + (" ".join(M.label(i) for i in S.generators) or "(none)"))
    sec.check("designated morphisms form a multiplicative system compatible with shift", Q.verdict.ok,
              f"{Q.verdict.checked} samples" + (f", {Q.verdict.witnesses}" if not Q.verdict.ok else ""))
    sec.check("local approximations stabilized", Q.stabilized())
    sec.info("objects becoming zero", len(Q.kernel_objects()))
    table = Q.hom_table()
    sec.add("hom dimensions (source index, target index: dim):")
    for (i, j), d in sorted(table.items()):
        if d:
            sec.add(f"  {i} {j}: {d}")
    e = cfg.option("e")
    if e is not None:
        e = tuple(e)
        sec = rep.section("Agreement with restriction along the idempotent")
        sec.info("idempotent", e)
        bad = [(i, j) for (i, j), d in sorted(table.items())
               if d != restriction_hom_dim(M.objects[i], M.objects[j], e)]
        sec.check(f"hom dimensions agree on {len(table)} pairs", not bad, ", ".join(f"({i},{j})" for i, j in bad[:5]))


def cmd_perp(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    S = _thick(cfg, M)
    for title, fn in (("Right orthogonal", perp_right), ("Left orthogonal", perp_left)):
        sec = rep.section(f"{title} of the thick subcategory")
        try:
            P = fn(M, S)
        except NotThick as exc:
            sec.check("orthogonal is thick", False, str(exc))
            continue
        sec.check("orthogonal is thick", True, f"{len(P.members)} objects")
        for lab in P.labels():
            sec.add(f"  {lab}")


def cmd_bousfield(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    S = _thick(cfg, M)
    v = bousfield_harness(M, S)
    names = {1: "an exact localization functor with kernel S exists",
             2: "the inclusion of S has a right adjoint",
             3: "every object sits in a triangle with ends in S and its right orthogonal",
             4: "the quotient functor has a right adjoint",
             5: "the right orthogonal of S maps isomorphically to the quotient",
             6: "the right orthogonal is reflective with left orthogonal S"}
    sec = rep.section("Bousfield localization conditions")
    for k in sorted(v.conditions):
        sec.info(f"({k}) {names[k]}", f"{v.conditions[k]}" + (f" [{v.witnesses[k]}]" if v.witnesses.get(k) and
                                                                 not v.conditions[k] else ""))
    sec.check("all six conditions agree", v.consistent)
    if v.localization is not None:
        sec.check("kernel and image form an orthogonal pair", v.orthogonal_pair)


def cmd_gamma(cfg: RunConfig, rep: Report) -> None:
    M = _model(cfg)
    S = _thick(cfg, M)
    data = find_localization(M, S)
    sec = rep.section("Acyclic-local triangles")
    if not data.ok:
        sec.check("localization exists", False, f"no local approximation at {M.label(data.failed_at)}")
        return
    for i in range(len(M)):
        g = gamma_triangle(M, data, S, i)
        gl = M.label(g.gamma.index) + (f"[{g.gamma.shift}]" if g.gamma.shift else "") if g.gamma else "outside"
        sec.check(f"{M.label(i)}: acyclic part {gl}, local part {M.label(g.local)}", g.ok,
                  f"{g.comparisons} comparisons" + ("" if g.unique_comparisons else ", comparison not unique"))


def cmd_recollement_idem(cfg: RunConfig, rep: Report) -> None:
    A = load_algebra(cfg.inputs[0], cfg.p).algebra
    e = cfg.option("e")
    if e is None:
        raise ParseError("--e is required", "--e", 0, 0)
    if len(e) != A.dim:
        raise ParseError(f"idempotent needs {A.dim} entries", "--e", 1, 1)
    R = recollement_from_idempotent(A, e, cfg.caps.window, cfg.caps.dim_cap)
    sec = rep.section("Recollement from an idempotent")
    sec.info("algebra", A.name)
    sec.info("idempotent", tuple(R.e))
    for name, M in (("quotient side", R.T_prime), ("middle", R.T), ("corner side", R.T_second)):
        sec.info(name, f"{M.name}, {len(M)} objects")
    for name in R.checks:
        sec.check(name, R.checks[name], R.witnesses.get(name, ""))


def cmd_abelianize(cfg: RunConfig, rep: Report) -> None:
    if cfg.inputs[0] == "vect":
        cat = VectCategory(cfg.p, cfg.caps.dim_cap)
        objects, name, model = list(cat.objects()), cat.name, None
    else:
        model = _model(cfg)
        cat, objects, name = model.cat, list(model.objects), model.name
    ab = Abelianization(cat)
    sec = rep.section("Yoneda embedding")
    sec.info("ambient", name)
    y = verify_yoneda(ab, objects)
    sec.check("hom-set bijection on all object pairs", y.ok, f"{y.checked.get('yoneda bijection', 0)} pairs")
    reps = [representable(cat, X) for X in objects]
    nonzero = [F for F, X in zip(reps, objects) if cat.hom_dim(X, X)]
    seeds = sample_maps(ab, [(F, G) for F in nonzero for G in nonzero], 4, seed=cfg.seed)
    extra = [cokernel_pres(t)[0] for t in seeds if ab.hom_dim(t.source, t.target)]
    pool = nonzero + extra
    count = cfg.option("maps") or 20
    maps = sample_maps(ab, [(F, G) for F in pool for G in pool], count, seed=cfg.seed)[:max(count, 1)]
    r = verify_abelian(ab, maps, reps + extra, objects)
    sec = rep.section("Kernels and cokernels of coherent functors")
    for k, n in r.checked.items():
        sec.check(k, k not in r.failures, f"{n} checked")
    if model is not None:
        t = universal_cohomological(model, limit=cfg.option("triangles") or 40, seed=cfg.seed)
        sec = rep.section("Representable functor is cohomological")
        for k, n in t.report.checked.items():
            sec.check(k, k not in t.report.failures, f"{n} checked")
    if cfg.inputs[0] == "vect":
        col = semisimple_collapse(cat, max_dim=min(cfg.caps.dim_cap, 2))
        sec = rep.section("Semisimple collapse")
        sec.check("every presentation is isomorphic to a representable", col.matched == col.presentations,
                  f"{col.matched}/{col.presentations}")
        sec.check("hom dimensions are products of dimensions", not col.hom_mismatches)


def cmd_modloc(cfg: RunConfig, rep: Report) -> None:
    ring_spec = cfg.option("ring")
    mult = cfg.option("mult")
    if ring_spec is None or mult is None:
        raise ParseError("--ring and --mult are required", "modloc", 0, 0)
    A = load_ring(ring_spec)
    given = {int(x) % A.n for x in mult}
    S = mult_set(A, given, close=True)
    F = localize_ring(A, S)
    sec = rep.section("Ring of fractions")
    sec.info("ring", A.name)
    sec.info("multiplicative set", " ".join(A.labels[s] for s in sorted(S.members)))
    if S.members != given:
        sec.info("added by multiplicative closure", " ".join(A.labels[s] for s in sorted(S.members - given)))
    sec.add(f"order {F.order}")
    sec.info("elements", " ".join(F.label(c) for c in F.ring.elements))
    sec.check("ring axioms hold", not F.ring.violations())
    sec.check("members of the multiplicative set become units", F.inverts())
    cap = cfg.caps.module_order_cap
    r = verify_localization_adjunction(A, S, cap)
    sec = rep.section("Module localization adjunction")
    sec.info("module order cap", cap)
    sec.info("modules", f"{r.modules} over {A.name}, {r.fraction_modules} over the ring of fractions")
    for name in r.checks:
        sec.check(name, r.checks[name], r.witnesses.get(name, ""))
    sec.info("local modules", ", ".join(r.local_modules) or "(none)")


def cmd_suite(cfg: RunConfig, rep: Report) -> None:
    from .suite import CRITERIA, run_criterion

    only = tuple(cfg.option("only") or ())
    for c in CRITERIA:
        if only and c.key not in only:
            continue
        sec, dt = run_criterion(c, cfg)
        rep.sections.append(sec)
        print(f"criterion {c.key}: {'PASS' if sec.passed else 'FAIL'} in {dt:.1f} s", file=sys.stderr)


COMMANDS: dict[str, tuple[Callable[[RunConfig, Report], None], str, str]] = {
    "check-category": (cmd_check_category, "category", "validate a finite category file"),
    "check-lf": (cmd_check_lf, "category", "check the left fraction axioms for a designated set"),
    "localize": (cmd_localize, "category", "build the category of fractions and compare with path localization"),
    "local-objects": (cmd_local_objects, "category", "find localization functors and compare local-object tests"),
    "saturate": (cmd_saturate, "category", "compute the saturation of a designated set"),
    "kb-build": (cmd_kb_build, "model", "enumerate a model of the bounded homotopy category"),
    "verify-tr": (cmd_verify_tr, "model", "check the triangulated category axioms on a model"),
    "thick": (cmd_thick, "model", "thick closure of generators"),
    "verdier": (cmd_verdier, "model", "Verdier quotient by a thick subcategory"),
    "perp": (cmd_perp, "model", "left and right orthogonals of a thick subcategory"),
    "bousfield": (cmd_bousfield, "model", "compare the six Bousfield localization conditions"),
    "gamma": (cmd_gamma, "model", "acyclic-local triangles of a localization"),
    "recollement-idem": (cmd_recollement_idem, "algebra", "recollement attached to an idempotent"),
    "abelianize": (cmd_abelianize, "model", "checks on the abelian envelope (use 'vect' for vector spaces)"),
    "modloc": (cmd_modloc, "", "localize a finite commutative ring and verify the module adjunction"),
    "suite": (cmd_suite, "", "run the acceptance suite"),
}


def _int_list(spec: str, what: str) -> list[int]:
    return parse_int_list(spec, what)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraccat", description="Localization of finite and triangulated categories.")
    parser.add_argument("--version", action="version", version=f"fraccat {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="prime for built-in algebras (default 2)")
    common.add_argument("--window", type=int, default=None, help="degree window")
    common.add_argument("--dim-cap", type=int, default=None, help="per-degree dimension cap")
    common.add_argument("--module-order-cap", type=int, default=8)
    common.add_argument("--path-len-cap", type=int, default=8)
    common.add_argument("--tr4-budget", type=int, default=50)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, kind, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if kind:
            sp.add_argument("input", help=f"{kind} file (or fixture name)")
        if kind == "category":
            sp.add_argument("--sigma", default=None, help="named set or comma separated morphism ids")
        if kind == "model" and name != "kb-build":
            sp.add_argument("--gen", action="append", default=None, help="generator label or named complex")
        if name in ("verdier", "recollement-idem"):
            sp.add_argument("--e", default=None, help="idempotent coefficients, comma separated")
        if name == "verify-tr":
            sp.add_argument("--corrupt", action="store_true", help="replace cones by a broken construction")
            sp.add_argument("--tr3-pairs", type=int, default=None, help="sample this many morphisms for TR3")
        if name == "abelianize":
            sp.add_argument("--maps", type=int, default=20)
            sp.add_argument("--triangles", type=int, default=40)
        if name == "modloc":
            sp.add_argument("--ring", required=True, help="z<m> or a ring file")
            sp.add_argument("--mult", required=True, help="members of the multiplicative set, comma separated")
        if name == "suite":
            sp.add_argument("--only", default=None, help="comma separated criterion numbers")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts: list[tuple[str, object]] = []
    if getattr(ns, "sigma", None) is not None:
        opts.append(("sigma", ns.sigma))
    if getattr(ns, "gen", None):
        opts.append(("gen", tuple(ns.gen)))
    if getattr(ns, "e", None) is not None:
        opts.append(("e", tuple(_int_list(ns.e, "--e"))))
    for name in ("corrupt", "tr3_pairs", "maps", "triangles", "ring"):
        if getattr(ns, name, None) not in (None, False):
            opts.append((name, getattr(ns, name)))
    if getattr(ns, "mult", None) is not None:
        opts.append(("mult", tuple(_int_list(ns.mult, "--mult"))))
    if getattr(ns, "only", None):
        opts.append(("only", tuple(_int_list(ns.only, "--only"))))
    if ns.window is not None:
        opts.append(("window_override", ns.window))
    if ns.dim_cap is not None:
        opts.append(("dim_cap_override", ns.dim_cap))
    try:
        caps = Caps(window=1 if ns.window is None else ns.window, dim_cap=2 if ns.dim_cap is None else ns.dim_cap,
                    module_order_cap=ns.module_order_cap, path_len_cap=ns.path_len_cap, tr4_budget=ns.tr4_budget)
        inputs = (ns.input,) if getattr(ns, "input", None) is not None else ()
        return RunConfig(ns.command, inputs, ns.p, caps, ns.seed, ns.output, tuple(opts))
    except NotPrime as exc:
        raise ParseError(str(exc), "--p", 1, 1) from None
    except ValueError as exc:
        raise ParseError(str(exc), "caps", 1, 1) from None


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns the exit code and the rendered report."""
    rep = Report(cfg.command, report_header(cfg))
    COMMANDS[cfg.command][0](cfg, rep)
    return (0 if rep.passed else 1), rep.render()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, text = run(cfg)
    except ParseError as exc:
        print(f"input error: {exc.path}:{exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return 2
    except CapsTooSmall as exc:
        print(f"input error: caps too small: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
        print(f"{'PASS' if code == 0 else 'FAIL'}: report written to {cfg.output}")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
