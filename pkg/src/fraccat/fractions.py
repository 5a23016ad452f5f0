"""Calculus of left fractions on finite categories.

A left fraction from X to Y is a roof ``X --α--> Y' <--σ-- Y`` with σ in Σ.
Two roofs are equivalent when they become equal after pushing both along
morphisms into a common apex with denominator still in Σ; the relation is
closed symmetrically and transitively with union-find.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .fincat import (
    FinCategory,
    FinFunctor,
    MorphismSet,
    find_left_adjoint,
    local_objects,
    morphism_set,
)


class SourceTargetMismatch(ValueError):
    pass


class NotComposable(ValueError):
    pass


class LF2CompletionMissing(ValueError):
    pass


class CalculusFails(ValueError):
    def __init__(self, report: "LFReport"):
        super().__init__(report.summary())
        self.report = report


@dataclass(frozen=True)
class LeftFraction:
    alpha: str
    sigma: str

    def source(self, C: FinCategory) -> str:
        return C.src(self.alpha)

    def apex(self, C: FinCategory) -> str:
        return C.dst(self.alpha)

    def target(self, C: FinCategory) -> str:
        return C.src(self.sigma)

    def key(self, C: FinCategory) -> tuple[int, int]:
        return C.index(self.alpha), C.index(self.sigma)

    def render(self, C: FinCategory) -> str:
        return f"{self.source(C)} --{self.alpha}--> {self.apex(C)} <--{self.sigma}-- {self.target(C)}"


@dataclass(frozen=True)
class FractionClass:
    representative: LeftFraction
    members: tuple[LeftFraction, ...]
    source: str
    target: str

    @property
    def id(self) -> str:
        return f"[{self.representative.alpha}|{self.representative.sigma}]"

    def __contains__(self, f: LeftFraction) -> bool:
        return f in self.members


@dataclass
class LFReport:
    lf1: bool = True
    lf2: bool = True
    lf3: bool = True
    witnesses: dict[str, tuple] = field(default_factory=dict)
    notice: str = ""

    @property
    def ok(self) -> bool:
        return self.lf1 and self.lf2 and self.lf3

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        parts = []
        for name in ("lf1", "lf2", "lf3"):
            verdict = "pass" if getattr(self, name) else f"fail {self.witnesses[name]}"
            parts.append(f"{name.upper()} {verdict}")
        return ", ".join(parts)


def _normalize(C: FinCategory, sigma) -> tuple[MorphismSet, str]:
    S, added = morphism_set(C, sigma).with_identities()
    notice = "identities were added to the designated set" if added else ""
    return S, notice


def lf2_completions(C: FinCategory, S: MorphismSet, s: str, a: str):
    """All (a', s') with s' in Σ and a'∘s = s'∘a, for s: X → X' in Σ and a: X → Y."""
    y = C.dst(a)
    for s2 in S.ordered():
        if C.src(s2) != y:
            continue
        w = C.dst(s2)
        target = C.compose(s2, a)
        for a2 in C.hom(C.dst(s), w):
            if C.compose(a2, s) == target:
                yield a2, s2


def check_calculus_left(C: FinCategory, sigma: Iterable[str] | MorphismSet) -> LFReport:
    """Exhaustive check of the three left-fraction axioms; failures carry the first witness."""
    S, notice = _normalize(C, sigma)
    rep = LFReport(notice=notice)
    members = S.ordered()
    for s in members:
        for t in members:
            if C.src(t) == C.dst(s) and C.compose(t, s) not in S:
                rep.lf1 = False
                rep.witnesses["lf1"] = (t, s)
                break
        if not rep.lf1:
            break
    for s in members:
        for m in C.morphisms:
            if m.src != C.src(s):
                continue
            if next(lf2_completions(C, S, s, m.id), None) is None:
                rep.lf2 = False
                rep.witnesses["lf2"] = (s, m.id)
                break
        if not rep.lf2:
            break
    for s in members:
        x = C.dst(s)
        for y in C.objects:
            hom = C.hom(x, y)
            for a in hom:
                for b in hom:
                    if a == b or C.compose(a, s) != C.compose(b, s):
                        continue
                    if not any(
                        C.src(t) == y and C.compose(t, a) == C.compose(t, b) for t in members
                    ):
                        rep.lf3 = False
                        rep.witnesses["lf3"] = (a, b, s)
                        break
                if not rep.lf3:
                    break
            if not rep.lf3:
                break
        if not rep.lf3:
            break
    return rep


def check_calculus_right(C: FinCategory, sigma: Iterable[str] | MorphismSet) -> LFReport:
    """Right fractions are left fractions in the opposite category."""
    members = sigma.members if isinstance(sigma, MorphismSet) else sigma
    Cop = C.opposite()
    return check_calculus_left(Cop, MorphismSet(Cop, frozenset(members)))


def fractions_between(C: FinCategory, S: MorphismSet, x: str, y: str) -> list[LeftFraction]:
    out = []
    for s in S.ordered():
        if C.src(s) != y:
            continue
        for a in C.hom(x, C.dst(s)):
            out.append(LeftFraction(a, s))
    out.sort(key=lambda f: f.key(C))
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[b] = a


def fraction_classes(C: FinCategory, sigma, x: str, y: str) -> list[FractionClass]:
    """Equivalence classes of roofs from x to y, ordered by representative."""
    S, _ = _normalize(C, sigma)
    fr = fractions_between(C, S, x, y)
    uf = _UnionFind(fr)
    present = set(fr)
    for f in fr:
        apex = f.apex(C)
        for z in C.objects:
            for u in C.hom(apex, z):
                us = C.compose(u, f.sigma)
                if us in S:
                    g = LeftFraction(C.compose(u, f.alpha), us)
                    if g in present:
                        uf.union(f, g)
    groups: dict[LeftFraction, list[LeftFraction]] = {}
    for f in fr:
        groups.setdefault(uf.find(f), []).append(f)
    classes = []
    for members in groups.values():
        members.sort(key=lambda f: f.key(C))
        classes.append(FractionClass(members[0], tuple(members), x, y))
    classes.sort(key=lambda c: c.representative.key(C))
    return classes


def one_step_equivalent(C: FinCategory, S: MorphismSet, f1: LeftFraction, f2: LeftFraction) -> bool:
    """The diagram relation itself: a common apex Y3 with u∘α1 = v∘α2, u∘σ1 = v∘σ2 in Σ."""
    a1, a2 = f1.apex(C), f2.apex(C)
    for z in C.objects:
        for u in C.hom(a1, z):
            for v in C.hom(a2, z):
                if (
                    C.compose(u, f1.alpha) == C.compose(v, f2.alpha)
                    and C.compose(u, f1.sigma) == C.compose(v, f2.sigma)
                    and C.compose(u, f1.sigma) in S
                ):
                    return True
    return False


def class_of(C: FinCategory, sigma, f: LeftFraction) -> FractionClass:
    for c in fraction_classes(C, sigma, f.source(C), f.target(C)):
        if f in c:
            return c
    raise ValueError(f"{f} is not a fraction for this designated set")


def fraction_equivalent(C: FinCategory, sigma, f1: LeftFraction, f2: LeftFraction) -> bool:
    if f1.source(C) != f2.source(C) or f1.target(C) != f2.target(C):
        raise SourceTargetMismatch("fractions must share source and target")
    return class_of(C, sigma, f1) == class_of(C, sigma, f2)


def _compose_with(C: FinCategory, S: MorphismSet, first: LeftFraction, second: LeftFraction, completion) -> LeftFraction:
    b2, s2 = completion
    return LeftFraction(C.compose(b2, first.alpha), C.compose(s2, second.sigma))


def compose_fractions(C: FinCategory, sigma, first: FractionClass, second: FractionClass) -> FractionClass:
    """``second ∘ first`` using the id-order-first completion of the middle cospan."""
    if first.target != second.source:
        raise NotComposable(f"{first.id} ends at {first.target}, {second.id} starts at {second.source}")
    S, _ = _normalize(C, sigma)
    f, g = first.representative, second.representative
    completion = next(lf2_completions(C, S, f.sigma, g.alpha), None)
    if completion is None:
        raise LF2CompletionMissing(f"no completion for ({f.sigma}, {g.alpha})")
    return class_of(C, S, _compose_with(C, S, f, g, completion))


def all_composites(C: FinCategory, sigma, first: FractionClass, second: FractionClass) -> set[FractionClass]:
    """Classes obtained from every member pair and every completion; one element when well defined."""
    S, _ = _normalize(C, sigma)
    out = set()
    for f in first.members:
        for g in second.members:
            for comp in lf2_completions(C, S, f.sigma, g.alpha):
                out.add(class_of(C, S, _compose_with(C, S, f, g, comp)))
    return out


@dataclass
class FractionCategory:
    category: FinCategory
    functor: FinFunctor
    classes: dict[str, FractionClass]
    report: LFReport

    def class_for(self, f: LeftFraction) -> FractionClass:
        for c in self.classes.values():
            if f in c:
                return c
        raise KeyError(f)


def build_fraction_category(C: FinCategory, sigma) -> FractionCategory:
    """Σ⁻¹C with the quotient functor α ↦ [α, id]."""
    rep = check_calculus_left(C, sigma)
    if not rep.ok:
        raise CalculusFails(rep)
    S, _ = _normalize(C, sigma)
    classes: dict[str, FractionClass] = {}
    by_pair: dict[tuple[str, str], list[FractionClass]] = {}
    lookup: dict[LeftFraction, FractionClass] = {}
    for x in C.objects:
        for y in C.objects:
            cl = fraction_classes(C, S, x, y)
            by_pair[(x, y)] = cl
            for c in cl:
                classes[c.id] = c
                for m in c.members:
                    lookup[m] = c
    mors = [(c.id, c.source, c.target) for x in C.objects for y in C.objects for c in by_pair[(x, y)]]
    ids = {x: lookup[LeftFraction(C.identity(x), C.identity(x))].id for x in C.objects}
    comp = {}
    for f in classes.values():
        for g in classes.values():
            if g.source != f.target:
                continue
            a, b = f.representative, g.representative
            completion = next(lf2_completions(C, S, a.sigma, b.alpha), None)
            if completion is None:
                raise LF2CompletionMissing(f"no completion for ({a.sigma}, {b.alpha})")
            comp[(g.id, f.id)] = lookup[_compose_with(C, S, a, b, completion)].id
    F = FinCategory(C.objects, mors, ids, comp, name=f"frac({C.name})")
    P = FinFunctor(
        C,
        F,
        {x: x for x in C.objects},
        {m.id: lookup[LeftFraction(m.id, C.identity(m.dst))].id for m in C.morphisms},
    )
    return FractionCategory(F, P, classes, rep)


def comparison_to_paths(frac: FractionCategory, oracle_category: FinCategory, oracle_functor: FinFunctor) -> FinFunctor:
    """The functor sending [α, σ] to Q(σ)⁻¹∘Q(α) in a path-quotient model."""
    C = oracle_functor.source
    O = oracle_category
    mor_map = {}
    for cid, c in frac.classes.items():
        f = c.representative
        inv = O.inverse(oracle_functor.on_mor(f.sigma))
        if inv is None:
            raise ValueError(f"{f.sigma} is not inverted by the path quotient")
        mor_map[cid] = O.compose(inv, oracle_functor.on_mor(f.alpha))
    return FinFunctor(frac.category, O, {x: x for x in C.objects}, mor_map)


def multiplicative_closure(C: FinCategory, sigma) -> MorphismSet:
    """Σ with identities and all composites of its members; C[Σ⁻¹] does not change."""
    S, _ = _normalize(C, sigma)
    members = set(S.members)
    changed = True
    while changed:
        changed = False
        for s in list(members):
            for t in list(members):
                if C.src(t) == C.dst(s):
                    ts = C.compose(t, s)
                    if ts not in members:
                        members.add(ts)
                        changed = True
    return MorphismSet(C, frozenset(members))


def saturation(C: FinCategory, sigma) -> MorphismSet:
    """All morphisms made invertible by the quotient functor.

    Σ is first closed under composition, which leaves the localization unchanged.
    """
    frac = build_fraction_category(C, multiplicative_closure(C, sigma))
    F, P = frac.category, frac.functor
    return MorphismSet(C, frozenset(m.id for m in C.morphisms if F.is_iso(P.on_mor(m.id))))


def restrict_designated(C: FinCategory, D: FinCategory, sigma) -> MorphismSet:
    S, _ = _normalize(C, sigma)
    return MorphismSet(D, frozenset(s for s in S.members if D.has_morphism(s)))


@dataclass
class SubcategoryComparison:
    functor: FinFunctor
    fully_faithful: bool
    failing_pair: tuple[str, str] | None
    hypothesis_holds: bool
    hypothesis_witness: str | None


def induced_subcategory_functor(C: FinCategory, sigma, objects: Iterable[str]) -> SubcategoryComparison:
    """Compare D[(Σ∩D)⁻¹] with C[Σ⁻¹] for the full subcategory D on ``objects``.

    Also reports whether every σ: Y → Y' in Σ with Y in D can be continued
    by some τ with τ∘σ in Σ and landing back in D.
    """
    S, _ = _normalize(C, sigma)
    D = C.full_subcategory(objects)
    SD = restrict_designated(C, D, S)
    big = build_fraction_category(C, S)
    small = build_fraction_category(D, SD)
    mor_map = {cid: big.class_for(c.representative).id for cid, c in small.classes.items()}
    J = FinFunctor(small.category, big.category, {x: x for x in D.objects}, mor_map)
    ff, pair = J.is_fully_faithful()
    witness = None
    inD = set(D.objects)
    for s in S.ordered():
        if C.src(s) not in inD:
            continue
        ok = any(
            C.dst(t) in inD and C.compose(t, s) in S
            for z in C.objects
            for t in C.hom(C.dst(s), z)
        )
        if not ok:
            witness = s
            break
    return SubcategoryComparison(J, ff, pair, witness is None, witness)


def quotient_map_bijective(frac: FractionCategory, w: str, x: str) -> bool:
    """Is C(W, X) → Σ⁻¹C(W, X), α ↦ [α, id], a bijection?"""
    C = frac.functor.source
    imgs = [frac.functor.on_mor(a) for a in C.hom(w, x)]
    return len(imgs) == len(set(imgs)) and set(imgs) == set(frac.category.hom(w, x))


def quotient_has_right_adjoint(frac: FractionCategory) -> bool:
    """Right adjoint of the quotient functor, searched as a left adjoint of its opposite."""
    return bool(find_left_adjoint(frac.functor.opposite()))


def has_local_reflections(C: FinCategory, sigma) -> bool:
    """Does every X admit η: X → X' with X' local and η inverted by the quotient?"""
    S, _ = _normalize(C, sigma)
    frac = build_fraction_category(C, S)
    local = set(local_objects(C, S))
    for x in C.objects:
        if not any(
            C.dst(e) in local and frac.category.is_iso(frac.functor.on_mor(e))
            for y in C.objects
            for e in C.hom(x, y)
        ):
            return False
    return True


__all__ = [
    "CalculusFails",
    "FractionCategory",
    "FractionClass",
    "LF2CompletionMissing",
    "LFReport",
    "LeftFraction",
    "NotComposable",
    "SourceTargetMismatch",
    "all_composites",
    "build_fraction_category",
    "check_calculus_left",
    "check_calculus_right",
    "class_of",
    "comparison_to_paths",
    "compose_fractions",
    "fraction_classes",
    "fraction_equivalent",
    "fractions_between",
    "has_local_reflections",
    "induced_subcategory_functor",
    "one_step_equivalent",
    "quotient_has_right_adjoint",
    "quotient_map_bijective",
    "multiplicative_closure",
    "saturation",
]

