"""Small named categories, posets up to isomorphism, and algebra models used by tests and the CLI."""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterator

from .complexes import FinAlgebra, dual_numbers, field_algebra, product_algebra
from .fincat import FinCategory, Morphism, poset_category
from .triangulated import TriangulatedModel, kb_model


def interval() -> FinCategory:
    """X --σ--> Y."""
    return poset_category(["X", "Y"], {("X", "Y"): "σ"}, name="I2")


def chain3() -> FinCategory:
    """X --xy--> Y --τ--> Z and the composite."""
    return poset_category(["X", "Y", "Z"], {("X", "Y"): "xy", ("Y", "Z"): "τ"}, name="P3")


def chain_apex() -> FinCategory:
    """X → Y → Y' with Y → Y' the designated arrow."""
    return poset_category(["X", "Y", "Y'"], {("X", "Y"): "α", ("Y", "Y'"): "σ"}, name="X->Y->Y'")


def span() -> FinCategory:
    """σ: X → Y and f: X → Z with nothing else."""
    return poset_category(["X", "Y", "Z"], {("X", "Y"): "σ", ("X", "Z"): "f"}, name="span")


def parallel_pair() -> FinCategory:
    """Two arrows a, b: X ⇉ Y."""
    mors = [Morphism("1_X", "X", "X"), Morphism("1_Y", "Y", "Y"), Morphism("a", "X", "Y"), Morphism("b", "X", "Y")]
    comp = {("1_X", "1_X"): "1_X", ("1_Y", "1_Y"): "1_Y"}
    for m in ("a", "b"):
        comp[(m, "1_X")] = m
        comp[("1_Y", m)] = m
    return FinCategory(["X", "Y"], mors, {"X": "1_X", "Y": "1_Y"}, comp, name="X=>Y")


def corrupted_interval() -> FinCategory:
    """I2 with σ∘1_X mis-set to 1_Y."""
    C = interval()
    comp = dict(C.composition)
    comp[("σ", "1_X")] = "1_Y"
    return FinCategory(C.objects, C.morphisms, C.identities, comp, name="I2 (corrupted)")


CATEGORIES = {
    "interval": interval,
    "chain3": chain3,
    "chain-apex": chain_apex,
    "span": span,
    "parallel": parallel_pair,
}


def _closure(n: int, rel: set[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    rel = set(rel)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if (i, k) in rel and (k, j) in rel:
                    rel.add((i, j))
    return frozenset(rel)


def posets(n: int) -> list[frozenset[tuple[int, int]]]:
    """Strict partial orders on n points, one per isomorphism class, in a fixed order."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    seen: set = set()
    out = []
    for bits in product((0, 1), repeat=len(pairs)):
        # every poset has a linear extension, so upper-triangular relations suffice
        rel = _closure(n, {pq for pq, b in zip(pairs, bits) if b})
        if any((j, i) in rel for (i, j) in rel):
            continue
        canon = min(tuple(sorted((perm[i], perm[j]) for i, j in rel)) for perm in permutations(range(n)))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(frozenset(canon))
    return out


def poset_fixture(n: int, rel: frozenset[tuple[int, int]]) -> FinCategory:
    names = [chr(ord("A") + i) for i in range(n)]
    cover = {(i, j) for (i, j) in rel if not any((i, k) in rel and (k, j) in rel for k in range(n))}
    arrows = {(names[i], names[j]): f"{names[i].lower()}{names[j].lower()}" for (i, j) in sorted(cover)}
    tag = ",".join(f"{names[i]}<{names[j]}" for i, j in sorted(cover)) or "discrete"
    return poset_category(names, arrows, name=f"poset[{n}:{tag}]")


def poset_fixtures(max_objects: int = 4) -> Iterator[FinCategory]:
    for n in range(1, max_objects + 1):
        for rel in posets(n):
            yield poset_fixture(n, rel)


def designated_subsets(C: FinCategory) -> Iterator[tuple[str, ...]]:
    """Every set of non-identity morphisms, smallest first."""
    arrows = [m.id for m in C.morphisms if not C.is_identity(m.id)]
    for k in range(len(arrows) + 1):
        yield from combinations(arrows, k)


# ---------------------------------------------------------------------------
# algebra models


def idempotent_algebra(p: int = 2) -> tuple[FinAlgebra, tuple[int, ...]]:
    """F_p × F_p with e = (1, 0)."""
    return product_algebra(p, 2), (1, 0)


def vect_model(p: int = 2, window: int = 1, dim_cap: int = 2) -> TriangulatedModel:
    A = field_algebra(p)
    return kb_model(A, [("F", A.regular_module())], [(1,)], window, dim_cap, name=f"K^b(vect F{p})")


def dual_model(p: int = 2, window: int = 1, dim_cap: int = 2) -> TriangulatedModel:
    D = dual_numbers(p)
    return kb_model(D, [("A", D.regular_module())], [(1, 0)], window, dim_cap, name=f"K^b(proj F{p}[x]/(x^2))")


def product_model(p: int = 2, window: int = 1, dim_cap: int = 2) -> TriangulatedModel:
    """K^b(proj F_p × F_p) with P1 = e2·A (killed by e = (1,0)) and P2 = e1·A."""
    A, _ = idempotent_algebra(p)
    P1, P2 = A.projective((0, 1)), A.projective((1, 0))
    return kb_model(A, [("P1", P1), ("P2", P2)], [(1, 0), (0, 1)], window, dim_cap, name=f"K^b(proj F{p}xF{p})")


MODELS = {
    "vect": vect_model,
    "dual": dual_model,
    "product": product_model,
}
