"""Finite categories, functors, natural transformations and brute-force constructions.

Morphism ids are globally ordered by their position in ``FinCategory.morphisms``;
every search below walks that order and returns the first witness found.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class Morphism:
    id: str
    src: str
    dst: str


class FinCategory:
    """A finite category given by explicit tables.

    ``composition[(g, f)]`` is ``g∘f`` and is defined when ``dst(f) == src(g)``.
    The constructor does not check the axioms; use :func:`validate_category`.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[Morphism | tuple[str, str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        name: str = "",
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[Morphism, ...] = tuple(
            m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms
        )
        self.identities: dict[str, str] = dict(identities)
        self.composition: dict[tuple[str, str], str] = dict(composition)
        self.name = name
        self._mor = {m.id: m for m in self.morphisms}
        if len(self._mor) != len(self.morphisms):
            raise ValueError("duplicate morphism id")
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object id")
        self._index = {m.id: i for i, m in enumerate(self.morphisms)}
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._hom: dict[tuple[str, str], list[str]] = {(x, y): [] for x in self.objects for y in self.objects}
        for m in self.morphisms:
            if (m.src, m.dst) in self._hom:
                self._hom[(m.src, m.dst)].append(m.id)
        self._id_set = frozenset(self.identities.values())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def mor(self, m: str) -> Morphism:
        return self._mor[m]

    def src(self, m: str) -> str:
        return self._mor[m].src

    def dst(self, m: str) -> str:
        return self._mor[m].dst

    def index(self, m: str) -> int:
        return self._index[m]

    def obj_index(self, x: str) -> int:
        return self._obj_index[x]

    def has_morphism(self, m: str) -> bool:
        return m in self._mor

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, m: str) -> bool:
        return m in self._id_set

    def hom(self, x: str, y: str) -> list[str]:
        return self._hom[(x, y)]

    def compose(self, g: str, f: str) -> str:
        return self.composition[(g, f)]

    def compose_path(self, *ms: str) -> str:
        """Compose right-to-left: ``compose_path(h, g, f) == h∘g∘f``."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def inverse(self, m: str) -> str | None:
        x, y = self.src(m), self.dst(m)
        for n in self.hom(y, x):
            if self.compose(n, m) == self.identity(x) and self.compose(m, n) == self.identity(y):
                return n
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None

    def isomorphic(self, x: str, y: str) -> str | None:
        for m in self.hom(x, y):
            if self.is_iso(m):
                return m
        return None

    def opposite(self) -> "FinCategory":
        mors = [Morphism(m.id, m.dst, m.src) for m in self.morphisms]
        comp = {(f, g): h for (g, f), h in self.composition.items()}
        return FinCategory(self.objects, mors, self.identities, comp, name=f"{self.name}^op")

    def full_subcategory(self, objects: Iterable[str], name: str = "") -> "FinCategory":
        keep = set(objects)
        objs = [x for x in self.objects if x in keep]
        mors = [m for m in self.morphisms if m.src in keep and m.dst in keep]
        ids = {x: self.identities[x] for x in objs}
        ms = {m.id for m in mors}
        comp = {k: v for k, v in self.composition.items() if k[0] in ms and k[1] in ms}
        return FinCategory(objs, mors, ids, comp, name=name or f"{self.name}|{','.join(objs)}")

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.morphisms:
                if g.src == f.dst:
                    yield g.id, f.id


@dataclass(frozen=True)
class MorphismSet:
    owner: FinCategory
    members: frozenset

    def __post_init__(self):
        bad = [m for m in self.members if not self.owner.has_morphism(m)]
        if bad:
            raise KeyError(f"unknown morphism ids: {sorted(bad)}")

    def __contains__(self, m: str) -> bool:
        return m in self.members

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self.members)

    def ordered(self) -> list[str]:
        return sorted(self.members, key=self.owner.index)

    def with_identities(self) -> tuple["MorphismSet", bool]:
        """Σ together with all identities; the flag says whether anything was added."""
        ids = set(self.owner.identities.values())
        added = not ids <= self.members
        return MorphismSet(self.owner, self.members | ids), added


def morphism_set(C: FinCategory, members: Iterable[str] | MorphismSet) -> MorphismSet:
    if isinstance(members, MorphismSet):
        return members
    return MorphismSet(C, frozenset(members))


def identities_only(C: FinCategory) -> MorphismSet:
    return MorphismSet(C, frozenset(C.identities.values()))


class FinFunctor:
    def __init__(self, source: FinCategory, target: FinCategory, obj_map: Mapping[str, str], mor_map: Mapping[str, str]):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)

    def __call__(self, x: str) -> str:
        return self.obj_map[x]

    def on_obj(self, x: str) -> str:
        return self.obj_map[x]

    def on_mor(self, m: str) -> str:
        return self.mor_map[m]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    __hash__ = None  # type: ignore[assignment]

    def violations(self) -> list[tuple]:
        S, T = self.source, self.target
        out: list[tuple] = []
        for x in S.objects:
            if x not in self.obj_map:
                out.append(("missing-object", x))
            elif self.mor_map.get(S.identity(x)) != T.identity(self.obj_map[x]):
                out.append(("identity", x))
        for m in S.morphisms:
            fm = self.mor_map.get(m.id)
            if fm is None:
                out.append(("missing-morphism", m.id))
                continue
            if T.src(fm) != self.obj_map.get(m.src) or T.dst(fm) != self.obj_map.get(m.dst):
                out.append(("typing", m.id))
        if out:
            return out
        for g, f in S.composable_pairs():
            if self.mor_map[S.compose(g, f)] != T.compose(self.mor_map[g], self.mor_map[f]):
                out.append(("composition", (g, f)))
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """The composite ``other∘self``."""
        return FinFunctor(
            self.source,
            other.target,
            {x: other.obj_map[y] for x, y in self.obj_map.items()},
            {m: other.mor_map[n] for m, n in self.mor_map.items()},
        )

    def opposite(self) -> "FinFunctor":
        return FinFunctor(self.source.opposite(), self.target.opposite(), self.obj_map, self.mor_map)

    def is_fully_faithful(self) -> tuple[bool, tuple[str, str] | None]:
        S = self.source
        for x in S.objects:
            for y in S.objects:
                images = [self.mor_map[m] for m in S.hom(x, y)]
                target = self.target.hom(self.obj_map[x], self.obj_map[y])
                if len(set(images)) != len(images) or set(images) != set(target):
                    return False, (x, y)
        return True, None


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m.id: m.id for m in C.morphisms})


def inclusion_functor(D: FinCategory, C: FinCategory) -> FinFunctor:
    return FinFunctor(D, C, {x: x for x in D.objects}, {m.id: m.id for m in D.morphisms})


class NatTransformation:
    """``components[x]`` is a morphism ``source(x) → target(x)`` of the common target category."""

    def __init__(self, source: FinFunctor, target: FinFunctor, components: Mapping[str, str]):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def violations(self) -> list[tuple]:
        F, G = self.source, self.target
        C = F.source
        D = F.target
        out: list[tuple] = []
        for x in C.objects:
            c = self.components.get(x)
            if c is None or not D.has_morphism(c):
                out.append(("missing-component", x))
            elif D.src(c) != F(x) or D.dst(c) != G(x):
                out.append(("typing", x))
        if out:
            return out
        for m in C.morphisms:
            lhs = D.compose(G.on_mor(m.id), self.components[m.src])
            rhs = D.compose(self.components[m.dst], F.on_mor(m.id))
            if lhs != rhs:
                out.append(("naturality", m.id))
        return out

    def is_valid(self) -> bool:
        return not self.violations()


@dataclass
class ValidationReport:
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def summary(self) -> str:
        if self.valid:
            return "valid"
        return "; ".join(f"{kind} at {w}" for kind, w in self.violations)


def validate_category(C: FinCategory) -> ValidationReport:
    rep = ValidationReport()
    for x in C.objects:
        i = C.identities.get(x)
        if i is None or not C.has_morphism(i):
            rep.violations.append(("identity-missing", (x,)))
        elif C.src(i) != x or C.dst(i) != x:
            rep.violations.append(("identity-typing", (x, i)))
    for m in C.morphisms:
        if m.src not in C._obj_index or m.dst not in C._obj_index:
            rep.violations.append(("endpoint-unknown", (m.id,)))
    if rep.violations:
        return rep
    for g, f in C.composable_pairs():
        h = C.composition.get((g, f))
        if h is None or not C.has_morphism(h):
            rep.violations.append(("composite-missing", (g, f)))
        elif C.src(h) != C.src(f) or C.dst(h) != C.dst(g):
            rep.violations.append(("composite-typing", (g, f)))
    if rep.violations:
        return rep
    for m in C.morphisms:
        if C.compose(m.id, C.identity(m.src)) != m.id:
            rep.violations.append(("right-unit", (m.id, C.identity(m.src))))
        if C.compose(C.identity(m.dst), m.id) != m.id:
            rep.violations.append(("left-unit", (C.identity(m.dst), m.id)))
    for f in C.morphisms:
        for g in C.morphisms:
            if g.src != f.dst:
                continue
            gf = C.compose(g.id, f.id)
            for h in C.morphisms:
                if h.src != g.dst:
                    continue
                if C.compose(h.id, gf) != C.compose(C.compose(h.id, g.id), f.id):
                    rep.violations.append(("associativity", (h.id, g.id, f.id)))
    return rep


# ---------------------------------------------------------------------------
# constructors


def poset_category(objects: Sequence[str], arrows: Mapping[tuple[str, str], str], name: str = "") -> FinCategory:
    """Poset category from named generating relations ``arrows[(x, y)] = id`` for x < y.

    The order is the reflexive-transitive closure; composites that are not
    named get the id ``"y<-x"``.  Identities are ``"1_x"``.
    """
    objs = list(objects)
    rel = {(x, y) for (x, y) in arrows}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel and a != d:
                    rel.add((a, d))
                    changed = True
    names: dict[tuple[str, str], str] = {}
    mors: list[Morphism] = []
    for x in objs:
        names[(x, x)] = f"1_{x}"
        mors.append(Morphism(f"1_{x}", x, x))
    for x in objs:
        for y in objs:
            if (x, y) in rel:
                if (y, x) in rel:
                    raise ValueError("relations must be antisymmetric")
                mid = arrows.get((x, y), f"{y}<-{x}")
                names[(x, y)] = mid
                mors.append(Morphism(mid, x, y))
    comp = {}
    for (a, b), f in names.items():
        for (c, d), g in names.items():
            if b == c:
                comp[(g, f)] = names[(a, d)]
    return FinCategory(objs, mors, {x: f"1_{x}" for x in objs}, comp, name=name)


def concrete_category(sets: Mapping[str, int], generators: Sequence[tuple[str, str, tuple[int, ...]]], name: str = "",
                      max_morphisms: int | None = None) -> FinCategory | None:
    """Category of functions between finite sets generated by ``generators``.

    Each generator is ``(src, dst, values)`` with ``values[i]`` the image of i.
    Returns None if the closure exceeds ``max_morphisms``.
    """
    objs = list(sets)
    table: dict[tuple[str, str, tuple[int, ...]], str] = {}
    order: list[tuple[str, str, tuple[int, ...]]] = []

    def add(key):
        if key not in table:
            table[key] = ""
            order.append(key)

    for x in objs:
        add((x, x, tuple(range(sets[x]))))
    for g in generators:
        add((g[0], g[1], tuple(g[2])))
    i = 0
    while i < len(order):
        if max_morphisms is not None and len(order) > max_morphisms:
            return None
        f = order[i]
        for g in list(order[: i + 1]):
            for a, b in ((f, g), (g, f)):
                if b[1] == a[0]:
                    add((b[0], a[1], tuple(a[2][v] for v in b[2])))
        i += 1
    if max_morphisms is not None and len(order) > max_morphisms:
        return None
    ids = {}
    mors = []
    n = 0
    for key in order:
        if key[0] == key[1] and key[2] == tuple(range(sets[key[0]])):
            table[key] = f"1_{key[0]}"
            ids[key[0]] = table[key]
        else:
            table[key] = f"m{n}"
            n += 1
        mors.append(Morphism(table[key], key[0], key[1]))
    comp = {}
    for f in order:
        for g in order:
            if g[0] == f[1]:
                comp[(table[g], table[f])] = table[(f[0], g[1], tuple(g[2][v] for v in f[2]))]
    return FinCategory(objs, mors, ids, comp, name=name)


def random_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 12, name: str = "") -> FinCategory:
    """A random concrete category (functions between small sets), always valid."""
    while True:
        k = rng.randint(1, max_objects)
        objs = [chr(ord("A") + i) for i in range(k)]
        sets = {x: rng.randint(1, 3) for x in objs}
        gens = []
        for _ in range(rng.randint(1, 4)):
            a, b = rng.choice(objs), rng.choice(objs)
            gens.append((a, b, tuple(rng.randrange(sets[b]) for _ in range(sets[a]))))
        C = concrete_category(sets, gens, name=name, max_morphisms=max_morphisms)
        if C is not None:
            return C


# ---------------------------------------------------------------------------
# path localization oracle


@dataclass
class OracleResult:
    category: FinCategory
    functor: FinFunctor
    counts: dict[tuple[str, str], int]
    previous_counts: dict[tuple[str, str], int]
    complete: bool
    stabilized: bool
    max_len: int

    @property
    def non_stabilized(self) -> bool:
        return not self.stabilized


class _Enumerator:
    """Bounded coset enumeration for the free category on Mor C ⊔ Σ⁻¹.

    Nodes are classes of paths out of a fixed root; an edge labelled by a
    letter extends a path by that arrow.  Relations are imposed at every node
    and coincidences are merged, so node classes form a right congruence
    closed under left contexts.  Paths longer than ``max_len`` are never
    created.
    """

    def __init__(self, C: FinCategory, sigma: Sequence[str], max_len: int):
        self.C = C
        self.max_len = max_len
        nonid = [m.id for m in C.morphisms if not C.is_identity(m.id)]
        inv = [s for s in sigma if not C.is_identity(s)]
        self.letters: list[tuple[str, str]] = [("f", m) for m in nonid] + [("i", s) for s in inv]
        self.letter_src = {}
        self.letter_dst = {}
        for kind, m in self.letters:
            a, b = C.src(m), C.dst(m)
            self.letter_src[(kind, m)] = a if kind == "f" else b
            self.letter_dst[(kind, m)] = b if kind == "f" else a
        self.out_letters = {x: [l for l in self.letters if self.letter_src[l] == x] for x in C.objects}
        rels: dict[str, list[tuple[tuple, tuple]]] = {x: [] for x in C.objects}
        for f in nonid:
            for g in nonid:
                if C.src(g) == C.dst(f):
                    h = C.compose(g, f)
                    rhs = () if C.is_identity(h) else (("f", h),)
                    rels[C.src(f)].append(((("f", f), ("f", g)), rhs))
        for s in inv:
            rels[C.src(s)].append(((("f", s), ("i", s)), ()))
            rels[C.dst(s)].append(((("i", s), ("f", s)), ()))
        self.rels = rels
        self.parent: list[int] = []
        self.obj: list[str] = []
        self.depth: list[int] = []
        self.root: list[str] = []
        self.edges: list[dict] = []
        self.roots = {x: self._new(x, 0, x) for x in C.objects}

    def _new(self, x: str, depth: int, root: str) -> int:
        self.parent.append(len(self.parent))
        self.obj.append(x)
        self.depth.append(depth)
        self.root.append(root)
        self.edges.append({})
        return len(self.parent) - 1

    def find(self, n: int) -> int:
        while self.parent[n] != n:
            self.parent[n] = self.parent[self.parent[n]]
            n = self.parent[n]
        return n

    def step(self, n: int, letter, define: bool) -> int | None:
        n = self.find(n)
        t = self.edges[n].get(letter)
        if t is not None:
            return self.find(t)
        if not define or self.depth[n] >= self.max_len:
            return None
        t = self._new(self.letter_dst[letter], self.depth[n] + 1, self.root[n])
        self.edges[n][letter] = t
        return t

    def trace(self, n: int, word, define: bool) -> int | None:
        for letter in word:
            n = self.step(n, letter, define)
            if n is None:
                return None
        return self.find(n)

    def merge(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.depth[a] = min(self.depth[a], self.depth[b])
            for letter, t in self.edges[b].items():
                s = self.edges[a].get(letter)
                if s is None:
                    self.edges[a][letter] = t
                else:
                    queue.append((s, t))
            self.edges[b] = {}

    def live(self) -> list[int]:
        return [n for n in range(len(self.parent)) if self.find(n) == n]

    def run(self) -> None:
        i = 0
        while i < len(self.parent):
            if self.find(i) == i:
                for lhs, rhs in self.rels[self.obj[i]]:
                    if self.find(i) != i:
                        break
                    a = self.trace(i, lhs, True)
                    b = self.trace(i, rhs, True)
                    if a is not None and b is not None and a != b:
                        self.merge(a, b)
                if self.find(i) == i:
                    for letter in self.out_letters[self.obj[i]]:
                        self.step(i, letter, True)
            i += 1
        changed = True
        while changed:
            changed = False
            for n in self.live():
                if self.find(n) != n:
                    continue
                for lhs, rhs in self.rels[self.obj[n]]:
                    a = self.trace(n, lhs, False)
                    b = self.trace(n, rhs, False)
                    if a is not None and b is not None and a != b:
                        self.merge(a, b)
                        changed = True

    def complete(self) -> bool:
        for n in self.live():
            for letter in self.out_letters[self.obj[n]]:
                if letter not in self.edges[n]:
                    return False
        return True

    def words(self) -> dict[int, tuple]:
        """Shortlex representative word for every live node."""
        rep: dict[int, tuple] = {}
        for x, r in self.roots.items():
            r = self.find(r)
            rep[r] = ()
            queue = deque([r])
            while queue:
                n = queue.popleft()
                for letter in self.out_letters[self.obj[n]]:
                    t = self.edges[n].get(letter)
                    if t is None:
                        continue
                    t = self.find(t)
                    if t not in rep:
                        rep[t] = rep[n] + (letter,)
                        queue.append(t)
        return rep


def _letter_name(letter) -> str:
    kind, m = letter
    return m if kind == "f" else f"{m}^-1"


def _oracle_counts(C: FinCategory, sigma: Sequence[str], max_len: int):
    en = _Enumerator(C, sigma, max_len)
    en.run()
    counts = {(x, y): 0 for x in C.objects for y in C.objects}
    words = en.words()
    for n in words:
        counts[(en.root[n], en.obj[n])] += 1
    return en, words, counts


def path_localization_oracle(C: FinCategory, sigma: Iterable[str] | MorphismSet, max_len: int) -> OracleResult:
    """Quotient of bounded paths on Mor C ⊔ Σ⁻¹ by composition, unit and inverse relations.

    Hom-classes are computed twice, at ``max_len - 1`` and ``max_len``;
    ``stabilized`` is set when the counts agree and every class has all of its
    outgoing arrows defined, so composition is total.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    S, _ = morphism_set(C, sigma).with_identities()
    sig = S.ordered()
    _, _, prev = _oracle_counts(C, sig, max_len - 1) if max_len > 1 else (None, None, {})
    en, words, counts = _oracle_counts(C, sig, max_len)
    complete = en.complete()
    names = {}
    mors = []
    ids = {}
    for n in sorted(words, key=lambda n: (C.obj_index(en.root[n]), len(words[n]), [en.letters.index(l) for l in words[n]])):
        x, y = en.root[n], en.obj[n]
        w = words[n]
        mid = f"<{x}|{'.'.join(_letter_name(l) for l in w)}>" if w else f"<1_{x}>"
        names[n] = mid
        mors.append(Morphism(mid, x, y))
        if not w:
            ids[x] = mid
    comp = {}
    for f in words:
        for g in words:
            if en.root[g] != en.obj[f]:
                continue
            t = en.trace(f, words[g], False)
            if t is not None:
                comp[(names[g], names[f])] = names[t]
    Q = FinCategory(C.objects, mors, ids, comp, name=f"paths({C.name})")
    mor_map = {}
    for m in C.morphisms:
        r = en.find(en.roots[m.src])
        if C.is_identity(m.id):
            mor_map[m.id] = names[r]
        else:
            t = en.trace(r, (("f", m.id),), False)
            if t is not None:
                mor_map[m.id] = names[t]
    F = FinFunctor(C, Q, {x: x for x in C.objects}, mor_map)
    stabilized = complete and (not prev or prev == counts)
    return OracleResult(Q, F, counts, prev, complete, stabilized, max_len)


# ---------------------------------------------------------------------------
# adjoints, local objects, localization functors


@dataclass
class AdjointSearch:
    functor: FinFunctor | None
    unit: NatTransformation | None
    failed_at: str | None

    def __bool__(self) -> bool:
        return self.functor is not None


def _is_universal(G: FinFunctor, x: str, d: str, eta: str) -> bool:
    C, D = G.target, G.source
    for d2 in D.objects:
        targets = C.hom(x, G(d2))
        hits = [C.compose(G.on_mor(g), eta) for g in D.hom(d, d2)]
        if len(hits) != len(set(hits)) or set(hits) != set(targets):
            return False
    return True


def universal_arrow(G: FinFunctor, x: str) -> tuple[str, str] | None:
    """First pair (d, η: x → G d) through which every x → G d' factors uniquely."""
    C, D = G.target, G.source
    for d in D.objects:
        for eta in C.hom(x, G(d)):
            if _is_universal(G, x, d, eta):
                return d, eta
    return None


def find_left_adjoint(G: FinFunctor) -> AdjointSearch:
    """Left adjoint of G: D → C by exhaustive universal-arrow search, with its unit."""
    C, D = G.target, G.source
    arrows = {}
    for x in C.objects:
        ua = universal_arrow(G, x)
        if ua is None:
            return AdjointSearch(None, None, x)
        arrows[x] = ua
    obj_map = {x: arrows[x][0] for x in C.objects}
    mor_map = {}
    for m in C.morphisms:
        x, y = m.src, m.dst
        target = C.compose(arrows[y][1], m.id)
        for g in D.hom(obj_map[x], obj_map[y]):
            if C.compose(G.on_mor(g), arrows[x][1]) == target:
                mor_map[m.id] = g
                break
    F = FinFunctor(C, D, obj_map, mor_map)
    eta = NatTransformation(identity_functor(C), F.then(G), {x: arrows[x][1] for x in C.objects})
    return AdjointSearch(F, eta, None)


def precompose_bijective(C: FinCategory, s: str, x: str) -> bool:
    """Is C(dst s, x) → C(src s, x), f ↦ f∘s, a bijection?"""
    w, w2 = C.src(s), C.dst(s)
    images = [C.compose(f, s) for f in C.hom(w2, x)]
    return len(images) == len(set(images)) and set(images) == set(C.hom(w, x))


def local_objects(C: FinCategory, sigma: Iterable[str] | MorphismSet) -> list[str]:
    """Objects X with C(W', X) → C(W, X) bijective for every σ: W → W' in Σ."""
    S = morphism_set(C, sigma)
    return [x for x in C.objects if all(precompose_bijective(C, s, x) for s in S.ordered())]


@dataclass
class LocalizationCheck:
    ok: bool
    witness: str | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_localization_functor(L: FinFunctor, eta: NatTransformation | Mapping[str, str]) -> LocalizationCheck:
    """Is (L, η) a localization functor, i.e. Lη invertible and Lη = ηL objectwise?"""
    C = L.source
    if L.target is not C:
        return LocalizationCheck(False, None, "not an endofunctor")
    bad = L.violations()
    if bad:
        w = bad[0][1]
        return LocalizationCheck(False, w if isinstance(w, str) else None, f"not a functor: {bad[0][0]}")
    comps = eta.components if isinstance(eta, NatTransformation) else dict(eta)
    nt = NatTransformation(identity_functor(C), L, comps)
    for kind, w in nt.violations():
        x = w if kind != "naturality" else C.src(w)
        return LocalizationCheck(False, x, f"no valid unit: {kind}")
    for x in C.objects:
        Leta = L.on_mor(comps[x])
        if not C.is_iso(Leta):
            return LocalizationCheck(False, x, "L applied to the unit is not invertible")
        if Leta != comps[L(x)]:
            return LocalizationCheck(False, x, "L applied to the unit differs from the unit at LX")
    return LocalizationCheck(True)


def inverted_by(L: FinFunctor) -> MorphismSet:
    """The morphisms σ with Lσ invertible."""
    C = L.source
    return MorphismSet(C, frozenset(m.id for m in C.morphisms if L.target.is_iso(L.on_mor(m.id))))


def local_object_criteria(L: FinFunctor, eta: NatTransformation, x: str) -> tuple[bool, bool, bool, bool, bool]:
    """Five characterisations of L-local objects, evaluated independently.

    1. x is local for the morphisms inverted by L;
    2. C(LW, x) → C(W, x), f ↦ f∘ηW, is bijective for every W;
    3. ηx is invertible;
    4. C(W, x) → C(LW, Lx), f ↦ Lf, is bijective for every W;
    5. x ≅ LX' for some X'.
    """
    C = L.source
    S = inverted_by(L)
    c1 = all(precompose_bijective(C, s, x) for s in S.ordered())
    c2 = all(precompose_bijective(C, eta[w], x) for w in C.objects)
    c3 = C.is_iso(eta[x])
    c4 = True
    for w in C.objects:
        imgs = [L.on_mor(f) for f in C.hom(w, x)]
        if len(imgs) != len(set(imgs)) or set(imgs) != set(C.hom(L(w), L(x))):
            c4 = False
            break
    c5 = any(C.isomorphic(x, L(y)) is not None for y in C.objects)
    return c1, c2, c3, c4, c5


def localization_functors(C: FinCategory) -> list[tuple[FinFunctor, NatTransformation, tuple[str, ...]]]:
    """All localization functors arising from full subcategories whose inclusion has a left adjoint.

    Subsets are tried in size order; each hit yields L = G∘F with unit η.
    """
    out = []
    objs = C.objects
    for mask in sorted(range(1, 1 << len(objs)), key=lambda m: (bin(m).count("1"), m)):
        keep = [x for i, x in enumerate(objs) if mask >> i & 1]
        D = C.full_subcategory(keep)
        G = inclusion_functor(D, C)
        res = find_left_adjoint(G)
        if res:
            L = res.functor.then(G)
            L = FinFunctor(C, C, L.obj_map, L.mor_map)
            eta = NatTransformation(identity_functor(C), L, res.unit.components)
            out.append((L, eta, tuple(keep)))
    return out


def hom_bijections_hold(G: FinFunctor, F: FinFunctor, eta: NatTransformation) -> tuple[bool, tuple[str, str] | None]:
    """Check D(FX, Y) → C(X, GY), g ↦ Gg∘ηX, is bijective for every X in C and Y in D."""
    C, D = G.target, G.source
    for x in C.objects:
        for y in D.objects:
            imgs = [C.compose(G.on_mor(g), eta[x]) for g in D.hom(F(x), y)]
            if len(imgs) != len(set(imgs)) or set(imgs) != set(C.hom(x, G(y))):
                return False, (x, y)
    return True, None


def all_isomorphisms(C: FinCategory) -> MorphismSet:
    return MorphismSet(C, frozenset(m.id for m in C.morphisms if C.is_iso(m.id)))


def functors_equal_on_objects(F: FinFunctor, G: FinFunctor) -> bool:
    return all(F(x) == G(x) for x in F.source.objects)


def hom_table(C: FinCategory) -> dict[tuple[str, str], int]:
    return {(x, y): len(C.hom(x, y)) for x, y in product(C.objects, C.objects)}
