"""Line-oriented text formats for categories, algebras, models and rings.

Every file is a sequence of directives, one per line, with ``#`` comments.
Tokens are separated by whitespace, so every parse error can point at the
exact line and column of the offending token.

Category (``.cat``)::

    category I2
    objects X Y
    morphism s X Y          # id, source, target
    compose g f gf          # g∘f = gf
    identity X 1_X          # optional; missing identities are added as 1_<object>
    set sigma s             # a named designated set

Algebra (``.alg``), optionally followed by modules and complexes::

    algebra F2[x]/(x^2)
    modulus 2
    basis 1 x
    unit 1 0
    product x 1 = 0 1       # b_i * b_j as a coefficient vector; missing products are zero
    module M 2
    action M x = 0 0 1 0    # row-major matrix of the right action of a basis element
    complex C 0 M M         # lowest degree, then one module per degree
    differential C 0 = 0 1 0 0

Model (``.model``)::

    model K^b(proj A)
    algebra dual.alg        # path relative to the model file, or a built-in algebra
    window 1
    dim_cap 2
    projective A 1 0        # name and idempotent e of the indecomposable projective e·A

Ring (``.ring``)::

    ring Z/6
    elements 0 1 2 3 4 5
    zero 0
    one 1
    add 0 : 0 1 2 3 4 5     # row of the addition table, by element label
    mul 0 : 0 0 0 0 0 0
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

import numpy as np

from .complexes import ChainComplex, FinAlgebra, FinModule, dual_numbers, field_algebra, product_algebra
from .fincat import FinCategory, Morphism
from .linalg import Matrix, check_prime
from .modloc import FinCommRing

FIXTURE_ENV = "FRACCAT_FIXTURES"


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "<input>", line: int = 0, column: int = 0):
        self.message, self.path, self.line, self.column = message, path, line, column
        super().__init__(f"{path}:{line}:{column}: {message}")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def resolve(path: str) -> Path:
    """A path as given if it exists, otherwise the same name inside the fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    base = fixture_dir()
    parts = p.parts
    if parts and parts[0] == "fixtures":
        cand = base.joinpath(*parts[1:])
        if cand.exists():
            return cand
    cand = base / p.name
    if cand.exists():
        return cand
    raise ParseError(f"no such file (also looked in {base})", str(path), 0, 0)


def _lines(text: str) -> Iterator[list[Token]]:
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [Token(m.group(), ln, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            yield toks


class _Reader:
    def __init__(self, text: str, path: str):
        self.path = path
        self.lines = list(_lines(text))

    def error(self, tok: Token | None, message: str) -> ParseError:
        if tok is None:
            return ParseError(message, self.path, 0, 0)
        return ParseError(message, self.path, tok.line, tok.column)

    def arity(self, toks: list[Token], n: int, at_least: bool = False) -> None:
        k = len(toks) - 1
        if k < n or (k > n and not at_least):
            raise self.error(toks[0], f"'{toks[0].text}' takes {'at least ' if at_least else ''}{n} argument(s), got {k}")

    def integer(self, tok: Token) -> int:
        try:
            return int(tok.text)
        except ValueError:
            raise self.error(tok, f"expected an integer, got '{tok.text}'") from None

    def split_eq(self, toks: list[Token]) -> tuple[list[Token], list[Token]]:
        for k, t in enumerate(toks):
            if t.text in ("=", ":"):
                return toks[1:k], toks[k + 1:]
        raise self.error(toks[0], f"'{toks[0].text}' needs '=' or ':'")


def _read(path: str | Path) -> tuple[str, str]:
    p = resolve(str(path))
    try:
        return p.read_text(encoding="utf-8"), str(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(str(exc), str(path), 0, 0) from None


# ---------------------------------------------------------------------------
# categories


@dataclass
class CategoryFile:
    category: FinCategory
    sets: dict[str, tuple[str, ...]] = field(default_factory=dict)
    added_identities: tuple[str, ...] = ()


def parse_category(text: str, path: str = "<input>") -> CategoryFile:
    r = _Reader(text, path)
    name = ""
    objects: list[str] = []
    mors: dict[str, tuple[str, str, Token]] = {}
    ids: dict[str, str] = {}
    comp: dict[tuple[str, str], tuple[str, Token]] = {}
    comp_lines: list[list[Token]] = []
    sets: dict[str, tuple[str, ...]] = {}
    set_tokens: dict[str, list[Token]] = {}
    for toks in r.lines:
        head = toks[0].text
        if head == "category":
            name = " ".join(t.text for t in toks[1:])
        elif head in ("objects", "object"):
            for t in toks[1:]:
                if t.text in objects:
                    raise r.error(t, f"duplicate object '{t.text}'")
                objects.append(t.text)
        elif head == "morphism":
            r.arity(toks, 3)
            mid, s, d = toks[1:]
            if mid.text in mors:
                raise r.error(mid, f"duplicate morphism '{mid.text}'")
            for t in (s, d):
                if t.text not in objects:
                    raise r.error(t, f"unknown object '{t.text}'")
            mors[mid.text] = (s.text, d.text, mid)
        elif head == "identity":
            r.arity(toks, 2)
            x, i = toks[1:]
            if x.text not in objects:
                raise r.error(x, f"unknown object '{x.text}'")
            if i.text not in mors:
                raise r.error(i, f"unknown morphism '{i.text}'")
            ids[x.text] = i.text
        elif head == "compose":
            r.arity(toks, 3)
            comp_lines.append(toks)
        elif head == "set":
            r.arity(toks, 1, at_least=True)
            sets[toks[1].text] = tuple(t.text for t in toks[2:])
            set_tokens[toks[1].text] = toks[2:]
        else:
            raise r.error(toks[0], f"unknown directive '{head}'")
    if not objects:
        raise r.error(None, "no objects declared")
    added = []
    for x in objects:
        if x in ids:
            continue
        cand = f"1_{x}"
        if cand in mors:
            if mors[cand][0] != x or mors[cand][1] != x:
                raise r.error(mors[cand][2], f"'{cand}' looks like the identity of {x} but is not an endomorphism")
        else:
            mors[cand] = (x, x, Token(cand, 0, 0))
            added.append(cand)
        ids[x] = cand
    for sname, toks in set_tokens.items():
        for t in toks:
            if t.text not in mors:
                raise r.error(t, f"unknown morphism '{t.text}' in set '{sname}'")
    for toks in comp_lines:
        g, f, gf = toks[1:]
        for t in toks[1:]:
            if t.text not in mors:
                raise r.error(t, f"unknown morphism '{t.text}'")
        if mors[g.text][0] != mors[f.text][1]:
            raise r.error(g, f"'{g.text}' and '{f.text}' are not composable")
        comp[(g.text, f.text)] = (gf.text, gf)
    table = {k: v[0] for k, v in comp.items()}
    # unit laws are filled in unless a triple says otherwise
    for m, (s, d, _) in mors.items():
        table.setdefault((m, ids[s]), m)
        table.setdefault((ids[d], m), m)
    morphisms = [Morphism(m, s, d) for m, (s, d, _) in mors.items()]
    C = FinCategory(objects, morphisms, ids, table, name=name or Path(path).stem)
    return CategoryFile(C, sets, tuple(added))


def load_category(path: str | Path) -> CategoryFile:
    text, shown = _read(path)
    return parse_category(text, shown)


def dump_category(C: FinCategory, sets: dict[str, tuple[str, ...]] | None = None) -> str:
    out = [f"category {C.name}" if C.name else "", "objects " + " ".join(C.objects)]
    out = [line for line in out if line]
    for m in C.morphisms:
        out.append(f"morphism {m.id} {m.src} {m.dst}")
    for x in C.objects:
        out.append(f"identity {x} {C.identity(x)}")
    for (g, f), h in sorted(C.composition.items(), key=lambda kv: (C.index(kv[0][0]), C.index(kv[0][1]))):
        if C.is_identity(f) and h == g or C.is_identity(g) and h == f:
            continue
        out.append(f"compose {g} {f} {h}")
    for name, members in (sets or {}).items():
        out.append(f"set {name} " + " ".join(members))
    return "\n".join(out) + "\n"


def designated(cf: CategoryFile, spec: str) -> tuple[str, ...]:
    """A named set from the file, or a comma separated list of morphism ids."""
    if spec in cf.sets:
        return cf.sets[spec]
    ids = tuple(s for s in (x.strip() for x in spec.split(",")) if s)
    for m in ids:
        if not cf.category.has_morphism(m):
            raise ParseError(f"unknown morphism '{m}' in designated set", "--sigma", 1, spec.find(m) + 1)
    return ids


# ---------------------------------------------------------------------------
# algebras, modules and complexes


@dataclass
class AlgebraFile:
    algebra: FinAlgebra
    modules: dict[str, FinModule] = field(default_factory=dict)
    complexes: dict[str, ChainComplex] = field(default_factory=dict)


def builtin_algebra(name: str, p: int) -> FinAlgebra | None:
    if name in ("field", "vect", "f"):
        return field_algebra(p)
    if name in ("dual", "dual-numbers"):
        return dual_numbers(p)
    if name in ("product", "fxf"):
        return product_algebra(p, 2)
    return None


def parse_algebra(text: str, path: str = "<input>") -> AlgebraFile:
    r = _Reader(text, path)
    name, p, labels, unit = "", None, None, None
    products: list[tuple[list[Token], list[Token]]] = []
    mod_decl: list[list[Token]] = []
    actions: list[tuple[list[Token], list[Token]]] = []
    cx_decl: list[list[Token]] = []
    diffs: list[tuple[list[Token], list[Token]]] = []
    for toks in r.lines:
        head = toks[0].text
        if head == "algebra":
            name = " ".join(t.text for t in toks[1:])
        elif head == "modulus":
            r.arity(toks, 1)
            p = r.integer(toks[1])
            try:
                check_prime(p)
            except ValueError:
                raise r.error(toks[1], f"modulus {p} is not prime") from None
            mod_tok = toks[1]
        elif head == "basis":
            r.arity(toks, 1, at_least=True)
            labels = [t.text for t in toks[1:]]
        elif head == "unit":
            unit = toks[1:]
        elif head == "product":
            products.append(r.split_eq(toks))
        elif head == "module":
            r.arity(toks, 2)
            mod_decl.append(toks)
        elif head == "action":
            actions.append(r.split_eq(toks))
        elif head == "complex":
            r.arity(toks, 2, at_least=True)
            cx_decl.append(toks)
        elif head == "differential":
            diffs.append(r.split_eq(toks))
        else:
            raise r.error(toks[0], f"unknown directive '{head}'")
    if p is None:
        raise r.error(None, "missing 'modulus' header")
    if labels is None:
        raise r.error(None, "missing 'basis'")
    d = len(labels)
    index = {lab: k for k, lab in enumerate(labels)}

    def vector(toks: list[Token], n: int, where: Token) -> list[int]:
        if len(toks) != n:
            raise r.error(toks[0] if toks else where, f"expected {n} entries, got {len(toks)}")
        return [r.integer(t) % p for t in toks]

    if unit is None:
        raise r.error(None, "missing 'unit'")
    unit_v = vector(unit, d, mod_tok)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for lhs, rhs in products:
        if len(lhs) != 2:
            raise r.error(lhs[0] if lhs else rhs[0], "'product' needs two basis labels before '='")
        for t in lhs:
            if t.text not in index:
                raise r.error(t, f"unknown basis element '{t.text}'")
        mult[index[lhs[0].text], index[lhs[1].text]] = vector(rhs, d, lhs[0])
    A = FinAlgebra(p, labels, mult, unit_v, name=name or Path(path).stem)
    bad = A.violations()
    if bad:
        raise r.error(None, f"not a unital associative algebra: {bad[0]}")
    dims = {}
    acts: dict[str, list] = {}
    for toks in mod_decl:
        dims[toks[1].text] = r.integer(toks[2])
        acts[toks[1].text] = [None] * d
    for lhs, rhs in actions:
        if len(lhs) != 2:
            raise r.error(lhs[0] if lhs else rhs[0], "'action' needs a module name and a basis label")
        mname, b = lhs
        if mname.text not in dims:
            raise r.error(mname, f"unknown module '{mname.text}'")
        if b.text not in index:
            raise r.error(b, f"unknown basis element '{b.text}'")
        n = dims[mname.text]
        acts[mname.text][index[b.text]] = Matrix(np.array(vector(rhs, n * n, b), dtype=np.int64).reshape(n, n), p)
    modules = {}
    for toks in mod_decl:
        mname = toks[1].text
        n = dims[mname]
        mats = [m if m is not None else Matrix.zeros(n, n, p) for m in acts[mname]]
        M = FinModule(A, n, mats)
        if M.violations():
            raise r.error(toks[0], f"module '{mname}' violates the module axioms: {M.violations()[0]}")
        modules[mname] = M
    complexes = {}
    terms: dict[str, tuple[int, list[FinModule], Token]] = {}
    for toks in cx_decl:
        lo = r.integer(toks[2])
        mods = []
        for t in toks[3:]:
            if t.text not in modules:
                raise r.error(t, f"unknown module '{t.text}'")
            mods.append(modules[t.text])
        terms[toks[1].text] = (lo, mods, toks[0])
    dmaps: dict[str, dict[int, Matrix]] = {k: {} for k in terms}
    dtoks: dict[tuple[str, int], Token] = {}
    for lhs, rhs in diffs:
        if len(lhs) != 2:
            raise r.error(lhs[0] if lhs else rhs[0], "'differential' needs a complex name and a degree")
        cname, deg = lhs
        if cname.text not in terms:
            raise r.error(cname, f"unknown complex '{cname.text}'")
        lo, mods, _ = terms[cname.text]
        n = r.integer(deg)
        if not lo <= n < lo + len(mods) - 1:
            raise r.error(deg, f"degree {n} has no outgoing differential")
        rows, cols = mods[n + 1 - lo].dim, mods[n - lo].dim
        dtoks[(cname.text, n)] = rhs[0] if rhs else deg
        dmaps[cname.text][n] = Matrix(np.array(vector(rhs, rows * cols, deg), dtype=np.int64).reshape(rows, cols), p)
    for cname, (lo, mods, tok) in terms.items():
        ds = [dmaps[cname].get(n, Matrix.zeros(mods[n + 1 - lo].dim, mods[n - lo].dim, p))
              for n in range(lo, lo + len(mods) - 1)]
        try:
            X = ChainComplex(A, lo, mods, ds, label=cname)
        except ValueError as exc:
            raise r.error(tok, str(exc)) from None
        bad = X.violations()
        if bad:
            kind, where = bad[0]
            at = dtoks.get((cname, where), tok) if isinstance(where, int) else tok
            raise r.error(at, f"complex '{cname}' is not a complex of modules: {kind} in degree {where}"
                          if isinstance(where, int) else f"complex '{cname}' is not a complex of modules: {kind}")
        complexes[cname] = X
    return AlgebraFile(A, modules, complexes)


def load_algebra(path: str | Path, p: int = 2) -> AlgebraFile:
    A = builtin_algebra(str(path), p)
    if A is not None:
        return AlgebraFile(A)
    text, shown = _read(path)
    return parse_algebra(text, shown)


def _fmt(v) -> str:
    return " ".join(str(int(x)) for x in np.asarray(v).flat)


def dump_algebra(A: FinAlgebra) -> str:
    out = [f"algebra {A.name}", f"modulus {A.p}", "basis " + " ".join(A.labels), "unit " + _fmt(A.unit)]
    for i, a in enumerate(A.labels):
        for j, b in enumerate(A.labels):
            if A.mult[i, j].any():
                out.append(f"product {a} {b} = {_fmt(A.mult[i, j])}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# models


@dataclass
class ModelFile:
    name: str
    algebra: AlgebraFile
    window: int
    dim_cap: int
    projectives: list[tuple[str, tuple[int, ...]]]


def parse_model(text: str, path: str = "<input>", p: int = 2) -> ModelFile:
    r = _Reader(text, path)
    name, alg, window, dim_cap = "", None, None, None
    proj: list[tuple[str, list[Token], Token]] = []
    for toks in r.lines:
        head = toks[0].text
        if head == "model":
            name = " ".join(t.text for t in toks[1:])
        elif head == "algebra":
            r.arity(toks, 1)
            ref = toks[1]
            target = ref.text
            if builtin_algebra(target, p) is None:
                target = str(Path(path).parent / target) if not Path(target).is_absolute() else target
            try:
                alg = load_algebra(target, p)
            except ParseError as exc:
                if exc.line == 0:
                    raise r.error(ref, f"cannot load algebra '{ref.text}': {exc.message}") from None
                raise
        elif head == "window":
            r.arity(toks, 1)
            window = r.integer(toks[1])
            if window < 0:
                raise r.error(toks[1], "window must be non-negative")
        elif head == "dim_cap":
            r.arity(toks, 1)
            dim_cap = r.integer(toks[1])
            if dim_cap < 1:
                raise r.error(toks[1], "dim_cap must be positive")
        elif head == "projective":
            r.arity(toks, 2, at_least=True)
            proj.append((toks[1].text, toks[2:], toks[0]))
        else:
            raise r.error(toks[0], f"unknown directive '{head}'")
    if alg is None:
        raise r.error(None, "missing 'algebra'")
    A = alg.algebra
    projectives = []
    for pname, vec, tok in proj:
        if len(vec) != A.dim:
            raise r.error(tok, f"idempotent of '{pname}' needs {A.dim} entries")
        e = tuple(r.integer(t) % A.p for t in vec)
        if not A.is_idempotent(e) or not any(e):
            raise r.error(vec[0], f"{e} is not a nonzero idempotent")
        projectives.append((pname, e))
    if not projectives:
        projectives = [("A", tuple(A.unit))]
    return ModelFile(name or Path(path).stem, alg, 1 if window is None else window, 2 if dim_cap is None else dim_cap,
                     projectives)


def load_model(path: str | Path, p: int = 2) -> ModelFile:
    if not Path(str(path)).suffix and not Path(str(path)).exists():
        path = f"{path}.model"
    text, _ = _read(path)
    return parse_model(text, str(resolve(str(path))), p)


# ---------------------------------------------------------------------------
# rings


def parse_ring(text: str, path: str = "<input>") -> FinCommRing:
    r = _Reader(text, path)
    name, labels, zero, one = "", None, None, None
    rows: dict[str, dict[str, tuple[list[Token], list[Token]]]] = {"add": {}, "mul": {}}
    for toks in r.lines:
        head = toks[0].text
        if head == "ring":
            name = " ".join(t.text for t in toks[1:])
        elif head == "elements":
            r.arity(toks, 1, at_least=True)
            labels = [t.text for t in toks[1:]]
        elif head in ("zero", "one"):
            r.arity(toks, 1)
            if head == "zero":
                zero = toks[1]
            else:
                one = toks[1]
        elif head in ("add", "mul"):
            lhs, rhs = r.split_eq(toks)
            if len(lhs) != 1:
                raise r.error(toks[0], f"'{head}' needs one row label before ':'")
            rows[head][lhs[0].text] = (lhs, rhs)
        else:
            raise r.error(toks[0], f"unknown directive '{head}'")
    if labels is None:
        raise r.error(None, "missing 'elements'")
    index = {lab: k for k, lab in enumerate(labels)}
    n = len(labels)

    def elem(t: Token) -> int:
        if t.text not in index:
            raise r.error(t, f"unknown element '{t.text}'")
        return index[t.text]

    tables = {}
    for op in ("add", "mul"):
        T = np.zeros((n, n), dtype=np.int64)
        for lab in labels:
            if lab not in rows[op]:
                raise r.error(None, f"'{op}' row for '{lab}' is missing")
            lhs, rhs = rows[op][lab]
            if len(rhs) != n:
                raise r.error(lhs[0], f"row needs {n} entries, got {len(rhs)}")
            T[index[lab]] = [elem(t) for t in rhs]
        for lab in rows[op]:
            if lab not in index:
                raise r.error(rows[op][lab][0][0], f"unknown element '{lab}'")
        tables[op] = T
    z = elem(zero) if zero is not None else 0
    o = elem(one) if one is not None else 1 % n
    R = FinCommRing(tables["add"], tables["mul"], z, o, name=name or Path(path).stem, labels=labels)
    bad = R.violations()
    if bad:
        raise r.error(None, f"not a commutative ring: {bad[0][0]} at {bad[0][1]}")
    return R


def load_ring(spec: str) -> FinCommRing:
    """``z<m>`` for the integers mod m, otherwise a ring file."""
    m = re.fullmatch(r"[zZ](?:/)?(\d+)", spec)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ParseError("modulus must be positive", "--ring", 1, 2)
        return FinCommRing.integers_mod(k)
    text, shown = _read(spec)
    return parse_ring(text, shown)


def dump_ring(R: FinCommRing) -> str:
    out = [f"ring {R.name}", "elements " + " ".join(R.labels), f"zero {R.labels[R.zero]}", f"one {R.labels[R.one]}"]
    for op, T in (("add", R.add), ("mul", R.mul)):
        for x in R.elements:
            out.append(f"{op} {R.labels[x]} : " + " ".join(R.labels[int(v)] for v in T[x]))
    return "\n".join(out) + "\n"


def parse_int_list(spec: str, what: str) -> list[int]:
    out = []
    pos = 0
    for part in spec.split(","):
        s = part.strip()
        if s:
            try:
                out.append(int(s))
            except ValueError:
                raise ParseError(f"expected an integer, got '{s}'", what, 1, pos + 1) from None
        pos += len(part) + 1
    return out


__all__ = [
    "AlgebraFile", "CategoryFile", "FIXTURE_ENV", "ModelFile", "ParseError", "designated", "dump_algebra",
    "dump_category", "dump_ring", "fixture_dir", "load_algebra", "load_category", "load_model", "load_ring",
    "parse_algebra", "parse_category", "parse_int_list", "parse_model", "parse_ring", "resolve",
]
