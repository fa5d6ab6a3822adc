"""Finite categories presented by explicit composition tables.

Objects and morphisms are opaque strings; all enumerations are sorted so
every derived construction is deterministic. A category knows, besides its
table, a generating set of morphisms together with one chosen expression of
every morphism as a composite of generators (used when representations are
built from generator data).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (
    CyclicQuiver,
    EmptySet,
    InvalidStructure,
    MissingIdentity,
    NonAssociativeTable,
    NotComposable,
    NotPartiallyOrdered,
    NotPrime,
    TooLarge,
    UnknownObject,
)
from .reports import ValidationReport

MAX_MORPHISMS_DEFAULT = 240


@dataclass(frozen=True)
class Mor:
    name: str
    src: str
    tgt: str


class FinCategory:
    """A finite category: objects, morphisms, identities, composition table.

    compose(g, f) means "g after f" and is defined exactly when
    tgt(f) == src(g).
    """

    def __init__(self, objects, morphisms, identity, compose, generators=None,
                 expressions=None, obj_labels=None, mor_labels=None, name=""):
        self.objects = tuple(sorted(objects))
        morphisms = list(morphisms)
        self.mor = {m.name: m for m in morphisms}
        self.mor_names = tuple(sorted(self.mor))
        if len(self.mor) != len(morphisms):
            raise InvalidStructure("duplicate morphism names")
        self.identity = dict(identity)
        self._compose = dict(compose)
        self.name = name
        if generators is None:
            generators = tuple(n for n in self.mor_names if not self.is_identity(n))
            expressions = {n: (n,) for n in generators}
        self.generators = tuple(generators)
        exprs = dict(expressions or {})
        for o in self.objects:
            if o in self.identity:
                exprs.setdefault(self.identity[o], ())
        self.expressions = exprs
        self.obj_labels = dict(obj_labels or {})
        self.mor_labels = dict(mor_labels or {})
        self._hom_cache: dict[tuple[str, str], tuple[str, ...]] = {}

    # ---- lookups ----

    def src(self, m: str) -> str:
        return self.mor[m].src

    def tgt(self, m: str) -> str:
        return self.mor[m].tgt

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.mor[m].src) == m and self.mor[m].src == self.mor[m].tgt

    def compose(self, g: str, f: str) -> str:
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise NotComposable(f"{g} after {f}") from None

    def hom(self, i: str, j: str) -> tuple[str, ...]:
        key = (i, j)
        if key not in self._hom_cache:
            if i not in self.objects or j not in self.objects:
                raise UnknownObject(f"{i} or {j}")
            self._hom_cache[key] = tuple(n for n in self.mor_names
                                         if self.mor[n].src == i and self.mor[n].tgt == j)
        return self._hom_cache[key]

    def endos(self, i: str) -> tuple[str, ...]:
        return self.hom(i, i)

    def composable_pairs(self):
        """All (g, f) with tgt(f) == src(g), in sorted order."""
        by_src: dict[str, list[str]] = {}
        for n in self.mor_names:
            by_src.setdefault(self.mor[n].src, []).append(n)
        for f in self.mor_names:
            for g in by_src.get(self.mor[f].tgt, ()):
                yield g, f

    def composable_triples(self):
        for g, f in self.composable_pairs():
            for h in self.mor_names:
                if self.mor[h].src == self.mor[g].tgt:
                    yield h, g, f

    def nonidentity(self):
        return tuple(n for n in self.mor_names if not self.is_identity(n))

    def __repr__(self):
        return f"FinCategory({self.name or len(self.objects)} obj, {len(self.mor)} mor)"


def validate_category(cat: FinCategory) -> ValidationReport:
    rep = ValidationReport()
    for o in cat.objects:
        e = cat.identity.get(o)
        if e is None or e not in cat.mor:
            rep.fail("missing-identity", (o,), "object has no identity morphism")
            continue
        m = cat.mor[e]
        if m.src != o or m.tgt != o:
            rep.fail("identity-endpoints", (o, e), "identity is not an endomorphism of its object")
    for n, m in sorted(cat.mor.items()):
        if m.src not in cat.objects or m.tgt not in cat.objects:
            rep.fail("unknown-endpoint", (n,), f"{m.src} -> {m.tgt}")
    if not rep.ok:
        return rep
    # totality and endpoint coherence of the table
    pairs = set()
    for g, f in cat.composable_pairs():
        pairs.add((g, f))
        c = cat._compose.get((g, f))
        if c is None:
            rep.fail("missing-composite", (g, f))
            continue
        if c not in cat.mor:
            rep.fail("unknown-composite", (g, f), c)
            continue
        if cat.mor[c].src != cat.mor[f].src or cat.mor[c].tgt != cat.mor[g].tgt:
            rep.fail("composite-endpoints", (g, f, c))
        rep.bump()
    for key in cat._compose:
        if key not in pairs:
            rep.fail("spurious-composite", key, "composition defined on a non-composable pair")
    if not rep.ok:
        return rep
    # identity laws
    for n, m in sorted(cat.mor.items()):
        if cat._compose[(n, cat.identity[m.src])] != n:
            rep.fail("right-identity", (n,))
        if cat._compose[(cat.identity[m.tgt], n)] != n:
            rep.fail("left-identity", (n,))
        rep.bump()
    # associativity on every composable triple
    for h, g, f in cat.composable_triples():
        if cat._compose[(h, cat._compose[(g, f)])] != cat._compose[(cat._compose[(h, g)], f)]:
            rep.fail("associativity", (h, g, f))
        rep.bump()
    # generator expressions really compose to their morphism
    for n, expr in cat.expressions.items():
        if n not in cat.mor:
            rep.fail("expression-unknown-morphism", (n,))
            continue
        if not expr:
            if not cat.is_identity(n):
                rep.fail("empty-expression", (n,), "only identities may have empty expressions")
            continue
        acc = expr[-1]
        ok = all(g in cat.mor for g in expr)
        if ok:
            for g in reversed(expr[:-1]):
                if cat.mor[g].src != cat.mor[acc].tgt:
                    ok = False
                    break
                acc = cat._compose[(g, acc)]
        if not ok or acc != n:
            rep.fail("expression-mismatch", (n,), "->".join(expr))
        rep.bump()
    return rep


# ---------------------------------------------------------------------------
# builders


def _freeze(cat: FinCategory) -> FinCategory:
    validate_category(cat).raise_if_failed("category construction")
    return cat


def build_category(kind: str, data: dict, max_morphisms: int = MAX_MORPHISMS_DEFAULT) -> FinCategory:
    """Construct a finite category from one of the supported presentations.

    kind: 'quiver' (free path category of an acyclic quiver), 'poset'
    (one morphism per related pair), 'monoid' (one object, multiplication
    table), or 'table' (raw objects/morphisms/identities/composites).
    """
    if kind == "quiver":
        return _from_quiver(data, max_morphisms)
    if kind == "poset":
        return _from_poset(data)
    if kind == "monoid":
        return _from_monoid(data)
    if kind == "table":
        return _from_table(data)
    raise InvalidStructure(f"unknown category kind {kind!r}")


def _from_quiver(data, max_morphisms):
    vertices = sorted(data["objects"])
    arrows = [(a, s, t) for (a, s, t) in data["arrows"]]
    for name, s, t in arrows:
        if s not in vertices or t not in vertices:
            raise UnknownObject(f"arrow {name}: {s} -> {t}")
    # acyclicity (loops are cycles of length one)
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for _, s, t in arrows:
        adj[s].append(t)
    state: dict[str, int] = {}

    def dfs(v, stack):
        state[v] = 1
        for w in adj[v]:
            if state.get(w) == 1:
                raise CyclicQuiver(" -> ".join(stack + [v, w]))
            if state.get(w, 0) == 0:
                dfs(w, stack + [v])
        state[v] = 2

    for v in vertices:
        if state.get(v, 0) == 0:
            dfs(v, [])

    # all paths; a path is a tuple of arrow names, last applied first
    mors: list[Mor] = []
    expressions: dict[str, tuple[str, ...]] = {}
    identity = {v: f"e_{v}" for v in vertices}
    for v in vertices:
        mors.append(Mor(f"e_{v}", v, v))
        expressions[f"e_{v}"] = ()
    paths: list[tuple[tuple[str, ...], str, str]] = [((a,), s, t) for a, s, t in sorted(arrows)]
    out_arrows: dict[str, list[tuple[str, str]]] = {v: [] for v in vertices}
    for a, s, t in sorted(arrows):
        out_arrows[s].append((a, t))
    frontier = list(paths)
    while frontier:
        new = []
        for p, s, t in frontier:
            for a, t2 in out_arrows[t]:
                new.append(((a,) + p, s, t2))
        paths.extend(new)
        frontier = new
        if len(paths) + len(vertices) > max_morphisms:
            raise TooLarge(f"free category exceeds {max_morphisms} morphisms")

    def path_name(p):
        return "*".join(p)

    for p, s, t in paths:
        name = path_name(p)
        if name in expressions:
            raise InvalidStructure(f"duplicate path name {name}")
        mors.append(Mor(name, s, t))
        expressions[name] = p
    path_of = {m.name: tuple(expressions[m.name]) for m in mors}
    lookup = {}
    for m in mors:
        key = (path_of[m.name], m.src)
        lookup[key] = m.name
    compose = {}
    for g in mors:
        for f in mors:
            if f.tgt != g.src:
                continue
            comp_path = path_of[g.name] + path_of[f.name]
            compose[(g.name, f.name)] = lookup[(comp_path, f.src)]
    generators = tuple(sorted(a for a, _, _ in arrows))
    return _freeze(FinCategory(vertices, mors, identity, compose,
                               generators=generators, expressions=expressions,
                               name=data.get("name", "")))


def _from_poset(data):
    elements = sorted(data["objects"])
    rel = set()
    for (a, b) in data["relations"]:
        if a not in elements or b not in elements:
            raise UnknownObject(f"relation {a} <= {b}")
        rel.add((a, b))
    for a in elements:
        rel.add((a, a))
    # transitive closure
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for c in elements:
                if (b, c) in rel and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    for (a, b) in rel:
        if a != b and (b, a) in rel:
            raise NotPartiallyOrdered(f"{a} and {b} are comparable both ways")

    def mname(a, b):
        return f"e_{a}" if a == b else f"{a}<{b}"

    mors = [Mor(mname(a, b), a, b) for (a, b) in sorted(rel)]
    identity = {a: f"e_{a}" for a in elements}
    compose = {}
    for (b, c) in sorted(rel):
        for (a, b2) in sorted(rel):
            if b2 == b:
                compose[(mname(b, c), mname(a, b))] = mname(a, c)
    # generators: covering relations; expressions by greedy chains
    strict = {(a, b) for (a, b) in rel if a != b}
    covers = {(a, b) for (a, b) in strict
              if not any((a, c) in strict and (c, b) in strict for c in elements)}
    generators = tuple(sorted(mname(a, b) for (a, b) in covers))
    expressions = {f"e_{a}": () for a in elements}
    for (a, b) in covers:
        expressions[mname(a, b)] = (mname(a, b),)
    for (a, b) in sorted(strict - covers):
        # chain through the smallest intermediate cover
        for c in elements:
            if (a, c) in covers and (c, b) in rel and c != b:
                expressions[mname(a, b)] = tuple(expressions.get(mname(c, b), (mname(c, b),))) + (mname(a, c),)
                break
    # chains may reference other non-covers; expand to generators by recursion
    def expand(entry, seen):
        out = []
        for g in entry:
            if g in generators:
                out.append(g)
            else:
                if g in seen:
                    raise InvalidStructure("cyclic expression")
                out.extend(expand(expressions[g], seen | {g}))
        return out

    for (a, b) in sorted(strict - covers):
        nm = mname(a, b)
        expressions[nm] = tuple(expand(expressions[nm], {nm}))
    return _freeze(FinCategory(elements, mors, identity, compose,
                               generators=generators, expressions=expressions,
                               name=data.get("name", "")))


def _from_monoid(data):
    elements = sorted(data["elements"])
    table = data["table"]  # dict (g, f) -> g*f, composition order
    obj = data.get("object", "*")
    unit = data.get("unit")
    if unit is None:
        for e in elements:
            if all(table.get((e, x)) == x and table.get((x, e)) == x for x in elements):
                unit = e
                break
        if unit is None:
            raise MissingIdentity("no two-sided unit in multiplication table")
    for g in elements:
        for f in elements:
            if (g, f) not in table or table[(g, f)] not in elements:
                raise InvalidStructure(f"multiplication table incomplete at ({g}, {f})")
    if not all(table[(unit, x)] == x and table[(x, unit)] == x for x in elements):
        raise MissingIdentity(f"{unit} is not a two-sided unit")
    for a, b, c in itertools.product(elements, repeat=3):
        if table[(a, table[(b, c)])] != table[(table[(a, b)], c)]:
            raise NonAssociativeTable(f"({a}, {b}, {c})")
    mors = [Mor(x, obj, obj) for x in elements]
    compose = {(g, f): table[(g, f)] for g in elements for f in elements}
    generators = tuple(x for x in elements if x != unit)
    expressions = {x: (x,) for x in generators}
    expressions[unit] = ()
    return _freeze(FinCategory([obj], mors, {obj: unit}, compose,
                               generators=generators, expressions=expressions,
                               name=data.get("name", "")))


def _from_table(data):
    objects = sorted(data["objects"])
    mors = [Mor(n, s, t) for (n, s, t) in data["morphisms"]]
    identity = dict(data["identity"])
    for o in objects:
        if o not in identity:
            raise MissingIdentity(o)
    compose = dict(data["compose"])
    cat = FinCategory(objects, mors, identity, compose,
                      generators=data.get("generators"),
                      expressions=data.get("expressions"),
                      name=data.get("name", ""))
    rep = validate_category(cat)
    if not rep.ok:
        kinds = {f.kind for f in rep.failures}
        if "associativity" in kinds:
            raise NonAssociativeTable(str(rep.failures[0].where))
        if kinds & {"missing-identity", "left-identity", "right-identity"}:
            raise MissingIdentity(str(rep.failures[0].where))
        rep.raise_if_failed("table category")
    return cat


# ---------------------------------------------------------------------------
# functors, opposites, comma categories


@dataclass
class CatFunctor:
    source: FinCategory
    target: FinCategory
    obj_map: dict
    mor_map: dict
    name: str = ""

    def on_obj(self, o):
        return self.obj_map[o]

    def on_mor(self, m):
        return self.mor_map[m]


def validate_functor(fun: CatFunctor) -> ValidationReport:
    rep = ValidationReport()
    J, I = fun.source, fun.target
    for o in J.objects:
        if fun.obj_map.get(o) not in I.objects:
            rep.fail("object-map", (o,))
    for n in J.mor_names:
        img = fun.mor_map.get(n)
        if img not in I.mor:
            rep.fail("morphism-map", (n,))
            continue
        m = J.mor[n]
        if I.src(img) != fun.obj_map.get(m.src) or I.tgt(img) != fun.obj_map.get(m.tgt):
            rep.fail("endpoint-mismatch", (n,))
        rep.bump()
    if not rep.ok:
        return rep
    for o in J.objects:
        if fun.mor_map[J.identity[o]] != I.identity[fun.obj_map[o]]:
            rep.fail("identity-not-preserved", (o,))
        rep.bump()
    for g, f in J.composable_pairs():
        if fun.mor_map[J.compose(g, f)] != I.compose(fun.mor_map[g], fun.mor_map[f]):
            rep.fail("composition-not-preserved", (g, f))
        rep.bump()
    return rep


def identity_functor(cat: FinCategory) -> CatFunctor:
    return CatFunctor(cat, cat, {o: o for o in cat.objects},
                      {m: m for m in cat.mor_names}, name="id")


def inclusion_functor(sub: FinCategory, amb: FinCategory) -> CatFunctor:
    """Inclusion of a category whose object/morphism names live in amb."""
    return CatFunctor(sub, amb, {o: o for o in sub.objects},
                      {m: m for m in sub.mor_names}, name="incl")


def full_subcategory(cat: FinCategory, objects) -> FinCategory:
    objects = sorted(objects)
    for o in objects:
        if o not in cat.objects:
            raise UnknownObject(o)
    keep = [m for m in cat.mor_names if cat.src(m) in objects and cat.tgt(m) in objects]
    mors = [cat.mor[m] for m in keep]
    identity = {o: cat.identity[o] for o in objects}
    compose = {(g, f): c for (g, f), c in cat._compose.items()
               if g in keep and f in keep}
    return _freeze(FinCategory(objects, mors, identity, compose,
                               name=f"{cat.name}|{','.join(objects)}"))


def opposite(cat: FinCategory) -> FinCategory:
    mors = [Mor(m.name, m.tgt, m.src) for m in cat.mor.values()]
    compose = {(f, g): c for (g, f), c in cat._compose.items()}
    expressions = {m: tuple(reversed(e)) for m, e in cat.expressions.items()}
    return _freeze(FinCategory(cat.objects, mors, dict(cat.identity), compose,
                               generators=cat.generators,
                               expressions=expressions,
                               name=f"{cat.name}^op"))


def comma_category(fun: CatFunctor, i) -> FinCategory:
    """The category of (j, theta: F(j) -> i); arrows are beta with
    theta' . F(beta) = theta."""
    J, I = fun.source, fun.target
    if i not in I.objects:
        raise UnknownObject(i)
    objs = []
    labels = {}
    for j in J.objects:
        for theta in I.hom(fun.on_obj(j), i):
            name = f"{j}|{theta}"
            objs.append(name)
            labels[name] = (j, theta)
    mors = []
    mor_labels = {}
    identity = {}
    compose = {}
    by_pair = {}
    for o1 in objs:
        j1, th1 = labels[o1]
        for o2 in objs:
            j2, th2 = labels[o2]
            for beta in J.hom(j1, j2):
                if I.compose(th2, fun.on_mor(beta)) == th1:
                    name = f"{beta}|{o1}>{o2}"
                    mors.append(Mor(name, o1, o2))
                    mor_labels[name] = beta
                    by_pair[(o1, o2, beta)] = name
                    if o1 == o2 and beta == J.identity[j1]:
                        identity[o1] = name
    for m1 in mors:
        for m2 in mors:
            if m1.tgt != m2.src:
                continue
            b = J.compose(mor_labels[m2.name], mor_labels[m1.name])
            compose[(m2.name, m1.name)] = by_pair[(m1.src, m2.tgt, b)]
    return _freeze(FinCategory(objs, mors, identity, compose,
                               obj_labels=labels, mor_labels=mor_labels,
                               name=f"{fun.name}/{i}"))


def under_comma_category(fun: CatFunctor, i) -> FinCategory:
    """The category of (j, theta: i -> F(j)); arrows are beta with
    F(beta) . theta = theta'."""
    J, I = fun.source, fun.target
    if i not in I.objects:
        raise UnknownObject(i)
    objs = []
    labels = {}
    for j in J.objects:
        for theta in I.hom(i, fun.on_obj(j)):
            name = f"{j}|{theta}"
            objs.append(name)
            labels[name] = (j, theta)
    mors = []
    mor_labels = {}
    identity = {}
    compose = {}
    by_pair = {}
    for o1 in objs:
        j1, th1 = labels[o1]
        for o2 in objs:
            j2, th2 = labels[o2]
            for beta in J.hom(j1, j2):
                if I.compose(fun.on_mor(beta), th1) == th2:
                    name = f"{beta}|{o1}>{o2}"
                    mors.append(Mor(name, o1, o2))
                    mor_labels[name] = beta
                    by_pair[(o1, o2, beta)] = name
                    if o1 == o2 and beta == J.identity[j1]:
                        identity[o1] = name
    for m1 in mors:
        for m2 in mors:
            if m1.tgt != m2.src:
                continue
            b = J.compose(mor_labels[m2.name], mor_labels[m1.name])
            compose[(m2.name, m1.name)] = by_pair[(m1.src, m2.tgt, b)]
    return _freeze(FinCategory(objs, mors, identity, compose,
                               obj_labels=labels, mor_labels=mor_labels,
                               name=f"{i}/{fun.name}"))


# ---------------------------------------------------------------------------
# morphism ideals


@dataclass(frozen=True)
class MorphismIdeal:
    category: FinCategory
    carrier: frozenset
    two_sided: bool
    prime: bool
    proper: bool  # nonempty, as the definition demands

    def __contains__(self, m):
        return m in self.carrier


def _ideal_flags(cat: FinCategory, carrier: frozenset):
    two_sided = True
    for g, f in cat.composable_pairs():
        c = cat.compose(g, f)
        if (g in carrier or f in carrier) and c not in carrier:
            two_sided = False
            break
    prime = True
    for g, f in cat.composable_pairs():
        if g not in carrier and f not in carrier and cat.compose(g, f) in carrier:
            prime = False
            break
    return two_sided, prime


def classify_ideal(cat: FinCategory, subset) -> MorphismIdeal:
    carrier = frozenset(subset)
    for m in carrier:
        if m not in cat.mor:
            raise UnknownObject(f"morphism {m}")
    if not carrier:
        raise EmptySet("an ideal must be a nonempty set of morphisms")
    two_sided, prime = _ideal_flags(cat, carrier)
    return MorphismIdeal(cat, carrier, two_sided, prime, True)


def endo_prime_ideal(cat: FinCategory, i) -> MorphismIdeal:
    """Mor(I) minus End(i). Empty (and flagged improper) iff the category
    has a single object; downstream quotients accept that degenerate value."""
    if i not in cat.objects:
        raise UnknownObject(i)
    endos = set(cat.endos(i))
    carrier = frozenset(n for n in cat.mor_names if n not in endos)
    two_sided, prime = _ideal_flags(cat, carrier)
    return MorphismIdeal(cat, carrier, two_sided, prime, bool(carrier))


def enumerate_prime_ideals(cat: FinCategory, cap: int = 16):
    """All nonempty two-sided prime ideals, as a sorted list of carriers."""
    n = len(cat.mor_names)
    if n > cap:
        raise TooLarge(f"{n} morphisms exceeds the enumeration cap {cap}")
    names = cat.mor_names
    pairs = [(g, f, cat.compose(g, f)) for g, f in cat.composable_pairs()]
    found = []
    for mask in range(1, 1 << n):
        carrier = frozenset(names[k] for k in range(n) if mask >> k & 1)
        ok = True
        for g, f, c in pairs:
            ing, inf, inc = g in carrier, f in carrier, c in carrier
            if (ing or inf) and not inc:
                ok = False
                break
            if not ing and not inf and inc:
                ok = False
                break
        if ok:
            found.append(carrier)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def quotient_subcategory(cat: FinCategory, ideal: MorphismIdeal) -> FinCategory:
    """Objects with surviving identities, morphisms outside the ideal."""
    if ideal.carrier and not (ideal.two_sided and ideal.prime):
        raise NotPrime("quotient needs a two-sided prime ideal")
    objects = [o for o in cat.objects if cat.identity[o] not in ideal.carrier]
    keep = [m for m in cat.mor_names if m not in ideal.carrier]
    mors = [cat.mor[m] for m in keep]
    for m in mors:
        if m.src not in objects or m.tgt not in objects:
            raise NotPrime(f"surviving morphism {m.name} has a deleted endpoint")
    identity = {o: cat.identity[o] for o in objects}
    compose = {(g, f): c for (g, f), c in cat._compose.items() if g in keep and f in keep}
    return _freeze(FinCategory(objects, mors, identity, compose,
                               name=f"{cat.name}/ideal"))


# ---------------------------------------------------------------------------
# order structure


def preorder(cat: FinCategory):
    """(relation, antisymmetric): relation is the set of pairs (i, j) with
    Hom(i, j) nonempty; antisymmetric tells whether it is a partial order."""
    rel = set()
    for i in cat.objects:
        for j in cat.objects:
            if cat.hom(i, j):
                rel.add((i, j))
    antisym = all(not (a != b and (b, a) in rel) for (a, b) in rel)
    return rel, antisym


def is_partially_ordered(cat: FinCategory) -> bool:
    return preorder(cat)[1]


def stratify(cat: FinCategory):
    """Increasing strata of minimal objects; raises NotPartiallyOrdered."""
    rel, antisym = preorder(cat)
    if not antisym:
        raise NotPartiallyOrdered(cat.name or "category")
    remaining = set(cat.objects)
    strata = []
    while remaining:
        minimal = sorted(o for o in remaining
                         if not any((p, o) in rel and p != o for p in remaining))
        if not minimal:
            break  # cannot happen for finite partial orders
        strata.append(tuple(minimal))
        remaining -= set(minimal)
    return strata, not remaining


def is_locally_trivial(cat: FinCategory) -> bool:
    return all(len(cat.endos(i)) == 1 for i in cat.objects)


@dataclass
class RootednessReport:
    partially_ordered: bool
    left_rooted: bool | None
    right_rooted: bool | None
    locally_trivial: bool
    direct: bool
    inverse: bool
    strata: list | None

    def to_json(self):
        return {
            "partially_ordered": self.partially_ordered,
            "left_rooted": self.left_rooted,
            "right_rooted": self.right_rooted,
            "locally_trivial": self.locally_trivial,
            "direct": self.direct,
            "inverse": self.inverse,
            "strata": [list(s) for s in self.strata] if self.strata is not None else None,
        }


def rootedness_report(cat: FinCategory) -> RootednessReport:
    po = is_partially_ordered(cat)
    lt = is_locally_trivial(cat)
    if not po:
        return RootednessReport(False, None, None, lt, False, False, None)
    strata, left = stratify(cat)
    _, right = stratify(opposite(cat))
    return RootednessReport(True, left, right, lt, lt and left, lt and right, strata)


# ---------------------------------------------------------------------------
# index categories for the canonical colimit/limit maps


def inflow_index_category(cat: FinCategory, ideal: MorphismIdeal, i,
                          convention: str = "comma") -> FinCategory:
    """Shape of the colimit feeding a vertex: morphisms of the ideal with
    target i. Comma convention: an arrow theta -> theta' is gamma with
    theta' . gamma = theta. Discrete convention: identities only."""
    if i not in cat.objects:
        raise UnknownObject(i)
    objs = sorted(m for m in ideal.carrier if cat.tgt(m) == i)
    labels = {o: o for o in objs}
    mors = []
    mor_labels = {}
    identity = {}
    compose = {}
    by_pair = {}
    for th in objs:
        for th2 in objs:
            for gamma in cat.hom(cat.src(th), cat.src(th2)):
                if convention == "discrete" and not (th == th2 and cat.is_identity(gamma)):
                    continue
                if cat.compose(th2, gamma) == th:
                    name = f"{gamma}|{th}>{th2}"
                    mors.append(Mor(name, th, th2))
                    mor_labels[name] = gamma
                    by_pair[(th, th2, gamma)] = name
                    if th == th2 and cat.is_identity(gamma):
                        identity[th] = name
    for m1 in mors:
        for m2 in mors:
            if m1.tgt != m2.src:
                continue
            g = cat.compose(mor_labels[m2.name], mor_labels[m1.name])
            compose[(m2.name, m1.name)] = by_pair[(m1.src, m2.tgt, g)]
    return _freeze(FinCategory(objs, mors, identity, compose,
                               obj_labels=labels, mor_labels=mor_labels,
                               name=f"inflow({i})"))


def outflow_index_category(cat: FinCategory, ideal: MorphismIdeal, i,
                           convention: str = "comma") -> FinCategory:
    """Shape of the limit fed from a vertex: morphisms of the ideal with
    source i; an arrow theta -> theta' is gamma with gamma . theta = theta'."""
    if i not in cat.objects:
        raise UnknownObject(i)
    objs = sorted(m for m in ideal.carrier if cat.src(m) == i)
    labels = {o: o for o in objs}
    mors = []
    mor_labels = {}
    identity = {}
    compose = {}
    by_pair = {}
    for th in objs:
        for th2 in objs:
            for gamma in cat.hom(cat.tgt(th), cat.tgt(th2)):
                if convention == "discrete" and not (th == th2 and cat.is_identity(gamma)):
                    continue
                if cat.compose(gamma, th) == th2:
                    name = f"{gamma}|{th}>{th2}"
                    mors.append(Mor(name, th, th2))
                    mor_labels[name] = gamma
                    by_pair[(th, th2, gamma)] = name
                    if th == th2 and cat.is_identity(gamma):
                        identity[th] = name
    for m1 in mors:
        for m2 in mors:
            if m1.tgt != m2.src:
                continue
            g = cat.compose(mor_labels[m2.name], mor_labels[m1.name])
            compose[(m2.name, m1.name)] = by_pair[(m1.src, m2.tgt, g)]
    return _freeze(FinCategory(objs, mors, identity, compose,
                               obj_labels=labels, mor_labels=mor_labels,
                               name=f"outflow({i})"))
