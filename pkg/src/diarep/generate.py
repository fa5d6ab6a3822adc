"""Seeded random instances: categories, diagrams, and representations.

Everything is driven by one random.Random so that a seed pins the whole
instance; callers that need byte-stable output just have to serialize the
returned objects deterministically. All generated objects pass their
validators by construction (diagram functoriality and representation pair
laws are rechecked by the constructors they go through).

Generation is bounded at desk scale. Asking for more than the hard caps
raises SizeBoundExceeded instead of silently clamping.
"""

from __future__ import annotations

import random

from .diagram import DiagramSpec, ring_diagram, trivial_diagram, twist_diagram
from .errors import InconsistentRelations, SizeBoundExceeded, TooLarge
from .fincat import FinCategory, build_category
from .linalg import Matrix
from .modcat import (Algebra, AlgebraMorphism, Module, dual_numbers, field_algebra,
                     free_module, module_hom_basis, monoid_algebra, product_fields,
                     zero_module)
from .rep import (Representation, build_representation, rep_biproduct,
                  rep_hom_basis, zero_representation)
from .functors import free_from_vertex

HARD_MAX_OBJECTS = 8
HARD_MAX_ARROWS = 12
HARD_MAX_DIM = 4
HARD_MAX_COUNT = 100

REP_SAMPLING_TRIES = 40

GENERATE_KINDS = ("quiver", "poset", "trivial", "ring", "twist")


def seeded_rng(seed: int) -> random.Random:
    return random.Random(int(seed))


def _check_bounds(max_objects, max_arrows, max_dim, count=1):
    if not 0 <= max_objects <= HARD_MAX_OBJECTS:
        raise SizeBoundExceeded(f"object bound {max_objects} outside 0..{HARD_MAX_OBJECTS}")
    if not 0 <= max_arrows <= HARD_MAX_ARROWS:
        raise SizeBoundExceeded(f"arrow bound {max_arrows} outside 0..{HARD_MAX_ARROWS}")
    if not 0 <= max_dim <= HARD_MAX_DIM:
        raise SizeBoundExceeded(f"dimension bound {max_dim} outside 0..{HARD_MAX_DIM}")
    if not 0 <= count <= HARD_MAX_COUNT:
        raise SizeBoundExceeded(f"instance count {count} outside 0..{HARD_MAX_COUNT}")


# ---------------------------------------------------------------------------
# categories


def random_acyclic_quiver(rng: random.Random, max_objects=4, max_arrows=5,
                          name="") -> FinCategory:
    """Free category on a random acyclic quiver.

    Arrows only go from lower to higher labels, so acyclicity is free. The
    path category is rebuilt with fewer arrows if a dense draw overflows
    the morphism cap.
    """
    _check_bounds(max_objects, max_arrows, 0)
    n = rng.randint(1, max(1, max_objects))
    objects = [str(v) for v in range(1, n + 1)]
    n_arrows = rng.randint(0, max_arrows) if n > 1 else 0
    arrows = []
    for k in range(n_arrows):
        s = rng.randint(1, n - 1)
        t = rng.randint(s + 1, n)
        arrows.append((f"a{k + 1}", str(s), str(t)))
    while True:
        try:
            return build_category("quiver", {"objects": objects, "arrows": arrows,
                                             "name": name})
        except TooLarge:
            # drop the last arrow and retry; terminates at the arrowless quiver
            arrows = arrows[:-1]


def random_poset(rng: random.Random, max_objects=4, name="") -> FinCategory:
    """Poset category on a random partial order of the labels 1..n."""
    _check_bounds(max_objects, 0, 0)
    n = rng.randint(1, max(1, max_objects))
    objects = [str(v) for v in range(1, n + 1)]
    relations = []
    for s in range(1, n):
        for t in range(s + 1, n + 1):
            if rng.random() < 0.5:
                relations.append((str(s), str(t)))
    return build_category("poset", {"objects": objects, "relations": relations,
                                    "name": name})


def random_index_category(rng: random.Random, max_objects=4, max_arrows=5,
                          name="") -> FinCategory:
    if rng.random() < 0.5:
        return random_acyclic_quiver(rng, max_objects, max_arrows, name=name)
    return random_poset(rng, max_objects, name=name)


# ---------------------------------------------------------------------------
# algebras and modules


def _c2_category():
    return build_category("monoid", {
        "elements": ["e", "g"], "unit": "e", "object": "i",
        "table": {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"},
        "name": "C2"})


def algebra_catalog(f):
    """Small stock of algebras, each with its augmentations onto the scalars.

    Every entry has at least one augmentation, which is what makes random
    algebra-valued functors on posets assemblable: maps of the shape
    unit . augmentation compose to maps of the same shape.
    """
    k = field_algebra(f)
    one = Matrix.identity(f, 1)
    entries = [(k, [one])]
    dual = dual_numbers(f)
    entries.append((dual, [Matrix(f, [[f.one, f.zero]], 2)]))
    prod = product_fields(f, 2)
    entries.append((prod, [Matrix(f, [[f.one, f.zero]], 2),
                           Matrix(f, [[f.zero, f.one]], 2)]))
    kc2 = monoid_algebra(f, _c2_category())
    augs = [Matrix(f, [[f.one, f.one]], 2)]
    minus_one = f.parse("-1")
    if minus_one != f.one:
        augs.append(Matrix(f, [[f.one, minus_one]], 2))
    entries.append((kc2, augs))
    return entries


def _morphism_choices(a_entry, b_entry):
    """All catalog maps from algebra A to algebra B, as matrices."""
    a, a_augs = a_entry
    b, _ = b_entry
    out = []
    if a == b:
        out.append(Matrix.identity(a.field, a.dim))
    for aug in a_augs:
        out.append(b.unit @ aug)
    return out


def random_ring_diagram(rng: random.Random, cat: FinCategory, f,
                        name="ring") -> DiagramSpec:
    """Strict diagram of a random algebra-valued functor on cat.

    On a free category any generator assignment is functorial. On anything
    with relations the maps are drawn from the augmentation-shaped family
    with one fixed augmentation per source object, which forces every
    square to commute.
    """
    catalog = algebra_catalog(f)
    choice = {i: rng.randrange(len(catalog)) for i in cat.objects}
    algebras = {i: catalog[choice[i]][0] for i in cat.objects}
    free_index = all(len(cat.expressions.get(m, ())) <= 1 or cat.is_identity(m)
                     for m in cat.mor_names) and _is_free_like(cat)
    maps = {}
    if free_index:
        for g in cat.generators:
            s, t = cat.src(g), cat.tgt(g)
            opts = _morphism_choices(catalog[choice[s]], catalog[choice[t]])
            mat = opts[rng.randrange(len(opts))]
            maps[g] = AlgebraMorphism(algebras[s], algebras[t], mat)
    else:
        fixed_aug = {i: rng.randrange(len(catalog[choice[i]][1])) for i in cat.objects}
        for g in cat.generators:
            s, t = cat.src(g), cat.tgt(g)
            aug = catalog[choice[s]][1][fixed_aug[s]]
            maps[g] = AlgebraMorphism(algebras[s], algebras[t], algebras[t].unit @ aug)
    dia = ring_diagram(cat, algebras, maps)
    dia.name = name
    return dia


def _is_free_like(cat: FinCategory) -> bool:
    """Whether the category is free on its generators.

    Counts composable generator words: the category is free exactly when
    the word count matches the morphism count. A square poset identifies
    its two length-two words, a monoid with g*g = e has infinitely many
    words; both overshoot or undershoot the morphism count and fail here.
    """
    target = len(cat.mor_names)
    by_src = {}
    for g in cat.generators:
        by_src.setdefault(cat.src(g), []).append(g)
    total = len(cat.objects)
    frontier = [o for o in cat.objects]
    while frontier and total <= target:
        grown = []
        for end in frontier:
            for g in by_src.get(end, ()):
                grown.append(cat.tgt(g))
                total += 1
        frontier = grown
    return total == target


def _unit_scalar_candidates(f, rng, tries=4):
    out = []
    for _ in range(tries):
        c = f.random_unit(rng)
        if c != f.one:
            out.append(c)
    return out


def random_twist_units(rng: random.Random, dia: DiagramSpec) -> dict:
    """A family of edge bimodule automorphisms for conjugating witnesses.

    Scalar units always qualify; for edges whose right algebra is
    commutative, right multiplication by an invertible basis element also
    commutes with both actions and is included as a candidate. Over F_2
    with one-dimensional edges there are no nontrivial units, and the
    returned family is empty (the twist is then strict).
    """
    units = {}
    for m in dia.cat.generators:
        b = dia.bimodule(m)
        if b.dim == 0:
            continue
        eye = Matrix.identity(dia.field, b.dim)
        cands = [eye.scale(c) for c in _unit_scalar_candidates(dia.field, rng)]
        for k in range(b.right_algebra.dim):
            mat = b.right_action[k]
            if mat != eye and mat.is_invertible():
                if all(mat @ other == other @ mat for other in b.right_action):
                    cands.append(mat)
        if cands and rng.random() < 0.7:
            units[m] = cands[rng.randrange(len(cands))]
    return units


def random_diagram(rng: random.Random, cat: FinCategory, f, style="twist",
                   name="D") -> DiagramSpec:
    """A random diagram over cat: trivial, ring-derived, or a twist of one."""
    if style == "trivial":
        dia = trivial_diagram(cat, f)
    elif style == "ring":
        dia = random_ring_diagram(rng, cat, f)
    elif style == "twist":
        base = random_ring_diagram(rng, cat, f)
        units = random_twist_units(rng, base)
        dia = twist_diagram(base, units) if units else base
    else:
        raise SizeBoundExceeded(f"unknown diagram style {style!r}")
    dia.name = name
    return dia


def random_module(rng: random.Random, alg: Algebra, max_dim=2) -> Module:
    """Zero, free, or an action-invariant random submodule of a free module."""
    _check_bounds(0, 0, max_dim)
    style = rng.randrange(3)
    if style == 0 or max_dim == 0:
        return zero_module(alg)
    rank = max(1, max_dim // max(1, alg.dim))
    if style == 1:
        return free_module(alg, rng.randint(1, rank))
    return _random_submodule(rng, free_module(alg, rank))


def _random_submodule(rng: random.Random, ambient: Module) -> Module:
    f = ambient.field
    if ambient.dim == 0:
        return ambient
    seed = Matrix(f, [[f.random(rng)] for _ in range(ambient.dim)], 1)
    basis = seed.image()
    while True:
        pushed = [act @ basis for act in ambient.action]
        grown = Matrix.hstack(f, [basis] + pushed).image()
        if grown.ncols == basis.ncols:
            break
        basis = grown
    if basis.ncols == 0:
        return zero_module(ambient.algebra)
    if basis.ncols == ambient.dim:
        return ambient
    action = tuple(basis.solve_exact(act @ basis) for act in ambient.action)
    return Module(ambient.algebra, basis.ncols, action, name="sub")


def random_module_map(rng: random.Random, src: Module, tgt: Module) -> Matrix:
    basis = module_hom_basis(src, tgt)
    f = src.field
    out = Matrix.zeros(f, tgt.dim, src.dim)
    for mat in basis:
        c = f.random(rng)
        if c != f.zero:
            out = out + mat.scale(c)
    return out


# ---------------------------------------------------------------------------
# representations


def random_representation(rng: random.Random, dia: DiagramSpec, max_dim=2,
                          nonzero=False, name="R") -> Representation:
    """A random representation of dia with vertex dimensions up to max_dim.

    Structural maps are random module maps out of the edge tensor product,
    so on a free index any draw is already lawful; indices with relations
    are rejection-sampled through the pair-law check, falling back to a
    random biproduct of one-vertex free representations, which is lawful
    over any index.
    """
    _check_bounds(0, 0, max_dim)
    cat = dia.cat
    for _ in range(REP_SAMPLING_TRIES):
        modules = {i: random_module(rng, dia.algebra(i), max_dim) for i in cat.objects}
        if nonzero and all(m.dim == 0 for m in modules.values()):
            i = cat.objects[rng.randrange(len(cat.objects))]
            modules[i] = free_module(dia.algebra(i), 1)
        gmaps = {}
        for g in cat.generators:
            tr = dia.module_tensor(g, modules[cat.src(g)])
            gmaps[g] = random_module_map(rng, tr.module, modules[cat.tgt(g)])
        try:
            return build_representation(dia, modules, gmaps, name=name)
        except InconsistentRelations:
            continue
    summands = []
    for _ in range(2):
        i = cat.objects[rng.randrange(len(cat.objects))]
        seed = random_module(rng, dia.algebra(i), max_dim)
        if seed.dim == 0 and nonzero:
            seed = free_module(dia.algebra(i), 1)
        if seed.dim > 0:
            summands.append(free_from_vertex(dia, i, seed))
    if not summands:
        return zero_representation(dia)
    total, _, _ = rep_biproduct(summands)
    total.name = name
    return total


def random_rep_morphism(rng: random.Random, src: Representation,
                        tgt: Representation) -> dict:
    """A random morphism of representations, as a hom-basis combination."""
    basis = rep_hom_basis(src, tgt)
    f = src.field
    out = {i: Matrix.zeros(f, tgt.modules[i].dim, src.modules[i].dim)
           for i in src.dia.cat.objects}
    for sigma in basis:
        c = f.random(rng)
        if c == f.zero:
            continue
        for i in out:
            out[i] = out[i] + sigma[i].scale(c)
    return out


# ---------------------------------------------------------------------------
# bundled instances


class GeneratedInstance:
    """One seeded instance with enough provenance to serialize it.

    category is always present. Diagram kinds also fill diagram and
    representation; twists keep the strict base and the conjugating units
    so the instance can be written out as base + twist.
    """

    def __init__(self, kind, index, category, category_kind, base=None,
                 units=None, diagram=None, representation=None):
        self.kind = kind
        self.index = index
        self.category = category
        self.category_kind = category_kind
        self.base = base
        self.units = units
        self.diagram = diagram
        self.representation = representation


def generate_instance(kind: str, seed: int, f, max_objects=3, max_arrows=4,
                      max_dim=2, index=0) -> GeneratedInstance:
    if kind not in GENERATE_KINDS:
        raise SizeBoundExceeded(f"unknown generation kind {kind!r}")
    _check_bounds(max_objects, max_arrows, max_dim)
    rng = seeded_rng(int(seed) * 1000003 + index)
    if kind == "quiver":
        return GeneratedInstance(kind, index,
                                 random_acyclic_quiver(rng, max_objects, max_arrows,
                                                       name=f"C{index}"), "quiver")
    if kind == "poset":
        return GeneratedInstance(kind, index, random_poset(rng, max_objects,
                                                           name=f"C{index}"), "poset")
    if kind in ("ring", "twist") or rng.random() < 0.5:
        cat_kind = "quiver"
        cat = random_acyclic_quiver(rng, max_objects, max_arrows, name=f"C{index}")
    else:
        cat_kind = "poset"
        cat = random_poset(rng, max_objects, name=f"C{index}")
    base = units = None
    if kind == "trivial":
        dia = trivial_diagram(cat, f)
    elif kind == "ring":
        dia = random_ring_diagram(rng, cat, f)
    else:
        base = random_ring_diagram(rng, cat, f, name=f"D{index}base")
        units = random_twist_units(rng, base)
        dia = twist_diagram(base, units) if units else base
        if not units:
            base = None
            units = None
    dia.name = f"D{index}"
    rep = random_representation(rng, dia, max_dim=max_dim, nonzero=True,
                                name=f"R{index}")
    return GeneratedInstance(kind, index, cat, cat_kind, base, units, dia, rep)
