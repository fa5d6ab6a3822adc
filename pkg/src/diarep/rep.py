"""Representations of a diagram of module categories.

A representation assigns a module to every object and, to every morphism
f: i -> j, a structural map B_f (x) M_i -> M_j. Two laws are enforced: at
an identity the structural map undoes insertion along the unit witness,
and for every composable pair the two ways of pushing an element through
agree (compared on the plain Kronecker space, so nothing needs to be
strict).

The same data can be stored in hom form, as adjoint transposes
M_i -> Hom(B_f, M_j); conversion in both directions and the laws of that
encoding live here too, as an independent cross-check on the axioms.
"""

from dataclasses import dataclass, field as dc_field

from .diagram import DiagramSpec, witness_mate
from .errors import (
    DiagramMismatch,
    Inconsistent,
    InconsistentRelations,
    MissingGenerator,
    UnknownObject,
)
from .linalg import Matrix, kron_embedding_operator, unvec, vec_operator
from .modcat import (
    Module,
    direct_sum_modules,
    dual_module,
    hom_push,
    is_module_map,
    morphism_factorization,
    tensor_map,
    transpose_from_hom,
    transpose_to_hom,
    validate_module,
    zero_module,
)
from .reports import ValidationReport


@dataclass
class Representation:
    dia: DiagramSpec
    modules: dict
    maps: dict
    name: str = dc_field(default="M")

    def module(self, obj) -> Module:
        try:
            return self.modules[obj]
        except KeyError:
            raise UnknownObject(f"no module at object {obj!r}") from None

    def map(self, m) -> Matrix:
        try:
            return self.maps[m]
        except KeyError:
            raise UnknownObject(f"no structural map at morphism {m!r}") from None

    def dims(self) -> dict:
        return {i: self.modules[i].dim for i in self.dia.cat.objects}

    def is_zero(self) -> bool:
        return all(m.dim == 0 for m in self.modules.values())

    @property
    def field(self):
        return self.dia.field


def eta_insertion(dia: DiagramSpec, obj, module: Module) -> Matrix:
    """The map M -> B_{id} (x) M sending v to (unit witness of 1) (x) v."""
    tr = dia.module_tensor(dia.cat.identity[obj], module)
    eye = Matrix.identity(dia.field, module.dim)
    return tr.pi @ Matrix.kron(dia.unit_image(obj), eye)


def _pair_paths(dia, modules, maps, g, f):
    """Both contractions of (g, f) on the plain space B_g (x) B_f (x) M."""
    cat = dia.cat
    i = cat.src(f)
    j = cat.tgt(f)
    gf = cat.compose(g, f)
    mi, mj = modules[i], modules[j]
    eye_mi = Matrix.identity(dia.field, mi.dim)
    lhs = (maps[gf] @ dia.module_tensor(gf, mi).pi
           @ Matrix.kron(dia.tau_component(g, f) @ dia.edge_tensor(g, f).pi, eye_mi))
    bg = dia.bimodule(g).dim
    rhs = (maps[g] @ dia.module_tensor(g, mj).pi
           @ Matrix.kron(Matrix.identity(dia.field, bg),
                         maps[f] @ dia.module_tensor(f, mi).pi))
    return lhs, rhs


def validate_representation(rep: Representation, deep=True) -> ValidationReport:
    out = ValidationReport()
    dia = rep.dia
    cat = dia.cat
    for i in cat.objects:
        if i not in rep.modules:
            out.fail("rep.missing-module", (i,))
            return out
        m = rep.modules[i]
        out.bump()
        if m.algebra != dia.algebra(i):
            out.fail("rep.wrong-algebra", (i,))
            return out
        if deep:
            out.merge(validate_module(m))
    for name in cat.mor_names:
        if name not in rep.maps:
            out.fail("rep.missing-map", (name,))
            return out
        src_mod = rep.modules[cat.src(name)]
        tgt_mod = rep.modules[cat.tgt(name)]
        tr = dia.module_tensor(name, src_mod)
        mat = rep.maps[name]
        out.bump()
        if mat.nrows != tgt_mod.dim or mat.ncols != tr.module.dim:
            out.fail("rep.map-shape", (name,))
            return out
        out.bump()
        if not is_module_map(mat, tr.module, tgt_mod):
            out.fail("rep.map-linear", (name,))
    if not out.ok:
        return out
    for i in cat.objects:
        out.bump()
        ins = eta_insertion(dia, i, rep.modules[i])
        if rep.maps[cat.identity[i]] @ ins != Matrix.identity(dia.field, rep.modules[i].dim):
            out.fail("rep.unit", (i,), "identity structural map does not undo unit insertion")
    for g, f in cat.composable_pairs():
        out.bump()
        lhs, rhs = _pair_paths(dia, rep.modules, rep.maps, g, f)
        if lhs != rhs:
            out.fail("rep.pair", (g, f), "the two contractions disagree")
    return out


def zero_representation(dia: DiagramSpec) -> Representation:
    modules = {i: zero_module(dia.algebra(i)) for i in dia.cat.objects}
    maps = {}
    for m in dia.cat.mor_names:
        tr = dia.module_tensor(m, modules[dia.cat.src(m)])
        maps[m] = Matrix.zeros(dia.field, 0, tr.module.dim)
    return Representation(dia, modules, maps, name="0")


def _identity_structural_map(dia, obj, module):
    ins = eta_insertion(dia, obj, module)
    inv = ins.inverse()
    if inv is None:
        raise Inconsistent("unit insertion is not invertible; diagram is broken")
    return inv


def pair_associator(dia: DiagramSpec, g, h, module: Module) -> Matrix:
    """The contraction B_g (x) (B_h (x) X) -> B_{g.h} (x) X along the
    composition witness. Invertible for coherent diagram data; cached."""
    key = (g, h, module)
    hit = dia._assoc_cache.get(key)
    if hit is not None:
        return hit
    cat = dia.cat
    m = cat.compose(g, h)
    fld = dia.field
    bg = dia.bimodule(g).dim
    eye_bg = Matrix.identity(fld, bg)
    eye_x = Matrix.identity(fld, module.dim)
    tr_h = dia.module_tensor(h, module)
    tr_outer = dia.module_tensor(g, tr_h.module)
    tr_m = dia.module_tensor(m, module)
    # contraction of the pair, descended to the iterated tensor
    plain = tr_m.pi @ Matrix.kron(
        dia.tau_component(g, h) @ dia.edge_tensor(g, h).pi, eye_x)
    assoc = plain @ Matrix.kron(eye_bg, tr_h.sigma) @ tr_outer.sigma
    if assoc @ tr_outer.pi @ Matrix.kron(eye_bg, tr_h.pi) != plain:
        raise Inconsistent("pair contraction does not descend to the iterated tensor")
    dia._assoc_cache[key] = assoc
    return assoc


def _derived_structural_map(dia, g, h, modules, maps):
    """The forced structural map of a composite from those of its parts."""
    cat = dia.cat
    mi = modules[cat.src(h)]
    mj = modules[cat.tgt(h)]
    assoc = pair_associator(dia, g, h, mi)
    inv = assoc.inverse()
    if inv is None:
        raise Inconsistent("pair contraction is not invertible; diagram is broken")
    tr_h = dia.module_tensor(h, mi)
    tr_outer = dia.module_tensor(g, tr_h.module)
    tr_g = dia.module_tensor(g, mj)
    push_inner = tensor_map(tr_outer, tr_g, maps[h])
    return maps[g] @ push_inner @ inv


def build_representation(dia: DiagramSpec, modules, generator_maps,
                         name="M") -> Representation:
    """Assemble a representation from modules and structural maps on generators.

    Identity maps are forced by the unit law; every other morphism is filled
    in along its generator expression. All pair laws are then checked, so
    inconsistent generator data (say, a square that does not commute) is
    rejected rather than silently accepted.
    """
    cat = dia.cat
    modules = dict(modules)
    maps = dict(generator_maps)
    for i in cat.objects:
        maps[cat.identity[i]] = _identity_structural_map(dia, i, modules[i])

    def fill(mor, stack):
        if mor in maps:
            return
        if mor in stack:
            raise InconsistentRelations(f"cyclic expressions at {mor!r}")
        expr = cat.expressions.get(mor)
        if not expr:
            raise MissingGenerator(f"no structural map or expression for {mor!r}")
        if len(expr) == 1:
            raise MissingGenerator(f"no structural map for generator {expr[0]!r}")
        acc = expr[-1]
        for t in reversed(expr[1:-1]):
            acc = cat.compose(t, acc)
        fill(acc, stack | {mor})
        fill(expr[0], stack | {mor})
        maps[mor] = _derived_structural_map(dia, expr[0], acc, modules, maps)

    for mor in cat.mor_names:
        fill(mor, frozenset())
    rep = Representation(dia, modules, maps, name=name)
    check = validate_representation(rep, deep=False)
    if not check.ok:
        first = check.failures[0]
        raise InconsistentRelations(
            f"generator data does not satisfy the representation laws: "
            f"{first.kind} at {first.where}")
    return rep


# ---------------------------------------------------------------------------
# morphisms of representations


def validate_rep_morphism(src: Representation, tgt: Representation,
                          sigma: dict) -> ValidationReport:
    out = ValidationReport()
    if src.dia is not tgt.dia:
        raise DiagramMismatch("representations live over different diagrams")
    cat = src.dia.cat
    for i in cat.objects:
        if i not in sigma:
            out.fail("repmor.missing", (i,))
            return out
        out.bump()
        if not is_module_map(sigma[i], src.modules[i], tgt.modules[i]):
            out.fail("repmor.linear", (i,))
    if not out.ok:
        return out
    for m in cat.mor_names:
        s, t = cat.src(m), cat.tgt(m)
        tr_src = src.dia.module_tensor(m, src.modules[s])
        tr_tgt = tgt.dia.module_tensor(m, tgt.modules[s])
        out.bump()
        if sigma[t] @ src.maps[m] != tgt.maps[m] @ tensor_map(tr_src, tr_tgt, sigma[s]):
            out.fail("repmor.natural", (m,))
    return out


def is_rep_morphism(src, tgt, sigma) -> bool:
    return validate_rep_morphism(src, tgt, sigma).ok


def identity_rep_morphism(rep: Representation) -> dict:
    return {i: Matrix.identity(rep.field, rep.modules[i].dim)
            for i in rep.dia.cat.objects}


def compose_rep_morphisms(later: dict, earlier: dict) -> dict:
    return {i: later[i] @ earlier[i] for i in later}


def rep_hom_basis(src: Representation, tgt: Representation):
    """All representation morphisms src -> tgt, as a list of per-object maps.

    Solved as one joint kernel: per-object module linearity plus naturality
    against every structural map, assembled with Kronecker operators.
    """
    dia = src.dia
    cat = dia.cat
    fld = src.field
    objs = list(cat.objects)
    sizes = {i: tgt.modules[i].dim * src.modules[i].dim for i in objs}
    offset = {}
    pos = 0
    for i in objs:
        offset[i] = pos
        pos += sizes[i]
    total = pos
    if total == 0:
        return []
    rows = []

    def block_row(pieces):
        segs = []
        height = None
        for i in objs:
            if i in pieces:
                segs.append(pieces[i])
                height = pieces[i].nrows
            else:
                segs.append(None)
        segs = [p if p is not None else Matrix.zeros(fld, height, sizes[i])
                for p, i in zip(segs, objs)]
        rows.append(Matrix.hstack(fld, segs))

    for i in objs:
        m, n = src.modules[i], tgt.modules[i]
        if m.dim * n.dim == 0:
            continue
        for k in range(m.algebra.dim):
            op = (Matrix.kron(m.action[k].transpose(), Matrix.identity(fld, n.dim))
                  - Matrix.kron(Matrix.identity(fld, m.dim), n.action[k]))
            block_row({i: op})
    for mor in cat.mor_names:
        s, t = cat.src(mor), cat.tgt(mor)
        tr_s = dia.module_tensor(mor, src.modules[s])
        tr_t = dia.module_tensor(mor, tgt.modules[s])
        b = dia.bimodule(mor).dim
        # sigma_t @ src_map  minus  tgt_map @ (id (x) sigma_s)
        left = vec_operator(Matrix.identity(fld, tgt.modules[t].dim), src.maps[mor])
        embed = kron_embedding_operator(fld, b, tgt.modules[s].dim, src.modules[s].dim)
        right = vec_operator(tgt.maps[mor] @ tr_t.pi, tr_s.sigma) @ embed
        if left.nrows == 0:
            continue
        pieces = {}
        if s == t:
            pieces[t] = left - right
        else:
            pieces[t] = left
            pieces[s] = -right
        block_row(pieces)
    if rows:
        system = Matrix.vstack(fld, rows)
    else:
        system = Matrix.zeros(fld, 0, total)
    ker = system.kernel()
    out = []
    for c in range(ker.ncols):
        col = ker.col(c)
        sig = {}
        for i in objs:
            piece = col[offset[i]:offset[i] + sizes[i]]
            sig[i] = unvec(fld, piece, tgt.modules[i].dim, src.modules[i].dim)
        out.append(sig)
    return out


# ---------------------------------------------------------------------------
# kernels, images, cokernels, biproducts


@dataclass(frozen=True)
class RepFactorization:
    kernel: Representation
    kernel_inclusion: dict
    image: Representation
    image_inclusion: dict
    onto_image: dict
    cokernel: Representation
    coker_projection: dict
    coker_section: dict


def rep_factorization(sigma: dict, src: Representation,
                      tgt: Representation) -> RepFactorization:
    dia = src.dia
    cat = dia.cat
    facts = {i: morphism_factorization(sigma[i], src.modules[i], tgt.modules[i])
             for i in cat.objects}
    ker_mod = {i: facts[i].kernel for i in cat.objects}
    im_mod = {i: facts[i].image for i in cat.objects}
    cok_mod = {i: facts[i].cokernel for i in cat.objects}
    ker_maps, im_maps, cok_maps = {}, {}, {}
    for m in cat.mor_names:
        s, t = cat.src(m), cat.tgt(m)
        # kernel: restrict the source structural map
        tr_k = dia.module_tensor(m, ker_mod[s])
        tr_s = dia.module_tensor(m, src.modules[s])
        rhs = src.maps[m] @ tensor_map(tr_k, tr_s, facts[s].kernel_inclusion)
        ker_maps[m] = facts[t].kernel_inclusion.solve_exact(rhs)
        # image: restrict the target structural map
        tr_i = dia.module_tensor(m, im_mod[s])
        tr_t = dia.module_tensor(m, tgt.modules[s])
        rhs = tgt.maps[m] @ tensor_map(tr_i, tr_t, facts[s].image_inclusion)
        im_maps[m] = facts[t].image_inclusion.solve_exact(rhs)
        # cokernel: push the target structural map through the projection
        tr_c = dia.module_tensor(m, cok_mod[s])
        through = tensor_map(tr_t, tr_c, facts[s].coker_projection)
        wanted = facts[t].coker_projection @ tgt.maps[m]
        sol = through.solve_left(wanted)
        if sol is None:
            raise Inconsistent("cokernel structural map does not descend")
        cok_maps[m] = sol
    kernel = Representation(dia, ker_mod, ker_maps, name=f"ker({src.name})")
    image = Representation(dia, im_mod, im_maps, name="im")
    cokernel = Representation(dia, cok_mod, cok_maps, name=f"coker({tgt.name})")
    return RepFactorization(
        kernel, {i: facts[i].kernel_inclusion for i in cat.objects},
        image, {i: facts[i].image_inclusion for i in cat.objects},
        {i: facts[i].onto_image for i in cat.objects},
        cokernel, {i: facts[i].coker_projection for i in cat.objects},
        {i: facts[i].coker_section for i in cat.objects})


def rep_biproduct(reps):
    """Direct sum of representations with injection and projection morphisms."""
    reps = list(reps)
    if not reps:
        raise Inconsistent("empty biproduct needs a diagram to anchor the zero")
    dia = reps[0].dia
    cat = dia.cat
    sums = {i: direct_sum_modules([r.modules[i] for r in reps]) for i in cat.objects}
    modules = {i: sums[i].module for i in cat.objects}
    maps = {}
    for m in cat.mor_names:
        s, t = cat.src(m), cat.tgt(m)
        tr_sum = dia.module_tensor(m, modules[s])
        acc = Matrix.zeros(dia.field, modules[t].dim, tr_sum.module.dim)
        for k, r in enumerate(reps):
            tr_k = dia.module_tensor(m, r.modules[s])
            split = tensor_map(tr_sum, tr_k, sums[s].projections[k])
            acc = acc + sums[t].injections[k] @ r.maps[m] @ split
        maps[m] = acc
    total = Representation(dia, modules, maps,
                           name="(+)".join(r.name for r in reps))
    injections = [{i: sums[i].injections[k] for i in cat.objects}
                  for k in range(len(reps))]
    projections = [{i: sums[i].projections[k] for i in cat.objects}
                   for k in range(len(reps))]
    return total, injections, projections


def is_exact_pair(first: dict, second: dict, middle: Representation) -> bool:
    """Exactness of R -> S -> T at S: composite zero and ranks complementary."""
    for i in middle.dia.cat.objects:
        comp = second[i] @ first[i]
        if not comp.is_zero():
            return False
        if first[i].rank() + second[i].rank() != middle.modules[i].dim:
            return False
    return True


# ---------------------------------------------------------------------------
# the hom form of a representation


def rep_to_hom_form(rep: Representation) -> dict:
    """Adjoint transposes of all structural maps, in hom coordinates."""
    dia = rep.dia
    cat = dia.cat
    out = {}
    for m in cat.mor_names:
        tr = dia.module_tensor(m, rep.modules[cat.src(m)])
        hr = dia.edge_hom(m, rep.modules[cat.tgt(m)])
        out[m] = transpose_to_hom(tr, hr, rep.maps[m])
    return out


def hom_form_to_rep(dia: DiagramSpec, modules: dict, tmaps: dict,
                    name="M") -> Representation:
    maps = {}
    for m in dia.cat.mor_names:
        tr = dia.module_tensor(m, modules[dia.cat.src(m)])
        hr = dia.edge_hom(m, modules[dia.cat.tgt(m)])
        maps[m] = transpose_from_hom(tr, hr, tmaps[m])
    return Representation(dia, modules, maps, name=name)


def validate_hom_form(dia: DiagramSpec, modules: dict, tmaps: dict) -> ValidationReport:
    """The laws of the transposed encoding, checked directly.

    At identities, evaluating at the unit witness undoes the transposed
    map; for a composable pair, currying the composite map along the
    witness agrees with pushing the first transpose into the second.
    """
    out = ValidationReport()
    cat = dia.cat
    for m in cat.mor_names:
        s, t = cat.src(m), cat.tgt(m)
        hr = dia.edge_hom(m, modules[t])
        mat = tmaps[m]
        out.bump()
        if mat.nrows != hr.module.dim or mat.ncols != modules[s].dim:
            out.fail("homform.shape", (m,))
            return out
        out.bump()
        if not is_module_map(mat, modules[s], hr.module):
            out.fail("homform.linear", (m,))
    if not out.ok:
        return out
    for i in cat.objects:
        e = cat.identity[i]
        hr = dia.edge_hom(e, modules[i])
        u = dia.unit_image(i)
        ev = Matrix.from_cols(
            dia.field, modules[i].dim,
            [(hr.basis_matrix(k) @ u).col(0) for k in range(hr.module.dim)])
        out.bump()
        if ev @ tmaps[e] != Matrix.identity(dia.field, modules[i].dim):
            out.fail("homform.unit", (i,))
    for g, f in cat.composable_pairs():
        j, l = cat.tgt(f), cat.tgt(g)
        hom_g = dia.edge_hom(g, modules[l])
        hr_f_mid = dia.edge_hom(f, modules[j])
        outer = dia.edge_hom(f, hom_g.module)
        push = hom_push(hr_f_mid, outer, tmaps[g])
        lhs = push @ tmaps[f]
        rhs = witness_mate(dia, g, f, modules[l]) @ tmaps[cat.compose(g, f)]
        out.bump()
        if lhs != rhs:
            out.fail("homform.pair", (g, f))
    return out


# ---------------------------------------------------------------------------
# duality


def dual_representation(rep: Representation, op_dia: DiagramSpec) -> Representation:
    """The componentwise linear dual, over the opposite diagram.

    The structural map at a morphism becomes the transpose-in-both-slots of
    the original: feed in a functional, pull back along the original action.
    """
    dia = rep.dia
    cat = dia.cat
    modules = {i: dual_module(rep.modules[i], op=op_dia.algebra(i))
               for i in cat.objects}
    maps = {}
    for m in cat.mor_names:
        i, j = cat.src(m), cat.tgt(m)
        b = dia.bimodule(m).dim
        mi, mj = rep.modules[i].dim, rep.modules[j].dim
        plain = rep.maps[m] @ dia.module_tensor(m, rep.modules[i]).pi
        rows = [[None] * (b * mj) for _ in range(mi)]
        for r in range(mi):
            for k in range(b):
                for l in range(mj):
                    rows[r][k * mj + l] = plain[l, k * mi + r]
        flipped = Matrix(dia.field, rows, b * mj)
        tr_op = op_dia.module_tensor(m, modules[j])
        mat = flipped @ tr_op.sigma
        if mat @ tr_op.pi != flipped:
            raise Inconsistent("dualized structural map does not descend")
        maps[m] = mat
    return Representation(op_dia, modules, maps, name=rep.name + "*")


def dual_rep_morphism(sigma: dict) -> dict:
    return {i: sigma[i].transpose() for i in sigma}
