"""Functors between categories of diagram representations.

Three families live here, together with machinery that certifies their
adjunctions by explicit round trips:

- change of index category: restriction along a functor, and its left and
  right adjoints built pointwise from colimits over comma categories and
  limits over under-comma categories;
- one-vertex functors: evaluation at a vertex, the free representation
  generated at a vertex (an explicit coproduct over outgoing morphisms),
  and its cofree dual;
- ideal-indexed functors: extension by zero across a prime morphism ideal,
  the canonical inflow/outflow comparison maps at each surviving vertex,
  and their cokernel/kernel functors, specialised at a single vertex to
  the stalk functors.

Everything is computed in finite dimensions, so uniqueness claims are not
taken on faith: induced maps are produced by exact solves against jointly
epi or jointly mono families and the results are re-validated against the
representation laws.
"""

from dataclasses import dataclass

from .diagram import DiagramSpec, restrict_diagram, witness_mate
from .errors import (
    AlgebraMismatch,
    DiagramMismatch,
    FunctorMismatch,
    Inconsistent,
    NotPrime,
    UnknownObject,
    ZeroRepresentation,
)
from .fincat import (
    CatFunctor,
    FinCategory,
    Mor,
    MorphismIdeal,
    comma_category,
    endo_prime_ideal,
    inclusion_functor,
    inflow_index_category,
    outflow_index_category,
    quotient_subcategory,
    under_comma_category,
)
from .linalg import Matrix
from .modcat import (
    ColimitResult,
    LimitResult,
    Module,
    direct_sum_modules,
    finite_colimit,
    finite_limit,
    free_cover,
    hom_push,
    module_hom_basis,
    morphism_factorization,
    tensor_map,
    transpose_from_hom,
    transpose_to_hom,
    zero_module,
)
from .rep import (
    Representation,
    build_representation,
    eta_insertion,
    is_rep_morphism,
    pair_associator,
    rep_hom_basis,
    validate_representation,
)


# ---------------------------------------------------------------------------
# shared plumbing


def _ensure_valid(rep: Representation, context: str):
    validate_representation(rep, deep=False).raise_if_failed(context)


def _rehouse(rep: Representation, dia: DiagramSpec) -> Representation:
    """The same modules and maps viewed over a structurally equal diagram
    instance, so morphism-level functions see one shared diagram object."""
    cat = dia.cat
    if rep.dia.cat.objects != cat.objects or rep.dia.cat.mor_names != cat.mor_names:
        raise DiagramMismatch("representation does not fit the target diagram's shape")
    return Representation(dia, dict(rep.modules), dict(rep.maps), name=rep.name)


def _invert(mat: Matrix, context: str) -> Matrix:
    inv = mat.inverse()
    if inv is None:
        raise Inconsistent(f"{context} is not invertible")
    return inv


def _transport_through(dia, g, h, src_mod, inner_map, tgt_mod) -> Matrix:
    """D_{g.h}(X) -> D_g(Y) induced by a map B_h (x) X -> Y.

    Splits off the left factor with the inverse pair contraction and pushes
    the inner map through the outer tensor.
    """
    tr_h = dia.module_tensor(h, src_mod)
    tr_outer = dia.module_tensor(g, tr_h.module)
    tr_final = dia.module_tensor(g, tgt_mod)
    inv = _invert(pair_associator(dia, g, h, src_mod), "pair contraction")
    return tensor_map(tr_outer, tr_final, inner_map) @ inv


def _hom_transport(dia, gamma, theta, src_mod, gamma_map, tgt_mod) -> Matrix:
    """Hom(B_theta, X) -> Hom(B_{gamma.theta}, Y) induced by a map
    B_gamma (x) X -> Y, through the inverse composition witness."""
    cat = dia.cat
    fld = dia.field
    theta2 = cat.compose(gamma, theta)
    hr1 = dia.edge_hom(theta, src_mod)
    hr2 = dia.edge_hom(theta2, tgt_mod)
    tens = dia.edge_tensor(gamma, theta)
    pre = tens.sigma @ _invert(dia.tau_component(gamma, theta), "composition witness")
    tr_inner = dia.module_tensor(gamma, src_mod)
    eye = Matrix.identity(fld, dia.bimodule(gamma).dim)
    cols = []
    for k in range(hr1.module.dim):
        full = gamma_map @ tr_inner.pi @ Matrix.kron(eye, hr1.basis_matrix(k)) @ pre
        cols.append(hr2.from_matrix(full).col(0))
    return Matrix.from_cols(fld, hr2.module.dim, cols)


def _empty_colimit(fld, alg) -> ColimitResult:
    zm = zero_module(alg)
    z = Matrix.zeros(fld, 0, 0)
    return ColimitResult(zm, (), z, z, ())


def _empty_limit(fld, alg) -> LimitResult:
    return LimitResult(zero_module(alg), (), Matrix.zeros(fld, 0, 0))


def _check_restriction_pullback(fun: CatFunctor, sub: DiagramSpec, dia: DiagramSpec):
    """Require sub to be the componentwise pullback of dia along fun."""
    cat = fun.source
    if sub.cat.objects != cat.objects or sub.cat.mor_names != cat.mor_names:
        raise FunctorMismatch("representation is not indexed by the functor source")
    amb = fun.target
    if dia.cat.objects != amb.objects or dia.cat.mor_names != amb.mor_names:
        raise FunctorMismatch("diagram is not indexed by the functor target")
    for j in cat.objects:
        if sub.algebra(j) != dia.algebra(fun.on_obj(j)):
            raise FunctorMismatch(f"vertex algebra mismatch at {j!r}")
        if sub.eta_component(j) != dia.eta_component(fun.on_obj(j)):
            raise FunctorMismatch(f"unit witness mismatch at {j!r}")
    for m in cat.mor_names:
        if sub.bimodule(m) != dia.bimodule(fun.on_mor(m)):
            raise FunctorMismatch(f"edge bimodule mismatch at {m!r}")
    for g, f in cat.composable_pairs():
        if sub.tau_component(g, f) != dia.tau_component(fun.on_mor(g), fun.on_mor(f)):
            raise FunctorMismatch(f"composition witness mismatch at ({g!r}, {f!r})")


def _same_morphism(a: dict, b: dict) -> bool:
    return set(a) == set(b) and all(a[k] == b[k] for k in a)


# ---------------------------------------------------------------------------
# restriction


def restrict_rep(fun: CatFunctor, rep: Representation,
                 sub_dia: DiagramSpec | None = None) -> Representation:
    """Pull a representation back along a functor into its index category.

    Structural maps are reused verbatim: the pulled-back diagram has the
    same algebras, bimodules and witnesses componentwise, so the matrices
    already have the right shapes. Pass sub_dia to anchor the result on an
    existing pulled-back diagram instance.
    """
    cat = rep.dia.cat
    if fun.target.objects != cat.objects or fun.target.mor_names != cat.mor_names:
        raise FunctorMismatch("functor target does not match the representation's index")
    sub = sub_dia if sub_dia is not None else restrict_diagram(rep.dia, fun)
    _check_restriction_pullback(fun, sub, rep.dia)
    modules = {j: rep.modules[fun.on_obj(j)] for j in fun.source.objects}
    maps = {m: rep.maps[fun.on_mor(m)] for m in fun.source.mor_names}
    return Representation(sub, modules, maps, name=f"res({rep.name})")


def restrict_rep_morphism(fun: CatFunctor, sigma: dict) -> dict:
    return {j: sigma[fun.on_obj(j)] for j in fun.source.objects}


# ---------------------------------------------------------------------------
# induction: the left adjoint of restriction


@dataclass
class InductionData:
    """An induced representation together with its pointwise colimits."""

    rep: Representation
    fun: CatFunctor
    source: Representation
    commas: dict
    colims: dict
    legs: dict


def induce_rep_data(fun: CatFunctor, nrep: Representation, dia: DiagramSpec,
                    check=True) -> InductionData:
    """Left Kan extension of a representation along a functor of indices.

    The value at a vertex i is the colimit, over the comma category of
    objects (j, theta: F j -> i), of the translates D_theta(N_j). The
    structural map of each morphism is recovered as the unique solution of
    the leg equations against the jointly epi family of tensored legs.
    """
    _check_restriction_pullback(fun, nrep.dia, dia)
    cat = dia.cat
    fld = dia.field
    commas, colims, legs, modules = {}, {}, {}, {}
    for i in cat.objects:
        cm = comma_category(fun, i)
        commas[i] = cm
        objs = list(cm.objects)
        if not objs:
            colims[i] = _empty_colimit(fld, dia.algebra(i))
            legs[i] = {}
            modules[i] = colims[i].module
            continue
        values = []
        for o in objs:
            j, theta = cm.obj_labels[o]
            values.append(dia.module_tensor(theta, nrep.modules[j]).module)
        idx = {o: k for k, o in enumerate(objs)}
        arrows = []
        for mo in cm.mor_names:
            if cm.is_identity(mo):
                continue
            o1, o2 = cm.src(mo), cm.tgt(mo)
            j1, _ = cm.obj_labels[o1]
            j2, th2 = cm.obj_labels[o2]
            gamma = fun.on_mor(cm.mor_labels[mo])
            mat = _transport_through(dia, th2, gamma, nrep.modules[j1],
                                     nrep.maps[cm.mor_labels[mo]], nrep.modules[j2])
            arrows.append((idx[o1], idx[o2], mat))
        col = finite_colimit(values, arrows)
        colims[i] = col
        legs[i] = {o: col.legs[k] for k, o in enumerate(objs)}
        modules[i] = col.module
    maps = {}
    for a in cat.mor_names:
        s, t = cat.src(a), cat.tgt(a)
        tr_dom = dia.module_tensor(a, modules[s])
        if tr_dom.module.dim == 0 or not commas[s].objects:
            maps[a] = Matrix.zeros(fld, modules[t].dim, tr_dom.module.dim)
            continue
        blocks_a, blocks_b = [], []
        for o in commas[s].objects:
            j, theta = commas[s].obj_labels[o]
            x = nrep.modules[j]
            tr_val = dia.module_tensor(theta, x)
            tr_a_val = dia.module_tensor(a, tr_val.module)
            blocks_a.append(tensor_map(tr_a_val, tr_dom, legs[s][o]))
            comp = cat.compose(a, theta)
            blocks_b.append(legs[t][f"{j}|{comp}"] @ pair_associator(dia, a, theta, x))
        lhs = Matrix.hstack(fld, blocks_a)
        rhs = Matrix.hstack(fld, blocks_b)
        sol = lhs.solve_left(rhs)
        if sol is None:
            raise Inconsistent("induced structural map does not descend to the colimit")
        maps[a] = sol
    out = Representation(dia, modules, maps, name=f"ind({nrep.name})")
    if check:
        _ensure_valid(out, "induced representation")
    return InductionData(out, fun, nrep, commas, colims, legs)


def induce_rep(fun: CatFunctor, nrep: Representation, dia: DiagramSpec,
               check=True) -> Representation:
    return induce_rep_data(fun, nrep, dia, check=check).rep


def induce_rep_morphism(src_data: InductionData, tgt_data: InductionData,
                        sigma: dict) -> dict:
    """Apply induction to a morphism between representations of the source."""
    dia = src_data.rep.dia
    out = {}
    for i in dia.cat.objects:
        cm = src_data.commas[i]
        if not cm.objects:
            out[i] = Matrix.zeros(dia.field, tgt_data.rep.modules[i].dim, 0)
            continue
        cone = []
        for o in cm.objects:
            j, theta = cm.obj_labels[o]
            tr_s = dia.module_tensor(theta, src_data.source.modules[j])
            tr_t = dia.module_tensor(theta, tgt_data.source.modules[j])
            cone.append(tgt_data.legs[i][o] @ tensor_map(tr_s, tr_t, sigma[j]))
        out[i] = src_data.colims[i].induced(cone)
    return out


def induction_unit(data: InductionData) -> dict:
    """N_j -> (induced N)_{F j}, through the identity comma object."""
    fun, dia = data.fun, data.rep.dia
    out = {}
    for j in fun.source.objects:
        fj = fun.on_obj(j)
        e = dia.cat.identity[fj]
        leg = data.legs[fj][f"{j}|{e}"]
        out[j] = leg @ eta_insertion(dia, fj, data.source.modules[j])
    return out


def induction_counit(data: InductionData, target: Representation) -> dict:
    """(induce . restrict)(M) -> M; the cocone legs are M's own maps."""
    dia = target.dia
    out = {}
    for i in dia.cat.objects:
        cm = data.commas[i]
        if not cm.objects:
            out[i] = Matrix.zeros(dia.field, target.modules[i].dim, 0)
            continue
        out[i] = data.colims[i].induced(
            [target.maps[cm.obj_labels[o][1]] for o in cm.objects])
    return out


# ---------------------------------------------------------------------------
# coinduction: the right adjoint of restriction


@dataclass
class CoinductionData:
    """A coinduced representation together with its pointwise limits."""

    rep: Representation
    fun: CatFunctor
    source: Representation
    commas: dict
    lims: dict
    legs: dict


def coinduce_rep_data(fun: CatFunctor, nrep: Representation, dia: DiagramSpec,
                      check=True) -> CoinductionData:
    """Right Kan extension along a functor of indices.

    The value at i is the limit, over the under-comma category of objects
    (j, theta: i -> F j), of the hom-translates Hom(B_theta, N_j). The
    structural maps are found in hom form from the defining triangles, one
    exact solve against a jointly mono family per morphism, then converted
    back to tensor form.
    """
    _check_restriction_pullback(fun, nrep.dia, dia)
    cat = dia.cat
    fld = dia.field
    commas, lims, legs, modules = {}, {}, {}, {}
    for i in cat.objects:
        cm = under_comma_category(fun, i)
        commas[i] = cm
        objs = list(cm.objects)
        if not objs:
            lims[i] = _empty_limit(fld, dia.algebra(i))
            legs[i] = {}
            modules[i] = lims[i].module
            continue
        values = []
        for o in objs:
            j, theta = cm.obj_labels[o]
            values.append(dia.edge_hom(theta, nrep.modules[j]).module)
        idx = {o: k for k, o in enumerate(objs)}
        arrows = []
        for mo in cm.mor_names:
            if cm.is_identity(mo):
                continue
            o1, o2 = cm.src(mo), cm.tgt(mo)
            j1, th1 = cm.obj_labels[o1]
            j2, _ = cm.obj_labels[o2]
            beta = cm.mor_labels[mo]
            mat = _hom_transport(dia, fun.on_mor(beta), th1, nrep.modules[j1],
                                 nrep.maps[beta], nrep.modules[j2])
            arrows.append((idx[o1], idx[o2], mat))
        lim = finite_limit(values, arrows)
        lims[i] = lim
        legs[i] = {o: lim.legs[k] for k, o in enumerate(objs)}
        modules[i] = lim.module
    maps = {}
    for a in cat.mor_names:
        s, t = cat.src(a), cat.tgt(a)
        tr_dom = dia.module_tensor(a, modules[s])
        if modules[t].dim == 0 or not commas[t].objects:
            maps[a] = Matrix.zeros(fld, modules[t].dim, tr_dom.module.dim)
            continue
        hr_out = dia.edge_hom(a, modules[t])
        blocks_a, blocks_b = [], []
        for o in commas[t].objects:
            j, theta = commas[t].obj_labels[o]
            hr_val = dia.edge_hom(theta, nrep.modules[j])
            hr_mid = dia.edge_hom(a, hr_val.module)
            blocks_a.append(hom_push(hr_out, hr_mid, legs[t][o]))
            mate = witness_mate(dia, theta, a, nrep.modules[j])
            source_leg = legs[s][f"{j}|{cat.compose(theta, a)}"]
            blocks_b.append(mate @ source_leg)
        lhs = Matrix.vstack(fld, blocks_a)
        rhs = Matrix.vstack(fld, blocks_b)
        sol = lhs.solve(rhs)
        if sol is None:
            raise Inconsistent("coinduced structural map does not land in the limit")
        maps[a] = transpose_from_hom(tr_dom, hr_out, sol)
    out = Representation(dia, modules, maps, name=f"coind({nrep.name})")
    if check:
        _ensure_valid(out, "coinduced representation")
    return CoinductionData(out, fun, nrep, commas, lims, legs)


def coinduce_rep(fun: CatFunctor, nrep: Representation, dia: DiagramSpec,
                 check=True) -> Representation:
    return coinduce_rep_data(fun, nrep, dia, check=check).rep


def coinduce_rep_morphism(src_data: CoinductionData, tgt_data: CoinductionData,
                          sigma: dict) -> dict:
    dia = src_data.rep.dia
    out = {}
    for i in dia.cat.objects:
        cm = tgt_data.commas[i]
        if not cm.objects:
            out[i] = Matrix.zeros(dia.field, 0, src_data.rep.modules[i].dim)
            continue
        cone = []
        for o in cm.objects:
            j, theta = cm.obj_labels[o]
            hr_s = dia.edge_hom(theta, src_data.source.modules[j])
            hr_t = dia.edge_hom(theta, tgt_data.source.modules[j])
            cone.append(hom_push(hr_s, hr_t, sigma[j]) @ src_data.legs[i][o])
        out[i] = tgt_data.lims[i].induced(cone)
    return out


def coinduction_unit(data: CoinductionData, source: Representation) -> dict:
    """M -> (coinduce . restrict)(M); cone legs are M's adjoint transposes."""
    dia = source.dia
    out = {}
    for i in dia.cat.objects:
        cm = data.commas[i]
        if not cm.objects:
            out[i] = Matrix.zeros(dia.field, 0, source.modules[i].dim)
            continue
        cone = []
        for o in cm.objects:
            j, theta = cm.obj_labels[o]
            tr = dia.module_tensor(theta, source.modules[i])
            hr = dia.edge_hom(theta, source.modules[data.fun.on_obj(j)])
            cone.append(transpose_to_hom(tr, hr, source.maps[theta]))
        out[i] = data.lims[i].induced(cone)
    return out


def _eval_at_unit(dia: DiagramSpec, obj, hr) -> Matrix:
    """Hom(B_id, Y) -> Y, evaluation at the unit witness image."""
    u = dia.unit_image(obj)
    cols = [(hr.basis_matrix(k) @ u).col(0) for k in range(hr.module.dim)]
    return Matrix.from_cols(dia.field, hr.y_dim, cols)


def coinduction_counit(data: CoinductionData) -> dict:
    """restrict(coinduce N) -> N, evaluation at the identity under-comma leg."""
    fun, dia = data.fun, data.rep.dia
    out = {}
    for j in fun.source.objects:
        fj = fun.on_obj(j)
        e = dia.cat.identity[fj]
        hr = dia.edge_hom(e, data.source.modules[j])
        out[j] = _eval_at_unit(dia, fj, hr) @ data.legs[fj][f"{j}|{e}"]
    return out


# ---------------------------------------------------------------------------
# one-vertex functors: evaluation, free, cofree


def point_category(cat: FinCategory, i) -> FinCategory:
    """The one-object subcategory at i containing only the identity."""
    if i not in cat.objects:
        raise UnknownObject(i)
    e = cat.identity[i]
    return FinCategory([i], [Mor(e, i, i)], {i: e}, {(e, e): e}, name=f"pt:{i}")


def point_inclusion(cat: FinCategory, i) -> CatFunctor:
    return inclusion_functor(point_category(cat, i), cat)


def value_at_vertex(rep: Representation, i) -> Module:
    """Evaluation at a vertex, the right adjoint of free_from_vertex."""
    return rep.module(i)


@dataclass
class FreeVertexData:
    """The free representation on a module placed at one vertex.

    The value at j is the coproduct over Hom(vertex, j) of the translates
    of the seed, in sorted morphism order; injections and projections of
    the summands are kept for the adjunction transposes.
    """

    rep: Representation
    vertex: str
    seed: Module
    summands: dict
    injections: dict
    projections: dict


def free_from_vertex_data(dia: DiagramSpec, i, seed: Module,
                          check=True) -> FreeVertexData:
    cat = dia.cat
    if i not in cat.objects:
        raise UnknownObject(i)
    if seed.algebra != dia.algebra(i):
        raise AlgebraMismatch("seed module lives over the wrong vertex algebra")
    fld = dia.field
    modules, summands, injs, projs = {}, {}, {}, {}
    for j in cat.objects:
        thetas = cat.hom(i, j)
        summands[j] = thetas
        if not thetas:
            modules[j] = zero_module(dia.algebra(j))
            injs[j], projs[j] = {}, {}
            continue
        ds = direct_sum_modules([dia.module_tensor(th, seed).module for th in thetas])
        modules[j] = ds.module
        injs[j] = {th: ds.injections[k] for k, th in enumerate(thetas)}
        projs[j] = {th: ds.projections[k] for k, th in enumerate(thetas)}
    maps = {}
    for a in cat.mor_names:
        s, t = cat.src(a), cat.tgt(a)
        tr_total = dia.module_tensor(a, modules[s])
        acc = Matrix.zeros(fld, modules[t].dim, tr_total.module.dim)
        for th in summands[s]:
            tr_th = dia.module_tensor(th, seed)
            tr_outer = dia.module_tensor(a, tr_th.module)
            split = tensor_map(tr_total, tr_outer, projs[s][th])
            step = injs[t][cat.compose(a, th)] @ pair_associator(dia, a, th, seed)
            acc = acc + step @ split
        maps[a] = acc
    rep = Representation(dia, modules, maps, name=f"free({i};{seed.name})")
    if check:
        _ensure_valid(rep, "free representation at a vertex")
    return FreeVertexData(rep, i, seed, summands, injs, projs)


def free_from_vertex(dia: DiagramSpec, i, seed: Module, check=True) -> Representation:
    return free_from_vertex_data(dia, i, seed, check=check).rep


def free_vertex_unit(data: FreeVertexData) -> Matrix:
    """seed -> (free rep at the vertex), insertion on the identity summand."""
    dia = data.rep.dia
    e = dia.cat.identity[data.vertex]
    return data.injections[data.vertex][e] @ eta_insertion(dia, data.vertex, data.seed)


def free_vertex_adjoint_forward(data: FreeVertexData, target: Representation,
                                sigma: dict) -> Matrix:
    """Turn a morphism out of the free representation into a module map
    out of the seed, by restricting to the identity summand."""
    return sigma[data.vertex] @ free_vertex_unit(data)


def free_vertex_adjoint_back(data: FreeVertexData, target: Representation,
                             w: Matrix) -> dict:
    """Extend a module map seed -> target_vertex to a morphism out of the free
    representation, summand by summand through the target's own maps."""
    dia = target.dia
    i = data.vertex
    out = {}
    for j in dia.cat.objects:
        acc = Matrix.zeros(dia.field, target.modules[j].dim, data.rep.modules[j].dim)
        for th in data.summands[j]:
            tr_x = dia.module_tensor(th, data.seed)
            tr_m = dia.module_tensor(th, target.modules[i])
            acc = acc + target.maps[th] @ tensor_map(tr_x, tr_m, w) @ data.projections[j][th]
        out[j] = acc
    return out


def free_vs_induction_iso(dia: DiagramSpec, i, seed: Module) -> dict:
    """The comparison isomorphism between induction along the point inclusion
    and the explicit coproduct formula, one invertible matrix per vertex."""
    fun = point_inclusion(dia.cat, i)
    sub = restrict_diagram(dia, fun)
    point_rep = build_representation(sub, {i: seed}, {}, name="seed")
    ind = induce_rep_data(fun, point_rep, dia)
    data = free_from_vertex_data(dia, i, seed)
    iso = {}
    for j in dia.cat.objects:
        cm = ind.commas[j]
        if not cm.objects:
            iso[j] = Matrix.zeros(dia.field, data.rep.modules[j].dim, 0)
            continue
        cone = [data.injections[j][cm.obj_labels[o][1]] for o in cm.objects]
        iso[j] = ind.colims[j].induced(cone)
    if not is_rep_morphism(ind.rep, data.rep, iso):
        raise Inconsistent("comparison with induction is not a morphism")
    for j, m in iso.items():
        if not m.is_invertible():
            raise Inconsistent(f"comparison with induction fails at {j!r}")
    return iso


# ---------------------------------------------------------------------------
# extension by zero across a prime ideal


def _ideal_subdiagram(dia: DiagramSpec, ideal: MorphismIdeal):
    sub_cat = quotient_subcategory(dia.cat, ideal)
    incl = inclusion_functor(sub_cat, dia.cat)
    return sub_cat, incl, restrict_diagram(dia, incl)


def extend_by_zero(dia: DiagramSpec, ideal: MorphismIdeal, nrep: Representation,
                   check=True) -> Representation:
    """Extend a representation of the surviving subcategory by zero.

    Surviving morphisms keep their maps; everything in the ideal acts as
    zero. Primeness of the ideal is exactly what makes the pair laws close.
    """
    if ideal.carrier and not (ideal.two_sided and ideal.prime):
        raise NotPrime("extension by zero needs a two-sided prime ideal")
    cat = dia.cat
    sub_cat, _, _ = _ideal_subdiagram(dia, ideal)
    if nrep.dia.cat.objects != sub_cat.objects or nrep.dia.cat.mor_names != sub_cat.mor_names:
        raise FunctorMismatch("representation is not indexed by the surviving subcategory")
    alive = set(sub_cat.objects)
    modules = {i: nrep.modules[i] if i in alive else zero_module(dia.algebra(i))
               for i in cat.objects}
    maps = {}
    for m in cat.mor_names:
        if m in ideal:
            tr = dia.module_tensor(m, modules[cat.src(m)])
            maps[m] = Matrix.zeros(dia.field, modules[cat.tgt(m)].dim, tr.module.dim)
        else:
            maps[m] = nrep.maps[m]
    out = Representation(dia, modules, maps, name=f"ext({nrep.name})")
    if check:
        _ensure_valid(out, "extension by zero")
    return out


def extend_by_zero_morphism(dia: DiagramSpec, ideal: MorphismIdeal, sigma: dict) -> dict:
    out = dict(sigma)
    for i in dia.cat.objects:
        out.setdefault(i, Matrix.zeros(dia.field, 0, 0))
    return out


# ---------------------------------------------------------------------------
# canonical inflow and outflow maps


@dataclass
class CanonicalColimitMap:
    """The comparison map into a vertex from the colimit over the ideal
    morphisms arriving there."""

    vertex: str
    shape: FinCategory
    colim: ColimitResult
    matrix: Matrix


@dataclass
class CanonicalLimitMap:
    """The comparison map from a vertex into the limit over the ideal
    morphisms leaving it."""

    vertex: str
    shape: FinCategory
    lim: LimitResult
    matrix: Matrix


def _require_surviving(cat, ideal, i):
    if i not in cat.objects:
        raise UnknownObject(i)
    if cat.identity[i] in ideal:
        raise UnknownObject(f"{i!r} does not survive the ideal")


def inflow_map(dia: DiagramSpec, ideal: MorphismIdeal, rep: Representation, i,
               convention: str = "comma") -> CanonicalColimitMap:
    """Colimit of the translates arriving at i through the ideal, with its
    induced comparison into the value at i.

    The cocone legs are the representation's own structural maps, so the
    compatibility check inside the induced map doubles as the uniqueness
    assertion for the comparison.
    """
    cat = dia.cat
    _require_surviving(cat, ideal, i)
    shape = inflow_index_category(cat, ideal, i, convention)
    fld = dia.field
    objs = list(shape.objects)
    if not objs:
        col = _empty_colimit(fld, dia.algebra(i))
        return CanonicalColimitMap(i, shape, col,
                                   Matrix.zeros(fld, rep.modules[i].dim, 0))
    values = [dia.module_tensor(th, rep.modules[cat.src(th)]).module for th in objs]
    idx = {o: k for k, o in enumerate(objs)}
    arrows = []
    for mo in shape.mor_names:
        if shape.is_identity(mo):
            continue
        th1, th2 = shape.src(mo), shape.tgt(mo)
        gamma = shape.mor_labels[mo]
        mat = _transport_through(dia, th2, gamma, rep.modules[cat.src(th1)],
                                 rep.maps[gamma], rep.modules[cat.src(th2)])
        arrows.append((idx[th1], idx[th2], mat))
    col = finite_colimit(values, arrows)
    return CanonicalColimitMap(i, shape, col, col.induced([rep.maps[th] for th in objs]))


def outflow_map(dia: DiagramSpec, ideal: MorphismIdeal, rep: Representation, i,
                convention: str = "comma") -> CanonicalLimitMap:
    """Limit of the hom-translates leaving i through the ideal, with the
    induced comparison from the value at i; cone legs are the adjoint
    transposes of the structural maps."""
    cat = dia.cat
    _require_surviving(cat, ideal, i)
    shape = outflow_index_category(cat, ideal, i, convention)
    fld = dia.field
    objs = list(shape.objects)
    if not objs:
        lim = _empty_limit(fld, dia.algebra(i))
        return CanonicalLimitMap(i, shape, lim,
                                 Matrix.zeros(fld, 0, rep.modules[i].dim))
    values = [dia.edge_hom(th, rep.modules[cat.tgt(th)]).module for th in objs]
    idx = {o: k for k, o in enumerate(objs)}
    arrows = []
    for mo in shape.mor_names:
        if shape.is_identity(mo):
            continue
        th1, th2 = shape.src(mo), shape.tgt(mo)
        gamma = shape.mor_labels[mo]
        mat = _hom_transport(dia, gamma, th1, rep.modules[cat.tgt(th1)],
                             rep.maps[gamma], rep.modules[cat.tgt(th2)])
        arrows.append((idx[th1], idx[th2], mat))
    lim = finite_limit(values, arrows)
    cone = []
    for th in objs:
        tr = dia.module_tensor(th, rep.modules[i])
        hr = dia.edge_hom(th, rep.modules[cat.tgt(th)])
        cone.append(transpose_to_hom(tr, hr, rep.maps[th]))
    return CanonicalLimitMap(i, shape, lim, lim.induced(cone))


# ---------------------------------------------------------------------------
# cokernel and kernel across an ideal


@dataclass
class IdealCokernelData:
    """Vertexwise cokernels of the inflow maps, as a representation of the
    surviving subcategory, with the quotient projections."""

    rep: Representation
    sub_dia: DiagramSpec
    inclusion: CatFunctor
    projections: dict
    inflows: dict


@dataclass
class IdealKernelData:
    """Vertexwise kernels of the outflow maps, with their inclusions."""

    rep: Representation
    sub_dia: DiagramSpec
    inclusion: CatFunctor
    inclusions: dict
    outflows: dict


def ideal_cokernel(dia: DiagramSpec, ideal: MorphismIdeal, rep: Representation,
                   convention: str = "comma", check=True) -> IdealCokernelData:
    """The left adjoint of extension by zero.

    At each surviving vertex, quotient by the image of the inflow map; the
    structural maps descend because tensoring with an edge preserves the
    quotient projections being epi, and are recovered by an exact solve.
    """
    if ideal.carrier and not (ideal.two_sided and ideal.prime):
        raise NotPrime("the ideal cokernel needs a two-sided prime ideal")
    sub_cat, incl, sub_dia = _ideal_subdiagram(dia, ideal)
    modules, projections, inflows = {}, {}, {}
    for i in sub_cat.objects:
        flow = inflow_map(dia, ideal, rep, i, convention)
        fact = morphism_factorization(flow.matrix, flow.colim.module, rep.modules[i])
        modules[i] = fact.cokernel
        projections[i] = fact.coker_projection
        inflows[i] = flow
    maps = {}
    for a in sub_cat.mor_names:
        s, t = sub_cat.src(a), sub_cat.tgt(a)
        tr_m = dia.module_tensor(a, rep.modules[s])
        tr_c = dia.module_tensor(a, modules[s])
        through = tensor_map(tr_m, tr_c, projections[s])
        sol = through.solve_left(projections[t] @ rep.maps[a])
        if sol is None:
            raise Inconsistent("cokernel structural map does not descend")
        maps[a] = sol
    out = Representation(sub_dia, modules, maps, name=f"cok({rep.name})")
    if check:
        _ensure_valid(out, "ideal cokernel")
    return IdealCokernelData(out, sub_dia, incl, projections, inflows)


def ideal_kernel(dia: DiagramSpec, ideal: MorphismIdeal, rep: Representation,
                 convention: str = "comma", check=True) -> IdealKernelData:
    """The right adjoint of extension by zero: vertexwise kernels of the
    outflow maps, with structural maps restricted along the inclusions."""
    if ideal.carrier and not (ideal.two_sided and ideal.prime):
        raise NotPrime("the ideal kernel needs a two-sided prime ideal")
    sub_cat, incl, sub_dia = _ideal_subdiagram(dia, ideal)
    modules, inclusions, outflows = {}, {}, {}
    for i in sub_cat.objects:
        flow = outflow_map(dia, ideal, rep, i, convention)
        fact = morphism_factorization(flow.matrix, rep.modules[i], flow.lim.module)
        modules[i] = fact.kernel
        inclusions[i] = fact.kernel_inclusion
        outflows[i] = flow
    maps = {}
    for a in sub_cat.mor_names:
        s, t = sub_cat.src(a), sub_cat.tgt(a)
        tr_k = dia.module_tensor(a, modules[s])
        tr_m = dia.module_tensor(a, rep.modules[s])
        pushed = rep.maps[a] @ tensor_map(tr_k, tr_m, inclusions[s])
        maps[a] = inclusions[t].solve_exact(pushed)
    out = Representation(sub_dia, modules, maps, name=f"ker({rep.name})")
    if check:
        _ensure_valid(out, "ideal kernel")
    return IdealKernelData(out, sub_dia, incl, inclusions, outflows)


def vertex_cokernel(dia: DiagramSpec, rep: Representation, i,
                    convention: str = "comma"):
    """Cokernel of the inflow at i for the ideal of all non-endomorphisms
    of i: the module together with the quotient projection."""
    ideal = endo_prime_ideal(dia.cat, i)
    flow = inflow_map(dia, ideal, rep, i, convention)
    fact = morphism_factorization(flow.matrix, flow.colim.module, rep.modules[i])
    return fact.cokernel, fact.coker_projection


def vertex_kernel(dia: DiagramSpec, rep: Representation, i,
                  convention: str = "comma"):
    """Kernel of the outflow at i for the ideal of all non-endomorphisms
    of i: the module together with its inclusion."""
    ideal = endo_prime_ideal(dia.cat, i)
    flow = outflow_map(dia, ideal, rep, i, convention)
    fact = morphism_factorization(flow.matrix, rep.modules[i], flow.lim.module)
    return fact.kernel, fact.kernel_inclusion


# ---------------------------------------------------------------------------
# stalk functors at a vertex


def _stalk_pieces(dia: DiagramSpec, i):
    ideal = endo_prime_ideal(dia.cat, i)
    sub_cat, _, sub_dia = _ideal_subdiagram(dia, ideal)
    pt_fun = inclusion_functor(point_category(sub_cat, i), sub_cat)
    pt_dia = restrict_diagram(sub_dia, pt_fun)
    return ideal, sub_dia, pt_fun, pt_dia


def stalk_induced(dia: DiagramSpec, i, seed: Module, check=True) -> Representation:
    """Left stalk at a vertex: induce the seed through the endomorphisms of
    the vertex (a coproduct of translates with the endomorphism action
    assembled from the composition witnesses), then extend by zero."""
    ideal, sub_dia, pt_fun, pt_dia = _stalk_pieces(dia, i)
    point_rep = build_representation(pt_dia, {i: seed}, {}, name="seed")
    inner = induce_rep(pt_fun, point_rep, sub_dia, check=check)
    return extend_by_zero(dia, ideal, inner, check=check)


def stalk_coinduced(dia: DiagramSpec, i, seed: Module, check=True) -> Representation:
    """Right stalk at a vertex: coinduce the seed through the endomorphisms
    (a product of hom-translates), then extend by zero."""
    ideal, sub_dia, pt_fun, pt_dia = _stalk_pieces(dia, i)
    point_rep = build_representation(pt_dia, {i: seed}, {}, name="seed")
    inner = coinduce_rep(pt_fun, point_rep, sub_dia, check=check)
    return extend_by_zero(dia, ideal, inner, check=check)


# ---------------------------------------------------------------------------
# adjunction certificates


@dataclass
class AdjunctionWitness:
    """A verification record for one adjoint pair on sampled inputs.

    dim_checks compares hom-space dimensions on the two sides; round_trips
    feeds every basis element through the explicit transposes both ways;
    triangles records the unit/counit triangle identities where the unit
    and counit were constructed.
    """

    kind: str
    left_tag: str
    right_tag: str
    dim_checks: list
    round_trips: list
    triangles: list
    units: list
    counits: list

    @property
    def ok(self) -> bool:
        return (all(d["equal"] for d in self.dim_checks)
                and all(t["ok"] for t in self.round_trips)
                and all(t["ok"] for t in self.triangles))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "left": self.left_tag,
            "right": self.right_tag,
            "dim_checks": self.dim_checks,
            "round_trips": self.round_trips,
            "triangles": self.triangles,
            "ok": self.ok,
        }


def _dim_entry(label, left, right):
    return {"sample": label, "left": left, "right": right, "equal": left == right}


def _trip_entry(label, ok):
    return {"sample": label, "ok": bool(ok)}


def _identity_morphism(rep: Representation) -> dict:
    return {i: Matrix.identity(rep.field, rep.modules[i].dim)
            for i in rep.dia.cat.objects}


def _adj_induce_restrict(dia, fun, samples):
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (nrep, mrep) in enumerate(samples):
        ind = induce_rep_data(fun, nrep, dia, check=False)
        res = restrict_rep(fun, mrep, sub_dia=nrep.dia)
        left = rep_hom_basis(ind.rep, mrep)
        right = rep_hom_basis(nrep, res)
        dims.append(_dim_entry(k, len(left), len(right)))
        unit = induction_unit(ind)
        ind_res = induce_rep_data(fun, res, dia, check=False)
        counit = induction_counit(ind_res, mrep)
        units.append(unit)
        counits.append(counit)

        def u(sig):
            return {j: sig[fun.on_obj(j)] @ unit[j] for j in fun.source.objects}

        def v(w):
            gw = induce_rep_morphism(ind, ind_res, w)
            return {i: counit[i] @ gw[i] for i in dia.cat.objects}

        trips.append(_trip_entry((k, "back.forward"),
                                 all(_same_morphism(v(u(s)), s) for s in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(_same_morphism(u(v(w)), w) for w in right)))
        res_ind = restrict_rep(fun, ind.rep, sub_dia=nrep.dia)
        ind2 = induce_rep_data(fun, res_ind, dia, check=False)
        g_eta = induce_rep_morphism(ind, ind2, unit)
        eps_ind = induction_counit(ind2, ind.rep)
        tri1 = _same_morphism({i: eps_ind[i] @ g_eta[i] for i in dia.cat.objects},
                              _identity_morphism(ind.rep))
        tris.append(_trip_entry((k, "counit.left"), tri1))
        unit_res = induction_unit(ind_res)
        tri2 = all(counit[fun.on_obj(j)] @ unit_res[j]
                   == Matrix.identity(dia.field, res.modules[j].dim)
                   for j in fun.source.objects)
        tris.append(_trip_entry((k, "right.unit"), tri2))
    return dims, trips, tris, units, counits


def _adj_restrict_coinduce(dia, fun, samples):
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (mrep, nrep) in enumerate(samples):
        co = coinduce_rep_data(fun, nrep, dia, check=False)
        res = restrict_rep(fun, mrep, sub_dia=nrep.dia)
        left = rep_hom_basis(res, nrep)
        right = rep_hom_basis(mrep, co.rep)
        dims.append(_dim_entry(k, len(left), len(right)))
        counit = coinduction_counit(co)
        co_res = coinduce_rep_data(fun, res, dia, check=False)
        unit = coinduction_unit(co_res, mrep)
        units.append(unit)
        counits.append(counit)

        def u(sig):
            gs = coinduce_rep_morphism(co_res, co, sig)
            return {i: gs[i] @ unit[i] for i in dia.cat.objects}

        def v(w):
            return {j: counit[j] @ w[fun.on_obj(j)] for j in fun.source.objects}

        trips.append(_trip_entry((k, "back.forward"),
                                 all(_same_morphism(v(u(s)), s) for s in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(_same_morphism(u(v(w)), w) for w in right)))
    return dims, trips, tris, units, counits


def _adj_free_vertex(dia, vertex, samples):
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (seed, mrep) in enumerate(samples):
        data = free_from_vertex_data(dia, vertex, seed, check=False)
        left = rep_hom_basis(data.rep, mrep)
        right = module_hom_basis(seed, mrep.modules[vertex])
        dims.append(_dim_entry(k, len(left), len(right)))
        trips.append(_trip_entry(
            (k, "back.forward"),
            all(_same_morphism(
                free_vertex_adjoint_back(
                    data, mrep, free_vertex_adjoint_forward(data, mrep, s)), s)
                for s in left)))
        trips.append(_trip_entry(
            (k, "forward.back"),
            all(free_vertex_adjoint_forward(
                data, mrep, free_vertex_adjoint_back(data, mrep, w)) == w
                for w in right)))
        unit = free_vertex_unit(data)
        units.append({vertex: unit})
        data2 = free_from_vertex_data(dia, vertex, data.rep.modules[vertex],
                                      check=False)
        counit_free = free_vertex_adjoint_back(
            data2, data.rep, Matrix.identity(dia.field, data.rep.modules[vertex].dim))
        free_unit = {}
        for j in dia.cat.objects:
            acc = Matrix.zeros(dia.field, data2.rep.modules[j].dim,
                               data.rep.modules[j].dim)
            for th in data.summands[j]:
                tr_s = dia.module_tensor(th, seed)
                tr_t = dia.module_tensor(th, data.rep.modules[vertex])
                acc = acc + data2.injections[j][th] @ tensor_map(tr_s, tr_t, unit) \
                    @ data.projections[j][th]
            free_unit[j] = acc
        tri1 = _same_morphism({j: counit_free[j] @ free_unit[j]
                               for j in dia.cat.objects},
                              _identity_morphism(data.rep))
        tris.append(_trip_entry((k, "counit.left"), tri1))
        data_m = free_from_vertex_data(dia, vertex, mrep.modules[vertex], check=False)
        counit_m = free_vertex_adjoint_back(
            data_m, mrep, Matrix.identity(dia.field, mrep.modules[vertex].dim))
        counits.append(counit_m)
        tri2 = (counit_m[vertex] @ free_vertex_unit(data_m)
                == Matrix.identity(dia.field, mrep.modules[vertex].dim))
        tris.append(_trip_entry((k, "right.unit"), tri2))
    return dims, trips, tris, units, counits


def _adj_coker_extend(dia, ideal, samples, convention):
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (mrep, nrep) in enumerate(samples):
        cdata = ideal_cokernel(dia, ideal, mrep, convention, check=False)
        nrep = _rehouse(nrep, cdata.sub_dia)
        lifted = extend_by_zero(dia, ideal, nrep, check=False)
        left = rep_hom_basis(cdata.rep, nrep)
        right = rep_hom_basis(mrep, lifted)
        dims.append(_dim_entry(k, len(left), len(right)))
        alive = set(cdata.sub_dia.cat.objects)

        def u(sig):
            return {i: sig[i] @ cdata.projections[i] if i in alive
                    else Matrix.zeros(dia.field, 0, mrep.modules[i].dim)
                    for i in dia.cat.objects}

        def v(w):
            out = {}
            for i in alive:
                sol = cdata.projections[i].solve_left(w[i])
                if sol is None:
                    raise Inconsistent("morphism does not kill the inflow image")
                out[i] = sol
            return out

        trips.append(_trip_entry((k, "back.forward"),
                                 all(_same_morphism(v(u(s)), s) for s in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(_same_morphism(u(v(w)), w) for w in right)))
    return dims, trips, tris, units, counits


def _adj_extend_kernel(dia, ideal, samples, convention):
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (nrep, mrep) in enumerate(samples):
        kdata = ideal_kernel(dia, ideal, mrep, convention, check=False)
        nrep = _rehouse(nrep, kdata.sub_dia)
        lifted = extend_by_zero(dia, ideal, nrep, check=False)
        left = rep_hom_basis(lifted, mrep)
        right = rep_hom_basis(nrep, kdata.rep)
        dims.append(_dim_entry(k, len(left), len(right)))
        alive = set(kdata.sub_dia.cat.objects)

        def u(sig):
            return {i: kdata.inclusions[i].solve_exact(sig[i]) for i in alive}

        def v(w):
            return {i: kdata.inclusions[i] @ w[i] if i in alive
                    else Matrix.zeros(dia.field, mrep.modules[i].dim, 0)
                    for i in dia.cat.objects}

        trips.append(_trip_entry((k, "back.forward"),
                                 all(_same_morphism(v(u(s)), s) for s in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(_same_morphism(u(v(w)), w) for w in right)))
    return dims, trips, tris, units, counits


def _adj_coker_stalk(dia, vertex, samples, convention):
    ideal, sub_dia, pt_fun, pt_dia = _stalk_pieces(dia, vertex)
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (mrep, seed) in enumerate(samples):
        cdata = ideal_cokernel(dia, ideal, mrep, convention, check=False)
        point_rep = build_representation(pt_dia, {vertex: seed}, {}, name="seed")
        co = coinduce_rep_data(pt_fun, point_rep, sub_dia, check=False)
        stalk = extend_by_zero(dia, ideal, co.rep, check=False)
        left = module_hom_basis(cdata.rep.modules[vertex], seed)
        right = rep_hom_basis(mrep, stalk)
        dims.append(_dim_entry(k, len(left), len(right)))
        res_cok = restrict_rep(pt_fun, cdata.rep, sub_dia=pt_dia)
        co_res = coinduce_rep_data(pt_fun, res_cok, sub_dia, check=False)
        unit_r = coinduction_unit(co_res, cdata.rep)
        counit_pt = coinduction_counit(co)
        alive = set(sub_dia.cat.objects)

        def u(w):
            gs = coinduce_rep_morphism(co_res, co, {vertex: w})
            mid = {i: gs[i] @ unit_r[i] for i in sub_dia.cat.objects}
            return {i: mid[i] @ cdata.projections[i] if i in alive
                    else Matrix.zeros(dia.field, 0, mrep.modules[i].dim)
                    for i in dia.cat.objects}

        def v(sig):
            sol = cdata.projections[vertex].solve_left(sig[vertex])
            if sol is None:
                raise Inconsistent("morphism does not kill the inflow image")
            return counit_pt[vertex] @ sol

        trips.append(_trip_entry((k, "back.forward"),
                                 all(v(u(w)) == w for w in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(_same_morphism(u(v(s)), s) for s in right)))
    return dims, trips, tris, units, counits


def _adj_stalk_kernel(dia, vertex, samples, convention):
    ideal, sub_dia, pt_fun, pt_dia = _stalk_pieces(dia, vertex)
    dims, trips, tris, units, counits = [], [], [], [], []
    for k, (seed, mrep) in enumerate(samples):
        kdata = ideal_kernel(dia, ideal, mrep, convention, check=False)
        point_rep = build_representation(pt_dia, {vertex: seed}, {}, name="seed")
        ind = induce_rep_data(pt_fun, point_rep, sub_dia, check=False)
        stalk = extend_by_zero(dia, ideal, ind.rep, check=False)
        left = rep_hom_basis(stalk, mrep)
        right = module_hom_basis(seed, kdata.rep.modules[vertex])
        dims.append(_dim_entry(k, len(left), len(right)))
        unit_pt = induction_unit(ind)
        res_ker = restrict_rep(pt_fun, kdata.rep, sub_dia=pt_dia)
        ind_res = induce_rep_data(pt_fun, res_ker, sub_dia, check=False)
        counit_k = induction_counit(ind_res, kdata.rep)
        alive = set(sub_dia.cat.objects)

        def u(sig):
            mid = {i: kdata.inclusions[i].solve_exact(sig[i]) for i in alive}
            return mid[vertex] @ unit_pt[vertex]

        def v(w):
            gw = induce_rep_morphism(ind, ind_res, {vertex: w})
            mid = {i: counit_k[i] @ gw[i] for i in sub_dia.cat.objects}
            return {i: kdata.inclusions[i] @ mid[i] if i in alive
                    else Matrix.zeros(dia.field, mrep.modules[i].dim, 0)
                    for i in dia.cat.objects}

        trips.append(_trip_entry((k, "back.forward"),
                                 all(_same_morphism(v(u(s)), s) for s in left)))
        trips.append(_trip_entry((k, "forward.back"),
                                 all(u(v(w)) == w for w in right)))
    return dims, trips, tris, units, counits


_ADJUNCTION_TAGS = {
    "induce-restrict": ("induce_rep", "restrict_rep"),
    "restrict-coinduce": ("restrict_rep", "coinduce_rep"),
    "free-vertex": ("free_from_vertex", "value_at_vertex"),
    "coker-extend": ("ideal_cokernel", "extend_by_zero"),
    "extend-kernel": ("extend_by_zero", "ideal_kernel"),
    "coker-stalk": ("vertex_cokernel", "stalk_coinduced"),
    "stalk-kernel": ("stalk_induced", "vertex_kernel"),
}


def verify_adjunction(kind: str, dia: DiagramSpec, samples, fun: CatFunctor = None,
                      ideal: MorphismIdeal = None, vertex=None,
                      convention: str = "comma") -> AdjunctionWitness:
    """Certify one adjoint pair on a list of sampled inputs.

    samples is a list of (left input, right input) pairs whose shapes depend
    on the kind: representations of the source/target categories for the
    change-of-index kinds, a module and a representation for the one-vertex
    and stalk kinds. The returned witness records hom-dimension equalities,
    both round trips through the explicit transposes on entire hom bases,
    and triangle identities where the unit and counit are constructed.
    """
    if kind not in _ADJUNCTION_TAGS:
        raise UnknownObject(f"unknown adjunction kind {kind!r}")
    if kind == "induce-restrict":
        parts = _adj_induce_restrict(dia, fun, samples)
    elif kind == "restrict-coinduce":
        parts = _adj_restrict_coinduce(dia, fun, samples)
    elif kind == "free-vertex":
        parts = _adj_free_vertex(dia, vertex, samples)
    elif kind == "coker-extend":
        parts = _adj_coker_extend(dia, ideal, samples, convention)
    elif kind == "extend-kernel":
        parts = _adj_extend_kernel(dia, ideal, samples, convention)
    elif kind == "coker-stalk":
        parts = _adj_coker_stalk(dia, vertex, samples, convention)
    else:
        parts = _adj_stalk_kernel(dia, vertex, samples, convention)
    dims, trips, tris, units, counits = parts
    left_tag, right_tag = _ADJUNCTION_TAGS[kind]
    return AdjunctionWitness(kind, left_tag, right_tag, dims, trips, tris,
                             units, counits)


# ---------------------------------------------------------------------------
# generators


@dataclass
class GeneratorWitness:
    """A nonzero morphism into a representation from a free one."""

    vertex: str
    seed: Module
    source: Representation
    components: dict


def generating_morphism(rep: Representation) -> GeneratorWitness:
    """A nonzero map from the free representation on a free module at some
    vertex with nonzero value, through the one-vertex adjunction."""
    nonzero = [i for i in rep.dia.cat.objects if rep.modules[i].dim > 0]
    if not nonzero:
        raise ZeroRepresentation("the zero representation has no generators")
    i = nonzero[0]
    seed, cover = free_cover(rep.modules[i])
    data = free_from_vertex_data(rep.dia, i, seed)
    components = free_vertex_adjoint_back(data, rep, cover)
    if all(m == Matrix.zeros(rep.field, m.nrows, m.ncols)
           for m in components.values()):
        raise Inconsistent("generator witness collapsed to zero")
    return GeneratorWitness(i, seed, data.rep, components)
