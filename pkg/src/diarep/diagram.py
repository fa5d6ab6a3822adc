"""Diagrams of module categories over a finite index category.

A diagram assigns an algebra to every object, a bimodule to every morphism
(the bimodule of g: i -> j lives over (algebra at j, algebra at i)), an
invertible composition witness B_g (x) B_f -> B_{gf} to every composable
pair, and an invertible unit witness from each vertex algebra onto the
bimodule of its identity morphism. Nothing is assumed strict: the two
coherence laws, agreement of the two contractions of every composable
triple and the two unit triangles, are verified on plain Kronecker spaces.
"""

from .errors import FunctorMismatch, Inconsistent, InvalidStructure, UnknownObject
from .fincat import CatFunctor, FinCategory, opposite
from .linalg import Matrix
from .modcat import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    bimodule_from_morphism,
    field_algebra,
    hom_module,
    opposite_algebra,
    opposite_bimodule,
    tensor_bimodules,
    tensor_over_algebra,
    validate_algebra,
    validate_bimodule,
)
from .reports import ValidationReport


class DiagramSpec:
    """A non-strict diagram of module categories, with caches.

    tau is keyed by composable pairs (g, f) of morphism names, eta by
    object. Tensor and hom constructions over the edge bimodules are
    memoized on the instance since every functor in the package keeps
    hitting the same ones.
    """

    def __init__(self, cat: FinCategory, algebras, bimodules, tau, eta, name="D"):
        self.cat = cat
        self.algebras = dict(algebras)
        self.bimodules = dict(bimodules)
        self.tau = {tuple(k): v for k, v in tau.items()}
        self.eta = dict(eta)
        self.name = name
        self._pair_cache = {}
        self._module_tensor_cache = {}
        self._edge_hom_cache = {}
        self._mate_cache = {}
        self._assoc_cache = {}

    def algebra(self, obj) -> Algebra:
        try:
            return self.algebras[obj]
        except KeyError:
            raise UnknownObject(f"no algebra at object {obj!r}") from None

    def bimodule(self, m) -> Bimodule:
        try:
            return self.bimodules[m]
        except KeyError:
            raise UnknownObject(f"no bimodule at morphism {m!r}") from None

    def tau_component(self, g, f) -> Matrix:
        try:
            return self.tau[(g, f)]
        except KeyError:
            raise UnknownObject(f"no composition witness at ({g!r}, {f!r})") from None

    def eta_component(self, obj) -> Matrix:
        try:
            return self.eta[obj]
        except KeyError:
            raise UnknownObject(f"no unit witness at object {obj!r}") from None

    def unit_image(self, obj) -> Matrix:
        """The image of 1 under the unit witness, as a column in B at the identity."""
        return self.eta_component(obj) @ self.algebra(obj).unit

    def edge_tensor(self, g, f):
        key = (g, f)
        if key not in self._pair_cache:
            self._pair_cache[key] = tensor_bimodules(self.bimodule(g), self.bimodule(f))
        return self._pair_cache[key]

    def module_tensor(self, f, module):
        key = (f, module)
        if key not in self._module_tensor_cache:
            self._module_tensor_cache[key] = tensor_over_algebra(self.bimodule(f), module)
        return self._module_tensor_cache[key]

    def edge_hom(self, f, module):
        key = (f, module)
        if key not in self._edge_hom_cache:
            self._edge_hom_cache[key] = hom_module(self.bimodule(f), module)
        return self._edge_hom_cache[key]

    @property
    def field(self):
        return self.algebras[self.cat.objects[0]].field


def validate_diagram(dia: DiagramSpec, deep=True) -> ValidationReport:
    """Check the whole structure: shapes, bimodule axioms, both coherence laws.

    With deep=False the per-algebra and per-bimodule axioms are skipped,
    which is useful when revalidating after a small mutation.
    """
    rep = ValidationReport()
    cat = dia.cat
    for i in cat.objects:
        if i not in dia.algebras:
            rep.fail("dia.missing-algebra", (i,))
            return rep
        if deep:
            rep.merge(validate_algebra(dia.algebras[i]))
    for m in cat.mor_names:
        if m not in dia.bimodules:
            rep.fail("dia.missing-bimodule", (m,))
            return rep
        b = dia.bimodules[m]
        rep.bump()
        if b.left_algebra != dia.algebra(cat.tgt(m)) or b.right_algebra != dia.algebra(cat.src(m)):
            rep.fail("dia.bimodule-endpoints", (m,),
                     "bimodule algebras do not match the morphism endpoints")
            return rep
        if deep:
            rep.merge(validate_bimodule(b))
    # unit witnesses: invertible bimodule maps from the regular bimodule
    for i in cat.objects:
        if i not in dia.eta:
            rep.fail("dia.missing-unit-witness", (i,))
            return rep
        alg = dia.algebra(i)
        be = dia.bimodule(cat.identity[i])
        n = dia.eta[i]
        rep.bump()
        if n.nrows != be.dim or n.ncols != alg.dim:
            rep.fail("dia.unit-shape", (i,))
            continue
        for k in range(alg.dim):
            rep.bump()
            if n @ alg.left_mult[k] != be.left_action[k] @ n:
                rep.fail("dia.unit-left-linear", (i, alg.basis[k]))
            rep.bump()
            if n @ alg.right_mult(k) != be.right_action[k] @ n:
                rep.fail("dia.unit-right-linear", (i, alg.basis[k]))
        rep.bump()
        if not n.is_invertible():
            rep.fail("dia.unit-invertible", (i,))
    # composition witnesses: invertible bimodule maps out of the edge tensor
    for g, f in cat.composable_pairs():
        if (g, f) not in dia.tau:
            rep.fail("dia.missing-composition-witness", (g, f))
            return rep
        t = dia.tau[(g, f)]
        gf = cat.compose(g, f)
        b_gf = dia.bimodule(gf)
        tens = dia.edge_tensor(g, f)
        rep.bump()
        if t.nrows != b_gf.dim or t.ncols != tens.bimodule.dim:
            rep.fail("dia.witness-shape", (g, f))
            continue
        for k in range(b_gf.left_algebra.dim):
            rep.bump()
            if t @ tens.bimodule.left_action[k] != b_gf.left_action[k] @ t:
                rep.fail("dia.witness-left-linear", (g, f, b_gf.left_algebra.basis[k]))
        for k in range(b_gf.right_algebra.dim):
            rep.bump()
            if t @ tens.bimodule.right_action[k] != b_gf.right_action[k] @ t:
                rep.fail("dia.witness-right-linear", (g, f, b_gf.right_algebra.basis[k]))
        rep.bump()
        if not t.is_invertible():
            rep.fail("dia.witness-invertible", (g, f))
    if not rep.ok:
        return rep
    # unit triangles: contracting against a unit witness is the identity
    for m in cat.mor_names:
        i, j = cat.src(m), cat.tgt(m)
        d = dia.bimodule(m).dim
        eye = Matrix.identity(dia.field, d)
        right = (dia.tau_component(m, cat.identity[i])
                 @ dia.edge_tensor(m, cat.identity[i]).pi
                 @ Matrix.kron(eye, dia.unit_image(i)))
        rep.bump()
        if right != eye:
            rep.fail("dia.triangle-right", (m,))
        left = (dia.tau_component(cat.identity[j], m)
                @ dia.edge_tensor(cat.identity[j], m).pi
                @ Matrix.kron(dia.unit_image(j), eye))
        rep.bump()
        if left != eye:
            rep.fail("dia.triangle-left", (m,))
    # associativity: both contractions of a triple agree on the plain space
    for h, g, f in cat.composable_triples():
        hg = cat.compose(h, g)
        gf = cat.compose(g, f)
        dh = dia.bimodule(h).dim
        df = dia.bimodule(f).dim
        inner_left = dia.tau_component(h, g) @ dia.edge_tensor(h, g).pi
        path1 = (dia.tau_component(hg, f) @ dia.edge_tensor(hg, f).pi
                 @ Matrix.kron(inner_left, Matrix.identity(dia.field, df)))
        inner_right = dia.tau_component(g, f) @ dia.edge_tensor(g, f).pi
        path2 = (dia.tau_component(h, gf) @ dia.edge_tensor(h, gf).pi
                 @ Matrix.kron(Matrix.identity(dia.field, dh), inner_right))
        rep.bump()
        if path1 != path2:
            rep.fail("dia.triple", (h, g, f),
                     "the two contraction orders disagree")
    return rep


# ---------------------------------------------------------------------------
# builders


def ring_diagram(cat: FinCategory, algebras, morphism_maps) -> DiagramSpec:
    """The strict diagram of an algebra-valued functor.

    morphism_maps takes morphism names to AlgebraMorphism values; identity
    morphisms may be omitted, and any other missing morphism is filled in
    by composing along its generator expression. The assembled family must
    be functorial.
    """
    algebras = dict(algebras)
    maps = dict(morphism_maps)
    for i in cat.objects:
        e = cat.identity[i]
        if e not in maps:
            a = algebras[i]
            maps[e] = AlgebraMorphism(a, a, Matrix.identity(a.field, a.dim))
    for m in cat.mor_names:
        if m in maps:
            continue
        expr = cat.expressions.get(m)
        if expr is None:
            raise FunctorMismatch(f"no algebra map for {m!r} and no expression to build one")
        acc = maps[expr[-1]].matrix
        src = maps[expr[-1]].source
        for gname in reversed(expr[:-1]):
            acc = maps[gname].matrix @ acc
        maps[m] = AlgebraMorphism(src, algebras[cat.tgt(m)], acc)
    for m in cat.mor_names:
        mm = maps[m]
        if mm.source != algebras[cat.src(m)] or mm.target != algebras[cat.tgt(m)]:
            raise FunctorMismatch(f"algebra map at {m!r} has wrong endpoints")
    for g, f in cat.composable_pairs():
        if maps[cat.compose(g, f)].matrix != maps[g].matrix @ maps[f].matrix:
            raise FunctorMismatch(f"algebra maps do not compose along ({g!r}, {f!r})")
    bimodules = {m: bimodule_from_morphism(maps[m]) for m in cat.mor_names}
    for m in cat.mor_names:
        bimodules[m] = Bimodule(bimodules[m].left_algebra, bimodules[m].right_algebra,
                                bimodules[m].dim, bimodules[m].left_action,
                                bimodules[m].right_action, name=f"B[{m}]")
    dia = DiagramSpec(cat, algebras, bimodules, {}, {}, name="ring")
    for g, f in cat.composable_pairs():
        tgt_alg = algebras[cat.tgt(g)]
        tens = dia.edge_tensor(g, f)
        cols = []
        for p in range(tgt_alg.dim):
            xp = tgt_alg.basis_column(p)
            for q in range(maps[f].target.dim):
                yq = maps[f].target.basis_column(q)
                cols.append((tgt_alg.mul(xp, maps[g].matrix @ yq)).col(0))
        plain = Matrix.from_cols(tgt_alg.field, tgt_alg.dim, cols)
        t = plain @ tens.sigma
        if t @ tens.pi != plain:
            raise Inconsistent("multiplication witness does not descend")
        dia.tau[(g, f)] = t
    for i in cat.objects:
        dia.eta[i] = Matrix.identity(algebras[i].field, algebras[i].dim)
    return dia


def trivial_diagram(cat: FinCategory, f) -> DiagramSpec:
    """Every vertex carries the scalars, every edge the regular bimodule."""
    k = field_algebra(f)
    dia = ring_diagram(cat, {i: k for i in cat.objects},
                       {m: AlgebraMorphism(k, k, Matrix.identity(f, 1))
                        for m in cat.mor_names})
    dia.name = "triv"
    return dia


def _is_bimodule_automorphism(u: Matrix, b: Bimodule) -> bool:
    if u.nrows != b.dim or u.ncols != b.dim or not u.is_invertible():
        return False
    for k in range(b.left_algebra.dim):
        if u @ b.left_action[k] != b.left_action[k] @ u:
            return False
    for k in range(b.right_algebra.dim):
        if u @ b.right_action[k] != b.right_action[k] @ u:
            return False
    return True


def twist_diagram(dia: DiagramSpec, units) -> DiagramSpec:
    """Conjugate all witnesses by a family of bimodule automorphisms.

    units maps morphism names to invertible bimodule automorphisms of the
    corresponding edge (missing names mean the identity). The result is a
    coherent diagram again, generally no longer strict.
    """
    cat = dia.cat
    filled = {}
    for m in cat.mor_names:
        b = dia.bimodule(m)
        u = units.get(m, Matrix.identity(dia.field, b.dim))
        if not _is_bimodule_automorphism(u, b):
            raise InvalidStructure(f"twist unit at {m!r} is not a bimodule automorphism")
        filled[m] = u
    new_tau = {}
    for g, f in cat.composable_pairs():
        tens = dia.edge_tensor(g, f)
        mixed = tens.pi @ Matrix.kron(filled[g], filled[f]) @ tens.sigma
        new_tau[(g, f)] = (filled[cat.compose(g, f)]
                           @ dia.tau_component(g, f)
                           @ mixed.inverse())
    new_eta = {i: filled[cat.identity[i]] @ dia.eta_component(i) for i in cat.objects}
    return DiagramSpec(cat, dia.algebras, dia.bimodules, new_tau, new_eta,
                       name=dia.name + "~")


def restrict_diagram(dia: DiagramSpec, fun: CatFunctor) -> DiagramSpec:
    """Pull a diagram back along a functor into its index category."""
    cat = fun.source
    algebras = {i: dia.algebra(fun.on_obj(i)) for i in cat.objects}
    bimodules = {m: dia.bimodule(fun.on_mor(m)) for m in cat.mor_names}
    tau = {(g, f): dia.tau_component(fun.on_mor(g), fun.on_mor(f))
           for g, f in cat.composable_pairs()}
    eta = {i: dia.eta_component(fun.on_obj(i)) for i in cat.objects}
    return DiagramSpec(cat, algebras, bimodules, tau, eta,
                       name=f"{dia.name}|{cat.name or 'sub'}")


def _swap_matrix(f, dg: int, df: int) -> Matrix:
    """Permutation sending index p*df + q to q*dg + p."""
    rows = [[f.zero] * (dg * df) for _ in range(df * dg)]
    for p in range(dg):
        for q in range(df):
            rows[q * dg + p][p * df + q] = f.one
    return Matrix(f, rows, dg * df)


def opposite_diagram(dia: DiagramSpec) -> DiagramSpec:
    """The same data over the opposite index category, with actions swapped.

    Dualizing representations componentwise over this diagram exchanges the
    roles of the two one-sided theories, which is how the injective half of
    the classification is reduced to the projective half.
    """
    cat = dia.cat
    op_cat = opposite(cat)
    op_algs = {i: opposite_algebra(dia.algebra(i)) for i in cat.objects}
    bimodules = {}
    for m in cat.mor_names:
        b = dia.bimodule(m)
        bimodules[m] = opposite_bimodule(b, left_op=op_algs[cat.src(m)],
                                         right_op=op_algs[cat.tgt(m)])
    out = DiagramSpec(op_cat, op_algs, bimodules, {}, {}, name=dia.name + "^op")
    for g, f in op_cat.composable_pairs():
        # (g, f) composable in the opposite category means (f, g) was composable
        tens_op = out.edge_tensor(g, f)
        tens = dia.edge_tensor(f, g)
        dg = dia.bimodule(g).dim
        df = dia.bimodule(f).dim
        plain = dia.tau_component(f, g) @ tens.pi @ _swap_matrix(dia.field, dg, df)
        t = plain @ tens_op.sigma
        if t @ tens_op.pi != plain:
            raise Inconsistent("flipped witness does not descend")
        out.tau[(g, f)] = t
    for i in cat.objects:
        out.eta[i] = dia.eta_component(i)
    return out


def witness_mate(dia: DiagramSpec, g, f, y) -> Matrix:
    """Currying along a composition witness, on hom coordinate spaces.

    Sends a map out of the composite edge to the map out of the first edge
    valued in maps out of the second: Hom(B_{gf}, Y) -> Hom(B_f, Hom(B_g, Y)),
    by h |-> (b_f |-> (b_g |-> h(witness(b_g (x) b_f)))). Invertible because
    the witness is.
    """
    key = (g, f, y)
    if key in dia._mate_cache:
        return dia._mate_cache[key]
    fld = dia.field
    hom_g = dia.edge_hom(g, y)
    outer = dia.edge_hom(f, hom_g.module)
    comp = dia.edge_hom(dia.cat.compose(g, f), y)
    tens = dia.edge_tensor(g, f)
    bg = dia.bimodule(g).dim
    bf = dia.bimodule(f).dim
    contract = dia.tau_component(g, f) @ tens.pi
    cols = []
    for k in range(comp.module.dim):
        plain = comp.basis_matrix(k) @ contract
        inner = []
        for l in range(bf):
            fl = plain.select_cols([p * bf + l for p in range(bg)])
            inner.append(hom_g.from_matrix(fl).col(0))
        curried = Matrix.from_cols(fld, hom_g.module.dim, inner)
        cols.append(outer.from_matrix(curried).col(0))
    mate = Matrix.from_cols(fld, outer.module.dim, cols)
    dia._mate_cache[key] = mate
    return mate


def exactness_report(dia: DiagramSpec) -> dict:
    """One-sided projectivity of every edge bimodule, for diagnostics."""
    from .modcat import is_projective_module

    out = {}
    for m in dia.cat.mor_names:
        b = dia.bimodule(m)
        out[m] = {
            "dim": b.dim,
            "projective_as_left_module": is_projective_module(b.left_part()),
            "projective_as_right_module": is_projective_module(b.right_part_over_op()),
        }
    return out
