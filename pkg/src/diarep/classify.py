"""Deciding projectivity and injectivity of representations.

Two independent routes are implemented for each side. The structural route
tests, vertex by vertex, whether the canonical inflow is mono (dually, the
outflow epi) and whether the piece it cuts off is itself projective
(injective) over the surviving subdiagram; over a suitably ordered index
category this characterizes the homological objects. The oracle route is a
direct split test: build the canonical cover by free translates (dually the
canonical envelope by coinduced translates) and solve exactly for a section
(retraction). Agreement between the two is part of the advertised contract
and is asserted by the test suite on corpora where the structural route is
known to decide.
"""

from dataclasses import dataclass

from .diagram import DiagramSpec
from .errors import (
    NotDirect,
    NotInjective,
    NotInverse,
    NotPartiallyOrdered,
    NotProjective,
    UnknownObject,
)
from .fincat import endo_prime_ideal, is_partially_ordered, rootedness_report
from .functors import (
    coinduce_rep_data,
    coinduce_rep_morphism,
    coinduction_unit,
    free_from_vertex_data,
    free_vertex_adjoint_back,
    ideal_cokernel,
    ideal_kernel,
    inflow_map,
    outflow_map,
    point_inclusion,
    restrict_rep,
    vertex_cokernel,
    vertex_kernel,
)
from .linalg import Matrix, vec
from .modcat import (
    free_cover,
    injective_embedding,
    is_injective_module,
    is_projective_module,
    split_epi_section,
    split_mono_retraction,
)
from .rep import Representation, build_representation, rep_biproduct, rep_hom_basis


def _matrix_json(m: Matrix):
    f = m.field
    return [[f.fmt(x) for x in row] for row in m.rows]


def _morphism_json(sigma: dict):
    return {str(i): _matrix_json(m) for i, m in sigma.items()}


def is_locally_exact(dia: DiagramSpec) -> bool:
    """Every endomorphism edge acts by a bimodule that is projective on the
    side it tensors from, so tensoring along it is exact."""
    cat = dia.cat
    for i in cat.objects:
        for m in cat.endos(i):
            if not is_projective_module(dia.bimodule(m).right_part_over_op()):
                return False
    return True


# ---------------------------------------------------------------------------
# membership in the canonical-flow classes


def projective_family(vertex, module) -> bool:
    return is_projective_module(module)


def injective_family(vertex, module) -> bool:
    return is_injective_module(module)


@dataclass
class ClassMembership:
    """Vertexwise verdicts for one of the two canonical-flow classes.

    side "inflow": the inflow is mono and the vertex cokernel lies in the
    supplied class. side "outflow": the outflow is epi and the vertex kernel
    lies in the supplied class. A missing predicate only tests the flow.
    """

    side: str
    per_vertex: dict
    member: bool

    def to_json(self):
        return {"side": self.side, "member": self.member,
                "per_vertex": {str(i): dict(v) for i, v in self.per_vertex.items()}}


def inflow_membership(rep: Representation, predicate=None,
                      convention: str = "comma") -> ClassMembership:
    """Monic inflow at every vertex, vertex cokernels in the given family."""
    dia = rep.dia
    cat = dia.cat
    if not is_partially_ordered(cat):
        raise NotPartiallyOrdered(cat.name)
    per = {}
    for i in cat.objects:
        ideal = endo_prime_ideal(cat, i)
        flow = inflow_map(dia, ideal, rep, i, convention=convention)
        mono = flow.matrix.kernel().ncols == 0
        piece, _ = vertex_cokernel(dia, rep, i, convention=convention)
        piece_ok = True if predicate is None else bool(predicate(i, piece))
        per[i] = {"flow_ok": mono, "piece_dim": piece.dim, "piece_ok": piece_ok}
    member = all(v["flow_ok"] and v["piece_ok"] for v in per.values())
    return ClassMembership("inflow", per, member)


def outflow_membership(rep: Representation, predicate=None,
                       convention: str = "comma") -> ClassMembership:
    """Epic outflow at every vertex, vertex kernels in the given family."""
    dia = rep.dia
    cat = dia.cat
    if not is_partially_ordered(cat):
        raise NotPartiallyOrdered(cat.name)
    per = {}
    for i in cat.objects:
        ideal = endo_prime_ideal(cat, i)
        flow = outflow_map(dia, ideal, rep, i, convention=convention)
        epi = flow.matrix.rank() == flow.matrix.nrows
        piece, _ = vertex_kernel(dia, rep, i, convention=convention)
        piece_ok = True if predicate is None else bool(predicate(i, piece))
        per[i] = {"flow_ok": epi, "piece_dim": piece.dim, "piece_ok": piece_ok}
    member = all(v["flow_ok"] and v["piece_ok"] for v in per.values())
    return ClassMembership("outflow", per, member)


# ---------------------------------------------------------------------------
# split-test oracles


@dataclass
class SplitVerdict:
    """Outcome of the split test against the canonical cover or envelope."""

    side: str
    ok: bool
    canonical_ok: bool
    cover_dims: dict
    canonical: dict
    witness: dict | None

    def to_json(self):
        return {
            "side": self.side,
            "ok": self.ok,
            "canonical_ok": self.canonical_ok,
            "cover_dims": {str(i): d for i, d in self.cover_dims.items()},
            "canonical": _morphism_json(self.canonical),
            "witness": None if self.witness is None else _morphism_json(self.witness),
        }


def _solve_combination(fld, objs, candidates, target):
    """Coefficients making a linear combination of morphism candidates equal
    the target componentwise, or None."""
    rhs_entries = []
    for v in objs:
        rhs_entries.extend(vec(target[v]))
    if not rhs_entries:
        return [fld.zero] * len(candidates)
    cols = []
    for cand in candidates:
        col = []
        for v in objs:
            col.extend(vec(cand[v]))
        cols.append(col)
    if not cols:
        return None
    lhs = Matrix.from_cols(fld, len(rhs_entries), cols)
    x = lhs.solve(Matrix.col_vector(fld, rhs_entries))
    return None if x is None else [x.rows[k][0] for k in range(x.nrows)]


def _combine(fld, objs, basis, coeffs, shapes):
    out = {}
    for v in objs:
        acc = Matrix.zeros(fld, shapes[v][0], shapes[v][1])
        for c, b in zip(coeffs, basis):
            if c != fld.zero:
                acc = acc + b[v].scale(c)
        out[v] = acc
    return out


def _identity_components(rep: Representation) -> dict:
    return {i: Matrix.identity(rep.field, rep.modules[i].dim)
            for i in rep.dia.cat.objects}


def projective_oracle(rep: Representation) -> SplitVerdict:
    """Split test against the canonical cover by free translates.

    Every vertex value gets a free module cover, each cover is pushed to a
    free representation at its vertex, and the counits assemble into one
    epimorphism onto the input. The input is projective exactly when that
    epimorphism admits a section, which is a finite linear problem over the
    morphism space.
    """
    dia = rep.dia
    cat = dia.cat
    fld = dia.field
    objs = list(cat.objects)
    if rep.is_zero():
        zero = {v: Matrix.zeros(fld, 0, 0) for v in objs}
        return SplitVerdict("projective", True, True,
                            {v: 0 for v in objs}, zero, dict(zero))
    pieces = []
    for i in objs:
        hi = rep.modules[i]
        if hi.dim == 0:
            continue
        cover, onto = free_cover(hi)
        fdata = free_from_vertex_data(dia, i, cover, check=False)
        pieces.append((fdata, free_vertex_adjoint_back(fdata, rep, onto)))
    total, _, projections = rep_biproduct([fd.rep for fd, _ in pieces])
    epi = {}
    for v in objs:
        acc = Matrix.zeros(fld, rep.modules[v].dim, total.modules[v].dim)
        for k, (_, comp) in enumerate(pieces):
            acc = acc + comp[v] @ projections[k][v]
        epi[v] = acc
    canonical_ok = all(epi[v].rank() == rep.modules[v].dim for v in objs)
    basis = rep_hom_basis(rep, total)
    composed = [{v: epi[v] @ b[v] for v in objs} for b in basis]
    coeffs = _solve_combination(fld, objs, composed, _identity_components(rep))
    witness = None
    if coeffs is not None:
        shapes = {v: (total.modules[v].dim, rep.modules[v].dim) for v in objs}
        witness = _combine(fld, objs, basis, coeffs, shapes)
    return SplitVerdict("projective", witness is not None, canonical_ok,
                        total.dims(), epi, witness)


def injective_oracle(rep: Representation) -> SplitVerdict:
    """Split test against the canonical envelope by coinduced translates.

    Every vertex value embeds into an injective module (a dual of a free
    module over the opposite algebra); coinducing those along the point
    inclusions and stacking the unit maps gives a monomorphism into an
    injective representation. The input is injective exactly when that
    monomorphism admits a retraction.
    """
    dia = rep.dia
    cat = dia.cat
    fld = dia.field
    objs = list(cat.objects)
    if rep.is_zero():
        zero = {v: Matrix.zeros(fld, 0, 0) for v in objs}
        return SplitVerdict("injective", True, True,
                            {v: 0 for v in objs}, zero, dict(zero))
    pieces = []
    for i in objs:
        mi = rep.modules[i]
        if mi.dim == 0:
            continue
        env, into = injective_embedding(mi)
        fun = point_inclusion(cat, i)
        res = restrict_rep(fun, rep)
        data_m = coinduce_rep_data(fun, res, dia, check=False)
        unit = coinduction_unit(data_m, rep)
        env_rep = build_representation(res.dia, {i: env}, {}, name=f"E({i})")
        data_e = coinduce_rep_data(fun, env_rep, dia, check=False)
        moved = coinduce_rep_morphism(data_m, data_e, {i: into})
        pieces.append((data_e, {v: moved[v] @ unit[v] for v in objs}))
    total, injections, _ = rep_biproduct([de.rep for de, _ in pieces])
    mono = {}
    for v in objs:
        acc = Matrix.zeros(fld, total.modules[v].dim, rep.modules[v].dim)
        for k, (_, comp) in enumerate(pieces):
            acc = acc + injections[k][v] @ comp[v]
        mono[v] = acc
    canonical_ok = all(mono[v].kernel().ncols == 0 for v in objs)
    basis = rep_hom_basis(total, rep)
    composed = [{v: b[v] @ mono[v] for v in objs} for b in basis]
    coeffs = _solve_combination(fld, objs, composed, _identity_components(rep))
    witness = None
    if coeffs is not None:
        shapes = {v: (rep.modules[v].dim, total.modules[v].dim) for v in objs}
        witness = _combine(fld, objs, basis, coeffs, shapes)
    return SplitVerdict("injective", witness is not None, canonical_ok,
                        total.dims(), mono, witness)


# ---------------------------------------------------------------------------
# the structural criteria


@dataclass
class CriterionVerdict:
    """Vertexwise structural test: flow condition plus the cut-off piece
    being projective (injective) over the surviving subdiagram.

    deciding is True when the index category's ordering makes the criterion
    an exact characterization; otherwise a pass is only a necessary
    condition for the oracle to pass.
    """

    side: str
    per_vertex: dict
    passed: bool
    deciding: bool

    def to_json(self):
        return {"side": self.side, "passed": self.passed,
                "deciding": self.deciding,
                "per_vertex": {str(i): dict(v) for i, v in self.per_vertex.items()}}


def projective_criterion(rep: Representation,
                         convention: str = "comma") -> CriterionVerdict:
    dia = rep.dia
    cat = dia.cat
    if not is_partially_ordered(cat):
        raise NotPartiallyOrdered(cat.name)
    rr = rootedness_report(cat)
    per = {}
    for j in cat.objects:
        ideal = endo_prime_ideal(cat, j)
        flow = inflow_map(dia, ideal, rep, j, convention=convention)
        mono = flow.matrix.kernel().ncols == 0
        cdata = ideal_cokernel(dia, ideal, rep, convention=convention, check=False)
        piece = projective_oracle(cdata.rep)
        per[j] = {"flow_ok": mono, "piece_ok": piece.ok,
                  "piece_dims": cdata.rep.dims()}
    passed = all(v["flow_ok"] and v["piece_ok"] for v in per.values())
    return CriterionVerdict("projective", per, passed, bool(rr.left_rooted))


def injective_criterion(rep: Representation,
                        convention: str = "comma") -> CriterionVerdict:
    dia = rep.dia
    cat = dia.cat
    if not is_partially_ordered(cat):
        raise NotPartiallyOrdered(cat.name)
    rr = rootedness_report(cat)
    per = {}
    for j in cat.objects:
        ideal = endo_prime_ideal(cat, j)
        flow = outflow_map(dia, ideal, rep, j, convention=convention)
        epi = flow.matrix.rank() == flow.matrix.nrows
        kdata = ideal_kernel(dia, ideal, rep, convention=convention, check=False)
        piece = injective_oracle(kdata.rep)
        per[j] = {"flow_ok": epi, "piece_ok": piece.ok,
                  "piece_dims": kdata.rep.dims()}
    passed = all(v["flow_ok"] and v["piece_ok"] for v in per.values())
    return CriterionVerdict("injective", per, passed, bool(rr.right_rooted))


# ---------------------------------------------------------------------------
# canonical decompositions


@dataclass
class DecompositionWitness:
    """The canonical decomposition into one-vertex translates.

    For projectives over a direct index the candidate is the biproduct of
    free translates of the vertex cokernels and matched means its canonical
    map to the input is invertible. For injectives over an inverse index two
    readings are computed, each with its own canonical map; candidates maps
    them to their records and matched reports the coinduced reading.
    """

    side: str
    summand_dims: dict
    components: dict | None
    matched: bool
    candidates: dict | None = None

    def to_json(self):
        out = {
            "side": self.side,
            "matched": self.matched,
            "summand_dims": {str(i): d for i, d in self.summand_dims.items()},
            "components": None if self.components is None
            else _morphism_json(self.components),
        }
        if self.candidates is not None:
            out["candidates"] = self.candidates
        return out


def decomposition_check(rep: Representation,
                        convention: str = "comma") -> DecompositionWitness:
    """Match a projective representation over a direct index category with
    the biproduct of free translates of its vertex cokernels."""
    dia = rep.dia
    cat = dia.cat
    rr = rootedness_report(cat)
    if not rr.direct:
        raise NotDirect(cat.name)
    if not projective_oracle(rep).ok:
        raise NotProjective(rep.name)
    fld = dia.field
    objs = list(cat.objects)
    if rep.is_zero():
        return DecompositionWitness("projective", {v: 0 for v in objs},
                                    {v: Matrix.zeros(fld, 0, 0) for v in objs},
                                    True)
    pieces = []
    dims = {}
    for i in objs:
        piece, onto = vertex_cokernel(dia, rep, i, convention=convention)
        dims[i] = piece.dim
        if piece.dim == 0:
            continue
        section = split_epi_section(onto, rep.modules[i], piece)
        if section is None:
            return DecompositionWitness("projective", dims, None, False)
        fdata = free_from_vertex_data(dia, i, piece, check=False)
        pieces.append((fdata, free_vertex_adjoint_back(fdata, rep, section)))
    if not pieces:
        return DecompositionWitness("projective", dims, None, False)
    total, _, projections = rep_biproduct([fd.rep for fd, _ in pieces])
    can = {}
    for v in objs:
        acc = Matrix.zeros(fld, rep.modules[v].dim, total.modules[v].dim)
        for k, (_, comp) in enumerate(pieces):
            acc = acc + comp[v] @ projections[k][v]
        can[v] = acc
    matched = all(m.is_invertible() for m in can.values())
    return DecompositionWitness("projective", dims, can, matched)


def _coinduced_translate(dia, i, seed, retraction, rep):
    """The canonical map rep -> coinduce(seed at i) through a retraction of
    the seed out of the vertex value."""
    fun = point_inclusion(dia.cat, i)
    res = restrict_rep(fun, rep)
    data_m = coinduce_rep_data(fun, res, dia, check=False)
    unit = coinduction_unit(data_m, rep)
    seed_rep = build_representation(res.dia, {i: seed}, {}, name=f"K({i})")
    data_k = coinduce_rep_data(fun, seed_rep, dia, check=False)
    moved = coinduce_rep_morphism(data_m, data_k, {i: retraction})
    return data_k, {v: moved[v] @ unit[v] for v in dia.cat.objects}


def injective_decomposition_check(rep: Representation,
                                  convention: str = "comma") -> DecompositionWitness:
    """Match an injective representation over an inverse index category with
    a product of one-vertex translates of its vertex kernels.

    Both readings of the product formula are computed: free translates of
    the kernels, and coinduced translates. Each candidate gets the canonical
    comparison map its adjunction provides, with invertibility reported per
    candidate; matched refers to the coinduced reading.
    """
    dia = rep.dia
    cat = dia.cat
    rr = rootedness_report(cat)
    if not rr.inverse:
        raise NotInverse(cat.name)
    if not injective_oracle(rep).ok:
        raise NotInjective(rep.name)
    fld = dia.field
    objs = list(cat.objects)
    if rep.is_zero():
        zero = {v: Matrix.zeros(fld, 0, 0) for v in objs}
        return DecompositionWitness(
            "injective", {v: 0 for v in objs}, zero, True,
            candidates={"free_translates": {"dims_match": True, "isomorphic": True},
                        "coinduced_translates": {"dims_match": True,
                                                 "isomorphic": True}})
    kernels = {}
    retractions = {}
    inclusions = {}
    for i in objs:
        piece, into = vertex_kernel(dia, rep, i, convention=convention)
        kernels[i] = piece
        inclusions[i] = into
        if piece.dim:
            retractions[i] = split_mono_retraction(into, piece, rep.modules[i])
    dims = {i: kernels[i].dim for i in objs}

    # coinduced reading: retractions of the kernels transpose to a map into
    # the product of coinduced translates
    co_ok = all(retractions.get(i) is not None for i in objs if kernels[i].dim)
    co_components = None
    co_isomorphic = False
    if co_ok and retractions:
        pieces = [_coinduced_translate(dia, i, kernels[i], retractions[i], rep)
                  for i in objs if kernels[i].dim]
        total, injections, _ = rep_biproduct([dk.rep for dk, _ in pieces])
        co_components = {}
        for v in objs:
            acc = Matrix.zeros(fld, total.modules[v].dim, rep.modules[v].dim)
            for k, (_, comp) in enumerate(pieces):
                acc = acc + injections[k][v] @ comp[v]
            co_components[v] = acc
        co_dims_match = total.dims() == rep.dims()
        co_isomorphic = co_dims_match and all(
            m.is_invertible() for m in co_components.values())
    else:
        co_dims_match = False

    # free-translate reading: kernel inclusions transpose to a map out of
    # the sum of free translates
    fr_components = None
    fr_isomorphic = False
    fr_pieces = []
    for i in objs:
        if not kernels[i].dim:
            continue
        fdata = free_from_vertex_data(dia, i, kernels[i], check=False)
        fr_pieces.append((fdata,
                          free_vertex_adjoint_back(fdata, rep, inclusions[i])))
    if fr_pieces:
        fr_total, _, fr_proj = rep_biproduct([fd.rep for fd, _ in fr_pieces])
        fr_components = {}
        for v in objs:
            acc = Matrix.zeros(fld, rep.modules[v].dim, fr_total.modules[v].dim)
            for k, (_, comp) in enumerate(fr_pieces):
                acc = acc + comp[v] @ fr_proj[k][v]
            fr_components[v] = acc
        fr_dims_match = fr_total.dims() == rep.dims()
        fr_isomorphic = fr_dims_match and all(
            m.is_invertible() for m in fr_components.values())
    else:
        fr_dims_match = False

    candidates = {
        "free_translates": {"dims_match": fr_dims_match,
                            "isomorphic": fr_isomorphic},
        "coinduced_translates": {"dims_match": co_dims_match,
                                 "isomorphic": co_isomorphic},
    }
    return DecompositionWitness("injective", dims, co_components,
                                co_isomorphic, candidates=candidates)


# ---------------------------------------------------------------------------
# the combined verdict


@dataclass
class ClassificationVerdict:
    """Everything the classifier knows about one representation, one side."""

    object_name: str
    side: str
    hypotheses: dict
    membership: ClassMembership
    criterion: CriterionVerdict
    oracle: SplitVerdict
    decomposition: DecompositionWitness | None
    agreement: bool

    def to_json(self):
        return {
            "object": self.object_name,
            "side": self.side,
            "hypotheses": dict(self.hypotheses),
            "membership": self.membership.to_json(),
            "criterion": self.criterion.to_json(),
            "oracle": self.oracle.to_json(),
            "decomposition": None if self.decomposition is None
            else self.decomposition.to_json(),
            "agreement": self.agreement,
        }


def classify_representation(rep: Representation, side: str = "projective",
                            convention: str = "comma") -> ClassificationVerdict:
    dia = rep.dia
    rr = rootedness_report(dia.cat)
    hypotheses = rr.to_json()
    hypotheses["locally_exact"] = is_locally_exact(dia)
    if side == "projective":
        membership = inflow_membership(rep, projective_family, convention)
        criterion = projective_criterion(rep, convention)
        oracle = projective_oracle(rep)
        decomposition = None
        if rr.direct and oracle.ok:
            decomposition = decomposition_check(rep, convention)
    elif side == "injective":
        membership = outflow_membership(rep, injective_family, convention)
        criterion = injective_criterion(rep, convention)
        oracle = injective_oracle(rep)
        decomposition = None
        if rr.inverse and oracle.ok:
            decomposition = injective_decomposition_check(rep, convention)
    else:
        raise UnknownObject(f"unknown classification side {side!r}")
    return ClassificationVerdict(rep.name, side, hypotheses, membership,
                                 criterion, oracle, decomposition,
                                 criterion.passed == oracle.ok)
