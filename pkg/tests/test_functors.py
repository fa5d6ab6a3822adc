"""Functor layer: restriction, Kan extensions, zero-extension, stalks,
and the adjunction certificates tying them together."""

import pytest

from helpers import (
    a2,
    a3,
    c2_regular_diagram,
    c2_sink,
    kc2,
    kc2_to_scalars_diagram,
    sign_module,
    trivial_module,
)

from diarep.diagram import restrict_diagram, trivial_diagram, twist_diagram
from diarep.errors import (
    FunctorMismatch,
    NotPrime,
    UnknownObject,
    ZeroRepresentation,
)
from diarep.field import GF2, QQ
from diarep.fincat import (
    build_category,
    classify_ideal,
    endo_prime_ideal,
    full_subcategory,
    identity_functor,
    inclusion_functor,
    quotient_subcategory,
)
from diarep.functors import (
    coinduce_rep,
    coinduce_rep_data,
    coinduction_counit,
    extend_by_zero,
    free_from_vertex,
    free_from_vertex_data,
    free_vs_induction_iso,
    generating_morphism,
    ideal_cokernel,
    ideal_kernel,
    induce_rep,
    induce_rep_data,
    induce_rep_morphism,
    inflow_map,
    outflow_map,
    point_inclusion,
    restrict_rep,
    restrict_rep_morphism,
    stalk_coinduced,
    stalk_induced,
    value_at_vertex,
    verify_adjunction,
    vertex_cokernel,
    vertex_kernel,
)
from diarep.linalg import Matrix
from diarep.modcat import field_algebra, free_module, regular_module
from diarep.rep import (
    build_representation,
    is_rep_morphism,
    rep_factorization,
    validate_representation,
    zero_representation,
)


def k_line(f, n=1):
    return free_module(field_algebra(f), n)


def unit_rep(dia):
    """k at both ends of A2, the edge acting as the identity."""
    f = dia.field
    k1 = k_line(f)
    return build_representation(dia, {"1": k1, "2": k1},
                                {"a": Matrix.identity(f, 1)}, name="unit")


def sink_quiver():
    return build_category("quiver", {"name": "V", "objects": ["1", "2", "3"],
                                     "arrows": [("a", "1", "3"), ("b", "2", "3")]})


# ---- restriction ----

def test_restrict_identity_functor_keeps_everything():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    out = restrict_rep(identity_functor(dia.cat), rep)
    assert out.dims() == rep.dims()
    assert all(out.maps[m] == rep.maps[m] for m in dia.cat.mor_names)


def test_restrict_to_full_subcategory():
    cat = a3()
    dia = trivial_diagram(cat, QQ)
    rep = free_from_vertex(dia, "1", k_line(QQ))
    sub = full_subcategory(cat, ["2", "3"])
    out = restrict_rep(inclusion_functor(sub, cat), rep)
    assert out.dims() == {"2": 1, "3": 1}
    assert validate_representation(out).ok


def test_restrict_rejects_wrong_target():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    with pytest.raises(FunctorMismatch):
        restrict_rep(identity_functor(a3()), rep)


def test_restrict_commutes_with_factorization():
    cat = a3()
    dia = trivial_diagram(cat, QQ)
    src = free_from_vertex(dia, "3", k_line(QQ))
    tgt = free_from_vertex(dia, "1", k_line(QQ))
    f = QQ
    sigma = {"1": Matrix.zeros(f, 1, 0), "2": Matrix.zeros(f, 1, 0),
             "3": Matrix.identity(f, 1)}
    assert is_rep_morphism(src, tgt, sigma)
    fact = rep_factorization(sigma, src, tgt)
    sub = full_subcategory(cat, ["2", "3"])
    fun = inclusion_functor(sub, cat)
    r_src = restrict_rep(fun, src)
    r_tgt = restrict_rep(fun, tgt, sub_dia=r_src.dia)
    r_fact = rep_factorization(restrict_rep_morphism(fun, sigma), r_src, r_tgt)
    for j in sub.objects:
        assert fact.image.modules[j].dim == r_fact.image.modules[j].dim
        assert fact.kernel.modules[j].dim == r_fact.kernel.modules[j].dim


# ---- induction ----

def test_induce_point_matches_free_formula_on_a2():
    dia = trivial_diagram(a2(), QQ)
    for v in ("1", "2"):
        iso = free_vs_induction_iso(dia, v, k_line(QQ))
        assert all(m.is_invertible() for m in iso.values())


def test_induce_point_matches_free_formula_with_group_algebra():
    dia = kc2_to_scalars_diagram(QQ)
    iso = free_vs_induction_iso(dia, "1", regular_module(kc2(QQ)))
    assert all(m.is_invertible() for m in iso.values())


def test_free_formula_dims_with_endomorphisms():
    dia = trivial_diagram(c2_sink(), QQ)
    rep = free_from_vertex(dia, "i", k_line(QQ))
    # two endomorphisms of i, one morphism to the sink
    assert rep.dims() == {"i": 2, "j": 1}
    iso = free_vs_induction_iso(dia, "i", k_line(QQ))
    assert all(m.is_invertible() for m in iso.values())


def test_induce_sink_quiver_is_coproduct_over_arrows():
    q = sink_quiver()
    dia = trivial_diagram(q, QQ)
    disc = full_subcategory(q, ["1", "2"])
    fun = inclusion_functor(disc, q)
    sub = restrict_diagram(dia, fun)
    n = build_representation(sub, {"1": k_line(QQ), "2": k_line(QQ)}, {})
    out = induce_rep(fun, n, dia)
    assert out.dims() == {"1": 1, "2": 1, "3": 2}
    assert validate_representation(out).ok


def test_induce_zero_is_zero():
    dia = trivial_diagram(a2(), QQ)
    fun = point_inclusion(dia.cat, "1")
    sub = restrict_diagram(dia, fun)
    out = induce_rep(fun, zero_representation(sub), dia)
    assert out.is_zero()


def test_induce_rejects_mismatched_pullback():
    dia = trivial_diagram(a2(), QQ)
    other = kc2_to_scalars_diagram(QQ)
    fun = point_inclusion(dia.cat, "1")
    wrong_sub = restrict_diagram(other, fun)
    n = build_representation(wrong_sub, {"1": regular_module(kc2(QQ))}, {})
    with pytest.raises(FunctorMismatch):
        induce_rep(fun, n, dia)


def test_induce_morphism_is_natural():
    q = sink_quiver()
    dia = trivial_diagram(q, QQ)
    disc = full_subcategory(q, ["1", "2"])
    fun = inclusion_functor(disc, q)
    sub = restrict_diagram(dia, fun)
    f = QQ
    n1 = build_representation(sub, {"1": k_line(f), "2": k_line(f)}, {})
    n2 = build_representation(sub, {"1": k_line(f), "2": k_line(f, 0)}, {})
    sigma = {"1": Matrix.identity(f, 1), "2": Matrix.zeros(f, 0, 1)}
    d1 = induce_rep_data(fun, n1, dia)
    d2 = induce_rep_data(fun, n2, dia)
    moved = induce_rep_morphism(d1, d2, sigma)
    assert is_rep_morphism(d1.rep, d2.rep, moved)


# ---- coinduction ----

def test_coinduce_identity_functor_is_identity_up_to_iso():
    dia = trivial_diagram(c2_sink(), QQ)
    rep = free_from_vertex(dia, "i", k_line(QQ))
    fun = identity_functor(dia.cat)
    data = coinduce_rep_data(fun, restrict_rep(fun, rep), dia)
    assert data.rep.dims() == rep.dims()
    counit = coinduction_counit(data)
    assert all(m.is_invertible() for m in counit.values())


def test_coinduce_point_is_cofree():
    dia = trivial_diagram(a2(), QQ)
    fun1 = point_inclusion(dia.cat, "1")
    n1 = build_representation(restrict_diagram(dia, fun1), {"1": k_line(QQ)}, {})
    assert coinduce_rep(fun1, n1, dia).dims() == {"1": 1, "2": 0}
    fun2 = point_inclusion(dia.cat, "2")
    n2 = build_representation(restrict_diagram(dia, fun2), {"2": k_line(QQ)}, {})
    out = coinduce_rep(fun2, n2, dia)
    # limit over the single morphism into 2 gives a hom-translate line
    assert out.dims() == {"1": 1, "2": 1}
    assert validate_representation(out).ok


# ---- extension by zero ----

def test_extend_by_zero_places_zero_off_the_subcategory():
    dia = trivial_diagram(a2(), QQ)
    ideal = endo_prime_ideal(dia.cat, "2")
    sub_cat = quotient_subcategory(dia.cat, ideal)
    sub_dia = restrict_diagram(dia, inclusion_functor(sub_cat, dia.cat))
    n = build_representation(sub_dia, {"2": k_line(QQ)}, {})
    out = extend_by_zero(dia, ideal, n)
    assert out.dims() == {"1": 0, "2": 1}
    tr = dia.module_tensor("a", out.modules["1"])
    assert out.maps["a"] == Matrix.zeros(QQ, 1, tr.module.dim)
    assert validate_representation(out).ok


def test_extend_by_zero_requires_prime_ideal():
    cat = a3()
    dia = trivial_diagram(cat, QQ)
    bad = classify_ideal(cat, {"a"})
    assert not bad.two_sided
    n = zero_representation(trivial_diagram(cat, QQ))
    with pytest.raises(NotPrime):
        extend_by_zero(dia, bad, n)


# ---- inflow and outflow ----

def test_inflow_on_unit_rep_is_identity_like():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    flow = inflow_map(dia, endo_prime_ideal(dia.cat, "2"), rep, "2")
    assert flow.shape.objects == ("a",)
    assert flow.matrix == Matrix.identity(QQ, 1)


def test_inflow_conventions_differ_but_images_agree():
    cat = a3()
    dia = trivial_diagram(cat, QQ)
    rep = free_from_vertex(dia, "1", k_line(QQ))
    ideal = endo_prime_ideal(cat, "3")
    comma = inflow_map(dia, ideal, rep, "3", convention="comma")
    disc = inflow_map(dia, ideal, rep, "3", convention="discrete")
    # the comma colimit glues the composite to the single arrow
    assert comma.colim.module.dim == 1
    assert disc.colim.module.dim == 2
    assert comma.matrix.rank() == disc.matrix.rank() == 1
    assert comma.matrix.kernel().ncols == 0
    assert disc.matrix.kernel().ncols == 1


def test_inflow_image_is_sum_of_structural_images():
    q = sink_quiver()
    dia = trivial_diagram(q, QQ)
    f = QQ
    k1 = k_line(f)
    rep = build_representation(
        dia, {"1": k1, "2": k1, "3": k_line(f, 2)},
        {"a": Matrix(f, [[1], [0]], 1), "b": Matrix(f, [[1], [1]], 1)})
    flow = inflow_map(dia, endo_prime_ideal(q, "3"), rep, "3")
    stacked = Matrix.hstack(f, [rep.maps[th] for th in flow.shape.objects])
    assert flow.matrix.rank() == stacked.rank() == 2


def test_outflow_at_sink_is_empty():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    flow = outflow_map(dia, endo_prime_ideal(dia.cat, "2"), rep, "2")
    assert flow.matrix.nrows == 0 and flow.matrix.ncols == 1


def test_flow_requires_surviving_vertex():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    with pytest.raises(UnknownObject):
        inflow_map(dia, endo_prime_ideal(dia.cat, "2"), rep, "1")


# ---- ideal cokernel and kernel ----

def test_ideal_cokernel_kills_covered_vertex():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    cdata = ideal_cokernel(dia, endo_prime_ideal(dia.cat, "2"), rep)
    assert cdata.rep.dims() == {"2": 0}


def test_ideal_cokernel_undoes_extension():
    dia = trivial_diagram(a2(), QQ)
    ideal = endo_prime_ideal(dia.cat, "2")
    sub_cat = quotient_subcategory(dia.cat, ideal)
    sub_dia = restrict_diagram(dia, inclusion_functor(sub_cat, dia.cat))
    n = build_representation(sub_dia, {"2": k_line(QQ)}, {})
    cdata = ideal_cokernel(dia, ideal, extend_by_zero(dia, ideal, n))
    assert cdata.rep.dims() == {"2": 1}
    assert all(p.is_invertible() for p in cdata.projections.values())


def test_ideal_kernel_of_unit_rep_vanishes():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    kdata = ideal_kernel(dia, endo_prime_ideal(dia.cat, "1"), rep)
    assert kdata.rep.dims() == {"1": 0}


def test_ideal_kernel_sees_extension_by_zero():
    dia = trivial_diagram(a2(), QQ)
    ideal = endo_prime_ideal(dia.cat, "1")
    sub_cat = quotient_subcategory(dia.cat, ideal)
    sub_dia = restrict_diagram(dia, inclusion_functor(sub_cat, dia.cat))
    n = build_representation(sub_dia, {"1": k_line(QQ)}, {})
    kdata = ideal_kernel(dia, ideal, extend_by_zero(dia, ideal, n))
    assert kdata.rep.dims() == {"1": 1}
    assert all(m.is_invertible() for m in kdata.inclusions.values())


def test_vertex_cokernel_of_free_recovers_seed_on_direct_index():
    cat = a3()
    dia = trivial_diagram(cat, QQ)
    rep = free_from_vertex(dia, "1", k_line(QQ, 2))
    cok1, _ = vertex_cokernel(dia, rep, "1")
    assert cok1.dim == 2
    for v in ("2", "3"):
        cok, _ = vertex_cokernel(dia, rep, v)
        assert cok.dim == 0


def test_vertex_kernel_dual():
    dia = trivial_diagram(a2(), QQ)
    rep = free_from_vertex(dia, "1", k_line(QQ))
    ker, incl = vertex_kernel(dia, rep, "1")
    assert ker.dim == 0 and incl.ncols == 0
    ker2, _ = vertex_kernel(dia, rep, "2")
    # nothing leaves the sink, so the whole value is the kernel
    assert ker2.dim == 1


# ---- stalks ----

def test_stalks_on_locally_trivial_vertex():
    dia = trivial_diagram(a2(), QQ)
    lo = stalk_induced(dia, "1", k_line(QQ))
    hi = stalk_coinduced(dia, "1", k_line(QQ))
    assert lo.dims() == {"1": 1, "2": 0}
    assert hi.dims() == {"1": 1, "2": 0}


def test_stalk_dims_double_on_c2_vertex():
    dia = trivial_diagram(c2_sink(), QQ)
    seed = k_line(QQ, 3)
    lo = stalk_induced(dia, "i", seed)
    hi = stalk_coinduced(dia, "i", seed)
    assert lo.dims() == {"i": 6, "j": 0}
    assert hi.dims() == {"i": 6, "j": 0}


def test_stalks_on_twisted_diagram_stay_coherent():
    f = QQ
    tw = twist_diagram(c2_regular_diagram(f),
                       {"g": Matrix(f, [[2, 0], [0, 2]], 2)})
    alg = kc2(f)
    lo = stalk_induced(tw, "i", trivial_module(alg))
    hi = stalk_coinduced(tw, "i", trivial_module(alg))
    assert validate_representation(lo).ok and validate_representation(hi).ok
    assert lo.dims() == {"i": 2} and hi.dims() == {"i": 2}


# ---- evaluation ----

def test_value_at_vertex():
    dia = trivial_diagram(a2(), QQ)
    rep = unit_rep(dia)
    assert value_at_vertex(rep, "1") is rep.modules["1"]


# ---- adjunction certificates ----

def test_adjunction_induce_restrict():
    dia = trivial_diagram(c2_sink(), QQ)
    fun = point_inclusion(dia.cat, "i")
    sub = restrict_diagram(dia, fun)
    n = build_representation(sub, {"i": k_line(QQ)}, {})
    m = free_from_vertex(dia, "i", k_line(QQ))
    w = verify_adjunction("induce-restrict", dia, [(n, m)], fun=fun)
    assert w.ok
    assert w.to_json()["ok"]


def test_adjunction_restrict_coinduce():
    dia = trivial_diagram(c2_sink(), QQ)
    fun = point_inclusion(dia.cat, "i")
    sub = restrict_diagram(dia, fun)
    n = build_representation(sub, {"i": k_line(QQ)}, {})
    m = free_from_vertex(dia, "i", k_line(QQ))
    w = verify_adjunction("restrict-coinduce", dia, [(m, n)], fun=fun)
    assert w.ok


def test_adjunction_free_vertex_over_gf2_group_edge():
    dia = kc2_to_scalars_diagram(GF2)
    alg = kc2(GF2)
    m = free_from_vertex(dia, "1", regular_module(alg))
    w = verify_adjunction("free-vertex", dia, [(trivial_module(alg), m),
                                               (regular_module(alg), m)],
                          vertex="1")
    assert w.ok
    assert w.triangles and all(t["ok"] for t in w.triangles)


def test_adjunction_coker_extend_and_extend_kernel():
    dia = kc2_to_scalars_diagram(GF2)
    ideal = endo_prime_ideal(dia.cat, "2")
    sub_cat = quotient_subcategory(dia.cat, ideal)
    sub_dia = restrict_diagram(dia, inclusion_functor(sub_cat, dia.cat))
    n = build_representation(sub_dia, {"2": k_line(GF2)}, {})
    m = free_from_vertex(dia, "1", regular_module(kc2(GF2)))
    w = verify_adjunction("coker-extend", dia, [(m, n)], ideal=ideal)
    assert w.ok
    w2 = verify_adjunction("extend-kernel", dia, [(n, m)], ideal=ideal)
    assert w2.ok


def test_adjunction_stalk_kinds_on_twisted_diagram():
    f = QQ
    tw = twist_diagram(c2_regular_diagram(f),
                       {"g": Matrix(f, [[2, 0], [0, 2]], 2)})
    alg = kc2(f)
    m = stalk_induced(tw, "i", trivial_module(alg))
    w = verify_adjunction("coker-stalk", tw, [(m, trivial_module(alg)),
                                              (m, sign_module(alg))],
                          vertex="i")
    assert w.ok
    w2 = verify_adjunction("stalk-kernel", tw, [(trivial_module(alg), m),
                                                (sign_module(alg), m)],
                           vertex="i")
    assert w2.ok


def test_adjunction_unknown_kind():
    dia = trivial_diagram(a2(), QQ)
    with pytest.raises(UnknownObject):
        verify_adjunction("nonsense", dia, [])


# ---- generators ----

def test_generating_morphism_is_nonzero_and_natural():
    dia = kc2_to_scalars_diagram(QQ)
    rep = free_from_vertex(dia, "1", trivial_module(kc2(QQ)))
    gw = generating_morphism(rep)
    assert gw.vertex == "1"
    assert is_rep_morphism(gw.source, rep, gw.components)
    assert any(m != Matrix.zeros(QQ, m.nrows, m.ncols)
               for m in gw.components.values())


def test_generating_morphism_rejects_zero():
    dia = trivial_diagram(a2(), QQ)
    with pytest.raises(ZeroRepresentation):
        generating_morphism(zero_representation(dia))
