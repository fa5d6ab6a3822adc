"""Finite categories: builders, validation, ideals, order structure.

Oracles: ideal enumeration is cross-checked against an inline brute-force
subset scan using the raw definitions; stratification levels and ideal
classifications on the named examples are frozen from hand derivations.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from diarep.errors import (
    CyclicQuiver,
    EmptySet,
    MissingIdentity,
    NonAssociativeTable,
    NotComposable,
    NotPartiallyOrdered,
    NotPrime,
    TooLarge,
)
from diarep.fincat import (
    CatFunctor,
    build_category,
    classify_ideal,
    comma_category,
    endo_prime_ideal,
    enumerate_prime_ideals,
    full_subcategory,
    identity_functor,
    inclusion_functor,
    is_locally_trivial,
    is_partially_ordered,
    opposite,
    inflow_index_category,
    preorder,
    outflow_index_category,
    quotient_subcategory,
    rootedness_report,
    stratify,
    under_comma_category,
    validate_category,
    validate_functor,
)

from helpers import a2, a3, a4, c2, c2_sink, c3, kronecker2, square


# ---- builders ----

def test_a2_structure():
    cat = a2()
    assert cat.objects == ("1", "2")
    assert set(cat.mor_names) == {"e_1", "e_2", "a"}
    assert cat.compose("e_2", "a") == "a"
    assert cat.compose("a", "e_1") == "a"
    with pytest.raises(NotComposable):
        cat.compose("a", "a")
    assert validate_category(cat).ok


def test_a3_paths_and_expressions():
    cat = a3()
    assert set(cat.mor_names) == {"e_1", "e_2", "e_3", "a", "b", "b*a"}
    assert cat.compose("b", "a") == "b*a"
    assert cat.expressions["b*a"] == ("b", "a")
    assert cat.generators == ("a", "b")


def test_quiver_cycle_rejected():
    with pytest.raises(CyclicQuiver):
        build_category("quiver", {"objects": ["1", "2"],
                                  "arrows": [("a", "1", "2"), ("b", "2", "1")]})
    with pytest.raises(CyclicQuiver):
        build_category("quiver", {"objects": ["1"], "arrows": [("l", "1", "1")]})


def test_quiver_path_cap():
    with pytest.raises(TooLarge):
        build_category("quiver", {"objects": ["1", "2"],
                                  "arrows": [(f"a{k}", "1", "2") for k in range(10)]},
                       max_morphisms=8)


def test_square_poset_structure():
    cat = square()
    assert len(cat.mor_names) == 4 + 5  # identities + a<b a<c b<d c<d a<d
    assert cat.compose("b<d", "a<b") == "a<d"
    assert cat.compose("c<d", "a<c") == "a<d"
    # generator expressions compose correctly (validated at build)
    assert set(cat.generators) == {"a<b", "a<c", "b<d", "c<d"}
    assert cat.expressions["a<d"] in (("b<d", "a<b"), ("c<d", "a<c"))


def test_poset_antisymmetry_enforced():
    with pytest.raises(NotPartiallyOrdered):
        build_category("poset", {"objects": ["x", "y"],
                                 "relations": [("x", "y"), ("y", "x")]})


def test_monoid_builders_and_errors():
    cat = c2()
    assert cat.objects == ("i",)
    assert cat.compose("g", "g") == "e"
    with pytest.raises(MissingIdentity):
        # left projection semigroup: x * y = x has no two-sided unit
        build_category("monoid", {"elements": ["a", "b"],
                                  "table": {("a", "a"): "a", ("a", "b"): "a",
                                            ("b", "a"): "b", ("b", "b"): "b"}})
    nonassoc = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e",
                ("e", "h"): "h", ("h", "e"): "h", ("g", "h"): "e", ("h", "g"): "g",
                ("h", "h"): "h"}
    with pytest.raises(NonAssociativeTable):
        build_category("monoid", {"elements": ["e", "g", "h"], "table": nonassoc, "unit": "e"})


def test_table_builder_c2_sink_valid():
    cat = c2_sink()
    assert validate_category(cat).ok
    assert cat.compose("th", "g") == "th"


def test_opposite_involution_and_composition():
    for cat in (a3(), square(), c2_sink()):
        op = opposite(cat)
        assert op.src("a") == cat.tgt("a") if "a" in cat.mor else True
        opop = opposite(op)
        assert opop.mor == cat.mor
        assert opop._compose == cat._compose
        for g, f in cat.composable_pairs():
            assert op.compose(f, g) == cat.compose(g, f)


# ---- functors and comma categories ----

def test_validate_functor_inclusion():
    small = full_subcategory(a3(), ["1", "2"])
    inc = inclusion_functor(small, a3())
    assert validate_functor(inc).ok
    bad = CatFunctor(small, a3(), {"1": "1", "2": "2"},
                     {"e_1": "e_1", "e_2": "e_2", "a": "b"})
    assert not validate_functor(bad).ok


def test_comma_category_of_identity_is_slice():
    cat = a3()
    cc = comma_category(identity_functor(cat), "3")
    # objects: morphisms into 3: e_3, b, b*a
    assert len(cc.objects) == 3
    assert validate_category(cc).ok
    labels = set(cc.obj_labels.values())
    assert ("3", "e_3") in labels and ("2", "b") in labels and ("1", "b*a") in labels
    # arrow from (1, b*a) to (2, b) labeled by a
    srcs = [cc.mor_labels[m] for m in cc.mor_names if not cc.is_identity(m)]
    assert sorted(srcs) == ["a", "b", "b*a"]


def test_under_comma_category_dual_counts():
    cat = a3()
    uc = under_comma_category(identity_functor(cat), "1")
    assert len(uc.objects) == 3
    assert validate_category(uc).ok


def test_comma_category_of_subcategory_inclusion():
    amb = a3()
    small = full_subcategory(amb, ["1", "2"])
    inc = inclusion_functor(small, amb)
    cc = comma_category(inc, "3")
    # theta in {b, b*a} with source objects 2 and 1
    assert len(cc.objects) == 2
    nonid = [m for m in cc.mor_names if not cc.is_identity(m)]
    assert len(nonid) == 1
    assert cc.mor_labels[nonid[0]] == "a"


# ---- ideals ----

def _brute_force_prime_ideals(cat):
    """Independent oracle: scan all nonempty subsets, apply raw definitions."""
    names = list(cat.mor_names)
    pairs = [(g, f, cat.compose(g, f)) for g, f in cat.composable_pairs()]
    out = []
    for r in range(1, len(names) + 1):
        for sub in itertools.combinations(names, r):
            p = set(sub)
            two_sided = all(c in p for g, f, c in pairs if g in p or f in p)
            prime = all(c not in p for g, f, c in pairs if g not in p and f not in p)
            if two_sided and prime:
                out.append(frozenset(p))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def test_prime_ideal_enumeration_matches_brute_force():
    for cat in (a2(), a3(), c2(), c2_sink(), kronecker2()):
        assert enumerate_prime_ideals(cat) == _brute_force_prime_ideals(cat)


def test_enumerate_prime_ideals_cap():
    with pytest.raises(TooLarge):
        enumerate_prime_ideals(a4(), cap=5)


def test_classify_ideal_a2_frozen():
    cat = a2()
    ideal = classify_ideal(cat, {"a"})
    assert ideal.two_sided and ideal.prime and ideal.proper
    ideal2 = classify_ideal(cat, {"a", "e_1"})
    assert ideal2.two_sided and ideal2.prime
    # {e_1} alone is not two-sided: a . e_1 = a escapes
    ideal3 = classify_ideal(cat, {"e_1"})
    assert not ideal3.two_sided
    with pytest.raises(EmptySet):
        classify_ideal(cat, set())


def test_endo_prime_ideal_examples():
    cat = a2()
    p2 = endo_prime_ideal(cat, "2")
    assert p2.carrier == frozenset({"e_1", "a"})
    assert p2.two_sided and p2.prime and p2.proper
    # one-object category: empty carrier, flagged improper
    pc2 = endo_prime_ideal(c2(), "i")
    assert pc2.carrier == frozenset()
    assert not pc2.proper
    assert pc2.two_sided and pc2.prime  # vacuously


def test_quotient_subcategory():
    cat = a2()
    q = quotient_subcategory(cat, endo_prime_ideal(cat, "2"))
    assert q.objects == ("2",)
    assert q.mor_names == ("e_2",)
    # degenerate empty ideal: quotient is the whole category
    whole = quotient_subcategory(c2(), endo_prime_ideal(c2(), "i"))
    assert whole.mor_names == c2().mor_names
    # {b*a} on a3 is two-sided but not prime: compose(b, a) lands in it
    # while neither factor does
    nonprime = classify_ideal(a3(), {"b*a"})
    assert nonprime.two_sided and not nonprime.prime
    with pytest.raises(NotPrime):
        quotient_subcategory(a3(), nonprime)


def test_quotient_by_p_i_on_c2_sink():
    cat = c2_sink()
    pi = endo_prime_ideal(cat, "i")
    assert pi.carrier == frozenset({"th", "e_j"})
    assert pi.two_sided and pi.prime
    q = quotient_subcategory(cat, pi)
    assert q.objects == ("i",)
    assert set(q.mor_names) == {"e_i", "g"}


# ---- order structure ----

def test_preorder_and_partial_order():
    rel, antisym = preorder(a3())
    assert ("1", "3") in rel and ("3", "1") not in rel
    assert antisym
    iso_pair = build_category("table", {
        "objects": ["x", "y"],
        "morphisms": [("e_x", "x", "x"), ("e_y", "y", "y"), ("u", "x", "y"), ("v", "y", "x")],
        "identity": {"x": "e_x", "y": "e_y"},
        "compose": {("e_x", "e_x"): "e_x", ("e_y", "e_y"): "e_y",
                    ("u", "e_x"): "u", ("e_y", "u"): "u",
                    ("v", "e_y"): "v", ("e_x", "v"): "v",
                    ("v", "u"): "e_x", ("u", "v"): "e_y"}})
    assert not is_partially_ordered(iso_pair)
    with pytest.raises(NotPartiallyOrdered):
        stratify(iso_pair)


def test_stratify_square_frozen():
    strata, exhausted = stratify(square())
    assert exhausted
    assert strata == [("a",), ("b", "c"), ("d",)]


def test_stratify_chain_and_monoid():
    strata, _ = stratify(a3())
    assert strata == [("1",), ("2",), ("3",)]
    strata_c2, exhausted = stratify(c2())
    assert exhausted and strata_c2 == [("i",)]


def test_rootedness_reports():
    r = rootedness_report(a3())
    assert r.partially_ordered and r.left_rooted and r.right_rooted
    assert r.locally_trivial and r.direct and r.inverse
    rc2 = rootedness_report(c2())
    assert rc2.partially_ordered and rc2.left_rooted
    assert not rc2.locally_trivial and not rc2.direct and not rc2.inverse
    sink = rootedness_report(c2_sink())
    assert sink.partially_ordered and not sink.locally_trivial and not sink.direct
    iso_pair_report = rootedness_report(build_category("monoid", {
        "elements": ["e"], "table": {("e", "e"): "e"}, "unit": "e"}))
    assert iso_pair_report.direct  # trivial one-object category


def test_locally_trivial():
    assert is_locally_trivial(square())
    assert not is_locally_trivial(c2())


# ---- inflow/outflow index categories ----

def test_inflow_index_category_a3_comma():
    cat = a3()
    p3 = endo_prime_ideal(cat, "3")
    idx = inflow_index_category(cat, p3, "3", convention="comma")
    assert set(idx.objects) == {"b", "b*a"}
    nonid = [m for m in idx.mor_names if not idx.is_identity(m)]
    assert len(nonid) == 1
    assert idx.mor_labels[nonid[0]] == "a"
    assert idx.src(nonid[0]) == "b*a" and idx.tgt(nonid[0]) == "b"
    assert validate_category(idx).ok


def test_inflow_index_category_discrete():
    cat = a3()
    p3 = endo_prime_ideal(cat, "3")
    idx = inflow_index_category(cat, p3, "3", convention="discrete")
    assert set(idx.objects) == {"b", "b*a"}
    assert all(idx.is_identity(m) for m in idx.mor_names)


def test_inflow_index_matches_comma_of_below_inclusion_on_direct():
    # on a direct category the comma convention reproduces the comma category
    # of the full inclusion of the strictly-below part
    cat = square()
    pd = endo_prime_ideal(cat, "d")
    idx = inflow_index_category(cat, pd, "d")
    below = full_subcategory(cat, ["a", "b", "c"])
    cc = comma_category(inclusion_functor(below, cat), "d")
    assert len(idx.objects) == len(cc.objects) == 3
    assert len(idx.mor_names) == len(cc.mor_names)


def test_outflow_index_category_dual():
    cat = a3()
    p1 = endo_prime_ideal(cat, "1")
    idx = outflow_index_category(cat, p1, "1")
    assert set(idx.objects) == {"a", "b*a"}
    nonid = [m for m in idx.mor_names if not idx.is_identity(m)]
    assert len(nonid) == 1
    assert idx.mor_labels[nonid[0]] == "b"
    assert idx.src(nonid[0]) == "a" and idx.tgt(nonid[0]) == "b*a"


def test_inflow_index_on_c2_sink_endos_act():
    cat = c2_sink()
    pj = endo_prime_ideal(cat, "j")
    idx = inflow_index_category(cat, pj, "j")
    # objects: morphisms with target j inside P_j: just th; arrows: e_i and g
    assert idx.objects == ("th",)
    assert len(idx.mor_names) == 2  # identity e_i and the loop g
    labels = sorted(idx.mor_labels.values())
    assert labels == ["e_i", "g"]


# ---- property tests on random acyclic quivers ----

@st.composite
def random_quiver(draw):
    n = draw(st.integers(1, 4))
    vertices = [f"v{k}" for k in range(n)]
    arrows = []
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(draw(st.integers(0, 1))):
                arrows.append((f"x{idx}", vertices[i], vertices[j]))
                idx += 1
    return {"objects": vertices, "arrows": arrows}


@settings(max_examples=25, deadline=None)
@given(random_quiver())
def test_random_quiver_categories_validate(qdata):
    cat = build_category("quiver", qdata)
    assert validate_category(cat).ok
    assert rootedness_report(cat).direct
    op = opposite(cat)
    assert validate_category(op).ok
    assert rootedness_report(op).inverse
