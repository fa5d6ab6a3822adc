"""Diagram layer tests.

The mutation cases below are chosen so that breakage is guaranteed: scaling
a unit witness or a witness against an identity edge always breaks a unit
triangle, and scaling the inner witness of a length-three chain of
non-identity arrows breaks the triple coherence law on one side only.
(Scaling a witness whose pair only ever occurs in triples alongside an
identity produces another coherent diagram, a twist, so such pairs are
useless as mutation targets.)
"""

import pytest

from diarep.diagram import (
    DiagramSpec,
    exactness_report,
    opposite_diagram,
    restrict_diagram,
    ring_diagram,
    trivial_diagram,
    twist_diagram,
    validate_diagram,
)
from diarep.errors import FunctorMismatch, InvalidStructure
from diarep.field import GF2, GF3, QQ
from diarep.fincat import full_subcategory, inclusion_functor
from diarep.linalg import Matrix
from diarep.modcat import AlgebraMorphism

from helpers import (
    a2,
    a3,
    a4,
    aug_morphism,
    c2,
    c2_regular_diagram,
    c2_sink,
    kc2,
    kc2_to_scalars_diagram,
    square,
)


def test_trivial_diagrams_validate():
    for cat in [a3(), square(), c2(), c2_sink()]:
        for f in [GF2, QQ]:
            dia = trivial_diagram(cat, f)
            assert validate_diagram(dia).ok


def test_ring_diagram_validates():
    for f in [GF2, GF3, QQ]:
        dia = kc2_to_scalars_diagram(f)
        assert validate_diagram(dia).ok
        assert dia.bimodule("a").dim == 1
    assert validate_diagram(c2_regular_diagram(GF3, sign=True)).ok
    assert validate_diagram(c2_regular_diagram(GF2)).ok


def test_ring_diagram_functor_mismatch():
    cat = a3()
    a = kc2(GF3)
    ident = AlgebraMorphism(a, a, Matrix.identity(GF3, 2))
    flip = AlgebraMorphism(a, a, Matrix(GF3, [[1, 0], [0, 2]], 2))
    with pytest.raises(FunctorMismatch):
        ring_diagram(cat, {"1": a, "2": a, "3": a},
                     {"a": ident, "b": ident, "b*a": flip})


def test_edge_tensor_is_cached():
    dia = trivial_diagram(a3(), GF2)
    assert dia.edge_tensor("b", "a") is dia.edge_tensor("b", "a")


def test_scalar_twist_changes_witness():
    dia = c2_regular_diagram(QQ)
    two = Matrix(QQ, [[2, 0], [0, 2]], 2)
    twisted = twist_diagram(dia, {"g": two})
    assert validate_diagram(twisted).ok
    assert twisted.tau[("g", "g")] != dia.tau[("g", "g")]
    assert twisted.eta["i"] == dia.eta["i"]


def test_identity_edge_twist():
    # twisting the identity edge moves the unit witness but stays coherent
    dia = c2_regular_diagram(GF2)
    lg = kc2(GF2).left_mult[1]
    twisted = twist_diagram(dia, {"e": lg})
    assert validate_diagram(twisted).ok
    assert twisted.eta["i"] == lg
    assert twisted.tau[("g", "g")] != dia.tau[("g", "g")]


def test_twist_rejects_non_automorphism():
    dia = c2_regular_diagram(GF2)
    with pytest.raises(InvalidStructure):
        twist_diagram(dia, {"g": Matrix.zeros(GF2, 2, 2)})
    with pytest.raises(InvalidStructure):
        # invertible but not right-linear for the regular bimodule
        twist_diagram(dia, {"g": Matrix(GF2, [[1, 1], [0, 1]], 2)})


def test_mutated_unit_witness_detected():
    dia = trivial_diagram(a3(), QQ)
    dia.eta["2"] = dia.eta["2"].scale(QQ.parse("2"))
    rep = validate_diagram(dia)
    assert not rep.ok
    assert any(f.kind.startswith("dia.triangle") for f in rep.failures)


def test_mutated_identity_pair_witness_detected():
    dia = trivial_diagram(a3(), QQ)
    dia.tau[("b", "e_2")] = dia.tau[("b", "e_2")].scale(QQ.parse("3"))
    rep = validate_diagram(dia)
    assert not rep.ok
    assert any(f.kind == "dia.triangle-right" and f.where == ("b",) for f in rep.failures)


def test_mutated_inner_witness_detected():
    # needs a chain of three non-identity arrows: the scaled pair (b, a)
    # appears on only one side of the (c, b, a) triple
    dia = trivial_diagram(a4(), QQ)
    dia.tau[("b", "a")] = dia.tau[("b", "a")].scale(QQ.parse("5"))
    rep = validate_diagram(dia)
    assert not rep.ok
    assert any(f.kind == "dia.triple" and f.where == ("c", "b", "a") for f in rep.failures)


def test_scaling_top_pair_on_a3_is_coherent():
    # on A3 the pair (b, a) never meets a third non-identity arrow, so the
    # scaled diagram is a twist and still validates
    dia = trivial_diagram(a3(), QQ)
    dia.tau[("b", "a")] = dia.tau[("b", "a")].scale(QQ.parse("7"))
    assert validate_diagram(dia).ok


def test_singular_witness_detected():
    dia = c2_regular_diagram(GF3)
    dia.tau[("g", "g")] = Matrix.zeros(GF3, 2, 2)
    rep = validate_diagram(dia)
    assert not rep.ok
    assert any(f.kind == "dia.witness-invertible" for f in rep.failures)


def test_missing_pieces_detected():
    dia = trivial_diagram(a2(), GF2)
    del dia.tau[("a", "e_1")]
    assert not validate_diagram(dia).ok
    dia2 = trivial_diagram(a2(), GF2)
    del dia2.eta["1"]
    assert not validate_diagram(dia2).ok
    dia3 = trivial_diagram(a2(), GF2)
    dia3.algebras["1"] = kc2(GF2)
    assert not validate_diagram(dia3).ok


def test_restrict_diagram():
    dia = trivial_diagram(square(), GF3)
    sub = full_subcategory(square(), ["a", "b", "d"])
    small = restrict_diagram(dia, inclusion_functor(sub, square()))
    assert validate_diagram(small).ok
    assert set(small.bimodules) == set(sub.mor_names)


def test_opposite_diagram_validates():
    for dia in [trivial_diagram(square(), GF2),
                kc2_to_scalars_diagram(GF3),
                twist_diagram(c2_regular_diagram(QQ),
                              {"g": Matrix(QQ, [[2, 0], [0, 2]], 2)})]:
        op = opposite_diagram(dia)
        assert validate_diagram(op).ok
        assert op.cat.objects == dia.cat.objects


def test_exactness_report():
    rep = exactness_report(kc2_to_scalars_diagram(GF2))
    # the edge bimodule is the scalars: free on the left, but over kC2 on
    # the right it is the trivial module, which is not projective in char 2
    assert rep["a"]["projective_as_left_module"] is True
    assert rep["a"]["projective_as_right_module"] is False
    assert rep["e_1"]["projective_as_right_module"] is True
