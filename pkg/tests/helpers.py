"""Shared fixture builders for the test suite.

Small index categories used throughout: the A2 and A3 path categories, the
commutative square poset, the one-object C2 monoid, and a two-object category
whose first object carries a C2 worth of endomorphisms feeding a sink.
"""

from diarep.fincat import build_category


def a2():
    return build_category("quiver", {"name": "A2", "objects": ["1", "2"],
                                     "arrows": [("a", "1", "2")]})


def a3():
    return build_category("quiver", {"name": "A3", "objects": ["1", "2", "3"],
                                     "arrows": [("a", "1", "2"), ("b", "2", "3")]})


def a4():
    return build_category("quiver", {"name": "A4", "objects": ["1", "2", "3", "4"],
                                     "arrows": [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")]})


def kronecker2():
    return build_category("quiver", {"name": "K2", "objects": ["1", "2"],
                                     "arrows": [("a", "1", "2"), ("b", "1", "2")]})


def square():
    return build_category("poset", {"name": "SQ", "objects": ["a", "b", "c", "d"],
                                    "relations": [("a", "b"), ("a", "c"),
                                                  ("b", "d"), ("c", "d")]})


def c2():
    els = ["e", "g"]
    table = {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"}
    return build_category("monoid", {"name": "C2", "elements": els, "table": table,
                                     "unit": "e", "object": "i"})


def c3():
    els = ["e", "g", "h"]
    table = {}
    idx = {"e": 0, "g": 1, "h": 2}
    rev = {v: k for k, v in idx.items()}
    for x in els:
        for y in els:
            table[(x, y)] = rev[(idx[x] + idx[y]) % 3]
    return build_category("monoid", {"name": "C3", "elements": els, "table": table,
                                     "unit": "e", "object": "i"})


def c2_sink():
    """Two objects i, j; End(i) = C2 = {e_i, g}; one morphism th: i -> j
    absorbing g on the right."""
    objects = ["i", "j"]
    morphisms = [("e_i", "i", "i"), ("g", "i", "i"), ("th", "i", "j"), ("e_j", "j", "j")]
    identity = {"i": "e_i", "j": "e_j"}
    compose = {
        ("e_i", "e_i"): "e_i", ("e_i", "g"): "g", ("g", "e_i"): "g", ("g", "g"): "e_i",
        ("th", "e_i"): "th", ("th", "g"): "th", ("e_j", "th"): "th", ("e_j", "e_j"): "e_j",
    }
    return build_category("table", {"name": "C2sink", "objects": objects,
                                    "morphisms": morphisms, "identity": identity,
                                    "compose": compose,
                                    "generators": ("g", "th"),
                                    "expressions": {"g": ("g",), "th": ("th",)}})


# ---------------------------------------------------------------------------
# algebra and module fixtures


def kc2(field):
    """Group algebra of C2 in the basis (e, g)."""
    from diarep.modcat import monoid_algebra

    return monoid_algebra(field, c2(), name="kC2")


def const3():
    """Noncommutative monoid: unit e plus two left-absorbing elements."""
    els = ["e", "a", "b"]
    table = {("e", "e"): "e", ("e", "a"): "a", ("e", "b"): "b",
             ("a", "e"): "a", ("a", "a"): "a", ("a", "b"): "a",
             ("b", "e"): "b", ("b", "a"): "b", ("b", "b"): "b"}
    return build_category("monoid", {"name": "M3", "elements": els, "table": table,
                                     "unit": "e", "object": "i"})


def trivial_module(alg):
    """One-dimensional module where every monoid basis vector acts as 1.

    Only correct for monoid algebras (every basis vector is grouplike).
    """
    from diarep.linalg import Matrix
    from diarep.modcat import Module

    one = Matrix.identity(alg.field, 1)
    return Module(alg, 1, tuple(one for _ in range(alg.dim)), name="triv")


def sign_module(alg):
    """One-dimensional kC2 module where g acts as -1."""
    from diarep.linalg import Matrix
    from diarep.modcat import Module

    f = alg.field
    one = Matrix.identity(f, 1)
    neg = Matrix(f, [[f.neg(f.one)]], 1)
    action = tuple(neg if lbl == "g" else one for lbl in alg.basis)
    return Module(alg, 1, action, name="sign")


def residue_module(alg):
    """k = D/(x) for the dual numbers D."""
    from diarep.linalg import Matrix
    from diarep.modcat import Module

    f = alg.field
    return Module(alg, 1, (Matrix.identity(f, 1), Matrix.zeros(f, 1, 1)), name="k")


# ---------------------------------------------------------------------------
# diagram fixtures


def aug_morphism(f):
    """Augmentation kC2 -> k sending both group elements to 1."""
    from diarep.linalg import Matrix
    from diarep.modcat import AlgebraMorphism, field_algebra

    a = kc2(f)
    return AlgebraMorphism(a, field_algebra(f), Matrix(f, [[f.one, f.one]], 2))


def kc2_to_scalars_diagram(f):
    """A2 diagram: kC2 at the source, scalars at the sink, augmentation edge."""
    from diarep.diagram import ring_diagram
    from diarep.modcat import field_algebra

    return ring_diagram(a2(), {"1": kc2(f), "2": field_algebra(f)},
                        {"a": aug_morphism(f)})


def c2_regular_diagram(f, sign=False):
    """C2 diagram with kC2 at the vertex; g acts by an algebra automorphism."""
    from diarep.diagram import ring_diagram
    from diarep.linalg import Matrix
    from diarep.modcat import AlgebraMorphism

    a = kc2(f)
    if sign:
        m = Matrix(f, [[f.one, f.zero], [f.zero, f.neg(f.one)]], 2)
    else:
        m = Matrix.identity(f, 2)
    return ring_diagram(c2(), {"i": a}, {"g": AlgebraMorphism(a, a, m)})
