"""Algebra and module layer tests.

Expected dimensions and actions below were derived by hand: over F_2 the
C2 group algebra is local (trivial module not projective), over F_3 it is
semisimple, and the dual numbers are self-injective with a unique simple.
"""

import pytest

from diarep.errors import AlgebraMismatch, Inconsistent, InvalidStructure
from diarep.field import GF2, GF3, QQ
from diarep.linalg import Matrix
from diarep.modcat import (
    Algebra,
    AlgebraMorphism,
    Bimodule,
    Module,
    bimodule_from_morphism,
    direct_sum_modules,
    dual_module,
    dual_numbers,
    field_algebra,
    finite_colimit,
    finite_limit,
    free_cover,
    free_module,
    hom_module,
    hom_push,
    injective_embedding,
    is_injective_module,
    is_module_map,
    is_projective_module,
    module_hom_basis,
    monoid_algebra,
    morphism_factorization,
    opposite_algebra,
    opposite_bimodule,
    product_fields,
    regular_bimodule,
    regular_module,
    restrict_module,
    split_epi_section,
    split_mono_retraction,
    tensor_bimodules,
    tensor_map,
    tensor_over_algebra,
    transpose_from_hom,
    transpose_to_hom,
    validate_algebra,
    validate_algebra_morphism,
    validate_bimodule,
    validate_module,
    zero_module,
)

from helpers import const3, kc2, residue_module, sign_module, trivial_module


def aug_map(alg):
    """Augmentation of a monoid algebra onto the scalars."""
    f = alg.field
    k = field_algebra(f)
    return AlgebraMorphism(alg, k, Matrix(f, [[f.one] * alg.dim], alg.dim))


def test_algebra_validation():
    for alg in [kc2(GF2), kc2(GF3), dual_numbers(QQ), product_fields(GF3, 3),
                monoid_algebra(GF2, const3()), field_algebra(QQ)]:
        assert validate_algebra(alg).ok
    d = dual_numbers(QQ)
    broken = Algebra(d.field, d.basis,
                     (d.left_mult[0], Matrix(QQ, [[0, 1], [0, 0]], 2)), d.unit)
    assert not validate_algebra(broken).ok


def test_monoid_algebra_structure():
    a = kc2(GF2)
    assert a.basis == ("e", "g")
    assert a.unit == Matrix.col_vector(GF2, [1, 0])
    assert a.left_mult[1] == Matrix(GF2, [[0, 1], [1, 0]], 2)
    # right multiplication by g equals left multiplication: C2 is abelian
    assert a.right_mult(1) == a.left_mult[1]


def test_opposite_algebra():
    assert opposite_algebra(kc2(GF3)) == kc2(GF3)
    d = dual_numbers(QQ)
    assert opposite_algebra(opposite_algebra(d)) == d
    m = monoid_algebra(GF2, const3())
    op = opposite_algebra(m)
    assert validate_algebra(op).ok
    assert op != m  # a*b = a but b*a = b, so the flip changes the table
    assert opposite_algebra(op) == m


def test_module_validation():
    a = kc2(GF2)
    for m in [regular_module(a), trivial_module(a), free_module(a, 2), zero_module(a)]:
        assert validate_module(m).ok
    broken = Module(a, 1, (Matrix.identity(GF2, 1), Matrix.zeros(GF2, 1, 1)))
    assert not validate_module(broken).ok  # g*g = e forces an invertible action


def test_direct_sum_contract():
    a = dual_numbers(QQ)
    ds = direct_sum_modules([regular_module(a), residue_module(a), regular_module(a)])
    assert validate_module(ds.module).ok
    assert ds.module.dim == 5
    for i, inj in enumerate(ds.injections):
        for j, proj in enumerate(ds.projections):
            prod = proj @ inj
            if i == j:
                assert prod == Matrix.identity(QQ, inj.ncols)
            else:
                assert prod.is_zero()


def test_dual_module_involution():
    a = kc2(GF3)
    for m in [regular_module(a), sign_module(a)]:
        d = dual_module(m)
        assert validate_module(d).ok
        assert d.algebra == opposite_algebra(a)
        assert dual_module(d) == m


def test_algebra_morphism_and_restriction():
    for f in [GF2, GF3, QQ]:
        eps = aug_map(kc2(f))
        assert validate_algebra_morphism(eps).ok
        pulled = restrict_module(eps, regular_module(field_algebra(f)))
        assert pulled == trivial_module(kc2(f))
    bad = AlgebraMorphism(kc2(GF2), field_algebra(GF2), Matrix(GF2, [[1, 0]], 2))
    assert not validate_algebra_morphism(bad).ok  # kills g, misses g*g = e


def test_tensor_unitor():
    cases = [(kc2(GF2), trivial_module(kc2(GF2))),
             (kc2(GF2), regular_module(kc2(GF2))),
             (kc2(GF3), sign_module(kc2(GF3))),
             (dual_numbers(QQ), free_module(dual_numbers(QQ), 2))]
    for alg, m in cases:
        tr = tensor_over_algebra(regular_bimodule(alg), m)
        assert tr.module.dim == m.dim
        uni = tr.pi @ Matrix.kron(alg.unit, Matrix.identity(alg.field, m.dim))
        assert uni.is_invertible()
        assert is_module_map(uni, m, tr.module)


def test_tensor_coinvariants():
    # the trivial right module tensors down to coinvariants M / (g.m - m)
    for f, mmaker, expected in [(GF2, trivial_module, 1), (GF3, trivial_module, 1),
                                (GF3, sign_module, 0)]:
        a = kc2(f)
        k = field_algebra(f)
        one = Matrix.identity(f, 1)
        x = Bimodule(k, a, 1, (one,), (one, one), name="X")
        assert validate_bimodule(x).ok
        tr = tensor_over_algebra(x, mmaker(a))
        assert tr.module.dim == expected


def test_tensor_functoriality():
    a = kc2(GF2)
    b = regular_bimodule(a)
    m, n = regular_module(a), trivial_module(a)
    aug = Matrix(GF2, [[1, 1]], 2)
    tr_m, tr_n = tensor_over_algebra(b, m), tensor_over_algebra(b, n)
    f = tensor_map(tr_m, tr_n, aug)
    assert is_module_map(f, tr_m.module, tr_n.module)
    # composing with the identity is the identity
    assert tensor_map(tr_m, tr_m, Matrix.identity(GF2, 2)) == Matrix.identity(
        GF2, tr_m.module.dim)


def test_bimodule_tensor_and_opposite():
    a = monoid_algebra(GF2, const3())
    bt = tensor_bimodules(regular_bimodule(a), regular_bimodule(a))
    assert bt.bimodule.dim == a.dim  # A (x)_A A = A
    assert validate_bimodule(bt.bimodule).ok
    flipped = opposite_bimodule(regular_bimodule(a))
    assert validate_bimodule(flipped).ok
    assert flipped.left_algebra == opposite_algebra(a)


def test_module_hom_dimensions():
    a2f = kc2(GF2)
    reg, triv = regular_module(a2f), trivial_module(a2f)
    assert len(module_hom_basis(reg, reg)) == 2
    assert len(module_hom_basis(triv, reg)) == 1  # image must lie in the fixed line
    assert len(module_hom_basis(reg, triv)) == 1
    assert len(module_hom_basis(triv, triv)) == 1
    d = dual_numbers(QQ)
    regd, k = regular_module(d), residue_module(d)
    assert len(module_hom_basis(regd, k)) == 1
    assert len(module_hom_basis(k, regd)) == 1  # only through the socle
    assert len(module_hom_basis(k, k)) == 1
    assert len(module_hom_basis(regd, regd)) == 2
    for h in module_hom_basis(regd, regd):
        assert is_module_map(h, regd, regd)


def test_hom_module_action():
    a = kc2(GF3)
    hr = hom_module(regular_bimodule(a), sign_module(a))
    assert hr.module.dim == 1
    # evaluation at 1 identifies Hom(A, sign) with sign
    assert hr.module.action[a.index("g")] == Matrix(GF3, [[GF3.neg(GF3.one)]], 1)
    assert validate_module(hr.module).ok
    # pushing along sign -> sign zero map gives zero
    z = hom_push(hr, hr, Matrix.zeros(GF3, 1, 1))
    assert z.is_zero()


def test_hom_round_trip_coordinates():
    a = kc2(GF2)
    hr = hom_module(regular_bimodule(a), regular_module(a))
    assert hr.module.dim == 2
    for j in range(2):
        coords = Matrix.col_vector(GF2, [1 if i == j else 0 for i in range(2)])
        assert hr.from_matrix(hr.to_matrix(coords)) == coords


def test_transpose_round_trip():
    a = kc2(GF2)
    b = regular_bimodule(a)
    m, n = trivial_module(a), regular_module(a)
    tr = tensor_over_algebra(b, m)
    hr = hom_module(b, n)
    maps = module_hom_basis(tr.module, n)
    assert len(maps) == 1
    phi = maps[0]
    psi = transpose_to_hom(tr, hr, phi)
    assert is_module_map(psi, m, hr.module)
    assert transpose_from_hom(tr, hr, psi) == phi
    # and starting from the hom side
    back = transpose_to_hom(tr, hr, transpose_from_hom(tr, hr, psi))
    assert back == psi


def test_colimits():
    a = kc2(GF2)
    triv, reg = trivial_module(a), regular_module(a)
    cop = finite_colimit([triv, triv], [])
    assert cop.module.dim == 2
    eye = Matrix.identity(GF2, 1)
    push = finite_colimit([triv, triv, triv], [(0, 1, eye), (0, 2, eye)])
    assert push.module.dim == 1
    assert push.legs[1] == push.legs[2]
    coeq = finite_colimit([reg, reg], [(0, 1, Matrix.identity(GF2, 2)),
                                       (0, 1, a.left_mult[1])])
    assert coeq.module.dim == 1  # coinvariants of the regular module
    aug = Matrix(GF2, [[1, 1]], 2)
    u = coeq.induced([aug, aug])
    assert u @ coeq.legs[1] == aug
    with pytest.raises(Inconsistent):
        coeq.induced([aug, Matrix.zeros(GF2, 1, 2)])


def test_limits():
    for f, fixdim in [(GF2, 1), (GF3, 1)]:
        a = kc2(f)
        reg = regular_module(a)
        prod = finite_limit([reg, reg], [])
        assert prod.module.dim == 4
        eq = finite_limit([reg, reg], [(0, 1, Matrix.identity(f, 2)),
                                       (0, 1, a.left_mult[1])])
        assert eq.module.dim == fixdim
        assert validate_module(eq.module).ok
        # the fixed line receives the trivial module
        unit_map = Matrix.from_cols(f, 2, [[f.one, f.one]])
        v = eq.induced([unit_map, unit_map])
        assert eq.legs[0] @ v == unit_map


def test_factorization():
    for f in [GF2, GF3]:
        a = kc2(f)
        reg, triv = regular_module(a), trivial_module(a)
        aug = Matrix(f, [[f.one, f.one]], 2)
        fact = morphism_factorization(aug, reg, triv)
        assert fact.kernel.dim == 1
        # the kernel is spanned by 1 - g, on which g acts by -1
        assert fact.kernel.action[1] == Matrix(f, [[f.neg(f.one)]], 1)
        assert fact.image.dim == 1
        assert fact.cokernel.dim == 0
        assert fact.image_inclusion @ fact.onto_image == aug
        assert validate_module(fact.kernel).ok
    with pytest.raises(InvalidStructure):
        morphism_factorization(Matrix(GF2, [[1, 0]], 2),
                               regular_module(kc2(GF2)), trivial_module(kc2(GF2)))


def test_projectivity_table():
    a2f, a3f = kc2(GF2), kc2(GF3)
    d = dual_numbers(QQ)
    assert is_projective_module(regular_module(a2f))
    assert is_injective_module(regular_module(a2f))
    assert not is_projective_module(trivial_module(a2f))
    assert not is_injective_module(trivial_module(a2f))
    assert is_projective_module(trivial_module(a3f))
    assert is_injective_module(sign_module(a3f))
    assert is_projective_module(regular_module(d))
    assert is_injective_module(regular_module(d))
    assert not is_projective_module(residue_module(d))
    assert not is_injective_module(residue_module(d))
    assert is_projective_module(zero_module(a2f))
    assert is_injective_module(zero_module(a2f))
    pf = product_fields(GF3, 2)
    line = Module(pf, 1, (Matrix.identity(GF3, 1), Matrix.zeros(GF3, 1, 1)))
    assert is_projective_module(line) and is_injective_module(line)


def test_free_cover_splits_free():
    a = kc2(GF3)
    m = free_module(a, 1)
    fm, g = free_cover(m)
    s = split_epi_section(g, fm, m)
    assert s is not None
    assert g @ s == Matrix.identity(GF3, m.dim)
    assert is_module_map(s, m, fm)


def test_split_mono_socle():
    i = Matrix.from_cols(GF2, 2, [[GF2.one, GF2.one]])
    a2f = kc2(GF2)
    assert is_module_map(i, trivial_module(a2f), regular_module(a2f))
    assert split_mono_retraction(i, trivial_module(a2f), regular_module(a2f)) is None
    a3f = kc2(GF3)
    i3 = Matrix.from_cols(GF3, 2, [[GF3.one, GF3.one]])
    r = split_mono_retraction(i3, trivial_module(a3f), regular_module(a3f))
    assert r is not None and r @ i3 == Matrix.identity(GF3, 1)


def test_injective_embedding():
    cases = [trivial_module(kc2(GF2)), residue_module(dual_numbers(QQ))]
    for m in cases:
        env, mono = injective_embedding(m)
        assert env.algebra == m.algebra
        assert env.dim == 2
        assert validate_module(env).ok
        assert is_module_map(mono, m, env)
        assert mono.rank() == m.dim
        assert is_injective_module(env)


def test_bimodule_from_morphism():
    eps = aug_map(kc2(GF2))
    b = bimodule_from_morphism(eps)
    assert validate_bimodule(b).ok
    assert b.dim == 1
    tr = tensor_over_algebra(b, regular_module(kc2(GF2)))
    assert tr.module.dim == 1  # k (x)_{kC2} kC2 collapses to the coinvariants


def test_algebra_mismatch_raises():
    a, d = kc2(GF2), dual_numbers(GF2)
    with pytest.raises(AlgebraMismatch):
        tensor_over_algebra(regular_bimodule(a), regular_module(d))
    with pytest.raises(AlgebraMismatch):
        direct_sum_modules([regular_module(a), regular_module(d)])
