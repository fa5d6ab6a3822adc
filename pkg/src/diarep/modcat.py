"""Finite-dimensional algebras, modules and bimodules over an exact field.

Everything is matrices: an algebra is its family of left-multiplication
matrices, a module is one action matrix per algebra basis vector, and every
construction (tensor over an algebra, hom spaces, finite limits and
colimits, free covers) returns explicit projection/section or inclusion
matrices so later layers can transport maps through it without guessing
coordinates.

Conventions used throughout:
  - matrices act on column vectors, so a map V -> W is dim W x dim V;
  - the tensor product basis is ordered with the first factor major,
    pair (i, j) at index i * dim(second) + j, matching Matrix.kron;
  - a right action is stored as matrices R_k with R(ab) = R(b) @ R(a),
    which is exactly a left action of the opposite algebra.
"""

from dataclasses import dataclass, field as dc_field

from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    Inconsistent,
    InvalidStructure,
)
from .field import ExactField
from .linalg import Matrix, quotient_by_columns, unvec, vec
from .reports import ValidationReport


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class Algebra:
    """An associative unital algebra in a fixed basis.

    left_mult[k] is the matrix of x |-> e_k * x; unit holds the
    coordinates of 1 as a column vector. The name is cosmetic and ignored
    by equality, so structurally identical algebras compare equal.
    """

    field: ExactField
    basis: tuple
    left_mult: tuple
    unit: Matrix
    name: str = dc_field(default="A", compare=False)

    @property
    def dim(self):
        return len(self.basis)

    def index(self, label) -> int:
        return self.basis.index(label)

    def basis_column(self, k: int) -> Matrix:
        f = self.field
        return Matrix.col_vector(f, [f.one if i == k else f.zero for i in range(self.dim)])

    def left_mult_of(self, v) -> Matrix:
        """Matrix of left multiplication by the element with coordinates v."""
        entries = _column_entries(v)
        if len(entries) != self.dim:
            raise DimensionMismatch("element has wrong length")
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for k, c in enumerate(entries):
            if c != self.field.zero:
                out = out + self.left_mult[k].scale(c)
        return out

    def right_mult(self, k: int) -> Matrix:
        """Matrix of x |-> x * e_k."""
        # column j is e_j * e_k, which is column k of left_mult[j]
        return Matrix.from_cols(
            self.field, self.dim, [self.left_mult[j].col(k) for j in range(self.dim)]
        )

    def right_mult_of(self, v) -> Matrix:
        entries = _column_entries(v)
        out = Matrix.zeros(self.field, self.dim, self.dim)
        for k, c in enumerate(entries):
            if c != self.field.zero:
                out = out + self.right_mult(k).scale(c)
        return out

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        return self.left_mult_of(x) @ y

    def element(self, combo: dict) -> Matrix:
        """Column vector of a linear combination given as {basis label: coeff}."""
        coords = [self.field.zero] * self.dim
        for label, c in combo.items():
            coords[self.index(label)] = c
        return Matrix.col_vector(self.field, coords)


def _column_entries(v):
    if isinstance(v, Matrix):
        if v.ncols != 1:
            raise DimensionMismatch("expected a column vector")
        return [r[0] for r in v.rows]
    return list(v)


def validate_algebra(alg: Algebra) -> ValidationReport:
    rep = ValidationReport()
    f = alg.field
    n = alg.dim
    for k, lm in enumerate(alg.left_mult):
        rep.bump()
        if lm.nrows != n or lm.ncols != n:
            rep.fail("alg.shape", (alg.basis[k],), "left multiplication matrix has wrong shape")
            return rep
    if alg.unit.nrows != n or alg.unit.ncols != 1:
        rep.fail("alg.shape", ("unit",), "unit vector has wrong shape")
        return rep
    ident = Matrix.identity(f, n)
    rep.bump()
    if alg.left_mult_of(alg.unit) != ident:
        rep.fail("alg.unit", ("left",), "unit does not act as identity on the left")
    rep.bump()
    if alg.right_mult_of(alg.unit) != ident:
        rep.fail("alg.unit", ("right",), "unit does not act as identity on the right")
    for i in range(n):
        li = alg.left_mult[i]
        for j in range(n):
            # (e_i e_j) x = e_i (e_j x) for all x
            rep.bump()
            prod = li.col(j)
            if alg.left_mult_of(prod) != li @ alg.left_mult[j]:
                rep.fail(
                    "alg.assoc",
                    (alg.basis[i], alg.basis[j]),
                    "multiplication is not associative at this pair",
                )
    return rep


def field_algebra(f: ExactField, name: str = "k") -> Algebra:
    one = Matrix.identity(f, 1)
    return Algebra(f, ("1",), (one,), Matrix.col_vector(f, [f.one]), name=name)


def monoid_algebra(f: ExactField, cat, name: str | None = None) -> Algebra:
    """Algebra spanned by the morphisms of a one-object category."""
    if len(cat.objects) != 1:
        raise InvalidStructure("monoid algebra needs a one-object category")
    names = cat.mor_names
    idx = {m: i for i, m in enumerate(names)}
    n = len(names)
    z, o = f.zero, f.one
    mult = []
    for k in names:
        cols = []
        for j in names:
            col = [z] * n
            col[idx[cat.compose(k, j)]] = o
            cols.append(col)
        mult.append(Matrix.from_cols(f, n, cols))
    unit = [z] * n
    unit[idx[cat.identity[cat.objects[0]]]] = o
    return Algebra(f, tuple(names), tuple(mult), Matrix.col_vector(f, unit),
                   name=name or f"k[{cat.objects[0]}]")


def dual_numbers(f: ExactField) -> Algebra:
    """k[x] / (x^2) in the basis (1, x)."""
    z, o = f.zero, f.one
    l1 = Matrix.identity(f, 2)
    lx = Matrix(f, [[z, z], [o, z]], 2)
    return Algebra(f, ("1", "x"), (l1, lx), Matrix.col_vector(f, [o, z]), name="k[x]/(x^2)")


def product_fields(f: ExactField, n: int) -> Algebra:
    """The split commutative algebra k x ... x k with idempotent basis."""
    z, o = f.zero, f.one
    mults = []
    for k in range(n):
        m = Matrix.zeros(f, n, n).to_lists()
        m[k][k] = o
        mults.append(Matrix(f, m, n))
    unit = Matrix.col_vector(f, [o] * n)
    return Algebra(f, tuple(f"e{k}" for k in range(n)), tuple(mults), unit, name=f"k^{n}")


def algebra_from_structure(f: ExactField, basis, products: dict, unit_combo: dict,
                           name: str = "A") -> Algebra:
    """Build an algebra from a product table.

    products maps (label_i, label_j) to {label: coeff} for e_i * e_j;
    missing pairs multiply to zero.
    """
    basis = tuple(basis)
    idx = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    z = f.zero
    mult = []
    for a in basis:
        cols = []
        for b in basis:
            col = [z] * n
            for label, c in products.get((a, b), {}).items():
                col[idx[label]] = f.add(col[idx[label]], c)
            cols.append(col)
        mult.append(Matrix.from_cols(f, n, cols))
    unit = [z] * n
    for label, c in unit_combo.items():
        unit[idx[label]] = c
    return Algebra(f, basis, tuple(mult), Matrix.col_vector(f, unit), name=name)


def opposite_algebra(alg: Algebra) -> Algebra:
    """Same space, reversed multiplication."""
    mult = tuple(alg.right_mult(k) for k in range(alg.dim))
    return Algebra(alg.field, alg.basis, mult, alg.unit, name=alg.name + "^op")


@dataclass(frozen=True)
class AlgebraMorphism:
    source: Algebra
    target: Algebra
    matrix: Matrix


def validate_algebra_morphism(mor: AlgebraMorphism) -> ValidationReport:
    rep = ValidationReport()
    a, b, m = mor.source, mor.target, mor.matrix
    if m.nrows != b.dim or m.ncols != a.dim:
        rep.fail("algmor.shape", ("matrix",), "wrong shape for an algebra map")
        return rep
    rep.bump()
    if m @ a.unit != b.unit:
        rep.fail("algmor.unit", ("unit",), "does not preserve the unit")
    for i in range(a.dim):
        fi = Matrix.col_vector(a.field, m.col(i))
        for j in range(a.dim):
            rep.bump()
            lhs = m @ Matrix.col_vector(a.field, a.left_mult[i].col(j))
            rhs = b.mul(fi, Matrix.col_vector(a.field, m.col(j)))
            if lhs != rhs:
                rep.fail("algmor.mult", (a.basis[i], a.basis[j]),
                         "does not preserve this product")
    return rep


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class Module:
    """A finite-dimensional left module: one action matrix per basis vector."""

    algebra: Algebra
    dim: int
    action: tuple
    name: str = dc_field(default="", compare=False)

    def act_of(self, v) -> Matrix:
        entries = _column_entries(v)
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for k, c in enumerate(entries):
            if c != f.zero:
                out = out + self.action[k].scale(c)
        return out

    @property
    def field(self):
        return self.algebra.field


def validate_module(m: Module) -> ValidationReport:
    rep = ValidationReport()
    alg = m.algebra
    if len(m.action) != alg.dim:
        rep.fail("mod.shape", (m.name,), "one action matrix per algebra basis vector required")
        return rep
    for k, a in enumerate(m.action):
        rep.bump()
        if a.nrows != m.dim or a.ncols != m.dim:
            rep.fail("mod.shape", (alg.basis[k],), "action matrix has wrong shape")
            return rep
    rep.bump()
    if m.act_of(alg.unit) != Matrix.identity(alg.field, m.dim):
        rep.fail("mod.unit", (m.name,), "unit does not act as identity")
    for i in range(alg.dim):
        for j in range(alg.dim):
            rep.bump()
            lhs = m.action[i] @ m.action[j]
            rhs = m.act_of(alg.left_mult[i].col(j))
            if lhs != rhs:
                rep.fail("mod.assoc", (alg.basis[i], alg.basis[j]),
                         "action does not respect this product")
    return rep


def zero_module(alg: Algebra) -> Module:
    z = Matrix.zeros(alg.field, 0, 0)
    return Module(alg, 0, tuple(z for _ in range(alg.dim)), name="0")


def free_module(alg: Algebra, n: int) -> Module:
    """A^n, copy index major: basis pair (copy l, algebra basis k) at l*dim(A)+k."""
    eye = Matrix.identity(alg.field, n)
    action = tuple(Matrix.kron(eye, lm) for lm in alg.left_mult)
    return Module(alg, n * alg.dim, action, name=f"{alg.name}^{n}")


def regular_module(alg: Algebra) -> Module:
    return Module(alg, alg.dim, alg.left_mult, name=alg.name)


@dataclass(frozen=True)
class DirectSum:
    module: Module
    injections: tuple
    projections: tuple


def direct_sum_modules(mods) -> DirectSum:
    mods = list(mods)
    if not mods:
        raise InvalidStructure("direct sum of an empty family needs an algebra")
    alg = mods[0].algebra
    for m in mods:
        if m.algebra != alg:
            raise AlgebraMismatch("direct summands live over different algebras")
    f = alg.field
    total = sum(m.dim for m in mods)
    action = tuple(
        Matrix.block_diag(f, [m.action[k] for m in mods]) for k in range(alg.dim)
    )
    module = Module(alg, total, action, name="(+)".join(m.name for m in mods))
    injections, projections = [], []
    offset = 0
    for m in mods:
        z_above = Matrix.zeros(f, offset, m.dim)
        z_below = Matrix.zeros(f, total - offset - m.dim, m.dim)
        inj = Matrix.vstack(f, [z_above, Matrix.identity(f, m.dim), z_below])
        injections.append(inj)
        projections.append(inj.transpose())
        offset += m.dim
    return DirectSum(module, tuple(injections), tuple(projections))


def dual_module(m: Module, op: Algebra | None = None) -> Module:
    """Linear dual, a left module over the opposite algebra."""
    op = op or opposite_algebra(m.algebra)
    action = tuple(a.transpose() for a in m.action)
    return Module(op, m.dim, action, name=m.name + "*")


def restrict_module(mor: AlgebraMorphism, m: Module) -> Module:
    """Pull a target-algebra module back along an algebra map."""
    if m.algebra != mor.target:
        raise AlgebraMismatch("module does not live over the morphism target")
    action = tuple(
        m.act_of(mor.matrix @ mor.source.basis_column(k)) for k in range(mor.source.dim)
    )
    return Module(mor.source, m.dim, action, name=m.name)


def is_module_map(f: Matrix, src: Module, tgt: Module) -> bool:
    if f.nrows != tgt.dim or f.ncols != src.dim:
        return False
    return all(tgt.action[k] @ f == f @ src.action[k] for k in range(src.algebra.dim))


# ---------------------------------------------------------------------------
# bimodules


@dataclass(frozen=True)
class Bimodule:
    """A (left_algebra, right_algebra)-bimodule with commuting actions.

    right_action[k] is the matrix of x |-> x * e_k; the family satisfies
    R(ab) = R(b) @ R(a) and commutes with every left action matrix.
    """

    left_algebra: Algebra
    right_algebra: Algebra
    dim: int
    left_action: tuple
    right_action: tuple
    name: str = dc_field(default="", compare=False)

    @property
    def field(self):
        return self.left_algebra.field

    def left_part(self) -> Module:
        return Module(self.left_algebra, self.dim, self.left_action, name=self.name)

    def right_part_over_op(self, op: Algebra | None = None) -> Module:
        op = op or opposite_algebra(self.right_algebra)
        return Module(op, self.dim, self.right_action, name=self.name)


def validate_bimodule(b: Bimodule) -> ValidationReport:
    rep = ValidationReport()
    rep.merge(validate_module(b.left_part()))
    rep.merge(validate_module(b.right_part_over_op()))
    for i in range(b.left_algebra.dim):
        for j in range(b.right_algebra.dim):
            rep.bump()
            if b.left_action[i] @ b.right_action[j] != b.right_action[j] @ b.left_action[i]:
                rep.fail("bimod.commute",
                         (b.left_algebra.basis[i], b.right_algebra.basis[j]),
                         "left and right actions do not commute")
    return rep


def regular_bimodule(alg: Algebra) -> Bimodule:
    right = tuple(alg.right_mult(k) for k in range(alg.dim))
    return Bimodule(alg, alg, alg.dim, alg.left_mult, right, name=alg.name)


def bimodule_from_morphism(mor: AlgebraMorphism) -> Bimodule:
    """The target algebra as a (target, source)-bimodule, right action via the map."""
    tgt = mor.target
    right = tuple(
        tgt.right_mult_of(mor.matrix @ mor.source.basis_column(k))
        for k in range(mor.source.dim)
    )
    return Bimodule(tgt, mor.source, tgt.dim, tgt.left_mult, right,
                    name=f"{tgt.name} via map")


def module_as_bimodule(m: Module, scalars: Algebra) -> Bimodule:
    """View a left module as a (A, k)-bimodule over the one-dimensional algebra."""
    if scalars.dim != 1:
        raise InvalidStructure("scalar algebra must be one-dimensional")
    eye = Matrix.identity(m.field, m.dim)
    return Bimodule(m.algebra, scalars, m.dim, m.action, (eye,), name=m.name)


def opposite_bimodule(b: Bimodule, left_op: Algebra | None = None,
                      right_op: Algebra | None = None) -> Bimodule:
    """Swap the two actions: a (B^op via right, A^op via left... ) view.

    The result is a (right^op, left^op)-bimodule on the same space, with
    the old right action acting on the left and vice versa.
    """
    lo = left_op or opposite_algebra(b.right_algebra)
    ro = right_op or opposite_algebra(b.left_algebra)
    return Bimodule(lo, ro, b.dim, b.right_action, b.left_action, name=b.name + "^op")


# ---------------------------------------------------------------------------
# tensor over an algebra


@dataclass(frozen=True)
class TensorResult:
    """B (x)_A M with the quotient data from the plain tensor space.

    pi maps the plain Kronecker space (dim B * dim M) onto the balanced
    tensor; sigma is a section with pi @ sigma = id.
    """

    module: Module
    pi: Matrix
    sigma: Matrix
    left_dim: int
    right_dim: int

    def pure(self, x: Matrix, m: Matrix) -> Matrix:
        """Class of the elementary tensor x (x) m."""
        return self.pi @ Matrix.kron(x, m)


def _balanced_quotient(f, pdim, qdim, mid_dim, right_family, left_family):
    eye_p = Matrix.identity(f, pdim)
    eye_q = Matrix.identity(f, qdim)
    blocks = [
        Matrix.kron(right_family[k], eye_q) - Matrix.kron(eye_p, left_family[k])
        for k in range(mid_dim)
    ]
    if blocks:
        rel = Matrix.hstack(f, blocks)
    else:
        rel = Matrix.zeros(f, pdim * qdim, 0)
    return quotient_by_columns(rel)


def tensor_over_algebra(b: Bimodule, m: Module) -> TensorResult:
    """B (x)_A M for a (C, A)-bimodule B and a left A-module M."""
    if b.right_algebra != m.algebra:
        raise AlgebraMismatch("tensor factors do not share the middle algebra")
    f = b.field
    proj, sect = _balanced_quotient(f, b.dim, m.dim, m.algebra.dim,
                                    b.right_action, m.action)
    eye_m = Matrix.identity(f, m.dim)
    action = tuple(
        proj @ Matrix.kron(b.left_action[k], eye_m) @ sect
        for k in range(b.left_algebra.dim)
    )
    module = Module(b.left_algebra, proj.nrows, action, name=f"{b.name}(x){m.name}")
    return TensorResult(module, proj, sect, b.dim, m.dim)


def tensor_map(tr_src: TensorResult, tr_tgt: TensorResult, f: Matrix) -> Matrix:
    """The induced map B (x) M -> B (x) N from a module map f: M -> N."""
    eye = Matrix.identity(tr_src.pi.field, tr_src.left_dim)
    return tr_tgt.pi @ Matrix.kron(eye, f) @ tr_src.sigma


def tensor_map_left(tr_src: TensorResult, tr_tgt: TensorResult, h: Matrix) -> Matrix:
    """The induced map B (x) M -> B' (x) M from a bimodule map h: B -> B'."""
    eye = Matrix.identity(tr_src.pi.field, tr_src.right_dim)
    return tr_tgt.pi @ Matrix.kron(h, eye) @ tr_src.sigma


@dataclass(frozen=True)
class BimoduleTensorResult:
    bimodule: Bimodule
    pi: Matrix
    sigma: Matrix
    left_dim: int
    right_dim: int


def tensor_bimodules(p: Bimodule, q: Bimodule) -> BimoduleTensorResult:
    """P (x)_B Q for P a (C, B)- and Q a (B, A)-bimodule."""
    if p.right_algebra != q.left_algebra:
        raise AlgebraMismatch("tensor factors do not share the middle algebra")
    f = p.field
    proj, sect = _balanced_quotient(f, p.dim, q.dim, q.left_algebra.dim,
                                    p.right_action, q.left_action)
    eye_p = Matrix.identity(f, p.dim)
    eye_q = Matrix.identity(f, q.dim)
    left = tuple(
        proj @ Matrix.kron(p.left_action[k], eye_q) @ sect
        for k in range(p.left_algebra.dim)
    )
    right = tuple(
        proj @ Matrix.kron(eye_p, q.right_action[k]) @ sect
        for k in range(q.right_algebra.dim)
    )
    bim = Bimodule(p.left_algebra, q.right_algebra, proj.nrows, left, right,
                   name=f"{p.name}(x){q.name}")
    return BimoduleTensorResult(bim, proj, sect, p.dim, q.dim)


# ---------------------------------------------------------------------------
# hom


def hom_space_basis(src: Module, tgt: Module) -> Matrix:
    """Basis of Hom_A(src, tgt) as vec'd columns of an (dim tgt * dim src) x h matrix."""
    if src.algebra != tgt.algebra:
        raise AlgebraMismatch("hom between modules over different algebras")
    f = src.field
    eye_s = Matrix.identity(f, src.dim)
    eye_t = Matrix.identity(f, tgt.dim)
    blocks = [
        Matrix.kron(src.action[k].transpose(), eye_t) - Matrix.kron(eye_s, tgt.action[k])
        for k in range(src.algebra.dim)
    ]
    if not blocks:
        raise InvalidStructure("algebra with empty basis")
    return Matrix.vstack(f, blocks).kernel()


def module_hom_basis(src: Module, tgt: Module):
    """The basis of Hom_A(src, tgt) as a list of matrices."""
    k = hom_space_basis(src, tgt)
    return [unvec(k.field, k.col(j), tgt.dim, src.dim) for j in range(k.ncols)]


@dataclass(frozen=True)
class HomResult:
    """Hom over the left algebra out of a bimodule, as a module over the right one.

    basis columns are vec'd matrices of shape (dim Y) x (dim B); the module
    coordinates are taken in that basis.
    """

    module: Module
    basis: Matrix
    y_dim: int
    b_dim: int

    def to_matrix(self, coords: Matrix) -> Matrix:
        v = self.basis @ coords
        return unvec(self.basis.field, v.col(0), self.y_dim, self.b_dim)

    def from_matrix(self, m: Matrix) -> Matrix:
        return self.basis.solve_exact(Matrix.col_vector(self.basis.field, vec(m)))

    def basis_matrix(self, k: int) -> Matrix:
        return unvec(self.basis.field, self.basis.col(k), self.y_dim, self.b_dim)


def hom_module(b: Bimodule, y: Module) -> HomResult:
    """Hom_C(B, Y) for a (C, A)-bimodule B, as a left A-module."""
    if b.left_algebra != y.algebra:
        raise AlgebraMismatch("hom target does not live over the bimodule's left algebra")
    f = b.field
    basis = hom_space_basis(b.left_part(), y)
    eye_y = Matrix.identity(f, y.dim)
    action = []
    for k in range(b.right_algebra.dim):
        # (a . f)(x) = f(x * a), i.e. f |-> f @ R_a
        op = Matrix.kron(b.right_action[k].transpose(), eye_y)
        action.append(basis.solve_exact(op @ basis))
    module = Module(b.right_algebra, basis.ncols, tuple(action),
                    name=f"Hom({b.name},{y.name})")
    return HomResult(module, basis, y.dim, b.dim)


def hom_push(hr_src: HomResult, hr_tgt: HomResult, g: Matrix) -> Matrix:
    """Induced map Hom(B, Y) -> Hom(B, Z) from a module map g: Y -> Z."""
    f = hr_src.basis.field
    op = Matrix.kron(Matrix.identity(f, hr_src.b_dim), g)
    return hr_tgt.basis.solve_exact(op @ hr_src.basis)


def hom_pull(hr_src: HomResult, hr_tgt: HomResult, h: Matrix) -> Matrix:
    """Induced map Hom(B, Y) -> Hom(B', Y) from a bimodule map h: B' -> B."""
    f = hr_src.basis.field
    op = Matrix.kron(h.transpose(), Matrix.identity(f, hr_src.y_dim))
    return hr_tgt.basis.solve_exact(op @ hr_src.basis)


def transpose_to_hom(tr: TensorResult, hr: HomResult, phi: Matrix) -> Matrix:
    """Adjoint transpose: a map B (x)_A M -> N becomes M -> Hom(B, N).

    phi is (dim N) x (tensor dim); the result is (hom dim) x (dim M) in the
    hom basis coordinates.
    """
    f = phi.field
    bdim, mdim = tr.left_dim, tr.right_dim
    plain = phi @ tr.pi
    cols = []
    for l in range(mdim):
        fl = plain.select_cols([k * mdim + l for k in range(bdim)])
        cols.append(hr.from_matrix(fl).col(0))
    return Matrix.from_cols(f, hr.basis.ncols, cols)


def transpose_from_hom(tr: TensorResult, hr: HomResult, psi: Matrix) -> Matrix:
    """Inverse adjoint transpose: a map M -> Hom(B, N) becomes B (x)_A M -> N."""
    f = psi.field
    bdim, mdim = tr.left_dim, tr.right_dim
    cols = [None] * (bdim * mdim)
    for l in range(mdim):
        fl = hr.to_matrix(psi.select_cols([l]))
        for k in range(bdim):
            cols[k * mdim + l] = fl.col(k)
    plain = Matrix.from_cols(f, hr.y_dim, cols)
    phi = plain @ tr.sigma
    if phi @ tr.pi != plain:
        raise Inconsistent("transpose does not descend to the balanced tensor")
    return phi


# ---------------------------------------------------------------------------
# finite limits and colimits of module diagrams


@dataclass(frozen=True)
class ColimitResult:
    module: Module
    legs: tuple
    proj: Matrix
    sect: Matrix
    injections: tuple

    def induced(self, cone) -> Matrix:
        """The unique map out of the colimit agreeing with the cocone maps."""
        cone = list(cone)
        f = self.proj.field
        u = Matrix.hstack(f, cone) @ self.sect
        for leg, c in zip(self.legs, cone):
            if u @ leg != c:
                raise Inconsistent("cocone maps are not compatible with the colimit")
        return u


@dataclass(frozen=True)
class LimitResult:
    module: Module
    legs: tuple
    inclusion: Matrix

    def induced(self, cone) -> Matrix:
        cone = list(cone)
        f = self.inclusion.field
        v = self.inclusion.solve_exact(Matrix.vstack(f, cone))
        for leg, c in zip(self.legs, cone):
            if leg @ v != c:
                raise Inconsistent("cone maps are not compatible with the limit")
        return v


def finite_colimit(objects, arrows) -> ColimitResult:
    """Colimit of a finite diagram of modules over one algebra.

    objects is a sequence of modules; arrows is a sequence of triples
    (src index, tgt index, matrix). The colimit is the cokernel of the
    usual difference map into the direct sum.
    """
    objects = list(objects)
    ds = direct_sum_modules(objects)
    f = ds.module.field
    cols = []
    for s, t, mat in arrows:
        cols.append(ds.injections[t] @ mat - ds.injections[s])
    if cols:
        rel = Matrix.hstack(f, cols)
    else:
        rel = Matrix.zeros(f, ds.module.dim, 0)
    proj, sect = quotient_by_columns(rel)
    alg = ds.module.algebra
    action = tuple(proj @ ds.module.action[k] @ sect for k in range(alg.dim))
    module = Module(alg, proj.nrows, action, name="colim")
    legs = tuple(proj @ inj for inj in ds.injections)
    return ColimitResult(module, legs, proj, sect, ds.injections)


def finite_limit(objects, arrows) -> LimitResult:
    """Limit of a finite diagram of modules over one algebra, as a kernel."""
    objects = list(objects)
    ds = direct_sum_modules(objects)
    f = ds.module.field
    rows = []
    for s, t, mat in arrows:
        rows.append(mat @ ds.projections[s] - ds.projections[t])
    if rows:
        sys = Matrix.vstack(f, rows)
    else:
        sys = Matrix.zeros(f, 0, ds.module.dim)
    incl = sys.kernel()
    alg = ds.module.algebra
    action = tuple(incl.solve_exact(ds.module.action[k] @ incl) for k in range(alg.dim))
    module = Module(alg, incl.ncols, action, name="lim")
    legs = tuple(p @ incl for p in ds.projections)
    return LimitResult(module, legs, incl)


# ---------------------------------------------------------------------------
# kernel, image, cokernel of one module map


@dataclass(frozen=True)
class Factorization:
    kernel: Module
    kernel_inclusion: Matrix
    image: Module
    image_inclusion: Matrix
    onto_image: Matrix
    cokernel: Module
    coker_projection: Matrix
    coker_section: Matrix


def morphism_factorization(f: Matrix, src: Module, tgt: Module) -> Factorization:
    if not is_module_map(f, src, tgt):
        raise InvalidStructure("not a module map")
    alg = src.algebra
    ker_incl = f.kernel()
    ker_action = tuple(
        ker_incl.solve_exact(src.action[k] @ ker_incl) for k in range(alg.dim)
    )
    kernel = Module(alg, ker_incl.ncols, ker_action, name=f"ker({src.name})")
    im_incl = f.image()
    im_action = tuple(
        im_incl.solve_exact(tgt.action[k] @ im_incl) for k in range(alg.dim)
    )
    image = Module(alg, im_incl.ncols, im_action, name="im")
    onto = im_incl.solve_exact(f)
    proj, sect = quotient_by_columns(f)
    cok_action = tuple(proj @ tgt.action[k] @ sect for k in range(alg.dim))
    cokernel = Module(alg, proj.nrows, cok_action, name=f"coker({tgt.name})")
    return Factorization(kernel, ker_incl, image, im_incl, onto,
                         cokernel, proj, sect)


# ---------------------------------------------------------------------------
# projectivity and injectivity of plain modules


def free_cover(m: Module):
    """The canonical surjection A^(dim M) -> M, (copy l, e_k) |-> e_k . m_l."""
    alg = m.algebra
    fm = free_module(alg, m.dim)
    cols = []
    for l in range(m.dim):
        for k in range(alg.dim):
            cols.append(m.action[k].col(l))
    g = Matrix.from_cols(alg.field, m.dim, cols)
    return fm, g


def split_epi_section(g: Matrix, src: Module, tgt: Module):
    """A module-map section s with g @ s = id on tgt, or None."""
    f = src.field
    n, m = src.dim, tgt.dim
    eye_m = Matrix.identity(f, m)
    lhs_blocks = [Matrix.kron(eye_m, g)]
    rhs_blocks = [Matrix.col_vector(f, vec(eye_m))]
    eye_n = Matrix.identity(f, n)
    for k in range(src.algebra.dim):
        lhs_blocks.append(
            Matrix.kron(eye_m, src.action[k]) - Matrix.kron(tgt.action[k].transpose(), eye_n)
        )
        rhs_blocks.append(Matrix.col_vector(f, [f.zero] * (n * m)))
    lhs = Matrix.vstack(f, lhs_blocks)
    rhs = Matrix.vstack(f, rhs_blocks)
    x = lhs.solve(rhs)
    return None if x is None else unvec(f, x.col(0), n, m)


def split_mono_retraction(i: Matrix, src: Module, tgt: Module):
    """A module-map retraction r with r @ i = id on src, or None."""
    f = src.field
    m, n = src.dim, tgt.dim
    eye_m = Matrix.identity(f, m)
    lhs_blocks = [Matrix.kron(i.transpose(), eye_m)]
    rhs_blocks = [Matrix.col_vector(f, vec(eye_m))]
    for k in range(src.algebra.dim):
        lhs_blocks.append(
            Matrix.kron(Matrix.identity(f, n), src.action[k])
            - Matrix.kron(tgt.action[k].transpose(), eye_m)
        )
        rhs_blocks.append(Matrix.col_vector(f, [f.zero] * (n * m)))
    lhs = Matrix.vstack(f, lhs_blocks)
    rhs = Matrix.vstack(f, rhs_blocks)
    x = lhs.solve(rhs)
    return None if x is None else unvec(f, x.col(0), m, n)


def is_projective_module(m: Module) -> bool:
    fm, g = free_cover(m)
    return split_epi_section(g, fm, m) is not None


def is_injective_module(m: Module) -> bool:
    return is_projective_module(dual_module(m))


def injective_embedding(m: Module):
    """A canonical embedding of m into an injective module.

    Dualize, take the free cover over the opposite algebra, dualize back.
    The double dual in coordinates is the module itself, so the transpose
    of the cover map embeds m directly.
    """
    md = dual_module(m)
    cover, g = free_cover(md)
    env = dual_module(cover, op=m.algebra)
    return env, g.transpose()
