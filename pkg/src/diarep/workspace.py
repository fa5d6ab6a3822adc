"""Reading and writing the sectioned workspace text format.

A workspace is one UTF-8 document made of sections:

    [field]               the scalar field for everything that follows
    [category NAME]       a finite index category
    [algebra NAME]        an algebra over the field
    [bimodule NAME]       a bimodule between two declared algebras
    [diagram NAME]        a diagram of module categories over a category
    [representation NAME] a representation of a declared diagram
    [morphism NAME]       a morphism between two declared representations
    [run]                 commands to execute, one per line

Sections other than [run] hold `key tokens = value` lines; [run] holds one
command per line. Matrices are bracketed rows of field elements, rationals
as `a/b` or plain integers, prime-field elements as decimal integers mod p.
Comments start with `#` and run to the end of the line. Declarations may
only refer to names that appear earlier in the document.

parse_workspace builds and validates every declared object, so a workspace
that loads is mathematically well formed. serialize_workspace renders a
canonical document; loading the result gives the same workspace back.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .diagram import (DiagramSpec, opposite_diagram, restrict_diagram, ring_diagram,
                      trivial_diagram, twist_diagram, validate_diagram)
from .errors import (ParseError, UnknownCommand, UnresolvedReference,
                     ValidationFailure)
from .field import ExactField, field_from_token
from .fincat import (FinCategory, build_category, endo_prime_ideal, full_subcategory,
                     inclusion_functor, quotient_subcategory, validate_category)
from .linalg import Matrix
from .modcat import (Algebra, AlgebraMorphism, Bimodule, Module, algebra_from_structure,
                     dual_numbers, field_algebra, free_module, monoid_algebra,
                     product_fields, validate_algebra, validate_bimodule, zero_module)
from .rep import (Representation, build_representation, validate_rep_morphism,
                  validate_representation)

RUN_VERBS = ("validate", "hom", "induce", "restrict", "lif", "cok", "ker",
             "stalk", "stratify", "adjoint-check", "classify", "decompose",
             "appendix-check", "generate")

SECTION_KINDS = ("field", "category", "algebra", "bimodule", "diagram",
                 "representation", "morphism", "run")


# ---------------------------------------------------------------------------
# workspace model


@dataclass
class CategoryEntry:
    name: str
    cat: FinCategory
    kind: str
    data: dict


@dataclass
class AlgebraEntry:
    name: str
    algebra: Algebra
    kind: str
    data: dict


@dataclass
class BimoduleEntry:
    name: str
    bimodule: Bimodule
    left: str
    right: str


@dataclass
class DiagramEntry:
    name: str
    dia: DiagramSpec
    kind: str
    params: dict


@dataclass
class RepEntry:
    name: str
    rep: Representation
    diagram: str


@dataclass
class MorphismEntry:
    name: str
    sigma: dict
    source: str
    target: str


@dataclass
class Command:
    verb: str
    args: list
    options: dict
    line: int = 0

    def tokens(self):
        return [self.verb] + list(self.args) + [f"{k}={v}" for k, v in self.options.items()]


@dataclass
class WorkspaceSpec:
    field: ExactField
    categories: dict = dc_field(default_factory=dict)
    algebras: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    diagrams: dict = dc_field(default_factory=dict)
    representations: dict = dc_field(default_factory=dict)
    morphisms: dict = dc_field(default_factory=dict)
    commands: list = dc_field(default_factory=list)
    order: list = dc_field(default_factory=list)

    def _get(self, table, name, what):
        try:
            return table[name]
        except KeyError:
            raise UnresolvedReference(f"no {what} named {name!r}") from None

    def category(self, name) -> FinCategory:
        return self._get(self.categories, name, "category").cat

    def algebra(self, name) -> Algebra:
        return self._get(self.algebras, name, "algebra").algebra

    def bimodule(self, name) -> Bimodule:
        return self._get(self.bimodules, name, "bimodule").bimodule

    def diagram_entry(self, name) -> DiagramEntry:
        return self._get(self.diagrams, name, "diagram")

    def diagram(self, name) -> DiagramSpec:
        return self.diagram_entry(name).dia

    def rep_entry(self, name) -> RepEntry:
        return self._get(self.representations, name, "representation")

    def representation(self, name) -> Representation:
        return self.rep_entry(name).rep

    def morphism(self, name) -> MorphismEntry:
        return self._get(self.morphisms, name, "morphism")


# ---------------------------------------------------------------------------
# low-level text helpers


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _bracket_tree(text: str, line_no: int):
    """Parse one bracketed literal into nested lists of token strings."""
    i = 0
    n = len(text)
    while i < n and text[i].isspace():
        i += 1
    if i >= n or text[i] != "[":
        raise ParseError("expected a '[' literal", line=line_no, col=i + 1)

    def parse_list(i):
        out = []
        i += 1
        while True:
            while i < n and text[i].isspace():
                i += 1
            if i >= n:
                raise ParseError("unterminated '['", line=line_no, col=i)
            if text[i] == "]":
                return out, i + 1
            if text[i] == ",":
                raise ParseError("empty entry before ','", line=line_no, col=i + 1)
            if text[i] == "[":
                sub, i = parse_list(i)
                out.append(sub)
            else:
                j = i
                while j < n and text[j] not in ",]":
                    j += 1
                out.append(text[i:j].strip())
                i = j
            while i < n and text[i].isspace():
                i += 1
            if i < n and text[i] == ",":
                i += 1

    tree, i = parse_list(i)
    if text[i:].strip():
        raise ParseError(f"trailing text after ']': {text[i:].strip()!r}",
                         line=line_no, col=i + 1)
    return tree


def _elem(f: ExactField, token: str, line_no: int):
    try:
        return f.parse(token)
    except ParseError as exc:
        raise ParseError(str(exc), line=line_no) from None


def _matrix_value(value: str, f: ExactField, line_no: int, nrows=None, ncols=None) -> Matrix:
    tree = _bracket_tree(value, line_no)
    rows = []
    for r in tree:
        if not isinstance(r, list):
            raise ParseError("matrix rows must be bracketed", line=line_no)
        if any(isinstance(x, list) for x in r):
            raise ParseError("matrix entries must be field elements", line=line_no)
        rows.append([_elem(f, x, line_no) for x in r])
    width = len(rows[0]) if rows else (ncols if ncols is not None else 0)
    if any(len(r) != width for r in rows):
        raise ParseError("ragged matrix rows", line=line_no)
    m = Matrix(f, rows, width)
    if nrows is not None and m.nrows != nrows:
        raise ParseError(f"expected {nrows} rows, found {m.nrows}", line=line_no)
    if ncols is not None and m.ncols != ncols:
        raise ParseError(f"expected {ncols} columns, found {m.ncols}", line=line_no)
    return m


def _row_value(value: str, f: ExactField, line_no: int, width=None):
    tree = _bracket_tree(value, line_no)
    if any(isinstance(x, list) for x in tree):
        raise ParseError("expected a flat '[a, b, ...]' row", line=line_no)
    out = [_elem(f, x, line_no) for x in tree]
    if width is not None and len(out) != width:
        raise ParseError(f"expected {width} entries, found {len(out)}", line=line_no)
    return out


def _fmt_matrix(m: Matrix) -> str:
    f = m.field
    if m.nrows == 0:
        return "[]"
    return "[" + ", ".join("[" + ", ".join(f.fmt(x) for x in row) + "]"
                           for row in m.rows) + "]"


def _fmt_row(f: ExactField, entries) -> str:
    return "[" + ", ".join(f.fmt(x) for x in entries) + "]"


def _arrow_token(name, s, t):
    return f"{name}:{s}>{t}"


def _parse_arrow_token(tok: str, line_no: int):
    if ":" not in tok or ">" not in tok:
        raise ParseError(f"expected 'name:src>tgt', found {tok!r}", line=line_no)
    name, ends = tok.split(":", 1)
    s, t = ends.split(">", 1)
    if not name or not s or not t:
        raise ParseError(f"expected 'name:src>tgt', found {tok!r}", line=line_no)
    return name, s, t


# ---------------------------------------------------------------------------
# parsing


@dataclass
class _RawSection:
    kind: str
    name: str
    line: int
    entries: list  # (key tuple, value str, line) for keyed sections
    commands: list  # raw command lines for [run]


def _split_sections(text: str):
    sections = []
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", line=line_no)
            head = stripped[1:-1].strip().split()
            if not head:
                raise ParseError("empty section header", line=line_no)
            kind = head[0]
            if kind not in SECTION_KINDS:
                raise ParseError(f"unknown section kind {kind!r}", line=line_no)
            if kind in ("field", "run"):
                if len(head) != 1:
                    raise ParseError(f"[{kind}] takes no name", line=line_no)
                name = ""
            else:
                if len(head) != 2:
                    raise ParseError(f"[{kind}] needs exactly one name", line=line_no)
                name = head[1]
            current = _RawSection(kind, name, line_no, [], [])
            sections.append(current)
            continue
        if current is None:
            raise ParseError("content before the first section header", line=line_no)
        if current.kind == "run":
            current.commands.append((stripped, line_no))
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=line_no)
        lhs, rhs = line.split("=", 1)
        key = tuple(lhs.split())
        if not key:
            raise ParseError("missing key before '='", line=line_no)
        current.entries.append((key, rhs.strip(), line_no))
    return sections


class _Keyed:
    """Entry lookup for one section, tracking which lines were consumed."""

    def __init__(self, section: _RawSection):
        self.section = section
        self.entries = list(section.entries)
        self.used = [False] * len(self.entries)

    def get(self, *key, required=False, default=None):
        hits = [(i, e) for i, e in enumerate(self.entries) if e[0] == key]
        if not hits:
            if required:
                raise ParseError(f"missing '{' '.join(key)} = ...' entry",
                                 line=self.section.line)
            return default, self.section.line
        if len(hits) > 1:
            raise ParseError(f"duplicate '{' '.join(key)}' entry",
                             line=hits[1][1][2])
        i, (_, value, line_no) = hits[0]
        self.used[i] = True
        return value, line_no

    def group(self, head, arity):
        """All entries with key (head, label...) of the given arity.

        Other keys sharing the head word (say a scalar 'left = A' next to
        'left 0 = ...') are left alone; anything never consumed is flagged
        by finish().
        """
        out = []
        for i, (key, value, line_no) in enumerate(self.entries):
            if key[0] == head and len(key) == arity + 1:
                self.used[i] = True
                out.append((key[1:], value, line_no))
        return out

    def finish(self):
        for used, (key, _, line_no) in zip(self.used, self.entries):
            if not used:
                raise ParseError(f"unrecognized entry {' '.join(key)!r}", line=line_no)


def _load_category(sec: _RawSection) -> CategoryEntry:
    kv = _Keyed(sec)
    kind, kline = kv.get("kind", required=True)
    if kind == "quiver":
        objects, oline = kv.get("objects", required=True)
        arrows_raw, aline = kv.get("arrows", default="")
        arrows = [_parse_arrow_token(t, aline) for t in (arrows_raw or "").split()]
        kv.finish()
        data = {"objects": objects.split(), "arrows": arrows, "name": sec.name}
        cat = build_category("quiver", data)
    elif kind == "poset":
        objects, _ = kv.get("objects", required=True)
        rel_raw, rline = kv.get("relations", default="")
        relations = []
        for tok in (rel_raw or "").split():
            if "<" not in tok:
                raise ParseError(f"expected 'a<b', found {tok!r}", line=rline)
            a, b = tok.split("<", 1)
            relations.append((a, b))
        kv.finish()
        data = {"objects": objects.split(), "relations": relations, "name": sec.name}
        cat = build_category("poset", data)
    elif kind == "monoid":
        elements, _ = kv.get("elements", required=True)
        unit, _ = kv.get("unit", required=True)
        obj, _ = kv.get("object", default="*")
        elements = elements.split()
        table = {}
        for (g, f_), value, _ in kv.group("mul", 2):
            table[(g, f_)] = value
        kv.finish()
        for x in elements:
            table.setdefault((unit, x), x)
            table.setdefault((x, unit), x)
        data = {"elements": elements, "unit": unit, "object": obj,
                "table": table, "name": sec.name}
        cat = build_category("monoid", data)
    elif kind == "table":
        objects, _ = kv.get("objects", required=True)
        mors_raw, mline = kv.get("morphisms", required=True)
        morphisms = [_parse_arrow_token(t, mline) for t in mors_raw.split()]
        identity = {o: v for (o,), v, _ in kv.group("identity", 1)}
        compose = {(g, f_): v for (g, f_), v, _ in kv.group("compose", 2)}
        kv.finish()
        idents = set(identity.values())
        heads = {name: (s, t) for name, s, t in morphisms}
        for g, (gs, gt) in heads.items():
            for f_, (fs, ft) in heads.items():
                if ft != gs:
                    continue
                if g in idents and (g, f_) not in compose:
                    compose[(g, f_)] = f_
                if f_ in idents and (g, f_) not in compose:
                    compose[(g, f_)] = g
        data = {"objects": objects.split(), "morphisms": morphisms,
                "identity": identity, "compose": compose, "name": sec.name}
        cat = build_category("table", data)
    else:
        raise ParseError(f"unknown category kind {kind!r}", line=kline)
    report = validate_category(cat)
    if not report.ok:
        raise ValidationFailure(f"category {sec.name!r} is not well formed", report)
    return CategoryEntry(sec.name, cat, kind, data)


def _load_algebra(sec: _RawSection, ws: WorkspaceSpec) -> AlgebraEntry:
    f = ws.field
    kv = _Keyed(sec)
    kind, kline = kv.get("kind", required=True)
    data = {}
    if kind == "field":
        alg = field_algebra(f, name=sec.name)
    elif kind == "dual":
        alg = dual_numbers(f)
    elif kind == "product":
        n_raw, nline = kv.get("n", required=True)
        if not n_raw.isdigit():
            raise ParseError(f"n must be a positive integer, found {n_raw!r}", line=nline)
        data["n"] = int(n_raw)
        alg = product_fields(f, data["n"])
    elif kind == "monoid":
        cname, _ = kv.get("category", required=True)
        data["category"] = cname
        alg = monoid_algebra(f, ws.category(cname), name=sec.name)
    elif kind == "table":
        basis_raw, _ = kv.get("basis", required=True)
        basis = basis_raw.split()
        unit_raw, uline = kv.get("unit", required=True)
        unit = _row_value(unit_raw, f, uline, width=len(basis))
        products = {}
        for (a, b), value, line_no in kv.group("mul", 2):
            row = _row_value(value, f, line_no, width=len(basis))
            products[(a, b)] = {basis[i]: c for i, c in enumerate(row) if c != f.zero}
        unit_combo = {basis[i]: c for i, c in enumerate(unit) if c != f.zero}
        alg = algebra_from_structure(f, basis, products, unit_combo, name=sec.name)
        data["basis"] = basis
    else:
        raise ParseError(f"unknown algebra kind {kind!r}", line=kline)
    kv.finish()
    report = validate_algebra(alg)
    if not report.ok:
        raise ValidationFailure(f"algebra {sec.name!r} is not associative unital", report)
    return AlgebraEntry(sec.name, alg, kind, data)


def _load_bimodule(sec: _RawSection, ws: WorkspaceSpec) -> BimoduleEntry:
    f = ws.field
    kv = _Keyed(sec)
    left_name, _ = kv.get("left", required=True)
    right_name, _ = kv.get("right", required=True)
    dim_raw, dline = kv.get("dim", required=True)
    if not dim_raw.isdigit():
        raise ParseError(f"dim must be a nonnegative integer, found {dim_raw!r}", line=dline)
    dim = int(dim_raw)
    left_alg = ws.algebra(left_name)
    right_alg = ws.algebra(right_name)
    lefts = {}
    for (k,), value, line_no in kv.group("left", 1):
        lefts[_index(k, left_alg.dim, line_no)] = _matrix_value(value, f, line_no, dim, dim)
    rights = {}
    for (k,), value, line_no in kv.group("right", 1):
        rights[_index(k, right_alg.dim, line_no)] = _matrix_value(value, f, line_no, dim, dim)
    kv.finish()
    for k in range(left_alg.dim):
        if k not in lefts:
            raise ParseError(f"missing 'left {k} = ...' action", line=sec.line)
    for k in range(right_alg.dim):
        if k not in rights:
            raise ParseError(f"missing 'right {k} = ...' action", line=sec.line)
    bim = Bimodule(left_alg, right_alg, dim,
                   tuple(lefts[k] for k in range(left_alg.dim)),
                   tuple(rights[k] for k in range(right_alg.dim)), name=sec.name)
    report = validate_bimodule(bim)
    if not report.ok:
        raise ValidationFailure(f"bimodule {sec.name!r} is not a bimodule", report)
    return BimoduleEntry(sec.name, bim, left_name, right_name)


def _index(token: str, bound: int, line_no: int) -> int:
    if not token.isdigit() or int(token) >= bound:
        raise ParseError(f"basis index must be 0..{bound - 1}, found {token!r}",
                         line=line_no)
    return int(token)


def _load_diagram(sec: _RawSection, ws: WorkspaceSpec) -> DiagramEntry:
    f = ws.field
    kv = _Keyed(sec)
    kind, kline = kv.get("kind", required=True)
    params = {}
    if kind == "trivial":
        cname, _ = kv.get("category", required=True)
        kv.finish()
        params["category"] = cname
        dia = trivial_diagram(ws.category(cname), f)
    elif kind == "ring":
        cname, _ = kv.get("category", required=True)
        params["category"] = cname
        cat = ws.category(cname)
        alg_names = {o: v for (o,), v, _ in kv.group("algebra", 1)}
        for o in cat.objects:
            if o not in alg_names:
                raise ParseError(f"missing 'algebra {o} = ...' entry", line=sec.line)
        algebras = {o: ws.algebra(alg_names[o]) for o in cat.objects}
        maps = {}
        mats = {}
        for (m,), value, line_no in kv.group("map", 1):
            if m not in cat.generators:
                raise ParseError(f"{m!r} is not a generator of {cname!r}", line=line_no)
            s, t = cat.src(m), cat.tgt(m)
            mat = _matrix_value(value, f, line_no, algebras[t].dim, algebras[s].dim)
            maps[m] = AlgebraMorphism(algebras[s], algebras[t], mat)
            mats[m] = mat
        kv.finish()
        for g in cat.generators:
            if g not in maps:
                raise ParseError(f"missing 'map {g} = ...' entry", line=sec.line)
        params["algebras"] = alg_names
        params["maps"] = mats
        dia = ring_diagram(cat, algebras, maps)
    elif kind == "twist":
        base, _ = kv.get("base", required=True)
        params["base"] = base
        base_dia = ws.diagram(base)
        units = {}
        for (m,), value, line_no in kv.group("unit", 1):
            if m not in base_dia.cat.mor_names:
                raise ParseError(f"{m!r} is not a morphism of the base", line=line_no)
            d = base_dia.bimodule(m).dim
            units[m] = _matrix_value(value, f, line_no, d, d)
        kv.finish()
        params["units"] = units
        dia = twist_diagram(base_dia, units)
    elif kind == "restrict":
        base, _ = kv.get("base", required=True)
        objs_raw, oline = kv.get("objects", required=True)
        kv.finish()
        params["base"] = base
        params["objects"] = objs_raw.split()
        base_dia = ws.diagram(base)
        for o in params["objects"]:
            if o not in base_dia.cat.objects:
                raise ParseError(f"{o!r} is not an object of the base", line=oline)
        sub = full_subcategory(base_dia.cat, params["objects"])
        dia = restrict_diagram(base_dia, inclusion_functor(sub, base_dia.cat))
    elif kind == "quotient":
        base, _ = kv.get("base", required=True)
        vertex, vline = kv.get("vertex", required=True)
        kv.finish()
        params["base"] = base
        params["vertex"] = vertex
        base_dia = ws.diagram(base)
        if vertex not in base_dia.cat.objects:
            raise ParseError(f"{vertex!r} is not an object of the base", line=vline)
        ideal = endo_prime_ideal(base_dia.cat, vertex)
        sub = quotient_subcategory(base_dia.cat, ideal)
        dia = restrict_diagram(base_dia, inclusion_functor(sub, base_dia.cat))
    elif kind == "opposite":
        base, _ = kv.get("base", required=True)
        kv.finish()
        params["base"] = base
        dia = opposite_diagram(ws.diagram(base))
    elif kind == "explicit":
        cname, _ = kv.get("category", required=True)
        params["category"] = cname
        cat = ws.category(cname)
        bim_names = {m: v for (m,), v, _ in kv.group("bimodule", 1)}
        for m in cat.mor_names:
            if m not in bim_names:
                raise ParseError(f"missing 'bimodule {m} = ...' entry", line=sec.line)
        bims = {m: ws.bimodule(bim_names[m]) for m in cat.mor_names}
        tau = {}
        for (g, h), value, line_no in kv.group("tau", 2):
            # shapes depend on the tensor quotient basis; the validator checks them
            tau[(g, h)] = _matrix_value(value, f, line_no)
        eta = {}
        for (o,), value, line_no in kv.group("eta", 1):
            eta[o] = _matrix_value(value, f, line_no)
        kv.finish()
        params["bimodules"] = bim_names
        dia = DiagramSpec(cat, {o: bims[cat.identity[o]].left_algebra
                                for o in cat.objects},
                          bims, tau, eta, name=sec.name)
    else:
        raise ParseError(f"unknown diagram kind {kind!r}", line=kline)
    dia.name = sec.name
    report = validate_diagram(dia, deep=True)
    if not report.ok:
        raise ValidationFailure(f"diagram {sec.name!r} fails coherence", report)
    return DiagramEntry(sec.name, dia, kind, params)


def _load_representation(sec: _RawSection, ws: WorkspaceSpec) -> RepEntry:
    f = ws.field
    kv = _Keyed(sec)
    dname, _ = kv.get("diagram", required=True)
    dia = ws.diagram(dname)
    cat = dia.cat
    decls = {}
    for (o,), value, line_no in kv.group("module", 1):
        if o not in cat.objects:
            raise ParseError(f"{o!r} is not an object of {dname!r}", line=line_no)
        decls[o] = (value.split(), line_no)
    actions = {}
    for (o, k), value, line_no in kv.group("action", 2):
        actions.setdefault(o, {})[k] = (value, line_no)
    modules = {}
    for o in cat.objects:
        alg = dia.algebra(o)
        words, line_no = decls.get(o, (["zero"], sec.line))
        head = words[0]
        if head == "zero" and len(words) == 1:
            modules[o] = zero_module(alg)
        elif head == "free" and len(words) == 2 and words[1].isdigit():
            modules[o] = free_module(alg, int(words[1]))
        elif head == "explicit" and len(words) == 2 and words[1].isdigit():
            dim = int(words[1])
            acts = []
            given = actions.pop(o, {})
            for k in range(alg.dim):
                if str(k) not in given:
                    raise ParseError(f"missing 'action {o} {k} = ...' entry",
                                     line=line_no)
                value, aline = given.pop(str(k))
                acts.append(_matrix_value(value, f, aline, dim, dim))
            if given:
                k, (_, aline) = next(iter(given.items()))
                raise ParseError(f"basis index must be 0..{alg.dim - 1}, found {k!r}",
                                 line=aline)
            modules[o] = Module(alg, dim, tuple(acts), name=f"{sec.name}@{o}")
        else:
            raise ParseError(f"module spec must be 'zero', 'free n' or 'explicit n', "
                             f"found {' '.join(words)!r}", line=line_no)
    if actions:
        o, rest = next(iter(actions.items()))
        _, aline = next(iter(rest.values()))
        raise ParseError(f"'action {o} ...' without 'module {o} = explicit n'", line=aline)
    gmaps = {}
    for (m,), value, line_no in kv.group("map", 1):
        if m not in cat.generators:
            raise ParseError(f"{m!r} is not a generator of {dname!r}", line=line_no)
        s, t = cat.src(m), cat.tgt(m)
        tr = dia.module_tensor(m, modules[s])
        gmaps[m] = _matrix_value(value, f, line_no, modules[t].dim, tr.module.dim)
    kv.finish()
    for m in cat.generators:
        if m not in gmaps:
            tr = dia.module_tensor(m, modules[cat.src(m)])
            gmaps[m] = Matrix.zeros(f, modules[cat.tgt(m)].dim, tr.module.dim)
    rep = build_representation(dia, modules, gmaps, name=sec.name)
    report = validate_representation(rep, deep=True)
    if not report.ok:
        raise ValidationFailure(f"representation {sec.name!r} breaks the pair laws",
                                report)
    return RepEntry(sec.name, rep, dname)


def _load_morphism(sec: _RawSection, ws: WorkspaceSpec) -> MorphismEntry:
    f = ws.field
    kv = _Keyed(sec)
    sname, _ = kv.get("source", required=True)
    tname, _ = kv.get("target", required=True)
    src = ws.representation(sname)
    tgt = ws.representation(tname)
    if src.dia is not tgt.dia and src.dia.cat.objects != tgt.dia.cat.objects:
        raise ParseError("source and target live over different diagrams", line=sec.line)
    sigma = {}
    for (o,), value, line_no in kv.group("at", 1):
        if o not in src.dia.cat.objects:
            raise ParseError(f"{o!r} is not an object of the index", line=line_no)
        sigma[o] = _matrix_value(value, f, line_no,
                                 tgt.modules[o].dim, src.modules[o].dim)
    kv.finish()
    for o in src.dia.cat.objects:
        if o not in sigma:
            sigma[o] = Matrix.zeros(f, tgt.modules[o].dim, src.modules[o].dim)
    report = validate_rep_morphism(src, tgt, sigma)
    if not report.ok:
        raise ValidationFailure(f"morphism {sec.name!r} is not natural", report)
    return MorphismEntry(sec.name, sigma, sname, tname)


def _parse_command(text: str, line_no: int) -> Command:
    tokens = text.split()
    verb = tokens[0]
    if verb not in RUN_VERBS:
        raise UnknownCommand(f"line {line_no}: unknown command {verb!r}")
    args = []
    options = {}
    for tok in tokens[1:]:
        if "=" in tok:
            key, value = tok.split("=", 1)
            if not key or not value:
                raise ParseError(f"bad option {tok!r}", line=line_no)
            options[key] = value
        else:
            args.append(tok)
    return Command(verb, args, options, line=line_no)


def parse_workspace(text: str) -> WorkspaceSpec:
    """Parse and load a workspace document, validating every object."""
    sections = _split_sections(text)
    field = None
    for sec in sections:
        if sec.kind == "field":
            if field is not None:
                raise ParseError("more than one [field] section", line=sec.line)
            kv = _Keyed(sec)
            token, line_no = kv.get("kind", required=True)
            kv.finish()
            try:
                field = field_from_token(token)
            except ParseError as exc:
                raise ParseError(str(exc), line=line_no) from None
    if field is None:
        raise ParseError("missing [field] section", line=1)
    ws = WorkspaceSpec(field=field)
    for sec in sections:
        if sec.kind == "field":
            continue
        if sec.kind != "run" and sec.name:
            for table in (ws.categories, ws.algebras, ws.bimodules, ws.diagrams,
                          ws.representations, ws.morphisms):
                if sec.name in table:
                    raise ParseError(f"duplicate name {sec.name!r}", line=sec.line)
        if sec.kind == "category":
            ws.categories[sec.name] = _load_category(sec)
        elif sec.kind == "algebra":
            ws.algebras[sec.name] = _load_algebra(sec, ws)
        elif sec.kind == "bimodule":
            ws.bimodules[sec.name] = _load_bimodule(sec, ws)
        elif sec.kind == "diagram":
            ws.diagrams[sec.name] = _load_diagram(sec, ws)
        elif sec.kind == "representation":
            ws.representations[sec.name] = _load_representation(sec, ws)
        elif sec.kind == "morphism":
            ws.morphisms[sec.name] = _load_morphism(sec, ws)
        else:
            for text_line, line_no in sec.commands:
                ws.commands.append(_parse_command(text_line, line_no))
        if sec.kind != "run":
            ws.order.append((sec.kind, sec.name))
    return ws


# ---------------------------------------------------------------------------
# serialization


def _ser_category(entry: CategoryEntry) -> list:
    cat = entry.cat
    lines = [f"kind = {entry.kind}"]
    if entry.kind == "quiver":
        lines.append("objects = " + " ".join(cat.objects))
        arrows = sorted((g, cat.src(g), cat.tgt(g)) for g in cat.generators)
        if arrows:
            lines.append("arrows = " + " ".join(_arrow_token(*a) for a in arrows))
    elif entry.kind == "poset":
        lines.append("objects = " + " ".join(cat.objects))
        pairs = sorted((a, b) for a in cat.objects for b in cat.objects
                       if a != b and cat.hom(a, b))
        if pairs:
            lines.append("relations = " + " ".join(f"{a}<{b}" for a, b in pairs))
    elif entry.kind == "monoid":
        unit = cat.identity[cat.objects[0]]
        lines.append("elements = " + " ".join(cat.mor_names))
        lines.append(f"unit = {unit}")
        lines.append(f"object = {cat.objects[0]}")
        for g in cat.mor_names:
            for h in cat.mor_names:
                if g != unit and h != unit:
                    lines.append(f"mul {g} {h} = {cat.compose(g, h)}")
    else:
        lines.append("objects = " + " ".join(cat.objects))
        mors = sorted((m, cat.src(m), cat.tgt(m)) for m in cat.mor_names)
        lines.append("morphisms = " + " ".join(_arrow_token(*m) for m in mors))
        for o in cat.objects:
            lines.append(f"identity {o} = {cat.identity[o]}")
        for g, f_ in sorted(cat.composable_pairs()):
            if not cat.is_identity(g) and not cat.is_identity(f_):
                lines.append(f"compose {g} {f_} = {cat.compose(g, f_)}")
    return lines


def _ser_algebra(entry: AlgebraEntry) -> list:
    lines = [f"kind = {entry.kind}"]
    alg = entry.algebra
    f = alg.field
    if entry.kind == "product":
        lines.append(f"n = {entry.data['n']}")
    elif entry.kind == "monoid":
        lines.append(f"category = {entry.data['category']}")
    elif entry.kind == "table":
        lines.append("basis = " + " ".join(str(b) for b in alg.basis))
        lines.append("unit = " + _fmt_row(f, [alg.unit.rows[i][0] for i in range(alg.dim)]))
        for i, a in enumerate(alg.basis):
            for j, b in enumerate(alg.basis):
                lines.append(f"mul {a} {b} = " + _fmt_row(f, alg.left_mult[i].col(j)))
    return lines


def _ser_bimodule(entry: BimoduleEntry) -> list:
    b = entry.bimodule
    lines = [f"left = {entry.left}", f"right = {entry.right}", f"dim = {b.dim}"]
    for k in range(b.left_algebra.dim):
        lines.append(f"left {k} = {_fmt_matrix(b.left_action[k])}")
    for k in range(b.right_algebra.dim):
        lines.append(f"right {k} = {_fmt_matrix(b.right_action[k])}")
    return lines


def _ser_diagram(entry: DiagramEntry) -> list:
    lines = [f"kind = {entry.kind}"]
    p = entry.params
    if entry.kind == "trivial":
        lines.append(f"category = {p['category']}")
    elif entry.kind == "ring":
        lines.append(f"category = {p['category']}")
        for o in sorted(p["algebras"]):
            lines.append(f"algebra {o} = {p['algebras'][o]}")
        for m in sorted(p["maps"]):
            lines.append(f"map {m} = {_fmt_matrix(p['maps'][m])}")
    elif entry.kind == "twist":
        lines.append(f"base = {p['base']}")
        for m in sorted(p["units"]):
            lines.append(f"unit {m} = {_fmt_matrix(p['units'][m])}")
    elif entry.kind == "restrict":
        lines.append(f"base = {p['base']}")
        lines.append("objects = " + " ".join(p["objects"]))
    elif entry.kind == "quotient":
        lines.append(f"base = {p['base']}")
        lines.append(f"vertex = {p['vertex']}")
    elif entry.kind == "opposite":
        lines.append(f"base = {p['base']}")
    else:
        lines.append(f"category = {p['category']}")
        dia = entry.dia
        for m in sorted(p["bimodules"]):
            lines.append(f"bimodule {m} = {p['bimodules'][m]}")
        for o in dia.cat.objects:
            lines.append(f"eta {o} = {_fmt_matrix(dia.eta_component(o))}")
        for g, h in sorted(dia.tau):
            lines.append(f"tau {g} {h} = {_fmt_matrix(dia.tau_component(g, h))}")
    return lines


def _module_decl(module: Module) -> str:
    alg = module.algebra
    if module.dim == 0:
        return "zero"
    if alg.dim > 0 and module.dim % alg.dim == 0:
        n = module.dim // alg.dim
        if module == free_module(alg, n):
            return f"free {n}"
    return f"explicit {module.dim}"


def _ser_representation(entry: RepEntry) -> list:
    rep = entry.rep
    cat = rep.dia.cat
    f = rep.field
    lines = [f"diagram = {entry.diagram}"]
    for o in cat.objects:
        decl = _module_decl(rep.modules[o])
        lines.append(f"module {o} = {decl}")
        if decl.startswith("explicit"):
            for k, act in enumerate(rep.modules[o].action):
                lines.append(f"action {o} {k} = {_fmt_matrix(act)}")
    for g in sorted(cat.generators):
        m = rep.maps[g]
        if not m.is_zero():
            lines.append(f"map {g} = {_fmt_matrix(m)}")
    return lines


def _ser_morphism(entry: MorphismEntry) -> list:
    lines = [f"source = {entry.source}", f"target = {entry.target}"]
    for o in sorted(entry.sigma):
        m = entry.sigma[o]
        if not m.is_zero():
            lines.append(f"at {o} = {_fmt_matrix(m)}")
    return lines


def field_token(f: ExactField) -> str:
    return "Q" if not f.finite else f"F{f.p}"


# ---------------------------------------------------------------------------
# assembling workspaces from freshly built objects


def algebra_entry_from(name: str, alg: Algebra, f: ExactField) -> AlgebraEntry:
    """Wrap an algebra for serialization, recognizing the stock shapes."""
    if alg == field_algebra(f):
        return AlgebraEntry(name, alg, "field", {})
    if alg == dual_numbers(f):
        return AlgebraEntry(name, alg, "dual", {})
    if alg.dim >= 1 and alg == product_fields(f, alg.dim):
        return AlgebraEntry(name, alg, "product", {"n": alg.dim})
    return AlgebraEntry(name, alg, "table", {"basis": list(alg.basis)})


def ring_maps_from_diagram(dia: DiagramSpec) -> dict:
    """Recover the generator algebra-morphism matrices of a ring diagram.

    The edge bimodule of a strict algebra-valued functor is the target
    algebra with the right action twisted through the map, so the image of
    a source basis vector is its right action applied to the unit.
    """
    out = {}
    for g in dia.cat.generators:
        b = dia.bimodule(g)
        tgt = b.left_algebra
        cols = [(b.right_action[k] @ tgt.unit).col(0)
                for k in range(b.right_algebra.dim)]
        out[g] = Matrix.from_cols(dia.field, tgt.dim, cols)
    return out


def _ring_entry(ws: WorkspaceSpec, dia: DiagramSpec, name: str, cname: str,
                prefix: str) -> DiagramEntry:
    alg_names = {}
    for o in dia.cat.objects:
        alg = dia.algebras[o]
        found = None
        for ename, entry in ws.algebras.items():
            if entry.algebra == alg:
                found = ename
                break
        if found is None:
            found = f"{prefix}A{len(ws.algebras)}"
            ws.algebras[found] = algebra_entry_from(found, alg, ws.field)
            ws.order.append(("algebra", found))
        alg_names[o] = found
    params = {"category": cname, "algebras": alg_names,
              "maps": ring_maps_from_diagram(dia)}
    return DiagramEntry(name, dia, "ring", params)


def workspace_from_instances(f: ExactField, instances, with_run=True) -> WorkspaceSpec:
    """Bundle generated instances into a runnable workspace.

    Each instance contributes its category, any algebras its diagram
    touches, the diagram (a twist keeps its strict base alongside), and
    its representation. With with_run, a [run] block validates everything.
    """
    ws = WorkspaceSpec(field=f)
    run = []
    for inst in instances:
        cname = inst.category.name
        ws.categories[cname] = CategoryEntry(cname, inst.category,
                                             inst.category_kind, {})
        ws.order.append(("category", cname))
        if inst.diagram is None:
            continue
        dname = inst.diagram.name
        prefix = f"I{inst.index}"
        if inst.units:
            bname = inst.base.name
            ws.diagrams[bname] = _ring_entry(ws, inst.base, bname, cname, prefix)
            ws.order.append(("diagram", bname))
            ws.diagrams[dname] = DiagramEntry(dname, inst.diagram, "twist",
                                              {"base": bname, "units": dict(inst.units)})
        elif inst.kind == "trivial":
            ws.diagrams[dname] = DiagramEntry(dname, inst.diagram, "trivial",
                                              {"category": cname})
        else:
            ws.diagrams[dname] = _ring_entry(ws, inst.diagram, dname, cname, prefix)
        ws.order.append(("diagram", dname))
        run.append(Command("validate", [dname], {}))
        if inst.representation is not None:
            rname = inst.representation.name
            ws.representations[rname] = RepEntry(rname, inst.representation, dname)
            ws.order.append(("representation", rname))
            run.append(Command("validate", [rname], {}))
    if with_run:
        ws.commands = run
    return ws


def serialize_workspace(ws: WorkspaceSpec) -> str:
    """Render a workspace as canonical text; parsing it back is the identity."""
    blocks = [f"[field]\nkind = {field_token(ws.field)}"]
    for kind, name in ws.order:
        if kind == "category":
            lines = _ser_category(ws.categories[name])
        elif kind == "algebra":
            lines = _ser_algebra(ws.algebras[name])
        elif kind == "bimodule":
            lines = _ser_bimodule(ws.bimodules[name])
        elif kind == "diagram":
            lines = _ser_diagram(ws.diagrams[name])
        elif kind == "representation":
            lines = _ser_representation(ws.representations[name])
        else:
            lines = _ser_morphism(ws.morphisms[name])
        blocks.append(f"[{kind} {name}]\n" + "\n".join(lines))
    if ws.commands:
        blocks.append("[run]\n" + "\n".join(" ".join(c.tokens()) for c in ws.commands))
    return "\n\n".join(blocks) + "\n"
