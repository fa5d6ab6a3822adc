"""Command line front end: load a workspace, run its commands, emit JSON.

The report goes to stdout as a single JSON document; a one-line-per-command
summary goes to stderr. Exit codes: 0 when every command's checks pass, 1
when some mathematical check fails (the report carries witnesses), 2 when
the input itself is broken (unparsable file, dangling name, malformed
command). Everything mathematical in the report is a pure function of the
workspace text, the seed, and the convention flag; only the timing fields
vary between runs.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from pathlib import Path

from .classify import (classify_representation, decomposition_check,
                       injective_decomposition_check)
from .diagram import restrict_diagram, validate_diagram
from .errors import (DiarepError, InvalidStructure, ParseError,
                     SizeBoundExceeded, TooLarge, UnknownCommand,
                     UnknownObject, UnresolvedReference, ValidationFailure)
from .field import field_from_token
from .fincat import (endo_prime_ideal, full_subcategory, inclusion_functor,
                     quotient_subcategory, rootedness_report, validate_category)
from .functors import (extend_by_zero, induce_rep, restrict_rep,
                       stalk_coinduced, stalk_induced, verify_adjunction,
                       vertex_cokernel, vertex_kernel)
from .generate import (GENERATE_KINDS, generate_instance, random_module,
                       random_representation, seeded_rng)
from .modcat import free_module, validate_algebra, validate_bimodule
from .rep import (hom_form_to_rep, rep_hom_basis, rep_to_hom_form,
                  validate_hom_form, validate_rep_morphism,
                  validate_representation)
from .workspace import (RUN_VERBS, Command, field_token, parse_workspace,
                        serialize_workspace, workspace_from_instances)

# Errors that mean the input is broken rather than the mathematics: these
# abort the run with exit code 2. Everything else derived from DiarepError
# is recorded as a failed command and the run continues.
INPUT_ERRORS = (ParseError, UnresolvedReference, ValidationFailure,
                UnknownCommand, UnknownObject, SizeBoundExceeded, TooLarge)

DEFAULT_SAMPLE_PAIRS = 3


def _package_version() -> str:
    try:
        from importlib import metadata
        return metadata.version("diarep")
    except Exception:
        return "unknown"


def _matrix_json(m):
    f = m.field
    return [[f.fmt(x) for x in row] for row in m.rows]


def _morphism_json(sigma: dict):
    return {str(i): _matrix_json(m) for i, m in sigma.items()}


def _dims_json(rep):
    return {str(i): rep.modules[i].dim for i in rep.dia.cat.objects}


def _opt(cmd: Command, key: str, default=None, required=False):
    if key in cmd.options:
        return cmd.options[key]
    if required:
        raise UnknownCommand(f"'{cmd.verb}' needs {key}=...")
    return default


def _int_opt(cmd: Command, key: str, default):
    raw = _opt(cmd, key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UnknownCommand(f"{key}= must be an integer, got {raw!r}") from None


def _inclusion_context(ws, entry):
    """Rebuild the inclusion functor a restrict or quotient diagram entry
    was loaded through; returns (base diagram, functor, ideal or None)."""
    if entry.kind == "restrict":
        base = ws.diagram(entry.params["base"])
        sub = full_subcategory(base.cat, entry.params["objects"])
        return base, inclusion_functor(sub, base.cat), None
    if entry.kind == "quotient":
        base = ws.diagram(entry.params["base"])
        ideal = endo_prime_ideal(base.cat, entry.params["vertex"])
        sub = quotient_subcategory(base.cat, ideal)
        return base, inclusion_functor(sub, base.cat), ideal
    raise UnresolvedReference(
        f"diagram {entry.name!r} has kind {entry.kind!r}; this command needs "
        "one declared with kind = restrict or kind = quotient")


def _ideal_and_sub(dia, vertex):
    ideal = endo_prime_ideal(dia.cat, vertex)
    sub_cat = quotient_subcategory(dia.cat, ideal)
    sub_dia = restrict_diagram(dia, inclusion_functor(sub_cat, dia.cat))
    return ideal, sub_dia


# ---------------------------------------------------------------------------
# command handlers; each returns (outcome json, ok flag)


def _cmd_validate(ws, cmd, ctx):
    names = list(cmd.args) or [name for _, name in ws.order]
    targets = {}
    ok = True
    for name in names:
        if name in ws.categories:
            report = validate_category(ws.category(name))
        elif name in ws.algebras:
            report = validate_algebra(ws.algebra(name))
        elif name in ws.bimodules:
            report = validate_bimodule(ws.bimodule(name))
        elif name in ws.diagrams:
            report = validate_diagram(ws.diagram(name), deep=True)
        elif name in ws.representations:
            report = validate_representation(ws.representation(name), deep=True)
        elif name in ws.morphisms:
            ent = ws.morphism(name)
            report = validate_rep_morphism(ws.representation(ent.source),
                                           ws.representation(ent.target),
                                           ent.sigma)
        else:
            raise UnresolvedReference(f"nothing named {name!r} to validate")
        targets[name] = report.to_json()
        ok = ok and report.ok
    return {"targets": targets}, ok


def _cmd_hom(ws, cmd, ctx):
    if len(cmd.args) != 2:
        raise UnknownCommand("'hom' needs two representation names")
    src_e, tgt_e = ws.rep_entry(cmd.args[0]), ws.rep_entry(cmd.args[1])
    if src_e.diagram != tgt_e.diagram:
        raise UnresolvedReference(
            f"{src_e.name!r} and {tgt_e.name!r} live over different diagrams")
    basis = rep_hom_basis(src_e.rep, tgt_e.rep)
    return {"source": src_e.name, "target": tgt_e.name, "dim": len(basis),
            "basis": [_morphism_json(s) for s in basis]}, True


def _cmd_restrict(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'restrict' needs one representation name")
    entry = ws.rep_entry(cmd.args[0])
    target = _opt(cmd, "target")
    if target is not None:
        sub_entry = ws.diagram_entry(target)
        base, fun, _ = _inclusion_context(ws, sub_entry)
        if sub_entry.params["base"] != entry.diagram:
            raise UnresolvedReference(
                f"{target!r} restricts {sub_entry.params['base']!r}, "
                f"but {entry.name!r} lives over {entry.diagram!r}")
        out = restrict_rep(fun, entry.rep, sub_dia=sub_entry.dia)
    else:
        objs = _opt(cmd, "objects", required=True).split(",")
        dia = entry.rep.dia
        sub = full_subcategory(dia.cat, objs)
        fun = inclusion_functor(sub, dia.cat)
        out = restrict_rep(fun, entry.rep)
    report = validate_representation(out, deep=True)
    return {"representation": entry.name, "dims": _dims_json(out),
            "validation": report.to_json()}, report.ok


def _cmd_induce(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'induce' needs one representation name")
    entry = ws.rep_entry(cmd.args[0])
    dia_entry = ws.diagram_entry(entry.diagram)
    base, fun, _ = _inclusion_context(ws, dia_entry)
    out = induce_rep(fun, entry.rep, base, check=True)
    return {"representation": entry.name, "base": dia_entry.params["base"],
            "dims": _dims_json(out)}, True


def _cmd_lif(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'lif' needs one representation name")
    entry = ws.rep_entry(cmd.args[0])
    dia_entry = ws.diagram_entry(entry.diagram)
    if dia_entry.kind != "quotient":
        raise UnresolvedReference(
            f"'lif' needs a representation over a quotient diagram; "
            f"{entry.diagram!r} has kind {dia_entry.kind!r}")
    base, _, ideal = _inclusion_context(ws, dia_entry)
    out = extend_by_zero(base, ideal, entry.rep, check=True)
    return {"representation": entry.name, "dims": _dims_json(out),
            "zero_morphisms": sorted(ideal.carrier)}, True


def _cmd_cok(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'cok' needs one representation name")
    rep = ws.representation(cmd.args[0])
    vertex = _opt(cmd, "vertex", required=True)
    module, onto = vertex_cokernel(rep.dia, rep, vertex, convention=ctx["convention"])
    return {"representation": cmd.args[0], "vertex": vertex,
            "dim": module.dim, "projection": _matrix_json(onto)}, True


def _cmd_ker(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'ker' needs one representation name")
    rep = ws.representation(cmd.args[0])
    vertex = _opt(cmd, "vertex", required=True)
    module, into = vertex_kernel(rep.dia, rep, vertex, convention=ctx["convention"])
    return {"representation": cmd.args[0], "vertex": vertex,
            "dim": module.dim, "inclusion": _matrix_json(into)}, True


def _cmd_stalk(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'stalk' needs one diagram name")
    dia = ws.diagram(cmd.args[0])
    vertex = _opt(cmd, "vertex", required=True)
    if vertex not in dia.cat.objects:
        raise UnknownObject(f"no object {vertex!r} in the index category")
    rank = _int_opt(cmd, "rank", 1)
    form = _opt(cmd, "form", "induced")
    seed = free_module(dia.algebra(vertex), rank)
    if form == "induced":
        out = stalk_induced(dia, vertex, seed, check=True)
    elif form == "coinduced":
        out = stalk_coinduced(dia, vertex, seed, check=True)
    else:
        raise UnknownCommand("form= must be 'induced' or 'coinduced'")
    return {"diagram": cmd.args[0], "vertex": vertex, "rank": rank,
            "form": form, "dims": _dims_json(out)}, True


def _cmd_stratify(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'stratify' needs a category or diagram name")
    name = cmd.args[0]
    if name in ws.categories:
        cat = ws.category(name)
    elif name in ws.diagrams:
        cat = ws.diagram(name).cat
    else:
        raise UnresolvedReference(f"nothing named {name!r} to stratify")
    return {"target": name, "report": rootedness_report(cat).to_json()}, True


def _cmd_adjoint_check(ws, cmd, ctx):
    kind = _opt(cmd, "kind", required=True)
    dname = _opt(cmd, "diagram", required=True)
    pairs = _int_opt(cmd, "pairs", DEFAULT_SAMPLE_PAIRS)
    entry = ws.diagram_entry(dname)
    rng = seeded_rng(ctx["seed"] * 1000003 + ctx["position"])
    max_dim = ctx["max_dim"]
    fun = None
    ideal = None
    vertex = None
    if kind in ("induce-restrict", "restrict-coinduce"):
        dia, fun, _ = _inclusion_context(ws, entry)
        sub_dia = entry.dia
        samples = []
        for _ in range(pairs):
            nrep = random_representation(rng, sub_dia, max_dim)
            mrep = random_representation(rng, dia, max_dim)
            samples.append((nrep, mrep) if kind == "induce-restrict"
                           else (mrep, nrep))
    elif kind == "free-vertex":
        dia = entry.dia
        vertex = _opt(cmd, "vertex", required=True)
        if vertex not in dia.cat.objects:
            raise UnknownObject(f"no object {vertex!r} in the index category")
        samples = [(random_module(rng, dia.algebra(vertex), max_dim),
                    random_representation(rng, dia, max_dim))
                   for _ in range(pairs)]
    elif kind in ("coker-extend", "extend-kernel"):
        dia = entry.dia
        vertex = _opt(cmd, "vertex", required=True)
        ideal, sub_dia = _ideal_and_sub(dia, vertex)
        samples = []
        for _ in range(pairs):
            mrep = random_representation(rng, dia, max_dim)
            nrep = random_representation(rng, sub_dia, max_dim)
            samples.append((mrep, nrep) if kind == "coker-extend"
                           else (nrep, mrep))
    elif kind in ("coker-stalk", "stalk-kernel"):
        dia = entry.dia
        vertex = _opt(cmd, "vertex", required=True)
        if vertex not in dia.cat.objects:
            raise UnknownObject(f"no object {vertex!r} in the index category")
        samples = []
        for _ in range(pairs):
            mrep = random_representation(rng, dia, max_dim)
            seed = random_module(rng, dia.algebra(vertex), max_dim)
            samples.append((mrep, seed) if kind == "coker-stalk"
                           else (seed, mrep))
    else:
        raise UnknownCommand(f"unknown adjunction kind {kind!r}")
    witness = verify_adjunction(kind, dia, samples, fun=fun, ideal=ideal,
                                vertex=vertex, convention=ctx["convention"])
    return {"diagram": dname, "pairs": pairs,
            "witness": witness.to_json()}, witness.ok


def _cmd_classify(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'classify' needs one representation name")
    rep = ws.representation(cmd.args[0])
    side = _opt(cmd, "side", "projective")
    verdict = classify_representation(rep, side, convention=ctx["convention"])
    hyp = verdict.hypotheses
    rooted = hyp.get("direct") if side == "projective" else hyp.get("inverse")
    binding = bool(rooted) and bool(hyp.get("locally_exact"))
    # criterion vs oracle disagreement only counts against us when the
    # hypotheses that make the criterion a characterization actually hold
    ok = verdict.agreement if binding else True
    out = verdict.to_json()
    out["hypotheses_bind"] = binding
    return out, ok


def _cmd_decompose(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'decompose' needs one representation name")
    rep = ws.representation(cmd.args[0])
    side = _opt(cmd, "side", "projective")
    if side == "projective":
        witness = decomposition_check(rep, convention=ctx["convention"])
    elif side == "injective":
        witness = injective_decomposition_check(rep, convention=ctx["convention"])
    else:
        raise UnknownCommand("side= must be 'projective' or 'injective'")
    return {"representation": cmd.args[0],
            "witness": witness.to_json()}, witness.matched


def _cmd_appendix_check(ws, cmd, ctx):
    if len(cmd.args) != 1:
        raise UnknownCommand("'appendix-check' needs one representation name")
    rep = ws.representation(cmd.args[0])
    tensor_side = validate_representation(rep, deep=True)
    tmaps = rep_to_hom_form(rep)
    hom_side = validate_hom_form(rep.dia, rep.modules, tmaps)
    back = hom_form_to_rep(rep.dia, rep.modules, tmaps, name=rep.name)
    round_trip = back.maps == rep.maps
    agree = tensor_side.ok == hom_side.ok
    ok = tensor_side.ok and hom_side.ok and agree and round_trip
    return {"representation": cmd.args[0],
            "tensor_side": tensor_side.to_json(),
            "hom_side": hom_side.to_json(),
            "verdicts_agree": agree,
            "round_trip": round_trip}, ok


def _cmd_generate(ws, cmd, ctx):
    kind = _opt(cmd, "kind", required=True)
    if kind not in GENERATE_KINDS:
        raise UnknownCommand(
            f"kind= must be one of {', '.join(GENERATE_KINDS)}")
    count = _int_opt(cmd, "count", 1)
    max_objects = _int_opt(cmd, "objects", 3)
    max_arrows = _int_opt(cmd, "arrows", 4)
    out_path = _opt(cmd, "out")
    fld = ctx["field"]
    instances = [generate_instance(kind, ctx["seed"], fld,
                                   max_objects=max_objects,
                                   max_arrows=max_arrows,
                                   max_dim=ctx["max_dim"], index=i)
                 for i in range(count)]
    text = serialize_workspace(workspace_from_instances(fld, instances))
    if out_path is not None:
        Path(out_path).write_text(text, encoding="utf-8")
    return {"kind": kind, "count": count, "path": out_path,
            "workspace": text}, True


HANDLERS = {
    "validate": _cmd_validate,
    "hom": _cmd_hom,
    "induce": _cmd_induce,
    "restrict": _cmd_restrict,
    "lif": _cmd_lif,
    "cok": _cmd_cok,
    "ker": _cmd_ker,
    "stalk": _cmd_stalk,
    "stratify": _cmd_stratify,
    "adjoint-check": _cmd_adjoint_check,
    "classify": _cmd_classify,
    "decompose": _cmd_decompose,
    "appendix-check": _cmd_appendix_check,
    "generate": _cmd_generate,
}


# ---------------------------------------------------------------------------
# driver


def _command_from_tokens(tokens: list) -> Command:
    verb = tokens[0]
    if verb not in RUN_VERBS:
        raise UnknownCommand(f"unknown command {verb!r}")
    args = []
    options = {}
    for tok in tokens[1:]:
        if "=" in tok:
            key, value = tok.split("=", 1)
            options[key] = value
        else:
            args.append(tok)
    return Command(verb, args, options)


def _emit(report: dict, json_out):
    text = json.dumps(report, indent=2)
    print(text)
    if json_out:
        Path(json_out).write_text(text + "\n", encoding="utf-8")


def _error_report(base: dict, ex: Exception) -> dict:
    out = dict(base)
    out["error"] = {"type": type(ex).__name__, "message": str(ex)}
    out["ok"] = False
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="diarep",
        description="Exact computations with representations over diagrams "
                    "of module categories.")
    ap.add_argument("--workspace", metavar="FILE",
                    help="workspace file to load and run")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for every randomized command (default 0)")
    ap.add_argument("--field", metavar="TOKEN",
                    help="field for generation without a workspace: Q or "
                         "Fp:N (default Q); ignored when --workspace is given")
    ap.add_argument("--max-dim", type=int, default=2, dest="max_dim",
                    help="dimension cap for generated modules (default 2)")
    ap.add_argument("--json-out", metavar="FILE", dest="json_out",
                    help="also write the JSON report to this file")
    ap.add_argument("--convention", choices=("comma", "discrete"),
                    default="comma",
                    help="indexing convention for the canonical flow maps")
    ap.add_argument("command", nargs="*",
                    help="one command to run instead of the [run] block: "
                         "VERB NAME... KEY=VALUE...")
    return ap


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)

    base = {"seed": ns.seed, "convention": ns.convention,
            "workspace": ns.workspace,
            "versions": {"python": platform.python_version(),
                         "diarep": _package_version()}}
    try:
        ws = None
        if ns.workspace is not None:
            ws = parse_workspace(Path(ns.workspace).read_text(encoding="utf-8"))
            fld = ws.field
        else:
            fld = field_from_token(ns.field or "Q")
        base["field"] = field_token(fld)
        if ns.command:
            commands = [_command_from_tokens(ns.command)]
        elif ws is not None and ws.commands:
            commands = list(ws.commands)
        elif ws is not None:
            commands = [Command("validate", [], {})]
        else:
            raise UnknownCommand("nothing to do: pass --workspace or a command")
        for cmd in commands:
            if cmd.verb != "generate" and ws is None:
                raise UnknownCommand(f"'{cmd.verb}' needs --workspace")
    except (*INPUT_ERRORS, InvalidStructure, OSError) as ex:
        report = _error_report(base, ex)
        _emit(report, ns.json_out)
        print(f"diarep: error: {ex}", file=sys.stderr)
        return 2

    ctx = {"field": fld, "seed": ns.seed, "convention": ns.convention,
           "max_dim": ns.max_dim, "position": 0}
    fragments = []
    overall_ok = True
    for position, cmd in enumerate(commands):
        ctx["position"] = position
        started = time.perf_counter()
        try:
            outcome, ok = HANDLERS[cmd.verb](ws, cmd, ctx)
        except INPUT_ERRORS as ex:
            report = _error_report({**base, "commands": fragments}, ex)
            report["error"]["command"] = " ".join(cmd.tokens())
            _emit(report, ns.json_out)
            print(f"diarep: error in '{' '.join(cmd.tokens())}': {ex}",
                  file=sys.stderr)
            return 2
        except DiarepError as ex:
            outcome = {"error": {"type": type(ex).__name__, "message": str(ex)}}
            ok = False
        seconds = time.perf_counter() - started
        fragments.append({"command": cmd.verb, "args": list(cmd.args),
                          "options": dict(cmd.options), "ok": ok,
                          "outcome": outcome, "seconds": round(seconds, 6)})
        overall_ok = overall_ok and ok
        mark = "ok  " if ok else "FAIL"
        print(f"  {mark}  {' '.join(cmd.tokens())}  ({seconds:.3f}s)",
              file=sys.stderr)

    report = dict(base)
    report["commands"] = fragments
    report["ok"] = overall_ok
    _emit(report, ns.json_out)
    failed = sum(1 for fr in fragments if not fr["ok"])
    if failed:
        print(f"diarep: {failed} of {len(fragments)} command(s) failed",
              file=sys.stderr)
    else:
        print(f"diarep: all {len(fragments)} command(s) passed",
              file=sys.stderr)
    return 0 if overall_ok else 1


if __name__ == "__main__":
    sys.exit(main())
