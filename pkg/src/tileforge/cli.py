"""Command-line interface: generate, compile, simulate, analyze, translate
and render.  Every artifact is JSON or plain text on files or stdio, so
pipelines like ``tileforge gen eff --n 17 | tileforge compile | tileforge
simulate`` reproduce the reference numbers in one line.

Exit codes: 0 success, 1 domain error (conflict, unbound identifier,
unreachable tiles), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, automata, constructions, render
from .compiler import CompileError, DecompileError, compile_program, decompile, export_core
from .core import (
    assembly_from_json,
    assembly_to_json,
    tileset_from_json,
    tileset_to_json,
)
from .dsl import ParseError, parse, unparse
from .simulator import ConflictError, SimLimits, run_deterministic, run_exhaustive


class DomainError(RuntimeError):
    pass


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_gen(args) -> None:
    if args.kind == "eff":
        prog = constructions.gen_eff(args.n if args.n is not None else 0)
    elif args.kind == "general":
        if args.n is None or args.h is None:
            raise DomainError("gen general needs --n and --h")
        prog = constructions.gen_general(args.n, args.h)
    else:
        prog = constructions.gen_partially()
    _write(args.output, unparse(prog))


def _cmd_compile(args) -> None:
    prog = parse(_read(args.program))
    out = compile_program(prog)
    _write(args.output, tileset_to_json(out.tileset, out.seed))
    if args.core_out:
        _write(args.core_out, unparse(export_core(prog)))


def _cmd_simulate(args) -> None:
    ts, seed = tileset_from_json(_read(args.tileset))
    if seed is None:
        raise DomainError("tileset carries no seed")
    limits = SimLimits(max_tiles=args.max_tiles)
    if args.mode == "exhaustive":
        terminals, complete = run_exhaustive(ts, seed, limits)
        docs = [
            json.loads(assembly_to_json(a, ts, "terminal"))
            for a in sorted(terminals, key=lambda a: sorted(a.placements.items()))
        ]
        payload = {"assemblies": docs, "complete": complete}
        _write(args.output, json.dumps(payload, ensure_ascii=False,
                                       separators=(", ", ": ")) + "\n")
        return
    res = run_deterministic(ts, seed, limits, mode=args.mode)
    for kind, site, cands in res.warnings:
        print(f"simulate: {kind} site {site} tiles {cands}", file=sys.stderr)
    _write(args.output, assembly_to_json(res.assembly, ts, res.status))


def _cmd_analyze(args) -> None:
    ts, seed = tileset_from_json(_read(args.tileset))
    assembly, _status = assembly_from_json(_read(args.assembly), ts)
    if seed is None:
        seed = assembly
    report = analysis.efficiency_report(ts, seed, [assembly])
    text = report.to_json()
    if args.report:
        _write(args.report, text)
    _write(args.output, text)


def _cmd_grammar(args) -> None:
    ts, seed = tileset_from_json(_read(args.tileset))
    if seed is None:
        raise DomainError("tileset carries no seed")
    grammar = automata.tas_to_tree_grammar(ts, seed)
    _write(args.output, grammar.to_text())


def _cmd_nfa2tas(args) -> None:
    nfa = automata.nfa_from_json(_read(args.nfa))
    ts, seed = automata.nfa_to_tas(nfa)
    _write(args.output, tileset_to_json(ts, seed))


def _cmd_decompile(args) -> None:
    ts, seed = tileset_from_json(_read(args.tileset))
    if seed is None:
        raise DomainError("tileset carries no seed")
    _write(args.output, unparse(decompile(ts, seed)))


def _cmd_render(args) -> None:
    ts, _seed = tileset_from_json(_read(args.tileset))
    assembly, _status = assembly_from_json(_read(args.assembly), ts)
    opts = render.RenderOptions(show_glues=args.show_glues)
    if args.tikz:
        _write(args.output, render.render_tikz(assembly, ts, opts))
    else:
        _write(args.output, render.render_svg(assembly, ts, opts))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tileforge",
        description="temperature-1 tile assembly toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a reference construction")
    g.add_argument("kind", choices=("eff", "general", "partially"))
    g.add_argument("--n", type=int, default=None)
    g.add_argument("--h", type=int, default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=_cmd_gen)

    c = sub.add_parser("compile", help="elaborate a .tas program")
    c.add_argument("program", nargs="?", default=None)
    c.add_argument("-o", "--output", default=None)
    c.add_argument("--core-out", default=None)
    c.set_defaults(func=_cmd_compile)

    s = sub.add_parser("simulate", help="grow the assembly to fixpoint")
    s.add_argument("tileset", nargs="?", default=None)
    s.add_argument("--max-tiles", type=int, default=None)
    s.add_argument("--mode", choices=("strict", "permissive", "exhaustive"),
                   default="strict")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=_cmd_simulate)

    a = sub.add_parser("analyze", help="measure an assembly")
    a.add_argument("assembly", nargs="?", default=None)
    a.add_argument("tileset")
    a.add_argument("--report", default=None)
    a.add_argument("-o", "--output", default=None)
    a.set_defaults(func=_cmd_analyze)

    gr = sub.add_parser("grammar", help="export the tree grammar")
    gr.add_argument("tileset", nargs="?", default=None)
    gr.add_argument("-o", "--output", default=None)
    gr.set_defaults(func=_cmd_grammar)

    n = sub.add_parser("nfa2tas", help="translate an NFA to a tileset")
    n.add_argument("nfa", nargs="?", default=None)
    n.add_argument("-o", "--output", default=None)
    n.set_defaults(func=_cmd_nfa2tas)

    d = sub.add_parser("decompile", help="recover a core program")
    d.add_argument("tileset", nargs="?", default=None)
    d.add_argument("-o", "--output", default=None)
    d.set_defaults(func=_cmd_decompile)

    r = sub.add_parser("render", help="draw an assembly")
    r.add_argument("assembly", nargs="?", default=None)
    r.add_argument("tileset")
    fmt = r.add_mutually_exclusive_group()
    fmt.add_argument("--svg", action="store_true", default=True)
    fmt.add_argument("--tikz", action="store_true", default=False)
    r.add_argument("--show-glues", action="store_true")
    r.add_argument("-o", "--output", default=None)
    r.set_defaults(func=_cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (ConflictError, CompileError, DecompileError, ParseError,
            DomainError, automata.GrammarError, constructions.ParamError,
            analysis.AnalysisError) as exc:
        print(f"tileforge: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"tileforge: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
