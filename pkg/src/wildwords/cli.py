"""Command line surface: one binary, verb subcommands, deterministic JSON
payloads on stdout and a one-line summary on stderr."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import archipelago, becker, earring, parsing, relcalc
from .words import free_reduce, project


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit; surface as status 2
        raise UsageError(message)


@dataclass
class CommandResult:
    status: int
    payload: dict
    summary: str


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="wildwords", description=__doc__)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized batches (reserved; commands are deterministic)")
    parser.add_argument("--json", action="store_true",
                        help="suppress the summary line, print only the JSON payload")
    verbs = parser.add_subparsers(dest="verb", required=True)

    reduce_p = verbs.add_parser("reduce", help="freely reduce a generator word")
    reduce_p.add_argument("word")

    project_p = verbs.add_parser("project", help="delete generators above a level")
    project_p.add_argument("--level", type=int, required=True)
    project_p.add_argument("word")

    earring_p = verbs.add_parser("earring", help="coherent sequence commands")
    earring_sub = earring_p.add_subparsers(dest="action", required=True)
    check_p = earring_sub.add_parser("check", help="validate a sequence file and test stabilization")
    check_p.add_argument("file")

    ha_p = verbs.add_parser("ha", help="archipelago kernel commands")
    ha_sub = ha_p.add_subparsers(dest="action", required=True)
    kernel_p = ha_sub.add_parser("kernel", help="kernel scan of an embedded word")
    kernel_p.add_argument("--depth", type=int, required=True)
    kernel_p.add_argument("--word", required=True)
    equiv_p = ha_sub.add_parser("equiv", help="quotient equality of two embedded words")
    equiv_p.add_argument("--depth", type=int, required=True)
    equiv_p.add_argument("word1")
    equiv_p.add_argument("word2")
    eta_p = ha_sub.add_parser("eta", help="build the gadget element of a prefix vector")
    eta_p.add_argument("--depth", type=int, required=True)
    eta_p.add_argument("file", help="JSON file with {\"prefixes\": [...]}")

    fe_p = verbs.add_parser("fe", help="words over an equivalence relation")
    fe_sub = fe_p.add_subparsers(dest="action", required=True)
    for name, extra in (("normal", 1), ("eq", 2), ("quotient", 1)):
        sub = fe_sub.add_parser(name)
        sub.add_argument("--relation", required=True, help="relation JSON file")
        sub.add_argument("words", nargs=extra)

    becker_p = verbs.add_parser("becker", help="tree gadget and assembly commands")
    becker_sub = becker_p.add_subparsers(dest="action", required=True)
    gadget_p = becker_sub.add_parser("gadget", help="components and geometry stats of a tree gadget")
    gadget_p.add_argument("--tree", required=True)
    gadget_p.add_argument("--depth", type=int, default=8, help="zigzag render depth")
    assembly_p = becker_sub.add_parser("assembly", help="build the fibered assembly")
    assembly_p.add_argument("--relation", required=True)
    assembly_p.add_argument("--depth", type=int, required=True)
    connect_p = becker_sub.add_parser("connect", help="path-connectivity of two fibers")
    connect_p.add_argument("--relation", required=True)
    connect_p.add_argument("--depth", type=int, required=True)
    connect_p.add_argument("c0")
    connect_p.add_argument("c1")
    svg_p = becker_sub.add_parser("svg", help="render a tree gadget as SVG")
    svg_p.add_argument("--tree", required=True)
    svg_p.add_argument("--depth", type=int, default=8)
    svg_p.add_argument("--svg", help="output file; omit to return the document inline")

    return parser


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _kernel_payload(verdict: archipelago.KernelVerdict) -> dict:
    if verdict.witnessed:
        return {"verdict": "witnessed", "N": verdict.n}
    return {"verdict": "no-witness", "depth": verdict.depth}


def _dispatch(ns: argparse.Namespace) -> tuple[dict, str]:
    if ns.verb == "reduce":
        reduced = free_reduce(parsing.parse_generator_word(ns.word))
        text = parsing.format_word(reduced)
        return {"word": text}, f"reduced to {text}"

    if ns.verb == "project":
        reduced = free_reduce(parsing.parse_generator_word(ns.word))
        text = parsing.format_word(project(reduced, ns.level))
        return {"word": text}, f"projection to level {ns.level}: {text}"

    if ns.verb == "earring" and ns.action == "check":
        seq = parsing.sequence_from_json(_read(ns.file))
        verdict = earring.in_image_up_to_depth(seq)
        payload = {"coherent": True, "depth": seq.depth, "verdict": verdict.kind}
        if verdict.consistent:
            payload["witnesses"] = {str(k): n for k, n in verdict.witnesses}
        else:
            payload["unstable"] = list(verdict.unstable)
        return payload, f"depth {seq.depth}: {verdict.kind}"

    if ns.verb == "ha" and ns.action == "kernel":
        word = free_reduce(parsing.parse_generator_word(ns.word))
        verdict = archipelago.ker_theta_scan(earring.embed_word(word, ns.depth))
        return _kernel_payload(verdict), f"kernel scan: {verdict.kind}"

    if ns.verb == "ha" and ns.action == "equiv":
        a = earring.embed_word(free_reduce(parsing.parse_generator_word(ns.word1)), ns.depth)
        b = earring.embed_word(free_reduce(parsing.parse_generator_word(ns.word2)), ns.depth)
        verdict = archipelago.ha_equivalent(a, b)
        return _kernel_payload(verdict), f"quotient equality: {verdict.kind}"

    if ns.verb == "ha" and ns.action == "eta":
        data = json.loads(_read(ns.file))
        element = archipelago.eta_element(data["prefixes"], ns.depth)
        payload = parsing.sequence_to_json(element)
        return payload, f"gadget element at depth {ns.depth}"

    if ns.verb == "fe":
        relation = relcalc.relation_from_json(_read(ns.relation))
        words = [parsing.parse_point_word(text) for text in ns.words]
        if ns.action == "normal":
            text = parsing.format_word(relcalc.e_normal_form(relation, words[0]))
            return {"word": text}, f"normal form: {text}"
        if ns.action == "eq":
            answer = relcalc.fe_equivalent(relation, words[0], words[1])
            return {"equivalent": answer}, f"equivalent: {answer}"
        if ns.action == "quotient":
            text = parsing.format_word(relcalc.quotient_word(relation, words[0]))
            return {"word": text}, f"quotient word: {text}"

    if ns.verb == "becker":
        if ns.action == "gadget":
            tree = becker.tree_from_json(_read(ns.tree))
            geometry = becker.build_gadget(tree, ns.depth)
            components = becker.gadget_components(tree)
            payload = {
                "path_connected": components.path_connected,
                "components": components.assignment,
                "segments": len(geometry.segments),
                "polylines": len(geometry.polylines),
            }
            n = components.count
            return payload, f"{n} component{'s' if n != 1 else ''}"
        if ns.action == "assembly":
            relation = relcalc.relation_from_json(_read(ns.relation))
            assembly = becker.build_assembly(relation, ns.depth)
            return json.loads(becker.export_json(assembly)), (
                f"assembly over {len(assembly.points)} fibers"
            )
        if ns.action == "connect":
            relation = relcalc.relation_from_json(_read(ns.relation))
            assembly = becker.build_assembly(relation, ns.depth)
            answer = becker.assembly_connected(assembly, ns.c0, ns.c1)
            return {"connected": answer}, f"connected: {answer}"
        if ns.action == "svg":
            tree = becker.tree_from_json(_read(ns.tree))
            document = becker.export_svg(becker.build_gadget(tree, ns.depth))
            if ns.svg:
                Path(ns.svg).write_text(document, encoding="utf-8")
                return {"written": ns.svg, "bytes": len(document)}, f"wrote {ns.svg}"
            return {"svg": document}, "rendered inline"

    raise UsageError(f"unknown command {ns.verb!r}")


def run_command(argv: list[str]) -> CommandResult:
    """Parse and execute one command; never raises for usage or domain
    errors, which become status 2 and 1 respectively."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        return CommandResult(2, {"error": "UsageError", "message": str(exc)},
                             f"usage error: {exc}")
    try:
        payload, summary = _dispatch(ns)
    except parsing.WordSyntaxError as exc:
        payload = {"error": "WordSyntaxError", "message": str(exc),
                   "offset": exc.offset, "expected": exc.expected}
        return CommandResult(1, payload, f"syntax error: {exc}")
    except (ValueError, OSError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        level = getattr(exc, "level", None)
        if level is not None:
            payload["level"] = level
        return CommandResult(1, payload, f"error: {exc}")
    return CommandResult(0, payload, summary)


def main(argv: list[str] | None = None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(json.dumps(result.payload, sort_keys=True) + "\n")
    if "--json" not in (argv if argv is not None else sys.argv[1:]):
        sys.stderr.write(result.summary + "\n")
    return result.status


if __name__ == "__main__":
    sys.exit(main())
