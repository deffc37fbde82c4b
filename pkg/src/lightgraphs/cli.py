"""Command-line entry point.

Subcommands: analyze, detect, construct, discharge, verify, gen, audit.
Reports are deterministic text; exit codes are 0 for success, 1 when a
counterexample or a negative final charge shows up, 2 for usage or input
errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import constructions, corpus, discharge, theorems
from .core import (
    average_degree,
    dumps_edge_list,
    girth,
    load_edge_list,
    save_edge_list,
)
from .density import mad_exact
from .errors import InputError
from .patterns import find_all, find_pattern
from .plane import PlaneGraph, dumps_rotation_system, load_rotation_system, save_rotation_system

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lightgraphs",
        description="light configurations, discharging, and sharpness checks",
    )
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("analyze", help="basic exact statistics of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--mad", action="store_true", help="also compute exact mad")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("detect", help="search for a degree pattern")
    p.add_argument("--graph")
    p.add_argument("--plane")
    p.add_argument("--pattern", required=True)
    p.add_argument("--all", action="store_true")
    p.add_argument("--limit", type=int, default=10)
    p.set_defaults(handler=_cmd_detect)

    p = sub.add_parser("construct", help="build a sharpness construction")
    p.add_argument("--recipe", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("discharge", help="run a theorem's discharging rules")
    p.add_argument("--theorem", required=True)
    p.add_argument("--graph")
    p.add_argument("--plane")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(handler=_cmd_discharge)

    p = sub.add_parser("verify", help="verify a theorem on an instance or corpus")
    p.add_argument("--theorem", required=True)
    p.add_argument("--graph")
    p.add_argument("--plane")
    p.add_argument("--corpus", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded corpus")
    p.add_argument("--theorem", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--out", help="directory for instance files")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("audit", help="optimality audit of an unavoidable set")
    p.add_argument("--theorem", required=True)
    p.set_defaults(handler=_cmd_audit)

    return parser


def _load_instance(args):
    if getattr(args, "plane", None):
        return load_rotation_system(args.plane)
    if getattr(args, "graph", None):
        return load_edge_list(args.graph)
    raise InputError("need --graph or --plane")


def _load_theorem(name: str) -> theorems.TheoremSpec:
    if os.path.exists(name):
        with open(name, "r", encoding="utf-8") as fh:
            return theorems.parse_theorem_spec(fh.read())
    return theorems.builtin_theorem(name)


def _cmd_analyze(args) -> int:
    g = load_edge_list(args.graph)
    parts = [
        f"n={g.n}",
        f"m={g.m}",
        f"avg={average_degree(g)}",
        f"girth={_show_girth(girth(g))}",
        f"min_degree={g.min_degree()}",
        f"max_degree={g.max_degree()}",
    ]
    if args.mad:
        result = mad_exact(g)
        parts.append(f"mad={result.mad}")
        parts.append(f"witness={','.join(map(str, result.witness))}")
    print(" ".join(parts))
    return EXIT_OK


def _show_girth(value) -> str:
    return "inf" if value == float("inf") else str(value)


def _cmd_detect(args) -> int:
    instance = _load_instance(args)
    pattern = theorems.parse_pattern(args.pattern)
    if args.all:
        found = find_all(instance, pattern, args.limit)
        if not found:
            print("no match")
        for witness in found:
            print(f"match {witness.pattern}: {' '.join(map(str, witness.vertices))}")
    else:
        witness = find_pattern(instance, pattern)
        if witness is None:
            print("no match")
        else:
            print(f"match {witness.pattern}: {' '.join(map(str, witness.vertices))}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    result = constructions.build_sharpness(args.recipe)
    if args.out:
        save_edge_list(result.graph, args.out)
        target = result.target_config or "-"
        print(f"{args.recipe}: n={result.graph.n} m={result.graph.m} "
              f"avg={result.expected_avg} target={target} out={args.out}")
    else:
        sys.stdout.write(dumps_edge_list(result.graph))
    return EXIT_OK


def _cmd_discharge(args) -> int:
    instance = _load_instance(args)
    spec = _load_theorem(args.theorem)
    if spec.rules is None:
        raise InputError(f"theorem {spec.name} has no discharge rules")
    charge_spec, rules = discharge.RULE_SETS[spec.rules]
    result = discharge.run_discharge(instance, charge_spec, list(rules))
    if args.quiet:
        print(f"negatives={len(result.negatives)} total={result.total_final}")
    else:
        sys.stdout.write(discharge.render_discharge_report(result))
    return EXIT_FINDING if result.negatives else EXIT_OK


def _verdict_line(verdict: theorems.Verdict) -> str:
    if verdict.satisfied:
        where = " ".join(map(str, verdict.witness.vertices))
        return f"Satisfied: {verdict.config_name} at {where}"
    if verdict.status == "counterexample":
        return "Counterexample"
    return "HypothesesNotMet: " + "; ".join(verdict.reasons)


def _cmd_verify(args) -> int:
    spec = _load_theorem(args.theorem)
    if args.corpus:
        instances = corpus.corpus_for_theorem(spec.name, args.seed, args.count)
        worst = EXIT_OK
        for idx, instance in enumerate(instances):
            verdict = theorems.verify_theorem(instance, spec)
            if not args.quiet:
                print(f"[{idx}] n={instance.n} {_verdict_line(verdict)}")
            if verdict.status == "counterexample":
                worst = EXIT_FINDING
        summary = "all satisfied" if worst == EXIT_OK else "counterexample found"
        print(f"{spec.name}: {len(instances)} instances, {summary}")
        return worst
    instance = _load_instance(args)
    verdict = theorems.verify_theorem(instance, spec)
    print(_verdict_line(verdict))
    if verdict.status == "counterexample":
        return EXIT_FINDING
    if verdict.status == "hypotheses-not-met":
        return EXIT_USAGE
    return EXIT_OK


def _cmd_gen(args) -> int:
    instances = corpus.corpus_for_theorem(args.theorem, args.seed, args.count)
    spec = theorems.builtin_theorem(args.theorem)
    print(f"theorem={args.theorem} seed={args.seed} count={args.count}")
    for idx, instance in enumerate(instances):
        name = None
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            if isinstance(instance, PlaneGraph):
                name = os.path.join(args.out, f"{args.theorem}-s{args.seed}-{idx}.rot")
                save_rotation_system(instance, name)
            else:
                name = os.path.join(args.out, f"{args.theorem}-s{args.seed}-{idx}.edges")
                save_edge_list(instance, name)
        verdict = theorems.verify_theorem(instance, spec)
        location = f" file={name}" if name else ""
        print(f"[{idx}] n={instance.n} m={instance.m} {_verdict_line(verdict)}{location}")
    return EXIT_OK


def _cmd_audit(args) -> int:
    spec = _load_theorem(args.theorem)
    if spec.name != "mad10_3":
        raise InputError("built-in audit witnesses exist only for mad10_3")
    witnesses = constructions.builtin_mad10_3_witnesses()
    report = constructions.audit_optimality(spec, witnesses)
    sys.stdout.write(constructions.render_audit_report(report))
    return EXIT_FINDING if report.verdict == "not-optimal" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
