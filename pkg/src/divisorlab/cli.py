"""Command-line entry point.

Exit codes: 0 every asserted divisibility holds, 1 a guaranteed divisibility
failed (a bug), 2 bad input, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .crossed import abelianization, load_action, theorem4_verdict
from .errors import DivisorLabError, SizeCapExceeded, TheoremViolation
from .explore import QUESTIONS, SCHEMA, ExplorationConfig, explore
from .groups import SUBGROUP_ENUMERATION_CAP, all_subgroups, load_group, subgroup_generated
from .homverify import conditions_check, enumerate_homs, lemma0_sweep, load_presentation
from .rings import load_ring_system, theorem3_verdict
from .solver import DEFAULT_CAP, theorem1_verdict, theorem2_verdict
from .words import load_system

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _group_arg(args, required=True):
    if args.group and args.catalog:
        raise InputError("give either --group or --catalog, not both")
    if args.group:
        return load_group(args.group)
    if args.catalog:
        return load_group({"catalog": args.catalog})
    if required:
        raise InputError("a group is required (--group FILE or --catalog SPEC)")
    return None


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required")
    return value


def cmd_group(args):
    g = _group_arg(args)
    report = {"order": g.order, "label": g.label, "valid": True}
    if args.action == "info":
        report.update({
            "names": list(g.names),
            "exponent": g.exponent,
            "abelian": g.is_abelian,
            "element_orders": {g.names[a]: g.element_order(a) for a in g.elements},
            "abelianization": list(abelianization(g)),
        })
        if g.order <= SUBGROUP_ENUMERATION_CAP:
            report["subgroup_orders"] = sorted(s.order for s in all_subgroups(g))
    return report, True


def cmd_solve(args):
    system = load_system(_need(args, "system"), group=_group_arg(args, required=False))
    if system.all_plain and len(system.subsystem) == len(system.equations):
        rep = theorem1_verdict(system, cap=args.cap, oracle=args.oracle)
        kind = "theorem1"
    else:
        rep = theorem2_verdict(system, cap=args.cap, oracle=args.oracle)
        kind = "theorem2"
    out = rep.to_json()
    out["verdict"] = kind
    out["group"] = system.group.label
    return out, rep.divides


def cmd_ring_solve(args):
    system = load_ring_system(_need(args, "ring"))
    rep = theorem3_verdict(system, cap=args.cap, oracle=args.oracle)
    return rep.to_json(), rep.divides


def cmd_crossed(args):
    action = load_action(_need(args, "action"))
    reports = theorem4_verdict(action, cap=args.cap, oracle=args.oracle)
    ok = all(r.divides for r in reports)
    return {"actor": action.actor.label, "target": action.target.label,
            "count": reports[0].solution_count,
            "reports": [r.to_json() for r in reports]}, ok


def cmd_hom_check(args):
    p, degrees, n = load_presentation(_need(args, "presentation"))
    g = _group_arg(args)
    homs = enumerate_homs(p, g, cap=args.cap)
    if args.subgroup:
        subs = [subgroup_generated(g, [g.index_of(x) for x in args.subgroup.split(",") if x])]
    else:
        subs = [h for h in all_subgroups(g) if n % h.order == 0]
    checks = []
    for h in subs:
        v = conditions_check(homs, h, p, degrees, n)
        checks.append({"subgroup": h.names(), **v.to_json()})
    stats = lemma0_sweep(g, [p], ns=(n,), subgroups=subs)
    return {"n": n, "degrees": list(degrees), "hom_count": len(homs),
            "conditions": checks,
            "lemma0": {"homs": stats.cases, "twists": stats.twists,
                       "extensions": stats.extensions, "core_checks": stats.core_checks}}, True


def cmd_explore(args):
    config = ExplorationConfig(args.question, args.max_order, args.trials, args.seed,
                               None, args.workers, args.oracle)
    report = explore(config)
    return report.to_json(), report.summary()["weak_bound_always_divides"]


def build_parser():
    parser = argparse.ArgumentParser(prog="divisorlab",
                                     description="Solution counts and divisibility checks "
                                                 "for equations over finite groups and rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", metavar="FILE", help="group JSON file")
    common.add_argument("--catalog", metavar="SPEC", help="catalog group, e.g. S4 or Z2xD4")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="tuple-space cap")
    common.add_argument("--oracle", action="store_true",
                        help="compute GCD(G, n) by subgroup enumeration")
    common.add_argument("--out", metavar="FILE", help="write the JSON report here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="validate or describe a group")
    p.add_argument("action", choices=["validate", "info"])
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("solve", parents=[common], help="count solutions of a group system")
    p.add_argument("--system", metavar="FILE")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("ring-solve", parents=[common], help="count unit solutions of a ring system")
    p.add_argument("--ring", metavar="FILE")
    p.set_defaults(func=cmd_ring_solve)

    p = sub.add_parser("crossed", parents=[common], help="count crossed homomorphisms")
    p.add_argument("--action", metavar="FILE")
    p.set_defaults(func=cmd_crossed)

    p = sub.add_parser("hom-check", parents=[common],
                       help="check twist lemmas and closure conditions for a presentation")
    p.add_argument("--presentation", metavar="FILE")
    p.add_argument("--subgroup", metavar="NAMES", help="comma-separated generators of H")
    p.set_defaults(func=cmd_hom_check)

    p = sub.add_parser("explore", parents=[common], help="seeded search on the open questions")
    p.add_argument("--question", choices=QUESTIONS, default="Q1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_explore)
    return parser


def _emit(report, args):
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        body, ok = args.func(args)
    except TheoremViolation as exc:
        print(f"error: theorem violated: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except SizeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DivisorLabError, InputError, json.JSONDecodeError, OSError,
            KeyError, ValueError, TypeError, IndexError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"schema": SCHEMA, "command": args.command, **body, "ok": ok}
    _emit(report, args)
    return EXIT_OK if ok else EXIT_FAILED


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
