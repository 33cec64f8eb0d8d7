"""Command-line surface.

Exit codes: 0 for true/success, 1 for a false/infeasible verdict, 2 for any
error, so shell pipelines can branch on model-checking outcomes.  --json
prints machine-readable output with stable keys.

Environment: TEMPO_BUDGET sets the evaluator assignment budget (an integer,
or "none" to disable); TEMPO_ORACLE_CEILING overrides oracle search ceilings
as comma-separated key=value pairs (n, lifetime, edges, subset_base,
colour_k).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import oracles
from .cookbook import EncodingTag, CookbookFormula
from .decomp import (
    path_decomposition_from_vim,
    tim_decomposition,
    tree_decomposition_footprint,
    tree_decomposition_from_tim,
    validate_tim,
    vim_decomposition,
)
from .encodings import (
    edge_id,
    encode,
    structure_stats,
    structure_to_json,
    validate_structure,
    vertex_id,
)
from .errors import TempoError
from .gaifman import (
    degree_bound_check,
    gaifman_dot,
    gaifman_edge_list,
    gaifman_graph,
    transfer_pd_vim,
    transfer_td_degree,
    transfer_td_lifetime,
    transfer_td_tim,
)
from .logic.evaluate import Evaluator, cost_guard
from .logic.parser import parse_formula
from .tgio import load_tg
from .verify import CRITERION_PROBLEMS, PROBLEMS, verify_all, verify_problem

ENCODINGS = ("lifetime", "degree", "vim", "tim")


def _emit(args, payload, text_fn=None):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    elif text_fn is not None:
        text_fn()
    else:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _parse_assignment(g, pairs, free_vars=None):
    """k=v pairs: vertices by name, temporal edges as u|v@t, sets comma-separated."""
    index = {}
    for e in sorted(g.edges):
        index[f"{e.u}|{e.v}@{e.t}"] = e
    set_kinds = {fv.name for fv in free_vars or () if fv.kind == "set"}
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise TempoError(f"bad assignment {item!r}; expected name=value")
        name, value = item.split("=", 1)
        parts = value.split(",") if value else []
        converted = []
        for p in parts:
            if p in index:
                converted.append(edge_id(index[p]))
            elif p in g.vertices:
                converted.append(vertex_id(p))
            elif p.startswith(("v:", "te:", "t:", "bag:")):
                converted.append(p)
            else:
                raise TempoError(f"cannot resolve {p!r} as a vertex or temporal edge")
        if name not in set_kinds and len(converted) == 1 and "," not in value:
            out[name] = converted[0]
        else:
            out[name] = set(converted)
    return out


def _decomp_payload(kind, g):
    if kind == "vim":
        d = vim_decomposition(g)
        return {
            "kind": "vim",
            "width": d.width(),
            "bags": {str(t + 1): sorted(b) for t, b in enumerate(d.bags)},
        }
    if kind == "tim":
        d = tim_decomposition(g)
        verdict = validate_tim(g, d)
        return {
            "kind": "tim",
            "width": d.width(),
            "valid": bool(verdict),
            "components": d.component_count() if d.nodes else 0,
            "bags": {i: sorted(d.bags[i]) for i in d.nodes},
            "tau": dict(d.tau),
            "tree_edges": sorted(map(list, d.tree_edges)),
        }
    td = tree_decomposition_footprint(g.footprint())
    return {
        "kind": "tree",
        "width": td.width(),
        "bags": {str(n): sorted(b) for n, b in td.bags.items()},
        "edges": sorted(map(list, td.edges)),
    }


def cmd_encode(args):
    g = load_tg(args.graph)
    rs = encode(g, args.encoding)
    payload = structure_to_json(rs)
    payload["valid"] = bool(validate_structure(rs))
    payload["stats"] = structure_stats(rs)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def cmd_decompose(args):
    g = load_tg(args.graph)
    payload = _decomp_payload(args.kind, g)
    _emit(args, payload)
    return 0


def cmd_gaifman(args):
    g = load_tg(args.graph)
    rs = encode(g, args.encoding)
    gf = gaifman_graph(rs)
    if args.transfer:
        if args.encoding == "lifetime":
            report = transfer_td_lifetime(g, tree_decomposition_footprint(g.footprint()))
        elif args.encoding == "degree":
            report = transfer_td_degree(g, tree_decomposition_footprint(g.footprint()))
        elif args.encoding == "vim":
            report = transfer_pd_vim(g)
        else:
            report = transfer_td_tim(g, tim_decomposition(g))
        payload = {
            "encoding": args.encoding,
            "valid": report.valid,
            "width": report.width(),
            "bounds_hold": report.all_bounds_hold,
            "bags": len(report.bounds),
        }
        if args.encoding == "degree":
            check = degree_bound_check(g)
            payload["degree_bound"] = {
                "max_gaifman_degree": check.max_gaifman_degree,
                "bound": check.bound,
                "holds": check.holds,
            }
        _emit(args, payload)
        return 0
    if args.export == "dot":
        print(gaifman_dot(gf), end="")
        return 0
    if args.export == "edges":
        print(gaifman_edge_list(gf), end="")
        return 0
    payload = {
        "vertices": len(gf.vertices),
        "edges": len(gf.edges),
        "max_degree": gf.max_degree(),
    }
    _emit(args, payload)
    return 0


def cmd_check(args):
    g = load_tg(args.graph)
    rs = encode(g, args.encoding)
    with open(args.formula, "r", encoding="utf-8") as fh:
        f = parse_formula(fh.read())
    assignment = _parse_assignment(g, args.assign)
    budget = None if args.budget == "none" else (
        int(args.budget) if args.budget else "default"
    )
    guard = cost_guard(rs, f, budget if budget != "default" else "default")
    verdict = Evaluator(rs).evaluate(f, assignment, budget=budget)
    _emit(
        args,
        {"verdict": verdict, "estimate": guard.estimate},
        lambda: print("true" if verdict else "false"),
    )
    return 0 if verdict else 1


def cmd_cookbook(args):
    g = load_tg(args.graph)
    if g.directed:
        raise TempoError("the formula catalogue supports undirected graphs only")
    defn = PROBLEMS[args.problem]
    if args.encoding not in defn.encodings:
        raise TempoError(
            f"{args.problem} supports encodings {', '.join(defn.encodings)}"
        )
    params = {}
    for item in args.param or ():
        key, value = item.split("=", 1)
        params[key] = int(value)
    params.setdefault("lifetime", g.lifetime())
    tag = EncodingTag(args.encoding, g.strict)
    sampled_params, _ = defn.sample(g, 0)
    for key, value in sampled_params.items():
        params.setdefault(key, value)
    cf: CookbookFormula = defn.build(tag, g, {**sampled_params, **params})
    rs = encode(g, args.encoding)
    assignment = _parse_assignment(g, args.assign, cf.free_vars)
    verdict = Evaluator(rs).evaluate(
        cf.formula, assignment, free=list(cf.free_vars), budget=None
    )
    _emit(
        args,
        {"problem": args.problem, "encoding": args.encoding, "verdict": verdict},
        lambda: print("true" if verdict else "false"),
    )
    return 0 if verdict else 1


def cmd_oracle(args):
    g = load_tg(args.graph)
    defn = PROBLEMS[args.problem]
    params = {}
    for item in args.param or ():
        key, value = item.split("=", 1)
        params[key] = int(value)
    sampled_params, sampled_assign = defn.sample(g, args.seed)
    merged = {**sampled_params, **params}
    assignment = dict(sampled_assign)
    for item in args.assign or ():
        name, value = item.split("=", 1)
        parts = value.split(",") if value else []
        if len(parts) == 1 and parts[0] in g.vertices and name in ("u", "v", "s", "z"):
            assignment[name] = parts[0]
        else:
            assignment[name] = set(parts) & g.vertices or set(parts)
    verdict = defn.oracle(g, merged, assignment)
    _emit(
        args,
        {"problem": args.problem, "verdict": verdict, "params": merged},
        lambda: print("true" if verdict else "false"),
    )
    return 0 if bool(verdict) else 1


def cmd_verify(args):
    problems = [args.problem] if args.problem else list(CRITERION_PROBLEMS)
    if args.all:
        problems = list(PROBLEMS)
    reports = []

    def progress(rep):
        flag = "ok " if rep.ok else "FAIL"
        print(
            f"{flag} {rep.problem:28s} {rep.encoding:9s} "
            f"{rep.agreements}/{rep.trials} agree  {rep.seconds:6.2f}s",
            file=sys.stderr,
        )

    for name in problems:
        defn = PROBLEMS[name]
        encodings = [args.encoding] if args.encoding else list(defn.encodings)
        for enc in encodings:
            if enc not in defn.encodings:
                continue
            rep = verify_problem(name, enc, trials=args.trials, seed=args.seed)
            progress(rep)
            reports.append(rep)
    ok = all(r.ok for r in reports)
    payload = {
        "trials": args.trials,
        "seed": args.seed,
        "cells": [
            {
                "problem": r.problem,
                "encoding": r.encoding,
                "trials": r.trials,
                "agreements": r.agreements,
                "disagreements": [
                    {
                        "seed": d.seed,
                        "config": vars(d.config) if hasattr(d.config, "__dict__") else str(d.config),
                        "params": d.params,
                        "assignment": {k: sorted(v) if isinstance(v, set) else v
                                       for k, v in d.assignment.items()},
                        "formula": d.formula_verdict,
                        "oracle": d.oracle_verdict,
                    }
                    for d in r.disagreements
                ],
                "seconds": round(r.seconds, 3),
            }
            for r in reports
        ],
        "ok": ok,
    }
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    return 0 if ok else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="tempo",
        description="Temporal graphs as relational structures: encodings, "
        "decompositions, Gaifman transfers, FO/MSO checking, and oracle "
        "cross-validation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    enc = dict(choices=ENCODINGS, required=True)

    q = sub.add_parser("encode", help="encode a .tg graph as a relational structure")
    q.add_argument("graph")
    q.add_argument("--encoding", **enc)
    q.add_argument("--out")
    q.set_defaults(fn=cmd_encode)

    q = sub.add_parser("decompose", help="VIM/TIM/footprint-tree decompositions")
    q.add_argument("graph")
    q.add_argument("--kind", choices=("vim", "tim", "tree"), required=True)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_decompose)

    q = sub.add_parser("gaifman", help="Gaifman graph stats, exports, width transfers")
    q.add_argument("graph")
    q.add_argument("--encoding", **enc)
    q.add_argument("--stats", action="store_true")
    q.add_argument("--export", choices=("dot", "edges"))
    q.add_argument("--transfer", action="store_true")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_gaifman)

    q = sub.add_parser("check", help="evaluate a formula file against an encoding")
    q.add_argument("graph")
    q.add_argument("--encoding", **enc)
    q.add_argument("--formula", required=True)
    q.add_argument("--assign", action="append", metavar="NAME=VALUE")
    q.add_argument("--budget")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_check)

    q = sub.add_parser("cookbook", help="evaluate a catalogue problem formula")
    q.add_argument("graph")
    q.add_argument("--problem", choices=sorted(PROBLEMS), required=True)
    q.add_argument("--encoding", **enc)
    q.add_argument("--param", action="append", metavar="NAME=INT")
    q.add_argument("--assign", action="append", metavar="NAME=VALUE")
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_cookbook)

    q = sub.add_parser("oracle", help="run the brute-force oracle for a problem")
    q.add_argument("graph")
    q.add_argument("--problem", choices=sorted(PROBLEMS), required=True)
    q.add_argument("--param", action="append", metavar="NAME=INT")
    q.add_argument("--assign", action="append", metavar="NAME=VALUE")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_oracle)

    q = sub.add_parser("verify", help="formula-versus-oracle agreement harness")
    q.add_argument("--problem", choices=sorted(PROBLEMS))
    q.add_argument("--all", action="store_true", help="every registered problem")
    q.add_argument("--encoding", choices=ENCODINGS)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")
    q.set_defaults(fn=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except TempoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
