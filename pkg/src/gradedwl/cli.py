"""Command-line surface.

Exit codes: 0 success/true, 1 false/not-accepted, 2 usage error, 3 input
error, 4 budget reached without a verdict.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gfp as gfp_mod
from . import grid as grid_mod
from . import translate as translate_mod
from . import typedesc
from . import wl as wl_mod
from .automaton import run as run_automaton
from .errors import GradedWLError
from .formats import parse_automaton, parse_model, serialize_model
from .formulas import Disjunction, check, parse
from .kripke import KripkeModel, PointedModel

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


def _load_model(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_model(fh.read())
    except OSError as exc:
        raise GradedWLError(f"cannot read {path}: {exc}") from exc


def _load_automaton(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_automaton(fh.read())
    except OSError as exc:
        raise GradedWLError(f"cannot read {path}: {exc}") from exc


def _pointed(model, point):
    return PointedModel(model, point)


def _symmetric_closure(model):
    edges = model.edge_triples()
    closed = set(edges) | {(a, v, u) for a, u, v in edges}
    return KripkeModel(model.domain, model.vocab, sorted(closed),
                       {p: model.valuation(p) for p in model.vocab.props})


def _emit(args, text_lines, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- subcommands -----------------------------------------------------------


def cmd_check(args):
    model = _load_model(args.model)
    formula = parse(args.formula, model.vocab)
    verdict = check(_pointed(model, args.point), formula)
    _emit(args, ["true" if verdict else "false"], {"verdict": verdict})
    return EXIT_TRUE if verdict else EXIT_FALSE


def _parse_width(spec, channels):
    levels = []
    for level in spec.split(";"):
        entries = [int(x) for x in level.split(",")]
        if len(entries) != channels:
            raise GradedWLError(
                f"width level {level!r} needs {channels} entries"
            )
        levels.append(tuple(entries))
    return tuple(levels)


def cmd_type(args):
    model = _load_model(args.model)
    pm = _pointed(model, args.point)
    if args.width is not None:
        t = typedesc.type_of_width(pm, _parse_width(args.width, model.vocab.channels))
    else:
        t = typedesc.full_type(pm, args.depth)
    lines = [typedesc.serialize_type(t)]
    payload = {"type": typedesc.serialize_type(t), "depth": t.depth}
    if args.render:
        from .formulas import print_formula

        rendered = print_formula(typedesc.render_type(t))
        lines.append(rendered)
        payload["formula"] = rendered
    _emit(args, lines, payload)
    return EXIT_TRUE


def cmd_refine(args):
    model = _load_model(args.model)
    if args.symmetric:
        model = _symmetric_closure(model)
    lines = []
    payload = {}
    if args.classic:
        stable = wl_mod.classic_wl(model)
    elif args.stable:
        stable = wl_mod.refine_to_stable(model)
    else:
        coloring = wl_mod.initial_coloring(model)
        history = [coloring]
        for _ in range(args.rounds):
            coloring = wl_mod.refine_round(model, coloring)
            history.append(coloring)
        stable = None
    if stable is not None:
        history = stable.history
        coloring = stable.coloring
    if args.trace:
        for c in history:
            lines.append(f"round: {c.round}")
            for node in model.domain:
                lines.append(f"node {node} color {c.colors[node]}")
            lines.append(f"classes: {c.class_count()}")
        payload["trace"] = [
            {"round": c.round, "colors": {str(k): v for k, v in c.colors.items()},
             "classes": c.class_count()}
            for c in history
        ]
    else:
        for node in model.domain:
            lines.append(f"node {node} color {coloring.colors[node]}")
    lines.append(f"classes: {coloring.class_count()}")
    payload["classes"] = coloring.class_count()
    payload["colors"] = {str(k): v for k, v in coloring.colors.items()}
    if stable is not None:
        lines.append(f"stable_at: {stable.stable_at}")
        payload["stable_at"] = stable.stable_at
    _emit(args, lines, payload)
    return EXIT_TRUE


def cmd_distinguish(args):
    model_a = _load_model(args.model_a)
    model_b = _load_model(args.model_b)
    if args.symmetric:
        model_a = _symmetric_closure(model_a)
        model_b = _symmetric_closure(model_b)
    pm1 = _pointed(model_a, args.point_a)
    pm2 = _pointed(model_b, args.point_b)
    lines = []
    payload = {"oracle": args.oracle}
    verdicts = {}
    if args.oracle in ("wl", "both"):
        result = wl_mod.distinguish(pm1, pm2)
        verdicts["wl"] = result.equivalent
        if result.equivalent:
            lines.append("equivalent")
        else:
            lines.append(f"separated_at: {result.separated_at}")
            payload["separated_at"] = result.separated_at
    if args.oracle in ("gfp", "both"):
        relation, stages = gfp_mod.phi_wl_fixpoint(
            gfp_mod.disjoint_union(pm1.model, pm2.model)[0]
        )
        equivalent = gfp_mod.wl_equivalent_via_gfp(pm1, pm2)
        verdicts["gfp"] = equivalent
        lines.append(f"stages: {stages}")
        payload["stages"] = stages
        if args.oracle == "gfp":
            lines.insert(0, "equivalent" if equivalent else "separated")
    payload["verdicts"] = verdicts
    if args.oracle == "both":
        agree = verdicts["wl"] == verdicts["gfp"]
        lines.append(f"oracles_agree: {'yes' if agree else 'no'}")
        payload["oracles_agree"] = agree
    equivalent = all(verdicts.values())
    payload["equivalent"] = equivalent
    if args.formula and not equivalent:
        from .formulas import print_formula

        formula = wl_mod.distinguishing_formula(pm1, pm2)
        rendered = print_formula(formula)
        holds_a = check(pm1, formula)
        holds_b = check(pm2, formula)
        lines.append(f"formula: {rendered}")
        lines.append(f"verified: {'yes' if holds_a and not holds_b else 'no'}")
        payload["formula"] = rendered
        payload["formula_verified"] = holds_a and not holds_b
    _emit(args, lines, payload)
    return EXIT_TRUE if equivalent else EXIT_FALSE


def cmd_run(args):
    spec = _load_automaton(args.automaton)
    model = _load_model(args.model)
    if args.symmetric:
        model = _symmetric_closure(model)
    result = run_automaton(spec, _pointed(model, args.point), args.max_rounds)
    if result.accepted:
        _emit(args, [f"accepted_at: {result.round}"],
              {"verdict": "accepted", "round": result.round})
        return EXIT_TRUE
    _emit(args, ["not_accepted_within_budget"],
          {"verdict": "not_accepted_within_budget"})
    return EXIT_FALSE


def cmd_translate(args):
    table = typedesc.InternTable()
    if args.direction == "f2a":
        from .kripke import Vocabulary

        vocab = Vocabulary(frozenset(args.props), args.channels)
        formula = parse(args.formula, vocab)
        stream = translate_mod.formula_to_type_disjunction(
            formula, vocab, args.max_degree, table, args.max_items
        )
    else:
        spec = _load_automaton(args.automaton)
        stream = translate_mod.automaton_to_disjunction(
            spec, spec.vocab, args.max_rounds, args.max_degree, table, args.max_items
        )
    lines = []
    types = []
    budget_reached = False
    for event in stream.events():
        if event is translate_mod.BUDGET_REACHED:
            budget_reached = True
        else:
            types.append(typedesc.serialize_type(event))
    lines.extend(types)
    if budget_reached:
        lines.append("budget_reached")
    _emit(args, lines, {"types": types, "budget_reached": budget_reached})
    return EXIT_BUDGET if budget_reached else EXIT_TRUE


def cmd_roundtrip(args):
    from .kripke import Vocabulary

    vocab = Vocabulary(frozenset(args.props), args.channels)
    formula = parse(args.formula, vocab)
    spec = grid_mod.GridSpec(
        max_nodes=args.max_nodes,
        max_degree=args.max_degree,
        channels=args.channels,
        props=len(args.props),
        seed=args.seed,
        count=args.count,
        exhaustive=args.exhaustive,
    )
    budgets = translate_mod.Budgets(
        max_degree=args.max_degree,
        max_items=args.max_items,
        max_rounds=args.max_rounds,
    )
    pointed = (
        PointedModel(m, w) for m in grid_mod.gen_grid(spec) for w in m.domain
    )
    report = translate_mod.roundtrip_check(formula, vocab, pointed, budgets)
    lines = [f"models: {report.models_checked}",
             f"disagreements: {len(report.disagreements)}"]
    _emit(args, lines, {
        "models": report.models_checked,
        "disagreements": len(report.disagreements),
    })
    return EXIT_TRUE if report.agreed else EXIT_FALSE


def cmd_gen(args):
    spec = grid_mod.GridSpec(
        max_nodes=args.max_nodes,
        max_degree=args.max_degree,
        channels=args.channels,
        props=args.props,
        seed=args.seed,
        count=args.count,
        exhaustive=args.exhaustive,
    )
    documents = [serialize_model(m) for m in grid_mod.gen_grid(spec)]
    if args.json:
        print(json.dumps({"models": documents}))
    else:
        print("\n".join(documents), end="")
    return EXIT_TRUE


# -- argument wiring -------------------------------------------------------


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gradedwl",
        description="Graded multimodal logic, counting message-passing automata, "
                    "and Weisfeiler-Leman refinement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("check", help="model-check a formula at a point")
    p.add_argument("model")
    p.add_argument("point", type=int)
    p.add_argument("formula")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("type", help="compute a graded multimodal type")
    p.add_argument("model")
    p.add_argument("point", type=int)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--width", help="explicit width, e.g. '2,1;1,0'")
    p.add_argument("--render", action="store_true")
    common(p)
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("refine", help="run color refinement")
    p.add_argument("model")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rounds", type=int)
    group.add_argument("--stable", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--classic", action="store_true")
    common(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("distinguish", help="compare two pointed models")
    p.add_argument("model_a")
    p.add_argument("point_a", type=int)
    p.add_argument("model_b")
    p.add_argument("point_b", type=int)
    p.add_argument("--oracle", choices=["wl", "gfp", "both"], default="wl")
    p.add_argument("--formula", action="store_true",
                   help="also extract and verify a distinguishing formula")
    p.add_argument("--symmetric", action="store_true")
    common(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("run", help="run a declarative automaton")
    p.add_argument("automaton")
    p.add_argument("model")
    p.add_argument("point", type=int)
    p.add_argument("--max-rounds", type=int, default=8)
    p.add_argument("--symmetric", action="store_true")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("translate", help="translate between formulas and automata")
    p.add_argument("direction", choices=["f2a", "a2f"])
    p.add_argument("--formula", help="formula text (f2a)")
    p.add_argument("--automaton", help="automaton file (a2f)")
    p.add_argument("--props", type=_int_list, default=[])
    p.add_argument("--channels", type=int, default=1)
    p.add_argument("--max-depth", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--max-items", type=int)
    p.add_argument("--max-rounds", type=int, default=2)
    common(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("roundtrip", help="cross-validate the three routes")
    p.add_argument("formula")
    p.add_argument("--props", type=_int_list, default=[])
    p.add_argument("--channels", type=int, default=1)
    p.add_argument("--max-nodes", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--max-items", type=int)
    p.add_argument("--max-rounds", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--exhaustive", action="store_true")
    common(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("gen", help="generate a model grid")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--channels", type=int, default=1)
    p.add_argument("--props", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--exhaustive", action="store_true")
    common(p)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "translate":
        if args.direction == "f2a" and not args.formula:
            parser.error("translate f2a requires --formula")
        if args.direction == "a2f" and not args.automaton:
            parser.error("translate a2f requires --automaton")
    try:
        return args.func(args)
    except GradedWLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
