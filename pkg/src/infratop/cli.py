"""Command line interface: ``infra <subcommand> ...``.

Exit codes: 0 success, 1 invalid input, 2 unknown label/world/variable,
3 formula parse error, 4 enumeration bounds exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import meet, union_check
from .errors import BoundsTooLarge, InfraError, UnknownLabel, UniverseTooLarge
from .logic import ParseError, check_derivation, load_derivation, parse, render, variables as vars_of
from .operators import FamilyKind, UniverseTooLargeForScan, classify, derived_family_masks, i_closure, i_interior
from .semantics import (
    SearchBounds,
    UnknownVariable,
    UnknownWorld,
    countermodel_search,
    explain,
    load_model,
    truth_mask,
)
from .setfam import (
    InfraTopology,
    format_set,
    generate_infra_topology,
    load_space,
    make_universe,
    space_to_dict,
    subset_of,
)

EXIT_OK, EXIT_INVALID, EXIT_LOOKUP, EXIT_PARSE, EXIT_BOUNDS = 0, 1, 2, 3, 4


def _color(text: str, code: str) -> str:
    if os.environ.get("INFRA_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _ok(flag: bool) -> str:
    return _color("PASS", "32") if flag else _color("FAIL", "31")


def _emit(args, payload, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print(text)


def _labels(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _subset(t: InfraTopology, text: str):
    return subset_of(t.universe, _labels(text))


# -- subcommands ------------------------------------------------------------------


def cmd_classify(args) -> int:
    t = load_space(args.space)
    r = classify(t, _subset(t, args.set))
    _emit(args, r.to_dict(), r.render())
    return EXIT_OK


def cmd_interior(args) -> int:
    t = load_space(args.space)
    s = i_interior(t, _subset(t, args.set))
    _emit(args, s.labels(), str(s))
    return EXIT_OK


def cmd_closure(args) -> int:
    t = load_space(args.space)
    s = i_closure(t, _subset(t, args.set))
    _emit(args, s.labels(), str(s))
    return EXIT_OK


def cmd_family(args) -> int:
    t = load_space(args.space)
    masks = derived_family_masks(t, FamilyKind(args.kind))
    u = t.universe
    _emit(args, [u.labels(m) for m in masks], "\n".join(format_set(u, m) for m in masks))
    return EXIT_OK


def _space_out(args, t: InfraTopology) -> None:
    text = json.dumps(space_to_dict(t), ensure_ascii=False)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_meet(args) -> int:
    _space_out(args, meet(load_space(args.first), load_space(args.second)))
    return EXIT_OK


def cmd_union_check(args) -> int:
    r = union_check(load_space(args.first), load_space(args.second))
    if r.valid:
        _space_out(args, r.topology)
        return EXIT_OK
    a, b = r.witness
    payload = {"valid": False, "witness": [a.labels(), b.labels()], "intersection": (a & b).labels()}
    _emit(args, payload, f"invalid: {a} ∩ {b} = {a & b} is in neither family")
    return EXIT_INVALID


def cmd_generate(args) -> int:
    u = make_universe(_labels(args.universe))
    seeds = [subset_of(u, _labels(s)) for s in args.seed]
    _space_out(args, generate_infra_topology(u, seeds, args.generalized))
    return EXIT_OK


def cmd_eval(args) -> int:
    m = load_model(args.model)
    phi = parse(args.formula)
    if args.world:
        trace = explain(m, args.world, phi, strict=args.strict)
        text = f"{trace.world}: {'true' if trace.result else 'false'}"
        if trace.note:
            text += f"  ({trace.note})"
        _emit(args, trace.to_dict(), text)
        return EXIT_OK
    s = truth_mask(m, phi, strict=args.strict)
    values = {w: bool(s >> i & 1) for i, w in enumerate(m.worlds.names)}
    lines = [f"{w}: {'true' if v else 'false'}" for w, v in values.items()]
    lines.append(f"true in model: {'yes' if all(values.values()) else 'no'}")
    _emit(args, {"formula": render(phi), "worlds": values, "true_in_model": all(values.values())}, "\n".join(lines))
    return EXIT_OK


def cmd_truth_set(args) -> int:
    m = load_model(args.model)
    s = truth_mask(m, parse(args.formula), strict=args.strict)
    _emit(args, m.worlds.labels(s), format_set(m.worlds, s))
    return EXIT_OK


def cmd_countermodel(args) -> int:
    phi = parse(args.formula)
    variables = tuple(_labels(args.variables)) if args.variables else ()
    names = tuple(sorted(set(variables) | vars_of(phi))) or ("p",)
    bounds = SearchBounds(max_worlds=args.max_worlds, variables=names, policy=args.policy, jobs=args.jobs)
    found = countermodel_search(phi, bounds)
    if found is None:
        _emit(args, {"found": False, "policy": args.policy}, f"no countermodel within bounds (policy {args.policy})")
        return EXIT_OK
    payload = {"found": True, **found.to_dict()}
    _emit(args, payload, f"countermodel (fails at {found.world}): {found.model.describe()}")
    return EXIT_OK


def cmd_check_proof(args) -> int:
    v = check_derivation(load_derivation(args.derivation))
    if v.accepted:
        text = f"accepted: {render(v.conclusion)}" if v.conclusion is not None else "accepted (empty derivation)"
        if v.flags:
            text += f"  [derived-rule at steps {', '.join(map(str, v.derived_rule_steps))}]"
    else:
        text = f"rejected at step {v.rejected.index}: {v.rejected.reason}"
    _emit(args, v.to_dict(), text)
    return EXIT_OK if v.accepted else EXIT_INVALID


def cmd_oracle_count(args) -> int:
    from .oracle import count_infra_topologies

    c = count_infra_topologies(args.n, args.generalized, jobs=args.jobs)
    _emit(args, {"n": args.n, "generalized": args.generalized, "count": c}, str(c))
    return EXIT_OK


def cmd_oracle_witness(args) -> int:
    from .oracle import find_witness

    b = find_witness(args.property, max_n=args.max_n)
    lines = [f"{b.pid} ({b.kind}): {'confirmed' if b.holds else 'NOT confirmed'} via {b.source}"]
    if b.topology is not None:
        lines.append(f"  space {b.topology}; A = {b.a}; B = {b.b}")
    lines += [f"  note: {n}" for n in b.notes]
    _emit(args, b.to_dict(), "\n".join(lines))
    return EXIT_OK if b.ok else EXIT_INVALID


def cmd_paper_suite(args) -> int:
    from .paper_suite import run_suite

    outcomes = run_suite(args.data_dir, args.filter)
    if args.json:
        print(json.dumps([o.__dict__ for o in outcomes], ensure_ascii=False, indent=2))
    else:
        for o in outcomes:
            print(f"{_ok(o.passed)}  {o.group:<9} {o.name:<48} {o.detail}")
        print(f"{sum(o.passed for o in outcomes)}/{len(outcomes)} checks passed")
    failed = [o for o in outcomes if not o.passed]
    if failed:
        print(f"first failing check: {failed[0].name}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="infra", description="Finite infra-topological spaces and the modal logic GIT.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    for name, fn in (("classify", cmd_classify), ("interior", cmd_interior), ("closure", cmd_closure)):
        sp = with_json(sub.add_parser(name))
        sp.add_argument("space")
        sp.add_argument("--set", required=True, help="comma-separated labels; empty string for the empty set")
        sp.set_defaults(func=fn)

    sp = with_json(sub.add_parser("family"))
    sp.add_argument("space")
    sp.add_argument("--kind", required=True, choices=[k.value for k in FamilyKind])
    sp.set_defaults(func=cmd_family)

    for name, fn in (("meet", cmd_meet), ("union-check", cmd_union_check)):
        sp = with_json(sub.add_parser(name))
        sp.add_argument("first")
        sp.add_argument("second")
        sp.add_argument("-o", "--output")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("generate")
    sp.add_argument("--universe", required=True)
    sp.add_argument("--seed", action="append", default=[])
    sp.add_argument("--generalized", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_generate)

    for name, fn in (("eval", cmd_eval), ("truth-set", cmd_truth_set)):
        sp = with_json(sub.add_parser(name))
        sp.add_argument("model")
        sp.add_argument("formula")
        sp.add_argument("--strict", action="store_true", help="error on variables missing from the valuation")
        if name == "eval":
            sp.add_argument("--world")
        sp.set_defaults(func=fn)

    sp = with_json(sub.add_parser("countermodel"))
    sp.add_argument("formula")
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--variables", help="extra variables to enumerate valuations for")
    sp.add_argument("--policy", choices=["auto", "full", "pool"], default="auto")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_countermodel)

    sp = with_json(sub.add_parser("check-proof"))
    sp.add_argument("derivation")
    sp.set_defaults(func=cmd_check_proof)

    oracle = sub.add_parser("oracle").add_subparsers(dest="oracle_command", required=True)
    sp = with_json(oracle.add_parser("count"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--generalized", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_oracle_count)
    sp = with_json(oracle.add_parser("witness"))
    sp.add_argument("property")
    sp.add_argument("--max-n", type=int, default=4)
    sp.set_defaults(func=cmd_oracle_witness)

    sp = with_json(sub.add_parser("paper-suite"))
    sp.add_argument("--filter")
    sp.add_argument("--data-dir")
    sp.set_defaults(func=cmd_paper_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnknownLabel, UnknownWorld, UnknownVariable) as exc:
        print(f"lookup error: {exc}", file=sys.stderr)
        return EXIT_LOOKUP
    except (BoundsTooLarge, UniverseTooLarge, UniverseTooLargeForScan) as exc:
        print(f"bounds exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (InfraError, OSError) as exc:
        clause = getattr(exc, "clause", None)
        prefix = f"invalid input ({clause})" if clause else "invalid input"
        print(f"{prefix}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
