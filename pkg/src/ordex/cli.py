"""Command-line front end.

Exit codes: 0 when the computation finished and every checked claim holds,
1 when it finished but a checked claim fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .consistency import consistency_report, s_consistency_witness
from .errors import CapExceeded, ConstraintError, InputError, PreconditionFailed
from .extension import (
    ExtensionConstraint,
    extension_with_maximal,
    linear_extension,
    ordering_extension,
    tournament_extension,
)
from .formats import parse_game, parse_relation, relation_to_dict
from .games import completion_union_check, nash_equilibria, profile_label
from .harness import SCOPES, conjecture_harness
from .realizer import (
    FLAVORS,
    RelationClass,
    covers,
    dimension,
    duggan_check,
    flavor_family,
    uncovered_pairs,
    verify_intersection_theorem,
)
from .relation import (
    OMEGA,
    Relation,
    classify,
    maximal_elements,
    parse_order,
    power,
    strongly_connected_components,
)

SCHEMA = "ordex/1"


class Outcome:
    """Report body plus the claim status that decides the exit code."""

    def __init__(self, body: dict, ok: bool = True, lines: list[str] | None = None):
        self.body = body
        self.ok = ok
        self.lines = lines or []


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_relation(path: str) -> Relation:
    return parse_relation(_read(path))


def _pairs(r: Relation, diagonal: bool = True) -> list[list[str]]:
    return [[x, y] for x, y in r.pairs() if diagonal or x != y]


def _listing(r: Relation, diagonal: bool = True) -> list[str]:
    return [f"({x},{y})" for x, y in _pairs(r, diagonal)]


def _order(text: str | None):
    if text is None:
        return None
    try:
        m = parse_order(text)
    except (TypeError, ValueError):
        raise InputError(f"bad order {text!r}; expected a positive integer or 'omega'") from None
    if m is not OMEGA and m < 1:
        raise InputError("order must be at least 1")
    return m


def _label_pair(text: str, flag: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise InputError(f"{flag} expects 'x,y'")
    return parts[0], parts[1]


def _constraint(path: str | None) -> ExtensionConstraint | None:
    if path is None:
        return None
    t = _load_relation(path)
    return ExtensionConstraint.build(t.universe.labels, t.pairs())


# commands


def cmd_analyze(args) -> Outcome:
    r = _load_relation(args.file)
    rep = classify(r)
    cons = consistency_report(r, args.m if isinstance(args.m, int) else None)
    sccs = [[r.universe.labels[i] for i in comp] for comp in strongly_connected_components(r)]
    body = {
        "properties": rep.as_dict(),
        "consistency": cons.as_dict(),
        "maximal_elements": sorted(maximal_elements(r), key=r.universe.index),
        "strong_components": sccs,
        "s_consistency_witness": s_consistency_witness(r),
    }
    lines = [
        "properties: " + (", ".join(k for k, v in rep.as_dict().items() if v) or "none"),
        "m-consistent at: " + " ".join(str(m) for m, (c, _) in cons.table.items() if c),
        f"S-consistent: {cons.s_consistent}",
        f"lambda index: {cons.lambda_}",
        f"maximal: {' '.join(body['maximal_elements'])}",
    ]
    return Outcome(body, True, lines)


def cmd_closure(args) -> Outcome:
    r = _load_relation(args.file)
    base = r if args.no_reflexivize else r.with_diagonal()
    m = args.m if args.m is not None else OMEGA
    result = power(base, m)
    body = {"order": str(m).lower() if m is OMEGA else m, "relation": relation_to_dict(result)}
    return Outcome(body, True, _listing(result))


def cmd_extend(args) -> Outcome:
    r = _load_relation(args.file)
    reflex = not args.no_reflexivize
    c = _constraint(args.constraint)
    modes = sum(bool(x) for x in (args.tournament, args.linear, args.maximal))
    if modes > 1:
        raise InputError("choose at most one of --tournament, --linear, --maximal")
    if args.tournament:
        if args.m is None:
            raise InputError("--tournament needs --m")
        if c is not None:
            raise InputError("--constraint is not used with --tournament")
        q, kind = tournament_extension(r, args.m, reflex), "tournament"
    elif args.linear:
        q, kind = linear_extension(r, c, reflex), "linear"
    elif args.maximal:
        if c is not None:
            raise InputError("--constraint is not used with --maximal")
        q, kind = extension_with_maximal(r, args.maximal, reflex), "maximal-preserving"
    else:
        q, kind = ordering_extension(r, c, reflex), "ordering"
    body = {
        "kind": kind,
        "pairs": _pairs(q, diagonal=False),
        "relation": relation_to_dict(q),
        "properties": classify(q).as_dict(),
    }
    return Outcome(body, True, _listing(q, diagonal=False))


def cmd_extensions(args) -> Outcome:
    r = _load_relation(args.file)
    family = flavor_family(r, args.flavor, args.cap)
    body = {
        "flavor": args.flavor,
        "count": len(family),
        "members": [_pairs(q, diagonal=False) for q in family],
    }
    lines = [f"{len(family)} {args.flavor} extension(s)"]
    lines += [" ".join(_listing(q, diagonal=False)) or "(diagonal only)" for q in family]
    return Outcome(body, True, lines)


def cmd_realize(args) -> Outcome:
    r = _load_relation(args.file)
    m = args.m if args.m is not None else 1
    rep = verify_intersection_theorem(r, args.flavor, m, args.cap)
    lines = [f"{args.flavor}: {rep.status} over {rep.family_size} extension(s)"]
    if rep.witness:
        lines.append(f"first difference: {tuple(rep.witness['pair'])} ({rep.witness['side']})")
    return Outcome(rep.as_dict(), rep.status == "equal", lines)


def cmd_dimension(args) -> Outcome:
    r = _load_relation(args.file)
    res = dimension(r, args.cap or 8)
    members = [_pairs(q, diagonal=False) for q in res.witness.members]
    body = {"dimension": res.k, "witness": members, "search_nodes": res.nodes}
    lines = [f"dimension {res.k}"] + [" ".join(_listing(q, diagonal=False)) for q in res.witness.members]
    return Outcome(body, True, lines)


def cmd_covers(args) -> Outcome:
    r = _load_relation(args.file)
    if args.pair is None:
        if args.against is not None:
            raise InputError("--against needs --pair")
        found = sorted(uncovered_pairs(r, args.cap or 8), key=lambda p: tuple(map(r.universe.index, p)))
        body = {"uncovered_pairs": [list(p) for p in found]}
        return Outcome(body, True, [f"({x},{y})" for x, y in found] or ["no uncovered pairs"])
    p = _label_pair(args.pair, "--pair")
    if args.against is None:
        raise InputError("--pair needs --against")
    q = _label_pair(args.against, "--against")
    for label in p + q:
        if label not in r.universe:
            raise InputError(f"unknown label {label!r}")
    try:
        result = covers(r, p, q, cap=args.cap or 8)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    body = {"pair": list(p), "against": list(q), "covers": result}
    return Outcome(body, True, [f"{p} covers {q}: {result}"])


def cmd_duggan(args) -> Outcome:
    r = _load_relation(args.file)
    if args.class_ == "compatible":
        cls = RelationClass.compatible_extensions(r)
    elif args.class_ == "all":
        cls = RelationClass.everything()
    else:
        members = [parse_relation(block) for block in _read(args.class_).split("\n---\n") if block.strip()]
        for q in members:
            if q.universe != r.universe:
                raise InputError("class members must use the relation's universe")
        cls = RelationClass.explicit(args.class_, members)
    rep = duggan_check(r, cls, cap=args.cap or 3)
    ok = not (rep.hypotheses_hold and rep.conclusion == "unequal")
    lines = [
        f"closed upward: {rep.closed_upward}",
        f"arc-receptive: {rep.arc_receptive}",
        f"closure in class: {rep.closure_in_class}",
        f"conclusion: {rep.conclusion}",
    ]
    return Outcome(rep.as_dict(), ok, lines)


def cmd_game(args) -> Outcome:
    game = parse_game(_read(args.file))
    strict = not args.weak
    ne = nash_equilibria(game, strict=strict)
    body = {"equilibria": [profile_label(p) for p in ne]}
    lines = ["equilibria: " + (" ".join(profile_label(p) for p in ne) or "none")]
    ok = True
    if not args.no_completions:
        rep = completion_union_check(game, args.cap or 3**12, args.samples, args.seed)
        body["completion_union"] = rep.as_dict()
        ok = rep.equal
        lines.append(f"completion union ({rep.mode}, {rep.completions_checked} checked): "
                     + ("equal" if rep.equal else "differs"))
    return Outcome(body, ok, lines)


def cmd_harness(args) -> Outcome:
    scopes = SCOPES if args.scope == "all" else (args.scope,)
    reports = {s: conjecture_harness(s, None, args.max_n, args.sample_n4, args.seed) for s in scopes}
    found = any(rep["counterexample_count"] for rep in reports.values())
    lines = [
        f"{s}: {rep['verdict']} ({rep['counterexample_count']} of {rep['relations_checked']}, "
        f"{rep['relations_in_scope']} in scope)"
        for s, rep in reports.items()
    ]
    return Outcome({"scopes": reports}, not found, lines)


COMMANDS = {
    "analyze": cmd_analyze,
    "closure": cmd_closure,
    "extend": cmd_extend,
    "extensions": cmd_extensions,
    "realize": cmd_realize,
    "dimension": cmd_dimension,
    "covers": cmd_covers,
    "duggan": cmd_duggan,
    "game": cmd_game,
    "harness": cmd_harness,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cap", type=int, default=None, help="enumeration size bound")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    common.add_argument("-m", "--m", type=_order, default=None, help="power order (integer or 'omega')")
    common.add_argument(
        "--no-reflexivize", action="store_true", help="do not add the diagonal before extending"
    )

    parser = argparse.ArgumentParser(prog="ordex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_file(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="relation file, or '-' for stdin")
        return p

    with_file("analyze", "properties, consistency levels, maximal elements")
    with_file("closure", "transitive closure, or the m-th power with --m")
    p = with_file("extend", "construct one extension")
    p.add_argument("--constraint", help="relation file giving the subset Y and its ordering T")
    p.add_argument("--tournament", action="store_true", help="complete extension from the m-th power")
    p.add_argument("--linear", action="store_true", help="linear extension")
    p.add_argument("--maximal", metavar="X", help="linear extension keeping X maximal")
    for name, help_ in (("extensions", "enumerate an extension family"),
                        ("realize", "check an intersection theorem")):
        p = with_file(name, help_)
        p.add_argument("--flavor", choices=FLAVORS, default="ordering")
    with_file("dimension", "exact dimension with a witness realizer")
    p = with_file("covers", "covers relation between incomparable pairs")
    p.add_argument("--pair", help="x,y")
    p.add_argument("--against", help="u,v")
    p = with_file("duggan", "finite check of the compatible-extension hypotheses")
    p.add_argument("--class", dest="class_", default="compatible",
                   help="'compatible', 'all', or a file of relations separated by '---' lines")
    p = sub.add_parser("game", parents=[common], help="Nash equilibria and completions")
    p.add_argument("file")
    p.add_argument("--weak", action="store_true", help="deviations judged by the whole relation")
    p.add_argument("--samples", type=int, default=200, help="random completions in partial mode")
    p.add_argument("--no-completions", action="store_true", help="only list equilibria")
    p = sub.add_parser("harness", parents=[common], help="counterexample sweeps")
    p.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--sample-n4", type=int, default=0)
    return parser


def _echo(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in ("json",):
            continue
        if value is OMEGA:
            value = "omega"
        out[key.rstrip("_")] = value
    return out


def _conventions(args) -> dict:
    return {
        "pair_reading": "(x, y) means x is at least as good as y",
        "reflexivize": not args.no_reflexivize and args.verb not in ("analyze",),
        "diagonal_in_listings": args.verb not in ("extend", "extensions", "dimension"),
        "nash_deviation": "whole relation" if getattr(args, "weak", False) else "strict part",
    }


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = {"schema": SCHEMA, "command": args.verb, "input": _echo(args), "conventions": _conventions(args)}
    try:
        outcome = COMMANDS[args.verb](args)
    except (InputError, ConstraintError) as exc:
        return _fail(out, args, report, "input-error", str(exc), 2, getattr(exc, "pair", None))
    except KeyError as exc:
        return _fail(out, args, report, "input-error", f"unknown label {exc.args[0]!r}", 2)
    except CapExceeded as exc:
        return _fail(out, args, report, "input-error", str(exc), 2)
    except PreconditionFailed as exc:
        return _fail(out, args, report, "precondition-failed", str(exc), 1, exc.witness)
    report.update(status="ok" if outcome.ok else "claim-fails", result=outcome.body)
    if args.json:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(outcome.lines) + "\n")
    return 0 if outcome.ok else 1


def _fail(out, args, report, status, message, code, witness=None) -> int:
    if args.json:
        report.update(status=status, error=message, witness=_plain(witness))
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"ordex: {message}\n")
    return code


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
