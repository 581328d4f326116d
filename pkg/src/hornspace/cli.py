"""Command-line front door for every engine operation and the service.

Exit codes: predicate commands (member, infer, equiv) exit 0 for true/equal
and 1 for false/unequal; 2 is a usage error; 3 an input or resource error;
4 an oracle cross-check divergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import closure, enumeration, minimize, oracle, resolution, simulate
from .model import (ElementSet, HornRule, HornspaceError, InputError, RuleSet,
                    dump_rules, load_rules, to_dimacs)
from .query import query_universe

ORACLE_LIMIT = 8


class OracleDivergence(HornspaceError):
    """The fast engine and the brute-force oracle disagreed."""


def _read_rules(path: str) -> RuleSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return load_rules(text)


def _parse_set(literal: str, rules: RuleSet) -> ElementSet:
    literal = literal.strip()
    if not literal:
        return ElementSet.empty(rules.n)
    by_label = {}
    if rules.labels is not None:
        by_label = {s: i for i, s in enumerate(rules.labels)}
    ids = []
    for token in literal.split(","):
        token = token.strip()
        if token in by_label:
            ids.append(by_label[token])
        else:
            try:
                ids.append(int(token))
            except ValueError:
                raise InputError(f"unknown element {token!r}")
    return ElementSet.of(ids, rules.n)


def _emit(payload: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload))
    else:
        print(text)


def _check_oracle_size(rules: RuleSet) -> None:
    if rules.n > ORACLE_LIMIT:
        raise InputError(f"--oracle cross-check supports n <= {ORACLE_LIMIT}, got {rules.n}")


def _diverge(what: str) -> None:
    raise OracleDivergence(f"oracle cross-check failed: {what}")


# -- subcommands ---------------------------------------------------------------

def _cmd_interior(args) -> int:
    rules = _read_rules(args.rules)
    xs = _parse_set(args.set, rules)
    result = closure.interior(rules, xs)
    if args.oracle:
        _check_oracle_size(rules)
        fam = oracle.brute_learning_family(rules)
        best = max((m for m in fam.masks if m & ~xs.mask == 0), key=lambda m: m.bit_count())
        if best != result.interior.mask:
            _diverge(f"interior of {xs}")
    _emit({"interior": list(result.interior), "order": list(result.addition_order)},
          args.json, f"{result.interior} order={list(result.addition_order)}")
    return 0


def _cmd_member(args) -> int:
    rules = _read_rules(args.rules)
    xs = _parse_set(args.set, rules)
    verdict = closure.is_member(rules, xs)
    if args.oracle:
        _check_oracle_size(rules)
        if verdict != (xs.mask in oracle.brute_learning_family(rules).masks):
            _diverge(f"membership of {xs}")
    _emit({"member": verdict}, args.json, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_infer(args) -> int:
    rules = _read_rules(args.rules)
    rule = HornRule(_parse_set(getattr(args, "if"), rules), int(args.then))
    verdict = closure.is_implicate(rules, rule)
    if args.oracle:
        _check_oracle_size(rules)
        if verdict != oracle.brute_implicate(oracle.brute_learning_family(rules), rule):
            _diverge(f"implicate status of {rule}")
    _emit({"implicate": verdict}, args.json, "true" if verdict else "false")
    return 0 if verdict else 1


def _cmd_enum(args) -> int:
    rules = _read_rules(args.rules)
    check = args.oracle
    if check:
        _check_oracle_size(rules)
    seen_masks: set[int] = set()
    emitted = []
    count = 0
    for xs in enumeration.enumerate_members(rules):
        count += 1
        if check:
            seen_masks.add(xs.mask)
        if not args.count and (args.limit is None or count <= args.limit):
            emitted.append(xs)
        if args.limit is not None and not args.count and not check and count >= args.limit:
            break
    if check and args.limit is None:
        if seen_masks != oracle.brute_learning_family(rules).masks:
            _diverge("enumerated members")
    if args.count:
        _emit({"count": count}, args.json, str(count))
    elif args.json:
        print(json.dumps({"members": [list(xs) for xs in emitted]}))
    else:
        for xs in emitted:
            print(",".join(str(i) for i in xs))
    return 0


def _cmd_critical(args) -> int:
    rules = _read_rules(args.rules)
    reduced = minimize.critical_rules(rules)
    if args.oracle:
        _check_oracle_size(rules)
        fam = oracle.brute_learning_family(rules)
        expect = {(c.carrier.mask, c.root) for c in oracle.brute_critical_circuits(fam)}
        got = {(r.rooted().carrier.mask, r.rooted().root) for r in reduced}
        if expect != got:
            _diverge("critical rules")
    text = dump_rules(reduced)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_equiv(args) -> int:
    first, second = _read_rules(args.first), _read_rules(args.second)
    verdict = minimize.same_antimatroid(first, second)
    if args.oracle:
        _check_oracle_size(first)
        brute = (oracle.brute_learning_family(first).masks
                 == oracle.brute_learning_family(second).masks)
        if verdict != brute:
            _diverge("rule-set equivalence")
    _emit({"equivalent": verdict}, args.json, "equal" if verdict else "different")
    return 0 if verdict else 1


def _cmd_implicates(args) -> int:
    rules = _read_rules(args.rules)
    out = (resolution.prime_implicates(rules, args.cap) if args.prime
           else resolution.nontrivial_implicates(rules, args.cap))
    sys.stdout.write(dump_rules(out))
    return 0


def _cmd_circuits(args) -> int:
    rules = _read_rules(args.rules)
    for rooted in resolution.circuits(rules, args.cap):
        print(f"{','.join(str(i) for i in rooted.carrier)} root={rooted.root}")
    return 0


def _cmd_export_cnf(args) -> int:
    rules = _read_rules(args.rules)
    text = to_dimacs(rules)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gen(args) -> int:
    rules = simulate.random_rule_set(args.n, args.m, (args.size_lo, args.size_hi), args.seed)
    text = dump_rules(rules)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_simulate(args) -> int:
    if args.target:
        target = _read_rules(args.target)
    elif args.random:
        n, m = (int(v) for v in args.random.split(","))
        target = simulate.random_rule_set(n, m, seed=args.seed)
    else:
        raise InputError("simulate needs --target FILE or --random N,M")
    result = simulate.run_simulation(target, args.mode, args.policy,
                                     criticalize=args.criticalize,
                                     proper_guard=args.proper_guard)
    stats = result.stats
    payload = {
        "mode": args.mode, "policy": args.policy, "seed": args.seed,
        "posed": stats.posed, "yes": stats.yes_count, "no": stats.no_count,
        "inferred_positive": stats.inferred_positive,
        "inferred_negative": stats.inferred_negative,
        "guard_rejected": stats.guard_rejected,
        "terminated": stats.terminated,
    }
    print(json.dumps(payload))
    if args.trace:
        for entry in result.trace:
            witness = f"  [witness {entry.witness}]" if entry.witness is not None else ""
            print(f"({entry.query.antecedent}, {entry.query.consequent})\t{entry.kind}{witness}")
    return 0


def _cmd_universe(args) -> int:
    for query in query_universe(args.n, args.policy):
        print(f"{','.join(str(i) for i in query.antecedent)};{query.consequent}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(args.data_dir, args.host, args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hornspace",
                                     description="Antimatroids from Horn rules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, oracle_flag=True):
        p.add_argument("--rules", required=True, help="rule file (line or JSON format)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if oracle_flag:
            p.add_argument("--oracle", action="store_true",
                           help=f"cross-check against the brute-force oracle (n <= {ORACLE_LIMIT})")

    p = sub.add_parser("interior", help="maximal member inside a given set")
    common(p)
    p.add_argument("--set", required=True, help="comma-separated ids or labels")
    p.set_defaults(func=_cmd_interior)

    p = sub.add_parser("member", help="membership test (exit 0 yes / 1 no)")
    common(p)
    p.add_argument("--set", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("infer", help="implicate test (exit 0 yes / 1 no)")
    common(p)
    p.add_argument("--if", required=True, help="antecedent, comma-separated (may be empty)")
    p.add_argument("--then", required=True, help="consequent element")
    p.set_defaults(func=_cmd_infer)

    p = sub.add_parser("enum", help="enumerate all members")
    common(p)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--count", action="store_true", help="print only the total")
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("critical", help="minimize to the critical rules")
    common(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("equiv", help="same antimatroid? (exit 0 equal / 1 different)")
    p.add_argument("first", help="rule file")
    p.add_argument("second", help="rule file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("implicates", help="all nontrivial implicates (resolution closure)")
    common(p, oracle_flag=False)
    p.add_argument("--prime", action="store_true", help="antecedent-minimal implicates only")
    p.add_argument("--cap", type=int, default=resolution.DEFAULT_CAP)
    p.set_defaults(func=_cmd_implicates)

    p = sub.add_parser("circuits", help="rooted-set images of the prime implicates")
    common(p, oracle_flag=False)
    p.add_argument("--cap", type=int, default=resolution.DEFAULT_CAP)
    p.set_defaults(func=_cmd_circuits)

    p = sub.add_parser("export-cnf", help="emit the rules as DIMACS Horn CNF")
    common(p, oracle_flag=False)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_export_cnf)

    p = sub.add_parser("gen", help="generate a random rule set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--size-lo", type=int, default=1)
    p.add_argument("--size-hi", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("simulate", help="simulated elicitation against an idealistic expert")
    p.add_argument("--target", default=None, help="target rule file")
    p.add_argument("--random", default=None, metavar="N,M",
                   help="generate the target instead (uses --seed)")
    p.add_argument("--mode", choices=["original", "revised"], default="revised")
    p.add_argument("--policy", choices=["asc", "desc"], default="asc")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--criticalize", action="store_true")
    p.add_argument("--proper-guard", action="store_true")
    p.add_argument("--trace", action="store_true", help="print the per-query classification")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("universe", help="list the query universe in policy order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--policy", choices=["asc", "desc"], default="asc")
    p.set_defaults(func=_cmd_universe)

    p = sub.add_parser("serve", help="run the interactive session service")
    p.add_argument("--data-dir", default=os.environ.get("HORNSPACE_DATA", "./sessions"))
    p.add_argument("--host", default=os.environ.get("HORNSPACE_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("HORNSPACE_PORT", "8000")))
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen" and args.size_hi is None:
            args.size_hi = max(1, args.n - 1)
        return args.func(args)
    except OracleDivergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except HornspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
