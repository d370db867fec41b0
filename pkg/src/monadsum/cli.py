"""Command-line front end.

Subcommands build coproducts, run law suites, trace chains, inspect
complements and closures, consult the advisor and enumerate terms.
Reports are plain text or JSON; with a fixed seed the output is
byte-identical across runs.  Exit codes: 0 all checks pass, 1 a check
failed, 2 usage error, 3 undecided (no convergence within budget).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import advisor, coproduct, freemonad, layered, trnkova
from .complement import complement, minimal_support
from .errors import EngineError, NoConvergence
from .finset import Atom, FinSet, show_label
from .monad import (MonadSpec, builtin, check_laws, classify_consistency,
                    preserves_injections, probe_sets)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


class UsageError(Exception):
    pass


def parse_monad(spec: str):
    """name[:param]; param is a size or a comma list of labels."""
    name, _, param = spec.partition(":")
    arg = None
    if param:
        items = param.split(",")
        if len(items) == 1 and items[0].isdigit():
            arg = int(items[0])
        else:
            arg = FinSet(Atom(s) for s in items)
    if name == "pA":
        if not param:
            raise UsageError("pA needs a cardinal list, e.g. pA:1,3")
        return builtin("pA", tuple(int(s) for s in param.split(",")))
    try:
        return builtin(name, arg)
    except EngineError as exc:
        raise UsageError(str(exc)) from exc


def parse_base(spec: str) -> FinSet:
    if spec.isdigit():
        return FinSet(Atom(f"a{i}") for i in range(int(spec)))
    return FinSet(Atom(s) for s in spec.split(",")) if spec else FinSet()

_PROFILES = {
    "no-fixpoints": advisor.NO_FIXPOINTS,
    "exceptional": advisor.EXCEPTIONAL,
    "finitary": advisor.FINITARY,
    "inconsistent": advisor.INCONSISTENT,
}


def parse_profile(spec: str):
    if spec in _PROFILES:
        return _PROFILES[spec]
    if spec == "class:powers":
        return advisor.powers_beyond()
    if spec.startswith("class:e2:"):
        family = spec.removeprefix("class:e2:")
        complemented = family.startswith("~")
        return advisor.interval_class(family.lstrip("~"), complemented)
    built = advisor.builtin_profile(spec)
    if built is not None:
        return built
    raise UsageError(f"unknown profile {spec!r}")


def _law_rows(report) -> list[dict]:
    return [{"rule": c.law, "probe": c.probe, "checked": c.checked,
             "status": "pass" if c.ok else "fail",
             **({"witness": c.witness} if c.witness else {})}
            for c in report.checks]


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    print(f"== {doc['command']} ==")
    for key, val in doc.items():
        if key in ("command", "checks"):
            continue
        print(f"{key}: {val}")
    for row in doc.get("checks", []):
        status = row["status"].upper()
        extra = f"  [{row['witness']}]" if "witness" in row else ""
        print(f"  {status:4} {row['rule']} ({row['probe']}, "
              f"n={row['checked']}){extra}")


def _doc_status(doc: dict) -> int:
    bad = any(r["status"] == "fail" for r in doc.get("checks", []))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_laws(args) -> int:
    S = parse_monad(args.monad)
    probes = probe_sets(args.probes)
    report = check_laws(S, probes, samples=args.samples, seed=args.seed)
    doc = {"command": "laws", "monad": S.name,
           "consistency": classify_consistency(S) if S.is_monad else "n/a",
           "preserves_injections": preserves_injections(S, probes,
                                                        seed=args.seed)
           if S.is_monad else "n/a",
           "checks": _law_rows(report)}
    _emit(doc, args.format)
    return _doc_status(doc)


def cmd_complement(args) -> int:
    S = parse_monad(args.monad)
    A = parse_base(args.base)
    view = complement(S)
    carrier = view.carrier_at(A)
    supports = {show_label(s): str(minimal_support(S, A, s))
                for s in carrier}
    partition_ok = carrier.size + A.size == S.carrier(A).size
    doc = {"command": "complement", "monad": S.name, "base": str(A),
           "carrier": str(carrier), "size": carrier.size,
           "supports": supports,
           "checks": [{"rule": "complement.partition", "probe": str(A),
                       "checked": carrier.size,
                       "status": "pass" if partition_ok else "fail"}]}
    _emit(doc, args.format)
    return _doc_status(doc)


def cmd_chain(args) -> int:
    from .chains import Diverged, run_chain, two_sort_system

    S = parse_monad(args.left)
    T = parse_monad(args.right)
    A = parse_base(args.base)
    system = two_sort_system(complement(S), complement(T), A)
    out = run_chain(system, budget=args.budget,
                    max_carrier=args.max_carrier)
    if isinstance(out, Diverged):
        doc = {"command": "chain", "left": S.name, "right": T.name,
               "base": str(A), "outcome": "diverged", "reason": out.reason,
               "trace": [list(t) for t in out.trace]}
        _emit(doc, args.format)
        return EXIT_UNDECIDED
    doc = {"command": "chain", "left": S.name, "right": T.name,
           "base": str(A), "outcome": "converged",
           "converged_at": out.converged_at,
           "trace": [[c.size for c in st] for st in out.stages],
           "carriers": [str(c) for c in out.carriers]}
    _emit(doc, args.format)
    return EXIT_OK


def cmd_coprod(args) -> int:
    S = parse_monad(args.left)
    T = parse_monad(args.right)
    A = parse_base(args.base)
    cm = coproduct.CoproductMonad(S, T, budget=args.budget,
                                  max_carrier=args.max_carrier)
    special = coproduct.special_cases(S, T)
    checks = []
    doc = {"command": "coprod", "left": S.name, "right": T.name,
           "base": str(A)}
    try:
        bld = cm.at(A)
    except NoConvergence as exc:
        doc.update(outcome="undecided", trace=[list(t) for t in exc.trace],
                   advisor=exc.verdict or advisor.UNKNOWN)
        if special is not None:
            doc["special_case"] = special.name
        _emit(doc, args.format)
        return EXIT_UNDECIDED

    doc.update(outcome="converged", carrier=str(bld.carrier),
               size=bld.carrier.size,
               stage_sizes=[[c.size for c in st] for st in bld.sol.stages])
    suite = coproduct.coproduct_law_suite(cm, [A], samples=args.samples,
                                          seed=args.seed)
    checks.extend(_law_rows(suite))
    emb = coproduct.embeddings(bld)
    checks.append({"rule": "coproduct.embeddings-injective", "probe": str(A),
                   "checked": 2,
                   "status": "pass" if emb.inl.is_injective()
                   and emb.inr.is_injective() else "fail"})
    ET = T.cache.get("exception_set")
    if ET is not None and not T.cache.get("zero_at_empty"):
        rep = coproduct.canonical_compare(cm, S, ET, A)
        checks.append({"rule": "coproduct.oracle-agreement", "probe": str(A),
                       "checked": rep.mult_checked + bld.carrier.size,
                       "status": "pass" if rep.ok else "fail",
                       **({"witness": "; ".join(rep.notes)}
                          if rep.notes else {})})
    doc["checks"] = checks
    _emit(doc, args.format)
    return _doc_status(doc)


def cmd_closure(args) -> int:
    S = parse_monad(args.monad)
    res = trnkova.closure_at_empty(S)
    doc = {"command": "closure", "monad": S.name,
           "value_at_empty": str(res.value_at_empty),
           "classification": res.classification, "checks": []}
    if S.is_monad:
        closed = trnkova.monad_closure(S)
        rep = check_laws(closed, probe_sets(2), samples=args.samples,
                         seed=args.seed)
        doc["closure_monad"] = closed.name
        doc["checks"] = _law_rows(rep)
    _emit(doc, args.format)
    return _doc_status(doc)


def cmd_classify(args) -> int:
    S = parse_monad(args.monad)
    doc = {"command": "classify", "monad": S.name,
           "consistency": classify_consistency(S),
           "closure": trnkova.classify(S), "checks": []}
    _emit(doc, args.format)
    return EXIT_OK


def cmd_advise(args) -> int:
    profiles = [parse_profile(p) for p in args.profiles]
    if len(profiles) == 2:
        verdict = advisor.coproduct_exists(*profiles)
    else:
        verdict = advisor.family_exists(profiles)
    doc = {"command": "advise",
           "profiles": [p.kind for p in profiles],
           "verdict": verdict, "checks": []}
    _emit(doc, args.format)
    return EXIT_OK if verdict != advisor.UNKNOWN else EXIT_UNDECIDED


def cmd_terms(args) -> int:
    S = parse_monad(args.left)
    T = parse_monad(args.right)
    A = parse_base(args.base)
    ta = layered.term_algebra(S, T)
    terms = ta.enumerate(A, args.depth)
    doc = {"command": "terms", "left": S.name, "right": T.name,
           "base": str(A), "depth": args.depth, "count": len(terms),
           "terms": [layered.pretty(t) for t in terms], "checks": []}
    if args.format == "json":
        _emit(doc, "json")
    else:
        print(f"== terms == {S.name} (+) {T.name} over {A}, "
              f"depth {args.depth}: {len(terms)}")
        for t in terms:
            print(layered.pretty(t))
    return EXIT_OK


def cmd_free(args) -> int:
    ops = []
    if args.signature:
        for item in args.signature.split(","):
            name, _, ar = item.partition("/")
            if not ar.isdigit():
                raise UsageError(f"bad signature item {item!r}")
            ops.append((name, int(ar)))
    sig = freemonad.signature(*ops)
    A = parse_base(args.base)
    rep = freemonad.verify_barr(sig, A, args.depth)
    counts = freemonad.catalan_counts(sig, A, min(args.depth + 1, 6))
    doc = {"command": "free", "signature": args.signature or "(empty)",
           "base": str(A), "counts_by_size": counts,
           "checks": [{"rule": "free.carrier-recursion",
                       "probe": f"depth<={args.depth}",
                       "checked": sum(r[1] for r in rep.depths),
                       "status": "pass" if rep.ok else "fail"}]}
    _emit(doc, args.format)
    return _doc_status(doc)


def make_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="monadsum",
        description="coproducts of computable monads on finite sets")
    top.add_argument("--format", choices=("text", "json"), default="text")
    top.add_argument("--seed", type=int, default=0)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, base=True):
        p.add_argument("--budget", type=int, default=24)
        p.add_argument("--max-carrier", type=int, default=300_000,
                       dest="max_carrier")
        p.add_argument("--samples", type=int, default=100)
        if base:
            p.add_argument("--base", default="1",
                           help="base-set size or comma list of labels")

    p = sub.add_parser("coprod", help="build a coproduct and check it")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    common(p)
    p.set_defaults(fn=cmd_coprod)

    p = sub.add_parser("laws", help="monad law suite on probe sets")
    p.add_argument("monad")
    p.add_argument("--probes", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("complement", help="unit complement at a base set")
    p.add_argument("monad")
    p.add_argument("--base", default="2")
    p.set_defaults(fn=cmd_complement)

    p = sub.add_parser("chain", help="stage trace of the two-sort system")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    common(p)
    p.set_defaults(fn=cmd_chain)

    p = sub.add_parser("closure", help="repair at the empty set")
    p.add_argument("monad")
    p.add_argument("--samples", type=int, default=60)
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("classify", help="consistency and closure class")
    p.add_argument("monad")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("advise", help="existence verdict from profiles")
    p.add_argument("profiles", nargs="+",
                   help="no-fixpoints | exceptional | finitary | "
                        "inconsistent | class:powers | class:e2:F | "
                        "a builtin name")
    p.set_defaults(fn=cmd_advise)

    p = sub.add_parser("terms", help="enumerate layered terms")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--base", default="1")
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(fn=cmd_terms)

    p = sub.add_parser("free", help="free-monad term tools")
    p.add_argument("--signature", default="",
                   help="comma list name/arity, e.g. f/2,c/0")
    p.add_argument("--base", default="1")
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(fn=cmd_free)
    return top


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoConvergence as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except EngineError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
