"""Command-line interface: ``nilcap <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import capability as cap
from . import grouptools as gt
from .basiccomm import basics_json, enumerate_basic, format_tree
from .collector import free_group
from .nilprod import CapExceeded, GroupSpec, RegimeError, make_group
from .suites import SUITES, SuiteConfig, run_suite
from .words import ParseError


class ComputationError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)


def _group(args):
    regime = "special_2_3" if args.regime in ("special23", "special_2_3") else args.regime
    spec = GroupSpec(args.class_k, tuple(args.orders), regime)
    return make_group(spec)


def _element_json(g, x) -> dict:
    return {"exponents": list(x.exps), "basis": list(g.labels)}


def _element_text(g, x) -> str:
    return g.format(x) or "e"


def _order_text(n: int) -> str:
    return str(n) if n else "infinite"


# -- commands -------------------------------------------------------------------------------


def cmd_basics(args) -> int:
    if args.format == "json":
        print(basics_json(args.gens, args.class_k))
    else:
        for i, c in enumerate(enumerate_basic(args.gens, args.class_k), start=1):
            print(f"{i}\t{c.weight}\t{format_tree(c)}")
    return 0


def cmd_collect(args) -> int:
    f = free_group(args.gens, args.class_k)
    x = f.collect(args.word)
    payload = {"exponents": {format_tree(c): e for c, e in zip(f.basis, x.exps)}}
    _emit(args, payload, str(x))
    return 0


def cmd_arith(args) -> int:
    g = _group(args)
    lhs = g.parse(args.lhs)
    if args.command == "mul":
        x = g.mul(lhs, g.parse(args.rhs))
    elif args.command == "comm":
        x = g.comm(lhs, g.parse(args.rhs))
    else:
        x = g.pow(lhs, args.exp)
    _emit(args, _element_json(g, x), _element_text(g, x))
    return 0


def cmd_order(args) -> int:
    g = _group(args)
    payload = {"group_order": g.order if g.finite else "infinite"}
    text = f"group order: {_order_text(g.order)}"
    if args.lhs is not None:
        n = g.element_order(g.parse(args.lhs))
        payload["element_order"] = n if n else "infinite"
        text += f"\nelement order: {_order_text(n)}"
    _emit(args, payload, text)
    return 0


def cmd_center(args) -> int:
    g = _group(args)
    if not g.finite:
        raise ComputationError("the center needs a finite group")
    try:
        sub = gt.center_formula(g, args.cap)
        method = "formula"
    except gt.NoClosedForm:
        sub = gt.center_bruteforce(g, args.cap)
        method = "bruteforce"
    verified = None
    if args.verify_brute:
        verified = gt.center_bruteforce(g, args.cap).elements == sub.elements
    gens = [_element_text(g, x) for x in sub.generators]
    payload = {"method": method, "generators": gens, "order": sub.order, "group_order": g.order,
               "verified": verified}
    text = f"center ({method}): order {sub.order} of {g.order}\ngenerators: {', '.join(gens) or 'e'}"
    if verified is not None:
        text += f"\nbrute-force agreement: {verified}"
    _emit(args, payload, text)
    return 0 if verified in (None, True) else 1


def cmd_lcs(args) -> int:
    g = _group(args)
    term = gt.lower_central(g, args.term, args.cap)
    if g.trees is not None:
        gens = [s for s, w in zip(g.labels, g.weights) if w >= args.term]
    else:
        gens = [_element_text(g, x) for x in term.generators]
    payload = {"term": args.term, "generators": gens, "order": term.order, "group_order": g.order}
    _emit(args, payload, f"G_{args.term}: order {term.order}\ngenerators: {', '.join(gens) or 'e'}")
    return 0


def cmd_quotient(args) -> int:
    g = _group(args)
    kernel_gens = [g.parse(s) for s in args.kernel.split(";") if s.strip()]
    kernel = gt.normal_closure(g, kernel_gens, args.cap)
    q = gt.QuotientGroup(g, kernel, args.cap)
    payload = {
        "kernel_generators": [_element_text(g, x) for x in kernel_gens],
        "kernel_order": kernel.order,
        "quotient_order": q.order,
        "quotient_class": gt.nilpotency_class(q, args.cap),
    }
    text = (
        f"kernel order {kernel.order}, quotient order {q.order}, "
        f"quotient class {payload['quotient_class']}"
    )
    _emit(args, payload, text)
    return 0


def _target_and_verdict(args):
    if args.kind == "nilprod":
        orders = tuple(args.prime**a for a in args.alphas)
        spec = GroupSpec(args.class_k, orders, "abelian" if args.class_k == 1 else "generic")
        verdict = cap.capable_nilprod(spec)
        target = cap.abelian_target(orders) if args.class_k == 1 else spec
    elif args.kind == "abelian":
        verdict = cap.baer_abelian(args.orders)
        target = cap.abelian_target(args.orders)
    else:
        target = cap.Class2Presentation(args.p, args.alpha, args.beta, args.gamma, args.sigma)
        verdict = cap.capable_class2_2gen(target)
    return target, verdict


def _verdict_text(verdict, verified) -> str:
    lines = [f"decision: {verdict.decision.value}", f"reason: {verdict.reason}", f"citation: {verdict.citation}"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness.describe()}")
        if verdict.heuristic:
            lines.append("witness status: heuristic construction, check with --verify")
    if verified is not None:
        lines.append(f"verified: {verified}")
    return "\n".join(lines)


def cmd_capable(args) -> int:
    target, verdict = _target_and_verdict(args)
    verified = None
    if args.verify and verdict.witness is not None:
        verified = cap.verify_witness(target, verdict, args.cap)
    _emit(args, verdict.to_json(verified), _verdict_text(verdict, verified))
    return 0 if verified in (None, True) else 1


def cmd_witness(args) -> int:
    target, verdict = _target_and_verdict(args)
    if verdict.witness is None:
        raise ComputationError(f"no witness: the verdict is {verdict.decision.value}")
    h = cap.build_witness(verdict.witness, gt.DEFAULT_CAP)
    verified = cap.verify_witness(target, verdict, args.cap)
    payload = {"witness": verdict.witness.to_json(), "description": verdict.witness.describe(),
               "witness_order": h.order, "verified": verified}
    text = f"witness: {verdict.witness.describe()}\nwitness order: {h.order}\nverified: {verified}"
    _emit(args, payload, text)
    return 0 if verified else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = SuiteConfig(seed=args.seed, cap=args.cap, max_order=args.max_order, samples=args.samples)
    reports = [run_suite(name, cfg) for name in names]
    if args.format == "json":
        docs = [r.to_json(args.timing) for r in reports]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, separators=(",", ":")))
    else:
        for r in reports:
            print(f"suite {r.name}: {r.header}")
            print(f"seed {r.seed}; {r.cases} cases; {len(r.failures)} failures; {r.wall_time:.2f}s")
            for fail in sorted(r.failures, key=lambda f: f["case"]):
                print(f"  FAIL {fail['case']}: expected {fail['expected']}, got {fail['actual']}")
    return 0 if all(r.ok for r in reports) else 1


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("NILCAP_FORMAT", "text")
    if default_format not in ("text", "json"):
        default_format = "text"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=default_format)
    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--class", dest="class_k", type=int, required=True)
    group.add_argument("--orders", type=_ints, required=True)
    group.add_argument("--regime", choices=("generic", "special23", "special_2_3"), default="generic")
    capflag = argparse.ArgumentParser(add_help=False)
    capflag.add_argument("--cap", type=int, default=gt.DEFAULT_CAP)
    # Witness checks switch from brute force to the layered center above this size.
    witness_cap = argparse.ArgumentParser(add_help=False)
    witness_cap.add_argument("--cap", type=int, default=cap.BRUTE_CAP)

    parser = argparse.ArgumentParser(prog="nilcap", description="Computations in nilpotent products of cyclic groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basics", parents=[common], help="list basic commutators")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--class", dest="class_k", type=int, required=True)
    p.set_defaults(func=cmd_basics)

    p = sub.add_parser("collect", parents=[common], help="collect a word in the free nilpotent group")
    p.add_argument("--gens", type=int, required=True)
    p.add_argument("--class", dest="class_k", type=int, required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_collect)

    for name in ("mul", "comm"):
        p = sub.add_parser(name, parents=[common, group], help=f"{name} of two elements")
        p.add_argument("--lhs", default="e")
        p.add_argument("--rhs", default="e")
        p.set_defaults(func=cmd_arith)
    p = sub.add_parser("pow", parents=[common, group], help="power of an element")
    p.add_argument("--lhs", default="e")
    p.add_argument("--exp", type=int, required=True)
    p.set_defaults(func=cmd_arith)
    p = sub.add_parser("order", parents=[common, group], help="group order, or element order with --lhs")
    p.add_argument("--lhs")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("center", parents=[common, group, capflag], help="center of the group")
    p.add_argument("--verify-brute", action="store_true")
    p.set_defaults(func=cmd_center)
    p = sub.add_parser("lcs", parents=[common, group, capflag], help="lower central term G_i")
    p.add_argument("--term", type=int, required=True)
    p.set_defaults(func=cmd_lcs)
    p = sub.add_parser("quotient", parents=[common, group, capflag], help="quotient by a normal closure")
    p.add_argument("--kernel", required=True, help='expressions separated by ";"')
    p.set_defaults(func=cmd_quotient)

    for name, func in (("capable", cmd_capable), ("witness", cmd_witness)):
        p = sub.add_parser(name, help=f"{name} decision" if name == "capable" else "build and verify a witness")
        kinds = p.add_subparsers(dest="kind", required=True)
        k = kinds.add_parser("nilprod", parents=[common, witness_cap])
        k.add_argument("--class", dest="class_k", type=int, required=True)
        k.add_argument("--prime", type=int, required=True)
        k.add_argument("--alphas", type=_ints, required=True)
        k = kinds.add_parser("abelian", parents=[common, witness_cap])
        k.add_argument("--orders", type=_ints, required=True)
        k = kinds.add_parser("class2", parents=[common, witness_cap])
        for flag in ("--p", "--alpha", "--beta", "--gamma", "--sigma"):
            k.add_argument(flag, type=int, required=True)
        for k in kinds.choices.values():
            k.set_defaults(func=func)
            if name == "capable":
                k.add_argument("--verify", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=gt.DEFAULT_CAP)
    p.add_argument("--max-order", type=int, default=3**8)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--timing", action="store_true", help="include wall time in JSON output")
    p.set_defaults(func=cmd_verify)
    return parser


def _fail(args, code: int, kind: str, message: str) -> int:
    if getattr(args, "format", "text") == "json":
        print(json.dumps({"error": kind, "message": message}, separators=(",", ":")))
    else:
        print(f"error ({kind}): {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RegimeError as exc:
        return _fail(args, 3, "regime", str(exc))
    except CapExceeded as exc:
        return _fail(args, 3, "cap-exceeded", str(exc))
    except (gt.NoClosedForm, gt.NotCentral, gt.LowerCentralMismatch, ComputationError, ArithmeticError) as exc:
        return _fail(args, 3, "computation", str(exc))
    except ParseError as exc:
        return _fail(args, 2, "parse", str(exc))
    except ValueError as exc:
        return _fail(args, 2, "usage", str(exc))


if __name__ == "__main__":
    sys.exit(main())
