"""Batch command-line front end.

Exit codes: 0 success, 1 domain error (the error name is reported verbatim),
2 usage error.  All big numbers cross the boundary as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import formula, godel, ramsey, recfun
from .errors import DomainError


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    payload: str


class UsageError(Exception):
    pass


def _enum_cap():
    raw = os.environ.get("PEANO_FORGE_ENUM_CAP")
    if raw is None:
        return ramsey.DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PEANO_FORGE_ENUM_CAP must be an integer, got {raw!r}")


def _build_parser():
    p = argparse.ArgumentParser(
        prog="peano-forge",
        description="Workbench for the language of arithmetic: parsing, "
                    "Goedel coding, recursive-function evaluation, and finite "
                    "partition search.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("parse", help="parse a formula and print its AST")
    q.add_argument("text")
    q.add_argument("--json", action="store_true")

    q = sub.add_parser("encode", help="Goedel-encode a formula, seq, set, or partition")
    kinds = q.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("formula")
    k.add_argument("text")
    k = kinds.add_parser("seq")
    k.add_argument("elements", nargs="*", type=int)
    k = kinds.add_parser("set")
    k.add_argument("elements", nargs="+", type=int)
    k = kinds.add_parser("partition")
    k.add_argument("file")

    q = sub.add_parser("decode", help="decode a Goedel code")
    kinds = q.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("formula")
    k.add_argument("code")
    k = kinds.add_parser("seq")
    k.add_argument("code")
    k.add_argument("--json", action="store_true")
    k = kinds.add_parser("set")
    k.add_argument("code")
    k = kinds.add_parser("partition")
    k.add_argument("code")
    k.add_argument("m", type=int)
    k.add_argument("n", type=int)
    k.add_argument("r", type=int)

    q = sub.add_parser("pr-eval", help="evaluate a recursive-function definition file")
    q.add_argument("file")
    q.add_argument("args", nargs="*")
    q.add_argument("--fuel", type=int, default=1_000_000)

    for name in ("ramsey", "ph"):
        q = sub.add_parser(name, help=f"decide the {name} arrow relation")
        q.add_argument("--m", type=int)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--r", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--find-min", action="store_true")
        q.add_argument("--max-m", type=int)
        q.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        q.add_argument("--counterexample", metavar="FILE",
                       help="write the first counterexample partition here")

    q = sub.add_parser("check-homog", help="report homogeneity of a set for a partition file")
    q.add_argument("file")
    q.add_argument("elements", nargs="+", type=int)

    q = sub.add_parser("pair")
    q.add_argument("x")
    q.add_argument("y")

    q = sub.add_parser("unpair")
    q.add_argument("z")

    q = sub.add_parser("fastgrow", help="evaluate the fast-growing hierarchy")
    q.add_argument("n", type=int)
    q.add_argument("x", type=int)
    q.add_argument("--max-iterations", type=int,
                   default=ramsey.DEFAULT_FAST_BUDGET.max_iterations)
    q.add_argument("--max-bits", type=int,
                   default=ramsey.DEFAULT_FAST_BUDGET.max_result_bits)
    return p


def _nat(text):
    if not text.lstrip("-").isdigit() or text.startswith("-"):
        raise UsageError(f"expected a natural number, got {text!r}")
    return int(text)


def _cmd_parse(args):
    f = formula.parse(args.text)
    if args.json:
        return CommandResult(0, json.dumps(formula.to_json(f)) + "\n")
    return CommandResult(0, formula.ast_text(f) + "\n")


def _cmd_encode(args):
    if args.kind == "formula":
        code = godel.encode_formula(formula.parse(args.text))
        return CommandResult(0, f"{code}\n")
    if args.kind == "seq":
        return CommandResult(0, f"{godel.encode_seq(args.elements)}\n")
    if args.kind == "set":
        return CommandResult(0, f"{godel.encode_set(args.elements)}\n")
    P = ramsey.read_partition(args.file)
    return CommandResult(0, f"{ramsey.encode_partition(P)}\n")


def _cmd_decode(args):
    code = _nat(args.code)
    if args.kind == "formula":
        return CommandResult(0, formula.render(godel.decode_formula(code)) + "\n")
    if args.kind == "seq":
        elements = godel.decode_seq(code)
        if args.json:
            doc = {"code": str(code), "elements": elements}
            return CommandResult(0, json.dumps(doc) + "\n")
        return CommandResult(0, " ".join(str(x) for x in elements) + "\n")
    if args.kind == "set":
        elements = godel.decode_set(code)
        return CommandResult(0, " ".join(str(x) for x in elements) + "\n")
    P = ramsey.decode_partition(code, args.m, args.n, args.r)
    return CommandResult(0, ramsey.partition_to_text(P))


def _cmd_pr_eval(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        d = recfun.parse_def(fh.read())
    values = [_nat(a) for a in args.args]
    outcome = recfun.eval_def(d, values, args.fuel)
    if isinstance(outcome, recfun.Value):
        return CommandResult(0, f"{outcome.value}\n")
    return CommandResult(1, "budget-exhausted\n")


def _cmd_arrow(args, large):
    if args.n > args.k:
        raise UsageError(f"need n <= k, got n={args.n}, k={args.k}")
    cap = _enum_cap()
    if args.find_min:
        if args.max_m is None:
            raise UsageError("--find-min needs --max-m")
        m = ramsey.min_witness(args.k, args.r, args.n,
                               relation="ph" if large else "ramsey",
                               max_m=args.max_m, jobs=args.jobs, cap=cap)
        return CommandResult(0, ("none" if m is None else str(m)) + "\n")
    if args.m is None:
        raise UsageError("give --m, or --find-min with --max-m")
    cex = ramsey.find_counterexample(args.m, args.k, args.r, args.n,
                                     large=large, jobs=args.jobs, cap=cap)
    if cex is None:
        return CommandResult(0, "true\n")
    if args.counterexample:
        ramsey.write_partition(cex, args.counterexample)
    return CommandResult(0, "false\n")


def _cmd_check_homog(args):
    P = ramsey.read_partition(args.file)
    H = tuple(args.elements)
    homogeneous = ramsey.is_homogeneous(P, H)
    color = P.color(H[: P.n]) if homogeneous else None
    doc = {
        "set": list(H),
        "size": len(H),
        "homogeneous": homogeneous,
        "color": color,
        "relatively_large": ramsey.is_relatively_large(H),
    }
    return CommandResult(0, json.dumps(doc) + "\n")


def _cmd_fastgrow(args):
    budget = ramsey.FastGrowingBudget(max_result_bits=args.max_bits,
                                      max_iterations=args.max_iterations)
    return CommandResult(0, f"{ramsey.fast_growing(args.n, args.x, budget)}\n")


def _dispatch(args):
    cmd = args.command
    if cmd == "parse":
        return _cmd_parse(args)
    if cmd == "encode":
        return _cmd_encode(args)
    if cmd == "decode":
        return _cmd_decode(args)
    if cmd == "pr-eval":
        return _cmd_pr_eval(args)
    if cmd == "ramsey":
        return _cmd_arrow(args, large=False)
    if cmd == "ph":
        return _cmd_arrow(args, large=True)
    if cmd == "check-homog":
        return _cmd_check_homog(args)
    if cmd == "pair":
        return CommandResult(0, f"{godel.pair(_nat(args.x), _nat(args.y))}\n")
    if cmd == "unpair":
        x, y = godel.unpair(_nat(args.z))
        return CommandResult(0, f"{x} {y}\n")
    if cmd == "fastgrow":
        return _cmd_fastgrow(args)
    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        result = _dispatch(args)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(result.payload)
    return result.exit_code


def run():
    raise SystemExit(main())
