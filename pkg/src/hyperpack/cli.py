"""Command-line front end.

Exit codes: 0 success, 2 infeasible (or violated condition), 1 error.
Documents go to standard output and diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .documents import Instance, Solution, certificate_of, dump_instance, dump_solution, load_instance, load_solution
from .engine import solve
from .errors import ContractError, InputError, SizeLimitError
from .generate import GenParams, generate
from .hypercore import check_rooted
from .verify import Mode, condition_verdict, validate_packing

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2
MODES = ["spanning", "kkt", "reachability", "matroid-based", "matroid-reachability"]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _instance(path: str) -> Instance:
    try:
        inst = load_instance(_read(path))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
    rc = check_rooted(inst.hypergraph)
    if not rc.rooted:
        raise InputError(f"{path}: root {rc.root!r} violates rootedness at element {rc.element!r}")
    return inst


def _matroid_for(inst: Instance, mode: Mode):
    return inst.matroid if mode.uses_matroid else None


def cmd_solve(args) -> int:
    inst = _instance(args.instance)
    mode = Mode.parse(args.mode)
    M = _matroid_for(inst, mode)
    packing = solve(inst.hypergraph, M, inst.weights, mode)
    if packing is not None:
        sol = Solution("optimal", mode, packing, packing.weight(inst.weights))
        sys.stdout.write(dump_solution(sol))
        return EXIT_OK
    certificate = None
    if args.certificate:
        try:
            certificate = certificate_of(condition_verdict(inst.hypergraph, M, mode, cap=args.cap))
        except SizeLimitError as exc:
            print(f"no certificate: {exc}", file=sys.stderr)
        else:
            if certificate is None:
                raise ContractError("solver reported infeasible but the condition holds")
    sys.stdout.write(dump_solution(Solution("infeasible", mode, certificate=certificate)))
    return EXIT_INFEASIBLE


def cmd_validate(args) -> int:
    inst = _instance(args.instance)
    sol = load_solution(_read(args.solution))
    mode = Mode.parse(args.mode) if args.mode else sol.mode
    if sol.packing is None:
        print("solution carries no packing", file=sys.stderr)
        return EXIT_ERROR
    problems = validate_packing(inst.hypergraph, _matroid_for(inst, mode), sol.packing, mode)
    if sol.weight is not None and sol.packing.weight(inst.weights) != sol.weight:
        problems.append(f"stated weight {sol.weight} differs from the packing weight {sol.packing.weight(inst.weights)}")
    sys.stdout.write(json.dumps({"mode": mode.value, "problems": problems, "valid": not problems}, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if not problems else EXIT_ERROR


def cmd_check(args) -> int:
    inst = _instance(args.instance)
    mode = Mode.parse(args.mode)
    violation = condition_verdict(inst.hypergraph, _matroid_for(inst, mode), mode, cap=args.cap)
    doc = {"mode": mode.value, "holds": violation is None}
    if violation is not None:
        doc["violation"] = violation.to_doc()
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if violation is None else EXIT_INFEASIBLE


def _weight_range(text: str) -> tuple:
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def cmd_gen(args) -> int:
    params = GenParams(
        vertices=args.vertices, roots=args.roots, dyperedges=args.dyperedges, hyperedges=args.hyperedges,
        matroid=args.matroid, max_tail=args.max_tail, weight_range=args.weights,
    )
    sys.stdout.write(dump_instance(generate(args.seed, params)))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must not look like "infeasible"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperpack", description="Minimum-weight hyperarborescence packings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a minimum-weight packing")
    p.add_argument("instance", help="instance document ('-' for stdin)")
    p.add_argument("--mode", choices=MODES, default="matroid-reachability")
    p.add_argument("--certificate", action="store_true", help="attach a violated condition when infeasible")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap for certificates")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("validate", help="validate a solution document against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--mode", choices=MODES, default=None, help="defaults to the solution's mode")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("check", help="enumerate the packing condition for a mode")
    p.add_argument("instance")
    p.add_argument("--mode", choices=MODES, default="matroid-reachability")
    p.add_argument("--cap", type=int, default=None, help="refuse instances above this size")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=3)
    p.add_argument("--roots", type=int, default=2)
    p.add_argument("--dyperedges", type=int, default=4)
    p.add_argument("--hyperedges", type=int, default=0)
    p.add_argument("--max-tail", type=int, default=2)
    p.add_argument("--matroid", default="free", help="free | uniform:K | partition:B1/B2;C1,C2 | explicit:B1/B2 | random")
    p.add_argument("--weights", type=_weight_range, default=(0, 0), metavar="LO:HI")
    p.set_defaults(run=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ContractError as exc:
        print(f"internal contract violated: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
