"""Command-line front end.

Subcommands: solve, compare, optimal, oracle, witness.  Exit codes follow one
contract everywhere: 0 success/holds, 1 semantic negative (comparison fails,
oracle disagrees, not optimal, no witness), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .comparative import (
    geq_lc,
    geq_sep,
    is_receiver_optimal,
    is_sender_optimal,
    separating_instance,
)
from .equilibrium import equilibrium_value, pnbp, solve, verify_equilibrium
from .errors import GameFileError, OracleSizeError, PreconditionError
from .figures import render_game_svg
from .gamefile import (
    equilibrium_to_obj,
    game_to_obj,
    load_game,
    load_structure,
    verdict_to_obj,
)
from .oracle import exhaustive_search
from .rationals import format_rational


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GameFileError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OracleSizeError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disclosuregame",
        description="Solve and compare covert information-acquisition-and-disclosure games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a game file and report the equilibrium")
    p_solve.add_argument("path")
    p_solve.add_argument("--json", action="store_true", help="machine-readable output")
    p_solve.add_argument("--svg", metavar="OUT", help="write a figure of the solution")
    p_solve.set_defaults(func=cmd_solve)

    p_cmp = sub.add_parser("compare", help="compare two verifiability structures")
    p_cmp.add_argument("path_hi")
    p_cmp.add_argument("path_lo")
    p_cmp.add_argument("--relation", choices=("lc", "sep"), default="lc")
    p_cmp.add_argument("--json", action="store_true")
    p_cmp.set_defaults(func=cmd_compare)

    p_opt = sub.add_parser("optimal", help="check sender/receiver optimality of a structure")
    p_opt.add_argument("path")
    group = p_opt.add_mutually_exclusive_group(required=True)
    group.add_argument("--sender", action="store_true")
    group.add_argument("--receiver", action="store_true")
    p_opt.add_argument("--json", action="store_true")
    p_opt.set_defaults(func=cmd_optimal)

    p_oracle = sub.add_parser("oracle", help="cross-check the solver against brute force")
    p_oracle.add_argument("path")
    p_oracle.add_argument("--max-messages", type=int, default=4)
    p_oracle.add_argument("--max-grid", type=int, default=12)
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=cmd_oracle)

    p_wit = sub.add_parser("witness", help="emit a game separating two lc-unordered structures")
    p_wit.add_argument("path_hi")
    p_wit.add_argument("path_lo")
    p_wit.add_argument("--json", action="store_true")
    p_wit.set_defaults(func=cmd_witness)
    return parser


def cmd_solve(args) -> int:
    game = load_game(args.path)
    verdict = pnbp(game)
    eq = solve(game)
    report = verify_equilibrium(game, eq)
    if not report.ok:
        print(f"internal error: solution failed verification: {report.detail}", file=sys.stderr)
        return 2
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render_game_svg(game, eq))
    if args.json:
        print(json.dumps(equilibrium_to_obj(eq, verdict.holds), indent=2))
        return 0
    tag = equilibrium_value(game).tag
    if verdict.holds:
        print(f"pnbp: yes (witness {verdict.witness})")
    else:
        print("pnbp: no")
    print(f"value: {format_rational(eq.value)} ({tag})")
    print("signal:")
    for s, w in zip(eq.signal.support, eq.signal.weights):
        print(
            f"  posterior {format_rational(s)}  weight {format_rational(w)}"
            f"  -> {eq.messaging[s]}"
        )
    print("beliefs:")
    for name in sorted(eq.beliefs):
        print(f"  {name} = {format_rational(eq.beliefs[name])}")
    print(f"split points: s- = {format_rational(eq.s_minus)}  s+ = {format_rational(eq.s_plus)}")
    return 0


def cmd_compare(args) -> int:
    hi = load_structure(args.path_hi)
    lo = load_structure(args.path_lo)
    verdict = geq_lc(hi, lo) if args.relation == "lc" else geq_sep(hi, lo)
    if args.json:
        print(json.dumps(verdict_to_obj(verdict), indent=2))
    else:
        if verdict.holds:
            print(f"relation {args.relation}: holds")
        elif args.relation == "lc":
            print(f"relation lc: fails, witness type {format_rational(verdict.witness)}")
        else:
            s, pieces = verdict.witness
            desc = " u ".join(
                f"{'[' if lc else '('}{format_rational(lo_)},{format_rational(hi_)}{']' if hc else ')'}"
                for lo_, lc, hi_, hc in pieces
            )
            print(f"relation sep: fails at type {format_rational(s)}, separating set {desc}")
    return 0 if verdict.holds else 1


def cmd_optimal(args) -> int:
    structure = load_structure(args.path)
    if args.sender:
        which, result = "sender", is_sender_optimal(structure)
    else:
        which, result = "receiver", is_receiver_optimal(structure)
    if args.json:
        print(json.dumps({"optimal_for": which, "holds": result}))
    else:
        print(f"{which}-optimal: {'yes' if result else 'no'}")
    return 0 if result else 1


def cmd_oracle(args) -> int:
    game = load_game(args.path)
    analytic = equilibrium_value(game).value
    values = exhaustive_search(game, args.max_messages, args.max_grid)
    agree = bool(values) and max(values) == analytic
    if args.json:
        print(
            json.dumps(
                {
                    "analytic": format_rational(analytic),
                    "oracle_values": [format_rational(v) for v in sorted(values)],
                    "agree": agree,
                }
            )
        )
    else:
        rendered = ", ".join(format_rational(v) for v in sorted(values))
        print(f"analytic value: {format_rational(analytic)}")
        print(f"oracle values: {{{rendered}}}")
        print(f"agreement: {'yes' if agree else 'no'}")
    return 0 if agree else 1


def cmd_witness(args) -> int:
    hi = load_structure(args.path_hi)
    lo = load_structure(args.path_lo)
    try:
        inst = separating_instance(hi, lo)
    except PreconditionError as exc:
        print(f"no witness: {exc}", file=sys.stderr)
        return 1
    game_obj = game_to_obj(inst.game_lo)
    if args.json:
        print(
            json.dumps(
                {
                    "game": game_obj,
                    "s_star": format_rational(inst.s_star),
                    "value_lo": format_rational(inst.value_lo),
                    "sup_value_hi": format_rational(inst.sup_value_hi),
                },
                indent=2,
            )
        )
    else:
        print(
            f"s* = {format_rational(inst.s_star)}  value_lo = {format_rational(inst.value_lo)}"
            f"  sup_value_hi = {format_rational(inst.sup_value_hi)}",
            file=sys.stderr,
        )
        print(json.dumps(game_obj, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
