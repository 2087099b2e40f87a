"""Command-line entry point: ``flpgames {solve-flp,core,balanced,stable} FILE``.

Exit codes: 0 success, 2 parse or validation error, 3 solver error,
4 size guard violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import charnes_cooper as cc
from . import molp
from . import production_game as pg
from .balanced import MAX_ENUMERATION_PLAYERS, balanced_by_enumeration
from .coalitions import fmt_coalition, members, nonempty_coalitions
from .errors import (DegenerateDualObjective, FlpError, InvalidGame,
                     MalformedProgram, ParseError, TooManyPlayers)
from .exchange_economy import (EconomyGame, ExchangeEconomy, build_economy_game,
                               coalition_matrix, endowment_rhs)
from .instance import load_document, parse_instance
from .numeric import fmt

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_GUARD = 0, 2, 3, 4
MAX_PLAYERS = 12
ENUMERATION_LIMIT = 4
TEXT_LIST_LIMIT = 50


def _nums(values):
    return [fmt(v) for v in values]


def _coal(S):
    return list(members(S))


def _guard(n):
    if n > MAX_PLAYERS:
        raise TooManyPlayers(f"n = {n} exceeds the limit of {MAX_PLAYERS} players")


def _load(path, args, expected):
    doc = load_document(path)
    if doc["kind"] not in expected:
        raise ParseError(f"this command needs kind {' or '.join(expected)}, "
                         f"file has {doc['kind']!r}")
    gamma = None
    if args.gamma is not None:
        try:
            gamma = Fraction(args.gamma)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"--gamma: cannot read {args.gamma!r}") from None
    kind, obj, weights = parse_instance(doc, to_float=args.float, gamma=gamma)
    if args.weights is not None:
        try:
            weights = [Fraction(w.strip()) for w in args.weights.split(",")]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"--weights: cannot read {args.weights!r}") from None
        if args.float:
            weights = [float(w) for w in weights]
    return kind, obj, weights


def cmd_solve_flp(path, args) -> dict:
    _, fp, _ = _load(path, args, ("flp",))
    sol = cc.solve_fractional(fp)
    oracle = cc.vertex_oracle(fp)
    agrees = oracle is not None and (
        sol.value == oracle[0] if fp.exact else abs(sol.value - oracle[0]) <= 1e-7)
    return {
        "command": "solve-flp",
        "status": "Optimal",
        "value": fmt(sol.value),
        "argmax": _nums(sol.argmax),
        "transformed_lp_value": fmt(sol.lp_value),
        "transformed_lp_solution": _nums(sol.lp_solution),
        "within_hypothesis": sol.within_hypothesis,
        "vertex_oracle_value": fmt(oracle[0]) if oracle else None,
        "equivalence_check": agrees,
        "diagnostics": _diag(args, exact=fp.exact),
    }


def _diag(args, **extra):
    out = {"arithmetic": "float" if args.float else "exact", "seed": args.seed}
    for k, v in extra.items():
        out[k] = fmt(v) if isinstance(v, (Fraction, float)) else v
    return out


def _value_table(values, n):
    return [{"coalition": _coal(S), "value": fmt(values[S])}
            for S in nonempty_coalitions(n)]


def cmd_core(path, args) -> dict:
    _, game, _ = _load(path, args, ("production_game",))
    _guard(game.n)
    values = pg.characteristic_function(game)
    u = pg.core_candidate(game)
    check = pg.is_core_member(game, u, values)
    return {
        "command": "core",
        "status": "Optimal",
        "n": game.n,
        "values": _value_table(values, game.n),
        "allocation": _nums(u),
        "core_member": check.member,
        "efficient": check.efficient,
        "violations": [{"coalition": _coal(S), "deficit": fmt(d)}
                       for S, d in check.violations],
        "diagnostics": _diag(args, gamma=game.gamma,
                             unscaled_grand_value=pg.unscaled_grand_value(game)),
    }


def cmd_balanced(path, args) -> dict:
    _, game, _ = _load(path, args, ("production_game",))
    _guard(game.n)
    values = pg.characteristic_function(game)
    res = pg.check_balanced(game, values)
    report = {
        "command": "balanced",
        "status": "Optimal",
        "n": game.n,
        "bondareva_optimum": fmt(res.optimum),
        "grand_value": fmt(res.grand_value),
        "balanced": res.balanced,
        "excess": fmt(res.excess),
        "worst": [{"coalition": _coal(S), "weight": fmt(w)}
                  for S, w in sorted(res.weights.items())],
    }
    if game.n <= min(ENUMERATION_LIMIT, MAX_ENUMERATION_PLAYERS):
        collections = pg.enumerate_balanced_collections(game.n)
        verdict, best = balanced_by_enumeration(game.n, values)
        report["enumeration"] = {
            "count": len(collections),
            "optimum": fmt(best),
            "balanced": verdict,
            "collections": [
                [{"coalition": _coal(S), "weight": fmt(w)}
                 for S, w in zip(bc.coalitions, bc.weights)]
                for bc in collections],
        }
    else:
        report["enumeration"] = None
        report["notice"] = (f"enumeration of balanced collections skipped "
                            f"for n = {game.n} > {ENUMERATION_LIMIT}")
    report["diagnostics"] = _diag(args, gamma=game.gamma,
                                  unscaled_grand_value=pg.unscaled_grand_value(game))
    return report


def cmd_stable(path, args) -> dict:
    kind, obj, weights = _load(path, args,
                               ("multi_production_game", "exchange_economy"))
    _guard(obj.n)
    game = build_economy_game(obj) if kind == "exchange_economy" else obj
    try:
        u = molp.stable_candidate(game, weights)
    except DegenerateDualObjective as exc:
        raise DegenerateDualObjective(
            f"{exc}; pass different positive --weights") from None
    check = molp.is_stable_outcome(game, u)
    lam = weights if weights is not None else [
        Fraction(1, game.r) if not args.float else 1.0 / game.r] * game.r
    grand_unscaled = molp.solve_pareto(game.coalition_problem(game.grand), lam)
    report = {
        "command": "stable",
        "status": "Optimal",
        "kind": kind,
        "n": game.n,
        "r": game.r,
        "payoff": [_nums(row) for row in u],
        "coalitions": [{"coalition": _coal(S), "aggregate": _nums(
                            [sum(u[i - 1][k] for i in members(S)) for k in range(game.r)]),
                        "membership": check.classes[S].value}
                       for S in nonempty_coalitions(game.n)],
        "efficient": check.efficient,
        "stable": check.stable,
        "blocking": [_coal(S) for S in check.blocking],
    }
    if isinstance(game, EconomyGame):
        econ = game.economy
        report["economy"] = {
            "goods": econ.m,
            "variables": econ.p,
            "constraint_blocks": {fmt_coalition(S): [len(coalition_matrix(S, econ.n, econ.m)),
                                                     econ.p]
                                  for S in nonempty_coalitions(econ.n)},
            "endowments": [_nums(e) for e in econ.endowments],
            "coalition_endowments": {fmt_coalition(S): _nums(endowment_rhs(econ, S))
                                     for S in nonempty_coalitions(econ.n)},
        }
    report["diagnostics"] = _diag(args, gamma=game.gamma)
    report["diagnostics"]["weights"] = _nums(lam)
    report["diagnostics"]["unscaled_grand_pareto"] = _nums(grand_unscaled.objectives)
    return report


COMMANDS = {
    "solve-flp": cmd_solve_flp,
    "core": cmd_core,
    "balanced": cmd_balanced,
    "stable": cmd_stable,
}


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]
    cmd = report["command"]
    if cmd == "solve-flp":
        lines += [f"  value                {report['value']}",
                  f"  argmax               ({', '.join(report['argmax'])})",
                  f"  transformed LP value {report['transformed_lp_value']}",
                  f"  vertex oracle        {report['vertex_oracle_value']}",
                  f"  equivalence check    {'pass' if report['equivalence_check'] else 'FAIL'}"]
        if not report["within_hypothesis"]:
            lines.append("  note: numerator negative on the whole region; "
                         "solved with d.y + d0 t = 1")
    if "values" in report:
        lines.append("  coalition        V(S)")
        for row in report["values"]:
            lines.append(f"  {_fmt_list(row['coalition']):<16} {row['value']}")
    if cmd == "core":
        lines.append(f"  allocation   ({', '.join(report['allocation'])})")
        lines.append(f"  core member  {report['core_member']}")
        for v in report["violations"]:
            lines.append(f"    violated by {_fmt_list(v['coalition'])}: deficit {v['deficit']}")
        if not report["efficient"]:
            lines.append("    allocation does not sum to V(N)")
    if cmd == "balanced":
        lines += [f"  Bondareva optimum {report['bondareva_optimum']}",
                  f"  V(N)              {report['grand_value']}",
                  f"  balanced          {report['balanced']} (excess {report['excess']})",
                  "  maximizing weights " + ", ".join(
                      f"{_fmt_list(w['coalition'])}:{w['weight']}" for w in report["worst"])]
        enum_ = report["enumeration"]
        if enum_ is None:
            lines.append(f"  {report['notice']}")
        else:
            lines.append(f"  balanced collections {enum_['count']} "
                         f"(enumeration optimum {enum_['optimum']}, balanced {enum_['balanced']})")
            if enum_["count"] <= TEXT_LIST_LIMIT:
                for fam in enum_["collections"]:
                    lines.append("    " + ", ".join(
                        f"{_fmt_list(c['coalition'])}:{c['weight']}" for c in fam))
            else:
                lines.append("    (full list in --json output)")
    if cmd == "stable":
        lines.append("  payoff matrix (one row per player)")
        for i, row in enumerate(report["payoff"], 1):
            lines.append(f"    {i}: ({', '.join(row)})")
        lines.append("  coalition        aggregate            membership")
        for c in report["coalitions"]:
            agg = "(" + ", ".join(c["aggregate"]) + ")"
            lines.append(f"  {_fmt_list(c['coalition']):<16} {agg:<20} {c['membership']}")
        lines.append(f"  stable       {report['stable']}")
        if report["blocking"]:
            lines.append("  blocking     " + " ".join(_fmt_list(b) for b in report["blocking"]))
        if "economy" in report:
            econ = report["economy"]
            lines.append(f"  economy: {econ['goods']} goods, {econ['variables']} variables, "
                         f"A(S) is {econ['goods']} x {econ['variables']}")
            for i, e in enumerate(econ["endowments"], 1):
                lines.append(f"    e_{i} = ({', '.join(e)})")
    diag = report.get("diagnostics", {})
    lines.append("  " + "  ".join(
        f"{k}={_fmt_list(v) if isinstance(v, list) else v}" for k, v in diag.items()))
    return "\n".join(lines)


def _fmt_list(items):
    return "{" + ",".join(str(x) for x in items) + "}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flpgames",
        description="Fractional linear programming production games.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="JSON instance file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--gamma", help="scaling constant for V(N), must exceed n")
    common.add_argument("--weights", help="comma-separated positive scalarization weights")
    common.add_argument("--float", action="store_true", help="use float arithmetic")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized tie-breaking (recorded only)")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve-flp", parents=[common], help="solve a fractional program")
    sub.add_parser("core", parents=[common], help="core allocation of a production game")
    sub.add_parser("balanced", parents=[common], help="Bondareva balancedness check")
    sub.add_parser("stable", parents=[common],
                   help="stable outcome of a multiobjective game or exchange economy")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args.path, args)
    except (ParseError, InvalidGame, MalformedProgram) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooManyPlayers as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except FlpError as exc:
        print(f"solver error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_SOLVER
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
