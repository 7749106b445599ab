"""Command-line front end.

Every command prints ``key value`` lines with exact rationals.  Exit status is
0 on success, 1 on malformed input, domain or precondition errors (and on
usage errors), 2 when an instance exceeds a resource limit.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from fractions import Fraction

from . import approx, cos, stability
from .errors import CosError, DomainError, MalformedInputError, ResourceLimitError
from .game import (
    ZERO, CoalitionStructure, WeightedVotingGame, adjust_game, adjust_game_cs, cs_value,
    full_mask, is_imputation,
)
from .gamefile import (
    format_coalition, format_rational, format_structure, format_vector, parse_rational,
    parse_structure, parse_vector, read_game, serialize_game,
)
from .generators import generate


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _need_wvg(game, what: str) -> WeightedVotingGame:
    if not isinstance(game, WeightedVotingGame):
        raise DomainError(f"{what} is only available for weighted voting games")
    return game


def _deltas(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split(",")]


# --- commands ----------------------------------------------------------------------

def cmd_cos(args) -> list[str]:
    game = read_game(args.file)
    res = cos.cost_of_stability(game)
    return [
        f"players {game.n}",
        f"grand_value {format_rational(game.value(full_mask(game.n)))}",
        f"cos {format_rational(res.cos)}",
        f"total {format_rational(res.total)}",
        f"witness {format_vector(res.witness)}",
        f"method {res.method}",
        f"cuts {res.cuts_generated}",
    ]


def cmd_cos_cs(args) -> list[str]:
    game = read_game(args.file)
    out = []
    if args.best:
        value, cs = cos.optimal_cs_value(game)
        out.append(f"optimal_cs_value {format_rational(value)}")
    else:
        cs = parse_structure(args.structure, game.n)
    res = cos.cos_cs(game, cs)
    out += [
        f"structure {format_structure(cs)}",
        f"structure_value {format_rational(cs_value(game, cs))}",
        f"cos {format_rational(res.cos)}",
        f"total {format_rational(res.total)}",
        f"witness {format_vector(res.witness)}",
        f"deltas {format_vector(res.deltas, ',')}",
        f"method {res.method}",
        f"cuts {res.cuts_generated}",
    ]
    return out


def cmd_check(args) -> list[str]:
    game = read_game(args.file)
    p = parse_vector(args.payoff)
    if len(p) != game.n:
        raise MalformedInputError(f"payoff vector has {len(p)} entries, game has {game.n} players")
    if args.deltas is not None and args.structure is None:
        raise MalformedInputError("--deltas needs --structure")
    rep = stability.max_deficit(game, p)
    out = [
        f"total {format_rational(sum(p, ZERO))}",
        f"deficit {format_rational(rep.max_deficit)}",
        f"violating_coalition {format_coalition(rep.witness) if rep.max_deficit > 0 else 'none'}",
        f"stable {_bool(rep.max_deficit <= 0)}",
    ]
    stable = rep.max_deficit <= 0
    if args.structure is not None:
        cs = parse_structure(args.structure, game.n)
        deltas = _deltas(args.deltas) if args.deltas is not None else [ZERO] * len(cs)
        adjusted = adjust_game_cs(game, cs, deltas)
        imp = is_imputation(adjusted, cs, p)
        out += [f"structure {format_structure(cs)}", f"imputation {_bool(imp)}",
                f"in_core {_bool(imp and stable)}"]
    elif args.delta is not None:
        adjusted = adjust_game(game, parse_rational(args.delta))
        imp = is_imputation(adjusted, CoalitionStructure.grand(game.n), p)
        out += [f"imputation {_bool(imp)}", f"in_core {_bool(imp and stable)}"]
    return out


def cmd_approx(args) -> list[str]:
    game = _need_wvg(read_game(args.file), "approx")
    if args.proportional:
        if args.structure is not None:
            raise MalformedInputError("--proportional does not take --structure")
        p = approx.proportional_payoff(game)
        total = sum(p, ZERO)
        return [
            "method proportional",
            f"value {format_rational(total - 1)}",
            f"total {format_rational(total)}",
            f"witness {format_vector(p)}",
        ]
    if args.eps is None:
        raise MalformedInputError("approx needs --eps (or --proportional)")
    eps = parse_rational(args.eps)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    out = []
    if args.structure is not None:
        cs = parse_structure(args.structure, game.n)
        res = approx.fptas_cs(game, cs, eps)
        out.append(f"structure {format_structure(cs)}")
    elif args.additive:
        res = approx.additive_result(game, eps)
    else:
        res = approx.fptas_result(game, eps)
    out += [
        f"method {res.method}",
        f"epsilon {format_rational(eps)}",
        f"epsilon_prime {format_rational(res.epsilon_prime) if res.epsilon_prime else 'none'}",
        f"level {res.level}",
        f"value {format_rational(res.value)}",
        f"total {format_rational(sum(res.witness, ZERO))}",
        f"witness {format_vector(res.witness)}",
        f"cuts {res.cuts}",
    ]
    return out


def cmd_least_core(args) -> list[str]:
    game = read_game(args.file)
    eps, p = stability.least_core(game)
    return [f"least_core {format_rational(eps)}", f"payoff {format_vector(p)}"]


def _fmt(x) -> str:
    if isinstance(x, bool):
        return _bool(x)
    return format_rational(x)


def cmd_report(args) -> list[str]:
    game = read_game(args.file)
    rep = approx.bounds_report(game)
    out = [
        f"players {game.n}",
        f"cos {format_rational(rep.cos)}",
        f"least_core {format_rational(rep.least_core)}",
        "optimal_cs_value "
        + (format_rational(rep.optimal_cs_value) if rep.optimal_cs_value is not None else "skipped"),
    ]
    for c in rep.checks:
        out.append(f"bound {c.name} {_fmt(c.lhs)} {c.relation} {_fmt(c.rhs)} "
                   f"{'pass' if c.passed else 'fail'}")
    out.append(f"all_passed {_bool(rep.all_passed)}")
    return out


def cmd_gen(args) -> list[str]:
    return serialize_game(generate(args.kind, args.params)).splitlines()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cosgame", description="Cost of stability for coalitional games.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cos", help="exact cost of stability of the grand coalition")
    p.add_argument("file")
    p.set_defaults(func=cmd_cos)

    p = sub.add_parser("cos-cs", help="exact cost of stability of a coalition structure")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--structure", help='parts with 1-based players, e.g. "1,2|3"')
    g.add_argument("--best", action="store_true", help="use a welfare-maximising structure")
    p.set_defaults(func=cmd_cos_cs)

    p = sub.add_parser("check", help="stability of a payoff vector")
    p.add_argument("file")
    p.add_argument("--payoff", required=True, help='comma-separated rationals, e.g. "1/2,1/2,1/2"')
    g = p.add_mutually_exclusive_group()
    g.add_argument("--delta", help="supplement paid to the grand coalition")
    g.add_argument("--structure", help="coalition structure the payoff is split over")
    p.add_argument("--deltas", help="per-part supplements, comma-separated (needs --structure)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("approx", help="approximate cost of stability of a weighted voting game")
    p.add_argument("file")
    p.add_argument("--eps", help="accuracy, a positive rational")
    p.add_argument("--additive", action="store_true", help="additive guarantee instead of (1+eps)")
    p.add_argument("--proportional", action="store_true", help="proportional 2-approximation")
    p.add_argument("--structure", "--cs", dest="structure", help="approximate for this structure")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("least-core", help="least-core value and a payoff attaining it")
    p.add_argument("file")
    p.set_defaults(func=cmd_least_core)

    p = sub.add_parser("report", help="exact values and the general bounds they satisfy")
    p.add_argument("file")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("gen", help="print a generated game in the file format")
    p.add_argument("kind", help="uniform, projective_plane, anonymous_majority, all_nonempty_win, "
                                "tight_two_approx, partition_reduction or fixture")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)
    return parser


def run_command(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit status, output text)``."""
    parser = build_parser()
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        return 1, str(exc) + "\n"
    except SystemExit as exc:  # --help
        return (0 if not exc.code else 1), buf.getvalue()
    try:
        lines = args.func(args)
    except ResourceLimitError as exc:
        return 2, f"error: {exc}\n"
    except CosError as exc:
        return 1, f"error: {exc}\n"
    return 0, "\n".join(lines) + "\n"


def main(argv=None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code == 0 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
