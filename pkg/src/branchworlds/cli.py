"""Batch command-line front end with exact-fraction JSON/CSV output.

Game, sequential-game, and branch-spec arguments accept an inline JSON
literal (anything starting with "{"), a path to a JSON file, or "-" for
stdin.  Fractions are serialized as strings such as "4/5"; floats appear
only as companion fields.  Exit codes: 0 success, 2 parse error, 3 domain
error, 4 resource bound exceeded.  Failures print a structured JSON report
on stderr.

Subcommands:
  value         value a game; print value and per-row probabilities
  symmetrize    fine-grain a game into its symmetric form; print the trace
  worlds        enumerate | freq | hoeffding | sample over repeated branchings
  oncetwice     measure-once-or-twice proportions per universe
  reduce        flatten a sequential game to a simple game
  substitution  compare reduction value with subgame-by-value substitution
  dutchbook     two-bet ledger losing in every world
  normcheck     composition / exponent-recovery report for a named norm

The environment variable BRANCHWORLDS_BOUND overrides the sequence
enumeration bound (default 10^7).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    BranchWorldsError,
    EnumerationTooLarge,
    LiteralError,
    SizeOverflow,
)
from .finegrain import DEFAULT_MAX_ROWS, symmetrize, value_via_symmetrization
from .games import (
    MAX,
    Game,
    game_value,
    subjective_probabilities,
)
from .literals import (
    DEFAULT_MAX_DENOMINATOR,
    branch_spec_from_obj,
    distribution_to_csv_rows,
    format_fraction,
    game_from_obj,
    game_to_obj,
    ledger_to_csv_rows,
    parse_fraction,
    seqgame_from_obj,
    trace_to_obj,
    universe_from_name,
)
from .norms import (
    check_disjoint_composition,
    composition_passes,
    default_composition_pairs,
    estimate_p,
    f_table,
    get_norm,
    permutation_invariance_residual,
    verify_rational_vectors,
)
from .errors import DegenerateNorm
from .sequential import (
    check_substitution,
    dutch_book_demo,
    once_or_twice,
    reduce_sequential,
)
from .worlds import (
    DEFAULT_ENUMERATION_BOUND,
    enumerate_sequences,
    frequency_distribution,
    hoeffding_check,
    sample_frequencies,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4

BOUND_ENV_VAR = "BRANCHWORLDS_BOUND"


def _load_literal(argument: str) -> object:
    if argument == "-":
        text = sys.stdin.read()
    elif argument.lstrip().startswith("{"):
        text = argument
    else:
        try:
            with open(argument, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise LiteralError(f"cannot read {argument!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise LiteralError(f"invalid JSON literal: {exc}") from exc


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _print_csv(rows: list[list[str]]) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    print(buffer.getvalue(), end="")


def _fractions(values) -> list[str]:
    return [format_fraction(v) for v in values]


def _enumeration_bound(args) -> int:
    if args.bound is not None:
        return args.bound
    env = os.environ.get(BOUND_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise LiteralError(f"{BOUND_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_ENUMERATION_BOUND


def _game_from_args(args) -> Game:
    return game_from_obj(
        _load_literal(args.game),
        p_override=args.p,
        approx=args.approx,
        max_denominator=args.max_denominator,
    )


def cmd_value(args) -> int:
    game = _game_from_args(args)
    value = game_value(game)
    probabilities = subjective_probabilities(game)
    payload = {
        "p": "max" if game.is_max else format_fraction(game.p),
        "value": format_fraction(value),
        "value_float": float(value),
        "probabilities": _fractions(probabilities),
        "probabilities_float": [float(entry) for entry in probabilities],
    }
    if args.trace:
        symmetric, trace = symmetrize(game, args.max_rows)
        payload["trace"] = trace_to_obj(trace)
        payload["symmetric_value"] = format_fraction(
            value_via_symmetrization(game, args.max_rows)
        )
        payload["symmetric_rows"] = symmetric.n
    _print_json(payload)
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    game = _game_from_args(args)
    symmetric, trace = symmetrize(game, args.max_rows)
    payload = {
        "common_denominator": trace.common_denominator,
        "multiplicities": list(trace.multiplicities),
        "row_count": symmetric.n,
        "coefficient_magp": format_fraction(Fraction(1, trace.common_denominator)),
        "value": format_fraction(value_via_symmetrization(game, args.max_rows)),
        "trace": trace_to_obj(trace),
    }
    if args.full:
        payload["game"] = game_to_obj(symmetric)
    _print_json(payload)
    return EXIT_OK


def cmd_worlds(args) -> int:
    spec = branch_spec_from_obj(
        _load_literal(args.spec),
        approx=args.approx,
        max_denominator=args.max_denominator,
    )
    if args.action == "enumerate":
        rows = [["sequence", "measure", "proportion", "proportion_float"]]
        records = []
        for sequence, measure, share in enumerate_sequences(
            spec, _enumeration_bound(args)
        ):
            label = ",".join(str(s) for s in sequence)
            rows.append(
                [label, format_fraction(measure), format_fraction(share), repr(float(share))]
            )
            records.append(
                {
                    "sequence": label,
                    "measure": format_fraction(measure),
                    "proportion": format_fraction(share),
                    "proportion_float": float(share),
                }
            )
        if args.format == "csv":
            _print_csv(rows)
        else:
            _print_json({"repeats": spec.repeats, "sequences": records})
    elif args.action == "freq":
        distribution = frequency_distribution(spec, args.outcome)
        if args.format == "csv":
            _print_csv(distribution_to_csv_rows(distribution))
        else:
            _print_json(
                {
                    "repeats": spec.repeats,
                    "outcome": args.outcome,
                    "lambda1": format_fraction(
                        spec.single_trial_proportion(args.outcome)
                    ),
                    "masses": _fractions(distribution.masses),
                    "masses_float": [float(m) for m in distribution.masses],
                }
            )
    elif args.action == "hoeffding":
        if args.epsilon is None:
            raise LiteralError("hoeffding needs --epsilon")
        report = hoeffding_check(spec, args.outcome, parse_fraction(args.epsilon))
        _print_json(
            {
                "N": report.repeats,
                "epsilon": format_fraction(report.epsilon),
                "tail_mass": format_fraction(report.tail_mass),
                "bound": report.bound,
                "holds": report.holds,
            }
        )
    else:
        histogram = sample_frequencies(spec, args.outcome, args.runs, args.seed)
        nonzero = [
            (k, count) for k, count in enumerate(histogram.counts) if count > 0
        ]
        if args.format == "csv":
            rows = [["k", "frequency", "count"]]
            rows.extend(
                [str(k), format_fraction(Fraction(k, spec.repeats)), str(count)]
                for k, count in nonzero
            )
            _print_csv(rows)
        else:
            _print_json(
                {
                    "repeats": spec.repeats,
                    "outcome": args.outcome,
                    "runs": histogram.runs,
                    "seed": histogram.seed,
                    "mean_frequency": format_fraction(histogram.mean_frequency()),
                    "mean_frequency_float": float(histogram.mean_frequency()),
                    "counts": [
                        {"k": k, "count": count} for k, count in nonzero
                    ],
                }
            )
    return EXIT_OK


def cmd_oncetwice(args) -> int:
    universe = universe_from_name(args.universe)
    proportions = once_or_twice(
        parse_fraction(args.c1), parse_fraction(args.c2), universe
    )
    labels = ("1", "2,1", "2,2")
    _print_json(
        {
            "universe": universe.value,
            "c1": args.c1,
            "c2": args.c2,
            "proportions": dict(zip(labels, _fractions(proportions))),
            "proportions_float": dict(
                zip(labels, (float(entry) for entry in proportions))
            ),
        }
    )
    return EXIT_OK


def cmd_reduce(args) -> int:
    universe = universe_from_name(args.universe)
    game = seqgame_from_obj(
        _load_literal(args.game),
        approx=args.approx,
        max_denominator=args.max_denominator,
    )
    reduced = reduce_sequential(
        game, universe, expanded=not args.coarse, ambient_p=parse_fraction(args.p)
    )
    _print_json(game_to_obj(reduced))
    return EXIT_OK


def cmd_substitution(args) -> int:
    universe = universe_from_name(args.universe)
    game = seqgame_from_obj(
        _load_literal(args.game),
        approx=args.approx,
        max_denominator=args.max_denominator,
    )
    report = check_substitution(game, universe)
    _print_json(
        {
            "universe": universe.value,
            "holds": report.holds,
            "reduced_value": format_fraction(report.reduced_value),
            "substitution_value": format_fraction(report.substitution_value),
            "reduced_value_float": float(report.reduced_value),
            "substitution_value_float": float(report.substitution_value),
        }
    )
    return EXIT_OK


def cmd_dutchbook(args) -> int:
    scale = parse_fraction(args.scale)
    ledger = dutch_book_demo(
        args.c1,
        args.c2,
        first_bet=(3 * scale, -3 * scale),
        second_bet=(-4 * scale, 2 * scale),
    )
    if args.format == "csv":
        _print_csv(ledger_to_csv_rows(ledger))
    else:
        _print_json(
            {
                "entries": [
                    {
                        "world_class": ",".join(str(x) for x in entry.world_class),
                        "measure": format_fraction(entry.measure),
                        "payoff": format_fraction(entry.payoff),
                    }
                    for entry in ledger.entries
                ]
            }
        )
    return EXIT_OK


def cmd_normcheck(args) -> int:
    norm = get_norm(args.norm)
    pairs = default_composition_pairs()
    residuals = [check_disjoint_composition(norm, v, w) for v, w in pairs]
    composition_ok = all(composition_passes(norm, v, w) for v, w in pairs)
    table = f_table(norm, 16)
    payload = {
        "norm": norm.name,
        "declared_p": None if norm.declared_p is None else format_fraction(norm.declared_p),
        "composition": {
            "max_residual": max(residuals),
            "passed": composition_ok,
        },
        "permutation_residual": permutation_invariance_residual(norm, (1, 2, 3)),
        "f_table_gap": table.max_relative_gap() if composition_ok else None,
    }
    try:
        estimate = estimate_p(norm)
        payload["estimate"] = {
            "p_float": estimate.estimate,
            "p_rational": format_fraction(estimate.rational),
            "spread": estimate.spread,
            "power_law_ok": estimate.power_law_ok,
            "monotone_ok": estimate.monotone_ok,
            "passed": estimate.passed,
        }
        reference = estimate.rational if norm.declared_p is None else norm.declared_p
        vectors = verify_rational_vectors(norm, reference)
        payload["rational_vectors"] = {
            "max_relative_error": vectors.max_relative_error,
            "passed": vectors.passed,
        }
    except DegenerateNorm as exc:
        payload["estimate"] = {"degenerate": True, "message": str(exc)}
    _print_json(payload)
    return EXIT_OK


def _add_literal_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--approx",
        action="store_true",
        help="accept JSON floats, rationalized to --max-denominator",
    )
    parser.add_argument(
        "--max-denominator",
        type=int,
        default=DEFAULT_MAX_DENOMINATOR,
        help="denominator bound for approximate-mode rationalization",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchworlds",
        description="Exact-arithmetic calculator for branching games and world trees.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_value = sub.add_parser("value", help="value a game and show probabilities")
    p_value.add_argument("game", help="game literal (inline JSON, path, or -)")
    p_value.add_argument("--p", default=None, help="ambient exponent, e.g. 2, 3/2, max")
    p_value.add_argument("--trace", action="store_true", help="include the symmetrization trace")
    p_value.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    _add_literal_options(p_value)
    p_value.set_defaults(handler=cmd_value)

    p_sym = sub.add_parser("symmetrize", help="fine-grain into the symmetric form")
    p_sym.add_argument("game")
    p_sym.add_argument("--p", default=None)
    p_sym.add_argument("--max-rows", type=int, default=DEFAULT_MAX_ROWS)
    p_sym.add_argument("--full", action="store_true", help="include the full symmetric game")
    _add_literal_options(p_sym)
    p_sym.set_defaults(handler=cmd_symmetrize)

    p_worlds = sub.add_parser("worlds", help="repeated-branching laws")
    p_worlds.add_argument("action", choices=("enumerate", "freq", "hoeffding", "sample"))
    p_worlds.add_argument("spec", help="branch spec literal (inline JSON, path, or -)")
    p_worlds.add_argument("--outcome", type=int, default=1, help="1-based target outcome")
    p_worlds.add_argument("--epsilon", default=None, help="deviation threshold (fraction)")
    p_worlds.add_argument("--runs", type=int, default=1000)
    p_worlds.add_argument("--seed", type=int, default=0)
    p_worlds.add_argument(
        "--bound",
        type=int,
        default=None,
        help=f"enumeration bound (default {DEFAULT_ENUMERATION_BOUND}, env {BOUND_ENV_VAR})",
    )
    p_worlds.add_argument("--format", choices=("json", "csv"), default="csv")
    _add_literal_options(p_worlds)
    p_worlds.set_defaults(handler=cmd_worlds)

    p_once = sub.add_parser("oncetwice", help="once-or-twice proportions")
    p_once.add_argument("c1")
    p_once.add_argument("c2")
    p_once.add_argument("--universe", required=True, help="kent | reverse-kent | pnorm")
    p_once.set_defaults(handler=cmd_oncetwice)

    p_reduce = sub.add_parser("reduce", help="flatten a sequential game")
    p_reduce.add_argument("game", help="sequential-game literal")
    p_reduce.add_argument("--universe", required=True)
    p_reduce.add_argument("--coarse", action="store_true", help="coarse-grained p-norm form")
    p_reduce.add_argument("--p", default="2", help="ambient exponent for p-norm output")
    _add_literal_options(p_reduce)
    p_reduce.set_defaults(handler=cmd_reduce)

    p_subst = sub.add_parser("substitution", help="reduction vs substitution values")
    p_subst.add_argument("game", help="sequential-game literal")
    p_subst.add_argument("--universe", required=True)
    _add_literal_options(p_subst)
    p_subst.set_defaults(handler=cmd_substitution)

    p_dutch = sub.add_parser("dutchbook", help="all-worlds-lose ledger")
    p_dutch.add_argument("c1", type=int)
    p_dutch.add_argument("c2", type=int)
    p_dutch.add_argument("--scale", default="1", help="multiply all stakes")
    p_dutch.add_argument("--format", choices=("json", "csv"), default="csv")
    p_dutch.set_defaults(handler=cmd_dutchbook)

    p_norm = sub.add_parser("normcheck", help="norm composition / exponent recovery")
    p_norm.add_argument("--norm", required=True, help="registered norm name, e.g. p2")
    p_norm.set_defaults(handler=cmd_normcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (EnumerationTooLarge, SizeOverflow) as exc:
        _fail(exc)
        return EXIT_RESOURCE
    except LiteralError as exc:
        _fail(exc)
        return EXIT_PARSE
    except BranchWorldsError as exc:
        _fail(exc)
        return EXIT_DOMAIN


def _fail(exc: BranchWorldsError) -> None:
    print(
        json.dumps({"error": type(exc).__name__, "message": str(exc)}),
        file=sys.stderr,
    )


if __name__ == "__main__":
    sys.exit(main())
