"""External literal formats: exact-fraction JSON objects and CSV rows.

All numbers serialize as strings holding exact fractions ("4/5", "3"), never
as floats; float companions are separate fields added by the CLI.  In
approximate mode plain JSON numbers are accepted and converted to the
nearest fraction with denominator at most `max_denominator` before any exact
processing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import LiteralError
from .finegrain import SymmetrizationTrace
from .games import MAX, ExactCoefficient, Game, UniverseKind
from .sequential import OutcomeLedger, SequentialGame
from .worlds import BranchSpec, FrequencyDistribution

DEFAULT_MAX_DENOMINATOR = 10**6


def format_fraction(value: Fraction) -> str:
    return str(value)


def parse_fraction(
    value, approx: bool = False, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> Fraction:
    """Parse an exact fraction string; in approx mode also accept numbers."""
    if isinstance(value, bool):
        raise LiteralError(f"expected a fraction, got {value!r}")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise LiteralError(f"not a fraction: {value!r}") from exc
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not approx:
            raise LiteralError(
                f"float {value!r} needs approximate mode (--approx) to be rationalized"
            )
        return Fraction(value).limit_denominator(max_denominator)
    raise LiteralError(f"expected a fraction, got {type(value).__name__}")


def format_exponent(p) -> str:
    return "max" if p is MAX or not isinstance(p, Fraction) else str(p)


def parse_exponent(value, approx: bool = False, max_denominator: int = DEFAULT_MAX_DENOMINATOR):
    if isinstance(value, str) and value.strip().lower() == "max":
        return MAX
    return parse_fraction(value, approx, max_denominator)


def coefficient_to_obj(coefficient: ExactCoefficient) -> dict:
    return {
        "magp": format_fraction(coefficient.mag_p),
        "phase": format_fraction(coefficient.phase),
    }


def coefficient_from_obj(obj, approx=False, max_denominator=DEFAULT_MAX_DENOMINATOR) -> ExactCoefficient:
    if not isinstance(obj, dict) or "magp" not in obj:
        raise LiteralError(f"coefficient object needs a 'magp' field: {obj!r}")
    return ExactCoefficient(
        parse_fraction(obj["magp"], approx, max_denominator),
        parse_fraction(obj.get("phase", "0"), approx, max_denominator),
    )


def game_to_obj(game: Game) -> dict:
    return {
        "p": format_exponent(game.p),
        "rows": [
            {**coefficient_to_obj(coefficient), "reward": format_fraction(reward)}
            for coefficient, reward in game.rows
        ],
    }


def game_from_obj(
    obj,
    p_override=None,
    approx: bool = False,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> Game:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise LiteralError("game literal must be an object with a 'rows' list")
    if p_override is not None:
        p = parse_exponent(p_override, approx, max_denominator)
    elif "p" in obj:
        p = parse_exponent(obj["p"], approx, max_denominator)
    else:
        raise LiteralError("game literal needs a 'p' field (or pass --p)")
    rows = []
    for row in obj["rows"]:
        if not isinstance(row, dict) or "reward" not in row:
            raise LiteralError(f"game row needs 'magp' and 'reward': {row!r}")
        rows.append(
            (
                coefficient_from_obj(row, approx, max_denominator),
                parse_fraction(row["reward"], approx, max_denominator),
            )
        )
    return Game(tuple(rows), p)


def seqgame_to_obj(game: SequentialGame) -> dict:
    rows = []
    for coefficient, payload in game.rows:
        row: dict = {"coeff": coefficient_to_obj(coefficient)}
        if isinstance(payload, SequentialGame):
            row["subgame"] = seqgame_to_obj(payload)
        else:
            row["terminal"] = format_fraction(payload)
        rows.append(row)
    return {"rows": rows}


def seqgame_from_obj(
    obj, approx: bool = False, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> SequentialGame:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise LiteralError("sequential-game literal must be an object with 'rows'")
    rows = []
    for row in obj["rows"]:
        if not isinstance(row, dict) or "coeff" not in row:
            raise LiteralError(f"sequential row needs a 'coeff' object: {row!r}")
        coefficient = coefficient_from_obj(row["coeff"], approx, max_denominator)
        if ("terminal" in row) == ("subgame" in row):
            raise LiteralError(
                f"sequential row needs exactly one of 'terminal'/'subgame': {row!r}"
            )
        if "terminal" in row:
            payload = parse_fraction(row["terminal"], approx, max_denominator)
        else:
            payload = seqgame_from_obj(row["subgame"], approx, max_denominator)
        rows.append((coefficient, payload))
    return SequentialGame(tuple(rows))


def universe_from_name(name: str) -> UniverseKind:
    try:
        return UniverseKind(name)
    except ValueError as exc:
        valid = ", ".join(kind.value for kind in UniverseKind)
        raise LiteralError(f"unknown universe {name!r}; expected one of: {valid}") from exc


def branch_spec_to_obj(spec: BranchSpec) -> dict:
    return {
        "universe": spec.universe.value,
        "measures": [format_fraction(m) for m in spec.measures],
        "repeats": spec.repeats,
    }


def branch_spec_from_obj(
    obj, approx: bool = False, max_denominator: int = DEFAULT_MAX_DENOMINATOR
) -> BranchSpec:
    if not isinstance(obj, dict):
        raise LiteralError("branch spec literal must be an object")
    for field in ("universe", "measures", "repeats"):
        if field not in obj:
            raise LiteralError(f"branch spec literal needs {field!r}")
    if not isinstance(obj["repeats"], int) or isinstance(obj["repeats"], bool):
        raise LiteralError("'repeats' must be an integer")
    return BranchSpec(
        universe_from_name(obj["universe"]),
        tuple(
            parse_fraction(m, approx, max_denominator) for m in obj["measures"]
        ),
        obj["repeats"],
    )


def trace_to_obj(trace: SymmetrizationTrace) -> list:
    return [
        {
            "row": step.row_index,
            "parts": [coefficient_to_obj(part) for part in step.parts],
        }
        for step in trace.steps
    ]


def distribution_to_csv_rows(distribution: FrequencyDistribution) -> list[list[str]]:
    """Rows for the distribution CSV: k, k_over_N, mass_exact, mass_float."""
    rows = [["k", "k_over_N", "mass_exact", "mass_float"]]
    n = distribution.repeats
    for k, mass in enumerate(distribution.masses):
        rows.append(
            [str(k), format_fraction(Fraction(k, n)), format_fraction(mass), repr(float(mass))]
        )
    return rows


def ledger_to_csv_rows(ledger: OutcomeLedger) -> list[list[str]]:
    rows = [["world_class", "measure", "payoff"]]
    for entry in ledger.entries:
        rows.append(
            [
                ",".join(str(label) for label in entry.world_class),
                format_fraction(entry.measure),
                format_fraction(entry.payoff),
            ]
        )
    return rows
