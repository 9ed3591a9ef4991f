"""Text, CSV and JSON renderings shared by the CLI.

CSV cells: denominators joined by ``+`` (``12+76+114``); multipliers, parts and
rationale tags joined by ``;``.  JSON documents carry ``schema_version``.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from typing import Any

from .tablecore import Decomposition, Rule, SelectionOutcome, TransitionAnalysis, TrialRecord

SCHEMA_VERSION = 1
FORMATS = ("text", "csv", "json")


def join_dens(values: Iterable[int]) -> str:
    return "+".join(str(v) for v in values)


def join_list(values: Iterable[Any]) -> str:
    return ";".join(str(v) for v in values)


def split_ints(cell: str, sep: str) -> tuple[int, ...]:
    return tuple(int(v) for v in cell.split(sep)) if cell else ()


def render_decomposition(dec: Decomposition) -> str:
    """``2/13 = 1/8 + 1/52_4 + 1/104_8``; tail terms carry their multiplier."""
    tail = (f"1/{d}_{m}" for d, m in zip(dec.denominators[1:], dec.multipliers))
    return f"2/{dec.D} = " + " + ".join([f"1/{dec.head}", *tail])


def decomposition_to_dict(dec: Decomposition) -> dict[str, Any]:
    return {
        "D": dec.D,
        "denominators": list(dec.denominators),
        "multipliers": list(dec.multipliers),
        "parts": list(dec.parts),
    }


def decomposition_from_dict(data: dict[str, Any]) -> Decomposition:
    return Decomposition(
        D=int(data["D"]),
        denominators=tuple(data["denominators"]),
        multipliers=tuple(data["multipliers"]),
        parts=tuple(data["parts"]),
    )


def transition_to_dict(t: TransitionAnalysis | None) -> dict[str, Any] | None:
    if t is None:
        return None
    return {
        "shared_denominator": t.shared_denominator,
        "rank3": t.rank3,
        "rank4": t.rank4,
        "appreciation": str(t.appreciation),
    }


def outcome_to_dict(o: SelectionOutcome) -> dict[str, Any]:
    return {
        **decomposition_to_dict(o.chosen),
        "terms": o.term_count,
        "topflag": o.topflag_used,
        "rationale": [str(r) for r in o.rationale],
        "transition": transition_to_dict(o.transition),
    }


def trial_to_dict(t: TrialRecord) -> dict[str, Any]:
    return {
        "D": t.D,
        "n": t.n,
        "odd_sum": t.odd_sum,
        "parts": list(t.parts),
        "delta": t.delta,
        "head": t.head,
        "denominators": list(t.decomposition.denominators),
        "multipliers": list(t.multipliers),
        "r_param": str(t.r_param),
    }


def dump_json(payload: dict[str, Any]) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n"


def dump_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


OUTCOME_HEADER = ("D", "terms", "denominators", "multipliers", "parts", "topflag", "rationale")


def outcome_row(o: SelectionOutcome) -> list[Any]:
    dec = o.chosen
    return [
        dec.D,
        dec.term_count,
        join_dens(dec.denominators),
        join_list(dec.multipliers),
        join_list(dec.parts),
        o.topflag_used,
        join_list(o.rationale),
    ]


def decomposition_from_row(row: dict[str, str]) -> Decomposition:
    """Rebuild a Decomposition from a CSV row written by ``outcome_row`` or ``trial_row``."""
    return Decomposition(
        D=int(row["D"]),
        denominators=split_ints(row["denominators"], "+"),
        multipliers=split_ints(row["multipliers"], ";"),
        parts=split_ints(row["parts"], ";"),
    )


def rules_from_cell(cell: str) -> tuple[Rule, ...]:
    return tuple(Rule(v) for v in cell.split(";")) if cell else ()


TRIAL_HEADER = ("D", "n", "odd_sum", "parts", "delta", "head", "denominators", "multipliers")


def trial_row(t: TrialRecord) -> list[Any]:
    return [
        t.D,
        t.n,
        t.odd_sum,
        join_list(t.parts),
        t.delta,
        t.head,
        join_dens(t.decomposition.denominators),
        join_list(t.multipliers),
    ]


def text_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in header]] + [["" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
