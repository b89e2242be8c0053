"""Recompute the bundled three-person example and diff it against the printed tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .dynamics import LearningEvent, SessionState, common_ground_of, run_sequence
from .jsonio import decimal_str, exact_str, profile_from_json, weights_from_json
from .judgment import Judgment
from .pooling import Profile, Weights, linear_pool

TOLERANCE = Fraction(5, 100000)
PLACES = 4


def data_path(name: str) -> Path:
    return Path(str(resources.files("probagg") / "data" / name))


def example_profile(eps=0) -> Profile:
    return profile_from_json(str(data_path("profile.json")), eps=eps)


def example_weights(eps=0) -> Weights:
    return weights_from_json(str(data_path("weights.json")), eps=eps)


def reference_tables() -> dict:
    with open(data_path("reference_tables.json"), encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class Cell:
    table: str
    row: str
    column: str
    value: object
    printed: str | None

    @property
    def ok(self) -> bool:
        if self.printed is None:
            return True
        p = Fraction(self.printed)
        x = Fraction(self.value)
        return abs(x - p) <= TOLERANCE and Fraction(decimal_str(x, PLACES)) == p


@dataclass
class Reproduction:
    tables: dict[str, list[tuple[str, list]]] = field(default_factory=dict)
    cells: list[Cell] = field(default_factory=list)
    gaps: dict[str, object] = field(default_factory=dict)
    preserved: dict[str, bool] = field(default_factory=dict)
    rationality: dict[str, dict] = field(default_factory=dict)
    columns: list[str] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Cell]:
        return [c for c in self.cells if not c.ok]

    @property
    def ok(self) -> bool:
        return (not self.mismatches and all(g == 0 for g in self.gaps.values())
                and all(self.preserved.values()))

    def to_dict(self, places: int = PLACES) -> dict:
        return {
            "ok": self.ok,
            "columns": self.columns,
            "tables": {
                name: [{"row": label, "values": [decimal_str(v, places) for v in vals],
                        "exact": [exact_str(v) for v in vals]} for label, vals in rows]
                for name, rows in self.tables.items()
            },
            "gaps": {k: exact_str(v) for k, v in self.gaps.items()},
            "phi_preserved": self.preserved,
            "rationality": self.rationality,
            "mismatches": [
                {"table": c.table, "row": c.row, "column": c.column,
                 "computed": exact_str(c.value), "printed": c.printed}
                for c in self.mismatches
            ],
        }


def _row(j: Judgment, columns) -> list:
    return [j[f] for f in columns]


def reproduce() -> Reproduction:
    profile = example_profile()
    weights = example_weights()
    agenda = profile.agenda
    columns = list(agenda.base)
    ref = reference_tables()
    out = Reproduction(columns=[f.text for f in columns])

    def record(table: str, label: str, j: Judgment, printed: list[str] | None):
        vals = _row(j, columns)
        out.tables.setdefault(table, []).append((label, vals))
        for f, v, p in zip(columns, vals, printed or [None] * len(vals)):
            out.cells.append(Cell(table, label, f.text, v, p))

    for j in profile:
        record("table1", j.name, j, None)
        res = j.rationality
        out.rationality[j.name] = {
            "rational": res.rational,
            "conflict": [f.text for f in res.witness] if res.witness else [],
        }

    record("table2", "F", linear_pool(profile, weights), ref["table2"]["F"])

    phi = common_ground_of(profile)
    state = SessionState(profile, phi, weights)
    a, not_c = agenda.parse("a"), agenda.parse("!c")
    trace = run_sequence(state, [LearningEvent(a, 0), LearningEvent(not_c, 1)])

    for step, table in zip(trace.steps, ("table3", "table4")):
        for j in step.after.profile:
            record(table, j.name, j, ref[table][j.name])
        record(table, "F", step.update_then_aggregate, ref[table]["F"])
        out.tables[table].append(("F (pool first)", _row(step.aggregate_then_update, columns)))
        out.gaps[f"learn {step.learned.text}"] = step.gap
        out.preserved[f"learn {step.learned.text}"] = step.preservation.preserved

    after_a = trace.steps[0].after
    printed = ref["caption"]["!c after a"]
    for j in list(after_a.profile) + [after_a.collective]:
        out.cells.append(Cell("caption", j.name, "!c", j[not_c], printed))
    return out
