"""JSON file formats. Probabilities travel as decimal or ``p/q`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .agenda import Agenda, build_agenda
from .dynamics import CommonGround, LearningEvent, SessionState, common_ground_of
from .judgment import Judgment, JudgmentError
from .logic import Language, LogicError
from .pooling import PoolingError, Profile, Weights


class SchemaError(ValueError):
    def __init__(self, message: str, path: str = "", field: str = ""):
        self.path = path
        self.field = field
        where = " ".join(x for x in (path, f"[{field}]" if field else "") if x)
        super().__init__(f"{where}: {message}" if where else message)


_PROB = {"type": "string", "pattern": r"^\s*(\d+(\.\d*)?|\.\d+|\d+\s*/\s*\d+)\s*$"}

AGENDA_SCHEMA = {
    "type": "object",
    "required": ["atoms", "formulas"],
    "properties": {
        "atoms": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "formulas": {"type": "array", "items": {"type": "string"}},
        "auto_close": {"type": "boolean"},
    },
}

JUDGMENT_SCHEMA = {
    "type": "object",
    "required": ["values"],
    "properties": {
        "agenda_ref": {"type": ["string", "object"]},
        "name": {"type": "string"},
        "values": {"type": "object", "additionalProperties": _PROB},
    },
}

PROFILE_SCHEMA = {
    "type": "object",
    "required": ["judgments"],
    "properties": {
        "agenda": {"type": ["string", "object"]},
        "judgments": {"type": "array", "minItems": 1, "items": JUDGMENT_SCHEMA},
    },
}

WEIGHTS_SCHEMA = {
    "type": "object",
    "required": ["weights"],
    "properties": {"weights": {"type": "array", "minItems": 1, "items": _PROB}},
}

SESSION_SCHEMA = {
    "type": "object",
    "required": ["profile", "events"],
    "properties": {
        "profile": {"type": ["string", "object"]},
        "weights": {"type": ["string", "object"]},
        "common_ground": {"type": "array", "items": {"type": "string"}},
        "events": {
            "type": "array",
            "items": {"type": "object", "required": ["learn"],
                      "properties": {"learn": {"type": "string"}}},
        },
    },
}


def _validate(obj, schema, path: str):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        field = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(exc.message, path, field) from None


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc.strerror}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", str(path)) from None


def _resolve(ref, base: Path | None) -> tuple[Any, Path | None, str]:
    """Inline object, or a path relative to the referring file."""
    if isinstance(ref, str):
        p = Path(ref)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_json(p), p.parent, str(p)
    return ref, base, "<inline>"


def agenda_from_json(obj, base: Path | None = None, path: str = "<agenda>") -> Agenda:
    obj, base, where = _resolve(obj, base)
    path = where if where != "<inline>" else path
    _validate(obj, AGENDA_SCHEMA, path)
    try:
        lang = Language(tuple(obj["atoms"]))
        formulas = [lang.parse(t) for t in obj["formulas"]]
        return build_agenda(formulas, auto_close=obj.get("auto_close", True), lang=lang)
    except LogicError as exc:
        raise SchemaError(str(exc), path, "formulas") from None


def judgment_from_json(obj, agenda: Agenda | None = None, base: Path | None = None,
                       eps=0, path: str = "<judgment>") -> Judgment:
    _validate(obj, JUDGMENT_SCHEMA, path)
    if "agenda_ref" in obj:
        agenda = agenda_from_json(obj["agenda_ref"], base, path)
    if agenda is None:
        raise SchemaError("judgment has no agenda_ref and no enclosing agenda", path, "agenda_ref")
    try:
        return Judgment.from_values(agenda, obj["values"], eps=eps, name=obj.get("name"))
    except (LogicError, JudgmentError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), path, "values") from None


def profile_from_json(obj, base: Path | None = None, eps=0, path: str = "<profile>") -> Profile:
    obj, base, where = _resolve(obj, base)
    path = where if where != "<inline>" else path
    _validate(obj, PROFILE_SCHEMA, path)
    agenda = agenda_from_json(obj["agenda"], base, path) if "agenda" in obj else None
    judgments = []
    for i, item in enumerate(obj["judgments"]):
        j = judgment_from_json(item, agenda, base, eps, f"{path} judgments/{i}")
        if j.name is None:
            j.name = f"J{i + 1}"
        judgments.append(j)
        agenda = agenda or j.agenda
    try:
        return Profile(judgments[0].agenda, judgments)
    except PoolingError as exc:
        raise SchemaError(str(exc), path, "judgments") from None


def weights_from_json(obj, base: Path | None = None, eps=0, path: str = "<weights>") -> Weights:
    obj, base, where = _resolve(obj, base)
    path = where if where != "<inline>" else path
    if isinstance(obj, list):
        obj = {"weights": obj}
    _validate(obj, WEIGHTS_SCHEMA, path)
    try:
        return Weights.parse(obj["weights"], eps)
    except PoolingError as exc:
        raise SchemaError(str(exc), path, "weights") from None


def session_from_json(obj, base: Path | None = None, eps=0,
                      path: str = "<session>") -> tuple[SessionState, list[LearningEvent]]:
    obj, base, where = _resolve(obj, base)
    path = where if where != "<inline>" else path
    _validate(obj, SESSION_SCHEMA, path)
    profile = profile_from_json(obj["profile"], base, eps, path)
    if "weights" in obj:
        weights = weights_from_json(obj["weights"], base, eps, path)
    else:
        weights = Weights.equal(profile.n)
    agenda = profile.agenda
    try:
        if "common_ground" in obj:
            phi = CommonGround(agenda, [agenda.parse(t) for t in obj["common_ground"]])
        else:
            phi = common_ground_of(profile)
        events = [LearningEvent(agenda.parse(e["learn"]), i) for i, e in enumerate(obj["events"])]
        return SessionState(profile, phi, weights), events
    except (LogicError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc), path, "common_ground/events") from None


# -- rendering -------------------------------------------------------------


def exact_str(x) -> str:
    """``p/q`` (or an integer) for fractions; repr-free text for floats."""
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x, places: int = 4) -> str:
    """Round half away from zero to ``places`` decimals, exactly."""
    q = Fraction(x)
    scale = 10 ** places
    neg = q < 0
    n = (abs(q) * scale * 2 + 1) // 2
    s = str(n).rjust(places + 1, "0")
    out = f"{s[:-places]}.{s[-places:]}" if places else s
    return "-" + out if neg and n else out


def judgment_to_json(j: Judgment, places: int = 4, exact: bool = True) -> dict:
    out = {"name": j.name,
           "values": {f.text: decimal_str(v, places) for f, v in j.items()}}
    if exact:
        out["exact"] = {f.text: exact_str(v) for f, v in j.items()}
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=None, separators=(", ", ": "))
