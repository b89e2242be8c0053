"""Probabilistic judgments on an agenda, certified by measures over valuations.

A judgment is rational when some probability vector ``w`` over the
``2 ** n`` valuations reproduces every agenda value: ``sum(w[v] for v in [f])
== J(f)``. That is an LP feasibility question, answered exactly by
:mod:`probagg.lp` in rational mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import lp
from .agenda import Agenda
from .logic import Formula, Language, LanguageMismatchError, characteristic

FLOAT_EPS = 1e-9


class JudgmentError(ValueError):
    pass


class IrrationalJudgmentError(JudgmentError):
    """An operation needing an extending measure was given an irrational judgment."""


def to_number(value, eps=0):
    """Coerce input to the arithmetic of the active mode.

    Rational mode (``eps == 0``) takes ints, Fractions and decimal or ``p/q``
    strings; binary floats are refused so that "0.7" stays exactly 7/10.
    """
    if eps:
        return float(Fraction(value)) if isinstance(value, str) else float(value)
    if isinstance(value, float):
        raise JudgmentError(f"float {value!r} in rational mode; pass a decimal string")
    if isinstance(value, bool):
        raise JudgmentError("booleans are not probabilities")
    return Fraction(value)


def _close(a, b, eps) -> bool:
    return a == b if not eps else abs(a - b) <= eps


@dataclass(frozen=True)
class Measure:
    lang: Language
    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.lang.valuation_count:
            raise JudgmentError(f"need {self.lang.valuation_count} weights, got {len(w)}")
        eps = self.eps
        if any(x < -eps for x in w):
            raise JudgmentError("measure has negative weight")
        if not _close(sum(w), 1, eps * len(w)):
            raise JudgmentError(f"measure weights sum to {sum(w)}, not 1")

    @property
    def eps(self):
        return FLOAT_EPS if any(isinstance(x, float) for x in self.weights) else 0

    def prob(self, f: Formula):
        if f.lang != self.lang:
            raise LanguageMismatchError("formula and measure use different languages")
        w = self.weights
        return sum((w[v] for v in f.valuations()), Fraction(0) if not self.eps else 0.0)

    def condition(self, f: Formula) -> "Measure":
        p = self.prob(f)
        if not p:
            raise JudgmentError(f"cannot condition on {f.text!r}: probability 0")
        zero = 0.0 if self.eps else Fraction(0)
        return Measure(self.lang, tuple(x / p if f.mask >> v & 1 else zero
                                        for v, x in enumerate(self.weights)))

    @staticmethod
    def mix(measures: Sequence["Measure"], weights: Sequence) -> "Measure":
        lang = measures[0].lang
        total = [sum(wi * m.weights[v] for wi, m in zip(weights, measures))
                 for v in range(lang.valuation_count)]
        return Measure(lang, tuple(total))

    @classmethod
    def uniform(cls, lang: Language) -> "Measure":
        n = lang.valuation_count
        return cls(lang, tuple(Fraction(1, n) for _ in range(n)))

    def to_dict(self) -> dict:
        return {"atoms": list(self.lang.atoms), "weights": [str(x) for x in self.weights]}


@dataclass(frozen=True)
class ProbabilityInterval:
    lo: object
    hi: object

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise JudgmentError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def width(self):
        return self.hi - self.lo

    def __iter__(self):
        return iter((self.lo, self.hi))


@dataclass(frozen=True)
class RationalityResult:
    rational: bool
    certificate: Measure | None = None
    witness: tuple[Formula, ...] | None = None

    def __bool__(self):
        return self.rational


class Judgment:
    """Agenda values, immutable. Look values up with ``j[formula]``."""

    def __init__(self, agenda: Agenda, values: Mapping[Formula, object], *, eps=0,
                 certificate: Measure | None = None, name: str | None = None):
        self.agenda = agenda
        self.eps = eps
        self.name = name
        vals = [None] * len(agenda)
        for f, v in values.items():
            if f.lang != agenda.lang:
                raise LanguageMismatchError(f"{f.text!r} is over a different language")
            if f not in agenda:
                raise JudgmentError(f"{f.text!r} is not in the agenda")
            vals[agenda.index(f)] = to_number(v, eps)
        missing = [agenda.formulas[i].text for i, v in enumerate(vals) if v is None]
        if missing:
            raise JudgmentError(f"no value for {', '.join(missing)}")
        for f, v in zip(agenda.formulas, vals):
            if v < -eps or v > 1 + eps:
                raise JudgmentError(f"value {v} for {f.text!r} outside [0, 1]")
        self._values = tuple(vals)
        for f, g in agenda.pairs:
            if not _close(self[f] + self[g], 1, eps):
                raise JudgmentError(
                    f"values of {f.text!r} and {g.text!r} sum to {self[f] + self[g]}, not 1")
        self._given_certificate = certificate

    @classmethod
    def from_values(cls, agenda: Agenda, values: Mapping, *, fill_complements: bool = True,
                    eps=0, name: str | None = None) -> "Judgment":
        """Build from formula or text keys; missing complements become ``1 - p``."""
        parsed: dict[Formula, object] = {}
        for k, v in values.items():
            f = agenda.parse(k) if isinstance(k, str) else k
            if f in parsed:
                raise JudgmentError(f"formula {f.text!r} given twice")
            parsed[f] = to_number(v, eps)
        if fill_complements:
            for f in list(parsed):
                g = f.negate()
                if g not in parsed and g in agenda:
                    parsed[g] = 1 - parsed[f]
        return cls(agenda, parsed, eps=eps, name=name)

    def __getitem__(self, f: Formula):
        try:
            return self._values[self.agenda.index(f)]
        except KeyError:
            raise KeyError(f"{f.text!r} is not in the agenda") from None

    def get(self, f: Formula, default=None):
        return self[f] if f in self.agenda else default

    def items(self):
        return zip(self.agenda.formulas, self._values)

    def __eq__(self, other):
        if not isinstance(other, Judgment):
            return NotImplemented
        return self.agenda == other.agenda and all(other[f] == v for f, v in self.items())

    def __hash__(self):
        return hash(frozenset((f.mask, v) for f, v in self.items()))

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        body = ", ".join(f"{f.text}={v}" for f, v in self.items())
        return f"Judgment({label}{body})"

    def as_dict(self) -> dict[str, object]:
        return {f.text: v for f, v in self.items()}

    # -- linear algebra view ------------------------------------------------

    def _num(self, x):
        return float(x) if self.eps else Fraction(x)

    def _system(self, extra: Iterable[tuple[Formula, object]] = (), pairs=None):
        """Rows ``[indicator(f)]`` and right-hand sides, plus normalisation."""
        n = self.agenda.lang.valuation_count
        one, zero = self._num(1), self._num(0)
        reps = [f for f, _ in self.agenda.pairs] if pairs is None else pairs
        rows = [[one] * n]
        rhs = [one]
        for f in reps:
            rows.append([one if f.mask >> v & 1 else zero for v in range(n)])
            rhs.append(self[f])
        for f, val in extra:
            rows.append([one if f.mask >> v & 1 else zero for v in range(n)])
            rhs.append(self._num(val))
        return rows, rhs

    @cached_property
    def _nullspace(self):
        rows, _ = self._system()
        return lp.nullspace(rows, self.eps)

    @cached_property
    def quasi_measure(self) -> list | None:
        """A signed weight vector matching every agenda value, if one exists.

        It exists for every rational judgment and for some irrational ones
        (row J2 of the bundled example profile is one). Targets in the span
        of the agenda's indicators get the same value from every such vector.
        """
        rows, rhs = self._system()
        return lp.particular_solution(rows, rhs, self.eps)

    def is_determined(self, target: Formula) -> bool:
        if target.lang != self.agenda.lang:
            raise LanguageMismatchError("target over a different language")
        m = target.mask
        return all(abs(sum(z[v] for v in target.valuations())) <= self.eps
                   for z in self._nullspace) if m else True

    def determined_value(self, target: Formula):
        """Value forced on ``target`` by linearity alone, or None."""
        if target in self.agenda:
            return self[target]
        w = self.quasi_measure
        if w is None or not self.is_determined(target):
            return None
        return sum((w[v] for v in target.valuations()), self._num(0))

    # -- rationality --------------------------------------------------------

    @cached_property
    def rationality(self) -> RationalityResult:
        cert = self._given_certificate
        if cert is not None and self._reproduces(cert):
            return RationalityResult(True, cert)
        rows, rhs = self._system()
        res = lp.solve(rows, rhs, eps=self.eps)
        if res.feasible:
            return RationalityResult(True, Measure(self.agenda.lang, res.x))
        return RationalityResult(False, witness=self._irreducible_subset())

    def _reproduces(self, m: Measure) -> bool:
        return m.lang == self.agenda.lang and all(
            _close(m.prob(f), v, self.eps) for f, v in self.items())

    def _feasible(self, reps) -> bool:
        rows, rhs = self._system(pairs=reps)
        return lp.solve(rows, rhs, eps=self.eps).feasible

    def _irreducible_subset(self) -> tuple[Formula, ...]:
        keep = [f for f, _ in self.agenda.pairs]
        i = 0
        while i < len(keep):
            trial = keep[:i] + keep[i + 1:]
            if not self._feasible(trial):
                keep = trial
            else:
                i += 1
        return tuple(keep)

    @property
    def rational(self) -> bool:
        return self.rationality.rational

    @property
    def certificate(self) -> Measure | None:
        return self.rationality.certificate


def check_rational(j: Judgment) -> RationalityResult:
    return j.rationality


def _require_rational(j: Judgment):
    if not j.rational:
        names = ", ".join(f.text for f in j.rationality.witness or ())
        raise IrrationalJudgmentError(
            f"judgment {j.name or ''} is not probabilistically rational (conflict among: {names})")


def _indicator(f: Formula, j: Judgment):
    one, zero = j._num(1), j._num(0)
    return [one if f.mask >> v & 1 else zero for v in range(f.lang.valuation_count)]


def extension_bounds(j: Judgment, target: Formula) -> ProbabilityInterval:
    """Least and greatest probability of ``target`` over all extending measures."""
    _require_rational(j)
    point = j.determined_value(target)
    if point is not None:
        return ProbabilityInterval(point, point)
    rows, rhs = j._system()
    c = _indicator(target, j)
    lo = lp.solve(rows, rhs, c, eps=j.eps).value
    hi = lp.solve(rows, rhs, c, maximize=True, eps=j.eps).value
    return ProbabilityInterval(lo, max(lo, hi))


def consistent_with_truth(j: Judgment, phi_star: Formula) -> bool:
    if phi_star.lang != j.agenda.lang:
        raise LanguageMismatchError("formula over a different language")
    if phi_star.is_contradiction():
        return False
    rows, rhs = j._system(extra=[(phi_star, 1)])
    return lp.solve(rows, rhs, eps=j.eps).feasible


def judgment_from_measure(m: Measure, x: Agenda, name: str | None = None) -> Judgment:
    if m.lang != x.lang:
        raise LanguageMismatchError("measure and agenda use different languages")
    return Judgment(x, {f: m.prob(f) for f in x.formulas}, eps=m.eps, certificate=m, name=name)


def unique_joint(j: Judgment) -> bool:
    """Whether the agenda values pin down a single measure over valuations."""
    _require_rational(j)
    if not j._nullspace:
        return True
    lang = j.agenda.lang
    for v in range(lang.valuation_count):
        if not extension_bounds(j, characteristic(v, lang)).degenerate:
            return False
    return True
