"""Linear pooling and falsification checks for the pooling axioms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .agenda import Agenda
from .judgment import (
    FLOAT_EPS,
    Judgment,
    JudgmentError,
    Measure,
    consistent_with_truth,
    to_number,
)
from .logic import Formula, formula_from_truthset

Rule = Callable[["Profile"], Judgment]

DEFAULT_SAMPLE = 512


class PoolingError(ValueError):
    pass


class Profile:
    """Judgments of ``n >= 1`` individuals on a shared agenda.

    With ``require_rational`` every judgment must have an extending measure.
    The check is off by default: the bundled example profile contains an
    irrational row and still has to be pooled and updated.
    """

    def __init__(self, agenda: Agenda, judgments: Sequence[Judgment], *,
                 require_rational: bool = False):
        if not judgments:
            raise PoolingError("a profile needs at least one judgment")
        for i, j in enumerate(judgments):
            if j.agenda != agenda:
                raise PoolingError(f"judgment {i + 1} is on a different agenda")
        self.agenda = agenda
        self.judgments: tuple[Judgment, ...] = tuple(judgments)
        if require_rational and not self.all_rational:
            bad = ", ".join(str(i + 1) for i in self.irrational_indices)
            raise PoolingError(f"irrational judgments in profile: individual(s) {bad}")

    def __len__(self):
        return len(self.judgments)

    def __iter__(self):
        return iter(self.judgments)

    def __getitem__(self, i):
        return self.judgments[i]

    def __repr__(self):
        return f"Profile(n={len(self)}, agenda={self.agenda!r})"

    @property
    def n(self) -> int:
        return len(self.judgments)

    @property
    def eps(self):
        return self.judgments[0].eps

    @property
    def irrational_indices(self) -> list[int]:
        return [i for i, j in enumerate(self.judgments) if not j.rational]

    @property
    def all_rational(self) -> bool:
        return not self.irrational_indices

    def values(self, f: Formula) -> tuple:
        return tuple(j[f] for j in self.judgments)


@dataclass(frozen=True)
class Weights:
    w: tuple

    def __post_init__(self):
        w = tuple(self.w)
        object.__setattr__(self, "w", w)
        if not w:
            raise PoolingError("empty weight vector")
        eps = FLOAT_EPS if any(isinstance(x, float) for x in w) else 0
        if any(x < 0 for x in w):
            raise PoolingError("weights must be non-negative")
        total = sum(w)
        if (abs(total - 1) > eps * len(w)) if eps else total != 1:
            raise PoolingError(f"weights sum to {total}, not 1 (give thirds as '1/3')")

    @classmethod
    def parse(cls, values: Iterable, eps=0) -> "Weights":
        try:
            return cls(tuple(to_number(v, eps) for v in values))
        except (ValueError, ZeroDivisionError, JudgmentError) as exc:
            raise PoolingError(f"bad weight: {exc}") from None

    @classmethod
    def equal(cls, n: int) -> "Weights":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self):
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, i):
        return self.w[i]


def linear_pool(p: Profile, w: Weights) -> Judgment:
    if len(w) != p.n:
        raise PoolingError(f"{len(w)} weights for {p.n} judgments")
    eps = p.eps
    if eps:
        w = Weights(tuple(float(x) for x in w))
    values = {f: sum(wi * j[f] for wi, j in zip(w, p)) for f in p.agenda}
    cert = None
    if p.all_rational:
        cert = Measure.mix([j.certificate for j in p], list(w))
    return Judgment(p.agenda, values, eps=eps, certificate=cert, name="F")


def linear_rule(w: Weights) -> Rule:
    def rule(p: Profile) -> Judgment:
        return linear_pool(p, w)
    return rule


def is_dictatorial(w: Weights) -> int | None:
    """Zero-based index of the individual holding all the weight, if any."""
    for i, x in enumerate(w):
        if x == 1:
            return i
    return None


# -- consensus compatibility ---------------------------------------------


def _truth_consistent(j: Judgment, phi: Formula) -> bool:
    cache = j.__dict__.setdefault("_truth_cache", {})
    if phi.mask not in cache:
        cache[phi.mask] = j.rational and consistent_with_truth(j, phi)
    return cache[phi.mask]


@dataclass
class ConsensusReport:
    candidates: int
    applicable: int
    violations: list[Formula] = field(default_factory=list)
    seed: int | None = None
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "axiom": "consensus_compatibility",
            "candidates": self.candidates,
            "exhaustive": self.exhaustive,
            "applicable": self.applicable,
            "violations": [f.text for f in self.violations],
            "seed": self.seed,
            "ok": self.ok,
        }


def default_candidates(agenda: Agenda, seed: int = 0,
                       sample: int = DEFAULT_SAMPLE) -> tuple[list[Formula], bool]:
    lang = agenda.lang
    if len(lang.atoms) <= 4:
        return list(lang.all_formulas()), True
    rng = random.Random(seed)
    out = list(agenda.formulas)
    seen = {f.mask for f in out}
    while len(out) < len(agenda) + sample:
        m = rng.getrandbits(lang.valuation_count)
        if m not in seen:
            seen.add(m)
            out.append(formula_from_truthset(m, lang))
    return out, False


def check_consensus_compatibility(rule: Rule, p: Profile,
                                  candidates: Sequence[Formula] | None = None,
                                  seed: int = 0) -> ConsensusReport:
    """Check the rule's output wherever every individual could be certain.

    Candidates default to every truth set for up to four atoms and to the
    agenda plus a seeded random sample otherwise.
    """
    exhaustive = True
    if candidates is None:
        candidates, exhaustive = default_candidates(p.agenda, seed)
    out = rule(p)
    report = ConsensusReport(len(candidates), 0, seed=None if exhaustive else seed,
                             exhaustive=exhaustive)
    for phi in candidates:
        if all(_truth_consistent(j, phi) for j in p):
            report.applicable += 1
            if not _truth_consistent(out, phi):
                report.violations.append(phi)
    return report


# -- independence --------------------------------------------------------


@dataclass(frozen=True)
class IndependenceViolation:
    pair: int
    formula: Formula
    first: object
    second: object

    def to_dict(self) -> dict:
        return {"pair": self.pair, "formula": self.formula.text,
                "first": str(self.first), "second": str(self.second)}


@dataclass
class IndependenceReport:
    pairs: int
    comparisons: int
    violations: list[IndependenceViolation] = field(default_factory=list)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "axiom": "independence",
            "pairs": self.pairs,
            "comparisons": self.comparisons,
            "violations": [v.to_dict() for v in self.violations],
            "seed": self.seed,
            "ok": self.ok,
        }


def check_independence(rule: Rule, pairs: Sequence[tuple[Profile, Profile]],
                       seed: int | None = None) -> IndependenceReport:
    """Refutation test: equal inputs on a formula must give equal outputs there.

    Passing proves nothing about profiles outside ``pairs``.
    """
    report = IndependenceReport(len(pairs), 0, seed=seed)
    for k, (p, q) in enumerate(pairs):
        if p.agenda != q.agenda or p.n != q.n:
            raise PoolingError(f"pair {k} mixes agendas or group sizes")
        out_p, out_q = rule(p), rule(q)
        eps = max(p.eps, q.eps)
        for f in p.agenda:
            if all(abs(a - b) <= eps if eps else a == b for a, b in zip(p.values(f), q.values(f))):
                report.comparisons += 1
                a, b = out_p[f], out_q[f]
                if (abs(a - b) > eps) if eps else a != b:
                    report.violations.append(IndependenceViolation(k, f, a, b))
    return report
