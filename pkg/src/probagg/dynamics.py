"""Bayesian updating of judgments and its interaction with linear pooling.

The learnable formulas of a session are the common ground and the negations
of its members, restricted to those whose shared value is still positive.
Members whose shared value has dropped to zero stay in the common ground for
the agreement check but can no longer be conditioned on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import lp
from .agenda import Agenda
from .judgment import (
    IrrationalJudgmentError,
    Judgment,
    ProbabilityInterval,
    extension_bounds,
)
from .logic import Formula
from .pooling import Profile, Weights, linear_pool


class DynamicsError(ValueError):
    who: str | None = None

    def annotate(self, who: str) -> "DynamicsError":
        self.who = who
        self.args = (f"{who}: {self.args[0]}",) + self.args[1:]
        return self


class NullConditioningError(DynamicsError):
    def __init__(self, formula: Formula):
        self.formula = formula
        super().__init__(f"cannot condition on {formula.text!r}: its probability is 0")


class AmbiguousUpdateError(DynamicsError):
    """A value the update needs is not fixed by the agenda values."""

    def __init__(self, formula: Formula, interval: ProbabilityInterval | None):
        self.formula = formula
        self.interval = interval
        if interval is None:
            msg = f"value of {formula.text!r} is not determined and the judgment is not rational"
        else:
            msg = f"value of {formula.text!r} is only bounded: [{interval.lo}, {interval.hi}]"
        super().__init__(msg)


class DomainError(DynamicsError):
    pass


class InadmissibleEventError(DynamicsError):
    def __init__(self, message: str, step: int, learned: Formula, trace: "Trace"):
        self.step = step
        self.learned = learned
        self.trace = trace
        super().__init__(message)


def _is_zero(x, eps) -> bool:
    return abs(x) <= eps if eps else x == 0


def _same(xs: Sequence, eps) -> bool:
    return all((abs(x - xs[0]) <= eps) if eps else x == xs[0] for x in xs)


def point_value(j: Judgment, f: Formula):
    """Value of ``f`` under ``j``: agenda value, else forced by linearity or LP."""
    v = j.determined_value(f)
    if v is not None:
        return v
    if not j.rational:
        raise AmbiguousUpdateError(f, None)
    bounds = extension_bounds(j, f)
    if not bounds.degenerate:
        raise AmbiguousUpdateError(f, bounds)
    return bounds.lo


def bayes_update(j: Judgment, phi: Formula) -> Judgment:
    """Condition ``j`` on the truth of ``phi``: ``J(phi & psi) / J(phi)``.

    Conjunctions outside the agenda are evaluated through
    :func:`point_value`, so irrational inputs work whenever every needed value
    is linearly determined. The result carries the conditioned certificate
    when ``j`` is rational.
    """
    denom = point_value(j, phi)
    if _is_zero(denom, j.eps):
        raise NullConditioningError(phi)
    values = {}
    for f, g in j.agenda.pairs:
        v = point_value(j, phi.conjoin(f)) / denom
        if j.eps:
            v = min(1.0, max(0.0, v))
        values[f] = v
        values[g] = 1 - v
    cert = j.certificate.condition(phi) if j.rational else None
    return Judgment(j.agenda, values, eps=j.eps, certificate=cert, name=j.name)


def bayes_update_bounds(j: Judgment, phi: Formula,
                        targets: Sequence[Formula] | None = None) -> dict[Formula, ProbabilityInterval]:
    """Range of ``P(psi | phi)`` over every measure extending ``j``.

    Uses the Charnes-Cooper substitution ``y = w / P(phi)``, ``t = 1 / P(phi)``
    to turn the ratio into a linear objective. Targets may lie outside the
    agenda.
    """
    if not j.rational:
        raise IrrationalJudgmentError("interval updates need a rational judgment")
    if extension_bounds(j, phi).hi == 0:
        raise NullConditioningError(phi)
    rows, rhs = j._system()
    one, zero = j._num(1), j._num(0)
    n = j.agenda.lang.valuation_count
    A = [row + [-b] for row, b in zip(rows, rhs)]
    A.append([one if phi.mask >> v & 1 else zero for v in range(n)] + [zero])
    b = [zero] * len(rows) + [one]
    out = {}
    for psi in targets if targets is not None else j.agenda.formulas:
        m = phi.mask & psi.mask
        c = [one if m >> v & 1 else zero for v in range(n)] + [zero]
        lo = lp.solve(A, b, c, eps=j.eps).value
        hi = lp.solve(A, b, c, maximize=True, eps=j.eps).value
        out[psi] = ProbabilityInterval(lo, max(lo, hi))
    return out


# -- common ground ---------------------------------------------------------


class CommonGround:
    """An ∧-stable subset of the agenda (contingent conjunctions only)."""

    def __init__(self, agenda: Agenda, formulas: Sequence[Formula]):
        self.agenda = agenda
        own = []
        seen = set()
        for f in formulas:
            g = agenda.lookup(f)
            if g is None:
                raise DomainError(f"common-ground formula {f.text!r} is not in the agenda")
            if g.mask not in seen:
                seen.add(g.mask)
                own.append(g)
        self.formulas: tuple[Formula, ...] = tuple(own)
        full = agenda.lang.full_mask
        for i, f in enumerate(own):
            for g in own[i + 1:]:
                m = f.mask & g.mask
                if 0 < m < full and m not in seen:
                    raise DomainError(
                        f"common ground is not ∧-stable: {f.text!r} & {g.text!r} is missing")

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)

    def __contains__(self, f: Formula) -> bool:
        return any(g.mask == f.mask for g in self.formulas)

    def __repr__(self):
        return f"CommonGround({[f.text for f in self.formulas]})"

    def texts(self) -> list[str]:
        return [f.text for f in self.formulas]

    def domain_violations(self, p: Profile) -> list[str]:
        """Why ``p`` falls outside the restricted domain, empty if it doesn't."""
        out = []
        for f in self.formulas:
            vals = p.values(f)
            if not _same(vals, p.eps):
                out.append(f"individuals disagree on {f.text!r}: {[str(v) for v in vals]}")
            elif _is_zero(vals[0], p.eps):
                out.append(f"shared value of {f.text!r} is 0")
        return out

    def in_domain(self, p: Profile) -> bool:
        return not self.domain_violations(p)

    def learnable(self, p: Profile) -> list[Formula]:
        out = []
        for f in self.formulas:
            for g in (f, self.agenda.lookup(f.negate())):
                vals = p.values(g)
                if _same(vals, p.eps) and not _is_zero(vals[0], p.eps) and g not in out:
                    out.append(g)
        return out


def common_ground_of(p: Profile) -> CommonGround:
    """Maximal ∧-stable set of formulas with equal, nonzero values.

    Greedy in agenda order: a formula joins when its contingent conjunctions
    with the members so far all have shared nonzero values. If a later
    conjunction is then missing, the later member of the offending pair is
    banned and the pass repeats.
    """
    x, eps = p.agenda, p.eps
    full = x.lang.full_mask
    equal = [f for f in x if _same(p.values(f), eps) and not _is_zero(p[0][f], eps)]
    equal_masks = {f.mask for f in equal}
    order = {f.mask: i for i, f in enumerate(equal)}
    banned: set[int] = set()
    while True:
        chosen: list[Formula] = []
        for f in equal:
            if f.mask in banned:
                continue
            if all(not (0 < f.mask & g.mask < full) or (f.mask & g.mask) in equal_masks
                   for g in chosen):
                chosen.append(f)
        masks = {f.mask for f in chosen}
        offender = None
        for i, f in enumerate(chosen):
            for g in chosen[i + 1:]:
                m = f.mask & g.mask
                if 0 < m < full and m not in masks:
                    offender = max(f, g, key=lambda h: order[h.mask])
                    break
            if offender:
                break
        if offender is None:
            return CommonGround(x, chosen)
        banned.add(offender.mask)


def check_domain(p: Profile, phi: CommonGround):
    problems = phi.domain_violations(p)
    if problems:
        raise DomainError("profile is outside the common-ground domain: " + "; ".join(problems))


# -- composites --------------------------------------------------------------


def update_profile(p: Profile, phi: Formula) -> Profile:
    updated = []
    for i, j in enumerate(p):
        try:
            updated.append(bayes_update(j, phi))
        except DynamicsError as exc:
            raise exc.annotate(f"individual {i + 1}")
    return Profile(p.agenda, updated)


def aggregate_then_update(p: Profile, w: Weights, phi: Formula) -> Judgment:
    try:
        return bayes_update(linear_pool(p, w), phi)
    except DynamicsError as exc:
        raise exc.annotate("collective")


def update_then_aggregate(p: Profile, w: Weights, phi: Formula) -> Judgment:
    return linear_pool(update_profile(p, phi), w)


@dataclass(frozen=True)
class Commutativity:
    updated: Profile
    update_then_aggregate: Judgment
    aggregate_then_update: Judgment
    gap: object
    worst: Formula | None


def commutativity(p: Profile, w: Weights, phi: Formula) -> Commutativity:
    updated = update_profile(p, phi)
    uta = linear_pool(updated, w)
    atu = aggregate_then_update(p, w, phi)
    gap = Fraction(0) if not p.eps else 0.0
    worst = None
    for f in p.agenda:
        d = abs(uta[f] - atu[f])
        if d > gap:
            gap, worst = d, f
    return Commutativity(updated, uta, atu, gap, worst)


def dynamic_rationality_gap(p: Profile, w: Weights, phi: Formula):
    """Largest disagreement between update-then-pool and pool-then-update."""
    return commutativity(p, w, phi).gap


@dataclass
class PreservationReport:
    learned: Formula
    values: dict[Formula, tuple]
    preserved: bool

    def to_dict(self, render=str) -> dict:
        return {
            "learned": self.learned.text,
            "preserved": self.preserved,
            "values": {f.text: [render(v) for v in vals] for f, vals in self.values.items()},
        }


def check_phi_preserving(p: Profile, phi_set: CommonGround, learned: Formula,
                         updated: Profile | None = None) -> PreservationReport:
    if updated is None:
        updated = update_profile(p, learned)
    values = {f: updated.values(f) for f in phi_set}
    ok = all(_same(v, p.eps) for v in values.values())
    return PreservationReport(learned, values, ok)


# -- sessions --------------------------------------------------------------


@dataclass(frozen=True)
class LearningEvent:
    learned: Formula
    index: int = 0


@dataclass(frozen=True)
class SessionState:
    profile: Profile
    phi: CommonGround
    weights: Weights

    def __post_init__(self):
        if len(self.weights) != self.profile.n:
            raise DomainError(f"{len(self.weights)} weights for {self.profile.n} individuals")

    @property
    def collective(self) -> Judgment:
        return linear_pool(self.profile, self.weights)

    def learnable(self) -> list[Formula]:
        return self.phi.learnable(self.profile)


@dataclass(frozen=True)
class TraceStep:
    step: int
    learned: Formula
    before: SessionState
    after: SessionState
    update_then_aggregate: Judgment
    aggregate_then_update: Judgment
    gap: object
    preservation: PreservationReport
    learnable: tuple[Formula, ...]


@dataclass
class Trace:
    initial: SessionState
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def final(self) -> SessionState:
        return self.steps[-1].after if self.steps else self.initial

    def __len__(self):
        return len(self.steps)


def run_sequence(initial: SessionState, events: Sequence[LearningEvent]) -> Trace:
    """Apply learning events in order, checking commutativity at each step.

    The entry state must lie in the common-ground domain. Raises
    :class:`InadmissibleEventError` (carrying the partial trace) on the first
    event outside the learnable set.
    """
    check_domain(initial.profile, initial.phi)
    trace = Trace(initial)
    state = initial
    for k, event in enumerate(events):
        learnable = state.learnable()
        learned = state.profile.agenda.lookup(event.learned)
        if learned is None or learned not in learnable:
            shared = ""
            if learned is not None:
                vals = state.profile.values(learned)
                if _same(vals, state.profile.eps):
                    shared = f" (shared value {vals[0]})"
            raise InadmissibleEventError(
                f"step {k + 1}: {event.learned.text!r} is not learnable{shared}; "
                f"learnable: {[f.text for f in learnable]}",
                k + 1, event.learned, trace)
        result = commutativity(state.profile, state.weights, learned)
        report = check_phi_preserving(state.profile, state.phi, learned, result.updated)
        after = SessionState(result.updated, state.phi, state.weights)
        trace.steps.append(TraceStep(
            step=k + 1,
            learned=learned,
            before=state,
            after=after,
            update_then_aggregate=result.update_then_aggregate,
            aggregate_then_update=result.aggregate_then_update,
            gap=result.gap,
            preservation=report,
            learnable=tuple(after.learnable()),
        ))
        state = after
    return trace
