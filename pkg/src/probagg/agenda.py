"""Agendas: finite negation-closed formula sets and their structural checks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .logic import Formula, Language, LanguageMismatchError, LogicError


class AgendaError(LogicError):
    pass


class NegationClosureError(AgendaError):
    def __init__(self, missing: list[Formula]):
        self.missing = missing
        names = ", ".join(f.text for f in missing)
        super().__init__(f"agenda is not closed under negation; missing negations of: {names}")


@dataclass(frozen=True)
class NestedWitness:
    """Chain of pair representatives ordered so each entails the next."""

    chain: tuple[Formula, ...]
    non_contingent: tuple[Formula, ...] = ()


@dataclass(frozen=True)
class PreconditionReport:
    non_nested: bool
    contingent_count: int
    satisfied: bool
    and_stable: bool
    statement: str = (
        "On a non-nested agenda with more than 4 contingent formulas, every "
        "consensus-compatible independent rule is linear."
    )

    def to_dict(self) -> dict:
        return {
            "non_nested": self.non_nested,
            "contingent_count": self.contingent_count,
            "and_stable": self.and_stable,
            "satisfied": self.satisfied,
            "statement": self.statement,
        }


class Agenda:
    """An ordered, duplicate-free, negation-closed set of formulas.

    ``base`` holds one representative per ``{f, !f}`` pair, the one listed
    first; the auto-added negations are never representatives.
    """

    def __init__(self, lang: Language, formulas: Sequence[Formula], base: Sequence[Formula]):
        self.lang = lang
        self.formulas: tuple[Formula, ...] = tuple(formulas)
        self.base: tuple[Formula, ...] = tuple(base)
        self._index = {f.mask: i for i, f in enumerate(self.formulas)}

    def __repr__(self):
        return f"Agenda({[f.text for f in self.formulas]})"

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    def __contains__(self, f: Formula) -> bool:
        return isinstance(f, Formula) and f.lang == self.lang and f.mask in self._index

    def __eq__(self, other):
        if not isinstance(other, Agenda):
            return NotImplemented
        return self.lang == other.lang and set(self._index) == set(other._index)

    def __hash__(self):
        return hash((self.lang.atoms, frozenset(self._index)))

    def lookup(self, f: Formula) -> Formula | None:
        """The agenda's own copy of a formula with the same truth set."""
        i = self._index.get(f.mask)
        return None if i is None else self.formulas[i]

    def index(self, f: Formula) -> int:
        return self._index[f.mask]

    def parse(self, text: str) -> Formula:
        return self.lang.parse(text)

    @cached_property
    def pairs(self) -> tuple[tuple[Formula, Formula], ...]:
        return tuple((f, self.lookup(f.negate())) for f in self.base)

    def is_negation_closed(self) -> bool:
        full = self.lang.full_mask
        return all((full & ~m) in self._index for m in self._index)

    def is_and_stable(self, scope: str = "base") -> bool:
        return not and_stability_gaps(self, scope)

    @cached_property
    def contingent_count(self) -> int:
        return sum(1 for f in self.formulas if f.is_contingent())

    @cached_property
    def nested_witness(self) -> NestedWitness | None:
        return find_nested_chain(self)

    def is_nested(self) -> bool:
        return self.nested_witness is not None

    def theorem1_preconditions(self) -> PreconditionReport:
        non_nested = not self.is_nested()
        count = self.contingent_count
        return PreconditionReport(
            non_nested=non_nested,
            contingent_count=count,
            satisfied=non_nested and count > 4,
            and_stable=self.is_and_stable(),
        )

    @cached_property
    def indicator_rows(self) -> tuple[tuple[int, ...], ...]:
        n = self.lang.valuation_count
        return tuple(tuple(f.mask >> v & 1 for v in range(n)) for f in self.formulas)


def build_agenda(formulas: Iterable[Formula], auto_close: bool = True,
                 lang: Language | None = None) -> Agenda:
    formulas = list(formulas)
    if lang is None:
        if not formulas:
            raise AgendaError("an empty agenda needs an explicit language")
        lang = formulas[0].lang
    for f in formulas:
        if f.lang != lang:
            raise LanguageMismatchError(f"formula {f.text!r} is over a different language")

    full = lang.full_mask
    seen: dict[int, Formula] = {}
    for f in formulas:
        seen.setdefault(f.mask, f)
    ordered = list(seen.values())
    missing = [f for f in ordered if (full & ~f.mask) not in seen]
    if missing and not auto_close:
        raise NegationClosureError(missing)

    base = []
    covered: set[int] = set()
    for f in ordered:
        if f.mask not in covered:
            base.append(f)
            covered.update((f.mask, full & ~f.mask))
    closed = ordered + [f.negate() for f in missing]
    return Agenda(lang, closed, base)


def agenda_from_texts(atoms: Sequence[str], texts: Sequence[str], auto_close: bool = True) -> Agenda:
    lang = Language(tuple(atoms))
    return build_agenda([lang.parse(t) for t in texts], auto_close=auto_close, lang=lang)


def and_stability_gaps(x: Agenda, scope: str = "base") -> list[tuple[Formula, Formula]]:
    """Pairs whose contingent conjunction is missing from the agenda.

    ``scope="base"`` checks the pair representatives only (the reading under
    which ``±{a, b, a & b}`` counts as ∧-stable); ``"full"`` checks every member.
    Conjunctions that come out as a tautology or contradiction are exempt.
    """
    if scope not in ("base", "full"):
        raise ValueError(f"unknown scope {scope!r}")
    members = x.base if scope == "base" else x.formulas
    gaps = []
    for i, f in enumerate(members):
        for g in members[i + 1:]:
            m = f.mask & g.mask
            if 0 < m < x.lang.full_mask and m not in x._index:
                gaps.append((f, g))
    return gaps


def and_closure(x: Agenda, scope: str = "base") -> Agenda:
    """Smallest superset that is ∧-stable in ``scope``, re-closed under negation."""
    full = x.lang.full_mask
    members = list(x.base if scope == "base" else x.formulas)
    masks = {f.mask for f in members}
    frontier = list(members)
    while frontier:
        new = []
        for f in frontier:
            for g in list(members):
                m = f.mask & g.mask
                if 0 < m < full and m not in masks:
                    h = f.conjoin(g)
                    masks.add(m)
                    members.append(h)
                    new.append(h)
        frontier = new
    return build_agenda(members + list(x.formulas), auto_close=True, lang=x.lang)


def _is_chain(masks: Sequence[int]) -> bool:
    for i, m in enumerate(masks):
        for k in masks[i + 1:]:
            if m & ~k and k & ~m:
                return False
    return True


def find_nested_chain(x: Agenda) -> NestedWitness | None:
    """Backtracking search for one formula per pair forming an inclusion chain."""
    pairs = list(x.pairs)
    if not pairs:
        return NestedWitness(())
    n = x.lang.valuation_count
    # most unbalanced pairs first: they constrain the chain the most
    pairs.sort(key=lambda p: -abs(2 * p[0].popcount() - n))

    chosen: list[Formula] = []

    def comparable(m: int) -> bool:
        return all(not (m & ~c.mask and c.mask & ~m) for c in chosen)

    def search(i: int) -> bool:
        if i == len(pairs):
            return True
        for f in pairs[i] if i else pairs[i][:1]:
            # orientation of the first pair is free: flipping every choice preserves a chain
            if comparable(f.mask):
                chosen.append(f)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    if not search(0):
        return None
    chain = tuple(sorted(chosen, key=lambda f: f.popcount()))
    return NestedWitness(chain, tuple(f for f in chain if not f.is_contingent()))


def is_nested_bruteforce(x: Agenda) -> bool:
    pairs = x.pairs
    for choice in product((0, 1), repeat=len(pairs)):
        if _is_chain([p[c].mask for p, c in zip(pairs, choice)]):
            return True
    return False


def is_and_stable(x: Agenda, scope: str = "base") -> bool:
    return x.is_and_stable(scope)


def is_nested(x: Agenda) -> bool:
    return x.is_nested()


def contingent_count(x: Agenda) -> int:
    return x.contingent_count


def theorem1_preconditions(x: Agenda) -> PreconditionReport:
    return x.theorem1_preconditions()

