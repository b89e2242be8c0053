"""Seeded random agendas, measures and profiles with exact rational values.

Judgments are always induced from measures, which makes them rational by
construction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .agenda import Agenda, build_agenda
from .judgment import Judgment, Measure, judgment_from_measure
from .logic import Formula, Language, formula_from_truthset
from .pooling import Profile, Weights

DYADIC_BITS = 10


def _dyadic(rng: random.Random, bits: int) -> int:
    # exponential draw on a dyadic grid, kept positive
    return int(rng.expovariate(1.0) * (1 << bits)) + 1


def random_masses(rng: random.Random, k: int, bits: int = DYADIC_BITS) -> list[Fraction]:
    """Dirichlet(1, ..., 1)-like positive rationals summing to 1."""
    raw = [_dyadic(rng, bits) for _ in range(k)]
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def random_measure(lang: Language, rng: random.Random, support: int | None = None,
                   sparsity: float = 0.0) -> Measure:
    """Random measure on ``support`` (a valuation mask, default all).

    With ``sparsity > 0`` each valuation is dropped with that probability,
    keeping at least one.
    """
    n = lang.valuation_count
    support = lang.full_mask if support is None else support
    idx = [v for v in range(n) if support >> v & 1]
    if sparsity:
        kept = [v for v in idx if rng.random() >= sparsity]
        idx = kept or [rng.choice(idx)]
    masses = random_masses(rng, len(idx))
    w = [Fraction(0)] * n
    for v, m in zip(idx, masses):
        w[v] = m
    return Measure(lang, tuple(w))


def conjunction_lattice(lang: Language) -> list[Formula]:
    """Every nonempty conjunction of atoms, shortest first."""
    out = []
    atoms = [lang.atom(a) for a in lang.atoms]
    for r in range(1, len(atoms) + 1):
        for combo in combinations(atoms, r):
            f = combo[0]
            for g in combo[1:]:
                f = f.conjoin(g)
            out.append(f)
    return out


def example_agenda() -> Agenda:
    """The three-atom agenda of the bundled example (16 formulas)."""
    lang = Language(("a", "b", "c"))
    texts = ["a", "b", "c", "a -> b", "a & b", "a & c", "b & c", "a & b & c"]
    return build_agenda([lang.parse(t) for t in texts], lang=lang)


def random_weights(n: int, rng: random.Random, positive: bool = True) -> Weights:
    if not positive and rng.random() < 0.2:
        w = [Fraction(0)] * n
        w[rng.randrange(n)] = Fraction(1)
        return Weights(tuple(w))
    raw = [rng.randint(1, 20) for _ in range(n)]
    total = sum(raw)
    return Weights(tuple(Fraction(r, total) for r in raw))


def random_common_ground(agenda: Agenda, rng: random.Random) -> list[Formula]:
    """A random ∧-closed set of atom conjunctions present in ``agenda``."""
    lattice = [f for f in conjunction_lattice(agenda.lang) if f in agenda]
    k = rng.randint(1, min(3, len(lattice)))
    picked = rng.sample(lattice, k)
    masks = {f.mask for f in picked}
    changed = True
    while changed:
        changed = False
        for f in list(picked):
            for g in list(picked):
                m = f.mask & g.mask
                if m and m not in masks and agenda.lookup(f.conjoin(g)) is not None:
                    masks.add(m)
                    picked.append(f.conjoin(g))
                    changed = True
    return [agenda.lookup(f) for f in picked]


def _cells(lang: Language, formulas: Sequence[Formula]) -> list[int]:
    """Atoms of the Boolean algebra generated by ``formulas``, as masks."""
    by_sig: dict[tuple, int] = {}
    for v in range(lang.valuation_count):
        sig = tuple(f.mask >> v & 1 for f in formulas)
        by_sig[sig] = by_sig.get(sig, 0) | (1 << v)
    return list(by_sig.values())


def profile_in_domain(agenda: Agenda, phi: Sequence[Formula], n: int,
                      rng: random.Random) -> Profile:
    """Individuals agree on every cell generated by ``phi`` and differ inside cells.

    All cells get positive shared mass, so every formula in ``phi`` has a
    shared nonzero value.
    """
    lang = agenda.lang
    cells = _cells(lang, phi)
    shared = random_masses(rng, len(cells))
    judgments = []
    for i in range(n):
        w = [Fraction(0)] * lang.valuation_count
        for cell, mass in zip(cells, shared):
            inner = random_measure(lang, rng, support=cell, sparsity=0.3)
            for v in range(lang.valuation_count):
                w[v] += mass * inner.weights[v]
        judgments.append(judgment_from_measure(Measure(lang, tuple(w)), agenda, name=f"J{i + 1}"))
    return Profile(agenda, judgments)


def random_profile(agenda: Agenda, n: int, rng: random.Random, sparsity: float = 0.0) -> Profile:
    return Profile(agenda, [
        judgment_from_measure(random_measure(agenda.lang, rng, sparsity=sparsity), agenda,
                              name=f"J{i + 1}")
        for i in range(n)
    ])


def _reshuffle_inside(m: Measure, mask: int, rng: random.Random) -> Measure:
    """Redistribute the mass of ``mask`` and of its complement independently."""
    lang = m.lang
    w = list(m.weights)
    for part in (mask, lang.full_mask & ~mask):
        total = sum(w[v] for v in range(lang.valuation_count) if part >> v & 1)
        if total == 0:
            continue
        fresh = random_measure(lang, rng, support=part)
        for v in range(lang.valuation_count):
            if part >> v & 1:
                w[v] = total * fresh.weights[v]
    return Measure(lang, tuple(w))


def profile_pair(agenda: Agenda, n: int, rng: random.Random) -> tuple[Profile, Profile, Formula]:
    """Two profiles with equal individual values on one random agenda formula."""
    p = random_profile(agenda, n, rng)
    f = rng.choice(agenda.formulas)
    q = Profile(agenda, [
        judgment_from_measure(_reshuffle_inside(j.certificate, f.mask, rng), agenda, name=j.name)
        for j in p
    ])
    return p, q, f


def random_agenda(lang: Language, pairs: int, rng: random.Random) -> Agenda:
    """``pairs`` distinct contingent ``{f, !f}`` pairs with random truth sets."""
    full = lang.full_mask
    chosen: list[int] = []
    taken: set[int] = set()
    limit = (1 << lang.valuation_count) // 2 - 1
    pairs = min(pairs, limit)
    while len(chosen) < pairs:
        m = rng.randint(1, full - 1)
        if m not in taken:
            chosen.append(m)
            taken.update((m, full & ~m))
    return build_agenda([formula_from_truthset(m, lang) for m in chosen], lang=lang)


def nested_agenda(lang: Language, length: int, rng: random.Random) -> tuple[Agenda, list[Formula]]:
    """Agenda built from a strictly increasing chain of ``length`` truth sets."""
    n = lang.valuation_count
    if length > n - 1:
        raise ValueError(f"chains of contingent formulas over {n} valuations are at most {n - 1} long")
    order = list(range(n))
    rng.shuffle(order)
    sizes = sorted(rng.sample(range(1, n), length))
    chain = []
    for s in sizes:
        m = 0
        for v in order[:s]:
            m |= 1 << v
        chain.append(formula_from_truthset(m, lang))
    # present members in random orientation and order
    shown = [f if rng.random() < 0.5 else f.negate() for f in chain]
    rng.shuffle(shown)
    return build_agenda(shown, lang=lang), chain


def perturb(j: Judgment, rng: random.Random, scale: int = 10) -> Judgment:
    """Shift one pair's values by a small rational, keeping the complement law."""
    f, g = rng.choice(j.agenda.pairs)
    delta = Fraction(rng.choice([-1, 1]) * rng.randint(1, scale), 40)
    v = min(Fraction(1), max(Fraction(0), j[f] + delta))
    values = dict(j.items())
    values[f] = v
    values[g] = 1 - v
    return Judgment(j.agenda, values, name=j.name)
