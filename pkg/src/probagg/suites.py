"""Randomised checks of the commutativity result, on and off the restricted domain."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .agenda import Agenda, build_agenda
from .dynamics import CommonGround, check_phi_preserving, commutativity
from .generators import (
    example_agenda,
    profile_in_domain,
    random_common_ground,
    random_profile,
    random_weights,
)
from .jsonio import exact_str
from .logic import formula_from_truthset


@dataclass
class SuiteResult:
    name: str
    cases: int
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    degenerate: list[dict] = field(default_factory=list)
    seed: int = 0
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def rate(self) -> float:
        return self.passed / self.cases if self.cases else 1.0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "rate": round(self.rate, 6),
            "failures": self.failures[:20],
            "degenerate": self.degenerate[:20],
            **self.extra,
        }


@lru_cache(maxsize=None)
def _agenda_with_extras(extras: tuple[int, ...]) -> Agenda:
    base = example_agenda()
    lang = base.lang
    return build_agenda(list(base.formulas) + [formula_from_truthset(m, lang) for m in extras],
                        lang=lang)


def _random_agenda(rng: random.Random) -> Agenda:
    lang = example_agenda().lang
    extras = tuple(sorted(rng.randint(1, lang.full_mask - 1) for _ in range(rng.randint(0, 2))))
    return _agenda_with_extras(extras)


def on_domain_case(seed: int, i: int) -> dict:
    rng = random.Random(f"{seed}:{i}")
    agenda = _random_agenda(rng)
    n = rng.randint(2, 5)
    phi = CommonGround(agenda, random_common_ground(agenda, rng))
    p = profile_in_domain(agenda, list(phi), n, rng)
    w = random_weights(n, rng)
    learned = rng.choice(phi.learnable(p))
    result = commutativity(p, w, learned)
    report = check_phi_preserving(p, phi, learned, result.updated)
    return {
        "case": i,
        "n": n,
        "common_ground": phi.texts(),
        "learned": learned.text,
        "in_domain": phi.in_domain(p),
        "gap": exact_str(result.gap),
        "gap_zero": result.gap == 0,
        "phi_preserved": report.preserved,
    }


def negative_case(seed: int, i: int) -> dict:
    rng = random.Random(f"neg:{seed}:{i}")
    agenda = _random_agenda(rng)
    n = rng.randint(2, 5)
    p = random_profile(agenda, n, rng)
    w = random_weights(n, rng)
    # a single-valuation formula conditions everyone onto the same point mass
    options = [f for f in agenda
               if f.is_contingent() and f.popcount() > 1
               and len(set(p.values(f))) > 1 and min(p.values(f)) > 0]
    learned = rng.choice(options)
    result = commutativity(p, w, learned)
    return {
        "case": i,
        "n": n,
        "learned": learned.text,
        "weights": [exact_str(x) for x in w],
        "gap": exact_str(result.gap),
        "gap_positive": result.gap > 0,
    }


def _run(fn, seed: int, cases: int, jobs: int) -> list[dict]:
    if jobs <= 1:
        return [fn(seed, i) for i in range(cases)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, [seed] * cases, range(cases), chunksize=max(1, cases // (4 * jobs))))


def on_domain_suite(cases: int = 1000, seed: int = 42, jobs: int = 1) -> SuiteResult:
    """Profiles inside the common-ground domain: gap must be exactly 0."""
    t0 = time.perf_counter()
    rows = _run(on_domain_case, seed, cases, jobs)
    res = SuiteResult("commutativity_on_domain", cases, seed=seed)
    preserved = 0
    for r in rows:
        ok = r["gap_zero"] and r["phi_preserved"] and r["in_domain"]
        preserved += r["phi_preserved"]
        if ok:
            res.passed += 1
        else:
            res.failures.append(r)
    res.extra["phi_preserved"] = preserved
    res.seconds = time.perf_counter() - t0
    return res


def negative_suite(cases: int = 500, seed: int = 42, jobs: int = 1) -> SuiteResult:
    """Disagreement on the learned formula: gap should be positive almost always."""
    t0 = time.perf_counter()
    rows = _run(negative_case, seed, cases, jobs)
    res = SuiteResult("commutativity_off_domain", cases, seed=seed)
    for r in rows:
        if r["gap_positive"]:
            res.passed += 1
        else:
            res.degenerate.append(r)
    res.seconds = time.perf_counter() - t0
    return res
