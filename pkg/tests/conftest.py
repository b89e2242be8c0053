from fractions import Fraction
from itertools import combinations

import pytest

from probagg.generators import example_agenda
from probagg.logic import Language
from probagg.reproduce import example_profile, example_weights


@pytest.fixture(scope="session")
def lang3():
    return Language(("a", "b", "c"))


@pytest.fixture(scope="session")
def agenda():
    return example_agenda()


@pytest.fixture(scope="session")
def profile():
    return example_profile()


@pytest.fixture(scope="session")
def thirds():
    return example_weights()


def F(s):
    return Fraction(s)


def _solve_square(cols, rows, rhs):
    """Exact unique solution of the system restricted to ``cols``, or None."""
    m = [[r[c] for c in cols] + [b] for r, b in zip(rows, rhs)]
    k = len(cols)
    piv_row = 0
    where = []
    for c in range(k):
        p = next((r for r in range(piv_row, len(m)) if m[r][c] != 0), None)
        if p is None:
            return None  # dependent columns: not a basis
        m[piv_row], m[p] = m[p], m[piv_row]
        inv = m[piv_row][c]
        m[piv_row] = [x / inv for x in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][c] != 0:
                t = m[r][c]
                m[r] = [x - t * y for x, y in zip(m[r], m[piv_row])]
        where.append(piv_row)
        piv_row += 1
    if any(row[-1] != 0 for row in m[piv_row:]):
        return None
    return [m[r][-1] for r in where]


def feasible_by_vertices(judgment):
    """Brute-force oracle: some basic solution on a column subset is nonnegative.

    A feasible polytope {P >= 0, sum P = 1, P(f) = J(f)} has a vertex whose
    support columns are independent, so enumerating supports is complete.
    """
    lang = judgment.agenda.lang
    n = lang.valuation_count
    rows = [[Fraction(1)] * n] + [[Fraction(f.mask >> v & 1) for v in range(n)]
                                  for f in judgment.agenda]
    rhs = [Fraction(1)] + [Fraction(judgment[f]) for f in judgment.agenda]
    for size in range(1, n + 1):
        for cols in combinations(range(n), size):
            x = _solve_square(list(cols), rows, rhs)
            if x is not None and all(v >= 0 for v in x):
                return True
    return False


def chain_by_orientations(agenda):
    """Brute force over every orientation of every pair."""
    pairs = agenda.pairs
    for bits in range(1 << len(pairs)):
        masks = [p[bits >> i & 1].mask for i, p in enumerate(pairs)]
        if all(not (x & ~y and y & ~x) for x, y in combinations(masks, 2)):
            return True
    return False


def rationality_cases(count=200, seed=5):
    """Measure-induced judgments and perturbed copies over two or three atoms."""
    import random

    from probagg.generators import perturb, random_agenda, random_measure
    from probagg.judgment import judgment_from_measure

    rng = random.Random(seed)
    out = []
    for i in range(count):
        lang = Language(("a", "b", "c")[: rng.choice((2, 3))])
        x = random_agenda(lang, rng.randint(2, 6), rng)
        j = judgment_from_measure(random_measure(lang, rng, sparsity=0.3), x, name=f"case{i}")
        if i % 2:
            for _ in range(rng.randint(1, 3)):
                j = perturb(j, rng)
        out.append(j)
    return out


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
