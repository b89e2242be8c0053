"""Two-phase primal simplex over exact fractions (or floats with a tolerance).

Problems are in standard form: minimize ``c @ x`` subject to ``A @ x = b``,
``x >= 0``. Bland's rule picks both the entering and the leaving variable, so
the method cannot cycle. With ``eps=0`` and :class:`fractions.Fraction`
entries every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple | None = None
    value: object = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, A, b, eps):
        m = len(A)
        n = len(A[0]) if m else 0
        self.eps = eps
        self.n = n
        rows = []
        for i in range(m):
            row = list(A[i])
            rhs = b[i]
            if rhs < 0:
                row = [-v for v in row]
                rhs = -rhs
            # one artificial column per row
            art = [0] * m
            art[i] = 1
            rows.append(row + art + [rhs])
        self.rows = rows
        self.basis = [n + i for i in range(m)]
        self.width = n + m

    def pivot(self, obj, r, j):
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
        for k, other in enumerate(self.rows):
            if k != r:
                f = other[j]
                if f:
                    self.rows[k] = [a - f * b for a, b in zip(other, row)]
        f = obj[j]
        if f:
            obj[:] = [a - f * b for a, b in zip(obj, row)]
        self.basis[r] = j

    def run(self, obj, allowed: int) -> str:
        eps = self.eps
        while True:
            entering = next((j for j in range(allowed) if obj[j] < -eps), None)
            if entering is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > eps:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(obj, best[1], entering)

    def drop_artificials(self):
        """Pivot artificials out of the basis; delete rows that are redundant."""
        n, eps = self.n, self.eps
        dummy = [0] * (self.width + 1)
        r = 0
        while r < len(self.rows):
            if self.basis[r] >= n:
                row = self.rows[r]
                j = next((j for j in range(n) if abs(row[j]) > eps), None)
                if j is None:
                    del self.rows[r]
                    del self.basis[r]
                    continue
                self.pivot(dummy, r, j)
            r += 1

    def solution(self):
        x = [0] * self.n
        for r, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.rows[r][-1]
        return x


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence | None = None, *,
          maximize: bool = False, eps=0) -> LPResult:
    """Solve ``min/max c @ x  s.t.  A @ x = b, x >= 0``.

    With ``c=None`` only phase 1 runs and any feasible vertex is returned.
    """
    if not A:
        raise ValueError("need at least one constraint row")
    if not eps:
        # keep exact mode exact even when callers pass plain ints
        A = [[Fraction(v) for v in row] for row in A]
        b = [Fraction(v) for v in b]
        c = None if c is None else [Fraction(v) for v in c]
    t = _Tableau(A, b, eps)
    n, m = t.n, len(t.rows)

    # phase 1: minimize the sum of artificials
    obj = [0] * (t.width + 1)
    for row in t.rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    t.run(obj, t.width)
    if -obj[-1] > eps:
        return LPResult(INFEASIBLE)
    t.drop_artificials()
    if c is None:
        return LPResult(OPTIMAL, tuple(t.solution()))

    cost = [-v for v in c] if maximize else list(c)
    obj = cost + [0] * m + [0]
    for r, j in enumerate(t.basis):
        cj = obj[j]
        if cj:
            obj = [a - cj * v for a, v in zip(obj, t.rows[r])]
    status = t.run(obj, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = t.solution()
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, tuple(x), value)


# -- exact linear algebra ---------------------------------------------------


def rref(M: Sequence[Sequence], eps=0):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in M]
    pivots = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for j in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if abs(rows[i][j]) > eps), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][j]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                f = rows[i][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    return rows[:r], pivots


def nullspace(M: Sequence[Sequence], eps=0) -> list[list]:
    """Basis of ``{z : M @ z = 0}``."""
    if not M:
        return []
    ncols = len(M[0])
    rows, pivots = rref(M, eps)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    one = Fraction(1) if eps == 0 else 1.0
    for f in free:
        z = [0] * ncols
        z[f] = one
        for row, p in zip(rows, pivots):
            z[p] = -row[f]
        basis.append(z)
    return basis


def particular_solution(M: Sequence[Sequence], rhs: Sequence, eps=0) -> list | None:
    """Some ``x`` with ``M @ x = rhs`` (free variables zero), or None."""
    if not M:
        return []
    ncols = len(M[0])
    aug = [list(r) + [v] for r, v in zip(M, rhs)]
    rows, pivots = rref(aug, eps)
    if pivots and pivots[-1] == ncols:
        return None
    x = [0] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return x
