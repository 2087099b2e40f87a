"""Small dense linear programming kernel.

Two-phase revised simplex with Bland's rule.  Works in exact rational
arithmetic by default; if any coefficient of the program is a float the whole
solve runs in floating point with absolute tolerance ``EPS``.

All variables are nonnegative.  Rows may be ``<=``, ``=`` or ``>=``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MalformedProgram, NumericFailure
from .numeric import EPS, Number, any_float, coerce, dot, tolerance

LE, EQ, GE = "<=", "=", ">="
MAXIMIZE, MINIMIZE = "max", "min"

MAX_PIVOTS = 10_000

_SENSE_ALIASES = {"<=": LE, "≤": LE, "le": LE, "=": EQ, "==": EQ, "eq": EQ,
                  ">=": GE, "≥": GE, "ge": GE}


class Status(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """``objective_sense`` c.x subject to rows ``A x (sense) rhs``, x >= 0.

    Entries are coerced on construction: all Fractions, or all floats when any
    input entry is a float (or ``exact=False`` is passed).
    """

    objective: tuple
    constraint_matrix: tuple
    rhs: tuple
    constraint_senses: Optional[tuple] = None
    objective_sense: str = MAXIMIZE
    exact: Optional[bool] = field(default=None, compare=False)

    def __post_init__(self):
        obj = tuple(self.objective)
        rows = [tuple(r) for r in self.constraint_matrix]
        rhs = tuple(self.rhs)
        if self.exact is None:
            flat = list(obj) + list(rhs) + [x for r in rows for x in r]
            exact = not any_float(flat)
        else:
            exact = bool(self.exact)
        n = len(obj)
        if n < 1:
            raise MalformedProgram("program needs at least one variable")
        if len(rhs) != len(rows):
            raise MalformedProgram(
                f"{len(rows)} constraint rows but {len(rhs)} right-hand sides")
        for k, r in enumerate(rows):
            if len(r) != n:
                raise MalformedProgram(
                    f"row {k} has {len(r)} entries, expected {n}")
        senses = self.constraint_senses
        if senses is None:
            senses = (LE,) * len(rows)
        try:
            senses = tuple(_SENSE_ALIASES[s] for s in senses)
        except KeyError as exc:
            raise MalformedProgram(f"unknown constraint sense {exc}") from None
        if len(senses) != len(rows):
            raise MalformedProgram("one sense per constraint row is required")
        sense = {"max": MAXIMIZE, "maximize": MAXIMIZE,
                 "min": MINIMIZE, "minimize": MINIMIZE}.get(self.objective_sense)
        if sense is None:
            raise MalformedProgram(f"unknown objective sense {self.objective_sense!r}")
        try:
            set_ = object.__setattr__
            set_(self, "objective", coerce(obj, exact))
            set_(self, "constraint_matrix", tuple(coerce(r, exact) for r in rows))
            set_(self, "rhs", coerce(rhs, exact))
        except (TypeError, ValueError) as exc:
            raise MalformedProgram(str(exc)) from exc
        set_(self, "constraint_senses", senses)
        set_(self, "objective_sense", sense)
        set_(self, "exact", exact)

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_constraints(self) -> int:
        return len(self.rhs)

    def evaluate(self, point: Sequence) -> Number:
        return dot(self.objective, point)


@dataclass(frozen=True)
class LpOutcome:
    """Result of :func:`solve`.

    ``dual_solution`` has one entry per constraint row, signed so that
    ``objective_value == sum(dual[i] * rhs[i])`` at an optimum.  For a
    maximization the dual of a ``<=`` row is nonnegative; for a minimization
    the dual of a ``>=`` row is nonnegative.
    """

    status: Status
    primal_solution: Optional[tuple] = None
    objective_value: Optional[Number] = None
    dual_solution: Optional[tuple] = None
    basis: Optional[tuple] = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def _as_lp(lp) -> LinearProgram:
    if not isinstance(lp, LinearProgram):
        raise MalformedProgram(f"expected LinearProgram, got {type(lp).__name__}")
    return lp


class _Simplex:
    """Revised simplex on ``M z = h``, z >= 0, maximizing a cost vector.

    Columns are dense lists; the basis inverse is kept explicitly and updated
    by elementary row operations at each pivot.
    """

    def __init__(self, columns, h, basis, exact, max_pivots):
        self.cols = columns
        self.m = len(h)
        self.exact = exact
        self.eps = tolerance(exact)
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        self.binv = [[one if i == j else zero for j in range(self.m)]
                     for i in range(self.m)]
        self.xb = list(h)
        self.basis = list(basis)
        self.pivots = 0
        self.max_pivots = max_pivots

    def ftran(self, j):
        col = self.cols[j]
        nz = [(k, a) for k, a in enumerate(col) if a]
        return [sum(row[k] * a for k, a in nz) if nz else 0 * self.eps
                for row in self.binv]

    def prices(self, cost):
        cb = [cost[b] for b in self.basis]
        return [dot(cb, [self.binv[i][k] for i in range(self.m)])
                for k in range(self.m)]

    def pivot(self, r, j, u):
        piv = u[r]
        row = [x / piv for x in self.binv[r]]
        self.binv[r] = row
        xr = self.xb[r] / piv
        self.xb[r] = xr
        for i in range(self.m):
            if i != r and u[i]:
                f = u[i]
                bi = self.binv[i]
                self.binv[i] = [a - f * b for a, b in zip(bi, row)]
                self.xb[i] -= f * xr
        if not self.exact:
            self.xb = [0.0 if abs(x) < 1e-12 else x for x in self.xb]
        self.basis[r] = j
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise NumericFailure(f"simplex exceeded {self.max_pivots} pivots")

    def run(self, cost, allowed):
        """Optimize ``cost``; return ``"optimal"`` or ``"unbounded"``."""
        eps = self.eps
        while True:
            y = self.prices(cost)
            basic = set(self.basis)
            entering = None
            for j in range(len(self.cols)):
                if j in basic or not allowed[j]:
                    continue
                d = cost[j] - dot(y, self.cols[j])
                if d > eps:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            u = self.ftran(entering)
            best = None
            for i in range(self.m):
                if u[i] > eps:
                    ratio = self.xb[i] / u[i]
                    key = (ratio, self.basis[i])
                    if best is None or _ratio_less(key, best[0], eps):
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering, u)


def _ratio_less(a, b, eps):
    if a[0] < b[0] - eps:
        return True
    if abs(a[0] - b[0]) <= eps:
        return a[1] < b[1]
    return False


def solve(lp: LinearProgram, *, max_pivots: int = MAX_PIVOTS) -> LpOutcome:
    """Solve ``lp``; the returned primal is a basic feasible solution."""
    lp = _as_lp(lp)
    exact = lp.exact
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    n, m = lp.num_vars, lp.num_constraints
    sign = 1 if lp.objective_sense == MAXIMIZE else -1

    rows, h, senses, flips = [], [], [], []
    for a, s, b in zip(lp.constraint_matrix, lp.constraint_senses, lp.rhs):
        if b < 0:
            a = [-x for x in a]
            b = -b
            s = {LE: GE, GE: LE, EQ: EQ}[s]
            flips.append(-1)
        else:
            flips.append(1)
        rows.append(list(a))
        h.append(b)
        senses.append(s)

    columns = [[rows[i][j] for i in range(m)] for j in range(n)]
    basis = [None] * m
    for i, s in enumerate(senses):
        if s == EQ:
            continue
        col = [zero] * m
        col[i] = one if s == LE else -one
        columns.append(col)
        if s == LE:
            basis[i] = len(columns) - 1
    first_artificial = len(columns)
    for i in range(m):
        if basis[i] is None:
            col = [zero] * m
            col[i] = one
            columns.append(col)
            basis[i] = len(columns) - 1
    total = len(columns)

    simplex = _Simplex(columns, h, basis, exact, max_pivots)
    if first_artificial < total:
        cost1 = [zero] * first_artificial + [-one] * (total - first_artificial)
        simplex.run(cost1, [True] * total)
        infeas = sum(simplex.xb[i] for i in range(m)
                     if simplex.basis[i] >= first_artificial)
        if infeas > simplex.eps:
            return LpOutcome(Status.INFEASIBLE)
        for i in range(m):
            if simplex.basis[i] < first_artificial:
                continue
            basic = set(simplex.basis)
            for j in range(first_artificial):
                if j in basic:
                    continue
                u = simplex.ftran(j)
                if abs(u[i]) > simplex.eps:
                    simplex.pivot(i, j, u)
                    break
            # otherwise row i is redundant and the artificial stays at zero

    cost = [sign * c for c in lp.objective] + [zero] * (total - n)
    allowed = [j < first_artificial for j in range(total)]
    if simplex.run(cost, allowed) == "unbounded":
        return LpOutcome(Status.UNBOUNDED)

    x = [zero] * n
    for i, b in enumerate(simplex.basis):
        if b < n:
            v = simplex.xb[i]
            x[b] = zero if (not exact and abs(v) < EPS) else v
    kind = Fraction if exact else float
    y = simplex.prices(cost)
    dual = tuple(kind(sign * f * yi) for f, yi in zip(flips, y))
    value = kind(dot(lp.objective, x))
    return LpOutcome(Status.OPTIMAL, tuple(x), value, dual,
                     tuple(simplex.basis))


def check_feasible(lp: LinearProgram, point: Sequence) -> tuple[bool, list]:
    """Return ``(ok, violations)``.

    Violations are ``("row", i)`` for a violated constraint row and
    ``("var", j)`` for a negative coordinate.
    """
    lp = _as_lp(lp)
    if len(point) != lp.num_vars:
        raise MalformedProgram(
            f"point has {len(point)} coordinates, program has {lp.num_vars}")
    exact = lp.exact and not any_float(point)
    x = coerce(point, exact)
    eps = tolerance(exact)
    bad = []
    for i, (a, s, b) in enumerate(zip(lp.constraint_matrix,
                                      lp.constraint_senses, lp.rhs)):
        lhs = dot(a, x)
        if (s == LE and lhs > b + eps) or (s == GE and lhs < b - eps) or (
                s == EQ and abs(lhs - b) > eps):
            bad.append(("row", i))
    bad.extend(("var", j) for j, v in enumerate(x) if v < -eps)
    return not bad, bad


def dual_of(lp: LinearProgram) -> LinearProgram:
    """Symmetric dual of a canonical program.

    ``max c.x, A x <= b`` maps to ``min b.w, A^T w >= c`` and back, so applying
    the map twice returns the original program.
    """
    lp = _as_lp(lp)
    senses = set(lp.constraint_senses)
    if lp.num_constraints == 0:
        raise MalformedProgram("dual of a program without constraints")
    if lp.objective_sense == MAXIMIZE and senses == {LE}:
        new_sense, new_row = MINIMIZE, GE
    elif lp.objective_sense == MINIMIZE and senses == {GE}:
        new_sense, new_row = MAXIMIZE, LE
    else:
        raise MalformedProgram("dual_of expects max/<= or min/>= canonical form")
    at = [list(col) for col in zip(*lp.constraint_matrix)]
    return LinearProgram(lp.rhs, at, lp.objective, (new_row,) * lp.num_vars,
                         new_sense, exact=lp.exact)
