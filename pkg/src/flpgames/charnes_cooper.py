"""Linear-fractional programs and their reduction to linear programs.

A ratio ``(c.x + c0) / (d.x + d0)`` over ``{x >= 0 : A x <= b}`` becomes, with
``t = 1 / (d.x + d0)`` and ``y = t x``, the LP

    max  c.y + c0 t
    s.t. d.y + d0 t <= 1
         A y - t b  <= 0
         y, t >= 0

whose variables are ordered ``(y_1, ..., y_p, t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import lp_core
from .errors import (DenominatorNotPositive, InfeasibleRegion, MalformedProgram,
                     UnboundedRegion, ZeroScale)
from .lp_core import EQ, LE, LinearProgram, Status
from .numeric import any_float, coerce, dot


@dataclass(frozen=True)
class FractionalObjective:
    """Ratio ``(c.x + c0) / (d.x + d0)``."""

    c: tuple
    c0: object
    d: tuple
    d0: object

    def __post_init__(self):
        if len(self.c) != len(self.d) or len(self.c) < 1:
            raise MalformedProgram(
                "numerator and denominator need the same nonzero length")
        exact = not any_float([*self.c, self.c0, *self.d, self.d0])
        object.__setattr__(self, "c", coerce(self.c, exact))
        object.__setattr__(self, "d", coerce(self.d, exact))
        object.__setattr__(self, "c0", coerce([self.c0], exact)[0])
        object.__setattr__(self, "d0", coerce([self.d0], exact)[0])

    @property
    def p(self) -> int:
        return len(self.c)

    @property
    def exact(self) -> bool:
        return isinstance(self.c0, Fraction)

    def numerator(self, x):
        return dot(self.c, x) + self.c0

    def denominator(self, x):
        return dot(self.d, x) + self.d0

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    def homogenized(self) -> tuple:
        """Objective row ``(c, c0)`` over ``(y, t)``."""
        return (*self.c, self.c0)

    def scaled(self, k) -> "FractionalObjective":
        return FractionalObjective([k * v for v in self.c], k * self.c0,
                                   [k * v for v in self.d], k * self.d0)

    def as_float(self) -> "FractionalObjective":
        return FractionalObjective([float(v) for v in self.c], float(self.c0),
                                   [float(v) for v in self.d], float(self.d0))


@dataclass(frozen=True)
class FractionalProgram:
    objective: FractionalObjective
    A: tuple
    b: tuple

    def __post_init__(self):
        rows = [tuple(r) for r in self.A]
        if len(rows) != len(self.b):
            raise MalformedProgram("A and b disagree on the number of rows")
        for r in rows:
            if len(r) != self.objective.p:
                raise MalformedProgram("A has the wrong number of columns")
        exact = self.objective.exact and not any_float(
            [*self.b, *(v for r in rows for v in r)])
        object.__setattr__(self, "A", tuple(coerce(r, exact) for r in rows))
        object.__setattr__(self, "b", coerce(self.b, exact))

    @property
    def p(self) -> int:
        return self.objective.p

    @property
    def m(self) -> int:
        return len(self.b)

    @property
    def exact(self) -> bool:
        return self.objective.exact and not any_float(self.b)

    def region_lp(self, objective: Sequence, sense: str = "max") -> LinearProgram:
        """LP over the original region ``{x >= 0 : A x <= b}``."""
        return LinearProgram(objective, self.A, self.b, None, sense,
                             exact=self.exact)

    def as_float(self) -> "FractionalProgram":
        return FractionalProgram(self.objective.as_float(),
                                 [[float(v) for v in r] for r in self.A],
                                 [float(v) for v in self.b])


@dataclass(frozen=True)
class FractionalSolution:
    value: object
    argmax: tuple
    lp_value: object
    lp_solution: tuple
    within_hypothesis: bool


def transform(fp: FractionalProgram, *, equality: bool = False) -> LinearProgram:
    """Homogenized LP; row 0 is the denominator row, rows 1..m the resources.

    With ``equality=True`` the denominator row is ``d.y + d0 t = 1``, which is
    exact for any sign of the numerator.
    """
    obj = fp.objective
    rows = [(*obj.d, obj.d0)]
    rows += [(*a, -bk) for a, bk in zip(fp.A, fp.b)]
    one = Fraction(1) if fp.exact else 1.0
    rhs = [one] + [0 * one] * fp.m
    senses = [EQ if equality else LE] + [LE] * fp.m
    return LinearProgram(obj.homogenized(), rows, rhs, senses, exact=fp.exact)


def recover(y: Sequence, t) -> tuple:
    """``x = y / t``."""
    if t == 0:
        raise ZeroScale("cannot recover x from t = 0")
    if t < 0:
        raise ValueError("t must be positive")
    return tuple(v / t for v in y)


def _region_checked(fp: FractionalProgram) -> None:
    out = lp_core.solve(fp.region_lp([1] * fp.p))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleRegion("no x >= 0 satisfies A x <= b")
    if out.status is Status.UNBOUNDED:
        raise UnboundedRegion("the feasible region is unbounded")


def validate_denominator(fp: FractionalProgram) -> bool:
    """True iff ``d.x + d0 > 0`` on the whole region (one LP)."""
    out = lp_core.solve(fp.region_lp(fp.objective.d, "min"))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleRegion("no x >= 0 satisfies A x <= b")
    if out.status is Status.UNBOUNDED:
        return False
    return out.objective_value + fp.objective.d0 > 0


def numerator_nonnegative_somewhere(fp: FractionalProgram) -> bool:
    """Whether ``c.x + c0 >= 0`` at some feasible x."""
    out = lp_core.solve(fp.region_lp(fp.objective.c))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleRegion("no x >= 0 satisfies A x <= b")
    if out.status is Status.UNBOUNDED:
        return True
    return out.objective_value + fp.objective.c0 >= 0


def solve_fractional(fp: FractionalProgram) -> FractionalSolution:
    """Maximize the ratio through the transformed LP.

    When the numerator is negative on the whole region the ``<= 1`` form would
    overstate the optimum (shrinking t helps a negative ratio), so the
    equality form is solved instead and ``within_hypothesis`` is False.
    """
    _region_checked(fp)
    if not validate_denominator(fp):
        raise DenominatorNotPositive("d.x + d0 is not positive on the region")
    hypothesis = numerator_nonnegative_somewhere(fp)
    out = lp_core.solve(transform(fp, equality=not hypothesis))
    if out.status is not Status.OPTIMAL:
        raise UnboundedRegion(f"transformed LP is {out.status.value}")
    *y, t = out.primal_solution
    if t == 0:
        # optimum 0 reached at y = 0, t = 0; the equality form pins t > 0
        out = lp_core.solve(transform(fp, equality=True))
        *y, t = out.primal_solution
    x = recover(y, t)
    return FractionalSolution(fp.objective(x), x, out.objective_value,
                              out.primal_solution, hypothesis)


def vertex_oracle(fp: FractionalProgram) -> Optional[tuple]:
    """Brute-force ``(value, vertex)`` over all vertices of the region."""
    from .polytope import ratio_max_over_vertices

    o = fp.objective
    return ratio_max_over_vertices(fp.A, fp.b, o.c, o.c0, o.d, o.d0)
