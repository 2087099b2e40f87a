"""Multiobjective fractional production games.

Every ratio objective is homogenized with one shared scale variable ``t``:

    max  (c_k.y + c_k0 t)_k
    s.t. d_k.y + d_k0 t <= 1      for every objective k
         A y - t b(S)   <= 0
         y, t >= 0

Pareto points come from positive weighted sums.  The vector dual is the
rank-one matrix ``W = z* v^T / (v.h)`` built from the scalarized dual ``v``;
it satisfies ``W h = z*`` and ``lambda^T W = v^T``, which is all that dual
feasibility needs.  Value sets ``V(S)`` are never enumerated: membership and
maximality are decided by one LP each.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import lp_core
from .balanced import default_gamma, enumerate_balanced_collections
from .charnes_cooper import FractionalObjective
from .coalitions import (Coalition, CoalitionLike, as_mask, grand, members,
                         nonempty_coalitions, proper_coalitions)
from .errors import (DegenerateDualObjective, DenominatorNotPositive,
                     DimensionMismatch, InfeasiblePoint, InfeasibleRegion,
                     InvalidGame, MalformedProgram, NegativeObjectiveIndex,
                     NonpositiveWeight, UnboundedRegion)
from .lp_core import LE, LinearProgram, Status
from .numeric import EPS, any_float, coerce, dot


@dataclass(frozen=True)
class MultiFractionalProgram:
    objectives: tuple
    A: tuple

    def __post_init__(self):
        objs = tuple(self.objectives)
        if not objs:
            raise MalformedProgram("at least one objective is required")
        p = objs[0].p
        if any(o.p != p for o in objs):
            raise MalformedProgram("objectives disagree on the number of variables")
        rows = [tuple(r) for r in self.A]
        if any(len(r) != p for r in rows):
            raise MalformedProgram(f"A must have {p} columns")
        exact = all(o.exact for o in objs) and not any_float(
            [v for r in rows for v in r])
        if not exact:
            objs = tuple(o.as_float() for o in objs)
        object.__setattr__(self, "objectives", objs)
        object.__setattr__(self, "A", tuple(coerce(r, exact) for r in rows))

    @property
    def r(self) -> int:
        return len(self.objectives)

    @property
    def p(self) -> int:
        return self.objectives[0].p

    @property
    def exact(self) -> bool:
        return self.objectives[0].exact


@dataclass(frozen=True)
class MultiLinearProgram:
    """Maximize ``C u`` over ``{u >= 0 : G u <= h}`` (vectorially)."""

    C: tuple
    G: tuple
    h: tuple
    exact: Optional[bool] = field(default=None, compare=False)

    def __post_init__(self):
        C = [tuple(r) for r in self.C]
        G = [tuple(r) for r in self.G]
        h = tuple(self.h)
        if not C:
            raise MalformedProgram("no objective rows")
        q = len(C[0])
        if any(len(r) != q for r in C) or any(len(r) != q for r in G):
            raise MalformedProgram("objective and constraint rows disagree on width")
        if len(G) != len(h):
            raise MalformedProgram("constraint rows and rhs disagree")
        exact = self.exact
        if exact is None:
            exact = not any_float([v for r in C + G for v in r] + list(h))
        set_ = object.__setattr__
        set_(self, "C", tuple(coerce(r, exact) for r in C))
        set_(self, "G", tuple(coerce(r, exact) for r in G))
        set_(self, "h", coerce(h, exact))
        set_(self, "exact", exact)

    @property
    def r(self) -> int:
        return len(self.C)

    @property
    def num_vars(self) -> int:
        return len(self.C[0])

    def objectives_at(self, point) -> tuple:
        return tuple(dot(row, point) for row in self.C)

    def scaled(self, k) -> "MultiLinearProgram":
        return MultiLinearProgram([[k * v for v in r] for r in self.C],
                                  self.G, self.h, exact=self.exact)

    def scalarized(self, weights) -> LinearProgram:
        obj = [sum(w * row[j] for w, row in zip(weights, self.C))
               for j in range(self.num_vars)]
        return LinearProgram(obj, self.G, self.h, exact=self.exact)


@dataclass(frozen=True)
class ParetoPoint:
    point: tuple
    objectives: tuple
    scalar_dual: tuple
    weights: tuple


@dataclass(frozen=True)
class MatrixDual:
    W: tuple

    def g(self, h) -> tuple:
        return tuple(dot(row, h) for row in self.W)


class Membership(str, enum.Enum):
    OUTSIDE = "Outside"
    INTERIOR_OR_DOMINATED = "InteriorOrDominated"
    ON_MAX_FRONTIER = "OnMaxFrontier"


def _tol(exact):
    return 0 if exact else EPS


def _check_region(mfp, rhs):
    """Denominators positive and no numerator negative everywhere."""
    region = lambda obj, sense: lp_core.solve(
        LinearProgram(obj, mfp.A, rhs, None, sense, exact=mfp.exact))
    for k, o in enumerate(mfp.objectives):
        out = region(o.d, "min")
        if out.status is Status.INFEASIBLE:
            raise InfeasibleRegion("no x >= 0 satisfies A x <= b")
        if out.status is Status.UNBOUNDED or out.objective_value + o.d0 <= 0:
            raise DenominatorNotPositive(f"denominator {k + 1} not positive on the region")
        out = region(o.c, "max")
        if out.status is Status.OPTIMAL and out.objective_value + o.c0 < 0:
            raise NegativeObjectiveIndex(
                f"numerator {k + 1} is negative on the whole region")


def reduce_to_molp(mfp: MultiFractionalProgram, rhs: Sequence,
                   check: bool = True) -> MultiLinearProgram:
    """Homogenized multiobjective LP for the region ``{A x <= rhs, x >= 0}``."""
    rhs = coerce(rhs, mfp.exact)
    if len(rhs) != len(mfp.A):
        raise MalformedProgram("rhs length differs from the number of rows of A")
    if check:
        _check_region(mfp, rhs)
    C = [o.homogenized() for o in mfp.objectives]
    G = [(*o.d, o.d0) for o in mfp.objectives]
    G += [(*a, -bk) for a, bk in zip(mfp.A, rhs)]
    one = Fraction(1) if mfp.exact else 1.0
    h = [one] * mfp.r + [0 * one] * len(rhs)
    return MultiLinearProgram(C, G, h, exact=mfp.exact)


def _weights(mlp, weights):
    if weights is None:
        one = Fraction(1) if mlp.exact else 1.0
        return tuple(one / mlp.r for _ in range(mlp.r))
    if len(weights) != mlp.r:
        raise DimensionMismatch(f"need {mlp.r} weights, got {len(weights)}")
    w = coerce(weights, mlp.exact)
    if any(v <= 0 for v in w):
        raise NonpositiveWeight("scalarization weights must be strictly positive")
    return w


def solve_pareto(mlp: MultiLinearProgram, weights=None) -> ParetoPoint:
    """Maximize ``lambda^T C u``; positive weights give a Pareto point."""
    lam = _weights(mlp, weights)
    out = lp_core.solve(mlp.scalarized(lam))
    if out.status is Status.INFEASIBLE:
        raise InfeasibleRegion("multiobjective program is infeasible")
    if out.status is Status.UNBOUNDED:
        raise UnboundedRegion("weighted objective is unbounded")
    return ParetoPoint(out.primal_solution, mlp.objectives_at(out.primal_solution),
                       out.dual_solution, lam)


def _domination_lp(mlp: MultiLinearProgram, z: Sequence) -> LinearProgram:
    """max sum(s) s.t. G u <= h, C u >= z + s; variables (u, s)."""
    q, r = mlp.num_vars, mlp.r
    zero = 0 * mlp.h[0] if mlp.h else 0
    rows = [list(g) + [zero] * r for g in mlp.G]
    rhs = list(mlp.h)
    for k, c in enumerate(mlp.C):
        rows.append([-v for v in c] + [int(j == k) for j in range(r)])
        rhs.append(-z[k])
    return LinearProgram([0] * q + [1] * r, rows, rhs, exact=mlp.exact)


def domination_gap(mlp: MultiLinearProgram, z: Sequence):
    """Largest total improvement over ``z`` reachable in the objective set.

    None when no feasible point weakly dominates ``z``.
    """
    if len(z) != mlp.r:
        raise DimensionMismatch(f"objective vector needs {mlp.r} entries")
    out = lp_core.solve(_domination_lp(mlp, z))
    if out.status is Status.INFEASIBLE:
        return None
    if out.status is Status.UNBOUNDED:
        raise UnboundedRegion("objective set is unbounded")
    return out.objective_value


def is_pareto(mlp: MultiLinearProgram, point: Sequence) -> bool:
    ok, _ = lp_core.check_feasible(
        LinearProgram([0] * mlp.num_vars, mlp.G, mlp.h, exact=mlp.exact), point)
    if not ok:
        raise InfeasiblePoint("point violates the constraints")
    return domination_gap(mlp, mlp.objectives_at(point)) <= _tol(mlp.exact)


def build_matrix_dual(mlp: MultiLinearProgram, weights=None,
                      pareto: Optional[ParetoPoint] = None) -> MatrixDual:
    """Rank-one vector dual certifying the weighted-sum Pareto point.

    If ``v.h`` is zero while ``z*`` is also zero, ``W = 1 v^T / sum(lambda)``
    keeps both identities; a zero ``v.h`` with nonzero ``z*`` is an error.
    """
    if pareto is None:
        pareto = solve_pareto(mlp, weights)
    z, v, lam = pareto.objectives, pareto.scalar_dual, pareto.weights
    vh = dot(v, mlp.h)
    tol = _tol(mlp.exact)
    if abs(vh) > tol:
        W = [[zk * vj / vh for vj in v] for zk in z]
    elif all(abs(zk) <= tol for zk in z):
        total = sum(lam)
        W = [[vj / total for vj in v] for _ in z]
    else:
        raise DegenerateDualObjective(
            "scalarized dual value is zero; try different weights")
    return MatrixDual(tuple(tuple(row) for row in W))


def check_dual_feasible(mlp: MultiLinearProgram, W) -> bool:
    """True iff no ``u >= 0`` gives ``W [G I] u <= [C 0] u`` with a strict entry.

    Slack columns are included, so the test is against the equality form of
    the constraints.
    """
    W = W.W if isinstance(W, MatrixDual) else W
    k, q, r = len(mlp.G), mlp.num_vars, mlp.r
    if len(W) != r or any(len(row) != k for row in W):
        raise DimensionMismatch(f"W must be {r} x {k}")
    W = [coerce(row, mlp.exact) for row in W]
    # reduced objective rows (C - W G) over the structural columns, then -W over slacks
    red = []
    for a in range(r):
        structural = [mlp.C[a][j] - sum(W[a][i] * mlp.G[i][j] for i in range(k))
                      for j in range(q)]
        red.append(structural + [-W[a][i] for i in range(k)])
    width = q + k
    rows, rhs = [], []
    for a in range(r):
        rows.append([-v for v in red[a]] + [int(b == a) for b in range(r)])
        rhs.append(0)
    for a in range(r):
        rows.append([0] * width + [int(b == a) for b in range(r)])
        rhs.append(1)
    out = lp_core.solve(LinearProgram([0] * width + [1] * r, rows, rhs,
                                      exact=mlp.exact))
    return out.objective_value <= _tol(mlp.exact)


def weak_duality_holds(z: Sequence, g: Sequence) -> bool:
    """False exactly when ``g <= z`` componentwise with ``g != z``."""
    if len(z) != len(g):
        raise DimensionMismatch("vectors differ in length")
    return not (all(a <= b for a, b in zip(g, z)) and any(a != b for a, b in zip(g, z)))


# ---------------------------------------------------------------- games


@dataclass(frozen=True)
class MultiProductionGame:
    A: tuple
    endowments: tuple
    objectives: tuple
    gamma: Optional[object] = None
    exact: bool = field(default=True, compare=False)

    def __post_init__(self):
        mfp = MultiFractionalProgram(self.objectives, self.A)
        ends = [tuple(e) for e in self.endowments]
        if not ends:
            raise InvalidGame("a game needs at least one player")
        if any(len(e) != len(mfp.A) for e in ends):
            raise InvalidGame(f"every endowment needs {len(mfp.A)} entries")
        exact = mfp.exact and not any_float(
            [v for e in ends for v in e] + ([self.gamma] if self.gamma is not None else []))
        if not exact and mfp.exact:
            mfp = MultiFractionalProgram([o.as_float() for o in mfp.objectives],
                                         [[float(v) for v in r] for r in mfp.A])
        ends = tuple(coerce(e, exact) for e in ends)
        if any(v < 0 for e in ends for v in e):
            raise InvalidGame("endowments must be nonnegative")
        n = len(ends)
        gamma = coerce([default_gamma(n) if self.gamma is None else self.gamma], exact)[0]
        if gamma <= n:
            raise InvalidGame(f"gamma must exceed n = {n}, got {gamma}")
        set_ = object.__setattr__
        set_(self, "A", mfp.A)
        set_(self, "objectives", mfp.objectives)
        set_(self, "endowments", ends)
        set_(self, "gamma", gamma)
        set_(self, "exact", exact)

    @property
    def n(self) -> int:
        return len(self.endowments)

    @property
    def r(self) -> int:
        return len(self.objectives)

    @property
    def grand(self) -> Coalition:
        return grand(self.n)

    def program(self) -> MultiFractionalProgram:
        return MultiFractionalProgram(self.objectives, self.A)

    def resources(self, S: CoalitionLike) -> tuple:
        S = as_mask(S, self.n)
        zero = Fraction(0) if self.exact else 0.0
        total = [zero] * len(self.A)
        for i in members(S):
            total = [a + b for a, b in zip(total, self.endowments[i - 1])]
        return tuple(total)

    def coalition_problem(self, S: CoalitionLike) -> MultiLinearProgram:
        """Unscaled homogenized problem of coalition S."""
        return _production_problem(self, as_mask(S, self.n))


@lru_cache(maxsize=4096)
def _production_problem(game, S):
    return reduce_to_molp(game.program(), game.resources(S))


def value_problem(game, S: CoalitionLike, scale_grand: bool = True) -> MultiLinearProgram:
    """Problem whose objective set generates ``V(S)``; gamma-scaled for N."""
    S = as_mask(S, game.n)
    mlp = game.coalition_problem(S)
    if scale_grand and S == game.grand:
        mlp = mlp.scaled(game.gamma)
    return mlp


def value_set_membership(game, S: CoalitionLike, z: Sequence,
                         scale_grand: bool = True) -> Membership:
    """Classify ``z`` against ``V(S) = (Max T_S - R^r_+) ∩ R^r_+``."""
    mlp = value_problem(game, S, scale_grand)
    if len(z) != mlp.r:
        raise DimensionMismatch(f"payoff vector needs {mlp.r} entries")
    tol = _tol(mlp.exact and not any_float(z))
    if any(v < -tol for v in z):
        return Membership.OUTSIDE
    gap = domination_gap(mlp, z)
    if gap is None:
        return Membership.OUTSIDE
    if gap <= tol:
        return Membership.ON_MAX_FRONTIER
    return Membership.INTERIOR_OR_DOMINATED


def stable_candidate(game, weights=None) -> tuple:
    """Equal split of ``g = W* h`` from the vector dual of the scaled grand problem."""
    mlp = value_problem(game, game.grand)
    W = build_matrix_dual(mlp, weights)
    g = W.g(mlp.h)
    return tuple(tuple(v / game.n for v in g) for _ in range(game.n))


@dataclass(frozen=True)
class StableCheck:
    stable: bool
    efficient: bool
    blocking: list
    classes: dict


def _aggregate(u, S, r):
    rows = [u[i - 1] for i in members(S)]
    return tuple(sum(row[k] for row in rows) for k in range(r))


def is_stable_outcome(game, u: Sequence[Sequence]) -> StableCheck:
    """No proper coalition's aggregate lies in ``V(S) \\ Max V(S)``, and the
    grand total is on ``Max V(N)``.
    """
    if len(u) != game.n or any(len(row) != game.r for row in u):
        raise DimensionMismatch(f"payoff matrix must be {game.n} x {game.r}")
    classes, blocking = {}, []
    for S in proper_coalitions(game.n):
        cls = value_set_membership(game, S, _aggregate(u, S, game.r))
        classes[S] = cls
        if cls is Membership.INTERIOR_OR_DOMINATED:
            blocking.append(S)
    full = game.grand
    classes[full] = value_set_membership(game, full, _aggregate(u, full, game.r))
    efficient = classes[full] is Membership.ON_MAX_FRONTIER
    return StableCheck(efficient and not blocking, efficient, blocking, classes)


def is_imputation(game, u: Sequence[Sequence]) -> bool:
    full = game.grand
    if value_set_membership(game, full, _aggregate(u, full, game.r)) \
            is not Membership.ON_MAX_FRONTIER:
        return False
    return all(value_set_membership(game, 1 << (i - 1), tuple(u[i - 1]))
               is not Membership.INTERIOR_OR_DOMINATED for i in range(1, game.n + 1))


def vector_balancedness(game, weights=None) -> list:
    """Per balanced collection, whether the weighted Pareto combination is
    weakly dominated inside the unscaled grand objective set.

    Returns ``[(collection, ok), ...]``.
    """
    points = {}
    for S in nonempty_coalitions(game.n):
        mlp = game.coalition_problem(S)
        lam = None if weights is None else weights
        points[S] = solve_pareto(mlp, lam).objectives
    grand_mlp = game.coalition_problem(game.grand)
    out = []
    for bc in enumerate_balanced_collections(game.n):
        total = sum(bc.weights)
        combo = tuple(sum(w * points[S][k] for S, w in zip(bc.coalitions, bc.weights)) / total
                      for k in range(game.r))
        out.append((bc, domination_gap(grand_mlp, combo) is not None))
    return out
