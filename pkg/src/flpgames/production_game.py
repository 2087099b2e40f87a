"""Single-objective fractional production games.

Each player i owns a resource vector ``b^i``; a coalition pools its resources
and maximizes one linear-fractional objective over the goods it can produce.
The coalition's worth is the optimum of the homogenized LP, and the grand
coalition's worth is that optimum scaled by ``gamma > n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp_core
from .balanced import (BalancedCollection, BondarevaResult, bondareva,
                       compute_gamma_star, default_gamma,
                       enumerate_balanced_collections)
from .charnes_cooper import FractionalObjective
from .coalitions import (Coalition, CoalitionLike, as_mask, contains, grand,
                         members, nonempty_coalitions, proper_coalitions)
from .errors import (CoalitionProblemInfeasible, CoalitionProblemUnbounded,
                     InvalidGame)
from .lp_core import LE, LinearProgram, Status
from .numeric import EPS, any_float, coerce

__all__ = [
    "ProductionGame", "CoreCheck", "BalancedCollection", "coalition_resources",
    "build_coalition_problem", "characteristic_value", "characteristic_function",
    "compute_gamma_star", "default_gamma", "core_candidate", "grand_dual",
    "is_core_member", "enumerate_balanced_collections", "check_balanced",
    "bondareva",
]


@dataclass(frozen=True)
class ProductionGame:
    """Technology ``A`` (m x p), endowments ``b^i`` (n vectors of length m)."""

    A: tuple
    endowments: tuple
    objective: FractionalObjective
    gamma: Optional[object] = None
    exact: bool = field(default=True, compare=False)

    def __post_init__(self):
        rows = [tuple(r) for r in self.A]
        ends = [tuple(e) for e in self.endowments]
        if not ends:
            raise InvalidGame("a game needs at least one player")
        m, p = len(rows), self.objective.p
        if m < 1 or any(len(r) != p for r in rows):
            raise InvalidGame(f"A must be {m} x {p} to match the objective")
        if any(len(e) != m for e in ends):
            raise InvalidGame(f"every endowment needs {m} entries")
        exact = self.objective.exact and not any_float(
            [v for r in rows for v in r] + [v for e in ends for v in e]
            + ([self.gamma] if self.gamma is not None else []))
        set_ = object.__setattr__
        set_(self, "A", tuple(coerce(r, exact) for r in rows))
        set_(self, "endowments", tuple(coerce(e, exact) for e in ends))
        if not exact and self.objective.exact:
            set_(self, "objective", self.objective.as_float())
        if any(v < 0 for e in self.endowments for v in e):
            raise InvalidGame("endowments must be nonnegative")
        n = len(ends)
        gamma = default_gamma(n) if self.gamma is None else self.gamma
        gamma = coerce([gamma], exact)[0]
        if gamma <= n:
            raise InvalidGame(f"gamma must exceed n = {n}, got {gamma}")
        set_(self, "gamma", gamma)
        set_(self, "exact", exact)

    @property
    def n(self) -> int:
        return len(self.endowments)

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def p(self) -> int:
        return self.objective.p

    @property
    def grand(self) -> Coalition:
        return grand(self.n)

    def as_float(self) -> "ProductionGame":
        return ProductionGame([[float(v) for v in r] for r in self.A],
                              [[float(v) for v in e] for e in self.endowments],
                              self.objective.as_float(), float(self.gamma))


@dataclass(frozen=True)
class CoreCheck:
    member: bool
    efficient: bool
    violations: list


def coalition_resources(game: ProductionGame, S: CoalitionLike) -> tuple:
    """``b(S)``: componentwise sum of the members' endowments."""
    S = as_mask(S, game.n)
    zero = Fraction(0) if game.exact else 0.0
    total = [zero] * game.m
    for i in members(S):
        total = [a + b for a, b in zip(total, game.endowments[i - 1])]
    return tuple(total)


def build_coalition_problem(game: ProductionGame, S: CoalitionLike,
                            scaled: Optional[bool] = None) -> LinearProgram:
    """LP over ``(y, t)``: row 0 ``d.y + d0 t <= 1``, rows 1..m ``A y - t b(S) <= 0``.

    The grand coalition's objective is multiplied by gamma unless
    ``scaled=False``.
    """
    S = as_mask(S, game.n)
    if S == 0:
        raise ValueError("the empty coalition has no production problem")
    if scaled is None:
        scaled = S == game.grand
    obj = game.objective
    bS = coalition_resources(game, S)
    rows = [(*obj.d, obj.d0)] + [(*a, -bk) for a, bk in zip(game.A, bS)]
    k = game.gamma if scaled else 1
    c = [k * v for v in obj.homogenized()]
    one = Fraction(1) if game.exact else 1.0
    rhs = [one] + [0 * one] * game.m
    return LinearProgram(c, rows, rhs, [LE] * (game.m + 1), exact=game.exact)


def _solved(lp, S):
    out = lp_core.solve(lp)
    if out.status is Status.INFEASIBLE:
        raise CoalitionProblemInfeasible(f"P(S) infeasible for coalition mask {S}")
    if out.status is Status.UNBOUNDED:
        raise CoalitionProblemUnbounded(f"P(S) unbounded for coalition mask {S}")
    return out


def characteristic_value(game: ProductionGame, S: CoalitionLike):
    S = as_mask(S, game.n)
    if S == 0:
        return Fraction(0) if game.exact else 0.0
    return _solved(build_coalition_problem(game, S), S).objective_value


def characteristic_function(game: ProductionGame) -> dict:
    """``V`` on every coalition, the empty one included."""
    values = {0: characteristic_value(game, 0)}
    for S in nonempty_coalitions(game.n):
        values[S] = characteristic_value(game, S)
    return values


def grand_dual(game: ProductionGame) -> tuple:
    """Optimal solution ``omega*`` of the dual of the gamma-scaled grand problem."""
    primal = build_coalition_problem(game, game.grand)
    _solved(primal, game.grand)
    out = _solved(lp_core.dual_of(primal), game.grand)
    return out.primal_solution


def core_candidate(game: ProductionGame) -> tuple:
    """Equal split of ``omega_1*``, the denominator-row dual of ``D(N)``."""
    omega1 = grand_dual(game)[0]
    return tuple(omega1 / game.n for _ in range(game.n))


def _tol(game, u=()):
    return EPS if (not game.exact or any_float(u)) else 0


def is_core_member(game: ProductionGame, u: Sequence,
                   values: Optional[dict] = None) -> CoreCheck:
    """Efficiency plus coalitional rationality for every nonempty proper S.

    ``violations`` holds ``(S, V(S) - u(S))`` for each failing coalition.
    """
    if len(u) != game.n:
        raise InvalidGame(f"allocation has {len(u)} entries, game has {game.n} players")
    if values is None:
        values = characteristic_function(game)
    tol = _tol(game, u)
    efficient = abs(sum(u) - values[game.grand]) <= tol
    violations = []
    for S in proper_coalitions(game.n):
        share = sum(u[i - 1] for i in members(S))
        deficit = values[S] - share
        if deficit > tol:
            violations.append((S, deficit))
    return CoreCheck(efficient and not violations, efficient, violations)


def check_balanced(game: ProductionGame, values: Optional[dict] = None) -> BondarevaResult:
    if values is None:
        values = characteristic_function(game)
    return bondareva(game.n, values)


def unscaled_grand_value(game: ProductionGame):
    lp = build_coalition_problem(game, game.grand, scaled=False)
    return _solved(lp, game.grand).objective_value
