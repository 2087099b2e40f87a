"""Pure exchange economies as multiobjective fractional production games.

Agent k's bundle occupies variables ``(k-1)m+1 .. km`` of the allocation
vector of length ``p = n m``.  A coalition S faces two blocks of per-good
constraints: what its own members consume must fit in their pooled endowment,
and what everybody consumes must fit in the total endowment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .balanced import default_gamma
from .charnes_cooper import FractionalObjective
from .coalitions import Coalition, CoalitionLike, as_mask, contains, grand, members
from .errors import IndexOutOfRange, InvalidGame
from .molp import MultiFractionalProgram, MultiLinearProgram, reduce_to_molp
from .numeric import any_float, coerce


@dataclass(frozen=True)
class ExchangeEconomy:
    """``endowments[k]`` is agent k+1's bundle; ``utilities[k]`` reads only it."""

    endowments: tuple
    utilities: tuple
    gamma: Optional[object] = None

    def __post_init__(self):
        ends = [tuple(e) for e in self.endowments]
        utils = tuple(self.utilities)
        if not ends:
            raise InvalidGame("an economy needs at least one agent")
        if len(utils) != len(ends):
            raise InvalidGame("one utility per agent is required")
        m = len(ends[0])
        if m < 1 or any(len(e) != m for e in ends):
            raise InvalidGame("all endowments need the same number of goods")
        if any(u.p != m for u in utils):
            raise InvalidGame(f"each utility must read an {m}-good bundle")
        exact = all(u.exact for u in utils) and not any_float(
            [v for e in ends for v in e] + ([self.gamma] if self.gamma is not None else []))
        if not exact:
            utils = tuple(u.as_float() for u in utils)
        ends = tuple(coerce(e, exact) for e in ends)
        if any(v < 0 for e in ends for v in e):
            raise InvalidGame("endowments must be nonnegative")
        n = len(ends)
        gamma = coerce([default_gamma(n) if self.gamma is None else self.gamma], exact)[0]
        if gamma <= n:
            raise InvalidGame(f"gamma must exceed n = {n}, got {gamma}")
        object.__setattr__(self, "endowments", ends)
        object.__setattr__(self, "utilities", utils)
        object.__setattr__(self, "gamma", gamma)

    @property
    def n(self) -> int:
        return len(self.endowments)

    @property
    def m(self) -> int:
        return len(self.endowments[0])

    @property
    def p(self) -> int:
        return self.n * self.m

    @property
    def exact(self) -> bool:
        return self.utilities[0].exact


def constraint_coefficient(S: CoalitionLike, i: int, j: int, n: int, m: int) -> int:
    """1 iff variable j (1-based) is good i of some agent k in S."""
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"good index {i} outside 1..{m}")
    if not 1 <= j <= n * m:
        raise IndexOutOfRange(f"variable index {j} outside 1..{n * m}")
    S = as_mask(S, n)
    k, good = divmod(j - 1, m)
    return int(good + 1 == i and contains(S, k + 1))


def coalition_matrix(S: CoalitionLike, n: int, m: int) -> tuple:
    """``A(S)``: m x nm 0/1 matrix."""
    return tuple(tuple(constraint_coefficient(S, i, j, n, m) for j in range(1, n * m + 1))
                 for i in range(1, m + 1))


def endowment_rhs(economy: ExchangeEconomy, S: CoalitionLike) -> tuple:
    S = as_mask(S, economy.n)
    zero = Fraction(0) if economy.exact else 0.0
    total = [zero] * economy.m
    for k in members(S):
        total = [a + b for a, b in zip(total, economy.endowments[k - 1])]
    return tuple(total)


def embedded_utility(economy: ExchangeEconomy, k: int) -> FractionalObjective:
    """Agent k's utility written over the full allocation vector."""
    u = economy.utilities[k - 1]
    m, p = economy.m, economy.p
    zero = 0 * u.c0
    c, d = [zero] * p, [zero] * p
    c[(k - 1) * m:k * m] = u.c
    d[(k - 1) * m:k * m] = u.d
    return FractionalObjective(c, u.c0, d, u.d0)


@dataclass(frozen=True)
class EconomyGame:
    """Vector game of an economy; every coalition problem is built eagerly."""

    economy: ExchangeEconomy
    problems: dict = field(compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.economy.n

    @property
    def r(self) -> int:
        return self.economy.n

    @property
    def gamma(self):
        return self.economy.gamma

    @property
    def grand(self) -> Coalition:
        return grand(self.n)

    def coalition_problem(self, S: CoalitionLike) -> MultiLinearProgram:
        return self.problems[as_mask(S, self.n)]

    def program(self, S: CoalitionLike) -> MultiFractionalProgram:
        return coalition_program(self.economy, S)


def coalition_program(economy: ExchangeEconomy, S: CoalitionLike) -> MultiFractionalProgram:
    """Stacked constraints ``[A(S); A(N)] x <= [b(S); b(N)]`` and all utilities."""
    n, m = economy.n, economy.m
    A = coalition_matrix(S, n, m) + coalition_matrix(grand(n), n, m)
    objs = [embedded_utility(economy, k) for k in range(1, n + 1)]
    return MultiFractionalProgram(objs, A)


def coalition_rhs(economy: ExchangeEconomy, S: CoalitionLike) -> tuple:
    return endowment_rhs(economy, S) + endowment_rhs(economy, grand(economy.n))


def build_economy_game(economy: ExchangeEconomy) -> EconomyGame:
    """Build and validate the homogenized problem of every nonempty coalition.

    Raises DenominatorNotPositive or NegativeObjectiveIndex on bad utilities.
    """
    problems = {}
    for S in range(1, grand(economy.n) + 1):
        problems[S] = reduce_to_molp(coalition_program(economy, S),
                                     coalition_rhs(economy, S))
    return EconomyGame(economy, problems)
