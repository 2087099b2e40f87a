"""Balanced collections of coalitions and the Bondareva-Shapley program.

A family of coalitions is balanced when some strictly positive weights give
every player a total weight of exactly one.  Minimal balanced families are the
ones whose incidence vectors are linearly independent; every balanced family
is a union of minimal ones, and averaging the minimal witnesses gives a
strictly positive witness for the union.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from . import lp_core
from .coalitions import (Coalition, contains, fmt_coalition, grand,
                         nonempty_coalitions, proper_coalitions)
from .errors import TooManyPlayers
from .lp_core import EQ, LinearProgram
from .polytope import solve_unique

MAX_ENUMERATION_PLAYERS = 5


@dataclass(frozen=True)
class BalancedCollection:
    coalitions: tuple
    weights: tuple

    def weight_of(self, S: Coalition):
        return dict(zip(self.coalitions, self.weights)).get(S, 0)

    def is_balanced(self, n: int) -> bool:
        """Exact check of positivity and of the per-player sums."""
        if any(w <= 0 for w in self.weights):
            return False
        return all(
            sum(w for S, w in zip(self.coalitions, self.weights) if contains(S, i)) == 1
            for i in range(1, n + 1))

    def __str__(self):
        return ", ".join(f"{fmt_coalition(S)}:{w}"
                         for S, w in zip(self.coalitions, self.weights))


def _incidence(n, family):
    return [[Fraction(int(contains(S, i))) for S in family] for i in range(1, n + 1)]


@lru_cache(maxsize=None)
def minimal_balanced_collections(n: int) -> tuple:
    """Minimal balanced families over the nonempty coalitions of ``n`` players."""
    if n > MAX_ENUMERATION_PLAYERS:
        raise TooManyPlayers(f"enumeration limited to n <= {MAX_ENUMERATION_PLAYERS}")
    coalitions = list(nonempty_coalitions(n))
    ones = [Fraction(1)] * n
    found = []
    for k in range(1, n + 1):
        for family in combinations(coalitions, k):
            w = solve_unique(_incidence(n, family), ones)
            if w is not None and all(v > 0 for v in w):
                found.append(BalancedCollection(family, tuple(w)))
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_balanced_collections(n: int) -> tuple:
    """Every balanced family, each with one strictly positive witness."""
    if n < 1:
        raise ValueError("need at least one player")
    if n > MAX_ENUMERATION_PLAYERS:
        raise TooManyPlayers(f"enumeration limited to n <= {MAX_ENUMERATION_PLAYERS}")
    coalitions = list(nonempty_coalitions(n))
    position = {S: k for k, S in enumerate(coalitions)}

    def encode(bc):
        bits, vec = 0, [Fraction(0)] * len(coalitions)
        for S, w in zip(bc.coalitions, bc.weights):
            bits |= 1 << position[S]
            vec[position[S]] = w
        return bits, vec

    minimal = [encode(bc) for bc in minimal_balanced_collections(n)]
    witness = {}
    for bits, vec in minimal:
        witness.setdefault(bits, vec)
    frontier = list(witness)
    while frontier:
        nxt = []
        for bits in frontier:
            vec = witness[bits]
            for mbits, mvec in minimal:
                union = bits | mbits
                if union not in witness:
                    witness[union] = [(a + b) / 2 for a, b in zip(vec, mvec)]
                    nxt.append(union)
        frontier = nxt

    out = []
    for bits in sorted(witness, key=lambda b: (bin(b).count("1"), b)):
        vec = witness[bits]
        family = tuple(S for S in coalitions if bits >> position[S] & 1)
        out.append(BalancedCollection(family, tuple(vec[position[S]] for S in family)))
    return tuple(out)


@dataclass(frozen=True)
class BondarevaResult:
    balanced: bool
    optimum: object
    grand_value: object
    weights: dict
    excess: object

    @property
    def worst(self) -> BalancedCollection:
        items = sorted(self.weights.items())
        return BalancedCollection(tuple(S for S, _ in items),
                                  tuple(w for _, w in items))


def bondareva(n: int, values: Mapping[Coalition, object]) -> BondarevaResult:
    """``max sum gamma(S) V(S)`` over proper S with ``sum_{S ∋ i} gamma(S) = 1``.

    The game is balanced iff this optimum does not exceed ``V(N)``.
    """
    full = grand(n)
    grand_value = values[full]
    if n == 1:
        zero = grand_value * 0
        return BondarevaResult(True, zero, grand_value, {}, zero - grand_value)
    props = list(proper_coalitions(n))
    rows = [[int(contains(S, i)) for S in props] for i in range(1, n + 1)]
    lp = LinearProgram([values[S] for S in props], rows, [1] * n, [EQ] * n)
    out = lp_core.solve(lp)
    opt = out.objective_value
    weights = {S: w for S, w in zip(props, out.primal_solution) if w > 0}
    excess = opt - grand_value
    tol = lp_core.EPS if not lp.exact else 0
    return BondarevaResult(excess <= tol, opt, grand_value, weights, excess)


def balanced_by_enumeration(n: int, values: Mapping[Coalition, object]):
    """Bondareva optimum recomputed as a max over enumerated collections.

    Only collections made of proper coalitions count.  Returns
    ``(balanced, optimum)``.
    """
    full = grand(n)
    best = None
    for bc in enumerate_balanced_collections(n):
        if full in bc.coalitions:
            continue
        total = sum(w * values[S] for S, w in zip(bc.coalitions, bc.weights))
        if best is None or total > best:
            best = total
    if best is None:
        best = 0
    return best <= values[full], best


def compute_gamma_star(n: int):
    """Largest total weight of a balanced collection; equals ``n``."""
    if n < 1:
        raise ValueError("need at least one player")
    coalitions = list(nonempty_coalitions(n))
    rows = [[int(contains(S, i)) for S in coalitions] for i in range(1, n + 1)]
    out = lp_core.solve(LinearProgram([1] * len(coalitions), rows, [1] * n, [EQ] * n))
    return out.objective_value


def default_gamma(n: int):
    return Fraction(n + 1)
