from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from flpgames import lp_core, molp
from flpgames import production_game as pg
from flpgames.charnes_cooper import FractionalObjective, FractionalProgram, transform
from flpgames.lp_core import LinearProgram
from flpgames.errors import (DegenerateDualObjective, DimensionMismatch,
                             InfeasiblePoint, NegativeObjectiveIndex,
                             NonpositiveWeight)
from flpgames.molp import (Membership, MultiFractionalProgram, MultiLinearProgram,
                           MultiProductionGame)
from flpgames.production_game import ProductionGame

from gen import (random_feasible_point, random_mlp, random_multi_game,
                 random_objective, random_weights, rng)

X = FractionalObjective([1], 0, [0], 1)
TWO_X = FractionalObjective([2], 0, [0], 1)


@pytest.fixture
def g2():
    return MultiProductionGame([[1]], [[1], [1]], [X, TWO_X], 3)


def test_reduce_rows_g2(g2):
    mlp = g2.coalition_problem({1})
    assert mlp.C == ((1, 0), (2, 0))
    assert mlp.G == ((0, 1), (0, 1), (1, -1))
    assert mlp.h == (1, 1, 0)
    assert g2.coalition_problem({1, 2}).G[-1] == (1, -2)


def test_reduce_single_objective_is_charnes_cooper():
    obj = FractionalObjective([1, 2], 1, [1, 0], 2)
    A, b = [[1, 1], [2, 1]], [3, 4]
    mlp = molp.reduce_to_molp(MultiFractionalProgram([obj], A), b)
    lp = transform(FractionalProgram(obj, A, b))
    assert mlp.C == (lp.objective,)
    assert mlp.G == lp.constraint_matrix and mlp.h == lp.rhs


def test_identical_objectives_not_deduplicated():
    mlp = molp.reduce_to_molp(MultiFractionalProgram([X, X], [[1]]), [2])
    assert mlp.C == ((1, 0), (1, 0)) and len(mlp.G) == 3


def test_negative_objective_index_rejected():
    neg = FractionalObjective([1], -5, [0], 1)
    with pytest.raises(NegativeObjectiveIndex):
        molp.reduce_to_molp(MultiFractionalProgram([X, neg], [[1]]), [1])


def test_solve_pareto_g2(g2):
    mlp = g2.coalition_problem(g2.grand)
    pt = molp.solve_pareto(mlp, [1, 1])
    assert pt.point == (2, 1) and pt.objectives == (2, 4)
    with pytest.raises(NonpositiveWeight):
        molp.solve_pareto(mlp, [1, 0])
    with pytest.raises(DimensionMismatch):
        molp.solve_pareto(mlp, [1])


def test_single_objective_pareto_is_lp():
    mlp = MultiLinearProgram([[3, 2]], [[1, 1], [1, 3]], [4, 6])
    pt = molp.solve_pareto(mlp, [1])
    out = lp_core.solve(LinearProgram([3, 2], [[1, 1], [1, 3]], [4, 6]))
    assert pt.objectives == (out.objective_value,) and pt.point == out.primal_solution
    assert molp.is_pareto(mlp, (4, 0)) and not molp.is_pareto(mlp, (0, 2))


def test_proportional_objectives_share_argmax(g2):
    mlp = g2.coalition_problem(g2.grand)
    for lam in ([1, 1], [5, F(1, 3)], [F(1, 7), 2]):
        assert molp.solve_pareto(mlp, lam).point == (2, 1)


def test_is_pareto_g2(g2):
    mlp = g2.coalition_problem(g2.grand)
    assert molp.is_pareto(mlp, (2, 1))
    assert not molp.is_pareto(mlp, (0, 1))
    with pytest.raises(InfeasiblePoint):
        molp.is_pareto(mlp, (3, 1))


def test_matrix_dual_g2(g2):
    mlp = g2.coalition_problem(g2.grand)
    W = molp.build_matrix_dual(mlp, [1, 1])
    assert W.g(mlp.h) == (2, 4)
    assert molp.check_dual_feasible(mlp, W)
    zero = [[0] * len(mlp.G) for _ in range(mlp.r)]
    assert not molp.check_dual_feasible(mlp, zero)
    with pytest.raises(DimensionMismatch):
        molp.check_dual_feasible(mlp, [[0]])


def test_matrix_dual_single_objective_is_scalar_dual():
    mlp = MultiLinearProgram([[3, 2]], [[1, 1], [1, 3]], [4, 6])
    W = molp.build_matrix_dual(mlp, [1])
    out = lp_core.solve(LinearProgram([3, 2], [[1, 1], [1, 3]], [4, 6]))
    assert W.W == (out.dual_solution,)
    assert molp.check_dual_feasible(mlp, W)
    # scalar dual feasibility test for a non-optimal candidate: 1*(1,1) >= (3,2) fails
    assert not molp.check_dual_feasible(mlp, [[1, 0]])
    assert molp.check_dual_feasible(mlp, [[3, 0]])


def test_zero_objective_dual():
    # z* = 0 and v.h = 0: the fallback W still certifies
    mlp = MultiLinearProgram([[0, 0], [0, 0]], [[1, 1]], [1])
    W = molp.build_matrix_dual(mlp)
    assert W.g(mlp.h) == (0, 0)
    assert molp.check_dual_feasible(mlp, W)


def test_degenerate_dual_objective():
    # region is {0}, so v.h = 0; a nonzero z* then has no rank-one witness
    mlp = MultiLinearProgram([[1, 0], [0, 1]], [[1, 0], [0, 1]], [0, 0])
    pt = molp.solve_pareto(mlp)
    assert pt.objectives == (0, 0)
    molp.build_matrix_dual(mlp)  # zero case is fine
    shifted = molp.ParetoPoint(pt.point, (1, 0), pt.scalar_dual, pt.weights)
    with pytest.raises(DegenerateDualObjective):
        molp.build_matrix_dual(mlp, pareto=shifted)


@pytest.mark.parametrize("z,g,ok", [
    ((2, 4), (2, 4), True),
    ((2, 4), (1, 4), False),
    ((2, 4), (3, 1), True),
])
def test_weak_duality_examples(z, g, ok):
    assert molp.weak_duality_holds(z, g) is ok


def test_membership_g2(g2):
    N = g2.grand
    assert molp.value_set_membership(g2, N, (2, 4), scale_grand=False) is Membership.ON_MAX_FRONTIER
    assert molp.value_set_membership(g2, N, (0, 0), scale_grand=False) \
        is Membership.INTERIOR_OR_DOMINATED
    assert molp.value_set_membership(g2, N, (3, 4), scale_grand=False) is Membership.OUTSIDE
    assert molp.value_set_membership(g2, N, (-1, 0)) is Membership.OUTSIDE
    # scaled grand set reaches (6, 12)
    assert molp.value_set_membership(g2, N, (6, 12)) is Membership.ON_MAX_FRONTIER
    assert molp.value_set_membership(g2, {1}, (1, 2)) is Membership.ON_MAX_FRONTIER


def test_stable_candidate_g2(g2):
    u = molp.stable_candidate(g2)
    assert u == ((3, 6), (3, 6))
    check = molp.is_stable_outcome(g2, u)
    assert check.stable and check.blocking == []
    zeros = molp.is_stable_outcome(g2, [[0, 0], [0, 0]])
    assert not zeros.stable and 1 in zeros.blocking and 2 in zeros.blocking


def test_one_player_stable_iff_efficient():
    game = MultiProductionGame([[1]], [[2]], [X, TWO_X])
    u = molp.stable_candidate(game)
    assert u == ((4, 8),)  # gamma defaults to 2
    assert molp.is_stable_outcome(game, u).stable
    assert not molp.is_stable_outcome(game, [[4, 7]]).stable
    assert molp.is_imputation(game, u)


def test_vector_balancedness_g2(g2):
    results = molp.vector_balancedness(g2)
    assert len(results) == 3 and all(ok for _, ok in results)


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_scalarization_dual_and_weak_duality(seed):
    r = rng(seed)
    mlp = random_mlp(r)
    lam = random_weights(r, mlp.r)
    pt = molp.solve_pareto(mlp, lam)
    assert molp.is_pareto(mlp, pt.point)
    W = molp.build_matrix_dual(mlp, pareto=pt)
    assert W.g(mlp.h) == pt.objectives
    # the rank-one W aggregates to the scalar dual
    assert tuple(sum(l * row[j] for l, row in zip(lam, W.W))
                 for j in range(len(mlp.G))) == pt.scalar_dual
    assert molp.check_dual_feasible(mlp, W)
    g = W.g(mlp.h)
    for _ in range(10):
        x = random_feasible_point(r, mlp)
        assert molp.weak_duality_holds(mlp.objectives_at(x), g)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_stable_candidate_is_stable(seed):
    game = random_multi_game(rng(seed))
    u = molp.stable_candidate(game)
    assert molp.is_stable_outcome(game, u).stable
    assert molp.is_imputation(game, u)
    assert len(set(u)) == 1


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_single_objective_degeneration(seed):
    r = rng(seed)
    multi = random_multi_game(r, r=1)
    single = ProductionGame(multi.A, multi.endowments, multi.objectives[0], multi.gamma)
    u = molp.stable_candidate(multi)
    flat = tuple(row[0] for row in u)
    assert flat == pg.core_candidate(single)
    assert molp.is_stable_outcome(multi, u).stable == pg.is_core_member(single, flat).member
    if multi.n > 1 and flat[0] > 0:
        moved = (flat[0] / 2, flat[1] + flat[0] / 2) + flat[2:]
        assert molp.is_stable_outcome(multi, [[v] for v in moved]).stable \
            == pg.is_core_member(single, moved).member


@given(st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_vector_balancedness_random(seed):
    r = rng(seed)
    game = random_multi_game(r)
    lam = random_weights(r, game.r)
    assert all(ok for _, ok in molp.vector_balancedness(game, lam))
