"""Acceptance criteria 1-10, one test each.

Every test records a ``criterion N PASS|FAIL`` line (printed at the end of the
pytest run by conftest.py, or directly when this file is run as a script).
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F
from itertools import product
from pathlib import Path

from flpgames import lp_core, molp
from flpgames import production_game as pg
from flpgames.balanced import balanced_by_enumeration, bondareva, compute_gamma_star
from flpgames.charnes_cooper import (FractionalObjective, FractionalProgram,
                                     solve_fractional, vertex_oracle)
from flpgames.coalitions import nonempty_coalitions
from flpgames.exchange_economy import (ExchangeEconomy, build_economy_game,
                                       coalition_matrix)
from flpgames.lp_core import LinearProgram, Status, dual_of
from flpgames.production_game import ProductionGame

from gen import (frac, random_economy, random_feasible_point, random_fp, random_lp,
                 random_mlp,
                 random_multi_game, random_production_game, random_weights, rng)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"
RESULTS = {}


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        ok = elapsed < budget
        assert ok, f"took {elapsed:.1f}s, budget {budget}s"
    finally:
        elapsed = time.perf_counter() - start
        line = (f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  "
                f"{title} ({elapsed:.2f}s / {budget}s)")
        RESULTS[number] = line
        print(line)


def test_01_charnes_cooper_equivalence():
    with criterion(1, "fractional optimum = vertex oracle, exact and float", 30):
        r = rng(1)
        for _ in range(200):
            fp = random_fp(r)
            best, _ = vertex_oracle(fp)
            assert solve_fractional(fp).value == best
            assert abs(solve_fractional(fp.as_float()).value - float(best)) <= 1e-7


def test_02_strong_duality():
    with criterion(2, "primal and dual LP optima agree exactly", 10):
        r = rng(2)
        for _ in range(200):
            lp = random_lp(r)
            primal, dual = lp_core.solve(lp), lp_core.solve(dual_of(lp))
            assert primal.status is Status.OPTIMAL and dual.status is Status.OPTIMAL
            assert primal.objective_value == dual.objective_value


def test_03_balanced_and_core():
    with criterion(3, "production games balanced, core candidate in the core", 60):
        r = rng(3)
        for k in range(100):
            game = random_production_game(r, n=2 + k % 3)
            values = pg.characteristic_function(game)
            assert pg.check_balanced(game, values).balanced
            assert pg.is_core_member(game, pg.core_candidate(game), values).member


def random_tu_game(r, n):
    """Arbitrary nonnegative game; roughly half come out unbalanced."""
    values = {0: F(0)}
    for S in nonempty_coalitions(n):
        values[S] = frac(r, 0, 3 * bin(S).count("1"))
    return values


def test_04_bondareva_cross_check():
    with criterion(4, "Bondareva LP verdict = balanced-collection enumeration", 60):
        r = rng(4)
        games = [(n, random_tu_game(r, n)) for n in [1, 2, 3, 4] * 7 + [3, 4]]
        games.append((2, {0: 0, 1: 3, 2: 3, 3: 4}))
        verdicts = []
        for n, values in games:
            res = bondareva(n, values)
            verdict, best = balanced_by_enumeration(n, values)
            assert (res.balanced, res.optimum) == (verdict, best)
            verdicts.append(verdict)
        hand = bondareva(2, games[-1][1])
        assert not hand.balanced and hand.excess == 2
        assert True in verdicts and False in verdicts


def test_05_gamma_star():
    with criterion(5, "gamma* = n for n = 1..6", 1):
        assert [compute_gamma_star(n) for n in range(1, 7)] == [1, 2, 3, 4, 5, 6]


def test_06_molp_duality():
    with criterion(6, "matrix dual: W h = z*, dual feasible, weak duality", 60):
        r = rng(6)
        for _ in range(100):
            mlp = random_mlp(r)
            pt = molp.solve_pareto(mlp, random_weights(r, mlp.r))
            W = molp.build_matrix_dual(mlp, pareto=pt)
            g = W.g(mlp.h)
            assert g == pt.objectives
            assert molp.check_dual_feasible(mlp, W)
            for _ in range(50):
                x = random_feasible_point(r, mlp)
                assert molp.weak_duality_holds(mlp.objectives_at(x), g)


def test_07_stable_outcomes():
    with criterion(7, "stable candidate is stable (games and economies)", 120):
        r = rng(7)
        for _ in range(50):
            game = random_multi_game(r)
            assert molp.is_stable_outcome(game, molp.stable_candidate(game)).stable
        for _ in range(30):
            game = build_economy_game(random_economy(r))
            assert molp.is_stable_outcome(game, molp.stable_candidate(game)).stable


def test_08_single_objective_degeneration():
    with criterion(8, "r = 1: stable candidate/verdict = core candidate/verdict", 30):
        r = rng(8)
        disagreements = 0
        for _ in range(50):
            multi = random_multi_game(r, r=1)
            single = ProductionGame(multi.A, multi.endowments, multi.objectives[0],
                                    multi.gamma)
            u = tuple(row[0] for row in molp.stable_candidate(multi))
            assert u == pg.core_candidate(single)
            total = sum(u)
            trials = [u, (total,) + (F(0),) * (multi.n - 1),
                      tuple(total / multi.n * F(k + 1, 2) for k in range(multi.n))]
            for v in trials:
                stable = molp.is_stable_outcome(multi, [[x] for x in v]).stable
                disagreements += stable != pg.is_core_member(single, v).member
        assert disagreements == 0


def literal_case_table(S, i, j, m):
    if i < m:
        return int(any(j == (k - 1) * m + i for k in S))
    return int(any(j == k * m for k in S))


def test_09_exchange_encoding():
    with criterion(9, "A(S) matches the case table; V({i}) = U_i(e_i)", 1):
        n, m = 2, 2
        for S, members in [(1, {1}), (2, {2}), (3, {1, 2})]:
            A = coalition_matrix(S, n, m)
            for i, j in product(range(1, m + 1), range(1, n * m + 1)):
                assert A[i - 1][j - 1] == literal_case_table(members, i, j, m)
        utils = [FractionalObjective([2, 1], 0, [0, 0], 1),
                 FractionalObjective([1, 3], 0, [0, 0], 1)]
        econ = ExchangeEconomy([[1, 0], [0, 1]], utils)
        game = build_economy_game(econ)
        for k in (1, 2):
            mlp = game.coalition_problem(1 << (k - 1))
            best = lp_core.solve(LinearProgram(mlp.C[k - 1], mlp.G, mlp.h)).objective_value
            assert best == utils[k - 1](econ.endowments[k - 1])


def cli_json(command, name):
    out = subprocess.run([sys.executable, "-m", "flpgames", command,
                          str(INSTANCES / name), "--json"],
                         capture_output=True, check=True)
    return out.stdout


def test_10_cli_determinism():
    with criterion(10, "CLI --json byte-identical; u = (3,3) and rows (3,6)", 1):
        g1 = [cli_json("core", "g1.json") for _ in range(2)]
        g2 = [cli_json("stable", "g2.json") for _ in range(2)]
        assert g1[0] == g1[1] and g2[0] == g2[1]
        assert json.loads(g1[0])["allocation"] == ["3", "3"]
        assert json.loads(g2[0])["payoff"] == [["3", "6"], ["3", "6"]]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
