"""Linear fractional programming, production games and their cores."""

from .charnes_cooper import (FractionalObjective, FractionalProgram, solve_fractional,
                             transform)
from .errors import FlpError
from .exchange_economy import ExchangeEconomy, build_economy_game
from .lp_core import LinearProgram, Status, solve
from .molp import MultiLinearProgram, MultiProductionGame, is_stable_outcome, stable_candidate
from .production_game import ProductionGame, core_candidate, is_core_member

__all__ = [
    "ExchangeEconomy", "FlpError", "FractionalObjective", "FractionalProgram",
    "LinearProgram", "MultiLinearProgram", "MultiProductionGame", "ProductionGame",
    "Status", "build_economy_game", "core_candidate", "is_core_member",
    "is_stable_outcome", "solve", "solve_fractional", "stable_candidate", "transform",
]
