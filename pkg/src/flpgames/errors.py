"""Exception hierarchy shared by every module of the package."""


class FlpError(Exception):
    """Base class for all library errors."""


class MalformedProgram(FlpError, ValueError):
    """Dimensions or senses of a program are inconsistent."""


class NumericFailure(FlpError, ArithmeticError):
    """Float-mode simplex hit the pivot cap."""


class InfeasibleRegion(FlpError):
    pass


class UnboundedRegion(FlpError):
    pass


class DenominatorNotPositive(FlpError):
    pass


class ZeroScale(FlpError, ZeroDivisionError):
    """The homogenizing variable t is zero, so y / t is undefined."""


class CoalitionProblemInfeasible(InfeasibleRegion):
    pass


class CoalitionProblemUnbounded(UnboundedRegion):
    pass


class TooManyPlayers(FlpError, ValueError):
    pass


class InvalidGame(FlpError, ValueError):
    """Bad game data: negative endowments, gamma <= n, shape mismatch."""


class NegativeObjectiveIndex(FlpError):
    """Some numerator is negative everywhere on the region."""


class NonpositiveWeight(FlpError, ValueError):
    pass


class InfeasiblePoint(FlpError, ValueError):
    pass


class DimensionMismatch(FlpError, ValueError):
    pass


class DegenerateDualObjective(FlpError):
    """The scalarized dual value is zero, so the rank-one dual is undefined."""


class IndexOutOfRange(FlpError, IndexError):
    pass


class ParseError(FlpError, ValueError):
    """Instance file is not valid JSON or misses required fields."""
