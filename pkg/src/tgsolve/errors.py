"""Exception types shared across the solver library."""


class SolverError(Exception):
    """Base class for all errors raised by this library."""


class GameFormatError(SolverError):
    """A game or certificate file could not be parsed."""


class BudgetExceeded(SolverError):
    """An iteration or expansion budget would be exceeded.

    Raised up front instead of silently starting an exponential
    computation; callers may raise the budget or switch to an
    accelerated solver.
    """

    def __init__(self, message: str, budget: int | None = None):
        super().__init__(message)
        self.budget = budget


class CapExceeded(SolverError):
    """An enumeration oracle was invoked above its hard size caps."""


class OperationCancelled(SolverError):
    """A caller-supplied cancellation check requested an abort."""


class NonMonotoneInstance(SolverError):
    """Edge availability is not threshold-defined (or always/never)."""


class NotDeclining(SolverError):
    """The game is not declining, so the declining solver refuses."""


class NotImproving(SolverError):
    """The game is not improving, so the improving solver refuses."""


class DeadlockVertex(SolverError):
    """A static parity instance contains a vertex with no successor."""


class StrategyUnavailableMove(SolverError):
    """A periodic strategy picked an edge that is unavailable (or none)."""


class NotWinning(SolverError):
    """Certificate extraction was attempted for a non-winning strategy."""


class TargetHasOutEdges(SolverError):
    """A reduction requires the target vertex to have no outgoing edges."""


class TargetNotP1(SolverError):
    """A reduction requires the target vertex to belong to Player 1."""
