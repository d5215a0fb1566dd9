class PmsError(Exception):
    """Base class for all package errors."""


class GraphParseError(PmsError, ValueError):
    pass


class GraphArgumentError(PmsError, ValueError):
    """A named vertex, edge or vertex set does not belong to the graph."""


class StructureError(PmsError, ValueError):
    """The graph lacks the structure an operation needs (e.g. 2-connectivity)."""


class SizeLimitError(PmsError):
    """Input exceeds a configured exhaustive-computation limit."""


class RuleInapplicable(PmsError):
    """A recurrence's hypothesis does not hold for the given input."""


class PreconditionError(PmsError, ValueError):
    pass


class ConsistencyError(PmsError, ArithmeticError):
    """An internal cross-check failed; the computed value must not be trusted."""
