"""Exception hierarchy shared by all modules."""


class ReconError(Exception):
    """Base class for every error raised by reconalg."""


class ParameterError(ReconError, ValueError):
    """Invalid group parameters (n, q) or an out-of-scope family."""


class ShapeError(ReconError, ValueError):
    """Matrix dimensions do not compose."""


class StructuralError(ReconError, RuntimeError):
    """An internal construction produced an inconsistent object."""


class ConsistencyError(StructuralError):
    """Index ranges of derived series disagree with each other."""


class ChartEmptyError(ReconError, ValueError):
    """Normalization conditions of a chart force 1 = 0."""


class UnsupportedError(ReconError, ValueError):
    """Requested data is outside the built-in catalogue."""
