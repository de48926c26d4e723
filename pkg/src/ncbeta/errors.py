"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class EvaluationError(RuntimeError):
    """A numerical routine failed to converge or reach its accuracy target."""


class DirectionError(ValueError):
    """A recurrence was requested in a numerically unstable direction."""


class FrameDegenerateError(EvaluationError):
    """The saddle geometry is outside the validity strip of the expansions."""


class SeriesInvalidError(EvaluationError):
    """A transition-series expansion does not apply at the requested point."""
