"""Exception hierarchy shared across the package.

Everything raised on purpose derives from SchedulingError so the CLI can
map domain failures to a single exit code.
"""


class SchedulingError(Exception):
    """Base class for all domain errors."""


class CycleError(SchedulingError):
    """The precedence graph contains a cycle; the message names one."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("dependency cycle: " + " -> ".join(self.cycle))


class DuplicateIdError(SchedulingError):
    """Two tasks share the same id."""


class UnknownEndpointError(SchedulingError):
    """An edge refers to a task id that does not exist."""


class NegativeDurationError(SchedulingError):
    """A task has duration < 0 (or demand < 0)."""


class DimensionMismatchError(SchedulingError):
    """Schedule length does not match the network's task count."""


class NonFiniteError(SchedulingError):
    """An update produced NaN/Inf, typically a divergent step size."""

    def __init__(self, message, iteration=None):
        self.iteration = iteration
        super().__init__(message)


class OrderingError(SchedulingError):
    """Three-point estimate violates optimistic <= likely <= pessimistic."""


class MissingDurationError(SchedulingError):
    """A task has neither an explicit duration nor a three-point estimate."""


class TooLargeError(SchedulingError):
    """Instance exceeds the size guard of an exhaustive computation."""


class InfeasibleSpecError(SchedulingError):
    """A generator spec asks for more edges than pairs exist."""


class ParseError(SchedulingError):
    """A project file is not valid JSON; message carries line/column."""


class SchemaError(SchedulingError):
    """A project file parses but does not match the expected schema."""
