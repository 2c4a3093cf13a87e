"""Three-point duration estimation.

expected_time is the classic weighted average (optimistic + 4*likely +
pessimistic) / 6; resolve_durations bridges it into task durations when a
project file carries estimates instead of explicit durations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingDurationError, OrderingError


@dataclass(frozen=True)
class ThreePointEstimate:
    optimistic: float
    likely: float
    pessimistic: float

    def __post_init__(self):
        if not (0 <= self.optimistic <= self.likely <= self.pessimistic):
            raise OrderingError(
                "estimates must satisfy 0 <= optimistic <= likely <= pessimistic, got "
                f"({self.optimistic}, {self.likely}, {self.pessimistic})"
            )


def expected_time(e: ThreePointEstimate) -> float:
    """(O + 4M + P) / 6; always within [optimistic, pessimistic]."""
    return (e.optimistic + 4.0 * e.likely + e.pessimistic) / 6.0


def resolve_durations(entries) -> list[float]:
    """Pick a duration for each (task_id, duration | None, estimate | None) entry.

    An explicit duration wins over estimates; with only estimates the
    weighted average applies; with neither, MissingDurationError names the
    task.
    """
    durations = []
    for task_id, duration, estimate in entries:
        if duration is not None:
            durations.append(float(duration))
        elif estimate is not None:
            durations.append(expected_time(estimate))
        else:
            raise MissingDurationError(
                f"task {task_id!r} has neither a duration nor a three-point estimate"
            )
    return durations
