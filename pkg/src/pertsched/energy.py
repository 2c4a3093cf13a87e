"""Penalty energy over schedules and its subgradient.

The objective combines four terms:

  precedence   sum over edges of max(0, start_i + dur_i - start_j)^2
  start_sum    beta * sum of start times (keeps schedules early)
  deadline     sum over tasks of max(0, finish_i - deadline)^2
  resource     sum over grid samples of max(0, usage(t) - resource_max)^2

All hinge terms use the squared ReLU; the subgradient of each hinge is
2*max(0, x), which is zero when the constraint is inactive and at the
kink, so the gradient is deterministic everywhere.

The resource term is piecewise-constant in the start times, so its exact
derivative is useless (zero almost everywhere). Its contribution to the
gradient is instead a per-coordinate central finite difference with step
equal to the sampling resolution grid_dt, which produces a usable descent
signal at grid scale. Shifting one task by one grid step only changes the
usage profile near the task's two endpoints, so the difference is
evaluated from the base profile in O(1) samples per task rather than by
re-profiling the whole schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatchError
from .network import ProjectNetwork, Schedule

#: Default weight of the start-time sum; small enough that active hinge
#: gradients dominate for durations in the single-digit-to-tens range.
DEFAULT_BETA = 0.01


@dataclass(frozen=True)
class EnergyConfig:
    """Weights and optional constraint levels for the total energy."""

    beta: float = DEFAULT_BETA
    deadline: Optional[float] = None
    resource_max: Optional[float] = None
    lambda_deadline: float = 1.0
    lambda_resource: float = 1.0
    grid_dt: float = 1.0

    def __post_init__(self):
        if self.beta < 0 or self.lambda_deadline < 0 or self.lambda_resource < 0:
            raise ValueError("energy weights must be >= 0")
        if self.grid_dt <= 0:
            raise ValueError("grid_dt must be > 0")
        if self.deadline is not None and self.deadline <= 0:
            raise ValueError("deadline must be > 0 when set")
        if self.resource_max is not None and self.resource_max <= 0:
            raise ValueError("resource_max must be > 0 when set")


@dataclass(frozen=True)
class EnergyBreakdown:
    """Raw (unweighted) components plus the weighted total."""

    precedence: float
    start_sum: float
    deadline: float
    resource: float
    total: float

    def as_dict(self) -> dict:
        return {
            "precedence": self.precedence,
            "start_sum": self.start_sum,
            "deadline": self.deadline,
            "resource": self.resource,
            "total": self.total,
        }


def precedence_energy(net: ProjectNetwork, s: Schedule) -> float:
    """Hinge-squared dependency penalty; zero iff precedence-feasible."""
    starts = net.check_schedule(s)
    if net.n_edges == 0:
        return 0.0
    over = np.maximum(
        0.0, starts[net.edge_src] + net.durations[net.edge_src] - starts[net.edge_dst]
    )
    return float(np.sum(over * over))


def deadline_energy(net: ProjectNetwork, s: Schedule, deadline: float) -> float:
    """Hinge-squared lateness penalty over per-task finish times."""
    starts = net.check_schedule(s)
    over = np.maximum(0.0, starts + net.durations - deadline)
    return float(np.sum(over * over))


def resource_profile(net: ProjectNetwork, s: Schedule, grid_dt: float = 1.0) -> np.ndarray:
    """Resource usage sampled at t = 0, dt, 2*dt, ... up to the makespan.

    Task i contributes its demand at sample t iff start_i <= t <
    start_i + dur_i (half-open, so zero-duration tasks contribute
    nothing). The grid always includes one sample at or past the
    makespan.
    """
    starts = net.check_schedule(s)
    return _profile_raw(starts, net.durations, net.demands, grid_dt)


def resource_energy(profile: np.ndarray, resource_max: float) -> float:
    """Hinge-squared overload penalty over the sampled usage profile."""
    over = np.maximum(0.0, np.asarray(profile, dtype=np.float64) - resource_max)
    return float(np.sum(over * over))


def total_energy(net: ProjectNetwork, s: Schedule, cfg: EnergyConfig) -> EnergyBreakdown:
    """All components for the given schedule; absent constraints contribute 0."""
    starts = net.check_schedule(s)
    prec = precedence_energy(net, s)
    start_sum = float(np.sum(starts))
    dl = deadline_energy(net, s, cfg.deadline) if cfg.deadline is not None else 0.0
    if cfg.resource_max is not None:
        res = resource_energy(resource_profile(net, s, cfg.grid_dt), cfg.resource_max)
    else:
        res = 0.0
    total = prec + cfg.beta * start_sum + cfg.lambda_deadline * dl + cfg.lambda_resource * res
    return EnergyBreakdown(prec, start_sum, dl, res, total)


def energy_gradient(net: ProjectNetwork, s: Schedule, cfg: EnergyConfig) -> np.ndarray:
    """Subgradient of the total energy with respect to each start time.

    Component i is

        2 * sum over successors j of max(0, start_i + dur_i - start_j)
      - 2 * sum over predecessors k of max(0, start_k + dur_k - start_i)
      + beta
      + lambda_deadline * 2 * max(0, start_i + dur_i - deadline)
      + lambda_resource * (grid-step central difference of the resource term)
    """
    starts = net.check_schedule(s)
    n = net.n_tasks
    grad = np.full(n, cfg.beta, dtype=np.float64)
    if net.n_edges:
        over = np.maximum(
            0.0, starts[net.edge_src] + net.durations[net.edge_src] - starts[net.edge_dst]
        )
        grad += 2.0 * np.bincount(net.edge_src, weights=over, minlength=n)
        grad -= 2.0 * np.bincount(net.edge_dst, weights=over, minlength=n)
    if cfg.deadline is not None:
        grad += cfg.lambda_deadline * 2.0 * np.maximum(
            0.0, starts + net.durations - cfg.deadline
        )
    if cfg.resource_max is not None and np.any(net.demands > 0):
        grad += cfg.lambda_resource * resource_subgradient(net, starts, cfg)
    return grad


# ---------------------------------------------------------------------------
# resource term internals
# ---------------------------------------------------------------------------


def _sample_windows(starts, durations, grid_dt):
    """Half-open sample-index windows [lo, hi) of active grid points per task.

    Sample k (at time k*grid_dt) is inside task i's activity interval iff
    start_i <= k*grid_dt < start_i + dur_i. Windows are clipped to k >= 0
    so probe points with negative starts behave like the sampled grid.
    """
    lo = np.ceil(starts / grid_dt).astype(np.int64)
    hi = np.ceil((starts + durations) / grid_dt).astype(np.int64)
    np.clip(lo, 0, None, out=lo)
    np.clip(hi, 0, None, out=hi)
    return lo, hi


def _profile_raw(starts, durations, demands, grid_dt):
    starts = np.asarray(starts, dtype=np.float64)
    if starts.size == 0:
        return np.zeros(1, dtype=np.float64)
    horizon = float(np.max(starts + durations))
    n_last = max(0, int(math.ceil(horizon / grid_dt)))
    lo, hi = _sample_windows(starts, durations, grid_dt)
    diff = np.zeros(n_last + 2, dtype=np.float64)
    np.add.at(diff, lo, demands)
    np.add.at(diff, np.minimum(hi, n_last + 1), -demands)
    return np.cumsum(diff[: n_last + 1])


def _hinge_sq(x, cap):
    over = np.maximum(0.0, x - cap)
    return over * over


def resource_subgradient(net: ProjectNetwork, starts: np.ndarray, cfg: EnergyConfig) -> np.ndarray:
    """Central finite difference of the resource energy, step h = grid_dt.

    Equivalent to perturbing each start by +-h and re-evaluating the
    resource term, but computed from the base profile: the perturbed
    profile differs only where the task's own activity window moved, so
    each coordinate needs a handful of sample lookups.
    """
    dt = cfg.grid_dt
    cap = cfg.resource_max
    d = net.demands
    dur = net.durations
    base = _profile_raw(starts, dur, d, dt)
    base_pen = _hinge_sq(base, cap)

    lo0, hi0 = _sample_windows(starts, dur, dt)

    def perturbed_delta(shift):
        lo1, hi1 = _sample_windows(starts + shift, dur, dt)
        delta = np.zeros(net.n_tasks, dtype=np.float64)
        # old \ new splits into at most two windows, same for new \ old
        _accumulate(delta, lo0, np.minimum(hi0, np.maximum(lo0, lo1)), -d, base, base_pen, cap)
        _accumulate(delta, np.maximum(lo0, np.minimum(hi0, hi1)), hi0, -d, base, base_pen, cap)
        _accumulate(delta, lo1, np.minimum(hi1, np.maximum(lo1, lo0)), +d, base, base_pen, cap)
        _accumulate(delta, np.maximum(lo1, np.minimum(hi1, hi0)), hi1, +d, base, base_pen, cap)
        return delta

    plus = perturbed_delta(dt)
    minus = perturbed_delta(-dt)
    return (plus - minus) / (2.0 * dt)


def _accumulate(delta, lo, hi, change, base, base_pen, cap):
    """Add pen(R_k + change) - pen(R_k) over k in [lo, hi) to delta, per task.

    Windows here are at most a couple of samples wide (one grid step), so
    iterating offsets is a short fixed loop of vector ops. Samples past
    the base grid carry zero usage.
    """
    width = hi - lo
    max_width = int(width.max()) if width.size else 0
    k_max = base.shape[0]
    for off in range(max_width):
        mask = width > off
        if not mask.any():
            break
        k = lo[mask] + off
        inside = k < k_max
        r = np.where(inside, base[np.minimum(k, k_max - 1)], 0.0)
        pen0 = np.where(inside, base_pen[np.minimum(k, k_max - 1)], 0.0)
        delta[mask] += _hinge_sq(r + change[mask], cap) - pen0


def resource_fd_reference(net: ProjectNetwork, starts: np.ndarray, cfg: EnergyConfig) -> np.ndarray:
    """Definitional central difference: re-profile the whole schedule per probe.

    Slow; exists as the independent check for resource_subgradient.
    """
    dt = cfg.grid_dt
    out = np.zeros(net.n_tasks, dtype=np.float64)
    for i in range(net.n_tasks):
        probe = starts.astype(np.float64).copy()
        probe[i] = starts[i] + dt
        e_plus = resource_energy(_profile_raw(probe, net.durations, net.demands, dt), cfg.resource_max)
        probe[i] = starts[i] - dt
        e_minus = resource_energy(_profile_raw(probe, net.durations, net.demands, dt), cfg.resource_max)
        out[i] = (e_plus - e_minus) / (2.0 * dt)
    return out
