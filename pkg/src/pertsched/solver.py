"""Clamped subgradient descent over schedules.

Synchronous updates: every start moves by -alpha * gradient computed at
the pre-step state, then clamps to >= 0. The run stops once the max-norm
step stays under tol for tol_window consecutive iterations, or at the
iteration budget. An optional repair pass afterwards lifts each start to
its predecessors' latest finish in topological order, which makes the
result exactly precedence-feasible and never moves a start earlier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .energy import EnergyBreakdown, EnergyConfig, energy_gradient, total_energy
from .errors import NonFiniteError
from .network import ProjectNetwork, Schedule, makespan, topological_order, violation_mass


@dataclass(frozen=True)
class SolverConfig:
    alpha: float = 0.01
    max_iters: int = 5000
    tol: float = 1e-4
    tol_window: int = 10
    repair: bool = True
    record_trace: bool = False
    seed: Optional[int] = None  # reserved; the default dynamics are deterministic

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.tol_window < 1:
            raise ValueError("tol_window must be >= 1")


@dataclass(frozen=True)
class SolveResult:
    """Final schedule plus run diagnostics.

    `schedule`, `violation`, `makespan` and `final_energy` all describe
    the returned (post-repair, when repair ran) schedule;
    `violation_pre_repair` keeps the raw dynamics observable.
    """

    schedule: Schedule
    iterations: int
    converged: bool
    final_energy: EnergyBreakdown
    violation: float
    violation_pre_repair: float
    makespan: float
    repaired: bool
    energy_trace: Optional[list[EnergyBreakdown]] = field(default=None, compare=False)


def solve_step(
    net: ProjectNetwork, s: Schedule, energy_cfg: EnergyConfig, alpha: float
) -> Schedule:
    """One synchronous descent step with the >= 0 clamp applied."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    starts = net.check_schedule(s)
    grad = energy_gradient(net, s, energy_cfg)
    updated = np.maximum(0.0, starts - alpha * grad)
    if updated.size and not np.isfinite(updated).all():
        raise NonFiniteError("update produced non-finite start times")
    return Schedule(updated)


def solve(
    net: ProjectNetwork,
    energy_cfg: EnergyConfig,
    solver_cfg: SolverConfig = SolverConfig(),
    initial: Optional[Schedule] = None,
) -> SolveResult:
    """Run the descent from `initial` (default all zeros) to a stable schedule."""
    if initial is None:
        starts = np.zeros(net.n_tasks, dtype=np.float64)
    else:
        starts = net.check_schedule(initial).copy()

    alpha = solver_cfg.alpha
    trace: Optional[list[EnergyBreakdown]] = None
    if solver_cfg.record_trace:
        trace = [total_energy(net, Schedule(starts), energy_cfg)]

    converged = False
    iterations = 0
    calm_streak = 0
    for it in range(1, solver_cfg.max_iters + 1):
        grad = energy_gradient(net, Schedule(starts), energy_cfg)
        updated = np.maximum(0.0, starts - alpha * grad)
        if updated.size and not np.isfinite(updated).all():
            raise NonFiniteError(
                f"non-finite start times at iteration {it}; reduce alpha", iteration=it
            )
        delta = float(np.max(np.abs(updated - starts))) if updated.size else 0.0
        starts = updated
        iterations = it
        if trace is not None:
            trace.append(total_energy(net, Schedule(starts), energy_cfg))
        if delta < solver_cfg.tol:
            calm_streak += 1
            if calm_streak >= solver_cfg.tol_window:
                converged = True
                break
        else:
            calm_streak = 0

    raw = Schedule(starts)
    v_pre = violation_mass(net, raw)
    if solver_cfg.repair:
        final = repair_schedule(net, raw)
    else:
        final = raw
    return SolveResult(
        schedule=final,
        iterations=iterations,
        converged=converged,
        final_energy=total_energy(net, final, energy_cfg),
        violation=violation_mass(net, final),
        violation_pre_repair=v_pre,
        makespan=makespan(net, final),
        repaired=solver_cfg.repair,
        energy_trace=trace,
    )


def repair_schedule(net: ProjectNetwork, s: Schedule) -> Schedule:
    """Forward pass lifting every start to its predecessors' latest finish.

    Output is exactly precedence-feasible, component-wise >= the input,
    and idempotent on feasible schedules.
    """
    starts = net.check_schedule(s).copy()
    durations = net.durations
    for j in topological_order(net):
        preds = net.predecessors[j]
        for i in preds:
            finish = starts[i] + durations[i]
            if finish > starts[j]:
                starts[j] = finish
    return Schedule(starts)
