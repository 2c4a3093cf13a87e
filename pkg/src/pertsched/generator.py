"""Seeded synthetic project networks.

Tasks are labeled T1..TN; edges only go from lower to higher label, which
guarantees acyclicity. The PRNG is numpy's PCG64, a named algorithm with
identical streams on every platform; its name and the seed are carried
into every benchmark report so runs can be reproduced elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import InfeasibleSpecError
from .network import ProjectNetwork, Task, build_network

PRNG_NAME = "pcg64"


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one random instance.

    edge_target is either an exact edge count (int) or a per-pair
    Bernoulli probability (float in [0, 1]).
    """

    n_tasks: int
    edge_target: Union[int, float]
    duration_range: tuple[float, float] = (1.0, 10.0)
    demand_range: Optional[tuple[float, float]] = None
    seed: int = 0

    def __post_init__(self):
        if self.n_tasks < 1:
            raise InfeasibleSpecError("n_tasks must be >= 1")
        max_pairs = self.n_tasks * (self.n_tasks - 1) // 2
        if isinstance(self.edge_target, (int, np.integer)) and not isinstance(
            self.edge_target, bool
        ):
            if self.edge_target < 0 or self.edge_target > max_pairs:
                raise InfeasibleSpecError(
                    f"edge count {self.edge_target} outside [0, {max_pairs}] "
                    f"for {self.n_tasks} tasks"
                )
        else:
            p = float(self.edge_target)
            if not 0.0 <= p <= 1.0:
                raise InfeasibleSpecError(f"edge probability {p} outside [0, 1]")
        for name, rng in (("duration", self.duration_range), ("demand", self.demand_range)):
            if rng is None:
                continue
            lo, hi = rng
            if lo < 0 or hi < lo:
                raise InfeasibleSpecError(f"{name}_range must satisfy 0 <= min <= max")


def generate(spec: GenSpec) -> ProjectNetwork:
    """One network, fully determined by spec.seed."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.n_tasks

    lo, hi = spec.duration_range
    durations = rng.uniform(lo, hi, size=n)
    if spec.demand_range is not None:
        dlo, dhi = spec.demand_range
        demands = rng.uniform(dlo, dhi, size=n)
    else:
        demands = np.zeros(n)

    src_all, dst_all = np.triu_indices(n, k=1)
    if isinstance(spec.edge_target, (int, np.integer)) and not isinstance(
        spec.edge_target, bool
    ):
        # Exact count: the k lowest of one uniform score per pair. Ties have
        # probability zero, so the selected set is seed-deterministic.
        count = int(spec.edge_target)
        scores = rng.random(src_all.size)
        chosen = np.sort(np.argpartition(scores, count)[:count]) if count else np.empty(0, dtype=np.intp)
    else:
        chosen = np.flatnonzero(rng.random(src_all.size) < float(spec.edge_target))

    tasks = [
        Task(id=f"T{i + 1}", duration=float(durations[i]), demand=float(demands[i]))
        for i in range(n)
    ]
    edges = list(zip(src_all[chosen].tolist(), dst_all[chosen].tolist()))
    return ProjectNetwork(tasks, edges)


@dataclass(frozen=True)
class SuiteInstance:
    seed: int
    spec: GenSpec
    network: ProjectNetwork = field(compare=False)


def generate_suite(rows: list[GenSpec], runs_per_row: int, base_seed: int) -> list[SuiteInstance]:
    """runs_per_row instances per row; seed = base_seed + row_index*runs + k."""
    instances = []
    for row_index, row in enumerate(rows):
        for k in range(runs_per_row):
            seed = base_seed + row_index * runs_per_row + k
            spec = GenSpec(
                n_tasks=row.n_tasks,
                edge_target=row.edge_target,
                duration_range=row.duration_range,
                demand_range=row.demand_range,
                seed=seed,
            )
            instances.append(SuiteInstance(seed=seed, spec=spec, network=generate(spec)))
    return instances
