"""Task networks and schedules.

A ProjectNetwork is an immutable, validated DAG: tasks indexed 0..N-1 in
insertion order, directed edges (i, j) meaning task j cannot start before
task i finishes. Edge weights are implicit (present = 1), so adjacency
lists are the only representation; everything downstream works off the
cached numpy views.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleError,
    DimensionMismatchError,
    DuplicateIdError,
    NegativeDurationError,
    UnknownEndpointError,
)


@dataclass(frozen=True)
class Task:
    """One activity: id, duration in time units, optional resource demand."""

    id: str
    duration: float
    demand: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.duration) or self.duration < 0:
            raise NegativeDurationError(
                f"task {self.id!r}: duration must be finite and >= 0, got {self.duration}"
            )
        if not np.isfinite(self.demand) or self.demand < 0:
            raise NegativeDurationError(
                f"task {self.id!r}: demand must be finite and >= 0, got {self.demand}"
            )


@dataclass(frozen=True)
class Schedule:
    """Vector of task start times, one per task, all finite and >= 0."""

    starts: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.starts, dtype=np.float64)
        object.__setattr__(self, "starts", arr)
        if arr.ndim != 1:
            raise DimensionMismatchError("starts must be a 1-D vector")
        if arr.size and (not np.isfinite(arr).all() or (arr < 0).any()):
            raise DimensionMismatchError("start times must be finite and >= 0")

    def __len__(self):
        return self.starts.size

    @classmethod
    def zeros(cls, n: int) -> "Schedule":
        return cls(np.zeros(n, dtype=np.float64))


class ProjectNetwork:
    """Validated DAG of tasks with directed precedence edges.

    Construction checks id uniqueness, edge endpoints, self-edges,
    duplicates and acyclicity; instances are immutable afterwards and safe
    to share between threads.
    """

    def __init__(self, tasks: Sequence[Task], edges: Iterable[tuple[int, int]]):
        self.tasks: tuple[Task, ...] = tuple(tasks)
        n = len(self.tasks)

        seen_ids = set()
        for t in self.tasks:
            if t.id in seen_ids:
                raise DuplicateIdError(f"duplicate task id {t.id!r}")
            seen_ids.add(t.id)

        edge_set = set()
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise UnknownEndpointError(f"edge ({i}, {j}) is out of range for {n} tasks")
            if i == j:
                raise CycleError([self.tasks[i].id, self.tasks[j].id])
            if (i, j) in edge_set:
                raise DuplicateIdError(
                    f"duplicate edge {self.tasks[i].id!r} -> {self.tasks[j].id!r}"
                )
            edge_set.add((i, j))

        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self.index_of: dict[str, int] = {t.id: k for k, t in enumerate(self.tasks)}

        self.durations = np.array([t.duration for t in self.tasks], dtype=np.float64)
        self.demands = np.array([t.demand for t in self.tasks], dtype=np.float64)
        if self.edges:
            e = np.array(self.edges, dtype=np.intp)
            self.edge_src = e[:, 0].copy()
            self.edge_dst = e[:, 1].copy()
        else:
            self.edge_src = np.empty(0, dtype=np.intp)
            self.edge_dst = np.empty(0, dtype=np.intp)

        self.successors: tuple[tuple[int, ...], ...] = _adjacency(n, self.edges, out=True)
        self.predecessors: tuple[tuple[int, ...], ...] = _adjacency(n, self.edges, out=False)
        # Raises CycleError if the graph is not a DAG.
        self._topo_order = _kahn_order(n, self.successors, self.predecessors, self.tasks)

        for arr in (self.durations, self.demands, self.edge_src, self.edge_dst):
            arr.setflags(write=False)

    @property
    def n_tasks(self) -> int:
        return len(self.tasks)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def task_ids(self) -> list[str]:
        return [t.id for t in self.tasks]

    def check_schedule(self, s: Schedule) -> np.ndarray:
        """Return the start vector after verifying its length."""
        if len(s) != self.n_tasks:
            raise DimensionMismatchError(
                f"schedule has {len(s)} entries, network has {self.n_tasks} tasks"
            )
        return s.starts

    def __repr__(self):
        return f"ProjectNetwork(n_tasks={self.n_tasks}, n_edges={self.n_edges})"


def _adjacency(n, edges, out):
    lists: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        if out:
            lists[i].append(j)
        else:
            lists[j].append(i)
    return tuple(tuple(sorted(adj)) for adj in lists)


def _kahn_order(n, successors, predecessors, tasks):
    """Kahn's algorithm with ascending-index tie-break; names a cycle on failure."""
    import heapq

    indeg = [len(predecessors[i]) for i in range(n)]
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in successors[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) < n:
        raise CycleError(_find_cycle(n, successors, indeg, tasks))
    return tuple(order)


def _find_cycle(n, successors, indeg, tasks):
    """Walk the unresolved subgraph until a vertex repeats; return its id cycle."""
    remaining = {i for i in range(n) if indeg[i] > 0}
    start = min(remaining)
    seen: dict[int, int] = {}
    path = []
    node = start
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = min(j for j in successors[node] if j in remaining)
    cycle = path[seen[node]:] + [node]
    return [tasks[i].id for i in cycle]


def build_network(
    tasks: Sequence[Task],
    edges: Iterable[tuple[str, str] | tuple[int, int]],
) -> ProjectNetwork:
    """Build and validate a ProjectNetwork.

    Edges may name tasks by id or by index. Raises CycleError,
    DuplicateIdError, UnknownEndpointError or NegativeDurationError.
    """
    index_of = {}
    for k, t in enumerate(tasks):
        if t.id in index_of:
            raise DuplicateIdError(f"duplicate task id {t.id!r}")
        index_of[t.id] = k

    resolved = []
    for a, b in edges:
        if isinstance(a, str) or isinstance(b, str):
            try:
                resolved.append((index_of[a], index_of[b]))
            except KeyError as exc:
                raise UnknownEndpointError(f"edge endpoint {exc.args[0]!r} is not a task id") from None
        else:
            resolved.append((int(a), int(b)))
    return ProjectNetwork(tasks, resolved)


def topological_order(net: ProjectNetwork) -> list[int]:
    """Indices in dependency order, ties broken by ascending task index."""
    return list(net._topo_order)


def finish_times(net: ProjectNetwork, s: Schedule) -> np.ndarray:
    """Per-task finish time start + duration."""
    return net.check_schedule(s) + net.durations


def makespan(net: ProjectNetwork, s: Schedule) -> float:
    """max_i (start_i + duration_i); 0.0 for an empty network."""
    starts = net.check_schedule(s)
    if starts.size == 0:
        return 0.0
    return float(np.max(starts + net.durations))


def violation_mass(net: ProjectNetwork, s: Schedule) -> float:
    """Total precedence overshoot sum_edges max(0, start_i + dur_i - start_j).

    Zero exactly when the schedule is precedence-feasible.
    """
    starts = net.check_schedule(s)
    if net.n_edges == 0:
        return 0.0
    over = starts[net.edge_src] + net.durations[net.edge_src] - starts[net.edge_dst]
    return float(np.sum(np.maximum(0.0, over)))


def edge_overshoots(net: ProjectNetwork, s: Schedule) -> np.ndarray:
    """max(0, start_i + dur_i - start_j) per directed edge, in edge order."""
    starts = net.check_schedule(s)
    if net.n_edges == 0:
        return np.empty(0, dtype=np.float64)
    over = starts[net.edge_src] + net.durations[net.edge_src] - starts[net.edge_dst]
    return np.maximum(0.0, over)
