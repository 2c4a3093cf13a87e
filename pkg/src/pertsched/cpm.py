"""Critical-path method: the exact baseline scheduler.

Forward pass gives earliest starts (optimal when only precedence binds),
backward pass gives latest starts and slack, and the critical path is the
zero-slack source-to-sink chain. brute_force_makespan enumerates every
source-to-sink path outright and exists purely as an independent check on
the forward pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooLargeError
from .network import ProjectNetwork, Schedule, topological_order

BRUTE_FORCE_MAX_TASKS = 12


@dataclass(frozen=True)
class CpmResult:
    earliest_start: np.ndarray
    latest_start: np.ndarray
    slack: np.ndarray
    t_opt: float
    critical_path: list[str]

    def earliest_schedule(self) -> Schedule:
        return Schedule(self.earliest_start.copy())


def cpm_forward(net: ProjectNetwork) -> tuple[np.ndarray, float]:
    """Earliest starts and the optimal makespan t_opt (0 for an empty network)."""
    n = net.n_tasks
    es = np.zeros(n, dtype=np.float64)
    dur = net.durations
    for j in topological_order(net):
        for i in net.predecessors[j]:
            finish = es[i] + dur[i]
            if finish > es[j]:
                es[j] = finish
    t_opt = float(np.max(es + dur)) if n else 0.0
    return es, t_opt


def cpm_backward(net: ProjectNetwork, es: np.ndarray, t_opt: float) -> tuple[np.ndarray, np.ndarray]:
    """Latest starts anchored at t_opt, and slack = latest - earliest."""
    n = net.n_tasks
    dur = net.durations
    ls = np.empty(n, dtype=np.float64)
    for i in reversed(topological_order(net)):
        succs = net.successors[i]
        if succs:
            lf = min(ls[j] for j in succs)
        else:
            lf = t_opt
        ls[i] = lf - dur[i]
    slack = ls - es
    return ls, slack


def critical_path(net: ProjectNetwork, es: np.ndarray, slack: np.ndarray, t_opt: float) -> list[str]:
    """Zero-slack source-to-sink chain; smallest task index wins ties."""
    n = net.n_tasks
    if n == 0:
        return []
    dur = net.durations
    start = None
    for i in range(n):
        if slack[i] == 0.0 and not net.predecessors[i]:
            start = i
            break
    assert start is not None, "a zero-slack source must exist"

    path = [start]
    node = start
    while True:
        finish = es[node] + dur[node]
        nxt = None
        for j in net.successors[node]:
            if slack[j] == 0.0 and es[j] == finish:
                nxt = j
                break
        if nxt is None:
            break
        path.append(nxt)
        node = nxt
    return [net.tasks[i].id for i in path]


def analyze(net: ProjectNetwork) -> CpmResult:
    """Full forward + backward pass with the critical path extracted."""
    es, t_opt = cpm_forward(net)
    ls, slack = cpm_backward(net, es, t_opt)
    path = critical_path(net, es, slack, t_opt)
    es.setflags(write=False)
    ls.setflags(write=False)
    slack.setflags(write=False)
    return CpmResult(es, ls, slack, t_opt, path)


def brute_force_makespan(net: ProjectNetwork) -> float:
    """Max duration sum over all source-to-sink paths, by explicit enumeration.

    Guarded to small instances; meant to cross-check cpm_forward, so it
    deliberately avoids any shared dynamic-programming shortcut.
    """
    n = net.n_tasks
    if n > BRUTE_FORCE_MAX_TASKS:
        raise TooLargeError(
            f"brute force limited to {BRUTE_FORCE_MAX_TASKS} tasks, got {n}"
        )
    if n == 0:
        return 0.0

    dur = net.durations
    best = 0.0

    def walk(node, acc):
        nonlocal best
        acc = acc + dur[node]
        succs = net.successors[node]
        if not succs:
            if acc > best:
                best = acc
            return
        for j in succs:
            walk(j, acc)

    for i in range(n):
        if not net.predecessors[i]:
            walk(i, 0.0)
    return float(best)
