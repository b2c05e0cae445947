# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Exact scheduling

Solves the disjunctive model

    min Z
    x_h >= x_g + t_g - M * y_hg     for distinct g, h sharing a qubit
    Z >= x_g + t_g                   for every gate
    y_gh + y_hg = 1                  for distinct g, h sharing a qubit
    y_gh = 1                         for (g, h) in P
    x >= 0, y binary

by depth-first branch-and-bound over the undecided y (the orientation of
each pair of gates sharing a qubit). A node is a partial order: precedence
arcs plus the orientations decided so far. With every y fixed the model
reduces to a longest-path problem, so a leaf is solved by earliest starts.

Node bound: the larger of the longest path through the partial order and,
per qubit, the preemptive Jackson bound of its gates with heads and tails
taken from that partial order. Before branching, any orientation whose
two-gate path already reaches the incumbent is ruled out and the opposite
one fixed.
"""

from __future__ import annotations

import heapq
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

from qsched.circuit import (
    TOLERANCE,
    CircuitInstance,
    Schedule,
    ScheduleOrigin,
    makespan,
    validate_schedule,
)
from qsched.exceptions import MissingGateError, ValidationError
from qsched.schedulers.dispatch import dispatch_schedule
from qsched.schedulers.greedy import schedule_greedy
from qsched.schedulers.layered import schedule_layered

logger = logging.getLogger(__name__)

DEFAULT_TIME_LIMIT = 60.0


class ExactStatus(str, Enum):
    OPTIMAL = "Optimal"
    TIME_LIMIT = "TimeLimit"


@dataclass(frozen=True)
class ExactResult:
    schedule: Schedule
    makespan: float
    status: ExactStatus
    best_bound: float
    nodes_explored: int
    orderings: dict = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status is ExactStatus.OPTIMAL


class _Node:
    __slots__ = ("succ", "reach", "head", "tail", "bound")

    def __init__(self, succ, reach):
        self.succ = succ
        self.reach = reach
        self.head = None
        self.tail = None
        self.bound = 0.0

    def child(self):
        return _Node([set(s) for s in self.succ], list(self.reach))

    def ordered(self, a, b) -> bool:
        return bool((self.reach[a] >> b) & 1)


def _jackson_bound(members, head, dur, tail) -> float:
    """Optimal preemptive max(C + q) on one qubit with releases and tails."""
    jobs = sorted(members, key=lambda i: head[i])
    pool = []
    t = 0.0
    k = 0
    best = 0.0
    while k < len(jobs) or pool:
        if not pool and head[jobs[k]] > t:
            t = head[jobs[k]]
        while k < len(jobs) and head[jobs[k]] <= t:
            i = jobs[k]
            heapq.heappush(pool, (-tail[i], i, dur[i]))
            k += 1
        neg_tail, i, remaining = heapq.heappop(pool)
        next_release = head[jobs[k]] if k < len(jobs) else math.inf
        if t + remaining <= next_release:
            t += remaining
            best = max(best, t - neg_tail)
        else:
            heapq.heappush(pool, (neg_tail, i, remaining - (next_release - t)))
            t = next_release
    return best


class _BranchAndBound:
    def __init__(self, circuit: CircuitInstance):
        self.circuit = circuit
        self.ids = circuit.gate_ids
        self.index = {gid: i for i, gid in enumerate(self.ids)}
        self.n = len(self.ids)
        self.dur = [circuit.duration(gid) for gid in self.ids]

        self.machines = []
        for q in range(circuit.num_qubits):
            members = [self.index[g.id] for g in circuit.gates_on(q)]
            if len(members) > 1:
                self.machines.append(members)

        pairs = [(self.index[a], self.index[b]) for a, b in circuit.shared_qubit_pairs]
        # most makespan-critical disjunction first
        self.pairs = sorted(pairs, key=lambda p: (-min(self.dur[p[0]], self.dur[p[1]]), p))

    def root(self) -> _Node:
        succ = [set() for _ in range(self.n)]
        for a, b in self.circuit.precedence:
            succ[self.index[a]].add(self.index[b])

        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((u, v) for u in range(self.n) for v in succ[u])
        try:
            order = list(nx.topological_sort(graph))
        except nx.NetworkXUnfeasible as e:
            raise ValidationError("Precedence relation contains a cycle") from e

        reach = [0] * self.n
        for u in reversed(order):
            bits = 0
            for v in succ[u]:
                bits |= (1 << v) | reach[v]
            reach[u] = bits

        node = _Node(succ, reach)
        self.evaluate(node)
        return node

    def evaluate(self, node: _Node):
        dur = self.dur
        succ = node.succ
        # descendants strictly shrink along every arc, so this is topological
        order = sorted(range(self.n), key=lambda i: -bin(node.reach[i]).count("1"))

        head = [0.0] * self.n
        for u in order:
            end = head[u] + dur[u]
            for v in succ[u]:
                if end > head[v]:
                    head[v] = end

        tail = [0.0] * self.n
        for u in reversed(order):
            longest = 0.0
            for v in succ[u]:
                if dur[v] + tail[v] > longest:
                    longest = dur[v] + tail[v]
            tail[u] = longest

        bound = max((head[i] + dur[i] + tail[i] for i in range(self.n)), default=0.0)
        for members in self.machines:
            bound = max(bound, _jackson_bound(members, head, dur, tail))

        node.head, node.tail, node.bound = head, tail, bound

    def add_arc(self, node: _Node, u, v):
        node.succ[u].add(v)
        bits = (1 << v) | node.reach[v]
        reach = node.reach
        for x in range(self.n):
            if x == u or (reach[x] >> u) & 1:
                reach[x] |= bits

    def propagate(self, node: _Node, upper) -> bool:
        """Fix forced orientations; False when the node cannot beat upper."""
        limit = upper - TOLERANCE
        dur = self.dur
        while True:
            if node.bound >= limit:
                return False
            changed = False
            for a, b in self.pairs:
                if node.ordered(a, b) or node.ordered(b, a):
                    continue
                a_first = node.head[a] + dur[a] + dur[b] + node.tail[b] < limit
                b_first = node.head[b] + dur[b] + dur[a] + node.tail[a] < limit
                if not a_first and not b_first:
                    return False
                if not a_first:
                    self.add_arc(node, b, a)
                    changed = True
                elif not b_first:
                    self.add_arc(node, a, b)
                    changed = True
            if not changed:
                return True
            self.evaluate(node)

    def branch_pair(self, node: _Node):
        for a, b in self.pairs:
            if not node.ordered(a, b) and not node.ordered(b, a):
                return a, b
        return None

    def orient_by_starts(self, starts) -> _Node:
        """Complete the root order with the pair orientations of a schedule."""
        node = self.root()
        for a, b in sorted(self.pairs):
            if node.ordered(a, b) or node.ordered(b, a):
                continue
            key_a = (starts[a], starts[a] + self.dur[a], a)
            key_b = (starts[b], starts[b] + self.dur[b], b)
            if key_a < key_b:
                self.add_arc(node, a, b)
            else:
                self.add_arc(node, b, a)
        self.evaluate(node)
        return node

    def solve(self, incumbent, deadline):
        """Search below the incumbent; returns (starts, value, status, bound, nodes)."""
        dur = self.dur
        best_starts = incumbent
        best_value = max((incumbent[i] + dur[i] for i in range(self.n)), default=0.0)

        stack = [self.root()]
        nodes = 0
        while stack:
            if time.perf_counter() > deadline:
                bound = min([best_value] + [node.bound for node in stack])
                return best_starts, best_value, ExactStatus.TIME_LIMIT, bound, nodes

            node = stack.pop()
            if node.bound >= best_value - TOLERANCE:
                continue
            nodes += 1
            if not self.propagate(node, best_value):
                continue

            pair = self.branch_pair(node)
            if pair is None:
                value = max((node.head[i] + dur[i] for i in range(self.n)), default=0.0)
                if value < best_value - TOLERANCE:
                    best_value, best_starts = value, list(node.head)
                    logger.debug(f"New incumbent {best_value} after {nodes} nodes")
                continue

            a, b = pair
            prefer = (best_starts[a], best_starts[a] + dur[a], a) <= (best_starts[b], best_starts[b] + dur[b], b)
            first, second = ((a, b), (b, a)) if prefer else ((b, a), (a, b))
            for u, v in (second, first):
                child = node.child()
                self.add_arc(child, u, v)
                self.evaluate(child)
                if child.bound < best_value - TOLERANCE:
                    stack.append(child)

        return best_starts, best_value, ExactStatus.OPTIMAL, best_value, nodes


def _initial_incumbent(circuit, incumbent_hint):
    candidates = [
        schedule_greedy(circuit),
        schedule_layered(circuit).schedule,
        dispatch_schedule(circuit),
    ]
    if incumbent_hint is not None:
        try:
            if validate_schedule(circuit, incumbent_hint).ok:
                candidates.append(incumbent_hint)
            else:
                logger.warning("Ignoring incumbent hint: it violates the circuit's constraints")
        except MissingGateError as e:
            logger.warning(f"Ignoring incumbent hint: {e}")
    return min(candidates, key=lambda s: makespan(circuit, s))


def schedule_exact(
    circuit: CircuitInstance,
    time_limit: float = DEFAULT_TIME_LIMIT,
    incumbent_hint: Schedule | None = None,
) -> ExactResult:
    """
    Minimum-makespan schedule by branch-and-bound.

    Returns status Optimal when the tree is exhausted; TimeLimit otherwise,
    with the best schedule found and the best proven lower bound.
    """
    started = time.perf_counter()
    search = _BranchAndBound(circuit)
    incumbent = _initial_incumbent(circuit, incumbent_hint)
    starts = [incumbent.starts[gid] for gid in search.ids]

    best_starts, _, status, bound, nodes = search.solve(starts, started + time_limit)

    final = search.orient_by_starts(best_starts)
    result_starts = {gid: final.head[i] for i, gid in enumerate(search.ids)}
    schedule = Schedule(result_starts, ScheduleOrigin.EXACT)
    value = makespan(circuit, schedule)

    orderings = {}
    for a, b in search.pairs:
        ga, gb = search.ids[a], search.ids[b]
        orderings[(ga, gb)] = final.ordered(a, b)
        orderings[(gb, ga)] = final.ordered(b, a)

    if status is ExactStatus.OPTIMAL:
        bound = value
    else:
        logger.warning(
            f"Exact search hit the {time_limit}s limit after {nodes} nodes: best {value}, bound {bound}"
        )
    logger.info(
        f"Exact schedule: makespan {value}, status {status.value}, {nodes} nodes, "
        f"{time.perf_counter() - started:.3f}s"
    )
    return ExactResult(
        schedule=schedule,
        makespan=value,
        status=status,
        best_bound=min(bound, value),
        nodes_explored=nodes,
        orderings=orderings,
    )
