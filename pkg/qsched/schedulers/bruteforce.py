# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Brute-force oracle

Tries every priority order of the gates consistent with P and list
schedules each one (a gate starts as soon as its qubits are free and its
predecessors are done). Some optimal schedule is reproduced by list
scheduling its own start-time order, so the minimum over all orders is
the optimum.

Orders are enumerated depth first with identical partial states merged:
two prefixes that leave the same gates unscheduled, the same availability
on every qubit still in use and the same completion times for every
finished gate a remaining gate still waits on have the same best
completion.
"""

from __future__ import annotations

import logging
import math

import networkx as nx

from qsched.circuit import CircuitInstance, Schedule, ScheduleOrigin
from qsched.exceptions import InstanceTooLargeError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10**7

# qubits with more gates than this are estimated by factorial
EXACT_COUNT_LIMIT = 16


def count_qubit_orderings(circuit: CircuitInstance, qubit, closure=None) -> int:
    """Number of orders of G_i compatible with the transitive closure of P."""
    gates = [g.id for g in circuit.gates_on(qubit)]
    k = len(gates)
    if k > EXACT_COUNT_LIMIT:
        return math.factorial(k)

    closure = closure if closure is not None else nx.transitive_closure_dag(circuit.precedence_graph())
    before = [0] * k
    for a, ga in enumerate(gates):
        for b, gb in enumerate(gates):
            if closure.has_edge(ga, gb):
                before[b] |= 1 << a

    counts = [0] * (1 << k)
    counts[0] = 1
    for mask in range(1 << k):
        if not counts[mask]:
            continue
        for b in range(k):
            if not (mask >> b) & 1 and before[b] & ~mask == 0:
                counts[mask | 1 << b] += counts[mask]
    return counts[(1 << k) - 1]


def ordering_count(circuit: CircuitInstance) -> int:
    """Product over qubits of the per-qubit ordering counts."""
    closure = nx.transitive_closure_dag(circuit.precedence_graph())
    total = 1
    for q in range(circuit.num_qubits):
        total *= count_qubit_orderings(circuit, q, closure)
    return total


def schedule_bruteforce(circuit: CircuitInstance, cap: int = DEFAULT_CAP) -> Schedule:
    orderings = ordering_count(circuit)
    if orderings > cap:
        raise InstanceTooLargeError(
            f"Circuit admits {orderings} per-qubit orderings, above the brute-force cap of {cap}"
        )

    ids = circuit.gate_ids
    index = {gid: i for i, gid in enumerate(ids)}
    n = len(ids)
    full = (1 << n) - 1
    dur = [circuit.duration(gid) for gid in ids]
    qubits = [circuit.gate(gid).qubits for gid in ids]
    preds = [[index[p] for p in circuit.predecessors(gid)] for gid in ids]
    pred_mask = [sum(1 << p for p in ps) for ps in preds]
    succ_mask = [sum(1 << index[s] for s in circuit.successors(gid)) for gid in ids]
    qubit_mask = [0] * circuit.num_qubits
    for i, qs in enumerate(qubits):
        for q in qs:
            qubit_mask[q] |= 1 << i

    availability = [0.0] * circuit.num_qubits
    ends = [0.0] * n
    memo = {}

    def state_key(mask):
        remaining = full & ~mask
        live = tuple(availability[q] for q in range(circuit.num_qubits) if qubit_mask[q] & remaining)
        waited_on = tuple(
            ends[d] for d in range(n) if (mask >> d) & 1 and succ_mask[d] & remaining
        )
        return mask, live, waited_on

    def best_completion(mask):
        if mask == full:
            return 0.0
        key = state_key(mask)
        if key in memo:
            return memo[key][0]

        best, choice = math.inf, None
        for g in range(n):
            if (mask >> g) & 1 or pred_mask[g] & ~mask:
                continue
            start = max(availability[q] for q in qubits[g])
            for p in preds[g]:
                start = max(start, ends[p])
            end = start + dur[g]

            saved = [availability[q] for q in qubits[g]]
            for q in qubits[g]:
                availability[q] = end
            ends[g] = end
            value = max(end, best_completion(mask | 1 << g))
            for q, t in zip(qubits[g], saved):
                availability[q] = t

            if value < best:
                best, choice = value, g
        memo[key] = (best, choice)
        return best

    value = best_completion(0)

    # replay the stored choices from the empty prefix
    availability[:] = [0.0] * circuit.num_qubits
    starts = {}
    mask = 0
    while mask != full:
        g = memo[state_key(mask)][1]
        start = max(availability[q] for q in qubits[g])
        for p in preds[g]:
            start = max(start, ends[p])
        starts[ids[g]] = start
        ends[g] = start + dur[g]
        for q in qubits[g]:
            availability[q] = ends[g]
        mask |= 1 << g

    logger.info(f"Brute force: {orderings} orderings, {len(memo)} states, makespan {value}")
    return Schedule(starts, ScheduleOrigin.BRUTEFORCE)
