# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
List scheduling helpers shared by the exact and brute-force schedulers.
"""

from __future__ import annotations

import networkx as nx

from qsched.circuit import CircuitInstance, Schedule, ScheduleOrigin
from qsched.exceptions import ValidationError


def earliest_start(circuit: CircuitInstance, gate, availability, ends) -> float:
    """Max of qubit availability and the completion of every predecessor."""
    start = max((availability[q] for q in gate.qubits), default=0.0)
    for p in circuit.predecessors(gate.id):
        start = max(start, ends[p])
    return start


def list_schedule(circuit: CircuitInstance, order, origin=ScheduleOrigin.DISPATCH) -> Schedule:
    """
    Start each gate, in the given priority order, as early as its qubits
    and predecessors allow. The order must be a topological order of P.
    """
    availability = [0.0] * circuit.num_qubits
    ends = {}
    starts = {}
    for gid in order:
        gate = circuit.gate(gid)
        if any(p not in ends for p in circuit.predecessors(gid)):
            raise ValidationError(f"Gate {gid} is listed before one of its predecessors")
        start = earliest_start(circuit, gate, availability, ends)
        starts[gid] = start
        ends[gid] = start + gate.duration
        for q in gate.qubits:
            availability[q] = ends[gid]
    return Schedule(starts, origin)


def delivery_times(circuit: CircuitInstance) -> dict:
    """
    Longest chain of work that must follow each gate's completion through P
    (the gate's tail, excluding its own duration).
    """
    tails = {}
    for gid in reversed(list(nx.lexicographical_topological_sort(circuit.precedence_graph()))):
        tails[gid] = max(
            (circuit.duration(s) + tails[s] for s in circuit.successors(gid)),
            default=0.0,
        )
    return tails


def dispatch_schedule(circuit: CircuitInstance) -> Schedule:
    """
    Non-delay dispatching with the largest tail first.

    Among ready gates the one with the earliest possible start is dispatched;
    ties go to the largest delivery time, then the longest duration, then
    the lowest id. On a star this is Jackson's rule for the leaf tails.
    """
    tails = delivery_times(circuit)
    pending = {gid: len(circuit.predecessors(gid)) for gid in circuit.gate_ids}
    ready = {gid for gid, count in pending.items() if count == 0}
    availability = [0.0] * circuit.num_qubits
    ends = {}
    order = []

    while ready:
        estimates = {gid: earliest_start(circuit, circuit.gate(gid), availability, ends) for gid in ready}
        chosen = min(
            ready,
            key=lambda gid: (estimates[gid], -tails[gid], -circuit.duration(gid), gid),
        )
        ready.discard(chosen)
        order.append(chosen)
        ends[chosen] = estimates[chosen] + circuit.duration(chosen)
        for q in circuit.gate(chosen).qubits:
            availability[q] = ends[chosen]
        for succ in circuit.successors(chosen):
            pending[succ] -= 1
            if pending[succ] == 0:
                ready.add(succ)

    return list_schedule(circuit, order)
