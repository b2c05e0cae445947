# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Greedy scheduling with precedence constraints

Each round:
1. ready gates are those with every predecessor already scheduled
2. each ready gate gets its earliest start: the latest availability of its
   qubits (and the completion of its predecessors)
3. the gate g* with the smallest earliest start t* is scheduled at t*;
   ties prefer two-qubit gates, then longer gates, then lower ids
4. the other ready gates are visited shortest first and co-scheduled at t*
   when they are qubit-disjoint from g* and from everything co-scheduled
   so far and can still start exactly at t*

The greedy makespan is the largest final qubit availability.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from qsched.circuit import TOLERANCE, CircuitInstance, Schedule, ScheduleOrigin
from qsched.schedulers.dispatch import earliest_start

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyTrace:
    """Greedy output with the per-round decisions kept for inspection."""

    schedule: Schedule
    availability: tuple
    rounds: tuple

    @property
    def makespan(self) -> float:
        return max(self.availability, default=0.0)


def greedy_trace(circuit: CircuitInstance) -> GreedyTrace:
    availability = [0.0] * circuit.num_qubits
    pending = {gid: len(circuit.predecessors(gid)) for gid in circuit.gate_ids}
    ready = sorted(gid for gid, count in pending.items() if count == 0)
    starts = {}
    ends = {}
    rounds = []

    while ready:
        estimates = {
            gid: earliest_start(circuit, circuit.gate(gid), availability, ends) for gid in ready
        }
        t_min = min(estimates.values())
        g_star = min(
            (gid for gid in ready if estimates[gid] <= t_min + TOLERANCE),
            key=lambda gid: (
                -len(circuit.gate(gid).qubits),
                -circuit.duration(gid),
                gid,
            ),
        )
        t_star = estimates[g_star]

        placed = [g_star]
        occupied = set(circuit.gate(g_star).qubits)
        _place(circuit, g_star, t_star, starts, ends, availability)

        for gid in sorted(ready, key=lambda g: (circuit.duration(g), g)):
            if gid == g_star:
                continue
            gate = circuit.gate(gid)
            if not occupied.isdisjoint(gate.qubits):
                continue
            if abs(earliest_start(circuit, gate, availability, ends) - t_star) > TOLERANCE:
                continue
            _place(circuit, gid, t_star, starts, ends, availability)
            placed.append(gid)
            occupied.update(gate.qubits)

        rounds.append((t_star, tuple(placed)))
        ready = [gid for gid in ready if gid not in starts]
        for gid in placed:
            for succ in circuit.successors(gid):
                pending[succ] -= 1
                if pending[succ] == 0:
                    ready.append(succ)
        ready.sort()

    logger.debug(f"Greedy schedule: {len(rounds)} rounds, makespan {max(availability, default=0.0)}")
    return GreedyTrace(
        schedule=Schedule(starts, ScheduleOrigin.GREEDY),
        availability=tuple(availability),
        rounds=tuple(rounds),
    )


def _place(circuit, gid, start, starts, ends, availability):
    starts[gid] = start
    ends[gid] = start + circuit.duration(gid)
    for q in circuit.gate(gid).qubits:
        availability[q] = ends[gid]


def schedule_greedy(circuit: CircuitInstance) -> Schedule:
    return greedy_trace(circuit).schedule
