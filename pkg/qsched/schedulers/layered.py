# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Layered scheduling

Gates are packed into layers of mutually qubit-disjoint gates; a layer
lasts as long as its longest gate and layers run back to back, so the
total time is the sum over layers of the longest gate in each.

Gates are grouped by precedence generation first (generation k holds the
gates whose longest predecessor chain has k arcs). Each generation is
packed first-fit, longest gate first, into layers that open after the
previous generation's last layer. On QAOA circuits this is the familiar
two-phase picture: edge-coloring layers for the two-qubit gates, then one
layer of single-qubit gates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx

from qsched.circuit import CircuitInstance, Schedule, ScheduleOrigin

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayeredSchedule:
    layers: tuple
    layer_times: tuple
    schedule: Schedule

    @property
    def makespan(self) -> float:
        return sum(self.layer_times)

    def layer_of(self, gate_id) -> int:
        for index, layer in enumerate(self.layers):
            if gate_id in layer:
                return index
        raise KeyError(gate_id)


def schedule_layered(circuit: CircuitInstance) -> LayeredSchedule:
    layers = []
    layer_qubits = []

    for generation in nx.topological_generations(circuit.precedence_graph()):
        first_layer = len(layers)
        ordered = sorted(generation, key=lambda gid: (-circuit.duration(gid), gid))
        for gid in ordered:
            qubits = set(circuit.gate(gid).qubits)
            for index in range(first_layer, len(layers)):
                if layer_qubits[index].isdisjoint(qubits):
                    layers[index].append(gid)
                    layer_qubits[index] |= qubits
                    break
            else:
                layers.append([gid])
                layer_qubits.append(set(qubits))

    layer_times = [max(circuit.duration(gid) for gid in layer) for layer in layers]

    starts = {}
    offset = 0.0
    for layer, layer_time in zip(layers, layer_times):
        for gid in layer:
            starts[gid] = offset
        offset += layer_time

    logger.debug(f"Layered schedule: {len(layers)} layers, total time {offset}")
    return LayeredSchedule(
        layers=tuple(tuple(sorted(layer)) for layer in layers),
        layer_times=tuple(layer_times),
        schedule=Schedule(starts, ScheduleOrigin.LAYERED),
    )
