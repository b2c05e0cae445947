# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Circuit core

Gates, circuits and schedules, plus the checks every scheduler relies on:
structural circuit validation, schedule validation and makespan.

A circuit is a set of gates on qubits 0..num_qubits-1 together with a
precedence relation P: (g, h) in P means gate g must complete before gate h
starts. Gates that share a qubit may never overlap in time.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, NewType

import networkx as nx

from qsched.exceptions import MissingGateError, ValidationError

logger = logging.getLogger(__name__)

QubitId = NewType("QubitId", int)

TOLERANCE = 1e-9


class GateKind(str, Enum):
    TWO_QUBIT = "two"
    SINGLE_QUBIT = "single"


class ScheduleOrigin(str, Enum):
    LAYERED = "layered"
    GREEDY = "greedy"
    EXACT = "exact"
    BRUTEFORCE = "bruteforce"
    DISPATCH = "dispatch"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Gate:
    """A gate on one or two qubits with an opaque nonnegative duration."""

    id: int
    qubits: tuple
    duration: float
    kind: GateKind

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "duration", float(self.duration))
        object.__setattr__(self, "kind", GateKind(self.kind))

        if self.id < 0:
            raise ValidationError(f"Gate id must be nonnegative, got {self.id}")
        if not self.duration >= 0:
            raise ValidationError(f"Gate {self.id} has negative duration {self.duration}")
        if any(q < 0 for q in self.qubits):
            raise ValidationError(f"Gate {self.id} acts on a negative qubit index")

        if self.kind is GateKind.TWO_QUBIT:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValidationError(f"Two-qubit gate {self.id} needs two distinct qubits, got {self.qubits}")
        elif len(self.qubits) != 1:
            raise ValidationError(f"Single-qubit gate {self.id} needs exactly one qubit, got {self.qubits}")

    @classmethod
    def two_qubit(cls, gate_id, i, j, duration):
        return cls(gate_id, (i, j), duration, GateKind.TWO_QUBIT)

    @classmethod
    def single_qubit(cls, gate_id, i, duration):
        return cls(gate_id, (i,), duration, GateKind.SINGLE_QUBIT)

    def shares_qubit(self, other):
        return not set(self.qubits).isdisjoint(other.qubits)


@dataclass(frozen=True)
class CircuitInstance:
    """
    The scheduling problem input: qubit universe, gates and precedence set.

    The constructor only normalizes containers; use validate_circuit() to
    check the structural invariants of externally supplied circuits.
    """

    num_qubits: int
    gates: tuple = ()
    precedence: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(
            self, "precedence", frozenset((int(a), int(b)) for a, b in self.precedence)
        )

    @cached_property
    def gate_by_id(self) -> Mapping[int, Gate]:
        return MappingProxyType({gate.id: gate for gate in self.gates})

    @cached_property
    def gate_ids(self) -> tuple:
        return tuple(sorted(self.gate_by_id))

    def gate(self, gate_id) -> Gate:
        return self.gate_by_id[gate_id]

    def duration(self, gate_id) -> float:
        return self.gate_by_id[gate_id].duration

    @cached_property
    def _gates_on(self):
        on = {}
        for gate in self.gates:
            for q in gate.qubits:
                on.setdefault(q, []).append(gate)
        return {q: tuple(sorted(gs, key=lambda g: g.id)) for q, gs in on.items()}

    def gates_on(self, qubit) -> tuple:
        """G_i: every gate whose qubit set contains the given qubit, by id."""
        return self._gates_on.get(qubit, ())

    @cached_property
    def _predecessors(self):
        preds = {gid: [] for gid in self.gate_by_id}
        for a, b in self.precedence:
            if b in preds:
                preds[b].append(a)
        return {gid: tuple(sorted(ps)) for gid, ps in preds.items()}

    @cached_property
    def _successors(self):
        succs = {gid: [] for gid in self.gate_by_id}
        for a, b in self.precedence:
            if a in succs:
                succs[a].append(b)
        return {gid: tuple(sorted(ss)) for gid, ss in succs.items()}

    def predecessors(self, gate_id) -> tuple:
        return self._predecessors.get(gate_id, ())

    def successors(self, gate_id) -> tuple:
        return self._successors.get(gate_id, ())

    @cached_property
    def shared_qubit_pairs(self) -> tuple:
        """Unordered pairs (g, h), g < h, of gates sharing at least one qubit."""
        pairs = set()
        for q in sorted(self._gates_on):
            on_q = self._gates_on[q]
            for idx, a in enumerate(on_q):
                for b in on_q[idx + 1:]:
                    pairs.add((a.id, b.id))
        return tuple(sorted(pairs))

    @property
    def total_duration(self) -> float:
        return sum(gate.duration for gate in self.gates)

    def precedence_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.gate_ids)
        graph.add_edges_from(sorted(self.precedence))
        return graph


@dataclass(frozen=True)
class Schedule:
    """Start time per gate id, labelled with the scheduler that produced it."""

    starts: Mapping[int, float]
    origin: ScheduleOrigin = ScheduleOrigin.EXTERNAL

    def __post_init__(self):
        starts = {int(gid): float(t) for gid, t in dict(self.starts).items()}
        negative = sorted(gid for gid, t in starts.items() if not t >= 0)
        if negative:
            raise ValidationError(f"Schedule has negative start times for gates {negative}")
        object.__setattr__(self, "starts", MappingProxyType(dict(sorted(starts.items()))))
        object.__setattr__(self, "origin", ScheduleOrigin(self.origin))

    def start(self, gate_id) -> float:
        return self.starts[gate_id]


@dataclass(frozen=True)
class ValidationReport:
    overlap_violations: list = field(default_factory=list)
    precedence_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.overlap_violations and not self.precedence_violations

    def as_dict(self):
        return {
            "ok": self.ok,
            "overlap_violations": [list(v) for v in self.overlap_violations],
            "precedence_violations": [list(v) for v in self.precedence_violations],
        }


@dataclass(frozen=True)
class CircuitReport:
    """Structural problems of a circuit; ok iff every invariant holds."""

    duplicate_ids: list = field(default_factory=list)
    out_of_range: list = field(default_factory=list)
    unknown_precedence: list = field(default_factory=list)
    self_precedence: list = field(default_factory=list)
    cycles: list = field(default_factory=list)
    bad_num_qubits: bool = False

    @property
    def ok(self) -> bool:
        return not (
            self.duplicate_ids
            or self.out_of_range
            or self.unknown_precedence
            or self.self_precedence
            or self.cycles
            or self.bad_num_qubits
        )

    def messages(self):
        msgs = []
        if self.bad_num_qubits:
            msgs.append("num_qubits must be a positive integer")
        if self.duplicate_ids:
            msgs.append(f"duplicate gate ids: {self.duplicate_ids}")
        for gid, q in self.out_of_range:
            msgs.append(f"gate {gid} acts on qubit {q} outside the circuit")
        for a, b in self.unknown_precedence:
            msgs.append(f"precedence ({a}, {b}) references an unknown gate")
        for gid in self.self_precedence:
            msgs.append(f"gate {gid} is declared to precede itself")
        for cycle in self.cycles:
            msgs.append(f"precedence cycle through gates {list(cycle)}")
        return msgs


def validate_circuit(circuit: CircuitInstance) -> CircuitReport:
    """Report every violated CircuitInstance invariant. Never raises."""
    seen = set()
    duplicates = set()
    for gate in circuit.gates:
        if gate.id in seen:
            duplicates.add(gate.id)
        seen.add(gate.id)

    out_of_range = sorted(
        (gate.id, q) for gate in circuit.gates for q in gate.qubits if q >= circuit.num_qubits
    )

    unknown = sorted((a, b) for a, b in circuit.precedence if a not in seen or b not in seen)
    self_loops = sorted(a for a, b in circuit.precedence if a == b)

    graph = nx.DiGraph()
    graph.add_edges_from((a, b) for a, b in circuit.precedence if a != b)
    cycles = sorted(
        tuple(sorted(component))
        for component in nx.strongly_connected_components(graph)
        if len(component) > 1
    )

    return CircuitReport(
        duplicate_ids=sorted(duplicates),
        out_of_range=out_of_range,
        unknown_precedence=unknown,
        self_precedence=self_loops,
        cycles=cycles,
        bad_num_qubits=not (isinstance(circuit.num_qubits, int) and circuit.num_qubits > 0),
    )


def _require_cover(circuit, schedule):
    missing = [gid for gid in circuit.gate_by_id if gid not in schedule.starts]
    if missing:
        raise MissingGateError(missing)


def makespan(circuit: CircuitInstance, schedule: Schedule) -> float:
    """Latest gate completion time; 0 for an empty circuit."""
    _require_cover(circuit, schedule)
    return max(
        (schedule.starts[gate.id] + gate.duration for gate in circuit.gates),
        default=0.0,
    )


def qubit_completions(circuit: CircuitInstance, schedule: Schedule) -> list:
    """C(i) per qubit: the latest end among gates on qubit i, 0 if idle."""
    _require_cover(circuit, schedule)
    completions = [0.0] * circuit.num_qubits
    for gate in circuit.gates:
        end = schedule.starts[gate.id] + gate.duration
        for q in gate.qubits:
            completions[q] = max(completions[q], end)
    return completions


def validate_schedule(
    circuit: CircuitInstance, schedule: Schedule, tolerance: float = TOLERANCE
) -> ValidationReport:
    """
    Check a schedule against the circuit.

    Two gates sharing a qubit are reported once (at their lowest shared
    qubit) when their intervals [start, start + duration) overlap by more
    than the tolerance. A precedence pair (g, h) is reported when h starts
    before g ends, beyond the tolerance.
    """
    _require_cover(circuit, schedule)
    starts = schedule.starts

    overlaps = []
    for a_id, b_id in circuit.shared_qubit_pairs:
        a, b = circuit.gate(a_id), circuit.gate(b_id)
        overlap = min(starts[a_id] + a.duration, starts[b_id] + b.duration) - max(
            starts[a_id], starts[b_id]
        )
        if overlap > tolerance:
            shared = min(set(a.qubits) & set(b.qubits))
            overlaps.append((a_id, b_id, shared))

    precedence = []
    for a_id, b_id in sorted(circuit.precedence):
        if starts[b_id] < starts[a_id] + circuit.duration(a_id) - tolerance:
            precedence.append((a_id, b_id))

    return ValidationReport(overlap_violations=overlaps, precedence_violations=precedence)


# JSON interchange
# ----------------


def circuit_to_dict(circuit: CircuitInstance) -> dict:
    return {
        "num_qubits": circuit.num_qubits,
        "gates": [
            {
                "id": gate.id,
                "qubits": list(gate.qubits),
                "duration": gate.duration,
                "kind": gate.kind.value,
            }
            for gate in sorted(circuit.gates, key=lambda g: g.id)
        ],
        "precedence": [list(pair) for pair in sorted(circuit.precedence)],
    }


def circuit_from_dict(data: Mapping) -> CircuitInstance:
    if not isinstance(data, Mapping):
        raise ValidationError(f"Circuit JSON must be an object, got {type(data).__name__}")
    try:
        gates = [
            Gate(
                int(g["id"]),
                tuple(g["qubits"]),
                float(g["duration"]),
                GateKind(g.get("kind") or _infer_kind(g["qubits"])),
            )
            for g in data.get("gates", [])
        ]
        precedence = [(int(a), int(b)) for a, b in data.get("precedence", [])]
        return CircuitInstance(int(data["num_qubits"]), gates, precedence)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ValidationError(f"Invalid circuit JSON: {e!r}") from e


def _infer_kind(qubits):
    return GateKind.TWO_QUBIT if len(qubits) == 2 else GateKind.SINGLE_QUBIT


def schedule_to_dict(schedule: Schedule, circuit: CircuitInstance | None = None) -> dict:
    data = {
        "origin": schedule.origin.value,
        "starts": {str(gid): t for gid, t in schedule.starts.items()},
    }
    if circuit is not None:
        data["makespan"] = makespan(circuit, schedule)
    return data


def schedule_from_dict(data: Mapping) -> Schedule:
    if not isinstance(data, Mapping):
        raise ValidationError(f"Schedule JSON must be an object, got {type(data).__name__}")
    try:
        starts = {int(gid): float(t) for gid, t in data["starts"].items()}
        return Schedule(starts, data.get("origin", ScheduleOrigin.EXTERNAL.value))
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ValidationError(f"Invalid schedule JSON: {e!r}") from e


def _read_json(path):
    with open(path, encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise ValidationError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e


def load_circuit(path) -> CircuitInstance:
    circuit = circuit_from_dict(_read_json(path))
    logger.info(f"Loaded circuit from {path}: {len(circuit.gates)} gates, {circuit.num_qubits} qubits")
    return circuit


def load_schedule(path) -> Schedule:
    return schedule_from_dict(_read_json(path))


def dump_json(data, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=False)
        f.write("\n")


def relabel(circuit: CircuitInstance, mapping: Mapping[int, int] | Iterable[int]) -> CircuitInstance:
    """Rename gate ids; mapping[old] = new. Used to check id-independence."""
    mapping = dict(mapping) if isinstance(mapping, Mapping) else dict(enumerate(mapping))
    gates = [Gate(mapping[g.id], g.qubits, g.duration, g.kind) for g in circuit.gates]
    precedence = [(mapping[a], mapping[b]) for a, b in circuit.precedence]
    return CircuitInstance(circuit.num_qubits, gates, precedence)
