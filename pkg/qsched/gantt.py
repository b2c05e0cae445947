# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Gantt charts as SVG

One lane per qubit, qubit 0 on top. Each gate is drawn on every lane of
its qubit set: two-qubit gates red, single-qubit gates blue. Layout uses
fixed pixel sizes only, so the same circuit and schedule always produce
the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from qsched.circuit import (
    TOLERANCE,
    CircuitInstance,
    GateKind,
    Schedule,
    makespan,
    validate_schedule,
)
from qsched.exceptions import InvalidScheduleError

MARGIN_LEFT = 50
MARGIN_RIGHT = 30
MARGIN_TOP = 30
MARGIN_BOTTOM = 40
BLOCK_PAD = 2
MAX_TICKS = 20

COLORS = {
    GateKind.TWO_QUBIT: "#d62728",
    GateKind.SINGLE_QUBIT: "#1f77b4",
}


@dataclass(frozen=True)
class GanttBlock:
    gate_id: int
    qubit: int
    start: float
    duration: float
    kind: GateKind

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass(frozen=True)
class GanttSpec:
    num_qubits: int
    blocks: tuple
    makespan: float


def build_gantt_spec(circuit: CircuitInstance, schedule: Schedule, tolerance: float = TOLERANCE) -> GanttSpec:
    report = validate_schedule(circuit, schedule, tolerance)
    if not report.ok:
        raise InvalidScheduleError(
            f"Cannot draw an invalid schedule: {len(report.overlap_violations)} overlaps, "
            f"{len(report.precedence_violations)} precedence violations"
        )
    blocks = [
        GanttBlock(gate.id, q, schedule.starts[gate.id], gate.duration, gate.kind)
        for gate in sorted(circuit.gates, key=lambda g: g.id)
        for q in sorted(gate.qubits)
    ]
    return GanttSpec(circuit.num_qubits, tuple(blocks), makespan(circuit, schedule))


def _tick_step(extent: float) -> float:
    """Smallest 1-2-5 step giving at most MAX_TICKS intervals."""
    if extent <= 0:
        return 1.0
    raw = extent / MAX_TICKS
    magnitude = 10 ** math.floor(math.log10(raw))
    for factor in (1, 2, 5, 10):
        if factor * magnitude >= raw:
            return float(factor * magnitude)
    return 10.0 * magnitude


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_gantt(
    circuit: CircuitInstance,
    schedule: Schedule,
    px_per_unit: float = 40,
    lane_height: float = 30,
    precision: int = 6,
    tolerance: float = TOLERANCE,
) -> str:
    spec = build_gantt_spec(circuit, schedule, tolerance)
    extent = spec.makespan
    lanes_bottom = MARGIN_TOP + spec.num_qubits * lane_height
    width = MARGIN_LEFT + extent * px_per_unit + MARGIN_RIGHT
    height = lanes_bottom + MARGIN_BOTTOM

    def x_of(t):
        return MARGIN_LEFT + t * px_per_unit

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n',
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" font-family="monospace" font-size="10">\n',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>\n',
    ]

    out.append('<g class="lanes">\n')
    for q in range(spec.num_qubits):
        y = MARGIN_TOP + q * lane_height
        out.append(
            f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(y + lane_height)}" x2="{_fmt(x_of(extent))}" '
            f'y2="{_fmt(y + lane_height)}" stroke="#dddddd"/>\n'
        )
        out.append(f'<text x="{_fmt(MARGIN_LEFT - 8)}" y="{_fmt(y + lane_height / 2 + 4)}" text-anchor="end">q{q}</text>\n')
    out.append("</g>\n")

    out.append('<g class="gates">\n')
    for block in spec.blocks:
        y = MARGIN_TOP + block.qubit * lane_height + BLOCK_PAD
        out.append(
            f'<rect x="{_fmt(x_of(block.start))}" y="{_fmt(y)}" width="{_fmt(block.duration * px_per_unit)}" '
            f'height="{_fmt(lane_height - 2 * BLOCK_PAD)}" fill="{COLORS[block.kind]}" stroke="#000000" '
            f'stroke-width="0.5" class="{block.kind.value}"><title>gate {block.gate_id} '
            f'[{block.start:.{precision}f}, {block.end:.{precision}f})</title></rect>\n'
        )
    out.append("</g>\n")

    out.append('<g class="axis">\n')
    out.append(
        f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(lanes_bottom)}" x2="{_fmt(x_of(extent))}" '
        f'y2="{_fmt(lanes_bottom)}" stroke="#000000"/>\n'
    )
    step = _tick_step(extent)
    for k in range(int(math.floor(extent / step + TOLERANCE)) + 1):
        t = k * step
        out.append(
            f'<line x1="{_fmt(x_of(t))}" y1="{_fmt(lanes_bottom)}" x2="{_fmt(x_of(t))}" '
            f'y2="{_fmt(lanes_bottom + 5)}" stroke="#000000"/>\n'
        )
        out.append(f'<text x="{_fmt(x_of(t))}" y="{_fmt(lanes_bottom + 16)}" text-anchor="middle">{t:g}</text>\n')
    out.append(f'<text x="{_fmt(MARGIN_LEFT)}" y="{_fmt(lanes_bottom + 32)}">time</text>\n')
    out.append("</g>\n")

    out.append(
        f'<g class="makespan"><line x1="{_fmt(x_of(extent))}" y1="{_fmt(MARGIN_TOP - 10)}" '
        f'x2="{_fmt(x_of(extent))}" y2="{_fmt(lanes_bottom)}" stroke="#000000" stroke-dasharray="4,3"/>'
        f'<text x="{_fmt(x_of(extent))}" y="{_fmt(MARGIN_TOP - 14)}" text-anchor="end">'
        f"makespan = {extent:.{precision}f}</text></g>\n"
    )
    out.append("</svg>\n")
    return "".join(out)
