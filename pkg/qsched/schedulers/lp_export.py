# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
LP export of the disjunctive big-M model

Variables: x_<id> (start of each gate), y_<g>_<h> (1 when g runs before h,
one per ordered pair of gates sharing a qubit) and Z (makespan).

Row order, stable across runs:
1. sequencing rows, by qubit then ordered gate pair; a pair sharing two
   qubits is written once, at its lowest shared qubit
2. pairing equalities y_g_h + y_h_g = 1, by gate pair
3. fixed orientations y_g_h = 1 for precedence pairs sharing a qubit
4. precedence rows x_h - x_g >= t_g for precedence pairs sharing no qubit
5. makespan rows Z - x_g >= t_g, by gate id

Two dialects: "lp_solve" (lp_solve, and glpsol --lp via conversion) and
"cplex" (CPLEX LP: CBC, HiGHS, GLPK, Gurobi).
"""

from __future__ import annotations

from qsched.circuit import CircuitInstance
from qsched.exceptions import ValidationError

DIALECTS = ("lp_solve", "cplex")


def _num(value) -> str:
    value = float(value)
    if value == 0:
        # no negative zero
        value = 0.0
    return repr(value)


def _expr(terms) -> str:
    """Render [(coef, var), ...] as 'x_1 - x_0 + 8.0 y_1_0'."""
    parts = []
    for coef, var in terms:
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        body = var if magnitude == 1 else f"{_num(magnitude)} {var}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def model_rows(circuit: CircuitInstance, big_m: float | None = None) -> tuple:
    """
    The model as (rows, binaries, big_m), with rows as
    (name, terms, sense, rhs) in file order.
    """
    m = circuit.total_duration if big_m is None else float(big_m)
    if m < 0:
        raise ValidationError(f"big_m must be nonnegative, got {m}")

    rows = []
    written = set()
    for q in range(circuit.num_qubits):
        on_q = [g.id for g in circuit.gates_on(q)]
        ordered = sorted((g, h) for g in on_q for h in on_q if g != h)
        for g, h in ordered:
            if (g, h) in written:
                continue
            written.add((g, h))
            rows.append((
                f"seq_q{q}_{g}_{h}",
                [(1, f"x_{h}"), (-1, f"x_{g}"), (m, f"y_{h}_{g}")],
                ">=",
                circuit.duration(g),
            ))

    shared = circuit.shared_qubit_pairs
    for g, h in shared:
        rows.append((f"pair_{g}_{h}", [(1, f"y_{g}_{h}"), (1, f"y_{h}_{g}")], "=", 1))

    shared_set = set(shared)
    for g, h in sorted(circuit.precedence):
        if (min(g, h), max(g, h)) in shared_set:
            rows.append((f"fix_{g}_{h}", [(1, f"y_{g}_{h}")], "=", 1))
    for g, h in sorted(circuit.precedence):
        if (min(g, h), max(g, h)) not in shared_set:
            rows.append((f"prec_{g}_{h}", [(1, f"x_{h}"), (-1, f"x_{g}")], ">=", circuit.duration(g)))

    for gid in circuit.gate_ids:
        rows.append((f"span_{gid}", [(1, "Z"), (-1, f"x_{gid}")], ">=", circuit.duration(gid)))
    if not rows:
        rows.append(("span", [(1, "Z")], ">=", 0))

    binaries = [f"y_{g}_{h}" for a, b in shared for g, h in ((a, b), (b, a))]
    return rows, binaries, m


def export_lp(circuit: CircuitInstance, big_m: float | None = None, dialect: str = "lp_solve") -> str:
    """
    Text of the exact model in LP file format.

    Args:
        circuit: the circuit to export
        big_m: sequencing constant; defaults to the total gate duration
        dialect: "lp_solve" or "cplex"

    Returns:
        str: the LP file contents
    """
    if dialect not in DIALECTS:
        raise ValidationError(f"Unknown LP dialect {dialect!r}; expected one of {', '.join(DIALECTS)}")

    rows, binaries, m = model_rows(circuit, big_m)
    header = f"{len(circuit.gates)} gates, {len(binaries)} ordering variables, M = {_num(m)}"

    output = []
    if dialect == "lp_solve":
        output.append(f"/* qsched disjunctive model: {header} */\n")
        output.append("min: Z;\n\n")
        for name, terms, sense, rhs in rows:
            output.append(f"{name}: {_expr(terms)} {sense} {_num(rhs)};\n")
        if binaries:
            output.append(f"\nbin {', '.join(binaries)};\n")
    else:
        output.append(f"\\ qsched disjunctive model: {header}\n")
        output.append("Minimize\n obj: Z\n")
        output.append("Subject To\n")
        for name, terms, sense, rhs in rows:
            output.append(f" {name}: {_expr(terms)} {sense} {_num(rhs)}\n")
        if binaries:
            output.append("Binaries\n")
            for name in binaries:
                output.append(f" {name}\n")
        output.append("End\n")
    return "".join(output)
