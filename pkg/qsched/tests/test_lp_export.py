# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import re
import unittest

import numpy as np

try:
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    milp = None

from qsched.circuit import CircuitInstance, Gate
from qsched.exceptions import ValidationError
from qsched.schedulers import export_lp, schedule_exact
from qsched.schedulers.lp_export import model_rows
from qsched.tests.fixtures import c5_circuit, random_circuit, s5_star, two_gate_circuit


def _row_names(text):
    return re.findall(r"^\s*(\w+):", text, flags=re.MULTILINE)


class TestModelRows(unittest.TestCase):
    def test_two_gates_on_one_qubit(self):
        rows, binaries, m = model_rows(two_gate_circuit())
        self.assertEqual(m, 8.0)
        names = [name for name, _, _, _ in rows]
        self.assertEqual(names, ["seq_q0_0_1", "seq_q0_1_0", "pair_0_1", "span_0", "span_1"])
        self.assertEqual(rows[0], ("seq_q0_0_1", [(1, "x_1"), (-1, "x_0"), (8.0, "y_1_0")], ">=", 5.0))
        self.assertEqual(rows[1], ("seq_q0_1_0", [(1, "x_0"), (-1, "x_1"), (8.0, "y_0_1")], ">=", 3.0))
        self.assertEqual(binaries, ["y_0_1", "y_1_0"])

    def test_c5_row_counts(self):
        rows, binaries, _ = model_rows(c5_circuit())
        names = [name for name, _, _, _ in rows]
        # three gates per qubit: six ordered pairs each
        self.assertEqual(sum(n.startswith("seq_") for n in names), 30)
        self.assertEqual(sum(n.startswith("pair_") for n in names), 15)
        # every built precedence pair shares a qubit
        self.assertEqual(sum(n.startswith("fix_") for n in names), 10)
        self.assertEqual(sum(n.startswith("prec_") for n in names), 0)
        self.assertEqual(sum(n.startswith("span_") for n in names), 10)
        self.assertEqual(len(binaries), 30)

    def test_row_groups_appear_in_order(self):
        rows, _, _ = model_rows(c5_circuit())
        prefixes = [name.split("_")[0] for name, _, _, _ in rows]
        order = ["seq", "pair", "fix", "span"]
        self.assertEqual(prefixes, sorted(prefixes, key=order.index))

    def test_precedence_without_shared_qubit(self):
        circuit = CircuitInstance(2, [Gate.single_qubit(0, 0, 2.0), Gate.single_qubit(1, 1, 1.0)], [(0, 1)])
        rows, binaries, _ = model_rows(circuit)
        self.assertIn(("prec_0_1", [(1, "x_1"), (-1, "x_0")], ">=", 2.0), rows)
        self.assertEqual(binaries, [])

    def test_pair_sharing_two_qubits_written_once(self):
        circuit = CircuitInstance(2, [Gate.two_qubit(0, 0, 1, 1.0), Gate.two_qubit(1, 0, 1, 2.0)])
        rows, _, _ = model_rows(circuit)
        names = [name for name, _, _, _ in rows]
        self.assertEqual(names.count("seq_q0_0_1"), 1)
        self.assertNotIn("seq_q1_0_1", names)

    def test_custom_big_m(self):
        _, _, m = model_rows(two_gate_circuit(), big_m=100)
        self.assertEqual(m, 100.0)
        with self.assertRaises(ValidationError):
            model_rows(two_gate_circuit(), big_m=-1)


class TestExportLp(unittest.TestCase):
    def test_lp_solve_text(self):
        text = export_lp(two_gate_circuit())
        self.assertTrue(text.startswith("/* qsched disjunctive model: 2 gates, 2 ordering variables, M = 8.0 */"))
        self.assertIn("min: Z;", text)
        self.assertIn("seq_q0_0_1: x_1 - x_0 + 8.0 y_1_0 >= 5.0;", text)
        self.assertIn("pair_0_1: y_0_1 + y_1_0 = 1.0;", text)
        self.assertIn("span_0: Z - x_0 >= 5.0;", text)
        self.assertTrue(text.rstrip().endswith("bin y_0_1, y_1_0;"))

    def test_cplex_text(self):
        text = export_lp(two_gate_circuit(), dialect="cplex")
        lines = text.splitlines()
        self.assertEqual(lines[1:3], ["Minimize", " obj: Z"])
        self.assertIn("Subject To", lines)
        self.assertIn(" seq_q0_0_1: x_1 - x_0 + 8.0 y_1_0 >= 5.0", lines)
        self.assertEqual(lines[-4:], ["Binaries", " y_0_1", " y_1_0", "End"])

    def test_same_rows_in_both_dialects(self):
        circuit = c5_circuit()
        lp_names = _row_names(export_lp(circuit).split("min: Z;", 1)[1])
        cplex_names = _row_names(export_lp(circuit, dialect="cplex").split("Subject To", 1)[1])
        self.assertEqual(lp_names, cplex_names)

    def test_deterministic(self):
        self.assertEqual(export_lp(c5_circuit()), export_lp(c5_circuit()))

    def test_empty_circuit_still_has_a_row(self):
        text = export_lp(CircuitInstance(1))
        self.assertIn("span: Z >= 0.0;", text)
        self.assertNotIn("bin", text)

    def test_unknown_dialect(self):
        with self.assertRaises(ValidationError):
            export_lp(two_gate_circuit(), dialect="mps")


def _parse_lp_solve(text):
    """Rows as (sense, [(coef, var), ...], rhs) and the binary variables."""
    rows, binaries = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("/*") or line.startswith("min:"):
            continue
        if line.startswith("bin "):
            binaries = [v.strip() for v in line[4:].rstrip(";").split(",")]
            continue
        _, body = line.rstrip(";").split(":", 1)
        tokens = body.split()
        sense, rhs = tokens[-2], float(tokens[-1])
        terms, sign, coef = [], 1.0, None
        for token in tokens[:-2]:
            if token in ("+", "-"):
                sign = -1.0 if token == "-" else 1.0
                continue
            if token.startswith("-"):
                sign, token = -1.0, token[1:]
            try:
                coef = float(token)
                continue
            except ValueError:
                pass
            terms.append((sign * (1.0 if coef is None else coef), token))
            sign, coef = 1.0, None
        rows.append((sense, terms, rhs))
    return rows, binaries


def _solve_lp_text(text):
    rows, binaries = _parse_lp_solve(text)
    names = sorted({var for _, terms, _ in rows for _, var in terms} | set(binaries))
    column = {name: i for i, name in enumerate(names)}

    matrix = np.zeros((len(rows), len(names)))
    lower = np.full(len(rows), -np.inf)
    upper = np.full(len(rows), np.inf)
    for r, (sense, terms, rhs) in enumerate(rows):
        for coef, var in terms:
            matrix[r, column[var]] += coef
        if sense in (">=", "="):
            lower[r] = rhs
        if sense in ("<=", "="):
            upper[r] = rhs

    objective = np.zeros(len(names))
    objective[column["Z"]] = 1.0
    integrality = np.zeros(len(names))
    var_upper = np.full(len(names), np.inf)
    for name in binaries:
        integrality[column[name]] = 1
        var_upper[column[name]] = 1.0
    return milp(
        objective,
        constraints=LinearConstraint(matrix, lower, upper),
        integrality=integrality,
        bounds=Bounds(np.zeros(len(names)), var_upper),
        options={"mip_rel_gap": 1e-9},
    )


@unittest.skipIf(milp is None, "scipy is not installed")
class TestLpSolvedByMilp(unittest.TestCase):
    def assertSolverAgrees(self, circuit, expected=None):
        exact = schedule_exact(circuit, time_limit=30)
        self.assertTrue(exact.is_optimal)
        result = _solve_lp_text(export_lp(circuit))
        self.assertEqual(result.status, 0, msg=result.message)
        self.assertAlmostEqual(result.fun, exact.makespan, delta=1e-5)
        if expected is not None:
            self.assertAlmostEqual(result.fun, expected, delta=1e-5)

    def test_c5(self):
        self.assertSolverAgrees(c5_circuit(), 10.0)

    def test_s5_star(self):
        self.assertSolverAgrees(s5_star().build_circuit(), 3.02)

    def test_precedence_without_shared_qubit(self):
        circuit = CircuitInstance(2, [Gate.single_qubit(0, 0, 2.0), Gate.single_qubit(1, 1, 1.0)], [(0, 1)])
        self.assertSolverAgrees(circuit, 3.0)

    def test_random_circuits(self):
        rng = np.random.Generator(np.random.PCG64(23))
        for index in range(5):
            circuit = random_circuit(rng, max_vertices=4)
            with self.subTest(index=index):
                self.assertSolverAgrees(circuit)
