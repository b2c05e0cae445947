# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import math
import os
import tempfile
import unittest

import networkx as nx
import numpy as np

from qsched.exceptions import MalformedGraph6Error, ValidationError
from qsched.graphs import (
    Graph,
    RngSpec,
    WeightedGraph,
    assign_random_times,
    build_qaoa_circuit,
    encode_graph6,
    is_connected,
    load_graph_file,
    parse_graph6,
)
from qsched.tests.fixtures import c5_weighted_graph


def _atlas_file(directory, num_vertices, header=True):
    """Connected graphs on num_vertices vertices written as a graph6 file."""
    graphs = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == num_vertices and nx.is_connected(g)]
    path = os.path.join(directory, f"graph{num_vertices}c.g6")
    with open(path, "wb") as f:
        if header:
            f.write(b">>graph6<<")
        for g in graphs:
            f.write(nx.to_graph6_bytes(g, header=False))
    return path, graphs


class TestGraph6(unittest.TestCase):
    def test_triangle(self):
        graph = parse_graph6("Bw")
        self.assertEqual(graph.num_vertices, 3)
        self.assertEqual(sorted(graph.edges), [(0, 1), (0, 2), (1, 2)])

    def test_header_is_stripped(self):
        self.assertEqual(parse_graph6(">>graph6<<Bw"), parse_graph6("Bw"))

    def test_single_vertex(self):
        self.assertEqual(parse_graph6("@"), Graph(1, []))

    def test_rejects_bytes_out_of_range(self):
        with self.assertRaises(MalformedGraph6Error):
            parse_graph6("B!")

    def test_rejects_long_form(self):
        with self.assertRaises(MalformedGraph6Error):
            parse_graph6("~??~")

    def test_rejects_wrong_length(self):
        with self.assertRaises(MalformedGraph6Error):
            parse_graph6("Bww")

    def test_counts_match_the_connected_graph_tables(self):
        expected = {3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
        with tempfile.TemporaryDirectory() as tmp:
            for n, count in expected.items():
                path, _ = _atlas_file(tmp, n)
                self.assertEqual(len(load_graph_file(path)), count)

    def test_round_trip_and_reference_decoding(self):
        with tempfile.TemporaryDirectory() as tmp:
            for n in range(3, 8):
                path, reference = _atlas_file(tmp, n, header=False)
                with open(path) as f:
                    records = [line.strip() for line in f if line.strip()]
                graphs = load_graph_file(path)
                for record, graph, ref in zip(records, graphs, reference):
                    self.assertEqual(encode_graph6(graph), record)
                    decoded = nx.from_graph6_bytes(record.encode())
                    self.assertEqual(
                        sorted(graph.edges),
                        sorted((min(i, j), max(i, j)) for i, j in decoded.edges()),
                    )
                    self.assertEqual(nx.to_graph6_bytes(graph.to_networkx(), header=False).strip().decode(), record)
                    self.assertEqual(len(graph.edges), ref.number_of_edges())

    def test_blank_lines_skipped_and_errors_carry_line_numbers(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "mixed.g6")
            with open(path, "w") as f:
                f.write(">>graph6<<Bw\n\nBO\nB!\n")
            with self.assertRaises(MalformedGraph6Error) as ctx:
                load_graph_file(path)
            self.assertEqual(ctx.exception.line_number, 4)
            self.assertIn(":4:", str(ctx.exception))

    def test_is_connected(self):
        self.assertTrue(is_connected(parse_graph6("Bw")))
        self.assertFalse(is_connected(Graph(3, [(0, 1)])))


class TestRandomTimes(unittest.TestCase):
    def test_times_lie_in_half_open_interval(self):
        graph = parse_graph6("Bw")
        for seed in range(50):
            wg = assign_random_times(graph, RngSpec(seed))
            for t in [t for _, _, t in wg.edges] + list(wg.vertex_weights):
                self.assertGreater(t, 0.0)
                self.assertLessEqual(t, 2 * math.pi)

    def test_same_seed_same_draws(self):
        graph = parse_graph6("Bw")
        self.assertEqual(assign_random_times(graph, RngSpec(7)), assign_random_times(graph, RngSpec(7)))
        self.assertNotEqual(assign_random_times(graph, RngSpec(7)), assign_random_times(graph, RngSpec(8)))

    def test_mean_close_to_pi(self):
        graph = Graph(20, [(i, j) for j in range(20) for i in range(j)])
        draws = []
        for seed in range(10):
            wg = assign_random_times(graph, RngSpec(seed))
            draws.extend(t for _, _, t in wg.edges)
            draws.extend(wg.vertex_weights)
        draws = np.array(draws)
        standard_error = 2 * math.pi / math.sqrt(12) / math.sqrt(len(draws))
        self.assertLess(abs(draws.mean() - math.pi), 3 * standard_error)

    def test_unsupported_generator(self):
        with self.assertRaises(ValidationError):
            RngSpec(1, "mt19937")


class TestQaoaCircuit(unittest.TestCase):
    def test_gate_layout(self):
        circuit = build_qaoa_circuit(c5_weighted_graph())
        self.assertEqual([g.qubits for g in circuit.gates[:5]], [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        self.assertEqual([g.qubits for g in circuit.gates[5:]], [(k,) for k in range(5)])
        self.assertIn((0, 5), circuit.precedence)
        self.assertIn((4, 9), circuit.precedence)

    def test_isolated_vertex_gets_only_its_single_qubit_gate(self):
        circuit = build_qaoa_circuit(WeightedGraph(3, [(0, 1, 1.0)], [1.0, 1.0, 1.0]))
        self.assertEqual(circuit.predecessors(3), ())
        self.assertEqual(circuit.predecessors(1), (0,))

    def test_rounds_chain_through_single_qubit_gates(self):
        wg = WeightedGraph(2, [(0, 1, 1.0)], [1.0, 2.0])
        circuit = build_qaoa_circuit(wg, rounds=2)
        self.assertEqual(len(circuit.gates), 6)
        # round two edge gate waits on both round one single-qubit gates
        self.assertEqual(circuit.predecessors(3), (1, 2))

    def test_weighted_graph_rejects_duplicate_edges(self):
        with self.assertRaises(ValidationError):
            WeightedGraph(2, [(0, 1, 1.0), (0, 1, 2.0)], [1.0, 1.0])
