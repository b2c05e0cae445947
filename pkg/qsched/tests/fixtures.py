# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""Shared instances for the test suite."""

import networkx as nx
import numpy as np

from qsched.circuit import CircuitInstance, Gate
from qsched.graphs import Graph, WeightedGraph, build_qaoa_circuit
from qsched.star import StarInstance

# five-cycle with edge times 5, 4, 3, 2, 1 and unit single-qubit times
C5_EDGES = [(0, 1, 5.0), (1, 2, 4.0), (2, 3, 3.0), (3, 4, 2.0), (0, 4, 1.0)]


def c5_weighted_graph():
    return WeightedGraph(5, C5_EDGES, [1.0] * 5)


def c5_circuit():
    return build_qaoa_circuit(c5_weighted_graph())


def s5_star():
    return StarInstance(5, [1.0, 1.0, 1.0, 0.01], [0.01, 0.01, 0.01, 0.01, 1.99])


def p3_circuit():
    return build_qaoa_circuit(WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.01)], [5.0, 0.01, 0.01]))


def connected_atlas_graphs(num_vertices):
    """Every connected graph on num_vertices vertices, up to isomorphism."""
    graphs = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == num_vertices and nx.is_connected(g):
            graphs.append(Graph(num_vertices, sorted((min(i, j), max(i, j)) for i, j in g.edges())))
    return graphs


def random_star(rng, n=None):
    n = int(rng.integers(2, 8)) if n is None else n
    gamma = rng.uniform(0.0, 2 * np.pi, n - 1)
    beta = rng.uniform(0.0, 2 * np.pi, n)
    return StarInstance(n, gamma, beta)


def random_circuit(rng, max_vertices=7, edge_probability=0.5, extra_precedence=3):
    """
    Random QAOA-style circuit plus a few extra precedence pairs. Extra
    pairs always point from a lower to a higher gate id, as the built
    pairs do, so P stays acyclic.
    """
    n = int(rng.integers(2, max_vertices + 1))
    edges = [
        (i, j, float(rng.uniform(0.0, 2 * np.pi)))
        for j in range(n)
        for i in range(j)
        if rng.random() < edge_probability
    ]
    wg = WeightedGraph(n, edges, rng.uniform(0.0, 2 * np.pi, n))
    circuit = build_qaoa_circuit(wg)

    precedence = set(circuit.precedence)
    ids = circuit.gate_ids
    for _ in range(extra_precedence):
        if len(ids) < 2:
            break
        a, b = sorted(int(x) for x in rng.choice(len(ids), size=2, replace=False))
        precedence.add((ids[a], ids[b]))
    return CircuitInstance(circuit.num_qubits, circuit.gates, precedence)


def two_gate_circuit(d1=5.0, d2=3.0):
    return CircuitInstance(
        2,
        [Gate.two_qubit(0, 0, 1, d1), Gate.single_qubit(1, 0, d2)],
        [],
    )
