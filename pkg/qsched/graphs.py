# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Graph ingest

Reads graph6 records (the McKay database format), attaches gate times and
builds ma-QAOA style circuits: one two-qubit gate per edge, one
single-qubit gate per vertex, and every edge gate on a qubit completing
before that qubit's single-qubit gate.

graph6 (short form, n <= 62):
- byte 0 is n + 63
- the upper triangle is read column by column, (0,1), (0,2), (1,2),
  (0,3), ..., packed into 6-bit groups, most significant bit first
- each group is stored as group + 63; pad bits at the end are ignored
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from qsched.circuit import CircuitInstance, Gate
from qsched.exceptions import MalformedGraph6Error, ValidationError

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
MAX_SHORT_VERTICES = 62
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Graph:
    """Unweighted simple graph on vertices 0..num_vertices-1."""

    num_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class WeightedGraph:
    """
    Circuit-as-graph: edge weights are two-qubit gate times, vertex
    weights single-qubit gate times.
    """

    num_vertices: int
    edges: tuple
    vertex_weights: tuple

    def __post_init__(self):
        edges = tuple((int(i), int(j), float(t)) for i, j, t in self.edges)
        weights = tuple(float(w) for w in self.vertex_weights)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertex_weights", weights)

        if self.num_vertices < 1:
            raise ValidationError(f"A weighted graph needs at least one vertex, got {self.num_vertices}")
        if len(weights) != self.num_vertices:
            raise ValidationError(
                f"Expected {self.num_vertices} vertex weights, got {len(weights)}"
            )
        seen = set()
        for i, j, t in edges:
            if not 0 <= i < j < self.num_vertices:
                raise ValidationError(f"Edge ({i}, {j}) must satisfy 0 <= i < j < {self.num_vertices}")
            if (i, j) in seen:
                raise ValidationError(f"Duplicate edge ({i}, {j})")
            seen.add((i, j))
            if not t >= 0:
                raise ValidationError(f"Edge ({i}, {j}) has negative weight {t}")
        if any(not w >= 0 for w in weights):
            raise ValidationError("Vertex weights must be nonnegative")

    @property
    def graph(self) -> Graph:
        return Graph(self.num_vertices, [(i, j) for i, j, _ in self.edges])


@dataclass(frozen=True)
class RngSpec:
    """Seed plus the label of the generator the seed is fed to."""

    seed: int
    algorithm_label: str = "numpy.PCG64"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"Seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.algorithm_label != "numpy.PCG64":
            raise ValidationError(f"Unsupported generator {self.algorithm_label!r}")

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


def parse_graph6(line: str) -> Graph:
    """Decode a single short-form graph6 record."""
    record = line.strip()
    if record.startswith(GRAPH6_HEADER):
        record = record[len(GRAPH6_HEADER):]
    if not record:
        raise MalformedGraph6Error("empty graph6 record")

    data = [ord(c) for c in record]
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise MalformedGraph6Error(f"byte {byte!r} at position {pos} is outside [63, 126]")

    if data[0] == 126:
        raise MalformedGraph6Error(f"graphs with more than {MAX_SHORT_VERTICES} vertices are not supported")

    n = data[0] - 63
    num_bits = n * (n - 1) // 2
    expected = (num_bits + 5) // 6
    body = data[1:]
    if len(body) != expected:
        raise MalformedGraph6Error(
            f"record for n={n} needs {expected} edge bytes, found {len(body)}"
        )

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            group = body[k // 6] - 63
            if (group >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def encode_graph6(graph: Graph) -> str:
    """Short-form graph6 record for a graph; inverse of parse_graph6."""
    n = graph.num_vertices
    if not 0 <= n <= MAX_SHORT_VERTICES:
        raise ValidationError(f"graph6 short form holds 0..{MAX_SHORT_VERTICES} vertices, got {n}")

    present = {(min(i, j), max(i, j)) for i, j in graph.edges}
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)

    chars = [chr(n + 63)]
    for start in range(0, len(bits), 6):
        group = 0
        for bit in bits[start:start + 6]:
            group = (group << 1) | bit
        chars.append(chr(group + 63))
    return "".join(chars)


def load_graph_file(path) -> list:
    """All graphs of a newline-separated graph6 file, in file order."""
    graphs = []
    with open(path, encoding="ascii", errors="replace") as f:
        for line_number, line in enumerate(f, start=1):
            record = line.strip()
            if line_number == 1 and record.startswith(GRAPH6_HEADER):
                record = record[len(GRAPH6_HEADER):]
            if not record:
                continue
            try:
                graphs.append(parse_graph6(record))
            except MalformedGraph6Error as e:
                raise MalformedGraph6Error(str(e), line_number=line_number, path=path) from e

    logger.info(f"Loaded {len(graphs)} graphs from {path}")
    return graphs


def is_connected(graph: Graph) -> bool:
    if graph.num_vertices == 0:
        return False
    return nx.is_connected(graph.to_networkx())


def assign_random_times(graph: Graph, rng: RngSpec) -> WeightedGraph:
    """
    Draw every gate time uniformly from (0, 2*pi].

    Draw order: all edge weights in edge-list order, then all vertex
    weights in vertex order, from one generator seeded by rng.
    """
    m, n = len(graph.edges), graph.num_vertices
    u = rng.generator().random(m + n)
    times = TWO_PI * (1.0 - u)
    edges = [(i, j, float(t)) for (i, j), t in zip(graph.edges, times[:m])]
    # graph6 always yields i < j; other sources may not
    edges = [(min(i, j), max(i, j), t) for i, j, t in edges]
    return WeightedGraph(n, edges, [float(t) for t in times[m:]])


def build_qaoa_circuit(wg: WeightedGraph, rounds: int = 1) -> CircuitInstance:
    """
    One two-qubit gate per edge and one single-qubit gate per vertex.

    Gate ids per round: edge gates in edge-list order, then vertex gates in
    vertex order. Within a round every edge gate precedes the single-qubit
    gates of both its endpoints. With rounds > 1, the single-qubit gate on
    k in round r precedes every round r+1 gate acting on k.
    """
    if rounds < 1:
        raise ValidationError(f"rounds must be at least 1, got {rounds}")

    gates = []
    precedence = []
    previous_beta = {}
    for _ in range(rounds):
        edge_ids = []
        for i, j, t in wg.edges:
            gid = len(gates)
            gates.append(Gate.two_qubit(gid, i, j, t))
            edge_ids.append(gid)
        beta_ids = []
        for k, t in enumerate(wg.vertex_weights):
            gid = len(gates)
            gates.append(Gate.single_qubit(gid, k, t))
            beta_ids.append(gid)

        touched = set()
        for gid, (i, j, _) in zip(edge_ids, wg.edges):
            precedence.append((gid, beta_ids[i]))
            precedence.append((gid, beta_ids[j]))
            for k in (i, j):
                if k in previous_beta:
                    precedence.append((previous_beta[k], gid))
                touched.add(k)
        for k, gid in enumerate(beta_ids):
            if k in previous_beta and k not in touched:
                precedence.append((previous_beta[k], gid))
        previous_beta = dict(enumerate(beta_ids))

    return CircuitInstance(wg.num_vertices, gates, precedence)
