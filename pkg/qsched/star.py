# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

"""
Star-graph closed forms

On a star S_n (center 0, leaves 1..n-1) every two-qubit gate acts on the
center, so the edge gates run one after another and each leaf's
single-qubit gate follows its own edge gate. The three schedulers then
have closed forms:

- layered: all edge gates, then one layer of single-qubit gates,
  sum(gamma) + max(beta)
- greedy: edge gates in an order pi; leaf j finishes at the prefix sum of
  gamma through j plus beta_j, the center at sum(gamma) + beta_0
- exact: pi = sigma, leaves by decreasing beta (largest tail first on the
  center), giving
  sum(gamma) + max(beta_0, max_k(beta_k - gamma after k in sigma))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from qsched.circuit import TOLERANCE, CircuitInstance
from qsched.exceptions import InvalidPermutationError, PreconditionError, ValidationError
from qsched.graphs import WeightedGraph, build_qaoa_circuit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarInstance:
    """gamma[j - 1] is the time of edge (0, j); beta[i] the time of vertex i."""

    n: int
    gamma: tuple
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(float(g) for g in self.gamma))
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        if self.n < 2:
            raise ValidationError(f"A star needs at least 2 vertices, got {self.n}")
        if len(self.gamma) != self.n - 1:
            raise ValidationError(f"Expected {self.n - 1} edge times, got {len(self.gamma)}")
        if len(self.beta) != self.n:
            raise ValidationError(f"Expected {self.n} vertex times, got {len(self.beta)}")
        if any(not t >= 0 for t in self.gamma + self.beta):
            raise ValidationError("Star gate times must be nonnegative")

    @property
    def leaves(self) -> range:
        return range(1, self.n)

    @property
    def total_gamma(self) -> float:
        return sum(self.gamma)

    def gamma_of(self, leaf) -> float:
        return self.gamma[leaf - 1]

    @property
    def min_leaf_beta(self) -> float:
        return min(self.beta[1:])

    @classmethod
    def from_weighted_graph(cls, wg: WeightedGraph) -> "StarInstance":
        gamma = {}
        for i, j, t in wg.edges:
            if i != 0:
                raise ValidationError(f"Edge ({i}, {j}) does not touch the center 0")
            gamma[j] = t
        if sorted(gamma) != list(range(1, wg.num_vertices)):
            raise ValidationError("Not a star: every leaf 1..n-1 needs exactly one edge to 0")
        return cls(wg.num_vertices, [gamma[j] for j in range(1, wg.num_vertices)], wg.vertex_weights)

    def to_weighted_graph(self) -> WeightedGraph:
        return WeightedGraph(self.n, [(0, j, self.gamma_of(j)) for j in self.leaves], self.beta)

    def build_circuit(self) -> CircuitInstance:
        return build_qaoa_circuit(self.to_weighted_graph())


@dataclass(frozen=True)
class StarScheduleResult:
    makespan: float
    order: tuple
    completions: tuple


def star_layered_time(s: StarInstance) -> float:
    return s.total_gamma + max(s.beta)


def greedy_leaf_order(s: StarInstance) -> tuple:
    """Edge gates by decreasing duration, ties by leaf index."""
    return tuple(sorted(s.leaves, key=lambda j: (-s.gamma_of(j), j)))


def exact_leaf_order(s: StarInstance) -> tuple:
    """sigma: leaves by decreasing single-qubit time, ties by leaf index."""
    return tuple(sorted(s.leaves, key=lambda j: (-s.beta[j], j)))


def _serial_completions(s: StarInstance, order) -> tuple:
    completions = [0.0] * s.n
    elapsed = 0.0
    for j in order:
        elapsed += s.gamma_of(j)
        completions[j] = elapsed + s.beta[j]
    completions[0] = s.total_gamma + s.beta[0]
    return tuple(completions)


def star_greedy_time(s: StarInstance, order=None) -> StarScheduleResult:
    """
    Makespan when the edge gates run in the given leaf order.

    Args:
        s: the star
        order: leaves in execution order; defaults to greedy_leaf_order(s)

    Returns:
        StarScheduleResult: makespan, the order used, completion per qubit
    """
    order = greedy_leaf_order(s) if order is None else tuple(order)
    if sorted(order) != list(s.leaves):
        raise InvalidPermutationError(f"{list(order)} is not a permutation of leaves 1..{s.n - 1}")
    completions = _serial_completions(s, order)
    return StarScheduleResult(max(completions), order, completions)


def factored_exact_time(s: StarInstance, order=None) -> float:
    """sum(gamma) + max(beta_0, max_k(beta_k - gamma of the leaves after k))."""
    order = exact_leaf_order(s) if order is None else tuple(order)
    late = s.beta[0]
    suffix = 0.0
    for j in reversed(order):
        late = max(late, s.beta[j] - suffix)
        suffix += s.gamma_of(j)
    return s.total_gamma + late


def star_exact_time(s: StarInstance) -> StarScheduleResult:
    order = exact_leaf_order(s)
    completions = _serial_completions(s, order)
    return StarScheduleResult(max(completions), order, completions)


def gap_precondition_failures(s: StarInstance) -> list:
    """Reasons the gap formula is not claimed for this star; empty if it is."""
    failures = []
    total = s.total_gamma
    t_min = s.min_leaf_beta

    for j in s.leaves:
        if not s.beta[j] < total:
            failures.append(f"leaf {j} single-qubit time {s.beta[j]} is not below sum(gamma) = {total}")
    if s.beta[0] > t_min + TOLERANCE:
        failures.append(f"center single-qubit time {s.beta[0]} exceeds the smallest leaf time {t_min}")

    suffix = 0.0
    for j in reversed(exact_leaf_order(s)):
        if s.beta[j] - suffix > t_min + TOLERANCE:
            failures.append(f"leaf {j} finishes after the last-served leaf under sigma")
        suffix += s.gamma_of(j)
    return failures


def star_gap(s: StarInstance) -> float:
    """
    t_max^beta - t_min^beta, the layered-minus-exact gap, where t_max is
    over every vertex and t_min over the leaves.

    Raises PreconditionError when the star falls outside the case where the
    exact time reduces to sum(gamma) + t_min.
    """
    failures = gap_precondition_failures(s)
    if failures:
        raise PreconditionError("Gap formula does not apply: " + "; ".join(failures))

    gap = max(s.beta) - s.min_leaf_beta
    observed = star_layered_time(s) - star_exact_time(s).makespan
    if abs(gap - observed) > TOLERANCE:
        logger.error(f"Gap closed form {gap} disagrees with layered - exact = {observed} for {s}")
        raise PreconditionError(f"Gap closed form {gap} disagrees with the evaluated gap {observed}")
    return gap
