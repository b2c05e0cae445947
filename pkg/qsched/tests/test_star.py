# Copyright (c) 2024, Qsched contributors
# For license information, please see license.txt

import itertools
import unittest

import numpy as np

from qsched.circuit import makespan
from qsched.exceptions import InvalidPermutationError, PreconditionError, ValidationError
from qsched.graphs import WeightedGraph
from qsched.schedulers import schedule_exact, schedule_greedy, schedule_layered
from qsched.star import (
    StarInstance,
    exact_leaf_order,
    factored_exact_time,
    gap_precondition_failures,
    star_exact_time,
    star_gap,
    star_greedy_time,
    star_layered_time,
)
from qsched.tests.fixtures import random_star, s5_star

TOL = 1e-9


class TestStarInstance(unittest.TestCase):
    def test_sizes_checked(self):
        with self.assertRaises(ValidationError):
            StarInstance(1, [], [1.0])
        with self.assertRaises(ValidationError):
            StarInstance(3, [1.0], [1.0, 1.0, 1.0])

    def test_weighted_graph_round_trip(self):
        star = s5_star()
        self.assertEqual(StarInstance.from_weighted_graph(star.to_weighted_graph()), star)

    def test_rejects_non_star(self):
        with self.assertRaises(ValidationError):
            StarInstance.from_weighted_graph(WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0)], [1.0] * 3))


class TestClosedForms(unittest.TestCase):
    def test_s5(self):
        star = s5_star()
        self.assertAlmostEqual(star_layered_time(star), 5.0, delta=TOL)
        greedy = star_greedy_time(star)
        self.assertEqual(greedy.order, (1, 2, 3, 4))
        self.assertAlmostEqual(greedy.makespan, 5.0, delta=TOL)
        exact = star_exact_time(star)
        self.assertEqual(exact.order[0], 4)
        self.assertAlmostEqual(exact.makespan, 3.02, delta=TOL)
        self.assertAlmostEqual(exact.makespan, max(exact.completions), delta=TOL)

    def test_two_vertex_star(self):
        star = StarInstance(2, [2.0], [0.5, 1.5])
        self.assertEqual(star_layered_time(star), 3.5)

    def test_no_tails_gives_serial_edge_time(self):
        star = StarInstance(4, [1.0, 2.0, 3.0], [0.0] * 4)
        self.assertEqual(star_greedy_time(star, (1, 2, 3)).makespan, 6.0)
        self.assertEqual(star_exact_time(star).makespan, 6.0)

    def test_invalid_permutation(self):
        with self.assertRaises(InvalidPermutationError):
            star_greedy_time(s5_star(), (1, 2, 2, 4))

    def test_sigma_ties_by_leaf_index(self):
        star = StarInstance(4, [1.0, 2.0, 3.0], [0.0, 1.0, 1.0, 1.0])
        self.assertEqual(exact_leaf_order(star), (1, 2, 3))

    def test_sigma_is_best_over_every_order(self):
        rng = np.random.default_rng(8)
        for n in range(2, 7):
            for _ in range(5):
                star = random_star(rng, n)
                best = star_exact_time(star).makespan
                for order in itertools.permutations(star.leaves):
                    self.assertLessEqual(best, star_greedy_time(star, order).makespan + TOL)

    def test_factored_form_matches_completions(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            star = random_star(rng)
            self.assertAlmostEqual(factored_exact_time(star), star_exact_time(star).makespan, delta=TOL)

    def test_prefix_suffix_split(self):
        rng = np.random.default_rng(10)
        star = random_star(rng, 6)
        order = exact_leaf_order(star)
        for k in range(len(order)):
            prefix = sum(star.gamma_of(j) for j in order[: k + 1])
            suffix = sum(star.gamma_of(j) for j in order[k + 1:])
            self.assertAlmostEqual(prefix, star.total_gamma - suffix, delta=TOL)

    def test_tie_order_does_not_change_makespan(self):
        star = StarInstance(4, [1.0, 2.0, 3.0], [0.2, 1.0, 1.0, 1.0])
        times = {star_greedy_time(star, order).makespan for order in itertools.permutations((1, 2, 3))}
        self.assertAlmostEqual(min(times), star_exact_time(star).makespan, delta=TOL)


class TestGap(unittest.TestCase):
    def test_gap_when_preconditions_hold(self):
        star = StarInstance(3, [3.0, 3.0], [0.1, 0.2, 0.9])
        self.assertEqual(gap_precondition_failures(star), [])
        self.assertAlmostEqual(star_gap(star), 0.7, delta=TOL)

    def test_center_tail_above_smallest_leaf_is_rejected(self):
        # the center finishes at sum(gamma) + 0.5, not sum(gamma) + 0.2
        star = StarInstance(3, [3.0, 3.0], [0.5, 0.2, 0.9])
        self.assertAlmostEqual(star_layered_time(star), 6.9, delta=TOL)
        self.assertAlmostEqual(star_exact_time(star).makespan, 6.5, delta=TOL)
        with self.assertRaises(PreconditionError):
            star_gap(star)

    def test_equal_tails_give_zero_gap(self):
        star = StarInstance(4, [1.0, 2.0, 3.0], [0.5] * 4)
        self.assertAlmostEqual(star_gap(star), 0.0, delta=TOL)

    def test_long_leaf_tail_is_rejected(self):
        star = StarInstance(3, [1.0, 1.0], [0.1, 0.2, 5.0])
        self.assertTrue(gap_precondition_failures(star))
        with self.assertRaises(PreconditionError):
            star_gap(star)


class TestAgainstGeneralSchedulers(unittest.TestCase):
    def test_random_stars(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            star = random_star(rng)
            circuit = star.build_circuit()
            self.assertAlmostEqual(
                star_layered_time(star), schedule_layered(circuit).makespan, delta=TOL
            )
            self.assertAlmostEqual(
                star_greedy_time(star).makespan, makespan(circuit, schedule_greedy(circuit)), delta=TOL
            )
            exact = schedule_exact(circuit, time_limit=30)
            self.assertTrue(exact.is_optimal)
            self.assertAlmostEqual(star_exact_time(star).makespan, exact.makespan, delta=TOL)
            if not gap_precondition_failures(star):
                self.assertAlmostEqual(
                    star_gap(star), schedule_layered(circuit).makespan - exact.makespan, delta=1e-8
                )

    def test_gap_on_generated_stars(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            # short tails against long edge gates, center tail below every leaf tail
            gamma = rng.uniform(1.0, 2.0, 5)
            leaf = np.sort(rng.uniform(0.0, 0.5, 5))
            star = StarInstance(6, gamma, [float(rng.uniform(0.0, leaf[0]))] + list(leaf))
            self.assertEqual(gap_precondition_failures(star), [])
            circuit = star.build_circuit()
            exact = schedule_exact(circuit, time_limit=30)
            self.assertAlmostEqual(star_gap(star), schedule_layered(circuit).makespan - exact.makespan, delta=1e-8)
