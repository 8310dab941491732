"""Exact counters: brute force vs subset DP, the permanent, the undirected
reduction, and the decision-tree expectation oracle."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from hamb import (
    ContractedMatrix,
    GraphSizeError,
    RowOrderPolicy,
    build_digraph,
    build_undigraph,
    contract,
    gen_family,
    gen_gnp,
    to_symmetric_digraph,
)
from hamb.exact import (
    estimator_expectation,
    ham_bruteforce,
    ham_dp,
    ham_undirected,
    permanent_ryser,
)

from conftest import all_digraphs, digraphs


def permanent_by_permutation_sum(m) -> int:
    """Independent oracle: the defining sum over all permutations."""
    n = m.n
    total = 0
    for sigma in itertools.permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= m.rows[i] >> sigma[i] & 1
            if not prod:
                break
        total += prod
    return total


class TestHamBruteforce:
    def test_symmetrized_triangle(self):
        assert ham_bruteforce(gen_family("cycle", 3, "symmetric-digraph")) == 2

    def test_complete_symmetric_k4(self):
        # (4-1)! orderings, all arcs present
        assert ham_bruteforce(gen_family("complete", 4, "symmetric-digraph")) == 6

    def test_directed_three_cycle(self):
        assert ham_bruteforce(build_digraph(3, [(1, 2), (2, 3), (3, 1)])) == 1

    def test_single_vertex(self):
        assert ham_bruteforce(build_digraph(1, [])) == 0

    def test_contracted_one_by_one(self):
        assert ham_bruteforce(ContractedMatrix(1, (1,))) == 1

    def test_size_cap(self):
        with pytest.raises(GraphSizeError, match="10"):
            ham_bruteforce(build_digraph(11, []))


class TestHamDp:
    def test_symmetrized_triangle(self):
        assert ham_dp(gen_family("cycle", 3, "symmetric-digraph")) == 2

    def test_complete_symmetric_k4(self):
        assert ham_dp(gen_family("complete", 4, "symmetric-digraph")) == 6

    def test_directed_path_has_no_cycle(self):
        assert ham_dp(build_digraph(3, [(1, 2), (2, 3)])) == 0

    def test_complete_digraph_factorials(self):
        for n in range(2, 8):
            assert ham_dp(gen_family("complete", n, "symmetric-digraph")) == math.factorial(n - 1)

    def test_size_cap(self):
        with pytest.raises(GraphSizeError, match="24"):
            ham_dp(build_digraph(25, []))

    def test_matches_bruteforce_exhaustively_to_n3(self):
        for n in (1, 2, 3):
            for g in all_digraphs(n):
                assert ham_dp(g) == ham_bruteforce(g)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=7))
    def test_matches_bruteforce(self, g):
        assert ham_dp(g) == ham_bruteforce(g)


class TestPermanent:
    def test_all_ones_3x3(self):
        assert permanent_ryser(ContractedMatrix(3, (0b111,) * 3)) == 6

    def test_derangements(self):
        # J - I adjacency: permanent counts derangements
        assert permanent_ryser(gen_family("complete", 3, "symmetric-digraph")) == 2
        assert permanent_ryser(gen_family("complete", 4, "symmetric-digraph")) == 9

    def test_empty_row_kills_permanent(self):
        assert permanent_ryser(build_digraph(3, [(1, 2), (2, 1)])) == 0

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=6))
    def test_matches_permutation_sum(self, g):
        assert permanent_ryser(g) == permanent_by_permutation_sum(g)

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=6))
    def test_cycle_count_never_exceeds_one_factor_count(self, g):
        assert ham_dp(g) <= permanent_ryser(g)

    def test_size_cap(self):
        with pytest.raises(GraphSizeError):
            permanent_ryser(build_digraph(25, []))


class TestContractionExpansion:
    """ham(A) = sum over j != k1 of a[k1,j] * ham(A'(k1, j)), any pivot."""

    def expand(self, g, k1):
        return sum(
            ham_dp(contract(g, k1, j))
            for j in range(1, g.n + 1)
            if j != k1 and g.has_arc(k1, j)
        )

    @settings(max_examples=50, deadline=None)
    @given(digraphs(min_n=2, max_n=6))
    def test_expansion_matches_every_pivot(self, g):
        want = ham_dp(g)
        for k1 in range(1, g.n + 1):
            assert self.expand(g, k1) == want

    def test_expansion_on_triangle(self):
        g = gen_family("cycle", 3, "symmetric-digraph")
        assert self.expand(g, 1) == 2


class TestHamUndirected:
    def test_cycle_graph(self):
        assert ham_undirected(gen_family("cycle", 5, "undirected")) == 1

    def test_complete_k4(self):
        assert ham_undirected(gen_family("complete", 4, "undirected")) == 3

    def test_path(self):
        assert ham_undirected(gen_family("path", 3, "undirected")) == 0

    def test_small_n_rejected(self):
        with pytest.raises(ValueError, match="n >= 3"):
            ham_undirected(build_undigraph(2, [(1, 2)]))

    def test_brute_method_agrees(self):
        g = gen_gnp(7, 0.6, 11, "undirected")
        assert ham_undirected(g, method="brute") == ham_undirected(g)

    def test_halving_is_exact(self):
        rng = np.random.default_rng(40)
        for _ in range(30):
            n = int(rng.integers(3, 9))
            g = gen_gnp(n, float(rng.uniform(0.2, 0.9)), int(rng.integers(0, 2**32)), "undirected")
            assert 2 * ham_undirected(g) == ham_dp(to_symmetric_digraph(g))


class TestEstimatorExpectation:
    def test_triangle_ascending(self):
        g = gen_family("cycle", 3, "symmetric-digraph")
        assert estimator_expectation(g, RowOrderPolicy.ascending()) == 2

    def test_k4_follow_path(self):
        g = gen_family("complete", 4, "symmetric-digraph")
        assert estimator_expectation(g, RowOrderPolicy.follow_path(1)) == 6

    def test_directed_path_is_zero(self):
        g = build_digraph(3, [(1, 2), (2, 3)])
        for policy in (RowOrderPolicy.ascending(), RowOrderPolicy.follow_path(2)):
            assert estimator_expectation(g, policy) == 0

    def test_exact_rational_probabilities(self):
        # every branch probability is a product of 1/|W| terms
        g = gen_gnp(5, 0.6, 2, "symmetric-digraph")
        total = estimator_expectation(g, RowOrderPolicy.ascending())
        assert isinstance(total, Fraction)
        assert total == ham_dp(g)

    def test_size_cap(self):
        with pytest.raises(GraphSizeError, match="8"):
            estimator_expectation(build_digraph(9, []), RowOrderPolicy.ascending())

    def test_matches_count_for_all_policies_on_random_graphs(self):
        rng = np.random.default_rng(31)
        for t in range(25):
            n = int(rng.integers(2, 8))
            kind = ("digraph", "symmetric-digraph")[t % 2]
            g = gen_gnp(n, float(rng.uniform(0.25, 0.9)), int(rng.integers(0, 2**32)), kind)
            want = ham_dp(g)
            policies = [RowOrderPolicy.ascending()]
            policies += [RowOrderPolicy.follow_path(s) for s in range(1, n + 1)]
            for _ in range(2):
                policies.append(
                    RowOrderPolicy.from_table(
                        [[int(rng.integers(1, n - i + 1)) for _ in range(n)] for i in range(n)]
                    )
                )
            for policy in policies:
                assert estimator_expectation(g, policy) == want
