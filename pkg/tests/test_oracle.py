import pytest

from conftest import line_points
from zeus_cluster.errors import ConfigError, InfeasibleError
from zeus_cluster.makeshifts import makeshift_fairness, makeshift_rs
from zeus_cluster.objectives import ObjectiveSpec, singleton_clustering
from zeus_cluster.oracle import (
    enumerate_partitions,
    oracle_edge_cover,
    oracle_lmoc,
    oracle_matching_radius,
    oracle_single_objective,
)
from zeus_cluster.synth import generate_instance


class TestEnumeration:
    def test_stirling_counts(self):
        assert sum(1 for _ in enumerate_partitions(3, 2)) == 3
        assert sum(1 for _ in enumerate_partitions(4, 2)) == 7
        assert sum(1 for _ in enumerate_partitions(5, 3)) == 25

    def test_k_equals_n_single_partition(self):
        parts = list(enumerate_partitions(4, 4))
        assert parts == [(0, 1, 2, 3)]

    def test_k_greater_than_n_empty(self):
        assert list(enumerate_partitions(2, 3)) == []

    def test_canonical_form(self):
        for rgs in enumerate_partitions(5, 2):
            seen = -1
            for b in rgs:
                assert b <= seen + 1
                seen = max(seen, b)

    def test_cap_enforced(self):
        with pytest.raises(ConfigError):
            list(enumerate_partitions(13, 2))

    def test_no_duplicates(self):
        parts = list(enumerate_partitions(6, 3))
        assert len(parts) == len(set(parts)) == 90  # S(6,3)


class TestSingleObjective:
    def test_kcenter_line(self):
        H = line_points([0, 4, 5])
        assert oracle_single_objective(H, 2, ObjectiveSpec("kc")) == 1.0

    def test_kcenter_k_equals_n(self):
        H = line_points([0, 1, 2])
        assert oracle_single_objective(H, 3, ObjectiveSpec("kc")) == 0.0

    def test_kmedian_line(self):
        H = line_points([0, 1, 10])
        assert oracle_single_objective(H, 2, ObjectiveSpec("km")) == 1.0

    def test_rs_complete(self, triangle):
        assert oracle_single_objective(triangle, 1, ObjectiveSpec("rs")) == 1.0


class TestLmoc:
    def test_enumeration_count(self):
        H = generate_instance("rs", 8, 0)
        res = oracle_lmoc(H, 2, [ObjectiveSpec("kc")])
        assert res.enumerated == 127  # S(8,2)

    def test_lex_order_respected(self):
        # first objective fixed at its optimum, second optimal subject to it
        for seed in range(6):
            H = generate_instance("rs", 7, seed)
            O = [ObjectiveSpec("rs"), ObjectiveSpec("kc")]
            res = oracle_lmoc(H, 2, O)
            first_only = oracle_single_objective(H, 2, O[0])
            assert res.best_values[0] == pytest.approx(first_only)

    def test_second_is_conditional_optimum(self):
        H = generate_instance("rs", 7, 3)
        O = [ObjectiveSpec("rs"), ObjectiveSpec("kc")]
        res = oracle_lmoc(H, 2, O)
        # brute-force re-check: no partition ties on o1 with better o2
        from zeus_cluster.oracle import _score_partition, enumerate_partitions

        for rgs in enumerate_partitions(7, 2):
            v = _score_partition(H, rgs, O, None)
            if v[0] == res.best_values[0]:
                assert v[1] >= res.best_values[1] - 1e-12


class TestEdgeCoverOracle:
    def test_triangle(self, triangle):
        assert oracle_edge_cover(triangle).realized_radius == 2.0

    def test_agrees_with_makeshift(self):
        for seed in range(10):
            H = generate_instance("rs", 9, seed)
            _, pairs = makeshift_rs(H, singleton_clustering(9))
            assert oracle_edge_cover(H).realized_radius == pytest.approx(
                pairs.realized_radius
            )

    def test_isolated_node(self):
        H = line_points([0, 1, 10], edge_threshold=2.0)
        with pytest.raises(InfeasibleError):
            oracle_edge_cover(H)

    def test_cap(self):
        H = generate_instance("rs", 11, 0)
        with pytest.raises(ConfigError):
            oracle_edge_cover(H)


class TestMatchingOracle:
    def test_agrees_with_makeshift(self):
        for seed in range(8):
            H = generate_instance("f", 9, seed)
            _, pairs = makeshift_fairness(H)
            assert oracle_matching_radius(H) == pytest.approx(pairs.realized_radius)

    def test_cap(self):
        H = generate_instance("f", 24, 0)
        with pytest.raises(ConfigError):
            oracle_matching_radius(H)
