import pytest

from conftest import line_points
from zeus_cluster.baselines import (
    baseline_b1,
    baseline_b2,
    baseline_moc,
    consolidate_fragments,
)
from zeus_cluster.errors import ConfigError, InfeasibleError
from zeus_cluster.makeshifts import MakeshiftOptions, makeshift_fairness, makeshift_rs
from zeus_cluster.objectives import (
    ObjectiveSpec,
    SlackVector,
    eval_kcenter,
    eval_resource_sharing,
    evaluate,
    singleton_clustering,
)
from zeus_cluster.synth import generate_instance
from zeus_cluster.zeus import ProblemSpec

OPTS = MakeshiftOptions()


def spec_of(kinds, slacks, k):
    return ProblemSpec(
        objectives=tuple(ObjectiveSpec(kind) for kind in kinds),
        slacks=SlackVector(tuple(slacks)),
        k=k,
    )


class TestB2:
    def test_is_plain_kcenter(self):
        H = line_points([0, 4, 5])
        C = baseline_b2(H, 2, OPTS)
        assert eval_kcenter(H, C).value == 1.0
        assert C.k == 2

    def test_produces_k_blocks(self):
        for seed in range(4):
            H = generate_instance("rs", 20, seed)
            C = baseline_b2(H, 3, OPTS)
            C.validate(20)
            assert len(set(C.assignment.values())) == 3


class TestB1:
    def test_rs_first_keeps_full_cover(self):
        H = generate_instance("rs", 20, 1)
        C = baseline_b1(H, spec_of(["rs", "kc"], [1.0, 3.0], 3))
        assert C.k == 3
        assert eval_resource_sharing(H, C).value == 1.0

    def test_f_first_keeps_pairs_together(self):
        H = generate_instance("f", 18, 2)
        pairs = makeshift_fairness(H)[1]
        C = baseline_b1(H, spec_of(["f", "kc"], [1.0, 3.0], 3))
        for u, v in pairs.pairs:
            assert C.assignment[u] == C.assignment[v]

    def test_tf_first(self):
        H = generate_instance("tf", 16, 3)
        C = baseline_b1(H, spec_of(["tf", "kc"], [1.0, 3.0], 2))
        assert C.k == 2

    def test_kc_first_rejected(self):
        H = line_points([0, 1, 2])
        with pytest.raises(ConfigError):
            baseline_b1(H, spec_of(["kc", "rs"], [3.0, 1.0], 2))


class TestConsolidate:
    def test_merges_to_k(self):
        H = generate_instance("rs", 20, 5)
        C, _ = makeshift_rs(H, singleton_clustering(20))
        if C.k < 3:
            pytest.skip("too few fragments for this seed")
        out = consolidate_fragments(H, C, 3)
        assert out.k == 3
        assert eval_resource_sharing(H, out).value == 1.0

    def test_too_few_fragments(self):
        H = line_points([0, 1])
        C, _ = makeshift_rs(H, singleton_clustering(2))
        with pytest.raises(InfeasibleError):
            consolidate_fragments(H, C, 2)

    def test_nearest_roots_merge_order(self):
        # three fragments at 0-1, 10-11, 13-14: the two right ones merge
        H = line_points([0, 1, 10, 11, 13, 14], edge_threshold=2.0)
        C, _ = makeshift_rs(H, singleton_clustering(6))
        assert C.k == 3
        out = consolidate_fragments(H, C, 2)
        assert out.assignment[2] == out.assignment[4]
        assert out.assignment[0] != out.assignment[2]


class TestMoc:
    def test_produces_k_blocks(self):
        for seed in range(3):
            H = generate_instance("rs", 16, seed)
            spec = spec_of(["rs", "kc"], [1.0, 3.0], 3)
            C = baseline_moc(H, spec, None)
            C.validate(16)
            assert C.k == 3

    def test_with_fairness_pairs(self):
        H = generate_instance("f", 15, 1)
        pairs = makeshift_fairness(H)[1]
        spec = spec_of(["f", "kc"], [1.0, 3.0], 3)
        C = baseline_moc(H, spec, pairs)
        assert C.k == 3
        v = evaluate(H, C, ObjectiveSpec("f"), pairs=pairs)
        assert 0.0 <= v.value <= 1.0

    def test_deterministic(self):
        H = generate_instance("rs", 16, 7)
        spec = spec_of(["rs", "kc"], [1.0, 3.0], 4)
        assert (
            baseline_moc(H, spec, None).assignment
            == baseline_moc(H, spec, None).assignment
        )

    def test_k_equals_n(self):
        H = line_points([0, 2, 5])
        spec = spec_of(["rs", "kc"], [1.0, 3.0], 3)
        C = baseline_moc(H, spec, None)
        assert C.k == 3
        assert eval_kcenter(H, C).value == 0.0

    def test_requires_two_objectives(self):
        H = line_points([0, 2, 5])
        with pytest.raises(ConfigError):
            baseline_moc(H, spec_of(["kc"], [3.0], 2), None)
