import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import explicit, line_points
from zeus_cluster.errors import InstanceError
from zeus_cluster.graph import (
    distance,
    instance_from_data,
    instance_to_data,
    load_instance,
    make_instance,
    neighbors,
    save_instance,
    validate_metric,
)
from zeus_cluster.synth import generate_instance


def test_fill_distance_applies_to_unlisted_pairs(tmp_path):
    doc = {
        "metric": "explicit",
        "fill": 67,
        "nodes": [{"id": c} for c in "abcdef"],
        "distances": [["a", "b", 1], ["b", "c", 2]],
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(doc))
    H = load_instance(str(path))
    assert H.n == 6
    assert distance(H, 0, 1) == 1
    assert distance(H, 1, 2) == 2
    assert distance(H, 0, 5) == 67
    assert distance(H, 3, 4) == 67


def test_single_node_instance(tmp_path):
    doc = {"metric": "explicit", "nodes": [{"id": "only"}]}
    path = tmp_path / "one.json"
    path.write_text(json.dumps(doc))
    H = load_instance(str(path))
    assert H.n == 1
    assert distance(H, 0, 0) == 0.0


def test_euclidean_line_file(tmp_path):
    doc = {
        "metric": "euclidean",
        "nodes": [
            {"id": "a", "embedding": [0]},
            {"id": "b", "embedding": [3]},
            {"id": "c", "embedding": [4]},
        ],
    }
    path = tmp_path / "line.json"
    path.write_text(json.dumps(doc))
    H = load_instance(str(path))
    assert distance(H, 0, 1) == 3
    assert distance(H, 1, 2) == 1
    assert distance(H, 0, 2) == 4


def test_jaccard_distance():
    H = make_instance(
        2, "jaccard", attr_sets=[{"x", "y"}, {"y", "z"}]
    )
    assert distance(H, 0, 1) == pytest.approx(2 / 3)


def test_jaccard_empty_sets_distance_zero():
    H = make_instance(2, "jaccard", attr_sets=[set(), set()])
    assert distance(H, 0, 1) == 0.0


def test_euclidean_345():
    H = make_instance(2, "euclidean", embeddings=[(0, 0), (3, 4)])
    assert distance(H, 0, 1) == pytest.approx(5.0)


def test_explicit_lookup():
    m = np.full((6, 6), 1.0)
    np.fill_diagonal(m, 0.0)
    m[2, 5] = m[5, 2] = 7.0
    H = explicit(m)
    assert distance(H, 2, 5) == 7.0


def test_out_of_range_node_id():
    H = line_points([0, 1])
    with pytest.raises(InstanceError):
        distance(H, 0, 2)
    with pytest.raises(InstanceError):
        neighbors(H, -1)


def test_asymmetric_matrix_rejected():
    with pytest.raises(InstanceError, match="asymmetric"):
        explicit([[0, 1], [2, 0]])


def test_negative_distance_rejected():
    with pytest.raises(InstanceError):
        explicit([[0, -1], [-1, 0]])


def test_duplicate_node_id_rejected():
    doc = {"metric": "explicit", "fill": 1, "nodes": [{"id": "a"}, {"id": "a"}]}
    with pytest.raises(InstanceError, match="duplicate"):
        instance_from_data(doc)


def test_missing_pair_without_fill_rejected():
    doc = {
        "metric": "explicit",
        "nodes": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
        "distances": [["a", "b", 1]],
    }
    with pytest.raises(InstanceError, match="fill"):
        instance_from_data(doc)


def test_unknown_metric_rejected():
    doc = {"metric": "hamming", "nodes": [{"id": "a"}]}
    with pytest.raises(InstanceError):
        instance_from_data(doc)


def test_neighbors_triangle(triangle):
    assert neighbors(triangle, 0) == {1, 2}


def test_neighbors_isolated_and_path():
    H = explicit(
        [[0, 1, 2, 2], [1, 0, 1, 2], [2, 1, 0, 2], [2, 2, 2, 0]],
        edges=[(0, 1), (1, 2)],
    )
    assert neighbors(H, 1) == {0, 2}
    assert neighbors(H, 3) == set()


def test_edge_threshold_default_relation():
    H = line_points([0, 1, 10], edge_threshold=2.0)
    assert neighbors(H, 0) == {1}
    assert neighbors(H, 2) == set()


def test_all_pairs_default_relation():
    H = line_points([0, 1, 10])
    assert neighbors(H, 0) == {1, 2}


def test_validate_metric_euclidean_clean():
    H = line_points([0, 1, 5, 9])
    report = validate_metric(H)
    assert report.is_metric
    assert report.violations == ()


def test_validate_metric_flags_violation():
    H = explicit([[0, 1, 10], [1, 0, 1], [10, 1, 0]])
    report = validate_metric(H)
    assert not report.is_metric
    assert (0, 1, 2) in report.violations
    assert report.max_violation_ratio == pytest.approx(5.0)


def test_validate_metric_single_node():
    H = explicit([[0]])
    assert validate_metric(H).is_metric


def test_round_trip(tmp_path):
    H = generate_instance("f", 12, 7)
    path = tmp_path / "rt.json"
    save_instance(H, path)
    H2 = load_instance(str(path))
    assert H2.labels == H.labels
    assert H2.edges == H.edges
    assert H2.colors == H.colors
    assert np.allclose(H2.dist, H.dist)
    # serialize again: stable
    assert instance_to_data(H2)["edges"] == instance_to_data(H)["edges"]


def test_csv_edges_format(tmp_path):
    path = tmp_path / "edges.csv"
    path.write_text("u,v,weight\na,b,1\nb,c,2\n")
    H = load_instance(str(path), fmt="csv-edges", fill=9.0)
    assert H.n == 3
    assert distance(H, 0, 1) == 1
    assert distance(H, 0, 2) == 9.0
    with pytest.raises(InstanceError):
        load_instance(str(path), fmt="csv-edges")


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=20), st.integers(min_value=0, max_value=10))
def test_distance_symmetry_and_identity(n, seed):
    H = generate_instance("rs", n, seed)
    for u in range(H.n):
        assert distance(H, u, u) == 0.0
        for v in range(u + 1, H.n):
            assert distance(H, u, v) == distance(H, v, u)
            assert distance(H, u, v) >= 0.0


def test_synthetic_metrics_pass_triangle_check():
    for seed in range(3):
        H = generate_instance("rs", 15, seed)
        assert validate_metric(H).is_metric
