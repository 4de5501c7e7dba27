"""Immutable graph-instance model, distance metrics, and instance file I/O.

An instance is a set of nodes with a distance metric (explicit matrix,
Euclidean over embeddings, or Jaccard over attribute sets), an optional
relation ``E`` of node pairs, and optional per-node attributes (color,
expert flag).
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InstanceError

EXPLICIT = "explicit"
EUCLIDEAN = "euclidean"
JACCARD = "jaccard"
METRICS = (EXPLICIT, EUCLIDEAN, JACCARD)

BLUE = "B"
PURPLE = "P"


@dataclass(frozen=True)
class GraphInstance:
    """A clustering instance: nodes, metric, relation E, node attributes.

    Nodes are dense ids ``0..n-1``; ``labels`` maps them back to the
    original file ids. The full distance matrix is precomputed once and
    the instance is immutable afterwards, so it is safe to share.
    """

    labels: tuple[str, ...]
    metric: str
    dist: np.ndarray
    edges: frozenset[tuple[int, int]]
    colors: tuple[str | None, ...]
    experts: tuple[bool, ...]
    embeddings: tuple[tuple[float, ...], ...] | None = None
    attr_sets: tuple[frozenset[str], ...] | None = None
    fill: float | None = None
    edge_threshold: float | None = None
    adjacency: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __post_init__(self):
        self.dist.setflags(write=False)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(
            self, "adjacency", tuple(tuple(sorted(a)) for a in adj)
        )

    def __eq__(self, other):
        if not isinstance(other, GraphInstance):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.metric == other.metric
            and np.array_equal(self.dist, other.dist)
            and self.edges == other.edges
            and self.colors == other.colors
            and self.experts == other.experts
        )


@dataclass(frozen=True)
class MetricReport:
    """Result of a triangle-inequality audit of an instance."""

    is_metric: bool
    violations: tuple[tuple[int, int, int], ...]
    max_violation_ratio: float


def _check_node_id(H: GraphInstance, u: int) -> None:
    if not (0 <= u < H.n):
        raise InstanceError(f"node id {u} out of range [0, {H.n})")


def distance(H: GraphInstance, u: int, v: int) -> float:
    """Distance ``d(u, v)`` under the instance's metric."""
    _check_node_id(H, u)
    _check_node_id(H, v)
    return float(H.dist[u, v])


def neighbors(H: GraphInstance, u: int) -> set[int]:
    """All ``v`` with ``(u, v)`` in E; never contains ``u``."""
    _check_node_id(H, u)
    return set(H.adjacency[u])


def _build_instance(
    labels,
    metric,
    *,
    matrix=None,
    embeddings=None,
    attr_sets=None,
    edges=None,
    colors=None,
    experts=None,
    fill=None,
    edge_threshold=None,
) -> GraphInstance:
    n = len(labels)
    if len(set(labels)) != n:
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        raise InstanceError(f"duplicate node id(s): {dupes}")
    if metric not in METRICS:
        raise InstanceError(f"unknown metric {metric!r}")

    if metric == EXPLICIT:
        if matrix is None:
            raise InstanceError("explicit metric requires a distance matrix")
        dist = np.asarray(matrix, dtype=float)
        if dist.shape != (n, n):
            raise InstanceError(f"distance matrix must be {n}x{n}, got {dist.shape}")
        if np.isnan(dist).any():
            missing = [
                (labels[u], labels[v])
                for u in range(n)
                for v in range(u + 1, n)
                if np.isnan(dist[u, v])
            ]
            raise InstanceError(
                f"pairs neither listed nor covered by fill: {missing[:5]}"
            )
        if not np.allclose(dist, dist.T, rtol=0, atol=0):
            raise InstanceError("explicit distance matrix is asymmetric")
        if np.diag(dist).any():
            raise InstanceError("explicit distance matrix has non-zero diagonal")
    elif metric == EUCLIDEAN:
        if embeddings is None:
            raise InstanceError("euclidean metric requires embeddings")
        dims = {len(e) for e in embeddings}
        if len(embeddings) != n or len(dims) > 1:
            raise InstanceError("all nodes need embeddings of one dimension")
        pts = np.asarray(embeddings, dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
    else:  # jaccard
        if attr_sets is None or len(attr_sets) != n:
            raise InstanceError("jaccard metric requires an attr_set per node")
        dist = np.zeros((n, n))
        sets = [frozenset(s) for s in attr_sets]
        for u in range(n):
            for v in range(u + 1, n):
                union = sets[u] | sets[v]
                d = 0.0 if not union else 1.0 - len(sets[u] & sets[v]) / len(union)
                dist[u, v] = dist[v, u] = d

    if (dist < 0).any():
        raise InstanceError("negative distance")
    if not np.isfinite(dist).all():
        raise InstanceError("non-finite distance")
    np.fill_diagonal(dist, 0.0)

    if edges is None:
        # E defaults: all pairs within the declared threshold, or all pairs.
        pairs = []
        for u in range(n):
            for v in range(u + 1, n):
                if edge_threshold is None or dist[u, v] <= edge_threshold:
                    pairs.append((u, v))
        edge_set = frozenset(pairs)
    else:
        edge_set = frozenset(
            (min(u, v), max(u, v)) for u, v in edges if u != v
        )
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge ({u},{v}) references unknown node")

    colors = tuple(colors) if colors is not None else (None,) * n
    experts = tuple(bool(x) for x in experts) if experts is not None else (False,) * n
    for c in colors:
        if c not in (BLUE, PURPLE, None):
            raise InstanceError(f"invalid color {c!r}")
    if len(colors) != n or len(experts) != n:
        raise InstanceError("colors/experts length mismatch")

    return GraphInstance(
        labels=tuple(str(x) for x in labels),
        metric=metric,
        dist=dist,
        edges=edge_set,
        colors=colors,
        experts=experts,
        embeddings=tuple(tuple(float(x) for x in e) for e in embeddings)
        if embeddings is not None
        else None,
        attr_sets=tuple(frozenset(str(t) for t in s) for s in attr_sets)
        if attr_sets is not None
        else None,
        fill=fill,
        edge_threshold=edge_threshold,
    )


def make_instance(
    n: int,
    metric: str = EXPLICIT,
    *,
    matrix=None,
    embeddings=None,
    attr_sets=None,
    edges=None,
    colors=None,
    experts=None,
    fill: float | None = None,
    edge_threshold: float | None = None,
) -> GraphInstance:
    """Programmatic constructor with dense ids 0..n-1."""
    return _build_instance(
        [str(i) for i in range(n)],
        metric,
        matrix=matrix,
        embeddings=embeddings,
        attr_sets=attr_sets,
        edges=edges,
        colors=colors,
        experts=experts,
        fill=fill,
        edge_threshold=edge_threshold,
    )


def instance_from_data(data: dict) -> GraphInstance:
    """Build an instance from a parsed JSON document (see format docs)."""
    try:
        metric = data["metric"]
        node_specs = data["nodes"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"missing required field: {exc}") from exc
    if not isinstance(node_specs, list) or not node_specs:
        raise InstanceError("'nodes' must be a non-empty list")

    labels = [str(nd["id"]) for nd in node_specs]
    if len(set(labels)) != len(labels):
        raise InstanceError("duplicate node id in file")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)

    colors = [nd.get("color") for nd in node_specs]
    experts = [bool(nd.get("expert", False)) for nd in node_specs]
    embeddings = None
    attr_sets = None
    if metric == EUCLIDEAN:
        embeddings = [nd.get("embedding") for nd in node_specs]
        if any(e is None for e in embeddings):
            raise InstanceError("euclidean metric: every node needs 'embedding'")
    if metric == JACCARD:
        attr_sets = [nd.get("attrs") for nd in node_specs]
        if any(s is None for s in attr_sets):
            raise InstanceError("jaccard metric: every node needs 'attrs'")

    def node_of(x):
        key = str(x)
        if key not in index:
            raise InstanceError(f"unknown node id {key!r}")
        return index[key]

    edges = None
    raw_edges = data.get("edges")
    if raw_edges is not None:
        edges = [(node_of(e[0]), node_of(e[1])) for e in raw_edges]

    matrix = None
    fill = data.get("fill")
    if metric == EXPLICIT:
        matrix = np.full((n, n), np.nan if fill is None else float(fill))
        np.fill_diagonal(matrix, 0.0)

        def put(u, v, w):
            w = float(w)
            if w < 0:
                raise InstanceError(f"negative distance for pair ({u},{v})")
            matrix[u, v] = matrix[v, u] = w

        for entry in data.get("distances", []):
            put(node_of(entry[0]), node_of(entry[1]), entry[2])
        if raw_edges is not None:
            for e in raw_edges:
                if len(e) >= 3:
                    put(node_of(e[0]), node_of(e[1]), e[2])

    return _build_instance(
        labels,
        metric,
        matrix=matrix,
        embeddings=embeddings,
        attr_sets=attr_sets,
        edges=edges,
        colors=colors,
        experts=experts,
        fill=fill,
        edge_threshold=data.get("edge_threshold"),
    )


def load_instance(path: str, fmt: str = "json", fill: float | None = None) -> GraphInstance:
    """Load an instance file.

    Parameters
    ----------
    path : str
        File to read.
    fmt : {'json', 'csv-edges'}
        File format. CSV edge lists have a ``u,v,weight`` header and
        require a ``fill`` distance for unlisted pairs.
    fill : float, optional
        Fill distance for the csv-edges format.
    """
    if fmt == "json":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"cannot parse {path}: {exc}") from exc
        return instance_from_data(data)
    if fmt == "csv-edges":
        if fill is None:
            raise InstanceError("csv-edges format requires a fill distance")
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"u", "v", "weight"} <= set(
                reader.fieldnames
            ):
                raise InstanceError("csv-edges header must be u,v,weight")
            rows = [(row["u"], row["v"], float(row["weight"])) for row in reader]
        labels: list[str] = []
        seen = set()
        for u, v, _ in rows:
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    labels.append(x)
        data = {
            "metric": EXPLICIT,
            "fill": fill,
            "nodes": [{"id": x} for x in labels],
            "edges": [[u, v, w] for u, v, w in rows],
        }
        return instance_from_data(data)
    raise InstanceError(f"unknown format {fmt!r}")


def instance_to_data(H: GraphInstance) -> dict:
    """Serialize an instance back to the JSON document schema."""
    nodes = []
    for i, lab in enumerate(H.labels):
        nd: dict = {"id": lab}
        if H.colors[i] is not None:
            nd["color"] = H.colors[i]
        if H.experts[i]:
            nd["expert"] = True
        if H.embeddings is not None:
            nd["embedding"] = list(H.embeddings[i])
        if H.attr_sets is not None:
            nd["attrs"] = sorted(H.attr_sets[i])
        nodes.append(nd)
    data: dict = {
        "metric": H.metric,
        "nodes": nodes,
        "edges": [[H.labels[u], H.labels[v]] for u, v in sorted(H.edges)],
    }
    if H.metric == EXPLICIT:
        data["distances"] = [
            [H.labels[u], H.labels[v], float(H.dist[u, v])]
            for u in range(H.n)
            for v in range(u + 1, H.n)
        ]
    return data


def save_instance(H: GraphInstance, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(instance_to_data(H), fh, indent=1, sort_keys=True)
        fh.write("\n")


def validate_metric(
    H: GraphInstance, exhaustive_cap: int = 500, samples: int = 20000, seed: int = 0
) -> MetricReport:
    """Audit the triangle inequality.

    Checks all ordered triples when ``n <= exhaustive_cap``, otherwise a
    seeded sample of ``samples`` triples.
    """
    n = H.n
    d = H.dist
    violations: list[tuple[int, int, int]] = []
    worst = 1.0
    if n <= exhaustive_cap:
        triples = (
            (u, v, w)
            for u in range(n)
            for v in range(n)
            for w in range(n)
            if u != v and v != w and u != w
        )
    else:
        rng = random.Random(seed)
        triples = (
            tuple(rng.sample(range(n), 3)) for _ in range(samples)  # type: ignore[misc]
        )
    for u, v, w in triples:
        lhs = d[u, w]
        rhs = d[u, v] + d[v, w]
        if lhs > rhs + 1e-12:
            violations.append((u, v, w))
            if rhs > 0:
                worst = max(worst, lhs / rhs)
            else:
                worst = float("inf")
    return MetricReport(
        is_metric=not violations,
        violations=tuple(violations),
        max_violation_ratio=worst if violations else 1.0,
    )
