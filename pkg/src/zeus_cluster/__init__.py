"""Relaxed lexicographic multi-objective clustering (Zeus pipeline)."""

from .graph import GraphInstance, distance, load_instance, neighbors, validate_metric
from .makeshifts import (
    MakeshiftOptions,
    balanced_kcenter,
    makeshift_fairness,
    makeshift_fairness_ab,
    makeshift_kcenter,
    makeshift_kmedian,
    makeshift_rs,
    makeshift_rs_gamma,
    makeshift_tf,
)
from .objectives import (
    Clustering,
    ObjectiveSpec,
    PairStructure,
    SlackVector,
    evaluate,
    lex_compare,
)
from .synth import generate_instance
from .zeus import ProblemSpec, zeus_run

__version__ = "0.1.0"

__all__ = [
    "GraphInstance",
    "load_instance",
    "distance",
    "neighbors",
    "validate_metric",
    "Clustering",
    "ObjectiveSpec",
    "PairStructure",
    "SlackVector",
    "evaluate",
    "lex_compare",
    "MakeshiftOptions",
    "makeshift_kcenter",
    "makeshift_kmedian",
    "makeshift_rs",
    "makeshift_rs_gamma",
    "makeshift_fairness",
    "makeshift_fairness_ab",
    "makeshift_tf",
    "balanced_kcenter",
    "generate_instance",
    "ProblemSpec",
    "zeus_run",
    "__version__",
]
