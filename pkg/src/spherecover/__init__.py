"""Randomised sphere cover classifiers, their ensembles, and the
surrounding evaluation toolkit (attribute filters, bias/variance
decomposition, rank-based classifier comparison)."""

from .data import (
    Dataset,
    FoldAssignment,
    NormalizationStats,
    SyntheticSpec,
    bootstrap,
    cv_folds,
    gen_synthetic,
    load_dataset,
    normalize,
    save_dataset,
    split,
)
from .ensemble import (
    EnsembleModel,
    VoteTally,
    border_cases,
    build_resampling_ensemble,
    build_simple_ensemble,
    build_subspace_ensemble,
    misclassified_cases,
    uncovered_cases,
    vote,
)
from .errors import (
    DataFormatError,
    InvariantError,
    SchemaMismatchError,
    SphereCoverError,
    UnusableModelError,
)
from .evaluation import (
    BVInstanceStats,
    BVReport,
    ModelSpec,
    bv_decompose,
    bv_point_stats,
    cross_validate,
    evaluate_accuracy,
    fit_model,
    predict_labels,
    select_alpha,
    select_kappa_alpha,
)
from .filters import AttributeScores, chi2_scores, infogain_scores, relief_scores, select_top_k
from .rsc import (
    Sphere,
    SphereCoverModel,
    build_rsc,
    classify,
    covering_spheres,
    distance,
    edge_distance,
)
from .stats import (
    AccuracyMatrix,
    RankSummary,
    bonferroni_dunn_z,
    cliques,
    friedman_test,
    nemenyi_cd,
    render_cd_diagram,
)

__version__ = "0.1.0"
