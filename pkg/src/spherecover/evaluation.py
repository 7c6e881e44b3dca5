"""Model fitting, accuracy evaluation, model selection, and the
bias/variance decomposition harness.

A :class:`ModelSpec` names a scheme (single sphere cover, one of the three
ensembles, or the majority-class baseline), fixed or grid-searched
parameters, and an optional attribute filter.  :func:`fit_model` resolves
the spec on a training set; :func:`predict_labels` dispatches prediction.

The bias/variance harness follows the 0/1-loss decomposition: the modal
prediction over models trained on resampled sets is the main prediction,
bias is its loss against the observed label, and the variance splits into
an unbiased part (main prediction right, deviations hurt) and a biased
part (main prediction wrong, deviations help).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, replace

import numpy as np

from . import ensemble as ens
from . import filters
from . import rsc
from .data import Dataset, apply_normalization, bootstrap, cv_folds, fit_normalization, split
from .errors import SchemaMismatchError, UnusableModelError
from .seeding import derive_seed

log = logging.getLogger("spherecover")

SCHEME_SINGLE = "single"
SCHEME_MAJORITY = "majority"
SCHEMES = (SCHEME_SINGLE, ens.SCHEME_SIMPLE, ens.SCHEME_RESAMPLE, ens.SCHEME_SUBSPACE,
           SCHEME_MAJORITY)

DEFAULT_ALPHA_GRID = tuple(range(31))
FILTER_KAPPA_CANDIDATES = (5, 10, 20, 30, 40, 50)

#: Stand-in prediction for replicates whose model retained zero spheres;
#: never equal to a real label, so such predictions always score as wrong.
UNUSABLE_LABEL = "__unusable__"


def default_kappa_grid(m: int, filter_active: bool = False) -> tuple[int, ...]:
    """Subspace sizes round(m * f) for f = 0.1..1.0, deduplicated.

    With a filter in play the conventional fixed sizes join the grid where
    they fit.
    """
    values = {max(1, round(m * f / 10.0)) for f in range(1, 11)}
    if filter_active:
        values.update(v for v in FILTER_KAPPA_CANDIDATES if v <= m)
    return tuple(sorted(v for v in values if 1 <= v <= m))


@dataclass(frozen=True)
class ModelSpec:
    """Declarative description of one classifier configuration."""

    scheme: str
    alpha: int | None = None
    kappa: int | None = None
    ensemble_size: int = 25
    alpha_grid: tuple[int, ...] | None = None
    kappa_grid: tuple[int, ...] | None = None
    filter_method: str | None = None
    filter_bins: int = filters.DEFAULT_BINS
    filter_top_k: int | None = None
    filter_sample_count: int | None = None
    name: str | None = None

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.scheme != ens.SCHEME_SUBSPACE and (self.kappa or self.kappa_grid):
            raise ValueError("kappa only applies to the subspace scheme")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.ensemble_size < 1:
            raise ValueError("ensemble size must be >= 1")
        if self.filter_method is not None:
            if self.filter_method not in ("chi2", "infogain", "relief"):
                raise ValueError(f"unknown filter {self.filter_method!r}")
            if self.filter_top_k is None:
                raise ValueError("a filter needs filter_top_k")
        if self.alpha_grid is not None:
            object.__setattr__(self, "alpha_grid", tuple(self.alpha_grid))
        if self.kappa_grid is not None:
            object.__setattr__(self, "kappa_grid", tuple(self.kappa_grid))

    @property
    def label(self) -> str:
        """Stable human-readable identifier for report rows."""
        if self.name:
            return self.name
        bits = [self.scheme]
        if self.scheme != SCHEME_MAJORITY:
            bits.append(f"a{self.alpha if self.alpha is not None else 'cv'}")
        if self.scheme == ens.SCHEME_SUBSPACE:
            bits.append(f"k{self.kappa if self.kappa is not None else 'cv'}")
        if self.scheme in ens.ENSEMBLE_SCHEMES:
            bits.append(f"L{self.ensemble_size}")
        if self.filter_method:
            bits.append(f"{self.filter_method}{self.filter_top_k}")
        return "-".join(bits)


@dataclass(frozen=True)
class MajorityModel:
    """Baseline that always predicts the training majority class."""

    label: str


def _majority_label(train: Dataset) -> str:
    counts = Counter(train.y)
    top = max(counts.values())
    return min(label for label, c in counts.items() if c == top)


def _score_filter(spec: ModelSpec, d_norm: Dataset, seed: int) -> filters.AttributeScores:
    if spec.filter_method == "chi2":
        return filters.chi2_scores(d_norm, spec.filter_bins)
    if spec.filter_method == "infogain":
        return filters.infogain_scores(d_norm, spec.filter_bins)
    return filters.relief_scores(d_norm, spec.filter_sample_count, seed)


def fit_model(spec: ModelSpec, train: Dataset, seed: int):
    """Build the model a spec describes, grids resolved by cross-validation.

    With a filter present the ranking is fitted on the training data only
    and the model is trained on the projection; stored attribute indices
    are remapped back to the original columns so raw test vectors work
    unchanged.
    """
    if len(train) == 0:
        raise ValueError("empty training set")
    if spec.scheme == SCHEME_MAJORITY:
        return MajorityModel(_majority_label(train))

    work = train
    column_map = None
    if spec.filter_method is not None:
        stats = fit_normalization(train)
        scores = _score_filter(spec, apply_normalization(train, stats), derive_seed(seed, "filter"))
        column_map = filters.select_top_k(scores, spec.filter_top_k)
        work = train.project(column_map)

    cv_k = min(10, len(work))
    alpha = spec.alpha
    kappa = spec.kappa
    if spec.scheme == ens.SCHEME_SUBSPACE:
        if kappa is None or alpha is None:
            kgrid = (kappa,) if kappa is not None else (
                spec.kappa_grid or default_kappa_grid(work.n_attributes, spec.filter_method is not None)
            )
            kgrid = tuple(v for v in kgrid if 1 <= v <= work.n_attributes)
            if not kgrid:
                raise ValueError("kappa grid has no value within the attribute count")
            agrid = (alpha,) if alpha is not None else (spec.alpha_grid or DEFAULT_ALPHA_GRID)
            kappa, alpha = select_kappa_alpha(
                work, kgrid, agrid, spec.ensemble_size, cv_k, derive_seed(seed, "select")
            )
    elif alpha is None:
        agrid = spec.alpha_grid or DEFAULT_ALPHA_GRID
        alpha = select_alpha(work, agrid, cv_k, derive_seed(seed, "select"))

    build_seed = derive_seed(seed, "build")
    if spec.scheme == SCHEME_SINGLE:
        model = rsc.build_rsc(work, alpha, build_seed)
    elif spec.scheme == ens.SCHEME_SIMPLE:
        model = ens.build_simple_ensemble(work, alpha, spec.ensemble_size, build_seed)
    elif spec.scheme == ens.SCHEME_RESAMPLE:
        model = ens.build_resampling_ensemble(work, alpha, spec.ensemble_size, build_seed)
    else:
        model = ens.build_subspace_ensemble(work, alpha, kappa, spec.ensemble_size, build_seed)

    if column_map is not None:
        if isinstance(model, ens.EnsembleModel):
            model = replace(
                model,
                members=tuple(rsc.remap_attribute_subset(m, column_map) for m in model.members),
            )
        else:
            model = rsc.remap_attribute_subset(model, column_map)
    return model


def predict_labels(model, X_raw, seed: int = 0) -> np.ndarray:
    """Predict labels for raw full-width vectors under any model kind."""
    X_raw = np.atleast_2d(np.asarray(X_raw, dtype=float))
    if isinstance(model, MajorityModel):
        return np.array([model.label] * X_raw.shape[0], dtype=object)
    if isinstance(model, ens.EnsembleModel):
        return ens.predict(model, X_raw, derive_seed(seed, "vote"))
    return rsc.predict(model, X_raw)


def fit_and_score(spec: ModelSpec, train: Dataset, test: Dataset, seed: int):
    """Fit on train and score on test; returns (model, accuracy).

    Train and test must agree on the attribute schema.  A model that
    retained zero spheres scores zero instead of aborting.
    """
    if train.attributes != test.attributes:
        raise SchemaMismatchError("train and test attribute schemas differ")
    if len(test) == 0:
        raise ValueError("empty test set")
    model = fit_model(spec, train, derive_seed(seed, "fit"))
    try:
        preds = predict_labels(model, test.X, derive_seed(seed, "tie"))
    except UnusableModelError:
        log.warning("model %s unusable (zero spheres); scoring accuracy 0", spec.label)
        return model, 0.0
    truth = np.array(test.y, dtype=object)
    return model, float(np.mean(preds == truth))


def evaluate_accuracy(spec: ModelSpec, train: Dataset, test: Dataset, seed: int) -> float:
    """Fit on train, score on test; unusable models score zero."""
    return fit_and_score(spec, train, test, seed)[1]


def cross_validate(d: Dataset, spec: ModelSpec, k: int, seed: int) -> float:
    """Mean held-out-fold accuracy over a stratified k-fold assignment."""
    folds = cv_folds(d, k, derive_seed(seed, "cv"))
    accs = []
    for f in range(k):
        train = d.subset(folds.train_indices(f))
        test = d.subset(folds.test_indices(f))
        accs.append(evaluate_accuracy(spec, train, test, derive_seed(seed, "fold", f)))
    return float(np.mean(accs))


def select_alpha(train: Dataset, alpha_grid, cv_k: int, seed: int) -> int:
    """Pick alpha by cross-validated accuracy of a single sphere cover.

    Ties resolve to the smallest alpha.  The same seed (hence the same
    folds) scores every grid point.
    """
    grid = sorted(set(int(a) for a in alpha_grid))
    if not grid:
        raise ValueError("alpha grid is empty")
    best_alpha, best_acc = None, -1.0
    for a in grid:
        acc = cross_validate(train, ModelSpec(SCHEME_SINGLE, alpha=a), cv_k, seed)
        if acc > best_acc:
            best_alpha, best_acc = a, acc
    return best_alpha


def select_kappa_alpha(
    train: Dataset, kappa_grid, alpha_grid, size: int, cv_k: int, seed: int
) -> tuple[int, int]:
    """Two-stage subspace selection on a stratified one-third subsample.

    Kappa is chosen first (alpha held at the grid median), then alpha at
    that kappa.  Ties resolve to the smaller value.
    """
    kgrid = sorted(set(int(v) for v in kappa_grid))
    agrid = sorted(set(int(v) for v in alpha_grid))
    if not kgrid or not agrid:
        raise ValueError("grids must be nonempty")
    _, sub = split(train, 1.0 / 3.0, derive_seed(seed, "subsample"))
    k_eff = min(cv_k, len(sub))
    alpha_mid = agrid[(len(agrid) - 1) // 2]

    best_kappa, best_acc = None, -1.0
    for kp in kgrid:
        spec = ModelSpec(ens.SCHEME_SUBSPACE, alpha=alpha_mid, kappa=kp, ensemble_size=size)
        acc = cross_validate(sub, spec, k_eff, derive_seed(seed, "kappa"))
        if acc > best_acc:
            best_kappa, best_acc = kp, acc

    best_alpha, best_acc = None, -1.0
    for a in agrid:
        spec = ModelSpec(ens.SCHEME_SUBSPACE, alpha=a, kappa=best_kappa, ensemble_size=size)
        acc = cross_validate(sub, spec, k_eff, derive_seed(seed, "alpha"))
        if acc > best_acc:
            best_alpha, best_acc = a, acc
    return best_kappa, best_alpha


@dataclass(frozen=True)
class BVInstanceStats:
    """Decomposition bookkeeping for one test point.

    ``per_set_loss = bias + c2 * variance`` holds exactly for two-class
    prediction lists; with three or more distinct labels a deviation from
    a wrong main prediction need not land on the truth and the identity
    can fail, so only the two-class identity is asserted.
    """

    main_prediction: str
    bias: int
    variance: float
    c2: int
    per_set_loss: float


@dataclass(frozen=True)
class BVReport:
    """Aggregated decomposition in the shape of the standard report row."""

    average_error: float
    bias: float
    net_variance: float
    unbiased_variance: float
    biased_variance: float
    instance_stats: tuple[BVInstanceStats, ...]
    training_sets: int


def bv_point_stats(predictions, y: str) -> BVInstanceStats:
    """Main prediction (modal, ties to the lexicographically smallest
    label), 0/1 bias, deviation-from-main variance, and average loss."""
    predictions = list(predictions)
    if not predictions:
        raise ValueError("empty prediction list")
    counts = Counter(predictions)
    top = max(counts.values())
    main = min(label for label, c in counts.items() if c == top)
    s = len(predictions)
    bias = 0 if main == y else 1
    variance = sum(1 for p in predictions if p != main) / s
    loss = sum(1 for p in predictions if p != y) / s
    return BVInstanceStats(main, bias, variance, 1 if bias == 0 else -1, loss)


def aggregate_bv(stats, training_sets: int) -> BVReport:
    """Combine per-point stats; the unbiased/biased variances are weighted
    by point share so that net variance = unbiased - biased exactly."""
    stats = tuple(stats)
    if not stats:
        raise ValueError("no instance stats to aggregate")
    n = len(stats)
    avg_error = sum(st.per_set_loss for st in stats) / n
    bias = sum(st.bias for st in stats) / n
    var_unb = sum(st.variance for st in stats if st.bias == 0) / n
    var_bias = sum(st.variance for st in stats if st.bias == 1) / n
    return BVReport(avg_error, bias, var_unb - var_bias, var_unb, var_bias, stats, training_sets)


def bv_decompose(
    d: Dataset,
    spec: ModelSpec,
    s: int = 200,
    boot_size: int = 200,
    test_fraction: float = 1.0 / 3.0,
    seed: int = 0,
) -> BVReport:
    """Estimate the decomposition by resampling.

    A stratified test set of ``test_fraction`` is held fixed; ``s``
    bootstrap samples of ``boot_size`` are drawn from the remaining pool,
    one model per sample, and the per-test-point prediction lists are
    aggregated.  Replicates whose model is unusable predict a sentinel
    that never matches a real label.
    """
    if s < 2:
        raise ValueError("need at least 2 training sets")
    pool, test = split(d, test_fraction, derive_seed(seed, "bv-split"))
    n_test = len(test)
    predictions = np.empty((s, n_test), dtype=object)
    for i in range(s):
        boot = bootstrap(pool, boot_size, derive_seed(seed, "replicate", i))
        model = fit_model(spec, boot, derive_seed(seed, "fit", i))
        try:
            predictions[i] = predict_labels(model, test.X, derive_seed(seed, "tie", i))
        except UnusableModelError:
            log.warning("replicate %d unusable (zero spheres); predictions scored wrong", i)
            predictions[i] = UNUSABLE_LABEL
    stats = [
        bv_point_stats([predictions[i][j] for i in range(s)], test.y[j])
        for j in range(n_test)
    ]
    return aggregate_bv(stats, s)
