"""Attribute-ranking filters: chi-squared, information gain, and relief.

All three score attributes of a normalized dataset and feed
:func:`select_top_k`, which keeps the best-ranked columns.  Filters are
fitted on training data only; callers apply the selected column list to
test data.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .seeding import generator

DEFAULT_BINS = 10


@dataclass(frozen=True)
class AttributeScores:
    """One score per attribute plus the method and parameters that made them."""

    method: str
    scores: np.ndarray
    params: dict

    def __post_init__(self):
        object.__setattr__(self, "scores", np.asarray(self.scores, dtype=float))


def _discretize(column: np.ndarray, bins: int) -> np.ndarray:
    """Equal-width bins over [0, 1]; the value 1.0 lands in the top bin."""
    idx = np.floor(column * bins).astype(np.intp)
    return np.clip(idx, 0, bins - 1)


def _contingency(column: np.ndarray, codes: np.ndarray, bins: int, n_classes: int):
    table = np.zeros((bins, n_classes))
    np.add.at(table, (_discretize(column, bins), codes), 1.0)
    return table


def chi2_scores(d: Dataset, bins: int = DEFAULT_BINS) -> AttributeScores:
    """Chi-squared association between each binned attribute and the class."""
    if len(d) == 0:
        raise ValueError("empty dataset")
    if bins < 2:
        raise ValueError("bins must be >= 2")
    codes = d.label_codes()
    n_classes = len(d.class_domain)
    scores = np.empty(d.n_attributes)
    for a in range(d.n_attributes):
        table = _contingency(d.X[:, a], codes, bins, n_classes)
        expected = table.sum(axis=1, keepdims=True) * table.sum(axis=0) / len(d)
        mask = expected > 0
        scores[a] = (((table - expected) ** 2)[mask] / expected[mask]).sum()
    return AttributeScores("chi2", scores, {"bins": bins})


def _entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def infogain_scores(d: Dataset, bins: int = DEFAULT_BINS) -> AttributeScores:
    """H(class) - H(class | binned attribute), in bits."""
    if len(d) == 0:
        raise ValueError("empty dataset")
    if bins < 2:
        raise ValueError("bins must be >= 2")
    codes = d.label_codes()
    n_classes = len(d.class_domain)
    class_entropy = _entropy(np.bincount(codes, minlength=n_classes).astype(float))
    scores = np.empty(d.n_attributes)
    for a in range(d.n_attributes):
        table = _contingency(d.X[:, a], codes, bins, n_classes)
        bin_totals = table.sum(axis=1)
        conditional = sum(
            (bin_totals[b] / len(d)) * _entropy(table[b])
            for b in range(bins)
            if bin_totals[b] > 0
        )
        scores[a] = class_entropy - conditional
    return AttributeScores("infogain", scores, {"bins": bins})


def relief_scores(d: Dataset, sample_count: int | None = None, seed: int = 0) -> AttributeScores:
    """Multiclass relief with one nearest hit and one nearest miss per class.

    For each sampled instance the per-attribute score gains the
    prior-weighted nearest-miss difference minus the nearest-hit
    difference, averaged over the picks.  ``sample_count`` of at least n
    means one deterministic full pass; smaller counts sample without
    replacement under the seed.  Default sample budget is min(n, 250).
    """
    n = len(d)
    if len(d.class_domain) < 2:
        raise ValueError("relief needs at least two classes")
    codes = d.label_codes()
    counts = np.bincount(codes, minlength=len(d.class_domain))
    for c, cnt in enumerate(counts):
        if cnt < 2:
            raise ValueError(
                f"class {d.class_domain[c]!r} has a single instance; no nearest hit exists"
            )
    if sample_count is None:
        sample_count = min(n, 250)
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    if sample_count >= n:
        picks = np.arange(n)
    else:
        rng = generator(seed, "relief")
        picks = rng.choice(n, size=sample_count, replace=False)
    priors = counts / n

    scores = np.zeros(d.n_attributes)
    for i in picks:
        diff = np.abs(d.X - d.X[i])
        dist = np.sqrt((diff * diff).sum(axis=1))
        dist[i] = np.inf  # the pick is neither its own hit nor miss
        own = codes[i]
        hit_pool = np.flatnonzero(codes == own)
        hit = hit_pool[np.argmin(dist[hit_pool])]
        miss_term = np.zeros(d.n_attributes)
        for c in range(len(counts)):
            if c == own:
                continue
            pool = np.flatnonzero(codes == c)
            miss = pool[np.argmin(dist[pool])]
            weight = priors[c] / (1.0 - priors[own])
            miss_term += weight * diff[miss]
        scores += miss_term - diff[hit]
    scores /= len(picks)
    return AttributeScores(
        "relief", scores, {"sample_count": int(len(picks)), "seed": int(seed)}
    )


def select_top_k(scores: AttributeScores, k: int) -> tuple[int, ...]:
    """Indices of the k best-scoring attributes, descending score.

    Ties break toward the lower attribute index, so selections are prefix
    monotone in k.
    """
    m = len(scores.scores)
    if not 1 <= k <= m:
        raise ValueError(f"k={k} outside [1, {m}]")
    order = sorted(range(m), key=lambda i: (-scores.scores[i], i))
    return tuple(order[:k])


def write_scores_csv(scores: AttributeScores, attributes, path) -> None:
    """Export (attribute, score, rank) rows, rank 1 = best."""
    order = select_top_k(scores, len(scores.scores))
    rank = {a: r + 1 for r, a in enumerate(order)}
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["attribute", "score", "rank"])
        for i, name in enumerate(attributes):
            writer.writerow([name, repr(float(scores.scores[i])), rank[i]])
