"""Datasets: CSV ingestion, normalization, splitting, folding, resampling,
and the built-in twonorm/ringnorm generators.

A :class:`Dataset` is an ordered multiset of labeled real vectors.
Duplicate rows are first-class citizens; resampling operations rely on
that.  All randomized operations take an explicit seed and are pure
functions of ``(inputs, seed)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError
from .seeding import generator

SYNTHETIC_FAMILIES = ("twonorm", "ringnorm")


@dataclass(frozen=True)
class Dataset:
    """Labeled instances over a fixed attribute list.

    ``X`` is an (n, m) float array, ``y`` the per-instance class labels
    (verbatim strings), and ``class_domain`` the distinct labels in order
    of first appearance.  Treat all fields as immutable.
    """

    attributes: tuple[str, ...]
    X: np.ndarray
    y: tuple[str, ...]
    class_domain: tuple[str, ...] = field(default=())

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        object.__setattr__(self, "X", X)
        if X.ndim != 2:
            raise ValueError("X must be a 2-d array")
        if X.shape[1] != len(self.attributes):
            raise ValueError("attribute count does not match vector length")
        if X.shape[0] != len(self.y):
            raise ValueError("label count does not match instance count")
        if not self.class_domain:
            object.__setattr__(self, "class_domain", tuple(dict.fromkeys(self.y)))
        missing = set(self.y) - set(self.class_domain)
        if missing:
            raise ValueError(f"labels outside class domain: {sorted(missing)}")

    def __len__(self) -> int:
        return self.X.shape[0]

    @property
    def n_attributes(self) -> int:
        return self.X.shape[1]

    def label_codes(self) -> np.ndarray:
        """Labels as integer codes into ``class_domain``."""
        lut = {c: i for i, c in enumerate(self.class_domain)}
        return np.fromiter((lut[c] for c in self.y), dtype=np.intp, count=len(self.y))

    def subset(self, indices) -> "Dataset":
        """New dataset holding the given rows, in the given order."""
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(
            self.attributes,
            self.X[idx].copy(),
            tuple(self.y[i] for i in idx),
            self.class_domain,
        )

    def project(self, attribute_indices) -> "Dataset":
        """New dataset restricted to the given attribute columns."""
        cols = tuple(int(i) for i in attribute_indices)
        return Dataset(
            tuple(self.attributes[i] for i in cols),
            self.X[:, cols].copy(),
            self.y,
            self.class_domain,
        )

    def class_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in self.class_domain}
        for label in self.y:
            counts[label] += 1
        return counts


@dataclass(frozen=True)
class NormalizationStats:
    """Per-attribute training (min, max) used for the [0,1] rescaling."""

    minimum: np.ndarray
    maximum: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "minimum", np.asarray(self.minimum, dtype=float))
        object.__setattr__(self, "maximum", np.asarray(self.maximum, dtype=float))

    def select(self, attribute_indices) -> "NormalizationStats":
        cols = np.asarray(list(attribute_indices), dtype=np.intp)
        return NormalizationStats(self.minimum[cols], self.maximum[cols])

    def transform(self, X: np.ndarray) -> np.ndarray:
        """(x - min) / (max - min); constant attributes map to 0.

        Values outside the training range are not clamped, so test data
        may leave [0, 1].  The result is always C-contiguous: strict
        boundary comparisons (distance < radius) rely on every code path
        reducing distances in the same order, and numpy picks the
        reduction loop by memory layout.
        """
        X = np.ascontiguousarray(np.atleast_2d(np.asarray(X, dtype=float)))
        span = self.maximum - self.minimum
        out = np.zeros(X.shape, dtype=float)
        np.divide(X - self.minimum, span, out=out, where=span > 0)
        return out


@dataclass(frozen=True)
class FoldAssignment:
    """Stratified fold index per instance, values in [0, k)."""

    fold_index: np.ndarray
    k: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_index == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_index != fold)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters for the built-in Gaussian benchmark generators."""

    family: str
    dimensions: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.family not in SYNTHETIC_FAMILIES:
            raise ValueError(f"unknown synthetic family {self.family!r}")
        if self.dimensions < 1:
            raise ValueError("dimensions must be >= 1")


def load_dataset(path, class_column=None) -> Dataset:
    """Read a headered CSV into a Dataset.

    The class label lives in the last column unless ``class_column`` names
    (or indexes) a different one.  Rows are kept in file order, duplicates
    included; labels are taken verbatim as strings.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        if class_column is None:
            class_idx = len(header) - 1
        elif isinstance(class_column, int):
            class_idx = class_column
        else:
            try:
                class_idx = header.index(class_column)
            except ValueError:
                raise DataFormatError(
                    f"{path}: class column {class_column!r} not in header"
                ) from None
        if not 0 <= class_idx < len(header):
            raise DataFormatError(f"{path}: class column index {class_idx} out of range")
        attr_cols = [i for i in range(len(header)) if i != class_idx]
        attributes = tuple(header[i] for i in attr_cols)

        rows: list[list[float]] = []
        labels: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise DataFormatError(
                    f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}"
                )
            vec = []
            for i in attr_cols:
                try:
                    vec.append(float(row[i]))
                except ValueError:
                    raise DataFormatError(
                        f"{path}: line {lineno}: non-numeric value {row[i]!r} "
                        f"in attribute {header[i]!r}"
                    ) from None
            rows.append(vec)
            labels.append(row[class_idx])

    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    X = np.array(rows, dtype=float)
    return Dataset(attributes, X, tuple(labels))


def load_unlabeled(path, attributes: tuple[str, ...]) -> np.ndarray:
    """Read a headerless-of-class CSV whose columns are exactly ``attributes``."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: empty file") from None
        if tuple(header) != tuple(attributes):
            raise DataFormatError(f"{path}: header does not match expected attributes")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise DataFormatError(
                    f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise DataFormatError(f"{path}: line {lineno}: non-numeric value") from None
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    return np.array(rows, dtype=float)


def save_dataset(d: Dataset, path, class_name: str = "class") -> None:
    """Write a Dataset back to CSV; loading the result round-trips exactly.

    Floats are written with shortest round-trip repr, so values survive a
    save/load cycle bit for bit.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(d.attributes) + [class_name])
        for row, label in zip(d.X, d.y):
            writer.writerow([repr(float(v)) for v in row] + [label])


def fit_normalization(d: Dataset) -> NormalizationStats:
    """Per-attribute (min, max) over the dataset."""
    if len(d) == 0:
        raise ValueError("cannot fit normalization on an empty dataset")
    if not np.all(np.isfinite(d.X)):
        raise ValueError("attributes must be finite to normalize")
    return NormalizationStats(d.X.min(axis=0), d.X.max(axis=0))


def normalize(d: Dataset) -> tuple[Dataset, NormalizationStats]:
    """Min-max rescale every attribute onto [0, 1].

    Returns the rescaled dataset together with the (min, max) table so the
    same affine map can be applied to test data later.
    """
    stats = fit_normalization(d)
    return Dataset(d.attributes, stats.transform(d.X), d.y, d.class_domain), stats


def apply_normalization(d: Dataset, stats: NormalizationStats) -> Dataset:
    """Transform a dataset with previously fitted statistics (no clamping)."""
    return Dataset(d.attributes, stats.transform(d.X), d.y, d.class_domain)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split(d: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Stratified train/test split with |test| = round(fraction * n).

    Per-class test counts follow largest-remainder allocation of the exact
    per-class quotas, so the split is stratified and the total is exact.
    """
    if len(d) == 0:
        raise ValueError("cannot split an empty dataset")
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie strictly between 0 and 1")
    n = len(d)
    total_test = _round_half_up(test_fraction * n)
    codes = d.label_codes()
    counts = np.bincount(codes, minlength=len(d.class_domain))

    quotas = test_fraction * counts
    base = np.floor(quotas).astype(int)
    remainder = total_test - int(base.sum())
    frac_order = sorted(range(len(counts)), key=lambda c: (-(quotas[c] - base[c]), c))
    alloc = base.copy()
    i = 0
    while remainder > 0:
        c = frac_order[i % len(counts)]
        if alloc[c] < counts[c]:
            alloc[c] += 1
            remainder -= 1
        i += 1

    rng = generator(seed, "split")
    test_idx: list[int] = []
    train_idx: list[int] = []
    for c in range(len(counts)):
        members = np.flatnonzero(codes == c)
        perm = rng.permutation(len(members))
        members = members[perm]
        test_idx.extend(members[: alloc[c]].tolist())
        train_idx.extend(members[alloc[c]:].tolist())
    test_idx.sort()
    train_idx.sort()
    return d.subset(train_idx), d.subset(test_idx)


def cv_folds(d: Dataset, k: int, seed: int) -> FoldAssignment:
    """Stratified k-fold assignment.

    Instances are dealt round-robin class by class with a carried-over
    pointer, so both the overall fold sizes and every per-class fold count
    differ by at most one.
    """
    n = len(d)
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > n:
        raise ValueError(f"k={k} exceeds dataset size {n}")
    rng = generator(seed, "folds")
    codes = d.label_codes()
    fold = np.empty(n, dtype=np.intp)
    pointer = 0
    for c in range(len(d.class_domain)):
        members = np.flatnonzero(codes == c)
        members = members[rng.permutation(len(members))]
        for idx in members:
            fold[idx] = pointer % k
            pointer += 1
    return FoldAssignment(fold, k)


def bootstrap(d: Dataset, size: int, seed: int) -> Dataset:
    """Uniform sample of ``size`` instances with replacement."""
    if len(d) == 0:
        raise ValueError("cannot bootstrap an empty dataset")
    if size <= 0:
        raise ValueError("bootstrap size must be positive")
    rng = generator(seed, "bootstrap")
    idx = rng.integers(0, len(d), size=size)
    return d.subset(idx)


def _standard_normal(rng: np.random.Generator, size: int) -> np.ndarray:
    """Box-Muller draws from the stream's uniforms (portable by construction)."""
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # shift (0,1] so log never sees zero
    u2 = rng.random(pairs)
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
    return z[:size]


def gen_synthetic(spec: SyntheticSpec, n: int) -> Dataset:
    """Generate a balanced two-class benchmark dataset.

    twonorm: class +1 ~ N(+a*1, I), class -1 ~ N(-a*1, I), a = 2/sqrt(dim).
    ringnorm: class +1 ~ N(0, 4I), class -1 ~ N(a*1, I), a = 1/sqrt(dim).
    """
    if n < 2:
        raise ValueError("need at least 2 instances")
    dim = spec.dimensions
    n_pos = (n + 1) // 2
    n_neg = n - n_pos
    rng = generator(spec.seed, spec.family, "gen")
    z_pos = _standard_normal(rng, n_pos * dim).reshape(n_pos, dim)
    z_neg = _standard_normal(rng, n_neg * dim).reshape(n_neg, dim)
    if spec.family == "twonorm":
        a = 2.0 / math.sqrt(dim)
        X = np.vstack([z_pos + a, z_neg - a])
    else:  # ringnorm
        a = 1.0 / math.sqrt(dim)
        X = np.vstack([2.0 * z_pos, z_neg + a])
    y = ("+1",) * n_pos + ("-1",) * n_neg
    attributes = tuple(f"a{i + 1}" for i in range(dim))
    return Dataset(attributes, X, y)
