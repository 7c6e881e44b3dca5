import numpy as np
import pytest

from spherecover.data import Dataset

# Accuracy of five subspace ensembles on sixteen benchmark datasets
# (25 members each); the canonical regression input for the stats module.
SUBSPACE_NAMES = ("aRSSE", "RotF", "RandS", "RandF", "RandC")
SUBSPACE_ACC = np.array([
    [54.77, 55.56, 54.62, 54.05, 53.56],
    [90.21, 90.72, 89.35, 89.51, 89.32],
    [91.71, 91.03, 90.79, 90.80, 90.24],
    [98.29, 97.57, 96.82, 95.49, 96.60],
    [97.03, 97.42, 95.88, 96.02, 96.18],
    [97.39, 98.04, 96.42, 97.27, 96.08],
    [74.59, 76.26, 72.28, 74.85, 73.65],
    [94.67, 96.40, 95.35, 95.30, 96.04],
    [58.80, 61.06, 57.38, 58.96, 60.26],
    [76.17, 76.25, 74.48, 75.43, 74.78],
    [94.53, 93.50, 92.68, 93.05, 93.13],
    [84.52, 82.86, 79.57, 81.00, 82.19],
    [82.74, 82.74, 83.30, 81.67, 81.00],
    [76.27, 73.87, 74.73, 71.18, 70.93],
    [97.21, 97.18, 96.35, 96.48, 97.00],
    [85.00, 87.41, 84.02, 85.33, 84.82],
])


def make_dataset(X, y, attributes=None) -> Dataset:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if attributes is None:
        attributes = tuple(f"a{i}" for i in range(X.shape[1]))
    return Dataset(tuple(attributes), X, tuple(y))


def random_dataset(rng, n, m, n_classes) -> Dataset:
    """Continuous uniform attributes; identical rows with different labels
    have probability zero, so the data is contradiction-free."""
    X = rng.random((n, m))
    labels = [chr(ord("A") + i) for i in range(n_classes)]
    # every class appears at least once
    y = [labels[i % n_classes] for i in range(n_classes)]
    y += [labels[int(rng.integers(n_classes))] for _ in range(n - n_classes)]
    return make_dataset(X, y)


@pytest.fixture
def xor_dataset() -> Dataset:
    return make_dataset(
        [[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]],
        ["A", "A", "B", "B"],
        ("x", "y"),
    )
