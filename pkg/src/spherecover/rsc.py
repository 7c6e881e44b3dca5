"""The randomised sphere cover base classifier.

Training repeatedly picks an uncovered case at random, grows a sphere
around it out to the nearest case of a different class, and keeps the
sphere when it holds at least ``alpha`` cases.  Classification takes the
label of the covering sphere with the nearest centre, falling back to the
nearest spherical edge for points no sphere covers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .data import Dataset, NormalizationStats, fit_normalization
from .errors import UnusableModelError
from .seeding import generator


@dataclass(frozen=True)
class Sphere:
    """A pure sphere: label, centre, radius, and the training cases inside.

    Membership is strict (distance < radius), so the opposite-class case
    that fixed the radius sits on the boundary, outside the sphere.
    ``member_indices`` is None for spheres restored from serialized form,
    which keeps only the count.
    """

    label: str
    center: np.ndarray
    radius: float
    member_indices: tuple[int, ...] | None
    member_count: int = -1

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.member_count < 0:
            if self.member_indices is None:
                raise ValueError("member_count required when indices are absent")
            object.__setattr__(self, "member_count", len(self.member_indices))


@dataclass(frozen=True)
class SphereCoverModel:
    """Retained spheres plus the attribute view they were built on.

    ``attribute_subset`` holds column indices into the full attribute
    vector a caller passes at prediction time; ``norm_stats`` rescales
    those columns with the training (min, max).  ``border_indices`` records,
    per sphere, the training index of the opposite-class case that set the
    radius (None for infinite radius).
    """

    spheres: tuple[Sphere, ...]
    alpha: int
    attribute_subset: tuple[int, ...]
    norm_stats: NormalizationStats
    border_indices: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.attribute_subset) == 0:
            raise ValueError("attribute subset must be nonempty")
        if len(self.border_indices) != len(self.spheres):
            raise ValueError("one border index per sphere required")

    @property
    def n_spheres(self) -> int:
        return len(self.spheres)

    def prepare(self, X: np.ndarray) -> np.ndarray:
        """Project raw full-width vectors onto the model's view and normalize."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return self.norm_stats.transform(X[:, list(self.attribute_subset)])


def distance(a, b) -> float:
    """Euclidean distance between two equal-length vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    return float(np.sqrt((diff * diff).sum()))


def _distances_to(Xn: np.ndarray, center: np.ndarray) -> np.ndarray:
    diff = Xn - center
    return np.sqrt((diff * diff).sum(axis=1))


def _build_core(Xn, codes, alpha, rng):
    """The covering loop; returns (center_idx, radius, members, border) tuples.

    The selected centre always joins the covered set, so the loop makes
    progress every iteration and runs at most n times.  Failed spheres
    dump their members into the discarded set, but those cases stay
    eligible as future centres until covered.
    """
    n = Xn.shape[0]
    covered = np.zeros(n, dtype=bool)
    discarded = np.zeros(n, dtype=bool)
    out = []
    while not np.all(covered | discarded):
        pool = np.flatnonzero(~covered)
        center = int(pool[rng.integers(len(pool))])
        covered[center] = True
        d_all = _distances_to(Xn, Xn[center])
        enemies = np.flatnonzero(codes != codes[center])
        if enemies.size == 0:
            radius = math.inf
            border = None
            members = np.arange(n)
        else:
            enemy_d = d_all[enemies]
            nearest = int(np.argmin(enemy_d))  # ties: lowest training index
            radius = float(enemy_d[nearest])
            border = int(enemies[nearest])
            members = np.flatnonzero(d_all < radius)
        if members.size >= alpha:
            covered[members] = True
            out.append((center, radius, members, border))
        else:
            discarded[members] = True
    return out


def build_rsc(
    train: Dataset,
    alpha: int,
    seed: int,
    *,
    attribute_subset=None,
    norm_stats: NormalizationStats | None = None,
) -> SphereCoverModel:
    """Train a sphere cover on (optionally a column subset of) ``train``.

    When ``norm_stats`` is omitted the (min, max) table is fitted on the
    training columns; either way spheres live in normalized space and the
    stats are stored in the model so test vectors get the same transform.
    Bit-reproducible for fixed inputs and seed.
    """
    if len(train) == 0:
        raise ValueError("empty training set")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if attribute_subset is None:
        subset = tuple(range(train.n_attributes))
        work = train
    else:
        subset = tuple(int(i) for i in attribute_subset)
        work = train.project(subset)
    stats = norm_stats if norm_stats is not None else fit_normalization(work)
    Xn = stats.transform(work.X)
    codes = work.label_codes()
    rng = generator(seed, "rsc")
    raw = _build_core(Xn, codes, int(alpha), rng)
    spheres = tuple(
        Sphere(work.y[c], Xn[c].copy(), radius, tuple(int(i) for i in members))
        for c, radius, members, _ in raw
    )
    borders = tuple(border for _, _, _, border in raw)
    return SphereCoverModel(spheres, int(alpha), subset, stats, borders)


def covering_spheres(model: SphereCoverModel, x) -> list[tuple[int, float]]:
    """All spheres strictly containing x, as (sphere index, centre distance)."""
    x = np.asarray(x, dtype=float)
    out = []
    for i, s in enumerate(model.spheres):
        d = distance(x, s.center)
        if d < s.radius:
            out.append((i, d))
    return out


def edge_distance(sphere: Sphere, x) -> float:
    """Signed distance to the spherical edge; negative inside.

    An infinite-radius sphere is conventionally the closest edge of all.
    """
    if math.isinf(sphere.radius):
        return -math.inf
    return distance(x, sphere.center) - sphere.radius


def classify(model: SphereCoverModel, x) -> str:
    """Rule 1 / Rule 2 classification of a normalized, projected vector.

    Covered points take the label of the covering sphere with the nearest
    centre; uncovered points take the nearest spherical edge.  Exact ties
    go to the lowest sphere index.
    """
    if not model.spheres:
        raise UnusableModelError("model retained zero spheres")
    inside = covering_spheres(model, x)
    if inside:
        i, _ = min(inside, key=lambda pair: (pair[1], pair[0]))
        return model.spheres[i].label
    _, i = min((edge_distance(s, x), i) for i, s in enumerate(model.spheres))
    return model.spheres[i].label


def classify_batch(model: SphereCoverModel, Xn: np.ndarray) -> np.ndarray:
    """Vectorized Rule 1 / Rule 2 over rows already in model space.

    Matches ``classify`` exactly, including the lowest-index tie-break
    (argmin returns the first minimum).
    """
    if not model.spheres:
        raise UnusableModelError("model retained zero spheres")
    Xn = np.atleast_2d(Xn)
    n = Xn.shape[0]
    S = len(model.spheres)
    D = np.empty((n, S))
    for j, s in enumerate(model.spheres):
        D[:, j] = _distances_to(Xn, s.center)
    radii = np.array([s.radius for s in model.spheres])
    covered = D < radii
    rule1 = np.where(covered, D, np.inf).argmin(axis=1)
    rule2 = (D - radii).argmin(axis=1)
    pick = np.where(covered.any(axis=1), rule1, rule2)
    labels = np.array([s.label for s in model.spheres], dtype=object)
    return labels[pick]


def predict(model: SphereCoverModel, X_raw: np.ndarray) -> np.ndarray:
    """Classify raw full-width vectors (projection + normalization included)."""
    return classify_batch(model, model.prepare(X_raw))


def model_to_dict(model: SphereCoverModel, attribute_names=None) -> dict:
    """JSON-ready document; infinite radii encode as the string "inf"."""
    doc = {
        "alpha": model.alpha,
        "attribute_subset": [int(i) for i in model.attribute_subset],
        "normalization": {
            "min": [float(v) for v in model.norm_stats.minimum],
            "max": [float(v) for v in model.norm_stats.maximum],
        },
        "spheres": [
            {
                "label": s.label,
                "center": [float(v) for v in s.center],
                "radius": "inf" if math.isinf(s.radius) else float(s.radius),
                "member_count": int(s.member_count),
                "border_index": None if b is None else int(b),
            }
            for s, b in zip(model.spheres, model.border_indices)
        ],
    }
    if attribute_names is not None:
        doc["attributes"] = list(attribute_names)
    return doc


def model_from_dict(doc: dict) -> SphereCoverModel:
    """Inverse of :func:`model_to_dict`; member indices are not restored."""
    spheres = []
    borders = []
    for sd in doc["spheres"]:
        radius = math.inf if sd["radius"] == "inf" else float(sd["radius"])
        spheres.append(
            Sphere(sd["label"], np.array(sd["center"], dtype=float), radius,
                   None, int(sd["member_count"]))
        )
        borders.append(None if sd["border_index"] is None else int(sd["border_index"]))
    stats = NormalizationStats(
        np.array(doc["normalization"]["min"], dtype=float),
        np.array(doc["normalization"]["max"], dtype=float),
    )
    return SphereCoverModel(
        tuple(spheres),
        int(doc["alpha"]),
        tuple(int(i) for i in doc["attribute_subset"]),
        stats,
        tuple(borders),
    )


def model_to_json(model: SphereCoverModel, attribute_names=None) -> str:
    return json.dumps(model_to_dict(model, attribute_names), sort_keys=True, indent=2)


def remap_attribute_subset(model: SphereCoverModel, column_map) -> SphereCoverModel:
    """Reindex the model's columns through ``column_map`` (filter composition)."""
    column_map = list(column_map)
    return replace(
        model,
        attribute_subset=tuple(int(column_map[i]) for i in model.attribute_subset),
    )
