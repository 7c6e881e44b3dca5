"""Sphere cover ensembles and majority-vote fusion.

Three builders share the base classifier:

* ``simple``   -- independent members on the full training set, diversity
  coming only from the randomised covering order.
* ``resample`` -- boosting-flavoured: after each member, the border cases
  (those that halted sphere growth) leave the working set and are replaced
  by draws, with replacement, from the pool of border + uncovered +
  misclassified cases, re-weighting the hard region.
* ``subspace`` -- each member trains and classifies on its own random
  attribute subset of fixed size kappa.

Fusion is a plain majority vote; exact ties are resolved uniformly at
random from the tied labels under a caller-supplied tie seed.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .data import Dataset, fit_normalization
from .rsc import SphereCoverModel, build_rsc, model_from_dict, model_to_dict, predict as rsc_predict
from .seeding import derive_seed, generator

SCHEME_SIMPLE = "simple"
SCHEME_RESAMPLE = "resample"
SCHEME_SUBSPACE = "subspace"
ENSEMBLE_SCHEMES = (SCHEME_SIMPLE, SCHEME_RESAMPLE, SCHEME_SUBSPACE)


@dataclass(frozen=True)
class VoteTally:
    """Per-label vote counts plus the fused decision."""

    counts: dict[str, int]
    winner: str
    tie_broken: bool

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class EnsembleModel:
    """An ordered list of base models fused by majority vote."""

    scheme: str
    members: tuple[SphereCoverModel, ...]
    alpha: int
    kappa: int | None
    master_seed: int

    def __post_init__(self):
        if self.scheme not in ENSEMBLE_SCHEMES:
            raise ValueError(f"unknown ensemble scheme {self.scheme!r}")
        if not self.members:
            raise ValueError("ensemble needs at least one member")
        if self.scheme == SCHEME_SUBSPACE:
            if self.kappa is None:
                raise ValueError("subspace ensembles carry kappa")
            for m in self.members:
                if len(set(m.attribute_subset)) != self.kappa:
                    raise ValueError("member subset size differs from kappa")
        elif self.kappa is not None:
            raise ValueError("kappa only applies to the subspace scheme")

    @property
    def size(self) -> int:
        return len(self.members)


def build_simple_ensemble(train: Dataset, alpha: int, size: int, seed: int) -> EnsembleModel:
    """Majority-vote ensemble of independent members on the full data.

    Member j depends only on (train, alpha, hash(seed, j)), so building
    members concurrently gives the same ensemble as building sequentially.
    """
    if size < 1:
        raise ValueError("ensemble size must be >= 1")
    stats = fit_normalization(train)
    members = tuple(
        build_rsc(train, alpha, derive_seed(seed, "member", j), norm_stats=stats)
        for j in range(size)
    )
    return EnsembleModel(SCHEME_SIMPLE, members, int(alpha), None, int(seed))


def border_cases(model: SphereCoverModel, d: Dataset) -> set[int]:
    """Indices of the cases that halted sphere growth, restricted to ``d``.

    Infinite-radius spheres recorded no border; indices outside ``d`` are
    dropped (intersection semantics).
    """
    n = len(d)
    return {b for b in model.border_indices if b is not None and 0 <= b < n}


def uncovered_cases(model: SphereCoverModel, d: Dataset) -> set[int]:
    """Indices of ``d`` that no retained sphere strictly contains."""
    if not model.spheres:
        return set(range(len(d)))
    Z = model.prepare(d.X)
    covered = np.zeros(len(d), dtype=bool)
    for s in model.spheres:
        diff = Z - s.center
        covered |= np.sqrt((diff * diff).sum(axis=1)) < s.radius
    return set(int(i) for i in np.flatnonzero(~covered))


def misclassified_cases(model: SphereCoverModel, d_full: Dataset) -> set[int]:
    """Indices of ``d_full`` the model classifies incorrectly."""
    preds = rsc_predict(model, d_full.X)
    truth = np.array(d_full.y, dtype=object)
    return set(int(i) for i in np.flatnonzero(preds != truth))


def resampling_rounds(train: Dataset, alpha: int, size: int, seed: int):
    """Yield (member, working set) pairs for each resampling round.

    Round j trains on the current working multiset D_j, then produces
    D_{j+1} by deleting the border cases and appending an equal number of
    draws, with replacement, from the concatenation of border, uncovered
    (both from D_j) and misclassified cases (from the original training
    set).  |D_j| is therefore constant.  Exposed for diagnostics; the
    builder consumes it.
    """
    if size < 1:
        raise ValueError("ensemble size must be >= 1")
    stats = fit_normalization(train)
    current = train
    for j in range(size):
        member = build_rsc(current, alpha, derive_seed(seed, "member", j), norm_stats=stats)
        yield member, current
        if j == size - 1:
            break
        borders = sorted(border_cases(member, current))
        if not borders:
            continue  # nothing removed, nothing drawn
        uncovered = sorted(uncovered_cases(member, current))
        wrong = sorted(misclassified_cases(member, train))
        pool_X = np.concatenate([current.X[borders], current.X[uncovered], train.X[wrong]])
        pool_y = (
            [current.y[i] for i in borders]
            + [current.y[i] for i in uncovered]
            + [train.y[i] for i in wrong]
        )
        border_set = set(borders)
        keep = [i for i in range(len(current)) if i not in border_set]
        draws = generator(seed, "resample", j).integers(0, len(pool_y), size=len(borders))
        new_X = np.concatenate([current.X[keep], pool_X[draws]])
        new_y = tuple(current.y[i] for i in keep) + tuple(pool_y[int(p)] for p in draws)
        current = Dataset(current.attributes, new_X, new_y, current.class_domain)


def build_resampling_ensemble(train: Dataset, alpha: int, size: int, seed: int) -> EnsembleModel:
    """Border-case resampling ensemble (strictly sequential across members)."""
    members = tuple(member for member, _ in resampling_rounds(train, alpha, size, seed))
    return EnsembleModel(SCHEME_RESAMPLE, members, int(alpha), None, int(seed))


def build_subspace_ensemble(
    train: Dataset, alpha: int, kappa: int, size: int, seed: int
) -> EnsembleModel:
    """Random-subspace ensemble: kappa distinct attributes per member.

    Subsets are drawn uniformly without replacement and stored (sorted) in
    each member, which applies the same projection to test vectors.
    """
    if size < 1:
        raise ValueError("ensemble size must be >= 1")
    m = train.n_attributes
    if not 1 <= kappa <= m:
        raise ValueError(f"kappa={kappa} outside [1, {m}]")
    stats = fit_normalization(train)
    members = []
    for j in range(size):
        cols = np.sort(generator(seed, "subspace", j).choice(m, size=kappa, replace=False))
        members.append(
            build_rsc(
                train,
                alpha,
                derive_seed(seed, "member", j),
                attribute_subset=cols,
                norm_stats=stats.select(cols),
            )
        )
    return EnsembleModel(SCHEME_SUBSPACE, tuple(members), int(alpha), int(kappa), int(seed))


def _fuse(votes: list[str], tie_seed: int) -> tuple[str, VoteTally]:
    counts = Counter(votes)
    top = max(counts.values())
    tied = sorted(label for label, c in counts.items() if c == top)
    if len(tied) == 1:
        winner, broken = tied[0], False
    else:
        rng = generator(tie_seed, "tie")
        winner, broken = tied[int(rng.integers(len(tied)))], True
    return winner, VoteTally(dict(sorted(counts.items())), winner, broken)


def vote(ensemble: EnsembleModel, x, tie_seed: int) -> tuple[str, VoteTally]:
    """Majority vote over all members for one raw vector.

    Every member votes (through its own attribute subset); a member with
    zero spheres makes the whole ensemble unusable, keeping the
    tally-sums-to-L invariant intact.
    """
    x = np.asarray(x, dtype=float).reshape(1, -1)
    votes = [str(rsc_predict(member, x)[0]) for member in ensemble.members]
    return _fuse(votes, tie_seed)


def predict(ensemble: EnsembleModel, X_raw, vote_seed: int, return_tallies: bool = False):
    """Batch majority vote; tie seeds derive as hash(vote_seed, "tie", row)."""
    X_raw = np.atleast_2d(np.asarray(X_raw, dtype=float))
    ballots = [rsc_predict(member, X_raw) for member in ensemble.members]
    n = X_raw.shape[0]
    winners = np.empty(n, dtype=object)
    tallies = []
    for i in range(n):
        votes = [str(ballots[j][i]) for j in range(len(ballots))]
        winner, tally = _fuse(votes, derive_seed(vote_seed, "tie", i))
        winners[i] = winner
        if return_tallies:
            tallies.append(tally)
    if return_tallies:
        return winners, tallies
    return winners


def ensemble_to_dict(ensemble: EnsembleModel, attribute_names=None) -> dict:
    doc = {
        "scheme": ensemble.scheme,
        "L": ensemble.size,
        "alpha": ensemble.alpha,
        "master_seed": ensemble.master_seed,
        "members": [model_to_dict(m) for m in ensemble.members],
    }
    if ensemble.kappa is not None:
        doc["kappa"] = ensemble.kappa
    if attribute_names is not None:
        doc["attributes"] = list(attribute_names)
    return doc


def ensemble_from_dict(doc: dict) -> EnsembleModel:
    members = tuple(model_from_dict(md) for md in doc["members"])
    return EnsembleModel(
        doc["scheme"],
        members,
        int(doc["alpha"]),
        int(doc["kappa"]) if "kappa" in doc and doc["kappa"] is not None else None,
        int(doc["master_seed"]),
    )


def ensemble_to_json(ensemble: EnsembleModel, attribute_names=None) -> str:
    return json.dumps(ensemble_to_dict(ensemble, attribute_names), sort_keys=True, indent=2)
