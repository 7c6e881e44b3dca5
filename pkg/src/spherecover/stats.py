"""Rank-based comparison of classifiers across datasets.

Accuracies rank per dataset (rank 1 = best, ties get midranks); the
Friedman chi-squared statistic and its Iman-Davenport F correction test
whether mean ranks differ, the Nemenyi critical difference bounds which
pairwise gaps matter, and the critical-difference diagram draws mean
ranks on a linear axis with bars joining cliques of indistinguishable
classifiers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import special
from scipy.stats import rankdata

from .errors import DataFormatError

# Nemenyi constants: studentized range quantiles (infinite df) / sqrt(2),
# two-tailed, for 2..10 classifiers.
_Q_TABLE = {
    0.05: (1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164),
    0.10: (1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920),
}


@dataclass(frozen=True)
class AccuracyMatrix:
    """Datasets x classifiers accuracy table (fractions or percents)."""

    datasets: tuple[str, ...]
    classifiers: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        n, k = values.shape
        if n != len(self.datasets) or k != len(self.classifiers):
            raise ValueError("label lengths do not match the value grid")
        if n < 2 or k < 2:
            raise ValueError("need at least 2 datasets and 2 classifiers")
        if not np.all(np.isfinite(values)):
            raise ValueError("accuracy entries must be finite")


@dataclass(frozen=True)
class RankSummary:
    """Per-dataset ranks plus the Friedman / Iman-Davenport statistics."""

    classifiers: tuple[str, ...]
    per_dataset_ranks: np.ndarray
    mean_ranks: np.ndarray
    chi2_f: float
    iman_davenport_f: float
    df_between: int
    df_error: int
    p_value: float

    @property
    def n_datasets(self) -> int:
        return self.per_dataset_ranks.shape[0]

    @property
    def n_classifiers(self) -> int:
        return len(self.classifiers)


def f_distribution_sf(f: float, d1: int, d2: int) -> float:
    """P(F >= f) for an F(d1, d2) variate via the regularized incomplete
    beta function (stable for the tiny tail probabilities reported here)."""
    if f <= 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    x = d2 / (d2 + d1 * f)
    return float(special.betainc(d2 / 2.0, d1 / 2.0, x))


def friedman_test(matrix: AccuracyMatrix) -> RankSummary:
    """Rank classifiers per dataset and test equality of mean ranks.

    Higher accuracy gets the better (smaller) rank; exact ties share the
    midrank, so each dataset's ranks always sum to k(k+1)/2.  A matrix
    with no rank variation yields chi-squared = F = 0 rather than an error.
    """
    values = matrix.values
    n, k = values.shape
    ranks = np.vstack([rankdata(-row, method="average") for row in values])
    mean_ranks = ranks.mean(axis=0)
    chi2 = (12.0 * n / (k * (k + 1))) * (
        float((mean_ranks**2).sum()) - k * (k + 1) ** 2 / 4.0
    )
    chi2 = max(chi2, 0.0)  # guard tiny negative rounding on degenerate input
    denom = n * (k - 1) - chi2
    if denom <= 0:
        f_stat = math.inf
    else:
        f_stat = (n - 1) * chi2 / denom
    df1, df2 = k - 1, (k - 1) * (n - 1)
    return RankSummary(
        matrix.classifiers, ranks, mean_ranks, chi2, f_stat, df1, df2,
        f_distribution_sf(f_stat, df1, df2),
    )


def nemenyi_cd(k: int, n: int, level: float = 0.05) -> float:
    """Critical mean-rank difference q_a * sqrt(k(k+1) / 6n)."""
    if level not in _Q_TABLE:
        raise ValueError(f"level must be one of {sorted(_Q_TABLE)}")
    row = _Q_TABLE[level]
    if not 2 <= k <= 1 + len(row):
        raise ValueError(f"k={k} outside the embedded table (2..{1 + len(row)}); extend the table")
    if n < 1:
        raise ValueError("n must be positive")
    return row[k - 2] * math.sqrt(k * (k + 1) / (6.0 * n))


def bonferroni_dunn_z(mean_rank_i: float, mean_rank_j: float, k: int, n: int) -> float:
    """Standard-normal statistic for one rank comparison against a control.

    The caller compares against the normal critical value at
    level / (k - 1) when running k - 1 comparisons.
    """
    return (mean_rank_i - mean_rank_j) / math.sqrt(k * (k + 1) / (6.0 * n))


def cliques(mean_ranks, cd: float) -> tuple[tuple[int, ...], ...]:
    """Maximal groups of classifiers whose pairwise rank gaps all fall
    below the critical difference.

    Computed as maximal intervals over the rank ordering; only groups of
    two or more are reported (singletons need no bar).  Returned as tuples
    of original classifier indices, best rank first.
    """
    mean_ranks = np.asarray(mean_ranks, dtype=float)
    order = np.argsort(mean_ranks, kind="stable")
    sorted_ranks = mean_ranks[order]
    k = len(order)
    intervals = []
    for i in range(k):
        j = i
        while j + 1 < k and sorted_ranks[j + 1] - sorted_ranks[i] < cd:
            j += 1
        intervals.append((i, j))
    maximal = [
        (i, j)
        for (i, j) in intervals
        if j > i and not any((a <= i and j <= b and (a, b) != (i, j)) for a, b in intervals)
    ]
    seen = set()
    out = []
    for i, j in maximal:
        key = (i, j)
        if key not in seen:
            seen.add(key)
            out.append(tuple(int(order[t]) for t in range(i, j + 1)))
    return tuple(out)


def read_accuracy_matrix(paths) -> AccuracyMatrix:
    """Load one or more matrix CSVs (dataset name first, classifier header)
    and stack their rows; all files must share the same header."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    classifiers = None
    datasets: list[str] = []
    rows: list[list[float]] = []
    for path in paths:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DataFormatError(f"{path}: empty file") from None
            if len(header) < 3:
                raise DataFormatError(f"{path}: need at least two classifier columns")
            names = tuple(header[1:])
            if classifiers is None:
                classifiers = names
            elif names != classifiers:
                raise DataFormatError(f"{path}: classifier header differs from the first file")
            for lineno, row in enumerate(reader, start=2):
                if len(row) != len(header):
                    raise DataFormatError(
                        f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}"
                    )
                datasets.append(row[0])
                try:
                    rows.append([float(v) for v in row[1:]])
                except ValueError:
                    raise DataFormatError(
                        f"{path}: line {lineno}: non-numeric accuracy entry"
                    ) from None
    if not rows:
        raise DataFormatError("no accuracy rows found")
    try:
        return AccuracyMatrix(tuple(datasets), classifiers, np.array(rows))
    except ValueError as exc:
        raise DataFormatError(str(exc)) from None


def write_accuracy_matrix(matrix: AccuracyMatrix, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", *matrix.classifiers])
        for name, row in zip(matrix.datasets, matrix.values):
            writer.writerow([name, *[repr(float(v)) for v in row]])


def rank_report(summary: RankSummary, cd: float, level: float) -> str:
    """Plain-text ranking report (deterministic formatting)."""
    lines = ["classifier mean ranks (1 = best):"]
    order = np.argsort(summary.mean_ranks, kind="stable")
    for i in order:
        lines.append(f"  {summary.classifiers[i]:<24s} {summary.mean_ranks[i]:.4f}")
    lines.append("")
    lines.append(f"friedman chi2 = {summary.chi2_f:.4f}")
    lines.append(
        f"iman-davenport F = {summary.iman_davenport_f:.4f} "
        f"(df {summary.df_between}, {summary.df_error})"
    )
    lines.append(f"p-value = {summary.p_value:.6g}")
    lines.append(f"critical difference (level {level:g}) = {cd:.4f}")
    groups = cliques(summary.mean_ranks, cd)
    if groups:
        lines.append("cliques (no significant difference within):")
        for group in groups:
            names = ", ".join(summary.classifiers[i] for i in group)
            lines.append(f"  {{{names}}}")
    else:
        lines.append("cliques: none (all pairwise gaps exceed the critical difference)")
    return "\n".join(lines) + "\n"


def render_cd_text(summary: RankSummary, cd: float, width: int = 61) -> str:
    """Fixed-width fallback of the critical-difference diagram."""
    k = summary.n_classifiers
    span = max(k - 1, 1)

    def col(rank: float) -> int:
        return int(round((rank - 1.0) / span * (width - 1)))

    ticks = [" "] * width
    axis = ["-"] * width
    for r in range(1, k + 1):
        c = col(float(r))
        axis[c] = "+"
        label = str(r)
        for off, ch in enumerate(label):
            if c + off < width:
                ticks[c + off] = ch
    lines = ["".join(ticks), "".join(axis)]
    order = np.argsort(summary.mean_ranks, kind="stable")
    for i in order:
        c = col(float(summary.mean_ranks[i]))
        lines.append(" " * c + f"| {summary.classifiers[i]} ({summary.mean_ranks[i]:.3f})")
    for group in cliques(summary.mean_ranks, cd):
        lo = col(float(min(summary.mean_ranks[i] for i in group)))
        hi = col(float(max(summary.mean_ranks[i] for i in group)))
        lines.append(" " * lo + "=" * max(hi - lo + 1, 1))
    lines.append(f"CD = {cd:.4f}")
    return "\n".join(lines) + "\n"


def render_cd_diagram(summary: RankSummary, cd: float, path) -> list[Path]:
    """Draw the critical-difference diagram as SVG plus a text fallback.

    Output is byte-deterministic for fixed input: the SVG id salt is
    pinned and no timestamp is embedded.  Returns the written paths.
    """
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    path = Path(path)
    k = summary.n_classifiers
    order = np.argsort(summary.mean_ranks, kind="stable")
    groups = cliques(summary.mean_ranks, cd)

    left = [int(i) for i in order[: (k + 1) // 2]]
    right = [int(i) for i in order[(k + 1) // 2:]]
    rows = max(len(left), len(right))
    clique_depth = 0.35 * (len(groups) + 1)
    label_top = -clique_depth - 0.4
    height_units = 1.6 + clique_depth + 0.6 * rows

    with plt.rc_context({"svg.hashsalt": "spherecover", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(8.0, 0.45 * height_units + 1.2))
        ax.set_xlim(0.5, k + 0.5)
        ax.set_ylim(-clique_depth - 0.6 * rows - 1.0, 1.6)
        ax.axis("off")

        ax.hlines(0.0, 1.0, float(k), color="black", lw=1.2)
        for r in range(1, k + 1):
            ax.vlines(float(r), 0.0, 0.18, color="black", lw=1.0)
            ax.text(float(r), 0.3, str(r), ha="center", va="bottom", fontsize=9)

        # critical-difference ruler
        ax.hlines(1.1, 1.0, 1.0 + cd, color="black", lw=1.6)
        ax.vlines([1.0, 1.0 + cd], 1.0, 1.2, color="black", lw=1.0)
        ax.text(1.0 + cd / 2.0, 1.25, f"CD = {cd:.4f}", ha="center", va="bottom", fontsize=9)

        for depth, group in enumerate(groups):
            y = -0.35 * (depth + 1)
            lo = float(min(summary.mean_ranks[i] for i in group))
            hi = float(max(summary.mean_ranks[i] for i in group))
            ax.hlines(y, lo - 0.03, hi + 0.03, color="black", lw=3.5)

        for slot, i in enumerate(left):
            y = label_top - 0.6 * slot
            r = float(summary.mean_ranks[i])
            ax.plot([r, r, 0.55], [0.0, y, y], color="black", lw=0.9)
            ax.text(0.52, y, f"{summary.classifiers[i]} ({r:.3f})",
                    ha="right", va="center", fontsize=9)
        for slot, i in enumerate(reversed(right)):
            y = label_top - 0.6 * (len(right) - 1 - slot)
            r = float(summary.mean_ranks[i])
            ax.plot([r, r, k + 0.45], [0.0, y, y], color="black", lw=0.9)
            ax.text(k + 0.48, y, f"({r:.3f}) {summary.classifiers[i]}",
                    ha="left", va="center", fontsize=9)

        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    text_path = path.with_suffix(".txt")
    text_path.write_text(render_cd_text(summary, cd), encoding="utf-8")
    return [path, text_path]
