"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria execute.  Tolerances are pinned in the assertions.
"""

import time

import numpy as np
import pytest

from spherecover.cli import main as cli_main
from spherecover.data import SyntheticSpec, gen_synthetic, save_dataset, split
from spherecover.ensemble import (
    build_resampling_ensemble,
    build_subspace_ensemble,
    predict as ensemble_predict,
    resampling_rounds,
    uncovered_cases,
)
from spherecover.evaluation import aggregate_bv, bv_point_stats, select_alpha
from spherecover.filters import chi2_scores, infogain_scores, relief_scores
from spherecover.rsc import build_rsc, predict as rsc_predict
from spherecover.seeding import derive_seed
from spherecover.stats import AccuracyMatrix, cliques, friedman_test, nemenyi_cd

from conftest import SUBSPACE_ACC, SUBSPACE_NAMES, make_dataset, random_dataset
from test_filters import oracle_chi2, oracle_infogain


def _report(criterion, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_critical_difference_reproduction():
    cd5 = nemenyi_cd(5, 16, 0.10)
    cd10 = nemenyi_cd(10, 16, 0.10)
    ok = abs(cd5 - 1.375) <= 0.001 and abs(cd10 - 3.1257) <= 0.001
    _report(1, ok, f"CD(5,16,0.10)={cd5:.4f} (want 1.375), CD(10,16,0.10)={cd10:.4f} (want 3.1257)")


def test_criterion_2_friedman_reproduction():
    matrix = AccuracyMatrix(tuple(f"d{i}" for i in range(16)), SUBSPACE_NAMES, SUBSPACE_ACC)
    summary = friedman_test(matrix)
    want_ranks = np.array([2.09, 1.53, 4.00, 3.50, 3.88])
    ranks_ok = np.all(np.abs(summary.mean_ranks - want_ranks) <= 0.01)
    f_ok = abs(summary.iman_davenport_f - 14.97) <= 0.5
    p_ok = summary.p_value < 1e-5
    groups = cliques(summary.mean_ranks, 1.375)
    named = [frozenset(SUBSPACE_NAMES[i] for i in g) for g in groups]
    cliques_ok = sorted(named, key=len) == [
        frozenset({"aRSSE", "RotF"}),
        frozenset({"RandS", "RandF", "RandC"}),
    ]
    ok = ranks_ok and f_ok and p_ok and cliques_ok
    _report(
        2, ok,
        f"mean ranks {np.round(summary.mean_ranks, 4).tolist()}, "
        f"F={summary.iman_davenport_f:.4f}, p={summary.p_value:.3g}, "
        f"cliques={[sorted(g) for g in named]}",
    )


def test_criterion_3_bias_variance_bookkeeping():
    started = time.perf_counter()
    rng = np.random.default_rng(20240331)
    labels_pool = ["A", "B", "C", "D", "E"]
    two_class_batch = []
    every_stat = []
    worst_instance = 0.0
    worst_report = 0.0
    for _ in range(10_000):
        n_classes = int(rng.integers(2, 6))
        s = int(rng.integers(2, 51))
        labels = labels_pool[:n_classes]
        preds = [labels[int(rng.integers(n_classes))] for _ in range(s)]
        y = labels[int(rng.integers(n_classes))]
        st = bv_point_stats(preds, y)
        every_stat.append(st)
        assert 0.0 <= st.variance <= 1.0 and 0.0 <= st.per_set_loss <= 1.0
        assert st.bias in (0, 1) and st.c2 == (1 if st.bias == 0 else -1)
        if n_classes == 2:
            gap = abs(st.per_set_loss - (st.bias + st.c2 * st.variance))
            worst_instance = max(worst_instance, gap)
            two_class_batch.append(st)
            if len(two_class_batch) == 25:
                report = aggregate_bv(two_class_batch, s)
                worst_report = max(
                    worst_report,
                    abs(report.average_error - (report.bias + report.unbiased_variance
                                                - report.biased_variance)),
                    abs(report.net_variance - (report.unbiased_variance
                                               - report.biased_variance)),
                )
                two_class_batch = []
    # bookkeeping identity holds for any mix of classes
    mixed = aggregate_bv(every_stat, 2)
    worst_report = max(
        worst_report,
        abs(mixed.net_variance - (mixed.unbiased_variance - mixed.biased_variance)),
    )
    elapsed = time.perf_counter() - started
    ok = worst_instance <= 1e-12 and worst_report <= 1e-12 and elapsed < 5.0
    _report(
        3, ok,
        f"10k lists: worst per-instance gap {worst_instance:.2e}, "
        f"worst report gap {worst_report:.2e}, {elapsed:.1f}s",
    )


def test_criterion_4_proper_cover_property():
    started = time.perf_counter()
    rng = np.random.default_rng(77)
    cover_failures = 0
    purity_failures = 0
    for trial in range(200):
        n_classes = int(rng.integers(2, 5))
        n = int(rng.integers(n_classes + 1, 101))
        m = int(rng.integers(1, 11))
        d = random_dataset(rng, n, m, n_classes)
        truth = np.array(d.y, dtype=object)
        models = []
        for alpha in (0, 1):
            model = build_rsc(d, alpha, seed=trial)
            models.append((alpha, model))
            preds = rsc_predict(model, d.X)
            if not (np.all(preds == truth) and not uncovered_cases(model, d)):
                cover_failures += 1
        models.append((int(rng.integers(2, 9)), None))
        for alpha, model in models:
            if model is None:
                model = build_rsc(d, alpha, seed=trial + 1)
            prepared = model.prepare(d.X)
            for s in model.spheres:
                dist = np.sqrt(((prepared - s.center) ** 2).sum(axis=1))
                if np.any((dist < s.radius) & (truth != s.label)):
                    purity_failures += 1
    elapsed = time.perf_counter() - started
    ok = cover_failures == 0 and purity_failures == 0 and elapsed < 30.0
    _report(
        4, ok,
        f"200 datasets: {cover_failures} cover/accuracy failures, "
        f"{purity_failures} impure spheres, {elapsed:.1f}s",
    )


def test_criterion_5_ensemble_vs_base():
    started = time.perf_counter()
    ensemble_means = []
    single_means = []
    wins = 0
    for seed in range(10):
        d = gen_synthetic(SyntheticSpec("twonorm", 20, seed=derive_seed(seed, "data")), 1300)
        train, test = split(d, 1000 / 1300, seed=derive_seed(seed, "split"))
        truth = np.array(test.y, dtype=object)
        alpha = select_alpha(train, range(0, 31), cv_k=10, seed=derive_seed(seed, "select"))
        e = build_resampling_ensemble(train, alpha, 25, seed=derive_seed(seed, "ensemble"))
        acc_e = float(np.mean(ensemble_predict(e, test.X, derive_seed(seed, "vote")) == truth))
        singles = []
        for j in range(25):
            m = build_rsc(train, alpha, derive_seed(seed, "single", j))
            singles.append(float(np.mean(rsc_predict(m, test.X) == truth)))
        acc_s = float(np.mean(singles))
        ensemble_means.append(acc_e)
        single_means.append(acc_s)
        wins += acc_e >= acc_s
    mean_e, mean_s = float(np.mean(ensemble_means)), float(np.mean(single_means))
    elapsed = time.perf_counter() - started
    ok = mean_e >= mean_s - 0.005 and wins >= 7 and elapsed < 120.0
    _report(
        5, ok,
        f"resampling ensemble {mean_e:.4f} vs base mean {mean_s:.4f}, "
        f"wins {wins}/10, {elapsed:.1f}s",
    )


def test_criterion_6_subspace_benefit():
    started = time.perf_counter()
    subspace_accs = []
    single_accs = []
    for seed in range(10):
        d = gen_synthetic(SyntheticSpec("ringnorm", 20, seed=derive_seed(seed, "data")), 1500)
        train, test = split(d, 1000 / 1500, seed=derive_seed(seed, "split"))
        truth = np.array(test.y, dtype=object)
        e = build_subspace_ensemble(train, 0, 10, 100, seed=derive_seed(seed, "rsse"))
        subspace_accs.append(
            float(np.mean(ensemble_predict(e, test.X, derive_seed(seed, "vote")) == truth))
        )
        m = build_rsc(train, 0, derive_seed(seed, "single"))
        single_accs.append(float(np.mean(rsc_predict(m, test.X) == truth)))
    mean_sub, mean_single = float(np.mean(subspace_accs)), float(np.mean(single_accs))
    elapsed = time.perf_counter() - started
    ok = mean_sub >= mean_single + 0.01 and mean_sub >= 0.90 and elapsed < 180.0
    _report(
        6, ok,
        f"subspace {mean_sub:.4f} vs single {mean_single:.4f}, {elapsed:.1f}s",
    )


def test_criterion_7_filter_oracle_equivalence():
    rng = np.random.default_rng(404)
    toy = random_dataset(rng, 8, 3, 2)
    chi2_gap = float(np.abs(chi2_scores(toy, 4).scores - oracle_chi2(toy, 4)).max())
    ig_gap = float(np.abs(infogain_scores(toy, 4).scores - oracle_infogain(toy, 4)).max())
    hand = make_dataset([[0.0], [0.1], [0.9], [1.0]], ["A", "A", "B", "B"])
    relief_value = float(relief_scores(hand, sample_count=4, seed=0).scores[0])
    ok = chi2_gap <= 1e-12 and ig_gap <= 1e-12 and relief_value == pytest.approx(0.7, abs=1e-12)
    _report(
        7, ok,
        f"chi2 gap {chi2_gap:.2e}, infogain gap {ig_gap:.2e}, "
        f"relief hand example {relief_value} (required 0.7)",
    )


def test_criterion_8_determinism_end_to_end(tmp_path):
    d = gen_synthetic(SyntheticSpec("twonorm", 5, seed=12), 90)
    data = tmp_path / "data.csv"
    save_dataset(d, data)
    config = tmp_path / "config.yaml"
    config.write_text(
        "models:\n"
        "  - {name: base, scheme: single, alpha: 1}\n"
        "  - {name: booster, scheme: resample, alpha: 1, ensemble_size: 3}\n"
    )
    for sub in ("first", "second"):
        code = cli_main([
            "experiment", "--data", str(data), "--config", str(config),
            "--runs", "2", "--seed", "77", "--save-models", "--out", str(tmp_path / sub),
        ])
        assert code == 0
    identical = True
    compared = []
    for name in ("runs.csv", "matrix.csv"):
        a = (tmp_path / "first" / name).read_bytes()
        b = (tmp_path / "second" / name).read_bytes()
        compared.append(name)
        identical &= a == b
    firsts = sorted((tmp_path / "first" / "models").iterdir())
    seconds = sorted((tmp_path / "second" / "models").iterdir())
    identical &= [p.name for p in firsts] == [p.name for p in seconds]
    for a, b in zip(firsts, seconds):
        compared.append(a.name)
        identical &= a.read_bytes() == b.read_bytes()
    _report(8, identical, f"byte-compared {len(compared)} result files (incl. serialized models)")


def test_criterion_9_resampling_structural_invariant():
    started = time.perf_counter()
    rng = np.random.default_rng(55)
    size_violations = 0
    for trial in range(5):
        d = random_dataset(rng, int(rng.integers(12, 40)), 3, 2)
        sizes = [len(w) for _, w in resampling_rounds(d, 1, 10, seed=trial)]
        if sizes != [len(d)] * 10:
            size_violations += 1
    single = make_dataset([[0.1], [0.5], [0.9]], ["A", "A", "A"])
    passthrough = all(
        np.array_equal(w.X, single.X) and w.y == single.y
        for _, w in resampling_rounds(single, 1, 10, seed=3)
    )
    elapsed = time.perf_counter() - started
    ok = size_violations == 0 and passthrough and elapsed < 10.0
    _report(
        9, ok,
        f"working-set sizes constant on 5 datasets ({size_violations} violations), "
        f"single-class pass-through={passthrough}, {elapsed:.1f}s",
    )
