import math

import numpy as np
import pytest

from spherecover.errors import DataFormatError
from spherecover.stats import (
    AccuracyMatrix,
    bonferroni_dunn_z,
    cliques,
    f_distribution_sf,
    friedman_test,
    nemenyi_cd,
    rank_report,
    read_accuracy_matrix,
    render_cd_diagram,
    render_cd_text,
    write_accuracy_matrix,
    _Q_TABLE,
)

from conftest import SUBSPACE_ACC, SUBSPACE_NAMES


def subspace_matrix():
    return AccuracyMatrix(
        tuple(f"d{i}" for i in range(16)), SUBSPACE_NAMES, SUBSPACE_ACC
    )


def oracle_midranks_desc(row):
    """Rank 1 = largest value; ties share the average of their positions."""
    row = list(row)
    ranks = [0.0] * len(row)
    for i, v in enumerate(row):
        larger = sum(1 for w in row if w > v)
        equal = sum(1 for w in row if w == v)
        # positions larger+1 .. larger+equal, averaged
        ranks[i] = larger + (equal + 1) / 2
    return ranks


class TestFriedman:
    def test_identical_columns_give_zero_statistic(self):
        m = AccuracyMatrix(("d1", "d2"), ("c1", "c2"), np.array([[0.5, 0.5], [0.7, 0.7]]))
        s = friedman_test(m)
        np.testing.assert_allclose(s.mean_ranks, [1.5, 1.5])
        assert s.chi2_f == 0.0 and s.iman_davenport_f == 0.0
        assert s.p_value == 1.0

    def test_subspace_study_mean_ranks(self):
        s = friedman_test(subspace_matrix())
        np.testing.assert_allclose(s.mean_ranks, [2.09, 1.53, 4.00, 3.50, 3.88], atol=0.01)

    def test_subspace_study_f_statistic(self):
        s = friedman_test(subspace_matrix())
        assert s.iman_davenport_f == pytest.approx(14.97, abs=0.5)
        assert s.p_value < 1e-5
        assert (s.df_between, s.df_error) == (4, 60)

    def test_ranks_sum_per_dataset(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n, k = int(rng.integers(2, 10)), int(rng.integers(2, 8))
            values = rng.integers(0, 4, size=(n, k)) / 4  # force frequent ties
            m = AccuracyMatrix(
                tuple(f"d{i}" for i in range(n)),
                tuple(f"c{j}" for j in range(k)),
                values,
            )
            s = friedman_test(m)
            np.testing.assert_allclose(
                s.per_dataset_ranks.sum(axis=1), [k * (k + 1) / 2] * n, atol=1e-12
            )

    def test_midranks_match_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            row = rng.integers(0, 5, size=6) / 5
            m = AccuracyMatrix(
                ("a", "b"),
                tuple(f"c{j}" for j in range(6)),
                np.vstack([row, rng.random(6)]),
            )
            s = friedman_test(m)
            np.testing.assert_allclose(s.per_dataset_ranks[0], oracle_midranks_desc(row))

    def test_column_permutation_equivariance(self):
        m = subspace_matrix()
        s = friedman_test(m)
        perm = [3, 0, 4, 1, 2]
        mp = AccuracyMatrix(
            m.datasets, tuple(m.classifiers[i] for i in perm), m.values[:, perm]
        )
        sp = friedman_test(mp)
        np.testing.assert_allclose(sp.mean_ranks, s.mean_ranks[perm])
        assert sp.iman_davenport_f == pytest.approx(s.iman_davenport_f)

    def test_monotone_transform_invariance(self):
        m = subspace_matrix()
        transformed = AccuracyMatrix(m.datasets, m.classifiers, np.exp(m.values / 25.0))
        a, b = friedman_test(m), friedman_test(transformed)
        np.testing.assert_allclose(a.per_dataset_ranks, b.per_dataset_ranks)
        assert a.iman_davenport_f == pytest.approx(b.iman_davenport_f)

    def test_matrix_validation(self):
        with pytest.raises(ValueError):
            AccuracyMatrix(("d1",), ("c1", "c2"), np.array([[0.5, 0.5]]))
        with pytest.raises(ValueError):
            AccuracyMatrix(("d1", "d2"), ("c1", "c2"), np.array([[0.5, np.nan], [0.1, 0.2]]))


class TestNemenyiCd:
    def test_five_classifiers_sixteen_datasets(self):
        assert nemenyi_cd(5, 16, 0.10) == pytest.approx(1.375, abs=0.001)

    def test_ten_classifiers_sixteen_datasets(self):
        assert nemenyi_cd(10, 16, 0.10) == pytest.approx(3.1257, abs=0.001)

    def test_quadrupling_n_halves_cd(self):
        assert nemenyi_cd(4, 48, 0.05) == pytest.approx(nemenyi_cd(4, 12, 0.05) / 2)

    def test_out_of_table_k(self):
        with pytest.raises(ValueError, match="extend"):
            nemenyi_cd(11, 16, 0.05)
        with pytest.raises(ValueError):
            nemenyi_cd(1, 16, 0.05)

    def test_unknown_level(self):
        with pytest.raises(ValueError):
            nemenyi_cd(5, 16, 0.01)

    def test_monotone_in_k_and_n(self):
        for level in (0.05, 0.10):
            cds = [nemenyi_cd(k, 16, level) for k in range(2, 11)]
            assert all(a < b for a, b in zip(cds, cds[1:]))
            cds_n = [nemenyi_cd(5, n, level) for n in (8, 16, 32, 64)]
            assert all(a > b for a, b in zip(cds_n, cds_n[1:]))

    def test_table_against_studentized_range(self):
        # embedded constants are 3-decimal roundings of q(1-level, k, inf)/sqrt(2)
        from scipy.stats import studentized_range

        for level, row in _Q_TABLE.items():
            for k, q in zip(range(2, 11), row):
                exact = studentized_range.ppf(1 - level, k, np.inf) / math.sqrt(2)
                assert q == pytest.approx(exact, abs=1e-3)


class TestBonferroniDunn:
    def test_equal_ranks_zero(self):
        assert bonferroni_dunn_z(2.5, 2.5, 5, 16) == 0.0

    def test_antisymmetry(self):
        z = bonferroni_dunn_z(1.53, 4.00, 5, 16)
        assert bonferroni_dunn_z(4.00, 1.53, 5, 16) == pytest.approx(-z)

    def test_subspace_study_value(self):
        z = bonferroni_dunn_z(1.53, 4.00, 5, 16)
        assert z == pytest.approx(-4.418, abs=0.005)


class TestCliques:
    def test_gap_beyond_cd_means_no_clique(self):
        assert cliques([1.0, 3.0], 1.5) == ()

    def test_all_within_cd_is_one_clique(self):
        assert cliques([1.0, 1.5, 2.0], 1.5) == ((0, 1, 2),)

    def test_subspace_study_two_cliques(self):
        s = friedman_test(subspace_matrix())
        groups = cliques(s.mean_ranks, nemenyi_cd(5, 16, 0.10))
        named = [tuple(SUBSPACE_NAMES[i] for i in g) for g in groups]
        assert named == [("RotF", "aRSSE"), ("RandF", "RandC", "RandS")]

    def test_adding_an_exact_tie_preserves_gaps(self):
        base = [1.0, 2.0, 3.2]
        with_tie = [1.0, 2.0, 3.2, 2.0]
        cd = 1.5
        base_groups = cliques(base, cd)
        tied_groups = cliques(with_tie, cd)
        # pairwise relations among the original three are unchanged
        flat = {frozenset(g) & {0, 1, 2} for g in tied_groups}
        assert {frozenset(g) for g in base_groups} <= {f for f in flat if len(f) > 1} | {
            frozenset(g) for g in tied_groups
        }


class TestFSurvival:
    def test_agrees_with_scipy(self):
        from scipy.stats import f as fdist

        rng = np.random.default_rng(5)
        for _ in range(25):
            d1, d2 = int(rng.integers(1, 10)), int(rng.integers(2, 80))
            x = float(rng.random() * 20)
            assert f_distribution_sf(x, d1, d2) == pytest.approx(
                fdist.sf(x, d1, d2), rel=1e-10, abs=1e-300
            )

    def test_edge_cases(self):
        assert f_distribution_sf(0.0, 3, 10) == 1.0
        assert f_distribution_sf(math.inf, 3, 10) == 0.0


class TestMatrixIO:
    def test_round_trip(self, tmp_path):
        m = subspace_matrix()
        p = tmp_path / "m.csv"
        write_accuracy_matrix(m, p)
        back = read_accuracy_matrix(p)
        assert back.datasets == m.datasets and back.classifiers == m.classifiers
        np.testing.assert_array_equal(back.values, m.values)

    def test_stacking_multiple_files(self, tmp_path):
        m = subspace_matrix()
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_accuracy_matrix(
            AccuracyMatrix(m.datasets[:8], m.classifiers, m.values[:8]), p1
        )
        write_accuracy_matrix(
            AccuracyMatrix(m.datasets[8:], m.classifiers, m.values[8:]), p2
        )
        stacked = read_accuracy_matrix([p1, p2])
        np.testing.assert_array_equal(stacked.values, m.values)

    def test_header_mismatch_rejected(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        p1.write_text("dataset,c1,c2\nd1,0.5,0.6\nd2,0.3,0.1\n")
        p2.write_text("dataset,c1,c3\nd3,0.5,0.6\n")
        with pytest.raises(DataFormatError):
            read_accuracy_matrix([p1, p2])

    def test_malformed_matrix(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("dataset,c1,c2\nd1,0.5\n")
        with pytest.raises(DataFormatError, match="line 2"):
            read_accuracy_matrix(p)


class TestRendering:
    def test_svg_and_text_are_deterministic(self, tmp_path):
        s = friedman_test(subspace_matrix())
        cd = nemenyi_cd(5, 16, 0.10)
        target = tmp_path / "cd.svg"
        written = render_cd_diagram(s, cd, target)
        first = [p.read_bytes() for p in written]
        written = render_cd_diagram(s, cd, target)
        second = [p.read_bytes() for p in written]
        assert first == second

    def test_svg_is_svg11(self, tmp_path):
        s = friedman_test(subspace_matrix())
        target = tmp_path / "cd.svg"
        render_cd_diagram(s, nemenyi_cd(5, 16, 0.10), target)
        head = target.read_text()[:400]
        assert "SVG 1.1" in head and "<svg" in head

    def test_text_fallback_contents(self):
        s = friedman_test(subspace_matrix())
        text = render_cd_text(s, nemenyi_cd(5, 16, 0.10))
        for name in SUBSPACE_NAMES:
            assert name in text
        bar_lines = [ln for ln in text.splitlines() if set(ln.strip()) == {"="}]
        assert len(bar_lines) == 2  # two clique bars
        assert "CD =" in text

    def test_no_clique_bar_when_gap_exceeds_cd(self):
        m = AccuracyMatrix(
            ("d1", "d2", "d3"),
            ("good", "bad"),
            np.array([[0.9, 0.1], [0.8, 0.2], [0.7, 0.3]]),
        )
        s = friedman_test(m)
        text = render_cd_text(s, 0.5)
        bar_lines = [ln for ln in text.splitlines() if set(ln.strip()) == {"="}]
        assert bar_lines == []

    def test_unwritable_path_raises(self, tmp_path):
        s = friedman_test(subspace_matrix())
        with pytest.raises(OSError):
            render_cd_diagram(s, 1.0, tmp_path / "missing-dir" / "cd.svg")

    def test_rank_report_mentions_cliques(self):
        s = friedman_test(subspace_matrix())
        report = rank_report(s, nemenyi_cd(5, 16, 0.10), 0.10)
        assert "RotF, aRSSE" in report
        assert "critical difference" in report
