"""Tests for dataset loaders, split plans, and synthetic generators."""

import numpy as np
import pytest

from nrrls import data, model
from nrrls.errors import (
    EmptyFileError,
    InsufficientClassSamplesError,
    InvalidRatioError,
    NonAscendingIndexError,
    ParseError,
)


class TestLoadDelimited:
    def test_label_mapping(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0.1,0.2,A\n0.3,0.4,B\n")
        ds = data.load_delimited(p, positive_label="A")
        np.testing.assert_array_equal(ds.y, [1, -1])
        np.testing.assert_allclose(ds.X, [[0.1, 0.2], [0.3, 0.4]])

    def test_header_skipped(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("f1,f2,label\n1,2,1\n3,4,0\n")
        ds = data.load_delimited(p, positive_label="1")
        assert ds.n == 2
        np.testing.assert_array_equal(ds.y, [1, -1])

    def test_counts_and_ratio(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,1\n2,1\n3,0\n")
        ds = data.load_delimited(p, positive_label="1")
        assert ds.n == 3
        assert ds.n_pos == 2 and ds.n_neg == 1
        assert ds.imbalance_ratio == 2.0

    def test_whitespace_separated(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("0.5 0.6 1\n0.7 0.8 0\n")
        ds = data.load_delimited(p, positive_label="1")
        assert ds.raw_dim == 2

    def test_label_column_position(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("M,1.5,2.5\nR,3.5,4.5\n")
        ds = data.load_delimited(p, label_column=0, positive_label="M")
        np.testing.assert_array_equal(ds.y, [1, -1])
        np.testing.assert_allclose(ds.X, [[1.5, 2.5], [3.5, 4.5]])

    def test_non_numeric_feature_located(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0.1,0.2,1\n0.3,oops,0\n")
        with pytest.raises(ParseError) as exc:
            data.load_delimited(p, positive_label="1")
        assert exc.value.row == 2 and exc.value.col == 2

    def test_nan_feature_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0.1,nan,1\n")
        with pytest.raises(ParseError) as exc:
            data.load_delimited(p, positive_label="1")
        assert exc.value.row == 1

    def test_empty_file(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("\n")
        with pytest.raises(EmptyFileError):
            data.load_delimited(p, positive_label="1")

    def test_ragged_row_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,2,1\n1,0\n")
        with pytest.raises(ParseError) as exc:
            data.load_delimited(p, positive_label="1")
        assert exc.value.row == 2


class TestLoadLibsvm:
    def test_sparse_line(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("+1 1:0.5 3:1.2\n")
        ds = data.load_libsvm(p, dim_hint=3)
        np.testing.assert_allclose(ds.X, [[0.5, 0.0, 1.2]])
        assert ds.y[0] == 1

    def test_label_only_line(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("-1\n+1 2:1.0\n")
        ds = data.load_libsvm(p)
        np.testing.assert_array_equal(ds.X[0], [0.0, 0.0])
        assert ds.y[0] == -1

    def test_zero_one_labels(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("0 1:1.0\n1 1:2.0\n")
        ds = data.load_libsvm(p)
        np.testing.assert_array_equal(ds.y, [-1, 1])

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        X = np.round(rng.normal(size=(12, 5)), 6)
        X[rng.random(X.shape) < 0.4] = 0.0
        y = np.where(rng.random(12) < 0.5, -1, 1)
        ds = data.Dataset(X=X, y=y.astype(np.int64), name="rt")
        p = tmp_path / "rt.svm"
        data.save_libsvm(ds, p)
        back = data.load_libsvm(p, dim_hint=5)
        np.testing.assert_array_equal(back.X, ds.X)
        np.testing.assert_array_equal(back.y, ds.y)

    def test_non_ascending_index(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("+1 2:1.0 1:2.0\n")
        with pytest.raises(NonAscendingIndexError):
            data.load_libsvm(p)

    def test_bad_label(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("3 1:1.0\n")
        with pytest.raises(ParseError):
            data.load_libsvm(p)

    def test_inf_value_rejected(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("+1 1:inf\n")
        with pytest.raises(ParseError):
            data.load_libsvm(p)

    def test_empty(self, tmp_path):
        p = tmp_path / "d.svm"
        p.write_text("# only a comment\n")
        with pytest.raises(EmptyFileError):
            data.load_libsvm(p)


def toy_dataset(n_neg, n_pos, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n_neg + n_pos, 3))
    y = np.concatenate([np.full(n_neg, -1), np.full(n_pos, 1)]).astype(np.int64)
    return data.Dataset(X=X, y=y, name="toy")


class TestSplits:
    def test_stratified_counts(self):
        ds = toy_dataset(6, 4)
        plan = data.make_splits(ds, runs=10, seed=1)
        for run in range(10):
            for fold in (0, 1):
                idx = plan.fold_indices(run, fold)
                assert (ds.y[idx] < 0).sum() == 3
                assert (ds.y[idx] > 0).sum() == 2

    def test_same_seed_identical(self):
        ds = toy_dataset(20, 10)
        a = data.make_splits(ds, runs=5, seed=42)
        b = data.make_splits(ds, runs=5, seed=42)
        np.testing.assert_array_equal(a.assignments, b.assignments)

    def test_partition_every_run(self):
        ds = toy_dataset(600, 400, seed=3)
        plan = data.make_splits(ds, runs=10, seed=0)
        for run in range(10):
            f0 = set(plan.fold_indices(run, 0).tolist())
            f1 = set(plan.fold_indices(run, 1).tolist())
            assert f0 | f1 == set(range(1000))
            assert not (f0 & f1)

    def test_stratification_many_shapes(self):
        rng = np.random.default_rng(4)
        for _ in range(500):
            n_neg = int(rng.integers(2, 40))
            n_pos = int(rng.integers(2, 40))
            ds = toy_dataset(n_neg, n_pos, seed=int(rng.integers(1 << 30)))
            plan = data.make_splits(ds, runs=1, seed=int(rng.integers(1 << 30)))
            for cls, total in ((-1, n_neg), (1, n_pos)):
                c0 = (ds.y[plan.fold_indices(0, 0)] == cls).sum()
                c1 = (ds.y[plan.fold_indices(0, 1)] == cls).sum()
                assert c0 + c1 == total
                assert abs(int(c0) - int(c1)) <= 1

    def test_insufficient_class(self):
        ds = toy_dataset(5, 1)
        with pytest.raises(InsufficientClassSamplesError):
            data.make_splits(ds)

    def test_export_triples(self, tmp_path):
        ds = toy_dataset(4, 4)
        plan = data.make_splits(ds, runs=2, seed=0)
        p = tmp_path / "splits.txt"
        plan.export(p)
        lines = p.read_text().splitlines()
        assert len(lines) == 2 * 8
        run, fold, idx = lines[0].split(",")
        assert run == "0" and fold in ("0", "1") and 0 <= int(idx) < 8


class TestGaussianGenerator:
    def test_balanced_boundary_is_bisector(self):
        _, rule = data.gen_gaussian_imbalanced(100, 1.0, mean_sep=2.0, seed=0)
        # symmetric means about the origin: boundary passes through it
        assert rule.offset == pytest.approx(0.0, abs=1e-15)
        midpoint = np.zeros(2)
        assert rule.normal @ midpoint + rule.offset == pytest.approx(0.0)

    def test_quarter_ratio_counts(self):
        ds, _ = data.gen_gaussian_imbalanced(5000, 0.25, seed=1)
        assert abs(ds.n_pos - 1000) <= 1
        assert abs(ds.n_neg - 4000) <= 1

    def test_seeded_reproducible(self):
        a, _ = data.gen_gaussian_imbalanced(200, 0.5, seed=9)
        b, _ = data.gen_gaussian_imbalanced(200, 0.5, seed=9)
        np.testing.assert_array_equal(a.X, b.X)
        np.testing.assert_array_equal(a.y, b.y)

    def test_invalid_ratio(self):
        with pytest.raises(InvalidRatioError):
            data.gen_gaussian_imbalanced(100, 0.0)

    def test_too_small_n(self):
        with pytest.raises(ValueError):
            data.gen_gaussian_imbalanced(5, 1.0)


class TestOverlapDemo:
    def test_default_counts(self):
        ds = data.gen_overlap_demo()
        assert ds.n == 24
        assert ds.n_neg == 8 and ds.n_pos == 16

    def test_labels_valid(self):
        ds = data.gen_overlap_demo(seed=3)
        assert set(np.unique(ds.y)) == {-1, 1}
        assert ds.X.min() >= 0.0 and ds.X.max() <= 1.0

    def test_seeded_reproducible(self):
        a = data.gen_overlap_demo(seed=5)
        b = data.gen_overlap_demo(seed=5)
        np.testing.assert_array_equal(a.X, b.X)

    def test_rebalanced_and_plain_fits_differ(self):
        # Training error counts of the two batch objectives differ on the
        # default seed; the rebalanced fit makes fewer mistakes.
        ds = data.gen_overlap_demo()
        ones = np.ones((ds.n, 1))
        Xe = np.hstack([ones, ds.X])
        w_ls = model.batch_ls_solve(Xe, ds.y.astype(float), 1e-4)
        w_ter = model.batch_ter_solve(Xe[ds.y < 0], Xe[ds.y > 0], 1e-4)
        e_ls = int((np.where(Xe @ w_ls >= 0, 1, -1) != ds.y).sum())
        e_ter = int((np.where(Xe @ w_ter >= 0, 1, -1) != ds.y).sum())
        assert e_ter != e_ls
        assert e_ter < e_ls
