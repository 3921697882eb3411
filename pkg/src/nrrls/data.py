"""Dataset ingestion, cross-validation splits, and synthetic generators.

Loaders accept delimited text (comma or whitespace) and the sparse
``label index:value`` text format with 1-based ascending indices. Datasets
are immutable after load; generators are pure functions of their seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyFileError,
    InsufficientClassSamplesError,
    InvalidRatioError,
    NonAscendingIndexError,
    ParseError,
)


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def raw_dim(self) -> int:
        return self.X.shape[1]

    @property
    def n_neg(self) -> int:
        return int((self.y < 0).sum())

    @property
    def n_pos(self) -> int:
        return int((self.y > 0).sum())

    @property
    def imbalance_ratio(self) -> float:
        """Positive-to-negative count ratio n+/n-."""
        if self.n_neg == 0:
            return float("inf")
        return self.n_pos / self.n_neg


def _check_dataset(X, y, name):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if not np.isin(y, (-1, 1)).all():
        bad = y[~np.isin(y, (-1, 1))][0]
        raise ParseError(f"label {bad} is not -1 or +1")
    return Dataset(X=X, y=y, name=name)


def _float_or_none(tok):
    try:
        return float(tok)
    except ValueError:
        return None


def load_delimited(path, label_column: int = -1, positive_label: str = "1",
                   name: str | None = None) -> Dataset:
    """Load a comma- or whitespace-separated text file.

    The value at ``label_column`` maps to +1 when it equals
    ``positive_label`` (string comparison on the stripped token) and to -1
    otherwise. A header row is skipped when none of its fields parses as a
    number. Rows with non-numeric or non-finite features raise ParseError
    with their 1-based location.
    """
    with open(path, "r", encoding="utf-8") as f:
        raw_lines = [ln.strip() for ln in f]
    lines = [(i + 1, ln) for i, ln in enumerate(raw_lines) if ln]
    if not lines:
        raise EmptyFileError(f"{path}: no data rows")

    def split(ln):
        return [t.strip() for t in ln.split(",")] if "," in ln else ln.split()

    first_fields = split(lines[0][1])
    if all(_float_or_none(t) is None for t in first_fields):
        lines = lines[1:]
        if not lines:
            raise EmptyFileError(f"{path}: header only, no data rows")

    ncols = len(split(lines[0][1]))
    label_idx = label_column % ncols
    rows, labels = [], []
    for rowno, ln in lines:
        fields = split(ln)
        if len(fields) != ncols:
            raise ParseError(f"{path}: expected {ncols} columns, got {len(fields)}",
                             row=rowno)
        feats = []
        for j, tok in enumerate(fields):
            if j == label_idx:
                continue
            v = _float_or_none(tok)
            if v is None:
                raise ParseError(f"{path}: non-numeric feature {tok!r}",
                                 row=rowno, col=j + 1)
            if not np.isfinite(v):
                raise ParseError(f"{path}: non-finite feature {tok!r}",
                                 row=rowno, col=j + 1)
            feats.append(v)
        rows.append(feats)
        labels.append(1 if fields[label_idx] == positive_label else -1)
    return _check_dataset(np.array(rows), labels, name or str(path))


def load_libsvm(path, dim_hint: int | None = None, name: str | None = None) -> Dataset:
    """Load sparse ``label index:value`` lines into dense vectors.

    Indices are 1-based and must be strictly ascending per line; absent
    indices are zero. Labels may be -1/+1 or 0/1 (0 maps to -1).
    """
    samples, labels = [], []
    max_idx = dim_hint or 0
    with open(path, "r", encoding="utf-8") as f:
        for rowno, ln in enumerate(f, start=1):
            ln = ln.split("#", 1)[0].strip()
            if not ln:
                continue
            toks = ln.split()
            lab = _float_or_none(toks[0])
            if lab in (-1.0, 1.0):
                labels.append(int(lab))
            elif lab == 0.0:
                labels.append(-1)
            else:
                raise ParseError(f"{path}: bad label {toks[0]!r}", row=rowno, col=1)
            pairs = []
            prev = 0
            for colno, tok in enumerate(toks[1:], start=2):
                if ":" not in tok:
                    raise ParseError(f"{path}: expected index:value, got {tok!r}",
                                     row=rowno, col=colno)
                idx_s, val_s = tok.split(":", 1)
                try:
                    idx = int(idx_s)
                except ValueError:
                    raise ParseError(f"{path}: bad index {idx_s!r}",
                                     row=rowno, col=colno) from None
                val = _float_or_none(val_s)
                if val is None or not np.isfinite(val):
                    raise ParseError(f"{path}: bad value {val_s!r}",
                                     row=rowno, col=colno)
                if idx <= prev:
                    raise NonAscendingIndexError(
                        f"{path}: index {idx} after {prev}", row=rowno, col=colno)
                prev = idx
                pairs.append((idx, val))
            max_idx = max(max_idx, prev)
            samples.append(pairs)
    if not samples:
        raise EmptyFileError(f"{path}: no data rows")
    X = np.zeros((len(samples), max_idx))
    for i, pairs in enumerate(samples):
        for idx, val in pairs:
            X[i, idx - 1] = val
    return _check_dataset(X, labels, name or str(path))


def save_libsvm(ds: Dataset, path) -> None:
    """Write a dataset in sparse text form; zero entries are omitted."""
    with open(path, "w", encoding="utf-8") as f:
        for x, y in zip(ds.X, ds.y):
            parts = [f"{int(y):+d}"]
            parts += [f"{j + 1}:{v:.17g}" for j, v in enumerate(x) if v != 0.0]
            f.write(" ".join(parts) + "\n")


@dataclass
class SplitPlan:
    """Stratified 2-fold assignments for a number of independent runs."""

    runs: int
    folds: int
    seed: int
    assignments: np.ndarray  # shape (runs, n), entries in {0, 1}

    def fold_indices(self, run: int, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments[run] == fold)

    def export(self, path) -> None:
        """One ``run,fold,index`` line per sample assignment, for audit."""
        with open(path, "w", encoding="utf-8") as f:
            for run in range(self.runs):
                for fold in range(self.folds):
                    for idx in self.fold_indices(run, fold):
                        f.write(f"{run},{fold},{idx}\n")


def make_splits(ds: Dataset, runs: int = 10, seed: int = 0) -> SplitPlan:
    """Seeded stratified 2-fold split plan; per-class fold counts differ by <= 1."""
    y = ds.y
    for cls in (-1, 1):
        if (y == cls).sum() < 2:
            raise InsufficientClassSamplesError(
                f"class {cls:+d} has {(y == cls).sum()} samples, need >= 2"
            )
    rng = np.random.default_rng(seed)
    assignments = np.zeros((runs, ds.n), dtype=np.int8)
    for run in range(runs):
        for cls in (-1, 1):
            idx = np.flatnonzero(y == cls)
            rng.shuffle(idx)
            half = (len(idx) + 1) // 2
            assignments[run, idx[half:]] = 1
    return SplitPlan(runs=runs, folds=2, seed=seed, assignments=assignments)


@dataclass(frozen=True)
class BayesRule:
    """Linear discriminant of the count-weighted optimal decision rule.

    For two classes with shared covariance and class weights equal to the
    reciprocals of the class counts, the priors cancel against the weights
    and the optimal boundary is the equal-likelihood hyperplane
    ``normal . x + offset = 0``.
    """

    normal: np.ndarray
    offset: float

    def decide(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        return np.where(X @ self.normal + self.offset > 0, 1, -1)


def gen_gaussian_imbalanced(n: int, ratio: float, mean_sep: float = 2.0,
                            seed: int = 0, dim: int = 2):
    """Two shared-covariance Gaussian classes plus their analytic decision rule.

    ``ratio`` is the positive-to-negative count ratio; counts are the
    deterministic rounding of the requested split. Means sit at
    -+ mean_sep/2 along the unit diagonal with identity covariance.
    Returns ``(Dataset, BayesRule)``.
    """
    if not ratio > 0:
        raise InvalidRatioError(f"ratio must be > 0, got {ratio}")
    if n < 10:
        raise ValueError(f"need n >= 10, got {n}")
    n_pos = min(n - 1, max(1, round(n * ratio / (1.0 + ratio))))
    n_neg = n - n_pos
    rng = np.random.default_rng(seed)
    u = np.ones(dim) / np.sqrt(dim)
    mu_neg = -0.5 * mean_sep * u
    mu_pos = 0.5 * mean_sep * u
    X = np.vstack([
        rng.normal(size=(n_neg, dim)) + mu_neg,
        rng.normal(size=(n_pos, dim)) + mu_pos,
    ])
    y = np.concatenate([np.full(n_neg, -1), np.full(n_pos, 1)])
    perm = rng.permutation(n)
    ds = Dataset(X=X[perm], y=y[perm].astype(np.int64),
                 name=f"gauss(n={n},ratio={ratio:g},sep={mean_sep:g},seed={seed})")
    diff = mu_pos - mu_neg
    rule = BayesRule(normal=diff, offset=float(-0.5 * (mu_pos + mu_neg) @ diff))
    return ds, rule


# Skeleton of the 2-d imbalanced demo: 3 clearly separated negatives, 5
# negatives inside the central overlap band, 14 clearly separated positives,
# and 2 positives inside the band. The band sits where an unweighted fit,
# biased toward the majority class, classifies everything positive.
_DEMO_NEG = np.array([
    [0.12, 0.50], [0.16, 0.36], [0.14, 0.66],
    [0.52, 0.52], [0.56, 0.40], [0.58, 0.62], [0.61, 0.50], [0.54, 0.70],
])
_DEMO_POS = np.array([
    [0.74, 0.58], [0.80, 0.46], [0.70, 0.38], [0.84, 0.66],
    [0.77, 0.30], [0.89, 0.52], [0.72, 0.74], [0.82, 0.80],
    [0.92, 0.38], [0.68, 0.52], [0.94, 0.70], [0.76, 0.20],
    [0.86, 0.26], [0.90, 0.84],
    [0.48, 0.54], [0.44, 0.42],
])


def gen_overlap_demo(seed: int = 0, jitter: float = 0.02) -> Dataset:
    """24-point 2-d demo set: 8 negatives, 16 positives, overlapping region.

    A fixed skeleton is perturbed by seeded Gaussian jitter and clipped to
    the unit square, so every seed keeps the 8/16 class counts and the
    overlap structure.
    """
    rng = np.random.default_rng(seed)
    neg = _DEMO_NEG + rng.normal(scale=jitter, size=_DEMO_NEG.shape)
    pos = _DEMO_POS + rng.normal(scale=jitter, size=_DEMO_POS.shape)
    X = np.clip(np.vstack([neg, pos]), 0.01, 0.99)
    y = np.concatenate([np.full(8, -1), np.full(16, 1)]).astype(np.int64)
    return Dataset(X=X, y=y, name=f"overlap-demo(seed={seed})")
