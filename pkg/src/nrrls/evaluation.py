"""Confusion statistics, G-mean, per-step trajectory capture, and timing.

``run_fold`` is the single streaming harness used by the CLI experiments:
it feeds training samples one at a time to an online learner (or fits a
batch solver once), recording the coefficient norm and wall time of every
step, and scoring the held-out fold. Timing wraps the learner step only;
feature expansion and I/O happen outside the clock.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import model
from .errors import LengthMismatchError, TooFewRecordsError

ALGORITHMS = ("nrrls", "rls", "ls_batch", "ter_batch", "nrrls_multiclass")


@dataclass
class Confusion:
    tp: int = 0
    fn: int = 0
    tn: int = 0
    fp: int = 0


def confusion(preds, truth) -> Confusion:
    """Standard binary confusion counts with +1 as the positive class."""
    preds = np.asarray(preds)
    truth = np.asarray(truth)
    if preds.shape != truth.shape or preds.ndim != 1 or preds.size < 1:
        raise LengthMismatchError(
            f"preds shape {preds.shape} vs truth shape {truth.shape}"
        )
    pos = truth > 0
    hit = preds == truth
    return Confusion(
        tp=int((pos & hit).sum()),
        fn=int((pos & ~hit).sum()),
        tn=int((~pos & hit).sum()),
        fp=int((~pos & ~hit).sum()),
    )


def g_mean(c: Confusion) -> float:
    """Geometric mean of the per-class accuracies.

    A class with zero test samples contributes a factor of 1, so a
    single-class fold is scored by the present class alone.
    """
    pos_total = c.tp + c.fn
    neg_total = c.tn + c.fp
    tpr = c.tp / pos_total if pos_total else 1.0
    tnr = c.tn / neg_total if neg_total else 1.0
    return math.sqrt(tpr * tnr)


@dataclass
class EvalRecord:
    step: int
    w_l2: float
    g_mean: float | None
    step_nanos: int
    w: np.ndarray | None = None


@dataclass(frozen=True)
class LearnerConfig:
    algorithm: str
    hp: model.Hyperparams
    tau: float = 0.0
    gmean_stride: int | None = None  # None: max(1, n_train // 200)
    record_w: bool = False


def _gmean_on(w, test_X, test_y, tau) -> float:
    labels = np.where(test_X @ w >= tau, 1, -1)
    return g_mean(confusion(labels, test_y))


def run_fold(train_X, train_y, test_X, test_y, config: LearnerConfig):
    """Stream the training fold through a learner and score the test fold.

    Returns ``(records, final_g_mean)``. Online algorithms produce one
    record per step; batch algorithms produce a single record for the one
    solve. The last record always carries the full-test-fold G-mean.
    """
    train_X = np.asarray(train_X, dtype=np.float64)
    train_y = np.asarray(train_y)
    test_X = np.asarray(test_X, dtype=np.float64)
    test_y = np.asarray(test_y)
    if train_X.shape[0] == 0 or test_X.shape[0] == 0:
        raise LengthMismatchError("train and test folds must be non-empty")
    n = train_X.shape[0]
    hp = config.hp

    if config.algorithm in ("ls_batch", "ter_batch"):
        t0 = time.perf_counter_ns()
        if config.algorithm == "ls_batch":
            w = model.batch_ls_solve(train_X, train_y.astype(np.float64), hp.b)
        else:
            w = model.batch_ter_solve(train_X[train_y < 0], train_X[train_y > 0], hp.b)
        nanos = time.perf_counter_ns() - t0
        gm = _gmean_on(w, test_X, test_y, config.tau)
        rec = EvalRecord(step=n, w_l2=float(np.linalg.norm(w)), g_mean=gm,
                         step_nanos=nanos, w=w.copy() if config.record_w else None)
        return [rec], gm

    if config.algorithm == "nrrls":
        state = model.nrrls_init(hp)
        def step(x, y):
            return model.nrrls_step(state, model.LabeledSample(x, y))[1]
    elif config.algorithm == "rls":
        state = model.rls_init(hp)
        def step(x, y):
            return model.rls_step(state, model.LabeledSample(x, y))[1]
    elif config.algorithm == "nrrls_multiclass":
        mc = model.multiclass_init(hp, (-1, 1))
        def step(x, y):
            _, theta = model.multiclass_step(mc, x, int(y))
            # Binary one-vs-all: decision score is the margin between the
            # positive-class and negative-class columns.
            return theta[:, 1] - theta[:, 0]
    else:
        raise ValueError(f"unknown algorithm {config.algorithm!r}")

    stride = config.gmean_stride or max(1, n // 200)
    records = []
    samples = [(train_X[t], int(train_y[t])) for t in range(n)]
    for t, (x, y) in enumerate(samples, start=1):
        t0 = time.perf_counter_ns()
        w = step(x, y)
        nanos = time.perf_counter_ns() - t0
        gm = None
        if t % stride == 0 or t == n:
            gm = _gmean_on(w, test_X, test_y, config.tau)
        records.append(EvalRecord(
            step=t, w_l2=float(np.linalg.norm(w)), g_mean=gm, step_nanos=nanos,
            w=w.copy() if config.record_w else None,
        ))
    return records, records[-1].g_mean


@dataclass(frozen=True)
class TimingProfile:
    first_decile_mean: float
    last_decile_mean: float

    @property
    def ratio(self) -> float:
        return self.last_decile_mean / self.first_decile_mean


def timing_profile(records, warmup: int = 0) -> TimingProfile:
    """Mean step time of the first and last deciles after dropping warmup steps."""
    if isinstance(records, (list, tuple)) and records and isinstance(records[0], EvalRecord):
        nanos = np.array([r.step_nanos for r in records], dtype=np.float64)
    else:
        nanos = np.asarray(records, dtype=np.float64)
    kept = nanos[warmup:]
    if kept.size < 1000:
        raise TooFewRecordsError(
            f"need >= 1000 records after warmup, got {kept.size}"
        )
    decile = kept.size // 10
    return TimingProfile(
        first_decile_mean=float(kept[:decile].mean()),
        last_decile_mean=float(kept[-decile:].mean()),
    )


def format_float(v: float) -> str:
    """Fixed 17-significant-digit text form used in every CSV the CLI writes."""
    return f"{v:.17g}"


RECORD_COLUMNS = ("run", "fold", "step", "w_l2", "g_mean", "step_nanos")


def write_records_csv(path, rows) -> None:
    """Write (run, fold, EvalRecord) triples as CSV.

    The g_mean cell is empty for steps where the trajectory was not sampled.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(RECORD_COLUMNS) + "\n")
        for run, fold, rec in rows:
            gm = format_float(rec.g_mean) if rec.g_mean is not None else ""
            f.write(f"{run},{fold},{rec.step},{format_float(rec.w_l2)},"
                    f"{gm},{rec.step_nanos}\n")
