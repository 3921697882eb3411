"""Acceptance gate: every shipped guarantee at its stated tolerance.

Each test prints one ``ACCEPTANCE <criterion>: PASS/FAIL/SKIP`` line (run
with ``pytest -s`` to see them as they execute). Tolerances and sizes are
pinned here and must not be loosened; a criterion that cannot run in this
environment (missing benchmark dataset files) is skipped with an explicit
record, never silently passed.

Run: pytest tests/test_acceptance.py -s
"""

import json
import os
import time
from pathlib import Path

import numpy as np
import pytest

from nrrls import cli, data, model
from nrrls.model import (
    Hyperparams,
    LabeledSample,
    Weighting,
    batch_ls_solve,
    batch_ter_solve,
    multiclass_init,
    multiclass_step,
    nrrls_init,
    nrrls_step,
    rls_init,
    rls_step,
    ter_gradient,
    ter_objective,
)
from nrrls.evaluation import Confusion, g_mean

REL_TOL = 1e-6

DATA_DIR = Path(os.environ.get("NRRLS_DATA_DIR",
                               Path(__file__).resolve().parents[1] / "data"))

# Published mean G-means reproduced within +-0.05 (tolerance covers the
# unstated order-selection and fold-shuffling details of the protocol).
GMEAN_TARGETS = {
    "monks3.csv": {"target": 0.771, "positive_label": "1"},
    "blood_transfusion.csv": {"target": 0.685, "positive_label": "1"},
    "sonar.csv": {"target": 0.729, "positive_label": "M"},
}
GMEAN_TOL = 0.05


def report(name, ok, detail=""):
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
          + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def report_skip(name, reason):
    print(f"\nACCEPTANCE {name}: SKIP ({reason})")
    pytest.skip(reason)


def rel_diff(a, b):
    return np.linalg.norm(a - b) / (np.linalg.norm(b) + 1e-12)


def random_stream(rng, ratio, max_n=500, max_d=30):
    n = int(rng.integers(30, max_n + 1))
    d = int(rng.integers(2, max_d + 1))
    n_pos = max(1, round(n * ratio / (1.0 + ratio)))
    n_neg = max(1, n - n_pos)
    y = np.concatenate([np.full(n_neg, -1), np.full(n_pos, 1)])
    rng.shuffle(y)
    X = rng.normal(size=(len(y), d))
    return X, y.astype(int), d


def stream_final_w(X, y, hp):
    state = nrrls_init(hp)
    w = None
    for x, yt in zip(X, y):
        _, w = nrrls_step(state, LabeledSample(x, int(yt)))
    return w


def test_exactness_theorem():
    """Streamed coefficients equal the batch rebalanced solve at every step."""
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for trial in range(50):
        ratio = (0.05, 0.25, 1.0)[trial % 3]
        X, y, d = random_stream(rng, ratio)
        hp = Hyperparams(dim=d, b=1e-4)
        state = nrrls_init(hp)
        neg, pos = [], []
        for x, yt in zip(X, y):
            _, w = nrrls_step(state, LabeledSample(x, int(yt)))
            (neg if yt < 0 else pos).append(x)
            wb = batch_ter_solve(np.array(neg) if neg else None,
                                 np.array(pos) if pos else None, hp.b)
            worst = max(worst, rel_diff(w, wb))
    elapsed = time.perf_counter() - start
    report("exactness_theorem",
           worst <= REL_TOL and elapsed < 60.0,
           f"50 streams, worst rel diff {worst:.3e}, {elapsed:.1f}s")


def test_ls_reduction():
    """Pinned-weight online, classic recursive, and batch ridge solutions coincide."""
    rng = np.random.default_rng(2025)
    worst = 0.0
    for _ in range(20):
        X, y, d = random_stream(rng, 1.0, max_n=150, max_d=12)
        hp = Hyperparams(dim=d, b=1e-4, weighting=Weighting.FIXED_BALANCED)
        nr = nrrls_init(hp)
        rl = rls_init(hp)
        for t, (x, yt) in enumerate(zip(X, y), start=1):
            _, w_nr = nrrls_step(nr, LabeledSample(x, int(yt)))
            _, w_rls = rls_step(rl, LabeledSample(x, int(yt)))
            wb = batch_ls_solve(X[:t], y[:t].astype(float), hp.b)
            worst = max(worst, rel_diff(w_nr, wb), rel_diff(w_rls, wb),
                        rel_diff(w_nr, w_rls))
    report("ls_reduction", worst <= REL_TOL,
           f"20 streams, worst rel diff {worst:.3e}")


def test_order_invariance():
    """Final coefficients do not depend on the arrival order of the stream."""
    rng = np.random.default_rng(2026)
    X, y, d = random_stream(rng, 0.25, max_n=200, max_d=15)
    hp = Hyperparams(dim=d, b=1e-4)
    w_ref = stream_final_w(X, y, hp)
    worst = 0.0
    for _ in range(20):
        perm = rng.permutation(len(y))
        worst = max(worst, rel_diff(stream_final_w(X[perm], y[perm], hp), w_ref))
    report("order_invariance", worst <= REL_TOL,
           f"20 permutations, worst rel diff {worst:.3e}")


def test_gradient_optimality():
    """Every streamed w_t is a stationary point of the running objective,
    and the analytic gradient matches central finite differences."""
    rng = np.random.default_rng(2027)
    X, y, d = random_stream(rng, 0.25, max_n=200, max_d=10)
    hp = Hyperparams(dim=d, b=1e-4)
    state = nrrls_init(hp)
    worst_opt = 0.0
    for t, (x, yt) in enumerate(zip(X, y), start=1):
        _, w = nrrls_step(state, LabeledSample(x, int(yt)))
        Xn, Xp = X[:t][y[:t] < 0], X[:t][y[:t] > 0]
        j = ter_objective(w, Xn, Xp, hp.b)
        g = ter_gradient(w, Xn, Xp, hp.b)
        worst_opt = max(worst_opt, np.abs(g).max() / (1.0 + abs(j)))

    worst_fd = 0.0
    h = 1e-6
    for _ in range(100):
        dd = int(rng.integers(1, 6))
        Xn = rng.normal(size=(int(rng.integers(1, 8)), dd))
        Xp = rng.normal(size=(int(rng.integers(1, 8)), dd))
        b = 10.0 ** rng.uniform(-4, 0)
        w = rng.normal(size=dd)
        g = ter_gradient(w, Xn, Xp, b)
        for i in range(dd):
            e = np.zeros(dd)
            e[i] = h
            fd = (ter_objective(w + e, Xn, Xp, b)
                  - ter_objective(w - e, Xn, Xp, b)) / (2 * h)
            worst_fd = max(worst_fd, abs(g[i] - fd) / (abs(fd) + 1e-7))
    report("gradient_optimality",
           worst_opt <= 1e-6 and worst_fd <= 1e-5,
           f"stationarity {worst_opt:.3e}, fd mismatch {worst_fd:.3e}")


def test_constant_time_claim(tmp_path):
    """Per-step cost of the online learner stays flat over a 20k stream while
    a per-step batch-recompute baseline grows."""
    start = time.perf_counter()
    out = tmp_path / "bench"
    rc = cli.main(["bench", "--n", "20000", "--d", "20", "--warmup", "200",
                   "--seed", "0", "--out", str(out)])
    assert rc == 0
    summary = json.loads((out / "bench_summary.json").read_text())
    online_ratio = summary["nrrls"]["ratio"]
    batch_ratio = summary["batch"]["ratio"]
    elapsed = time.perf_counter() - start
    report("constant_time_claim",
           online_ratio <= 1.5 and batch_ratio >= 5.0 and elapsed < 300.0,
           f"online decile ratio {online_ratio:.3f}, "
           f"batch decile ratio {batch_ratio:.1f}, {elapsed:.0f}s")


@pytest.mark.parametrize("filename", sorted(GMEAN_TARGETS))
def test_gmean_reproduction(filename, tmp_path):
    """Published mean G-means under the full protocol: 10x2-fold CV,
    b=1e-4, polynomial order sweep with best-over-order selection."""
    spec = GMEAN_TARGETS[filename]
    path = DATA_DIR / filename
    name = f"gmean_reproduction[{filename}]"
    if not path.is_file():
        report_skip(name, f"dataset file not found: {path}; "
                          "run scripts/fetch_datasets.py to download")
    start = time.perf_counter()
    out = tmp_path / "run"
    rc = cli.main(["run", "--data", str(path),
                   "--positive-label", spec["positive_label"],
                   "--orders", "1,2,3,4,5,6", "--runs", "10",
                   "--b", "1e-4", "--seed", "0", "--out", str(out)])
    assert rc == 0
    summary = json.loads((out / "summary.json").read_text())
    got = summary["best_g_mean"]
    elapsed = time.perf_counter() - start
    report(name,
           abs(got - spec["target"]) <= GMEAN_TOL and elapsed < 600.0,
           f"best-over-order G-mean {got:.3f} vs published {spec['target']:.3f}"
           f", {elapsed:.0f}s")


def test_trajectory_overlay(tmp_path):
    """The convergence trace reports a vanishing online-vs-batch gap and an
    identical final test G-mean."""
    out = tmp_path / "conv"
    rc = cli.main(["converge", "--synthetic-n", "500", "--synthetic-ratio", "0.25",
                   "--seed", "1", "--out", str(out)])
    assert rc == 0
    summary = json.loads((out / "converge_summary.json").read_text())
    report("trajectory_overlay",
           summary["max_rel_diff"] <= REL_TOL and summary["identical_final_g_mean"],
           f"max rel diff {summary['max_rel_diff']:.3e}, "
           f"final G-mean {summary['final_g_mean_online']:.4f} == "
           f"{summary['final_g_mean_batch']:.4f}")


def test_weighted_bayes_recovery():
    """The order-1 online fit agrees with the analytic count-weighted
    decision rule on imbalanced shared-covariance Gaussians."""
    agreements = []
    for seed in range(5):
        ds, rule = data.gen_gaussian_imbalanced(5000, 0.25, seed=seed)
        Xe = np.hstack([np.ones((ds.n, 1)), ds.X])
        hp = Hyperparams(dim=Xe.shape[1], b=1e-4)
        w = stream_final_w(Xe, ds.y, hp)
        model_labels = np.where(Xe @ w >= 0, 1, -1)
        agreements.append(float((model_labels == rule.decide(ds.X)).mean()))
    mean_agreement = float(np.mean(agreements))
    report("weighted_bayes_recovery", mean_agreement >= 0.97,
           f"mean agreement over 5 seeds {mean_agreement:.4f}")


def test_multiclass_consistency():
    """Each one-vs-all column equals an independently trained binary learner."""
    rng = np.random.default_rng(2028)
    centers = np.array([[0.0, 0.0, 2.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    stream = []
    for _ in range(120):
        label = int(rng.integers(0, 3))
        stream.append((rng.normal(size=3) + centers[label], label))
    hp = Hyperparams(dim=3, b=1e-4)
    mc = multiclass_init(hp, (0, 1, 2))
    theta = None
    for x, label in stream:
        _, theta = multiclass_step(mc, x, label)
    worst = 0.0
    for j, cls in enumerate((0, 1, 2)):
        state = nrrls_init(hp)
        w = None
        for x, label in stream:
            _, w = nrrls_step(state, LabeledSample(x, 1 if label == cls else -1))
        worst = max(worst, rel_diff(theta[:, j], w))
    report("multiclass_consistency", worst <= REL_TOL,
           f"3 classes, worst column rel diff {worst:.3e}")


def test_gmean_unit_values():
    """The documented G-mean reference points hold to 1e-12."""
    perfect = g_mean(Confusion(tp=5, fn=0, tn=5, fp=0))
    missed = g_mean(Confusion(tp=0, fn=3, tn=4, fp=0))
    mixed = g_mean(Confusion(tp=3, fn=1, tn=4, fp=1))
    ok = (abs(perfect - 1.0) <= 1e-12
          and abs(missed - 0.0) <= 1e-12
          and abs(mixed - 0.7745966692414834) <= 1e-12)
    report("gmean_unit_values", ok,
           f"{perfect:.12f}, {missed:.12f}, {mixed:.16f}")
