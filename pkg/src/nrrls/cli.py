"""Benchmark command line.

Subcommands::

    nrrls run       cross-validated G-mean experiment over polynomial orders
    nrrls converge  per-step online-vs-batch coefficient trace
    nrrls bench     per-step wall-time profile vs a batch-recompute baseline
    nrrls demo2d    2-d decision-score grids for the imbalanced demo set
    nrrls bayes     agreement with the analytic count-weighted decision rule

Every command writes a ``manifest.json`` capturing the fully resolved
configuration; replaying a manifest via ``--config manifest.json``
reproduces all non-timing outputs byte for byte. Exit codes: 0 success,
2 validation error, 3 numerical failure, 4 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import gc
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, data, evaluation, features, model
from .errors import (
    EmptyFileError,
    InsufficientClassSamplesError,
    InvalidRatioError,
    NrrlsError,
    NumericalSingularityError,
    ParseError,
    SingularMatrixError,
    TooFewRecordsError,
)
from .evaluation import format_float

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

MANIFEST_VERSION = 1

ALGO_CHOICES = ("nrrls", "rls", "ls_batch", "ter_batch", "nrrls_multiclass")


class ValidationError(NrrlsError):
    """Bad CLI configuration detected before any work starts."""


def dumps17(obj, indent=2) -> str:
    # json's C encoder ignores float subclasses, so floats are smuggled
    # through as NUL-delimited strings and unquoted afterwards to get fixed
    # 17-significant-digit numbers.
    def conv(o):
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            return f"\x00{o:.17g}\x00"
        if isinstance(o, dict):
            return {k: conv(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [conv(v) for v in o]
        if isinstance(o, np.floating):
            return conv(float(o))
        if isinstance(o, np.integer):
            return int(o)
        return o

    return json.dumps(conv(obj), indent=indent).replace('"\\u0000', "").replace('\\u0000"', "")


def _write_json(path: Path, obj) -> None:
    path.write_text(dumps17(obj) + "\n", encoding="utf-8")


def _parse_orders(text: str):
    try:
        orders = [int(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"bad order list {text!r}") from None
    if not orders or any(not 1 <= r <= features.MAX_ORDER for r in orders):
        raise ValidationError(f"orders must be in 1..{features.MAX_ORDER}, got {text!r}")
    return orders


def _load_config_file(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise ValidationError(f"config file not found: {path}")
    text = p.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        # A manifest replays through its embedded resolved config.
        if "config" in obj and isinstance(obj["config"], dict):
            obj = obj["config"]
        return {k: v for k, v in obj.items()}
    out = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise ValidationError(f"bad config line {ln!r} (want key=value)")
        k, v = ln.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags, with type coercion from defaults."""
    cfg = dict(defaults)
    file_vals = _load_config_file(args.config) if getattr(args, "config", None) else {}
    for k, v in file_vals.items():
        if k not in cfg:
            continue
        ref = defaults[k]
        if isinstance(ref, bool):
            cfg[k] = str(v).lower() in ("1", "true", "yes") if isinstance(v, str) else bool(v)
        elif isinstance(ref, int) and not isinstance(ref, bool):
            cfg[k] = int(v)
        elif isinstance(ref, float):
            cfg[k] = float(v)
        else:
            cfg[k] = v if not isinstance(ref, str) or isinstance(v, str) else str(v)
    for k in defaults:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _load_dataset(cfg) -> data.Dataset:
    path = cfg.get("data")
    if not path:
        raise ValidationError("--data is required")
    if not Path(path).is_file():
        raise ValidationError(f"dataset file not found: {path}")
    if cfg["format"] == "libsvm":
        return data.load_libsvm(path, dim_hint=cfg.get("dim_hint") or None)
    return data.load_delimited(path, label_column=cfg["label_column"],
                               positive_label=cfg["positive_label"])


def _weighting(cfg) -> model.Weighting:
    try:
        return model.Weighting(cfg["weighting"])
    except ValueError:
        raise ValidationError(f"bad weighting {cfg['weighting']!r}") from None


def _expander_for(raw_dim: int, order: int, cfg) -> features.PolyExpander:
    forced = cfg.get("expansion", "auto")
    if forced == "auto":
        mode = features.choose_mode(raw_dim, order, cfg["dim_limit"])
    else:
        mode = features.ExpansionMode(forced)
    return features.PolyExpander(order=order, raw_dim=raw_dim, mode=mode)


def _out_dir(cfg) -> Path:
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _manifest(out: Path, command: str, cfg: dict, decisions: dict, outputs) -> None:
    _write_json(out / "manifest.json", {
        "manifest_version": MANIFEST_VERSION,
        "package_version": __version__,
        "command": command,
        "config": cfg,
        "decisions": decisions,
        "outputs": sorted(str(o) for o in outputs),
    })


def _stream_order(seed: int, run: int, fold: int, n: int) -> np.ndarray:
    return np.random.default_rng((seed, run, fold)).permutation(n)


RUN_DEFAULTS = {
    "data": "",
    "format": "csv",
    "label_column": -1,
    "positive_label": "1",
    "dim_hint": 0,
    "algo": "nrrls",
    "orders": "1,2,3,4,5,6",
    "b": model.DEFAULT_B,
    "runs": 10,
    "seed": 0,
    "weighting": "rebalanced",
    "per_fold_norm": False,
    "expansion": "auto",
    "dim_limit": features.DEFAULT_DIM_LIMIT,
    "gmean_stride": 0,
    "jobs": 1,
    "out": "nrrls_out",
}


def cmd_run(cfg: dict) -> int:
    ds = _load_dataset(cfg)
    orders = _parse_orders(cfg["orders"])
    if cfg["runs"] < 1:
        raise ValidationError(f"runs must be >= 1, got {cfg['runs']}")
    if not cfg["b"] > 0:
        raise ValidationError(f"b must be > 0, got {cfg['b']}")
    if cfg["algo"] not in ALGO_CHOICES:
        raise ValidationError(f"unknown algorithm {cfg['algo']!r}")
    weighting = _weighting(cfg)
    out = _out_dir(cfg)

    plan = data.make_splits(ds, runs=cfg["runs"], seed=cfg["seed"])
    plan.export(out / "splits.txt")

    scaler_full = None if cfg["per_fold_norm"] else features.scaler_fit(ds.X)
    stride = cfg["gmean_stride"] or None

    summary_orders = {}
    modes = {}
    outputs = [out / "splits.txt"]

    for order in orders:
        expander = _expander_for(ds.raw_dim, order, cfg)
        modes[str(order)] = expander.mode.value
        hp = model.Hyperparams(dim=expander.out_dim, b=cfg["b"], weighting=weighting)
        if scaler_full is not None:
            Xe_full = features.expand_rows(expander, features.scaler_apply(scaler_full, ds.X))

        def fold_job(run_fold_pair):
            run, fold = run_fold_pair
            train_idx = plan.fold_indices(run, fold)
            test_idx = plan.fold_indices(run, 1 - fold)
            order_idx = train_idx[_stream_order(cfg["seed"], run, fold, len(train_idx))]
            if scaler_full is not None:
                Xe = Xe_full
            else:
                scaler = features.scaler_fit(ds.X[order_idx])
                Xe = features.expand_rows(expander, features.scaler_apply(scaler, ds.X))
            lc = evaluation.LearnerConfig(algorithm=cfg["algo"], hp=hp,
                                          gmean_stride=stride)
            records, gm = evaluation.run_fold(
                Xe[order_idx], ds.y[order_idx], Xe[test_idx], ds.y[test_idx], lc)
            return run, fold, records, gm

        pairs = [(run, fold) for run in range(cfg["runs"]) for fold in range(2)]
        if cfg["jobs"] > 1:
            with ThreadPoolExecutor(max_workers=cfg["jobs"]) as pool:
                results = list(pool.map(fold_job, pairs))
        else:
            results = [fold_job(p) for p in pairs]
        results.sort(key=lambda r: (r[0], r[1]))

        scores = np.array([gm for _, _, _, gm in results])
        summary_orders[str(order)] = {
            "g_mean_mean": float(scores.mean()),
            "g_mean_std": float(scores.std()),  # population std over runs x folds
            "n_scores": int(scores.size),
            "expansion_mode": expander.mode.value,
            "expanded_dim": expander.out_dim,
        }
        rec_path = out / ("records.csv" if len(orders) == 1 else f"records_r{order}.csv")
        evaluation.write_records_csv(
            rec_path,
            [(run, fold, rec) for run, fold, recs, _ in results for rec in recs])
        outputs.append(rec_path)

    best = max(summary_orders, key=lambda r: summary_orders[r]["g_mean_mean"])
    summary = {
        "dataset": ds.name,
        "n": ds.n,
        "raw_dim": ds.raw_dim,
        "imbalance_ratio": ds.imbalance_ratio,
        "algorithm": cfg["algo"],
        "weighting": weighting.value,
        "b": cfg["b"],
        "runs": cfg["runs"],
        "folds": 2,
        "orders": summary_orders,
        "best_order": int(best),
        "best_g_mean": summary_orders[best]["g_mean_mean"],
    }
    _write_json(out / "summary.json", summary)
    outputs.append(out / "summary.json")
    _manifest(out, "run", cfg, {
        "normalization_scope": "per_fold" if cfg["per_fold_norm"] else "full",
        "expansion_mode": modes,
        "stratified_folds": True,
        "std_aggregation": "population std over runs x folds",
        "tie_rule": "score >= tau predicts +1",
        "stream_order": "seeded per (seed, run, fold)",
    }, outputs)
    return EXIT_OK


CONVERGE_DEFAULTS = {
    "data": "",
    "format": "csv",
    "label_column": -1,
    "positive_label": "1",
    "dim_hint": 0,
    "order": 1,
    "b": model.DEFAULT_B,
    "seed": 0,
    "weighting": "rebalanced",
    "per_fold_norm": False,
    "expansion": "auto",
    "dim_limit": features.DEFAULT_DIM_LIMIT,
    "synthetic_n": 400,
    "synthetic_ratio": 0.25,
    "out": "nrrls_out",
}


def cmd_converge(cfg: dict) -> int:
    """Per-step trace of the online coefficients against the batch solve."""
    if cfg["data"]:
        ds = _load_dataset(cfg)
    else:
        ds, _ = data.gen_gaussian_imbalanced(
            cfg["synthetic_n"], cfg["synthetic_ratio"], seed=cfg["seed"])
    weighting = _weighting(cfg)
    out = _out_dir(cfg)
    order = cfg["order"]
    expander = _expander_for(ds.raw_dim, order, cfg)

    single = ds.n < 4 or ds.n_neg < 2 or ds.n_pos < 2
    if single:
        # Too small to split: train and test on everything.
        train_idx = test_idx = np.arange(ds.n)
    else:
        plan = data.make_splits(ds, runs=1, seed=cfg["seed"])
        train_idx = plan.fold_indices(0, 0)
        test_idx = plan.fold_indices(0, 1)
        train_idx = train_idx[_stream_order(cfg["seed"], 0, 0, len(train_idx))]

    scaler = features.scaler_fit(ds.X if not cfg["per_fold_norm"] else ds.X[train_idx])
    Xe = features.expand_rows(expander, features.scaler_apply(scaler, ds.X))
    hp = model.Hyperparams(dim=expander.out_dim, b=cfg["b"], weighting=weighting)

    state = model.nrrls_init(hp)
    fixed = weighting is model.Weighting.FIXED_BALANCED
    rows = []
    max_rel = 0.0
    w_online = w_batch = None
    for t, idx in enumerate(train_idx, start=1):
        _, w_online = model.nrrls_step(state, model.LabeledSample(Xe[idx], int(ds.y[idx])))
        seen = train_idx[:t]
        Xs, ys = Xe[seen], ds.y[seen]
        if fixed:
            w_batch = model.batch_ls_solve(Xs, ys.astype(np.float64), cfg["b"])
        else:
            w_batch = model.batch_ter_solve(Xs[ys < 0], Xs[ys > 0], cfg["b"])
        rel = float(np.linalg.norm(w_online - w_batch)
                    / (np.linalg.norm(w_batch) + 1e-12))
        max_rel = max(max_rel, rel)
        rows.append((t, float(np.linalg.norm(w_online)),
                     float(np.linalg.norm(w_batch)), rel))

    trace_path = out / "trace.csv"
    with open(trace_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("step,nrrls_w_l2,batch_w_l2,rel_diff\n")
        for t, a, b_, r in rows:
            f.write(f"{t},{format_float(a)},{format_float(b_)},{format_float(r)}\n")

    coeff_path = out / "coefficients.csv"
    with open(coeff_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("index,nrrls_w,batch_w\n")
        for i, (a, b_) in enumerate(zip(w_online, w_batch)):
            f.write(f"{i},{format_float(a)},{format_float(b_)}\n")

    gm_online = evaluation.g_mean(evaluation.confusion(
        np.where(Xe[test_idx] @ w_online >= 0, 1, -1), ds.y[test_idx]))
    gm_batch = evaluation.g_mean(evaluation.confusion(
        np.where(Xe[test_idx] @ w_batch >= 0, 1, -1), ds.y[test_idx]))
    summary = {
        "dataset": ds.name,
        "steps": len(rows),
        "max_rel_diff": max_rel,
        "final_g_mean_online": gm_online,
        "final_g_mean_batch": gm_batch,
        "identical_final_g_mean": gm_online == gm_batch,
        "batch_reference": "ls" if fixed else "ter",
    }
    _write_json(out / "converge_summary.json", summary)
    _manifest(out, "converge", cfg, {
        "normalization_scope": "per_fold" if cfg["per_fold_norm"] else "full",
        "expansion_mode": {str(order): expander.mode.value},
        "single_sample_mode": bool(single),
    }, [trace_path, coeff_path, out / "converge_summary.json"])
    return EXIT_OK


BENCH_DEFAULTS = {
    "n": 20000,
    "d": 20,
    "ratio": 0.25,
    "b": model.DEFAULT_B,
    "seed": 0,
    "warmup": 200,
    "out": "nrrls_out",
}


def cmd_bench(cfg: dict) -> int:
    """Per-step wall time of the online learner vs a batch-recompute baseline."""
    if cfg["n"] < 2000:
        raise ValidationError(f"bench needs n >= 2000, got {cfg['n']}")
    out = _out_dir(cfg)
    ds, _ = data.gen_gaussian_imbalanced(cfg["n"], cfg["ratio"], seed=cfg["seed"],
                                         dim=cfg["d"])
    hp = model.Hyperparams(dim=cfg["d"], b=cfg["b"])
    samples = [model.LabeledSample(ds.X[t], int(ds.y[t])) for t in range(ds.n)]

    state = model.nrrls_init(hp)
    online_nanos = np.empty(ds.n, dtype=np.int64)
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for t, s in enumerate(samples):
            t0 = time.perf_counter_ns()
            model.nrrls_step(state, s)
            online_nanos[t] = time.perf_counter_ns() - t0

        batch_nanos = np.empty(ds.n, dtype=np.int64)
        for t in range(ds.n):
            prefix_X = ds.X[:t + 1]
            prefix_y = ds.y[:t + 1]
            t0 = time.perf_counter_ns()
            model.batch_ter_solve(prefix_X[prefix_y < 0], prefix_X[prefix_y > 0],
                                  cfg["b"])
            batch_nanos[t] = time.perf_counter_ns() - t0
    finally:
        if gc_was_enabled:
            gc.enable()

    online_prof = evaluation.timing_profile(online_nanos, warmup=cfg["warmup"])
    batch_prof = evaluation.timing_profile(batch_nanos, warmup=cfg["warmup"])

    bench_path = out / "bench.csv"
    with open(bench_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("step,nrrls_nanos,batch_nanos\n")
        for t in range(ds.n):
            f.write(f"{t + 1},{online_nanos[t]},{batch_nanos[t]}\n")

    summary = {
        "n": cfg["n"],
        "d": cfg["d"],
        "warmup": cfg["warmup"],
        "nrrls": {
            "first_decile_mean": online_prof.first_decile_mean,
            "last_decile_mean": online_prof.last_decile_mean,
            "ratio": online_prof.ratio,
        },
        "batch": {
            "first_decile_mean": batch_prof.first_decile_mean,
            "last_decile_mean": batch_prof.last_decile_mean,
            "ratio": batch_prof.ratio,
        },
    }
    _write_json(out / "bench_summary.json", summary)
    _manifest(out, "bench", cfg, {"clock": "perf_counter_ns around learner step only",
                                  "gc": "disabled during measurement"},
              [bench_path, out / "bench_summary.json"])
    return EXIT_OK


DEMO_DEFAULTS = {
    "seed": 0,
    "orders": "1,4",
    "b": model.DEFAULT_B,
    "grid": 101,
    "out": "nrrls_out",
}


def cmd_demo2d(cfg: dict) -> int:
    """Decision-score grids of the plain and rebalanced batch fits."""
    orders = _parse_orders(cfg["orders"])
    out = _out_dir(cfg)
    ds = data.gen_overlap_demo(cfg["seed"])

    points_path = out / "demo_points.csv"
    with open(points_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("x1,x2,y\n")
        for (x1, x2), y in zip(ds.X, ds.y):
            f.write(f"{format_float(x1)},{format_float(x2)},{y:+d}\n")

    g = np.linspace(0.0, 1.0, cfg["grid"])
    gx, gy = np.meshgrid(g, g, indexing="ij")
    grid_pts = np.column_stack([gx.ravel(), gy.ravel()])

    outputs = [points_path]
    errors = []
    for order in orders:
        expander = features.PolyExpander(order=order, raw_dim=2,
                                         mode=features.ExpansionMode.FULL_MULTINOMIAL)
        Xe = features.expand_rows(expander, ds.X)
        Ge = features.expand_rows(expander, grid_pts)
        w_ls = model.batch_ls_solve(Xe, ds.y.astype(np.float64), cfg["b"])
        w_ter = model.batch_ter_solve(Xe[ds.y < 0], Xe[ds.y > 0], cfg["b"])
        e_ls = int((np.where(Xe @ w_ls >= 0, 1, -1) != ds.y).sum())
        e_ter = int((np.where(Xe @ w_ter >= 0, 1, -1) != ds.y).sum())
        errors.append({"order": order, "ls_errors": e_ls, "ter_errors": e_ter})
        grid_path = out / f"demo_grid_order{order}.csv"
        ls_scores = Ge @ w_ls
        ter_scores = Ge @ w_ter
        with open(grid_path, "w", encoding="utf-8", newline="\n") as f:
            f.write("x1,x2,ls_score,ter_score\n")
            for (x1, x2), sl, st in zip(grid_pts, ls_scores, ter_scores):
                f.write(f"{format_float(x1)},{format_float(x2)},"
                        f"{format_float(sl)},{format_float(st)}\n")
        outputs.append(grid_path)

    err_path = out / "demo_errors.csv"
    with open(err_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("order,ls_errors,ter_errors\n")
        for e in errors:
            f.write(f"{e['order']},{e['ls_errors']},{e['ter_errors']}\n")
    outputs.append(err_path)

    _write_json(out / "demo_summary.json", {
        "seed": cfg["seed"],
        "n_neg": ds.n_neg,
        "n_pos": ds.n_pos,
        "errors": errors,
    })
    _manifest(out, "demo2d", cfg, {"grid_domain": "[0,1]^2",
                                   "expansion_mode": "full"},
              outputs + [out / "demo_summary.json"])
    return EXIT_OK


BAYES_DEFAULTS = {
    "n": 5000,
    "ratio": 0.25,
    "mean_sep": 2.0,
    "b": model.DEFAULT_B,
    "seed": 0,
    "out": "nrrls_out",
}


def cmd_bayes(cfg: dict) -> int:
    """Decision agreement of the order-1 online fit with the analytic rule."""
    if cfg["n"] < 100:
        raise ValidationError(f"bayes check needs n >= 100, got {cfg['n']}")
    out = _out_dir(cfg)
    ds, rule = data.gen_gaussian_imbalanced(cfg["n"], cfg["ratio"],
                                            mean_sep=cfg["mean_sep"],
                                            seed=cfg["seed"])
    expander = features.PolyExpander(order=1, raw_dim=ds.raw_dim,
                                     mode=features.ExpansionMode.FULL_MULTINOMIAL)
    Xe = features.expand_rows(expander, ds.X)
    hp = model.Hyperparams(dim=expander.out_dim, b=cfg["b"])
    state = model.nrrls_init(hp)
    w = None
    for t in range(ds.n):
        _, w = model.nrrls_step(state, model.LabeledSample(Xe[t], int(ds.y[t])))
    model_labels = np.where(Xe @ w >= 0, 1, -1)
    bayes_labels = rule.decide(ds.X)
    agreement = float((model_labels == bayes_labels).mean())
    report = {
        "n": cfg["n"],
        "ratio": cfg["ratio"],
        "mean_sep": cfg["mean_sep"],
        "seed": cfg["seed"],
        "n_neg": ds.n_neg,
        "n_pos": ds.n_pos,
        "agreement": agreement,
    }
    _write_json(out / "bayes_report.json", report)
    _manifest(out, "bayes", cfg, {"agreement_sample": "generated dataset points"},
              [out / "bayes_report.json"])
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file or a manifest.json to replay")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("--b", type=float, help="ridge regularization")


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", help="dataset path")
    p.add_argument("--format", choices=("csv", "libsvm"))
    p.add_argument("--label-column", dest="label_column", type=int)
    p.add_argument("--positive-label", dest="positive_label")
    p.add_argument("--dim-hint", dest="dim_hint", type=int)
    p.add_argument("--weighting", choices=("rebalanced", "fixed"))
    p.add_argument("--per-fold-norm", dest="per_fold_norm", action="store_const",
                   const=True, help="fit the scaler on each training fold")
    p.add_argument("--expansion", choices=("auto", "full", "powers"))
    p.add_argument("--dim-limit", dest="dim_limit", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nrrls", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="cross-validated G-mean experiment")
    _add_common(p)
    _add_data_flags(p)
    p.add_argument("--algo", choices=ALGO_CHOICES)
    p.add_argument("--orders", help="comma-separated polynomial orders")
    p.add_argument("--runs", type=int)
    p.add_argument("--gmean-stride", dest="gmean_stride", type=int)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("converge", help="online-vs-batch coefficient trace")
    _add_common(p)
    _add_data_flags(p)
    p.add_argument("--order", type=int)
    p.add_argument("--synthetic-n", dest="synthetic_n", type=int)
    p.add_argument("--synthetic-ratio", dest="synthetic_ratio", type=float)

    p = sub.add_parser("bench", help="per-step timing profile")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--ratio", type=float)
    p.add_argument("--warmup", type=int)

    p = sub.add_parser("demo2d", help="2-d decision-score grids")
    _add_common(p)
    p.add_argument("--orders", help="comma-separated polynomial orders")
    p.add_argument("--grid", type=int)

    p = sub.add_parser("bayes", help="agreement with the analytic weighted rule")
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--ratio", type=float)
    p.add_argument("--mean-sep", dest="mean_sep", type=float)

    return parser


_COMMANDS = {
    "run": (cmd_run, RUN_DEFAULTS),
    "converge": (cmd_converge, CONVERGE_DEFAULTS),
    "bench": (cmd_bench, BENCH_DEFAULTS),
    "demo2d": (cmd_demo2d, DEMO_DEFAULTS),
    "bayes": (cmd_bayes, BAYES_DEFAULTS),
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fn, defaults = _COMMANDS[args.command]
    try:
        cfg = _resolve(args, defaults)
        return fn(cfg)
    except (ValidationError, InvalidRatioError, InsufficientClassSamplesError,
            TooFewRecordsError, ValueError) as exc:
        print(f"error kind=validation msg={exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SingularMatrixError, NumericalSingularityError) as exc:
        print(f"error kind=numerical msg={exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParseError, EmptyFileError, OSError) as exc:
        print(f"error kind=io msg={exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
