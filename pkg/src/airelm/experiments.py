"""Config-driven experiment harness.

Four experiment families (antenna sweep, SNR sweep, Ricean-factor sweep,
online re-training) plus a single-point run, each averaging over a seed
sweep.  Every per-trial random quantity derives from the master seed through
the documented substream registry in `rng`, so any trial can be re-run in
isolation and repeated runs are byte-identical.

Trial wall-times are measured and reported in the run manifest and the
stdout summary, but deliberately kept out of the results CSV so that a
repeated run with the same master seed produces byte-identical CSV bytes.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .activation import RappParams
from .channel import (ArConfig, NoiseModel, NOISELESS, RiceanConfig,
                      sample_ricean, evolve_ar, sigma2_for_snr)
from .config import ExperimentConfig, config_to_dict
from .data import (Dataset, RawTable, load_csv, load_idx, load_wbcd,
                   mnist_binarize, secom_prepare, split_standardize,
                   synth_two_gaussians)
from .elm import (HiddenLayer, classify, digital_elm_hidden, fit,
                  online_update, predict)
from .errors import ConfigError
from .rng import (RngStream, SUB_SPLIT, SUB_CHANNEL, SUB_TRAIN_NOISE,
                  SUB_TEST_NOISE, SUB_DIGITAL, SUB_MINIBATCH, SUB_AR,
                  SUB_SYNTH, SUB_FEATSEL)

# Fixed CSV schema, shared by all experiment kinds (union schema; cells that
# do not apply stay empty).  Wall-times are excluded on purpose.
TRIAL_COLUMNS = ("experiment", "dataset", "seed", "model", "n_r", "snr_db",
                 "kappa", "eta", "step", "iteration", "accuracy",
                 "normalized_accuracy", "train_residual", "receive_power")

SUMMARY_COLUMNS = ("model", "n_r", "snr_db", "kappa", "eta", "step",
                   "iteration", "n_trials", "mean_accuracy", "std_accuracy",
                   "min_accuracy", "max_accuracy", "mean_normalized_accuracy",
                   "mean_receive_power", "mean_wall_ms")


@dataclass
class TrialResult:
    """One per-seed outcome row (or one online trace point)."""

    experiment: str
    dataset: str
    seed: int
    model: str                      # "mimo" | "digital"
    n_r: int
    snr_db: float
    kappa: float
    eta: float = None               # online runs only
    step: int = None                # online: channel step index (1-based)
    iteration: int = None           # online: 0 = pre-update state
    accuracy: float = None
    normalized_accuracy: float = None
    train_residual: float = None
    receive_power: float = None
    wall_ms: float = None           # manifest/summary only, never in CSV


# ---------------------------------------------------------------------------
# dataset plumbing

def _load_base_table(cfg: ExperimentConfig):
    """Load the seed-independent part of the dataset (None for synthetic)."""
    ds = cfg.dataset
    if ds.name == "synthetic":
        return None
    if ds.name == "wbcd":
        return load_wbcd(ds.path)
    if ds.name == "csv":
        return load_csv(ds.path, ds.label_column, delimiter=ds.delimiter,
                        missing_token=ds.missing_token,
                        has_header=ds.has_header, label_map=ds.label_map)
    if ds.name == "mnist":
        return load_idx(ds.images, ds.labels)
    if ds.name == "secom":
        # SECOM ships as two files: a space-separated feature matrix and a
        # label file whose first column is the -1/+1 label.
        return _load_secom(ds.path, ds.labels)
    raise ConfigError(f"unknown dataset name {ds.name!r}")


def _load_secom(features_path, labels_path) -> RawTable:
    import csv as _csv
    with open(features_path) as fh:
        feat_rows = [r.split() for r in fh if r.strip()]
    with open(labels_path) as fh:
        label_rows = [r.split() for r in fh if r.strip()]
    feats = np.empty((len(feat_rows), len(feat_rows[0])))
    mask = np.ones_like(feats, dtype=bool)
    from .errors import DataError
    for i, row in enumerate(feat_rows):
        if len(row) != feats.shape[1]:
            raise DataError(f"{features_path}:{i + 1}: ragged row")
        for j, cell in enumerate(row):
            if cell == "NaN":
                feats[i, j] = np.nan
                mask[i, j] = False
            else:
                feats[i, j] = float(cell)
    if len(label_rows) != len(feat_rows):
        raise DataError(
            f"SECOM: {len(feat_rows)} feature rows vs {len(label_rows)} labels")
    labels = np.array([int(float(r[0])) for r in label_rows])
    return RawTable(features=feats, labels=labels, present=mask)


def _trial_dataset(cfg: ExperimentConfig, base_table, trial: RngStream) -> Dataset:
    """Per-seed dataset: selection/generation + subsample + split/standardize."""
    ds = cfg.dataset
    if ds.name == "synthetic":
        table = synth_two_gaussians(trial.split(SUB_SYNTH), ds.synth_size,
                                    ds.synth_d, ds.synth_separation)
    elif ds.name == "mnist":
        table = mnist_binarize(base_table, ds.mnist_pixels,
                               trial.split(SUB_FEATSEL))
    elif ds.name == "secom":
        table = secom_prepare(base_table, ds.secom_features,
                              trial.split(SUB_FEATSEL))
    else:
        table = base_table
    if ds.subsample is not None and ds.subsample < table.n_rows:
        keep = np.sort(trial.split(SUB_FEATSEL, 1).choice(
            table.n_rows, ds.subsample, replace=False))
        table = RawTable(features=table.features[keep],
                         labels=table.labels[keep],
                         present=table.present[keep],
                         feature_names=table.feature_names)
    return split_standardize(table, ds.train_ratio, trial.split(SUB_SPLIT))


# ---------------------------------------------------------------------------
# single-trial cores

def _rapp_params(cfg: ExperimentConfig) -> RappParams:
    return RappParams(y_sat=cfg.y_sat, alpha=cfg.alpha)


def _channel_cfg(cfg: ExperimentConfig, n_r: int, d: int, kappa: float) -> RiceanConfig:
    return RiceanConfig(n_r=n_r, n_t=d + 1, kappa=kappa, pathloss=cfg.pathloss,
                        los_angle_rx=cfg.los_angle_rx,
                        los_angle_tx=cfg.los_angle_tx)


def _augmented_train(dataset: Dataset) -> np.ndarray:
    return np.hstack([dataset.x_train,
                      np.ones((dataset.x_train.shape[0], 1))])


def _accuracy(model, dataset: Dataset, rng) -> float:
    t_hat = predict(model, dataset.x_test, rng)
    return float(np.mean(classify(t_hat) == dataset.t_test))


def _mimo_trial(cfg, dataset, trial, n_r: int, kappa: float, snr_db: float):
    """Fit and evaluate one over-the-air ELM trial; returns a result triple."""
    chan = sample_ricean(_channel_cfg(cfg, n_r, dataset.d, kappa),
                         trial.split(SUB_CHANNEL))
    if np.isposinf(snr_db):
        noise = NOISELESS
    else:
        sigma2 = sigma2_for_snr(chan.h_real, _augmented_train(dataset), snr_db)
        noise = NoiseModel(sigma2)
    layer = HiddenLayer(h_real=chan.h_real, rapp=_rapp_params(cfg), noise=noise)
    model = fit(layer, dataset.x_train, dataset.t_train,
                trial.split(SUB_TRAIN_NOISE))
    acc = _accuracy(model, dataset, trial.split(SUB_TEST_NOISE))
    return acc, model.train_residual, model.receive_power


def _digital_trial(cfg, dataset, trial, n_hidden: int):
    """Digital-ELM baseline: random uniform weights, sigmoid, no channel."""
    layer = digital_elm_hidden(trial.split(SUB_DIGITAL), n_hidden, dataset.d,
                               low=cfg.digital_low, high=cfg.digital_high)
    model = fit(layer, dataset.x_train, dataset.t_train)
    acc = _accuracy(model, dataset, None)
    return acc, model.train_residual, model.receive_power


# ---------------------------------------------------------------------------
# experiment runners

def _run_grid(cfg: ExperimentConfig, experiment: str, points):
    """Shared sweep driver.

    points is a list of (n_r, kappa, snr_db, with_baseline) tuples; for every
    point x seed, one mimo trial (plus optionally one digital trial) runs.
    Results are ordered by (point, seed, model) regardless of thread count.
    """
    base_table = _load_base_table(cfg)
    ds_name = cfg.dataset.name

    def one(task):
        n_r, kappa, snr_db, with_baseline = task[0]
        seed = task[1]
        trial = RngStream(cfg.master_seed).split(seed)
        dataset = _trial_dataset(cfg, base_table, trial)
        rows = []
        t0 = time.perf_counter()
        acc, resid, power = _mimo_trial(cfg, dataset, trial, n_r, kappa, snr_db)
        rows.append(TrialResult(
            experiment=experiment, dataset=ds_name, seed=seed, model="mimo",
            n_r=n_r, snr_db=snr_db, kappa=kappa, accuracy=acc,
            train_residual=resid, receive_power=power,
            wall_ms=(time.perf_counter() - t0) * 1e3))
        if with_baseline:
            t0 = time.perf_counter()
            acc, resid, power = _digital_trial(cfg, dataset, trial, n_r)
            rows.append(TrialResult(
                experiment=experiment, dataset=ds_name, seed=seed,
                model="digital", n_r=n_r, snr_db=float("inf"), kappa=kappa,
                accuracy=acc, train_residual=resid, receive_power=power,
                wall_ms=(time.perf_counter() - t0) * 1e3))
        return rows

    tasks = [(point, seed) for point in points for seed in range(cfg.seeds)]
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            nested = list(pool.map(one, tasks))
    else:
        nested = [one(t) for t in tasks]
    return [row for rows in nested for row in rows]


def run_sweep_nr(cfg: ExperimentConfig):
    """Accuracy versus antenna count N_r (Fig.-2-style experiment)."""
    cfg = cfg.resolved()
    points = [(int(g), cfg.kappa, cfg.snr_db, cfg.baseline) for g in cfg.grid]
    return _run_grid(cfg, "sweep_nr", points)


def run_sweep_snr(cfg: ExperimentConfig):
    """Accuracy versus receive SNR, plus a noise-free reference column."""
    cfg = cfg.resolved()
    points = [(cfg.n_r, cfg.kappa, float(g), False) for g in cfg.grid]
    points.append((cfg.n_r, cfg.kappa, float("inf"), False))  # reference
    return _run_grid(cfg, "sweep_snr", points)


def run_sweep_kappa(cfg: ExperimentConfig):
    """Accuracy versus Ricean factor kappa (LoS dominance)."""
    cfg = cfg.resolved()
    points = [(cfg.n_r, float(g), cfg.snr_db, False) for g in cfg.grid]
    return _run_grid(cfg, "sweep_kappa", points)


def run_single(cfg: ExperimentConfig):
    """One grid point (n_r, kappa, snr) over the seed sweep."""
    cfg = cfg.resolved()
    points = [(cfg.n_r, cfg.kappa, cfg.snr_db, cfg.baseline)]
    return _run_grid(cfg, "single", points)


def run_online(cfg: ExperimentConfig):
    """Online re-training under an AR(1) aging channel.

    Per seed: fit the closed form on H(0); then for each channel step,
    evolve H, record the pre-update normalized accuracy (iteration 0) and
    the trace of the mini-batch rule (iterations 1..n), where the
    normalizer is the full-data LS solution recomputed under the stepped
    channel.
    """
    cfg = cfg.resolved()
    base_table = _load_base_table(cfg)
    ds_name = cfg.dataset.name
    ar = ArConfig(eta=cfg.eta)

    def one(seed):
        trial = RngStream(cfg.master_seed).split(seed)
        dataset = _trial_dataset(cfg, base_table, trial)
        t0 = time.perf_counter()
        chan = sample_ricean(
            _channel_cfg(cfg, cfg.n_r, dataset.d, cfg.kappa),
            trial.split(SUB_CHANNEL))
        if np.isposinf(cfg.snr_db):
            noise = NOISELESS
        else:
            noise = NoiseModel(sigma2_for_snr(
                chan.h_real, _augmented_train(dataset), cfg.snr_db))
        train_noise = trial.split(SUB_TRAIN_NOISE)
        test_noise = trial.split(SUB_TEST_NOISE)
        ar_rng = trial.split(SUB_AR)
        batch_rng = trial.split(SUB_MINIBATCH)

        layer = HiddenLayer(h_real=chan.h_real, rapp=_rapp_params(cfg),
                            noise=noise)
        model = fit(layer, dataset.x_train, dataset.t_train, train_noise)
        rows = []
        for step in range(1, cfg.steps + 1):
            chan = evolve_ar(chan, ar, ar_rng)
            layer_k = HiddenLayer(h_real=chan.h_real, rapp=layer.rapp,
                                  noise=layer.noise)
            # normalizer: closed-form refit on the full data under H(k)
            full = fit(layer_k, dataset.x_train, dataset.t_train, train_noise)
            acc_full = _accuracy(full, dataset, test_noise)

            def norm_acc(m):
                acc = _accuracy(m, dataset, test_noise)
                return acc, (acc / acc_full if acc_full > 0 else float("nan"))

            stale = ElmModelView(model.w, layer_k)
            acc, nacc = norm_acc(stale)
            rows.append(TrialResult(
                experiment="online", dataset=ds_name, seed=seed, model="mimo",
                n_r=cfg.n_r, snr_db=cfg.snr_db, kappa=cfg.kappa, eta=cfg.eta,
                step=step, iteration=0, accuracy=acc,
                normalized_accuracy=nacc,
                receive_power=float(model.w @ model.w)))

            trace = []

            def record(i, m):
                trace.append((i, m))

            model = online_update(model, chan.h_real, dataset, cfg.gamma,
                                  cfg.batch_size, cfg.iters_per_step,
                                  batch_rng, noise_rng=train_noise,
                                  callback=record)
            for i, m in trace:
                acc, nacc = norm_acc(m)
                rows.append(TrialResult(
                    experiment="online", dataset=ds_name, seed=seed,
                    model="mimo", n_r=cfg.n_r, snr_db=cfg.snr_db,
                    kappa=cfg.kappa, eta=cfg.eta, step=step, iteration=i + 1,
                    accuracy=acc, normalized_accuracy=nacc,
                    receive_power=float(m.receive_power)))
        wall = (time.perf_counter() - t0) * 1e3
        for r in rows:
            r.wall_ms = wall / len(rows)
        return rows

    seeds = list(range(cfg.seeds))
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            nested = list(pool.map(one, seeds))
    else:
        nested = [one(s) for s in seeds]
    return [row for rows in nested for row in rows]


class ElmModelView:
    """A stale combiner paired with a new channel layer, for evaluation only."""

    def __init__(self, w, hidden):
        self.w = w
        self.hidden = hidden
        self.receive_power = float(w @ w)


RUNNERS = {
    "sweep_nr": run_sweep_nr,
    "sweep_snr": run_sweep_snr,
    "sweep_kappa": run_sweep_kappa,
    "online": run_online,
    "single": run_single,
}


# ---------------------------------------------------------------------------
# aggregation and emission

def summarize(results):
    """Per-grid-point aggregate: mean/std/min/max accuracy, mean ||w||^2,
    mean wall time.  std is the population standard deviation."""
    if not results:
        raise ValueError("summarize: empty result list")
    groups = {}
    for r in results:
        key = (r.model, r.n_r, r.snr_db, r.kappa, r.eta, r.step, r.iteration)
        groups.setdefault(key, []).append(r)
    table = []
    for key in groups:
        rows = groups[key]
        accs = np.array([r.accuracy for r in rows], dtype=float)
        naccs = [r.normalized_accuracy for r in rows
                 if r.normalized_accuracy is not None]
        powers = [r.receive_power for r in rows if r.receive_power is not None]
        walls = [r.wall_ms for r in rows if r.wall_ms is not None]
        table.append({
            "model": key[0], "n_r": key[1], "snr_db": key[2], "kappa": key[3],
            "eta": key[4], "step": key[5], "iteration": key[6],
            "n_trials": len(rows),
            "mean_accuracy": float(accs.mean()),
            "std_accuracy": float(accs.std()),
            "min_accuracy": float(accs.min()),
            "max_accuracy": float(accs.max()),
            "mean_normalized_accuracy":
                float(np.mean(naccs)) if naccs else None,
            "mean_receive_power": float(np.mean(powers)) if powers else None,
            "mean_wall_ms": float(np.mean(walls)) if walls else None,
        })
    table.sort(key=lambda row: tuple(
        (v is None, v) for v in (row["model"], row["n_r"], row["snr_db"],
                                 row["kappa"], row["eta"], row["step"],
                                 row["iteration"])))
    return table


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if np.isposinf(value):
            return "inf"
        return str(float(value))
    return str(value)


def emit_csv(table, path, columns=TRIAL_COLUMNS) -> None:
    """Write results (TrialResult list or dict list) as RFC-4180-style CSV."""
    import csv as _csv
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from None
    with fh:
        writer = _csv.writer(fh)
        writer.writerow(columns)
        for row in table:
            if isinstance(row, dict):
                writer.writerow([_fmt(row.get(c)) for c in columns])
            else:
                writer.writerow([_fmt(getattr(row, c)) for c in columns])


def load_results_csv(path):
    """Re-parse an emitted CSV into a list of dicts (strings kept as-is)."""
    import csv as _csv
    with open(path, newline="") as fh:
        return [dict(row) for row in _csv.DictReader(fh)]


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(cfg: ExperimentConfig, results, csv_path) -> str:
    """Sidecar JSON recording config, seed, version, dataset checksums, and
    timing (timing lives here, not in the CSV, to keep CSV bytes stable)."""
    checksums = {}
    ds = cfg.dataset
    for p in (ds.path, ds.images, ds.labels):
        if p is not None:
            checksums[p] = sha256_file(p)
    if ds.name == "synthetic":
        checksums["synthetic"] = (
            f"size={ds.synth_size},d={ds.synth_d},sep={ds.synth_separation}")
    walls = [r.wall_ms for r in results if r.wall_ms is not None]
    manifest = {
        "config": config_to_dict(cfg),
        "master_seed": cfg.master_seed,
        "library_version": __version__,
        "dataset_checksums": checksums,
        "n_result_rows": len(results),
        "total_wall_ms": float(np.sum(walls)) if walls else 0.0,
        "mean_trial_wall_ms": float(np.mean(walls)) if walls else 0.0,
        "created_unix": int(time.time()),
    }
    path = str(csv_path) + ".manifest.json"
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def run(cfg: ExperimentConfig):
    """Dispatch on cfg.kind; emit CSV + manifest when an output path is set."""
    cfg = cfg.resolved()
    results = RUNNERS[cfg.kind](cfg)
    if cfg.out is not None:
        emit_csv(results, cfg.out)
        write_manifest(cfg, results, cfg.out)
    return results
