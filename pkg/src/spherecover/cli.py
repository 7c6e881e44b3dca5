"""Command-line front end.

Subcommands: gen, train, predict, experiment, bv, compare, filter.
Every run is a pure function of (config, master seed): re-running a
command writes byte-identical output files.  Progress and warnings go to
stderr; data goes to files and stdout only.

Exit codes: 0 success, 2 input/parse error, 3 schema or model mismatch,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from . import ensemble as ens
from . import evaluation as ev
from . import filters, rsc, stats
from .data import Dataset, SyntheticSpec, gen_synthetic, load_dataset, load_unlabeled, save_dataset, split
from .errors import DataFormatError, InvariantError, SchemaMismatchError, UnusableModelError
from .seeding import derive_seed

log = logging.getLogger("spherecover")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SCHEMA = 3
EXIT_INTERNAL = 4


@dataclass(frozen=True)
class RunResult:
    """Per-spec experiment aggregate; wall-clock stays off the result files
    so re-runs are byte-identical (timings are logged to stderr)."""

    label: str
    accuracies: tuple[float, ...]
    wall_clock: tuple[float, ...]

    @property
    def mean(self) -> float:
        return sum(self.accuracies) / len(self.accuracies)

    @property
    def std(self) -> float:
        if len(self.accuracies) < 2:
            return 0.0
        m = self.mean
        return math.sqrt(sum((a - m) ** 2 for a in self.accuracies) / (len(self.accuracies) - 1))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip() != "")


def _load_config(path) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise DataFormatError(f"{path}: config must be a mapping")
    return doc


def _pick(flag, config: dict, key: str, default):
    """flags > config file > defaults."""
    if flag is not None:
        return flag
    if key in config and config[key] is not None:
        return config[key]
    return default


def _spec_from_mapping(doc: dict) -> ev.ModelSpec:
    known = {
        "name", "scheme", "alpha", "kappa", "ensemble_size", "alpha_grid", "kappa_grid",
        "filter_method", "filter_bins", "filter_top_k", "filter_sample_count",
    }
    unknown = set(doc) - known
    if unknown:
        raise DataFormatError(f"unknown model keys: {sorted(unknown)}")
    kwargs = dict(doc)
    for grid_key in ("alpha_grid", "kappa_grid"):
        if kwargs.get(grid_key) is not None:
            kwargs[grid_key] = tuple(int(v) for v in kwargs[grid_key])
    try:
        return ev.ModelSpec(**kwargs)
    except (TypeError, ValueError) as exc:
        raise DataFormatError(f"bad model spec: {exc}") from None


def _specs_from_args(args, config: dict) -> list[ev.ModelSpec]:
    """A spec from command-line flags when --scheme is given, else the
    config's ``models`` list."""
    if getattr(args, "scheme", None) is not None:
        doc = {
            "scheme": args.scheme,
            "alpha": args.alpha,
            "kappa": args.kappa,
            "ensemble_size": args.ensemble_size if args.ensemble_size is not None else 25,
            "alpha_grid": args.alpha_grid,
            "kappa_grid": args.kappa_grid,
            "filter_method": args.filter,
            "filter_top_k": args.filter_top_k,
            "name": getattr(args, "model_name", None),
        }
        if args.filter_bins is not None:
            doc["filter_bins"] = args.filter_bins
        if args.filter_sample_count is not None:
            doc["filter_sample_count"] = args.filter_sample_count
        doc = {k: v for k, v in doc.items() if v is not None or k == "scheme"}
        return [_spec_from_mapping(doc)]
    models = config.get("models")
    if not models:
        raise DataFormatError("no model given: pass --scheme or a 'models' list in the config")
    return [_spec_from_mapping(m) for m in models]


def _resolve_data(args, config: dict, seed: int) -> tuple[Dataset, str]:
    """Exactly one data source: a CSV path or a synthetic family."""
    data_path = _pick(getattr(args, "data", None), config, "dataset", None)
    syn = dict(config.get("synthetic") or {})
    if getattr(args, "family", None) is not None:
        syn["family"] = args.family
    if getattr(args, "n", None) is not None:
        syn["n"] = args.n
    if getattr(args, "dimensions", None) is not None:
        syn["dimensions"] = args.dimensions
    if data_path is not None and syn.get("family"):
        raise DataFormatError("give either a dataset file or a synthetic family, not both")
    if data_path is not None:
        class_column = _pick(getattr(args, "class_column", None), config, "class_column", None)
        return load_dataset(data_path, class_column), Path(data_path).stem
    if syn.get("family"):
        spec = SyntheticSpec(
            syn["family"], int(syn.get("dimensions", 20)),
            int(syn.get("seed", derive_seed(seed, "synthetic"))),
        )
        n = int(syn.get("n", 600))
        return gen_synthetic(spec, n), spec.family
    raise DataFormatError("no data source: pass --data or --family (or set one in the config)")


def _out_dir(args, config: dict) -> Path:
    out = Path(_pick(args.out, config, "out", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _seed(args, config: dict) -> int:
    return int(_pick(args.seed, config, "seed", 0))


def _model_kind(model) -> str:
    if isinstance(model, ev.MajorityModel):
        return "majority"
    if isinstance(model, ens.EnsembleModel):
        return model.scheme
    return "single"


def _model_to_json(model, attributes) -> str:
    if isinstance(model, ev.MajorityModel):
        return json.dumps(
            {"scheme": "majority", "label": model.label, "attributes": list(attributes)},
            sort_keys=True, indent=2,
        )
    if isinstance(model, ens.EnsembleModel):
        return ens.ensemble_to_json(model, attributes)
    return rsc.model_to_json(model, attributes)


def _load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"{path}: not valid JSON ({exc})") from None
    attributes = doc.get("attributes")
    if "members" in doc:
        return ens.ensemble_from_dict(doc), attributes
    if "spheres" in doc:
        return rsc.model_from_dict(doc), attributes
    if doc.get("scheme") == "majority":
        return ev.MajorityModel(doc["label"]), attributes
    raise DataFormatError(f"{path}: unrecognized model document")


def _sphere_count(model) -> int:
    if isinstance(model, ev.MajorityModel):
        return 0
    if isinstance(model, ens.EnsembleModel):
        return sum(m.n_spheres for m in model.members)
    return model.n_spheres


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    family = _pick(args.family, config.get("synthetic", {}), "family", None)
    if family is None:
        raise DataFormatError("gen needs --family twonorm|ringnorm")
    syn = config.get("synthetic", {})
    spec = SyntheticSpec(
        family,
        int(_pick(args.dimensions, syn, "dimensions", 20)),
        int(_pick(None, syn, "seed", derive_seed(seed, "synthetic"))),
    )
    n = int(_pick(args.n, syn, "n", 600))
    d = gen_synthetic(spec, n)
    target = Path(args.out_file) if args.out_file else out / f"{family}.csv"
    save_dataset(d, target)
    log.info("wrote %d instances to %s", len(d), target)
    return EXIT_OK


def cmd_train(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    train, _ = _resolve_data(args, config, seed)
    specs = _specs_from_args(args, config)
    if len(specs) != 1:
        raise DataFormatError("train expects exactly one model spec")
    spec = specs[0]
    model = ev.fit_model(spec, train, derive_seed(seed, "fit"))
    target = Path(args.model_out) if args.model_out else out / "model.json"
    target.write_text(_model_to_json(model, train.attributes), encoding="utf-8")
    preds = ev.predict_labels(model, train.X, derive_seed(seed, "tie"))
    accuracy = float(np.mean(preds == np.array(train.y, dtype=object)))
    alpha = getattr(model, "alpha", None)
    kappa = getattr(model, "kappa", None)
    members = model.size if isinstance(model, ens.EnsembleModel) else 1
    print(
        f"scheme={_model_kind(model)} alpha={'-' if alpha is None else alpha} "
        f"kappa={'-' if kappa is None else kappa} members={members} "
        f"spheres={_sphere_count(model)} train_accuracy={accuracy:.6f}"
    )
    log.info("model written to %s", target)
    return EXIT_OK


def cmd_predict(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    model, attributes = _load_model(args.model)
    if attributes is None:
        raise DataFormatError(f"{args.model}: model file lacks the attribute list")
    attributes = tuple(attributes)

    with open(args.data, "r", encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        raise DataFormatError(f"{args.data}: empty file")
    if tuple(header) == attributes:
        X = load_unlabeled(args.data, attributes)
        truth = None
    elif tuple(header[:-1]) == attributes:
        d = load_dataset(args.data)
        X, truth = d.X, d.y
    else:
        raise SchemaMismatchError(
            f"{args.data}: columns do not match the model's attributes"
        )

    is_ensemble = isinstance(model, ens.EnsembleModel)
    if is_ensemble:
        preds, tallies = ens.predict(model, X, derive_seed(seed, "vote"), return_tallies=True)
    else:
        preds = ev.predict_labels(model, X, derive_seed(seed, "tie"))
        tallies = None

    target = Path(args.out_file) if args.out_file else out / "predictions.csv"
    with open(target, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        if is_ensemble:
            writer.writerow(["index", "prediction", "votes"])
            for i, p in enumerate(preds):
                votes = ";".join(f"{label}:{c}" for label, c in tallies[i].counts.items())
                writer.writerow([i, p, votes])
        else:
            writer.writerow(["index", "prediction"])
            for i, p in enumerate(preds):
                writer.writerow([i, p])
        if truth is not None:
            accuracy = float(np.mean(preds == np.array(truth, dtype=object)))
            fh.write(f"# accuracy,{accuracy!r}\n")
            print(f"accuracy={accuracy:.6f}")
    log.info("predictions written to %s", target)
    return EXIT_OK


def _flush_partial_runs(out: Path, specs, results, runs, exc) -> None:
    """On failure, persist whatever runs completed plus a failure marker."""
    target = out / "runs.csv"
    with open(target, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "run", "accuracy"])
        for r, (accs, _, _) in enumerate(results):
            for spec, acc in zip(specs, accs):
                writer.writerow([spec.label, r, repr(acc)])
        fh.write(f"# failed after {len(results)} of {runs} runs: {exc}\n")
    log.error("experiment failed; partial results in %s", target)


def _experiment_run(d, specs, master_seed, test_fraction, r, keep_models=False):
    train, test = split(d, test_fraction, derive_seed(master_seed, "run", r))
    started = time.perf_counter()
    accs = []
    models = []
    for j, spec in enumerate(specs):
        model, acc = ev.fit_and_score(
            spec, train, test, derive_seed(master_seed, "run", r, "model", j)
        )
        accs.append(acc)
        models.append(model if keep_models else None)
    return accs, time.perf_counter() - started, models


def cmd_experiment(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    d, dataset_name = _resolve_data(args, config, seed)
    dataset_name = _pick(args.dataset_name, config, "dataset_name", dataset_name)
    specs = _specs_from_args(args, config)
    runs = int(_pick(args.runs, config, "runs", 30))
    if runs < 1:
        raise DataFormatError("runs must be >= 1")
    test_fraction = float(_pick(args.test_fraction, config, "test_fraction", 1.0 / 3.0))
    threads = int(_pick(args.threads, config, "threads", 1))
    save_models = bool(_pick(args.save_models or None, config, "save_models", False))

    results = []
    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futures = [
                    pool.submit(_experiment_run, d, specs, seed, test_fraction, r, save_models)
                    for r in range(runs)
                ]
                for future in futures:
                    results.append(future.result())
        else:
            for r in range(runs):
                results.append(_experiment_run(d, specs, seed, test_fraction, r, save_models))
    except Exception as exc:
        _flush_partial_runs(out, specs, results, runs, exc)
        raise

    if save_models:
        model_dir = out / "models"
        model_dir.mkdir(exist_ok=True)
        for r in range(runs):
            for j, spec in enumerate(specs):
                target = model_dir / f"run{r}_{spec.label}.json"
                target.write_text(_model_to_json(results[r][2][j], d.attributes), encoding="utf-8")

    run_results = []
    for j, spec in enumerate(specs):
        accs = tuple(results[r][0][j] for r in range(runs))
        clocks = tuple(results[r][1] for r in range(runs))
        run_results.append(RunResult(spec.label, accs, clocks))
        log.info("%s: mean=%.4f std=%.4f", spec.label, run_results[-1].mean, run_results[-1].std)
    for r in range(runs):
        log.info("run %d wall-clock %.3fs", r, results[r][1])

    runs_path = out / "runs.csv"
    with open(runs_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["model", "n_runs", "mean_accuracy", "std_accuracy"]
            + [f"run_{r}" for r in range(runs)]
        )
        for rr in run_results:
            writer.writerow(
                [rr.label, runs, repr(rr.mean), repr(rr.std)] + [repr(a) for a in rr.accuracies]
            )

    matrix_path = out / "matrix.csv"
    with open(matrix_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset"] + [rr.label for rr in run_results])
        writer.writerow([dataset_name] + [repr(rr.mean) for rr in run_results])

    for rr in run_results:
        print(f"{rr.label}: mean={rr.mean:.6f} std={rr.std:.6f} runs={runs}")
    log.info("wrote %s and %s", runs_path, matrix_path)
    return EXIT_OK


def cmd_bv(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    d, _ = _resolve_data(args, config, seed)
    specs = _specs_from_args(args, config)
    bv_cfg = config.get("bv", {})
    s = int(_pick(args.training_sets, bv_cfg, "training_sets", 200))
    boot_size = int(_pick(args.bootstrap_size, bv_cfg, "bootstrap_size", 200))
    test_fraction = float(_pick(args.test_fraction, config, "test_fraction", 1.0 / 3.0))

    reports = []
    for spec in specs:
        # one shared stream: every spec sees the same split and bootstraps,
        # so the diff rows compare algorithms, not sampling noise
        report = ev.bv_decompose(d, spec, s, boot_size, test_fraction, derive_seed(seed, "bv"))
        reports.append(report)
        log.info("%s: avg_error=%.4f bias=%.4f net_var=%.4f", spec.label,
                 report.average_error, report.bias, report.net_variance)

    def row_values(rep):
        return [rep.average_error, rep.bias, rep.net_variance,
                rep.unbiased_variance, rep.biased_variance]

    target = out / "bv.csv"
    with open(target, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "avg_error", "bias", "net_var", "var_unbiased", "var_biased"])
        for spec, rep in zip(specs, reports):
            writer.writerow([spec.label] + [repr(v) for v in row_values(rep)])
        if len(reports) >= 2:
            base = row_values(reports[0])
            for j in range(1, len(reports)):
                other = row_values(reports[j])
                cells = []
                for v1, v2 in zip(base, other):
                    if v1 == 0:
                        cells.append("na")
                    else:
                        cells.append(f"{(v2 - v1) / v1 * 100.0:+.2f}")
                writer.writerow([f"diff(1 vs {j + 1})%"] + cells)
    for spec, rep in zip(specs, reports):
        print(
            f"{spec.label}: avg_error={rep.average_error:.6f} bias={rep.bias:.6f} "
            f"net_var={rep.net_variance:.6f} var_unbiased={rep.unbiased_variance:.6f} "
            f"var_biased={rep.biased_variance:.6f}"
        )
    log.info("wrote %s", target)
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _load_config(args.config)
    out = _out_dir(args, config)
    level = float(_pick(args.level, config, "level", 0.05))
    matrix = stats.read_accuracy_matrix(args.matrices)
    summary = stats.friedman_test(matrix)
    cd = stats.nemenyi_cd(summary.n_classifiers, summary.n_datasets, level)
    report = stats.rank_report(summary, cd, level)
    (out / "rank_report.txt").write_text(report, encoding="utf-8")
    written = stats.render_cd_diagram(summary, cd, out / "cd_diagram.svg")
    print(report, end="")
    log.info("wrote rank_report.txt, %s", ", ".join(p.name for p in written))
    return EXIT_OK


def cmd_filter(args) -> int:
    config = _load_config(args.config)
    seed = _seed(args, config)
    out = _out_dir(args, config)
    d, _ = _resolve_data(args, config, seed)
    filter_cfg = config.get("filter", {})
    method = _pick(args.method, filter_cfg, "method", None)
    if method is None:
        raise DataFormatError("filter needs --method chi2|infogain|relief")
    bins = int(_pick(args.filter_bins, filter_cfg, "bins", filters.DEFAULT_BINS))
    top_k = _pick(args.filter_top_k, filter_cfg, "top_k", None)
    top_k = int(top_k) if top_k is not None else d.n_attributes
    sample_count = _pick(args.filter_sample_count, filter_cfg, "sample_count", None)

    from .data import normalize

    d_norm, _ = normalize(d)
    if method == "chi2":
        scores = filters.chi2_scores(d_norm, bins)
    elif method == "infogain":
        scores = filters.infogain_scores(d_norm, bins)
    elif method == "relief":
        scores = filters.relief_scores(d_norm, sample_count, derive_seed(seed, "filter"))
    else:
        raise DataFormatError(f"unknown filter method {method!r}")

    scores_path = out / "scores.csv"
    filters.write_scores_csv(scores, d.attributes, scores_path)
    selected = filters.select_top_k(scores, top_k)
    filtered_path = out / "filtered.csv"
    save_dataset(d.project(selected), filtered_path)
    print(f"selected: {','.join(d.attributes[i] for i in selected)}")
    log.info("wrote %s and %s", scores_path, filtered_path)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    parser.add_argument("--config", default=None, help="YAML config file")
    parser.add_argument("--out", default=None, help="output directory (default .)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads for experiment runs")


def _add_data_flags(parser):
    parser.add_argument("--data", default=None, help="dataset CSV (class label in the last column)")
    parser.add_argument("--class-column", dest="class_column", default=None,
                        help="name of the class column (default: last)")
    parser.add_argument("--family", choices=("twonorm", "ringnorm"), default=None,
                        help="built-in synthetic dataset family")
    parser.add_argument("--n", type=int, default=None, help="synthetic instance count")
    parser.add_argument("--dimensions", type=int, default=None, help="synthetic attribute count")


def _add_model_flags(parser):
    parser.add_argument("--scheme", choices=ev.SCHEMES, default=None)
    parser.add_argument("--alpha", type=int, default=None, help="minimum sphere size")
    parser.add_argument("--alpha-grid", dest="alpha_grid", type=_int_list, default=None,
                        help="comma-separated alpha grid for cross-validated selection")
    parser.add_argument("--kappa", type=int, default=None, help="attributes per subspace member")
    parser.add_argument("--kappa-grid", dest="kappa_grid", type=_int_list, default=None)
    parser.add_argument("--ensemble-size", dest="ensemble_size", type=int, default=None)
    parser.add_argument("--filter", choices=("chi2", "infogain", "relief"), default=None)
    parser.add_argument("--filter-bins", dest="filter_bins", type=int, default=None)
    parser.add_argument("--filter-top-k", dest="filter_top_k", type=int, default=None)
    parser.add_argument("--filter-sample-count", dest="filter_sample_count", type=int, default=None)
    parser.add_argument("--model-name", dest="model_name", default=None,
                        help="label used in report rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherecover",
        description="Randomised sphere cover classifiers, ensembles, and comparison statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic dataset CSV")
    _add_common(p)
    p.add_argument("--family", choices=("twonorm", "ringnorm"), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dimensions", type=int, default=None)
    p.add_argument("--out-file", dest="out_file", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="fit a model and serialize it to JSON")
    _add_common(p)
    _add_data_flags(p)
    _add_model_flags(p)
    p.add_argument("--model-out", dest="model_out", default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify a CSV with a serialized model")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out-file", dest="out_file", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("experiment", help="repeated train/test splits with per-run model selection")
    _add_common(p)
    _add_data_flags(p)
    _add_model_flags(p)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--test-fraction", dest="test_fraction", type=float, default=None)
    p.add_argument("--dataset-name", dest="dataset_name", default=None,
                   help="row label in matrix.csv")
    p.add_argument("--save-models", dest="save_models", action="store_true",
                   help="serialize every run's fitted models under <out>/models/")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bv", help="bias/variance decomposition over bootstrap replicates")
    _add_common(p)
    _add_data_flags(p)
    _add_model_flags(p)
    p.add_argument("--training-sets", dest="training_sets", type=int, default=None)
    p.add_argument("--bootstrap-size", dest="bootstrap_size", type=int, default=None)
    p.add_argument("--test-fraction", dest="test_fraction", type=float, default=None)
    p.set_defaults(func=cmd_bv)

    p = sub.add_parser("compare", help="Friedman/Nemenyi comparison and CD diagram")
    _add_common(p)
    p.add_argument("matrices", nargs="+", help="accuracy matrix CSV file(s), rows stacked")
    p.add_argument("--level", type=float, choices=(0.05, 0.10), default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("filter", help="rank attributes and write the projected dataset")
    _add_common(p)
    _add_data_flags(p)
    p.add_argument("--method", choices=("chi2", "infogain", "relief"), default=None)
    p.add_argument("--filter-bins", dest="filter_bins", type=int, default=None)
    p.add_argument("--filter-top-k", dest="filter_top_k", type=int, default=None)
    p.add_argument("--filter-sample-count", dest="filter_sample_count", type=int, default=None)
    p.set_defaults(func=cmd_filter)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaMismatchError, UnusableModelError) as exc:
        log.error("%s", exc)
        return EXIT_SCHEMA
    except InvariantError as exc:
        log.error("internal invariant violated: %s", exc)
        return EXIT_INTERNAL
    except (DataFormatError, FileNotFoundError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
