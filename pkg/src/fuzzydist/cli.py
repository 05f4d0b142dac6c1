"""Command-line front end.

Exit status: 0 success, 1 I/O or parse failure, 2 user-input error,
3 self-test property failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence


from . import __version__
from .cluster import ClusterError, build_distance_matrix, cluster_report, kmeans
from .dataset import DatasetError, load_dataset, normalize_minmax, to_fuzzy_sets
from .fuzzy import FuzzyError, MembershipError
from .metrics import METRIC_NAMES, WeightVector, entropy_distance, get_metric
from .selftest import faulty_metric, run_selftest

log = logging.getLogger("fuzzydist")

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_PROPERTY = 0, 1, 2, 3
DEFAULT_LEVELS = 100
U64_MAX = (1 << 64) - 1


class UsageError(Exception):
    """Bad user input; maps to exit status 2."""


@dataclass
class RunConfig:
    input: str = "fixture:table1"
    metric: str = "entropy"
    r: Optional[float] = None
    levels: Optional[int] = None
    weights: Optional[str] = None
    k: int = 5
    seed: int = 0
    max_iter: int = 300
    out: str = "."
    format: str = "csv"
    normalize: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.metric == "hausdorff" and self.levels is None:
            self.levels = DEFAULT_LEVELS
        needed = {"minkowski": "r", "hausdorff": "levels", "weighted": "weights"}
        for param in ("r", "levels", "weights"):
            present = getattr(self, param) is not None
            if needed.get(self.metric) == param and not present:
                raise UsageError(f"--metric {self.metric} requires --{param}")
            if needed.get(self.metric) != param and present:
                owner = next(m for m, p in needed.items() if p == param)
                raise UsageError(f"--{param} is only valid with --metric {owner}")
        if self.k < 1:
            raise UsageError("--k must be at least 1")
        if self.max_iter < 1:
            raise UsageError("--max-iter must be at least 1")
        if not 0 <= self.seed <= U64_MAX:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(**{k: getattr(args, k) for k in cls.__dataclass_fields__ if hasattr(args, k)})

    def describe(self) -> dict:
        """Parameters that determine results (thread count excluded)."""
        d = asdict(self)
        d.pop("threads")
        d.pop("out")
        return d


def _sig(v: float) -> str:
    return f"{v:.12g}"


def _sigf(v: float) -> float:
    return float(_sig(v))


def load_weights(path: str) -> list[float]:
    with open(path, newline="") as fh:
        cells = [c.strip() for row in csv.reader(fh) for c in row if c.strip()]
    try:
        return [float(c) for c in cells]
    except ValueError as exc:
        raise DatasetError(f"{path}: weights must be numeric ({exc})") from None


def _prepare(cfg: RunConfig):
    data = load_dataset(cfg.input)
    if cfg.normalize:
        data = normalize_minmax(data)
    try:
        sets = to_fuzzy_sets(data, use_raw=data.normalized is None)
    except MembershipError as exc:
        raise UsageError(f"{exc}; pass --normalize to rescale raw values") from exc
    weights = None
    if cfg.weights is not None:
        try:
            weights = WeightVector(load_weights(cfg.weights), sets[0].domain)
        except FuzzyError as exc:
            raise UsageError(f"invalid weights file: {exc}") from exc
    try:
        metric = get_metric(cfg.metric, r=cfg.r, levels=cfg.levels, weights=weights)
    except FuzzyError as exc:
        raise UsageError(str(exc)) from exc
    return data, sets, metric


def _require_names(data, names: Sequence[str]):
    missing = [n for n in names if n not in data.entity_labels]
    if missing:
        raise UsageError("unknown entit" + ("y " if len(missing) == 1 else "ies ") + ", ".join(repr(n) for n in missing))


def _write(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_dist(cfg: RunConfig, name_a: str, name_b: str) -> int:
    data, sets, metric = _prepare(cfg)
    _require_names(data, [name_a, name_b])
    try:
        d = metric(sets[data.index(name_a)], sets[data.index(name_b)])
    except FuzzyError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{d:.6f}")
    return EXIT_OK


def _matrix(cfg: RunConfig, sets, labels, metric):
    try:
        return build_distance_matrix(sets, metric=metric, labels=labels, threads=cfg.threads)
    except (FuzzyError, ClusterError) as exc:
        raise UsageError(str(exc)) from exc


def cmd_matrix(cfg: RunConfig) -> str:
    data, sets, metric = _prepare(cfg)
    dm = _matrix(cfg, sets, data.entity_labels, metric)
    os.makedirs(cfg.out, exist_ok=True)
    if cfg.format == "json":
        path = os.path.join(cfg.out, "matrix.json")
        payload = {"metric": cfg.describe(), "labels": list(dm.labels), "values": [[_sigf(v) for v in row] for row in dm.values]}
        _write(path, json.dumps(payload, indent=2) + "\n")
    else:
        path = os.path.join(cfg.out, "matrix.csv")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["entity", *dm.labels])
        for label, row in zip(dm.labels, dm.values):
            w.writerow([label, *(_sig(v) for v in row)])
        _write(path, buf.getvalue())
    log.info("wrote %s", path)
    return path


def cmd_cluster(cfg: RunConfig) -> tuple[str, str]:
    data, sets, metric = _prepare(cfg)
    if cfg.k > len(sets):
        raise UsageError(f"--k {cfg.k} exceeds the number of entities ({len(sets)})")
    dm = _matrix(cfg, sets, data.entity_labels, metric)
    model = kmeans(dm, k=cfg.k, seed=cfg.seed, max_iter=cfg.max_iter)
    report = cluster_report(model, dm.labels)

    model_d = model.to_dict()
    model_d["centroids"] = [[_sigf(v) for v in c] for c in model_d["centroids"]]
    model_d["point_distances"] = [_sigf(v) for v in model_d["point_distances"]]
    model_d["objective_history"] = [_sigf(v) for v in model_d["objective_history"]]
    for c in report["clusters"]:
        c["mean_distance"] = _sigf(c["mean_distance"])
        for m in c["members"]:
            m["distance"] = _sigf(m["distance"])
    payload = {"config": cfg.describe(), "labels": list(dm.labels), "model": model_d, "report": report}

    os.makedirs(cfg.out, exist_ok=True)
    json_path = os.path.join(cfg.out, "clusters.json")
    _write(json_path, json.dumps(payload, indent=2) + "\n")

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["cluster_index", "entity", "distance_to_centroid"])
    for c in report["clusters"]:
        for m in c["members"]:
            w.writerow([c["cluster"], m["entity"], _sig(m["distance"])])
    scatter_path = os.path.join(cfg.out, "cluster_scatter.csv")
    _write(scatter_path, buf.getvalue())
    for c in report["clusters"]:
        log.info("cluster %d (%d): %s", c["cluster"], c["size"], ", ".join(m["entity"] for m in c["members"]))
    return json_path, scatter_path


def cmd_profiles(cfg: RunConfig, names: Sequence[str]) -> str:
    data, sets, _ = _prepare(cfg)
    _require_names(data, names)
    chosen = list(names) or list(data.entity_labels)
    rows = []
    for name in chosen:
        s = sets[data.index(name)]
        rows.extend((name, attr, float(v)) for attr, v in zip(data.attribute_labels, s.membership))
    os.makedirs(cfg.out, exist_ok=True)
    if cfg.format == "json":
        path = os.path.join(cfg.out, "profiles.json")
        payload = [{"entity": e, "attribute": a, "membership": _sigf(v)} for e, a, v in rows]
        _write(path, json.dumps(payload, indent=2) + "\n")
    else:
        path = os.path.join(cfg.out, "profiles.csv")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["entity", "attribute", "membership"])
        w.writerows((e, a, _sig(v)) for e, a, v in rows)
        _write(path, buf.getvalue())
    return path


def cmd_selftest(triples: int = 10_000, seed: int = 0, inject_fault: bool = False) -> int:
    metric = faulty_metric() if inject_fault else entropy_distance
    results = run_selftest(metric, triples=triples, seed=seed)
    first_failure = None
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name} ({r.checked} cases)")
        if not r.passed and first_failure is None:
            first_failure = r
    if first_failure is not None:
        print(f"counterexample ({first_failure.name}): {first_failure.counterexample}")
        return EXIT_PROPERTY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--metric", choices=METRIC_NAMES, default="entropy")
    common.add_argument("--r", type=float, help="Minkowski order (>= 1)")
    common.add_argument("--levels", type=int, help=f"alpha levels for hausdorff (default {DEFAULT_LEVELS})")
    common.add_argument("--weights", help="CSV of per-attribute weights for --metric weighted")
    common.add_argument("--normalize", action="store_true", help="min-max rescale each attribute first")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    clustering = argparse.ArgumentParser(add_help=False)
    clustering.add_argument("--k", type=int, default=5)
    clustering.add_argument("--seed", type=int, default=0)
    clustering.add_argument("--max-iter", dest="max_iter", type=int, default=300)

    p = argparse.ArgumentParser(prog="fuzzydist", description="Entropy distance for fuzzy sets, baselines and clustering.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", parents=[common], help="distance between two entities")
    d.add_argument("input", help='CSV path or "fixture:table1"')
    d.add_argument("name_a")
    d.add_argument("name_b")

    m = sub.add_parser("matrix", parents=[common], help="write the pairwise distance matrix")
    m.add_argument("input")

    c = sub.add_parser("cluster", parents=[common, clustering], help="k-means on distance-matrix rows")
    c.add_argument("input")

    pr = sub.add_parser("profiles", parents=[common], help="write membership profiles for plotting")
    pr.add_argument("input")
    pr.add_argument("names", nargs="*")

    st = sub.add_parser("selftest", help="randomised semi-metric property checks")
    st.add_argument("--triples", type=int, default=10_000)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, format="%(message)s")
    try:
        if args.command == "selftest":
            if args.triples < 1:
                raise UsageError("--triples must be at least 1")
            return cmd_selftest(args.triples, args.seed, args.inject_fault)
        cfg = RunConfig.from_args(args)
        if args.command == "dist":
            return cmd_dist(cfg, args.name_a, args.name_b)
        if args.command == "matrix":
            cmd_matrix(cfg)
        elif args.command == "cluster":
            cmd_cluster(cfg)
        elif args.command == "profiles":
            cmd_profiles(cfg, args.names)
        return EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
