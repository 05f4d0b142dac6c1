"""Pairwise distance matrices and k-means over their rows.

Each entity is embedded as its row of the distance matrix (self-distance
coordinate included) and clustered with Lloyd's iteration under Euclidean
distance, seeded by k-means++.

Seeding uses SplitMix64 (Steele, Lea & Flood 2014): state advances by
0x9E3779B97F4A7C15 and is mixed with the published 30/27/31 shift-multiply
finaliser; a uniform double is the top 53 bits times 2**-53. Any
implementation of those few lines reproduces the same seeds.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .fuzzy import FuzzyError, FuzzySet, check_same_domain
from .metrics import Metric

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class ClusterError(ValueError):
    pass


class PairError(FuzzyError):
    """A metric failed on one specific pair of entities."""

    def __init__(self, label_a: str, label_b: str, cause: Exception):
        super().__init__(f"metric failed for pair ({label_a!r}, {label_b!r}): {cause}")
        self.pair = (label_a, label_b)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        labels = tuple(self.labels)
        n = len(labels)
        if v.shape != (n, n):
            raise ClusterError(f"matrix shape {v.shape} does not match {n} labels")
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise ClusterError("distance matrix entries must be finite and non-negative")
        if not np.array_equal(v, v.T):
            raise ClusterError("distance matrix must be symmetric")
        if np.any(np.diag(v) != 0.0):
            raise ClusterError("distance matrix must have a zero diagonal")
        v.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.labels)

    def row(self, label: str) -> np.ndarray:
        return self.values[self.labels.index(label)]


def build_distance_matrix(
    sets: Sequence[FuzzySet],
    metric: Metric,
    labels: Optional[Sequence[str]] = None,
    threads: int = 1,
) -> DistanceMatrix:
    """Evaluate ``metric`` once per unordered pair and mirror it.

    Pairs may be spread over ``threads`` workers; the result does not depend
    on the thread count.
    """
    n = len(sets)
    if n < 2:
        raise ClusterError("need at least two sets to build a distance matrix")
    if labels is None:
        labels = [s.name if s.name is not None else f"set{i + 1}" for i, s in enumerate(sets)]
    labels = list(labels)
    if len(labels) != n:
        raise ClusterError(f"{len(labels)} labels for {n} sets")
    check_same_domain(*sets)

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def evaluate(pair):
        i, j = pair
        try:
            return float(metric(sets[i], sets[j]))
        except FuzzyError as exc:
            raise PairError(labels[i], labels[j], exc) from exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, pairs))
    else:
        results = [evaluate(p) for p in pairs]

    values = np.zeros((n, n))
    for (i, j), d in zip(pairs, results):
        values[i, j] = values[j, i] = d
    return DistanceMatrix(tuple(labels), values)


@dataclass
class ClusterModel:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray
    point_distances: np.ndarray
    iterations: int
    seed: int
    converged: bool = False
    # sum of squared point-to-centroid distances after each centroid update
    objective_history: list[float] = field(default_factory=list)

    @property
    def objective(self) -> float:
        return float(np.sum(self.point_distances**2))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "seed": self.seed,
            "iterations": self.iterations,
            "converged": self.converged,
            "assignments": [int(a) for a in self.assignments],
            "centroids": [[float(x) for x in c] for c in self.centroids],
            "point_distances": [float(d) for d in self.point_distances],
            "objective_history": [float(o) for o in self.objective_history],
        }


def _sq_dists(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - centroids[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def kmeans_plusplus(x: np.ndarray, k: int, rng: SplitMix64) -> np.ndarray:
    """D^2-weighted seeding; returns the chosen row indices."""
    n = x.shape[0]
    chosen = [rng.below(n)]
    d2 = _sq_dists(x, x[chosen])[:, 0]
    for _ in range(1, k):
        total = float(np.sum(d2))
        if total > 0.0:
            cum = np.cumsum(d2)
            target = rng.random() * cum[-1]
            idx = int(np.searchsorted(cum, target, side="right"))
            idx = min(idx, n - 1)
            while d2[idx] == 0.0:  # guards the cum[-1] rounding edge
                idx -= 1
        else:
            # every point coincides with a centre; take the lowest unused index
            idx = next(i for i in range(n) if i not in chosen)
        chosen.append(idx)
        d2 = np.minimum(d2, _sq_dists(x, x[[idx]])[:, 0])
    return np.array(chosen)


def _repair_empty(x, labels, centroids, k):
    """Move the farthest point of a multi-member cluster into each empty cluster."""
    for j in range(k):
        if np.any(labels == j):
            continue
        counts = np.bincount(labels, minlength=k)
        d = np.sqrt(np.maximum(_sq_dists(x, centroids)[np.arange(len(x)), labels], 0.0))
        d[counts[labels] < 2] = -1.0
        p = int(np.argmax(d))
        log.debug("cluster %d empty; reseeding with point %d", j, p)
        centroids[j] = x[p]
        labels[p] = j
    return labels, centroids


def kmeans(matrix: DistanceMatrix, k: int = 5, seed: int = 0, max_iter: int = 300) -> ClusterModel:
    """Lloyd's iteration on the rows of ``matrix``.

    Stops when assignments repeat or after ``max_iter`` assignment steps.
    Ties go to the lowest cluster index.
    """
    x = np.asarray(matrix.values, dtype=float)
    n = x.shape[0]
    if n == 0:
        raise ClusterError("cannot cluster an empty matrix")
    if int(k) != k or not 1 <= k <= n:
        raise ClusterError(f"k must be an integer in [1, {n}], got {k!r}")
    if int(max_iter) != max_iter or max_iter < 1:
        raise ClusterError(f"max_iter must be a positive integer, got {max_iter!r}")

    rng = SplitMix64(seed)
    centroids = x[kmeans_plusplus(x, k, rng)].copy()
    labels = None
    history: list[float] = []
    converged = False
    iterations = 0

    for it in range(1, max_iter + 1):
        new = np.argmin(_sq_dists(x, centroids), axis=1)
        new, centroids = _repair_empty(x, new, centroids, k)
        if labels is not None and np.array_equal(new, labels):
            converged = True
            break
        labels = new
        iterations = it
        for j in range(k):
            centroids[j] = x[labels == j].mean(axis=0)
        history.append(float(np.sum(_sq_dists(x, centroids)[np.arange(n), labels])))

    dists = np.sqrt(np.maximum(_sq_dists(x, centroids)[np.arange(n), labels], 0.0))
    return ClusterModel(
        k=int(k),
        assignments=labels,
        centroids=centroids,
        point_distances=dists,
        iterations=iterations,
        seed=int(seed),
        converged=converged,
        objective_history=history,
    )


def cluster_report(model: ClusterModel, labels: Sequence[str]) -> dict:
    """Members of each cluster with their distance to the centroid, nearest first."""
    if len(labels) != len(model.assignments):
        raise ClusterError(f"{len(labels)} labels for {len(model.assignments)} points")
    clusters = []
    for j in range(model.k):
        idx = [i for i in range(len(labels)) if model.assignments[i] == j]
        idx.sort(key=lambda i: (model.point_distances[i], i))
        members = [{"entity": labels[i], "distance": float(model.point_distances[i])} for i in idx]
        mean = float(np.mean([m["distance"] for m in members])) if members else 0.0
        clusters.append({"cluster": j, "size": len(members), "mean_distance": mean, "members": members})
    return {"k": model.k, "clusters": clusters}
