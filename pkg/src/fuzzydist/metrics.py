"""Distances between fuzzy sets.

The entropy distance averages, over the domain, the binary entropy (bits) of
the symmetric-difference membership. Crisp complements sit at distance 0, and
distinct sets can be at distance 0, so it is a semi-metric rather than a
metric. The remaining functions are the classical baselines: Minkowski,
alpha-cut Hausdorff, the cardinality ratio S1, and Bonissone's
(power, entropy, centroid, skewness) feature distance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Iterable, Optional

import numpy as np

from .fuzzy import (
    Domain,
    FuzzyError,
    FuzzySet,
    _entropy_terms,
    check_same_domain,
)

Metric = Callable[[FuzzySet, FuzzySet], float]

METRIC_NAMES = ("entropy", "weighted", "minkowski", "hausdorff", "s1", "bonissone")


class WeightError(FuzzyError):
    pass


class ZeroPowerError(FuzzyError):
    pass


class EmptySetError(FuzzyError):
    pass


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Probability weights over the domain (non-negative, sum 1 within 1e-9)."""

    weights: np.ndarray
    domain: Optional[Domain] = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise WeightError("weights must be a non-empty vector")
        if not np.all(np.isfinite(w)) or np.any(w < 0.0):
            raise WeightError("weights must be finite and non-negative")
        if abs(math.fsum(w) - 1.0) > 1e-9:
            raise WeightError(f"weights must sum to 1, got {math.fsum(w)!r}")
        dom = self.domain if self.domain is not None else Domain(w.size)
        if dom.size != w.size:
            raise WeightError(f"{w.size} weights for a domain of size {dom.size}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "domain", dom)

    @classmethod
    def uniform(cls, domain: Domain) -> "WeightVector":
        return cls(np.full(domain.size, 1.0 / domain.size), domain)


@dataclass(frozen=True)
class BonissoneFeatures:
    power: float
    entropy: float  # nats
    centroid: float  # 1-based domain position
    skewness: float

    def __post_init__(self):
        if not self.power > 0.0:
            raise ZeroPowerError("Bonissone features need a set with positive power")

    def as_vector(self) -> np.ndarray:
        return np.array([self.power, self.entropy, self.centroid, self.skewness])


def _sym_diff(a: FuzzySet, b: FuzzySet) -> np.ndarray:
    check_same_domain(a, b)
    return np.maximum(a.membership, b.membership) - np.minimum(a.membership, b.membership)


def entropy_distance(a: FuzzySet, b: FuzzySet) -> float:
    """Mean binary entropy of the symmetric-difference membership, in bits.

    Summation is correctly rounded (``math.fsum``), so the value does not
    depend on the order of domain elements.
    """
    h = _entropy_terms(_sym_diff(a, b))
    return math.fsum(h) / h.size


def weighted_entropy_distance(a: FuzzySet, b: FuzzySet, w: WeightVector) -> float:
    dom = check_same_domain(a, b)
    if not dom.compatible(w.domain):
        raise FuzzyError("weight vector domain does not match the sets")
    h = _entropy_terms(_sym_diff(a, b))
    return math.fsum(w.weights * h)


def minkowski_distance(a: FuzzySet, b: FuzzySet, r: float = 2.0) -> float:
    if not (r >= 1.0) or not math.isfinite(r):
        raise FuzzyError(f"Minkowski order must be a finite real >= 1, got {r!r}")
    check_same_domain(a, b)
    diff = np.abs(a.membership - b.membership)
    return math.fsum(diff**r) ** (1.0 / r)


def hausdorff_crisp(u: Iterable[int], v: Iterable[int]) -> float:
    """Hausdorff distance between two non-empty sets of domain positions."""
    u = np.fromiter(u, dtype=float)
    v = np.fromiter(v, dtype=float)
    if u.size == 0 or v.size == 0:
        raise EmptySetError("Hausdorff distance is undefined for an empty set")
    d = np.abs(u[:, None] - v[None, :])
    return float(max(d.min(axis=0).max(), d.min(axis=1).max()))


def hausdorff_fuzzy(a: FuzzySet, b: FuzzySet, levels: int = 100) -> float:
    """Midpoint-rule integral over alpha of the Hausdorff distance of alpha cuts.

    At a level where both cuts are empty the integrand is 0; where exactly
    one is empty it is the domain diameter N - 1.
    """
    dom = check_same_domain(a, b)
    if int(levels) != levels or levels < 1:
        raise FuzzyError(f"levels must be a positive integer, got {levels!r}")
    pos = np.arange(1, dom.size + 1, dtype=float)
    diameter = float(dom.size - 1)
    total = []
    for k in range(1, levels + 1):
        alpha = (k - 0.5) / levels
        u = pos[a.membership >= alpha]
        v = pos[b.membership >= alpha]
        if u.size == 0 and v.size == 0:
            total.append(0.0)
        elif u.size == 0 or v.size == 0:
            total.append(diameter)
        else:
            total.append(hausdorff_crisp(u, v))
    return math.fsum(total) / levels


def cardinality(a: FuzzySet) -> float:
    return math.fsum(a.membership)


def s1_distance(a: FuzzySet, b: FuzzySet) -> float:
    """``1 - |A & B| / |A | B|``; two empty sets are at distance 0.

    Evaluated as ``sum(max - min) / sum(max)`` so that a small difference is
    not absorbed by the subtraction from 1.
    """
    check_same_domain(a, b)
    uni = math.fsum(np.maximum(a.membership, b.membership))
    if uni == 0.0:
        return 0.0
    return math.fsum(_sym_diff(a, b)) / uni


def bonissone_features(a: FuzzySet) -> BonissoneFeatures:
    m = a.membership
    power = math.fsum(m)
    if power == 0.0:
        raise ZeroPowerError("Bonissone features need a set with positive power")
    x = np.arange(1, m.size + 1, dtype=float)
    inner = (m > 0.0) & (m < 1.0)
    mi = m[inner]
    entropy = math.fsum(-mi * np.log(mi) - (1.0 - mi) * np.log(1.0 - mi))
    centroid = math.fsum(x * m) / power
    skew = math.fsum((x - centroid) ** 3 * m)
    return BonissoneFeatures(power, entropy, centroid, skew)


def bonissone_distance(a: FuzzySet, b: FuzzySet) -> float:
    check_same_domain(a, b)
    d = bonissone_features(a).as_vector() - bonissone_features(b).as_vector()
    return math.sqrt(math.fsum(d * d))


def get_metric(
    name: str,
    *,
    r: Optional[float] = None,
    levels: Optional[int] = None,
    weights: Optional[WeightVector] = None,
) -> Metric:
    """Resolve a metric name plus its parameters into a two-argument callable.

    Parameters must be given exactly when the metric needs them.
    """
    needs = {"minkowski": "r", "hausdorff": "levels", "weighted": "weights"}
    given = {"r": r, "levels": levels, "weights": weights}
    if name not in METRIC_NAMES:
        raise FuzzyError(f"unknown metric {name!r}; choose from {', '.join(METRIC_NAMES)}")
    for param, value in given.items():
        required = needs.get(name) == param
        if required and value is None:
            raise FuzzyError(f"metric {name!r} requires parameter {param!r}")
        if not required and value is not None:
            raise FuzzyError(f"metric {name!r} does not take parameter {param!r}")
    if name == "entropy":
        return entropy_distance
    if name == "weighted":
        return partial(weighted_entropy_distance, w=weights)
    if name == "minkowski":
        return partial(minkowski_distance, r=float(r))
    if name == "hausdorff":
        return partial(hausdorff_fuzzy, levels=int(levels))
    if name == "s1":
        return s1_distance
    return bonissone_distance
