"""Fuzzy sets over a finite indexed domain and their membership algebra.

Domain elements are addressed 1..N in everything a user sees (alpha cuts,
Hausdorff positions, Bonissone centroids); arrays are 0-based internally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class FuzzyError(ValueError):
    """Base class for invalid fuzzy-set inputs."""


class DomainMismatchError(FuzzyError):
    pass


class MembershipError(FuzzyError):
    pass


@dataclass(frozen=True)
class Domain:
    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 1:
            raise FuzzyError(f"domain size must be a positive integer, got {self.size!r}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.size:
                raise FuzzyError(f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != len(labels):
                raise FuzzyError("domain labels must be distinct")
            object.__setattr__(self, "labels", labels)

    def compatible(self, other: "Domain") -> bool:
        if self.size != other.size:
            return False
        if self.labels is not None and other.labels is not None:
            return self.labels == other.labels
        return True


def _as_membership(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise MembershipError(f"membership must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MembershipError("membership values must be finite")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        bad = int(np.flatnonzero((arr < 0.0) | (arr > 1.0))[0])
        raise MembershipError(f"membership value {arr[bad]!r} at position {bad + 1} is outside [0, 1]")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FuzzySet:
    """A membership vector over a finite domain.

    ``domain`` defaults to an unlabeled domain of the right size.
    """

    membership: np.ndarray
    domain: Optional[Domain] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        m = _as_membership(self.membership)
        if m.size == 0:
            raise FuzzyError("a fuzzy set needs at least one domain element")
        dom = self.domain if self.domain is not None else Domain(m.size)
        if dom.size != m.size:
            raise FuzzyError(f"membership has {m.size} values but domain size is {dom.size}")
        object.__setattr__(self, "membership", m)
        object.__setattr__(self, "domain", dom)

    def __len__(self):
        return self.domain.size

    def __eq__(self, other):
        if not isinstance(other, FuzzySet):
            return NotImplemented
        return self.domain == other.domain and np.array_equal(self.membership, other.membership)

    def __hash__(self):
        return hash((self.domain, self.membership.tobytes()))

    def __repr__(self):
        tag = f"{self.name!r}, " if self.name else ""
        return f"FuzzySet({tag}{self.membership.tolist()})"

    def with_membership(self, values) -> "FuzzySet":
        return FuzzySet(values, self.domain, self.name)


def check_same_domain(*sets: FuzzySet) -> Domain:
    first = sets[0].domain
    for s in sets[1:]:
        if not first.compatible(s.domain):
            raise DomainMismatchError(
                f"domain mismatch: size {first.size} vs size {s.domain.size}"
                if first.size != s.domain.size
                else "domain mismatch: labels differ"
            )
    return first


def union(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    dom = check_same_domain(a, b)
    return FuzzySet(np.maximum(a.membership, b.membership), dom)


def intersection(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    dom = check_same_domain(a, b)
    return FuzzySet(np.minimum(a.membership, b.membership), dom)


def complement(a: FuzzySet) -> FuzzySet:
    return FuzzySet(1.0 - a.membership, a.domain)


def sym_diff_membership(a: FuzzySet, b: FuzzySet) -> FuzzySet:
    """Membership of the fuzzy symmetric difference, ``max - min`` pointwise.

    Equal to ``|m_a - m_b|`` bit for bit.
    """
    dom = check_same_domain(a, b)
    m = np.maximum(a.membership, b.membership) - np.minimum(a.membership, b.membership)
    return FuzzySet(m, dom)


def _entropy_terms(p: np.ndarray) -> np.ndarray:
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        tp = np.where(p > 0.0, -p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
        tq = np.where(q > 0.0, -q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
    # tp + tq == tq + tp exactly, so swapping p and q yields the identical value.
    return tp + tq


def binary_entropy(p):
    """Entropy in bits of a Bernoulli(p) variable, with 0 log 0 = 0.

    Accepts a scalar or an array; returns the same kind.
    """
    arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise MembershipError(f"binary entropy needs p in [0, 1], got {p!r}")
    out = _entropy_terms(arr) + 0.0  # normalises -0.0
    if out.ndim == 0:
        return float(out)
    return out


def is_crisp(a: FuzzySet) -> bool:
    m = a.membership
    return bool(np.all((m == 0.0) | (m == 1.0)))


def alpha_cut(a: FuzzySet, alpha: float) -> frozenset[int]:
    """1-based indices whose membership is at least ``alpha``."""
    if not (0.0 < alpha <= 1.0):
        raise FuzzyError(f"alpha must lie in (0, 1], got {alpha!r}")
    return frozenset(int(i) + 1 for i in np.flatnonzero(a.membership >= alpha))


def fuzzy_set(values: Sequence[float], labels: Optional[Sequence[str]] = None, name: Optional[str] = None) -> FuzzySet:
    dom = Domain(len(values), tuple(labels) if labels is not None else None)
    return FuzzySet(values, dom, name)
