"""Randomised checks of the semi-metric axioms, runnable from the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .fuzzy import FuzzySet, binary_entropy, complement
from .metrics import Metric, entropy_distance, minkowski_distance

DOMAIN_SIZE = 20
TRIANGLE_SLACK = 1e-9
SUBADDITIVITY_SLACK = 1e-12


@dataclass
class PropertyResult:
    name: str
    checked: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def _fmt(*sets: FuzzySet) -> str:
    return "; ".join(np.array2string(s.membership, precision=17, separator=",", max_line_width=10**6) for s in sets)


def _triples(rng, count):
    for _ in range(count):
        yield tuple(FuzzySet(rng.random(DOMAIN_SIZE)) for _ in range(3))


def check_semimetric(metric: Metric, triples: int, rng) -> list[PropertyResult]:
    res = {n: PropertyResult(n, 0) for n in ("non-negativity", "symmetry", "identity", "triangle inequality")}

    def fail(name, msg):
        if res[name].counterexample is None:
            res[name].counterexample = msg

    for a, b, c in _triples(rng, triples):
        ab, ba, bc, ac = metric(a, b), metric(b, a), metric(b, c), metric(a, c)
        for r in res.values():
            r.checked += 1
        if min(ab, bc, ac) < 0.0:
            fail("non-negativity", f"negative distance for {_fmt(a, b, c)}")
        if ab != ba:
            fail("symmetry", f"d(A,B)={ab!r} != d(B,A)={ba!r} for {_fmt(a, b)}")
        if metric(a, a) != 0.0:
            fail("identity", f"d(A,A)={metric(a, a)!r} for {_fmt(a)}")
        if ac > ab + bc + TRIANGLE_SLACK:
            fail("triangle inequality", f"d(A,C)={ac!r} > {ab!r}+{bc!r} for {_fmt(a, b, c)}")
    return list(res.values())


def check_subadditivity(samples: int, rng) -> PropertyResult:
    res = PropertyResult("entropy subadditivity", samples)
    p, q = _pq_pairs(samples, rng)
    lhs = binary_entropy(p + q)
    rhs = binary_entropy(p) + binary_entropy(q) + SUBADDITIVITY_SLACK
    bad = np.flatnonzero(lhs > rhs)
    if bad.size:
        i = bad[0]
        res.counterexample = f"H({p[i] + q[i]!r})={lhs[i]!r} > H({p[i]!r})+H({q[i]!r})"
    return res


def _pq_pairs(samples, rng):
    """Random 0 <= p <= q with p + q <= 1."""
    p = rng.random(samples) * 0.5
    q = p + rng.random(samples) * (1.0 - 2.0 * p)
    return p, np.minimum(q, 1.0 - p)


def check_complement(metric: Metric, samples: int, rng) -> PropertyResult:
    res = PropertyResult("complement property", samples)
    for _ in range(samples):
        a = FuzzySet(rng.integers(0, 2, DOMAIN_SIZE).astype(float))
        d = metric(a, complement(a))
        if d != 0.0:
            res.counterexample = f"d(A, not A)={d!r} for crisp {_fmt(a)}"
            break
    return res


def check_permutation(metric: Metric, samples: int, rng) -> PropertyResult:
    res = PropertyResult("permutation invariance", samples)
    for _ in range(samples):
        a, b = FuzzySet(rng.random(DOMAIN_SIZE)), FuzzySet(rng.random(DOMAIN_SIZE))
        perm = rng.permutation(DOMAIN_SIZE)
        d0 = metric(a, b)
        d1 = metric(FuzzySet(a.membership[perm]), FuzzySet(b.membership[perm]))
        if d0 != d1:
            res.counterexample = f"{d0!r} != {d1!r} under permutation {perm.tolist()} of {_fmt(a, b)}"
            break
    return res


def check_minkowski(triples: int, rng) -> list[PropertyResult]:
    out = []
    for r in (1, 2, 3):
        res = PropertyResult(f"minkowski r={r} triangle inequality", triples)
        for a, b, c in _triples(rng, triples):
            ab, bc, ac = (minkowski_distance(x, y, r) for x, y in ((a, b), (b, c), (a, c)))
            if ac > ab + bc + TRIANGLE_SLACK:
                res.counterexample = f"d(A,C)={ac!r} > {ab!r}+{bc!r} for {_fmt(a, b, c)}"
                break
        out.append(res)
    return out


def run_selftest(metric: Metric = entropy_distance, triples: int = 10_000, seed: int = 0) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    samples = max(1, triples // 10)
    results = check_semimetric(metric, triples, rng)
    results.append(check_subadditivity(10 * triples, rng))
    results.append(check_complement(metric, samples, rng))
    results.append(check_permutation(metric, samples, rng))
    results.extend(check_minkowski(triples, rng))
    return results


def faulty_metric() -> Callable[[FuzzySet, FuzzySet], float]:
    """Base-10 entropy distance behind an order-dependent wrapper (negative-path hook)."""

    def h10(p):
        return np.where((p > 0) & (p < 1), -p * np.log10(np.clip(p, 1e-300, 1)) - (1 - p) * np.log10(np.clip(1 - p, 1e-300, 1)), 0.0)

    def metric(a, b):
        d = math.fsum(h10(np.abs(a.membership - b.membership))) / len(a)
        return d + 1e-3 * max(0.0, float(a.membership[0] - b.membership[0]))

    return metric
