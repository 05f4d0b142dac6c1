import math

import numpy as np
import pytest
from conftest import fuzzy_pairs, fuzzy_triples, memberships, unit
from hypothesis import assume, given
from hypothesis import strategies as st

from fuzzydist import (
    Domain,
    DomainMismatchError,
    FuzzyError,
    FuzzySet,
    MembershipError,
    alpha_cut,
    binary_entropy,
    complement,
    fuzzy_set,
    intersection,
    is_crisp,
    sym_diff_membership,
    union,
)


def fs(*values):
    return FuzzySet(list(values))


def test_union_examples():
    assert union(fs(0.2, 0.9), fs(0.5, 0.1)) == fs(0.5, 0.9)
    a = fs(0.3, 0.6)
    assert union(a, a) == a
    crisp = fs(1, 0)
    assert union(crisp, complement(crisp)) == fs(1, 1)


def test_intersection_examples():
    assert intersection(fs(0.2, 0.9), fs(0.5, 0.1)) == fs(0.2, 0.1)
    a = fs(0.3, 0.6)
    assert intersection(a, a) == a
    assert intersection(fs(1, 0), fs(0, 1)) == fs(0, 0)


def test_complement_examples():
    np.testing.assert_allclose(complement(fs(0.0, 1.0, 0.3)).membership, [1.0, 0.0, 0.7])
    assert complement(fs(0.5)) == fs(0.5)


def test_sym_diff_examples():
    assert sym_diff_membership(fs(0.3), fs(0.8)).membership[0] == abs(0.3 - 0.8)
    assert np.all(sym_diff_membership(fs(0.1, 0.7), fs(0.1, 0.7)).membership == 0.0)
    a = fs(1, 0)
    assert sym_diff_membership(a, complement(a)) == fs(1, 1)


@pytest.mark.parametrize("op", [union, intersection, sym_diff_membership])
def test_domain_mismatch(op):
    with pytest.raises(DomainMismatchError):
        op(fs(0.1, 0.2), fs(0.1, 0.2, 0.3))


def test_labelled_domain_mismatch():
    a = fuzzy_set([0.1, 0.2], labels=["x", "y"])
    b = fuzzy_set([0.1, 0.2], labels=["x", "z"])
    with pytest.raises(DomainMismatchError):
        union(a, b)
    # unlabeled sets of the right size are compatible with labeled ones
    assert union(a, fs(0.5, 0.0)).membership.tolist() == [0.5, 0.2]


@pytest.mark.parametrize(
    "values", [[-0.1], [1.5], [float("nan")], [float("inf")], [[0.1, 0.2]], []]
)
def test_invalid_membership(values):
    with pytest.raises(FuzzyError):
        FuzzySet(values)


def test_domain_invariants():
    with pytest.raises(FuzzyError):
        Domain(0)
    with pytest.raises(FuzzyError):
        Domain(2, ("a",))
    with pytest.raises(FuzzyError):
        Domain(2, ("a", "a"))
    with pytest.raises(FuzzyError):
        FuzzySet([0.1, 0.2], Domain(3))


def test_membership_is_immutable():
    a = fs(0.1, 0.2)
    with pytest.raises(ValueError):
        a.membership[0] = 0.5


def test_binary_entropy_examples():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    # frozen from a 40-digit mpmath evaluation
    assert binary_entropy(0.25) == pytest.approx(0.8112781244591328639, abs=1e-15)


@pytest.mark.parametrize("p", [-1e-9, 1.0000001, float("nan"), float("inf")])
def test_binary_entropy_out_of_range(p):
    with pytest.raises(MembershipError):
        binary_entropy(p)


def test_binary_entropy_vectorised():
    out = binary_entropy(np.array([0.0, 0.5, 1.0]))
    assert out.tolist() == [0.0, 1.0, 0.0]


@given(unit)
def test_binary_entropy_symmetric(p):
    # only where 1 - (1 - p) round-trips, so both calls see the same pair
    assume(1.0 - (1.0 - p) == p)
    a, b = binary_entropy(p), binary_entropy(1.0 - p)
    assert a == b or abs(a - b) <= math.ulp(max(a, b))


@given(unit)
def test_binary_entropy_range(p):
    assert 0.0 <= binary_entropy(p) <= 1.0


def test_binary_entropy_zero_and_max_on_grid():
    grid = np.linspace(0.0, 1.0, 10001)
    h = binary_entropy(grid)
    assert set(grid[h == 0.0].tolist()) == {0.0, 1.0}
    near_one = grid[np.abs(h - 1.0) <= 1e-12]
    assert near_one.tolist() == [0.5]


def test_is_crisp():
    assert is_crisp(fs(0, 1, 1, 0))
    assert not is_crisp(fs(0, 0.5))
    assert is_crisp(fs(1))


def test_alpha_cut_examples():
    a = fs(0.2, 0.7, 1.0)
    assert alpha_cut(a, 0.5) == {2, 3}
    assert alpha_cut(a, 1.0) == {3}
    assert alpha_cut(fs(0.2, 0.7, 0.9), np.nextafter(0.9, 1.0)) == frozenset()


@pytest.mark.parametrize("alpha", [0.0, -0.5, 1.01])
def test_alpha_cut_range(alpha):
    with pytest.raises(FuzzyError):
        alpha_cut(fs(0.5), alpha)


@given(fuzzy_pairs())
def test_sym_diff_equals_abs_difference(pair):
    a, b = pair
    assert np.array_equal(sym_diff_membership(a, b).membership, np.abs(a.membership - b.membership))


@given(fuzzy_triples())
def test_lattice_laws(triple):
    a, b, c = triple
    assert union(a, b) == union(b, a)
    assert intersection(a, b) == intersection(b, a)
    assert union(union(a, b), c) == union(a, union(b, c))
    assert intersection(intersection(a, b), c) == intersection(a, intersection(b, c))
    assert union(a, a) == a and intersection(a, a) == a


@given(st.integers(1, 10).flatmap(memberships))
def test_complement_involution(values):
    a = FuzzySet(values)
    back = complement(complement(a)).membership
    # 1 - (1 - x) rounds for some x (0.1 among them); exact wherever it round-trips
    exact = (1.0 - (1.0 - a.membership)) == a.membership
    assert np.array_equal(back[exact], a.membership[exact])
    np.testing.assert_allclose(back, a.membership, rtol=0, atol=math.ulp(1.0))


@given(st.integers(1, 10).flatmap(memberships), unit, unit)
def test_alpha_cut_antitone(values, a1, a2):
    assume(a1 > 0 and a2 > 0)
    lo, hi = sorted((a1, a2))
    s = FuzzySet(values)
    assert alpha_cut(s, hi) <= alpha_cut(s, lo)
