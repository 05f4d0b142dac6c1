import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fuzzydist.dataset import (
    CSVParseError,
    Dataset,
    DatasetError,
    NotNormalizedError,
    RaggedRowError,
    load_csv,
    load_dataset,
    normalize_minmax,
    to_fuzzy_sets,
    write_csv,
)

TABLE1_ATTRIBUTES = (
    "country_GOV_a", "politicians", "EU_GOV", "UN", "country_GOV_b",
    "Life", "National_GOV", "Immigration", "Health", "happy",
)

# rows as printed in the source table, spot-checked independently of the fixture file
PRINTED_ROWS = {
    "Belgium": [0.60, 0.55, 0.69, 0.60, 0.60, 0.72, 0.47, 0.48, 1.00, 0.30],
    "Spain": [0.68, 0.51, 0.74, 0.52, 0.68, 0.72, 0.70, 0.61, 0.73, 0.94],
    "Hungary": [0.20, 0.51, 0.89, 0.42, 0.20, 0.28, 0.69, 0.02, 0.27, 0.06],
    "Russian Fed": [0.49, 0.79, 0.95, 0.29, 0.49, 0.29, 0.92, 0.19, 0.22, 0.08],
    "Ukraine": [0.00, 0.38, 0.94, 0.08, 0.00, 0.00, 0.00, 0.31, 0.00, 0.05],
    "Turkey": [0.87, 1.00, 0.99, 0.00, 0.87, 0.33, 1.00, 0.05, 0.60, 0.00],
}


def test_load_small_csv():
    d = load_csv(b"name,x,y\na,1,2\n\"b, quoted\",3.5,-4\n")
    assert d.entity_labels == ("a", "b, quoted")
    assert d.attribute_labels == ("x", "y")
    np.testing.assert_array_equal(d.raw, [[1, 2], [3.5, -4]])


def test_load_without_header_and_crlf():
    d = load_csv(b"a,1,2\r\nb,3,4\r\n", has_header=False)
    assert d.attribute_labels == ("attr1", "attr2")
    assert d.raw.tolist() == [[1, 2], [3, 4]]


def test_load_text_stream_and_bom():
    assert load_csv(io.StringIO("e,v\nx,0.5\n")).raw.tolist() == [[0.5]]
    assert load_csv("﻿e,v\nx,0.5\n".encode("utf-8")).entity_labels == ("x",)


def test_ragged_row_names_row():
    with pytest.raises(RaggedRowError, match="row 3"):
        load_csv(b"e,x,y\na,1,2\nb,3\n")


def test_non_numeric_cell_location():
    with pytest.raises(CSVParseError) as info:
        load_csv(b"e,x,y\na,1,two\n")
    assert (info.value.row, info.value.column) == (2, 3)


@pytest.mark.parametrize("body", [b"e,x\na,1\na,2\n", b"", b"e,x\n", b"e,x\na,nan\n", b"e,x\na,1,5\n"])
def test_malformed_inputs(body):
    with pytest.raises(DatasetError):
        load_csv(body)


def test_table1_fixture(table1):
    assert len(table1) == 28
    assert table1.raw.shape == (28, 10)
    assert table1.attribute_labels == TABLE1_ATTRIBUTES
    for name, row in PRINTED_ROWS.items():
        assert table1.raw[table1.index(name)].tolist() == row
    assert load_dataset("fixture:table1") == table1


def test_normalize_examples():
    d = Dataset(("a", "b", "c"), ("x", "k"), [[1, 4], [3, 4], [5, 4]])
    n = normalize_minmax(d)
    assert n.normalized[:, 0].tolist() == [0.0, 0.5, 1.0]
    assert n.normalized[:, 1].tolist() == [0.5, 0.5, 0.5]


def test_normalize_table1_is_identity(table1):
    again = normalize_minmax(table1)
    np.testing.assert_allclose(again.normalized, table1.raw, rtol=0, atol=1e-12)


numeric_tables = st.tuples(st.integers(1, 6), st.integers(1, 5)).flatmap(
    lambda s: arrays(np.float64, s, elements=st.floats(-1e6, 1e6, allow_nan=False))
)


def _dataset(values):
    n, m = values.shape
    return Dataset(tuple(f"e{i}" for i in range(n)), tuple(f"a{j}" for j in range(m)), values)


@given(numeric_tables)
def test_normalize_idempotent(values):
    once = normalize_minmax(_dataset(values))
    twice = normalize_minmax(_dataset(once.normalized))
    np.testing.assert_allclose(twice.normalized, once.normalized, rtol=0, atol=1e-12)


@given(numeric_tables)
def test_normalized_range_invariant(values):
    norm = normalize_minmax(_dataset(values)).normalized
    assert np.all((norm >= 0) & (norm <= 1))
    for j in range(norm.shape[1]):
        col = norm[:, j]
        if values[:, j].min() != values[:, j].max():
            assert col.min() == 0.0 and col.max() == 1.0
        else:
            assert np.all(col == 0.5)


@given(numeric_tables)
def test_csv_round_trip(values):
    d = _dataset(values)
    buf = io.StringIO()
    write_csv(d, buf)
    assert load_csv(buf.getvalue().encode()) == d


def test_to_fuzzy_sets(table1):
    sets = to_fuzzy_sets(table1)
    assert len(sets) == 28
    assert sets[0].name == "Belgium"
    assert sets[0].domain.labels == TABLE1_ATTRIBUTES
    assert sets[0].membership.tolist() == PRINTED_ROWS["Belgium"]


def test_to_fuzzy_sets_single_and_flat():
    d = normalize_minmax(Dataset(("only",), ("x", "y"), [[3.0, 7.0]]))
    (s,) = to_fuzzy_sets(d)
    assert s.membership.tolist() == [0.5, 0.5]


def test_to_fuzzy_sets_requires_normalized():
    d = Dataset(("a",), ("x",), [[0.3]])
    with pytest.raises(NotNormalizedError):
        to_fuzzy_sets(d)
    assert to_fuzzy_sets(d, use_raw=True)[0].membership.tolist() == [0.3]


def test_dataset_invariants():
    with pytest.raises(DatasetError):
        Dataset(("a",), ("x", "y"), [[1.0]])
    with pytest.raises(DatasetError):
        Dataset(("a", "b"), ("x",), [[0.0], [0.5]], normalized=[[0.0], [0.5]])
