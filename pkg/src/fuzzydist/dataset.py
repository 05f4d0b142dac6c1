"""Labeled attribute tables: CSV ingestion, min-max normalisation, fuzzy sets.

CSV layout: optional header row, entity name in the first column, decimal
numbers in the rest. The ESS round 4 country table ships as a fixture.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from importlib import resources
from typing import IO, Optional, Union

import numpy as np

from .fuzzy import Domain, FuzzySet

FIXTURE_NAME = "fixture:table1"
TABLE1_FILE = "ess_round4_table1.csv"


class DatasetError(ValueError):
    pass


class CSVParseError(DatasetError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[int] = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.row = row
        self.column = column


class RaggedRowError(CSVParseError):
    pass


class NotNormalizedError(DatasetError):
    pass


@dataclass(frozen=True, eq=False)
class Dataset:
    entity_labels: tuple[str, ...]
    attribute_labels: tuple[str, ...]
    raw: np.ndarray
    normalized: Optional[np.ndarray] = None

    def __post_init__(self):
        raw = np.array(self.raw, dtype=float, ndmin=2)
        n, m = len(self.entity_labels), len(self.attribute_labels)
        if raw.shape != (n, m):
            raise DatasetError(f"raw values have shape {raw.shape}, labels imply {(n, m)}")
        if not np.all(np.isfinite(raw)):
            raise DatasetError("raw values must be finite")
        raw.setflags(write=False)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "entity_labels", tuple(self.entity_labels))
        object.__setattr__(self, "attribute_labels", tuple(self.attribute_labels))
        if self.normalized is not None:
            norm = np.array(self.normalized, dtype=float, ndmin=2)
            if norm.shape != raw.shape or np.any(norm < 0.0) or np.any(norm > 1.0):
                raise DatasetError("normalized values must match raw shape and lie in [0, 1]")
            lo, hi = norm.min(axis=0), norm.max(axis=0)
            varying = lo != hi
            if np.any(lo[varying] != 0.0) or np.any(hi[varying] != 1.0):
                raise DatasetError("each non-constant normalized column must span exactly [0, 1]")
            norm.setflags(write=False)
            object.__setattr__(self, "normalized", norm)

    def __len__(self):
        return len(self.entity_labels)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        same_norm = (self.normalized is None and other.normalized is None) or (
            self.normalized is not None
            and other.normalized is not None
            and np.array_equal(self.normalized, other.normalized)
        )
        return (
            self.entity_labels == other.entity_labels
            and self.attribute_labels == other.attribute_labels
            and np.array_equal(self.raw, other.raw)
            and same_norm
        )

    def index(self, entity: str) -> int:
        return self.entity_labels.index(entity)

    def subset(self, entities) -> "Dataset":
        idx = [self.index(e) for e in entities]
        return Dataset(
            tuple(self.entity_labels[i] for i in idx),
            self.attribute_labels,
            self.raw[idx],
            None if self.normalized is None else self.normalized[idx],
        )


def _text_stream(source) -> IO[str]:
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(bytes(source).decode("utf-8-sig"), newline="")
    if isinstance(source, str):
        return io.StringIO(source, newline="")
    if isinstance(source, io.TextIOBase):
        return source
    # binary file-like
    return io.TextIOWrapper(source, encoding="utf-8-sig", newline="")


def load_csv(source: Union[bytes, str, IO], has_header: bool = True) -> Dataset:
    """Parse a dataset from CSV bytes, text, or an open (binary or text) stream.

    Row and column numbers in errors are 1-based and count the header.
    """
    reader = csv.reader(_text_stream(source))
    rows = [(num, row) for num, row in enumerate(reader, start=1) if any(c.strip() for c in row)]
    if not rows:
        raise CSVParseError("empty input")
    if has_header:
        _, header = rows[0]
        rows = rows[1:]
        attrs = [h.strip() for h in header[1:]]
        if len(set(attrs)) != len(attrs):
            raise CSVParseError("duplicate attribute names in header", row=1)
    else:
        attrs = [f"attr{j}" for j in range(1, len(rows[0][1]))]
    if not attrs:
        raise CSVParseError("need at least one numeric column", row=rows[0][0] if rows else 1)
    if not rows:
        raise CSVParseError("no data rows")

    width = len(attrs) + 1
    names, values, seen = [], [], {}
    for num, row in rows:
        if len(row) != width:
            raise RaggedRowError(f"expected {width} cells, found {len(row)} (entity {row[0]!r})", row=num)
        name = row[0].strip()
        if name in seen:
            raise CSVParseError(f"duplicate entity name {name!r} (first seen on row {seen[name]})", row=num)
        seen[name] = num
        parsed = []
        for col, cell in enumerate(row[1:], start=2):
            try:
                v = float(cell)
            except ValueError:
                raise CSVParseError(f"non-numeric cell {cell!r}", row=num, column=col) from None
            if not math.isfinite(v):
                raise CSVParseError(f"non-finite cell {cell!r}", row=num, column=col)
            parsed.append(v)
        names.append(name)
        values.append(parsed)
    return Dataset(tuple(names), tuple(attrs), np.array(values, dtype=float))


def write_csv(d: Dataset, stream: IO[str], normalized: bool = False) -> None:
    """Write ``d`` so that ``load_csv`` reproduces it exactly (``repr`` floats)."""
    values = d.normalized if normalized else d.raw
    if values is None:
        raise NotNormalizedError("dataset has no normalized values")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["entity", *d.attribute_labels])
    for name, row in zip(d.entity_labels, values):
        w.writerow([name, *(repr(float(v)) for v in row)])


def load_table1() -> Dataset:
    """The 28-country ESS round 4 table of membership values.

    Values are already in [0, 1]; ``normalized`` is filled with them as-is.
    """
    data = resources.files("fuzzydist").joinpath("data", TABLE1_FILE).read_bytes()
    d = load_csv(data, has_header=True)
    return replace(d, normalized=d.raw)


def load_dataset(path: str, has_header: bool = True) -> Dataset:
    if path == FIXTURE_NAME:
        return load_table1()
    with open(path, "rb") as fh:
        return load_csv(fh, has_header=has_header)


def normalize_minmax(d: Dataset) -> Dataset:
    """Rescale each column to [0, 1]; constant columns become 0.5."""
    raw = d.raw
    lo = raw.min(axis=0)
    hi = raw.max(axis=0)
    span = hi - lo
    out = np.full(raw.shape, 0.5)
    varying = span > 0
    out[:, varying] = (raw[:, varying] - lo[varying]) / span[varying]
    # guard against rounding just outside the unit interval
    np.clip(out, 0.0, 1.0, out=out)
    return replace(d, normalized=out)


def to_fuzzy_sets(d: Dataset, use_raw: bool = False) -> list[FuzzySet]:
    """One fuzzy set per entity over the attribute domain.

    ``use_raw`` takes the raw values as memberships (they must already lie
    in [0, 1]) instead of requiring a normalisation pass.
    """
    values = d.raw if use_raw else d.normalized
    if values is None:
        raise NotNormalizedError("dataset is not normalized; call normalize_minmax first")
    domain = Domain(len(d.attribute_labels), d.attribute_labels)
    return [FuzzySet(row, domain, name) for name, row in zip(d.entity_labels, values)]
