"""CSV ingestion into a typed, immutable column store.

Rows keep their original cell strings so that samples can be written back
verbatim, and every row carries a stable identifier (source row index by
default, or a designated id column).
"""

from __future__ import annotations

import csv
import math
import numbers
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .exceptions import ConfigError, DataFormatError

DEFAULT_MISSING_TOKENS = ("", "NaN", "nan", "null", "NA")

NUMERICAL = "numerical"
CATEGORICAL = "categorical"


@dataclass(frozen=True)
class Column:
    """One column of the population table.

    `values` holds parsed floats for numeric columns and raw strings for
    text columns; missing cells are None in either case.
    """

    kind: str  # "numeric" | "text"
    values: tuple
    missing_count: int


@dataclass(frozen=True)
class VariableSpec:
    """A declared variable of interest: column name plus sampling kind."""

    column: str
    kind: str  # "numerical" | "categorical"

    def __post_init__(self):
        if self.kind not in (NUMERICAL, CATEGORICAL):
            raise ConfigError(
                f"variable kind must be {NUMERICAL!r} or {CATEGORICAL!r}, got {self.kind!r}"
            )


@dataclass(eq=False)
class Dataset:
    """Immutable population table with per-column missing-value tracking."""

    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]  # raw cells, one tuple per source row
    columns: dict[str, Column]
    row_ids: tuple
    row_count: int

    def raw_column(self, name: str) -> tuple[str, ...]:
        j = self.header.index(name)
        return tuple(row[j] for row in self.rows)

    def positions_for_ids(self, ids: Iterable) -> list[int]:
        index = {rid: i for i, rid in enumerate(self.row_ids)}
        return [index[rid] for rid in ids]

    @classmethod
    def from_columns(
        cls,
        data: Mapping[str, Sequence],
        row_ids: Sequence | None = None,
        missing_tokens: Sequence[str] = DEFAULT_MISSING_TOKENS,
    ) -> "Dataset":
        """Build a Dataset from a mapping of column name to values.

        Accepts plain sequences or anything iterable (pandas Series
        included). Numbers with NaN, None, and missing-token strings all
        become missing cells.
        """
        names = tuple(data.keys())
        cols = {name: list(data[name]) for name in names}
        lengths = {len(v) for v in cols.values()}
        if len(lengths) > 1:
            raise DataFormatError(f"columns have unequal lengths: {sorted(lengths)}")
        n = lengths.pop() if lengths else 0
        raw_rows = []
        for i in range(n):
            raw_rows.append(tuple(_cell_to_string(cols[name][i]) for name in names))
        return _build(names, raw_rows, tuple(missing_tokens), id_column=None, row_ids=row_ids)


@dataclass(eq=False)
class BoundVariable:
    """A view of one dataset column under a declared kind. No data copied."""

    name: str
    kind: str  # "numerical" | "categorical"
    values: tuple  # floats|None for numerical, raw strings|None for categorical
    row_ids: tuple
    missing_count: int


def _cell_to_string(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    if isinstance(value, numbers.Integral) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


def _build(header, raw_rows, missing_tokens, id_column, row_ids=None) -> Dataset:
    seen = set()
    dupes = [h for h in header if h in seen or seen.add(h)]
    if dupes:
        raise DataFormatError(f"duplicate header names: {sorted(set(dupes))}")

    tokens = frozenset(missing_tokens)
    columns: dict[str, Column] = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in raw_rows]
        # all-or-nothing inference: one unparseable or non-finite non-missing
        # cell makes the whole column text
        try:
            parsed = [None if c in tokens else float(c) for c in cells]
        except ValueError:
            parsed = None
        if parsed is not None and all(
            v is None or math.isfinite(v) for v in parsed
        ):
            values = tuple(parsed)
            kind = "numeric"
            missing = parsed.count(None)
        else:
            values = tuple(None if c in tokens else c for c in cells)
            kind = "text"
            missing = values.count(None)
        columns[name] = Column(kind=kind, values=values, missing_count=missing)

    if row_ids is not None:
        ids = tuple(row_ids)
        if len(ids) != len(raw_rows):
            raise DataFormatError("row_ids length does not match row count")
    elif id_column is not None:
        if id_column not in header:
            raise ConfigError(f"id column {id_column!r} not found in header")
        j = header.index(id_column)
        ids = tuple(row[j] for row in raw_rows)
        if any(cell in tokens for cell in ids):
            raise DataFormatError(f"id column {id_column!r} contains missing values")
    else:
        ids = tuple(range(len(raw_rows)))
    if len(set(ids)) != len(ids):
        raise DataFormatError("row identifiers are not unique")

    return Dataset(
        header=tuple(header),
        rows=tuple(raw_rows),
        columns=columns,
        row_ids=ids,
        row_count=len(raw_rows),
    )


def load_csv(
    path,
    delimiter: str = ",",
    missing_tokens: Sequence[str] = DEFAULT_MISSING_TOKENS,
    id_column: str | None = None,
) -> Dataset:
    """Load a headered CSV file into a Dataset.

    A column is numeric only when every non-missing cell parses as a finite
    decimal number. Rows whose length differs from the header are rejected
    with the offending line number.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: empty file, expected a header row") from None
        width = len(header)
        raw_rows = []
        for row in reader:
            if len(row) != width:
                raise DataFormatError(
                    f"{path}: line {reader.line_num}: expected {width} fields, got {len(row)}"
                )
            raw_rows.append(tuple(row))
    return _build(tuple(header), raw_rows, tuple(missing_tokens), id_column)


def write_csv(ds: Dataset, path, delimiter: str = ",") -> None:
    """Write the dataset back out (original cells, normalized quoting)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(ds.header)
        writer.writerows(ds.rows)


def bind_variable(ds: Dataset, spec: VariableSpec) -> BoundVariable:
    """Resolve a VariableSpec against a Dataset without copying data."""
    if spec.column not in ds.columns:
        raise ConfigError(f"unknown column {spec.column!r}")
    col = ds.columns[spec.column]
    if spec.kind == NUMERICAL:
        if col.kind != "numeric":
            raise ConfigError(
                f"kind mismatch: column {spec.column!r} is not numeric "
                f"(declared {spec.kind!r})"
            )
        values = col.values
    else:
        if col.kind == "numeric":
            # categorical view over a numeric column keeps the raw cell text
            raw = ds.raw_column(spec.column)
            values = tuple(
                raw[i] if col.values[i] is not None else None for i in range(ds.row_count)
            )
        else:
            values = col.values
    return BoundVariable(
        name=spec.column,
        kind=spec.kind,
        values=values,
        row_ids=ds.row_ids,
        missing_count=col.missing_count,
    )
