"""CSV ingestion, min-max normalization, and dimensionality padding.

A :class:`Dataset` is an immutable collection of labeled n-D cases. Layouts
downstream require every attribute in the unit interval, so :func:`normalize`
rescales each column to [0, 1] and records the original (min, max) pair,
making the raw value recoverable as ``min + v * (max - min)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError, ContractError, CsvParseError, ValidationError

__all__ = [
    "CaseRecord",
    "Dataset",
    "load_csv",
    "read_csv",
    "write_csv",
    "normalize",
    "denormalize",
    "pad_to_multiple",
]


@dataclass(frozen=True)
class CaseRecord:
    """One labeled data point. ``padded_from`` keeps the pre-padding length."""

    id: int
    values: tuple[float, ...]
    class_label: str
    padded_from: int | None = None

    @property
    def dimension(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Dataset:
    """Immutable labeled dataset with optional per-attribute (min, max) metadata."""

    attribute_names: tuple[str, ...]
    cases: tuple[CaseRecord, ...]
    class_labels: tuple[str, ...]
    normalization: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        n = len(self.attribute_names)
        for case in self.cases:
            if len(case.values) != n:
                raise ValidationError(
                    f"case {case.id} has {len(case.values)} values, expected {n}"
                )
            if case.class_label not in self.class_labels:
                raise ValidationError(
                    f"case {case.id} label {case.class_label!r} missing from class_labels"
                )

    @property
    def dimension(self) -> int:
        return len(self.attribute_names)

    def __len__(self) -> int:
        return len(self.cases)

    def numeric_targets(self) -> tuple[float, ...]:
        """Class column parsed as regression targets; ConfigError when non-numeric."""
        targets = []
        for case in self.cases:
            try:
                y = float(case.class_label)
            except ValueError:
                raise ConfigError(
                    f"dataset has no numeric target column: label {case.class_label!r} "
                    f"of case {case.id} is not a number"
                ) from None
            targets.append(y)
        return tuple(targets)


def _text_lines(source):
    if isinstance(source, (str, Path)) and isinstance(source, Path):
        raise TypeError("pass file paths to read_csv(), not load_csv()")
    if isinstance(source, bytes):
        return io.StringIO(source.decode("utf-8"))
    if isinstance(source, str):
        return io.StringIO(source)
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data)


def load_csv(source, *, class_column: str = "class", delimiter: str = ",") -> Dataset:
    """Parse CSV content (bytes, str, or file-like) into a raw-units Dataset.

    The header row is required; attribute order follows header order with the
    class column removed. Values are validated to be finite reals.
    """
    stream = _text_lines(source)
    reader = csv.reader(stream, delimiter=delimiter)
    try:
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError("empty CSV: no header row") from None
        if class_column not in header:
            raise ConfigError(
                f"class column {class_column!r} not found; header has {header}"
            )
        class_idx = header.index(class_column)
        attribute_names = tuple(name for i, name in enumerate(header) if i != class_idx)

        cases = []
        class_labels: list[str] = []
        for row_num, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise CsvParseError(
                    f"row {row_num} has {len(row)} fields, expected {len(header)}",
                    row=row_num,
                )
            values = []
            for col_idx, cell in enumerate(row):
                if col_idx == class_idx:
                    continue
                try:
                    v = float(cell)
                except ValueError:
                    raise CsvParseError(
                        f"non-numeric value {cell!r} at row {row_num}, "
                        f"column {header[col_idx]!r}",
                        row=row_num,
                        column=header[col_idx],
                    ) from None
                if not math.isfinite(v):
                    raise CsvParseError(
                        f"non-finite value {cell!r} at row {row_num}, "
                        f"column {header[col_idx]!r}",
                        row=row_num,
                        column=header[col_idx],
                    )
                values.append(v)
            label = row[class_idx]
            if label not in class_labels:
                class_labels.append(label)
            cases.append(CaseRecord(id=len(cases), values=tuple(values), class_label=label))
    except csv.Error as exc:
        raise CsvParseError(f"malformed CSV near line {reader.line_num}: {exc}") from exc

    if not cases:
        raise ValidationError("empty dataset: CSV contains a header but no data rows")
    return Dataset(
        attribute_names=attribute_names,
        cases=tuple(cases),
        class_labels=tuple(class_labels),
    )


def read_csv(path, *, class_column: str = "class", delimiter: str = ",") -> Dataset:
    """Load a CSV file from disk; see :func:`load_csv`."""
    with open(path, "rb") as fh:
        return load_csv(fh, class_column=class_column, delimiter=delimiter)


def write_csv(dataset: Dataset, path, *, class_column: str = "class",
              delimiter: str = ",") -> None:
    """Write the dataset back out as CSV (values as currently stored)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow(list(dataset.attribute_names) + [class_column])
        for case in dataset.cases:
            writer.writerow([repr(v) for v in case.values] + [case.class_label])


def normalize(dataset: Dataset) -> Dataset:
    """Min-max scale each attribute to [0, 1], recording pre-scaling (min, max).

    Constant columns map to 0.5, which centers the point in the unit cube and
    keeps denormalization exact (the stored min equals the original value).
    """
    if not dataset.cases:
        raise ValidationError("cannot normalize an empty dataset")
    n = dataset.dimension
    mins = [min(c.values[i] for c in dataset.cases) for i in range(n)]
    maxs = [max(c.values[i] for c in dataset.cases) for i in range(n)]

    cases = []
    for case in dataset.cases:
        scaled = []
        for i, v in enumerate(case.values):
            span = maxs[i] - mins[i]
            scaled.append(0.5 if span == 0.0 else (v - mins[i]) / span)
        cases.append(replace(case, values=tuple(scaled)))
    return Dataset(
        attribute_names=dataset.attribute_names,
        cases=tuple(cases),
        class_labels=dataset.class_labels,
        normalization=tuple(zip(mins, maxs)),
    )


def denormalize(dataset: Dataset) -> Dataset:
    """Invert :func:`normalize` using the stored (min, max) metadata."""
    if dataset.normalization is None:
        raise ContractError("dataset carries no normalization metadata")
    cases = []
    for case in dataset.cases:
        raw = tuple(
            lo + v * (hi - lo)
            for v, (lo, hi) in zip(case.values, dataset.normalization)
        )
        cases.append(replace(case, values=raw))
    return Dataset(
        attribute_names=dataset.attribute_names,
        cases=tuple(cases),
        class_labels=dataset.class_labels,
        normalization=None,
    )


def pad_to_multiple(case: CaseRecord, k: int) -> CaseRecord:
    """Extend the case to the next multiple of ``k`` attributes (k in {2, 3}).

    The trailing attributes are copied in order, and the original length is
    flagged in ``padded_from`` so reconstruction can drop the copies.
    """
    if k not in (2, 3):
        raise ContractError(f"padding multiple must be 2 or 3, got {k}")
    n = len(case.values)
    remainder = n % k
    if remainder == 0:
        return case
    pad = k - remainder
    tail = list(case.values[-pad:])
    while len(tail) < pad:  # shorter than the padding: repeat the last value
        tail.append(tail[-1])
    return replace(case, values=case.values + tuple(tail), padded_from=n)
