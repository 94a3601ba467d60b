from pathlib import Path

import pytest

from glcbench.dataset import CaseRecord, Dataset, normalize, read_csv

ROOT = Path(__file__).resolve().parent.parent
IRIS_CSV = ROOT / "data" / "iris.csv"


@pytest.fixture(scope="session")
def iris_raw() -> Dataset:
    return read_csv(IRIS_CSV)


@pytest.fixture(scope="session")
def iris(iris_raw) -> Dataset:
    return normalize(iris_raw)


def make_case(values, label="A", case_id=0) -> CaseRecord:
    return CaseRecord(id=case_id, values=tuple(float(v) for v in values),
                      class_label=label)


def make_dataset(columns, rows) -> Dataset:
    """rows: list of (values, label)."""
    labels = []
    cases = []
    for i, (values, label) in enumerate(rows):
        if label not in labels:
            labels.append(label)
        cases.append(CaseRecord(id=i, values=tuple(float(v) for v in values),
                                class_label=label))
    return Dataset(attribute_names=tuple(columns), cases=tuple(cases),
                   class_labels=tuple(labels))
