import io

import pytest

from glcbench.dataset import (
    load_csv,
    normalize,
    denormalize,
    pad_to_multiple,
    read_csv,
)
from glcbench.errors import ConfigError, ContractError, CsvParseError, ValidationError

from conftest import IRIS_CSV, make_case, make_dataset


class TestLoadCsv:
    def test_iris_shape(self, iris_raw):
        assert len(iris_raw.cases) == 150
        assert iris_raw.class_labels == ("setosa", "versicolor", "virginica")
        assert iris_raw.dimension == 4
        assert iris_raw.normalization is None

    def test_single_row(self):
        ds = load_csv("a,b,class\n1,2,X\n")
        assert len(ds.cases) == 1
        assert ds.cases[0].values == (1.0, 2.0)
        assert ds.cases[0].class_label == "X"

    def test_non_numeric_cell_names_location(self):
        with pytest.raises(CsvParseError) as exc:
            load_csv("a,b,class\n1,abc,X\n")
        assert "row 2" in str(exc.value)
        assert "'b'" in str(exc.value)
        assert exc.value.row == 2
        assert exc.value.column == "b"

    def test_missing_class_column(self):
        with pytest.raises(ConfigError):
            load_csv("a,b,c\n1,2,3\n")

    def test_custom_class_column_and_delimiter(self):
        ds = load_csv("a;b;species\n1;2;X\n", class_column="species", delimiter=";")
        assert ds.attribute_names == ("a", "b")
        assert ds.cases[0].class_label == "X"

    def test_empty_dataset(self):
        with pytest.raises(ValidationError):
            load_csv("a,b,class\n")

    def test_non_finite_rejected(self):
        with pytest.raises(CsvParseError):
            load_csv("a,class\nnan,X\n")

    def test_ragged_row(self):
        with pytest.raises(CsvParseError) as exc:
            load_csv("a,b,class\n1,2,X\n1,X\n")
        assert exc.value.row == 3

    def test_bytes_and_stream_inputs(self):
        content = b"a,class\n1,X\n"
        assert load_csv(content).cases == load_csv(io.BytesIO(content)).cases

    def test_attribute_order_matches_header(self):
        ds = load_csv("b,class,a\n1,X,2\n")
        assert ds.attribute_names == ("b", "a")
        assert ds.cases[0].values == (1.0, 2.0)


class TestNormalize:
    def test_affine_map(self):
        ds = make_dataset(["v"], [((2,), "A"), ((4,), "A"), ((6,), "A")])
        nds = normalize(ds)
        assert [c.values[0] for c in nds.cases] == [0.0, 0.5, 1.0]
        assert nds.normalization == ((2.0, 6.0),)

    def test_constant_column_maps_to_half(self):
        ds = make_dataset(["v"], [((7,), "A"), ((7,), "A"), ((7,), "A")])
        nds = normalize(ds)
        assert [c.values[0] for c in nds.cases] == [0.5, 0.5, 0.5]
        # denormalization still recovers the original constant
        back = denormalize(nds)
        assert [c.values[0] for c in back.cases] == [7.0, 7.0, 7.0]

    def test_iris_sepal_length_hits_both_endpoints(self, iris):
        # dataset sweep: min 4.3 and max 7.9 each occur exactly once
        col = [c.values[0] for c in iris.cases]
        assert all(0.0 <= v <= 1.0 for v in col)
        assert col.count(0.0) == 1
        assert col.count(1.0) == 1

    def test_round_trip_relative_error(self, iris_raw):
        back = denormalize(normalize(iris_raw))
        for orig, rec in zip(iris_raw.cases, back.cases):
            for a, b in zip(orig.values, rec.values):
                assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_idempotent_on_normalized(self, iris):
        again = normalize(iris)
        for c1, c2 in zip(iris.cases, again.cases):
            assert c1.values == c2.values

    def test_denormalize_requires_metadata(self, iris_raw):
        with pytest.raises(ContractError):
            denormalize(iris_raw)


class TestPadToMultiple:
    def test_already_multiple_unchanged(self):
        case = make_case([0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
        assert pad_to_multiple(case, 3) is case

    def test_pad_4d_to_triple(self):
        case = make_case([0.1, 0.4, 0.5, 0.7])
        padded = pad_to_multiple(case, 3)
        assert padded.values == (0.1, 0.4, 0.5, 0.7, 0.5, 0.7)
        assert padded.padded_from == 4

    def test_pad_5d_to_pair(self):
        case = make_case([0.1, 0.2, 0.3, 0.4, 0.5])
        padded = pad_to_multiple(case, 2)
        assert padded.values == (0.1, 0.2, 0.3, 0.4, 0.5, 0.5)
        assert padded.padded_from == 5

    def test_prefix_preserved_and_length_multiple(self):
        for n in range(1, 12):
            for k in (2, 3):
                case = make_case([i / 20 for i in range(n)])
                padded = pad_to_multiple(case, k)
                assert padded.values[:n] == case.values
                assert len(padded.values) % k == 0

    def test_invalid_multiple(self):
        with pytest.raises(ContractError):
            pad_to_multiple(make_case([0.1]), 4)


def test_numeric_targets():
    ds = make_dataset(["v"], [((0.1,), "1.5"), ((0.2,), "2.5")])
    assert ds.numeric_targets() == (1.5, 2.5)


def test_numeric_targets_rejects_text(iris):
    with pytest.raises(ConfigError):
        iris.numeric_targets()


def test_read_csv_path(iris_raw):
    assert read_csv(IRIS_CSV).cases == iris_raw.cases
