import json
from fractions import Fraction

import jsonschema
import pydantic
import pytest

from splitmat.reports import (
    CSV_HEADER,
    CensusRecord,
    ClassificationReport,
    FlatModel,
    KnuthReport,
    census_csv,
    percentage,
    round_half_up,
)

CENSUS_SCHEMA = {
    "type": "object",
    "required": ["schema", "d", "n", "total_count", "paving_pct", "split_pct"],
    "properties": {
        "schema": {"const": "splitmat/1"},
        "paving_pct": {"type": "integer", "minimum": 0, "maximum": 100},
        "split_pct": {"type": "integer", "minimum": 0, "maximum": 100},
        "paving_pct_exact": {"type": "string"},
    },
}


def census_36(**overrides):
    values = dict(
        d=3,
        n=6,
        total_count=38,
        connected_count=15,
        paving_count=9,
        sparse_paving_count=9,
        split_count=34,
        nested_count=5,
    )
    values.update(overrides)
    return CensusRecord(**values)


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(1, 2), 1),
        (Fraction(5, 2), 3),
        (Fraction(7, 3), 2),
        (Fraction(0), 0),
        (Fraction(900, 38), 24),
    ],
)
def test_round_half_up(value, expected):
    assert round_half_up(value) == expected


def test_percentage():
    assert percentage(9, 38) == Fraction(450, 19)
    assert percentage(0, 0) == 0


class TestCensusRecord:
    def test_percentages(self):
        record = census_36()
        assert record.paving_pct == 24
        assert record.split_pct == 89
        assert record.paving_fraction == Fraction(900, 38)

    def test_paving_fraction_of_small_census(self):
        record = census_36(
            d=2,
            n=4,
            total_count=7,
            connected_count=2,
            paving_count=4,
            sparse_paving_count=4,
            split_count=7,
            nested_count=7,
        )
        assert record.paving_fraction == Fraction(400, 7)
        assert record.paving_pct == 57

    def test_json(self):
        data = json.loads(census_36().to_json())
        jsonschema.validate(data, CENSUS_SCHEMA)
        assert data["schema"] == "splitmat/1"
        assert data["paving_pct_exact"] == "450/19"

    @pytest.mark.parametrize(
        "overrides",
        [
            {"sparse_paving_count": 10},
            {"paving_count": 39, "sparse_paving_count": 9},
            {"split_count": 40},
        ],
    )
    def test_inconsistent_counts(self, overrides):
        with pytest.raises(pydantic.ValidationError):
            census_36(**overrides)

    def test_csv_with_header(self):
        text = census_csv([census_36()])
        header, row = text.splitlines()
        assert header == ",".join(CSV_HEADER)
        assert row == "3,6,38,15,9,9,34,5,24,89"

    def test_csv_without_header(self):
        assert census_csv([census_36()], header=False) == "3,6,38,15,9,9,34,5,24,89\n"


class TestClassificationReport:
    def base(self, **overrides):
        values = dict(
            d=2,
            n=4,
            bitmap="*****0",
            connected=True,
            components=[[1, 2, 3, 4]],
            flacets=[FlatModel(elements=[3, 4], rank=1)],
            split_flacets=[FlatModel(elements=[3, 4], rank=1)],
            is_split=True,
            is_paving=True,
            is_sparse_paving=True,
            is_nested=True,
            num_cyclic_flats=3,
        )
        values.update(overrides)
        return ClassificationReport(**values)

    def test_valid(self):
        data = json.loads(self.base().to_json())
        assert data["schema"] == "splitmat/1"
        assert "line" not in data

    def test_sparse_paving_implies_paving(self):
        with pytest.raises(pydantic.ValidationError):
            self.base(is_paving=False)

    def test_connected_paving_implies_split(self):
        with pytest.raises(pydantic.ValidationError):
            self.base(is_split=False)

    def test_split_flacets_are_flacets(self):
        with pytest.raises(pydantic.ValidationError):
            self.base(split_flacets=[FlatModel(elements=[1, 2], rank=1)])


def test_schema_alias_round_trip():
    report = KnuthReport(
        d=3, n=8, size=7, bound="7", meets_bound=True, residue=0, stable_set=[]
    )
    loaded = KnuthReport.model_validate_json(report.to_json())
    assert loaded == report
    assert loaded.schema_tag == "splitmat/1"
