"""
Data models for machine-readable splitmat output.

Every top-level report carries ``"schema": "splitmat/1"`` so downstream
scripts can detect format changes.
"""

from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

SCHEMA = "splitmat/1"

CSV_HEADER = (
    "d",
    "n",
    "total",
    "connected",
    "paving",
    "sparse_paving",
    "split",
    "nested",
    "paving_pct",
    "split_pct",
)


def round_half_up(value: Fraction) -> int:
    return math.floor(value + Fraction(1, 2))


def percentage(part: int, whole: int) -> Fraction:
    return Fraction(100 * part, whole) if whole else Fraction(0)


class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=SCHEMA, alias="schema")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True)


class FlatModel(BaseModel):
    elements: list[int]
    rank: int


class ClassificationReport(Report):
    d: int
    n: int
    bitmap: str
    connected: bool
    components: list[list[int]]
    flacets: Optional[list[FlatModel]] = None
    split_flacets: Optional[list[FlatModel]] = None
    is_split: bool
    is_paving: bool
    is_sparse_paving: bool
    is_nested: bool
    num_cyclic_flats: int
    component_summaries: Optional[list[ClassificationReport]] = None
    line: Optional[int] = None

    @model_validator(mode="after")
    def validate_implications(self):
        assert not self.is_sparse_paving or self.is_paving, "sparse paving implies paving"
        if self.connected:
            assert not self.is_paving or self.is_split, "connected paving implies split"
        if self.flacets is not None and self.split_flacets is not None:
            known = {tuple(f.elements) for f in self.flacets}
            assert all(
                tuple(f.elements) in known for f in self.split_flacets
            ), "split flacets must be flacets"
        return self


class CensusRecord(Report):
    d: int
    n: int
    total_count: int
    connected_count: int
    paving_count: int
    sparse_paving_count: int
    split_count: int
    nested_count: int

    @model_validator(mode="after")
    def validate_counts(self):
        assert (
            self.sparse_paving_count <= self.paving_count <= self.total_count
        ), "counts must satisfy sparse paving <= paving <= total"
        assert self.split_count <= self.total_count
        return self

    @property
    def paving_fraction(self) -> Fraction:
        return percentage(self.paving_count, self.total_count)

    @property
    def split_fraction(self) -> Fraction:
        return percentage(self.split_count, self.total_count)

    @computed_field
    @property
    def paving_pct(self) -> int:
        return round_half_up(self.paving_fraction)

    @computed_field
    @property
    def split_pct(self) -> int:
        return round_half_up(self.split_fraction)

    @computed_field
    @property
    def paving_pct_exact(self) -> str:
        return str(self.paving_fraction)

    @computed_field
    @property
    def split_pct_exact(self) -> str:
        return str(self.split_fraction)

    def csv_row(self) -> tuple:
        return (
            self.d,
            self.n,
            self.total_count,
            self.connected_count,
            self.paving_count,
            self.sparse_paving_count,
            self.split_count,
            self.nested_count,
            self.paving_pct,
            self.split_pct,
        )


def census_csv(records: list[CensusRecord], header: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.csv_row())
    return buffer.getvalue()


class RayReport(Report):
    d: int
    n: int
    passed: bool
    num_cells: int
    expected_cells: int
    cells_match: bool
    cell_count_ok: bool
    cone_dim: int
    cone_ok: bool
    missing_cells: list[list[str]] = []
    unexpected_cells: list[list[str]] = []
    line: Optional[int] = None


class SubdivisionReport(Report):
    k: int
    n: int
    num_cells: int
    cells: list[list[str]]
    dual_edges: list[tuple[int, int]]
    is_matroid_subdivision: bool
    tropical_cells: list[int]
    solution_dim: int
    cone_dim: int


class LiftReport(Report):
    kind: str
    d: int
    n: int
    bitmap: Optional[str] = None
    heights: Optional[list[str]] = None
    classification: Optional[ClassificationReport] = None


class KnuthReport(Report):
    d: int
    n: int
    size: int
    bound: str
    meets_bound: bool
    residue: int
    stable_set: list[str]


ClassificationReport.model_rebuild()
