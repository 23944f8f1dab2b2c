import itertools

import pytest

from splitmat import fixtures
from splitmat.census import census_stats, enumerate_matroids, single_element_extensions
from splitmat.errors import InvalidParams, LimitExceeded, MixedParameters
from splitmat.isomorphism import canonical_form, canonical_key
from splitmat.lifts import corank_vector
from splitmat.matroid import contraction, deletion, dual, uniform
from splitmat.split import (
    hyperplane_of_flacet,
    is_nested,
    is_split,
    split_flacets,
    splits_compatible,
    splits_compatible_four_way,
    splits_compatible_geometric,
)
from splitmat.subdivision import regular_subdivision, secondary_cone_dimension

COUNTS = {
    (2, 4): 7,
    (2, 5): 13,
    (2, 6): 23,
    (3, 5): 13,
    (3, 6): 38,
    (4, 5): 5,
    (4, 6): 23,
    (5, 6): 6,
}


class TestEnumeration:
    @pytest.mark.parametrize("shape,expected", COUNTS.items())
    def test_counts(self, shape, expected):
        assert len(list(enumerate_matroids(*shape))) == expected

    @pytest.mark.parametrize("d,n", [(0, 3), (3, 3), (1, 4)])
    def test_small(self, d, n):
        found = list(enumerate_matroids(d, n))
        assert len(found) == (n if d == 1 else 1)

    def test_representatives_are_canonical_and_distinct(self):
        found = list(enumerate_matroids(2, 5))
        assert all(canonical_form(m) == m.to_line() for m in found)
        assert len({canonical_key(m) for m in found}) == len(found)
        assert [m.to_line() for m in found] == sorted(m.to_line() for m in found)

    def test_m5_class(self, m5):
        lines = [m.to_line() for m in enumerate_matroids(2, 4)]
        assert canonical_form(m5) in lines

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            list(enumerate_matroids(3, 7))

    def test_limit_is_configurable(self):
        with pytest.raises(LimitExceeded):
            list(enumerate_matroids(2, 5, max_subsets=9))

    def test_invalid(self):
        with pytest.raises(InvalidParams):
            list(enumerate_matroids(4, 3))

    def test_extensions_of_u12(self):
        found = {m.to_line() for m in single_element_extensions(uniform(1, 2))}
        # the new element is either a loop or parallel to both points
        assert len(found) == 2
        assert uniform(1, 3).to_line() in found
        assert "**0" in found


class TestCensusStats:
    def test_rank3_six(self):
        record = census_stats(enumerate_matroids(3, 6))
        assert record.total_count == 38
        assert record.connected_count == 15
        assert record.paving_count == 9
        assert record.split_count == 34
        assert record.paving_pct == 24
        assert record.split_pct == 89

    def test_rank2_six(self):
        record = census_stats(enumerate_matroids(2, 6))
        assert record.total_count == 23
        assert record.paving_pct == 43
        assert record.split_pct == 100

    def test_rank2_four(self):
        record = census_stats(enumerate_matroids(2, 4))
        assert record.paving_count == 4
        assert record.paving_fraction * 7 == 400

    def test_mixed(self, m5, snowflake):
        with pytest.raises(MixedParameters):
            census_stats([m5, snowflake])

    def test_empty(self):
        with pytest.raises(InvalidParams):
            census_stats([])


@pytest.mark.slow
class TestCorpusSweeps:
    def test_nonsplit_rank3_classes(self, corpora):
        nonsplit = {
            m.to_line()
            for m in corpora[(3, 6)]
            if m.is_connected() and not is_split(m)
        }
        expected = {canonical_form(m) for m in fixtures.excluded_minors_rank3()}
        assert nonsplit == expected

    def test_duality_bijection(self, corpora):
        duals = {canonical_form(dual(m)) for m in corpora[(2, 6)]}
        assert duals == {m.to_line() for m in corpora[(4, 6)]}

    @pytest.mark.parametrize(
        "shape", [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)]
    )
    def test_split_closed_under_minors(self, corpora, shape):
        for matroid in corpora[shape]:
            if not is_split(matroid):
                continue
            assert is_split(dual(matroid))
            for element in range(1, matroid.n + 1):
                assert is_split(deletion(matroid, element))
                assert is_split(contraction(matroid, [element]))

    @pytest.mark.parametrize("shape", [(2, 5), (2, 6), (3, 5), (3, 6), (4, 6)])
    def test_compatibility_oracles_agree(self, corpora, shape):
        d, n = shape
        for matroid in corpora[shape]:
            if not matroid.is_connected():
                continue
            for first, second in itertools.combinations(split_flacets(matroid), 2):
                h1 = hyperplane_of_flacet(matroid, first)
                h2 = hyperplane_of_flacet(matroid, second)
                expected = splits_compatible(d, first, second)
                assert splits_compatible_four_way(h1, h2) == expected
                assert splits_compatible_geometric(d, n, h1, h2) == expected

    @pytest.mark.parametrize("shape", [(2, 5), (2, 6), (3, 5), (3, 6), (4, 6)])
    def test_corank_cone_dimension(self, corpora, shape):
        d, n = shape
        for matroid in corpora[shape]:
            if not matroid.is_connected() or not is_split(matroid):
                continue
            subdivision = regular_subdivision(d, n, corank_vector(matroid))
            cone = secondary_cone_dimension(subdivision)
            assert cone.cone_dim == len(split_flacets(matroid))
            assert cone.is_ray == (
                is_nested(matroid) and len(matroid.cyclic_flats) == 3
            )
