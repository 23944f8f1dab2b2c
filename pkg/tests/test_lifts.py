from fractions import Fraction

import pytest

from splitmat import fixtures
from splitmat.census import enumerate_matroids
from splitmat.codec import codec, to_mask
from splitmat.errors import InvalidParams, NotASplitFlacet, NotConnected, NotSplit
from splitmat.lifts import (
    InequalityOutcome,
    LiftVector,
    chain_rank,
    check_corank_inequality,
    corank_inequality_sides,
    corank_vector,
    nested_chain,
    nested_matroid,
    nested_rank,
    parallel_cofree_lift,
    parallel_cofree_rank,
    predicted_ray_cells,
    series_free_lift,
    series_free_rank,
    shared_lift_cell,
)
from splitmat.matroid import direct_sum, dual, uniform
from splitmat.split import is_nested, is_split, split_flacets

LIFTABLE = ["u12", "u24", "m5", "snowflake"]


@pytest.fixture(params=LIFTABLE)
def liftable(request):
    return request.getfixturevalue(request.param)


def _fs(matroid) -> int:
    return 0b11 << matroid.n


class TestLiftVector:
    def test_length_checked(self):
        with pytest.raises(InvalidParams):
            LiftVector.of(2, 4, [0, 0, 0])

    def test_bad_hypersimplex(self):
        with pytest.raises(InvalidParams):
            LiftVector.of(5, 4, [])

    def test_heights_are_fractions(self):
        lift = LiftVector.of(1, 2, [1, "1/2"])
        assert lift.heights == (Fraction(1), Fraction(1, 2))
        assert lift.render() == ["1", "1/2"]

    def test_plus_affine(self):
        lift = LiftVector.of(1, 3, [0, 0, 0]).plus_affine([1, 2, 3], 1)
        assert lift.heights == (2, 3, 4)


class TestCorankVector:
    def test_m5(self, m5):
        assert corank_vector(m5, 2).heights == (0, 0, 0, 0, 0, 1)
        assert corank_vector(m5, 3).heights == (0, 0, 0, 0)
        assert corank_vector(m5, 1).heights == (1, 1, 1, 1)

    def test_default_k_is_rank(self, snowflake):
        vector = corank_vector(snowflake)
        assert (vector.k, vector.n) == (2, 6)
        assert sum(vector.heights) == 3

    def test_k_out_of_range(self, m5):
        with pytest.raises(InvalidParams):
            corank_vector(m5, 5)


class TestSeriesFreeLift:
    def test_rank_formula(self, liftable):
        lifted = series_free_lift(liftable)
        assert (lifted.d, lifted.n) == (liftable.d + 1, liftable.n + 2)
        for subset in range(1 << lifted.n):
            assert lifted.rank(subset) == series_free_rank(liftable, subset)

    def test_u12_gives_m5_shape(self, u12):
        lifted = series_free_lift(u12)
        assert lifted.num_bases == 5
        assert lifted.is_connected()
        assert lifted.nonbasis_masks == (to_mask([1, 2]),)

    def test_double_lift_is_lambda2(self, u12):
        assert series_free_lift(series_free_lift(u12)) == fixtures.lambda2()

    def test_snowflake_flacets(self, snowflake):
        lifted = series_free_lift(snowflake)
        assert sorted(f.sorted() for f in split_flacets(lifted)) == [
            [1, 2],
            [1, 2, 3, 4, 5, 6],
            [3, 4],
            [5, 6],
        ]

    def test_requires_connected(self, m5):
        with pytest.raises(NotConnected):
            series_free_lift(direct_sum(m5, m5))
        with pytest.raises(NotConnected):
            series_free_lift(uniform(1, 1))


class TestParallelCofreeLift:
    def test_rank_formula(self, liftable):
        lifted = parallel_cofree_lift(liftable)
        assert (lifted.d, lifted.n) == (liftable.d + 1, liftable.n + 2)
        for subset in range(1 << lifted.n):
            assert lifted.rank(subset) == parallel_cofree_rank(liftable, subset)

    def test_corank_identity(self, liftable):
        d = liftable.d + 1
        series = series_free_lift(liftable)
        parallel = parallel_cofree_lift(liftable)
        for mask in codec(liftable.n + 2, d).masks:
            fs = (mask & _fs(liftable)).bit_count()
            assert (d - parallel.rank(mask)) + 1 == (d - series.rank(mask)) + fs

    def test_shared_bases(self, liftable):
        series = set(series_free_lift(liftable).basis_masks)
        parallel = set(parallel_cofree_lift(liftable).basis_masks)
        assert series & parallel == set(shared_lift_cell(liftable).basis_masks)

    def test_duality(self, snowflake):
        assert parallel_cofree_lift(snowflake) == dual(series_free_lift(dual(snowflake)))


class TestNestedMatroid:
    def test_snowflake_chain(self, snowflake):
        nested = nested_matroid(snowflake, [1, 2])
        assert (nested.d, nested.n) == (3, 8)
        assert is_nested(nested)
        chain = nested_chain(snowflake, to_mask([1, 2]))
        assert chain == [
            (0, 0),
            (to_mask([3, 4, 5, 6]), 1),
            (to_mask([3, 4, 5, 6, 7, 8]), 2),
            (to_mask(range(1, 9)), 3),
        ]
        assert {(f.mask, f.rank) for f in nested.cyclic_flats} == set(chain)

    def test_rank_from_chain(self, snowflake):
        flat = to_mask([3, 4])
        nested = nested_matroid(snowflake, flat)
        chain = nested_chain(snowflake, flat)
        for subset in range(1 << nested.n):
            assert nested.rank(subset) == chain_rank(chain, subset)
            assert nested_rank(snowflake, flat, subset) == nested.rank(subset)

    def test_split_flacets(self, snowflake):
        nested = nested_matroid(snowflake, [1, 2])
        assert sorted(f.sorted() for f in split_flacets(nested)) == [
            [3, 4, 5, 6],
            [3, 4, 5, 6, 7, 8],
        ]
        assert not is_split(nested)

    def test_m5(self, m5):
        nested = nested_matroid(m5, [3, 4])
        assert is_nested(nested)
        assert len(nested.cyclic_flats) == 4

    def test_not_a_split_flacet(self, snowflake):
        with pytest.raises(NotASplitFlacet):
            nested_matroid(snowflake, [1, 3])

    def test_requires_split(self, nonsplit36):
        with pytest.raises(NotSplit):
            nested_matroid(nonsplit36, [3, 4])


class TestCorankInequality:
    @pytest.mark.parametrize("flat", [[1, 2], [3, 4], [5, 6]])
    def test_snowflake(self, snowflake, flat):
        nested = nested_matroid(snowflake, flat)
        for mask in codec(8, 3).masks:
            outcome = check_corank_inequality(snowflake, flat, mask)
            assert outcome is not InequalityOutcome.VIOLATED
            if nested.is_basis(mask):
                assert outcome is InequalityOutcome.EQUALITY

    def test_m5(self, m5):
        nested = nested_matroid(m5, [3, 4])
        for mask in nested.basis_masks:
            left, right = corank_inequality_sides(m5, [3, 4], mask)
            assert left == right == 0

    def test_wrong_size(self, m5):
        with pytest.raises(InvalidParams):
            corank_inequality_sides(m5, [3, 4], [1, 2])


class TestPredictedCells:
    def test_snowflake(self, snowflake):
        cells = predicted_ray_cells(snowflake)
        assert len(cells) == 5
        assert all((m.d, m.n) == (3, 8) for m in cells)
        assert len({m.bitmap for m in cells}) == 5

    def test_uniform(self, u24):
        assert len(predicted_ray_cells(u24)) == 2

    def test_nonsplit(self, nonsplit36):
        with pytest.raises(NotSplit):
            predicted_ray_cells(nonsplit36)


def _connected_split(matroids):
    return [m for m in matroids if m.n > 1 and m.is_connected() and is_split(m)]


@pytest.mark.slow
class TestCorpusLifts:
    @pytest.mark.parametrize("shape", [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (4, 6)])
    def test_corank_inequality(self, corpora, shape):
        self._check_corank_inequality(_connected_split(corpora[shape]))

    def test_corank_inequality_on_seven_elements(self):
        self._check_corank_inequality(
            _connected_split(enumerate_matroids(2, 7, max_subsets=21))
        )

    @staticmethod
    def _check_corank_inequality(matroids):
        for matroid in matroids:
            subsets = codec(matroid.n + 2, matroid.d + 1).masks
            for flat in split_flacets(matroid):
                nested = nested_matroid(matroid, flat)
                for mask in subsets:
                    outcome = check_corank_inequality(matroid, flat, mask)
                    assert outcome is not InequalityOutcome.VIOLATED
                    if nested.is_basis(mask):
                        assert outcome is InequalityOutcome.EQUALITY

    @pytest.mark.parametrize("shape", [(2, 5), (3, 6), (4, 6)])
    def test_corank_identity(self, corpora, shape):
        for matroid in _connected_split(corpora[shape]):
            d = matroid.d + 1
            series = series_free_lift(matroid)
            parallel = parallel_cofree_lift(matroid)
            for mask in codec(matroid.n + 2, d).masks:
                fs = (mask & _fs(matroid)).bit_count()
                assert (d - parallel.rank(mask)) + 1 == (d - series.rank(mask)) + fs
