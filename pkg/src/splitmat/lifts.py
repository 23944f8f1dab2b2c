"""
Lifting functions on hypersimplices and the lifted matroids whose corank
vectors give rays of the Dressian.

Lifted matroids live on {1..n, f, s} with f = n + 1 and s = n + 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from splitmat.codec import codec, iter_elements, to_mask
from splitmat.errors import InvalidParams, NotASplitFlacet, NotConnected, NotSplit
from splitmat.linalg import to_fraction
from splitmat.matroid import Flat, Matroid, direct_sum, dual, uniform, validate_masks
from splitmat.split import is_split, split_flacets


@dataclass(frozen=True)
class LiftVector:
    k: int
    n: int
    heights: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise InvalidParams(f"no hypersimplex Delta({self.k},{self.n})")
        if len(self.heights) != comb(self.n, self.k):
            raise InvalidParams(
                f"lift has {len(self.heights)} heights, Delta({self.k},{self.n}) "
                f"has {comb(self.n, self.k)} vertices"
            )
        object.__setattr__(
            self, "heights", tuple(to_fraction(h) for h in self.heights)
        )

    @classmethod
    def of(cls, k: int, n: int, heights: Iterable) -> LiftVector:
        return cls(k=k, n=n, heights=tuple(heights))

    def __len__(self) -> int:
        return len(self.heights)

    def __getitem__(self, index: int) -> Fraction:
        return self.heights[index]

    def plus_affine(self, a: Sequence, b=0) -> LiftVector:
        """Add v -> a.e_v + b; the induced subdivision does not change."""
        weights = [to_fraction(x) for x in a]
        shift = to_fraction(b)
        masks = codec(self.n, self.k).masks
        return LiftVector(
            k=self.k,
            n=self.n,
            heights=tuple(
                h + shift + sum(weights[i] for i in range(self.n) if mask >> i & 1)
                for h, mask in zip(self.heights, masks)
            ),
        )

    def render(self) -> list[str]:
        return [str(h) for h in self.heights]


def corank_vector(matroid: Matroid, k: int | None = None) -> LiftVector:
    k = matroid.d if k is None else k
    if not 0 <= k <= matroid.n:
        raise InvalidParams(f"k={k} is outside 0..{matroid.n}")
    return LiftVector(
        k=k,
        n=matroid.n,
        heights=tuple(
            Fraction(matroid.d - matroid.rank(mask)) for mask in codec(matroid.n, k).masks
        ),
    )


def _lifted_parts(matroid: Matroid, mask: int) -> tuple[int, int]:
    """Split a mask on {1..n, f, s} into its base part and its {f, s} part."""
    return mask & matroid.ground_mask, (mask >> matroid.n).bit_count()


def _require_connected(matroid: Matroid, what: str):
    if matroid.n < 2 or not matroid.is_connected():
        raise NotConnected(what)


@lru_cache(maxsize=256)
def series_free_lift(matroid: Matroid) -> Matroid:
    """The series extension at f, by s, of the free extension of M by f."""
    _require_connected(matroid, "series-free lift")
    d = matroid.d
    masks = []
    for mask in codec(matroid.n + 2, d + 1).masks:
        core, extra = _lifted_parts(matroid, mask)
        if extra == 2 and matroid.rank(core) == d - 1:
            masks.append(mask)
        elif extra == 1 and matroid.rank(core) == d:
            masks.append(mask)
    return validate_masks(matroid.n + 2, d + 1, masks)


def parallel_cofree_lift(matroid: Matroid) -> Matroid:
    _require_connected(matroid, "parallel-cofree lift")
    return dual(series_free_lift(dual(matroid)))


def series_free_rank(matroid: Matroid, subset: Iterable[int] | int) -> int:
    """Closed-form rank of the series-free lift on a subset of {1..n+2}."""
    mask = subset if isinstance(subset, int) else to_mask(subset)
    core, extra = _lifted_parts(matroid, mask)
    return min(matroid.rank(core) + extra, matroid.d + 1)


def parallel_cofree_rank(matroid: Matroid, subset: Iterable[int] | int) -> int:
    """Closed-form rank of the parallel-cofree lift on a subset of {1..n+2}."""
    mask = subset if isinstance(subset, int) else to_mask(subset)
    core, _ = _lifted_parts(matroid, mask)
    return min(matroid.rank(core) + 1, mask.bit_count())


def shared_lift_cell(matroid: Matroid) -> Matroid:
    """M plus a rank-one uniform matroid on {f, s}: the common facet of both lifts."""
    return direct_sum(matroid, uniform(1, 2))


def _split_flacet_mask(matroid: Matroid, flat: Flat | Iterable[int]) -> int:
    mask = flat.mask if isinstance(flat, Flat) else to_mask(flat)
    if mask not in {f.mask for f in split_flacets(matroid)}:
        raise NotASplitFlacet(iter_elements(mask))
    return mask


def nested_rank(matroid: Matroid, flat_mask: int, subset: int) -> int:
    d, n = matroid.d, matroid.n
    r = matroid.rank(flat_mask)
    fs = 0b11 << n
    size = subset.bit_count()
    return min(
        d + 1,
        size,
        (subset & flat_mask).bit_count() + d + 1 - r,
        (subset & (flat_mask | fs)).bit_count() + d - r,
    )


def nested_matroid(matroid: Matroid, flat: Flat | Iterable[int]) -> Matroid:
    """N_F: the nested matroid attached to a split flacet F of a split matroid."""
    _require_connected(matroid, "nested matroid")
    if not is_split(matroid):
        raise NotSplit("nested matroid")
    flat_mask = _split_flacet_mask(matroid, flat)
    d = matroid.d
    masks = [
        mask
        for mask in codec(matroid.n + 2, d + 1).masks
        if nested_rank(matroid, flat_mask, mask) == d + 1
    ]
    return validate_masks(matroid.n + 2, d + 1, masks)


def nested_chain(matroid: Matroid, flat_mask: int) -> list[tuple[int, int]]:
    """The cyclic-flat chain of N_F as (mask, rank) pairs."""
    d, n = matroid.d, matroid.n
    r = matroid.rank(flat_mask)
    rest = matroid.ground_mask & ~flat_mask
    fs = 0b11 << n
    return [
        (0, 0),
        (rest, d - r),
        (rest | fs, d + 1 - r),
        ((1 << (n + 2)) - 1, d + 1),
    ]


def chain_rank(chain: list[tuple[int, int]], subset: int) -> int:
    """Rank from cyclic flats: min over G of r(G) + |S - G|."""
    return min(rank + (subset & ~mask).bit_count() for mask, rank in chain)


class InequalityOutcome(Enum):
    STRICT = "strict"
    EQUALITY = "equality"
    VIOLATED = "violated"


def corank_inequality_sides(
    matroid: Matroid, flat: Flat | Iterable[int], subset: Iterable[int] | int
) -> tuple[int, int]:
    flat_mask = flat.mask if isinstance(flat, Flat) else to_mask(flat)
    mask = subset if isinstance(subset, int) else to_mask(subset)
    d = matroid.d
    if mask.bit_count() != d + 1:
        raise InvalidParams(f"expected a {d + 1}-subset of the lifted ground set")
    lifted_rank = series_free_rank(matroid, mask)
    left = d + 1 - lifted_rank + matroid.rank(flat_mask) - (mask & flat_mask).bit_count()
    right = d + 1 - nested_rank(matroid, flat_mask, mask)
    return left, right


def check_corank_inequality(
    matroid: Matroid, flat: Flat | Iterable[int], subset: Iterable[int] | int
) -> InequalityOutcome:
    left, right = corank_inequality_sides(matroid, flat, subset)
    if left == right:
        return InequalityOutcome.EQUALITY
    return InequalityOutcome.STRICT if left > right else InequalityOutcome.VIOLATED


def predicted_ray_cells(matroid: Matroid) -> list[Matroid]:
    _require_connected(matroid, "ray prediction")
    if not is_split(matroid):
        raise NotSplit("ray prediction")
    return [
        series_free_lift(matroid),
        parallel_cofree_lift(matroid),
        *(nested_matroid(matroid, f) for f in split_flacets(matroid)),
    ]
