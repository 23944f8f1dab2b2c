"""
Split analysis: flacets, split flacets, compatibility and the matroid classes
defined through them (split, paving, sparse paving, nested).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from splitmat import lp
from splitmat.codec import codec, from_mask, iter_elements, to_mask
from splitmat.errors import (
    DegenerateParameters,
    InvalidParams,
    NotASplitFlacet,
    NotConnected,
    NotStable,
)
from splitmat.matroid import (
    Flat,
    Matroid,
    component_matroids,
    contraction,
    dual,
    from_nonbases,
    restriction,
)


@dataclass(frozen=True)
class SplitHyperplane:
    """The hyperplane sum_{i in S} x_i = d - mu of the hypersimplex Delta(d, n)."""

    d: int
    n: int
    S: frozenset[int]
    mu: int

    def __post_init__(self):
        size = len(self.S)
        if not 0 < size < self.n or not all(1 <= e <= self.n for e in self.S):
            raise InvalidParams(f"{sorted(self.S)} is not a proper subset of 1..{self.n}")
        if not (0 < self.mu < self.d and self.d - size < self.mu < self.n - size):
            raise InvalidParams(
                f"mu={self.mu} is outside the split window for |S|={size} in "
                f"Delta({self.d},{self.n})"
            )

    @property
    def rhs(self) -> int:
        return self.d - self.mu

    def side_value(self, vertex_mask: int) -> int:
        return (vertex_mask & to_mask(self.S)).bit_count() - self.rhs

    def side(self, vertex_mask: int) -> int:
        """Sign of sum_S x - (d - mu) at a vertex."""
        value = self.side_value(vertex_mask)
        return (value > 0) - (value < 0)


def _require_connected(matroid: Matroid, what: str):
    if matroid.n < 2:
        raise DegenerateParameters(f"{what} needs at least two elements")
    if not matroid.is_connected():
        raise NotConnected(what)


def _is_flacet(matroid: Matroid, flat: Flat) -> bool:
    return (
        restriction(matroid, flat.mask).is_connected()
        and contraction(matroid, flat.mask).is_connected()
    )


def flacets(matroid: Matroid) -> list[Flat]:
    _require_connected(matroid, "flacets")
    full = matroid.ground_mask
    return [
        flat
        for flat in matroid.flats
        if 0 < flat.mask < full and _is_flacet(matroid, flat)
    ]


def split_flacets(matroid: Matroid) -> list[Flat]:
    return [f for f in flacets(matroid) if 0 < f.rank < len(f)]


def hyperplane_of_flacet(matroid: Matroid, flat: Flat | Iterable[int]) -> SplitHyperplane:
    mask = flat.mask if isinstance(flat, Flat) else to_mask(flat)
    if mask not in {f.mask for f in split_flacets(matroid)}:
        raise NotASplitFlacet(iter_elements(mask))
    return SplitHyperplane(
        d=matroid.d,
        n=matroid.n,
        S=from_mask(mask),
        mu=matroid.d - matroid.rank(mask),
    )


def splits_compatible(d: int, first: Flat, second: Flat) -> bool:
    overlap = len(first.elements & second.elements)
    return overlap + d <= first.rank + second.rank


def splits_compatible_four_way(first: SplitHyperplane, second: SplitHyperplane) -> bool:
    """Compatibility of two arbitrary splits of the same hypersimplex."""
    d, n = first.d, first.n
    everything = frozenset(range(1, n + 1))
    a, c = first.S, second.S
    b, e = everything - a, everything - c
    mu, nu = first.mu, second.mu
    return (
        len(a & c) <= d - mu - nu
        or len(a & e) <= nu - mu
        or len(b & c) <= mu - nu
        or len(b & e) <= mu + nu - d
    )


def interior_margin(first: SplitHyperplane, second: SplitHyperplane) -> Fraction | None:
    """
    Largest t with t <= x_i <= 1 - t for a point x of Delta(d, n) on both
    hyperplanes, or None when the hyperplanes do not meet inside Delta(d, n).
    """
    d, n = first.d, first.n
    t = n
    width = n + 1
    A_ub, b_ub = [], []
    for i in range(n):
        upper = [0] * width
        upper[i] = 1
        A_ub.append(upper)
        b_ub.append(1)
        below = [0] * width
        below[t], below[i] = 1, -1
        A_ub.append(below)
        b_ub.append(0)
        above = [0] * width
        above[t], above[i] = 1, 1
        A_ub.append(above)
        b_ub.append(1)
    A_eq = [[1] * n + [0]]
    b_eq = [d]
    for hyperplane in (first, second):
        A_eq.append([int(i + 1 in hyperplane.S) for i in range(n)] + [0])
        b_eq.append(hyperplane.rhs)
    objective = [0] * n + [-1]
    result = lp.linprog(objective, A_ub, b_ub, A_eq, b_eq)
    if not result.success:
        return None
    return result.x[t]


def splits_compatible_geometric(
    d: int, n: int, first: SplitHyperplane, second: SplitHyperplane
) -> bool:
    if (first.d, first.n) != (d, n) or (second.d, second.n) != (d, n):
        raise InvalidParams(f"hyperplanes do not belong to Delta({d},{n})")
    margin = interior_margin(first, second)
    return margin is None or margin <= 0


def _is_connected_split(matroid: Matroid) -> bool:
    if matroid.n < 2 or matroid.is_uniform():
        return True
    return all(
        restriction(matroid, f.mask).is_uniform()
        and contraction(matroid, f.mask).is_uniform()
        for f in split_flacets(matroid)
    )


def is_split(matroid: Matroid) -> bool:
    if matroid.is_connected():
        return _is_connected_split(matroid)
    non_uniform = [
        part for _, part in component_matroids(matroid) if not part.is_uniform()
    ]
    return len(non_uniform) <= 1 and all(_is_connected_split(p) for p in non_uniform)


def split_flacets_pairwise_compatible(matroid: Matroid) -> bool:
    found = split_flacets(matroid)
    return all(
        splits_compatible(matroid.d, f, g) for f, g in itertools.combinations(found, 2)
    )


def is_paving(matroid: Matroid) -> bool:
    if matroid.d == 0:
        return True
    return all(
        matroid.is_independent(mask) for mask in codec(matroid.n, matroid.d - 1).masks
    )


def is_sparse_paving(matroid: Matroid) -> bool:
    return is_paving(matroid) and is_paving(dual(matroid))


def is_nested(matroid: Matroid) -> bool:
    masks = [flat.mask for flat in matroid.cyclic_flats]
    return all(
        a & b in (a, b) for a, b in itertools.combinations(masks, 2)
    )


def _johnson_adjacent(first: int, second: int) -> bool:
    return (first ^ second).bit_count() == 2


def check_stable(subsets: Iterable[Iterable[int]]):
    masks = [to_mask(s) for s in subsets]
    for first, second in itertools.combinations(masks, 2):
        if _johnson_adjacent(first, second):
            raise NotStable(iter_elements(first), iter_elements(second))


def stable_set_to_matroid(d: int, n: int, stable: Iterable[Iterable[int]]) -> Matroid:
    stable = [frozenset(s) for s in stable]
    check_stable(stable)
    return from_nonbases(n, d, stable)


def matroid_to_stable_set(matroid: Matroid) -> frozenset[frozenset[int]]:
    if not matroid.is_connected() or not is_sparse_paving(matroid):
        raise InvalidParams("only connected sparse paving matroids have a stable set")
    return frozenset(from_mask(mask) for mask in matroid.nonbasis_masks)


def knuth_classes(d: int, n: int) -> dict[int, list[frozenset[int]]]:
    classes: dict[int, list[frozenset[int]]] = defaultdict(list)
    for mask in codec(n, d).masks:
        classes[sum(iter_elements(mask)) % n].append(from_mask(mask))
    return classes


def knuth_residue(d: int, n: int) -> int:
    """Residue of the largest colour class of the sum-mod-n colouring, smallest on ties."""
    if not 0 < d < n:
        raise DegenerateParameters(f"no Johnson graph J({d},{n}) colouring")
    classes = knuth_classes(d, n)
    return max(sorted(classes), key=lambda r: (len(classes[r]), -r))


def knuth_stable_set(d: int, n: int) -> frozenset[frozenset[int]]:
    """The d-subsets of {1..n} whose element sum is congruent to knuth_residue(d, n)."""
    return frozenset(knuth_classes(d, n)[knuth_residue(d, n)])


def binary_quadruple_stable_set(k: int) -> list[frozenset[int]]:
    """4-subsets of {1..2^k} whose labels minus one XOR to zero; stable in J(4, 2^k)."""
    if k < 2:
        raise InvalidParams("need at least four points")
    size = 1 << k
    found = []
    for a, b, c in itertools.combinations(range(size), 3):
        fourth = a ^ b ^ c
        if fourth > c:
            found.append(frozenset((a + 1, b + 1, c + 1, fourth + 1)))
    return found


def binary_triple_stable_set(k: int) -> list[frozenset[int]]:
    """The derived Steiner triple system on {1..2^k - 1}; stable in J(3, 2^k - 1)."""
    last = 1 << k
    return [q - {last} for q in binary_quadruple_stable_set(k) if last in q]


def dressian_dim_bounds(d: int, n: int) -> tuple[Fraction, int]:
    if not 0 < d < n:
        raise DegenerateParameters(f"Dr({d},{n}) needs 0 < d < n")
    return Fraction(comb(n, d), n) - 1, comb(n - 2, d - 1) - 1

