"""
Lexicographic encoding of k-subsets of {1..n}.

Subsets travel through the library as integer bitmasks (bit ``e - 1`` set for
element ``e``); the codec maps those masks to and from their lexicographic
index.
"""

from __future__ import annotations

import itertools
from functools import cache, cached_property
from math import comb
from typing import Iterable, Iterator

from splitmat.errors import CardinalityMismatch, InvalidParams


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for element in elements:
        mask |= 1 << (element - 1)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(iter_elements(mask))


def iter_elements(mask: int) -> Iterator[int]:
    element = 1
    while mask:
        if mask & 1:
            yield element
        mask >>= 1
        element += 1


def format_subset(mask: int, n: int | None = None) -> str:
    """Compact rendering: ``12`` for {1,2} when every label is one digit."""
    elements = list(iter_elements(mask))
    if (n or max(elements, default=0)) < 10:
        return "".join(str(e) for e in elements)
    return "{" + ",".join(str(e) for e in elements) + "}"


class SubsetCodec:
    n: int
    k: int

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise InvalidParams(f"cannot encode {k}-subsets of a {n}-element set")
        self.n = n
        self.k = k

    def __repr__(self):
        return f"SubsetCodec(n={self.n}, k={self.k})"

    def __len__(self) -> int:
        return comb(self.n, self.k)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(
            to_mask(subset)
            for subset in itertools.combinations(range(1, self.n + 1), self.k)
        )

    @cached_property
    def _index(self) -> dict[int, int]:
        return {mask: index for index, mask in enumerate(self.masks)}

    @cached_property
    def revlex_permutation(self) -> tuple[int, ...]:
        """Position ``i`` holds the lexicographic index of the i-th revlex subset."""
        revlex = sorted(
            self.masks,
            key=lambda mask: tuple(sorted(iter_elements(mask), reverse=True)),
        )
        return tuple(self._index[mask] for mask in revlex)

    def index(self, subset: Iterable[int] | int) -> int:
        mask = subset if isinstance(subset, int) else to_mask(subset)
        try:
            return self._index[mask]
        except KeyError:
            raise CardinalityMismatch(iter_elements(mask), self.k) from None

    def subset(self, index: int) -> frozenset[int]:
        return from_mask(self.masks[index])

    def mask(self, index: int) -> int:
        return self.masks[index]


@cache
def codec(n: int, k: int) -> SubsetCodec:
    return SubsetCodec(n, k)
