"""
Matroids given by their bases.

A `Matroid` is an immutable value holding the rank ``d``, the ground-set size
``n`` and a bitmap over the lexicographic d-subsets of {1..n}: bit ``i`` is set
when the i-th subset of the `SubsetCodec` is a basis.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

import networkx as nx

from splitmat import linalg
from splitmat.codec import SubsetCodec, codec, from_mask, iter_elements, to_mask
from splitmat.errors import (
    CardinalityMismatch,
    EmptyBases,
    ExchangeViolation,
    InvalidParams,
    RankDeficient,
)

Subset = Iterable[int] | int


def _as_mask(subset: Subset) -> int:
    return subset if isinstance(subset, int) else to_mask(subset)


@dataclass(frozen=True, order=True)
class Flat:
    rank: int
    elements: frozenset[int] = field(compare=False)
    mask: int = field(repr=False)

    @classmethod
    def of(cls, mask: int, rank: int) -> Flat:
        return cls(rank=rank, elements=from_mask(mask), mask=mask)

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


@dataclass(frozen=True)
class Matroid:
    n: int
    d: int
    bitmap: int
    _rank_cache: dict[int, int] = field(
        init=False, default_factory=dict, repr=False, compare=False
    )
    _rank_lock: threading.Lock = field(
        init=False, default_factory=threading.Lock, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams("the ground set must have at least one element")
        if not 0 <= self.d <= self.n:
            raise InvalidParams(f"rank {self.d} is impossible on {self.n} elements")

    def __repr__(self):
        return f"Matroid(d={self.d}, n={self.n}, bases={self.num_bases})"

    @classmethod
    def from_masks(cls, n: int, d: int, masks: Iterable[int]) -> Matroid:
        """Build without validation; callers guarantee the exchange axiom."""
        index = codec(n, d).index
        bitmap = 0
        for mask in masks:
            bitmap |= 1 << index(mask)
        return cls(n=n, d=d, bitmap=bitmap)

    @property
    def codec(self) -> SubsetCodec:
        return codec(self.n, self.d)

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def basis_masks(self) -> tuple[int, ...]:
        masks = self.codec.masks
        return tuple(masks[i] for i in range(len(masks)) if self.bitmap >> i & 1)

    @cached_property
    def _basis_set(self) -> frozenset[int]:
        return frozenset(self.basis_masks)

    @cached_property
    def bases(self) -> frozenset[frozenset[int]]:
        return frozenset(from_mask(mask) for mask in self.basis_masks)

    @property
    def num_bases(self) -> int:
        return self.bitmap.bit_count()

    def is_basis(self, subset: Subset) -> bool:
        return _as_mask(subset) in self._basis_set

    @cached_property
    def nonbasis_masks(self) -> tuple[int, ...]:
        return tuple(m for m in self.codec.masks if m not in self._basis_set)

    def to_line(self) -> str:
        """The corpus representation: '*' for a basis, '0' otherwise."""
        return "".join(
            "*" if self.bitmap >> i & 1 else "0" for i in range(len(self.codec))
        )

    # rank function

    def rank(self, subset: Subset) -> int:
        mask = _as_mask(subset)
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        value = max((basis & mask).bit_count() for basis in self.basis_masks)
        with self._rank_lock:
            self._rank_cache[mask] = value
        return value

    def is_independent(self, subset: Subset) -> bool:
        mask = _as_mask(subset)
        return any(basis & mask == mask for basis in self.basis_masks)

    def greedy_rank(self, subset: Subset) -> int:
        """Rank by greedy augmentation with the independence oracle."""
        independent = 0
        for element in iter_elements(_as_mask(subset)):
            candidate = independent | 1 << (element - 1)
            if self.is_independent(candidate):
                independent = candidate
        return independent.bit_count()

    def closure(self, subset: Subset) -> int:
        mask = _as_mask(subset)
        base_rank = self.rank(mask)
        closed = mask
        for element in range(1, self.n + 1):
            bit = 1 << (element - 1)
            if not mask & bit and self.rank(mask | bit) == base_rank:
                closed |= bit
        return closed

    # derived structure

    @cached_property
    def flats(self) -> tuple[Flat, ...]:
        found = {self.closure(mask) for mask in range(1 << self.n)}
        return tuple(sorted(Flat.of(mask, self.rank(mask)) for mask in found))

    @cached_property
    def circuits(self) -> tuple[frozenset[int], ...]:
        found = []
        for mask in range(1, 1 << self.n):
            size = mask.bit_count()
            if self.rank(mask) != size - 1:
                continue
            if all(
                self.rank(mask & ~(1 << (e - 1))) == size - 1
                for e in iter_elements(mask)
            ):
                found.append(mask)
        found.sort(key=lambda mask: (mask.bit_count(), sorted(iter_elements(mask))))
        return tuple(from_mask(mask) for mask in found)

    @cached_property
    def cyclic_flats(self) -> tuple[Flat, ...]:
        return tuple(
            flat
            for flat in self.flats
            if all(
                self.rank(flat.mask & ~(1 << (e - 1))) == flat.rank
                for e in flat.elements
            )
        )

    @cached_property
    def loops(self) -> frozenset[int]:
        return from_mask(self.closure(0))

    @cached_property
    def coloops(self) -> frozenset[int]:
        common = self.ground_mask
        for basis in self.basis_masks:
            common &= basis
        return from_mask(common)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        for basis in self.basis_masks:
            for inside in iter_elements(basis):
                without = basis & ~(1 << (inside - 1))
                for outside in iter_elements(self.ground_mask & ~basis):
                    if without | 1 << (outside - 1) in self._basis_set:
                        graph.add_edge(inside, outside)
        parts = [frozenset(part) for part in nx.connected_components(graph)]
        return tuple(sorted(parts, key=min))

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def is_uniform(self) -> bool:
        return self.num_bases == comb(self.n, self.d)

    def element_degrees(self) -> tuple[int, ...]:
        return tuple(
            sum(1 for basis in self.basis_masks if basis >> e & 1)
            for e in range(self.n)
        )


def _exchange_witness(
    masks: Sequence[int], basis_set: frozenset[int] | set[int]
) -> tuple[int, int, int] | None:
    """First (A, B, a) violating the exchange axiom, or None."""
    for a_mask in masks:
        for b_mask in masks:
            only_b = b_mask & ~a_mask
            if not only_b:
                continue
            for a in iter_elements(a_mask & ~b_mask):
                reduced = a_mask & ~(1 << (a - 1))
                if not any(
                    reduced | 1 << (b - 1) in basis_set for b in iter_elements(only_b)
                ):
                    return a_mask, b_mask, a
    return None


def validate_masks(n: int, d: int, masks: Iterable[int]) -> Matroid:
    masks = list(dict.fromkeys(masks))
    if not masks:
        raise EmptyBases()
    full = (1 << n) - 1
    for mask in masks:
        if mask & ~full or mask.bit_count() != d:
            raise CardinalityMismatch(iter_elements(mask), d)
    if witness := _exchange_witness(masks, set(masks)):
        a_mask, b_mask, a = witness
        raise ExchangeViolation(iter_elements(a_mask), iter_elements(b_mask), a)
    return Matroid.from_masks(n, d, masks)


def from_bases(n: int, d: int, bases: Iterable[Iterable[int]]) -> Matroid:
    if n < 1:
        raise InvalidParams("the ground set must have at least one element")
    if not 0 <= d <= n:
        raise InvalidParams(f"rank {d} is impossible on {n} elements")
    masks = []
    for basis in bases:
        elements = list(basis)
        if len(set(elements)) != d or any(not 1 <= e <= n for e in elements):
            raise CardinalityMismatch(elements, d)
        masks.append(to_mask(elements))
    return validate_masks(n, d, masks)


def from_nonbases(n: int, d: int, nonbases: Iterable[Iterable[int]]) -> Matroid:
    excluded = {codec(n, d).index(subset) for subset in nonbases}
    masks = codec(n, d).masks
    return validate_masks(
        n, d, (masks[i] for i in range(len(masks)) if i not in excluded)
    )


def uniform(d: int, n: int) -> Matroid:
    if not 0 <= d <= n or n < 1:
        raise InvalidParams(f"U_{{{d},{n}}} does not exist")
    return Matroid(n=n, d=d, bitmap=(1 << comb(n, d)) - 1)


def rank_of(matroid: Matroid, subset: Subset) -> int:
    return matroid.rank(subset)


def closure(matroid: Matroid, subset: Subset) -> frozenset[int]:
    return from_mask(matroid.closure(subset))


def flats(matroid: Matroid) -> list[Flat]:
    return list(matroid.flats)


def circuits(matroid: Matroid) -> list[frozenset[int]]:
    return list(matroid.circuits)


def cyclic_flats(matroid: Matroid) -> list[Flat]:
    return list(matroid.cyclic_flats)


def dual(matroid: Matroid) -> Matroid:
    full = matroid.ground_mask
    return Matroid.from_masks(
        matroid.n, matroid.n - matroid.d, (full & ~b for b in matroid.basis_masks)
    )


def _compress(mask: int, support: Sequence[int]) -> int:
    """Relabel the elements of ``support`` (sorted) as 1..len(support)."""
    compressed = 0
    for position, element in enumerate(support):
        if mask >> (element - 1) & 1:
            compressed |= 1 << position
    return compressed


def restriction(matroid: Matroid, subset: Subset) -> Matroid:
    """M|F on the elements of F, relabeled 1..|F| in increasing order."""
    mask = _as_mask(subset)
    support = sorted(iter_elements(mask))
    if not support:
        raise InvalidParams("cannot restrict to the empty set")
    r = matroid.rank(mask)
    masks = {
        _compress(basis & mask, support)
        for basis in matroid.basis_masks
        if (basis & mask).bit_count() == r
    }
    return Matroid.from_masks(len(support), r, masks)


def contraction(matroid: Matroid, subset: Subset) -> Matroid:
    """M/F on the complement of F, relabeled 1..n-|F| in increasing order."""
    mask = _as_mask(subset)
    rest = matroid.ground_mask & ~mask
    support = sorted(iter_elements(rest))
    if not support:
        raise InvalidParams("cannot contract the whole ground set")
    r = matroid.rank(mask)
    masks = {
        _compress(basis & rest, support)
        for basis in matroid.basis_masks
        if (basis & mask).bit_count() == r
    }
    return Matroid.from_masks(len(support), matroid.d - r, masks)


def deletion(matroid: Matroid, element: int) -> Matroid:
    return restriction(matroid, matroid.ground_mask & ~(1 << (element - 1)))


def direct_sum(first: Matroid, second: Matroid) -> Matroid:
    shift = first.n
    return Matroid.from_masks(
        first.n + second.n,
        first.d + second.d,
        (a | b << shift for a in first.basis_masks for b in second.basis_masks),
    )


def is_connected(matroid: Matroid) -> bool:
    return matroid.is_connected()


def connected_components(matroid: Matroid) -> list[frozenset[int]]:
    return list(matroid.components)


def component_matroids(matroid: Matroid) -> Iterator[tuple[frozenset[int], Matroid]]:
    for component in matroid.components:
        yield component, restriction(matroid, component)


def relabel(matroid: Matroid, permutation: Sequence[int]) -> Matroid:
    """Apply ``e -> permutation[e - 1]`` to every basis."""
    if sorted(permutation) != list(range(1, matroid.n + 1)):
        raise InvalidParams(f"{list(permutation)} is not a permutation of 1..{matroid.n}")
    images = [1 << (p - 1) for p in permutation]
    masks = []
    for basis in matroid.basis_masks:
        image = 0
        for element in iter_elements(basis):
            image |= images[element - 1]
        masks.append(image)
    return Matroid.from_masks(matroid.n, matroid.d, masks)


def matroid_from_matrix(columns_by_row: Sequence[Sequence]) -> Matroid:
    """The column matroid of a d x n rational matrix of full row rank."""
    rows = [[linalg.to_fraction(value) for value in row] for row in columns_by_row]
    if not rows or not rows[0]:
        raise InvalidParams("matrix needs at least one row and one column")
    d, n = len(rows), len(rows[0])
    if any(len(row) != n for row in rows):
        raise InvalidParams("matrix rows have different lengths")
    if (found := linalg.rank(rows, n)) < d:
        raise RankDeficient(found, d)
    masks = [
        to_mask(c + 1 for c in chosen)
        for chosen in itertools.combinations(range(n), d)
        if linalg.rank([[row[c] for c in chosen] for row in rows], d) == d
    ]
    return Matroid.from_masks(n, d, masks)
