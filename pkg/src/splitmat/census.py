"""
Enumeration of small matroids up to isomorphism and census statistics.

Every (d, n)-matroid is, up to relabeling, either a single-element extension
of a (d, n-1)-matroid by a non-coloop or a (d-1, n-1)-matroid plus a coloop.
Extensions of a matroid N by a new element e are determined by the set of
hyperplanes of N that do not span e: T + e is a basis exactly when T is an
independent (d-1)-set whose closure is one of them. Candidates are checked
against the exchange axiom and deduplicated by canonical key.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from math import comb
from typing import Iterable, Iterator

from splitmat.errors import ExchangeViolation, InvalidParams, LimitExceeded, MixedParameters
from splitmat.isomorphism import DEFAULT_MAX_N, canonical_key, canonical_matroid
from splitmat.logging import logger
from splitmat.matroid import Matroid, direct_sum, uniform, validate_masks
from splitmat.reports import CensusRecord
from splitmat.split import is_nested, is_paving, is_sparse_paving, is_split

DEFAULT_MAX_SUBSETS = 20


def _hyperplane_parts(matroid: Matroid) -> list[list[int]]:
    """Independent (d-1)-sets grouped by their closure."""
    groups: dict[int, list[int]] = defaultdict(list)
    for mask in _independent_masks(matroid):
        groups[matroid.closure(mask)].append(mask)
    return [groups[key] for key in sorted(groups)]


def _independent_masks(matroid: Matroid) -> Iterator[int]:
    for subset in itertools.combinations(range(matroid.n), matroid.d - 1):
        mask = sum(1 << i for i in subset)
        if matroid.is_independent(mask):
            yield mask


def single_element_extensions(matroid: Matroid) -> Iterator[Matroid]:
    """All extensions of ``matroid`` by element n + 1 that is not a coloop."""
    if matroid.d == 0:
        yield uniform(0, matroid.n + 1)
        return
    parts = _hyperplane_parts(matroid)
    new = 1 << matroid.n
    existing = list(matroid.basis_masks)
    for chosen in range(1 << len(parts)):
        masks = existing + [
            t | new
            for position, part in enumerate(parts)
            if chosen >> position & 1
            for t in part
        ]
        try:
            yield validate_masks(matroid.n + 1, matroid.d, masks)
        except ExchangeViolation:
            continue


class _Enumerator:
    max_n: int
    _classes: dict[tuple[int, int], list[Matroid]]

    def __init__(self, max_n: int):
        self.max_n = max_n
        self._classes = {}

    def classes(self, d: int, n: int) -> list[Matroid]:
        if (d, n) not in self._classes:
            self._classes[(d, n)] = self._build(d, n)
        return self._classes[(d, n)]

    def _build(self, d: int, n: int) -> list[Matroid]:
        if d == 0 or d == n:
            return [uniform(d, n)]

        seen: dict[tuple[int, int, int], Matroid] = {}
        candidates = 0

        def offer(candidate: Matroid):
            nonlocal candidates
            candidates += 1
            key = canonical_key(candidate, self.max_n)
            if key not in seen:
                seen[key] = canonical_matroid(candidate, self.max_n)

        for rep in self.classes(d, n - 1):
            for extension in single_element_extensions(rep):
                offer(extension)
        for rep in self.classes(d - 1, n - 1):
            offer(direct_sum(rep, uniform(1, 1)))

        found = sorted(seen.values(), key=lambda m: m.to_line())
        logger.debug(
            "(%s,%s): %s classes from %s candidates", d, n, len(found), candidates
        )
        return found


def enumerate_matroids(
    d: int,
    n: int,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
    max_n: int = DEFAULT_MAX_N,
) -> Iterator[Matroid]:
    """One canonical representative per isomorphism class of (d, n)-matroids."""
    if n < 1 or not 0 <= d <= n:
        raise InvalidParams(f"no matroids of rank {d} on {n} elements")
    if comb(n, d) > max_subsets:
        raise LimitExceeded("C(n,d)", comb(n, d), max_subsets)
    yield from _Enumerator(max_n).classes(d, n)


def census_stats(matroids: Iterable[Matroid]) -> CensusRecord:
    shape = None
    counts = dict.fromkeys(
        ("total", "connected", "paving", "sparse_paving", "split", "nested"), 0
    )
    for matroid in matroids:
        if shape is None:
            shape = (matroid.d, matroid.n)
        elif shape != (matroid.d, matroid.n):
            raise MixedParameters(
                f"found a ({matroid.d},{matroid.n})-matroid in a {shape} census"
            )
        counts["total"] += 1
        counts["connected"] += matroid.is_connected()
        counts["paving"] += is_paving(matroid)
        counts["sparse_paving"] += is_sparse_paving(matroid)
        counts["split"] += is_split(matroid)
        counts["nested"] += is_nested(matroid)
    if shape is None:
        raise InvalidParams("a census needs at least one matroid")
    d, n = shape
    return CensusRecord(
        d=d,
        n=n,
        total_count=counts["total"],
        connected_count=counts["connected"],
        paving_count=counts["paving"],
        sparse_paving_count=counts["sparse_paving"],
        split_count=counts["split"],
        nested_count=counts["nested"],
    )
