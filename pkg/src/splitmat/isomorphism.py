"""
Canonical forms of matroids under relabeling of the ground set.

The canonical form is the lexicographically smallest corpus line ('*' sorts
before '0') over all relabelings that respect an isomorphism-invariant
ordering of the elements. Elements are first sorted by their signature (basis
degree plus the sorted multiset of pair degrees), so only permutations inside
signature classes are tried.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from math import comb, factorial, prod

from splitmat.codec import codec, iter_elements
from splitmat.errors import LimitExceeded
from splitmat.logging import logger
from splitmat.matroid import Matroid

DEFAULT_MAX_N = 9


def _signatures(matroid: Matroid) -> list[tuple]:
    n = matroid.n
    degree = [0] * n
    pairs = [[0] * n for _ in range(n)]
    for basis in matroid.basis_masks:
        elements = [e - 1 for e in iter_elements(basis)]
        for i in elements:
            degree[i] += 1
            for j in elements:
                pairs[i][j] += 1
    return [
        (degree[i], tuple(sorted(pairs[i][j] for j in range(n) if j != i)))
        for i in range(n)
    ]


def _blocks(matroid: Matroid) -> list[list[int]]:
    """Elements grouped by signature, groups in signature order."""
    groups: dict[tuple, list[int]] = defaultdict(list)
    for element, signature in enumerate(_signatures(matroid), start=1):
        groups[signature].append(element)
    return [groups[key] for key in sorted(groups)]


def _key(matroid: Matroid, images: list[int]) -> int:
    """Larger key means a smaller corpus line."""
    index = codec(matroid.n, matroid.d).index
    top = comb(matroid.n, matroid.d) - 1
    key = 0
    for basis in matroid.basis_masks:
        image = 0
        for element in iter_elements(basis):
            image |= images[element - 1]
        key |= 1 << (top - index(image))
    return key


def _check_limit(matroid: Matroid, max_n: int):
    if matroid.n > max_n:
        raise LimitExceeded("ground-set size for isomorphism", matroid.n, max_n)


def _best_key(matroid: Matroid) -> int:
    if matroid.is_uniform():
        return _key(matroid, [1 << i for i in range(matroid.n)])

    blocks = _blocks(matroid)
    offsets = list(itertools.accumulate([0] + [len(b) for b in blocks]))
    logger.debug(
        "canonical form of %r tries %s relabelings",
        matroid,
        prod(factorial(len(b)) for b in blocks),
    )

    best_key = -1
    for orders in itertools.product(*(itertools.permutations(b) for b in blocks)):
        targets = [0] * matroid.n
        for offset, order in zip(offsets, orders):
            for position, element in enumerate(order, start=offset + 1):
                targets[element - 1] = position
        key = _key(matroid, [1 << (t - 1) for t in targets])
        best_key = max(best_key, key)
    return best_key


def canonical_key(matroid: Matroid, max_n: int = DEFAULT_MAX_N) -> tuple[int, int, int]:
    _check_limit(matroid, max_n)
    return matroid.d, matroid.n, _best_key(matroid)


def canonical_form(matroid: Matroid, max_n: int = DEFAULT_MAX_N) -> str:
    return canonical_matroid(matroid, max_n).to_line()


def canonical_matroid(matroid: Matroid, max_n: int = DEFAULT_MAX_N) -> Matroid:
    """The relabeled copy of ``matroid`` whose bitmap is the canonical form."""
    _check_limit(matroid, max_n)
    key = _best_key(matroid)
    size = comb(matroid.n, matroid.d)
    bitmap = 0
    for i in range(size):
        if key >> (size - 1 - i) & 1:
            bitmap |= 1 << i
    return Matroid(n=matroid.n, d=matroid.d, bitmap=bitmap)


def is_isomorphic(first: Matroid, second: Matroid, max_n: int = DEFAULT_MAX_N) -> bool:
    _check_limit(first, max_n)
    _check_limit(second, max_n)
    if (first.n, first.d, first.num_bases) != (second.n, second.d, second.num_bases):
        return False
    if sorted(first.element_degrees()) != sorted(second.element_degrees()):
        return False
    return canonical_key(first, max_n) == canonical_key(second, max_n)
