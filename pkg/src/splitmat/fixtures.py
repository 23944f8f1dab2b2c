"""
Named matroids and lifts that recur in tests and on the command line.
"""

from __future__ import annotations

from typing import Callable

from splitmat.codec import codec
from splitmat.errors import InvalidParams
from splitmat.lifts import LiftVector
from splitmat.matroid import Matroid, direct_sum, dual, from_nonbases, matroid_from_matrix
from splitmat.split import SplitHyperplane, binary_triple_stable_set, stable_set_to_matroid

CATERPILLAR_HEIGHTS = (3, 2, 1, 0, 0, 2, 1, 0, 0, 2, 1, 1, 2, 2, 3)


def snowflake() -> Matroid:
    return from_nonbases(6, 2, [(1, 2), (3, 4), (5, 6)])


def m5() -> Matroid:
    """The (2,4)-matroid with five bases."""
    return from_nonbases(4, 2, [(3, 4)])


def example_nonsplit_36() -> Matroid:
    return from_nonbases(
        6,
        3,
        [
            (1, 3, 4),
            (2, 3, 4),
            (3, 4, 5),
            (3, 4, 6),
            (1, 5, 6),
            (2, 5, 6),
            (3, 5, 6),
            (4, 5, 6),
        ],
    )


def fano() -> Matroid:
    return stable_set_to_matroid(3, 7, binary_triple_stable_set(3))


def lambda2(value: int = 2) -> Matroid:
    """A nested (3,6)-matroid realized by a matrix with a free parameter; not split."""
    if value in (0, 1):
        raise InvalidParams("the parameter must differ from 0 and 1")
    return matroid_from_matrix(
        [
            [1, 1, 0, 1, 0, value],
            [0, 0, 1, 1, 0, 1],
            [0, 0, 0, 0, 1, 1],
        ]
    )


def two_lines_36() -> Matroid:
    return matroid_from_matrix(
        [
            [1, 1, 0, 1, 0, 1],
            [0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 1],
        ]
    )


def excluded_minors_rank3() -> list[Matroid]:
    first = example_nonsplit_36()
    return [first, dual(first), lambda2(), two_lines_36()]


def disconnected_excluded_minor() -> Matroid:
    return direct_sum(m5(), m5())


def caterpillar_lift() -> LiftVector:
    return LiftVector.of(2, 6, CATERPILLAR_HEIGHTS)


def split_lift(hyperplane: SplitHyperplane) -> LiftVector:
    """max(0, sum_S x - (d - mu)) on the vertices of Delta(d, n)."""
    return LiftVector.of(
        hyperplane.d,
        hyperplane.n,
        (
            max(0, hyperplane.side_value(mask))
            for mask in codec(hyperplane.n, hyperplane.d).masks
        ),
    )


MATROIDS: dict[str, Callable[[], Matroid]] = {
    "snowflake": snowflake,
    "m5": m5,
    "fano": fano,
    "nonsplit36": example_nonsplit_36,
    "lambda2": lambda2,
    "twolines36": two_lines_36,
    "m5m5": disconnected_excluded_minor,
}

LIFTS: dict[str, Callable[[], LiftVector]] = {
    "caterpillar": caterpillar_lift,
}


def named_matroid(name: str) -> Matroid:
    try:
        return MATROIDS[name]()
    except KeyError:
        raise InvalidParams(
            f"unknown matroid {name!r}; known: {', '.join(sorted(MATROIDS))}"
        ) from None


def named_lift(name: str) -> LiftVector:
    try:
        return LIFTS[name]()
    except KeyError:
        raise InvalidParams(
            f"unknown lift {name!r}; known: {', '.join(sorted(LIFTS))}"
        ) from None
