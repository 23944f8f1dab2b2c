"""
Inline matroid and lift literals for the command line.

Matroids::

    d=2 n=6 nonbases=12,34,56
    d=2 n=4 bases=12,13,14,23,24
    name=snowflake
    matrix=1,0,0;1,0,0;0,1,0;1,1,0;0,0,1;2,1,1      (one column per ';')

Subsets are written digit by digit (``134``) or, for labels above 9, with
dots between elements (``1.10.11``). Lifts are comma-separated rationals or
``name=<lift>``.
"""

from __future__ import annotations

from fractions import Fraction

from splitmat.errors import InvalidParams
from splitmat.fixtures import named_lift, named_matroid
from splitmat.lifts import LiftVector
from splitmat.matroid import Matroid, from_bases, from_nonbases, matroid_from_matrix

MATROID_KEYS = {"d", "n", "bases", "nonbases", "name", "matrix"}


def parse_subset(token: str, n: int | None = None) -> frozenset[int]:
    parts = token.split(".") if "." in token else list(token)
    try:
        elements = [int(p) for p in parts if p]
    except ValueError:
        raise InvalidParams(f"cannot read subset {token!r}") from None
    if len(set(elements)) != len(elements):
        raise InvalidParams(f"subset {token!r} repeats an element")
    if any(e < 1 or (n is not None and e > n) for e in elements):
        raise InvalidParams(f"subset {token!r} leaves the ground set 1..{n}")
    return frozenset(elements)


def _subsets(value: str, n: int) -> list[frozenset[int]]:
    return [parse_subset(token, n) for token in value.split(",") if token]


def _fields(text: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or key not in MATROID_KEYS:
            raise InvalidParams(f"unexpected token {token!r} in matroid literal")
        if key in fields:
            raise InvalidParams(f"{key}= given twice")
        fields[key] = value
    return fields


def _matrix(value: str) -> Matroid:
    try:
        columns = [
            [Fraction(entry) for entry in column.split(",")]
            for column in value.split(";")
            if column
        ]
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"cannot read matrix {value!r}") from None
    if not columns or len({len(c) for c in columns}) != 1:
        raise InvalidParams("matrix columns must be nonempty and of equal length")
    rows = [list(row) for row in zip(*columns)]
    return matroid_from_matrix(rows)


def parse_matroid_literal(text: str) -> Matroid:
    fields = _fields(text)
    if "name" in fields:
        if len(fields) > 1:
            raise InvalidParams("name= cannot be combined with other fields")
        return named_matroid(fields["name"])
    if "matrix" in fields:
        if len(fields) > 1:
            raise InvalidParams("matrix= cannot be combined with other fields")
        return _matrix(fields["matrix"])

    try:
        d, n = int(fields["d"]), int(fields["n"])
    except KeyError as err:
        raise InvalidParams(f"matroid literal needs {err.args[0]}=") from None
    except ValueError:
        raise InvalidParams("d= and n= must be integers") from None
    match ("bases" in fields, "nonbases" in fields):
        case (True, False):
            return from_bases(n, d, _subsets(fields["bases"], n))
        case (False, True):
            return from_nonbases(n, d, _subsets(fields["nonbases"], n))
        case _:
            raise InvalidParams("give exactly one of bases= and nonbases=")


def parse_lift_literal(text: str, k: int, n: int) -> LiftVector:
    text = text.strip()
    if text.startswith("name="):
        lift = named_lift(text.removeprefix("name="))
        if (lift.k, lift.n) != (k, n):
            raise InvalidParams(
                f"lift {text!r} lives on Delta({lift.k},{lift.n}), not Delta({k},{n})"
            )
        return lift
    try:
        heights = [Fraction(h) for h in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InvalidParams(f"cannot read lift {text!r}") from None
    return LiftVector.of(k, n, heights)
