"""
Exception hierarchy for splitmat.

Every error raised by the library derives from `SplitmatError`. The three
families below carry the process exit code used by the command line.
"""

from __future__ import annotations

from typing import Iterable


class SplitmatError(Exception):
    exit_code: int = 1


class ValidationError(SplitmatError):
    """Input is not a valid object for the requested operation."""

    exit_code = 2


class GuardError(SplitmatError):
    """A configured size guard refused the computation."""

    exit_code = 3


class CertificateFailure(SplitmatError):
    """An internally computed certificate did not verify."""

    exit_code = 4


def _fmt(subset: Iterable[int]) -> str:
    return "{" + ",".join(str(e) for e in sorted(subset)) + "}"


class ExchangeViolation(ValidationError):
    def __init__(self, a: Iterable[int], b: Iterable[int], element: int):
        self.a = frozenset(a)
        self.b = frozenset(b)
        self.element = element
        super().__init__(
            f"basis exchange fails for A={_fmt(self.a)}, B={_fmt(self.b)}, a={element}"
        )


class EmptyBases(ValidationError):
    def __init__(self):
        super().__init__("a matroid needs at least one basis")


class CardinalityMismatch(ValidationError):
    def __init__(self, subset: Iterable[int], d: int):
        self.subset = frozenset(subset)
        super().__init__(f"subset {_fmt(self.subset)} does not have {d} elements")


class InvalidParams(ValidationError):
    pass


class RankDeficient(ValidationError):
    def __init__(self, rank: int, d: int):
        self.rank = rank
        super().__init__(f"matrix has rank {rank}, expected {d}")


class NotConnected(ValidationError):
    def __init__(self, what: str = "operation"):
        super().__init__(f"{what} requires a connected matroid")


class NotSplit(ValidationError):
    def __init__(self, what: str = "operation"):
        super().__init__(f"{what} requires a split matroid")


class NotASplitFlacet(ValidationError):
    def __init__(self, subset: Iterable[int]):
        self.subset = frozenset(subset)
        super().__init__(f"{_fmt(self.subset)} is not a split flacet")


class NotStable(ValidationError):
    def __init__(self, first: Iterable[int], second: Iterable[int]):
        self.pair = (frozenset(first), frozenset(second))
        super().__init__(
            f"{_fmt(self.pair[0])} and {_fmt(self.pair[1])} are adjacent in the Johnson graph"
        )


class NotAMatroid(ValidationError):
    def __init__(self, witness: tuple[Iterable[int], Iterable[int]]):
        self.witness = (frozenset(witness[0]), frozenset(witness[1]))
        super().__init__(
            f"vertex set is not a basis system: exchange fails between "
            f"{_fmt(self.witness[0])} and {_fmt(self.witness[1])}"
        )


class FormatError(ValidationError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class MixedParameters(ValidationError):
    pass


class DegenerateParameters(ValidationError):
    pass


class LimitExceeded(GuardError):
    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}")
