"""
Reading and writing matroid corpus files.

A corpus file starts with a header line ``d n count`` followed by ``count``
lines of exactly C(n, d) characters from ``*`` and ``0``; a ``*`` at position
``i`` marks the i-th d-subset (lexicographic order) as a basis.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Literal, TextIO

import chardet

from splitmat.codec import codec
from splitmat.errors import FormatError, InvalidParams, MixedParameters, ValidationError
from splitmat.logging import logger
from splitmat.matroid import Matroid, validate_masks

Ordering = Literal["lex", "revlex", "auto"]

BASIS = "*"
NONBASIS = "0"


def read_corpus_text(path: Path | str) -> str:
    with open(path, "rb") as f:
        raw = f.read()

    detected = chardet.detect(raw)
    if detected["confidence"] > 0.9 and (encoding := detected.get("encoding")):
        return raw.decode(encoding.lower())

    logger.debug("Unknown encoding for corpus file %s, trying utf-8", path)
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as err:
        raise FormatError(1, f"cannot decode {path}: {err.reason}") from err


def convert_ordering(line: str, d: int, n: int, source: str = "revlex") -> str:
    """Reorder a bitmap line from ``source`` order into the other order."""
    permutation = codec(n, d).revlex_permutation
    if len(line) != len(permutation):
        raise InvalidParams(f"line has {len(line)} characters, expected {len(permutation)}")
    match source:
        case "revlex":
            converted = [""] * len(line)
            for position, lex_index in enumerate(permutation):
                converted[lex_index] = line[position]
            return "".join(converted)
        case "lex":
            return "".join(line[lex_index] for lex_index in permutation)
        case _:
            raise InvalidParams(f"unknown subset ordering {source!r}")


def line_to_matroid(line: str, d: int, n: int, *, validate: bool = True) -> Matroid:
    """Raises FormatError with line number 0; callers attach the real line."""
    expected = comb(n, d)
    if len(line) != expected:
        raise FormatError(0, f"expected {expected} characters, found {len(line)}")
    if stray := set(line) - {BASIS, NONBASIS}:
        raise FormatError(0, f"unexpected characters {''.join(sorted(stray))!r}")
    bitmap = sum(1 << i for i, char in enumerate(line) if char == BASIS)
    matroid = Matroid(n=n, d=d, bitmap=bitmap)
    if validate:
        validate_masks(n, d, matroid.basis_masks)
    return matroid


def _parse_header(line: str) -> tuple[int, int, int]:
    fields = line.split(" ")
    if len(fields) != 3 or not all(f.isdigit() for f in fields):
        raise FormatError(1, f"header must be 'd n count', found {line!r}")
    d, n, count = (int(f) for f in fields)
    if n < 1 or d > n:
        raise FormatError(1, f"no matroids of rank {d} on {n} elements")
    return d, n, count


@dataclass
class CorpusParser:
    """
    Streams matroids out of corpus text.

    In strict mode the first malformed or invalid line raises; in lenient mode
    it is logged, recorded in ``flagged`` and skipped.
    """

    strict: bool = True
    order: Ordering = "lex"
    flagged: list[ValidationError] = field(default_factory=list)
    d: int | None = None
    n: int | None = None

    def parse_text(self, text: str) -> Iterator[Matroid]:
        for _, matroid in self.entries(text):
            yield matroid

    def entries(self, text: str) -> Iterator[tuple[int, Matroid]]:
        """(file line number, matroid) pairs."""
        lines = text.splitlines()
        if not lines:
            raise FormatError(1, "missing header")
        d, n, count = _parse_header(lines[0])
        self.d, self.n = d, n
        body = lines[1:]
        order = self._resolve_order(body, d, n)

        for number, line in enumerate(body, start=2):
            try:
                yield number, self._parse_line(line, d, n, order, number)
            except ValidationError as err:
                if self.strict:
                    raise
                logger.warning("skipping line %s: %s", number, err)
                self.flagged.append(err)

        if count != len(body):
            err = FormatError(1, f"header announces {count} matroids, found {len(body)}")
            if self.strict:
                raise err
            logger.warning("%s", err)
            self.flagged.append(err)

    def parse_file(self, path: Path | str) -> Iterator[Matroid]:
        for _, matroid in self.file_entries(path):
            yield matroid

    def file_entries(self, path: Path | str) -> Iterator[tuple[int, Matroid]]:
        logger.debug("parsing corpus %s", path)
        yield from self.entries(read_corpus_text(path))

    def _parse_line(self, line: str, d: int, n: int, order: str, number: int) -> Matroid:
        try:
            if order == "revlex" and len(line) == comb(n, d):
                line = convert_ordering(line, d, n, source="revlex")
            return line_to_matroid(line, d, n)
        except FormatError as err:
            raise FormatError(number, err.reason) from err
        except ValidationError as err:
            _at_line(err, number)
            raise

    def _resolve_order(self, body: list[str], d: int, n: int) -> str:
        if self.order != "auto":
            return self.order
        detected = detect_ordering(body, d, n)
        logger.debug("detected %s subset ordering", detected)
        return detected


def _at_line(err: ValidationError, number: int):
    err.args = (f"line {number}: {err}",)
    err.line = number


def detect_ordering(lines: Iterable[str], d: int, n: int, sample: int = 50) -> str:
    """'lex' unless the sampled lines only validate after revlex conversion."""
    size = comb(n, d)
    checked = [line for line in lines if len(line) == size][:sample]

    def valid(order: str) -> bool:
        for line in checked:
            if order == "revlex":
                line = convert_ordering(line, d, n, source="revlex")
            try:
                line_to_matroid(line, d, n)
            except ValidationError:
                return False
        return True

    if valid("lex") or not valid("revlex"):
        return "lex"
    return "revlex"


def parse_corpus(
    source: Path | str, strict: bool = True, order: Ordering = "lex"
) -> Iterator[Matroid]:
    yield from CorpusParser(strict=strict, order=order).parse_file(source)


def format_corpus(matroids: Iterable[Matroid], d: int | None = None, n: int | None = None) -> str:
    matroids = list(matroids)
    if matroids:
        d, n = matroids[0].d, matroids[0].n
    if d is None or n is None:
        raise InvalidParams("an empty corpus needs explicit d and n")
    if any((m.d, m.n) != (d, n) for m in matroids):
        raise MixedParameters("a corpus file holds matroids of a single (d, n)")
    lines = [f"{d} {n} {len(matroids)}", *(m.to_line() for m in matroids)]
    return "\n".join(lines) + "\n"


def write_corpus(
    matroids: Iterable[Matroid],
    destination: Path | str | TextIO | None = None,
    d: int | None = None,
    n: int | None = None,
):
    text = format_corpus(matroids, d, n)
    if destination is None:
        sys.stdout.write(text)
    elif isinstance(destination, (str, Path)):
        Path(destination).write_text(text, encoding="ascii")
    else:
        destination.write(text)
