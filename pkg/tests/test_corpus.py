import io

import pytest

from splitmat.corpus import (
    CorpusParser,
    convert_ordering,
    detect_ordering,
    format_corpus,
    line_to_matroid,
    parse_corpus,
    read_corpus_text,
    write_corpus,
)
from splitmat.errors import ExchangeViolation, FormatError, InvalidParams, MixedParameters
from splitmat.isomorphism import is_isomorphic
from splitmat.matroid import from_nonbases, uniform

# rank 2 on five points with 1, 2, 3 parallel, written in revlex order
REVLEX_ONLY = "000*******"


@pytest.fixture
def corpus_file(tmp_path):
    def write(text: str, name: str = "corpus.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


class TestLines:
    def test_m5_class(self, m5):
        matroid = line_to_matroid("***0**", 2, 4)
        assert matroid.num_bases == 5
        assert is_isomorphic(matroid, m5)
        assert not matroid.is_basis([2, 3])

    def test_to_line(self, m5):
        assert m5.to_line() == "*****0"
        assert line_to_matroid(m5.to_line(), 2, 4) == m5

    def test_wrong_length(self):
        with pytest.raises(FormatError):
            line_to_matroid("*****", 2, 4)

    def test_bad_characters(self):
        with pytest.raises(FormatError) as err:
            line_to_matroid("**x***", 2, 4)
        assert "x" in err.value.reason

    def test_invalid_matroid(self):
        with pytest.raises(ExchangeViolation):
            line_to_matroid("*0000*", 2, 4)


class TestOrdering:
    def test_convert(self):
        assert convert_ordering("**0***", 2, 4, "revlex") == "***0**"
        assert convert_ordering("***0**", 2, 4, "lex") == "**0***"

    def test_convert_wrong_length(self):
        with pytest.raises(InvalidParams):
            convert_ordering("***", 2, 4)

    def test_convert_unknown_order(self):
        with pytest.raises(InvalidParams):
            convert_ordering("******", 2, 4, "colex")

    def test_detect(self):
        assert detect_ordering([REVLEX_ONLY], 2, 5) == "revlex"
        assert detect_ordering(["*****0"], 2, 4) == "lex"

    def test_auto_parser(self):
        parser = CorpusParser(order="auto")
        matroids = list(parser.parse_text(f"2 5 1\n{REVLEX_ONLY}\n"))
        assert matroids == [from_nonbases(5, 2, [(1, 2), (1, 3), (2, 3)])]

    def test_explicit_revlex(self):
        parser = CorpusParser(order="revlex")
        [matroid] = parser.parse_text("2 4 1\n**0***\n")
        assert not matroid.is_basis([2, 3])

    def test_lex_reading_fails(self):
        with pytest.raises(ExchangeViolation):
            list(CorpusParser(order="lex").parse_text(f"2 5 1\n{REVLEX_ONLY}\n"))


class TestParser:
    def test_entries_carry_line_numbers(self):
        text = "2 4 2\n******\n*****0\n"
        entries = list(CorpusParser().entries(text))
        assert [number for number, _ in entries] == [2, 3]
        assert entries[0][1] == uniform(2, 4)

    def test_strict_stops_at_bad_line(self):
        with pytest.raises(FormatError) as err:
            list(CorpusParser().parse_text("2 4 2\n******\n****\n"))
        assert err.value.line == 3

    def test_strict_invalid_matroid_reports_line(self):
        with pytest.raises(ExchangeViolation) as err:
            list(CorpusParser().parse_text("2 4 2\n******\n*0000*\n"))
        assert err.value.line == 3
        assert str(err.value).startswith("line 3:")

    def test_lenient_skips(self):
        parser = CorpusParser(strict=False)
        found = list(parser.parse_text("2 4 3\n******\n*0000*\n*****0\n"))
        assert len(found) == 2
        assert len(parser.flagged) == 1
        assert parser.flagged[0].line == 3

    def test_count_mismatch(self):
        with pytest.raises(FormatError) as err:
            list(CorpusParser().parse_text("2 4 3\n******\n"))
        assert err.value.line == 1

    def test_count_mismatch_lenient(self):
        parser = CorpusParser(strict=False)
        assert len(list(parser.parse_text("2 4 3\n******\n"))) == 1
        assert parser.flagged[0].line == 1

    @pytest.mark.parametrize("header", ["", "2 4", "2 four 1", "5 4 0"])
    def test_bad_header(self, header):
        with pytest.raises(FormatError) as err:
            list(CorpusParser().parse_text(header + "\n"))
        assert err.value.line == 1

    def test_empty_text(self):
        with pytest.raises(FormatError):
            list(CorpusParser().parse_text(""))

    def test_shape_recorded(self):
        parser = CorpusParser()
        list(parser.parse_text("3 5 1\n**********\n"))
        assert (parser.d, parser.n) == (3, 5)


class TestFiles:
    def test_round_trip(self, tmp_path):
        matroids = [
            uniform(3, 6),
            from_nonbases(6, 3, [(1, 2, 3)]),
            from_nonbases(6, 3, [(1, 2, 3), (4, 5, 6)]),
        ]
        path = tmp_path / "out.txt"
        write_corpus(matroids, path)
        text = path.read_text()
        assert text.splitlines()[0] == "3 6 3"
        assert list(parse_corpus(path)) == matroids
        assert format_corpus(parse_corpus(path)) == text

    def test_write_to_stream(self, m5):
        buffer = io.StringIO()
        write_corpus([m5], buffer)
        assert buffer.getvalue() == "2 4 1\n*****0\n"

    def test_write_to_stdout(self, m5, capsys):
        write_corpus([m5])
        assert capsys.readouterr().out == "2 4 1\n*****0\n"

    def test_empty_corpus(self):
        assert format_corpus([], d=2, n=4) == "2 4 0\n"
        with pytest.raises(InvalidParams):
            format_corpus([])

    def test_mixed(self, m5, snowflake):
        with pytest.raises(MixedParameters):
            format_corpus([m5, snowflake])

    def test_utf16(self, tmp_path):
        path = tmp_path / "wide.txt"
        path.write_bytes("2 4 1\n*****0\n".encode("utf-16"))
        assert read_corpus_text(path) == "2 4 1\n*****0\n"
        assert len(list(parse_corpus(path))) == 1

    def test_unknown_encoding_falls_back(self, corpus_file, mocker):
        mocker.patch(
            "splitmat.corpus.chardet.detect",
            return_value={"encoding": None, "confidence": 0.0},
        )
        path = corpus_file("2 4 1\n******\n")
        assert read_corpus_text(path) == "2 4 1\n******\n"

    def test_undecodable(self, tmp_path, mocker):
        mocker.patch(
            "splitmat.corpus.chardet.detect",
            return_value={"encoding": None, "confidence": 0.0},
        )
        path = tmp_path / "bad.txt"
        path.write_bytes(b"\xff\xfe\xfa")
        with pytest.raises(FormatError):
            read_corpus_text(path)

    def test_file_entries(self, corpus_file):
        path = corpus_file("2 4 2\n******\n*****0\n")
        assert [n for n, _ in CorpusParser().file_entries(path)] == [2, 3]
