"""Structured corpus parsing and rule-based free-text extraction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causaltrust.errors import CorpusParseError, UnknownAdverbError
from causaltrust.extract import (
    extract_from_sentence,
    extract_from_text,
    format_structured_line,
    parse_structured_line,
    read_corpus,
    split_sentences,
    write_corpus,
)
from causaltrust.graph import CausalAssertion


class TestStructuredLines:
    def test_parses_a_triple(self, lex):
        a = parse_structured_line("smoking | usually | lung cancer", lex)
        assert (a.cause, a.adverb, a.effect) == ("smoking", "usually", "lung cancer")

    def test_blank_and_comment_lines_yield_none(self, lex):
        assert parse_structured_line("", lex) is None
        assert parse_structured_line("   ", lex) is None
        assert parse_structured_line("# header", lex) is None

    def test_wrong_arity_reports_the_line_number(self, lex):
        with pytest.raises(CorpusParseError, match="line 7"):
            parse_structured_line("smoking | usually", lex, line_no=7)
        with pytest.raises(CorpusParseError):
            parse_structured_line("a | b | c | d", lex, line_no=1)

    def test_unknown_adverb_propagates(self, lex):
        with pytest.raises(UnknownAdverbError):
            parse_structured_line("smoking | rarely | lung cancer", lex)

    def test_format_round_trip(self, lex):
        a = CausalAssertion("radon gas", "hardly ever", "lung cancer")
        line = format_structured_line(a)
        assert line == "radon gas | hardly ever | lung cancer"
        b = parse_structured_line(line, lex)
        assert (b.cause, b.adverb, b.effect) == (a.cause, a.adverb, a.effect)

    def test_format_rejects_separator_in_field(self):
        a = CausalAssertion("a or b", "usually", "c")
        object.__setattr__(a, "cause", "a | b")
        with pytest.raises(CorpusParseError):
            format_structured_line(a)

    concept = st.text(
        alphabet="abcdefghij XYZ", min_size=1, max_size=12
    ).filter(lambda s: s.strip())

    @given(cause=concept, effect=concept)
    @settings(max_examples=100, deadline=None)
    def test_round_trip_any_concepts(self, lex_small, cause, effect):
        try:
            a = CausalAssertion(cause, "sometimes", effect)
        except Exception:
            return  # self-loop after canonicalization; not round-trip material
        b = parse_structured_line(format_structured_line(a), lex_small)
        assert (b.cause, b.adverb, b.effect) == (a.cause, a.adverb, a.effect)


class TestSentenceExtraction:
    def test_basic_adverb_pattern(self, lex):
        found, diags = extract_from_sentence(
            "Smoking constantly causes lung cancer.", lex
        )
        assert diags == []
        assert len(found) == 1
        a = found[0]
        assert (a.cause, a.adverb, a.effect) == (
            "smoking", "constantly", "lung cancer"
        )
        assert a.sentence == "Smoking constantly causes lung cancer."

    def test_multiword_adverb_wins_over_no_adverb(self, lex):
        found, _ = extract_from_sentence(
            "Radon gas hardly ever causes lung cancer", lex
        )
        assert found[0].adverb == "hardly ever"
        assert found[0].cause == "radon gas"

    def test_bare_causes_takes_the_default_adverb(self, lex):
        found, _ = extract_from_sentence("Smoking causes lung cancer.", lex)
        assert found[0].adverb == "always"

    def test_default_adverb_is_overridable_and_validated(self, lex):
        found, _ = extract_from_sentence(
            "Smoking causes cancer", lex, default_adverb="usually"
        )
        assert found[0].adverb == "usually"
        with pytest.raises(UnknownAdverbError):
            extract_from_sentence("x causes y", lex, default_adverb="rarely")

    def test_negation_is_skipped_with_a_diagnostic(self, lex):
        for sentence in [
            "Smoking does not cause lung cancer",
            "Vaccines don't cause autism.",
            "Coffee cannot cause cancer",
        ]:
            found, diags = extract_from_sentence(sentence, lex)
            assert found == []
            assert len(diags) == 1
            assert "negated" in diags[0].reason

    def test_non_causal_sentence_is_silent(self, lex):
        found, diags = extract_from_sentence("The weather is nice today.", lex)
        assert found == [] and diags == []

    def test_self_loop_becomes_a_diagnostic(self, lex):
        found, diags = extract_from_sentence("Stress usually causes stress", lex)
        assert found == []
        assert len(diags) == 1

    def test_trailing_punctuation_is_trimmed(self, lex):
        found, _ = extract_from_sentence(
            '"Smoking always causes lung cancer!"', lex
        )
        assert found[0].effect == "lung cancer"

    def test_split_sentences(self):
        pieces = split_sentences("A causes B. C causes D! E causes F?\nG causes H")
        assert pieces == ["A causes B", "C causes D", "E causes F", "G causes H"]

    def test_extract_from_text_tracks_line_numbers(self, lex):
        text = "Nothing here.\nVaccines don't cause autism.\nSmoking causes cancer."
        found, diags = extract_from_text(text, lex)
        assert len(found) == 1
        assert diags[0].line_no == 2
        assert "line 2" in str(diags[0])


class TestCorpusIo:
    def test_read_structured_corpus(self, lex, tmp_path):
        path = tmp_path / "trusted.cau"
        path.write_text(
            "# demo\n"
            "smoking | usually | lung cancer\n"
            "\n"
            "radon gas | sometimes | lung cancer\n",
            encoding="utf-8",
        )
        corpus, diags = read_corpus(path, lex)
        assert diags == []
        assert corpus.source_id == "trusted"
        assert len(corpus) == 2
        assert all(a.source_id == "trusted" for a in corpus.assertions)

    def test_bad_lines_become_diagnostics_not_errors(self, lex, tmp_path):
        path = tmp_path / "mixed.cau"
        path.write_text(
            "smoking | usually | lung cancer\n"
            "just two | fields\n"
            "smoking | rarely | cancer\n"
            "stress | often | stress\n",
            encoding="utf-8",
        )
        corpus, diags = read_corpus(path, lex)
        assert len(corpus) == 1
        assert len(diags) == 3
        assert diags[0].line_no == 2

    def test_read_text_corpus_overrides_source_id(self, lex, tmp_path):
        path = tmp_path / "feed.txt"
        path.write_text(
            "Smoking constantly causes lung cancer. Also, rain is wet.\n",
            encoding="utf-8",
        )
        corpus, _ = read_corpus(path, lex, fmt="text", source_id="tweets")
        assert corpus.source_id == "tweets"
        assert [a.adverb for a in corpus.assertions] == ["constantly"]
        assert corpus.assertions[0].source_id == "tweets"

    def test_unknown_format(self, lex, tmp_path):
        with pytest.raises(CorpusParseError):
            read_corpus(tmp_path / "x.cau", lex, fmt="xml")

    def test_missing_file(self, lex, tmp_path):
        with pytest.raises(CorpusParseError):
            read_corpus(tmp_path / "absent.cau", lex)

    def test_write_then_read_round_trip(self, lex, tmp_path):
        from causaltrust.extract import Corpus

        path = tmp_path / "out.cau"
        original = Corpus(
            source_id="out",
            assertions=[
                CausalAssertion("a", "usually", "b", source_id="out"),
                CausalAssertion("b", "hardly ever", "c", source_id="out"),
            ],
        )
        write_corpus(original, path, comments=["generator: test", "seed: 1"])
        text = path.read_text(encoding="utf-8")
        assert text.startswith("# generator: test\n# seed: 1\n")
        back, diags = read_corpus(path, lex)
        assert diags == []
        assert [(a.cause, a.adverb, a.effect) for a in back.assertions] == [
            ("a", "usually", "b"),
            ("b", "hardly ever", "c"),
        ]
