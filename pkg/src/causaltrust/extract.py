"""Getting causal assertions out of corpora.

Two input shapes:

* structured lines (``.cau``): ``cause | adverb | effect``, one assertion per
  line, ``#`` starts a comment, blank lines are skipped;
* free text: sentences matching ``<X> <adverb> causes <Y>`` with the adverb
  taken from the lexicon (multi-word adverbs match longest-first), or the
  bare ``<X> causes <Y>`` which falls back to a default adverb. Sentences
  with do-support negation ("does not cause") are skipped with a diagnostic.

Bad lines never abort a corpus read; they come back as diagnostics.
"""

from __future__ import annotations

import re
import weakref
from dataclasses import dataclass, field
from pathlib import Path

from causaltrust.errors import (
    AssertionFormatError,
    CausalTrustError,
    CorpusParseError,
    UnknownAdverbError,
)
from causaltrust.graph import CausalAssertion
from causaltrust.lexicon import AdverbLexicon

DEFAULT_ADVERB = "always"

_SENTENCE_SPLIT = re.compile(r"[.!?\n]+")
_NEGATION = re.compile(
    r"\b(?:do|does|did)\s+not\s+cause\b|\b(?:don|doesn|didn)'t\s+cause\b"
    r"|\bcan\s*not\s+cause\b|\bcan't\s+cause\b",
    re.IGNORECASE,
)
_TRIM_PUNCT = "\"'`.,;:!? \t"


@dataclass(frozen=True)
class Diagnostic:
    """A skipped line or sentence, with the reason it was skipped."""

    reason: str
    text: str
    line_no: int | None = None

    def __str__(self) -> str:
        loc = f"line {self.line_no}: " if self.line_no is not None else ""
        return f"{loc}{self.reason}: {self.text!r}"


@dataclass
class Corpus:
    """Assertions attributed to one information source."""

    source_id: str
    assertions: list[CausalAssertion] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.assertions)


def parse_structured_line(
    line: str, lexicon: AdverbLexicon, line_no: int | None = None
) -> CausalAssertion | None:
    """Parse one ``cause | adverb | effect`` line.

    Returns None for blank lines and comments. Raises CorpusParseError on
    wrong arity (carrying the line number), UnknownAdverbError or
    AssertionFormatError for field-level problems.
    """
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    fields = [f.strip() for f in stripped.split("|")]
    if len(fields) != 3:
        where = f"line {line_no}" if line_no is not None else "line"
        raise CorpusParseError(
            f"{where}: expected 3 '|'-separated fields, got {len(fields)}"
        )
    cause, adverb, effect = fields
    lexicon.lookup(adverb)  # raises UnknownAdverbError with the token
    return CausalAssertion(cause=cause, adverb=adverb, effect=effect, sentence=stripped)


def format_structured_line(assertion: CausalAssertion) -> str:
    """Render an assertion as a structured corpus line."""
    for piece in (assertion.cause, assertion.adverb, assertion.effect):
        if "|" in piece:
            raise CorpusParseError(
                f"cannot format field containing '|': {piece!r}"
            )
    return f"{assertion.cause} | {assertion.adverb} | {assertion.effect}"


_PATTERN_CACHE: weakref.WeakKeyDictionary[AdverbLexicon, re.Pattern] = (
    weakref.WeakKeyDictionary()
)


def _adverb_pattern(lexicon: AdverbLexicon) -> re.Pattern[str]:
    pattern = _PATTERN_CACHE.get(lexicon)
    if pattern is None:
        # longest-first so multi-word adverbs win over any single-word prefix
        names = sorted(lexicon.names(), key=len, reverse=True)
        alternation = "|".join(re.escape(n) for n in names)
        pattern = re.compile(
            rf"^(?P<cause>.+?)\s+(?:(?P<adverb>{alternation})\s+)?"
            rf"causes\s+(?P<effect>.+)$",
            re.IGNORECASE,
        )
        _PATTERN_CACHE[lexicon] = pattern
    return pattern


def split_sentences(text: str) -> list[str]:
    """Split on sentence terminators and newlines, dropping empty pieces."""
    return [s.strip() for s in _SENTENCE_SPLIT.split(text) if s.strip()]


def extract_from_sentence(
    sentence: str,
    lexicon: AdverbLexicon,
    default_adverb: str = DEFAULT_ADVERB,
    line_no: int | None = None,
) -> tuple[list[CausalAssertion], list[Diagnostic]]:
    """Extract assertions from one sentence.

    A sentence without a causal pattern yields nothing, silently; a negated
    causal yields nothing plus a diagnostic. The default adverb must itself
    be in the lexicon.
    """
    lexicon.lookup(default_adverb)
    sentence = sentence.strip()
    if not sentence:
        return [], []
    if _NEGATION.search(sentence):
        return [], [Diagnostic("negated causal skipped", sentence, line_no)]
    match = _adverb_pattern(lexicon).match(sentence)
    if match is None:
        return [], []
    cause = match.group("cause").strip(_TRIM_PUNCT)
    effect = match.group("effect").strip(_TRIM_PUNCT)
    adverb = match.group("adverb") or default_adverb
    if not cause or not effect:
        return [], []
    try:
        assertion = CausalAssertion(
            cause=cause, adverb=adverb, effect=effect, sentence=sentence
        )
    except AssertionFormatError as exc:
        return [], [Diagnostic(str(exc), sentence, line_no)]
    return [assertion], []


def extract_from_text(
    text: str,
    lexicon: AdverbLexicon,
    default_adverb: str = DEFAULT_ADVERB,
) -> tuple[list[CausalAssertion], list[Diagnostic]]:
    """Run sentence extraction over a whole text block, line by line."""
    assertions: list[CausalAssertion] = []
    diagnostics: list[Diagnostic] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        for sentence in split_sentences(line):
            found, diags = extract_from_sentence(
                sentence, lexicon, default_adverb, line_no
            )
            assertions.extend(found)
            diagnostics.extend(diags)
    return assertions, diagnostics


def read_corpus(
    path: str | Path,
    lexicon: AdverbLexicon,
    fmt: str = "cau",
    source_id: str | None = None,
    default_adverb: str = DEFAULT_ADVERB,
) -> tuple[Corpus, list[Diagnostic]]:
    """Read a corpus file in structured ("cau") or free-text ("text") form.

    Malformed lines become diagnostics, never exceptions; I/O problems raise
    CorpusParseError. The source id defaults to the file stem.
    """
    if fmt not in ("cau", "text"):
        raise CorpusParseError(f"unknown corpus format {fmt!r}")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusParseError(f"cannot read corpus {path}: {exc}") from exc
    sid = source_id if source_id is not None else path.stem
    corpus = Corpus(source_id=sid)
    diagnostics: list[Diagnostic] = []

    if fmt == "text":
        assertions, diagnostics = extract_from_text(text, lexicon, default_adverb)
        corpus.assertions = [
            CausalAssertion(
                cause=a.cause, adverb=a.adverb, effect=a.effect,
                source_id=sid, sentence=a.sentence,
            )
            for a in assertions
        ]
        return corpus, diagnostics

    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            parsed = parse_structured_line(line, lexicon, line_no)
        except CausalTrustError as exc:
            diagnostics.append(Diagnostic(str(exc), line.strip(), line_no))
            continue
        if parsed is not None:
            corpus.assertions.append(
                CausalAssertion(
                    cause=parsed.cause, adverb=parsed.adverb, effect=parsed.effect,
                    source_id=sid, sentence=parsed.sentence,
                )
            )
    return corpus, diagnostics


def write_corpus(
    corpus: Corpus, path: str | Path, comments: list[str] | None = None
) -> None:
    """Write a corpus in structured form, with optional # header comments."""
    lines = [f"# {c}" for c in (comments or [])]
    lines.extend(format_structured_line(a) for a in corpus.assertions)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
