"""Exception types shared across the package."""

from __future__ import annotations


class CausalTrustError(Exception):
    """Base class for all package-specific errors."""


class DensityError(CausalTrustError, ValueError):
    """Invalid density grid: bad cell count, negative cells, or degenerate mass."""


class GridMismatchError(DensityError):
    """Two grids in one operation have different resolutions."""


class LexiconError(CausalTrustError, ValueError):
    """Malformed adverb lexicon: empty, duplicated names, or bad Beta shapes."""


class UnknownAdverbError(LexiconError, KeyError):
    """Lookup of an adverb that is not in the lexicon.

    Carries the offending token so callers can report it verbatim.
    """

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown adverb: {token!r}")

    def __str__(self) -> str:  # KeyError quotes its repr otherwise
        return f"unknown adverb: {self.token!r}"


class AssertionFormatError(CausalTrustError, ValueError):
    """A causal assertion violates arity or concept constraints."""


class CorpusParseError(CausalTrustError, ValueError):
    """A corpus file line cannot be parsed at all (hard failure)."""


class GraphSchemaError(CausalTrustError, ValueError):
    """A persisted graph document is truncated or structurally invalid."""


class NoScorableCausalsError(CausalTrustError, ValueError):
    """A source verdict was requested but no assertion produced a score."""
