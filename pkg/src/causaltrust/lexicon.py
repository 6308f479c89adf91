"""Adverb lexicon: frequency adverbs mapped to Beta priors on [0, 1].

Each adverb ("never", "sometimes", "always", ...) carries Beta(a, b) shape
parameters; its prior density is the Beta pdf discretized on the shared grid.
The lexicon's entropy range [h_min, h_max] over those priors is what verdicts
use to normalize posterior entropy.

Config format (JSON):

    {"adverbs": [{"name": "never", "a": 1.4, "b": 150.0}, ...]}

Lookup is case-insensitive and whitespace-insensitive; stored names keep
their original form. Entries are kept sorted by Beta mean a/(a+b), so a
larger mean means a higher-frequency adverb.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from causaltrust.density import DEFAULT_M, DensityGrid, beta_pdf_grid, entropy
from causaltrust.errors import LexiconError, UnknownAdverbError

_WS = re.compile(r"\s+")

DEFAULT_LEXICON_RESOURCE = "default_lexicon.json"


def canonical(text: str) -> str:
    """Shared canonical string form: trimmed, whitespace collapsed, lowercase."""
    return _WS.sub(" ", text.strip()).casefold()


@dataclass(frozen=True)
class AdverbEntry:
    """One adverb with its Beta shapes, discretized prior, and prior entropy."""

    name: str
    a: float
    b: float
    prior: DensityGrid
    prior_entropy: float

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)


class AdverbLexicon:
    """Immutable collection of adverb entries ordered by Beta mean."""

    def __init__(self, entries: list[AdverbEntry]):
        if len(entries) < 2:
            raise LexiconError(f"lexicon needs at least 2 adverbs, got {len(entries)}")
        seen: dict[str, str] = {}
        for e in entries:
            if not isinstance(e, AdverbEntry):
                raise LexiconError(f"expected AdverbEntry, got {type(e).__name__}")
            key = canonical(e.name)
            if not key:
                raise LexiconError("adverb name must be nonempty")
            if key in seen:
                raise LexiconError(f"duplicate adverb name: {e.name!r}")
            seen[key] = e.name
        self._entries: tuple[AdverbEntry, ...] = tuple(
            sorted(entries, key=lambda e: e.mean)
        )
        self._by_name = {canonical(e.name): e for e in self._entries}
        self._m = self._entries[0].prior.m
        if any(e.prior.m != self._m for e in self._entries):
            raise LexiconError("all adverb priors must share one grid size")
        ents = [e.prior_entropy for e in self._entries]
        self._h_min = min(ents)
        self._h_max = max(ents)
        # entropy rescaling needs a nondegenerate range
        if not self._h_min < self._h_max:
            raise LexiconError(
                "adverb priors must span an entropy range; all entries have "
                f"entropy {self._h_min!r}"
            )

    @property
    def m(self) -> int:
        return self._m

    @property
    def h_min(self) -> float:
        """Smallest prior entropy (sharpest adverb)."""
        return self._h_min

    @property
    def h_max(self) -> float:
        """Largest prior entropy (flattest adverb)."""
        return self._h_max

    @property
    def entries(self) -> tuple[AdverbEntry, ...]:
        return self._entries

    def names(self) -> list[str]:
        return [e.name for e in self._entries]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __contains__(self, token: str) -> bool:
        return canonical(token) in self._by_name

    def lookup(self, token: str) -> AdverbEntry:
        """Find an adverb by name; raises UnknownAdverbError with the token."""
        entry = self._by_name.get(canonical(token))
        if entry is None:
            raise UnknownAdverbError(token)
        return entry


def _entry_from_config(item: object, m: int) -> AdverbEntry:
    if not isinstance(item, dict):
        raise LexiconError(f"adverb entry must be an object, got {type(item).__name__}")
    try:
        name, a, b = item["name"], item["a"], item["b"]
    except KeyError as exc:
        raise LexiconError(f"adverb entry missing key {exc.args[0]!r}") from exc
    if not isinstance(name, str):
        raise LexiconError(f"adverb name must be a string, got {name!r}")
    if isinstance(a, bool) or isinstance(b, bool) or not isinstance(a, (int, float)) \
            or not isinstance(b, (int, float)):
        raise LexiconError(f"adverb {name!r} shapes must be numbers")
    if not (a > 0 and b > 0):
        raise LexiconError(f"adverb {name!r} needs positive shapes, got a={a} b={b}")
    grid = beta_pdf_grid(float(a), float(b), m)
    return AdverbEntry(
        name=name, a=float(a), b=float(b), prior=grid, prior_entropy=entropy(grid)
    )


def lexicon_from_config(config: dict, m: int = DEFAULT_M) -> AdverbLexicon:
    """Build a lexicon from an already-parsed config mapping."""
    if not isinstance(config, dict) or "adverbs" not in config:
        raise LexiconError('lexicon config must be an object with an "adverbs" list')
    items = config["adverbs"]
    if not isinstance(items, list):
        raise LexiconError('"adverbs" must be a list')
    return AdverbLexicon([_entry_from_config(item, m) for item in items])


def load_lexicon(path: str | Path, m: int = DEFAULT_M) -> AdverbLexicon:
    """Load a lexicon from a JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon file {path}: {exc}") from exc
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"lexicon file {path} is not valid JSON: {exc}") from exc
    return lexicon_from_config(config, m)


def default_lexicon(m: int = DEFAULT_M) -> AdverbLexicon:
    """The shipped 12-adverb table."""
    ref = resources.files("causaltrust.data").joinpath(DEFAULT_LEXICON_RESOURCE)
    config = json.loads(ref.read_text(encoding="utf-8"))
    return lexicon_from_config(config, m)
