"""Seeded synthetic corpora over a tiny fixed concept chain.

Relations are drawn uniformly over the ordered distinct pairs of the concept
set (default {a, b, c}) with adverbs drawn uniformly from the scenario's
subset; only the chain pairs a->b and b->c are retained, so with three
concepts a third of the draws survive on average. Generation is driven by
random.Random (MT19937), which is stable across platforms; the algorithm id
and seed are recorded in written corpus headers.

Two retention semantics:
* draw n_relations then filter (train corpora; retained count is random);
* retain_exact: keep drawing until exactly n_relations valid ones are kept
  (test corpora, which need a fixed number of claims).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from causaltrust.errors import LexiconError
from causaltrust.extract import Corpus
from causaltrust.graph import CausalAssertion
from causaltrust.lexicon import AdverbLexicon

RNG_ALGORITHM = "mt19937"

DEFAULT_CONCEPTS = ("a", "b", "c")
DEFAULT_VALID_PAIRS = (("a", "b"), ("b", "c"))


@dataclass(frozen=True)
class SynthScenario:
    """One corpus-generation recipe."""

    adverbs: tuple[str, ...]
    n_relations: int
    seed: int
    source_id: str = "synthetic"
    retain_exact: bool = False
    concepts: tuple[str, ...] = DEFAULT_CONCEPTS
    valid_pairs: tuple[tuple[str, str], ...] = DEFAULT_VALID_PAIRS

    def __post_init__(self) -> None:
        if len(self.adverbs) < 1:
            raise ValueError("scenario needs at least one adverb")
        if self.n_relations < 1:
            raise ValueError(f"n_relations must be positive, got {self.n_relations}")
        if len(self.concepts) < 2:
            raise ValueError("scenario needs at least two concepts")
        valid = set(self.valid_pairs)
        pairs = set(itertools.permutations(self.concepts, 2))
        if not valid or not valid <= pairs:
            raise ValueError("valid_pairs must be nonempty ordered concept pairs")


@dataclass(frozen=True)
class SynthStats:
    """How many pairs were drawn and how many survived the chain filter."""

    n_drawn: int
    n_retained: int

    @property
    def retention(self) -> float:
        return self.n_retained / self.n_drawn if self.n_drawn else 0.0


def generate(
    scenario: SynthScenario, lexicon: AdverbLexicon
) -> tuple[Corpus, SynthStats]:
    """Generate one corpus per the scenario; fully determined by the seed."""
    for adverb in scenario.adverbs:
        if adverb not in lexicon:
            raise LexiconError(f"scenario adverb not in lexicon: {adverb!r}")
    pairs = list(itertools.permutations(scenario.concepts, 2))
    valid = set(scenario.valid_pairs)
    rng = random.Random(scenario.seed)
    corpus = Corpus(source_id=scenario.source_id)
    drawn = 0

    def draw_one() -> CausalAssertion | None:
        nonlocal drawn
        pair = pairs[rng.randrange(len(pairs))]
        adverb = scenario.adverbs[rng.randrange(len(scenario.adverbs))]
        drawn += 1
        if pair not in valid:
            return None
        return CausalAssertion(
            cause=pair[0],
            adverb=adverb,
            effect=pair[1],
            source_id=scenario.source_id,
        )

    if scenario.retain_exact:
        while len(corpus.assertions) < scenario.n_relations:
            a = draw_one()
            if a is not None:
                corpus.assertions.append(a)
    else:
        for _ in range(scenario.n_relations):
            a = draw_one()
            if a is not None:
                corpus.assertions.append(a)
    return corpus, SynthStats(n_drawn=drawn, n_retained=len(corpus.assertions))


def provenance_comments(scenario: SynthScenario) -> list[str]:
    """Header comments recording how a written corpus was generated."""
    return [
        f"source: {scenario.source_id}",
        f"generator: {RNG_ALGORITHM}",
        f"seed: {scenario.seed}",
        f"adverbs: {', '.join(scenario.adverbs)}",
        f"n_relations: {scenario.n_relations}"
        + (" (retained)" if scenario.retain_exact else " (drawn)"),
    ]


def preset_scenarios(
    preset: str, seed: int = 42
) -> tuple[SynthScenario, SynthScenario]:
    """The two canned experiments: (train scenario, test scenario).

    Preset "1" tests adverbs far from the trained evidence (the source
    should be rejected); preset "2" tests nearby adverbs (accepted). Both
    train on 200 usually/normally draws; both test with exactly 5 retained
    claims generated from seed + 1.
    """
    train = SynthScenario(
        adverbs=("usually", "normally"),
        n_relations=200,
        seed=seed,
        source_id="synthetic-train",
    )
    if preset == "1":
        test_adverbs = ("infrequently", "seldom")
        sid = "synthetic-claims-divergent"
    elif preset == "2":
        test_adverbs = ("frequently", "regularly")
        sid = "synthetic-claims-similar"
    else:
        raise ValueError(f"unknown preset {preset!r} (expected '1' or '2')")
    test = SynthScenario(
        adverbs=test_adverbs,
        n_relations=5,
        seed=seed + 1,
        source_id=sid,
        retain_exact=True,
    )
    return train, test
