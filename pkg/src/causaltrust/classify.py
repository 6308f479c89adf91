"""Fake-information verdicts for causal assertions and their sources.

A claimed assertion cause --adverb--> effect is scored against the graph:

* the claim density l is the adverb's lexicon prior;
* the edge posterior s is the fused evidence for (cause, effect);
* the knowledge gate passes when the posterior entropy dropped below the
  prior entropy by more than tau_h (we actually learned something);
* the fake probability blends squashed divergence with normalized entropy,

      p_f = ((1 - w) * (1 - exp(-kl(s, l))) + w * h_n(s)) ** sigma

  where h_n rescales entropy(s) by the lexicon's [h_min, h_max] range.

Per-assertion decisions compare p_f against beta, with confidence

      omega = |p_f - beta| / max(1 - p_f, p_f)

A source is judged by alpha = mean p_f over its scored assertions against
gamma, with the analogous confidence epsilon. Ties (p_f == beta,
alpha == gamma) resolve to the benign side.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from causaltrust.density import (
    DEFAULT_M,
    EPS_SMOOTH,
    DensityGrid,
    entropy,
    kl,
    normalize_entropy,
    squash_kl,
)
from causaltrust.errors import GridMismatchError, NoScorableCausalsError
from causaltrust.extract import Corpus
from causaltrust.graph import CausalAssertion, WeightedCausalGraph
from causaltrust.lexicon import AdverbLexicon

STATUS_SCORED = "scored"
STATUS_INSUFFICIENT = "insufficient-knowledge"
STATUS_UNKNOWN_EDGE = "unknown-edge"

DECISION_FAKE = "fake"
DECISION_NOT_FAKE = "not-fake"
DECISION_TRUSTWORTHY = "trustworthy"
DECISION_NOT_TRUSTWORTHY = "not-trustworthy"

POLICY_EXCLUDE = "exclude"
POLICY_SCORE_CONSTANT = "score_constant"

MODE_SOURCE = "source"
MODE_PER_CAUSAL = "per-causal"


@dataclass(frozen=True)
class Hyperparameters:
    """Scoring knobs with their defaults.

    w weighs entropy against divergence (w=0.2: 80% divergence, 20%
    entropy); sigma sharpens the blend; beta is the per-assertion fake
    threshold and gamma the source threshold.
    """

    w: float = 0.2
    sigma: float = 3.0
    beta: float = 0.30
    gamma: float = 0.35
    tau_h: float = 1e-9
    eps_smooth: float = EPS_SMOOTH
    m: int = DEFAULT_M
    unknown_edge_policy: str = POLICY_EXCLUDE
    p_unknown: float = 0.5
    learn_mode: str = MODE_SOURCE
    min_confidence: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"w must be in [0, 1], got {self.w!r}")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma!r}")
        if self.tau_h < 0.0:
            raise ValueError(f"tau_h must be nonnegative, got {self.tau_h!r}")
        if self.eps_smooth <= 0.0:
            raise ValueError(f"eps_smooth must be positive, got {self.eps_smooth!r}")
        if self.m < 2:
            raise ValueError(f"m must be at least 2, got {self.m!r}")
        if self.unknown_edge_policy not in (POLICY_EXCLUDE, POLICY_SCORE_CONSTANT):
            raise ValueError(
                f"unknown_edge_policy must be {POLICY_EXCLUDE!r} or "
                f"{POLICY_SCORE_CONSTANT!r}, got {self.unknown_edge_policy!r}"
            )
        if not 0.0 <= self.p_unknown <= 1.0:
            raise ValueError(f"p_unknown must be in [0, 1], got {self.p_unknown!r}")
        if self.learn_mode not in (MODE_SOURCE, MODE_PER_CAUSAL):
            raise ValueError(
                f"learn_mode must be {MODE_SOURCE!r} or {MODE_PER_CAUSAL!r}, "
                f"got {self.learn_mode!r}"
            )
        if self.min_confidence is not None and not 0.0 <= self.min_confidence <= 1.0:
            raise ValueError(
                f"min_confidence must be in [0, 1], got {self.min_confidence!r}"
            )


@dataclass(frozen=True)
class CausalVerdict:
    """Outcome for one assertion. p_f/decision/omega are set iff a score exists."""

    assertion: CausalAssertion
    status: str
    gate_b: bool | None = None
    p_f: float | None = None
    decision: str | None = None
    omega: float | None = None

    @property
    def scored(self) -> bool:
        return self.p_f is not None


@dataclass(frozen=True)
class SourceVerdict:
    """Aggregated outcome for one source."""

    source_id: str
    verdicts: tuple[CausalVerdict, ...]
    n_scored: int
    alpha: float
    decision: str
    epsilon: float


@dataclass(frozen=True)
class LearningReport:
    """What apply_learning_policy fused and what it skipped, with reasons."""

    mode: str
    learned_source: bool
    fused: tuple[tuple[CausalAssertion, str], ...] = field(default_factory=tuple)
    skipped: tuple[tuple[CausalAssertion, str], ...] = field(default_factory=tuple)


def gate(prior: DensityGrid, posterior: DensityGrid, tau_h: float = 1e-9) -> bool:
    """True when fusing observations actually reduced entropy by > tau_h."""
    if tau_h < 0.0:
        raise ValueError(f"tau_h must be nonnegative, got {tau_h!r}")
    return entropy(posterior) < entropy(prior) - tau_h


def decision_confidence(p: float, threshold: float) -> float:
    """|p - threshold| / max(1 - p, p); in [0, 1] for p, threshold in [0, 1]."""
    return abs(p - threshold) / max(1.0 - p, p)


def fake_probability(
    s: DensityGrid, l: DensityGrid, lexicon: AdverbLexicon, hp: Hyperparameters
) -> float:
    """The blended fake probability of claim density l against posterior s."""
    kl_n = squash_kl(kl(s, l, hp.eps_smooth))
    h_n = normalize_entropy(entropy(s), lexicon.h_min, lexicon.h_max)
    return ((1.0 - hp.w) * kl_n + hp.w * h_n) ** hp.sigma


def causal_verdict(
    graph: WeightedCausalGraph,
    assertion: CausalAssertion,
    lexicon: AdverbLexicon,
    hp: Hyperparameters | None = None,
) -> CausalVerdict:
    """Score one assertion against the graph.

    Unknown edges follow hp.unknown_edge_policy: excluded from scoring by
    default, or scored at the constant hp.p_unknown. A known edge whose
    posterior never improved on its prior is insufficient-knowledge.
    """
    hp = hp if hp is not None else Hyperparameters()
    if lexicon.m != graph.m:
        raise GridMismatchError(
            f"lexicon grid {lexicon.m} does not match graph grid {graph.m}"
        )
    entry = lexicon.lookup(assertion.adverb)
    edge = graph.get_edge(assertion.cause, assertion.effect)
    if edge is None:
        verdict = CausalVerdict(assertion=assertion, status=STATUS_UNKNOWN_EDGE)
        if hp.unknown_edge_policy == POLICY_SCORE_CONSTANT:
            p_f = hp.p_unknown
            verdict = replace(
                verdict,
                p_f=p_f,
                decision=DECISION_FAKE if p_f > hp.beta else DECISION_NOT_FAKE,
                omega=decision_confidence(p_f, hp.beta),
            )
        return verdict
    passed = gate(edge.prior, edge.posterior, hp.tau_h)
    if not passed:
        return CausalVerdict(
            assertion=assertion, status=STATUS_INSUFFICIENT, gate_b=False
        )
    p_f = fake_probability(edge.posterior, entry.prior, lexicon, hp)
    return CausalVerdict(
        assertion=assertion,
        status=STATUS_SCORED,
        gate_b=True,
        p_f=p_f,
        decision=DECISION_FAKE if p_f > hp.beta else DECISION_NOT_FAKE,
        omega=decision_confidence(p_f, hp.beta),
    )


def aggregate_source(
    source_id: str,
    verdicts: tuple[CausalVerdict, ...],
    hp: Hyperparameters | None = None,
) -> SourceVerdict:
    """Aggregate per-assertion verdicts into a source verdict.

    alpha is the mean p_f over verdicts that carry a score; raises
    NoScorableCausalsError when there are none.
    """
    hp = hp if hp is not None else Hyperparameters()
    scored = [v.p_f for v in verdicts if v.p_f is not None]
    if not scored:
        raise NoScorableCausalsError(
            f"source {source_id!r}: no scorable causal relations"
        )
    alpha = sum(scored) / len(scored)
    return SourceVerdict(
        source_id=source_id,
        verdicts=tuple(verdicts),
        n_scored=len(scored),
        alpha=alpha,
        decision=(
            DECISION_NOT_TRUSTWORTHY if alpha > hp.gamma else DECISION_TRUSTWORTHY
        ),
        epsilon=decision_confidence(alpha, hp.gamma),
    )


def source_verdict(
    graph: WeightedCausalGraph,
    corpus: Corpus,
    lexicon: AdverbLexicon,
    hp: Hyperparameters | None = None,
) -> SourceVerdict:
    """Score every assertion of a corpus and aggregate.

    The graph is not modified; see aggregate_source for the alpha rule.
    """
    hp = hp if hp is not None else Hyperparameters()
    verdicts = tuple(
        causal_verdict(graph, a, lexicon, hp) for a in corpus.assertions
    )
    return aggregate_source(corpus.source_id, verdicts, hp)


def apply_learning_policy(
    graph: WeightedCausalGraph,
    corpus: Corpus,
    verdict: SourceVerdict,
    lexicon: AdverbLexicon,
    hp: Hyperparameters | None = None,
) -> LearningReport:
    """Fuse corpus assertions into the graph per the learning mode.

    Source mode is all-or-nothing: a trustworthy source (and epsilon above
    min_confidence, when set) has every assertion fused, including any that
    scored fake individually; otherwise nothing is. Per-causal mode fuses
    exactly the assertions that scored not-fake (and omega above
    min_confidence, when set); unscored assertions are skipped. Scores are
    taken from the supplied verdict, so fusion order cannot affect them.
    """
    hp = hp if hp is not None else Hyperparameters()
    fused: list[tuple[CausalAssertion, str]] = []
    skipped: list[tuple[CausalAssertion, str]] = []
    by_assertion = {id(v.assertion): v for v in verdict.verdicts}

    if hp.learn_mode == MODE_SOURCE:
        trusted = verdict.decision == DECISION_TRUSTWORTHY
        confident = hp.min_confidence is None or verdict.epsilon >= hp.min_confidence
        learned = trusted and confident
        if learned:
            for a in corpus.assertions:
                graph.add_assertion(a, lexicon)
                fused.append((a, "source trustworthy"))
        else:
            reason = (
                "source not trustworthy"
                if not trusted
                else f"source confidence {verdict.epsilon:.6f} below floor"
            )
            skipped.extend((a, reason) for a in corpus.assertions)
        return LearningReport(
            mode=MODE_SOURCE,
            learned_source=learned,
            fused=tuple(fused),
            skipped=tuple(skipped),
        )

    for a in corpus.assertions:
        v = by_assertion.get(id(a))
        if v is None or v.p_f is None:
            status = v.status if v is not None else "unscored"
            skipped.append((a, f"not scored ({status})"))
            continue
        if v.decision != DECISION_NOT_FAKE:
            skipped.append((a, f"scored fake (p_f={v.p_f:.6f})"))
            continue
        if hp.min_confidence is not None and (v.omega or 0.0) < hp.min_confidence:
            skipped.append((a, f"confidence {v.omega:.6f} below floor"))
            continue
        graph.add_assertion(a, lexicon)
        fused.append((a, f"scored not-fake (p_f={v.p_f:.6f})"))
    return LearningReport(
        mode=MODE_PER_CAUSAL,
        learned_source=False,
        fused=tuple(fused),
        skipped=tuple(skipped),
    )


def percent(x: float) -> str:
    """Six-decimal percentage used throughout the transcripts."""
    return f"{100.0 * x:.6f}%"


def report_document(verdict: SourceVerdict, hp: Hyperparameters) -> dict:
    """JSON-able verdict report."""
    return {
        "source_id": verdict.source_id,
        "gamma": hp.gamma,
        "beta": hp.beta,
        "alpha": verdict.alpha,
        "n_scored": verdict.n_scored,
        "source_decision": verdict.decision,
        "epsilon": verdict.epsilon,
        "causals": [
            {
                "cause": v.assertion.cause,
                "adverb": v.assertion.adverb,
                "effect": v.assertion.effect,
                "status": v.status,
                "p_f": v.p_f,
                "decision": v.decision,
                "omega": v.omega,
            }
            for v in verdict.verdicts
        ],
    }


def transcript(verdict: SourceVerdict, hp: Hyperparameters) -> str:
    """Console transcript in the log style of the original experiments."""
    lines = [f"Source: {verdict.source_id}"]
    for v in verdict.verdicts:
        arrow = f"{v.assertion.cause} --{v.assertion.adverb}--> {v.assertion.effect}"
        if v.p_f is None:
            lines.append(f"  {arrow}: {v.status}")
        else:
            lines.append(
                f"  {arrow}: p_f = {percent(v.p_f)} [{v.decision}]"
                f" (confidence {percent(v.omega or 0.0)})"
            )
    lines.append(
        f"The probability of the source being non trust worthy is : "
        f"{percent(verdict.alpha)}."
    )
    if verdict.decision == DECISION_NOT_TRUSTWORTHY:
        lines.append(
            "According to the given threshold, we must not learn causal "
            "relations from this source."
        )
    else:
        lines.append("According to the given threshold, it is a trust worthy source.")
    lines.append(
        "The confidence degree of the decision based in the threshold and "
        f"the probability of the source is {percent(verdict.epsilon)}."
    )
    return "\n".join(lines)
