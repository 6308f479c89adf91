"""Verdict computation: gate, fake probability, decisions, learning policy."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causaltrust.classify import (
    DECISION_FAKE,
    DECISION_NOT_FAKE,
    DECISION_NOT_TRUSTWORTHY,
    DECISION_TRUSTWORTHY,
    MODE_PER_CAUSAL,
    STATUS_INSUFFICIENT,
    STATUS_SCORED,
    STATUS_UNKNOWN_EDGE,
    CausalVerdict,
    Hyperparameters,
    aggregate_source,
    apply_learning_policy,
    causal_verdict,
    decision_confidence,
    fake_probability,
    gate,
    percent,
    report_document,
    source_verdict,
    transcript,
)
from causaltrust.density import entropy, kl, normalize_entropy, squash_kl
from causaltrust.errors import NoScorableCausalsError
from causaltrust.extract import Corpus
from causaltrust.graph import CausalAssertion, WeightedCausalGraph


def A(cause, adverb, effect):
    return CausalAssertion(cause=cause, adverb=adverb, effect=effect)


def scored_stub(p_f, beta=0.30, i=0):
    return CausalVerdict(
        assertion=A(f"c{i}", "usually", f"e{i}"),
        status=STATUS_SCORED,
        gate_b=True,
        p_f=p_f,
        decision=DECISION_FAKE if p_f > beta else DECISION_NOT_FAKE,
        omega=decision_confidence(p_f, beta),
    )


@pytest.fixture
def trained(lex_small):
    """Two well-observed edges plus one single-observation edge."""
    g = WeightedCausalGraph(lex_small.m)
    for adv in ["usually", "normally", "usually", "frequently"]:
        g.add_assertion(A("a", adv, "b"), lex_small)
    for adv in ["sometimes", "sometimes", "infrequently"]:
        g.add_assertion(A("b", adv, "c"), lex_small)
    g.add_assertion(A("c", "often", "d"), lex_small)
    return g


class TestHyperparameters:
    def test_defaults(self):
        hp = Hyperparameters()
        assert (hp.w, hp.sigma, hp.beta, hp.gamma) == (0.2, 3.0, 0.30, 0.35)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"w": -0.1}, {"w": 1.1}, {"sigma": 0.0}, {"beta": 2.0},
            {"gamma": -1.0}, {"tau_h": -1e-3}, {"eps_smooth": 0.0},
            {"m": 1}, {"unknown_edge_policy": "guess"}, {"p_unknown": 2.0},
            {"learn_mode": "sometimes"}, {"min_confidence": 1.5},
        ],
    )
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ValueError):
            Hyperparameters(**kwargs)


class TestGate:
    def test_single_observation_gains_nothing(self, trained, lex_small):
        edge = trained.get_edge("c", "d")
        assert not gate(edge.prior, edge.posterior)

    def test_fused_edge_passes(self, trained):
        edge = trained.get_edge("a", "b")
        assert gate(edge.prior, edge.posterior)

    def test_tau_h_blocks_marginal_gains(self, trained):
        edge = trained.get_edge("a", "b")
        gain = entropy(edge.prior) - entropy(edge.posterior)
        assert gate(edge.prior, edge.posterior, tau_h=gain / 2)
        assert not gate(edge.prior, edge.posterior, tau_h=gain * 2)

    def test_negative_tau_rejected(self, trained):
        edge = trained.get_edge("a", "b")
        with pytest.raises(ValueError):
            gate(edge.prior, edge.posterior, tau_h=-1.0)


class TestDecisionConfidence:
    def test_worked_example(self):
        # p_f 0.7 against threshold 0.6: |0.7-0.6| / 0.7
        assert decision_confidence(0.7, 0.6) == pytest.approx(0.142857, abs=1e-6)

    def test_at_threshold_confidence_is_zero(self):
        assert decision_confidence(0.3, 0.3) == 0.0

    @given(
        p=st.floats(min_value=0.0, max_value=1.0),
        t=st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_bounded_unit_interval(self, p, t):
        c = decision_confidence(p, t)
        assert 0.0 <= c <= 1.0


class TestFakeProbability:
    def test_matches_direct_formula(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        s = trained.get_edge("a", "b").posterior
        l = lex_small.lookup("seldom").prior
        expected = (
            (1.0 - hp.w) * squash_kl(kl(s, l))
            + hp.w * normalize_entropy(entropy(s), lex_small.h_min, lex_small.h_max)
        ) ** hp.sigma
        assert fake_probability(s, l, lex_small, hp) == pytest.approx(
            expected, abs=1e-12
        )

    def test_divergent_claim_scores_higher(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        s = trained.get_edge("a", "b").posterior
        near = fake_probability(s, lex_small.lookup("usually").prior, lex_small, hp)
        far = fake_probability(s, lex_small.lookup("seldom").prior, lex_small, hp)
        assert near < far

    def test_monotone_in_divergence_at_fixed_posterior(self, trained, lex_small):
        # one posterior, every adverb as the claim: p_f must order like kl
        hp = Hyperparameters(m=lex_small.m)
        s = trained.get_edge("a", "b").posterior
        results = [
            (kl(s, e.prior), fake_probability(s, e.prior, lex_small, hp))
            for e in lex_small.entries
        ]
        results.sort()
        pfs = [p for _, p in results]
        assert all(p1 <= p2 + 1e-12 for p1, p2 in zip(pfs, pfs[1:]))

    def test_monotone_in_entropy_at_zero_divergence(self, lex_small):
        # claim equals posterior, so kl ~ 0 and p_f reduces to (w * h_n)^sigma
        hp = Hyperparameters(m=lex_small.m)
        results = [
            (e.prior_entropy, fake_probability(e.prior, e.prior, lex_small, hp))
            for e in lex_small.entries
        ]
        results.sort()
        pfs = [p for _, p in results]
        assert all(p1 <= p2 + 1e-9 for p1, p2 in zip(pfs, pfs[1:]))

    @given(
        i=st.integers(min_value=0, max_value=11),
        j=st.integers(min_value=0, max_value=11),
    )
    @settings(max_examples=144, deadline=None)
    def test_stays_in_unit_interval(self, lex_small, i, j):
        hp = Hyperparameters(m=lex_small.m)
        entries = lex_small.entries
        p = fake_probability(entries[i].prior, entries[j].prior, lex_small, hp)
        assert 0.0 <= p <= 1.0


class TestCausalVerdict:
    def test_scored_fake(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        v = causal_verdict(trained, A("a", "never", "b"), lex_small, hp)
        assert v.status == STATUS_SCORED
        assert v.gate_b is True
        assert v.decision == DECISION_FAKE
        assert v.omega == pytest.approx(decision_confidence(v.p_f, hp.beta))

    def test_scored_not_fake(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        v = causal_verdict(trained, A("a", "usually", "b"), lex_small, hp)
        assert v.status == STATUS_SCORED
        assert v.decision == DECISION_NOT_FAKE

    def test_insufficient_knowledge_edge(self, trained, lex_small):
        v = causal_verdict(trained, A("c", "often", "d"), lex_small)
        assert v.status == STATUS_INSUFFICIENT
        assert v.gate_b is False
        assert not v.scored

    def test_unknown_edge_excluded_by_default(self, trained, lex_small):
        v = causal_verdict(trained, A("x", "usually", "y"), lex_small)
        assert v.status == STATUS_UNKNOWN_EDGE
        assert not v.scored

    def test_unknown_edge_score_constant_policy(self, trained, lex_small):
        hp = Hyperparameters(
            m=lex_small.m, unknown_edge_policy="score_constant", p_unknown=0.9
        )
        v = causal_verdict(trained, A("x", "usually", "y"), lex_small, hp)
        assert v.status == STATUS_UNKNOWN_EDGE
        assert v.p_f == 0.9
        assert v.decision == DECISION_FAKE

    def test_tie_with_beta_is_not_fake(self, trained, lex_small):
        hp = Hyperparameters(
            m=lex_small.m, unknown_edge_policy="score_constant", p_unknown=0.5,
            beta=0.5,
        )
        v = causal_verdict(trained, A("x", "usually", "y"), lex_small, hp)
        assert v.decision == DECISION_NOT_FAKE
        assert v.omega == 0.0


class TestAggregation:
    def test_alpha_is_the_mean_of_scored(self):
        ps = [0.1876, 0.2669, 0.5412, 0.1877, 0.4670]
        verdicts = tuple(scored_stub(p, i=i) for i, p in enumerate(ps))
        sv = aggregate_source("s", verdicts, Hyperparameters())
        assert sv.alpha == pytest.approx(sum(ps) / len(ps), abs=1e-12)
        assert sv.n_scored == 5

    def test_unscored_verdicts_do_not_dilute_alpha(self, trained, lex_small):
        verdicts = (
            scored_stub(0.4, i=0),
            CausalVerdict(assertion=A("x", "usually", "y"),
                          status=STATUS_UNKNOWN_EDGE),
            scored_stub(0.6, i=1),
        )
        sv = aggregate_source("s", verdicts, Hyperparameters())
        assert sv.alpha == pytest.approx(0.5)
        assert sv.n_scored == 2

    def test_no_scorable_raises(self):
        empty = (
            CausalVerdict(assertion=A("x", "usually", "y"),
                          status=STATUS_UNKNOWN_EDGE),
        )
        with pytest.raises(NoScorableCausalsError):
            aggregate_source("s", empty, Hyperparameters())
        with pytest.raises(NoScorableCausalsError):
            aggregate_source("s", (), Hyperparameters())

    def test_threshold_decisions_and_tie(self):
        hp = Hyperparameters(gamma=0.35)
        high = aggregate_source("s", (scored_stub(0.5),), hp)
        assert high.decision == DECISION_NOT_TRUSTWORTHY
        low = aggregate_source("s", (scored_stub(0.2),), hp)
        assert low.decision == DECISION_TRUSTWORTHY
        tie = aggregate_source("s", (scored_stub(0.35),), hp)
        assert tie.decision == DECISION_TRUSTWORTHY
        assert tie.epsilon == 0.0

    def test_epsilon_examples_from_the_three_logged_runs(self):
        assert decision_confidence(0.785579, 0.35) == pytest.approx(
            0.554469, abs=1e-4
        )
        assert decision_confidence(0.330110, 0.35) == pytest.approx(
            0.029692, abs=1e-4
        )
        assert decision_confidence(0.622033, 0.40) == pytest.approx(
            0.356948, abs=1e-4
        )

    def test_alpha_is_permutation_invariant(self):
        ps = [0.11, 0.72, 0.35, 0.64, 0.08]
        fwd = aggregate_source(
            "s", tuple(scored_stub(p, i=i) for i, p in enumerate(ps)),
            Hyperparameters(),
        )
        rev = aggregate_source(
            "s", tuple(scored_stub(p, i=i) for i, p in enumerate(reversed(ps))),
            Hyperparameters(),
        )
        assert fwd.alpha == pytest.approx(rev.alpha, abs=1e-12)
        assert fwd.decision == rev.decision

    def test_source_verdict_over_a_corpus(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        corpus = Corpus(
            source_id="feed",
            assertions=[
                A("a", "usually", "b"),
                A("b", "sometimes", "c"),
                A("x", "usually", "y"),  # unknown, excluded
                A("c", "often", "d"),  # insufficient, excluded
            ],
        )
        sv = source_verdict(trained, corpus, lex_small, hp)
        assert sv.source_id == "feed"
        assert sv.n_scored == 2
        assert len(sv.verdicts) == 4
        scored = [v.p_f for v in sv.verdicts if v.scored]
        assert sv.alpha == pytest.approx(sum(scored) / 2)


class TestLearningPolicy:
    def make_corpus(self):
        return Corpus(
            source_id="feed",
            assertions=[A("a", "usually", "b"), A("b", "sometimes", "c")],
        )

    def test_source_mode_fuses_everything_when_trusted(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m, gamma=0.99)
        corpus = self.make_corpus()
        sv = source_verdict(trained, corpus, lex_small, hp)
        before = [len(e.observations) for e in trained.edges()]
        report = apply_learning_policy(trained, corpus, sv, lex_small, hp)
        assert report.learned_source is True
        assert len(report.fused) == 2 and report.skipped == ()
        after = [len(e.observations) for e in trained.edges()]
        assert sum(after) == sum(before) + 2

    def test_source_mode_all_or_nothing_when_rejected(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m, gamma=0.0)
        corpus = self.make_corpus()
        sv = source_verdict(trained, corpus, lex_small, hp)
        assert sv.decision == DECISION_NOT_TRUSTWORTHY
        before = [len(e.observations) for e in trained.edges()]
        report = apply_learning_policy(trained, corpus, sv, lex_small, hp)
        assert report.learned_source is False
        assert report.fused == () and len(report.skipped) == 2
        assert [len(e.observations) for e in trained.edges()] == before

    def test_source_mode_respects_the_confidence_floor(self, trained, lex_small):
        corpus = self.make_corpus()
        hp = Hyperparameters(m=lex_small.m, gamma=0.99, min_confidence=0.9999)
        sv = source_verdict(trained, corpus, lex_small, hp)
        assert sv.decision == DECISION_TRUSTWORTHY
        report = apply_learning_policy(trained, corpus, sv, lex_small, hp)
        assert report.learned_source is False
        assert "below floor" in report.skipped[0][1]

    def test_per_causal_mode_fuses_exactly_the_not_fake(self, trained, lex_small):
        corpus = Corpus(
            source_id="feed",
            assertions=[
                A("a", "usually", "b"),   # close to the posterior: not fake
                A("a", "never", "b"),     # far divergence: fake
                A("x", "usually", "y"),   # unknown edge: skipped
            ],
        )
        hp = Hyperparameters(m=lex_small.m, learn_mode=MODE_PER_CAUSAL)
        sv = source_verdict(trained, corpus, lex_small, hp)
        n_before = len(trained.get_edge("a", "b").observations)
        report = apply_learning_policy(trained, corpus, sv, lex_small, hp)
        assert report.mode == MODE_PER_CAUSAL
        assert [a.adverb for a, _ in report.fused] == ["usually"]
        assert len(report.skipped) == 2
        assert len(trained.get_edge("a", "b").observations) == n_before + 1

    def test_per_causal_count_on_the_logged_probability_list(self):
        # five scored claims at beta=0.30: exactly the three below the
        # threshold are eligible for fusion
        ps = [0.1876, 0.2669, 0.5412, 0.1877, 0.4670]
        eligible = [p for p in ps if not p > 0.30]
        assert len(eligible) == 3


class TestReporting:
    def test_percent_formatting(self):
        assert percent(0.33010959) == "33.010959%"
        assert percent(1.0) == "100.000000%"

    def test_transcript_not_trustworthy_template(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m, gamma=0.0)
        corpus = Corpus(source_id="feed", assertions=[A("a", "never", "b")])
        sv = source_verdict(trained, corpus, lex_small, hp)
        text = transcript(sv, hp)
        assert "The probability of the source being non trust worthy is : " in text
        assert (
            "According to the given threshold, we must not learn causal "
            "relations from this source." in text
        )
        assert (
            "The confidence degree of the decision based in the threshold and "
            "the probability of the source is " in text
        )

    def test_transcript_trustworthy_template(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m, gamma=1.0)
        corpus = Corpus(source_id="feed", assertions=[A("a", "usually", "b")])
        sv = source_verdict(trained, corpus, lex_small, hp)
        text = transcript(sv, hp)
        assert "According to the given threshold, it is a trust worthy source." in text

    def test_report_document_shape(self, trained, lex_small):
        hp = Hyperparameters(m=lex_small.m)
        corpus = Corpus(
            source_id="feed",
            assertions=[A("a", "usually", "b"), A("x", "usually", "y")],
        )
        sv = source_verdict(trained, corpus, lex_small, hp)
        doc = report_document(sv, hp)
        assert doc["source_id"] == "feed"
        assert doc["beta"] == hp.beta and doc["gamma"] == hp.gamma
        assert doc["n_scored"] == 1
        assert len(doc["causals"]) == 2
        unknown = doc["causals"][1]
        assert unknown["status"] == STATUS_UNKNOWN_EDGE
        assert unknown["p_f"] is None
        assert math.isfinite(doc["alpha"])
