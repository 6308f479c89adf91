"""Uncertainty-weighted causal graphs for scoring fake causal claims.

Trusted sources assert causal relations qualified by frequency adverbs
("smoking usually causes lung cancer"); each adverb carries a Beta-shaped
density over edge certainty. Repeated observations of an edge are fused
into a posterior density, and new claims are scored by how far their
adverb prior sits from that posterior (KL divergence) and by how unsettled
the posterior itself is (entropy). Per-claim fake probabilities aggregate
into a per-source trustworthiness verdict.
"""

from causaltrust._kernels import BACKEND as KERNEL_BACKEND
from causaltrust.classify import (
    CausalVerdict,
    Hyperparameters,
    LearningReport,
    SourceVerdict,
    aggregate_source,
    apply_learning_policy,
    causal_verdict,
    decision_confidence,
    fake_probability,
    gate,
    report_document,
    source_verdict,
    transcript,
)
from causaltrust.density import (
    DEFAULT_M,
    DensityGrid,
    beta_pdf_grid,
    entropy,
    fuse,
    kl,
    normalize,
    normalize_entropy,
    smooth,
    squash_kl,
    uniform,
)
from causaltrust.errors import (
    AssertionFormatError,
    CausalTrustError,
    CorpusParseError,
    DensityError,
    GraphSchemaError,
    GridMismatchError,
    LexiconError,
    NoScorableCausalsError,
    UnknownAdverbError,
)
from causaltrust.extract import (
    Corpus,
    Diagnostic,
    extract_from_text,
    parse_structured_line,
    read_corpus,
    write_corpus,
)
from causaltrust.graph import (
    CausalAssertion,
    CausalEdge,
    WeightedCausalGraph,
    load_graph,
    save_graph,
)
from causaltrust.lexicon import (
    AdverbEntry,
    AdverbLexicon,
    canonical,
    default_lexicon,
    lexicon_from_config,
    load_lexicon,
)
from causaltrust.synth import SynthScenario, SynthStats, generate, preset_scenarios

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # density
    "DEFAULT_M",
    "DensityGrid",
    "beta_pdf_grid",
    "entropy",
    "fuse",
    "kl",
    "normalize",
    "normalize_entropy",
    "smooth",
    "squash_kl",
    "uniform",
    # lexicon
    "AdverbEntry",
    "AdverbLexicon",
    "canonical",
    "default_lexicon",
    "lexicon_from_config",
    "load_lexicon",
    # graph
    "CausalAssertion",
    "CausalEdge",
    "WeightedCausalGraph",
    "load_graph",
    "save_graph",
    # extract
    "Corpus",
    "Diagnostic",
    "extract_from_text",
    "parse_structured_line",
    "read_corpus",
    "write_corpus",
    # classify
    "CausalVerdict",
    "Hyperparameters",
    "LearningReport",
    "SourceVerdict",
    "aggregate_source",
    "apply_learning_policy",
    "causal_verdict",
    "decision_confidence",
    "fake_probability",
    "gate",
    "report_document",
    "source_verdict",
    "transcript",
    # synth
    "SynthScenario",
    "SynthStats",
    "generate",
    "preset_scenarios",
    # errors
    "AssertionFormatError",
    "CausalTrustError",
    "CorpusParseError",
    "DensityError",
    "GraphSchemaError",
    "GridMismatchError",
    "LexiconError",
    "NoScorableCausalsError",
    "UnknownAdverbError",
]
