"""Weighted causal graph: directed concept edges carrying density grids.

Every edge (cause, effect) remembers the prior of the first adverb observed
for it and a posterior obtained by fusing each further observation's prior
into it, in arrival order. The adverb stream itself is kept, so replaying
the observations from scratch reproduces the posterior bit for bit.

Persistence is a single JSON document:

    {"schema_version": 1, "M": ..., "concepts": [...],
     "edges": [{"cause": ..., "effect": ..., "prior_values": [...],
                "posterior_values": [...], "observations": [...]}]}

Grid heights are serialized as plain JSON numbers (shortest exact round-trip
form, at most 17 significant digits), so load(save(g)) restores the exact
float64 values. Loading validates the whole document before building
anything; a truncated or inconsistent file raises GraphSchemaError and never
yields a partial graph.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from causaltrust.density import DEFAULT_M, DensityGrid, EPS_SMOOTH, fuse
from causaltrust.errors import (
    AssertionFormatError,
    DensityError,
    GraphSchemaError,
    GridMismatchError,
)
from causaltrust.lexicon import AdverbLexicon, canonical

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CausalAssertion:
    """One adverb-qualified causal statement: cause --adverb--> effect.

    Concepts are stored in canonical form (trimmed, whitespace collapsed,
    lowercase). Optional provenance: the source id and the raw sentence.
    """

    cause: str
    adverb: str
    effect: str
    source_id: str | None = None
    sentence: str | None = None

    def __post_init__(self) -> None:
        cause = canonical(self.cause)
        effect = canonical(self.effect)
        adverb = canonical(self.adverb)
        if not cause or not effect:
            raise AssertionFormatError(
                f"assertion needs nonempty cause and effect, got "
                f"cause={self.cause!r} effect={self.effect!r}"
            )
        if not adverb:
            raise AssertionFormatError("assertion needs a nonempty adverb")
        if cause == effect:
            raise AssertionFormatError(f"self-loop not allowed: {cause!r}")
        object.__setattr__(self, "cause", cause)
        object.__setattr__(self, "effect", effect)
        object.__setattr__(self, "adverb", adverb)


@dataclass
class CausalEdge:
    """Directed edge state: first-observation prior, fused posterior, stream."""

    cause: str
    effect: str
    prior: DensityGrid
    posterior: DensityGrid
    observations: list[str] = field(default_factory=list)


class WeightedCausalGraph:
    """Concepts plus directed edges keyed by the ordered (cause, effect) pair."""

    def __init__(self, m: int = DEFAULT_M, eps_smooth: float = EPS_SMOOTH):
        if m < 2:
            raise DensityError(f"grid needs at least 2 cells, got {m}")
        self.m = int(m)
        self.eps_smooth = float(eps_smooth)
        self._concepts: set[str] = set()
        self._edges: dict[tuple[str, str], CausalEdge] = {}

    @property
    def concepts(self) -> frozenset[str]:
        return frozenset(self._concepts)

    def edges(self) -> list[CausalEdge]:
        """Edges in insertion order."""
        return list(self._edges.values())

    def __len__(self) -> int:
        return len(self._edges)

    def get_edge(self, cause: str, effect: str) -> CausalEdge | None:
        """Edge for the ordered pair, or None. The reverse pair is distinct."""
        return self._edges.get((canonical(cause), canonical(effect)))

    def add_assertion(
        self, assertion: CausalAssertion, lexicon: AdverbLexicon
    ) -> CausalEdge:
        """Create the edge at the adverb's prior, or fuse into its posterior.

        The first observation fixes the edge prior; every later observation
        multiplies its adverb prior into the posterior (order-dependent only
        up to smoothing roundoff). Returns the touched edge.
        """
        if lexicon.m != self.m:
            raise GridMismatchError(
                f"lexicon grid {lexicon.m} does not match graph grid {self.m}"
            )
        entry = lexicon.lookup(assertion.adverb)
        key = (assertion.cause, assertion.effect)
        edge = self._edges.get(key)
        if edge is None:
            edge = CausalEdge(
                cause=assertion.cause,
                effect=assertion.effect,
                prior=entry.prior,
                posterior=entry.prior,
            )
            self._edges[key] = edge
            self._concepts.add(assertion.cause)
            self._concepts.add(assertion.effect)
        else:
            edge.posterior = fuse(edge.posterior, entry.prior, self.eps_smooth)
        edge.observations.append(canonical(entry.name))
        return edge


def save_graph(graph: WeightedCausalGraph, path: str | Path) -> None:
    """Write the graph as one JSON document (temp file + atomic rename)."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "M": graph.m,
        "concepts": sorted(graph.concepts),
        "edges": [
            {
                "cause": e.cause,
                "effect": e.effect,
                "prior_values": e.prior.values.tolist(),
                "posterior_values": e.posterior.values.tolist(),
                "observations": list(e.observations),
            }
            for e in graph.edges()
        ],
    }
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _grid_from_doc(values: object, m: int, where: str) -> DensityGrid:
    if not isinstance(values, list) or len(values) != m:
        raise GraphSchemaError(f"{where}: expected {m} grid values")
    try:
        arr = np.asarray(values, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise GraphSchemaError(f"{where}: non-numeric grid value: {exc}") from exc
    try:
        return DensityGrid(arr)
    except DensityError as exc:
        raise GraphSchemaError(f"{where}: {exc}") from exc


def load_graph(path: str | Path) -> WeightedCausalGraph:
    """Load a persisted graph; all-or-nothing.

    Raises GraphSchemaError for truncated JSON, version/field mismatches, or
    grids that fail density validation. Never returns a partial graph.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphSchemaError(f"cannot read graph file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSchemaError(f"graph file {path} is truncated or not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphSchemaError("graph document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise GraphSchemaError(
            f"unsupported schema_version {doc.get('schema_version')!r}"
        )
    m = doc.get("M")
    if not isinstance(m, int) or isinstance(m, bool) or m < 2:
        raise GraphSchemaError(f"invalid grid size M: {m!r}")
    concepts = doc.get("concepts")
    edges = doc.get("edges")
    if not isinstance(concepts, list) or not all(isinstance(c, str) for c in concepts):
        raise GraphSchemaError("concepts must be a list of strings")
    if not isinstance(edges, list):
        raise GraphSchemaError("edges must be a list")

    graph = WeightedCausalGraph(m)
    for i, item in enumerate(edges):
        where = f"edges[{i}]"
        if not isinstance(item, dict):
            raise GraphSchemaError(f"{where}: must be an object")
        cause, effect = item.get("cause"), item.get("effect")
        if not isinstance(cause, str) or not isinstance(effect, str):
            raise GraphSchemaError(f"{where}: cause/effect must be strings")
        cause, effect = canonical(cause), canonical(effect)
        if not cause or not effect or cause == effect:
            raise GraphSchemaError(f"{where}: invalid pair {cause!r} -> {effect!r}")
        if (cause, effect) in graph._edges:
            raise GraphSchemaError(f"{where}: duplicate edge {cause!r} -> {effect!r}")
        obs = item.get("observations")
        if not isinstance(obs, list) or not all(isinstance(o, str) for o in obs):
            raise GraphSchemaError(f"{where}: observations must be a list of strings")
        edge = CausalEdge(
            cause=cause,
            effect=effect,
            prior=_grid_from_doc(item.get("prior_values"), m, f"{where}.prior_values"),
            posterior=_grid_from_doc(
                item.get("posterior_values"), m, f"{where}.posterior_values"
            ),
            observations=[canonical(o) for o in obs],
        )
        graph._edges[(cause, effect)] = edge
        graph._concepts.add(cause)
        graph._concepts.add(effect)
    for c in concepts:
        graph._concepts.add(canonical(c))
    return graph
