"""Command-line interface.

Subcommands: train, classify, simulate, inspect, export-plots.

Exit codes: 0 success, 2 argument errors (click usage), 3 I/O or data
errors, 4 no scorable causal relations.
"""

from __future__ import annotations

import csv
import json
import re
import sys
from pathlib import Path

import click

from causaltrust import __version__
from causaltrust.classify import (
    Hyperparameters,
    apply_learning_policy,
    report_document,
    source_verdict,
    transcript,
)
from causaltrust.density import DEFAULT_M, entropy
from causaltrust.errors import CausalTrustError, NoScorableCausalsError
from causaltrust.extract import Corpus, read_corpus, write_corpus
from causaltrust.graph import WeightedCausalGraph, load_graph, save_graph
from causaltrust.lexicon import AdverbLexicon, default_lexicon, load_lexicon
from causaltrust.synth import generate, preset_scenarios, provenance_comments

EXIT_IO = 3
EXIT_NO_SCORABLE = 4

_lexicon_option = click.option(
    "--lexicon",
    "lexicon_path",
    type=click.Path(dir_okay=False, path_type=Path),
    envvar="CAUSALTRUST_LEXICON",
    default=None,
    help="Adverb lexicon JSON (default: built-in table; "
    "env CAUSALTRUST_LEXICON).",
)
_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["cau", "text"]),
    default="cau",
    show_default=True,
    help="Corpus format: structured lines or free text.",
)


def _get_lexicon(lexicon_path: Path | None, m: int) -> AdverbLexicon:
    if lexicon_path is None:
        return default_lexicon(m)
    return load_lexicon(lexicon_path, m)


def _echo_diagnostics(diagnostics) -> None:
    for d in diagnostics:
        click.echo(f"warning: skipped {d}", err=True)


@click.group()
@click.version_option(version=__version__, prog_name="causaltrust")
def main() -> None:
    """Score causal claims against an uncertainty-weighted causal graph."""


@main.command()
@click.option(
    "--corpus",
    "corpus_paths",
    type=click.Path(dir_okay=False, path_type=Path),
    multiple=True,
    required=True,
    help="Corpus file; repeatable.",
)
@click.option(
    "--graph-out",
    type=click.Path(dir_okay=False, path_type=Path),
    default=Path("graph.json"),
    show_default=True,
    help="Where to write the trained graph.",
)
@click.option(
    "--graph-in",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Existing graph to continue training.",
)
@_format_option
@_lexicon_option
@click.option(
    "-M",
    "--grid-size",
    type=click.IntRange(min=2),
    default=DEFAULT_M,
    show_default=True,
    help="Grid cells (ignored when --graph-in sets it).",
)
def train(corpus_paths, graph_out, graph_in, fmt, lexicon_path, grid_size) -> None:
    """Fuse corpora from trusted sources into a graph."""
    try:
        if graph_in is not None:
            graph = load_graph(graph_in)
        else:
            graph = WeightedCausalGraph(grid_size)
        lexicon = _get_lexicon(lexicon_path, graph.m)
        total = 0
        for path in corpus_paths:
            corpus, diagnostics = read_corpus(path, lexicon, fmt=fmt)
            _echo_diagnostics(diagnostics)
            if not corpus.assertions:
                click.echo(f"warning: corpus {path} contained no assertions", err=True)
            for assertion in corpus.assertions:
                graph.add_assertion(assertion, lexicon)
            total += len(corpus.assertions)
        save_graph(graph, graph_out)
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(
        f"trained {total} assertions into {len(graph)} edges "
        f"({len(graph.concepts)} concepts) -> {graph_out}"
    )


@main.command()
@click.option(
    "--graph",
    "graph_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Trained graph JSON.",
)
@click.option(
    "--corpus",
    "corpus_path",
    type=click.Path(dir_okay=False, path_type=Path),
    required=True,
    help="Claims to score.",
)
@_format_option
@_lexicon_option
@click.option("--source-id", default=None, help="Override the corpus source id.")
@click.option(
    "--beta", type=click.FloatRange(0.0, 1.0), default=0.30, show_default=True,
    help="Fake threshold per causal relation.",
)
@click.option(
    "--gamma", type=click.FloatRange(0.0, 1.0), default=0.35, show_default=True,
    help="Non-trustworthiness threshold per source.",
)
@click.option(
    "--w", type=click.FloatRange(0.0, 1.0), default=0.2, show_default=True,
    help="Weight of the entropy term.",
)
@click.option(
    "--sigma", type=click.FloatRange(min=0.0, min_open=True), default=3.0,
    show_default=True, help="Sharpening exponent.",
)
@click.option(
    "--unknown-edge-policy", type=click.Choice(["exclude", "score_constant"]),
    default="exclude", show_default=True,
    help="How to score claims about edges the graph has never seen.",
)
@click.option(
    "--p-unknown", type=click.FloatRange(0.0, 1.0), default=0.5, show_default=True,
    help="Constant score used by score_constant.",
)
@click.option("--learn", is_flag=True, help="Update the graph per the learning mode.")
@click.option(
    "--learn-mode", type=click.Choice(["source", "per-causal"]), default="source",
    show_default=True, help="All-or-nothing source learning, or per-causal.",
)
@click.option(
    "--min-confidence", type=click.FloatRange(0.0, 1.0), default=None,
    help="Optional confidence floor for learning.",
)
@click.option(
    "--report-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="Write the JSON verdict report here.",
)
@click.option(
    "--graph-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
    help="Where to persist the graph after --learn (default: --graph path).",
)
def classify(
    graph_path, corpus_path, fmt, lexicon_path, source_id, beta, gamma, w, sigma,
    unknown_edge_policy, p_unknown, learn, learn_mode, min_confidence,
    report_out, graph_out,
) -> None:
    """Score a claims corpus against a trained graph."""
    try:
        graph = load_graph(graph_path)
        lexicon = _get_lexicon(lexicon_path, graph.m)
        hp = Hyperparameters(
            w=w, sigma=sigma, beta=beta, gamma=gamma, m=graph.m,
            unknown_edge_policy=unknown_edge_policy, p_unknown=p_unknown,
            learn_mode=learn_mode, min_confidence=min_confidence,
        )
        corpus, diagnostics = read_corpus(
            corpus_path, lexicon, fmt=fmt, source_id=source_id
        )
        _echo_diagnostics(diagnostics)
        verdict = source_verdict(graph, corpus, lexicon, hp)
    except NoScorableCausalsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NO_SCORABLE)
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)

    click.echo(transcript(verdict, hp))
    doc = report_document(verdict, hp)
    try:
        if learn:
            learning = apply_learning_policy(graph, corpus, verdict, lexicon, hp)
            doc["learning"] = {
                "mode": learning.mode,
                "learned_source": learning.learned_source,
                "fused": [
                    {"cause": a.cause, "adverb": a.adverb, "effect": a.effect,
                     "reason": reason}
                    for a, reason in learning.fused
                ],
                "skipped": [
                    {"cause": a.cause, "adverb": a.adverb, "effect": a.effect,
                     "reason": reason}
                    for a, reason in learning.skipped
                ],
            }
            save_graph(graph, graph_out if graph_out is not None else graph_path)
            click.echo(
                f"learning ({learning.mode}): fused {len(learning.fused)}, "
                f"skipped {len(learning.skipped)}"
            )
        if report_out is not None:
            report_out.write_text(
                json.dumps(doc, indent=2) + "\n", encoding="utf-8"
            )
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)


@main.command()
@click.option(
    "--preset", type=click.Choice(["1", "2"]), required=True,
    help="1: divergent claim adverbs (reject); 2: similar (accept).",
)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option(
    "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path),
    required=True, help="Output directory.",
)
@_lexicon_option
@click.option(
    "-M", "--grid-size", type=click.IntRange(min=2), default=DEFAULT_M,
    show_default=True,
)
@click.option("--beta", type=click.FloatRange(0.0, 1.0), default=0.30, show_default=True)
@click.option("--gamma", type=click.FloatRange(0.0, 1.0), default=0.35, show_default=True)
@click.option("--w", type=click.FloatRange(0.0, 1.0), default=0.2, show_default=True)
@click.option(
    "--sigma", type=click.FloatRange(min=0.0, min_open=True), default=3.0,
    show_default=True,
)
def simulate(preset, seed, out_dir, lexicon_path, grid_size, beta, gamma, w, sigma):
    """Run a canned train/claim experiment end to end.

    Writes train.cau, claims.cau, graph.json, report.json and transcript.txt
    into --out; the same seed always produces byte-identical files.
    """
    try:
        lexicon = _get_lexicon(lexicon_path, grid_size)
        train_sc, test_sc = preset_scenarios(preset, seed)
        train_corpus, train_stats = generate(train_sc, lexicon)
        test_corpus, _ = generate(test_sc, lexicon)
        graph = WeightedCausalGraph(grid_size)
        for assertion in train_corpus.assertions:
            graph.add_assertion(assertion, lexicon)
        hp = Hyperparameters(w=w, sigma=sigma, beta=beta, gamma=gamma, m=grid_size)
        verdict = source_verdict(graph, test_corpus, lexicon, hp)

        out_dir.mkdir(parents=True, exist_ok=True)
        write_corpus(train_corpus, out_dir / "train.cau", provenance_comments(train_sc))
        write_corpus(test_corpus, out_dir / "claims.cau", provenance_comments(test_sc))
        save_graph(graph, out_dir / "graph.json")
        text = transcript(verdict, hp)
        (out_dir / "transcript.txt").write_text(text + "\n", encoding="utf-8")
        (out_dir / "report.json").write_text(
            json.dumps(report_document(verdict, hp), indent=2) + "\n",
            encoding="utf-8",
        )
    except NoScorableCausalsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NO_SCORABLE)
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(
        f"preset {preset}: trained {train_stats.n_retained} of "
        f"{train_stats.n_drawn} drawn relations, scored "
        f"{len(test_corpus.assertions)} claims -> {out_dir}"
    )
    click.echo(text)


@main.command()
@click.option(
    "--graph", "graph_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
def inspect(graph_path) -> None:
    """Print a summary of a trained graph."""
    try:
        graph = load_graph(graph_path)
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"grid cells: {graph.m}")
    click.echo(f"concepts ({len(graph.concepts)}): {', '.join(sorted(graph.concepts))}")
    click.echo(f"edges: {len(graph)}")
    for e in graph.edges():
        click.echo(
            f"  {e.cause} -> {e.effect}: {len(e.observations)} observations, "
            f"prior entropy {entropy(e.prior):+.6f}, "
            f"posterior entropy {entropy(e.posterior):+.6f}, "
            f"posterior mean {e.posterior.mean():.6f}"
        )


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_") or "x"


@main.command("export-plots")
@click.option(
    "--graph", "graph_path", type=click.Path(dir_okay=False, path_type=Path),
    required=True,
)
@click.option(
    "--out", "out_dir", type=click.Path(file_okay=False, path_type=Path),
    required=True, help="Directory for the CSV files.",
)
def export_plots(graph_path, out_dir) -> None:
    """Dump per-edge prior/posterior densities as CSV for plotting."""
    try:
        graph = load_graph(graph_path)
        out_dir.mkdir(parents=True, exist_ok=True)
        index_rows = []
        for i, e in enumerate(graph.edges()):
            name = f"edge_{i:04d}_{_slug(e.cause)}__{_slug(e.effect)}.csv"
            x = e.prior.midpoints()
            with (out_dir / name).open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["x", "prior_density", "posterior_density"])
                for j in range(e.prior.m):
                    writer.writerow(
                        [repr(float(x[j])), repr(float(e.prior.values[j])),
                         repr(float(e.posterior.values[j]))]
                    )
            index_rows.append([name, e.cause, e.effect, str(len(e.observations))])
        with (out_dir / "index.csv").open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["file", "cause", "effect", "observations"])
            writer.writerows(index_rows)
    except (CausalTrustError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"wrote {len(index_rows)} edge files + index.csv -> {out_dir}")


if __name__ == "__main__":
    main()
