"""Command-line interface.

Exit codes: 0 on success, 1 when an input fails validation, 2 for usage and
I/O problems (click reports those itself).
"""

from __future__ import annotations

from pathlib import Path
from typing import NoReturn

import click

from senselex import __version__, enrichment, figures, ingest, pipeline
from senselex.errors import Diagnostic, ValidationError

_in_path = click.Path(exists=True, dir_okay=False, path_type=Path)
_out_path = click.Path(dir_okay=False, path_type=Path)


def _fail_validation(exc: ValidationError) -> NoReturn:
    for diagnostic in exc.diagnostics:
        click.echo(diagnostic.render(), err=True)
    raise SystemExit(1)


def _fail_io(exc: OSError) -> NoReturn:
    click.echo(str(exc), err=True)
    raise SystemExit(2)


def _echo_warnings(warnings: list[Diagnostic]) -> None:
    for diagnostic in warnings:
        click.echo(diagnostic.render(), err=True)


def _parse_relations(ctx: click.Context, param: click.Parameter, value: str) -> frozenset[str]:
    names = [token.strip() for token in value.split(",") if token.strip()]
    if not names:
        raise click.BadParameter("at least one relation is required")
    for name in names:
        if name not in ingest.SYNSET_RELATIONS:
            raise click.BadParameter(
                f"{name!r} is not one of {', '.join(ingest.SYNSET_RELATIONS)}"
            )
    return frozenset(names)


@click.group()
@click.version_option(version=__version__, prog_name="senselex")
def main() -> None:
    """Sense-indexed lexicon merging, filtering, alignment and enrichment."""


@main.command()
@click.argument("reference", type=_in_path)
@click.option(
    "--synonyms",
    "synonym_paths",
    type=_in_path,
    multiple=True,
    help="Synonym resource file; repeat for several resources.",
)
@click.option("--synsets", "synset_path", type=_in_path, default=None, help="Synset graph file.")
@click.option("--wordlist", "wordlist_path", type=_in_path, default=None, help="Derivative wordlist.")
@click.option("--out", "out_path", type=_out_path, required=True, help="Merged lexicon destination.")
@click.option(
    "--radical-min",
    type=click.IntRange(min=1),
    default=3,
    show_default=True,
    help="Minimum radical length for derivative candidates.",
)
@click.option(
    "--stem-trim",
    type=click.IntRange(min=0),
    default=2,
    show_default=True,
    help="Maximum characters trimmed off a lemma when building stems.",
)
@click.option(
    "--majority",
    type=click.Choice(["strict"]),
    default="strict",
    show_default=True,
    help="Synset alignment regime.",
)
@click.option(
    "--synset-resource",
    default=None,
    help="Synonym resource whose accepted proposals drive alignment overlap; "
    "defaults to the synset file's stem.",
)
def merge(
    reference: Path,
    synonym_paths: tuple[Path, ...],
    synset_path: Path | None,
    wordlist_path: Path | None,
    out_path: Path,
    radical_min: int,
    stem_trim: int,
    majority: str,
    synset_resource: str | None,
) -> None:
    """Merge synonym, derivative and synset resources into REFERENCE."""
    warnings: list[Diagnostic] = []
    try:
        lexicon = ingest.load_reference(reference, warnings)
        resources = [ingest.load_synonym_resource(path, warnings) for path in synonym_paths]
        graph = ingest.load_synset_resource(synset_path, warnings) if synset_path else None
        words = ingest.load_wordlist(wordlist_path, warnings) if wordlist_path else frozenset()
    except ValidationError as exc:
        _fail_validation(exc)
    except OSError as exc:
        _fail_io(exc)
    options = pipeline.MergeOptions(
        radical_min=radical_min,
        stem_trim=stem_trim,
        majority=majority,
        synset_resource=synset_resource,
    )
    outcome = pipeline.run_merge(
        lexicon,
        resources,
        graph,
        words,
        options=options,
        wordlist_name=wordlist_path.stem if wordlist_path else "wordlist",
        graph_name=synset_path.stem if synset_path else "synsets",
        extra_diagnostics=warnings,
    )
    try:
        written = pipeline.write_merge_outputs(outcome, out_path)
    except OSError as exc:
        _fail_io(exc)
    click.echo(pipeline.format_report(outcome.report, title=f"merge of {reference.name}"))
    for name in ("merged", *pipeline.LOG_SUFFIXES):
        click.echo(f"wrote {written[name]}")


@main.command()
@click.argument("merged", type=_in_path)
@click.argument("utterances", type=_in_path)
@click.option("--synsets", "synset_path", type=_in_path, default=None, help="Synset graph file.")
@click.option("--out", "out_path", type=_out_path, default=None, help="Write the table here instead of stdout.")
@click.option(
    "--include-multiword/--no-include-multiword",
    default=True,
    show_default=True,
    help="Keep multiword synonyms in enrichment sets.",
)
@click.option(
    "--taxonomy-depth",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="How many taxonomy steps to walk from an aligned synset.",
)
@click.option(
    "--relations",
    default="hypernym,hyponym",
    show_default=True,
    callback=_parse_relations,
    help="Comma-separated taxonomy relations to walk.",
)
def enrich(
    merged: Path,
    utterances: Path,
    synset_path: Path | None,
    out_path: Path | None,
    include_multiword: bool,
    taxonomy_depth: int,
    relations: frozenset[str],
) -> None:
    """Enrich UTTERANCES from MERGED, one table row per contributed item."""
    warnings: list[Diagnostic] = []
    try:
        merged_lexicon, _ = pipeline.read_merged(merged, warnings)
        blocks = enrichment.parse_utterances(
            ingest.read_utf8(utterances, utterances.name),
            source=utterances.name,
            warnings=warnings,
        )
        graph = ingest.load_synset_resource(synset_path, warnings) if synset_path else None
    except ValidationError as exc:
        _fail_validation(exc)
    except OSError as exc:
        _fail_io(exc)
    _echo_warnings(warnings)
    options = enrichment.EnrichOptions(
        include_multiword=include_multiword,
        taxonomy_relations=relations,
        taxonomy_depth=taxonomy_depth,
    )
    rows: list[str] = []
    for index, block in enumerate(blocks, start=1):
        for result in enrichment.enrich_utterance(merged_lexicon, block, graph, options):
            sense = str(result.sense_id) if result.resolved else "-"
            status = "resolved" if result.resolved else enrichment.UNRESOLVED
            rows.append(f"{index}\t{result.lemma}\t{sense}\tsense\t-\t{status}")
            items = [
                ("synonym", text, tag) for text, tag in result.synonyms
            ] + [
                ("derivative", text, tag) for text, tag in result.derivatives
            ] + [
                ("taxonomy", text, tag) for text, tag in result.taxonomy_words
            ]
            for kind, text, tag in sorted(items):
                rows.append(f"{index}\t{result.lemma}\t{sense}\t{kind}\t{text}\t{tag}")
    table = "".join(row + "\n" for row in rows)
    if out_path is None:
        click.echo(table, nl=False)
    else:
        try:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            out_path.write_text(table, encoding="utf-8")
        except OSError as exc:
            _fail_io(exc)
        click.echo(f"wrote {out_path}")


_KIND_CHOICES = ("auto", "reference", "synonyms", "synsets", "wordlist", "utterances", "merged")


def _infer_kind(path: Path) -> str:
    try:
        head = path.open("rb").read(len(pipeline.MERGED_HEADER.encode()))
    except OSError as exc:
        _fail_io(exc)
    if head.startswith(b"#!merged"):
        return "merged"
    by_suffix = {
        ".lex": "reference",
        ".syn": "synonyms",
        ".wn": "synsets",
        ".utt": "utterances",
    }
    if path.suffix in by_suffix:
        return by_suffix[path.suffix]
    if path.suffix == ".txt":
        return "wordlist"
    raise click.UsageError(
        f"cannot infer the kind of {path}; pass --kind explicitly"
    )


@main.command()
@click.argument("path", type=_in_path)
@click.option(
    "--kind",
    type=click.Choice(_KIND_CHOICES),
    default="auto",
    show_default=True,
    help="File format to validate against; auto infers from the suffix or header.",
)
def validate(path: Path, kind: str) -> None:
    """Validate PATH, printing every diagnostic it accumulates."""
    if kind == "auto":
        kind = _infer_kind(path)
    parsers = {
        "reference": ingest.load_reference,
        "synonyms": ingest.load_synonym_resource,
        "synsets": ingest.load_synset_resource,
        "wordlist": ingest.load_wordlist,
        "utterances": lambda p, w: enrichment.parse_utterances(
            ingest.read_utf8(p, p.name), source=p.name, warnings=w
        ),
        "merged": pipeline.read_merged,
    }
    warnings: list[Diagnostic] = []
    try:
        parsers[kind](path, warnings)
    except ValidationError as exc:
        _fail_validation(exc)
    except OSError as exc:
        _fail_io(exc)
    _echo_warnings(warnings)
    click.echo(f"ok: {path} is a well-formed {kind} file ({len(warnings)} warnings)")


@main.command()
@click.argument("merged", type=_in_path)
@click.option("--out", "out_path", type=_out_path, required=True, help="Report table destination.")
@click.option(
    "--figures/--no-figures",
    "with_figures",
    default=True,
    show_default=True,
    help="Also render one bar chart per decision family next to the table.",
)
def report(merged: Path, out_path: Path, with_figures: bool) -> None:
    """Tabulate the counters recorded in MERGED, with charts alongside."""
    warnings: list[Diagnostic] = []
    try:
        _, merge_report = pipeline.read_merged(merged, warnings)
    except ValidationError as exc:
        _fail_validation(exc)
    except OSError as exc:
        _fail_io(exc)
    _echo_warnings(warnings)
    table = "".join(
        f"{section}\t{counter}\t{value}\n" for section, counter, value in merge_report.rows()
    )
    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(table, encoding="utf-8")
        chart_paths = figures.render_figures(merge_report, out_path) if with_figures else []
    except OSError as exc:
        _fail_io(exc)
    click.echo(pipeline.format_report(merge_report, title=f"report for {merged.name}"))
    click.echo(f"wrote {out_path}")
    for path in chart_paths:
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
