"""End-to-end merge orchestration, the merged-lexicon file, and the report.

The merged file is a single tab-separated text file.  A ``#!merged 1``
header is followed by ``@section`` markers; every record inside a section is
sorted by lemma, then sense id, then the rest of the line, so two runs over
the same inputs produce byte-identical files and each section greps cleanly.
Sections ``@synonyms`` and ``@derivatives`` keep every decision, verdicts
included; the admitted subset is what turns back into records on reload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from senselex.derivations import (
    DERIVATIVE_VERDICTS,
    DerivativeCandidate,
    DerivativeDecision,
    KEPT,
    REJECTED_NO_INSTRUCTION,
    merge_derivatives,
)
from senselex.errors import Diagnostic, ERROR, ValidationError, WARNING
from senselex.ingest import DiagnosticCollector, SynsetGraph, iter_lines
from senselex.model import (
    MergedLexicon,
    MergedSenseRecord,
    ReferenceLexicon,
    SemanticFeatures,
    SenseEntry,
)
from senselex.ingest import SynonymResource
from senselex.rules import (
    RULE_KINDS,
    RuleExtractionResult,
    extract_rules,
    rule_from_pattern,
    rule_sort_key,
)
from senselex.synonyms import (
    ACCEPTED,
    ACCEPTED_MULTIWORD,
    SYNONYM_VERDICTS,
    SynonymDecision,
    SynonymMergeResult,
    merge_synonyms,
)
from senselex.taxonomy import (
    ALIGNMENT_STATUSES,
    AlignmentResult,
    MATCHED,
    align_lexicon,
)

MERGED_HEADER = "#!merged 1"
SECTIONS = (
    "features",
    "synonyms",
    "derivatives",
    "alignments",
    "rules",
    "skipped",
    "diagnostics",
)
LOG_SUFFIXES = ("synonyms", "derivatives", "alignments", "rules")


@dataclass(frozen=True)
class MergeOptions:
    radical_min: int = 3
    stem_trim: int = 2
    majority: str = "strict"
    synset_resource: str | None = None


@dataclass(frozen=True)
class MergeReport:
    """Counters and notes describing one merge run."""

    synonym_counts: Mapping[str, int] = field(default_factory=dict)
    skipped_lemmas: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    derivative_counts: Mapping[str, int] = field(default_factory=dict)
    no_instruction_by_pos: Mapping[str, int] = field(default_factory=dict)
    alignment_counts: Mapping[str, int] = field(default_factory=dict)
    rule_counts: Mapping[str, int] = field(default_factory=dict)
    diagnostics: tuple[Diagnostic, ...] = ()

    def totals_consistent(self) -> bool:
        """Every 'seen' counter equals the sum of its verdict counters."""
        syn_ok = self.synonym_counts.get("seen", 0) == sum(
            self.synonym_counts.get(v, 0) for v in SYNONYM_VERDICTS
        )
        deriv_ok = self.derivative_counts.get("decisions", 0) == sum(
            self.derivative_counts.get(v, 0) for v in DERIVATIVE_VERDICTS
        )
        pos_ok = sum(self.no_instruction_by_pos.values()) == self.derivative_counts.get(
            REJECTED_NO_INSTRUCTION, 0
        )
        return syn_ok and deriv_ok and pos_ok

    def rows(self) -> list[tuple[str, str, str]]:
        out: list[tuple[str, str, str]] = []
        for counter in ("seen", *SYNONYM_VERDICTS):
            out.append(("synonyms", counter, str(self.synonym_counts.get(counter, 0))))
        out.append(("synonyms", "skipped-lemmas", str(len(self.skipped_lemmas))))
        for counter in ("decisions", *DERIVATIVE_VERDICTS):
            out.append(("derivatives", counter, str(self.derivative_counts.get(counter, 0))))
        for pos in sorted(self.no_instruction_by_pos):
            out.append(
                ("derivatives", f"no-instruction[{pos}]", str(self.no_instruction_by_pos[pos]))
            )
        for status in ALIGNMENT_STATUSES:
            out.append(("alignments", status, str(self.alignment_counts.get(status, 0))))
        for kind in RULE_KINDS:
            out.append(("rules", kind, str(self.rule_counts.get(kind, 0))))
        out.append(("diagnostics", "count", str(len(self.diagnostics))))
        return out


def format_report(report: MergeReport, title: str = "merge report") -> str:
    """Human-readable, few-line rendering of a report."""
    lines = [title]
    sc = report.synonym_counts
    lines.append(
        "synonyms: seen={} accepted={} accepted-multiword={} rejected={}".format(
            sc.get("seen", 0),
            sc.get(ACCEPTED, 0),
            sc.get(ACCEPTED_MULTIWORD, 0),
            sc.get("rejected", 0),
        )
    )
    if report.skipped_lemmas:
        listed = ", ".join(
            f"{lemma} ({','.join(sources)})" for lemma, sources in report.skipped_lemmas.items()
        )
        lines.append(f"  skipped lemmas ({len(report.skipped_lemmas)}): {listed}")
    dc = report.derivative_counts
    lines.append(
        "derivatives: decisions={} kept={} rejected-no-instruction={} "
        "rejected-other-sense={} rejected-short-radical={}".format(
            dc.get("decisions", 0),
            dc.get(KEPT, 0),
            dc.get("rejected-no-instruction", 0),
            dc.get("rejected-other-sense", 0),
            dc.get("rejected-short-radical", 0),
        )
    )
    if report.no_instruction_by_pos:
        listed = " ".join(
            f"{pos}={count}" for pos, count in sorted(report.no_instruction_by_pos.items())
        )
        lines.append(f"  rejected-no-instruction by pos: {listed}")
    ac = report.alignment_counts
    lines.append(
        "alignments: " + " ".join(f"{s}={ac.get(s, 0)}" for s in ALIGNMENT_STATUSES)
    )
    rc = report.rule_counts
    lines.append("rules: " + " ".join(f"{k}={rc.get(k, 0)}" for k in RULE_KINDS))
    if report.diagnostics:
        lines.append(f"diagnostics ({len(report.diagnostics)}):")
        for diagnostic in report.diagnostics:
            lines.append(f"  {diagnostic.render()}")
    return "\n".join(lines)


@dataclass(frozen=True)
class MergeOutcome:
    """Everything one merge run produced, decisions included."""

    merged: MergedLexicon
    report: MergeReport
    synonyms: SynonymMergeResult
    derivatives: Mapping[tuple[str, int], frozenset[DerivativeDecision]]
    alignments: Mapping[tuple[str, int], AlignmentResult]
    rules: RuleExtractionResult
    owner_pos: Mapping[tuple[str, int], str]
    wordlist_name: str = "wordlist"
    graph_name: str = "synsets"


def run_merge(
    lexicon: ReferenceLexicon,
    resources: Sequence[SynonymResource] = (),
    graph: SynsetGraph | None = None,
    wordlist: Iterable[str] = frozenset(),
    *,
    options: MergeOptions = MergeOptions(),
    wordlist_name: str = "wordlist",
    graph_name: str = "synsets",
    extra_diagnostics: Iterable[Diagnostic] = (),
) -> MergeOutcome:
    """Run synonym, derivative, alignment and rule merging over one lexicon."""
    if options.majority != "strict":
        raise ValueError(f"only strict majority alignment exists, got {options.majority!r}")
    diagnostics: list[Diagnostic] = list(extra_diagnostics)
    if graph is None:
        graph = SynsetGraph()
        diagnostics.append(
            Diagnostic(
                "no synset graph provided; every alignment degrades to no-synset",
                severity=WARNING,
                source="merge",
            )
        )
    synonym_result = merge_synonyms(lexicon, resources)
    derivative_decisions = merge_derivatives(
        lexicon, wordlist, min_radical=options.radical_min, max_trim=options.stem_trim
    )
    rule_result = extract_rules(lexicon)
    diagnostics.extend(rule_result.diagnostics)

    synset_resource = (
        options.synset_resource if options.synset_resource is not None else graph_name
    )
    resource_names = {resource.name for resource in resources}
    if graph.synsets and synset_resource not in resource_names:
        diagnostics.append(
            Diagnostic(
                f"no synonym resource named {synset_resource!r}; alignment overlap "
                "draws on an empty synonym set",
                severity=WARNING,
                source="merge",
            )
        )
    alignments = align_lexicon(
        lexicon,
        synonym_result,
        graph,
        synset_resource=synset_resource,
        warnings=diagnostics,
    )

    records: dict[tuple[str, str, int], MergedSenseRecord] = {}
    sense_features: dict[tuple[str, str, int], SemanticFeatures] = {}
    owner_pos: dict[tuple[str, int], str] = {}
    for lemma, senses in lexicon.entries.items():
        owner: dict[int, SenseEntry] = {}
        for entry in senses:
            owner.setdefault(entry.sense_id, entry)
        for entry in senses:
            owner_pos[(lemma, entry.sense_id)] = owner[entry.sense_id].pos
        for entry in senses:
            key = (lemma, entry.pos, entry.sense_id)
            sense_features[key] = entry.features
            synonyms: frozenset[tuple[str, str]] = frozenset()
            derivatives: frozenset[tuple[str, str, str]] = frozenset()
            synset = None
            synset_provenance = None
            if owner[entry.sense_id] is entry:
                synonyms = frozenset(
                    (d.proposal, f"{d.verdict}:{'+'.join(d.sources)}")
                    for d in synonym_result.decisions.get((lemma, entry.sense_id), frozenset())
                    if d.verdict in (ACCEPTED, ACCEPTED_MULTIWORD)
                )
                derivatives = frozenset(
                    (d.candidate.surface, d.candidate.suffix, f"{KEPT}:{wordlist_name}")
                    for d in derivative_decisions.get((lemma, entry.sense_id), frozenset())
                    if d.verdict == KEPT
                )
                alignment = alignments.get((lemma, entry.sense_id))
                if alignment is not None and alignment.status == MATCHED:
                    synset = alignment.synset
                    synset_provenance = (
                        f"{MATCHED}:{graph_name}:{alignment.overlap}/{alignment.synonym_count}"
                    )
            records[key] = MergedSenseRecord(
                lemma=lemma,
                pos=entry.pos,
                sense_id=entry.sense_id,
                synonyms=synonyms,
                derivatives=derivatives,
                synset=synset,
                synset_provenance=synset_provenance,
                rules=tuple(
                    sorted(rule_result.rules_by_key.get(key, ()), key=rule_sort_key)
                ),
            )

    report = _build_report(
        synonym_result, derivative_decisions, alignments, rule_result, owner_pos, diagnostics
    )
    assert report.totals_consistent()
    return MergeOutcome(
        merged=MergedLexicon(records=records, sense_features=sense_features),
        report=report,
        synonyms=synonym_result,
        derivatives=derivative_decisions,
        alignments=alignments,
        rules=rule_result,
        owner_pos=owner_pos,
        wordlist_name=wordlist_name,
        graph_name=graph_name,
    )


def _build_report(
    synonym_result: SynonymMergeResult,
    derivative_decisions: Mapping[tuple[str, int], frozenset[DerivativeDecision]],
    alignments: Mapping[tuple[str, int], AlignmentResult],
    rule_result: RuleExtractionResult,
    owner_pos: Mapping[tuple[str, int], str],
    diagnostics: list[Diagnostic],
) -> MergeReport:
    synonym_counts = {"seen": 0, **{v: 0 for v in SYNONYM_VERDICTS}}
    for bucket in synonym_result.decisions.values():
        for decision in bucket:
            synonym_counts["seen"] += 1
            synonym_counts[decision.verdict] += 1
    derivative_counts = {"decisions": 0, **{v: 0 for v in DERIVATIVE_VERDICTS}}
    no_instruction_by_pos: dict[str, int] = {}
    for key, bucket in derivative_decisions.items():
        pos = owner_pos.get(key, "?")
        for decision in bucket:
            derivative_counts["decisions"] += 1
            derivative_counts[decision.verdict] += 1
            if decision.verdict == REJECTED_NO_INSTRUCTION:
                no_instruction_by_pos[pos] = no_instruction_by_pos.get(pos, 0) + 1
    alignment_counts = {status: 0 for status in ALIGNMENT_STATUSES}
    for result in alignments.values():
        alignment_counts[result.status] += 1
    rule_counts = {kind: 0 for kind in RULE_KINDS}
    for rules in rule_result.rules_by_key.values():
        for rule in rules:
            rule_counts[rule.kind] += 1
    return MergeReport(
        synonym_counts=synonym_counts,
        skipped_lemmas=dict(synonym_result.skipped),
        derivative_counts=derivative_counts,
        no_instruction_by_pos=no_instruction_by_pos,
        alignment_counts=alignment_counts,
        rule_counts=rule_counts,
        diagnostics=tuple(diagnostics),
    )


def _sorted_rows(rows: Iterable[tuple[str, int, str]]) -> list[str]:
    return [row for _, _, row in sorted(rows, key=lambda r: (r[0], r[1], r[2]))]


def render_merged(outcome: MergeOutcome) -> str:
    """Render a merge outcome to the merged-lexicon file format."""
    merged = outcome.merged
    out: list[str] = [MERGED_HEADER]

    out.append("@features")
    rows = []
    for (lemma, pos, sense_id), features in merged.sense_features.items():
        rows.append(
            (lemma, sense_id,
             f"{lemma}\t{pos}\t{sense_id}\t{features.domain_code}\t{features.class_code}")
        )
    out.extend(_sorted_rows(rows))

    out.append("@synonyms")
    rows = []
    for (lemma, sense_id), bucket in outcome.synonyms.decisions.items():
        pos = outcome.owner_pos.get((lemma, sense_id), "?")
        for d in bucket:
            matched = ",".join(str(s) for s in d.matching_proposal_senses) or "-"
            rows.append(
                (lemma, sense_id,
                 f"{lemma}\t{pos}\t{sense_id}\t{d.proposal}\t{d.verdict}\t{matched}"
                 f"\t{','.join(d.sources)}")
            )
    out.extend(_sorted_rows(rows))

    out.append("@derivatives")
    rows = []
    for (lemma, sense_id), bucket in outcome.derivatives.items():
        pos = outcome.owner_pos.get((lemma, sense_id), "?")
        for d in bucket:
            rows.append(
                (lemma, sense_id,
                 f"{lemma}\t{pos}\t{sense_id}\t{d.candidate.surface}\t{d.candidate.suffix}"
                 f"\t{d.verdict}\t{outcome.wordlist_name}")
            )
    out.extend(_sorted_rows(rows))

    out.append("@alignments")
    rows = []
    for (lemma, sense_id), result in outcome.alignments.items():
        pos = outcome.owner_pos.get((lemma, sense_id), "?")
        rows.append(
            (lemma, sense_id,
             f"{lemma}\t{pos}\t{sense_id}\t{result.status}\t{result.synset or '-'}"
             f"\t{result.overlap}/{result.synonym_count}\t{outcome.graph_name}")
        )
    out.extend(_sorted_rows(rows))

    out.append("@rules")
    rows = []
    for (lemma, pos, sense_id), rules in outcome.rules.rules_by_key.items():
        for rule in rules:
            rows.append(
                (lemma, sense_id,
                 f"{lemma}\t{pos}\t{sense_id}\t{rule.kind}\t{rule.pattern()}"
                 f"\t{rule.derived_from or '-'}")
            )
    out.extend(_sorted_rows(rows))

    out.append("@skipped")
    for lemma in sorted(outcome.synonyms.skipped):
        out.append(f"{lemma}\t{','.join(outcome.synonyms.skipped[lemma])}")

    out.append("@diagnostics")
    diag_rows = []
    for d in outcome.report.diagnostics:
        line = str(d.line) if d.line is not None else "-"
        diag_rows.append(f"{d.severity}\t{d.source or '-'}\t{line}\t{d.message}")
    out.extend(sorted(diag_rows))

    return "\n".join(out) + "\n"


def render_synonym_log(
    decisions: Mapping[tuple[str, int], frozenset[SynonymDecision]]
) -> str:
    rows = []
    for (lemma, sense_id), bucket in decisions.items():
        for d in bucket:
            matched = ",".join(str(s) for s in d.matching_proposal_senses) or "-"
            rows.append(
                (lemma, sense_id, d.proposal,
                 f"{lemma}\t{sense_id}\t{d.proposal}\t{d.verdict}\t{matched}"
                 f"\t{','.join(d.sources)}")
            )
    return "".join(row[3] + "\n" for row in sorted(rows))


def render_derivative_log(
    decisions: Mapping[tuple[str, int], frozenset[DerivativeDecision]]
) -> str:
    rows = []
    for (lemma, sense_id), bucket in decisions.items():
        for d in bucket:
            rows.append(
                (lemma, sense_id, d.candidate.surface, d.candidate.suffix,
                 f"{lemma}\t{sense_id}\t{d.candidate.surface}\t{d.candidate.suffix}"
                 f"\t{d.verdict}")
            )
    return "".join(row[4] + "\n" for row in sorted(rows))


def render_alignment_log(alignments: Mapping[tuple[str, int], AlignmentResult]) -> str:
    rows = []
    for (lemma, sense_id), r in alignments.items():
        rows.append(
            (lemma, sense_id,
             f"{lemma}\t{sense_id}\t{r.status}\t{r.synset or '-'}"
             f"\t{r.overlap}/{r.synonym_count}")
        )
    return "".join(row[2] + "\n" for row in sorted(rows))


def render_rule_log(rule_result: RuleExtractionResult) -> str:
    rows = []
    for (lemma, _, sense_id), rules in rule_result.rules_by_key.items():
        for rule in rules:
            rows.append(
                (lemma, sense_id, rule.kind, rule.pattern(),
                 f"{lemma}\t{rule.kind}\t{rule.pattern()}\t{sense_id}")
            )
    return "".join(row[4] + "\n" for row in sorted(rows))


def sibling_path(out_path: Path, suffix: str) -> Path:
    return out_path.parent / f"{out_path.stem}.{suffix}"


def write_merge_outputs(outcome: MergeOutcome, out_path: Path | str) -> dict[str, Path]:
    """Write the merged lexicon and the four decision logs next to it."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    written = {"merged": out_path}
    out_path.write_text(render_merged(outcome), encoding="utf-8")
    logs = {
        "synonyms": render_synonym_log(outcome.synonyms.decisions),
        "derivatives": render_derivative_log(outcome.derivatives),
        "alignments": render_alignment_log(outcome.alignments),
        "rules": render_rule_log(outcome.rules),
    }
    for name, text in logs.items():
        path = sibling_path(out_path, f"{name}.tsv")
        path.write_text(text, encoding="utf-8")
        written[name] = path
    return written


def _int_field(
    value: str, what: str, lineno: int, diag: DiagnosticCollector
) -> int | None:
    try:
        return int(value)
    except ValueError:
        diag.error(f"{what} {value!r} is not an integer", lineno)
        return None


def parse_merged(
    lines: Iterable[str] | str,
    *,
    source: str = "merged",
    warnings: list[Diagnostic] | None = None,
) -> tuple[MergedLexicon, MergeReport]:
    """Parse a merged-lexicon file back into records and a report."""
    diag = DiagnosticCollector(source)
    section: str | None = None
    rows: dict[str, list[tuple[int, str]]] = {name: [] for name in SECTIONS}
    saw_header = False
    for lineno, line in iter_lines(lines):
        if not line.strip():
            continue
        if line.startswith("#!"):
            if line.split()[0] == "#!merged":
                saw_header = True
            else:
                diag.error(f"unexpected header {line.split()[0]!r}", lineno)
            continue
        if line.startswith("#"):
            continue
        if line.startswith("@"):
            name = line[1:].strip()
            if name not in SECTIONS:
                diag.error(f"unknown section marker @{name}", lineno)
                section = None
            else:
                section = name
            continue
        if section is None:
            diag.error("record before any section marker", lineno)
            continue
        rows[section].append((lineno, line))
    if not saw_header:
        diag.error("missing #!merged header")

    features: dict[tuple[str, str, int], SemanticFeatures] = {}
    for lineno, line in rows["features"]:
        fields = line.split("\t")
        if len(fields) != 5:
            diag.error(f"expected 5 fields in a features record, got {len(fields)}", lineno)
            continue
        sense_id = _int_field(fields[2], "sense id", lineno, diag)
        if sense_id is None:
            continue
        features[(fields[0], fields[1], sense_id)] = SemanticFeatures(fields[3], fields[4])

    known = set(features)

    def check_key(lemma: str, pos: str, sense_id: int, lineno: int) -> bool:
        if (lemma, pos, sense_id) not in known:
            diag.error(
                f"record for ({lemma!r}, {pos!r}, {sense_id}) has no features entry", lineno
            )
            return False
        return True

    synonyms: dict[tuple[str, str, int], set[tuple[str, str]]] = {}
    synonym_counts = {"seen": 0, **{v: 0 for v in SYNONYM_VERDICTS}}
    for lineno, line in rows["synonyms"]:
        fields = line.split("\t")
        if len(fields) != 7:
            diag.error(f"expected 7 fields in a synonyms record, got {len(fields)}", lineno)
            continue
        lemma, pos, raw_sense, proposal, verdict, _, sources = fields
        sense_id = _int_field(raw_sense, "sense id", lineno, diag)
        if sense_id is None or not check_key(lemma, pos, sense_id, lineno):
            continue
        if verdict not in SYNONYM_VERDICTS:
            diag.error(f"unknown synonym verdict {verdict!r}", lineno)
            continue
        synonym_counts["seen"] += 1
        synonym_counts[verdict] += 1
        if verdict in (ACCEPTED, ACCEPTED_MULTIWORD):
            tag = f"{verdict}:{'+'.join(s for s in sources.split(',') if s)}"
            synonyms.setdefault((lemma, pos, sense_id), set()).add((proposal, tag))

    derivatives: dict[tuple[str, str, int], set[tuple[str, str, str]]] = {}
    derivative_counts = {"decisions": 0, **{v: 0 for v in DERIVATIVE_VERDICTS}}
    no_instruction_by_pos: dict[str, int] = {}
    for lineno, line in rows["derivatives"]:
        fields = line.split("\t")
        if len(fields) != 7:
            diag.error(f"expected 7 fields in a derivatives record, got {len(fields)}", lineno)
            continue
        lemma, pos, raw_sense, surface, suffix, verdict, origin = fields
        sense_id = _int_field(raw_sense, "sense id", lineno, diag)
        if sense_id is None or not check_key(lemma, pos, sense_id, lineno):
            continue
        if verdict not in DERIVATIVE_VERDICTS:
            diag.error(f"unknown derivative verdict {verdict!r}", lineno)
            continue
        derivative_counts["decisions"] += 1
        derivative_counts[verdict] += 1
        if verdict == REJECTED_NO_INSTRUCTION:
            no_instruction_by_pos[pos] = no_instruction_by_pos.get(pos, 0) + 1
        if verdict == KEPT:
            derivatives.setdefault((lemma, pos, sense_id), set()).add(
                (surface, suffix, f"{KEPT}:{origin}")
            )

    aligned: dict[tuple[str, str, int], tuple[str, str]] = {}
    alignment_counts = {status: 0 for status in ALIGNMENT_STATUSES}
    for lineno, line in rows["alignments"]:
        fields = line.split("\t")
        if len(fields) != 7:
            diag.error(f"expected 7 fields in an alignments record, got {len(fields)}", lineno)
            continue
        lemma, pos, raw_sense, status, synset, ratio, origin = fields
        sense_id = _int_field(raw_sense, "sense id", lineno, diag)
        if sense_id is None or not check_key(lemma, pos, sense_id, lineno):
            continue
        if status not in ALIGNMENT_STATUSES:
            diag.error(f"unknown alignment status {status!r}", lineno)
            continue
        alignment_counts[status] += 1
        if status == MATCHED:
            if synset == "-":
                diag.error("matched alignment without a synset id", lineno)
                continue
            aligned[(lemma, pos, sense_id)] = (synset, f"{MATCHED}:{origin}:{ratio}")

    rules: dict[tuple[str, str, int], list] = {}
    rule_counts = {kind: 0 for kind in RULE_KINDS}
    for lineno, line in rows["rules"]:
        fields = line.split("\t")
        if len(fields) != 6:
            diag.error(f"expected 6 fields in a rules record, got {len(fields)}", lineno)
            continue
        lemma, pos, raw_sense, kind, pattern, origin = fields
        sense_id = _int_field(raw_sense, "sense id", lineno, diag)
        if sense_id is None or not check_key(lemma, pos, sense_id, lineno):
            continue
        try:
            rule = rule_from_pattern(
                lemma, kind, pattern, sense_id, None if origin == "-" else origin
            )
        except ValueError as exc:
            diag.error(str(exc), lineno)
            continue
        rule_counts[kind] += 1
        rules.setdefault((lemma, pos, sense_id), []).append(rule)

    skipped: dict[str, tuple[str, ...]] = {}
    for lineno, line in rows["skipped"]:
        fields = line.split("\t")
        if len(fields) != 2:
            diag.error(f"expected 2 fields in a skipped record, got {len(fields)}", lineno)
            continue
        skipped[fields[0]] = tuple(s for s in fields[1].split(",") if s)

    diagnostics: list[Diagnostic] = []
    for lineno, line in rows["diagnostics"]:
        fields = line.split("\t")
        if len(fields) != 4:
            diag.error(f"expected 4 fields in a diagnostics record, got {len(fields)}", lineno)
            continue
        severity, origin, raw_line, message = fields
        if severity not in (ERROR, WARNING):
            diag.error(f"unknown severity {severity!r}", lineno)
            continue
        note_line = None if raw_line == "-" else _int_field(raw_line, "line", lineno, diag)
        diagnostics.append(
            Diagnostic(message, note_line, severity, None if origin == "-" else origin)
        )

    diag.finish(warnings)

    records = {}
    for key in features:
        lemma, pos, sense_id = key
        synset, synset_provenance = aligned.get(key, (None, None))
        records[key] = MergedSenseRecord(
            lemma=lemma,
            pos=pos,
            sense_id=sense_id,
            synonyms=frozenset(synonyms.get(key, ())),
            derivatives=frozenset(derivatives.get(key, ())),
            synset=synset,
            synset_provenance=synset_provenance,
            rules=tuple(sorted(rules.get(key, ()), key=rule_sort_key)),
        )
    report = MergeReport(
        synonym_counts=synonym_counts,
        skipped_lemmas=skipped,
        derivative_counts=derivative_counts,
        no_instruction_by_pos=no_instruction_by_pos,
        alignment_counts=alignment_counts,
        rule_counts=rule_counts,
        diagnostics=tuple(diagnostics),
    )
    return MergedLexicon(records=records, sense_features=features), report


def read_merged(
    path: Path | str, warnings: list[Diagnostic] | None = None
) -> tuple[MergedLexicon, MergeReport]:
    from senselex.ingest import read_utf8

    path = Path(path)
    return parse_merged(read_utf8(path, path.name), source=path.name, warnings=warnings)
