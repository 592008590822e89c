import pytest

from senselex import pipeline
from senselex.errors import ValidationError
from senselex.pipeline import (
    MergeOptions,
    parse_merged,
    render_merged,
    run_merge,
    write_merge_outputs,
)

EXPECTED_SYNONYM_COUNTS = {
    "seen": 31,
    "accepted": 9,
    "accepted-multiword": 18,
    "rejected": 4,
}
EXPECTED_DERIVATIVE_COUNTS = {
    "decisions": 16,
    "kept": 7,
    "rejected-no-instruction": 2,
    "rejected-other-sense": 5,
    "rejected-short-radical": 2,
}
EXPECTED_ALIGNMENT_COUNTS = {
    "matched": 6,
    "no-synset": 15,
    "no-majority": 6,
    "ambiguous": 1,
}
EXPECTED_RULE_COUNTS = {"lexical": 10, "generalized": 10, "syntactic": 10}


class TestMergeReport:
    def test_counters_frozen_from_oracles(self, outcome):
        report = outcome.report
        assert dict(report.synonym_counts) == EXPECTED_SYNONYM_COUNTS
        assert dict(report.derivative_counts) == EXPECTED_DERIVATIVE_COUNTS
        assert dict(report.alignment_counts) == EXPECTED_ALIGNMENT_COUNTS
        assert dict(report.rule_counts) == EXPECTED_RULE_COUNTS
        assert dict(report.no_instruction_by_pos) == {"v": 2}
        assert report.skipped_lemmas == {"larron": ("bailly",)}
        assert report.totals_consistent()

    def test_diagnostics_cover_rules_and_alignment(self, outcome):
        sources = sorted(d.source for d in outcome.report.diagnostics)
        assert sources == ["alignment", "rules"]

    def test_rows_are_flat_strings(self, outcome):
        rows = outcome.report.rows()
        assert ("synonyms", "seen", "31") in rows
        assert ("derivatives", "no-instruction[v]", "2") in rows
        assert ("rules", "generalized", "10") in rows

    def test_format_report_mentions_skips(self, outcome):
        text = pipeline.format_report(outcome.report)
        assert "larron" in text
        assert "seen=31" in text


class TestMergeSemantics:
    def test_homograph_decisions_attach_to_the_first_entry(self, merged):
        noun = merged.records[("garde", "n", 1)]
        verb = merged.records[("garde", "v", 1)]
        assert {text for text, _ in noun.synonyms} == {"sentinelle"}
        assert verb.synonyms == frozenset()

    def test_rules_stay_with_their_own_entry(self, merged):
        assert merged.records[("garde", "n", 1)].rules == ()
        verb_rules = merged.records[("garde", "v", 1)].rules
        assert [r.kind for r in verb_rules] == ["syntactic"]

    def test_matched_sense_carries_synset_and_provenance(self, merged):
        record = merged.records[("ravir", "v", 2)]
        assert record.synset == "W2"
        assert record.synset_provenance == "matched:ewn:1/1"

    def test_unmatched_sense_has_no_synset(self, merged):
        record = merged.records[("couper", "v", 1)]
        assert record.synset is None
        assert record.synset_provenance is None

    def test_strictness_is_the_only_majority(self, reference):
        with pytest.raises(ValueError, match="strict"):
            run_merge(reference, options=MergeOptions(majority="relaxed"))

    def test_missing_graph_degrades_with_a_warning(self, reference, resources, wordlist):
        outcome = run_merge(reference, resources, None, wordlist)
        assert any("no synset graph" in d.message for d in outcome.report.diagnostics)
        assert outcome.report.alignment_counts["no-synset"] == 28

    def test_unmatched_synset_resource_name_warns(self, reference, resources, graph):
        outcome = run_merge(
            reference, resources, graph, frozenset(),
            options=MergeOptions(synset_resource="nonesuch"),
        )
        assert any(
            "no synonym resource named 'nonesuch'" in d.message
            for d in outcome.report.diagnostics
        )
        assert outcome.report.alignment_counts["matched"] == 0


class TestMergedFile:
    def test_render_is_stable(self, outcome):
        assert render_merged(outcome) == render_merged(outcome)

    def test_round_trip_preserves_records_and_report(self, outcome):
        text = render_merged(outcome)
        again, report = parse_merged(text)
        assert again.records == outcome.merged.records
        assert again.sense_features == outcome.merged.sense_features
        assert dict(report.synonym_counts) == dict(outcome.report.synonym_counts)
        assert dict(report.derivative_counts) == dict(outcome.report.derivative_counts)
        assert dict(report.alignment_counts) == dict(outcome.report.alignment_counts)
        assert dict(report.rule_counts) == dict(outcome.report.rule_counts)
        assert dict(report.no_instruction_by_pos) == dict(
            outcome.report.no_instruction_by_pos
        )
        assert report.skipped_lemmas == dict(outcome.report.skipped_lemmas)
        assert sorted(d.render() for d in report.diagnostics) == sorted(
            d.render() for d in outcome.report.diagnostics
        )

    def test_golden_merged_file(self, outcome, golden_dir):
        expected = (golden_dir / "merged.lex").read_text(encoding="utf-8")
        assert render_merged(outcome) == expected

    def test_golden_decision_logs(self, outcome, golden_dir):
        assert pipeline.render_synonym_log(outcome.synonyms.decisions) == (
            golden_dir / "merged.synonyms.tsv"
        ).read_text(encoding="utf-8")
        assert pipeline.render_derivative_log(outcome.derivatives) == (
            golden_dir / "merged.derivatives.tsv"
        ).read_text(encoding="utf-8")
        assert pipeline.render_alignment_log(outcome.alignments) == (
            golden_dir / "merged.alignments.tsv"
        ).read_text(encoding="utf-8")
        assert pipeline.render_rule_log(outcome.rules) == (
            golden_dir / "merged.rules.tsv"
        ).read_text(encoding="utf-8")

    def test_write_outputs_names_siblings(self, outcome, tmp_path):
        written = write_merge_outputs(outcome, tmp_path / "out" / "merged.lex")
        assert sorted(written) == [
            "alignments", "derivatives", "merged", "rules", "synonyms",
        ]
        for path in written.values():
            assert path.exists()
        assert written["synonyms"].name == "merged.synonyms.tsv"


class TestMergedParsingErrors:
    def test_header_is_required(self):
        with pytest.raises(ValidationError, match="missing #!merged header"):
            parse_merged("@features\n")

    def test_unknown_section_marker(self):
        with pytest.raises(ValidationError, match="unknown section marker"):
            parse_merged("#!merged 1\n@nonsense\n")

    def test_record_before_any_section(self):
        with pytest.raises(ValidationError, match="before any section"):
            parse_merged("#!merged 1\nravir\tv\t1\n")

    def test_field_counts_are_checked(self):
        with pytest.raises(ValidationError, match="expected 5 fields"):
            parse_merged("#!merged 1\n@features\nravir\tv\t1\n")

    def test_unknown_verdict_rejected(self):
        text = (
            "#!merged 1\n@features\nravir\tv\t1\tPSY\tP2\n"
            "@synonyms\nravir\tv\t1\tcharmer\tmaybe\t-\tbailly\n"
        )
        with pytest.raises(ValidationError, match="unknown synonym verdict"):
            parse_merged(text)

    def test_rows_must_reference_a_features_entry(self):
        text = (
            "#!merged 1\n@features\nravir\tv\t1\tPSY\tP2\n"
            "@synonyms\nvoler\tv\t1\tplaner\taccepted\t1\tewn\n"
        )
        with pytest.raises(ValidationError, match="no features entry"):
            parse_merged(text)

    def test_matched_alignment_needs_a_synset(self):
        text = (
            "#!merged 1\n@features\nravir\tv\t1\tPSY\tP2\n"
            "@alignments\nravir\tv\t1\tmatched\t-\t1/1\tewn\n"
        )
        with pytest.raises(ValidationError, match="without a synset"):
            parse_merged(text)
