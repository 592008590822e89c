import pytest

from senselex.errors import UnknownSenseError
from senselex.model import (
    DependencyTriple,
    SemanticFeatures,
    canon_code,
    features_of,
    lookup,
    nfc,
    sense_ids,
)


def test_nfc_composes():
    assert nfc("é") == "é"


def test_canon_code_folds_case_and_normalizes():
    assert canon_code("T3") == "t3"
    assert canon_code("ÉT") == "ét"


def test_features_match_is_case_insensitive():
    a = SemanticFeatures("SOC", "S4")
    b = SemanticFeatures("soc", "s4")
    c = SemanticFeatures("SOC", "T3")
    assert a.matches(b)
    assert b.matches(a)
    assert not a.matches(c)


def test_dependency_render():
    assert DependencyTriple("VARG", "ravir", "victoire").render() == "VARG(ravir,victoire)"


def test_lookup_spans_parts_of_speech_in_file_order(reference):
    senses = lookup(reference, "garde")
    assert [entry.pos for entry in senses] == ["n", "v"]
    assert lookup(reference, "absent") == ()


def test_features_of_picks_first_homograph_entry(reference):
    feats = features_of(reference, "garde", 1)
    assert (feats.domain_code, feats.class_code) == ("SOC", "P1")


def test_features_of_unknown_sense_raises(reference):
    with pytest.raises(UnknownSenseError):
        features_of(reference, "ravir", 9)
    with pytest.raises(UnknownSenseError):
        features_of(reference, "absent", 1)


def test_sense_ids_are_distinct_and_ordered(reference):
    assert sense_ids(reference, "couper") == (1, 5)
    assert sense_ids(reference, "garde") == (1,)


def test_classes_of_collects_canon_codes(reference):
    assert reference.classes_of("voler") == {"a1", "s4"}
    assert reference.classes_of("absent") == frozenset()


def test_merged_record_lookup(merged):
    record = merged.record_for("couper", 5)
    assert record.key == ("couper", "v", 5)
    with pytest.raises(UnknownSenseError):
        merged.record_for("couper", 2)
    assert {r.sense_id for r in merged.senses_of("ravir")} == {1, 2}


def test_merged_rules_for_gathers_across_entries(merged):
    kinds = {rule.kind for rule in merged.rules_for("voler")}
    assert kinds == {"lexical", "generalized", "syntactic"}
    assert merged.rules_for("pain") == ()
