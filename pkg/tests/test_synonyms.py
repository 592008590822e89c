import pytest
from hypothesis import given, settings, strategies as st

import lexgen
from oracle_synonyms import synonym_verdict
from senselex.errors import UnknownSenseError
from senselex.ingest import SynonymResource
from senselex.synonyms import (
    ACCEPTED,
    ACCEPTED_MULTIWORD,
    REJECTED,
    filter_synonym,
    merge_synonyms,
)

# Verdicts frozen from the brute-force oracle over tests/data.
FIXTURE_VERDICTS = [
    ("ravir", 1, "charmer", ACCEPTED, (1,)),
    ("ravir", 1, "voler", REJECTED, ()),
    ("ravir", 1, "enchanter", ACCEPTED_MULTIWORD, ()),
    ("ravir", 1, "combler d'aise", ACCEPTED_MULTIWORD, ()),
    ("ravir", 2, "charmer", REJECTED, ()),
    ("ravir", 2, "voler", ACCEPTED, (2,)),
    ("remporter", 1, "gagner", REJECTED, ()),
    ("remporter", 2, "gagner", ACCEPTED, (1,)),
    ("couper", 1, "trancher", ACCEPTED, (1,)),
    ("couper", 5, "trancher", ACCEPTED, (1,)),
    ("voler", 1, "planer", ACCEPTED, (1,)),
    ("voler", 2, "planer", REJECTED, ()),
    ("garde", 1, "sentinelle", ACCEPTED_MULTIWORD, ()),
    ("louer", 2, "vanter", ACCEPTED, (1,)),
]


@pytest.mark.parametrize("lemma,sense,proposal,verdict,matches", FIXTURE_VERDICTS)
def test_fixture_verdicts(reference, lemma, sense, proposal, verdict, matches):
    decision = filter_synonym(reference, lemma, sense, proposal)
    assert decision.verdict == verdict
    assert decision.matching_proposal_senses == matches


def test_unknown_target_sense_raises(reference):
    with pytest.raises(UnknownSenseError):
        filter_synonym(reference, "ravir", 7, "charmer")


def test_feature_match_ignores_code_case(reference):
    # the comparison goes through canon codes, so a resource spelling the
    # proposal identically still matches whatever case the codes use
    decision = filter_synonym(reference, "couper", 1, "trancher")
    assert decision.verdict == ACCEPTED


def test_merge_collects_sources_sorted(reference, resources):
    result = merge_synonyms(reference, resources)
    bucket = {d.proposal: d for d in result.decisions[("ravir", 1)]}
    assert bucket["charmer"].sources == ("bailly", "ewn")
    assert bucket["enchanter"].sources == ("bailly",)
    assert bucket["séduire"].sources == ("ewn",)


def test_merge_skips_out_of_lexicon_lemmas(reference, resources):
    result = merge_synonyms(reference, resources)
    assert result.skipped == {"larron": ("bailly",)}
    assert ("larron", 1) not in result.decisions


def test_merge_covers_every_sense_of_a_proposed_lemma(reference, resources):
    result = merge_synonyms(reference, resources)
    assert ("ravir", 1) in result.decisions
    assert ("ravir", 2) in result.decisions
    # homograph senses collapse onto one decision key
    assert len([k for k in result.decisions if k[0] == "garde"]) == 1


def test_merge_is_insensitive_to_resource_order(reference, resources):
    forward = merge_synonyms(reference, resources)
    backward = merge_synonyms(reference, list(reversed(resources)))
    assert forward.decisions == backward.decisions
    assert forward.skipped == backward.skipped


@settings(max_examples=80, deadline=None)
@given(data=st.data(), pair=lexgen.flat_lexicons())
def test_verdicts_agree_with_oracle(data, pair):
    rows, lexicon = pair
    target = data.draw(st.sampled_from(sorted(rows)))
    sense = data.draw(st.sampled_from([sid for sid, _, _ in rows[target]]))
    proposal = data.draw(
        st.one_of(
            st.sampled_from(sorted(rows)),
            lexgen.terms,
            st.just("faire main basse"),
        )
    )
    expected_verdict, expected_matches = synonym_verdict(rows, target, sense, proposal)
    decision = filter_synonym(lexicon, target, sense, proposal)
    assert decision.verdict == expected_verdict
    assert decision.matching_proposal_senses == expected_matches


@settings(max_examples=60, deadline=None)
@given(data=st.data(), pair=lexgen.flat_lexicons())
def test_accepted_needs_a_feature_equal_sense(data, pair):
    rows, lexicon = pair
    target = data.draw(st.sampled_from(sorted(rows)))
    sense = data.draw(st.sampled_from([sid for sid, _, _ in rows[target]]))
    proposal = data.draw(st.sampled_from(sorted(rows)))
    decision = filter_synonym(lexicon, target, sense, proposal)
    target_feats = next((d, c) for sid, d, c in rows[target] if sid == sense)
    proposal_feats = {(d, c) for _, d, c in rows[proposal]}
    if decision.verdict == ACCEPTED:
        assert target_feats in proposal_feats
    elif decision.verdict == REJECTED:
        assert target_feats not in proposal_feats


@settings(max_examples=40, deadline=None)
@given(pair=lexgen.flat_lexicons(), proposal=lexgen.terms)
def test_multiword_always_passes_as_multiword(pair, proposal):
    rows, lexicon = pair
    target = sorted(rows)[0]
    sense = rows[target][0][0]
    spaced = proposal + " " + proposal
    decision = filter_synonym(lexicon, target, sense, spaced)
    assert decision.verdict == ACCEPTED_MULTIWORD


def test_merge_with_no_resources_is_empty(reference):
    result = merge_synonyms(reference, [])
    assert result.decisions == {}
    assert result.skipped == {}


def test_single_resource_roundtrip(reference):
    resource = SynonymResource(name="tiny", proposals={"ravir": frozenset({"charmer"})})
    result = merge_synonyms(reference, [resource])
    decisions = result.decisions[("ravir", 1)]
    assert len(decisions) == 1
    decision = next(iter(decisions))
    assert decision.verdict == ACCEPTED
    assert decision.sources == ("tiny",)
