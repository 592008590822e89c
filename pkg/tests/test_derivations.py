import random

import pytest
from hypothesis import given, settings, strategies as st

from oracle_derivations import derivative_decisions
from senselex.derivations import (
    KEPT,
    REJECTED_NO_INSTRUCTION,
    REJECTED_OTHER_SENSE,
    REJECTED_SHORT_RADICAL,
    DerivativeCandidate,
    filter_derivative,
    generate_candidates,
    grapheme_length,
    merge_derivatives,
)
from senselex.errors import UnknownSenseError
from senselex.model import (
    ReferenceLexicon,
    SemanticFeatures,
    SenseEntry,
    SuffixInstruction,
)


def test_grapheme_length_counts_clusters_not_code_points():
    assert grapheme_length("coup") == 4
    assert grapheme_length("cœur") == 4
    assert grapheme_length("été") == 3
    assert grapheme_length("été") == 3
    assert grapheme_length("") == 0


# Frozen from the exhaustive oracle over tests/data: every candidate the
# wordlist produces for couper, with its verdict per sense.
COUPER_TABLE = [
    ("coupure", "coup", "ure", {1: KEPT, 5: REJECTED_OTHER_SENSE}),
    ("coupeur", "coup", "eur", {1: KEPT, 5: REJECTED_OTHER_SENSE}),
    ("coupant", "coup", "ant", {1: KEPT, 5: REJECTED_OTHER_SENSE}),
    ("coupage", "coup", "age", {1: REJECTED_OTHER_SENSE, 5: KEPT}),
    ("coupable", "coup", "able", {1: REJECTED_NO_INSTRUCTION, 5: REJECTED_NO_INSTRUCTION}),
]


def test_couper_candidates_match_frozen_table(reference, wordlist):
    candidates = generate_candidates("couper", wordlist, reference.suffix_inventory)
    assert {(c.surface, c.radical, c.suffix) for c in candidates} == {
        (surface, radical, suffix) for surface, radical, suffix, _ in COUPER_TABLE
    }


@pytest.mark.parametrize("surface,radical,suffix,verdicts", COUPER_TABLE)
def test_couper_verdicts_match_frozen_table(reference, surface, radical, suffix, verdicts):
    candidate = DerivativeCandidate(surface, radical, suffix)
    for sense, expected in verdicts.items():
        decision = filter_derivative(reference.entries["couper"], candidate, sense)
        assert decision.verdict == expected, (surface, sense)


def test_instruction_gathers_across_senses(reference):
    # voler's eur instruction sits on sense 2's row; sense 1 must still see it
    candidate = DerivativeCandidate("voleur", "vol", "eur")
    sense1 = filter_derivative(reference.entries["voler"], candidate, 1)
    sense2 = filter_derivative(reference.entries["voler"], candidate, 2)
    assert sense1.verdict == REJECTED_OTHER_SENSE
    assert sense2.verdict == KEPT
    assert sense2.assigned_sense == 2


def test_short_radical_outranks_missing_instruction(reference, wordlist):
    decisions = merge_derivatives(reference, wordlist)
    viable = {
        decision.verdict
        for key in (("vie", 1), ("vin", 1))
        for decision in decisions[key]
        if decision.candidate.surface == "viable"
    }
    assert viable == {REJECTED_SHORT_RADICAL}


def test_short_radical_outranks_kept():
    entry = SenseEntry(
        lemma="lu",
        pos="v",
        sense_id=1,
        sense_label="read",
        features=SemanticFeatures("GEN", "A1"),
        suffix_instructions=(SuffixInstruction("eur", 1),),
    )
    candidate = DerivativeCandidate("lueur", "lu", "eur")
    decision = filter_derivative((entry,), candidate, 1)
    assert decision.verdict == REJECTED_SHORT_RADICAL


def test_min_radical_is_tunable():
    entry = SenseEntry(
        lemma="lu",
        pos="v",
        sense_id=1,
        sense_label="read",
        features=SemanticFeatures("GEN", "A1"),
        suffix_instructions=(SuffixInstruction("eur", 1),),
    )
    candidate = DerivativeCandidate("lueur", "lu", "eur")
    decision = filter_derivative((entry,), candidate, 1, min_radical=2)
    assert decision.verdict == KEPT


def test_trim_zero_only_matches_the_exact_lemma(reference, wordlist):
    trimmed = generate_candidates("couper", wordlist, reference.suffix_inventory, max_trim=0)
    assert trimmed == frozenset()
    wide = generate_candidates("couper", wordlist, reference.suffix_inventory, max_trim=2)
    assert len(wide) == 5


def test_unknown_target_sense_raises(reference):
    candidate = DerivativeCandidate("coupure", "coup", "ure")
    with pytest.raises(UnknownSenseError):
        filter_derivative(reference.entries["couper"], candidate, 3)


def test_merge_keys_cover_every_sense_pair(reference, wordlist):
    decisions = merge_derivatives(reference, wordlist)
    assert ("couper", 1) in decisions
    assert ("couper", 5) in decisions
    assert decisions[("filou", 1)] == frozenset()
    total = sum(len(bucket) for bucket in decisions.values())
    assert total == 16


def _random_case(rng: random.Random):
    suffixes = ("age", "ant", "eur", "ure", "erie")
    lemma = "".join(rng.choice("abcdef") for _ in range(rng.randint(2, 7)))
    sense_ids = sorted(rng.sample(range(1, 8), rng.randint(1, 3)))
    rows = []
    entries = []
    for sid in sense_ids:
        instructions = [
            (rng.choice(suffixes), rng.choice(sense_ids))
            for _ in range(rng.randint(0, 2))
        ]
        rows.append((sid, instructions))
        entries.append(
            SenseEntry(
                lemma=lemma,
                pos="v",
                sense_id=sid,
                sense_label="x",
                features=SemanticFeatures("GEN", "A1"),
                suffix_instructions=tuple(
                    SuffixInstruction(s, t) for s, t in dict.fromkeys(instructions)
                ),
            )
        )
    words = set()
    for _ in range(rng.randint(1, 12)):
        stem = lemma[: len(lemma) - rng.randint(0, 3)] if rng.random() < 0.7 else "zz"
        words.add(stem + rng.choice(suffixes + ("", "x")))
    return lemma, rows, entries, frozenset(words), suffixes, rng.choice(sense_ids)


def test_random_cases_agree_with_oracle():
    rng = random.Random(20260822)
    lexicon_stub = lambda entries: ReferenceLexicon(entries={entries[0].lemma: tuple(entries)})
    for _ in range(150):
        lemma, rows, entries, words, suffixes, target = _random_case(rng)
        expected = derivative_decisions(lemma, rows, sorted(words), suffixes, target)
        candidates = generate_candidates(lemma, words, frozenset(suffixes))
        got = {}
        for candidate in candidates:
            decision = filter_derivative(tuple(entries), candidate, target)
            got[(candidate.surface, candidate.radical, candidate.suffix)] = decision.verdict
        assert got == expected


@settings(max_examples=60, deadline=None)
@given(
    lemma=st.text(alphabet="abcde", min_size=1, max_size=6),
    words=st.frozensets(st.text(alphabet="abcdeur", min_size=1, max_size=9), max_size=8),
)
def test_candidates_always_decompose_cleanly(lemma, words):
    suffixes = frozenset({"eur", "ure", "r"})
    for candidate in generate_candidates(lemma, words, suffixes):
        assert candidate.radical + candidate.suffix == candidate.surface
        assert lemma.startswith(candidate.radical)
        assert len(lemma) - len(candidate.radical) <= 2
        assert candidate.surface in words
