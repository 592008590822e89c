"""Over-generation and per-sense filtering of suffixal derivative candidates.

Candidates come from decomposing wordlist surfaces against the suffix
inventory; the reference lexicon's per-sense suffix instructions then decide
which candidates belong to which sense.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Mapping

from senselex.errors import UnknownSenseError
from senselex.model import ReferenceLexicon, SenseEntry, sense_ids

KEPT = "kept"
REJECTED_NO_INSTRUCTION = "rejected-no-instruction"
REJECTED_OTHER_SENSE = "rejected-other-sense"
REJECTED_SHORT_RADICAL = "rejected-short-radical"

DERIVATIVE_VERDICTS = (
    KEPT,
    REJECTED_NO_INSTRUCTION,
    REJECTED_OTHER_SENSE,
    REJECTED_SHORT_RADICAL,
)


@dataclass(frozen=True)
class DerivativeCandidate:
    """One decomposition of a wordlist surface: surface = radical + suffix."""

    surface: str
    radical: str
    suffix: str


@dataclass(frozen=True)
class DerivativeDecision:
    candidate: DerivativeCandidate
    verdict: str
    assigned_sense: int | None = None


def grapheme_length(text: str) -> int:
    """Length in grapheme clusters: combining marks do not count."""
    return sum(1 for ch in text if not unicodedata.combining(ch))


def generate_candidates(
    lemma: str,
    wordlist: Iterable[str],
    suffix_inventory: Iterable[str],
    *,
    max_trim: int = 2,
) -> frozenset[DerivativeCandidate]:
    """All decompositions of wordlist surfaces compatible with ``lemma``.

    A surface w qualifies when it ends with an inventory suffix and the
    remaining radical equals the lemma itself or the lemma minus a trailing
    ending of at most ``max_trim`` characters.  Deliberately over-generates;
    the filter sorts the candidates out.
    """
    stems = {lemma[: len(lemma) - k] for k in range(0, min(max_trim, len(lemma)) + 1)}
    suffixes = [s for s in set(suffix_inventory) if s]
    out: set[DerivativeCandidate] = set()
    for word in wordlist:
        for suffix in suffixes:
            if not word.endswith(suffix):
                continue
            radical = word[: len(word) - len(suffix)]
            if radical in stems:
                out.add(DerivativeCandidate(word, radical, suffix))
    return frozenset(out)


def filter_derivative(
    entry_senses: Iterable[SenseEntry],
    candidate: DerivativeCandidate,
    target_sense: int,
    *,
    min_radical: int = 3,
) -> DerivativeDecision:
    """Decide one candidate for one sense of the candidate's lemma.

    Instructions are gathered across all senses of the entry, so a note like
    ``age:5`` recorded on sense 1 still claims the candidate for sense 5.
    Raises :class:`UnknownSenseError` when ``target_sense`` is not among the
    given senses.
    """
    entry_senses = tuple(entry_senses)
    if target_sense not in {entry.sense_id for entry in entry_senses}:
        raise UnknownSenseError(f"no sense {target_sense} among the given entry senses")
    if grapheme_length(candidate.radical) < min_radical:
        return DerivativeDecision(candidate, REJECTED_SHORT_RADICAL)
    claimed = {
        instruction.target_sense
        for entry in entry_senses
        for instruction in entry.suffix_instructions
        if instruction.suffix == candidate.suffix
    }
    if target_sense in claimed:
        return DerivativeDecision(candidate, KEPT, target_sense)
    if claimed:
        return DerivativeDecision(candidate, REJECTED_OTHER_SENSE)
    return DerivativeDecision(candidate, REJECTED_NO_INSTRUCTION)


def merge_derivatives(
    lexicon: ReferenceLexicon,
    wordlist: Iterable[str],
    *,
    min_radical: int = 3,
    max_trim: int = 2,
) -> Mapping[tuple[str, int], frozenset[DerivativeDecision]]:
    """Generate and filter candidates for every sense of every lemma."""
    wordlist = frozenset(wordlist)
    out: dict[tuple[str, int], frozenset[DerivativeDecision]] = {}
    for lemma, senses in lexicon.entries.items():
        candidates = generate_candidates(
            lemma, wordlist, lexicon.suffix_inventory, max_trim=max_trim
        )
        for sense_id in sense_ids(lexicon, lemma):
            out[(lemma, sense_id)] = frozenset(
                filter_derivative(senses, candidate, sense_id, min_radical=min_radical)
                for candidate in candidates
            )
    return out
