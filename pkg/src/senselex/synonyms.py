"""Filtering of raw synonym proposals onto individual senses.

A proposal is accepted for a target sense when at least one sense of the
proposal's own entry carries exactly the same (domain, class) features.
Multiword proposals and single words absent from the lexicon cannot be
filtered that way; they are kept but flagged ``accepted-multiword``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from senselex.ingest import SynonymResource
from senselex.model import ReferenceLexicon, features_of, lookup, sense_ids

ACCEPTED = "accepted"
ACCEPTED_MULTIWORD = "accepted-multiword"
REJECTED = "rejected"

SYNONYM_VERDICTS = (ACCEPTED, ACCEPTED_MULTIWORD, REJECTED)


@dataclass(frozen=True)
class SynonymDecision:
    """Verdict on one proposal for one (lemma, sense) target."""

    lemma: str
    sense_id: int
    proposal: str
    verdict: str
    matching_proposal_senses: tuple[int, ...] = ()
    sources: tuple[str, ...] = ()


def filter_synonym(
    lexicon: ReferenceLexicon,
    target_lemma: str,
    target_sense: int,
    proposal: str,
    *,
    sources: Iterable[str] = (),
) -> SynonymDecision:
    """Decide one proposal against one sense of the target lemma.

    Raises :class:`UnknownSenseError` when the target sense does not exist.
    """
    target_features = features_of(lexicon, target_lemma, target_sense)
    sources = tuple(sources)
    if " " in proposal:
        return SynonymDecision(
            target_lemma, target_sense, proposal, ACCEPTED_MULTIWORD, (), sources
        )
    proposal_senses = lookup(lexicon, proposal)
    if not proposal_senses:
        return SynonymDecision(
            target_lemma, target_sense, proposal, ACCEPTED_MULTIWORD, (), sources
        )
    matched: list[int] = []
    for sense in proposal_senses:
        if sense.features.matches(target_features) and sense.sense_id not in matched:
            matched.append(sense.sense_id)
    if matched:
        return SynonymDecision(
            target_lemma, target_sense, proposal, ACCEPTED, tuple(matched), sources
        )
    return SynonymDecision(target_lemma, target_sense, proposal, REJECTED, (), sources)


@dataclass(frozen=True)
class SynonymMergeResult:
    """Per-sense decisions plus the lemmas no resource could attach to."""

    decisions: Mapping[tuple[str, int], frozenset[SynonymDecision]]
    skipped: Mapping[str, tuple[str, ...]]

    @property
    def skipped_lemmas(self) -> tuple[str, ...]:
        return tuple(sorted(self.skipped))


def merge_synonyms(
    lexicon: ReferenceLexicon, resources: Iterable[SynonymResource]
) -> SynonymMergeResult:
    """Run the filter over every sense of every proposed-for lemma.

    A proposal appearing in several resources yields one decision whose
    ``sources`` lists them all.  Proposals for lemmas the lexicon does not
    know end up in ``skipped``.
    """
    gathered: dict[str, dict[str, set[str]]] = {}
    skipped: dict[str, set[str]] = {}
    for resource in resources:
        for lemma, proposals in resource.proposals.items():
            if lemma not in lexicon.entries:
                skipped.setdefault(lemma, set()).add(resource.name)
                continue
            bucket = gathered.setdefault(lemma, {})
            for proposal in proposals:
                bucket.setdefault(proposal, set()).add(resource.name)

    decisions: dict[tuple[str, int], frozenset[SynonymDecision]] = {}
    for lemma in sorted(gathered):
        proposals = gathered[lemma]
        for sense_id in sense_ids(lexicon, lemma):
            bucket = {
                filter_synonym(
                    lexicon, lemma, sense_id, proposal, sources=tuple(sorted(proposals[proposal]))
                )
                for proposal in proposals
            }
            decisions[(lemma, sense_id)] = frozenset(bucket)
    return SynonymMergeResult(
        decisions=decisions,
        skipped={lemma: tuple(sorted(names)) for lemma, names in sorted(skipped.items())},
    )
