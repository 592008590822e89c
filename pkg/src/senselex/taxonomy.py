"""Alignment of lexicon senses onto synsets by strict majority overlap."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from senselex.errors import Diagnostic, UnknownSynsetError, WARNING
from senselex.ingest import SynsetGraph, SYNSET_RELATIONS
from senselex.model import ReferenceLexicon, sense_ids
from senselex.synonyms import ACCEPTED, SynonymDecision, SynonymMergeResult

MATCHED = "matched"
NO_SYNSET = "no-synset"
NO_MAJORITY = "no-majority"
AMBIGUOUS = "ambiguous"

ALIGNMENT_STATUSES = (MATCHED, NO_SYNSET, NO_MAJORITY, AMBIGUOUS)


@dataclass(frozen=True)
class AlignmentResult:
    lemma: str
    sense_id: int
    synset: str | None
    overlap: int
    synonym_count: int
    status: str


def align_sense(
    word: str, sense_id: int, sense_synonyms: Iterable[str], graph: SynsetGraph
) -> AlignmentResult:
    """Match one sense to the synset holding a strict majority of its synonyms.

    Candidate synsets are those containing ``word``; overlap counts the
    sense's synonyms among the other members.  A unique maximal overlap with
    2*overlap > synonym count wins; a tie at the top is ambiguous.
    """
    synonyms = frozenset(sense_synonyms)
    count = len(synonyms)
    candidates = sorted(
        (synset for synset in graph.synsets.values() if word in synset.members),
        key=lambda synset: synset.id,
    )
    if not candidates:
        return AlignmentResult(word, sense_id, None, 0, count, NO_SYNSET)
    overlaps = {synset.id: len(synonyms & (synset.members - {word})) for synset in candidates}
    best = max(overlaps.values())
    majority = [sid for sid, overlap in overlaps.items() if 2 * overlap > count]
    if not majority:
        return AlignmentResult(word, sense_id, None, best, count, NO_MAJORITY)
    top = [sid for sid in majority if overlaps[sid] == best]
    if len(top) == 1:
        return AlignmentResult(word, sense_id, top[0], best, count, MATCHED)
    return AlignmentResult(word, sense_id, None, best, count, AMBIGUOUS)


def taxonomy_neighbors(
    graph: SynsetGraph, synset_id: str, relation: str, depth: int
) -> frozenset[str]:
    """Members of synsets within ``depth`` edges of one relation, minus the start's."""
    if synset_id not in graph.synsets:
        raise UnknownSynsetError(f"unknown synset id {synset_id!r}")
    if relation not in SYNSET_RELATIONS:
        raise ValueError(f"relation must be one of {', '.join(SYNSET_RELATIONS)}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    adjacency = graph.successors(relation)
    seen = {synset_id}
    frontier = {synset_id}
    reached: set[str] = set()
    for _ in range(depth):
        frontier = {
            target for sid in frontier for target in adjacency.get(sid, ())
        } - seen
        if not frontier:
            break
        seen |= frontier
        reached |= frontier
    members: set[str] = set()
    for sid in reached:
        members |= graph.synsets[sid].members
    return frozenset(members - graph.synsets[synset_id].members)


def _accepted_from(
    decisions: frozenset[SynonymDecision], resource: str | None
) -> frozenset[str]:
    return frozenset(
        d.proposal
        for d in decisions
        if d.verdict == ACCEPTED and (resource is None or resource in d.sources)
    )


def align_lexicon(
    lexicon: ReferenceLexicon,
    merged_synonyms: SynonymMergeResult | Mapping[tuple[str, int], frozenset[SynonymDecision]],
    graph: SynsetGraph,
    *,
    synset_resource: str | None = None,
    warnings: list[Diagnostic] | None = None,
) -> Mapping[tuple[str, int], AlignmentResult]:
    """Align every sense, then keep matched synsets distinct within a lemma.

    Only synonyms accepted from ``synset_resource`` feed the overlap (all
    accepted synonyms when it is None).  When two senses of one lemma match
    the same synset, the lower-overlap sense is demoted to ambiguous.
    """
    decisions = getattr(merged_synonyms, "decisions", merged_synonyms)
    results: dict[tuple[str, int], AlignmentResult] = {}
    for lemma in lexicon.entries:
        for sense_id in sense_ids(lexicon, lemma):
            synonyms = _accepted_from(
                decisions.get((lemma, sense_id), frozenset()), synset_resource
            )
            results[(lemma, sense_id)] = align_sense(lemma, sense_id, synonyms, graph)

    by_lemma_synset: dict[tuple[str, str], list[tuple[str, int]]] = {}
    for key, result in results.items():
        if result.status == MATCHED and result.synset is not None:
            by_lemma_synset.setdefault((result.lemma, result.synset), []).append(key)
    for (lemma, synset), keys in sorted(by_lemma_synset.items()):
        if len(keys) < 2:
            continue
        keys.sort(key=lambda key: (-results[key].overlap, key[1]))
        for key in keys[1:]:
            demoted = results[key]
            results[key] = AlignmentResult(
                demoted.lemma, demoted.sense_id, None, demoted.overlap,
                demoted.synonym_count, AMBIGUOUS,
            )
            if warnings is not None:
                warnings.append(
                    Diagnostic(
                        f"sense {demoted.sense_id} of {lemma!r} also matched synset "
                        f"{synset!r}; demoted to ambiguous",
                        severity=WARNING,
                        source="alignment",
                    )
                )
    return results
