"""Utterances, rule-based sense picking, and per-sense enrichment sets.

Disambiguation collects every matching rule, keeps only the most specific
kind that matched (lexical beats generalized beats syntactic) and demands
unanimity inside that kind.  Anything less resolves to nothing: an
unresolved word gets an empty enrichment set, never a union over senses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol

from senselex.errors import Diagnostic, ValidationError, WARNING
from senselex.ingest import SynsetGraph, DiagnosticCollector, iter_lines, normalize_term, parse_dep_text
from senselex.model import DependencyTriple, MergedLexicon, canon_code
from senselex.rules import CLASS_SLOT, DisambiguationRule, GENERALIZED, LEXICAL, SYNTACTIC
from senselex.synonyms import ACCEPTED_MULTIWORD
from senselex.taxonomy import taxonomy_neighbors

UNRESOLVED = "unresolved"

DEFAULT_RELATIONS = frozenset({"hypernym", "hyponym"})


@dataclass(frozen=True)
class Utterance:
    """Lemmatized tokens plus observed dependencies and subcat frames."""

    tokens: tuple[str, ...]
    deps: tuple[DependencyTriple, ...] = ()
    frames: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


def parse_utterances(
    lines: Iterable[str] | str,
    *,
    source: str = "utterances",
    warnings: list[Diagnostic] | None = None,
) -> tuple[Utterance, ...]:
    """Parse blank-line separated utterance blocks.

    ``T`` lines list tokens, ``D`` lines carry one ``REL(head,dep)`` each,
    ``F`` lines attach one subcat frame to one lemma.  Dependency endpoints
    must appear among the block's tokens.
    """
    diag = DiagnosticCollector(source)
    utterances: list[Utterance] = []
    tokens: list[str] = []
    deps: list[tuple[int, DependencyTriple]] = []
    frames: dict[str, list[str]] = {}
    frame_lines: list[tuple[int, str]] = []

    def close_block() -> None:
        nonlocal tokens, deps, frames, frame_lines
        if tokens or deps or frames:
            for lineno, dep in deps:
                for endpoint in (dep.head, dep.dependent):
                    if endpoint not in tokens:
                        diag.error(
                            f"dependency endpoint {endpoint!r} is not among the tokens", lineno
                        )
            for lineno, lemma in frame_lines:
                if lemma not in tokens:
                    diag.warning(f"frame for {lemma!r}, which is not among the tokens", lineno)
            utterances.append(
                Utterance(
                    tokens=tuple(tokens),
                    deps=tuple(dep for _, dep in deps),
                    frames={lemma: tuple(fs) for lemma, fs in frames.items()},
                )
            )
        tokens, deps, frames, frame_lines = [], [], {}, []

    for lineno, line in iter_lines(lines):
        if not line.strip():
            close_block()
            continue
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        tag = fields[0].strip()
        if tag == "T":
            for item in fields[1:]:
                term = normalize_term(item)
                if term:
                    tokens.append(term)
        elif tag == "D":
            if len(fields) != 2:
                diag.error(f"expected 2 tab-separated fields on a D line, got {len(fields)}", lineno)
                continue
            dep = parse_dep_text(fields[1].strip())
            if dep is None:
                diag.error(f"malformed dependency {fields[1].strip()!r}", lineno)
                continue
            deps.append((lineno, dep))
        elif tag == "F":
            if len(fields) != 3:
                diag.error(f"expected 3 tab-separated fields on an F line, got {len(fields)}", lineno)
                continue
            lemma = normalize_term(fields[1])
            frame = fields[2].strip()
            if not lemma or not frame:
                diag.error("empty lemma or frame on an F line", lineno)
                continue
            bucket = frames.setdefault(lemma, [])
            if frame not in bucket:
                bucket.append(frame)
            frame_lines.append((lineno, lemma))
        else:
            diag.error(f"unknown record tag {tag!r} (expected T, D or F)", lineno)
    close_block()
    diag.finish(warnings)
    return tuple(utterances)


class _HasClasses(Protocol):
    def classes_of(self, lemma: str) -> frozenset[str]: ...


def _rule_matches(rule: DisambiguationRule, utterance: Utterance, classes: _HasClasses) -> bool:
    if rule.kind == SYNTACTIC:
        return rule.frame in utterance.frames.get(rule.target_lemma, ())
    if rule.kind == LEXICAL:
        probe = DependencyTriple(rule.relation, rule.head, rule.dependent)
        return probe in utterance.deps
    if rule.kind == GENERALIZED:
        slot_on_dependent = rule.dependent is not None and rule.dependent.startswith(CLASS_SLOT)
        slot = rule.dependent if slot_on_dependent else rule.head
        wanted = canon_code(slot[len(CLASS_SLOT):])
        for dep in utterance.deps:
            if dep.relation != rule.relation:
                continue
            if slot_on_dependent:
                if dep.head == rule.head and wanted in classes.classes_of(dep.dependent):
                    return True
            else:
                if dep.dependent == rule.dependent and wanted in classes.classes_of(dep.head):
                    return True
        return False
    raise ValueError(f"unknown rule kind {rule.kind!r}")


def disambiguate(
    rules: Iterable[DisambiguationRule],
    utterance: Utterance,
    lemma: str,
    lexicon: _HasClasses,
) -> int | None:
    """Sense id the rules agree on, or None when they abstain.

    ``lexicon`` only needs to answer ``classes_of(lemma)``; both the
    reference lexicon and a merged lexicon do.  Raises :class:`ValueError`
    when ``lemma`` is not among the utterance's tokens.
    """
    if lemma not in utterance.tokens:
        raise ValueError(f"lemma {lemma!r} is not among the utterance's tokens")
    votes: dict[str, set[int]] = {LEXICAL: set(), GENERALIZED: set(), SYNTACTIC: set()}
    for rule in rules:
        if rule.target_lemma != lemma:
            continue
        if _rule_matches(rule, utterance, lexicon):
            votes[rule.kind].add(rule.sense)
    for kind in (LEXICAL, GENERALIZED, SYNTACTIC):
        if votes[kind]:
            if len(votes[kind]) == 1:
                return next(iter(votes[kind]))
            return None
    return None


@dataclass(frozen=True)
class EnrichOptions:
    include_multiword: bool = True
    taxonomy_relations: frozenset[str] = DEFAULT_RELATIONS
    taxonomy_depth: int = 1


@dataclass(frozen=True)
class EnrichmentSet:
    """What one resolved (or unresolved) word contributes to an utterance.

    Items are (text, provenance) pairs; ``sense_id`` None means unresolved,
    and an unresolved set is empty by construction.
    """

    lemma: str
    sense_id: int | None
    synonyms: frozenset[tuple[str, str]] = frozenset()
    derivatives: frozenset[tuple[str, str]] = frozenset()
    taxonomy_words: frozenset[tuple[str, str]] = frozenset()

    @property
    def resolved(self) -> bool:
        return self.sense_id is not None


def unresolved_set(lemma: str) -> EnrichmentSet:
    return EnrichmentSet(lemma, None)


def _verdict_of(tag: str) -> str:
    return tag.split(":", 1)[0]


def enrich(
    merged: MergedLexicon,
    lemma: str,
    sense: int,
    graph: SynsetGraph | None = None,
    options: EnrichOptions = EnrichOptions(),
) -> EnrichmentSet:
    """Enrichment set of one resolved sense, drawn only from that sense's record.

    Raises :class:`UnknownSenseError` for a (lemma, sense) the merged lexicon
    does not hold.
    """
    record = merged.record_for(lemma, sense)
    synonyms = frozenset(
        (text, tag)
        for text, tag in record.synonyms
        if text != lemma
        and (options.include_multiword or _verdict_of(tag) != ACCEPTED_MULTIWORD)
    )
    derivatives = frozenset(
        (surface, tag) for surface, _, tag in record.derivatives if surface != lemma
    )
    taxonomy: set[tuple[str, str]] = set()
    if record.synset is not None and graph is not None:
        for relation in sorted(options.taxonomy_relations):
            for word in taxonomy_neighbors(
                graph, record.synset, relation, options.taxonomy_depth
            ):
                if word != lemma:
                    taxonomy.add((word, f"taxonomy:{relation}:{record.synset}"))
    return EnrichmentSet(
        lemma=lemma,
        sense_id=sense,
        synonyms=synonyms,
        derivatives=derivatives,
        taxonomy_words=frozenset(taxonomy),
    )


def enrich_utterance(
    merged: MergedLexicon,
    utterance: Utterance,
    graph: SynsetGraph | None = None,
    options: EnrichOptions = EnrichOptions(),
) -> tuple[EnrichmentSet, ...]:
    """One enrichment set per distinct known token, in order of appearance."""
    out: list[EnrichmentSet] = []
    seen: set[str] = set()
    for lemma in utterance.tokens:
        if lemma in seen:
            continue
        seen.add(lemma)
        if not merged.senses_of(lemma):
            continue
        sense = disambiguate(merged.rules_for(lemma), utterance, lemma, merged)
        if sense is None:
            out.append(unresolved_set(lemma))
        else:
            out.append(enrich(merged, lemma, sense, graph, options))
    return tuple(out)
