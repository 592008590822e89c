"""Extraction of sense disambiguation rules from reference lexicon entries.

Three kinds, from most to least specific: lexical rules replay an example
dependency verbatim; generalized rules widen the non-target argument to a
semantic class; syntactic rules rely on a subcat frame unique to one sense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from senselex.errors import Diagnostic, WARNING
from senselex.model import ReferenceLexicon, SenseEntry, canon_code

LEXICAL = "lexical"
GENERALIZED = "generalized"
SYNTACTIC = "syntactic"

RULE_KINDS = (LEXICAL, GENERALIZED, SYNTACTIC)

CLASS_SLOT = "class:"
SUBCAT_PREFIX = "subcat:"


@dataclass(frozen=True)
class DisambiguationRule:
    """One pattern that, when it matches an utterance, votes for one sense.

    Dependency-shaped rules fill ``relation``/``head``/``dependent`` (a class
    slot is written ``class:CODE``); syntactic rules fill ``frame``.  A
    generalized rule remembers the lexical pattern it came from.
    """

    target_lemma: str
    kind: str
    sense: int
    relation: str | None = None
    head: str | None = None
    dependent: str | None = None
    frame: str | None = None
    derived_from: str | None = None

    def pattern(self) -> str:
        if self.kind == SYNTACTIC:
            return f"{SUBCAT_PREFIX}{self.frame}"
        return f"{self.relation}({self.head},{self.dependent})"


def extract_lexical_rules(
    entry: SenseEntry, *, warnings: list[Diagnostic] | None = None
) -> list[DisambiguationRule]:
    """One rule per example dependency that mentions the lemma exactly once."""
    rules: list[DisambiguationRule] = []
    for dep in entry.example_deps:
        mentions = int(dep.head == entry.lemma) + int(dep.dependent == entry.lemma)
        if mentions != 1:
            if warnings is not None:
                why = "does not mention" if mentions == 0 else "mentions twice"
                warnings.append(
                    Diagnostic(
                        f"example {dep.render()} on {entry.lemma!r} sense "
                        f"{entry.sense_id} {why} the lemma; skipped",
                        severity=WARNING,
                        source="rules",
                    )
                )
            continue
        rules.append(
            DisambiguationRule(
                target_lemma=entry.lemma,
                kind=LEXICAL,
                sense=entry.sense_id,
                relation=dep.relation,
                head=dep.head,
                dependent=dep.dependent,
            )
        )
    return rules


def generalize_rules(
    rules: Iterable[DisambiguationRule], lexicon: ReferenceLexicon
) -> list[DisambiguationRule]:
    """Widen each lexical rule's other argument to the classes of its senses.

    Arguments absent from the lexicon generalize to nothing.  Duplicate
    generalized patterns for the same sense collapse to one rule.
    """
    out: list[DisambiguationRule] = []
    seen: set[tuple[str, str | None, str | None, str | None, int]] = set()
    for rule in rules:
        if rule.kind != LEXICAL:
            raise ValueError(f"can only generalize lexical rules, got {rule.kind!r}")
        slot_on_dependent = rule.head == rule.target_lemma
        argument = rule.dependent if slot_on_dependent else rule.head
        classes: list[str] = []
        canon_seen: set[str] = set()
        for sense in lexicon.entries.get(argument, ()):
            code = sense.features.class_code
            if canon_code(code) not in canon_seen:
                canon_seen.add(canon_code(code))
                classes.append(code)
        for code in classes:
            slot = f"{CLASS_SLOT}{code}"
            head = rule.head if slot_on_dependent else slot
            dependent = slot if slot_on_dependent else rule.dependent
            generalized = DisambiguationRule(
                target_lemma=rule.target_lemma,
                kind=GENERALIZED,
                sense=rule.sense,
                relation=rule.relation,
                head=head,
                dependent=dependent,
                derived_from=rule.pattern(),
            )
            key = (generalized.target_lemma, generalized.relation, generalized.head,
                   generalized.dependent, generalized.sense)
            if key not in seen:
                seen.add(key)
                out.append(generalized)
    return out


def extract_syntactic_rules(
    entry: SenseEntry, siblings: Iterable[SenseEntry]
) -> list[DisambiguationRule]:
    """One rule per subcat frame of ``entry`` that no sibling sense shares."""
    others = [
        sibling
        for sibling in siblings
        if (sibling.pos, sibling.sense_id) != (entry.pos, entry.sense_id)
    ]
    shared = {frame for sibling in others for frame in sibling.subcat_frames}
    return [
        DisambiguationRule(
            target_lemma=entry.lemma, kind=SYNTACTIC, sense=entry.sense_id, frame=frame
        )
        for frame in entry.subcat_frames
        if frame not in shared
    ]


@dataclass(frozen=True)
class RuleExtractionResult:
    """Rules grouped by the (lemma, pos, sense) entry that produced them."""

    rules_by_key: Mapping[tuple[str, str, int], tuple[DisambiguationRule, ...]]
    diagnostics: tuple[Diagnostic, ...] = ()

    def all_rules(self) -> tuple[DisambiguationRule, ...]:
        out: list[DisambiguationRule] = []
        for rules in self.rules_by_key.values():
            out.extend(rules)
        return tuple(out)


def extract_rules(lexicon: ReferenceLexicon) -> RuleExtractionResult:
    """Run all three extractors over the whole lexicon.

    Lexical rules whose identical patterns point at different senses of the
    same lemma contradict each other and are all dropped with a diagnostic;
    exact duplicates collapse to the first occurrence.
    """
    diagnostics: list[Diagnostic] = []
    rules_by_key: dict[tuple[str, str, int], tuple[DisambiguationRule, ...]] = {}
    for lemma, senses in lexicon.entries.items():
        lexical_by_key: dict[tuple[str, str, int], list[DisambiguationRule]] = {}
        pattern_sense: dict[str, int] = {}
        contradictory: set[str] = set()
        for entry in senses:
            found = extract_lexical_rules(entry, warnings=diagnostics)
            lexical_by_key[(lemma, entry.pos, entry.sense_id)] = found
            for rule in found:
                pattern = rule.pattern()
                if pattern in pattern_sense and pattern_sense[pattern] != rule.sense:
                    contradictory.add(pattern)
                else:
                    pattern_sense.setdefault(pattern, rule.sense)
        for pattern in sorted(contradictory):
            diagnostics.append(
                Diagnostic(
                    f"lexical pattern {pattern} points at different senses of "
                    f"{lemma!r}; all occurrences dropped",
                    severity=WARNING,
                    source="rules",
                )
            )
        emitted_patterns: set[str] = set()
        for entry in senses:
            key = (lemma, entry.pos, entry.sense_id)
            surviving: list[DisambiguationRule] = []
            for rule in lexical_by_key[key]:
                pattern = rule.pattern()
                if pattern in contradictory or pattern in emitted_patterns:
                    continue
                emitted_patterns.add(pattern)
                surviving.append(rule)
            generalized = generalize_rules(surviving, lexicon)
            syntactic = extract_syntactic_rules(entry, senses)
            rules_by_key[key] = tuple(surviving + generalized + syntactic)
    return RuleExtractionResult(rules_by_key=rules_by_key, diagnostics=tuple(diagnostics))


def rule_sort_key(rule: DisambiguationRule) -> tuple[int, str, int, str]:
    """Stable ordering: kind precedence, then pattern, sense and origin."""
    return (RULE_KINDS.index(rule.kind), rule.pattern(), rule.sense, rule.derived_from or "")


def rule_from_pattern(
    target_lemma: str, kind: str, pattern: str, sense: int, derived_from: str | None = None
) -> DisambiguationRule:
    """Rebuild a rule from its serialized pattern.

    Raises ValueError when the kind is unknown or the pattern does not fit it.
    """
    from senselex.ingest import parse_dep_text

    if kind not in RULE_KINDS:
        raise ValueError(f"unknown rule kind {kind!r}")
    if kind == SYNTACTIC:
        if not pattern.startswith(SUBCAT_PREFIX) or pattern == SUBCAT_PREFIX:
            raise ValueError(f"syntactic pattern {pattern!r} must look like subcat:FRAME")
        return DisambiguationRule(
            target_lemma=target_lemma,
            kind=SYNTACTIC,
            sense=sense,
            frame=pattern[len(SUBCAT_PREFIX):],
            derived_from=derived_from,
        )
    dep = parse_dep_text(pattern)
    if dep is None:
        raise ValueError(f"dependency pattern {pattern!r} must look like REL(head,dep)")
    has_slot = dep.head.startswith(CLASS_SLOT) or dep.dependent.startswith(CLASS_SLOT)
    if kind == GENERALIZED and not has_slot:
        raise ValueError(f"generalized pattern {pattern!r} carries no class slot")
    if kind == LEXICAL and has_slot:
        raise ValueError(f"lexical pattern {pattern!r} must not carry a class slot")
    return DisambiguationRule(
        target_lemma=target_lemma,
        kind=kind,
        sense=sense,
        relation=dep.relation,
        head=dep.head,
        dependent=dep.dependent,
        derived_from=derived_from,
    )
