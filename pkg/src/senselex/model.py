"""Core data model: reference lexicon senses and the merged records built from them.

Every string is expected to be NFC-normalized before it reaches these types;
the parsers in :mod:`senselex.ingest` take care of that.  Lemmas keep their
case.  Code tokens (domain, class, relation, suffix) are compared
case-insensitively through :func:`canon_code`.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Mapping, TYPE_CHECKING

from senselex.errors import UnknownSenseError

if TYPE_CHECKING:
    from senselex.rules import DisambiguationRule


def nfc(text: str) -> str:
    """Normalize a string to NFC."""
    return unicodedata.normalize("NFC", text)


def canon_code(token: str) -> str:
    """Canonical form of a code token for comparison: NFC plus casefold."""
    return unicodedata.normalize("NFC", token).casefold()


@dataclass(frozen=True)
class SemanticFeatures:
    """The (domain, class) pair attached to one sense."""

    domain_code: str
    class_code: str

    def matches(self, other: "SemanticFeatures") -> bool:
        """True when both codes are equal up to case."""
        return (
            canon_code(self.domain_code) == canon_code(other.domain_code)
            and canon_code(self.class_code) == canon_code(other.class_code)
        )


@dataclass(frozen=True)
class SuffixInstruction:
    """One 'this suffix derives material for that sense' note on a sense."""

    suffix: str
    target_sense: int


@dataclass(frozen=True)
class DependencyTriple:
    """A labelled dependency between two lemmas."""

    relation: str
    head: str
    dependent: str

    def render(self) -> str:
        return f"{self.relation}({self.head},{self.dependent})"


@dataclass(frozen=True)
class SenseEntry:
    """One sense of one headword of the reference lexicon."""

    lemma: str
    pos: str
    sense_id: int
    sense_label: str
    features: SemanticFeatures
    suffix_instructions: tuple[SuffixInstruction, ...] = ()
    example_deps: tuple[DependencyTriple, ...] = ()
    subcat_frames: tuple[str, ...] = ()
    base_synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class ReferenceLexicon:
    """The sense-indexed reference dictionary all merging hangs off.

    ``entries`` maps a lemma to its senses in file order; homograph entries
    with different parts of speech all live in that one list.  The four
    inventories hold the code tokens declared by the source file's header.
    """

    entries: Mapping[str, tuple[SenseEntry, ...]]
    domain_inventory: frozenset[str] = frozenset()
    class_inventory: frozenset[str] = frozenset()
    relation_inventory: frozenset[str] = frozenset()
    suffix_inventory: frozenset[str] = frozenset()

    def classes_of(self, lemma: str) -> frozenset[str]:
        """Canonical class codes across all senses of ``lemma``."""
        return frozenset(
            canon_code(entry.features.class_code) for entry in self.entries.get(lemma, ())
        )


def lookup(lexicon: ReferenceLexicon, lemma: str) -> tuple[SenseEntry, ...]:
    """All senses of ``lemma`` across parts of speech, in file order.

    Returns an empty tuple when the lemma is absent.
    """
    return tuple(lexicon.entries.get(lemma, ()))


def features_of(lexicon: ReferenceLexicon, lemma: str, sense_id: int) -> SemanticFeatures:
    """Features of the first entry of ``lemma`` carrying ``sense_id``.

    Raises :class:`UnknownSenseError` when no entry of the lemma has that
    sense id.
    """
    for entry in lexicon.entries.get(lemma, ()):
        if entry.sense_id == sense_id:
            return entry.features
    raise UnknownSenseError(f"no sense {sense_id} for lemma {lemma!r}")


def sense_ids(lexicon: ReferenceLexicon, lemma: str) -> tuple[int, ...]:
    """Distinct sense ids of ``lemma`` in order of first appearance."""
    seen: list[int] = []
    for entry in lexicon.entries.get(lemma, ()):
        if entry.sense_id not in seen:
            seen.append(entry.sense_id)
    return tuple(seen)


@dataclass(frozen=True)
class MergedSenseRecord:
    """Everything the merge attached to one (lemma, pos, sense).

    ``synonyms`` holds (text, provenance) pairs, ``derivatives`` holds
    (surface, suffix, provenance) triples.  Provenance tags name the source
    resource and the decision that admitted the item, e.g.
    ``accepted:bailly+ewn`` or ``kept:wordlist``.
    """

    lemma: str
    pos: str
    sense_id: int
    synonyms: frozenset[tuple[str, str]] = frozenset()
    derivatives: frozenset[tuple[str, str, str]] = frozenset()
    synset: str | None = None
    synset_provenance: str | None = None
    rules: tuple["DisambiguationRule", ...] = ()

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.lemma, self.pos, self.sense_id)


@dataclass(frozen=True)
class MergedLexicon:
    """The merged output: one record per sense, plus each sense's features."""

    records: Mapping[tuple[str, str, int], MergedSenseRecord]
    sense_features: Mapping[tuple[str, str, int], SemanticFeatures] = field(default_factory=dict)

    def senses_of(self, lemma: str) -> tuple[MergedSenseRecord, ...]:
        return tuple(r for r in self.records.values() if r.lemma == lemma)

    def record_for(self, lemma: str, sense_id: int) -> MergedSenseRecord:
        """First record of ``lemma`` carrying ``sense_id``.

        Raises :class:`UnknownSenseError` when there is none.
        """
        for record in self.records.values():
            if record.lemma == lemma and record.sense_id == sense_id:
                return record
        raise UnknownSenseError(f"no sense {sense_id} for lemma {lemma!r}")

    def classes_of(self, lemma: str) -> frozenset[str]:
        return frozenset(
            canon_code(feats.class_code)
            for key, feats in self.sense_features.items()
            if key[0] == lemma
        )

    def rules_for(self, lemma: str) -> tuple["DisambiguationRule", ...]:
        out: list[DisambiguationRule] = []
        for record in self.records.values():
            if record.lemma == lemma:
                out.extend(record.rules)
        return tuple(out)
