"""Parsers and writers for the external resource formats.

All formats are UTF-8, newline-delimited, tab-separated.  Lines starting with
``#`` are comments except ``#!`` header directives.  Parsing is exhaustive:
every problem in a file is collected as a :class:`Diagnostic` and reported in
one :class:`ValidationError`; warnings are handed to the optional ``warnings``
sink and never abort.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from senselex.errors import ERROR, WARNING, Diagnostic, ValidationError
from senselex.model import (
    DependencyTriple,
    ReferenceLexicon,
    SemanticFeatures,
    SenseEntry,
    SuffixInstruction,
    canon_code,
    nfc,
)

SYNSET_RELATIONS = ("hypernym", "hyponym", "meronym", "holonym")
INVERSE_RELATION = {
    "hypernym": "hyponym",
    "hyponym": "hypernym",
    "meronym": "holonym",
    "holonym": "meronym",
}

_HEADER_DIRECTIVES = ("domain", "class", "relation", "suffix")
_WS_RUN = re.compile(r"\s+")


def normalize_term(text: str) -> str:
    """Trim a lemma-ish field and collapse internal whitespace runs."""
    return _WS_RUN.sub(" ", text.strip())


def iter_lines(lines: Iterable[str] | str) -> Iterator[tuple[int, str]]:
    if isinstance(lines, str):
        lines = lines.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        yield lineno, nfc(raw.rstrip("\r\n"))


def parse_dep_text(text: str) -> DependencyTriple | None:
    """Parse ``REL(head,dep)``; None when the shape is wrong."""
    opening = text.find("(")
    if opening <= 0 or not text.endswith(")"):
        return None
    relation = text[:opening].strip()
    head, sep, dependent = text[opening + 1 : -1].partition(",")
    head = head.strip()
    dependent = dependent.strip()
    if not relation or not sep or not head or not dependent:
        return None
    return DependencyTriple(relation, head, dependent)


class DiagnosticCollector:
    """Accumulates diagnostics for one file and raises when errors exist."""

    def __init__(self, source: str):
        self.source = source
        self.items: list[Diagnostic] = []

    def error(self, message: str, line: int | None = None) -> None:
        self.items.append(Diagnostic(message, line, ERROR, self.source))

    def warning(self, message: str, line: int | None = None) -> None:
        self.items.append(Diagnostic(message, line, WARNING, self.source))

    def finish(self, warnings: list[Diagnostic] | None) -> None:
        if any(d.severity == ERROR for d in self.items):
            raise ValidationError(self.items, self.source)
        if warnings is not None:
            warnings.extend(self.items)


def parse_reference(
    lines: Iterable[str] | str,
    *,
    source: str = "reference",
    warnings: list[Diagnostic] | None = None,
) -> ReferenceLexicon:
    """Parse a sense-per-line reference lexicon.

    Header directives ``#!domain``, ``#!class``, ``#!relation`` and
    ``#!suffix`` declare the inventories.  Each record line carries ten
    tab-separated fields: lemma, pos, sense id, sense label, domain code,
    class code, suffix instructions (``ure:1,age:5`` or ``-``), subcat frames
    (``transitive|reflexive`` or ``-``), example dependencies
    (``REL(head,dep);...`` or ``-``) and base synonyms (comma-separated or
    ``-``).
    """
    diag = DiagnosticCollector(source)
    inventories: dict[str, list[str]] = {name: [] for name in _HEADER_DIRECTIVES}
    records: list[tuple[int, str]] = []

    for lineno, line in iter_lines(lines):
        if not line.strip():
            continue
        if line.startswith("#!"):
            tokens = line[2:].split()
            if not tokens:
                diag.error("empty header directive", lineno)
                continue
            directive, *declared = tokens
            if directive not in _HEADER_DIRECTIVES:
                diag.error(f"unknown header directive {directive!r}", lineno)
                continue
            for token in declared:
                if token not in inventories[directive]:
                    inventories[directive].append(token)
        elif line.startswith("#"):
            continue
        else:
            records.append((lineno, line))

    canon_inventories = {
        name: {canon_code(tok) for tok in tokens} for name, tokens in inventories.items()
    }

    entries: dict[str, list[SenseEntry]] = {}
    seen_keys: set[tuple[str, str, int]] = set()
    pending_targets: list[tuple[int, str, SuffixInstruction]] = []

    for lineno, line in records:
        fields = line.split("\t")
        if len(fields) != 10:
            diag.error(f"expected 10 tab-separated fields, got {len(fields)}", lineno)
            continue
        lemma = normalize_term(fields[0])
        pos = fields[1].strip()
        label = fields[3].strip()
        domain = fields[4].strip()
        class_code = fields[5].strip()
        ok = True
        if not lemma:
            diag.error("empty lemma", lineno)
            ok = False
        if not pos:
            diag.error("empty part of speech", lineno)
            ok = False
        try:
            sense_id = int(fields[2].strip())
        except ValueError:
            diag.error(f"sense id {fields[2].strip()!r} is not an integer", lineno)
            ok = False
            sense_id = 0
        if ok and sense_id <= 0:
            diag.error(f"sense id must be positive, got {sense_id}", lineno)
            ok = False
        if not label:
            diag.error("empty sense label", lineno)
            ok = False
        if not domain or canon_code(domain) not in canon_inventories["domain"]:
            diag.error(f"unknown domain code {domain!r}", lineno)
            ok = False
        if not class_code or canon_code(class_code) not in canon_inventories["class"]:
            diag.error(f"unknown class code {class_code!r}", lineno)
            ok = False

        instructions: list[SuffixInstruction] = []
        if fields[6].strip() not in ("-", ""):
            for item in fields[6].split(","):
                item = item.strip()
                if not item:
                    continue
                suffix, sep, target = item.partition(":")
                suffix = suffix.strip()
                target = target.strip()
                if not sep or not suffix or not target:
                    diag.error(f"malformed suffix instruction {item!r}", lineno)
                    ok = False
                    continue
                if suffix.startswith("-"):
                    diag.error(f"suffix {suffix!r} must not carry a leading hyphen", lineno)
                    ok = False
                    continue
                if suffix != suffix.lower():
                    diag.error(f"suffix {suffix!r} must be lowercase", lineno)
                    ok = False
                    continue
                if canon_code(suffix) not in canon_inventories["suffix"]:
                    diag.error(f"unknown suffix code {suffix!r}", lineno)
                    ok = False
                    continue
                try:
                    target_sense = int(target)
                except ValueError:
                    diag.error(f"suffix instruction target {target!r} is not an integer", lineno)
                    ok = False
                    continue
                if target_sense <= 0:
                    diag.error(f"suffix instruction target must be positive, got {target}", lineno)
                    ok = False
                    continue
                instruction = SuffixInstruction(suffix, target_sense)
                if instruction not in instructions:
                    instructions.append(instruction)

        frames: list[str] = []
        if fields[7].strip() not in ("-", ""):
            for token in fields[7].split("|"):
                token = token.strip()
                if token and token not in frames:
                    frames.append(token)

        deps: list[DependencyTriple] = []
        if fields[8].strip() not in ("-", ""):
            for item in fields[8].split(";"):
                item = item.strip()
                if not item:
                    continue
                dep = parse_dep_text(item)
                if dep is None:
                    diag.error(f"malformed dependency {item!r}", lineno)
                    ok = False
                    continue
                if canon_code(dep.relation) not in canon_inventories["relation"]:
                    diag.error(f"relation {dep.relation!r} not in the relation inventory", lineno)
                    ok = False
                    continue
                if dep not in deps:
                    deps.append(dep)

        base: list[str] = []
        if fields[9].strip() not in ("-", ""):
            for item in fields[9].split(","):
                term = normalize_term(item)
                if not term:
                    continue
                if term == lemma:
                    diag.warning(f"{lemma!r} lists itself as a base synonym; dropped", lineno)
                    continue
                if term not in base:
                    base.append(term)

        if not ok:
            continue
        key = (lemma, pos, sense_id)
        if key in seen_keys:
            diag.error(f"duplicate sense ({lemma!r}, {pos!r}, {sense_id})", lineno)
            continue
        seen_keys.add(key)
        for instruction in instructions:
            pending_targets.append((lineno, lemma, instruction))
        entry = SenseEntry(
            lemma=lemma,
            pos=pos,
            sense_id=sense_id,
            sense_label=label,
            features=SemanticFeatures(domain, class_code),
            suffix_instructions=tuple(instructions),
            example_deps=tuple(deps),
            subcat_frames=tuple(frames),
            base_synonyms=tuple(base),
        )
        entries.setdefault(lemma, []).append(entry)

    ids_by_lemma = {
        lemma: {entry.sense_id for entry in senses} for lemma, senses in entries.items()
    }
    for lineno, lemma, instruction in pending_targets:
        if instruction.target_sense not in ids_by_lemma.get(lemma, set()):
            diag.error(
                f"suffix instruction {instruction.suffix}:{instruction.target_sense} on "
                f"{lemma!r} points at a sense that does not exist",
                lineno,
            )

    diag.finish(warnings)
    return ReferenceLexicon(
        entries={lemma: tuple(senses) for lemma, senses in entries.items()},
        domain_inventory=frozenset(inventories["domain"]),
        class_inventory=frozenset(inventories["class"]),
        relation_inventory=frozenset(inventories["relation"]),
        suffix_inventory=frozenset(inventories["suffix"]),
    )


def serialize_reference(lexicon: ReferenceLexicon) -> str:
    """Render a lexicon back to its file format, parseable by parse_reference."""
    out: list[str] = []
    for directive, inventory in (
        ("domain", lexicon.domain_inventory),
        ("class", lexicon.class_inventory),
        ("relation", lexicon.relation_inventory),
        ("suffix", lexicon.suffix_inventory),
    ):
        out.append(f"#!{directive} {' '.join(sorted(inventory))}".rstrip())
    for senses in lexicon.entries.values():
        for e in senses:
            suffixes = ",".join(f"{i.suffix}:{i.target_sense}" for i in e.suffix_instructions)
            frames = "|".join(e.subcat_frames)
            deps = ";".join(d.render() for d in e.example_deps)
            base = ",".join(e.base_synonyms)
            out.append(
                "\t".join(
                    (
                        e.lemma,
                        e.pos,
                        str(e.sense_id),
                        e.sense_label,
                        e.features.domain_code,
                        e.features.class_code,
                        suffixes or "-",
                        frames or "-",
                        deps or "-",
                        base or "-",
                    )
                )
            )
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SynonymResource:
    """Raw synonym proposals of one source dictionary, keyed by target lemma."""

    name: str
    proposals: Mapping[str, frozenset[str]] = field(default_factory=dict)


def parse_synonym_resource(
    lines: Iterable[str] | str,
    *,
    name: str = "synonyms",
    source: str | None = None,
    warnings: list[Diagnostic] | None = None,
) -> SynonymResource:
    """Parse ``lemma <TAB> proposal1, proposal2, ...`` lines.

    Proposals keep internal single spaces; duplicates collapse; a lemma
    proposing itself is dropped with a warning.
    """
    diag = DiagnosticCollector(source if source is not None else name)
    proposals: dict[str, set[str]] = {}
    for lineno, line in iter_lines(lines):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            diag.error(f"expected 2 tab-separated fields, got {len(fields)}", lineno)
            continue
        lemma = normalize_term(fields[0])
        if not lemma:
            diag.error("empty lemma", lineno)
            continue
        bucket = proposals.setdefault(lemma, set())
        for item in fields[1].split(","):
            term = normalize_term(item)
            if not term:
                continue
            if term == lemma:
                diag.warning(f"{lemma!r} proposes itself as a synonym; dropped", lineno)
                continue
            bucket.add(term)
    diag.finish(warnings)
    return SynonymResource(
        name=name,
        proposals={lemma: frozenset(terms) for lemma, terms in proposals.items()},
    )


@dataclass(frozen=True)
class Synset:
    id: str
    members: frozenset[str]


@dataclass(frozen=True)
class SynsetGraph:
    """Synsets plus typed edges, with inverse edges already materialized.

    An edge ``(a, rel, b)`` reads "b is a ``rel`` of a": following hypernym
    edges from a synset walks upward in the taxonomy.
    """

    synsets: Mapping[str, Synset] = field(default_factory=dict)
    edges: tuple[tuple[str, str, str], ...] = ()

    def successors(self, relation: str) -> dict[str, tuple[str, ...]]:
        adj: dict[str, list[str]] = {}
        for a, rel, b in self.edges:
            if rel == relation:
                adj.setdefault(a, []).append(b)
        return {a: tuple(sorted(set(targets))) for a, targets in adj.items()}


def _hypernym_cycle(successors: Mapping[str, tuple[str, ...]]) -> list[str] | None:
    """One cycle of the hypernym digraph, as a node list, or None."""
    state: dict[str, int] = {}
    for root in sorted(successors):
        if state.get(root):
            continue
        state[root] = 1
        stack = [(root, iter(successors.get(root, ())))]
        path = [root]
        while stack:
            _, it = stack[-1]
            advanced = False
            for nxt in it:
                mark = state.get(nxt, 0)
                if mark == 1:
                    return path[path.index(nxt):]
                if mark == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(successors.get(nxt, ()))))
                    path.append(nxt)
                    advanced = True
                    break
            if not advanced:
                state[path[-1]] = 2
                stack.pop()
                path.pop()
    return None


def parse_synset_resource(
    lines: Iterable[str] | str,
    *,
    source: str = "synsets",
    warnings: list[Diagnostic] | None = None,
) -> SynsetGraph:
    """Parse ``S <TAB> id <TAB> members`` and ``E <TAB> from <TAB> rel <TAB> to`` lines.

    Edge endpoints must exist, hypernym edges must be acyclic, and for every
    declared edge the inverse (hyponym for hypernym, holonym for meronym and
    vice versa) is materialized.
    """
    diag = DiagnosticCollector(source)
    synsets: dict[str, Synset] = {}
    raw_edges: list[tuple[int, str, str, str]] = []

    for lineno, line in iter_lines(lines):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        tag = fields[0].strip()
        if tag == "S":
            if len(fields) != 3:
                diag.error(f"expected 3 tab-separated fields on an S line, got {len(fields)}", lineno)
                continue
            synset_id = fields[1].strip()
            if not synset_id:
                diag.error("empty synset id", lineno)
                continue
            if synset_id in synsets:
                diag.error(f"duplicate synset id {synset_id!r}", lineno)
                continue
            members = []
            for item in fields[2].split(","):
                term = normalize_term(item)
                if term and term not in members:
                    members.append(term)
            if not members:
                diag.error(f"synset {synset_id!r} has no members", lineno)
                continue
            synsets[synset_id] = Synset(synset_id, frozenset(members))
        elif tag == "E":
            if len(fields) != 4:
                diag.error(f"expected 4 tab-separated fields on an E line, got {len(fields)}", lineno)
                continue
            raw_edges.append((lineno, fields[1].strip(), fields[2].strip(), fields[3].strip()))
        else:
            diag.error(f"unknown record tag {tag!r} (expected S or E)", lineno)

    edges: list[tuple[str, str, str]] = []
    seen_edges: set[tuple[str, str, str]] = set()
    for lineno, origin, relation, target in raw_edges:
        if relation not in SYNSET_RELATIONS:
            diag.error(
                f"relation {relation!r} is not one of {', '.join(SYNSET_RELATIONS)}", lineno
            )
            continue
        dangling = [sid for sid in (origin, target) if sid not in synsets]
        if dangling:
            for sid in dangling:
                diag.error(f"edge endpoint {sid!r} is not a declared synset", lineno)
            continue
        edge = (origin, relation, target)
        if edge not in seen_edges:
            seen_edges.add(edge)
            edges.append(edge)
    for origin, relation, target in list(edges):
        inverse = (target, INVERSE_RELATION[relation], origin)
        if inverse not in seen_edges:
            seen_edges.add(inverse)
            edges.append(inverse)

    hyper: dict[str, list[str]] = {}
    for a, rel, b in edges:
        if rel == "hypernym":
            hyper.setdefault(a, []).append(b)
    cycle = _hypernym_cycle({a: tuple(sorted(bs)) for a, bs in hyper.items()})
    if cycle is not None:
        loop = " -> ".join(cycle + cycle[:1])
        diag.error(f"hypernym cycle: {loop}")

    diag.finish(warnings)
    return SynsetGraph(synsets=synsets, edges=tuple(edges))


def parse_wordlist(
    lines: Iterable[str] | str,
    *,
    source: str = "wordlist",
    warnings: list[Diagnostic] | None = None,
) -> frozenset[str]:
    """Parse a one-word-per-line wordlist."""
    diag = DiagnosticCollector(source)
    words: set[str] = set()
    for _, line in iter_lines(lines):
        if not line.strip() or line.startswith("#"):
            continue
        words.add(normalize_term(line))
    diag.finish(warnings)
    return frozenset(words)


def read_utf8(path: Path, source: str) -> str:
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValidationError(
            [Diagnostic(f"not valid UTF-8: {exc.reason} at byte {exc.start}", None, ERROR, source)],
            source,
        ) from exc


def load_reference(path: Path | str, warnings: list[Diagnostic] | None = None) -> ReferenceLexicon:
    path = Path(path)
    return parse_reference(read_utf8(path, path.name), source=path.name, warnings=warnings)


def load_synonym_resource(
    path: Path | str, warnings: list[Diagnostic] | None = None
) -> SynonymResource:
    path = Path(path)
    return parse_synonym_resource(
        read_utf8(path, path.name), name=path.stem, source=path.name, warnings=warnings
    )


def load_synset_resource(path: Path | str, warnings: list[Diagnostic] | None = None) -> SynsetGraph:
    path = Path(path)
    return parse_synset_resource(read_utf8(path, path.name), source=path.name, warnings=warnings)


def load_wordlist(path: Path | str, warnings: list[Diagnostic] | None = None) -> frozenset[str]:
    path = Path(path)
    return parse_wordlist(read_utf8(path, path.name), source=path.name, warnings=warnings)
