"""senselex: sense-indexed lexicon merging, filtering, alignment and enrichment."""

from senselex.derivations import (
    DerivativeCandidate,
    DerivativeDecision,
    filter_derivative,
    generate_candidates,
    grapheme_length,
    merge_derivatives,
)
from senselex.enrichment import (
    EnrichmentSet,
    EnrichOptions,
    Utterance,
    disambiguate,
    enrich,
    enrich_utterance,
    parse_utterances,
)
from senselex.errors import (
    Diagnostic,
    SenselexError,
    UnknownSenseError,
    UnknownSynsetError,
    ValidationError,
)
from senselex.ingest import (
    Synset,
    SynsetGraph,
    SynonymResource,
    load_reference,
    load_synonym_resource,
    load_synset_resource,
    load_wordlist,
    parse_reference,
    parse_synonym_resource,
    parse_synset_resource,
    parse_wordlist,
    serialize_reference,
)
from senselex.model import (
    DependencyTriple,
    MergedLexicon,
    MergedSenseRecord,
    ReferenceLexicon,
    SemanticFeatures,
    SenseEntry,
    SuffixInstruction,
    features_of,
    lookup,
    sense_ids,
)
from senselex.pipeline import (
    MergeOptions,
    MergeOutcome,
    MergeReport,
    read_merged,
    render_merged,
    run_merge,
    write_merge_outputs,
)
from senselex.rules import DisambiguationRule, extract_rules
from senselex.synonyms import SynonymDecision, filter_synonym, merge_synonyms
from senselex.taxonomy import AlignmentResult, align_lexicon, align_sense, taxonomy_neighbors

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "DependencyTriple",
    "DerivativeCandidate",
    "DerivativeDecision",
    "Diagnostic",
    "DisambiguationRule",
    "EnrichOptions",
    "EnrichmentSet",
    "MergeOptions",
    "MergeOutcome",
    "MergeReport",
    "MergedLexicon",
    "MergedSenseRecord",
    "ReferenceLexicon",
    "SemanticFeatures",
    "SenseEntry",
    "SenselexError",
    "SuffixInstruction",
    "Synset",
    "SynsetGraph",
    "SynonymDecision",
    "SynonymResource",
    "UnknownSenseError",
    "UnknownSynsetError",
    "Utterance",
    "ValidationError",
    "align_lexicon",
    "align_sense",
    "disambiguate",
    "enrich",
    "enrich_utterance",
    "extract_rules",
    "features_of",
    "filter_derivative",
    "filter_synonym",
    "generate_candidates",
    "grapheme_length",
    "load_reference",
    "load_synonym_resource",
    "load_synset_resource",
    "load_wordlist",
    "lookup",
    "merge_derivatives",
    "merge_synonyms",
    "parse_reference",
    "parse_synonym_resource",
    "parse_synset_resource",
    "parse_utterances",
    "parse_wordlist",
    "read_merged",
    "render_merged",
    "run_merge",
    "sense_ids",
    "serialize_reference",
    "taxonomy_neighbors",
    "write_merge_outputs",
]
