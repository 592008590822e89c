from pathlib import Path

import pytest

from senselex import enrichment, ingest, pipeline

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def reference():
    return ingest.load_reference(DATA / "reference.lex")


@pytest.fixture(scope="session")
def resources():
    return [
        ingest.load_synonym_resource(DATA / "bailly.syn"),
        ingest.load_synonym_resource(DATA / "ewn.syn"),
    ]


@pytest.fixture(scope="session")
def graph():
    return ingest.load_synset_resource(DATA / "ewn.wn")


@pytest.fixture(scope="session")
def wordlist():
    return ingest.load_wordlist(DATA / "wordlist.txt")


@pytest.fixture(scope="session")
def utterances():
    return enrichment.parse_utterances(
        (DATA / "utterances.utt").read_text(encoding="utf-8"), source="utterances.utt"
    )


@pytest.fixture(scope="session")
def outcome(reference, resources, graph, wordlist):
    return pipeline.run_merge(
        reference,
        resources,
        graph,
        wordlist,
        wordlist_name="wordlist",
        graph_name="ewn",
    )


@pytest.fixture(scope="session")
def merged(outcome):
    return outcome.merged
