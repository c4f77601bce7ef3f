from __future__ import annotations

import pytest

from convsearch.index import Passage, build_index
from convsearch.metrics import JudgmentSet
from convsearch.text import AnalyzerConfig

# Analyzer that keeps every token verbatim, for corpora stated post-analysis.
PLAIN = AnalyzerConfig(stopword_list=frozenset(), stemmer="none")

TOY_PASSAGES = [
    Passage("d1", "a b a"),
    Passage("d2", "b c"),
    Passage("d3", "a"),
]


@pytest.fixture(scope="session")
def toy_index():
    return build_index(TOY_PASSAGES, PLAIN)


LUCCA_PASSAGES = [
    Passage("L1", "The climate in Lucca is mild with warm summers and cool winters. "
                  "Rain falls in Lucca mostly during the autumn months."),
    Passage("L2", "The origins of Lucca date back to the Etruscans. "
                  "Lucca was founded as a Roman colony in 180 BC."),
    Passage("L3", "Lucca has remarkable monuments to visit. "
                  "The cathedral of San Martino and the Guinigi tower are the best known monuments of Lucca."),
    Passage("D1", "The origins of Rome appear in legends."),
    Passage("D2", "The origins of jazz music lie elsewhere."),
    Passage("D3", "Cosmologists study the origins of stars."),
    Passage("D4", "You should visit famous monuments of Rome."),
    Passage("D5", "Egypt has famous monuments people visit."),
    Passage("D6", "The climate of Norway is cold and harsh in winter."),
    Passage("D7", "Warm summers occur across the Mediterranean region."),
]

LUCCA_SCRIPT = [
    "How is the climate in Lucca?",
    "Tell me about its origins.",
    "What monuments should I visit?",
]

LUCCA_REWRITE_TARGETS = [
    "How is the climate in Lucca?",
    "Tell me about Lucca's origins.",
    "What monuments should I visit in Lucca?",
]


@pytest.fixture(scope="session")
def lucca_index():
    return build_index(LUCCA_PASSAGES)


@pytest.fixture(scope="session")
def lucca_qrels():
    qrels = JudgmentSet()
    qrels.add("lucca_1", "L1", 4)
    qrels.add("lucca_2", "L2", 4)
    qrels.add("lucca_3", "L3", 4)
    return qrels


@pytest.fixture(scope="session")
def stub_server():
    from convsearch.stub_backend import StubServer

    with StubServer() as server:
        yield server
