from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convsearch.text import (
    DEFAULT_STOPWORDS,
    AnalyzerConfig,
    Token,
    analyze,
    remove_stopwords,
    split_sentences,
    stem,
    tokenize,
)

# From the published Porter reference vocabulary (voc.txt / output.txt).
PORTER_VECTORS = [
    ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"),
    ("caress", "caress"), ("cats", "cat"), ("feed", "feed"),
    ("agreed", "agre"), ("plastered", "plaster"), ("bled", "bled"),
    ("motoring", "motor"), ("sing", "sing"), ("conflated", "conflat"),
    ("troubled", "troubl"), ("sized", "size"), ("hopping", "hop"),
    ("tanned", "tan"), ("falling", "fall"), ("hissing", "hiss"),
    ("fizzed", "fizz"), ("failing", "fail"), ("filing", "file"),
    ("happy", "happi"), ("sky", "sky"), ("relational", "relat"),
    ("conditional", "condit"), ("rational", "ration"), ("valenci", "valenc"),
    ("hesitanci", "hesit"), ("digitizer", "digit"), ("conformabli", "conform"),
    ("radicalli", "radic"), ("differentli", "differ"), ("vileli", "vile"),
    ("analogousli", "analog"), ("vietnamization", "vietnam"),
    ("predication", "predic"), ("operator", "oper"), ("feudalism", "feudal"),
    ("decisiveness", "decis"), ("hopefulness", "hope"), ("callousness", "callous"),
    ("formaliti", "formal"), ("sensitiviti", "sensit"), ("sensibiliti", "sensibl"),
    ("triplicate", "triplic"), ("formative", "form"), ("formalize", "formal"),
    ("electriciti", "electr"), ("electrical", "electr"), ("hopeful", "hope"),
    ("goodness", "good"), ("revival", "reviv"), ("allowance", "allow"),
    ("inference", "infer"), ("airliner", "airlin"), ("gyroscopic", "gyroscop"),
    ("adjustable", "adjust"), ("defensible", "defens"), ("irritant", "irrit"),
    ("replacement", "replac"), ("adjustment", "adjust"), ("dependent", "depend"),
    ("adoption", "adopt"), ("homologou", "homolog"), ("communism", "commun"),
    ("activate", "activ"), ("angulariti", "angular"), ("homologous", "homolog"),
    ("effective", "effect"), ("bowdlerize", "bowdler"), ("probate", "probat"),
    ("rate", "rate"), ("cease", "ceas"), ("controll", "control"), ("roll", "roll"),
    ("a", "a"), ("is", "is"),
]


class TestTokenize:
    def test_simple_question(self):
        assert [t.surface for t in tokenize("How is the climate in Lucca?")] == [
            "how", "is", "the", "climate", "in", "lucca",
        ]

    def test_empty(self):
        assert tokenize("") == []

    def test_punctuation_and_digits(self):
        assert [t.surface for t in tokenize("Sputnik 1, launched 1957.")] == [
            "sputnik", "1", "launched", "1957",
        ]

    def test_positions_strictly_increasing(self):
        tokens = tokenize("a b c d")
        assert [t.position for t in tokens] == [0, 1, 2, 3]

    @given(st.text())
    def test_surfaces_nonempty_no_whitespace(self, text):
        for token in tokenize(text):
            assert token.surface
            assert not any(c.isspace() for c in token.surface)


class TestStopwords:
    def test_default_list_size(self):
        assert len(DEFAULT_STOPWORDS) == 33

    def test_removal(self):
        tokens = tokenize("How is the climate in Lucca?")
        survivors = remove_stopwords(tokens, AnalyzerConfig())
        assert [t.surface for t in survivors] == ["how", "climate", "lucca"]

    def test_empty(self):
        assert remove_stopwords([], AnalyzerConfig()) == []

    def test_all_stopwords(self):
        tokens = tokenize("the the the")
        assert remove_stopwords(tokens, AnalyzerConfig()) == []

    def test_positions_preserved(self):
        tokens = tokenize("the climate in lucca")
        survivors = remove_stopwords(tokens, AnalyzerConfig())
        assert [(t.surface, t.position) for t in survivors] == [("climate", 1), ("lucca", 3)]


class TestStem:
    @pytest.mark.parametrize("word,expected", PORTER_VECTORS)
    def test_reference_vocabulary(self, word, expected):
        assert stem(word) == expected

    @given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789", min_size=1, max_size=20))
    def test_never_empty(self, word):
        assert stem(word)


class TestSplitSentences:
    def test_two_terminators(self):
        assert split_sentences("A b. C d?") == ["A b.", "C d?"]

    def test_no_terminator(self):
        assert split_sentences("No terminator") == ["No terminator"]

    def test_comma_not_a_boundary(self):
        text = "It was launched on October 4, 1957. It was the size of a basketball."
        assert split_sentences(text) == [
            "It was launched on October 4, 1957.",
            "It was the size of a basketball.",
        ]

    @given(st.text())
    def test_token_stream_preserved(self, text):
        joined = " ".join(split_sentences(text))
        assert [t.surface for t in tokenize(joined)] == [t.surface for t in tokenize(text)]


class TestAnalyze:
    def test_full_pipeline(self):
        assert analyze("How is the climate in Lucca?") == ["how", "climat", "lucca"]

    def test_purity(self):
        config = AnalyzerConfig()
        text = "Monuments of Lucca are remarkable."
        assert analyze(text, config) == analyze(text, config)

    @given(st.text())
    def test_no_longer_than_token_count(self, text):
        assert len(analyze(text)) <= len(tokenize(text))
