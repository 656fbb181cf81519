import pytest
from hypothesis import given, strategies as st

from conceptgen.corpus import (
    ConceptSentencePair,
    build_pairs,
    extract_concepts,
    normalize_text,
    pairs_from_text,
    read_pairs,
    sentence_from_text,
    tokenize,
    write_pairs,
)
from conceptgen.errors import PairFormatError


@given(st.text(max_size=200))
def test_normalize_idempotent(raw):
    once = normalize_text(raw)
    assert normalize_text(once) == once


@given(st.text(max_size=200))
def test_normalize_output_shape(raw):
    out = normalize_text(raw)
    assert out == out.lower()
    assert "  " not in out
    assert out == out.strip()


def test_tokenize_splits_punctuation(lexicon):
    sentence = sentence_from_text("The dog, happily, chased the cat.", lexicon)
    assert sentence.surfaces() == [
        "the", "dog", ",", "happily", ",", "chased", "the", "cat", ".",
    ]
    assert sentence.lemmas()[1] == "dog"
    assert sentence.lemmas()[5] == "chase"


def test_tokenize_unknown_word_keeps_surface(lexicon):
    sentence = sentence_from_text("the zzyzx runs", lexicon)
    assert sentence.tokens[1].lemma == "zzyzx"


def test_extract_concepts_content_only(lexicon):
    sentence = sentence_from_text("the dog chased the cat in the park", lexicon)
    assert extract_concepts(sentence, lexicon) == frozenset(
        {"dog", "chase", "cat", "park"}
    )


def test_extract_concepts_excludes_stopwords(lexicon):
    sentence = sentence_from_text("the dog is happy", lexicon)
    concepts = extract_concepts(sentence, lexicon)
    assert "be" not in concepts
    assert "happy" in concepts


def test_build_pairs_band_filter(lexicon):
    texts = [
        "the dog runs",  # 2 concepts: dog, run
        "it is the",  # 0 concepts
        "the dog chased the cat in the big green park near the old red barn while the happy bird watched the busy farm",
    ]
    sentences = [sentence_from_text(t, lexicon) for t in texts]
    pairs = build_pairs(sentences, lexicon)
    assert len(pairs) == 1
    assert pairs[0].concepts == frozenset({"dog", "run"})


def test_build_pairs_dedup_first_wins(lexicon):
    pairs = pairs_from_text(["the dog runs", "The  dog runs.".lower()], lexicon)
    texts = [p.sentence.raw for p in pairs]
    assert len(pairs) == len(set(texts))


def test_pair_requires_concepts_in_sentence(lexicon):
    sentence = sentence_from_text("the dog runs", lexicon)
    with pytest.raises(ValueError):
        ConceptSentencePair(
            id="x", concepts=frozenset({"cat"}), sentence=sentence
        )


def test_write_read_identity(tmp_path, lexicon):
    pairs = pairs_from_text(
        ["the dog chased the cat", "the bird watched the sheep in the barn"],
        lexicon,
    )
    path = tmp_path / "pairs.jsonl"
    write_pairs(pairs, path)
    again = read_pairs(path, lexicon)
    assert again == pairs
    # a second round trip is byte-stable
    path2 = tmp_path / "pairs2.jsonl"
    write_pairs(again, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_read_pairs_rejects_malformed(tmp_path, lexicon):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"id": "a"}\n', encoding="utf-8")
    with pytest.raises(PairFormatError):
        read_pairs(path, lexicon)
