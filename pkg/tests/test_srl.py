"""Rule-based role parsing and concept-role alignment."""

import pytest

from conceptgen.controls import RoleLabel
from conceptgen.corpus import sentence_from_text
from conceptgen.errors import NoVerbFound
from conceptgen.srl import (
    ExternalRoleParser,
    RuleBasedRoleParser,
    SRLFrame,
    SRLParse,
    align_roles,
    parse_roles,
    read_parses,
    write_parses,
)


def roles_of(lexicon, text, concepts):
    sentence = sentence_from_text(text, lexicon)
    labeled = align_roles(parse_roles(sentence), concepts, sentence)
    return {item.concept: item.role for item in labeled.items}


def test_transitive_clause(lexicon):
    got = roles_of(lexicon, "the dog chased the cat", ["dog", "chase", "cat"])
    assert got == {
        "dog": RoleLabel.ARG0,
        "chase": RoleLabel.V,
        "cat": RoleLabel.ARG1,
    }


def test_modifier_prepositional_phrase(lexicon):
    got = roles_of(lexicon, "the cat slept in the sun", ["cat", "sleep", "sun"])
    assert got == {
        "cat": RoleLabel.ARG0,
        "sleep": RoleLabel.V,
        "sun": RoleLabel.ARGM,
    }


def test_bare_verb(lexicon):
    got = roles_of(lexicon, "run", ["run"])
    assert got == {"run": RoleLabel.V}


def test_output_is_lemma_sorted(lexicon):
    sentence = sentence_from_text("the dog chased the cat", lexicon)
    labeled = align_roles(parse_roles(sentence), ["dog", "chase", "cat"], sentence)
    assert [i.concept for i in labeled.items] == ["cat", "chase", "dog"]


def test_unmatched_concept_gets_other(lexicon):
    got = roles_of(lexicon, "the dog chased the cat", ["dog", "chase", "cat", "zebra"])
    assert got["zebra"] is RoleLabel.OTHER


def test_auxiliary_not_main_verb(lexicon):
    got = roles_of(lexicon, "the dog was chasing the cat", ["dog", "chase", "cat"])
    assert got["chase"] is RoleLabel.V
    assert got["dog"] is RoleLabel.ARG0
    assert got["cat"] is RoleLabel.ARG1


def test_no_verb_raises(lexicon):
    with pytest.raises(NoVerbFound):
        parse_roles(sentence_from_text("the big red barn", lexicon))


def test_two_clauses_two_frames(lexicon):
    sentence = sentence_from_text(
        "the dog chased the cat because the bird watched the mouse", lexicon
    )
    parse = parse_roles(sentence)
    assert len(parse.frames) == 2
    got = roles_of(
        lexicon,
        "the dog chased the cat because the bird watched the mouse",
        ["dog", "chase", "cat", "bird", "watch"],
    )
    assert got["dog"] is RoleLabel.ARG0
    assert got["chase"] is RoleLabel.V
    assert got["cat"] is RoleLabel.ARG1
    assert got["bird"] is RoleLabel.ARG0
    assert got["watch"] is RoleLabel.V


def test_precedence_prefers_verb_reading(lexicon):
    # "watch" appears as the verb; a concept matching the verb lemma must
    # take V over any argument reading in a later frame.
    got = roles_of(
        lexicon,
        "the dog watches the watch",
        ["dog", "watch"],
    )
    assert got["watch"] is RoleLabel.V
    assert got["dog"] is RoleLabel.ARG0


def test_parse_deterministic(lexicon):
    sentence = sentence_from_text(
        "the dog chased the cat in the park while the bird sang", lexicon
    )
    assert parse_roles(sentence) == parse_roles(sentence)


def test_frame_requires_v_at_verb_index():
    with pytest.raises(ValueError):
        SRLFrame(verb_index=0, assignments={0: RoleLabel.ARG0})


def test_external_parser_round_trip(tmp_path, lexicon):
    sentence = sentence_from_text("the dog chased the cat", lexicon)
    parse = parse_roles(sentence)
    from conceptgen.corpus import pair_id

    key = pair_id(sentence.raw)
    path = tmp_path / "parses.jsonl"
    write_parses({key: parse}, path)
    loaded = read_parses(path)
    assert loaded == {key: parse}
    external = ExternalRoleParser(loaded)
    assert external.parse(sentence) == parse


def test_align_with_external_parser(lexicon):
    sentence = sentence_from_text("the dog chased the cat", lexicon)
    # hand-built parse that disagrees with the rule parser on purpose
    frame = SRLFrame(
        verb_index=2,
        assignments={2: RoleLabel.V, 1: RoleLabel.ARG1, 4: RoleLabel.ARG0},
    )
    labeled = align_roles(
        SRLParse(frames=(frame,)), ["dog", "chase", "cat"], sentence
    )
    got = {i.concept: i.role for i in labeled.items}
    assert got["dog"] is RoleLabel.ARG1
    assert got["cat"] is RoleLabel.ARG0
