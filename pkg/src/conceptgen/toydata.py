"""Template corpora for tests, examples, and desk-scale training runs.

The SVO grammar is deliberately two-reading: for every animal pair both
"the a chased the b" and "the b chased the a" occur, so the unordered
concept set {a, chase, b} is genuinely ambiguous about who chases whom.
Role annotations are then the only signal that disambiguates, which is
exactly what the role-control experiments need.
"""

from __future__ import annotations

from .controls import CefrLevel
from .corpus import ConceptSentencePair, pair_id, pairs_from_text, sentence_from_text
from .lexicon import Lexicon

ANIMALS = ("dog", "cat", "fox", "rabbit", "horse", "cow", "sheep", "mouse", "bird", "bear")
PLACES = ("park", "barn", "forest", "field", "garden", "farm")

# lemma -> (third person singular, past)
SVO_VERBS = {
    "chase": ("chases", "chased"),
    "watch": ("watches", "watched"),
    "follow": ("follows", "followed"),
    "push": ("pushes", "pushed"),
    "pull": ("pulls", "pulled"),
    "see": ("sees", "saw"),
}

PEOPLE = ("teacher", "student", "doctor", "nurse", "friend", "leader")
OBJECTS = ("book", "letter", "paper", "story", "song", "picture")
PEOPLE_VERBS = {
    "read": ("reads", "read"),
    "write": ("writes", "wrote"),
    "carry": ("carries", "carried"),
}


def svo_sentences() -> list[str]:
    """Every ordered animal pair, every verb, two tenses, with and without a place."""
    sentences = []
    verbs = sorted(SVO_VERBS)
    index = 0
    for agent in ANIMALS:
        for patient in ANIMALS:
            if agent == patient:
                continue
            for verb in verbs:
                present, past = SVO_VERBS[verb]
                place = PLACES[index % len(PLACES)]
                index += 1
                sentences.append(f"the {agent} {present} the {patient}")
                sentences.append(f"the {agent} {past} the {patient}")
                sentences.append(f"the {agent} {present} the {patient} in the {place}")
                sentences.append(f"the {agent} {past} the {patient} in the {place}")
    return sentences


def svo_corpus(lexicon: Lexicon) -> list[ConceptSentencePair]:
    return pairs_from_text(svo_sentences(), lexicon, source="toy-svo")


def cefr_corpus(lexicon: Lexicon) -> list[tuple[ConceptSentencePair, CefrLevel]]:
    """Level-separated targets over shared concept sets.

    For each unordered animal pair and verb, the same concepts appear with a
    five-word target labeled A1 and a fourteen-word target labeled C2.
    Levels are assigned by construction, not by the proxy scorer, so the
    length contrast between levels is exact.
    """
    tagged = []
    verbs = sorted(SVO_VERBS)
    combos = []
    for i, agent in enumerate(ANIMALS):
        for patient in ANIMALS[i + 1 :]:
            for verb in verbs:
                combos.append((agent, verb, patient))
    for n, (agent, verb, patient) in enumerate(combos):
        _, past = SVO_VERBS[verb]
        place = PLACES[n % len(PLACES)]
        other_agent = ANIMALS[(n + 3) % len(ANIMALS)]
        other_patient = ANIMALS[(n + 7) % len(ANIMALS)]
        _, other_past = SVO_VERBS[verbs[(n + 1) % len(verbs)]]
        short = f"the {agent} {past} the {patient}"
        long = (
            f"the {agent} {past} the {patient} in the {place} "
            f"because the {other_agent} {other_past} the {other_patient}"
        )
        concepts = frozenset({agent, verb, patient})
        for text, level in ((short, CefrLevel.A1), (long, CefrLevel.C2)):
            sentence = sentence_from_text(text, lexicon)
            pair = ConceptSentencePair(
                id=pair_id(sentence.raw),
                concepts=concepts,
                sentence=sentence,
                source="toy-cefr",
            )
            tagged.append((pair, level))
    return tagged


def people_sentences() -> list[str]:
    """Disjoint-domain grammar (people and objects) for warm-start tests."""
    sentences = []
    verbs = sorted(PEOPLE_VERBS)
    for person in PEOPLE:
        for thing in OBJECTS:
            for verb in verbs:
                present, past = PEOPLE_VERBS[verb]
                sentences.append(f"the {person} {present} the {thing}")
                sentences.append(f"the {person} {past} the {thing}")
    return sentences


def people_corpus(lexicon: Lexicon) -> list[ConceptSentencePair]:
    return pairs_from_text(people_sentences(), lexicon, source="toy-people")
