#!/usr/bin/env python3
"""Regenerate src/conceptgen/data/lexicon.tsv from the wordlist below.

Each lemma expands to its inflected surfaces (plural for nouns; 3sg, past,
participle, -ing for verbs) so that tokenization can hit exact entries for
common forms. Inflected surfaces carry the lemma's frequency: rarity is
computed per lemma, not per surface.
"""

from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "conceptgen" / "data"

# (lemma, frequency) per POS band. Frequencies are Zipf-flavored hand counts
# spanning five orders of magnitude so percentile ranks spread usefully.
NOUNS = [
    ("time", 90000), ("man", 60000), ("people", 58000), ("day", 55000), ("year", 52000),
    ("thing", 50000), ("way", 48000), ("woman", 40000), ("child", 38000), ("house", 30000),
    ("water", 28000), ("home", 27000), ("family", 26000), ("school", 25000), ("friend", 24000),
    ("book", 22000), ("city", 21000), ("world", 20000), ("food", 20000), ("car", 20000),
    ("life", 19000), ("dog", 18000), ("word", 18000), ("name", 17000), ("money", 16000),
    ("room", 15000), ("cat", 15000), ("hand", 15000), ("eye", 14000), ("job", 14000),
    ("country", 14000), ("part", 14000), ("head", 13000), ("night", 13000), ("game", 13000),
    ("point", 13000), ("face", 12000), ("story", 12000), ("tree", 12000), ("number", 12000),
    ("week", 12000), ("road", 12000), ("group", 12000), ("problem", 12000), ("street", 11000),
    ("sun", 11000), ("month", 11000), ("student", 11000), ("question", 11000), ("idea", 10000),
    ("door", 10000), ("bird", 10000), ("body", 10000), ("music", 10000), ("morning", 9500),
    ("table", 9500), ("answer", 9500), ("window", 9000), ("fish", 9000), ("park", 9000),
    ("teacher", 9000), ("paper", 9000), ("heart", 9000), ("hour", 9000), ("reason", 9000),
    ("store", 9000), ("mind", 8500), ("bed", 8500), ("news", 8500), ("picture", 8500),
    ("example", 8500), ("horse", 8000), ("field", 8000), ("song", 8000), ("shop", 8000),
    ("doctor", 8000), ("language", 8000), ("result", 8000), ("moment", 8000), ("letter", 7500),
    ("river", 7500), ("evening", 7500), ("market", 7500), ("history", 7500), ("sound", 7500),
    ("garden", 7000), ("chair", 7000), ("star", 7000), ("police", 7000), ("death", 7000),
    ("ball", 7000), ("science", 7000), ("health", 7000), ("voice", 7000), ("mountain", 6500),
    ("nature", 6500), ("fire", 6500), ("farm", 6000), ("moon", 6000), ("summer", 6000),
    ("leader", 6000), ("society", 6000), ("winter", 5500), ("rain", 5500), ("cow", 5000),
    ("weather", 5000), ("forest", 5000), ("research", 5000), ("snow", 4000), ("wind", 4500),
    ("bear", 4500), ("culture", 4500), ("sheep", 4000), ("nurse", 4000), ("mouse", 3500),
    ("toy", 3500), ("economy", 3500), ("industry", 3200), ("rabbit", 3000), ("theory", 3000),
    ("fox", 2800), ("analysis", 2800), ("evidence", 2500), ("argument", 2600), ("literature", 2200),
    ("concept", 2000), ("barn", 1500), ("philosophy", 1400), ("infrastructure", 900),
    ("discourse", 800), ("perception", 850), ("consciousness", 750), ("phenomenon", 700),
    ("ideology", 600), ("hypothesis", 500), ("sustainability", 450), ("bureaucracy", 400),
    ("globalization", 380), ("ambiguity", 350), ("nuance", 280), ("paradigm", 250),
    ("cognition", 220), ("connotation", 180), ("conundrum", 130), ("plethora", 110),
    ("dichotomy", 90), ("hegemony", 60), ("panacea", 55), ("juxtaposition", 45),
    ("zeitgeist", 40), ("epistemology", 30),
]

VERBS = [
    ("say", 90000), ("go", 80000), ("get", 75000), ("see", 70000), ("make", 65000),
    ("know", 60000), ("take", 55000), ("come", 50000), ("think", 45000), ("look", 40000),
    ("want", 35000), ("give", 30000), ("like", 30000), ("use", 28000), ("find", 26000),
    ("play", 25000), ("tell", 24000), ("run", 23000), ("ask", 22000), ("love", 20000),
    ("work", 20000), ("feel", 18000), ("live", 18000), ("try", 17000), ("leave", 16000),
    ("call", 15000), ("help", 15000), ("walk", 14000), ("eat", 13000), ("watch", 13000),
    ("start", 13000), ("read", 12000), ("buy", 12000), ("learn", 12000), ("turn", 12000),
    ("write", 11000), ("meet", 11000), ("stop", 11000), ("move", 11000), ("sit", 10000),
    ("keep", 10000), ("speak", 10000), ("pay", 10000), ("change", 10000), ("stand", 9500),
    ("open", 9000), ("drink", 9000), ("wait", 9000), ("study", 9000), ("bring", 9000),
    ("happen", 9000), ("seem", 9000), ("sleep", 8000), ("sell", 8000), ("listen", 8000),
    ("follow", 8000), ("hold", 8000), ("believe", 8000), ("understand", 8000), ("remember", 7500),
    ("teach", 7000), ("close", 7000), ("drive", 7000), ("develop", 7000), ("provide", 7000),
    ("travel", 6500), ("create", 6500), ("carry", 6000), ("visit", 6000), ("finish", 6000),
    ("consider", 6000), ("increase", 6000), ("explain", 5500), ("produce", 5500), ("require", 5500),
    ("sing", 5000), ("fly", 5000), ("cook", 5000), ("forget", 5000), ("improve", 5000),
    ("pull", 4500), ("jump", 4500), ("push", 5000), ("reduce", 4500), ("dance", 4000),
    ("wash", 4000), ("ride", 4000), ("describe", 4000), ("contain", 4000), ("discuss", 4500),
    ("swim", 3500), ("achieve", 3500), ("chase", 3000), ("maintain", 3000), ("synthesize", 300),
    ("establish", 2500), ("indicate", 2200), ("demonstrate", 1800), ("emphasize", 1200),
    ("substantiate", 100), ("perceive", 900), ("constitute", 600), ("undermine", 400),
    ("hypothesize", 200), ("scrutinize", 150), ("exacerbate", 120), ("extrapolate", 90),
    ("corroborate", 80), ("eschew", 70), ("ameliorate", 60), ("juxtapose", 50),
    ("elucidate", 45), ("obfuscate", 40), ("promulgate", 35), ("abrogate", 25),
]

ADJS = [
    ("good", 40000), ("new", 38000), ("old", 30000), ("little", 26000), ("big", 25000),
    ("small", 24000), ("long", 22000), ("great", 20000), ("high", 18000), ("young", 15000),
    ("happy", 12000), ("important", 12000), ("different", 11000), ("hard", 11000), ("low", 10000),
    ("early", 9500), ("white", 9500), ("easy", 9000), ("nice", 9000), ("late", 9000),
    ("black", 9000), ("cold", 8500), ("strong", 8500), ("full", 8500), ("hot", 8000),
    ("beautiful", 8000), ("red", 8000), ("free", 8000), ("difficult", 7500), ("blue", 7500),
    ("sad", 7000), ("fast", 7000), ("green", 7000), ("warm", 6000), ("kind", 6000),
    ("poor", 6000), ("possible", 6000), ("slow", 5500), ("common", 5500), ("rich", 5000),
    ("cool", 5000), ("busy", 5000), ("clean", 5000), ("social", 5200), ("similar", 4800),
    ("political", 4600), ("brown", 4500), ("available", 4500), ("bright", 4200), ("particular", 4200),
    ("quiet", 4000), ("weak", 4000), ("empty", 4000), ("necessary", 4000), ("various", 3800),
    ("loud", 3500), ("economic", 3400), ("specific", 3200), ("dirty", 3000), ("significant", 3000),
    ("essential", 2800), ("complex", 2600), ("cultural", 2400), ("environmental", 2200),
    ("substantial", 1100), ("comprehensive", 900), ("subsequent", 800), ("empirical", 520),
    ("inherent", 500), ("arbitrary", 420), ("pragmatic", 380), ("rigorous", 350),
    ("ambiguous", 320), ("plausible", 300), ("coherent", 280), ("viable", 260),
    ("intrinsic", 240), ("nominal", 200), ("meticulous", 160), ("salient", 140),
    ("ubiquitous", 130), ("tenacious", 120), ("tacit", 90), ("ephemeral", 70),
    ("pernicious", 65), ("esoteric", 55), ("magnanimous", 45), ("perfunctory", 35),
    ("recalcitrant", 30), ("intransigent", 25), ("sycophantic", 20),
]

# surfaces for function words; all tagged OTHER and most are stopwords
FUNCTION = [
    ("the", 6000000), ("a", 2500000), ("an", 400000), ("of", 3000000), ("and", 2800000),
    ("to", 2600000), ("in", 2200000), ("on", 700000), ("at", 600000), ("with", 800000),
    ("from", 500000), ("by", 650000), ("for", 900000), ("as", 700000), ("or", 550000),
    ("but", 450000), ("not", 460000), ("no", 200000), ("so", 210000), ("if", 220000),
    ("then", 120000), ("than", 130000), ("too", 90000), ("very", 110000), ("just", 140000),
    ("also", 125000), ("there", 160000), ("here", 95000), ("when", 180000), ("where", 90000),
    ("why", 60000), ("how", 100000), ("all", 280000), ("any", 120000), ("both", 70000),
    ("each", 80000), ("few", 60000), ("more", 260000), ("most", 130000), ("other", 150000),
    ("some", 170000), ("such", 110000), ("only", 140000), ("own", 70000), ("same", 90000),
    ("it", 1200000), ("its", 300000), ("he", 900000), ("she", 600000), ("they", 500000),
    ("them", 250000), ("his", 550000), ("her", 450000), ("their", 300000), ("we", 450000),
    ("you", 800000), ("i", 1100000), ("me", 300000), ("my", 350000), ("your", 280000),
    ("our", 180000), ("us", 150000), ("this", 700000), ("that", 1500000), ("these", 160000),
    ("those", 120000), ("who", 240000), ("whom", 15000), ("whose", 25000), ("which", 260000),
    ("what", 300000), ("because", 130000), ("although", 40000), ("though", 60000),
    ("while", 90000), ("since", 70000), ("unless", 18000), ("whether", 45000),
    ("until", 50000), ("after", 150000), ("before", 120000), ("during", 80000),
    ("between", 100000), ("through", 110000), ("about", 250000), ("into", 180000),
    ("over", 160000), ("under", 80000), ("near", 40000), ("behind", 30000),
    ("however", 55000), ("therefore", 25000), ("moreover", 12000), ("nevertheless", 8000),
    ("furthermore", 9000), ("consequently", 7000), ("whereas", 14000), ("despite", 30000),
    ("albeit", 4000), ("notwithstanding", 1500), ("yesterday", 25000), ("today", 60000),
    ("tomorrow", 30000), ("often", 70000), ("always", 90000), ("never", 95000),
    ("sometimes", 45000), ("usually", 40000), ("again", 85000), ("away", 75000),
    ("quickly", 20000), ("slowly", 15000), ("quietly", 8000), ("carefully", 12000),
    ("together", 55000), ("alone", 30000), ("still", 120000), ("yet", 90000),
    ("already", 70000), ("almost", 60000), ("perhaps", 40000), ("rather", 50000),
    ("quite", 45000), ("really", 80000),
]

# auxiliaries and copulas: VERB entries whose lemma is the base form
AUX = [
    ("be", "be", 2000000), ("is", "be", 1800000), ("are", "be", 900000), ("was", "be", 1000000),
    ("were", "be", 400000), ("been", "be", 250000), ("being", "be", 120000), ("am", "be", 150000),
    ("have", "have", 800000), ("has", "have", 500000), ("had", "have", 600000), ("having", "have", 60000),
    ("do", "do", 500000), ("does", "do", 180000), ("did", "do", 250000), ("doing", "do", 70000),
    ("done", "do", 90000), ("will", "will", 400000), ("would", "would", 350000),
    ("can", "can", 380000), ("could", "could", 300000), ("should", "should", 180000),
    ("may", "may", 160000), ("might", "might", 120000), ("must", "must", 110000),
    ("shall", "shall", 20000),
]

STOPWORDS = sorted(
    {w for w, _ in FUNCTION}
    | {s for s, _, _ in AUX}
    | {l for _, l, _ in AUX}
)

IRREGULAR_PLURALS = {
    "man": ["men"], "woman": ["women"], "child": ["children"], "mouse": ["mice"],
    "sheep": [], "fish": [], "people": [], "news": [], "police": [],
    "life": ["lives"], "phenomenon": ["phenomena"], "hypothesis": ["hypotheses"],
    "analysis": ["analyses"],
}

# lemma -> (3sg, past, participle, ing); None means regular formation
IRREGULAR_VERBS = {
    "be": None,  # surfaces covered by AUX
    "say": ("says", "said", "said", "saying"),
    "go": ("goes", "went", "gone", "going"),
    "get": ("gets", "got", "gotten", "getting"),
    "see": ("sees", "saw", "seen", "seeing"),
    "make": ("makes", "made", "made", "making"),
    "know": ("knows", "knew", "known", "knowing"),
    "take": ("takes", "took", "taken", "taking"),
    "come": ("comes", "came", "come", "coming"),
    "think": ("thinks", "thought", "thought", "thinking"),
    "give": ("gives", "gave", "given", "giving"),
    "find": ("finds", "found", "found", "finding"),
    "tell": ("tells", "told", "told", "telling"),
    "run": ("runs", "ran", "run", "running"),
    "feel": ("feels", "felt", "felt", "feeling"),
    "leave": ("leaves", "left", "left", "leaving"),
    "eat": ("eats", "ate", "eaten", "eating"),
    "read": ("reads", "read", "read", "reading"),
    "buy": ("buys", "bought", "bought", "buying"),
    "write": ("writes", "wrote", "written", "writing"),
    "meet": ("meets", "met", "met", "meeting"),
    "stop": ("stops", "stopped", "stopped", "stopping"),
    "sit": ("sits", "sat", "sat", "sitting"),
    "keep": ("keeps", "kept", "kept", "keeping"),
    "speak": ("speaks", "spoke", "spoken", "speaking"),
    "pay": ("pays", "paid", "paid", "paying"),
    "stand": ("stands", "stood", "stood", "standing"),
    "drink": ("drinks", "drank", "drunk", "drinking"),
    "bring": ("brings", "brought", "brought", "bringing"),
    "sleep": ("sleeps", "slept", "slept", "sleeping"),
    "sell": ("sells", "sold", "sold", "selling"),
    "hold": ("holds", "held", "held", "holding"),
    "teach": ("teaches", "taught", "taught", "teaching"),
    "drive": ("drives", "drove", "driven", "driving"),
    "sing": ("sings", "sang", "sung", "singing"),
    "fly": ("flies", "flew", "flown", "flying"),
    "forget": ("forgets", "forgot", "forgotten", "forgetting"),
    "swim": ("swims", "swam", "swum", "swimming"),
    "ride": ("rides", "rode", "ridden", "riding"),
    "understand": ("understands", "understood", "understood", "understanding"),
}

VOWELS = "aeiou"


def plural(lemma):
    if lemma in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[lemma]
    if lemma.endswith(("s", "x", "z", "ch", "sh")):
        return [lemma + "es"]
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in VOWELS:
        return [lemma[:-1] + "ies"]
    return [lemma + "s"]


def verb_forms(lemma):
    if lemma in IRREGULAR_VERBS:
        forms = IRREGULAR_VERBS[lemma]
        return [] if forms is None else list(forms)
    if lemma.endswith(("s", "x", "z", "ch", "sh")):
        third = lemma + "es"
    elif lemma.endswith("y") and lemma[-2] not in VOWELS:
        third = lemma[:-1] + "ies"
    else:
        third = lemma + "s"
    if lemma.endswith("e"):
        past = lemma + "d"
        ing = lemma[:-1] + "ing"
    elif lemma.endswith("y") and lemma[-2] not in VOWELS:
        past = lemma[:-1] + "ied"
        ing = lemma + "ing"
    else:
        past = lemma + "ed"
        ing = lemma + "ing"
    return [third, past, past, ing]


def main():
    rows = {}

    def put(surface, lemma, pos, freq):
        if surface not in rows:
            rows[surface] = (lemma, pos, freq)

    for surface, lemma, freq in AUX:
        put(surface, lemma, "VERB", freq)
    for lemma, freq in NOUNS:
        put(lemma, lemma, "NOUN", freq)
        for p in plural(lemma):
            put(p, lemma, "NOUN", freq)
    for lemma, freq in VERBS:
        put(lemma, lemma, "VERB", freq)
        for f in verb_forms(lemma):
            put(f, lemma, "VERB", freq)
    for lemma, freq in ADJS:
        put(lemma, lemma, "ADJ", freq)
    for surface, freq in FUNCTION:
        put(surface, surface, "OTHER", freq)

    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "lexicon.tsv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# surface\tlemma\tpos\tfrequency\n")
        for surface in sorted(rows):
            lemma, pos, freq = rows[surface]
            fh.write(f"{surface}\t{lemma}\t{pos}\t{freq}\n")
    with open(OUT / "stopwords.txt", "w", encoding="utf-8", newline="\n") as fh:
        for w in STOPWORDS:
            fh.write(w + "\n")
    print(f"wrote {len(rows)} entries, {len(STOPWORDS)} stopwords")


if __name__ == "__main__":
    main()
