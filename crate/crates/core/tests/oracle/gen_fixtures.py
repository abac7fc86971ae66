"""Regenerate the frozen reference fixtures under tests/data/.

Requires NLTK with the WordNet 3.0 corpus on NLTK_DATA. The reference
scorer below is an independent Python implementation running on NLTK's
WordNet interface; the Rust crate never calls into it.

    NLTK_DATA=/path/to/nltk_data python3 gen_fixtures.py
"""
import os
import random
import warnings

warnings.filterwarnings("ignore")

import nltk
from nltk.corpus import wordnet as wn

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data")

NOUN_TAGS = {"NN", "NNP", "PRP"}
VERB_TAGS = {"VB", "VBN"}


def bucket_weight(words1, words2, bonus_cutoff=2, bonus=0.2):
    weight = 0
    if not (words1 and words2):
        return weight
    for w1 in words1:
        syns1 = wn.synsets(w1)
        for w2 in words2:
            d = nltk.edit_distance(w1, w2)
            syns2 = wn.synsets(w2)
            if not syns1 or not syns2:
                continue
            s = syns1[0].wup_similarity(syns2[0])
            if s:
                weight += s / (len(words1) + len(words2))
            if d <= bonus_cutoff:
                weight += bonus
    return weight


def reference_score(tagged1, tagged2):
    """Score two pre-tagged queries: lists of (word, penn_tag)."""
    if any(t == "CD" for _, t in tagged1) or any(t == "CD" for _, t in tagged2):
        return 0.0, 0.0, 0.0
    n1 = [w for w, t in tagged1 if t in NOUN_TAGS]
    n2 = [w for w, t in tagged2 if t in NOUN_TAGS]
    v1 = [w for w, t in tagged1 if t in VERB_TAGS]
    v2 = [w for w, t in tagged2 if t in VERB_TAGS]
    noun = bucket_weight(n1, n2)
    verb = bucket_weight(v1, v2)
    return noun, verb, noun + verb


def wup_pairs(path, seed=20170418):
    rng = random.Random(seed)
    with open(path, "w") as f:
        f.write("# pos\toffset_a\toffset_b\tname_a\tname_b\twup\n")
        for pos, count in (("n", 1000), ("v", 200)):
            pool = sorted(wn.all_synsets(pos), key=lambda s: s.offset())
            for _ in range(count):
                a, b = rng.choice(pool), rng.choice(pool)
                w = a.wup_similarity(b)
                f.write(
                    f"{pos}\t{a.offset()}\t{b.offset()}\t{a.name()}\t{b.name()}\t"
                    f"{'none' if w is None else repr(w)}\n"
                )


PRONOUNS = {"i", "you", "he", "she", "it", "we", "they", "me", "him", "her",
            "us", "them", "my", "your", "his", "its", "our", "their"}

NOUN_CANDIDATES = """
hotel bank city map university college museum library hospital school
dog cat horse bird fish puppy kitten lion tiger bear wolf fox
car truck bicycle airplane boat train bus taxi motorcycle
guitar piano violin drum music song album lyrics
pizza bread cheese chicken beef salad soup coffee tea wine beer
computer laptop printer keyboard monitor software internet
doctor nurse lawyer teacher student engineer farmer
shirt shoe dress jacket hat coat
house apartment kitchen bathroom bedroom garden garage
river lake mountain ocean island forest desert beach
war battle army soldier peace history
church temple mosque
weather rain snow storm hurricane
recipe diet vitamin medicine disease cancer diabetes
movie film actor actress television radio newspaper magazine
football baseball basketball soccer tennis golf hockey
money loan mortgage insurance tax credit debt
job career salary resume
wedding baby birthday holiday vacation
diamond gold silver ring necklace
""".split()

VERB_CANDIDATES = """
eat download install learn bake sing donate compare buy sell rent
repair cook clean paint build fix teach swim drive fly read write
play watch listen travel adopt bury exercise breathe forget remember
borrow lend hire apply register renew cancel refinance
""".split()


def unambiguous(word, pos):
    syns = wn.synsets(word)
    if not syns or any(s.pos() != pos for s in syns):
        return False
    return wn._morphy(word, pos) == [word] and not (pos == "n" and word.endswith("s"))


def scorer_suite(path, seed=4496):
    rng = random.Random(seed)
    nouns = [w for w in NOUN_CANDIDATES if unambiguous(w, "n")]
    verbs = [w for w in VERB_CANDIDATES if unambiguous(w, "v")]
    pronouns = ["i", "we", "it", "my"]

    def make_query():
        words = []
        if rng.random() < 0.35:
            words.append((rng.choice(verbs), "VB"))
        for _ in range(rng.randint(1, 2)):
            words.append((rng.choice(nouns), "NN"))
        if rng.random() < 0.1:
            words.insert(0, (rng.choice(pronouns), "PRP"))
        if len(words) < 2:
            words.append((rng.choice(nouns), "NN"))
        return words

    seen = set()
    rows = []
    while len(rows) < 100:
        q1, q2 = make_query(), make_query()
        if rng.random() < 0.3:
            q2 = q2[:1] + [rng.choice(q1)]
        t1 = " ".join(w for w, _ in q1)
        t2 = " ".join(w for w, _ in q2)
        if t1 == t2 or (t1, t2) in seen:
            continue
        seen.add((t1, t2))
        noun, verb, total = reference_score(q1, q2)
        tags1 = " ".join(t for _, t in q1)
        tags2 = " ".join(t for _, t in q2)
        rows.append((t1, t2, tags1, tags2, noun, verb, total))
    with open(path, "w") as f:
        f.write("# query_a\tquery_b\ttags_a\ttags_b\tnoun_weight\tverb_weight\ttotal\n")
        for r in rows:
            f.write("\t".join(r[:4]) + "\t" + "\t".join(repr(float(x)) for x in r[4:]) + "\n")
    return nouns, verbs


def first_senses(path, words):
    with open(path, "w") as f:
        f.write("# word\tfirst_sense_name\tsense_count\n")
        for w in words:
            syns = wn.synsets(w)
            f.write(f"{w}\t{syns[0].name() if syns else 'none'}\t{len(syns)}\n")


def misc(path):
    dog, cat = wn.synset("dog.n.01"), wn.synset("cat.n.01")
    entity = wn.synset("entity.n.01")
    ww = bucket_weight(["world", "war"], ["war"])
    sample = reference_score(
        [("world", "NN"), ("war", "NN")],
        [("the", "DT"), ("great", "JJ"), ("war", "NN")],
    )
    with open(path, "w") as f:
        f.write(f"dog_offset\t{dog.offset()}\n")
        f.write(f"cat_offset\t{cat.offset()}\n")
        f.write(f"entity_offset\t{entity.offset()}\n")
        f.write(f"dog_max_depth\t{dog.max_depth()}\n")
        f.write(f"dog_cat_lcs\t{dog.lowest_common_hypernyms(cat)[0].name()}\n")
        f.write(f"dog_cat_lcs_offset\t{dog.lowest_common_hypernyms(cat)[0].offset()}\n")
        f.write(f"dog_cat_wup\t{dog.wup_similarity(cat)!r}\n")
        f.write(f"world_war__war\t{ww!r}\n")
        f.write(f"sample_call_total\t{sample[2]!r}\n")
        f.write(f"noun_synsets\t{len(list(wn.all_synsets('n')))}\n")
        f.write(f"verb_synsets\t{len(list(wn.all_synsets('v')))}\n")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    wup_pairs(os.path.join(OUT, "wup_reference.tsv"))
    nouns, verbs = scorer_suite(os.path.join(OUT, "scorer_reference.tsv"))
    words = sorted(set(NOUN_CANDIDATES + VERB_CANDIDATES + nouns + verbs + [
        "run", "dogs", "geese", "churches", "washington", "dc", "malls",
        "great", "world", "the", "in", "is", "are", "be", "a", "axes",
        "running", "ran", "better", "women", "boxes", "flies",
    ]))
    first_senses(os.path.join(OUT, "first_sense_reference.tsv"), words)
    misc(os.path.join(OUT, "reference_values.tsv"))
