#!/usr/bin/env python3
# Copyright 2026 The tritag Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/sample.tt, the bundled tagged corpus.

The corpus is synthetic English-like text with the statistical traits the
tagger cares about: a Zipf-shaped vocabulary, tag-ambiguous word forms
(noun/verb, past/participle-adjective, plural/3sg), morphologically regular
suffixes on open-class words, capitalized proper nouns and sentence starts,
and a long tail of words that appear once or twice so held-out folds contain
unknown tokens. Fixed seed; the committed file is byte-reproducible.

Usage: gen_sample.py [TOKENS] [OUT]   (defaults: 12000 data/sample.tt)
"""

import random
import sys

SEED = 7

DT = [("the", 30), ("a", 18), ("this", 5), ("that", 4), ("each", 2), ("every", 2)]
IN_ = [("of", 12), ("in", 10), ("on", 7), ("with", 6), ("from", 5), ("under", 3),
       ("at", 4), ("by", 4), ("for", 6), ("over", 2)]
PRP = [("he", 8), ("she", 8), ("they", 9), ("we", 6), ("it", 7)]
CC = [("and", 10), ("but", 4), ("or", 3)]
RB = [("often", 4), ("never", 3), ("quickly", 3), ("slowly", 2), ("carefully", 2),
      ("again", 3), ("soon", 2), ("really", 2), ("gently", 1), ("firmly", 1)]
JJ = [("small", 5), ("large", 5), ("old", 4), ("new", 4), ("quiet", 2),
      ("famous", 2), ("useful", 2), ("nervous", 2), ("active", 2), ("formal", 1),
      ("tired", 3), ("closed", 3), ("finished", 2)]  # -ed forms shared with VBD
NN = [("report", 8), ("charge", 6), ("plan", 7), ("answer", 5), ("claim", 5),
      ("house", 7), ("river", 5), ("garden", 5), ("market", 5), ("teacher", 4),
      ("station", 4), ("question", 4), ("movement", 3), ("darkness", 2),
      ("witness", 3), ("painter", 3), ("letter", 4), ("village", 4),
      ("meeting", 3), ("building", 3), ("door", 4), ("road", 4), ("winter", 2),
      ("morning", 3), ("paper", 3), ("order", 3), ("visit", 3), ("offer", 3)]
NNS = [("plans", 4), ("reports", 4), ("charges", 3), ("answers", 2),
       ("houses", 3), ("letters", 3), ("teachers", 2), ("questions", 3),
       ("villages", 2), ("roads", 2), ("papers", 2), ("orders", 2),
       ("visits", 2), ("offers", 2)]
VB = [("plan", 4), ("charge", 3), ("report", 4), ("answer", 3), ("claim", 3),
      ("visit", 4), ("order", 3), ("offer", 3), ("watch", 3), ("follow", 3),
      ("open", 2), ("close", 2)]  # present after plural subjects
VBZ = [("plans", 3), ("charges", 2), ("reports", 3), ("answers", 2),
       ("visits", 3), ("orders", 2), ("offers", 2), ("watches", 2),
       ("follows", 3), ("opens", 2), ("closes", 2), ("knows", 3), ("owns", 2)]
VBD = [("closed", 4), ("finished", 3), ("tired", 1), ("opened", 4),
       ("watched", 4), ("followed", 4), ("visited", 3), ("ordered", 3),
       ("offered", 3), ("answered", 3), ("claimed", 3), ("planned", 3),
       ("reported", 3), ("charged", 2), ("knew", 2), ("owned", 2)]
NP = [("Marlow", 4), ("Benton", 4), ("Farway", 3), ("Selden", 3), ("Orlin", 2),
      ("Tessa", 3), ("Corvin", 2), ("Ashford", 2), ("Dunmore", 2), ("Hollis", 2)]
CD = [("two", 4), ("three", 3), ("seven", 2), ("1984", 1), ("40", 1), ("12", 1)]

STEM_ONSETS = ["b", "c", "d", "f", "g", "h", "l", "m", "n", "p", "r", "s",
               "t", "v", "w", "br", "cr", "dr", "fl", "gr", "pl", "st", "tr"]
STEM_VOWELS = ["a", "e", "i", "o", "u"]
STEM_CODAS = ["b", "d", "g", "k", "l", "m", "n", "p", "r", "t", "ss", "ck",
              "nd", "nt", "rm", "lt"]


def weighted(rng, pool):
    total = sum(w for _, w in pool)
    pick = rng.uniform(0, total)
    acc = 0.0
    for word, w in pool:
        acc += w
        if pick <= acc:
            return word
    return pool[-1][0]


def make_stem(rng, syllables):
    parts = []
    for _ in range(syllables):
        parts.append(rng.choice(STEM_ONSETS))
        parts.append(rng.choice(STEM_VOWELS))
    parts.append(rng.choice(STEM_CODAS))
    return "".join(parts)


def make_rare_pool(rng):
    """Low-frequency words with class-typical suffixes, 1-3 uses each."""
    pool = []  # (surface, tag)
    for _ in range(110):
        stem = make_stem(rng, rng.choice([1, 2]))
        suffix = rng.choice(["tion", "ness", "ment", "er", "", ""])
        pool.append((stem + suffix, "NN"))
    for _ in range(45):
        stem = make_stem(rng, rng.choice([1, 2]))
        suffix = rng.choice(["tions", "ments", "ers", "s", "s"])
        pool.append((stem + suffix, "NNS"))
    for _ in range(70):
        pool.append((make_stem(rng, rng.choice([1, 2])) + "ed", "VBD"))
    for _ in range(40):
        pool.append((make_stem(rng, rng.choice([1, 2])) + "s", "VBZ"))
    for _ in range(45):
        stem = make_stem(rng, rng.choice([1, 2]))
        suffix = rng.choice(["ous", "ive", "al", "ful", "ish"])
        pool.append((stem + suffix, "JJ"))
    for _ in range(25):
        pool.append((make_stem(rng, 1) + "ly", "RB"))
    for _ in range(45):
        stem = make_stem(rng, rng.choice([1, 2]))
        suffix = rng.choice(["", "ton", "burg", "ville", "wick"])
        pool.append((stem.capitalize() + suffix, "NP"))
    for _ in range(20):
        pool.append((str(rng.randint(10, 9999)), "CD"))
    rng.shuffle(pool)
    # Two thirds appear once, the rest twice or three times.
    uses = []
    for i, entry in enumerate(pool):
        uses.extend([entry] * (1 if i % 3 != 0 else rng.choice([2, 3])))
    rng.shuffle(uses)
    return uses


class Generator:
    def __init__(self, rng):
        self.rng = rng
        self.rare = make_rare_pool(rng)
        self.rare_next = 0

    def rare_or(self, tag, pool, rare_prob):
        if self.rng.random() < rare_prob and self.rare_next < len(self.rare):
            # Scan a short window for a rare word of the right class.
            for look in range(self.rare_next, min(self.rare_next + 12, len(self.rare))):
                if self.rare[look][1] == tag:
                    surface = self.rare[look][0]
                    self.rare[look] = self.rare[self.rare_next]
                    self.rare_next += 1
                    return surface
        return weighted(self.rng, pool)

    def noun_phrase(self, allow_pronoun=True):
        rng = self.rng
        roll = rng.random()
        if roll < 0.14:
            return [(self.rare_or("NP", NP, 0.35), "NP")], "sg"
        if allow_pronoun and roll < 0.30:
            word = weighted(rng, PRP)
            return [(word, "PRP")], "pl" if word == "they" or word == "we" else "sg"
        tokens = [(weighted(rng, DT), "DT")]
        if rng.random() < 0.3:
            tokens.append((self.rare_or("JJ", JJ, 0.22), "JJ"))
        if rng.random() < 0.18:
            tokens.append((self.rare_or("CD", CD, 0.3), "CD"))
            tokens.append((self.rare_or("NNS", NNS, 0.3), "NNS"))
            return tokens, "pl"
        if rng.random() < 0.22:
            tokens.append((self.rare_or("NNS", NNS, 0.3), "NNS"))
            return tokens, "pl"
        tokens.append((self.rare_or("NN", NN, 0.3), "NN"))
        return tokens, "sg"

    def prep_phrase(self):
        tokens = [(weighted(self.rng, IN_), "IN")]
        np, _ = self.noun_phrase(allow_pronoun=False)
        return tokens + np

    def verb_phrase(self, number):
        rng = self.rng
        tokens = []
        if rng.random() < 0.22:
            tokens.append((self.rare_or("RB", RB, 0.25), "RB"))
        roll = rng.random()
        if roll < 0.45:
            verb = ("VBD", self.rare_or("VBD", VBD, 0.3))
        elif number == "pl":
            verb = ("VB", weighted(rng, VB))
        else:
            verb = ("VBZ", self.rare_or("VBZ", VBZ, 0.28))
        tokens.append((verb[1], verb[0]))
        roll = rng.random()
        if roll < 0.55:
            np, _ = self.noun_phrase(allow_pronoun=False)
            tokens.extend(np)
            if rng.random() < 0.3:
                tokens.extend(self.prep_phrase())
        elif roll < 0.75:
            tokens.extend(self.prep_phrase())
        elif roll < 0.85:
            tokens.append((self.rare_or("RB", RB, 0.25), "RB"))
        return tokens

    def sentence(self):
        rng = self.rng
        subject, number = self.noun_phrase()
        tokens = subject + self.verb_phrase(number)
        if rng.random() < 0.22:
            tokens.append((",", "COMMA"))
            tokens.append((weighted(rng, CC), "CC"))
            subject2, number2 = self.noun_phrase()
            tokens += subject2 + self.verb_phrase(number2)
        elif rng.random() < 0.12:
            tokens.append((weighted(rng, CC), "CC"))
            tokens.extend(self.verb_phrase(number))
        ender = "." if rng.random() < 0.92 else ("?" if rng.random() < 0.5 else "!")
        tokens.append((ender, "SENT"))
        first, tag = tokens[0]
        if first[0].isalpha() and not first[0].isupper():
            tokens[0] = (first[0].upper() + first[1:], tag)
        return tokens


def main():
    target = int(sys.argv[1]) if len(sys.argv) > 1 else 12000
    out_path = sys.argv[2] if len(sys.argv) > 2 else "data/sample.tt"
    rng = random.Random(SEED)
    gen = Generator(rng)
    lines = []
    tokens = 0
    while tokens < target:
        sentence = gen.sentence()
        for surface, tag in sentence:
            lines.append(f"{surface}\t{tag}")
        lines.append("")
        tokens += len(sentence)
    text = "\n".join(lines)  # final blank entry yields the trailing newline
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    sys.stderr.write(f"wrote {tokens} tokens to {out_path}\n")


if __name__ == "__main__":
    main()
