#!/usr/bin/env python3
# Copyright 2026 The Emoint Authors.
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

"""Writes the synthetic mini corpus under data/mini.

Each tweet mixes filler words with a few cue words drawn from a planted
lexicon; its intensity is a noisy function of the cue weights. The same cue
weights are published as a numeric lexicon, and the toy embeddings place cue
words along an emotion axis, so both L and WE features carry signal.
"""

import argparse
import os
import random

EMOTIONS = ["anger", "fear", "joy", "sadness"]

CUES = {
    "anger": {
        "furious": 0.95, "livid": 0.9, "enraged": 0.9, "outraged": 0.8,
        "fuming": 0.8, "mad": 0.6, "angry": 0.65, "irritated": 0.45,
        "annoyed": 0.4, "cranky": 0.35, "grumpy": 0.3, "bothered": 0.2,
    },
    "fear": {
        "terrified": 0.95, "petrified": 0.9, "panicking": 0.85,
        "horrified": 0.8, "scared": 0.65, "afraid": 0.6, "frightened": 0.7,
        "anxious": 0.45, "nervous": 0.4, "worried": 0.35, "uneasy": 0.3,
        "wary": 0.2,
    },
    "joy": {
        "ecstatic": 0.95, "overjoyed": 0.9, "thrilled": 0.85,
        "elated": 0.85, "delighted": 0.7, "happy": 0.6, "glad": 0.45,
        "cheerful": 0.5, "pleased": 0.4, "content": 0.3, "smiling": 0.35,
        "fine": 0.15,
    },
    "sadness": {
        "devastated": 0.95, "heartbroken": 0.9, "miserable": 0.85,
        "despairing": 0.85, "depressed": 0.75, "sad": 0.6, "gloomy": 0.5,
        "unhappy": 0.5, "down": 0.35, "blue": 0.3, "glum": 0.3,
        "meh": 0.15,
    },
}

FILLERS = (
    "today the my this so just really about work home morning night "
    "people again still week bus train coffee phone meeting weekend "
    "everyone feel feeling kind of what why now here there after before "
    "with without traffic weather news game team class friends family"
).split()

TAILS = ["!", ".", "...", "!!", "", "", ":(", ":)"]

POLARITY = {"anger": "negative", "fear": "negative", "joy": "positive",
            "sadness": "negative"}


def make_tweet(rng, emotion):
    cues = CUES[emotion]
    words = list(cues)
    k = rng.choice([1, 1, 2, 2, 3])
    chosen = [rng.choice(words) for _ in range(k)]
    weight = sum(cues[w] for w in chosen) / k
    weight += 0.08 * (k - 1)
    tokens = [rng.choice(FILLERS) for _ in range(rng.randint(4, 9))]
    for w in chosen:
        tokens.insert(rng.randint(0, len(tokens)), w)
    if rng.random() < 0.3:
        tokens.append("#" + emotion)
    text = " ".join(tokens) + rng.choice(TAILS)
    score = min(1.0, max(0.0, 0.05 + 0.9 * weight + rng.gauss(0.0, 0.06)))
    return text, round(score, 3)


def write_embeddings(rng, path):
    dim = 10
    rows = []
    for e_index, emotion in enumerate(EMOTIONS):
        for word, w in CUES[emotion].items():
            vec = [rng.gauss(0.0, 0.05) for _ in range(dim)]
            vec[e_index] += w
            vec[4 + e_index] += 0.5 * w
            vec[8] += w
            rows.append((word, vec))
    for word in FILLERS:
        rows.append((word, [rng.gauss(0.0, 0.1) for _ in range(dim)]))
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(rows)} {dim}\n")
        for word, vec in rows:
            f.write(word + " " + " ".join(f"{v:.4f}" for v in vec) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "mini"))
    parser.add_argument("--per-emotion", type=int, default=80)
    parser.add_argument("--train-fraction", type=float, default=0.6)
    parser.add_argument("--seed", type=int, default=2017)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)
    n_train = int(round(args.per_emotion * args.train_fraction))
    for emotion in EMOTIONS:
        rows = []
        for i in range(args.per_emotion):
            text, score = make_tweet(rng, emotion)
            rows.append(f"{emotion}-{i + 1:03d}\t{text}\t{emotion}\t{score}\n")
        for name, part in (("train", rows[:n_train]), ("test", rows[n_train:])):
            path = os.path.join(args.out, f"{emotion}-{name}.tsv")
            with open(path, "w", encoding="utf-8") as f:
                f.writelines(part)

    with open(os.path.join(args.out, "lexicon-intensity.tsv"), "w",
              encoding="utf-8") as f:
        f.write("#mode=numeric\n")
        for emotion in EMOTIONS:
            for word, w in CUES[emotion].items():
                f.write(f"{word}\t{emotion}\t{w}\n")
    with open(os.path.join(args.out, "lexicon-polarity.tsv"), "w",
              encoding="utf-8") as f:
        f.write("#mode=nominal\n")
        for emotion in EMOTIONS:
            for word in CUES[emotion]:
                f.write(f"{word}\t{POLARITY[emotion]}\t1\n")
    write_embeddings(rng, os.path.join(args.out, "embeddings-10d.txt"))
    with open(os.path.join(args.out, "queries.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(EMOTIONS) + "\n")


if __name__ == "__main__":
    main()
