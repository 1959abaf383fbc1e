#!/usr/bin/env python3
"""From a raw column-format corpus to sparse training vectors.

The ingestion side of the pipeline: parse BIO-tagged sentences, pull out
entity-mention candidates (entity spans plus capitalized non-entity tokens),
drop evaluation candidates whose surface was already seen in training, and
turn the survivors into binary feature vectors.
"""

import os
import tempfile

from fmnec import (
    FeatureSpace,
    corpus_stats,
    extract_candidates,
    extract_features,
    filter_unknown,
    format_stats_table,
    parse_column_file,
)

TRAIN = """\
-DOCSTART- -X- -X- O

EU NNP I-NP I-ORG
rejects VBZ I-VP O
German JJ I-NP I-MISC
call NN I-NP O
to TO I-VP O
boycott VB I-VP O
British JJ I-NP I-MISC
lamb NN I-NP O
. . O O

Peter NNP I-NP I-PER
Blackburn NNP I-NP I-PER
said VBD I-VP O
on IN I-PP O
Thursday NNP I-NP O
. . O O
"""

DEV = """\
Peter NNP I-NP I-PER
Schmidt NNP I-NP I-PER
visited VBD I-VP O
Ulaanbaatar NNP I-NP I-LOC
. . O O
"""

workdir = tempfile.mkdtemp(prefix="fmnec-demo-")
train_path = os.path.join(workdir, "train.txt")
dev_path = os.path.join(workdir, "dev.txt")
with open(train_path, "w") as fh:
    fh.write(TRAIN)
with open(dev_path, "w") as fh:
    fh.write(DEV)

# The tag column here uses bare I-X starts; the parser repairs them to B-X.
train_sents = parse_column_file(train_path, token_column=0, tag_column=3)
print("first sentence tags:", train_sents[0].tags)

train_cands = extract_candidates(train_sents)
print("\ntraining candidates (tag, span | left ... right):")
for c in train_cands:
    print(f"  {c.gold_tag:5s} {c.surface:15s} | {' '.join(c.left_context)} ... {' '.join(c.right_context)}")

# "Thursday" shows up because capitalized non-entity tokens become O candidates.
print("\ncounts:")
print(format_stats_table({"training": corpus_stats(train_cands)}))

# The unknown filter removes dev candidates whose surface occurred in training:
# "Peter Schmidt" survives ("Peter Blackburn" is a different surface), and so
# does "Ulaanbaatar"; a repeated "EU" would be dropped.
dev_cands = extract_candidates(parse_column_file(dev_path, 0, 3))
kept = filter_unknown(dev_cands, train_cands)
print("\ndev candidates after the unknown filter:", [c.surface for c in kept])

# Feature extraction applies the span/context templates.
sample = train_cands[0]
print(f"\nfeatures of {sample.surface!r}:")
for name in sorted(extract_features(sample)):
    print("  ", name)

# The feature space is fit on training candidates only; unseen dev features
# are silently dropped at vectorization time.
space = FeatureSpace.fit(train_cands)
print(f"\nfeature space size: {len(space)}")
x = space.vectorize_candidate(kept[0])
print(f"vector of {kept[0].surface!r}: {x.nnz} of {len(extract_features(kept[0]))} features survive")
