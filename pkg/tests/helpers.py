"""Shared builders for the test suite: random models, XOR fixtures, corpora."""

from __future__ import annotations

import numpy as np

from fmnec import FMModel, LabeledInstance, SparseVector
from fmnec.util import atomic_write

XOR_PATTERNS = [((), -1), ((0,), 1), ((1,), 1), ((0, 1), -1)]


def random_model(rng, n, k, scale=0.5):
    return FMModel(float(rng.normal()), rng.normal(0, scale, n), rng.normal(0, scale, (n, k)))


def random_instance(rng, n, max_nnz, min_nnz=0):
    nnz = int(rng.integers(min_nnz, max_nnz + 1))
    idx = np.sort(rng.choice(n, size=nnz, replace=False))
    vals = rng.uniform(0.1, 2.0, nnz) * rng.choice([-1.0, 1.0], nnz)
    return SparseVector(idx, vals)


def xor_clean_instances():
    """The four XOR patterns over two indicator features, one instance each."""
    return [
        LabeledInstance(SparseVector(list(feats), [1.0] * len(feats)), y)
        for feats, y in XOR_PATTERNS
    ]


def make_xor_split(seed=7, copies=250, noise=0.1, split=0.8):
    """Noisy XOR instances, shuffled and split into train/test lists."""
    rng = np.random.default_rng(seed)
    instances = []
    for feats, y in XOR_PATTERNS:
        for _ in range(copies):
            label = -y if rng.random() < noise else y
            instances.append(LabeledInstance(SparseVector(list(feats), [1.0] * len(feats)), label))
    order = rng.permutation(len(instances))
    instances = [instances[i] for i in order]
    cut = int(split * len(instances))
    return instances[:cut], instances[cut:]


def make_xor_tagged(copies, seed, positive="ENT", negative="O"):
    """(vector, tag) pairs realizing clean XOR, for multiclass and sweep tests."""
    rng = np.random.default_rng(seed)
    data = []
    for feats, y in XOR_PATTERNS:
        for _ in range(copies):
            tag = positive if y > 0 else negative
            data.append((SparseVector(list(feats), [1.0] * len(feats)), tag))
    order = rng.permutation(len(data))
    return [data[i] for i in order]


def accuracy(model, data):
    hits = sum((1 if model.predict_raw(inst.x) > 0 else -1) == inst.y for inst in data)
    return hits / len(data)


def write_xor_corpus(path, copies, noise, seed, start_id=0):
    """Column-format corpus whose candidates realize a noisy XOR.

    Each sentence holds one unique capitalized candidate token plus zero, one,
    or two lowercase context words (``alpha``/``beta``); a candidate is tagged
    B-PER when exactly one context word is present, O otherwise, with labels
    flipped at the noise rate.  Running the corpus through the pipeline yields
    a two-tag task a linear model cannot solve.
    """
    rng = np.random.default_rng(seed)
    contexts = [((), -1), (("alpha",), 1), (("beta",), 1), (("alpha", "beta"), -1)]
    items = []
    ident = start_id
    for ctx, y in contexts:
        for _ in range(copies):
            label = -y if rng.random() < noise else y
            items.append((ctx, label, f"Xq{ident:05d}"))
            ident += 1
    order = rng.permutation(len(items))
    with atomic_write(path) as fh:
        fh.write("-DOCSTART- -X- -X- O\n\n")
        for i in order:
            ctx, label, surface = items[i]
            tag = "B-PER" if label > 0 else "O"
            fh.write(f"{surface} NNP I-NP {tag}\n")
            for word in ctx:
                fh.write(f"{word} NN I-NP O\n")
            fh.write("\n")
    return ident
