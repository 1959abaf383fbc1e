"""One-vs-all multiclass wrapper around binary factorization machines."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .fm import FMModel, SparseVector, read_fm_model, write_fm_model
from .train import LabeledInstance, TrainConfig, train_binary
from .util import LineCursor, atomic_write, derive_seed

OVA_FORMAT_HEADER = "FMOVA v1"


@dataclass(eq=False)
class OvAModel:
    """One binary model per tag, stored in lexicographic tag order."""

    labels: list[str]
    models: list[FMModel] = field(repr=False)

    def __post_init__(self):
        if not self.labels:
            raise ConfigError("a one-vs-all model needs at least one label")
        if list(self.labels) != sorted(set(self.labels)):
            raise ConfigError("labels must be unique and lexicographically sorted")
        if len(self.models) != len(self.labels):
            raise ConfigError("exactly one binary model required per label")
        dims = {(m.n, m.k) for m in self.models}
        if len(dims) > 1:
            raise ConfigError(f"member models disagree on (n, k): {sorted(dims)}")

    @property
    def n(self) -> int:
        return self.models[0].n

    @property
    def k(self) -> int:
        return self.models[0].k

    def predict_scores(self, x: SparseVector) -> list[tuple[str, float]]:
        """Raw score per tag, in label order."""
        return [(label, model.predict_raw(x)) for label, model in zip(self.labels, self.models)]

    def predict_label(self, x: SparseVector) -> str:
        """Argmax of the raw scores; ties go to the lexicographically smallest tag."""
        scores = [model.predict_raw(x) for model in self.models]
        return self.labels[int(np.argmax(scores))]

    def __eq__(self, other):
        if not isinstance(other, OvAModel):
            return NotImplemented
        return self.labels == other.labels and self.models == other.models


def train_ova(data, n: int, config: TrainConfig, on_epoch=None) -> OvAModel:
    """Train one binary machine per distinct tag: that tag versus everything else.

    Each label trains under a seed derived from (config.seed, label), so the
    result is reproducible and independent of tag order in ``data``.
    ``on_epoch``, when given, receives (label, epoch index, mean loss).
    """
    data = list(data)
    if not data:
        raise ConfigError("training data is empty")
    if any(not isinstance(tag, str) or not tag for _, tag in data):
        raise ConfigError("every training instance needs a non-empty tag")
    labels = sorted({tag for _, tag in data})
    models = []
    for label in labels:
        binary = [LabeledInstance(x, 1 if tag == label else -1) for x, tag in data]
        label_config = replace(config, seed=derive_seed(config.seed, "ova-label", label))
        callback = None
        if on_epoch is not None:
            def callback(epoch, mean_loss, _label=label):
                on_epoch(_label, epoch, mean_loss)
        models.append(train_binary(binary, n, label_config, on_epoch=callback))
    return OvAModel(labels, models)


def write_ova_model(fh, model: OvAModel) -> None:
    """Emit the FMOVA v1 block: header, label count, then per label the tag
    name line followed by an embedded FMMODEL v1 block."""
    fh.write(OVA_FORMAT_HEADER + "\n")
    fh.write(f"{len(model.labels)}\n")
    for label, member in zip(model.labels, model.models):
        fh.write(label + "\n")
        write_fm_model(fh, member)


def read_ova_model(cursor: LineCursor) -> OvAModel:
    header = cursor.take("multiclass model header")
    if header != OVA_FORMAT_HEADER:
        raise cursor.error(f"expected {OVA_FORMAT_HEADER!r} header, got {header!r}")
    count_line = cursor.take("label count")
    try:
        count = int(count_line)
    except ValueError:
        raise cursor.error(f"label count must be an integer, got {count_line!r}") from None
    if count < 1:
        raise cursor.error("label count must be >= 1")
    labels = []
    models = []
    for _ in range(count):
        labels.append(cursor.take("label name"))
        models.append(read_fm_model(cursor))
    try:
        return OvAModel(labels, models)
    except ConfigError as exc:
        raise cursor.error(str(exc)) from None


def save_ova_model(model: OvAModel, path) -> None:
    with atomic_write(path) as fh:
        write_ova_model(fh, model)


def load_ova_model(path) -> OvAModel:
    with open(path, encoding="utf-8") as fh:
        cursor = LineCursor(fh.readlines(), path=str(path))
    model = read_ova_model(cursor)
    if not cursor.at_end():
        raise cursor.error("trailing content after model block")
    return model
