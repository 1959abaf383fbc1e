"""Sparse text data files: ``<label> <index>:<value> ...``, one instance per line.

Binary files carry labels +1/-1 directly.  Tagged (multiclass) files carry
non-negative integer labels plus a sidecar ``<path>.tags`` file mapping the
integers back to tag names, one per line, line number = integer label.
"""

from __future__ import annotations

from .errors import DataFormatError
from .fm import SparseVector
from .train import LabeledInstance
from .util import atomic_write, format_g17


def _format_line(label: int, x: SparseVector) -> str:
    fields = [str(label)]
    fields.extend(f"{i}:{format_g17(v)}" for i, v in x.to_pairs())
    return " ".join(fields)


def _parse_line(line: str, path: str, lineno: int):
    parts = line.split()
    try:
        label = int(parts[0])
    except ValueError:
        raise DataFormatError(f"bad label {parts[0]!r}", path, lineno) from None
    pairs = []
    for field in parts[1:]:
        idx_text, sep, val_text = field.partition(":")
        if not sep:
            raise DataFormatError(f"expected index:value, got {field!r}", path, lineno)
        try:
            pairs.append((int(idx_text), float(val_text)))
        except ValueError:
            raise DataFormatError(f"expected index:value, got {field!r}", path, lineno) from None
    try:
        return label, SparseVector.from_pairs(pairs)
    except ValueError as exc:
        raise DataFormatError(str(exc), path, lineno) from None


def write_sparse_text(path, instances) -> None:
    with atomic_write(path) as fh:
        for inst in instances:
            fh.write(_format_line(int(inst.y), inst.x) + "\n")


def read_sparse_text(path) -> list[LabeledInstance]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            label, x = _parse_line(line, str(path), lineno)
            try:
                out.append(LabeledInstance(x, label))
            except ValueError as exc:
                raise DataFormatError(str(exc), str(path), lineno) from None
    return out


def tags_sidecar_path(path) -> str:
    return f"{path}.tags"


def write_tagged_sparse_text(path, data) -> None:
    """Write (vector, tag) pairs as integer labels plus the tag sidecar file."""
    data = list(data)
    tags = sorted({tag for _, tag in data})
    ids = {tag: i for i, tag in enumerate(tags)}
    with atomic_write(path) as fh:
        for x, tag in data:
            fh.write(_format_line(ids[tag], x) + "\n")
    with atomic_write(tags_sidecar_path(path)) as fh:
        for tag in tags:
            fh.write(tag + "\n")


def read_tagged_sparse_text(path) -> list[tuple[SparseVector, str]]:
    sidecar = tags_sidecar_path(path)
    with open(sidecar, encoding="utf-8") as fh:
        tags = [line.rstrip("\n") for line in fh]
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            label, x = _parse_line(line, str(path), lineno)
            if not 0 <= label < len(tags):
                raise DataFormatError(
                    f"label {label} outside tag table of size {len(tags)}", str(path), lineno
                )
            out.append((x, tags[label]))
    return out
