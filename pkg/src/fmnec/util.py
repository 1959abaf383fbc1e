"""Shared plumbing: atomic file writes, stable seed derivation, line parsing."""

from __future__ import annotations

import hashlib
import os
import tempfile
from contextlib import contextmanager

from .errors import DataFormatError


def format_g17(value: float) -> str:
    """Render a float with 17 significant digits (lossless text round-trip)."""
    return f"{value:.17g}"


def derive_seed(seed: int, *parts: str) -> int:
    """Derive a child seed from a base seed and string tags.

    Uses a keyed digest instead of ``hash()`` so the derivation is stable
    across processes and platforms; reproducibility of per-component RNG
    streams depends on it.
    """
    digest = hashlib.blake2b(digest_size=8)
    digest.update(str(int(seed)).encode("ascii"))
    for part in parts:
        raw = str(part).encode("utf-8")
        digest.update(len(raw).to_bytes(4, "little"))
        digest.update(raw)
    return int.from_bytes(digest.digest(), "little") >> 1


@contextmanager
def atomic_write(path):
    """Open a text file for writing via a temp file renamed into place.

    Interrupted writers never leave a partial file at the target path.
    """
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp.", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    os.replace(tmp, path)


class LineCursor:
    """Sequential view over file lines that tracks position for error messages."""

    def __init__(self, lines, path=None):
        self._lines = lines
        self.path = path
        self.lineno = 0  # 1-based number of the last line handed out

    def take(self, what: str) -> str:
        if self.lineno >= len(self._lines):
            raise self.error(f"unexpected end of file while reading {what}")
        line = self._lines[self.lineno]
        self.lineno += 1
        return line.rstrip("\n")

    def at_end(self) -> bool:
        return self.lineno >= len(self._lines)

    def error(self, message: str) -> DataFormatError:
        return DataFormatError(message, path=self.path, line=self.lineno or None)


def format_table(rows: list[list[str]]) -> str:
    """Align rows into columns: first column left-aligned, the rest right-aligned."""
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])]
        cells += [row[col].rjust(widths[col]) for col in range(1, len(row))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
