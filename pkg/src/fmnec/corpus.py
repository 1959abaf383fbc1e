"""Column-format corpus ingestion, candidate extraction, and statistics.

Input files hold one token per line in whitespace-separated columns, with
blank lines between sentences and ``-DOCSTART-`` document markers skipped.
Candidates are the maximal B-X/I-X entity spans plus every capitalized
non-entity token (gold tag O); the unknown filter then drops evaluation
candidates whose surface form already occurs among training candidates.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import ConfigError, DataFormatError
from .features import Candidate
from .util import atomic_write, format_table


@dataclass
class Sentence:
    """One sentence as (surface, BIO tag) pairs."""

    tokens: list[tuple[str, str]]

    @property
    def words(self) -> list[str]:
        return [word for word, _ in self.tokens]

    @property
    def tags(self) -> list[str]:
        return [tag for _, tag in self.tokens]


def repair_bio(tags) -> list[str]:
    """Promote orphan I-X tags (sequence start or type break) to B-X."""
    fixed = []
    prev = "O"
    for tag in tags:
        if tag.startswith("I-") and prev not in (f"B-{tag[2:]}", f"I-{tag[2:]}"):
            tag = "B-" + tag[2:]
        fixed.append(tag)
        prev = tag
    return fixed


def parse_column_file(path, token_column: int = 0, tag_column: int = 3) -> list[Sentence]:
    """Read sentences from a whitespace-column token file, repairing BIO tags."""
    sentences: list[Sentence] = []
    current: list[tuple[str, str]] = []

    def flush():
        if current:
            words = [word for word, _ in current]
            tags = repair_bio(tag for _, tag in current)
            sentences.append(Sentence(list(zip(words, tags))))
            current.clear()

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                flush()
                continue
            if line.startswith("-DOCSTART-"):
                continue
            cols = line.split()
            for col in (token_column, tag_column):
                if col >= len(cols) or col < -len(cols):
                    raise DataFormatError(
                        f"row has {len(cols)} columns, column {col} requested",
                        path=str(path),
                        line=lineno,
                    )
            current.append((cols[token_column], cols[tag_column]))
    flush()
    return sentences


def _decode_spans(tags) -> list[tuple[int, int, str]]:
    """(start, end, type) of each maximal B-X/I-X run; orphan I-X opens a span."""
    tags = list(tags)
    spans = []
    start = None
    kind = None
    for pos, tag in enumerate(tags):
        if tag.startswith("B-") or (tag.startswith("I-") and kind != tag[2:]):
            if start is not None:
                spans.append((start, pos, kind))
            start, kind = pos, tag[2:]
        elif tag.startswith("I-"):
            continue
        else:
            if start is not None:
                spans.append((start, pos, kind))
            start = kind = None
    if start is not None:
        spans.append((start, len(tags), kind))
    return spans


def extract_candidates(sentences) -> list[Candidate]:
    """Entity-span candidates plus capitalized non-entity tokens (gold tag O).

    Contexts are all remaining sentence tokens on each side of the span.
    """
    out = []
    for sentence in sentences:
        words = sentence.words
        tags = sentence.tags
        starts = {s: (e, kind) for s, e, kind in _decode_spans(tags)}
        pos = 0
        while pos < len(words):
            if pos in starts:
                end, kind = starts[pos]
                out.append(Candidate(words[pos:end], words[:pos], words[end:], kind))
                pos = end
            else:
                if words[pos][0].isupper():
                    out.append(Candidate([words[pos]], words[:pos], words[pos + 1 :], "O"))
                pos += 1
    return out


def filter_unknown(eval_candidates, training_candidates) -> list[Candidate]:
    """Drop eval candidates whose surface occurs in training (case-insensitive)."""
    seen = {candidate.surface.lower() for candidate in training_candidates}
    return [c for c in eval_candidates if c.surface.lower() not in seen]


@dataclass(frozen=True)
class TagCount:
    tokens: int
    types: int


@dataclass
class CorpusStats:
    """Per-tag candidate counts: occurrences (tokens) and distinct lowercased
    surface forms (types)."""

    per_tag: dict[str, TagCount]

    @property
    def total_tokens(self) -> int:
        return sum(tc.tokens for tc in self.per_tag.values())


def corpus_stats(candidates) -> CorpusStats:
    tokens: dict[str, int] = defaultdict(int)
    surfaces: dict[str, set] = defaultdict(set)
    for candidate in candidates:
        if candidate.gold_tag is None:
            raise ConfigError("corpus statistics need gold-tagged candidates")
        tokens[candidate.gold_tag] += 1
        surfaces[candidate.gold_tag].add(candidate.surface.lower())
    return CorpusStats({tag: TagCount(tokens[tag], len(surfaces[tag])) for tag in tokens})


def tag_display_order(tags) -> list[str]:
    """Entity tags sorted lexicographically, the non-entity tag O last."""
    tags = set(tags)
    ordered = sorted(tag for tag in tags if tag != "O")
    if "O" in tags:
        ordered.append("O")
    return ordered


def format_stats_table(stats_by_split: dict[str, CorpusStats]) -> str:
    """Counts table: one row per tag, one column per split, cells "tokens (types)"."""
    splits = list(stats_by_split)
    tags = tag_display_order(tag for stats in stats_by_split.values() for tag in stats.per_tag)
    rows = [["tag", *splits]]
    for tag in tags:
        row = [tag]
        for split in splits:
            tc = stats_by_split[split].per_tag.get(tag)
            row.append(f"{tc.tokens:,} ({tc.types:,})" if tc else "-")
        rows.append(row)
    return format_table(rows)


def write_candidates_tsv(path, candidates) -> None:
    """Interchange file: tag, span, left context, right context (space-joined)."""
    with atomic_write(path) as fh:
        for c in candidates:
            fields = [
                c.gold_tag or "",
                c.surface,
                " ".join(c.left_context),
                " ".join(c.right_context),
            ]
            fh.write("\t".join(fields) + "\n")


def read_candidates_tsv(path) -> list[Candidate]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise DataFormatError(
                    f"expected 4 tab-separated fields, got {len(parts)}",
                    path=str(path),
                    line=lineno,
                )
            tag, span, left, right = parts
            try:
                out.append(Candidate(span.split(), left.split(), right.split(), tag or None))
            except ValueError as exc:
                raise DataFormatError(str(exc), path=str(path), line=lineno) from None
    return out
