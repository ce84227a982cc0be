"""Unigram restoration lexicon: stripped form -> diacritized candidates.

The lexicon is built from a diacritized training corpus. Every token is
keyed by its diacritic-stripped form; candidates keep their training
counts and are ordered by count descending, ties broken by candidate
string ascending (Unicode scalar order), so lookups are deterministic.
Restoring a word returns the top candidate for its key, or the word
unchanged when the key is unknown. The candidate count per key is what
the hybrid backend routes on.

File format: UTF-8 lines `key<TAB>candidate<TAB>count`, lines grouped by
key (keys in ascending order) and candidates in rank order within each
group; the file round-trips exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import LexiconError
from .textcore import DiacriticTable, Sentence

__all__ = ["UnigramLexicon", "build_lexicon", "save_lexicon", "load_lexicon"]


@dataclass
class UnigramLexicon:
    """Ranked candidate lists per stripped key."""

    language: str
    entries: dict[str, tuple[tuple[str, int], ...]] = field(default_factory=dict)

    def candidates(self, word: str) -> tuple[tuple[str, int], ...]:
        return self.entries.get(word, ())

    def candidate_count(self, word: str) -> int:
        """Number of distinct diacritized candidates for a stripped form;
        0 when the form never occurred in training."""
        return len(self.entries.get(word, ()))

    def top(self, word: str) -> str | None:
        ranked = self.entries.get(word)
        return ranked[0][0] if ranked else None

    def restore_word(self, word: str) -> str:
        """Most frequent diacritized candidate, or the word unchanged."""
        ranked = self.entries.get(word)
        return ranked[0][0] if ranked else word

    def restore_sentence(self, line: str) -> str:
        """Restore each space-separated token independently. Empty tokens
        (from non-canonical spacing) pass through, so the line structure
        and token count are preserved exactly."""
        return " ".join(self.restore_word(t) for t in line.split(" "))

    def key_count(self) -> int:
        return len(self.entries)

    def candidate_frequency(self) -> dict[str, int]:
        """Training count of each diacritized surface form."""
        freq: dict[str, int] = {}
        for ranked in self.entries.values():
            for candidate, count in ranked:
                freq[candidate] = freq.get(candidate, 0) + count
        return freq


def build_lexicon(sentences: Iterable[Sentence], table: DiacriticTable) -> UnigramLexicon:
    """Count every token of a diacritized corpus under its stripped key.

    No pruning: every observed form is kept with its exact count.
    """
    counts: dict[str, Counter] = {}
    for sentence in sentences:
        for token in sentence.tokens:
            text = token.text
            key = table.strip(text)
            bucket = counts.get(key)
            if bucket is None:
                bucket = counts[key] = Counter()
            bucket[text] += 1
    entries = {
        key: tuple(sorted(bucket.items(), key=lambda item: (-item[1], item[0])))
        for key, bucket in counts.items()
    }
    return UnigramLexicon(language=table.language, entries=entries)


def save_lexicon(lexicon: UnigramLexicon, path: str | Path) -> None:
    """Write grouped, rank-ordered `key<TAB>candidate<TAB>count` lines."""
    with open(path, "w", encoding="utf-8") as handle:
        for key in sorted(lexicon.entries):
            for candidate, count in lexicon.entries[key]:
                handle.write(f"{key}\t{candidate}\t{count}\n")


def load_lexicon(path: str | Path, table: DiacriticTable) -> UnigramLexicon:
    """Read a lexicon file, validating order, grouping, and that every
    candidate strips to its key under the given table."""
    path = Path(path)
    entries: dict[str, list[tuple[str, int]]] = {}
    previous_key: str | None = None
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 3:
                    raise LexiconError(
                        f"{path}:{lineno}: expected key<TAB>candidate<TAB>count"
                    )
                key, candidate, count_text = fields
                try:
                    count = int(count_text)
                except ValueError:
                    raise LexiconError(
                        f"{path}:{lineno}: count {count_text!r} is not an integer"
                    ) from None
                if count <= 0:
                    raise LexiconError(f"{path}:{lineno}: count must be positive")
                if table.strip(candidate) != key:
                    raise LexiconError(
                        f"{path}:{lineno}: candidate {candidate!r} does not strip "
                        f"to key {key!r} under the {table.language} table"
                    )
                if key in entries and key != previous_key:
                    raise LexiconError(
                        f"{path}:{lineno}: key {key!r} repeats outside its group"
                    )
                bucket = entries.setdefault(key, [])
                if bucket:
                    last_candidate, last_count = bucket[-1]
                    in_order = count < last_count or (
                        count == last_count and candidate > last_candidate)
                    if not in_order:
                        raise LexiconError(
                            f"{path}:{lineno}: candidates out of rank order "
                            f"for key {key!r}"
                        )
                    if any(candidate == c for c, _ in bucket):
                        raise LexiconError(
                            f"{path}:{lineno}: duplicate candidate {candidate!r} "
                            f"for key {key!r}"
                        )
                bucket.append((candidate, count))
                previous_key = key
    except OSError as exc:
        raise LexiconError(f"cannot open lexicon file {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise LexiconError(f"lexicon file {path} is not valid UTF-8: {exc}") from exc
    return UnigramLexicon(
        language=table.language,
        entries={key: tuple(ranked) for key, ranked in entries.items()},
    )
