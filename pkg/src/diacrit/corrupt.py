"""Stochastic text corruption driven by a typo model.

The corruptor makes one left-to-right pass. At each source position it
samples, in this fixed order: transposition (on the bigram starting
here), deletion, substitution, insertion-before, insertion-after. At
most one event fires per source character; a transposition consumes the
next character too. Every probability is used as min(1, scale * P).
Characters outside the model set (whitespace included) are never
touched. Output is deterministic for a fixed (text, model, seed).

Every change is recorded as a CorruptionEvent positioned in the
pre-corruption text; replaying the event log against the clean text
reproduces the corrupted text exactly.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from random import Random
from typing import Iterable, Iterator, Sequence

from .typomodel import OutcomeDist, TypoModel

__all__ = [
    "EVENT_KINDS",
    "REPORT_CATEGORIES",
    "CorruptionEvent",
    "CorruptionReport",
    "corrupt",
    "apply_events",
    "derive_seed",
    "corrupt_lines",
    "corruption_report",
    "expected_event_counts",
]

EVENT_KINDS = ("deletion", "substitution", "insertion_after",
               "insertion_before", "transposition")

# Reporting merges the two insertion directions.
REPORT_CATEGORIES = ("deletion", "substitution", "insertion", "transposition")


@dataclass(frozen=True)
class CorruptionEvent:
    """One corruption, anchored at its pre-corruption character index."""

    kind: str
    position: int
    original: str
    replacement: str

    @property
    def category(self) -> str:
        if self.kind in ("insertion_after", "insertion_before"):
            return "insertion"
        return self.kind

    @property
    def source_chars_affected(self) -> int:
        """Source characters this event corrupts (insertions count their
        anchor character; transpositions both swapped characters)."""
        return 2 if self.kind == "transposition" else 1


def _sample_outcome(rng: Random, dist: OutcomeDist) -> str:
    u = rng.random()
    acc = 0.0
    for char, p in dist:
        acc += p
        if u < acc:
            return char
    return dist[-1][0]


def corrupt(text: str, model: TypoModel, seed: int) -> tuple[str, list[CorruptionEvent]]:
    """Corrupt one string; returns the new string and the event log."""
    rng = Random(seed)
    scale = model.scale
    chars = model.chars
    out: list[str] = []
    events: list[CorruptionEvent] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c not in chars:
            out.append(c)
            i += 1
            continue

        if i + 1 < n and text[i + 1] in chars:
            pair = text[i] + text[i + 1]
            p = model.transposition.get(pair, 0.0)
            if p > 0.0 and rng.random() < min(1.0, scale * p):
                swapped = pair[1] + pair[0]
                out.append(swapped)
                events.append(CorruptionEvent("transposition", i, pair, swapped))
                i += 2
                continue

        p = model.deletion.get(c, 0.0)
        if p > 0.0 and rng.random() < min(1.0, scale * p):
            events.append(CorruptionEvent("deletion", i, c, ""))
            i += 1
            continue

        p = model.substitution.get(c, 0.0)
        if p > 0.0 and rng.random() < min(1.0, scale * p):
            dist = model.substitution_outcomes.get(c, ())
            if dist:
                outcome = _sample_outcome(rng, dist)
                out.append(outcome)
                events.append(CorruptionEvent("substitution", i, c, outcome))
                i += 1
                continue

        p = model.insertion_before.get(c, 0.0)
        if p > 0.0 and rng.random() < min(1.0, scale * p):
            dist = model.insertion_before_outcomes.get(c, ())
            if dist:
                extra = _sample_outcome(rng, dist)
                replacement = extra + c
                out.append(replacement)
                events.append(CorruptionEvent("insertion_before", i, c, replacement))
                i += 1
                continue

        p = model.insertion_after.get(c, 0.0)
        if p > 0.0 and rng.random() < min(1.0, scale * p):
            dist = model.insertion_after_outcomes.get(c, ())
            if dist:
                extra = _sample_outcome(rng, dist)
                replacement = c + extra
                out.append(replacement)
                events.append(CorruptionEvent("insertion_after", i, c, replacement))
                i += 1
                continue

        out.append(c)
        i += 1
    return "".join(out), events


def apply_events(text: str, events: Sequence[CorruptionEvent]) -> str:
    """Replay an event log against the clean text it was produced from."""
    by_position = {e.position: e for e in events}
    out: list[str] = []
    i, n = 0, len(text)
    while i < n:
        event = by_position.get(i)
        if event is None:
            out.append(text[i])
            i += 1
            continue
        out.append(event.replacement)
        i += 2 if event.kind == "transposition" else 1
    return "".join(out)


def derive_seed(global_seed: int, index: int, epoch: int = 0) -> int:
    """Per-sentence seed: stable hash of (global seed, line index, epoch).

    Lines can therefore be corrupted independently, in any order, and
    re-corrupted freshly per epoch, while one global seed reproduces the
    whole corpus byte-for-byte.
    """
    mask = (1 << 64) - 1
    digest = hashlib.blake2b(
        struct.pack("<QQQ", global_seed & mask, index & mask, epoch & mask),
        digest_size=8,
    ).digest()
    return int.from_bytes(digest, "little")


def corrupt_lines(lines: Iterable[str], model: TypoModel, global_seed: int,
                  epoch: int = 0) -> Iterator[tuple[str, list[CorruptionEvent]]]:
    """Corrupt a corpus line by line with derived per-line seeds."""
    for index, line in enumerate(lines):
        yield corrupt(line, model, derive_seed(global_seed, index, epoch))


@dataclass
class CorruptionReport:
    """Aggregated event counts over a corrupted corpus."""

    deletion: int = 0
    substitution: int = 0
    insertion: int = 0
    transposition: int = 0
    total_chars: int = 0
    corrupted_chars: int = 0

    @property
    def total_events(self) -> int:
        return self.deletion + self.substitution + self.insertion + self.transposition

    @property
    def empty(self) -> bool:
        return self.total_events == 0

    def category_pct(self) -> dict[str, float]:
        """Share of each category among all events, in percent. All zero
        (with ``empty`` set) when there are no events."""
        total = self.total_events
        if total == 0:
            return {category: 0.0 for category in REPORT_CATEGORIES}
        return {
            "deletion": 100.0 * self.deletion / total,
            "substitution": 100.0 * self.substitution / total,
            "insertion": 100.0 * self.insertion / total,
            "transposition": 100.0 * self.transposition / total,
        }

    @property
    def corrupted_char_pct(self) -> float:
        if self.total_chars == 0:
            return 0.0
        return 100.0 * self.corrupted_chars / self.total_chars


def corruption_report(events: Iterable[CorruptionEvent],
                      total_chars: int) -> CorruptionReport:
    """Tally events into the four reporting categories."""
    report = CorruptionReport(total_chars=total_chars)
    for event in events:
        category = event.category
        setattr(report, category, getattr(report, category) + 1)
        report.corrupted_chars += event.source_chars_affected
    return report


def expected_event_counts(lines: Iterable[str], model: TypoModel) -> dict[str, float]:
    """Analytically expected event counts for corrupting these lines.

    Walks each line once, tracking the probability that a position is
    still free (not consumed by a transposition that started one position
    earlier) and accumulating the exact expectation of the sequential
    sampling scheme used by :func:`corrupt`. No random numbers involved;
    this is the oracle the empirical category proportions are checked
    against.
    """
    eff = model.effective
    chars = model.chars
    expected = {
        "deletion": 0.0,
        "substitution": 0.0,
        "insertion": 0.0,
        "transposition": 0.0,
        "corrupted_chars": 0.0,
        "total_chars": 0.0,
    }
    for line in lines:
        n = len(line)
        expected["total_chars"] += n
        free = 1.0
        for i, c in enumerate(line):
            if c not in chars:
                free = 1.0
                continue
            p_trans = 0.0
            if i + 1 < n and line[i + 1] in chars:
                p_trans = eff(model.transposition.get(c + line[i + 1], 0.0))
            p_del = eff(model.deletion.get(c, 0.0))
            p_sub = eff(model.substitution.get(c, 0.0))
            if not model.substitution_outcomes.get(c):
                p_sub = 0.0
            p_ib = eff(model.insertion_before.get(c, 0.0))
            if not model.insertion_before_outcomes.get(c):
                p_ib = 0.0
            p_ia = eff(model.insertion_after.get(c, 0.0))
            if not model.insertion_after_outcomes.get(c):
                p_ia = 0.0

            here = free
            expected["transposition"] += here * p_trans
            rest = here * (1.0 - p_trans)
            expected["deletion"] += rest * p_del
            rest *= (1.0 - p_del)
            expected["substitution"] += rest * p_sub
            rest *= (1.0 - p_sub)
            expected["insertion"] += rest * p_ib
            rest *= (1.0 - p_ib)
            expected["insertion"] += rest * p_ia

            # next position is consumed when a transposition starts here
            free = 1.0 - here * p_trans
    expected["corrupted_chars"] = (
        expected["deletion"] + expected["substitution"] + expected["insertion"]
        + 2.0 * expected["transposition"]
    )
    return expected
