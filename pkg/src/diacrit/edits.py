"""Edit-corpus ingestion: aligned before/after pairs and pattern counts.

The interchange format is UTF-8 lines `before<TAB>after`, one edit pair
per line, where `before` is the intended (correct) text and `after` is
the observed (mistyped) text. Each pair is aligned with the optimal
string alignment variant of Damerau-Levenshtein (unit costs, adjacent
transposition, no substring reuse) and the alignment is decomposed into
per-character patterns:

* deletion       f(c -> nothing)   intended c missing from the typed text
* substitution   f(c -> c')        intended c typed as c'
* insertion      f(c -> c x) and f(c -> x c)   extra character next to c
* transposition  f(cc' -> c'c)     adjacent intended pair swapped

Occurrence counts f(c) and f(cc') are taken over the intended side. An
inserted run between two intended characters credits its first character
to the left neighbour (insertion-after) and its last character to the
right neighbour (insertion-before); a single inserted character is
deliberately credited to both sides, which is why the model divides
insertion counts by 2 f(c).

When several minimal-cost alignments exist the backtrace prefers, in
order: match, transposition, substitution, deletion, insertion.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EditCorpusError
from .layouts import KeyboardLayout

__all__ = [
    "AlignmentOp",
    "EditCorpus",
    "align",
    "load_edit_corpus",
    "remap_layout",
]


@dataclass(frozen=True)
class AlignmentOp:
    """One step of a before/after alignment.

    ``kind`` is one of match, substitute, delete, insert, transpose.
    ``before_index`` is the first intended-side index the op consumes
    (None for insert); ``after_index`` is the first observed-side index
    it produces (None for delete).
    """

    kind: str
    before_index: int | None
    after_index: int | None


def align(before: str, after: str) -> list[AlignmentOp]:
    """Minimal-cost character alignment between an intended string and
    its typed counterpart."""
    n, m = len(before), len(after)
    # dp[i][j]: cost of aligning before[:i] with after[:j]
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dp[i][0] = i
    for j in range(1, m + 1):
        dp[0][j] = j
    for i in range(1, n + 1):
        bi = before[i - 1]
        row, prev = dp[i], dp[i - 1]
        for j in range(1, m + 1):
            aj = after[j - 1]
            cost = min(
                prev[j - 1] + (0 if bi == aj else 1),
                prev[j] + 1,
                row[j - 1] + 1,
            )
            if (i >= 2 and j >= 2 and before[i - 2] == aj
                    and bi == after[j - 2] and before[i - 2] != bi):
                cost = min(cost, dp[i - 2][j - 2] + 1)
            row[j] = cost

    ops: list[AlignmentOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        here = dp[i][j]
        if (i > 0 and j > 0 and before[i - 1] == after[j - 1]
                and here == dp[i - 1][j - 1]):
            ops.append(AlignmentOp("match", i - 1, j - 1))
            i, j = i - 1, j - 1
        elif (i >= 2 and j >= 2 and before[i - 2] == after[j - 1]
                and before[i - 1] == after[j - 2]
                and before[i - 2] != before[i - 1]
                and here == dp[i - 2][j - 2] + 1):
            ops.append(AlignmentOp("transpose", i - 2, j - 2))
            i, j = i - 2, j - 2
        elif (i > 0 and j > 0 and before[i - 1] != after[j - 1]
                and here == dp[i - 1][j - 1] + 1):
            ops.append(AlignmentOp("substitute", i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and here == dp[i - 1][j] + 1:
            ops.append(AlignmentOp("delete", i - 1, None))
            i -= 1
        else:
            ops.append(AlignmentOp("insert", None, j - 1))
            j -= 1
    ops.reverse()
    return ops


@dataclass
class EditCorpus:
    """Edit pairs plus every count the typo model derives from.

    All occurrence counts (``char_counts``, ``bigram_counts``) are over
    the intended side of the records; pattern counts never exceed them.
    """

    records: list[tuple[str, str]] = field(default_factory=list)
    char_counts: Counter = field(default_factory=Counter)
    bigram_counts: Counter = field(default_factory=Counter)
    deletion_counts: Counter = field(default_factory=Counter)
    substitution_counts: dict[str, Counter] = field(default_factory=dict)
    insertion_after_counts: dict[str, Counter] = field(default_factory=dict)
    insertion_before_counts: dict[str, Counter] = field(default_factory=dict)
    transposition_counts: Counter = field(default_factory=Counter)

    @classmethod
    def from_records(cls, records: Iterable[tuple[str, str]]) -> "EditCorpus":
        corpus = cls()
        for before, after in records:
            corpus._add_record(before, after)
        return corpus

    def _pattern_bucket(self, table: dict[str, Counter], char: str) -> Counter:
        bucket = table.get(char)
        if bucket is None:
            bucket = table[char] = Counter()
        return bucket

    def _add_record(self, before: str, after: str) -> None:
        self.records.append((before, after))
        self.char_counts.update(before)
        for k in range(len(before) - 1):
            self.bigram_counts[before[k:k + 2]] += 1
        if before == after:
            return

        ops = align(before, after)
        run: list[str] = []
        last_consumed: int | None = None

        def flush_run(right_index: int | None) -> None:
            if not run:
                return
            if last_consumed is not None:
                left = before[last_consumed]
                self._pattern_bucket(self.insertion_after_counts, left)[run[0]] += 1
            if right_index is not None:
                right = before[right_index]
                self._pattern_bucket(self.insertion_before_counts, right)[run[-1]] += 1
            run.clear()

        for op in ops:
            if op.kind == "insert":
                run.append(after[op.after_index])
                continue
            flush_run(op.before_index)
            if op.kind == "match":
                last_consumed = op.before_index
            elif op.kind == "substitute":
                b, a = before[op.before_index], after[op.after_index]
                self._pattern_bucket(self.substitution_counts, b)[a] += 1
                last_consumed = op.before_index
            elif op.kind == "delete":
                self.deletion_counts[before[op.before_index]] += 1
                last_consumed = op.before_index
            else:  # transpose
                pair = before[op.before_index:op.before_index + 2]
                self.transposition_counts[pair] += 1
                last_consumed = op.before_index + 1
        flush_run(None)

    def __len__(self) -> int:
        return len(self.records)


def load_edit_corpus(path: str | Path) -> EditCorpus:
    """Read `before<TAB>after` lines and accumulate all counts."""
    path = Path(path)
    records: list[tuple[str, str]] = []
    try:
        with open(path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 2:
                    raise EditCorpusError(
                        f"{path}:{lineno}: expected 'before<TAB>after', "
                        f"got {len(fields)} fields"
                    )
                records.append((fields[0], fields[1]))
    except OSError as exc:
        raise EditCorpusError(f"cannot open edit corpus {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise EditCorpusError(f"edit corpus {path} is not valid UTF-8: {exc}") from exc
    return EditCorpus.from_records(records)


def remap_layout(corpus: EditCorpus, layout: KeyboardLayout) -> EditCorpus:
    """Relabel every record through the layout permutation and recount.

    The permutation relabels which characters carry which statistics; the
    multiset of counts is preserved.
    """
    if layout.is_identity:
        return corpus
    remapped = ((layout.apply(b), layout.apply(a)) for b, a in corpus.records)
    return EditCorpus.from_records(remapped)
