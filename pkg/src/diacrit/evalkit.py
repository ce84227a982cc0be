"""Alpha-word accuracy and error analyses, plus report emission.

The metric: over positionally aligned sentences, count gold alpha-words
(non-empty tokens whose every character is a Unicode letter) and how many
of them the prediction reproduces exactly at the same token position;
accuracy is their ratio as a percentage. Gold alpha-words beyond the
prediction's token count score as errors; non-alpha gold tokens are
ignored entirely. A sentence-count mismatch between the streams is a
hard error.

Analyses attribute errors to training-frequency buckets, compare two
systems' error rates per candidate-count group, and partition unseen-word
outcomes by whether the gold form carries diacritics.

Reports are emitted in two forms from one call: a JSON document
(versioned, sorted keys, percentages rounded to 2 decimals) and an
aligned human-readable table with the same numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import zip_longest
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .corrupt import CorruptionReport
from .errors import EvaluationError
from .lexicon import UnigramLexicon
from .textcore import DiacriticTable, Sentence

__all__ = [
    "EvalReport",
    "BucketRow",
    "FrequencyBuckets",
    "UnseenConfusion",
    "GroupRatio",
    "CandidateErrorRatios",
    "alpha_word_accuracy",
    "error_ratio_by_candidates",
    "frequency_bucket_report",
    "unseen_confusion",
    "report_as_dict",
    "render_table",
    "emit_report",
    "BUCKET_BOUNDS",
]

REPORT_VERSION = 1

# (label, lowest training count, highest training count)
BUCKET_BOUNDS = (
    ("unseen", 0, 0),
    ("1-100", 1, 100),
    ("101-10000", 101, 10_000),
    (">10000", 10_001, None),
)


def _pct(part: int | float, whole: int | float) -> float:
    return 0.0 if whole == 0 else 100.0 * part / whole


def _paired(*streams: Iterable[Sentence]) -> Iterator[tuple[Sentence, ...]]:
    sentinel = object()
    for row in zip_longest(*streams, fillvalue=sentinel):
        if any(item is sentinel for item in row):
            raise EvaluationError(
                "sentence streams have different lengths; gold and "
                "prediction files must pair line for line"
            )
        yield row


@dataclass
class EvalReport:
    """Alpha-word accuracy: correct gold alpha-words over all of them."""

    gold_words: int = 0
    correct_words: int = 0

    @property
    def undefined(self) -> bool:
        return self.gold_words == 0

    @property
    def accuracy(self) -> float:
        return _pct(self.correct_words, self.gold_words)


def alpha_word_accuracy(gold: Iterable[Sentence],
                        pred: Iterable[Sentence]) -> EvalReport:
    report = EvalReport()
    for gold_sentence, pred_sentence in _paired(gold, pred):
        pred_tokens = pred_sentence.tokens
        for i, gold_token in enumerate(gold_sentence.tokens):
            if not gold_token.is_alpha:
                continue
            report.gold_words += 1
            if i < len(pred_tokens) and pred_tokens[i].text == gold_token.text:
                report.correct_words += 1
    return report


@dataclass
class GroupRatio:
    """Error-rate ratio of system A over system B for gold words whose
    stripped form has a given candidate count."""

    candidate_count: int
    words: int = 0
    errors_a: int = 0
    errors_b: int = 0

    @property
    def undefined(self) -> bool:
        return self.words == 0 or self.errors_b == 0

    @property
    def ratio(self) -> float | None:
        if self.undefined:
            return None
        return (self.errors_a / self.words) / (self.errors_b / self.words)


@dataclass
class CandidateErrorRatios:
    groups: dict[int, GroupRatio] = field(default_factory=dict)


def error_ratio_by_candidates(gold: Iterable[Sentence],
                              pred_a: Iterable[Sentence],
                              pred_b: Iterable[Sentence],
                              lexicon: UnigramLexicon,
                              table: DiacriticTable,
                              groups: tuple[int, ...] = (1, 2)) -> CandidateErrorRatios:
    result = CandidateErrorRatios({g: GroupRatio(g) for g in groups})
    for gold_sentence, a_sentence, b_sentence in _paired(gold, pred_a, pred_b):
        a_tokens, b_tokens = a_sentence.tokens, b_sentence.tokens
        for i, gold_token in enumerate(gold_sentence.tokens):
            if not gold_token.is_alpha:
                continue
            key = table.strip(gold_token.text)
            group = result.groups.get(lexicon.candidate_count(key))
            if group is None:
                continue
            group.words += 1
            if not (i < len(a_tokens) and a_tokens[i].text == gold_token.text):
                group.errors_a += 1
            if not (i < len(b_tokens) and b_tokens[i].text == gold_token.text):
                group.errors_b += 1
    return result


@dataclass
class BucketRow:
    label: str
    words: int = 0
    errors: int = 0


@dataclass
class FrequencyBuckets:
    """Gold alpha-words and their errors, split by the gold surface
    form's training-set frequency. Buckets partition all evaluated
    words, so word shares total 100% and error shares total 100%
    whenever any error exists."""

    rows: list[BucketRow]
    total_words: int = 0
    total_errors: int = 0

    @property
    def no_errors(self) -> bool:
        return self.total_errors == 0

    def word_share_pct(self, row: BucketRow) -> float:
        return _pct(row.words, self.total_words)

    def error_share_pct(self, row: BucketRow) -> float:
        return _pct(row.errors, self.total_errors)


def _bucket_index(count: int) -> int:
    for index, (_, low, high) in enumerate(BUCKET_BOUNDS):
        if count >= low and (high is None or count <= high):
            return index
    raise AssertionError(f"count {count} fell through the bucket bounds")


def frequency_bucket_report(gold: Iterable[Sentence], pred: Iterable[Sentence],
                            train_freq_index: Mapping[str, int]) -> FrequencyBuckets:
    report = FrequencyBuckets(rows=[BucketRow(label) for label, _, _ in BUCKET_BOUNDS])
    for gold_sentence, pred_sentence in _paired(gold, pred):
        pred_tokens = pred_sentence.tokens
        for i, gold_token in enumerate(gold_sentence.tokens):
            if not gold_token.is_alpha:
                continue
            row = report.rows[_bucket_index(train_freq_index.get(gold_token.text, 0))]
            row.words += 1
            report.total_words += 1
            if not (i < len(pred_tokens) and pred_tokens[i].text == gold_token.text):
                row.errors += 1
                report.total_errors += 1
    return report


@dataclass
class UnseenConfusion:
    """Outcome partition over unseen gold alpha-words.

    A word is unseen when its gold (diacritized) surface form never
    occurs in the training vocabulary. The four cells partition all
    unseen words: gold forms with diacritics end up failed or restored;
    gold forms without diacritics end up failed (spurious change) or
    left correct."""

    total_unseen: int = 0
    diacritized_failed: int = 0
    diacritized_restored: int = 0
    plain_failed: int = 0
    plain_correct: int = 0

    @property
    def empty(self) -> bool:
        return self.total_unseen == 0

    @property
    def diacritized_failed_pct(self) -> float:
        return _pct(self.diacritized_failed, self.total_unseen)

    @property
    def diacritized_restored_pct(self) -> float:
        return _pct(self.diacritized_restored, self.total_unseen)

    @property
    def plain_failed_pct(self) -> float:
        return _pct(self.plain_failed, self.total_unseen)

    @property
    def plain_correct_pct(self) -> float:
        return _pct(self.plain_correct, self.total_unseen)


def unseen_confusion(gold: Iterable[Sentence], pred: Iterable[Sentence],
                     train_vocab: frozenset[str] | set[str],
                     table: DiacriticTable) -> UnseenConfusion:
    report = UnseenConfusion()
    for gold_sentence, pred_sentence in _paired(gold, pred):
        pred_tokens = pred_sentence.tokens
        for i, gold_token in enumerate(gold_sentence.tokens):
            if not gold_token.is_alpha or gold_token.text in train_vocab:
                continue
            report.total_unseen += 1
            correct = i < len(pred_tokens) and pred_tokens[i].text == gold_token.text
            if table.has_diacritic(gold_token.text):
                if correct:
                    report.diacritized_restored += 1
                else:
                    report.diacritized_failed += 1
            else:
                if correct:
                    report.plain_correct += 1
                else:
                    report.plain_failed += 1
    return report


def _round2(value: float) -> float:
    return round(value, 2)


def report_as_dict(report) -> dict:
    """JSON-ready view of any report object; percentages at 2 decimals."""
    if isinstance(report, EvalReport):
        return {
            "report": "alpha_word_accuracy",
            "version": REPORT_VERSION,
            "gold_words": report.gold_words,
            "correct_words": report.correct_words,
            "accuracy_pct": None if report.undefined else _round2(report.accuracy),
            "undefined": report.undefined,
        }
    if isinstance(report, FrequencyBuckets):
        return {
            "report": "frequency_buckets",
            "version": REPORT_VERSION,
            "total_words": report.total_words,
            "total_errors": report.total_errors,
            "no_errors": report.no_errors,
            "buckets": [
                {
                    "bucket": row.label,
                    "words": row.words,
                    "word_share_pct": _round2(report.word_share_pct(row)),
                    "errors": row.errors,
                    "error_share_pct": _round2(report.error_share_pct(row)),
                }
                for row in report.rows
            ],
        }
    if isinstance(report, UnseenConfusion):
        return {
            "report": "unseen_confusion",
            "version": REPORT_VERSION,
            "total_unseen": report.total_unseen,
            "empty": report.empty,
            "with_diacritics": {
                "failed": report.diacritized_failed,
                "failed_pct": _round2(report.diacritized_failed_pct),
                "restored": report.diacritized_restored,
                "restored_pct": _round2(report.diacritized_restored_pct),
            },
            "without_diacritics": {
                "failed": report.plain_failed,
                "failed_pct": _round2(report.plain_failed_pct),
                "left_correct": report.plain_correct,
                "left_correct_pct": _round2(report.plain_correct_pct),
            },
        }
    if isinstance(report, CandidateErrorRatios):
        return {
            "report": "candidate_error_ratios",
            "version": REPORT_VERSION,
            "groups": [
                {
                    "candidate_count": group.candidate_count,
                    "words": group.words,
                    "errors_a": group.errors_a,
                    "errors_b": group.errors_b,
                    "ratio": None if group.undefined else round(group.ratio, 4),
                    "undefined": group.undefined,
                }
                for _, group in sorted(report.groups.items())
            ],
        }
    if isinstance(report, CorruptionReport):
        shares = report.category_pct()
        return {
            "report": "corruption",
            "version": REPORT_VERSION,
            "events": {
                "deletion": report.deletion,
                "substitution": report.substitution,
                "insertion": report.insertion,
                "transposition": report.transposition,
            },
            "category_pct": {k: _round2(v) for k, v in shares.items()},
            "total_chars": report.total_chars,
            "corrupted_chars": report.corrupted_chars,
            "corrupted_char_pct": _round2(report.corrupted_char_pct),
            "empty": report.empty,
        }
    raise TypeError(f"no report serialization for {type(report).__name__}")


def _table(rows: list[tuple], header: tuple) -> str:
    all_rows = [tuple(str(cell) for cell in row) for row in [header, *rows]]
    widths = [max(len(row[i]) for row in all_rows) for i in range(len(header))]
    lines = []
    for index, row in enumerate(all_rows):
        cells = [
            row[i].ljust(widths[i]) if i == 0 else row[i].rjust(widths[i])
            for i in range(len(row))
        ]
        lines.append("  ".join(cells).rstrip())
        if index == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _fmt_pct(value: float | None, undefined: bool = False) -> str:
    if undefined or value is None:
        return "undefined"
    return f"{value:.2f}%"


def render_table(report) -> str:
    """Aligned human-readable rendering of any report object."""
    if isinstance(report, EvalReport):
        body = _table(
            [("gold alpha-words", report.gold_words),
             ("correct", report.correct_words),
             ("accuracy", _fmt_pct(report.accuracy, report.undefined))],
            ("measure", "value"),
        )
        return f"alpha-word accuracy\n{body}\n"
    if isinstance(report, FrequencyBuckets):
        rows = [
            (row.label, row.words, f"{report.word_share_pct(row):.2f}%",
             row.errors,
             _fmt_pct(report.error_share_pct(row), report.no_errors))
            for row in report.rows
        ]
        rows.append(("total", report.total_words, "100.00%" if report.total_words else "0.00%",
                     report.total_errors,
                     _fmt_pct(100.0, report.no_errors)))
        body = _table(rows, ("train-frequency", "words", "word-share", "errors", "error-share"))
        return f"errors by training frequency\n{body}\n"
    if isinstance(report, UnseenConfusion):
        rows = [
            ("with diacritics", "failed", report.diacritized_failed,
             _fmt_pct(report.diacritized_failed_pct, report.empty)),
            ("with diacritics", "restored", report.diacritized_restored,
             _fmt_pct(report.diacritized_restored_pct, report.empty)),
            ("without diacritics", "failed", report.plain_failed,
             _fmt_pct(report.plain_failed_pct, report.empty)),
            ("without diacritics", "left correct", report.plain_correct,
             _fmt_pct(report.plain_correct_pct, report.empty)),
        ]
        body = _table(rows, ("gold form", "outcome", "words", "share"))
        return f"unseen words ({report.total_unseen} total)\n{body}\n"
    if isinstance(report, CandidateErrorRatios):
        rows = []
        for _, group in sorted(report.groups.items()):
            ratio = "undefined" if group.undefined else f"{group.ratio:.4f}"
            rows.append((group.candidate_count, group.words,
                         group.errors_a, group.errors_b, ratio))
        body = _table(rows, ("candidates", "words", "errors-a", "errors-b", "a/b ratio"))
        return f"error ratio by candidate count\n{body}\n"
    if isinstance(report, CorruptionReport):
        shares = report.category_pct()
        rows = [
            (category, getattr(report, category),
             _fmt_pct(shares[category], report.empty))
            for category in ("deletion", "substitution", "insertion", "transposition")
        ]
        rows.append(("corrupted chars", report.corrupted_chars,
                     f"{report.corrupted_char_pct:.2f}%"))
        body = _table(rows, ("category", "count", "share"))
        return f"corruption summary ({report.total_chars} chars)\n{body}\n"
    raise TypeError(f"no table rendering for {type(report).__name__}")


def emit_report(report, base_path: str | Path) -> tuple[Path, Path]:
    """Write ``<base>.json`` (machine) and ``<base>.txt`` (human)."""
    base = Path(base_path)
    json_path = base.with_suffix(".json")
    txt_path = base.with_suffix(".txt")
    json_path.write_text(
        json.dumps(report_as_dict(report), ensure_ascii=False, sort_keys=True,
                   indent=1) + "\n",
        encoding="utf-8",
    )
    txt_path.write_text(render_table(report), encoding="utf-8")
    return json_path, txt_path
