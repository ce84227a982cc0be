"""End-to-end acceptance checks.

Each test prints one PASS/FAIL line. The benchmark reproductions need
the public dataset on disk: set DIACRIT_BENCH_DIR to a directory laid
out as <root>/<code>/train.txt and <root>/<code>/test.txt (see
scripts/fetch_benchmark.sh); they skip when the variable is unset.
Everything else runs self-contained.
"""

import os
import time
from pathlib import Path

import pytest

from diacrit.corrupt import (
    apply_events,
    corrupt,
    corrupt_lines,
    corruption_report,
    expected_event_counts,
)
from diacrit.evalkit import (
    alpha_word_accuracy,
    frequency_bucket_report,
    unseen_confusion,
)
from diacrit.layouts import get_layout
from diacrit.lexicon import build_lexicon, load_lexicon, save_lexicon
from diacrit.sampletext import sample_text
from diacrit.textcore import (
    is_alpha_word,
    is_diacritized,
    iter_sentences,
    language_registry,
    load_language_table,
)
from diacrit.typomodel import default_model

# reference accuracies on the public benchmark corpus, in percent;
# tolerances absorb tie-breaking ambiguity and corruption sampling noise
REFERENCE = {
    #        raw     dict   combined_raw  combined_dict
    "hr": (85.01, 99.11, 64.05, 74.06),
    "cs": (49.71, 95.67, 38.68, 71.37),
    "fr": (83.11, 97.98, 60.81, 70.87),
    "hu": (50.34, 96.22, 38.16, 69.84),
    "ga": (69.97, 96.65, 53.49, 73.16),
    "lv": (50.14, 90.59, 37.69, 66.29),
    "lt": (60.76, 93.83, 44.78, 68.44),
    "pl": (66.73, 97.00, 49.10, 70.02),
    "ro": (70.37, 96.09, 51.93, 70.29),
    "sk": (56.34, 96.88, 43.92, 72.89),
    "es": (87.97, 99.11, 64.07, 71.58),
    "tr": (68.39, 98.41, 51.18, 72.58),
    "vi": (15.88, 73.53, 11.92, 56.19),
}
RAW_AVERAGE = 62.67
DICT_AVERAGE = 94.70
COMBINED_DICT_AVERAGE = 71.89

EXPECTED_TABLE_SIZES = {
    "hr": 5, "cs": 19, "fr": 15, "hu": 9, "ga": 5, "lv": 15, "lt": 9,
    "pl": 9, "ro": 6, "sk": 25, "es": 7, "tr": 11, "vi": 67,
}

CORRUPTION_SEED = 20260817


def _check(label: str, passed: bool, detail: str) -> None:
    print(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
    assert passed, f"{label}: {detail}"


def _bench_dir() -> Path:
    root = os.environ.get("DIACRIT_BENCH_DIR")
    if not root:
        pytest.skip(
            "benchmark corpus not available: set DIACRIT_BENCH_DIR to a "
            "directory with <code>/train.txt and <code>/test.txt per "
            "language (scripts/fetch_benchmark.sh downloads and lays it out)"
        )
    path = Path(root)
    missing = [code for code in REFERENCE
               if not (path / code / "test.txt").is_file()]
    if missing:
        pytest.skip(f"benchmark corpus incomplete under {path}: "
                    f"missing test.txt for {', '.join(sorted(missing))}")
    return path


def _read_lines(path: Path) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n") for line in handle]


def _accuracy(gold_lines, pred_lines) -> float:
    report = alpha_word_accuracy(iter_sentences(gold_lines),
                                 iter_sentences(pred_lines))
    return report.accuracy


def _language_model(code: str):
    info = language_registry()[code]
    return default_model(layout=get_layout(info.keyboard), scale=3.0)


# -- benchmark reproductions (skipped without the dataset) -----------------------

def test_benchmark_raw_accuracy():
    bench = _bench_dir()
    tolerance = 0.15
    values = {}
    for code, (raw_expected, _, _, _) in REFERENCE.items():
        table = load_language_table(code)
        gold = _read_lines(bench / code / "test.txt")
        stripped = [table.strip(line) for line in gold]
        values[code] = _accuracy(gold, stripped)
        _check(f"raw[{code}]", abs(values[code] - raw_expected) <= tolerance,
               f"{values[code]:.2f} vs {raw_expected:.2f} ±{tolerance}")
    average = sum(values.values()) / len(values)
    _check("raw[avg]", abs(average - RAW_AVERAGE) <= tolerance,
           f"{average:.2f} vs {RAW_AVERAGE:.2f} ±{tolerance}")


def test_benchmark_dict_accuracy():
    bench = _bench_dir()
    tolerance = 0.5
    values = {}
    for code, (_, dict_expected, _, _) in REFERENCE.items():
        table = load_language_table(code)
        gold = _read_lines(bench / code / "test.txt")
        train = _read_lines(bench / code / "train.txt")
        lexicon = build_lexicon(iter_sentences(train), table)
        predicted = [lexicon.restore_sentence(table.strip(line))
                     for line in gold]
        values[code] = _accuracy(gold, predicted)
        _check(f"dict[{code}]", abs(values[code] - dict_expected) <= tolerance,
               f"{values[code]:.2f} vs {dict_expected:.2f} ±{tolerance}")
    average = sum(values.values()) / len(values)
    _check("dict[avg]", abs(average - DICT_AVERAGE) <= tolerance,
           f"{average:.2f} vs {DICT_AVERAGE:.2f} ±{tolerance}")


def test_benchmark_combined_task():
    bench = _bench_dir()
    raw_tolerance, dict_tolerance = 1.5, 2.0
    dict_values = {}
    for code, (_, _, raw_expected, dict_expected) in REFERENCE.items():
        table = load_language_table(code)
        gold = _read_lines(bench / code / "test.txt")
        train = _read_lines(bench / code / "train.txt")
        model = _language_model(code)
        stripped = [table.strip(line) for line in gold]
        corrupted = [text for text, _ in
                     corrupt_lines(stripped, model, CORRUPTION_SEED)]

        raw_accuracy = _accuracy(gold, corrupted)
        _check(f"combined-raw[{code}]",
               abs(raw_accuracy - raw_expected) <= raw_tolerance,
               f"{raw_accuracy:.2f} vs {raw_expected:.2f} ±{raw_tolerance}")

        lexicon = build_lexicon(iter_sentences(train), table)
        predicted = [lexicon.restore_sentence(line) for line in corrupted]
        dict_values[code] = _accuracy(gold, predicted)
        _check(f"combined-dict[{code}]",
               abs(dict_values[code] - dict_expected) <= dict_tolerance,
               f"{dict_values[code]:.2f} vs {dict_expected:.2f} "
               f"±{dict_tolerance}")
    average = sum(dict_values.values()) / len(dict_values)
    _check("combined-dict[avg]",
           abs(average - COMBINED_DICT_AVERAGE) <= dict_tolerance,
           f"{average:.2f} vs {COMBINED_DICT_AVERAGE:.2f} ±{dict_tolerance}")


# -- corruption rate on synthetic text (self-contained) --------------------------

def test_corruption_rate_and_proportions():
    model = default_model()
    lines = sample_text(1_050_000, seed=CORRUPTION_SEED)
    total_chars = sum(len(line) for line in lines)
    assert total_chars >= 1_000_000

    events = []
    for _, line_events in corrupt_lines(lines, model, 424242):
        events.extend(line_events)
    report = corruption_report(events, total_chars)

    rate = report.corrupted_char_pct
    _check("corruption-rate", 2.0 <= rate <= 4.0,
           f"{rate:.2f}% of {total_chars} chars in [2%, 4%]")

    expected = expected_event_counts(lines, model)
    expected_total = sum(expected[k] for k in
                         ("deletion", "substitution", "insertion",
                          "transposition"))
    empirical = report.category_pct()
    for category in ("deletion", "substitution", "insertion",
                     "transposition"):
        analytic_pct = 100.0 * expected[category] / expected_total
        relative = abs(empirical[category] - analytic_pct) / analytic_pct
        _check(f"corruption-proportion[{category}]", relative <= 0.20,
               f"empirical {empirical[category]:.2f}% vs analytic "
               f"{analytic_pct:.2f}% (rel {relative:.3f} <= 0.20)")


# -- property-suite representatives (self-contained, time-bounded) ----------------

def test_property_suites_fast(tmp_path):
    import random

    started = time.monotonic()

    # strip idempotence and length preservation, 10^4 fuzzed strings
    codes = sorted(EXPECTED_TABLE_SIZES)
    per_table = 10_000 // len(codes) + 1
    rng = random.Random(99)
    for code in codes:
        table = load_language_table(code)
        pool = [d for d, _ in table.pairs] + list("abcdefgh XYZ.,!123")
        for _ in range(per_table):
            text = "".join(rng.choice(pool)
                           for _ in range(rng.randrange(0, 40)))
            once = table.strip(text)
            assert table.strip(once) == once
            assert len(once) == len(text)
    _check("property[strip]", True,
           f"idempotence and length on {per_table * len(codes)} strings")

    # corruption determinism and event replay, 10^3 seeds
    model = default_model()
    text = "the quick brown fox jumps over the lazy dog " * 5
    for seed in range(1_000):
        first, events = corrupt(text, model, seed)
        second, _ = corrupt(text, model, seed)
        assert first == second
        assert apply_events(text, events) == first
    _check("property[corrupt-replay]", True, "1000 seeds replayed")

    # typo-model probabilities equal a brute-force counting oracle
    from test_typomodel import test_model_matches_brute_force_oracle
    test_model_matches_brute_force_oracle()
    _check("property[typo-oracle]", True,
           "50-record corpus counted two ways")

    # accuracy metric hand fixtures
    assert _accuracy(["ča va"], ["ca va"]) == pytest.approx(50.0)
    assert _accuracy(["ča va"], ["ča va"]) == pytest.approx(100.0)
    assert _accuracy(["ča va bien"], ["ča"]) == pytest.approx(100.0 / 3)
    assert _accuracy(["ča"], ["ča va"]) == pytest.approx(100.0)
    assert _accuracy(["ča 123"], ["ča 999"]) == pytest.approx(100.0)
    _check("property[accuracy-fixtures]", True, "5 hand-computed cases")

    # bucket and confusion reports equal naive tallies on a toy corpus
    table = load_language_table("hr")
    freq = {"ča": 50, "va": 20000}
    gold = ["ča va šum zzz", "ča va"]
    pred = ["ča vb sum zzz", "ča va"]
    buckets = frequency_bucket_report(iter_sentences(gold),
                                      iter_sentences(pred), freq)
    tally = {}
    for gold_line, pred_line in zip(gold, pred):
        gold_tokens, pred_tokens = gold_line.split(), pred_line.split()
        for k, word in enumerate(gold_tokens):
            if not is_alpha_word(word):
                continue
            n = freq.get(word, 0)
            label = ("unseen" if n == 0 else "1-100" if n <= 100
                     else "101-10000" if n <= 10000 else ">10000")
            words, errors = tally.get(label, (0, 0))
            wrong = k >= len(pred_tokens) or pred_tokens[k] != word
            tally[label] = (words + 1, errors + int(wrong))
    for row in buckets.rows:
        assert (row.words, row.errors) == tally.get(row.label, (0, 0))

    confusion = unseen_confusion(iter_sentences(gold), iter_sentences(pred),
                                 frozenset({"ča", "va"}), table)
    cells = [0, 0, 0, 0]
    for gold_line, pred_line in zip(gold, pred):
        gold_tokens, pred_tokens = gold_line.split(), pred_line.split()
        for k, word in enumerate(gold_tokens):
            if not is_alpha_word(word) or word in {"ča", "va"}:
                continue
            correct = k < len(pred_tokens) and pred_tokens[k] == word
            if is_diacritized(word, table):
                cells[1 if correct else 0] += 1
            else:
                cells[3 if correct else 2] += 1
    assert [confusion.diacritized_failed, confusion.diacritized_restored,
            confusion.plain_failed, confusion.plain_correct] == cells
    _check("property[report-oracles]", True,
           "bucket and confusion tallies match")

    # lexicon round-trip and strip-stability
    table = load_language_table("hr")
    lines = ["čaša vina", "casa vina", "čaša piva"] * 4
    lexicon = build_lexicon(iter_sentences(lines), table)
    for key in lexicon.entries:
        assert table.strip(key) == key
    first = tmp_path / "lexicon.tsv"
    second = tmp_path / "roundtrip.tsv"
    save_lexicon(lexicon, first)
    save_lexicon(load_lexicon(first, table), second)
    assert first.read_bytes() == second.read_bytes()
    _check("property[lexicon]", True, "round-trip and strip-stability")

    elapsed = time.monotonic() - started
    _check("property[runtime]", elapsed < 300.0,
           f"{elapsed:.1f}s < 300s")


# -- diacritic table letter counts (exact) ------------------------------------------

def test_bundled_table_letter_counts():
    for code, expected in EXPECTED_TABLE_SIZES.items():
        table = load_language_table(code)
        _check(f"table-size[{code}]", table.size == expected,
               f"{table.size} == {expected}")
