#!/usr/bin/env python3
"""Reproduce the benchmark accuracy columns on the downloaded corpus.

Needs the corpus laid out by scripts/fetch_benchmark.sh (or pass
--bench-dir). For every language this evaluates:

  raw            stripped test text against gold (no restoration)
  dict           unigram lexicon built on the training set
  combined-raw   stripped + typo-corrupted test text (scale 3)
  combined-dict  lexicon restoration of the corrupted text

and prints one aligned row per language plus the averages. --json
writes the numbers machine-readably; --skip-combined halves the
runtime when only the deterministic columns are needed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from diacrit.corrupt import corrupt_lines
from diacrit.evalkit import alpha_word_accuracy
from diacrit.layouts import get_layout
from diacrit.lexicon import build_lexicon
from diacrit.textcore import iter_sentences, language_registry, load_language_table
from diacrit.typomodel import default_model

CODES = ("hr", "cs", "fr", "hu", "ga", "lv", "lt", "pl", "ro", "sk",
         "es", "tr", "vi")
CORRUPTION_SEED = 20260817


def read_lines(path: Path) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n") for line in handle]


def accuracy(gold: list[str], pred: list[str]) -> float:
    return alpha_word_accuracy(iter_sentences(gold),
                               iter_sentences(pred)).accuracy


def evaluate_language(code: str, bench: Path, seed: int,
                      skip_combined: bool) -> dict[str, float]:
    table = load_language_table(code)
    gold = read_lines(bench / code / "test.txt")
    train = read_lines(bench / code / "train.txt")

    stripped = [table.strip(line) for line in gold]
    lexicon = build_lexicon(iter_sentences(train), table)
    row = {
        "raw": accuracy(gold, stripped),
        "dict": accuracy(gold, [lexicon.restore_sentence(line)
                                for line in stripped]),
    }
    if not skip_combined:
        keyboard = language_registry()[code].keyboard
        model = default_model(layout=get_layout(keyboard), scale=3.0)
        corrupted = [text for text, _ in corrupt_lines(stripped, model, seed)]
        row["combined_raw"] = accuracy(gold, corrupted)
        row["combined_dict"] = accuracy(
            gold, [lexicon.restore_sentence(line) for line in corrupted])
    return row


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bench-dir", default=os.environ.get("DIACRIT_BENCH_DIR"),
                        help="corpus root (default: $DIACRIT_BENCH_DIR)")
    parser.add_argument("--languages", nargs="*", default=list(CODES),
                        help="subset of language codes (default: all 13)")
    parser.add_argument("--seed", type=int, default=CORRUPTION_SEED)
    parser.add_argument("--skip-combined", action="store_true",
                        help="only the deterministic raw/dict columns")
    parser.add_argument("--json", dest="json_path",
                        help="also write results to this JSON file")
    args = parser.parse_args(argv)

    if not args.bench_dir:
        parser.error("--bench-dir or DIACRIT_BENCH_DIR is required")
    bench = Path(args.bench_dir)
    for code in args.languages:
        if code not in CODES:
            parser.error(f"unknown language code {code!r}")
        if not (bench / code / "test.txt").is_file():
            parser.error(f"no test corpus for {code!r} under {bench} "
                         "(run scripts/fetch_benchmark.sh)")

    columns = ["raw", "dict"]
    if not args.skip_combined:
        columns += ["combined_raw", "combined_dict"]

    results: dict[str, dict[str, float]] = {}
    header = "lang " + "".join(f"{c:>14s}" for c in columns)
    print(header)
    print("-" * len(header))
    for code in args.languages:
        started = time.monotonic()
        results[code] = evaluate_language(code, bench, args.seed,
                                          args.skip_combined)
        cells = "".join(f"{results[code][c]:14.2f}" for c in columns)
        print(f"{code:4s} {cells}   ({time.monotonic() - started:.0f}s)")
    averages = {c: sum(r[c] for r in results.values()) / len(results)
                for c in columns}
    print("-" * len(header))
    print("avg  " + "".join(f"{averages[c]:14.2f}" for c in columns))

    if args.json_path:
        payload = {"seed": args.seed, "languages": results,
                   "averages": averages}
        Path(args.json_path).write_text(
            json.dumps(payload, indent=1, sort_keys=True) + "\n",
            encoding="utf-8")
        print(f"wrote {args.json_path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
