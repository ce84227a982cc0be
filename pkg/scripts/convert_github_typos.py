#!/usr/bin/env python3
"""Convert the GitHub Typo Corpus JSONL dump into an edit-pair TSV.

The typo corpus (github-typo-corpus.v1.0.0.jsonl) holds commit-level
records, each with an ``edits`` list of (src, tgt) line pairs where src
is the line before the fixing commit and tgt the line after. For typo
modelling the *intended* text is the corrected side and the *typed*
text is the error side, so each edit becomes one TSV row:

    before = tgt.text (intended)    after = src.text (typed)

Rows are lowercased. Edits are kept when they are flagged as typos,
both sides are the requested language, and the pair fits on single
tab-free lines. The output feeds ``diacrit build-typo-model``.
"""

from __future__ import annotations

import argparse
import json
import sys


def clean(text: str) -> str:
    return text.strip().lower()


def usable(text: str, max_chars: int) -> bool:
    return (0 < len(text) <= max_chars
            and "\t" not in text and "\n" not in text)


def convert(source, sink, lang: str, max_chars: int,
            require_typo_flag: bool) -> tuple[int, int]:
    kept = seen = 0
    for line in source:
        if not line.strip():
            continue
        record = json.loads(line)
        for edit in record.get("edits", ()):
            seen += 1
            if require_typo_flag and not edit.get("is_typo"):
                continue
            src = edit.get("src", {})
            tgt = edit.get("tgt", {})
            if lang and (src.get("lang") != lang or tgt.get("lang") != lang):
                continue
            typed = clean(src.get("text", ""))
            intended = clean(tgt.get("text", ""))
            if not (usable(typed, max_chars) and usable(intended, max_chars)):
                continue
            if typed == intended:
                continue
            sink.write(f"{intended}\t{typed}\n")
            kept += 1
    return kept, seen


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("jsonl", help="github-typo-corpus JSONL file ('-' for stdin)")
    parser.add_argument("--output", "-o", required=True, help="TSV file to write")
    parser.add_argument("--lang", default="eng",
                        help="keep edits in this language (default: eng; '' keeps all)")
    parser.add_argument("--max-chars", type=int, default=200,
                        help="drop lines longer than this (default: 200)")
    parser.add_argument("--keep-unflagged", action="store_true",
                        help="also keep edits not flagged as typos")
    args = parser.parse_args(argv)

    source = sys.stdin if args.jsonl == "-" else open(args.jsonl, encoding="utf-8")
    try:
        with open(args.output, "w", encoding="utf-8") as sink:
            kept, seen = convert(source, sink, args.lang, args.max_chars,
                                 not args.keep_unflagged)
    finally:
        if source is not sys.stdin:
            source.close()
    print(f"kept {kept} of {seen} edits -> {args.output}", file=sys.stderr)
    return 0 if kept else 1


if __name__ == "__main__":
    sys.exit(main())
