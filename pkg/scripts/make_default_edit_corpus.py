"""Regenerate the bundled English edit corpus (data/edits/default_en.tsv).

The corpus is a deterministic stand-in for a large real-world typo
collection: English phrases with keyboard-plausible errors injected at a
calibrated per-character rate, so that the model derived from it corrupts
roughly 1% of characters at scale 1 (and therefore ~3% at the default
scale 3). Every lowercase letter plus the comma and semicolon keys
reaches the 1,000-occurrence threshold, keeping the full QWERTY letter
zone inside the model character set (the AZERTY permutation routes the m
key through the punctuation keys).

The script validates its own output: it rebuilds the model from the
written records and checks the analytically expected corruption rate on
held-out sample text, failing loudly if calibration drifted.

A converter for real typo collections is documented in
convert_github_typos.py; drop its output in place of this file's content
(or pass it to `diacrit build-typo-model`) to use real statistics.
"""

from __future__ import annotations

import sys
from pathlib import Path
from random import Random

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from diacrit.edits import EditCorpus
from diacrit.corrupt import expected_event_counts
from diacrit.sampletext import sample_phrase, sample_text
from diacrit.typomodel import build_typo_model

OUT = Path(__file__).resolve().parent.parent / "src" / "diacrit" / "data" / "edits" / "default_en.tsv"

SEED = 20260817
CHAR_ERROR_RATE = 0.0119
CATEGORY_CUMULATIVE = (
    ("substitution", 0.45),
    ("deletion", 0.67),
    ("insertion", 0.92),
    ("transposition", 1.00),
)
MIN_KEY_COUNT = 1200
MAX_RECORDS = 60000

ROWS = ("qwertyuiop", "asdfghjkl;", "zxcvbnm,./")


def adjacency() -> dict[str, str]:
    neighbours: dict[str, set[str]] = {}
    for r, row in enumerate(ROWS):
        for k, key in enumerate(row):
            near = neighbours.setdefault(key, set())
            if k > 0:
                near.add(row[k - 1])
            if k + 1 < len(row):
                near.add(row[k + 1])
            for rr in (r - 1, r + 1):
                if 0 <= rr < len(ROWS) and k < len(ROWS[rr]):
                    near.add(ROWS[rr][k])
    return {key: "".join(sorted(near)) for key, near in neighbours.items()}


ADJACENT = adjacency()


def choose_category(rng: Random) -> str:
    u = rng.random()
    for name, cumulative in CATEGORY_CUMULATIVE:
        if u < cumulative:
            return name
    return "transposition"


def mistype(intended: str, rng: Random) -> str:
    """Inject independent per-character errors into one phrase."""
    out: list[str] = []
    i = 0
    while i < len(intended):
        c = intended[i]
        if c == " " or c not in ADJACENT or rng.random() >= CHAR_ERROR_RATE:
            out.append(c)
            i += 1
            continue
        category = choose_category(rng)
        if category == "transposition":
            nxt = intended[i + 1] if i + 1 < len(intended) else ""
            if nxt and nxt != " " and nxt in ADJACENT and nxt != c:
                out.append(nxt)
                out.append(c)
                i += 2
                continue
            category = "substitution"
        if category == "substitution":
            out.append(rng.choice(ADJACENT[c]))
        elif category == "deletion":
            pass
        else:  # insertion, split evenly before/after the intended key
            extra = rng.choice(ADJACENT[c])
            out.append(extra + c if rng.random() < 0.5 else c + extra)
        i += 1
    return "".join(out)


def main() -> None:
    rng = Random(SEED)
    records: list[tuple[str, str]] = []
    counts: dict[str, int] = {}
    tracked = "abcdefghijklmnopqrstuvwxyz;,"
    while len(records) < MAX_RECORDS:
        intended = sample_phrase(rng)
        records.append((intended, mistype(intended, rng)))
        for c in intended:
            if c in ADJACENT:
                counts[c] = counts.get(c, 0) + 1
        if len(records) % 2000 == 0:
            if min(counts.get(c, 0) for c in tracked) >= MIN_KEY_COUNT:
                break
    short = {c: counts.get(c, 0) for c in tracked if counts.get(c, 0) < MIN_KEY_COUNT}
    if short:
        raise SystemExit(f"could not reach {MIN_KEY_COUNT} occurrences for {short}")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as handle:
        for before, after in records:
            handle.write(f"{before}\t{after}\n")
    print(f"wrote {len(records)} records to {OUT}")
    print(f"min tracked key count: {min(counts[c] for c in tracked)}")

    corpus = EditCorpus.from_records(records)
    model = build_typo_model(corpus, scale=1.0)
    held_out = sample_text(300000, seed=SEED + 1)
    expected = expected_event_counts(held_out, model)
    rate = 100.0 * expected["corrupted_chars"] / expected["total_chars"]
    print(f"analytic corruption at scale 1: {rate:.3f}% (target ~1.0-1.1%)")
    print(f"analytic corruption at scale 3: {3 * rate:.3f}% (band [2%, 4%])")
    if not 2.0 < 3 * rate < 4.0:
        raise SystemExit("calibration out of band; adjust CHAR_ERROR_RATE")


if __name__ == "__main__":
    main()
