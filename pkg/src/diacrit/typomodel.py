"""Probabilistic typo model: derivation from edit counts and persistence.

For every character c in the model character set C (characters whose
intended-side frequency reaches the threshold, 1,000 by default,
whitespace excluded):

    P(deletion | c)         = f(c -> nothing) / f(c)
    P(substitution | c)     = sum over c' in C of f(c -> c')   / f(c)
    P(insertion_after | c)  = sum over c' in C of f(c -> cc')  / (2 f(c))
    P(insertion_before | c) = sum over c' in C of f(c -> c'c)  / (2 f(c))
    P(transposition | cc')  = f(cc' -> c'c) / f(cc')

The insertion divisor is 2 f(c) because both insertion directions are
collected from the same edit samples (a lone inserted character counts
once toward each neighbour). Conditional outcome distributions normalize
the per-target counts over C:

    P(c -> c'  | c, substitution)     = f(c -> c')  / sum f(c -> c~)
    P(c -> cc' | c, insertion_after)  = f(c -> cc') / sum f(c -> cc~)
    P(c -> c'c | c, insertion_before) = f(c -> c'c) / sum f(c -> c~c)

Models serialize to a versioned JSON document (UTF-8, sorted keys).
Python's JSON float formatting is shortest-round-trip, so probabilities
reload bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

from .edits import EditCorpus, remap_layout
from .errors import DataError, ModelFormatError
from .layouts import KeyboardLayout, get_layout

__all__ = [
    "FORMAT_NAME",
    "FORMAT_VERSION",
    "DEFAULT_SCALE",
    "DEFAULT_MIN_CHAR_COUNT",
    "OutcomeDist",
    "TypoModel",
    "build_typo_model",
    "save_model",
    "load_model",
    "dump_model_text",
    "parse_model_text",
    "default_model",
]

FORMAT_NAME = "diacrit-typo-model"
FORMAT_VERSION = 1
DEFAULT_SCALE = 3.0
DEFAULT_MIN_CHAR_COUNT = 1000

# Outcome distributions are stored as tuples of (character, probability)
# sorted by character, so sampling order is deterministic.
OutcomeDist = tuple[tuple[str, float], ...]

_SUM_TOLERANCE = 1e-9


def _normalized_outcomes(counts: Mapping[str, int], chars: frozenset[str]) -> OutcomeDist:
    kept = {c: n for c, n in counts.items() if c in chars and n > 0}
    total = sum(kept.values())
    if total == 0:
        return ()
    return tuple((c, kept[c] / total) for c in sorted(kept))


@dataclass(frozen=True)
class TypoModel:
    """Per-character error probabilities with conditional outcomes."""

    layout_family: str
    scale: float
    chars: frozenset[str]
    deletion: dict[str, float]
    substitution: dict[str, float]
    insertion_after: dict[str, float]
    insertion_before: dict[str, float]
    transposition: dict[str, float]
    substitution_outcomes: dict[str, OutcomeDist]
    insertion_after_outcomes: dict[str, OutcomeDist]
    insertion_before_outcomes: dict[str, OutcomeDist]

    def __post_init__(self) -> None:
        # scale 0 is the documented no-corruption setting
        if self.scale < 0:
            raise ModelFormatError(f"scale must be non-negative, got {self.scale}")
        if not self.chars:
            raise ModelFormatError("model character set is empty")
        for name, probs in (("deletion", self.deletion),
                            ("substitution", self.substitution),
                            ("insertion_after", self.insertion_after),
                            ("insertion_before", self.insertion_before),
                            ("transposition", self.transposition)):
            for key, p in probs.items():
                if not 0.0 <= p <= 1.0:
                    raise ModelFormatError(
                        f"P({name}|{key!r}) = {p} outside [0,1]"
                    )
        for name, table in (("substitution", self.substitution_outcomes),
                            ("insertion_after", self.insertion_after_outcomes),
                            ("insertion_before", self.insertion_before_outcomes)):
            for char, dist in table.items():
                if not dist:
                    continue
                total = sum(p for _, p in dist)
                if abs(total - 1.0) > _SUM_TOLERANCE:
                    raise ModelFormatError(
                        f"{name} outcomes for {char!r} sum to {total!r}, not 1"
                    )
                for outcome, p in dist:
                    if not 0.0 <= p <= 1.0:
                        raise ModelFormatError(
                            f"{name} outcome P({outcome!r}|{char!r}) = {p} "
                            f"outside [0,1]"
                        )

    def effective(self, p: float) -> float:
        """Probability actually used at corruption time."""
        return min(1.0, self.scale * p)

    def clamped_entries(self) -> int:
        """Number of stored probabilities that the scale pushes past 1."""
        clamped = 0
        for probs in (self.deletion, self.substitution, self.insertion_after,
                      self.insertion_before, self.transposition):
            clamped += sum(1 for p in probs.values() if self.scale * p > 1.0)
        return clamped

    def with_scale(self, scale: float) -> "TypoModel":
        return replace(self, scale=scale)

    def probability_multiset(self) -> list[float]:
        """All stored probabilities as a sorted list; invariant under
        layout remapping, which only relabels the carriers."""
        values: list[float] = []
        for probs in (self.deletion, self.substitution, self.insertion_after,
                      self.insertion_before, self.transposition):
            values.extend(probs.values())
        return sorted(values)


def build_typo_model(corpus: EditCorpus,
                     layout: KeyboardLayout | None = None,
                     scale: float = DEFAULT_SCALE,
                     min_char_count: int = DEFAULT_MIN_CHAR_COUNT) -> TypoModel:
    """Derive a typo model from edit-corpus counts.

    When the layout is not the identity, records are relabeled through
    its permutation and recounted before any probability is computed
    (remap first, then derive).
    """
    if layout is None:
        layout = get_layout("qwerty")
    if not layout.is_identity:
        corpus = remap_layout(corpus, layout)

    chars = frozenset(
        c for c, n in corpus.char_counts.items()
        if n >= min_char_count and not c.isspace()
    )
    if not chars:
        raise DataError("no characters above threshold")

    deletion: dict[str, float] = {}
    substitution: dict[str, float] = {}
    insertion_after: dict[str, float] = {}
    insertion_before: dict[str, float] = {}
    substitution_outcomes: dict[str, OutcomeDist] = {}
    insertion_after_outcomes: dict[str, OutcomeDist] = {}
    insertion_before_outcomes: dict[str, OutcomeDist] = {}

    for c in sorted(chars):
        freq = corpus.char_counts[c]
        sub_counts = corpus.substitution_counts.get(c, {})
        ia_counts = corpus.insertion_after_counts.get(c, {})
        ib_counts = corpus.insertion_before_counts.get(c, {})
        sub_total = sum(n for o, n in sub_counts.items() if o in chars)
        ia_total = sum(n for o, n in ia_counts.items() if o in chars)
        ib_total = sum(n for o, n in ib_counts.items() if o in chars)
        deletion[c] = corpus.deletion_counts.get(c, 0) / freq
        substitution[c] = sub_total / freq
        insertion_after[c] = ia_total / (2 * freq)
        insertion_before[c] = ib_total / (2 * freq)
        substitution_outcomes[c] = _normalized_outcomes(sub_counts, chars)
        insertion_after_outcomes[c] = _normalized_outcomes(ia_counts, chars)
        insertion_before_outcomes[c] = _normalized_outcomes(ib_counts, chars)

    transposition: dict[str, float] = {}
    for pair, swapped in sorted(corpus.transposition_counts.items()):
        if swapped <= 0 or len(pair) != 2:
            continue
        if pair[0] not in chars or pair[1] not in chars:
            continue
        occurrences = corpus.bigram_counts.get(pair, 0)
        if occurrences > 0:
            transposition[pair] = swapped / occurrences

    return TypoModel(
        layout_family=layout.family,
        scale=scale,
        chars=chars,
        deletion=deletion,
        substitution=substitution,
        insertion_after=insertion_after,
        insertion_before=insertion_before,
        transposition=transposition,
        substitution_outcomes=substitution_outcomes,
        insertion_after_outcomes=insertion_after_outcomes,
        insertion_before_outcomes=insertion_before_outcomes,
    )


def _outcomes_to_json(dist: OutcomeDist) -> list[list]:
    return [[c, p] for c, p in dist]


def _outcomes_from_json(raw: object, context: str) -> OutcomeDist:
    if not isinstance(raw, list):
        raise ModelFormatError(f"{context}: outcome list expected")
    dist = []
    for entry in raw:
        if (not isinstance(entry, list) or len(entry) != 2
                or not isinstance(entry[0], str)
                or not isinstance(entry[1], (int, float))):
            raise ModelFormatError(f"{context}: malformed outcome entry {entry!r}")
        dist.append((entry[0], float(entry[1])))
    return tuple(dist)


def dump_model_text(model: TypoModel) -> str:
    """Serialize to the versioned JSON document."""
    characters = {}
    for c in sorted(model.chars):
        characters[c] = {
            "deletion": model.deletion.get(c, 0.0),
            "substitution": model.substitution.get(c, 0.0),
            "insertion_after": model.insertion_after.get(c, 0.0),
            "insertion_before": model.insertion_before.get(c, 0.0),
            "substitution_outcomes": _outcomes_to_json(
                model.substitution_outcomes.get(c, ())),
            "insertion_after_outcomes": _outcomes_to_json(
                model.insertion_after_outcomes.get(c, ())),
            "insertion_before_outcomes": _outcomes_to_json(
                model.insertion_before_outcomes.get(c, ())),
        }
    document = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "layout": model.layout_family,
        "scale": model.scale,
        "characters": characters,
        "transpositions": {k: model.transposition[k]
                           for k in sorted(model.transposition)},
    }
    return json.dumps(document, ensure_ascii=False, sort_keys=True, indent=1) + "\n"


def parse_model_text(text: str, source: str = "<string>") -> TypoModel:
    """Parse and validate a serialized model document."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{source}: not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ModelFormatError(f"{source}: top-level object expected")
    if document.get("format") != FORMAT_NAME:
        raise ModelFormatError(
            f"{source}: format {document.get('format')!r}, "
            f"expected {FORMAT_NAME!r}"
        )
    if document.get("version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"{source}: unsupported version {document.get('version')!r}, "
            f"this reader handles {FORMAT_VERSION}"
        )
    characters = document.get("characters")
    if not isinstance(characters, dict) or not characters:
        raise ModelFormatError(f"{source}: empty or missing character set")
    layout = document.get("layout")
    if not isinstance(layout, str):
        raise ModelFormatError(f"{source}: missing layout family")
    scale = document.get("scale")
    if not isinstance(scale, (int, float)):
        raise ModelFormatError(f"{source}: missing scale")

    deletion: dict[str, float] = {}
    substitution: dict[str, float] = {}
    insertion_after: dict[str, float] = {}
    insertion_before: dict[str, float] = {}
    substitution_outcomes: dict[str, OutcomeDist] = {}
    insertion_after_outcomes: dict[str, OutcomeDist] = {}
    insertion_before_outcomes: dict[str, OutcomeDist] = {}
    for c, entry in characters.items():
        if len(c) != 1 or not isinstance(entry, dict):
            raise ModelFormatError(f"{source}: malformed character entry {c!r}")
        for prob_name, target in (("deletion", deletion),
                                  ("substitution", substitution),
                                  ("insertion_after", insertion_after),
                                  ("insertion_before", insertion_before)):
            value = entry.get(prob_name)
            if not isinstance(value, (int, float)):
                raise ModelFormatError(
                    f"{source}: character {c!r} missing {prob_name}"
                )
            target[c] = float(value)
        substitution_outcomes[c] = _outcomes_from_json(
            entry.get("substitution_outcomes"), f"{source}:{c!r}")
        insertion_after_outcomes[c] = _outcomes_from_json(
            entry.get("insertion_after_outcomes"), f"{source}:{c!r}")
        insertion_before_outcomes[c] = _outcomes_from_json(
            entry.get("insertion_before_outcomes"), f"{source}:{c!r}")

    transposition_raw = document.get("transpositions", {})
    if not isinstance(transposition_raw, dict):
        raise ModelFormatError(f"{source}: transpositions table expected")
    transposition: dict[str, float] = {}
    for pair, value in transposition_raw.items():
        if len(pair) != 2 or not isinstance(value, (int, float)):
            raise ModelFormatError(f"{source}: malformed transposition {pair!r}")
        transposition[pair] = float(value)

    return TypoModel(
        layout_family=layout,
        scale=float(scale),
        chars=frozenset(characters),
        deletion=deletion,
        substitution=substitution,
        insertion_after=insertion_after,
        insertion_before=insertion_before,
        transposition=transposition,
        substitution_outcomes=substitution_outcomes,
        insertion_after_outcomes=insertion_after_outcomes,
        insertion_before_outcomes=insertion_before_outcomes,
    )


def save_model(model: TypoModel, path: str | Path) -> None:
    Path(path).write_text(dump_model_text(model), encoding="utf-8")


def load_model(path: str | Path) -> TypoModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot open model file {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"model file {path} is not valid UTF-8: {exc}") from exc
    return parse_model_text(text, source=str(path))


def default_model(layout: KeyboardLayout | None = None,
                  scale: float = DEFAULT_SCALE) -> TypoModel:
    """Build a model from the bundled English edit corpus."""
    from importlib import resources

    from .edits import EditCorpus

    resource = resources.files("diacrit").joinpath("data", "edits", "default_en.tsv")
    records = []
    for line in resource.read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        before, after = line.split("\t")
        records.append((before, after))
    corpus = EditCorpus.from_records(records)
    return build_typo_model(corpus, layout=layout, scale=scale)
