"""Core text primitives: tokenization, diacritic tables, stripping, statistics.

Corpus files are UTF-8 text, one sentence per line, tokens separated by
single spaces. A token is a maximal run of non-space characters; a word
counts as an alpha-word when it is non-empty and every character is a
Unicode letter (categories Lu, Ll, Lt, Lm, Lo). Diacritic tables map each
diacritized letter to its base letter and drive both stripping and the
diacritic statistics.

Table files hold one `diacritic<TAB>base` pair per line, `#` starts a
comment, and the language code is taken from the file name when not given
explicitly. Only lowercase pairs are curated in the files; uppercase pairs
are derived on load (explicit uppercase lines such as the Turkish dotted
capital I are kept and win over derivation).
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusError, TableError

__all__ = [
    "ALPHA_CATEGORIES",
    "Token",
    "Sentence",
    "ReadCounters",
    "DiacriticTable",
    "CorpusStats",
    "LanguageInfo",
    "is_alpha_word",
    "tokenize",
    "iter_sentences",
    "read_corpus_file",
    "strip_diacritics",
    "is_diacritized",
    "corpus_stats",
    "load_table",
    "parse_table",
    "language_registry",
    "load_language_table",
]

# Unicode general categories that make up "letters"; str.isalpha() tests
# exactly this set, which the unit tests cross-check via unicodedata.
ALPHA_CATEGORIES = frozenset({"Lu", "Ll", "Lt", "Lm", "Lo"})


def is_alpha_word(text: str) -> bool:
    """True when ``text`` is non-empty and all characters are letters."""
    return text.isalpha()


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited token of a sentence."""

    text: str

    @property
    def is_alpha(self) -> bool:
        return self.text.isalpha()

    def __len__(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class Sentence:
    """A tokenized line; joining the tokens with single spaces is the
    canonical surface form."""

    tokens: tuple[Token, ...]

    @property
    def text(self) -> str:
        return " ".join(t.text for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)


@dataclass
class ReadCounters:
    """Diagnostics accumulated while reading a corpus."""

    lines: int = 0
    multispace_lines: int = 0


def tokenize(line: str) -> Sentence:
    """Split one corpus line into tokens.

    Total function: any string tokenizes. Runs of spaces collapse to one
    separator and leading/trailing spaces produce no tokens, so the result
    round-trips through ``Sentence.text`` only for canonical single-spaced
    lines; callers that care about anomalies track them via
    :func:`iter_sentences` counters.
    """
    parts = line.split(" ")
    return Sentence(tuple(Token(p) for p in parts if p))


def _is_anomalous(line: str) -> bool:
    return line != " ".join(p for p in line.split(" ") if p)


def iter_sentences(lines: Iterable[str], counters: ReadCounters | None = None) -> Iterator[Sentence]:
    """Tokenize an iterable of lines, tracking anomalies in ``counters``.

    Trailing newlines are removed before tokenization. Lines whose spacing
    is not canonical (double spaces, leading/trailing spaces) still parse
    but increment ``counters.multispace_lines``.
    """
    for line in lines:
        line = line.rstrip("\r\n")
        if counters is not None:
            counters.lines += 1
            if _is_anomalous(line):
                counters.multispace_lines += 1
        yield tokenize(line)


def read_corpus_file(path: str | Path, counters: ReadCounters | None = None) -> Iterator[Sentence]:
    """Stream sentences from a corpus file."""
    try:
        handle = open(path, encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot open corpus file {path}: {exc}") from exc
    with handle:
        try:
            yield from iter_sentences(handle, counters)
        except UnicodeDecodeError as exc:
            raise CorpusError(f"corpus file {path} is not valid UTF-8: {exc}") from exc


@dataclass(frozen=True)
class DiacriticTable:
    """Mapping from diacritized letters to their base letters.

    ``pairs`` holds the full mapping including derived uppercase entries;
    ``lowercase_pairs`` is the curated lowercase subset whose size is the
    language's diacritic-letter inventory size.
    """

    language: str
    pairs: tuple[tuple[str, str], ...]
    lowercase_pairs: tuple[tuple[str, str], ...]
    diacritics: frozenset[str] = field(repr=False)
    _strip_map: dict[int, str] = field(repr=False)

    @classmethod
    def from_pairs(cls, language: str, pairs: Iterable[tuple[str, str]]) -> "DiacriticTable":
        """Validate curated pairs and derive uppercase counterparts."""
        curated: list[tuple[str, str]] = []
        seen: dict[str, str] = {}
        for diacritic, base in pairs:
            if len(diacritic) != 1 or len(base) != 1:
                raise TableError(
                    f"{language}: table entries must map one character to one "
                    f"character, got {diacritic!r} -> {base!r}"
                )
            if not diacritic.isalpha() or not base.isalpha():
                raise TableError(
                    f"{language}: non-letter table entry {diacritic!r} -> {base!r}"
                )
            if diacritic == base:
                raise TableError(f"{language}: identity mapping for {diacritic!r}")
            if diacritic in seen:
                raise TableError(f"{language}: duplicate diacritic {diacritic!r}")
            seen[diacritic] = base
            curated.append((diacritic, base))
        for diacritic, base in curated:
            if base in seen:
                raise TableError(
                    f"{language}: base {base!r} is itself listed as a diacritic"
                )

        full = list(curated)
        for diacritic, base in curated:
            upper_d, upper_b = diacritic.upper(), base.upper()
            if len(upper_d) != 1 or len(upper_b) != 1:
                continue
            if upper_d == diacritic or upper_d == upper_b or upper_d in seen:
                continue
            seen[upper_d] = upper_b
            full.append((upper_d, upper_b))

        lowercase = tuple(p for p in curated if p[0].islower())
        return cls(
            language=language,
            pairs=tuple(full),
            lowercase_pairs=lowercase,
            diacritics=frozenset(seen),
            _strip_map=str.maketrans(dict(full)),
        )

    @property
    def size(self) -> int:
        """Number of curated lowercase diacritic letters."""
        return len(self.lowercase_pairs)

    def strip(self, text: str) -> str:
        return text.translate(self._strip_map)

    def has_diacritic(self, text: str) -> bool:
        return any(ch in self.diacritics for ch in text)


def strip_diacritics(text: str, table: DiacriticTable) -> str:
    """Replace every diacritized letter with its base letter."""
    return table.strip(text)


def is_diacritized(text: str, table: DiacriticTable) -> bool:
    """True when ``text`` contains at least one diacritized letter."""
    return table.has_diacritic(text)


def parse_table(text: str, language: str) -> DiacriticTable:
    """Parse table file content (``diacritic<TAB>base`` lines)."""
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise TableError(
                f"{language}: line {lineno} must be 'diacritic<TAB>base', got {raw!r}"
            )
        pairs.append((fields[0], fields[1]))
    if not pairs:
        raise TableError(f"{language}: table has no entries")
    return DiacriticTable.from_pairs(language, pairs)


def load_table(path: str | Path, language: str | None = None) -> DiacriticTable:
    """Load a diacritic table file; language defaults to the file stem."""
    path = Path(path)
    lang = language or path.stem
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableError(f"cannot open table file {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise TableError(f"table file {path} is not valid UTF-8: {exc}") from exc
    return parse_table(text, lang)


@dataclass(frozen=True)
class LanguageInfo:
    """Registry row for one bundled language."""

    code: str
    name: str
    keyboard: str
    diacritic_letters: int


def _data_root():
    return resources.files("diacrit").joinpath("data")


def language_registry() -> dict[str, LanguageInfo]:
    """Bundled languages with their keyboard family and inventory size."""
    registry: dict[str, LanguageInfo] = {}
    text = _data_root().joinpath("languages.tsv").read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        code, name, keyboard, count = line.split("\t")
        registry[code] = LanguageInfo(code, name, keyboard, int(count))
    return registry


def load_language_table(code: str) -> DiacriticTable:
    """Load the bundled table for a language code, checking its size
    against the registry."""
    registry = language_registry()
    if code not in registry:
        known = ", ".join(sorted(registry))
        raise TableError(f"unknown language {code!r}; bundled languages: {known}")
    resource = _data_root().joinpath("tables", f"{code}.tsv")
    table = parse_table(resource.read_text(encoding="utf-8"), code)
    expected = registry[code].diacritic_letters
    if table.size != expected:
        raise TableError(
            f"{code}: bundled table has {table.size} lowercase entries, "
            f"registry says {expected}"
        )
    return table


@dataclass
class CorpusStats:
    """Aggregate counts over a corpus, relative to a diacritic table.

    Percentages are over alpha-words (and their letters); on an empty
    corpus they read 0.0 and ``undefined`` is set instead of raising.
    """

    sentences: int = 0
    alpha_words: int = 0
    diacritic_words: int = 0
    alpha_letters: int = 0
    diacritic_letters: int = 0
    multispace_lines: int = 0

    @property
    def undefined(self) -> bool:
        return self.alpha_words == 0

    @property
    def diacritic_word_pct(self) -> float:
        if self.alpha_words == 0:
            return 0.0
        return 100.0 * self.diacritic_words / self.alpha_words

    @property
    def diacritic_letter_pct(self) -> float:
        if self.alpha_letters == 0:
            return 0.0
        return 100.0 * self.diacritic_letters / self.alpha_letters


def corpus_stats(sentences: Iterable[Sentence], table: DiacriticTable,
                 counters: ReadCounters | None = None) -> CorpusStats:
    """Count sentences, alpha-words, and diacritic usage.

    Letter percentages are taken over the letters of alpha-words, matching
    the word-level framing of the evaluation metric.
    """
    stats = CorpusStats()
    diacritics = table.diacritics
    for sentence in sentences:
        stats.sentences += 1
        for token in sentence.tokens:
            text = token.text
            if not text.isalpha():
                continue
            stats.alpha_words += 1
            stats.alpha_letters += len(text)
            hits = sum(1 for ch in text if ch in diacritics)
            if hits:
                stats.diacritic_words += 1
                stats.diacritic_letters += hits
    if counters is not None:
        stats.multispace_lines = counters.multispace_lines
    return stats
