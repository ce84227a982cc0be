"""Diacritics restoration, typo simulation, and evaluation toolkit.

The package works on corpora of space-tokenized, lowercase sentences. It
strips diacritics, derives keyboard-aware typo models from edit corpora
and corrupts text with them, builds unigram restoration lexicons, restores
text through pluggable backends (identity, dictionary, remote TCP server,
hybrid), and scores restorations with alpha-word accuracy plus frequency
and confusion analyses.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    BackendConnectionError,
    BackendError,
    BackendRemoteError,
    BackendTimeoutError,
    DataError,
    DiacritError,
    ProtocolError,
    UsageError,
)
from .textcore import (
    DiacriticTable,
    Sentence,
    Token,
    corpus_stats,
    is_alpha_word,
    is_diacritized,
    language_registry,
    load_language_table,
    load_table,
    strip_diacritics,
    tokenize,
)

__all__ = [
    "__version__",
    "BackendConnectionError",
    "BackendError",
    "BackendRemoteError",
    "BackendTimeoutError",
    "DataError",
    "DiacritError",
    "ProtocolError",
    "UsageError",
    "DiacriticTable",
    "Sentence",
    "Token",
    "corpus_stats",
    "is_alpha_word",
    "is_diacritized",
    "language_registry",
    "load_language_table",
    "load_table",
    "strip_diacritics",
    "tokenize",
]
