"""Exception hierarchy shared across the package.

Three top-level families map onto the CLI exit codes: usage problems
(exit 1), data problems such as malformed files or mismatched inputs
(exit 2), and restoration-backend problems (exit 3).
"""

from __future__ import annotations

__all__ = [
    "DiacritError",
    "UsageError",
    "DataError",
    "TableError",
    "CorpusError",
    "EditCorpusError",
    "ModelFormatError",
    "LexiconError",
    "EvaluationError",
    "ConfigError",
    "BackendError",
    "ProtocolError",
    "BackendConnectionError",
    "BackendTimeoutError",
    "BackendRemoteError",
]


class DiacritError(Exception):
    """Base class for all package-specific errors."""


class UsageError(DiacritError):
    """Command invoked with missing or contradictory arguments."""


class DataError(DiacritError):
    """Input data is malformed or inconsistent with its declared format."""


class TableError(DataError):
    """Diacritic table file violates its format or internal consistency."""


class CorpusError(DataError):
    """Corpus file cannot be interpreted."""


class EditCorpusError(DataError):
    """Edit corpus (before/after pairs) file is malformed."""


class ModelFormatError(DataError):
    """Serialized typo model fails validation on load."""


class LexiconError(DataError):
    """Lexicon file is malformed or inconsistent with its table."""


class EvaluationError(DataError):
    """Gold and prediction inputs cannot be compared."""


class ConfigError(DataError):
    """Experiment config file is malformed or references missing inputs."""


class BackendError(DiacritError):
    """A restoration backend failed to produce output."""


class ProtocolError(BackendError):
    """Remote peer sent bytes that do not parse as a protocol message."""


class BackendConnectionError(BackendError):
    """Remote endpoint refused, dropped, or never accepted the connection."""


class BackendTimeoutError(BackendError):
    """Remote endpoint did not answer within the configured deadline."""


class BackendRemoteError(BackendError):
    """Remote endpoint answered with an explicit error response."""

    def __init__(self, code: str, message: str, seq_id: int | None = None):
        super().__init__(f"remote error {code}: {message}")
        self.code = code
        self.message = message
        self.seq_id = seq_id
