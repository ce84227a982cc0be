"""Restoration backends and the hybrid dictionary/model router.

Backends turn an undiacritized (possibly typo-corrupted) line into a
restored line. Four are provided:

* identity: returns the line unchanged (the uncorrected baseline).
* dictionary: per-token most-frequent-candidate lookup in a lexicon.
* remote: client for a restoration server speaking the wire protocol,
  with sequence-id correlation and pipelined batching.
* hybrid: the backend restores the whole line, then every input token
  with exactly one lexicon candidate is overwritten by the dictionary;
  all other positions keep the backend's token.

Backends declare ``concurrent_safe``; the remote client is serial (one
socket) and batches internally instead.
"""

from __future__ import annotations

import socket
from dataclasses import dataclass
from typing import Iterable, Protocol

from .errors import (
    BackendConnectionError,
    BackendError,
    BackendRemoteError,
    BackendTimeoutError,
    ProtocolError,
    UsageError,
)
from .lexicon import UnigramLexicon
from .wire import encode_request, parse_server_line

__all__ = [
    "RestorationBackend",
    "HybridPolicy",
    "IdentityBackend",
    "DictionaryBackend",
    "RemoteBackend",
    "HybridBackend",
    "restore_identity",
    "restore_dictionary",
    "restore_hybrid",
    "restore_lines",
    "ALIGNMENT_FALLBACKS",
    "DEFAULT_TIMEOUT",
]

ALIGNMENT_FALLBACKS = ("keep_backend", "keep_dictionary")
DEFAULT_TIMEOUT = 30.0


class RestorationBackend(Protocol):
    """A sentence-in, sentence-out restorer. Output must stay one line."""

    name: str
    concurrent_safe: bool

    def restore_sentence(self, line: str) -> str: ...


@dataclass(frozen=True)
class HybridPolicy:
    """Routing policy for the hybrid backend.

    The dictionary takes exactly the single-candidate words; that
    threshold is part of the method's definition, so it is validated
    rather than tunable. ``alignment_fallback`` decides whose whole line
    wins when the backend changes the token count.
    """

    dictionary_route_threshold: int = 1
    alignment_fallback: str = "keep_backend"

    def __post_init__(self) -> None:
        if self.dictionary_route_threshold != 1:
            raise UsageError("dictionary_route_threshold is fixed at 1")
        if self.alignment_fallback not in ALIGNMENT_FALLBACKS:
            raise UsageError(
                f"alignment_fallback must be one of {ALIGNMENT_FALLBACKS}, "
                f"got {self.alignment_fallback!r}"
            )


class IdentityBackend:
    name = "identity"
    concurrent_safe = True

    def restore_sentence(self, line: str) -> str:
        return line


class DictionaryBackend:
    name = "dictionary"
    concurrent_safe = True

    def __init__(self, lexicon: UnigramLexicon):
        self.lexicon = lexicon

    def restore_sentence(self, line: str) -> str:
        return self.lexicon.restore_sentence(line)


class HybridBackend:
    name = "hybrid"

    def __init__(self, lexicon: UnigramLexicon, backend: RestorationBackend,
                 policy: HybridPolicy | None = None):
        self.lexicon = lexicon
        self.backend = backend
        self.policy = policy or HybridPolicy()
        self.concurrent_safe = backend.concurrent_safe

    def restore_sentence(self, line: str) -> str:
        backend_line = self.backend.restore_sentence(line)
        in_tokens = line.split(" ")
        out_tokens = backend_line.split(" ")
        if len(in_tokens) != len(out_tokens):
            if self.policy.alignment_fallback == "keep_backend":
                return backend_line
            return self.lexicon.restore_sentence(line)
        merged = []
        for source, restored in zip(in_tokens, out_tokens):
            if self.lexicon.candidate_count(source) == 1:
                merged.append(self.lexicon.top(source))
            else:
                merged.append(restored)
        return " ".join(merged)


class RemoteBackend:
    """Client for a restoration server speaking the wire protocol.

    One socket, serial use; ``restore_lines`` pipelines up to
    ``max_in_flight`` requests and reorders responses by sequence id.
    """

    name = "remote"
    concurrent_safe = False

    def __init__(self, endpoint: str, timeout: float = DEFAULT_TIMEOUT,
                 max_in_flight: int = 64):
        host, _, port_text = endpoint.rpartition(":")
        if not host or not port_text.isdigit():
            raise UsageError(f"endpoint must be host:port, got {endpoint!r}")
        self.endpoint = endpoint
        self.host = host
        self.port = int(port_text)
        self.timeout = timeout
        self.max_in_flight = max_in_flight
        self._sock: socket.socket | None = None
        self._reader = None
        self._next_seq = 0
        self._received: dict[int, tuple[str, str, str]] = {}
        self._in_flight: set[int] = set()

    def _connect(self) -> None:
        if self._sock is not None:
            return
        try:
            self._sock = socket.create_connection(
                (self.host, self.port), timeout=self.timeout)
        except socket.timeout as exc:
            raise BackendTimeoutError(
                f"connecting to {self.endpoint} timed out") from exc
        except OSError as exc:
            raise BackendConnectionError(
                f"cannot connect to {self.endpoint}: {exc}") from exc
        self._reader = self._sock.makefile("r", encoding="utf-8", newline="\n")

    def close(self) -> None:
        if self._reader is not None:
            self._reader.close()
            self._reader = None
        if self._sock is not None:
            self._sock.close()
            self._sock = None

    def __enter__(self) -> "RemoteBackend":
        self._connect()
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    def _send(self, text: str) -> int:
        self._connect()
        seq_id = self._next_seq
        self._next_seq += 1
        try:
            self._sock.sendall(encode_request(seq_id, text))
        except socket.timeout as exc:
            raise BackendTimeoutError(
                f"sending to {self.endpoint} timed out") from exc
        except OSError as exc:
            raise BackendConnectionError(
                f"connection to {self.endpoint} failed: {exc}") from exc
        self._in_flight.add(seq_id)
        return seq_id

    def _read_one(self) -> None:
        try:
            line = self._reader.readline()
        except socket.timeout as exc:
            raise BackendTimeoutError(
                f"no response from {self.endpoint} within {self.timeout}s") from exc
        except OSError as exc:
            raise BackendConnectionError(
                f"connection to {self.endpoint} failed: {exc}") from exc
        if not line:
            raise BackendConnectionError(
                f"{self.endpoint} closed the connection with "
                f"{len(self._in_flight)} request(s) unanswered")
        kind, seq_id, a, b = parse_server_line(line.rstrip("\n"))
        if seq_id not in self._in_flight:
            raise ProtocolError(
                f"{self.endpoint} answered unknown or duplicate "
                f"sequence id {seq_id}")
        self._in_flight.discard(seq_id)
        self._received[seq_id] = (kind, a, b)

    def _take(self, seq_id: int) -> str:
        while seq_id not in self._received:
            self._read_one()
        kind, a, b = self._received.pop(seq_id)
        if kind == "error":
            raise BackendRemoteError(a, b, seq_id=seq_id)
        return a

    def restore_sentence(self, line: str) -> str:
        return self._take(self._send(line))

    def restore_lines(self, lines: Iterable[str], on_error=None) -> list[str]:
        """Pipelined batch restore; results in input order.

        Per-request server errors raise by default; with ``on_error``
        (called as ``on_error(index, exc, line)`` and returning the
        replacement text) the batch continues, so one bad sentence does
        not discard the rest. Connection-level failures always raise.
        """
        lines = list(lines)
        results: list[str | None] = []
        pending: dict[int, int] = {}

        def drain() -> None:
            done = [seq for seq in pending if seq in self._received]
            for seq_id in done:
                index = pending.pop(seq_id)
                kind, a, b = self._received.pop(seq_id)
                if kind == "error":
                    exc = BackendRemoteError(a, b, seq_id=seq_id)
                    if on_error is None:
                        raise exc
                    results[index] = on_error(index, exc, lines[index])
                else:
                    results[index] = a

        for line in lines:
            while len(pending) >= self.max_in_flight:
                self._read_one()
                drain()
            seq_id = self._send(line)
            pending[seq_id] = len(results)
            results.append(None)
            drain()
        while pending:
            self._read_one()
            drain()
        return [r if r is not None else "" for r in results]


def restore_identity(line: str) -> str:
    return line


def restore_dictionary(line: str, lexicon: UnigramLexicon) -> str:
    return lexicon.restore_sentence(line)


def restore_hybrid(line: str, lexicon: UnigramLexicon,
                   backend: RestorationBackend,
                   policy: HybridPolicy | None = None) -> str:
    return HybridBackend(lexicon, backend, policy).restore_sentence(line)


def restore_lines(backend: RestorationBackend, lines: Iterable[str],
                  on_error=None) -> list[str]:
    """Batch restore through any backend, using the backend's own
    pipelined path when it has one. ``on_error(index, exc, line)``
    substitutes a replacement for sentences whose restoration failed
    instead of aborting the batch."""
    batch = getattr(backend, "restore_lines", None)
    if callable(batch):
        return batch(lines, on_error=on_error)
    out: list[str] = []
    for index, line in enumerate(lines):
        try:
            out.append(backend.restore_sentence(line))
        except BackendError as exc:
            if on_error is None:
                raise
            out.append(on_error(index, exc, line))
    return out
