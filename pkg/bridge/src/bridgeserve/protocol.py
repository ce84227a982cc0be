"""Server side of the newline-delimited restoration protocol.

    request   R<TAB>seq<TAB>text
    response  A<TAB>seq<TAB>text
    error     E<TAB>seq<TAB>code<TAB>message

One UTF-8 line per message. seq is a decimal in [0, 2^64); the server
answers each request exactly once, in any order. Text may contain tabs
(requests split at most twice) but never newlines.
"""

from __future__ import annotations

MAX_SEQ = (1 << 64) - 1


class FrameError(ValueError):
    """Request line that cannot be answered (no usable seq)."""


def parse_request(line: str) -> tuple[int, str]:
    """Split one request line (without the trailing newline).

    Raises FrameError when the frame is unusable: wrong kind, missing
    fields, or a seq that is not a decimal in range (echoing it back
    would itself violate the protocol).
    """
    parts = line.split("\t", 2)
    if len(parts) != 3:
        raise FrameError(f"request needs 3 fields, got {len(parts)}")
    kind, seq_field, text = parts
    if kind != "R":
        raise FrameError(f"expected request kind 'R', got {kind!r}")
    if not seq_field.isdigit():
        raise FrameError(f"non-decimal sequence id {seq_field!r}")
    seq = int(seq_field)
    if seq > MAX_SEQ:
        raise FrameError(f"sequence id {seq} outside 64-bit range")
    return seq, text


def encode_answer(seq: int, text: str) -> bytes:
    if "\n" in text or "\r" in text:
        raise ValueError("answer text must not contain newlines")
    return f"A\t{seq}\t{text}\n".encode("utf-8")


def encode_error(seq: int, code: str, message: str) -> bytes:
    if "\t" in code or "\n" in code:
        raise ValueError("error code must not contain tabs or newlines")
    message = message.replace("\n", " ").replace("\r", " ")
    return f"E\t{seq}\t{code}\t{message}\n".encode("utf-8")
