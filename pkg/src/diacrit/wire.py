"""Wire protocol for remote restoration servers.

Newline-delimited UTF-8 messages over a stream socket:

    request   R<TAB>seq_id<TAB>text
    response  A<TAB>seq_id<TAB>text
    error     E<TAB>seq_id<TAB>code<TAB>message

seq_id is a decimal 64-bit counter assigned by the client; the server
answers each request exactly once, in any order, and must never reorder
bytes within a message. Text may contain tabs (parsers split a bounded
number of times) but never newlines.
"""

from __future__ import annotations

from .errors import ProtocolError

__all__ = [
    "MAX_SEQ_ID",
    "encode_request",
    "encode_response",
    "encode_error",
    "parse_client_line",
    "parse_server_line",
]

MAX_SEQ_ID = (1 << 64) - 1


def _check_seq(seq_id: int) -> int:
    if not 0 <= seq_id <= MAX_SEQ_ID:
        raise ProtocolError(f"sequence id {seq_id} outside 64-bit range")
    return seq_id


def _check_text(text: str) -> str:
    if "\n" in text or "\r" in text:
        raise ProtocolError("message text must not contain newlines")
    return text


def _encode_line(line: str) -> bytes:
    # lone surrogates slip through str but have no UTF-8 form
    try:
        return line.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise ProtocolError(f"message text is not UTF-8 encodable: {exc}") from exc


def encode_request(seq_id: int, text: str) -> bytes:
    return _encode_line(f"R\t{_check_seq(seq_id)}\t{_check_text(text)}\n")


def encode_response(seq_id: int, text: str) -> bytes:
    return _encode_line(f"A\t{_check_seq(seq_id)}\t{_check_text(text)}\n")


def encode_error(seq_id: int, code: str, message: str) -> bytes:
    if "\t" in code:
        raise ProtocolError("error code must not contain tabs")
    return _encode_line(
        f"E\t{_check_seq(seq_id)}\t{code}\t{_check_text(message)}\n")


def _parse_seq(field: str, line: str) -> int:
    if not field.isdigit():
        raise ProtocolError(f"bad sequence id in message {line!r}")
    seq_id = int(field)
    if seq_id > MAX_SEQ_ID:
        raise ProtocolError(f"sequence id {seq_id} outside 64-bit range")
    return seq_id


def parse_client_line(line: str) -> tuple[int, str]:
    """Parse one request line (server side). Returns (seq_id, text)."""
    parts = line.split("\t", 2)
    if len(parts) != 3 or parts[0] != "R":
        raise ProtocolError(f"malformed request {line!r}")
    return _parse_seq(parts[1], line), parts[2]


def parse_server_line(line: str) -> tuple[str, int, str, str]:
    """Parse one response line (client side).

    Returns ("ok", seq_id, text, "") for answers and
    ("error", seq_id, code, message) for error responses.
    """
    kind = line.split("\t", 1)[0]
    if kind == "A":
        parts = line.split("\t", 2)
        if len(parts) != 3:
            raise ProtocolError(f"malformed response {line!r}")
        return "ok", _parse_seq(parts[1], line), parts[2], ""
    if kind == "E":
        parts = line.split("\t", 3)
        if len(parts) != 4:
            raise ProtocolError(f"malformed error response {line!r}")
        return "error", _parse_seq(parts[1], line), parts[2], parts[3]
    raise ProtocolError(f"unknown message kind in {line!r}")
