import re
import socket
import threading
from pathlib import Path

import pytest

from bridgeserve.config import BridgeConfig
from bridgeserve.engines import (
    EchoEngine,
    EngineError,
    LexiconEngine,
    build_engine,
)

BRIDGE_SRC = Path(__file__).resolve().parents[1] / "src" / "bridgeserve"


class FlakyEngine:
    """Fails the whole batch when any text equals 'fail'."""

    fast = True

    def decode(self, texts):
        if any(text == "fail" for text in texts):
            raise EngineError("synthetic failure")
        return list(texts)


class SlowFailingEngine:
    fast = False

    def decode(self, texts):
        raise EngineError("always down")


class UnframeableEngine:
    """Answers that the line protocol cannot carry."""

    fast = True

    def decode(self, texts):
        return ["two\nlines" if text == "newline" else "lone \ud800"
                for text in texts]


class RecordingEngine:
    fast = True

    def __init__(self):
        self.batch_sizes = []
        self.lock = threading.Lock()

    def decode(self, texts):
        with self.lock:
            self.batch_sizes.append(len(texts))
        return list(texts)


class TestEchoRoundTrip:
    def test_single_request(self, bridge_factory, raw_exchange):
        bridge = bridge_factory()
        reply = raw_exchange(bridge.port, "R\t0\tčaša šuma\n".encode("utf-8"))
        assert reply == "A\t0\tčaša šuma\n".encode("utf-8")

    def test_pipelined_requests_each_answered_once(self, bridge_factory,
                                                   raw_exchange):
        bridge = bridge_factory()
        payload = b"".join(f"R\t{seq}\tline {seq}\n".encode("utf-8")
                           for seq in range(50))
        reply = raw_exchange(bridge.port, payload).decode("utf-8")
        lines = reply.splitlines()
        assert sorted(lines, key=lambda l: int(l.split("\t")[1])) == [
            f"A\t{seq}\tline {seq}" for seq in range(50)]

    def test_tab_and_empty_payloads(self, bridge_factory, raw_exchange):
        bridge = bridge_factory()
        reply = raw_exchange(bridge.port, b"R\t1\ta\tb\nR\t2\t\n")
        assert reply == b"A\t1\ta\tb\nA\t2\t\n"

    def test_duplicate_seq_answered_per_request(self, bridge_factory,
                                                raw_exchange):
        # the server does not correlate ids; that is the client's job
        bridge = bridge_factory()
        reply = raw_exchange(bridge.port, b"R\t5\tx\nR\t5\ty\n")
        assert reply == b"A\t5\tx\nA\t5\ty\n"


class TestLengthLimit:
    def test_at_limit_passes(self, bridge_factory, raw_exchange):
        bridge = bridge_factory(BridgeConfig(port=0, max_input_bytes=8))
        reply = raw_exchange(bridge.port, b"R\t0\t" + b"x" * 8 + b"\n")
        assert reply == b"A\t0\t" + b"x" * 8 + b"\n"

    def test_over_limit_gets_len_error(self, bridge_factory, raw_exchange):
        bridge = bridge_factory(BridgeConfig(port=0, max_input_bytes=8))
        reply = raw_exchange(bridge.port, b"R\t0\t" + b"x" * 9 + b"\n")
        assert reply.startswith(b"E\t0\tLEN\t")

    def test_limit_counts_bytes_not_characters(self, bridge_factory,
                                               raw_exchange):
        bridge = bridge_factory(BridgeConfig(port=0, max_input_bytes=8))
        text = "é" * 5  # 5 characters, 10 UTF-8 bytes
        reply = raw_exchange(bridge.port, f"R\t0\t{text}\n".encode("utf-8"))
        assert reply.startswith(b"E\t0\tLEN\t")

    def test_connection_survives_len_error(self, bridge_factory,
                                           raw_exchange):
        bridge = bridge_factory(BridgeConfig(port=0, max_input_bytes=8))
        reply = raw_exchange(bridge.port,
                             b"R\t0\t" + b"x" * 9 + b"\nR\t1\tok\n")
        assert b"E\t0\tLEN\t" in reply
        assert b"A\t1\tok\n" in reply


class TestEngineFailures:
    def test_gen_error_per_batch_member(self, bridge_factory, raw_exchange):
        bridge = bridge_factory(engine=FlakyEngine())
        reply = raw_exchange(bridge.port, b"R\t0\tfail\n")
        assert reply == b"E\t0\tGEN\tsynthetic failure\n"

    def test_connection_survives_gen_error(self, bridge_factory):
        bridge = bridge_factory(engine=FlakyEngine())
        with socket.create_connection(("127.0.0.1", bridge.port),
                                      timeout=10) as sock:
            reader = sock.makefile("rb")
            try:
                sock.sendall(b"R\t0\tfail\n")
                assert reader.readline() == b"E\t0\tGEN\tsynthetic failure\n"
                sock.sendall(b"R\t1\tstill here\n")
                assert reader.readline() == b"A\t1\tstill here\n"
            finally:
                reader.close()

    def test_slow_engine_failure_also_answers(self, bridge_factory,
                                              raw_exchange):
        bridge = bridge_factory(engine=SlowFailingEngine())
        reply = raw_exchange(bridge.port, b"R\t3\tanything\n")
        assert reply == b"E\t3\tGEN\talways down\n"

    def test_unframeable_answers_become_gen_errors(self, bridge_factory,
                                                   raw_exchange):
        bridge = bridge_factory(engine=UnframeableEngine())
        reply = raw_exchange(bridge.port, b"R\t0\tnewline\nR\t1\tsurrogate\n")
        lines = reply.decode("utf-8").splitlines()
        assert sorted(lines) == [
            "E\t0\tGEN\tengine produced an unframeable answer",
            "E\t1\tGEN\tengine produced an unframeable answer",
        ]


class TestUnusableFramesCloseConnection:
    @pytest.mark.parametrize("frame", [
        b"Q\t1\thello\n",
        b"R\tabc\thello\n",
        b"R\t-1\thello\n",
        b"R\t" + str(1 << 64).encode() + b"\thello\n",
        b"R\t1\n",
        b"R\n",
        b"\n",
        b"R\t1\t\xff\xfe broken utf8\n",
    ])
    def test_closed_without_response(self, bridge_factory, raw_exchange,
                                     frame):
        bridge = bridge_factory()
        assert raw_exchange(bridge.port, frame) == b""

    def test_earlier_answers_still_delivered(self, bridge_factory,
                                             raw_exchange):
        bridge = bridge_factory()
        reply = raw_exchange(bridge.port, b"R\t0\tok\nQ\t1\tbad\nR\t2\tlost\n")
        assert reply == b"A\t0\tok\n"

    def test_truncated_final_line_ignored(self, bridge_factory, raw_exchange):
        bridge = bridge_factory()
        reply = raw_exchange(bridge.port, b"R\t0\tok\nR\t1\tno newline")
        assert reply == b"A\t0\tok\n"


class TestBatching:
    def test_batches_never_exceed_configured_size(self, bridge_factory,
                                                  raw_exchange):
        engine = RecordingEngine()
        bridge = bridge_factory(BridgeConfig(port=0, batch_size=3),
                                engine=engine)
        payload = b"".join(f"R\t{seq}\tt{seq}\n".encode() for seq in range(20))
        reply = raw_exchange(bridge.port, payload)
        assert reply.count(b"\n") == 20
        assert engine.batch_sizes and max(engine.batch_sizes) <= 3
        assert sum(engine.batch_sizes) == 20


class TestConcurrentConnections:
    def test_eight_clients_interleaved(self, bridge_factory):
        bridge = bridge_factory()
        failures = []

        def client(tag: int) -> None:
            try:
                payload = b"".join(
                    f"R\t{seq}\tclient {tag} line {seq}\n".encode()
                    for seq in range(50))
                with socket.create_connection(("127.0.0.1", bridge.port),
                                              timeout=10) as sock:
                    sock.sendall(payload)
                    sock.shutdown(socket.SHUT_WR)
                    data = b""
                    while True:
                        chunk = sock.recv(65536)
                        if not chunk:
                            break
                        data += chunk
                lines = sorted(data.decode().splitlines(),
                               key=lambda l: int(l.split("\t")[1]))
                expected = [f"A\t{seq}\tclient {tag} line {seq}"
                            for seq in range(50)]
                if lines != expected:
                    failures.append(f"client {tag}: bad reply")
            except Exception as exc:
                failures.append(f"client {tag}: {exc!r}")

        threads = [threading.Thread(target=client, args=(tag,))
                   for tag in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join(timeout=30)
        assert not failures, failures


class TestLexiconEngine:
    @pytest.fixture
    def lexicon_file(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text(
            "ca\tça\t5\n"
            "ca\tca\t2\n"
            "casa\tčaša\t9\n"
            "suma\tšuma\t4\n",
            encoding="utf-8")
        return path

    def test_first_candidate_per_key_wins(self, lexicon_file):
        engine = LexiconEngine(lexicon_file)
        assert engine.decode(["ca va"]) == ["ça va"]

    def test_unknown_words_pass_through(self, lexicon_file):
        engine = LexiconEngine(lexicon_file)
        assert engine.decode(["casa mystery suma"]) == ["čaša mystery šuma"]

    def test_empty_tokens_preserved(self, lexicon_file):
        engine = LexiconEngine(lexicon_file)
        assert engine.decode(["ca  casa", "", " lead"]) == \
            ["ça  čaša", "", " lead"]

    def test_malformed_line_reports_location(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("ca\tça\t5\nbroken line\n", encoding="utf-8")
        with pytest.raises(ValueError, match=r"bad\.tsv:2"):
            LexiconEngine(path)

    def test_served_end_to_end(self, lexicon_file, bridge_factory,
                               raw_exchange):
        config = BridgeConfig(port=0, mode="lexicon_file",
                              lexicon_path=str(lexicon_file))
        bridge = bridge_factory(config)
        reply = raw_exchange(bridge.port, "R\t0\tca casa suma x\n".encode())
        assert reply == "A\t0\tça čaša šuma x\n".encode("utf-8")


class TestBuildEngine:
    def test_echo(self):
        assert isinstance(build_engine(BridgeConfig()), EchoEngine)

    def test_lexicon(self, tmp_path):
        path = tmp_path / "lex.tsv"
        path.write_text("a\tá\t1\n", encoding="utf-8")
        engine = build_engine(BridgeConfig(mode="lexicon_file",
                                           lexicon_path=str(path)))
        assert isinstance(engine, LexiconEngine)


def test_server_package_does_not_import_restoration_toolkit():
    # the bridge talks to the toolkit over the wire and through files
    # only; a direct import would silently couple the two codebases
    pattern = re.compile(r"^\s*(import|from)\s+diacrit\b", re.MULTILINE)
    for source in sorted(BRIDGE_SRC.glob("*.py")):
        assert not pattern.search(source.read_text(encoding="utf-8")), \
            f"{source.name} imports the restoration toolkit"
