import asyncio
import socket
import threading

import pytest

from bridgeserve.config import BridgeConfig
from bridgeserve.server import BridgeServer


class BridgeThread:
    """Runs a BridgeServer on its own event loop in a daemon thread."""

    def __init__(self, config: BridgeConfig, engine=None):
        self.server = BridgeServer(config, engine=engine)
        self.loop = asyncio.new_event_loop()
        self._ready = threading.Event()
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()
        if not self._ready.wait(timeout=10):
            raise RuntimeError("bridge server did not start within 10s")

    def _run(self) -> None:
        asyncio.set_event_loop(self.loop)
        self.loop.run_until_complete(self.server.start())
        self._ready.set()
        self.loop.run_forever()

    @property
    def port(self) -> int:
        assert self.server.port is not None
        return self.server.port

    @property
    def endpoint(self) -> str:
        return f"127.0.0.1:{self.port}"

    def stop(self) -> None:
        asyncio.run_coroutine_threadsafe(self.server.stop(),
                                         self.loop).result(timeout=10)
        self.loop.call_soon_threadsafe(self.loop.stop)
        self._thread.join(timeout=10)


@pytest.fixture
def bridge_factory():
    running: list[BridgeThread] = []

    def start(config: BridgeConfig | None = None, engine=None) -> BridgeThread:
        bridge = BridgeThread(config or BridgeConfig(port=0), engine=engine)
        running.append(bridge)
        return bridge

    yield start
    for bridge in running:
        bridge.stop()


@pytest.fixture
def raw_exchange():
    """Send raw bytes to a port, half-close, and read the full reply."""

    def exchange(port: int, payload: bytes, timeout: float = 10.0) -> bytes:
        with socket.create_connection(("127.0.0.1", port),
                                      timeout=timeout) as sock:
            sock.sendall(payload)
            sock.shutdown(socket.SHUT_WR)
            chunks = []
            while True:
                chunk = sock.recv(65536)
                if not chunk:
                    break
                chunks.append(chunk)
        return b"".join(chunks)

    return exchange
