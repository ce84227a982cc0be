import pytest

from diacrit.textcore import DiacriticTable
from wiretest import LineServer, echo_handler

# Small mixed inventory used across tests; stable and language-neutral.
TOY_PAIRS = (
    ("ç", "c"),
    ("à", "a"),
    ("é", "e"),
    ("š", "s"),
    ("ž", "z"),
    ("ą", "a"),
)


@pytest.fixture
def toy_table() -> DiacriticTable:
    return DiacriticTable.from_pairs("toy", TOY_PAIRS)


@pytest.fixture
def echo_server():
    with LineServer(echo_handler) as server:
        yield server


@pytest.fixture
def line_server_factory():
    servers = []

    def start(handler):
        server = LineServer(handler)
        servers.append(server)
        return server

    yield start
    for server in servers:
        server.close()
