"""Asyncio TCP server for the restoration wire protocol.

Per connection: the handler reads request lines and feeds an inbound
queue, a processing task drains that queue in batches through the
engine, and a single writer task owns the socket's write side, so
responses are never interleaved no matter how many are in flight.
Unusable frames (undecodable bytes, malformed requests, out-of-range
sequence ids) terminate the connection because no legal response can
name them; all other failures answer the offending request with an
``E`` line and keep the connection alive.
"""

from __future__ import annotations

import asyncio
import logging

from .engines import EngineError, build_engine
from .protocol import FrameError, encode_answer, encode_error, parse_request

log = logging.getLogger("bridgeserve")

_CLOSE = object()


class BridgeServer:
    def __init__(self, config, engine=None):
        self.config = config
        self.engine = engine if engine is not None else build_engine(config)
        self.port: int | None = None
        self._server: asyncio.AbstractServer | None = None
        # slow engines are not assumed thread-safe; decode one batch at a time
        self._engine_lock = asyncio.Lock()

    async def start(self) -> None:
        limit = max(1 << 16, self.config.max_input_bytes + 64)
        self._server = await asyncio.start_server(
            self._handle_connection, self.config.host, self.config.port,
            limit=limit)
        self.port = self._server.sockets[0].getsockname()[1]
        log.info("listening on %s:%d (mode %s, batch %d)",
                 self.config.host, self.port, self.config.mode,
                 self.config.batch_size)

    async def stop(self) -> None:
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
            self._server = None

    async def serve_forever(self) -> None:
        await self.start()
        assert self._server is not None
        async with self._server:
            await self._server.serve_forever()

    # -- connection plumbing ---------------------------------------------

    async def _handle_connection(self, reader, writer) -> None:
        peer = writer.get_extra_info("peername")
        in_queue: asyncio.Queue = asyncio.Queue()
        out_queue: asyncio.Queue = asyncio.Queue()
        process_task = asyncio.create_task(self._process(in_queue, out_queue))
        write_task = asyncio.create_task(self._write(writer, out_queue))
        try:
            while True:
                try:
                    raw = await reader.readline()
                except ValueError:
                    log.warning("%s: line over stream limit, closing", peer)
                    break
                if not raw:
                    break
                if not raw.endswith(b"\n"):
                    log.warning("%s: truncated final line ignored", peer)
                    break
                try:
                    line = raw[:-1].decode("utf-8")
                    seq, text = parse_request(line)
                except (UnicodeDecodeError, FrameError) as exc:
                    log.warning("%s: unusable frame (%s), closing", peer, exc)
                    break
                if len(text.encode("utf-8")) > self.config.max_input_bytes:
                    out_queue.put_nowait(encode_error(
                        seq, "LEN",
                        f"input over {self.config.max_input_bytes} bytes"))
                    continue
                in_queue.put_nowait((seq, text))
        finally:
            in_queue.put_nowait(_CLOSE)
            await process_task
            out_queue.put_nowait(_CLOSE)
            await write_task
            writer.close()
            try:
                await writer.wait_closed()
            except (ConnectionError, OSError):
                pass

    async def _process(self, in_queue, out_queue) -> None:
        batch_size = self.config.batch_size
        while True:
            item = await in_queue.get()
            if item is _CLOSE:
                return
            batch = [item]
            while len(batch) < batch_size:
                try:
                    extra = in_queue.get_nowait()
                except asyncio.QueueEmpty:
                    break
                if extra is _CLOSE:
                    await self._decode_batch(batch, out_queue)
                    return
                batch.append(extra)
            await self._decode_batch(batch, out_queue)

    async def _decode_batch(self, batch, out_queue) -> None:
        seqs = [seq for seq, _ in batch]
        texts = [text for _, text in batch]
        try:
            if self.engine.fast:
                outputs = self.engine.decode(texts)
            else:
                async with self._engine_lock:
                    outputs = await asyncio.to_thread(self.engine.decode, texts)
        except EngineError as exc:
            log.warning("decode failed for %d request(s): %s", len(batch), exc)
            for seq in seqs:
                out_queue.put_nowait(encode_error(seq, "GEN", str(exc)))
            return
        for seq, output in zip(seqs, outputs):
            try:
                payload = encode_answer(seq, output)
            except (ValueError, UnicodeEncodeError):
                # an engine answer the protocol cannot carry (newlines,
                # lone surrogates) must not kill the connection
                payload = encode_error(
                    seq, "GEN", "engine produced an unframeable answer")
            out_queue.put_nowait(payload)

    async def _write(self, writer, out_queue) -> None:
        while True:
            payload = await out_queue.get()
            if payload is _CLOSE:
                return
            try:
                writer.write(payload)
                await writer.drain()
            except (ConnectionError, OSError):
                return


def run(config) -> None:
    """Blocking entry point: serve until interrupted."""
    server = BridgeServer(config)

    async def main() -> None:
        await server.serve_forever()

    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        pass
