"""Decoding engines behind the server.

Each engine maps a batch of input lines to output lines of equal
length. ``fast`` engines run inline on the event loop; slow ones are
dispatched to a worker thread. Engines are immutable after ``load``.
"""

from __future__ import annotations

import logging
from pathlib import Path

log = logging.getLogger("bridgeserve")


class EngineError(RuntimeError):
    """Decoding failed; the server answers the batch with E/GEN."""


class EchoEngine:
    """Returns every input verbatim."""

    fast = True

    def decode(self, texts: list[str]) -> list[str]:
        return list(texts)


class LexiconEngine:
    """Word-for-word restoration from a ranked lexicon file.

    The file holds ``key<TAB>candidate<TAB>count`` lines with candidates
    in rank order within each key group, so the first candidate seen per
    key is the one to emit. Unknown words pass through unchanged; empty
    tokens survive, preserving the exact spacing of the input line.
    """

    fast = True

    def __init__(self, path: str | Path):
        self.top: dict[str, str] = {}
        with open(path, encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 3:
                    raise ValueError(
                        f"{path}:{number}: expected 3 tab-separated fields")
                key, candidate, _count = fields
                self.top.setdefault(key, candidate)
        log.info("lexicon: %d keys from %s", len(self.top), path)

    def decode(self, texts: list[str]) -> list[str]:
        top = self.top
        return [" ".join(top.get(token, token) for token in text.split(" "))
                for text in texts]


class Seq2SeqEngine:
    """Byte-level sequence-to-sequence decoding from a local checkpoint."""

    fast = False

    def __init__(self, checkpoint: str | Path, beam: int = 1,
                 max_new_tokens: int = 1024):
        try:
            import torch
            from transformers import AutoModelForSeq2SeqLM, ByT5Tokenizer
        except ImportError as exc:
            raise EngineError(
                "seq2seq mode needs torch and transformers installed "
                f"(import failed: {exc})") from exc
        self._torch = torch
        self.tokenizer = ByT5Tokenizer()
        self.model = AutoModelForSeq2SeqLM.from_pretrained(str(checkpoint))
        self.model.eval()
        self.beam = beam
        self.max_new_tokens = max_new_tokens
        log.info("checkpoint %s loaded (beam %d)", checkpoint, beam)

    def decode(self, texts: list[str]) -> list[str]:
        try:
            batch = self.tokenizer(texts, return_tensors="pt", padding=True)
            with self._torch.no_grad():
                output = self.model.generate(
                    input_ids=batch["input_ids"],
                    attention_mask=batch["attention_mask"],
                    num_beams=self.beam,
                    do_sample=False,
                    max_new_tokens=self.max_new_tokens,
                )
            decoded = self.tokenizer.batch_decode(output,
                                                  skip_special_tokens=True)
        except Exception as exc:
            raise EngineError(f"decode failed: {exc}") from exc
        # generated text is still one protocol line; strip anything that
        # would break framing
        return [text.replace("\n", " ").replace("\r", " ")
                for text in decoded]


def build_engine(config) -> EchoEngine | LexiconEngine | Seq2SeqEngine:
    if config.mode == "echo":
        return EchoEngine()
    if config.mode == "lexicon_file":
        return LexiconEngine(config.lexicon_path)
    return Seq2SeqEngine(config.checkpoint_path, beam=config.beam)
