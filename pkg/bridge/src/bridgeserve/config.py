"""Server configuration.

Either built from CLI flags or loaded from a JSON file:

    {
      "listen": "127.0.0.1:9009",
      "mode": "echo",                  // echo | lexicon_file | seq2seq_checkpoint
      "lexicon_path": "lexicon.tsv",   // lexicon_file mode
      "checkpoint_path": "ckpt/",      // seq2seq_checkpoint mode
      "beam": 1,
      "max_input_bytes": 1024,
      "batch_size": 32
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

MODES = ("echo", "lexicon_file", "seq2seq_checkpoint")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class BridgeConfig:
    host: str = "127.0.0.1"
    port: int = 0
    mode: str = "echo"
    lexicon_path: str | None = None
    checkpoint_path: str | None = None
    beam: int = 1
    max_input_bytes: int = 1024
    batch_size: int = 32

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.beam < 1:
            raise ConfigError(f"beam must be >= 1, got {self.beam}")
        if self.max_input_bytes <= 0:
            raise ConfigError(
                f"max_input_bytes must be positive, got {self.max_input_bytes}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0 <= self.port <= 65535:
            raise ConfigError(f"port must be in [0, 65535], got {self.port}")
        if self.mode == "lexicon_file" and not self.lexicon_path:
            raise ConfigError("lexicon_file mode needs lexicon_path")
        if self.mode == "seq2seq_checkpoint" and not self.checkpoint_path:
            raise ConfigError("seq2seq_checkpoint mode needs checkpoint_path")


def parse_listen(value: str) -> tuple[str, int]:
    host, sep, port_field = value.rpartition(":")
    if not sep or not port_field.isdigit():
        raise ConfigError(f"listen address must be host:port, got {value!r}")
    return host or "127.0.0.1", int(port_field)


def load_config(path: str | Path) -> BridgeConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot open config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path}: top-level object expected")

    known = {"listen", "mode", "lexicon_path", "checkpoint_path", "beam",
             "max_input_bytes", "batch_size"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"config {path}: unknown keys {sorted(unknown)}")

    host, port = parse_listen(raw.get("listen", "127.0.0.1:0"))
    base = Path(path).resolve().parent

    def resolved(key: str) -> str | None:
        value = raw.get(key)
        if value is None:
            return None
        candidate = Path(value)
        return str(candidate if candidate.is_absolute() else base / candidate)

    return BridgeConfig(
        host=host,
        port=port,
        mode=raw.get("mode", "echo"),
        lexicon_path=resolved("lexicon_path"),
        checkpoint_path=resolved("checkpoint_path"),
        beam=int(raw.get("beam", 1)),
        max_input_bytes=int(raw.get("max_input_bytes", 1024)),
        batch_size=int(raw.get("batch_size", 32)),
    )
