"""Experiment configuration: one JSON file describes a full run.

Schema (version 1):

    {
      "format": "diacrit-experiment",
      "version": 1,
      "language": "lt",                  // bundled code, or omit with paths.table
      "task": "diacritics_only",         // or "diacritics_plus_typos"
      "seed": 42,
      "scale": 3.0,                      // typo probability multiplier
      "layout": "qwerty",                // optional; default from language registry
      "paths": {
        "train": "train.txt",            // required (lexicon source)
        "dev": "dev.txt",                // optional, reserved
        "test": "test.txt",              // required (evaluation source)
        "table": "lt.tsv",               // optional; bundled table when omitted
        "edit_corpus": "edits.tsv",      // optional; default bundled corpus
        "typo_model": "model.json",      // optional; built from edit corpus if absent
        "lexicon": "lexicon.tsv",        // optional; built from train if absent
        "output_dir": "out"              // required
      },
      "backends": [
        {"kind": "identity"},
        {"kind": "dict"},
        {"kind": "remote", "endpoint": "127.0.0.1:9009", "timeout": 30.0},
        {"kind": "hybrid", "endpoint": "127.0.0.1:9009",
         "fallback": "keep_backend"}
      ]
    }

Every explicitly configured input path must exist when the run starts;
optional artifacts that are omitted are built on the fly into the output
directory. The combined task needs a typo model or an edit corpus to
build one from (the bundled edit corpus is the fallback).
"""

from __future__ import annotations

import json
import os.path
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .layouts import LAYOUT_FAMILIES
from .restore import ALIGNMENT_FALLBACKS, DEFAULT_TIMEOUT

__all__ = ["TASKS", "BACKEND_KINDS", "BackendSpec", "ExperimentConfig", "load_config"]

CONFIG_FORMAT = "diacrit-experiment"
CONFIG_VERSION = 1

TASKS = ("diacritics_only", "diacritics_plus_typos")
BACKEND_KINDS = ("identity", "dict", "remote", "hybrid")


@dataclass(frozen=True)
class BackendSpec:
    kind: str
    endpoint: str | None = None
    timeout: float = DEFAULT_TIMEOUT
    fallback: str = "keep_backend"

    def __post_init__(self) -> None:
        if self.kind not in BACKEND_KINDS:
            raise ConfigError(
                f"backend kind must be one of {BACKEND_KINDS}, got {self.kind!r}"
            )
        if self.kind == "remote" and not self.endpoint:
            raise ConfigError("remote backend requires an endpoint")
        if self.fallback not in ALIGNMENT_FALLBACKS:
            raise ConfigError(
                f"fallback must be one of {ALIGNMENT_FALLBACKS}, "
                f"got {self.fallback!r}"
            )

    @property
    def label(self) -> str:
        return self.kind


@dataclass
class ExperimentConfig:
    language: str | None
    task: str
    seed: int
    scale: float
    layout: str | None
    train: Path | None
    dev: Path | None
    test: Path
    table: Path | None
    edit_corpus: Path | None
    typo_model: Path | None
    lexicon: Path | None
    output_dir: Path
    backends: tuple[BackendSpec, ...]

    def validate(self) -> None:
        if self.task not in TASKS:
            raise ConfigError(f"task must be one of {TASKS}, got {self.task!r}")
        # scale 0 disables corruption, making the combined task reduce
        # to diacritics_only; only negative values are invalid
        if self.scale < 0:
            raise ConfigError(f"scale must be non-negative, got {self.scale}")
        if self.layout is not None and self.layout not in LAYOUT_FAMILIES:
            raise ConfigError(
                f"layout must be one of {LAYOUT_FAMILIES}, got {self.layout!r}"
            )
        if self.language is None and self.table is None:
            raise ConfigError("config needs a language code or an explicit table path")
        if not self.backends:
            raise ConfigError("config lists no backends")
        for name, path in (("train", self.train), ("dev", self.dev),
                           ("test", self.test), ("table", self.table),
                           ("edit_corpus", self.edit_corpus),
                           ("typo_model", self.typo_model),
                           ("lexicon", self.lexicon)):
            if path is not None and not path.exists():
                raise ConfigError(f"configured {name} path does not exist: {path}")
        if self.test is None:
            raise ConfigError("config needs a test corpus path")


def _path_or_none(paths: dict, key: str, base: Path) -> Path | None:
    value = paths.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise ConfigError(f"paths.{key} must be a string, got {value!r}")
    path = Path(value)
    if not path.is_absolute():
        path = base / path
    # lexical ".." cleanup only; keep symlinks untouched
    return Path(os.path.normpath(path))


def load_config(path: str | Path) -> ExperimentConfig:
    """Load, resolve (relative to the config file), and validate."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot open config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path}: top-level object expected")
    if raw.get("format") != CONFIG_FORMAT:
        raise ConfigError(
            f"config {path}: format {raw.get('format')!r}, "
            f"expected {CONFIG_FORMAT!r}"
        )
    if raw.get("version") != CONFIG_VERSION:
        raise ConfigError(
            f"config {path}: unsupported version {raw.get('version')!r}"
        )
    paths = raw.get("paths")
    if not isinstance(paths, dict):
        raise ConfigError(f"config {path}: paths object required")
    base = path.resolve().parent

    backends = []
    for entry in raw.get("backends", []):
        if not isinstance(entry, dict) or "kind" not in entry:
            raise ConfigError(f"config {path}: malformed backend entry {entry!r}")
        backends.append(BackendSpec(
            kind=entry["kind"],
            endpoint=entry.get("endpoint"),
            timeout=float(entry.get("timeout", DEFAULT_TIMEOUT)),
            fallback=entry.get("fallback", "keep_backend"),
        ))

    test = _path_or_none(paths, "test", base)
    output_dir = _path_or_none(paths, "output_dir", base)
    if test is None:
        raise ConfigError(f"config {path}: paths.test is required")
    if output_dir is None:
        raise ConfigError(f"config {path}: paths.output_dir is required")

    config = ExperimentConfig(
        language=raw.get("language"),
        task=raw.get("task", "diacritics_only"),
        seed=int(raw.get("seed", 0)),
        scale=float(raw.get("scale", 3.0)),
        layout=raw.get("layout"),
        train=_path_or_none(paths, "train", base),
        dev=_path_or_none(paths, "dev", base),
        test=test,
        table=_path_or_none(paths, "table", base),
        edit_corpus=_path_or_none(paths, "edit_corpus", base),
        typo_model=_path_or_none(paths, "typo_model", base),
        lexicon=_path_or_none(paths, "lexicon", base),
        output_dir=output_dir,
        backends=tuple(backends),
    )
    config.validate()
    return config
