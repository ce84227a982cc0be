"""Command-line interface.

Subcommands: stats, strip, prepare, corrupt, build-typo-model,
build-lexicon, restore, evaluate, analyze, run. Data flows through files
(or stdout for single outputs); diagnostics and progress go to stderr.
Exit codes: 0 success, 1 usage error, 2 data error, 3 backend error.

Every command is deterministic given identical inputs and seed: output
files carry no timestamps and all sampling is driven by derived
per-sentence seeds.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import ExperimentConfig, load_config
from .corrupt import corrupt_lines, corruption_report, derive_seed
from .edits import load_edit_corpus
from .errors import BackendError, ConfigError, DataError, DiacritError, UsageError
from .evalkit import (
    alpha_word_accuracy,
    emit_report,
    error_ratio_by_candidates,
    frequency_bucket_report,
    render_table,
    report_as_dict,
    unseen_confusion,
)
from .layouts import LAYOUT_FAMILIES, get_layout, load_layout_file
from .lexicon import build_lexicon, load_lexicon, save_lexicon
from .restore import (
    ALIGNMENT_FALLBACKS,
    DEFAULT_TIMEOUT,
    DictionaryBackend,
    HybridBackend,
    HybridPolicy,
    IdentityBackend,
    RemoteBackend,
    restore_lines,
)
from .textcore import (
    ReadCounters,
    corpus_stats,
    iter_sentences,
    language_registry,
    load_language_table,
    load_table,
    tokenize,
)
from .typomodel import (
    DEFAULT_MIN_CHAR_COUNT,
    DEFAULT_SCALE,
    build_typo_model,
    default_model,
    load_model,
    save_model,
)

log = logging.getLogger("diacrit")


class _Parser(argparse.ArgumentParser):
    """argparse reports usage problems with exit code 2; this toolkit
    reserves 2 for data errors, so usage failures are rethrown."""

    def error(self, message):
        raise UsageError(message)


def _read_lines(path: str | Path) -> list[str]:
    try:
        with open(path, encoding="utf-8") as handle:
            return [line.rstrip("\n") for line in handle]
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8: {exc}") from exc


def _write_lines(lines, path: str | Path | None) -> None:
    if path is None:
        for line in lines:
            sys.stdout.write(line + "\n")
        return
    with open(path, "w", encoding="utf-8") as handle:
        for line in lines:
            handle.write(line + "\n")


def _resolve_table(args):
    if getattr(args, "table", None):
        return load_table(args.table)
    if getattr(args, "language", None):
        return load_language_table(args.language)
    raise UsageError("need --table <path> or --language <code>")


def _resolve_layout(name: str | None):
    if name is None:
        return None
    if name in LAYOUT_FAMILIES:
        return get_layout(name)
    if Path(name).suffix:
        return load_layout_file(Path(name))
    raise UsageError(
        f"unknown layout {name!r}: use one of {', '.join(LAYOUT_FAMILIES)} "
        "or the path to a layout file"
    )


def _resolve_model(args):
    model = load_model(args.model) if getattr(args, "model", None) else default_model()
    if getattr(args, "scale", None) is not None:
        model = model.with_scale(args.scale)
    clamped = model.clamped_entries()
    if clamped:
        log.info("scale %s clamps %d probabilities at 1", model.scale, clamped)
    return model


def _warn_anomalies(counters: ReadCounters, source) -> None:
    if counters.multispace_lines:
        log.warning("%s: %d line(s) with non-canonical spacing",
                    source, counters.multispace_lines)


def cmd_stats(args) -> int:
    table = _resolve_table(args)
    counters = ReadCounters()
    lines = _read_lines(args.corpus)
    stats = corpus_stats(iter_sentences(lines, counters), table, counters)
    _warn_anomalies(counters, args.corpus)
    payload = {
        "report": "corpus_stats",
        "version": 1,
        "language": table.language,
        "sentences": stats.sentences,
        "alpha_words": stats.alpha_words,
        "diacritic_words": stats.diacritic_words,
        "diacritic_word_pct": round(stats.diacritic_word_pct, 2),
        "alpha_letters": stats.alpha_letters,
        "diacritic_letters": stats.diacritic_letters,
        "diacritic_letter_pct": round(stats.diacritic_letter_pct, 2),
        "multispace_lines": stats.multispace_lines,
        "undefined": stats.undefined,
    }
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=1))
        return 0
    print(f"language            {table.language}")
    print(f"sentences           {stats.sentences}")
    print(f"alpha-words         {stats.alpha_words}")
    if stats.undefined:
        print("diacritic word %    undefined (no alpha-words)")
        print("diacritic letter %  undefined (no alpha-words)")
    else:
        print(f"diacritic word %    {stats.diacritic_word_pct:.2f}")
        print(f"diacritic letter %  {stats.diacritic_letter_pct:.2f}")
    return 0


def cmd_strip(args) -> int:
    table = _resolve_table(args)
    lines = _read_lines(args.corpus)
    _write_lines((table.strip(line) for line in lines), args.output)
    return 0


def cmd_prepare(args) -> int:
    table = _resolve_table(args)
    lines = _read_lines(args.corpus)
    stripped = [table.strip(line) for line in lines]
    if args.task == "diacritics_plus_typos":
        model = _resolve_model(args)
        prepared = [text for text, _ in corrupt_lines(stripped, model, args.seed)]
    else:
        prepared = stripped
    _write_lines(lines, args.gold_output)
    _write_lines(prepared, args.input_output)
    log.info("prepared %d sentences (task %s)", len(lines), args.task)
    return 0


def cmd_corrupt(args) -> int:
    model = _resolve_model(args)
    lines = _read_lines(args.corpus)
    corrupted: list[str] = []
    all_events = []
    total_chars = 0
    for line, (noisy, events) in zip(lines, corrupt_lines(lines, model, args.seed,
                                                          epoch=args.epoch)):
        total_chars += len(line)
        corrupted.append(noisy)
        all_events.extend(events)
    _write_lines(corrupted, args.output)
    report = corruption_report(all_events, total_chars)
    log.info("corrupted %.2f%% of %d chars (%d events)",
             report.corrupted_char_pct, total_chars, report.total_events)
    if args.report:
        json_path, txt_path = emit_report(report, args.report)
        log.info("corruption report: %s, %s", json_path, txt_path)
    return 0


def cmd_build_typo_model(args) -> int:
    corpus = load_edit_corpus(args.edit_corpus)
    layout = _resolve_layout(args.layout) or get_layout("qwerty")
    model = build_typo_model(corpus, layout=layout, scale=args.scale,
                             min_char_count=args.min_count)
    save_model(model, args.output)
    log.info("model: %d chars, %d transposition bigrams, layout %s, "
             "%d clamped at scale %s",
             len(model.chars), len(model.transposition), model.layout_family,
             model.clamped_entries(), model.scale)
    return 0


def cmd_build_lexicon(args) -> int:
    table = _resolve_table(args)
    counters = ReadCounters()
    lines = _read_lines(args.corpus)
    lexicon = build_lexicon(iter_sentences(lines, counters), table)
    _warn_anomalies(counters, args.corpus)
    save_lexicon(lexicon, args.output)
    log.info("lexicon: %d keys from %d sentences", lexicon.key_count(), len(lines))
    return 0


def _build_backend(kind: str, args, table=None):
    """Construct a backend from CLI-style arguments."""
    needs_lexicon = kind in ("dict", "hybrid")
    lexicon = None
    if needs_lexicon:
        if not getattr(args, "lexicon", None):
            raise UsageError(f"--backend {kind} requires --lexicon")
        lexicon = load_lexicon(args.lexicon, table or _resolve_table(args))
    if kind == "identity":
        return IdentityBackend()
    if kind == "dict":
        return DictionaryBackend(lexicon)
    if kind == "remote":
        if not getattr(args, "endpoint", None):
            raise UsageError("--backend remote requires --endpoint host:port")
        return RemoteBackend(args.endpoint, timeout=args.timeout)
    if kind == "hybrid":
        inner = (RemoteBackend(args.endpoint, timeout=args.timeout)
                 if getattr(args, "endpoint", None) else IdentityBackend())
        policy = HybridPolicy(alignment_fallback=args.fallback)
        return HybridBackend(lexicon, inner, policy)
    raise UsageError(f"unknown backend {kind!r}")


def cmd_restore(args) -> int:
    backend = _build_backend(args.backend, args)
    lines = _read_lines(args.corpus)
    try:
        restored = restore_lines(backend, lines)
    finally:
        close = getattr(backend, "close", None)
        if callable(close):
            close()
    _write_lines(restored, args.output)
    return 0


def _sentences(lines):
    return iter_sentences(lines)


def cmd_evaluate(args) -> int:
    gold = _read_lines(args.gold)
    pred = _read_lines(args.pred)
    report = alpha_word_accuracy(_sentences(gold), _sentences(pred))
    if args.report:
        emit_report(report, args.report)
    if args.json:
        print(json.dumps(report_as_dict(report), ensure_ascii=False,
                         sort_keys=True, indent=1))
    else:
        print(render_table(report), end="")
    return 0


def cmd_analyze(args) -> int:
    table = _resolve_table(args)
    lexicon = load_lexicon(args.lexicon, table)
    gold = _read_lines(args.gold)
    pred = _read_lines(args.pred)
    freq_index = lexicon.candidate_frequency()
    vocab = frozenset(freq_index)

    buckets = frequency_bucket_report(_sentences(gold), _sentences(pred), freq_index)
    confusion = unseen_confusion(_sentences(gold), _sentences(pred), vocab, table)
    outputs = {"buckets": buckets, "confusion": confusion}
    if args.pred_b:
        pred_b = _read_lines(args.pred_b)
        outputs["ratios"] = error_ratio_by_candidates(
            _sentences(gold), _sentences(pred), _sentences(pred_b), lexicon, table)

    if args.report_dir:
        report_dir = Path(args.report_dir)
        report_dir.mkdir(parents=True, exist_ok=True)
        for name, report in outputs.items():
            json_path, txt_path = emit_report(report, report_dir / name)
            log.info("wrote %s and %s", json_path, txt_path)
    for report in outputs.values():
        print(render_table(report))
    return 0


def _run_backend(spec, config: ExperimentConfig, lexicon, table,
                 input_lines, output_dir: Path):
    """Restore the input corpus with one configured backend; returns
    (predictions, error count). Per-sentence failures keep the input
    line and are logged to errors_<kind>.log."""
    if spec.kind == "identity":
        backend = IdentityBackend()
    elif spec.kind == "dict":
        backend = DictionaryBackend(lexicon)
    elif spec.kind == "remote":
        backend = RemoteBackend(spec.endpoint, timeout=spec.timeout)
    else:
        inner = (RemoteBackend(spec.endpoint, timeout=spec.timeout)
                 if spec.endpoint else IdentityBackend())
        backend = HybridBackend(lexicon, inner,
                                HybridPolicy(alignment_fallback=spec.fallback))

    failures: list[str] = []

    def on_error(index, exc, line):
        failures.append(f"line {index + 1}: {exc}")
        return line

    try:
        predictions = restore_lines(backend, input_lines, on_error=on_error)
    finally:
        close = getattr(backend, "close", None)
        if callable(close):
            close()
    if failures:
        error_log = output_dir / f"errors_{spec.label}.log"
        error_log.write_text("\n".join(failures) + "\n", encoding="utf-8")
        log.error("%s backend failed on %d sentence(s); see %s",
                  spec.label, len(failures), error_log)
    return predictions, len(failures)


def cmd_run(args) -> int:
    config = load_config(args.config)
    table = (load_table(config.table) if config.table
             else load_language_table(config.language))
    output_dir = config.output_dir
    output_dir.mkdir(parents=True, exist_ok=True)

    # prepare gold + input from the test corpus
    gold_lines = _read_lines(config.test)
    input_lines = [table.strip(line) for line in gold_lines]
    if config.task == "diacritics_plus_typos":
        if config.typo_model:
            model = load_model(config.typo_model)
        else:
            layout_name = config.layout
            if layout_name is None and config.language:
                info = language_registry().get(config.language)
                layout_name = info.keyboard if info else None
            layout = _resolve_layout(layout_name)
            if config.edit_corpus:
                corpus = load_edit_corpus(config.edit_corpus)
                model = build_typo_model(corpus, layout=layout, scale=config.scale)
            else:
                model = default_model(layout=layout, scale=config.scale)
            save_model(model, output_dir / "typo_model.json")
        model = model.with_scale(config.scale)
        input_lines = [text for text, _ in
                       corrupt_lines(input_lines, model, config.seed)]
    _write_lines(gold_lines, output_dir / "gold.txt")
    _write_lines(input_lines, output_dir / "input.txt")

    # lexicon: load when configured, build from train otherwise
    lexicon = None
    needs_lexicon = any(spec.kind in ("dict", "hybrid") for spec in config.backends)
    if config.lexicon:
        lexicon = load_lexicon(config.lexicon, table)
    elif needs_lexicon:
        if not config.train:
            raise ConfigError(
                "dict/hybrid backends need paths.lexicon or paths.train")
        counters = ReadCounters()
        lexicon = build_lexicon(
            iter_sentences(_read_lines(config.train), counters), table)
        _warn_anomalies(counters, config.train)
        save_lexicon(lexicon, output_dir / "lexicon.tsv")

    freq_index = lexicon.candidate_frequency() if lexicon else {}
    vocab = frozenset(freq_index)

    backend_failures = 0
    summaries = []
    predictions_by_backend: dict[str, list[str]] = {}
    for spec in config.backends:
        predictions, failed = _run_backend(
            spec, config, lexicon, table, input_lines, output_dir)
        backend_failures += failed
        predictions_by_backend[spec.label] = predictions
        _write_lines(predictions, output_dir / f"pred_{spec.label}.txt")

        report = alpha_word_accuracy(_sentences(gold_lines), _sentences(predictions))
        emit_report(report, output_dir / f"accuracy_{spec.label}")
        if lexicon:
            buckets = frequency_bucket_report(
                _sentences(gold_lines), _sentences(predictions), freq_index)
            emit_report(buckets, output_dir / f"buckets_{spec.label}")
            confusion = unseen_confusion(
                _sentences(gold_lines), _sentences(predictions), vocab, table)
            emit_report(confusion, output_dir / f"confusion_{spec.label}")
        summaries.append((spec.label, report))

    if lexicon and len(config.backends) >= 2:
        first, second = config.backends[0].label, config.backends[1].label
        ratios = error_ratio_by_candidates(
            _sentences(gold_lines),
            _sentences(predictions_by_backend[first]),
            _sentences(predictions_by_backend[second]),
            lexicon, table)
        emit_report(ratios, output_dir / f"ratios_{first}_vs_{second}")

    for label, report in summaries:
        accuracy = "undefined" if report.undefined else f"{report.accuracy:.2f}%"
        print(f"{label:10s} accuracy {accuracy} "
              f"({report.correct_words}/{report.gold_words})")
    if backend_failures:
        log.error("run finished with %d failed sentence(s)", backend_failures)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diacrit",
                     description="diacritics restoration and typo-simulation toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_table_args(p):
        p.add_argument("--table", help="diacritic table file")
        p.add_argument("--language", help="bundled language code (e.g. hr, vi)")

    p = sub.add_parser("stats", help="corpus statistics relative to a table")
    p.add_argument("corpus")
    add_table_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("strip", help="remove diacritics from a corpus")
    p.add_argument("corpus")
    add_table_args(p)
    p.add_argument("--output", "-o", help="output file (default stdout)")
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("prepare", help="emit (input, gold) pair for a task")
    p.add_argument("corpus")
    add_table_args(p)
    p.add_argument("--task", choices=["diacritics_only", "diacritics_plus_typos"],
                   default="diacritics_only")
    p.add_argument("--model", help="typo model file (default: bundled model)")
    p.add_argument("--seed", type=int, default=0, help="64-bit corruption seed")
    p.add_argument("--scale", type=float, default=None,
                   help="override the model's probability scale")
    p.add_argument("--input-output", required=True, help="path for the input side")
    p.add_argument("--gold-output", required=True, help="path for the gold side")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("corrupt", help="inject typos into a corpus")
    p.add_argument("corpus")
    p.add_argument("--model", help="typo model file (default: bundled model)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epoch", type=int, default=0,
                   help="epoch index for fresh re-corruption")
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--output", "-o")
    p.add_argument("--report", help="write corruption report files at this base path")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("build-typo-model", help="derive a typo model from edit pairs")
    p.add_argument("edit_corpus")
    p.add_argument("--layout", default="qwerty",
                   help="qwerty|qwertz|azerty or a layout file path")
    p.add_argument("--scale", type=float, default=DEFAULT_SCALE)
    p.add_argument("--min-count", type=int, default=DEFAULT_MIN_CHAR_COUNT,
                   help="minimum intended-side frequency for the char set")
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_build_typo_model)

    p = sub.add_parser("build-lexicon", help="build a unigram lexicon from training text")
    p.add_argument("corpus")
    add_table_args(p)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=cmd_build_lexicon)

    p = sub.add_parser("restore", help="restore diacritics with a backend")
    p.add_argument("corpus")
    add_table_args(p)
    p.add_argument("--backend", choices=["identity", "dict", "remote", "hybrid"],
                   required=True)
    p.add_argument("--lexicon", help="lexicon file (dict/hybrid)")
    p.add_argument("--endpoint", help="host:port of a restoration server")
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT)
    p.add_argument("--fallback", choices=list(ALIGNMENT_FALLBACKS),
                   default="keep_backend",
                   help="hybrid behavior when token counts diverge")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_restore)

    p = sub.add_parser("evaluate", help="alpha-word accuracy of pred vs gold")
    p.add_argument("gold")
    p.add_argument("pred")
    p.add_argument("--report", help="write report files at this base path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("analyze", help="error analyses against training statistics")
    p.add_argument("gold")
    p.add_argument("pred")
    add_table_args(p)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--pred-b", help="second system for error-ratio comparison")
    p.add_argument("--report-dir", help="directory for report files")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="full experiment from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_run)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(sys.stderr)
            return 1
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except DiacritError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
