"""Command line entry points: ``serve`` runs the line server,
``finetune`` trains a checkpoint for it."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import BridgeConfig, ConfigError, load_config, parse_listen
from .engines import EngineError
from .finetune import load_recipe, run_finetune
from .server import run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bridgeserve",
        description="tab-framed line protocol server for text restoration "
                    "engines")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the server")
    serve.add_argument("--config", help="JSON config file; flags override it")
    serve.add_argument("--listen", help="host:port (port 0 picks a free one)")
    serve.add_argument("--mode",
                       choices=("echo", "lexicon_file", "seq2seq_checkpoint"))
    serve.add_argument("--lexicon", help="TSV lexicon for lexicon_file mode")
    serve.add_argument("--checkpoint",
                       help="model directory for seq2seq_checkpoint mode")
    serve.add_argument("--beam", type=int, help="beam size for generation")
    serve.add_argument("--max-input-bytes", type=int,
                       help="reject longer requests with an error response")
    serve.add_argument("--batch-size", type=int,
                       help="max requests decoded per engine call")

    finetune = sub.add_parser("finetune", help="train a checkpoint")
    finetune.add_argument("recipe", help="JSON recipe file")
    return parser


def _serve_config(args: argparse.Namespace) -> BridgeConfig:
    fields = {}
    if args.config:
        fields = load_config(args.config).__dict__.copy()
    if args.listen:
        fields["host"], fields["port"] = parse_listen(args.listen)
    for flag, key in (("mode", "mode"), ("lexicon", "lexicon_path"),
                      ("checkpoint", "checkpoint_path"), ("beam", "beam"),
                      ("max_input_bytes", "max_input_bytes"),
                      ("batch_size", "batch_size")):
        value = getattr(args, flag)
        if value is not None:
            fields[key] = value
    return BridgeConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(asctime)s %(levelname)s %(message)s")
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            run(_serve_config(args))
        elif args.command == "finetune":
            run_finetune(load_recipe(args.recipe))
    except (ConfigError, ValueError) as exc:
        print(f"bridgeserve: {exc}", file=sys.stderr)
        return 1
    except (EngineError, RuntimeError, OSError) as exc:
        print(f"bridgeserve: {exc}", file=sys.stderr)
        return 3
    except KeyboardInterrupt:
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
