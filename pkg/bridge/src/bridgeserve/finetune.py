"""Fine-tuning utility for byte-level seq2seq restoration models.

Consumes parallel input/gold line files (as emitted by the primary
toolkit's ``prepare`` command) and runs a plain training loop:
Adafactor, constant learning rate, fixed step count. The resulting
checkpoint directory loads straight into the server's
``seq2seq_checkpoint`` mode. A manifest records every hyperparameter,
including the documented (but unvalidated) extended batch-growth
schedule for longer runs.

Defaults correspond to one basic training unit: 2048 steps of 256
sentences each with learning rate 0.001 and maximum sequence length
1024 bytes. ``base="tiny"`` trains a small randomly initialized model
instead of a published checkpoint; it exists for smoke tests and CI.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import asdict, dataclass
from pathlib import Path

log = logging.getLogger("bridgeserve")

EXTENDED_SCHEDULE_NOTE = (
    "longer runs continue the basic setup to 6000 steps, then grow the "
    "batch to 8192; documented for reference, not validated here"
)


@dataclass(frozen=True)
class Recipe:
    input_file: str
    gold_file: str
    output_dir: str
    base: str = "tiny"          # checkpoint path, or "tiny" for a small random model
    steps: int = 2048
    batch_size: int = 256
    learning_rate: float = 1e-3
    lr_schedule: str = "constant"
    optimizer: str = "adafactor"
    max_length: int = 1024
    beam_recommendation: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be positive, "
                             f"got {self.learning_rate}")
        if self.lr_schedule != "constant":
            raise ValueError("only the constant learning rate schedule "
                             "is implemented")
        if self.optimizer != "adafactor":
            raise ValueError("only the adafactor optimizer is implemented")
        if self.max_length < 1:
            raise ValueError(f"max_length must be >= 1, got {self.max_length}")


def load_recipe(path: str | Path) -> Recipe:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ValueError(f"cannot open recipe {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"recipe {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"recipe {path}: top-level object expected")
    base_dir = Path(path).resolve().parent

    def resolved(value: str) -> str:
        candidate = Path(value)
        return str(candidate if candidate.is_absolute() else base_dir / candidate)

    for key in ("input_file", "gold_file", "output_dir"):
        if key not in raw:
            raise ValueError(f"recipe {path}: missing {key}")
        raw[key] = resolved(raw[key])
    if raw.get("base", "tiny") != "tiny":
        raw["base"] = resolved(raw["base"])
    return Recipe(**raw)


def _read_lines(path: str | Path) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        return [line.rstrip("\n") for line in handle]


def _tiny_model(tokenizer):
    from transformers import T5Config, T5ForConditionalGeneration

    config = T5Config(
        vocab_size=tokenizer.vocab_size,
        d_model=64,
        d_kv=16,
        d_ff=128,
        num_layers=2,
        num_decoder_layers=2,
        num_heads=4,
        decoder_start_token_id=tokenizer.pad_token_id,
        pad_token_id=tokenizer.pad_token_id,
        eos_token_id=tokenizer.eos_token_id,
    )
    return T5ForConditionalGeneration(config)


def run_finetune(recipe: Recipe) -> Path:
    """Train and save checkpoint + manifest + loss curve; returns the
    checkpoint directory."""
    try:
        import torch
        from transformers import AutoModelForSeq2SeqLM, ByT5Tokenizer
        from transformers.optimization import Adafactor
    except ImportError as exc:
        raise RuntimeError(
            f"finetune needs torch and transformers installed: {exc}") from exc

    inputs = _read_lines(recipe.input_file)
    golds = _read_lines(recipe.gold_file)
    if len(inputs) != len(golds) or not inputs:
        raise ValueError(
            f"input/gold line counts differ or are empty: "
            f"{len(inputs)} vs {len(golds)}")

    torch.manual_seed(recipe.seed)
    tokenizer = ByT5Tokenizer()
    if recipe.base == "tiny":
        model = _tiny_model(tokenizer)
    else:
        model = AutoModelForSeq2SeqLM.from_pretrained(recipe.base)
    model.train()

    # constant explicit learning rate, no internal scaling
    optimizer = Adafactor(model.parameters(), lr=recipe.learning_rate,
                          scale_parameter=False, relative_step=False,
                          warmup_init=False)

    rng = random.Random(recipe.seed)
    order: list[int] = []
    losses: list[float] = []
    for step in range(recipe.steps):
        batch_indices = []
        while len(batch_indices) < recipe.batch_size:
            if not order:
                order = list(range(len(inputs)))
                rng.shuffle(order)
            batch_indices.append(order.pop())
        batch_inputs = [inputs[i] for i in batch_indices]
        batch_golds = [golds[i] for i in batch_indices]

        encoded = tokenizer(batch_inputs, return_tensors="pt", padding=True,
                            truncation=True, max_length=recipe.max_length)
        targets = tokenizer(batch_golds, return_tensors="pt", padding=True,
                            truncation=True, max_length=recipe.max_length)
        labels = targets["input_ids"].clone()
        labels[labels == tokenizer.pad_token_id] = -100

        output = model(input_ids=encoded["input_ids"],
                       attention_mask=encoded["attention_mask"],
                       labels=labels)
        output.loss.backward()
        optimizer.step()
        optimizer.zero_grad()
        losses.append(float(output.loss.detach()))
        if step % 50 == 0 or step == recipe.steps - 1:
            log.info("step %d/%d loss %.4f", step + 1, recipe.steps,
                     losses[-1])

    output_dir = Path(recipe.output_dir)
    checkpoint = output_dir / "checkpoint"
    checkpoint.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(checkpoint)

    manifest = {
        "recipe": asdict(recipe),
        "sentences_consumed": recipe.steps * recipe.batch_size,
        "extended_schedule": EXTENDED_SCHEDULE_NOTE,
        "final_loss": losses[-1],
    }
    (output_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n",
        encoding="utf-8")
    (output_dir / "losses.json").write_text(
        json.dumps(losses) + "\n", encoding="utf-8")
    log.info("checkpoint written to %s", checkpoint)
    return checkpoint
