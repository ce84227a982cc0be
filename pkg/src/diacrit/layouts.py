"""Keyboard layout permutations for cross-layout typo modeling.

A layout is a sparse permutation over the characters of the QWERTY letter
zone; characters not listed map to themselves. Applying a layout to text
relabels each character with the one produced by the same physical
keystroke on the target keyboard, which is how QWERTY-derived typo
statistics are transferred to QWERTZ and AZERTY languages.

Layout files hold one `from<TAB>to` pair per line with `#` comments. The
bundled layouts are:

* qwerty: identity.
* qwertz: z and y swap.
* azerty: a and q swap, z and w swap, and the m key's 3-cycle with the
  comma and semicolon keys (AZERTY m sits where QWERTY has the semicolon).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import DataError

__all__ = ["KeyboardLayout", "load_layout_file", "get_layout", "LAYOUT_FAMILIES"]

LAYOUT_FAMILIES = ("qwerty", "qwertz", "azerty")


@dataclass(frozen=True)
class KeyboardLayout:
    """Sparse character permutation identified by a family name."""

    family: str
    mapping: dict[str, str]
    _table: dict[int, str] = field(repr=False, default_factory=dict)

    @classmethod
    def from_mapping(cls, family: str, mapping: dict[str, str]) -> "KeyboardLayout":
        for src, dst in mapping.items():
            if len(src) != 1 or len(dst) != 1:
                raise DataError(
                    f"layout {family}: entries must be single characters, "
                    f"got {src!r} -> {dst!r}"
                )
            if src.isspace() or dst.isspace():
                raise DataError(f"layout {family}: whitespace cannot be remapped")
        if set(mapping) != set(mapping.values()):
            raise DataError(
                f"layout {family}: mapping is not a permutation "
                f"(keys and values must be the same character set)"
            )
        return cls(family=family, mapping=dict(mapping),
                   _table=str.maketrans(mapping))

    @property
    def is_identity(self) -> bool:
        return not self.mapping

    def apply(self, text: str) -> str:
        """Relabel every mapped character; all others pass through."""
        return text.translate(self._table)


def _parse_layout(text: str, family: str) -> KeyboardLayout:
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise DataError(
                f"layout {family}: line {lineno} must be 'from<TAB>to', got {raw!r}"
            )
        src, dst = fields
        if src in mapping:
            raise DataError(f"layout {family}: duplicate source {src!r}")
        mapping[src] = dst
    return KeyboardLayout.from_mapping(family, mapping)


def load_layout_file(path: str | Path, family: str | None = None) -> KeyboardLayout:
    """Load a layout permutation file; family defaults to the file stem."""
    path = Path(path)
    name = family or path.stem
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open layout file {path}: {exc}") from exc
    return _parse_layout(text, name)


def get_layout(family: str) -> KeyboardLayout:
    """Return a bundled layout by family name."""
    family = family.lower()
    if family not in LAYOUT_FAMILIES:
        raise DataError(
            f"unknown layout {family!r}; choose from {', '.join(LAYOUT_FAMILIES)}"
        )
    resource = resources.files("diacrit").joinpath("data", "layouts", f"{family}.tsv")
    return _parse_layout(resource.read_text(encoding="utf-8"), family)
