"""Regenerate the bundled diacritic table files and language registry.

Each table maps lowercase diacritized letters to their base letters; the
loader derives uppercase pairs. Inventories match the sizes recorded in
languages.tsv: canonical alphabet letters first, then the common loanword
letters that corpus text of that language actually carries.
"""

from __future__ import annotations

from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "diacrit" / "data"


def vietnamese() -> list[tuple[str, str]]:
    pairs: list[tuple[str, str]] = []
    families = {
        "a": ["á", "à", "ả", "ã", "ạ", "ă", "ắ", "ằ", "ẳ", "ẵ", "ặ",
              "â", "ấ", "ầ", "ẩ", "ẫ", "ậ"],
        "e": ["é", "è", "ẻ", "ẽ", "ẹ", "ê", "ế", "ề", "ể", "ễ", "ệ"],
        "i": ["í", "ì", "ỉ", "ĩ", "ị"],
        "o": ["ó", "ò", "ỏ", "õ", "ọ", "ô", "ố", "ồ", "ổ", "ỗ", "ộ",
              "ơ", "ớ", "ờ", "ở", "ỡ", "ợ"],
        "u": ["ú", "ù", "ủ", "ũ", "ụ", "ư", "ứ", "ừ", "ử", "ữ", "ự"],
        "y": ["ý", "ỳ", "ỷ", "ỹ", "ỵ"],
        "d": ["đ"],
    }
    for base, letters in families.items():
        for letter in letters:
            pairs.append((letter, base))
    return pairs


TABLES: dict[str, list[tuple[str, str]]] = {
    "hr": [("č", "c"), ("ć", "c"), ("đ", "d"), ("š", "s"), ("ž", "z")],
    "cs": [("á", "a"), ("č", "c"), ("ď", "d"), ("é", "e"), ("ě", "e"),
           ("í", "i"), ("ň", "n"), ("ó", "o"), ("ř", "r"), ("š", "s"),
           ("ť", "t"), ("ú", "u"), ("ů", "u"), ("ý", "y"), ("ž", "z"),
           ("ä", "a"), ("ö", "o"), ("ü", "u"), ("ô", "o")],
    "fr": [("à", "a"), ("â", "a"), ("ç", "c"), ("é", "e"), ("è", "e"),
           ("ê", "e"), ("ë", "e"), ("î", "i"), ("ï", "i"), ("ô", "o"),
           ("ù", "u"), ("û", "u"), ("ü", "u"), ("ÿ", "y"), ("ñ", "n")],
    "hu": [("á", "a"), ("é", "e"), ("í", "i"), ("ó", "o"), ("ö", "o"),
           ("ő", "o"), ("ú", "u"), ("ü", "u"), ("ű", "u")],
    "ga": [("á", "a"), ("é", "e"), ("í", "i"), ("ó", "o"), ("ú", "u")],
    "lv": [("ā", "a"), ("č", "c"), ("ē", "e"), ("ģ", "g"), ("ī", "i"),
           ("ķ", "k"), ("ļ", "l"), ("ņ", "n"), ("š", "s"), ("ū", "u"),
           ("ž", "z"), ("ō", "o"), ("ŗ", "r"), ("ö", "o"), ("ü", "u")],
    "lt": [("ą", "a"), ("č", "c"), ("ę", "e"), ("ė", "e"), ("į", "i"),
           ("š", "s"), ("ų", "u"), ("ū", "u"), ("ž", "z")],
    "pl": [("ą", "a"), ("ć", "c"), ("ę", "e"), ("ł", "l"), ("ń", "n"),
           ("ó", "o"), ("ś", "s"), ("ź", "z"), ("ż", "z")],
    "ro": [("ă", "a"), ("â", "a"), ("î", "i"), ("ș", "s"), ("ț", "t"),
           ("ş", "s")],
    "sk": [("á", "a"), ("ä", "a"), ("č", "c"), ("ď", "d"), ("é", "e"),
           ("í", "i"), ("ĺ", "l"), ("ľ", "l"), ("ň", "n"), ("ó", "o"),
           ("ô", "o"), ("ŕ", "r"), ("š", "s"), ("ť", "t"), ("ú", "u"),
           ("ý", "y"), ("ž", "z"), ("ě", "e"), ("ř", "r"), ("ů", "u"),
           ("ö", "o"), ("ü", "u"), ("ő", "o"), ("ű", "u"), ("ł", "l")],
    "es": [("á", "a"), ("é", "e"), ("í", "i"), ("ó", "o"), ("ú", "u"),
           ("ü", "u"), ("ñ", "n")],
    "tr": [("ç", "c"), ("ğ", "g"), ("ı", "i"), ("ö", "o"), ("ş", "s"),
           ("ü", "u"), ("â", "a"), ("î", "i"), ("û", "u"), ("é", "e"),
           ("à", "a")],
    "vi": vietnamese(),
}

# Explicit uppercase lines that derivation cannot produce.
EXTRA_UPPER: dict[str, list[tuple[str, str]]] = {
    "tr": [("İ", "I")],
}

REGISTRY = [
    ("hr", "Croatian", "qwertz"),
    ("cs", "Czech", "qwerty"),
    ("fr", "French", "azerty"),
    ("hu", "Hungarian", "qwertz"),
    ("ga", "Irish", "qwerty"),
    ("lv", "Latvian", "qwerty"),
    ("lt", "Lithuanian", "qwerty"),
    ("pl", "Polish", "qwerty"),
    ("ro", "Romanian", "qwerty"),
    ("sk", "Slovak", "qwertz"),
    ("es", "Spanish", "qwerty"),
    ("tr", "Turkish", "qwerty"),
    ("vi", "Vietnamese", "qwerty"),
]


def main() -> None:
    tables_dir = DATA / "tables"
    tables_dir.mkdir(parents=True, exist_ok=True)
    names = dict((code, name) for code, name, _ in REGISTRY)
    for code, pairs in TABLES.items():
        lines = [f"# {names[code]} diacritic letters: diacritic<TAB>base"]
        for diacritic, base in pairs:
            lines.append(f"{diacritic}\t{base}")
        for diacritic, base in EXTRA_UPPER.get(code, []):
            lines.append(f"{diacritic}\t{base}")
        (tables_dir / f"{code}.tsv").write_text("\n".join(lines) + "\n",
                                                encoding="utf-8")
        print(f"{code}: {len(pairs)} lowercase entries")

    registry_lines = ["# code\tname\tkeyboard\tdiacritic_letters"]
    for code, name, keyboard in REGISTRY:
        registry_lines.append(f"{code}\t{name}\t{keyboard}\t{len(TABLES[code])}")
    (DATA / "languages.tsv").write_text("\n".join(registry_lines) + "\n",
                                        encoding="utf-8")
    print("registry written")


if __name__ == "__main__":
    main()
