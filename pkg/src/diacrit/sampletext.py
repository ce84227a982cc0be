"""Deterministic English-like sample text.

Used to calibrate the bundled edit corpus and to exercise corruption at
corpus scale without shipping megabytes of text. The vocabulary mixes
common words with words that carry the rare letters (j, q, x, z) so every
lowercase letter accumulates usable frequency; a small share of tokens
gets trailing punctuation so the comma and semicolon keys carry
statistics too (the AZERTY permutation moves the m key through them).
"""

from __future__ import annotations

from random import Random

__all__ = ["COMMON_WORDS", "RARE_LETTER_WORDS", "sample_phrase", "sample_lines", "sample_text"]

COMMON_WORDS = (
    "the of and to in is was he for it with as his on be at by had not are "
    "but from or have an they which one you were her all she there would "
    "their we him been has when who will more no if out so said what up its "
    "about into than them can only other new some could time these two may "
    "then do first any my now such like our over man me even most made after "
    "also did many before must through back years where much your way well "
    "down should because each just those people how too little state good "
    "very make world still own see men work long get here between both life "
    "being under never day same another know while last might us great old "
    "year off come since against go came right used take three states "
    "himself few house use during without again place american around "
    "however home small found thought went say part once general high upon "
    "school every don does got united left number course war until always "
    "away something fact though water less public put think almost hand "
    "enough far took head yet government system better set told nothing "
    "night end why called didn eyes find going look asked later knew point "
    "next program city business give group toward young days let side "
    "children along might close leave open game short keep word turn real "
    "move money play family book change national kind seem four ago feel "
    "whole question large human both power today room early light ever "
    "become interest study order door white case become history possible "
    "side member result problem morning music person street voice"
).split()

RARE_LETTER_WORDS = (
    "quick quiet quite question quality quarter quote queen square request "
    "require jazz jazzy zone zero size prize lazy crazy zebra puzzle dozen "
    "dizzy zigzag quartz fizz buzz blaze frozen organize realize seize "
    "extra exact example expect express taxi next text six box fix mix "
    "exist oxygen luxury index complex expert jump just joke join enjoy "
    "major juice judge jungle banjo injury jacket junior reject project "
    "very even vivid seven gave river visit value voice wave give move "
    "keep kick back quickly walk work week make like park lake book look"
).split()


def sample_phrase(rng: Random, punctuation_rate: float = 0.08) -> str:
    """One space-separated lowercase phrase of 3 to 7 words."""
    count = rng.randint(3, 7)
    words = []
    for _ in range(count):
        pool = RARE_LETTER_WORDS if rng.random() < 0.18 else COMMON_WORDS
        word = rng.choice(pool)
        if rng.random() < punctuation_rate:
            word += rng.choice((",", ";", ",", "."))
        words.append(word)
    return " ".join(words)


def sample_lines(line_count: int, seed: int, punctuation_rate: float = 0.08) -> list[str]:
    rng = Random(seed)
    return [sample_phrase(rng, punctuation_rate) for _ in range(line_count)]


def sample_text(min_chars: int, seed: int, punctuation_rate: float = 0.08) -> list[str]:
    """Lines totalling at least ``min_chars`` characters."""
    rng = Random(seed)
    lines: list[str] = []
    total = 0
    while total < min_chars:
        line = sample_phrase(rng, punctuation_rate)
        lines.append(line)
        total += len(line)
    return lines
