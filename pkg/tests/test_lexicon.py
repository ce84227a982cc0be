import random

import pytest
from hypothesis import given, settings, strategies as st

from diacrit.errors import LexiconError
from diacrit.lexicon import build_lexicon, load_lexicon, save_lexicon
from diacrit.textcore import DiacriticTable, iter_sentences


def make_lexicon(lines, table):
    return build_lexicon(iter_sentences(lines), table)


# -- building -----------------------------------------------------------------

def test_counts_under_stripped_key(toy_table):
    lexicon = make_lexicon(["ça ca ça"], toy_table)
    assert lexicon.candidates("ca") == (("ça", 2), ("ca", 1))


def test_empty_corpus(toy_table):
    lexicon = make_lexicon([""], toy_table)
    assert lexicon.key_count() == 0


def test_non_alpha_tokens_counted(toy_table):
    lexicon = make_lexicon(["123 a1 !?"], toy_table)
    assert lexicon.candidate_count("123") == 1
    assert lexicon.restore_word("123") == "123"


def test_count_sums_match_brute_force(toy_table):
    rng = random.Random(314)
    vocabulary = ["ça", "ca", "çà", "va", "šum", "sum", "žaba", "zaba", "éé"]
    lines = [
        " ".join(rng.choice(vocabulary) for _ in range(rng.randrange(1, 8)))
        for _ in range(300)
    ]
    lexicon = make_lexicon(lines, toy_table)

    # oracle: plain hash count of every token, then group by stripped form
    word_counts = {}
    for line in lines:
        for token in line.split(" "):
            if token:
                word_counts[token] = word_counts.get(token, 0) + 1
    by_key = {}
    for word, n in word_counts.items():
        by_key.setdefault(toy_table.strip(word), {})[word] = n

    assert lexicon.key_count() == len(by_key)
    for key, forms in by_key.items():
        assert sum(n for _, n in lexicon.candidates(key)) == sum(forms.values())
        assert dict(lexicon.candidates(key)) == forms


# -- lookup -------------------------------------------------------------------

def test_restore_word_picks_most_frequent(toy_table):
    lexicon = make_lexicon(["ça ca ça"], toy_table)
    assert lexicon.restore_word("ca") == "ça"


def test_restore_word_unseen_unchanged(toy_table):
    lexicon = make_lexicon(["ça"], toy_table)
    assert lexicon.restore_word("zzz") == "zzz"


def test_tie_breaks_lexicographically(toy_table):
    # equal counts: the smaller candidate by code point order wins
    lines = ["ša sa ša sa"]
    lexicon = make_lexicon(lines, toy_table)
    assert lexicon.candidates("sa") == (("sa", 2), ("ša", 2))
    assert lexicon.restore_word("sa") == "sa"


def test_candidate_count(toy_table):
    lexicon = make_lexicon(["ça ca ça va"], toy_table)
    assert lexicon.candidate_count("ca") == 2
    assert lexicon.candidate_count("va") == 1
    assert lexicon.candidate_count("zzz") == 0


def test_restore_sentence_preserves_structure(toy_table):
    lexicon = make_lexicon(["ça va"], toy_table)
    assert lexicon.restore_sentence("ca va") == "ça va"
    # non-canonical spacing survives untouched
    assert lexicon.restore_sentence(" ca  va ") == " ça  va "
    assert lexicon.restore_sentence("") == ""


def test_candidate_frequency_sums_counts(toy_table):
    lexicon = make_lexicon(["ça ca ça va va"], toy_table)
    freq = lexicon.candidate_frequency()
    assert freq == {"ça": 2, "ca": 1, "va": 2}


# -- invariants ---------------------------------------------------------------

@settings(max_examples=150)
@given(st.lists(st.text(alphabet="csšçaá", min_size=1, max_size=6), max_size=20))
def test_strip_stability(words):
    table = DiacriticTable.from_pairs("toy", [("š", "s"), ("ç", "c"), ("á", "a")])
    lexicon = build_lexicon(iter_sentences([" ".join(words)]), table)
    for word in words:
        key = table.strip(word)
        assert table.strip(lexicon.restore_word(key)) == key


def test_restoring_training_text_not_worse_than_identity(toy_table):
    rng = random.Random(555)
    vocabulary = ["ça", "ca", "šum", "sum", "va", "éé", "ee"]
    lines = [
        " ".join(rng.choice(vocabulary) for _ in range(6)) for _ in range(200)
    ]
    lexicon = make_lexicon(lines, toy_table)
    restored_hits = 0
    identity_hits = 0
    for line in lines:
        for token in line.split(" "):
            key = toy_table.strip(token)
            restored_hits += lexicon.restore_word(key) == token
            identity_hits += key == token
    assert restored_hits >= identity_hits


# -- serialization ------------------------------------------------------------

def test_round_trip(tmp_path, toy_table):
    lines = ["ça ca ça va 123", "ša sa ša sa žaba"]
    lexicon = make_lexicon(lines, toy_table)
    path = tmp_path / "lexicon.tsv"
    save_lexicon(lexicon, path)
    loaded = load_lexicon(path, toy_table)
    assert loaded.entries == lexicon.entries
    assert loaded.language == lexicon.language
    # byte-identical re-save
    second = tmp_path / "again.tsv"
    save_lexicon(loaded, second)
    assert path.read_bytes() == second.read_bytes()


def test_deterministic_file_output(tmp_path, toy_table):
    lines = ["ça ca va", "ça sum šum"]
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    save_lexicon(make_lexicon(lines, toy_table), a)
    save_lexicon(make_lexicon(list(lines), toy_table), b)
    assert a.read_bytes() == b.read_bytes()


def test_empty_file_loads_empty(tmp_path, toy_table):
    path = tmp_path / "empty.tsv"
    path.write_text("", encoding="utf-8")
    lexicon = load_lexicon(path, toy_table)
    assert lexicon.key_count() == 0


def test_load_rejects_candidate_with_wrong_skeleton(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tčb\t3\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)


def test_load_rejects_malformed_line(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tça\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)


def test_load_rejects_bad_count(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tça\t0\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)


def test_load_rejects_split_key_group(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tça\t3\nva\tva\t1\nca\tca\t1\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)


def test_load_rejects_out_of_order_candidates(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tca\t1\nca\tça\t3\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)


def test_load_rejects_duplicate_candidate(tmp_path, toy_table):
    path = tmp_path / "bad.tsv"
    path.write_text("ca\tça\t3\nca\tça\t1\n", encoding="utf-8")
    with pytest.raises(LexiconError):
        load_lexicon(path, toy_table)
