import pytest

from diacrit.errors import DataError
from diacrit.layouts import KeyboardLayout, get_layout


def test_qwerty_is_identity():
    layout = get_layout("qwerty")
    assert layout.is_identity
    assert layout.apply("the quick brown fox") == "the quick brown fox"


def test_qwertz_swaps_z_and_y():
    layout = get_layout("qwertz")
    assert layout.apply("lazy") == "layz"
    assert layout.apply("zy yz") == "yz zy"
    # involution: applying twice restores the original
    assert layout.apply(layout.apply("crazy yellow zebra")) == "crazy yellow zebra"


def test_azerty_swaps():
    layout = get_layout("azerty")
    assert layout.apply("qa") == "aq"
    assert layout.apply("z") == "w"
    assert layout.apply("w") == "z"
    # m sits on the qwerty semicolon key; the cycle is m -> , -> ; -> m
    assert layout.apply("m") == ","
    assert layout.apply(",") == ";"
    assert layout.apply(";") == "m"


def test_layout_permutation_is_bijective():
    for family in ("qwerty", "qwertz", "azerty"):
        layout = get_layout(family)
        assert set(layout.mapping.keys()) == set(layout.mapping.values()), family


def test_unmapped_characters_pass_through():
    layout = get_layout("qwertz")
    assert layout.apply("čž123 !") == "čž123 !"


def test_from_mapping_rejects_non_permutation():
    with pytest.raises(DataError):
        KeyboardLayout.from_mapping("bad", {"a": "b"})


def test_from_mapping_rejects_multichar():
    with pytest.raises(DataError):
        KeyboardLayout.from_mapping("bad", {"ab": "ba", "ba": "ab"})


def test_from_mapping_rejects_whitespace():
    with pytest.raises(DataError):
        KeyboardLayout.from_mapping("bad", {"a": " ", " ": "a"})


def test_unknown_family_rejected():
    with pytest.raises(DataError):
        get_layout("dvorak")
