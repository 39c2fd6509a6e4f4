import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linksgould.braid import (
    BraidError,
    BraidWord,
    add_curl,
    component_of_strands,
    components,
    insert_r2,
    link_lookup,
    load_links,
    mirror,
    parse,
    permutation,
    render,
)

CORPUS = ["3_1", "4_1", "5_1", "5_2", "6_2", "6_3", "2^2_1a", "2^2_1b", "4^2_1a",
          "4^2_1b", "5^2_1", "6^2_1", "6^2_2", "6^3_1", "6^3_2", "6^3_3"]


def test_parse_infers_strands():
    w = parse("1 -2 1 -2")
    assert w == BraidWord(3, (1, -2, 1, -2))


def test_parse_commas():
    assert parse("1,1, 1") == BraidWord(2, (1, 1, 1))


def test_parse_explicit_strands():
    assert parse("1", 4).strands == 4


def test_parse_empty_defaults_to_one_strand():
    assert parse("") == BraidWord(1, ())


@pytest.mark.parametrize("text", ["1 x", "0", "1 0 1", "1.5"])
def test_parse_rejects(text):
    with pytest.raises(BraidError):
        parse(text)


def test_letter_out_of_range():
    with pytest.raises(BraidError):
        parse("5", 2)
    with pytest.raises(BraidError):
        BraidWord(2, (2,))


def test_bad_letters():
    with pytest.raises(BraidError):
        BraidWord(3, (True,))
    with pytest.raises(BraidError):
        BraidWord(0, ())


def test_render_round_trip():
    w = BraidWord(3, (1, 1, -2, 1))
    assert render(w) == "1 1 -2 1"
    assert parse(render(w), 3) == w
    assert str(w) == "1 1 -2 1"


@st.composite
def words(draw):
    w = draw(st.integers(2, 6))
    gen = st.integers(1, w - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return w, draw(st.lists(gen))


@given(words())
def test_parse_render_property(data):
    w, letters = data
    word = BraidWord(w, tuple(letters))
    assert parse(render(word), w) == word


@pytest.mark.parametrize("word, comps", [
    (BraidWord(2, (1, 1, 1)), 1),
    (BraidWord(2, (1, 1)), 2),
    (BraidWord(3, (1, -2, 1, -2)), 1),
    (BraidWord(3, (1, 2, 1, 2, 1, 2)), 3),
    (BraidWord(2, ()), 2),
    (BraidWord(4, (1, 3)), 2),
])
def test_components(word, comps):
    assert components(word) == comps


def test_permutation_and_labels():
    w = BraidWord(3, (1, 2))
    assert permutation(w) == [1, 2, 0]
    assert component_of_strands(w) == [0, 0, 0]
    assert component_of_strands(BraidWord(3, (1, 1))) == [0, 1, 2]


def test_mirror():
    assert mirror(BraidWord(3, (1, -2))) == BraidWord(3, (-1, 2))


def test_insert_r2():
    w = BraidWord(3, (1, 1))
    assert insert_r2(w, 1, -2) == BraidWord(3, (1, -2, 2, 1))
    assert components(insert_r2(w, 2, 1)) == components(w)
    with pytest.raises(BraidError):
        insert_r2(w, 3, 1)


def test_add_curl():
    assert add_curl(BraidWord(2, (1, 1, 1))) == BraidWord(3, (1, 1, 1, 2))
    assert add_curl(BraidWord(2, (1,)), positive=False) == BraidWord(3, (1, -2))
    assert components(add_curl(BraidWord(2, (1, 1, 1)))) == 1


def test_shipped_table_has_corpus():
    table = load_links()
    assert sorted(table) == sorted(CORPUS)
    for name, e in table.items():
        assert components(e.word) == e.components


@pytest.mark.parametrize("name, comps", [("3_1", 1), ("4_1", 1), ("2^2_1a", 2), ("6^3_3", 3)])
def test_lookup(name, comps):
    assert link_lookup(name).components == comps


def test_two_component_hopf_entries_are_squares():
    # the table records why sigma_1^(+-2) is used
    assert link_lookup("2^2_1a").word == BraidWord(2, (1, 1))
    assert link_lookup("2^2_1b").word == BraidWord(2, (-1, -1))
    assert link_lookup("2^2_1a").note


def test_unknown_link():
    with pytest.raises(BraidError, match="unknown link"):
        link_lookup("9_42")


def test_custom_table(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps([{"name": "tref", "strands": 2, "letters": [1, 1, 1], "components": 1}]))
    assert link_lookup("tref", p).word == BraidWord(2, (1, 1, 1))


@pytest.mark.parametrize("content, msg", [
    ("[{", "not valid JSON"),
    ('{"a": 1}', "JSON array"),
    ('[{"name": "x"}]', "bad link record"),
    ('[{"name": "x", "strands": 2, "letters": [1], "components": 2}]', "components"),
    ('[{"name": "x", "strands": 2, "letters": [1], "components": 1},'
     ' {"name": "x", "strands": 2, "letters": [1], "components": 1}]', "twice"),
])
def test_bad_tables(tmp_path, content, msg):
    p = tmp_path / "t.json"
    p.write_text(content)
    with pytest.raises(BraidError, match=msg):
        load_links(p)


def test_missing_table(tmp_path):
    with pytest.raises(BraidError, match="cannot read"):
        load_links(tmp_path / "nope.json")
