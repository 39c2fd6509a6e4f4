import json

import pytest
import sympy

from linksgould.braid import BraidWord, link_lookup, load_links, parse
from linksgould.invariant import (
    ANTISYMMETRIC,
    NEITHER,
    SYMMETRIC,
    InvariantResult,
    classify,
    compute,
    compute_mirror,
    render_machine,
    render_paper,
    render_paper_flagged,
    result_from_json,
    sort_terms,
)
from linksgould.verify import golden_entries
from oracles import T, burau_alexander, equal_up_to_unit

CORPUS = sorted(load_links())


def poly_in_t(terms):
    # t = P = p^2
    return sum(c * T ** sympy.Rational(ep, 2) for e, ep, c in terms)


# examples


def test_lg1_trefoil():
    assert compute(1, parse("1 1 1")).terms == ((0, -2, 1), (0, 0, -1), (0, 2, 1))


def test_lg2_figure_eight():
    r = compute(2, parse("1 -2 1 -2"))
    want = [(-2, 0, 2), (0, 0, 7), (2, 0, 2), (-1, -2, -3), (1, -2, -3), (-1, 2, -3), (1, 2, -3),
            (0, -4, 1), (0, 4, 1)]
    assert list(r.terms) == sort_terms(want)


def test_split_link_is_zero():
    r = compute(3, BraidWord(2, ()))
    assert r.is_zero() and r.terms == ()
    assert r.components == 2


def test_single_curl_m4():
    assert compute(4, BraidWord(2, (1,))).terms == ((0, 0, 1),)


def test_lg3_hopf_a():
    r = compute(3, BraidWord(2, (1, 1)))
    # -(p^-1 - p)(q + q^3 + q^5) + (p^-3 - p^3) q^3
    want = [(1, -1, -1), (3, -1, -1), (5, -1, -1), (1, 1, 1), (3, 1, 1), (5, 1, 1),
            (3, -3, 1), (3, 3, -1)]
    assert list(r.terms) == sort_terms(want)
    assert r.symmetry == ANTISYMMETRIC


def test_terms_sorted_without_zeros():
    r = compute(3, link_lookup("4_1").word)
    keys = [(ep, e) for e, ep, _ in r.terms]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(c for _, _, c in r.terms)


def test_default_open_strand_recorded():
    r = compute(2, BraidWord(3, (1, -2, 1, -2)))
    assert r.open_strand == 3
    assert compute(2, BraidWord(3, (1, -2, 1, -2)), open_strand=1).open_strand == 1


# m = 1 against the Burau oracle


@pytest.mark.parametrize("name", CORPUS)
def test_lg1_is_alexander(name):
    e = link_lookup(name)
    r = compute(1, e.word)
    assert all(eq == 0 for eq, _, _ in r.terms)
    assert equal_up_to_unit(poly_in_t(r.terms), burau_alexander(e.word.strands, e.word.letters))


@pytest.mark.parametrize("name", [n for n in CORPUS if link_lookup(n).components == 1])
def test_lg1_knot_normalization(name):
    r = compute(1, link_lookup(name).word)
    assert sum(c for _, _, c in r.terms) == 1


# mirror


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("name", ["3_1", "4_1", "2^2_1a", "5^2_1"])
def test_mirror_relation(m, name):
    w = link_lookup(name).word
    assert list(compute_mirror(m, w).terms) == compute(m, w).mirrored_terms()


# classification


@pytest.mark.parametrize("terms, want", [
    ([], SYMMETRIC),
    ([(0, 0, 5)], SYMMETRIC),
    ([(1, -2, 1), (1, 2, 1)], SYMMETRIC),
    ([(1, -1, 1), (1, 1, -1)], ANTISYMMETRIC),
    ([(1, -1, 1)], NEITHER),
    ([(0, 0, 1), (1, -1, 1), (1, 1, -1)], NEITHER),
])
def test_classify(terms, want):
    assert classify(terms) == want


# rendering


def test_render_trefoil():
    assert render_paper(compute(1, parse("1 1 1"))) == "- (1), + (P^-1+P^1)(1)"


def test_render_figure_eight():
    assert render_paper(compute(1, parse("1 -2 1 -2"))) == "+ (3), - (P^-1+P^1)(1)"


def test_render_zero():
    assert render_paper(compute(2, BraidWord(2, ()))) == "0"


def test_render_antisymmetric_odd():
    r = compute(3, BraidWord(2, (1, 1)))
    assert render_paper(r) == "- (p^-1-p^1)(q, q^3, q^5), + (p^-3-p^3)(q^3)"


def test_render_lg2_figure_eight():
    r = compute(2, parse("1 -2 1 -2"))
    assert render_paper(r) == "+ (2q^-2, 7, 2q^2), - (P^-1+P^1)(3q^-1, 3q), + (P^-2+P^2)(1)"


def test_render_mixed_signs_kept_inside():
    r = InvariantResult(2, BraidWord(1), 1, ((1, 0, 2), (2, 0, -1)), SYMMETRIC)
    assert render_paper(r) == "+ (2q, -q^2)"


def test_render_flat_fallback():
    r = InvariantResult(1, BraidWord(1), 3, ((0, 0, 1), (2, 1, -1)), NEITHER)
    text, flat = render_paper_flagged(r)
    assert flat
    assert text == "1, -q^2*p"


def test_render_is_ascii():
    for name in CORPUS:
        assert render_paper(compute(2, link_lookup(name).word)).isascii()


# JSON record


def test_machine_schema():
    r = compute(1, parse("1 1 1"), link="3_1")
    d = json.loads(render_machine(r))
    assert d == {
        "m": 1,
        "input": {"letters": [1, 1, 1], "strands": 2},
        "link": "3_1",
        "components": 1,
        "terms": [{"q": 0, "p": -2, "c": 1}, {"q": 0, "p": 0, "c": -1}, {"q": 0, "p": 2, "c": 1}],
        "symmetry": "symmetric",
        "paper": "- (1), + (P^-1+P^1)(1)",
    }


def test_machine_zero_has_empty_terms():
    d = json.loads(render_machine(compute(1, BraidWord(2, ()))))
    assert d["terms"] == [] and d["paper"] == "0" and d["link"] is None


@pytest.mark.parametrize("m, name", [(3, "3_1"), (3, "2^2_1a"), (2, "6^3_3")])
def test_machine_round_trip(m, name):
    r = compute(m, link_lookup(name).word, link=name)
    back = result_from_json(render_machine(r))
    assert back.terms == r.terms and back.word == r.word and back.symmetry == r.symmetry
    assert render_machine(back) == render_machine(r)


# open strand


def _golden_knots():
    return sorted({(g["m"], g["link"]) for g in golden_entries()
                   if g["m"] <= 3 and link_lookup(g["link"]).components == 1})


@pytest.mark.parametrize("m, name", _golden_knots())
def test_knot_value_independent_of_open_strand(m, name):
    w = link_lookup(name).word
    values = {compute(m, w, open_strand=k).terms for k in range(1, w.strands + 1)}
    assert len(values) == 1
