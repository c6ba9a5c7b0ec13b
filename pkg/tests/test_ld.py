import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomgroups.errors import CarrierMismatch
from geomgroups.freegroup import FreeWord, x
from geomgroups.ld import (
    ConjFree,
    ShiftedSum,
    TrivialLD,
    check_involutory,
    check_ld,
    check_left_cancellative,
    check_tree_laws,
    get_system,
)
from geomgroups.operators import apply_word, parse_word
from geomgroups.presentations import law_relation_links, torsion_twisted
from geomgroups.trees import Leaf, Node, labels, parse_tree, shape

conj = ConjFree()


def fw(text):
    return FreeWord.parse(text)


def test_trivial_bracket_keeps_second_tree():
    t1, t2 = parse_tree("(1 2)"), parse_tree("(3 (4 5))")
    assert TrivialLD().tree_bracket(t1, t2) == t2


def test_conj_bracket_on_a_leaf():
    t1 = Leaf(x("a"))
    t2 = Node(Leaf(x("b")), Leaf(x("c")))
    out = conj.tree_bracket(t1, t2)
    assert labels(out) == [x("a") * x("b") * x("a", -1), x("a") * x("c") * x("a", -1)]


def test_conj_bracket_enumerates_left_to_right():
    t1 = Node(Leaf(x("a")), Leaf(x("b")))
    out = conj.tree_bracket(t1, Leaf(x("c")))
    assert labels(out) == [x("a") * x("b") * x("c") * x("b", -1) * x("a", -1)]


def test_bracket_keeps_shape():
    t1 = parse_tree("(x:0 x:1)")
    t2 = parse_tree("((x:00 x:01) x:1)")
    assert shape(conj.tree_bracket(t1, t2)) == shape(t2)


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        conj.tree_bracket(Leaf(3), Leaf(x("a")))


def test_unbracket_inverts():
    t1 = parse_tree("(x:0 x:10)")
    t2 = parse_tree("(x:1 (x:0 x:11))")
    assert conj.tree_unbracket(t1, conj.tree_bracket(t1, t2)) == t2


def test_law_verdicts():
    assert check_ld(TrivialLD()).holds
    assert check_involutory(TrivialLD()).holds
    assert check_ld(conj).holds
    assert check_left_cancellative(conj).holds
    bad = check_involutory(conj)
    assert not bad.holds and bad.witness is not None


def test_conj_involutory_witness_shape():
    a, b = x("0"), x("1")
    twice = conj.bracket(a, conj.bracket(a, b))
    assert twice == a * a * b * a.inverse() * a.inverse()
    assert twice != b
    v = check_involutory(conj, pairs=[(a, b)])
    assert not v.holds and v.witness == (a, b)


def test_negative_control_is_not_ld():
    v = check_ld(ShiftedSum())
    assert not v.holds
    assert check_left_cancellative(ShiftedSum()).holds


def test_get_system():
    assert get_system("conj").name == "conj"
    assert get_system("bv").name == "bv"
    with pytest.raises(ValueError):
        get_system("rack")


def test_tree_laws():
    for ld in (TrivialLD(), conj):
        laws = check_tree_laws(ld, 100)
        assert all(v.holds for v in laws.values()), ld
    laws = check_tree_laws(ShiftedSum(), 100)
    assert laws["product"].holds and laws["nesting"].holds
    assert not laws["ld"].holds


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=5),
       st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=5),
       st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=5))
def test_conj_is_self_distributive(u, v, w):
    a, b, c = FreeWord(u), FreeWord(v), FreeWord(w)
    assert conj.bracket(a, conj.bracket(b, c)) == conj.bracket(conj.bracket(a, b), conj.bracket(a, c))


def test_laws_control_twisted_relations():
    for ld in (TrivialLD(), conj, ShiftedSum()):
        links = law_relation_links(ld, 200, random.Random(5))
        assert all(link.consistent for link in links), [(l.law, l.law_holds, l.verdict.status) for l in links]
    broken = {l.law: l for l in law_relation_links(ShiftedSum(), 200, random.Random(5))}
    assert not broken["ld"].law_holds and broken["ld"].verdict.status == "FAILED"
    assert broken["ld"].verdict.witness is not None
    assert broken["product"].verdict.ok and broken["nesting"].verdict.ok


def test_twisted_torsion_tracks_involution():
    assert torsion_twisted(TrivialLD()).ok
    v = torsion_twisted(conj)
    assert v.status == "FAILED" and v.witness is not None
    assert torsion_twisted(ShiftedSum()).status == "FAILED"


def test_trivial_twist_matches_plain_action():
    words = ["A[] S[1]", "C[] S[]'", "S[0] C[1] A[]'", "S[] S[1] S[]"]
    for text in words:
        w = parse_word(text)
        t = parse_tree("((1 (2 3)) ((4 5) (6 (7 8))))")
        assert apply_word(t, w, TrivialLD()) == apply_word(t, w)
