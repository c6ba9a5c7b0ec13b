import random
from collections import Counter

import pytest

from geomgroups.errors import DomainNeverIntersects, SigmaHasNoLinearExpansion
from geomgroups.ld import ConjFree, TrivialLD
from geomgroups.operators import Gen, format_word, parse_word
from geomgroups.presentations import (
    Relation,
    alias_expand,
    derived,
    identity_check,
    relations,
    sweep,
    torsion,
    translate_A_to_a,
    translate_rtl,
    verify,
)
from geomgroups.seeds import equal_in_group, word_seed
from geomgroups.trees import addresses_up_to

W = parse_word


def strs(rels):
    return sorted(str(r) for r in rels)


def test_pentagon_at_root_only():
    rels = [r for r in relations("R_A", 0) if r.tag == "◇"]
    assert strs(rels) == ["A[] A[] = A[1] A[] A[0]"]


def test_R_a_instances():
    rels = relations("R_a", max_index=4)
    assert strs(rels) == ["a1 a2 = a3 a1", "a1 a3 = a4 a1", "a2 a3 = a4 a2"]


def test_braid_instances():
    rels = [r for r in relations("R_aσ", max_index=3) if len(r.lhs) == 3 and r.lhs[0].kind == r.lhs[2].kind == "b"
            and r.lhs[0] == r.lhs[2]]
    assert strs(rels) == ["b1 b2 b1 = b2 b1 b2", "b2 b3 b2 = b3 b2 b3"]


def test_counts_are_deterministic():
    counts = {f: len(relations(f, 2, 4)) for f in ("R_A", "R_AC", "R_ACS", "R_AS", "R_a", "R_ac", "R_acs", "R_as")}
    assert counts == {"R_A": 497, "R_AC": 1883, "R_ACS": 1890, "R_AS": 1995,
                      "R_a": 3, "R_ac": 24, "R_acs": 30, "R_as": 21}
    assert len(torsion()) == 22
    assert strs(relations("R_AC", 2)) == strs(relations("R_AC", 2))


def test_unknown_family():
    with pytest.raises(ValueError):
        relations("R_Q")


def test_legal_letters_per_family():
    legal = {"R_A": "A", "R_AC": "AC", "R_ACS": "ACS", "R_AS": "AS",
             "R_a": "a", "R_ac": "ac", "R_acs": "acs", "R_as": "as", "R_aσ": "ab"}
    for fam, letters in legal.items():
        for r in relations(fam, 1, 4):
            assert {g.kind for g in r.lhs + r.rhs} <= set(letters), (fam, str(r))


def test_pentagon_and_hexagon_by_seed():
    pent = Relation(W("A[] A[]"), W("A[1] A[] A[0]"), "x", "◇")
    hexa = Relation(W("A[] C[] A[]"), W("C[1] A[] C[0]"), "x", "◦")
    assert verify(pent).status == "seed-equal"
    assert verify(hexa).status == "seed-equal"


@pytest.mark.parametrize("family", ["R_A", "R_AC", "R_ACS", "R_AS", "R_a", "R_ac", "R_acs", "R_as"])
def test_soundness_sweep(family):
    rep = sweep(relations(family, 2, 4))
    assert rep.ok, [v.describe() for v in rep.failures[:3]]
    assert rep.counts() == {"seed-equal": len(rep.verdicts)}


def test_torsion_gives_identity_seeds():
    for r in torsion():
        assert r.rhs == ()
        assert identity_check(r.lhs), str(r)


def test_failed_verdict_carries_witness():
    v = verify(Relation(W("A[] A[]"), W("A[]"), "x", "bad"))
    assert v.status == "FAILED"
    assert v.witness is not None and len(v.images) == 2
    assert "witness" in v.describe()


def test_derived_sweep_failure_profile():
    rep = sweep(derived())
    bad = Counter(v.relation.tag for v in rep.failures)
    # the reversed pentagon/hexagon readings and SA0=AC0 fail at every translate
    assert bad == {"◇.reversed": 3, "◦.reversed": 3, "SA0=AC0": 3, "sort.a": 4, "sort.b": 14}
    for v in rep.failures:
        assert v.witness is not None
    sort_a = {v.relation.param_text() for v in rep.failures if v.relation.tag == "sort.a"}
    assert all("K={}" in p and p.endswith("x=c") for p in sort_a)
    ok_tags = {v.relation.tag for v in rep.verdicts if v.ok}
    assert {"SA=AC0", "SS1S=S1SS1", "S1SA1=AS", "SS1A=A1S", "SA1A=A1AS0", "C1S=AC", "s=cac"} <= ok_tags


def test_sigma_squared_fails_under_conjugation():
    rel = Relation(W("b1 b1"), (), "twisted", "σ²")
    v = verify(rel, "sampled", ConjFree(), 200)
    assert v.status == "FAILED"
    assert v.witness is not None
    lhs, rhs = v.images
    assert lhs != rhs
    assert verify(rel, "sampled", TrivialLD(), 50).ok


def test_sampled_needs_ld():
    with pytest.raises(ValueError):
        verify(Relation(W("A[]"), W("A[]"), "x", "t"), "sampled")


def test_domain_never_intersects():
    with pytest.raises(DomainNeverIntersects):
        verify(Relation(W("S[]"), W("S[]"), "x", "t"), "sampled", ConjFree(), samples=0)


@pytest.mark.parametrize("family", ["R_AS", "R_ACS", "R_aσ"])
def test_twisted_sampled_soundness(family):
    rep = sweep(relations(family, 2, 4), "sampled", ld=ConjFree(), samples=40, rng=random.Random(3))
    assert rep.ok, [v.describe() for v in rep.failures[:2]]


def test_translate_example():
    assert format_word(translate_rtl("01100")) == "a1 a2 a3 a3 a3 a3 a4' a3' a3' a3' a2' a1'"
    assert equal_in_group(translate_A_to_a("01100"), W("A[01100]"))


def test_translate_all_vine_addresses():
    for i in range(1, 6):
        assert translate_A_to_a("1" * (i - 1)) == (Gen("a", i),)


def test_translate_short_addresses():
    for alpha in addresses_up_to(4):
        assert equal_in_group(translate_A_to_a(alpha), (Gen("A", alpha),)), alpha


def test_right_to_left_formula_differs_read_forwards():
    # read left to right, the right-to-left formula is a different element
    for alpha in ("0", "01", "01100", "100"):
        rtl = translate_rtl(alpha)
        assert word_seed(rtl) != word_seed((Gen("A", alpha),))


def test_alias_expand():
    assert format_word(alias_expand(W("s1"), expand_s=True)) == "C[] A[]' C[1]'"
    assert format_word(alias_expand(W("a3"))) == "A[11]"
    assert alias_expand(()) == ()
    with pytest.raises(SigmaHasNoLinearExpansion):
        alias_expand(W("b1"))


def test_alias_expand_preserves_seeds():
    for text in ("s1 a2 c1'", "S[0] A[1]'", "s2' c3 a1"):
        w = W(text)
        assert equal_in_group(alias_expand(w, expand_s=True), w)
