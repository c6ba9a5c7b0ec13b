"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction as Fr

import pytest

from geomgroups.bv import BvLD, BvWord, bv_bracket, bv_circle, bv_equal, f_eval, psi, words_up_to
from geomgroups.constructions import c_word, s_word, wt, wt_star, wt_star_suffix_identity, wt_via_polish
from geomgroups.errors import UndefinedAction
from geomgroups.freegroup import x
from geomgroups.ld import ConjFree, ShiftedSum, TrivialLD, check_involutory
from geomgroups.operators import A, Gen, apply_generator, apply_word, expand_word, format_word, orbit
from geomgroups.presentations import (
    law_relation_links,
    relations,
    sweep,
    torsion,
    torsion_twisted,
    translate_A_to_a,
    translate_rtl,
)
from geomgroups.realization import homomorphism_check, pl_of_seed, sample_pairs
from geomgroups.seeds import IDENTITY, compose, equal_in_group, generator_seed, word_seed
from geomgroups.trees import (
    Leaf,
    Node,
    addresses_up_to,
    all_shapes,
    coloured_vine,
    labels,
    number_leaves,
    parse_tree,
    relabel,
    right_vine,
)

import oracles

FORMULA_A01100 = "a1 a2 a3 a3 a3 a3 a4' a3' a3' a3' a2' a1'"


def report(number: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"


def coloured_trees(n: int):
    for sh in all_shapes(n):
        base = number_leaves(sh)
        for perm in itertools.permutations(range(1, n + 1)):
            yield relabel(base, dict(zip(range(1, n + 1), perm)))


def act(t, w):
    return apply_word(t, expand_word(w))


# -- criteria -------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    sizes = [len(orbit(right_vine(n), ["A"])) for n in range(1, 8)]
    oracle = [len(oracles.enumerate_trees(n)) for n in range(1, 8)]
    elapsed = time.perf_counter() - start
    ok = sizes == [1, 1, 2, 5, 14, 42, 132] == oracle and elapsed < 10
    return ok, f"A-orbit sizes {sizes}, all-trees oracle {oracle}, {elapsed:.1f}s"


def criterion_2():
    start = time.perf_counter()
    v_sizes, s_sizes, fixed = [], [], True
    for n in range(1, 6):
        t = number_leaves(right_vine(n))
        v_sizes.append(len(orbit(t, ["A", "C"])))
        orb = orbit(t, ["A", "S"])
        s_sizes.append(len(orb))
        fixed &= all(labels(u)[-1] == n for u in orb.states)
    elapsed = time.perf_counter() - start
    v_exp = [oracles.v_orbit_expected(n) for n in range(1, 6)]
    s_exp = [oracles.s_orbit_expected(n) for n in range(1, 6)]
    brute = [oracles.orbit_size(oracles.right_vine(list(range(1, n + 1))), with_commute=True) for n in range(1, 5)]
    ok = v_sizes == v_exp and s_sizes == s_exp and brute == v_exp[:4] and fixed and elapsed < 60
    return ok, (f"{{A,C}} {v_sizes} vs {v_exp}, {{A,S}} {s_sizes} vs {s_exp}, "
                f"rightmost label fixed: {fixed}, {elapsed:.1f}s")


def criterion_3():
    start = time.perf_counter()
    counts, failures = {}, 0
    for fam in ("R_A", "R_AC", "R_ACS", "R_AS", "R_a", "R_ac", "R_acs", "R_as"):
        rep = sweep(relations(fam, 2, 4))
        counts[fam] = len(rep.verdicts)
        failures += len(rep.failures)
    tors = torsion(2, 4)
    bad_torsion = [str(r) for r in tors if word_seed(r.lhs) != IDENTITY]
    elapsed = time.perf_counter() - start
    ok = failures == 0 and not bad_torsion and elapsed < 120
    return ok, f"{sum(counts.values())} relations, {failures} failures, torsion {len(tors)} ({len(bad_torsion)} bad), {elapsed:.1f}s"


def criterion_4():
    probe = Node(Leaf(100), Leaf(101))
    n_plain = bad = 0
    # size 8 counts internal nodes here: the 1430 trees have 9 leaves
    for n in range(1, 10):
        for t in all_shapes(n):
            n_plain += 1
            bad += act(right_vine(n), wt(t)) != t
    at_eight = len(all_shapes(9))
    n_col = 0
    for n in range(1, 7):
        for t in coloured_trees(n):
            n_col += 1
            I = labels(t)
            bad += act(coloured_vine(I), wt(t, True)) != t
            bad += act(coloured_vine(I, tail=probe), wt_star(t, True)) != Node(t, probe)
    ok = bad == 0 and at_eight == 1430
    return ok, f"{n_plain} uncoloured trees ({at_eight} with 8 inner nodes), {n_col} coloured trees, {bad} failures"


def criterion_5():
    checked = bad = 0
    for n in range(1, 11):
        for t in all_shapes(n):
            checked += 1
            bad += wt_via_polish(t) != (wt(t), wt_star(t))
            bad += not wt_star_suffix_identity(t)
    t = parse_tree("(* ((* *) *))")
    star, plain = expand_word(wt_star(t)), expand_word(wt(t))
    example = (star == (A("1"), A("1"), A("")) and plain == (A("1"),))
    ok = bad == 0 and example
    return ok, f"{checked} trees, {bad} mismatches; worked example w_t*={format_word(star)}, w_t={format_word(plain)}"


def criterion_6():
    parts = {}
    parts["c-word"] = format_word(c_word({2, 5, 6}, {1, 3, 4})) == "s4 c5 s3 s4 s1 s2 s3"
    parts["s-word"] = format_word(s_word({2, 5, 6}, {1, 3, 4})) == "s4 s5 s3 s4 s1 s2 s3"
    target = word_seed((A("01100"),))
    rtl, ltr = translate_rtl("01100"), translate_A_to_a("01100")
    parts["formula word byte-exact"] = format_word(rtl) == FORMULA_A01100
    parts["translate seed-equal"] = word_seed(ltr) == target
    parts["one word both byte-exact and seed-equal"] = any(
        format_word(w) == FORMULA_A01100 and word_seed(w) == target for w in (rtl, ltr)
    )
    parts["all |α| ≤ 4"] = all(equal_in_group(translate_A_to_a(a), (A(a),)) for a in addresses_up_to(4))
    ok = all(parts.values())
    detail = ", ".join(f"{k}: {'ok' if v else 'no'}" for k, v in parts.items())
    return ok, detail


def criterion_7():
    cache: dict = {}

    def seeds(t):
        hit = cache.get(t)
        if hit is None:
            hit = (word_seed(expand_word(wt(t, True))), word_seed(expand_word(wt_star(t, True))))
            cache[t] = hit
        return hit

    addrs = addresses_up_to(2)
    checked = bad = 0
    for n in range(1, 7):
        for t in coloured_trees(n):
            s, star = seeds(t)
            for X in "ACS":
                for alpha in addrs:
                    g = Gen(X, alpha)
                    try:
                        t2 = apply_generator(t, g)
                    except UndefinedAction:
                        continue
                    checked += 1
                    s2, star2 = seeds(t2)
                    bad += s2 != compose(s, generator_seed(g), reduce=True)
                    bad += star2 != compose(star, generator_seed(Gen(X, "0" + alpha)), reduce=True)
    return bad == 0, f"{checked} moves on {len(cache)} coloured trees, {bad} failures"


def criterion_8():
    conj = ConjFree()
    rng = random.Random(11)
    start = time.perf_counter()
    failures, total, agreed = 0, 0, []
    for fam in ("R_AS", "R_ACS"):
        rep = sweep(relations(fam, 1, 4), "sampled", ld=conj, samples=1000, rng=rng)
        failures += len(rep.failures)
        total += len(rep.verdicts)
        agreed += [v.samples for v in rep.verdicts]
    links = {l.law: l for l in law_relation_links(ShiftedSum(), 300, random.Random(3))}
    ld_link = links["ld"]
    control = (not ld_link.law_holds and ld_link.verdict.status == "FAILED"
               and ld_link.verdict.witness is not None and all(l.consistent for l in links.values()))
    trivial_torsion = torsion_twisted(TrivialLD()).ok
    conj_torsion = torsion_twisted(conj)
    a, b = x("0"), x("1")
    inv = check_involutory(conj, pairs=[(a, b)])
    witness = conj.bracket(a, conj.bracket(a, b)) == a * a * b * a.inverse() * a.inverse()
    ok = (failures == 0 and min(agreed) >= 1000 and control and trivial_torsion
          and conj_torsion.status == "FAILED" and conj_torsion.witness is not None
          and not inv.holds and witness)
    elapsed = time.perf_counter() - start
    return ok, (f"{total} twisted relations x 1000 samples, {failures} failures; "
                f"non-LD control breaks SS1S=S1SS1 only: {control}; "
                f"(C^T)^2 trivial ok: {trivial_torsion}, conj FAILED with witness: "
                f"{conj_torsion.status == 'FAILED'}, x[x[y]]=x^2yx^-2: {witness}; {elapsed:.0f}s")


def criterion_9():
    start = time.perf_counter()
    sigma = BvWord.parse("b1")
    artin = psi(sigma, "") == x("") * x("1") * x("", -1) and psi(sigma, "1") == x("")
    braid = all(bv_equal(r.lhs, r.rhs) for r in relations("R_aσ", max_index=4))
    torsion_free = not bv_equal(BvWord.parse("b1 b1"), BvWord())
    pool = words_up_to(2)
    bad = 0
    for u, v, w in itertools.product(pool, repeat=3):
        bad += not bv_equal(bv_bracket(u, bv_bracket(v, w)), bv_bracket(bv_bracket(u, v), bv_bracket(u, w)))
        bad += not bv_equal(bv_bracket(u, bv_bracket(v, w)), bv_bracket(bv_circle(u, v), w))
        bad += not bv_equal(bv_bracket(u, bv_circle(v, w)), bv_circle(bv_bracket(u, v), bv_bracket(u, w)))
    triples = len(pool) ** 3
    L = BvLD()
    letters = [BvWord([(k, i, 1)]) for k, i in (("a", 1), ("a", 2), ("b", 1), ("b", 2))]
    moves = equivariance_bad = 0
    for n in range(1, 5):
        for sh in all_shapes(n):
            for combo in itertools.product(letters, repeat=n):
                it = iter(combo)
                t = _colour(sh, it)
                ft = f_eval(t)
                for i in range(1, 4):
                    for kind in "ab":
                        try:
                            t2 = apply_generator(t, Gen(kind, i), L)
                        except UndefinedAction:
                            continue
                        moves += 1
                        equivariance_bad += not bv_equal(f_eval(t2), ft * BvWord([(kind, i, 1)]))
    elapsed = time.perf_counter() - start
    ok = artin and braid and torsion_free and bad == 0 and equivariance_bad == 0 and elapsed < 300
    return ok, (f"psi(σ1) Artin shape: {artin}, braid family: {braid}, σ1² ≠ 1: {torsion_free}, "
                f"{triples} triples with {bad} law failures, {moves} tree moves with {equivariance_bad} f-failures, "
                f"{elapsed:.0f}s")


def _colour(t, it):
    if type(t) is Node:
        left = _colour(t.left, it)
        return Node(left, _colour(t.right, it))
    return Leaf(next(it))


def criterion_10():
    f = pl_of_seed(word_seed((A(),)))
    exact = f.breakpoints == ((0, 0), (Fr(1, 2), Fr(1, 4)), (Fr(3, 4), Fr(1, 2)), (1, 1))
    rng = random.Random(2024)
    pl = homomorphism_check(sample_pairs(500, "A", rng), "pl")
    vm = homomorphism_check(sample_pairs(500, "ACS", rng), "v")
    ok = exact and pl.ok and vm.ok and pl.checked == vm.checked == 500
    return ok, (f"seed(A) breakpoints exact: {exact}; PL {pl.checked} pairs ok={pl.ok}; "
                f"interval {vm.checked} pairs ok={vm.ok}; non power-of-2 slopes: {pl.bad_slopes + vm.bad_slopes}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + report(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        print(report(k, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
