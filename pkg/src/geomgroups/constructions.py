"""Construction words w_t, w_t*, the Polish defect algorithm, and sorting words."""

from __future__ import annotations

from typing import Iterable

from .errors import OverlappingSets
from .operators import Gen, partial
from .trees import NODE, Leaf, Node, defect_profile, labels, polish_encode, require_injective

EPS: tuple = ()


def a(i: int, sign: int = 1) -> Gen:
    return Gen("a", i, sign)


def c(i: int, sign: int = 1) -> Gen:
    return Gen("c", i, sign)


def s(i: int, sign: int = 1) -> Gen:
    return Gen("s", i, sign)


# -- uncoloured and coloured construction words -----------------------------

def _pair(t, colored: bool, memo: dict):
    hit = memo.get(t)
    if hit is not None:
        return hit
    if type(t) is Leaf:
        res = (EPS, EPS)
    else:
        _, w1s = _pair(t.left, colored, memo)
        w2, w2s = _pair(t.right, colored, memo)
        if colored:
            i1, i2 = labels(t.left), labels(t.right)
            pre_w, pre_ws = c_word(i1, i2), s_word(i1, i2)
        else:
            pre_w = pre_ws = EPS
        res = (
            pre_w + w1s + partial(w2),
            pre_ws + w1s + partial(w2s) + (a(1),),
        )
    memo[t] = res
    return res


def wt(t, colored: bool = False) -> tuple:
    """w_t: builds t from the right vine (coloured: from ⟨I⟩)."""
    if colored:
        require_injective(t)
    return _pair(t, colored, {})[0]


def wt_star(t, colored: bool = False) -> tuple:
    """w_t*: builds ⟨t, t'⟩ from ⟨n, t'⟩ (coloured: from ⟨I, t'⟩)."""
    if colored:
        require_injective(t)
    return _pair(t, colored, {})[1]


def wt_via_polish(t) -> tuple[tuple, tuple]:
    """(w_t, w_t*) read off the Polish expression and its defects."""
    symbols = polish_encode(t)
    defects = defect_profile(symbols)
    star = []
    plain = []
    last_leaf = max(i for i, sym in enumerate(symbols) if sym != NODE)
    for i, sym in enumerate(symbols):
        if sym == NODE:
            letter = a(defects[i + 1] + 1)
            star.append(letter)
            if i < last_leaf:
                plain.append(letter)
    return tuple(plain), tuple(star)


def right_branch_length(t) -> int:
    h = 0
    while type(t) is Node:
        h += 1
        t = t.right
    return h


def wt_star_suffix_identity(t) -> bool:
    """w_t* = w_t · A_{1^(h-1)} ... A_1 A with h the rightmost-branch length."""
    h = right_branch_length(t)
    suffix = tuple(a(i) for i in range(h, 0, -1))
    return wt_star(t) == wt(t) + suffix


# -- sorting words ------------------------------------------------------------

def _check_disjoint(I, J):
    I, J = set(I), set(J)
    if I & J:
        raise OverlappingSets(f"sets share {sorted(I & J)}")
    return I, J


def _sort_word(I: frozenset, J: frozenset, variant: str, memo: dict) -> tuple:
    key = (I, J)
    if key in memo:
        return memo[key]
    if not I and not J:
        res = EPS
    else:
        ell = min(I | J)
        if ell in I:
            res = partial(_sort_word(I - {ell}, J, variant, memo))
        else:
            p = len(I)
            rest = J - {ell}
            if not rest:
                if p == 0:
                    res = EPS
                elif variant == "c":
                    res = tuple(s(i) for i in range(1, p)) + (c(p),)
                else:
                    res = tuple(s(i) for i in range(1, p + 1))
            else:
                res = partial(_sort_word(I, rest, variant, memo)) + tuple(
                    s(i) for i in range(1, p + 1)
                )
    memo[key] = res
    return res


def c_word(I: Iterable[int], J: Iterable[int]) -> tuple:
    """c_{I,J}: sorts ⟨I ∪ J⟩ into ⟨I, J⟩."""
    I, J = _check_disjoint(I, J)
    return _sort_word(frozenset(I), frozenset(J), "c", {})


def s_word(I: Iterable[int], J: Iterable[int]) -> tuple:
    """s_{I,J}: sorts ⟨I ∪ J, t⟩ into ⟨I, J, t⟩ without touching t."""
    I, J = _check_disjoint(I, J)
    return _sort_word(frozenset(I), frozenset(J), "s", {})


def block_word(p: int, q: int, kind: str = "c") -> tuple:
    """c_{p,q} or s_{p,q}: the block {q+1..q+p} moved in front of {1..q}."""
    I = range(q + 1, q + p + 1)
    J = range(1, q + 1)
    return c_word(I, J) if kind == "c" else s_word(I, J)
