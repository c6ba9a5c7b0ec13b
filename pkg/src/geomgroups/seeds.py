"""Seeds: pairs of injective trees describing A/C/S operators, and the word problem.

A seed (s, s') stands for every pair (s^σ, s'^σ).  Composition unifies the
target of the first seed with the source of the second.  The canonical form
numbers the source leaves 1..n from left to right; the reduced form also
collapses every cherry •x•y that appears in both trees, which gives the
unique representative of an element of F, V or 𝔖_•.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import TwistedNotSupported
from .operators import Gen, apply_word, expand_word
from .trees import Leaf, Node, _unify, apply_substitution, labels, print_tree, relabel


@dataclass(frozen=True)
class Seed:
    source: object
    target: object

    def canonical(self) -> "Seed":
        order = {lab: i for i, lab in enumerate(labels(self.source), start=1)}
        return Seed(relabel(self.source, order), relabel(self.target, order))

    def reduced(self) -> "Seed":
        return _reduce(self.source, self.target)

    def inverse(self) -> "Seed":
        return Seed(self.target, self.source).canonical()

    def size(self) -> int:
        return self.source.size

    def __str__(self):
        return f"({print_tree(self.source, False)}, {print_tree(self.target, False)})"


def _cherries(t, out):
    if type(t) is Node:
        if type(t.left) is Leaf and type(t.right) is Leaf:
            out[(t.left.label, t.right.label)] = True
        else:
            _cherries(t.left, out)
            _cherries(t.right, out)
    return out


def _collapse(t, pairs: dict):
    if type(t) is Node:
        if type(t.left) is Leaf and type(t.right) is Leaf:
            key = (t.left.label, t.right.label)
            if key in pairs:
                return Leaf(pairs[key])
            return t
        return Node(_collapse(t.left, pairs), _collapse(t.right, pairs))
    return t


def _reduce(source, target) -> Seed:
    while True:
        common = _cherries(source, {}).keys() & _cherries(target, {}).keys()
        if not common:
            break
        pairs = {key: ("r", key) for key in common}
        source = _collapse(source, pairs)
        target = _collapse(target, pairs)
    return Seed(source, target).canonical()


IDENTITY = Seed(Leaf(1), Leaf(1))


def _embed(pattern, addr: str, tag: str):
    """Wrap ``pattern`` so it sits at ``addr`` inside fresh leaves."""
    t = pattern
    for depth in range(len(addr) - 1, -1, -1):
        fresh = Leaf((tag, depth))
        t = Node(t, fresh) if addr[depth] == "0" else Node(fresh, t)
    return t


_PATTERNS = {
    "A": (Node(Leaf(1), Node(Leaf(2), Leaf(3))), Node(Node(Leaf(1), Leaf(2)), Leaf(3))),
    "C": (Node(Leaf(1), Leaf(2)), Node(Leaf(2), Leaf(1))),
    "S": (Node(Leaf(1), Node(Leaf(2), Leaf(3))), Node(Leaf(2), Node(Leaf(1), Leaf(3)))),
}


@lru_cache(maxsize=None)
def generator_seed(g: Gen) -> Seed:
    """Seed of a single A/C/S letter (indexed aliases are expanded)."""
    if g.kind == "b":
        raise TwistedNotSupported("σ letters have no linear seed")
    g = g.expand()
    src, tgt = _PATTERNS[g.kind]
    if g.sign < 0:
        src, tgt = tgt, src
    seed = Seed(_embed(src, g.arg, "f"), _embed(tgt, g.arg, "f"))
    return seed.canonical()


def compose(s1: Seed, s2: Seed, reduce: bool = False) -> Seed:
    """Seed of "s1 then s2"."""
    sigma1, sigma2 = _unify(s1.target, s2.source)
    src = apply_substitution(s1.source, sigma1)
    tgt = apply_substitution(s2.target, sigma2)
    if reduce:
        return _reduce(src, tgt)
    return Seed(src, tgt).canonical()


_word_cache: dict = {}


def word_seed(w: Sequence[Gen], reduce: bool = True) -> Seed:
    """Seed of a word over A/C/S letters; reduced unless asked otherwise."""
    w = tuple(w)
    key = (w, reduce)
    hit = _word_cache.get(key)
    if hit is not None:
        return hit
    if any(g.kind == "b" for g in w):
        raise TwistedNotSupported("σ letters have no linear seed")
    seed = IDENTITY
    for g in w:
        seed = compose(seed, generator_seed(g), reduce=reduce)
    if len(_word_cache) < 200_000:
        _word_cache[key] = seed
    return seed


def equal_in_group(w1: Sequence[Gen], w2: Sequence[Gen]) -> bool:
    return word_seed(w1) == word_seed(w2)


def is_identity(w: Sequence[Gen]) -> bool:
    return word_seed(w) == IDENTITY


def seed_instance(seed: Seed, t):
    """Apply the operator of ``seed`` to ``t`` if ``t`` matches its source."""
    sigma = {}

    def match(pattern, tree):
        if type(pattern) is Leaf:
            sigma[pattern.label] = tree
            return True
        return type(tree) is Node and match(pattern.left, tree.left) and match(pattern.right, tree.right)

    if not match(seed.source, t):
        return None
    return apply_substitution(seed.target, sigma)


def is_instance_pair(seed: Seed, t, t2) -> bool:
    """True when (t, t2) = (source^σ, target^σ) for some σ."""
    return seed_instance(seed, t) == t2


def action_agrees(seed: Seed, w: Sequence[Gen], t) -> bool:
    """Cross-check a seed against the direct action on one tree."""
    return seed_instance(seed, t) == apply_word(t, expand_word(w))
