"""Left self-distributive label algebras and the bracket they induce on trees."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .errors import CarrierMismatch, NonCancellativeBracket
from .freegroup import FreeWord
from .trees import Leaf, Node, labels, map_labels


class LDSystem:
    """A binary operation ``x[y]`` on labels, with optional left division.

    Subclasses set ``name`` and implement ``bracket``; ``unbracket(x, z)``
    returns the unique ``y`` with ``x[y] = z`` or raises ``ValueError``.
    """

    name = "abstract"
    trivial = False
    cancellative = True

    def accepts(self, label) -> bool:
        return True

    def bracket(self, x, y):
        raise NotImplementedError

    def unbracket(self, x, z):
        raise NonCancellativeBracket(f"{self.name} bracket has no left division")

    def equal(self, x, y) -> bool:
        return x == y

    def sample(self, rng: random.Random):
        raise NotImplementedError

    # -- iterated brackets x_1[x_2[...x_n[y]...]] --

    def iterated(self, xs: list, y):
        for x in reversed(xs):
            y = self.bracket(x, y)
        return y

    def iterated_inverse(self, xs: list, z):
        for x in xs:
            z = self.unbracket(x, z)
        return z

    def _check(self, t):
        for lab in labels(t):
            if not self.accepts(lab):
                raise CarrierMismatch(f"label {lab!r} is not in the carrier of {self.name}")

    def tree_bracket(self, t1, t2):
        """Replace each label y of t2 by x_1[x_2[...x_n[y]]] over t1's labels."""
        if self.trivial:
            return t2
        self._check(t1)
        self._check(t2)
        xs = labels(t1)
        return map_labels(t2, lambda y: self.iterated(xs, y))

    def tree_unbracket(self, t1, z):
        """The tree t2 with ``tree_bracket(t1, t2) == z``; ValueError if none."""
        if self.trivial:
            return z
        self._check(t1)
        self._check(z)
        xs = labels(t1)
        return map_labels(z, lambda y: self.iterated_inverse(xs, y))

    def __repr__(self):
        return f"<LDSystem {self.name}>"


class TrivialLD(LDSystem):
    """x[y] = y on any labels."""

    name = "trivial"
    trivial = True

    def bracket(self, x, y):
        return y

    def unbracket(self, x, z):
        return z

    def sample(self, rng):
        return rng.randint(1, 9)


class ConjFree(LDSystem):
    """conj of a free group: x[y] = x y x⁻¹."""

    name = "conj"

    def accepts(self, label):
        return isinstance(label, FreeWord)

    def bracket(self, x, y):
        return x * y * x.inverse()

    def unbracket(self, x, z):
        return x.inverse() * z * x

    def iterated(self, xs, y):
        p = FreeWord.identity()
        for x in xs:
            p = p * x
        return p * y * p.inverse()

    def iterated_inverse(self, xs, z):
        p = FreeWord.identity()
        for x in xs:
            p = p * x
        return p.inverse() * z * p

    def tree_bracket(self, t1, t2):
        self._check(t1)
        self._check(t2)
        p = FreeWord.identity()
        for x in labels(t1):
            p = p * x
        q = p.inverse()
        return map_labels(t2, lambda y: p * y * q)

    def tree_unbracket(self, t1, z):
        self._check(t1)
        self._check(z)
        p = FreeWord.identity()
        for x in labels(t1):
            p = p * x
        q = p.inverse()
        return map_labels(z, lambda y: q * y * p)

    def sample(self, rng, gens=("", "0", "1"), max_len=4):
        n = rng.randint(0, max_len)
        return FreeWord((rng.choice(gens), rng.choice((1, -1))) for _ in range(n))


class ShiftedSum(LDSystem):
    """Negative control: x[y] = y + x on integers.  Not self-distributive."""

    name = "negctrl"

    def accepts(self, label):
        return isinstance(label, int)

    def bracket(self, x, y):
        return y + x

    def unbracket(self, x, z):
        return z - x

    def sample(self, rng):
        return rng.randint(-5, 5)


def bv_system() -> LDSystem:
    from .bv import BvLD

    return BvLD()


SYSTEMS: dict[str, Callable[[], LDSystem]] = {
    "trivial": TrivialLD,
    "conj": ConjFree,
    "bv": bv_system,
    "negctrl": ShiftedSum,
}


def get_system(name: str) -> LDSystem:
    try:
        return SYSTEMS[name]()
    except KeyError:
        raise ValueError(f"unknown LD-system {name!r}") from None


# -- law checkers ----------------------------------------------------------

@dataclass
class LawVerdict:
    law: str
    holds: bool
    checked: int
    witness: tuple | None = None
    detail: str = ""

    def __str__(self):
        head = f"{self.law}: {'holds' if self.holds else 'FAILED'} ({self.checked} samples)"
        return head if self.holds else f"{head}; {self.detail}"


def _fmt(v):
    pretty = getattr(v, "pretty", None)
    return pretty() if pretty else repr(v)


def check_ld(L: LDSystem, samples: int = 200, rng: random.Random | None = None,
             triples=None) -> LawVerdict:
    """Property test of x[y[z]] = x[y][x[z]]."""
    rng = rng or random.Random(0)
    source = triples if triples is not None else (
        (L.sample(rng), L.sample(rng), L.sample(rng)) for _ in range(samples)
    )
    n = 0
    for x, y, z in source:
        n += 1
        lhs = L.bracket(x, L.bracket(y, z))
        rhs = L.bracket(L.bracket(x, y), L.bracket(x, z))
        if not L.equal(lhs, rhs):
            return LawVerdict("ld", False, n, (x, y, z),
                              f"x={_fmt(x)} y={_fmt(y)} z={_fmt(z)}: "
                              f"x[y[z]]={_fmt(lhs)} but x[y][x[z]]={_fmt(rhs)}")
    return LawVerdict("ld", True, n)


def check_left_cancellative(L: LDSystem, samples: int = 200,
                            rng: random.Random | None = None) -> LawVerdict:
    rng = rng or random.Random(0)
    for n in range(1, samples + 1):
        x, y = L.sample(rng), L.sample(rng)
        try:
            back = L.unbracket(x, L.bracket(x, y))
        except NonCancellativeBracket as exc:
            return LawVerdict("cancel", False, n, (x, y), str(exc))
        if not L.equal(back, y):
            return LawVerdict("cancel", False, n, (x, y),
                              f"x={_fmt(x)} y={_fmt(y)}: x\\x[y]={_fmt(back)}")
    return LawVerdict("cancel", True, samples)


def check_involutory(L: LDSystem, samples: int = 200,
                     rng: random.Random | None = None, pairs=None) -> LawVerdict:
    """Property test of x[x[y]] = y."""
    rng = rng or random.Random(0)
    source = pairs if pairs is not None else (
        (L.sample(rng), L.sample(rng)) for _ in range(samples)
    )
    n = 0
    for x, y in source:
        n += 1
        twice = L.bracket(x, L.bracket(x, y))
        if not L.equal(twice, y):
            return LawVerdict("involutory", False, n, (x, y),
                              f"x={_fmt(x)} y={_fmt(y)}: x[x[y]]={_fmt(twice)}")
    return LawVerdict("involutory", True, n)


def random_tree(rng: random.Random, size: int, label: Callable):
    if size == 1:
        return Leaf(label())
    k = rng.randint(1, size - 1)
    left = random_tree(rng, k, label)
    return Node(left, random_tree(rng, size - k, label))


def check_tree_laws(L: LDSystem, samples: int = 100, max_size: int = 3,
                    rng: random.Random | None = None) -> dict[str, LawVerdict]:
    """Check the lifted laws t1[t2 t3] = t1[t2]·t1[t3], (t1 t2)[t3] = t1[t2[t3]]
    and t1[t2[t3]] = t1[t2][t1[t3]] on random trees."""
    rng = rng or random.Random(0)
    out = {}
    eq = _tree_equal(L)

    def tree():
        return random_tree(rng, rng.randint(1, max_size), lambda: L.sample(rng))

    laws = {
        "product": lambda a, b, c: (L.tree_bracket(a, Node(b, c)),
                                    Node(L.tree_bracket(a, b), L.tree_bracket(a, c))),
        "nesting": lambda a, b, c: (L.tree_bracket(Node(a, b), c),
                                    L.tree_bracket(a, L.tree_bracket(b, c))),
        "ld": lambda a, b, c: (L.tree_bracket(a, L.tree_bracket(b, c)),
                               L.tree_bracket(L.tree_bracket(a, b), L.tree_bracket(a, c))),
    }
    for name, law in laws.items():
        verdict = LawVerdict(name, True, samples)
        for n in range(1, samples + 1):
            a, b, c = tree(), tree(), tree()
            lhs, rhs = law(a, b, c)
            if not eq(lhs, rhs):
                verdict = LawVerdict(name, False, n, (a, b, c), "trees differ")
                break
        out[name] = verdict
    return out


def _tree_equal(L: LDSystem):
    def eq(s, t):
        if type(s) is Node and type(t) is Node:
            return eq(s.left, t.left) and eq(s.right, t.right)
        if type(s) is Leaf and type(t) is Leaf:
            return L.equal(s.label, t.label)
        return False

    return eq
