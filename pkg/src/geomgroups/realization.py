"""Exact dyadic realizations of seeds: PL homeomorphisms (F) and interval bijections (V).

Maps run from the partition of the seed source to the partition of the
seed target, so the map of w1·w2 is the map of w1 followed by the map of w2.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotAnFSeed
from .operators import Gen, parse_word
from .seeds import Seed, word_seed
from .trees import Node, labels

ZERO, ONE = Fraction(0), Fraction(1)


def is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def is_power_of_two(q: Fraction) -> bool:
    n = q.numerator
    return n > 0 and n & (n - 1) == 0 and is_dyadic(q)


def format_dyadic(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    e = q.denominator.bit_length() - 1
    return f"{q.numerator}/2^{e}"


def leaf_intervals(t) -> list[tuple[object, Fraction, Fraction]]:
    """(label, lo, hi) per leaf, left to right, by recursive halving."""
    out = []

    def walk(node, lo, hi):
        if type(node) is Node:
            mid = (lo + hi) / 2
            walk(node.left, lo, mid)
            walk(node.right, mid, hi)
        else:
            out.append((node.label, lo, hi))

    walk(t, ZERO, ONE)
    return out


def partition(t) -> list[Fraction]:
    """Interior cut points of the dyadic partition attached to ``t``."""
    return [hi for _, _, hi in leaf_intervals(t)[:-1]]


# -- interval bijections ----------------------------------------------------------

@dataclass(frozen=True)
class IntervalBijection:
    """Affine pieces (src_lo, src_hi, tgt_lo, tgt_hi), sorted by source."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(sorted(self.pieces)))

    @classmethod
    def identity(cls) -> "IntervalBijection":
        return cls(((ZERO, ONE, ZERO, ONE),))

    def _locate(self, x: Fraction) -> int:
        starts = [p[0] for p in self.pieces]
        return bisect_right(starts, x) - 1

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not ZERO <= x < ONE:
            raise ValueError("interval bijections act on [0,1)")
        a, b, c, d = self.pieces[self._locate(x)]
        return c + (x - a) * (d - c) / (b - a)

    def slopes(self) -> list[Fraction]:
        return [(d - c) / (b - a) for a, b, c, d in self.pieces]

    def then(self, other: "IntervalBijection") -> "IntervalBijection":
        """x ↦ other(self(x))."""
        out = []
        for a, b, c, d in self.pieces:
            k = (d - c) / (b - a)
            for a2, b2, c2, d2 in other.pieces:
                lo, hi = max(c, a2), min(d, b2)
                if lo >= hi:
                    continue
                k2 = (d2 - c2) / (b2 - a2)
                out.append((a + (lo - c) / k, a + (hi - c) / k, c2 + (lo - a2) * k2, c2 + (hi - a2) * k2))
        return IntervalBijection(tuple(out)).normalized()

    def inverse(self) -> "IntervalBijection":
        return IntervalBijection(tuple((c, d, a, b) for a, b, c, d in self.pieces)).normalized()

    def normalized(self) -> "IntervalBijection":
        merged: list = []
        for a, b, c, d in self.pieces:
            if merged:
                pa, pb, pc, pd = merged[-1]
                if pb == a and pd == c and (pd - pc) / (pb - pa) == (d - c) / (b - a):
                    merged[-1] = (pa, b, pc, d)
                    continue
            merged.append((a, b, c, d))
        return IntervalBijection(tuple(merged))

    def is_identity(self) -> bool:
        return self.normalized().pieces == ((ZERO, ONE, ZERO, ONE),)

    def lines(self) -> list[str]:
        return [
            f"[{format_dyadic(a)},{format_dyadic(b)}) -> [{format_dyadic(c)},{format_dyadic(d)})"
            for a, b, c, d in self.pieces
        ]


# -- PL homeomorphisms --------------------------------------------------------------

@dataclass(frozen=True)
class PLMap:
    """Increasing PL homeomorphism of [0,1] given by its breakpoints."""

    breakpoints: tuple = field(default=((ZERO, ZERO), (ONE, ONE)))

    @classmethod
    def from_points(cls, points: Sequence[tuple]) -> "PLMap":
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        out: list = []
        for p in pts:
            if len(out) >= 2:
                (x0, y0), (x1, y1) = out[-2], out[-1]
                if (y1 - y0) * (p[0] - x1) == (p[1] - y1) * (x1 - x0):
                    out[-1] = p
                    continue
            out.append(p)
        return cls(tuple(out))

    @classmethod
    def from_bijection(cls, f: IntervalBijection) -> "PLMap":
        pieces = f.normalized().pieces
        for (a, b, c, d), nxt in zip(pieces, pieces[1:]):
            if nxt[2] != d:
                raise NotAnFSeed("interval map is not order preserving")
        pts = [(a, c) for a, _, c, _ in pieces] + [(ONE, ONE)]
        return cls.from_points(pts)

    def to_bijection(self) -> IntervalBijection:
        bp = self.breakpoints
        return IntervalBijection(tuple((x0, x1, y0, y1) for (x0, y0), (x1, y1) in zip(bp, bp[1:])))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x == ONE:
            return ONE
        return self.to_bijection()(x)

    def then(self, other: "PLMap") -> "PLMap":
        return PLMap.from_bijection(self.to_bijection().then(other.to_bijection()))

    def inverse(self) -> "PLMap":
        return PLMap.from_points([(y, x) for x, y in self.breakpoints])

    def slopes(self) -> list[Fraction]:
        bp = self.breakpoints
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(bp, bp[1:])]

    def lines(self) -> list[str]:
        return [f"{format_dyadic(x)}\t{format_dyadic(y)}" for x, y in self.breakpoints]


# -- seeds to maps ---------------------------------------------------------------------

def vmap_of_seed(seed: Seed) -> IntervalBijection:
    target = {lab: (lo, hi) for lab, lo, hi in leaf_intervals(seed.target)}
    pieces = [(lo, hi) + target[lab] for lab, lo, hi in leaf_intervals(seed.source)]
    return IntervalBijection(tuple(pieces)).normalized()


def pl_of_seed(seed: Seed) -> PLMap:
    if labels(seed.source) != labels(seed.target):
        raise NotAnFSeed("source and target label sequences differ")
    src, tgt = partition(seed.source), partition(seed.target)
    return PLMap.from_points([(ZERO, ZERO), *zip(src, tgt), (ONE, ONE)])


def pl_of_word(w: Sequence[Gen]) -> PLMap:
    return pl_of_seed(word_seed(w))


def vmap_of_word(w: Sequence[Gen]) -> IntervalBijection:
    return vmap_of_seed(word_seed(w))


# Named elements of V: an interval transposition and a 3-cycle.
FIXTURES = {
    "C": parse_word("A[] C[0] A[]'"),
    "pi0": parse_word("A[] C[0] A[]' C[1]"),
}


# -- homomorphism check --------------------------------------------------------------

def random_word(rng: random.Random, kinds: str = "A", max_len: int = 4, max_addr: int = 2) -> tuple:
    n = rng.randint(0, max_len)
    out = []
    for _ in range(n):
        addr = "".join(rng.choice("01") for _ in range(rng.randint(0, max_addr)))
        out.append(Gen(rng.choice(kinds), addr, rng.choice((1, -1))))
    return tuple(out)


@dataclass
class HomVerdict:
    ok: bool
    checked: int
    failure: tuple | None = None
    bad_slopes: int = 0


def homomorphism_check(pairs: Sequence[tuple], kind: str = "pl") -> HomVerdict:
    """π(w1·w2) = π(w1) then π(w2) for every pair; slopes must be powers of 2."""
    realize = pl_of_word if kind == "pl" else vmap_of_word
    bad_slopes = 0
    for count, (w1, w2) in enumerate(pairs, start=1):
        f1, f2, f12 = realize(w1), realize(w2), realize(tuple(w1) + tuple(w2))
        bad_slopes += sum(not is_power_of_two(k) for m in (f1, f2, f12) for k in m.slopes())
        if f1.then(f2) != f12:
            return HomVerdict(False, count, (w1, w2), bad_slopes)
    return HomVerdict(bad_slopes == 0, len(pairs), None, bad_slopes)


def sample_pairs(n: int, kinds: str, rng: random.Random, max_len: int = 4) -> list:
    return [(random_word(rng, kinds, max_len), random_word(rng, kinds, max_len)) for _ in range(n)]
