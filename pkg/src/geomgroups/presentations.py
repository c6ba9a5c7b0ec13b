"""Relation families generated from templates, and their verifiers."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constructions import c_word, s_word
from .errors import DomainNeverIntersects, SigmaHasNoLinearExpansion, UndefinedAction
from .freegroup import FreeWord
from .operators import Gen, apply_word, expand_word, format_word, inverse_word, partial, shift_word
from .seeds import IDENTITY, word_seed
from .trees import (
    Leaf,
    Node,
    _unify,
    addresses_up_to,
    apply_substitution,
    graft,
    leaves,
    map_labels,
    print_tree,
)


@dataclass(frozen=True)
class Relation:
    lhs: tuple
    rhs: tuple
    family: str
    tag: str
    params: tuple = ()

    def __str__(self):
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"

    def param_text(self) -> str:
        return ",".join(f"{k}={v if v != '' else 'e'}" for k, v in self.params)


@dataclass
class Verdict:
    relation: Relation
    status: str  # "seed-equal" | "action-equal-on-samples" | "FAILED"
    method: str
    samples: int = 0
    witness: object = None
    images: tuple | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "FAILED"

    def line(self) -> str:
        rel = self.relation
        return f"{rel.family};{rel.tag}[{rel.param_text()}];{self.status}"

    def describe(self) -> str:
        head = f"{self.relation.family} {self.relation.tag} {self.relation}: {self.status}"
        if self.ok:
            return head
        out = [head]
        if self.witness is not None:
            out.append(f"  witness: {print_tree(self.witness)}")
        if self.images:
            out.append(f"  lhs image: {self.images[0]}")
            out.append(f"  rhs image: {self.images[1]}")
        if self.detail:
            out.append(f"  {self.detail}")
        return "\n".join(out)


@dataclass
class Report:
    verdicts: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if not v.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out: dict = {}
        for v in self.verdicts:
            out[v.status] = out.get(v.status, 0) + 1
        return out


# -- letter helpers -----------------------------------------------------------

def _L(kind: str, arg, sign: int = 1) -> Gen:
    return Gen(kind, arg, sign)


def _inv(g: Gen) -> Gen:
    return g.inverse()


def _rel(lhs, rhs, family, tag, gamma=None, **params) -> Relation:
    lhs, rhs = tuple(lhs), tuple(rhs)
    items = []
    if gamma is not None:
        lhs, rhs = shift_word(lhs, gamma), shift_word(rhs, gamma)
        items.append(("g", gamma))
    items.extend(sorted(params.items()))
    return Relation(lhs, rhs, family, tag, tuple(items))


# -- address families -----------------------------------------------------------

def _geometric(family: str, kinds: str, max_len: int) -> list[Relation]:
    """(□⊥), (□_A) and, depending on ``kinds``, (□_C) or (□_S)."""
    addrs = addresses_up_to(max_len)
    out = []
    for gamma in addrs:
        for X in kinds:
            for Y in kinds:
                for alpha in addrs:
                    for beta in addrs:
                        x0 = _L(X, "0" + alpha)
                        y1 = _L(Y, "1" + beta)
                        out.append(_rel([x0, y1], [y1, x0], family, "□⊥", gamma,
                                        X=X, Y=Y, a=alpha, b=beta))
        for X in kinds:
            for alpha in addrs:
                a_ = _L("A", "")
                out.append(_rel([_L(X, "11" + alpha), a_], [a_, _L(X, "1" + alpha)],
                                family, "□A.11", gamma, X=X, a=alpha))
                out.append(_rel([_L(X, "10" + alpha), a_], [a_, _L(X, "01" + alpha)],
                                family, "□A.10", gamma, X=X, a=alpha))
                out.append(_rel([_L(X, "0" + alpha), a_], [a_, _L(X, "00" + alpha)],
                                family, "□A.0", gamma, X=X, a=alpha))
                if "C" in kinds:
                    c_ = _L("C", "")
                    out.append(_rel([_L(X, "0" + alpha), c_], [c_, _L(X, "1" + alpha)],
                                    family, "□C.0", gamma, X=X, a=alpha))
                    out.append(_rel([_L(X, "1" + alpha), c_], [c_, _L(X, "0" + alpha)],
                                    family, "□C.1", gamma, X=X, a=alpha))
                if "S" in kinds:
                    s_ = _L("S", "")
                    out.append(_rel([_L(X, "11" + alpha), s_], [s_, _L(X, "11" + alpha)],
                                    family, "□S.11", gamma, X=X, a=alpha))
                    out.append(_rel([_L(X, "10" + alpha), s_], [s_, _L(X, "0" + alpha)],
                                    family, "□S.10", gamma, X=X, a=alpha))
                    out.append(_rel([_L(X, "0" + alpha), s_], [s_, _L(X, "10" + alpha)],
                                    family, "□S.0", gamma, X=X, a=alpha))
    return out


def _translated(family: str, tag: str, lhs, rhs, max_len: int) -> list[Relation]:
    return [_rel(lhs, rhs, family, tag, gamma) for gamma in addresses_up_to(max_len)]


A0, A1, A_ = _L("A", "0"), _L("A", "1"), _L("A", "")
C0, C1, C_ = _L("C", "0"), _L("C", "1"), _L("C", "")
S0, S1, S_ = _L("S", "0"), _L("S", "1"), _L("S", "")


def _pentagon(family, max_len):
    return _translated(family, "◇", [A_, A_], [A1, A_, A0], max_len)


def _hexagons(family, max_len):
    return (_translated(family, "◦.1", [A_, C_, A_], [C1, A_, C0], max_len)
            + _translated(family, "◦.2", [_inv(A_), C_, _inv(A_)],
                          [C0, _inv(A_), C1], max_len))


def _s_definition(family, max_len):
    return _translated(family, "S-def", [S_], [C_, _inv(A_), _inv(C1)], max_len)


def _as_extra(family, max_len):
    return (_translated(family, "SA1A=A1AS0", [S_, A1, A_], [A1, A_, S0], max_len)
            + _translated(family, "S1SA1=AS", [S1, S_, A1], [A_, S_], max_len)
            + _translated(family, "SS1A=A1S", [S_, S1, A_], [A1, S_], max_len)
            + _translated(family, "SS1S=S1SS1", [S_, S1, S_], [S1, S_, S1], max_len))


def family_R_A(max_len):
    return _geometric("R_A", "A", max_len) + _pentagon("R_A", max_len)


def family_R_AC(max_len):
    return _geometric("R_AC", "AC", max_len) + _pentagon("R_AC", max_len) + _hexagons("R_AC", max_len)


def family_R_ACS(max_len):
    base = [Relation(r.lhs, r.rhs, "R_ACS", r.tag, r.params) for r in family_R_AC(max_len)]
    return base + _s_definition("R_ACS", max_len)


def family_R_AS(max_len):
    return _geometric("R_AS", "AS", max_len) + _pentagon("R_AS", max_len) + _as_extra("R_AS", max_len)


# -- index families ---------------------------------------------------------

def _keep(rel: Relation, max_index: int) -> bool:
    return max((g.arg for g in rel.lhs + rel.rhs), default=0) <= max_index


def _ix(family, tag, lhs, rhs, **params):
    return Relation(tuple(lhs), tuple(rhs), family, tag, tuple(sorted(params.items())))


def family_R_a(max_index):
    a = lambda i, e=1: _L("a", i, e)  # noqa: E731
    out = []
    for i in range(1, max_index + 1):
        for j in range(i + 2, max_index + 1):
            out.append(_ix("R_a", "a.geo", [a(i), a(j - 1)], [a(j), a(i)], i=i, j=j))
    return out


def _commutations(family, xs: str, sx: str, max_index, s_letter="s"):
    """a_i x_{j-1} = x_j a_i and s_i x_j = x_j s_i for j >= i+2."""
    out = []
    for i in range(1, max_index + 1):
        for j in range(i + 2, max_index + 1):
            for x in xs:
                out.append(_ix(family, f"a.{x}", [_L("a", i), _L(x, j - 1)],
                               [_L(x, j), _L("a", i)], i=i, j=j, x=x))
            for x in sx:
                out.append(_ix(family, f"{s_letter}.{x}", [_L(s_letter, i), _L(x, j)],
                               [_L(x, j), _L(s_letter, i)], i=i, j=j, x=x))
    return out


def family_R_ac(max_index):
    F = "R_ac"
    out = []
    a = lambda i, e=1: _L("a", i, e)  # noqa: E731
    c = lambda i, e=1: _L("c", i, e)  # noqa: E731
    for i in range(1, max_index + 1):
        for j in range(i + 2, max_index + 1):
            for x in "ac":
                out.append(_ix(F, "ax=xa", [a(i), _L(x, j - 1)], [_L(x, j), a(i)], i=i, j=j, x=x))
            for x in "ac":
                block = [c(i), a(i, -1), c(i + 1, -1)]
                out.append(_ix(F, "block.x", block + [_L(x, j)], [_L(x, j)] + block, i=i, j=j, x=x))
    for i in range(1, max_index):
        for e in (1, -1):
            out.append(_ix(F, "aaca", [a(i + 1), a(i), c(i, e), a(i + 1)],
                           [a(i), a(i), c(i, e)], i=i, e=e))
        out.append(_ix(F, "acca=cc", [a(i), c(i), c(i + 1), a(i)], [c(i + 1), c(i)], i=i))
        out.append(_ix(F, "ccac", [c(i + 1), c(i), a(i, -1), c(i + 1)],
                       [c(i), a(i, -1), c(i), a(i, -1)], i=i))
    return [r for r in out if _keep(r, max_index)]


def family_R_acs(max_index):
    F = "R_acs"
    a = lambda i, e=1: _L("a", i, e)  # noqa: E731
    s = lambda i, e=1: _L("s", i, e)  # noqa: E731
    out = []
    for i in range(1, max_index + 1):
        for j in range(i + 2, max_index + 1):
            for x in "acs":
                out.append(_ix(F, "ax=xa", [a(i), _L(x, j - 1)], [_L(x, j), a(i)], i=i, j=j, x=x))
            for x in "acs":
                out.append(_ix(F, "sx=xs", [s(i), _L(x, j)], [_L(x, j), s(i)], i=i, j=j, x=x))
    for i in range(1, max_index):
        out.append(_ix(F, "ssa=as", [s(i), s(i + 1), a(i)], [a(i + 1), s(i)], i=i))
        out.append(_ix(F, "ssa=as.rev", [s(i + 1), s(i), a(i + 1)], [a(i), s(i)], i=i))
        for x in "sc":
            out.append(_ix(F, "sxs=xsx", [s(i), _L(x, i + 1), s(i)],
                           [_L(x, i + 1), s(i), _L(x, i + 1)], i=i, x=x))
    return [r for r in out if _keep(r, max_index)]


def _braidlike(family, letter, max_index):
    a = lambda i, e=1: _L("a", i, e)  # noqa: E731
    s = lambda i, e=1: _L(letter, i, e)  # noqa: E731
    out = _commutations(family, "a" + letter, "a" + letter, max_index, letter)
    for i in range(1, max_index):
        out.append(_ix(family, "braid", [s(i), s(i + 1), s(i)], [s(i + 1), s(i), s(i + 1)], i=i))
        out.append(_ix(family, "mixed.b", [s(i + 1), s(i), a(i + 1)], [a(i), s(i)], i=i))
        out.append(_ix(family, "mixed.a", [s(i), s(i + 1), a(i)], [a(i + 1), s(i)], i=i))
    return [r for r in out if _keep(r, max_index)]


def family_R_as(max_index):
    return _braidlike("R_as", "s", max_index)


def family_R_asigma(max_index):
    return _braidlike("R_aσ", "b", max_index)


def torsion(max_len: int = 2, max_index: int = 4, kinds: str = "CS") -> list[Relation]:
    out = []
    for X in kinds:
        for gamma in addresses_up_to(max_len):
            g = _L(X, gamma)
            out.append(Relation((g, g), (), "torsion", f"{X}²", (("g", gamma),)))
    for x in kinds.lower():
        for i in range(1, max_index + 1):
            g = _L(x, i)
            out.append(Relation((g, g), (), "torsion", f"{x}²", (("i", i),)))
    return out


def derived(max_len: int = 1, max_param: int = 3) -> list[Relation]:
    """Derived identities and their variant readings, each reported on its own."""
    F = "derived"
    out = []
    out += _translated(F, "◇.reversed", [A0, A_, A1], [A_, A_], max_len)
    out += _translated(F, "◦.reversed", [A_, C_, A_], [C0, A_, C1], max_len)
    out += _translated(F, "SA=AC0", [S_, A_], [A_, C0], max_len)
    out += _translated(F, "SA0=AC0", [S_, A0], [A_, C0], max_len)
    out += _translated(F, "SA1A=A1AS0", [S_, A1, A_], [A1, A_, S0], max_len)
    out += _translated(F, "S1SA1=AS", [S1, S_, A1], [A_, S_], max_len)
    out += _translated(F, "SS1A=A1S", [S_, S1, A_], [A1, S_], max_len)
    out += _translated(F, "SS1S=S1SS1", [S_, S1, S_], [S1, S_, S1], max_len)
    out += _translated(F, "C1S=AC", [C1, S_], [A_, C_], max_len)
    # geometric relations involving S
    for r in _geometric(F, "ACS", max_len):
        letters = {g.kind for g in r.lhs + r.rhs}
        if "S" in letters and (r.tag.startswith("□⊥") or r.tag.startswith("□A") or r.tag.startswith("□C")):
            out.append(Relation(r.lhs, r.rhs, F, "S-geo." + r.tag, r.params))
        elif r.tag.startswith("□S") and "C" in letters:
            out.append(Relation(r.lhs, r.rhs, F, "S-geo." + r.tag, r.params))
    for i in range(1, max_param + 1):
        c = lambda k, e=1: _L("c", k, e)  # noqa: E731
        out.append(_ix(F, "s=cac", [_L("s", i)], [c(i + 1, -1), _L("a", i), c(i)], i=i))
    out += sorting_identities(max_param)
    return out


def _sets_partitions(n: int):
    """All ordered triples (I, J, K) of disjoint sets covering {1..n}."""
    import itertools

    for colours in itertools.product(range(3), repeat=n):
        parts = ([], [], [])
        for v, col in zip(range(1, n + 1), colours):
            parts[col].append(v)
        yield tuple(frozenset(p) for p in parts)


def sorting_identities(max_param: int = 3) -> list[Relation]:
    """Two readings of the set-sorting identity, tagged sort.a and sort.b."""
    F = "derived"
    out = []
    for n in range(0, max_param + 1):
        for I, J, K in _sets_partitions(n):
            p = len(I)
            for x, word in (("c", c_word), ("s", s_word)):
                params = dict(I=_fmt_set(I), J=_fmt_set(J), K=_fmt_set(K), x=x)
                a_lhs = word(I | J, K) + s_word(I, J)
                a_rhs = word(I, J | K) + partial(word(J, K), p)
                out.append(_ix(F, "sort.a", a_lhs, a_rhs, **params))
                r = len(K)
                b_lhs = word(I, J | K) + s_word(J, K)
                b_rhs = word(I | J, K) + partial(word(I, J), r)
                out.append(_ix(F, "sort.b", b_lhs, b_rhs, **params))
    return out


def _fmt_set(S) -> str:
    return "{" + " ".join(str(v) for v in sorted(S)) + "}"


FAMILIES = {
    "R_A": ("addr", family_R_A),
    "R_AC": ("addr", family_R_AC),
    "R_ACS": ("addr", family_R_ACS),
    "R_AS": ("addr", family_R_AS),
    "R_a": ("index", family_R_a),
    "R_ac": ("index", family_R_ac),
    "R_acs": ("index", family_R_acs),
    "R_as": ("index", family_R_as),
    "R_aσ": ("index", family_R_asigma),
}


def relations(family: str, max_addr_len: int = 2, max_index: int = 4) -> list[Relation]:
    if family in ("R_asigma", "R_ab"):
        family = "R_aσ"
    if family == "torsion":
        return torsion(max_addr_len, max_index)
    if family == "derived":
        return derived(min(max_addr_len, 1), 3)
    try:
        kind, maker = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return maker(max_addr_len if kind == "addr" else max_index)


# -- translation of A_α into a-letters ----------------------------------------

def _formula_parts(alpha: str):
    p = len(alpha) - len(alpha.lstrip("1"))
    blocks = [len(b) for b in alpha[p:].split("1")]
    q = len(blocks) - 1
    exps = [blocks[0]] + [e + 1 for e in blocks[1:]]
    prefix: list[Gen] = []
    for k, e in enumerate(exps):
        prefix += [_L("a", p + 1 + k)] * e
    middle = [_L("a", p + q + 1), _L("a", p + q + 2, -1)]
    return prefix, middle


def translate_rtl(alpha: str) -> tuple:
    """The conjugation formula for A_α, written for right-to-left composition."""
    if "0" not in alpha:
        return (_L("a", len(alpha) + 1),)
    prefix, middle = _formula_parts(alpha)
    return tuple(prefix + middle) + inverse_word(prefix)


def translate_A_to_a(alpha: str) -> tuple:
    """An a-word equal to A_α under left-to-right action.

    The conjugation formula composes right to left; reading it backwards
    gives the word that acts as A_α here.
    """
    return tuple(reversed(translate_rtl(alpha)))


def alias_expand(w: Sequence[Gen], expand_s: bool = False) -> tuple:
    """Indexed letters to addresses; optionally S_α to C_α A_α⁻¹ C_α1⁻¹."""
    out = []
    for g in w:
        if g.kind == "b":
            raise SigmaHasNoLinearExpansion(f"{g} is twisted")
        g = g.expand()
        if expand_s and g.kind == "S":
            body = [_L("C", g.arg), _L("A", g.arg, -1), _L("C", g.arg + "1", -1)]
            out.extend(body if g.sign > 0 else inverse_word(body))
        else:
            out.append(g)
    return tuple(out)


# -- verification -------------------------------------------------------------

def _plain(w):
    return tuple(Gen("S", g.address, g.sign) if g.kind == "b" else g for g in w)


def _seed_witness(lhs, rhs):
    s1 = word_seed(lhs, reduce=False)
    s2 = word_seed(rhs, reduce=False)
    sig1, _ = _unify(s1.source, s2.source)
    t = apply_substitution(s1.source, sig1)
    images = []
    for w in (lhs, rhs):
        try:
            images.append(print_tree(apply_word(t, expand_word(w))))
        except UndefinedAction as exc:
            images.append(f"undefined ({exc})")
    return t, tuple(images)


def verify_seed(rel: Relation) -> Verdict:
    s1, s2 = word_seed(rel.lhs), word_seed(rel.rhs)
    if s1 == s2:
        return Verdict(rel, "seed-equal", "seed")
    t, images = _seed_witness(rel.lhs, rel.rhs)
    return Verdict(rel, "FAILED", "seed", witness=t, images=images,
                   detail=f"seeds {s1} vs {s2}")


def domain_shape(lhs, rhs):
    """Smallest tree shape on which both words act (plain shapes)."""
    s1 = word_seed(_plain(lhs), reduce=False)
    s2 = word_seed(_plain(rhs), reduce=False)
    sig1, _ = _unify(s1.source, s2.source)
    return apply_substitution(s1.source, sig1)


def _random_tree(rng, size):
    if size == 1:
        return Leaf(1)
    k = rng.randint(1, size - 1)
    return Node(_random_tree(rng, k), _random_tree(rng, size - k))


def sample_tree(rng: random.Random, shape, extra: int = 4):
    """Refine ``shape`` by grafting random subtrees at random leaves."""
    t = shape
    budget = rng.randint(0, extra)
    while budget > 0:
        addr = rng.choice([a for a, _ in leaves(t)])
        k = rng.randint(1, budget)
        t = graft(t, addr, _random_tree(rng, k + 1))
        budget -= k
    return t


def free_labels(t):
    """Label each leaf by the free generator named after its address."""
    def walk(node, addr):
        if type(node) is Node:
            return Node(walk(node.left, addr + "0"), walk(node.right, addr + "1"))
        return Leaf(FreeWord.gen(addr))

    return walk(t, "")


def int_labels(t):
    counter = iter(range(1, t.size + 1))
    return map_labels(t, lambda _: next(counter))


def tree_equal(ld, s, t) -> bool:
    if type(s) is Node and type(t) is Node:
        return tree_equal(ld, s.left, t.left) and tree_equal(ld, s.right, t.right)
    if type(s) is Leaf and type(t) is Leaf:
        return ld.equal(s.label, t.label)
    return False


def label_tree(ld, t, rng):
    from .ld import ConjFree

    if isinstance(ld, ConjFree):
        return free_labels(t)
    if getattr(ld, "name", "") == "bv":
        return map_labels(t, lambda _: ld.sample(rng))
    return int_labels(t)


def verify_sampled(rel: Relation, ld, samples: int = 1000, rng: random.Random | None = None,
                   extra: int = 4) -> Verdict:
    """Compare both sides on random refinements of their common domain."""
    rng = rng or random.Random(0)
    shape = domain_shape(rel.lhs, rel.rhs)
    lhs, rhs = expand_word(rel.lhs), expand_word(rel.rhs)
    agreed = 0
    for _ in range(samples):
        t = label_tree(ld, sample_tree(rng, shape, extra), rng)
        try:
            u = apply_word(t, lhs, ld)
            v = apply_word(t, rhs, ld)
        except UndefinedAction:
            continue
        if not tree_equal(ld, u, v):
            return Verdict(rel, "FAILED", "sampled", agreed, witness=t,
                           images=(print_tree(u), print_tree(v)),
                           detail=f"LD-system {ld.name}")
        agreed += 1
    if agreed == 0:
        raise DomainNeverIntersects(f"no sample admitted both sides of {rel}")
    return Verdict(rel, "action-equal-on-samples", "sampled", agreed)


def verify(rel: Relation, method: str = "seed", ld=None, samples: int = 1000,
           rng: random.Random | None = None) -> Verdict:
    if method == "seed":
        return verify_seed(rel)
    if method == "sampled":
        if ld is None:
            raise ValueError("sampled verification needs an LD-system")
        return verify_sampled(rel, ld, samples, rng)
    raise ValueError(f"unknown method {method!r}")


def sweep(rels: Iterable[Relation], method: str = "seed", **kw) -> Report:
    start = time.perf_counter()
    report = Report()
    for rel in rels:
        report.verdicts.append(verify(rel, method, **kw))
    report.elapsed = time.perf_counter() - start
    return report


def identity_check(w) -> bool:
    return word_seed(w) == IDENTITY


# -- twisted relations versus bracket laws ------------------------------------

TWISTED_LAWS = {
    "product": ("A1S=SS1A", [A1, S_], [S_, S1, A_]),
    "nesting": ("AS=S1SA1", [A_, S_], [S1, S_, A1]),
    "ld": ("SS1S=S1SS1", [S_, S1, S_], [S1, S_, S1]),
}


def twisted_relations() -> dict[str, Relation]:
    """The three relations that hold under twisted S exactly when a tree law does."""
    return {
        law: Relation(tuple(lhs), tuple(rhs), "twisted", tag)
        for law, (tag, lhs, rhs) in TWISTED_LAWS.items()
    }


@dataclass
class LawLink:
    law: str
    law_holds: bool
    verdict: Verdict

    @property
    def consistent(self) -> bool:
        return self.law_holds == self.verdict.ok


def law_relation_links(ld, samples: int = 300, rng: random.Random | None = None) -> list[LawLink]:
    """Pair each tree law of ``ld`` with the twisted relation it controls."""
    from .ld import check_tree_laws

    rng = rng or random.Random(0)
    laws = check_tree_laws(ld, samples, 3, rng)
    out = []
    for law, rel in twisted_relations().items():
        out.append(LawLink(law, laws[law].holds, verify_sampled(rel, ld, samples, rng)))
    return out


def torsion_twisted(ld, samples: int = 200, rng: random.Random | None = None) -> Verdict:
    """(C^T)² against the identity on sampled trees."""
    rel = Relation((C_, C_), (), "twisted", "C²")
    return verify_sampled(rel, ld, samples, rng or random.Random(0))
