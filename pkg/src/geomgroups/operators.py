"""Generators, words, and the partial right action on trees.

Letters ``A``, ``C``, ``S`` carry an address; ``a``, ``c``, ``s``, ``b``
carry an index i >= 1 and stand for the same operator at address 1^(i-1)
(``b`` is the twisted S, written σ in formulas).  Words act left to right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    NoHeir,
    NonCancellativeBracket,
    TwistedNotSupported,
    UndefinedAction,
    UnexpandedAlias,
    WordSyntaxError,
)
from .trees import Node, format_address, incompatible

ADDRESS_KINDS = "ACS"
INDEX_KINDS = "acsb"
ALIAS_OF = {"a": "A", "c": "C", "s": "S", "b": "S"}


@dataclass(frozen=True)
class Gen:
    kind: str
    arg: object  # address string for A/C/S, positive int for a/c/s/b
    sign: int = 1

    def __post_init__(self):
        if self.kind in ADDRESS_KINDS:
            if not isinstance(self.arg, str) or any(ch not in "01" for ch in self.arg):
                raise ValueError(f"bad address {self.arg!r}")
        elif self.kind in INDEX_KINDS:
            if not isinstance(self.arg, int) or self.arg < 1:
                raise ValueError(f"bad index {self.arg!r}")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def indexed(self) -> bool:
        return self.kind in INDEX_KINDS

    def inverse(self) -> "Gen":
        return Gen(self.kind, self.arg, -self.sign)

    def expand(self) -> "Gen":
        """Address form of an indexed letter (``b`` stays twisted)."""
        if self.kind in ADDRESS_KINDS or self.kind == "b":
            return self
        return Gen(ALIAS_OF[self.kind], "1" * (self.arg - 1), self.sign)

    @property
    def base(self) -> str:
        return ALIAS_OF.get(self.kind, self.kind)

    @property
    def address(self) -> str:
        if self.kind in ADDRESS_KINDS:
            return self.arg
        return "1" * (self.arg - 1)

    def __str__(self):
        tick = "'" if self.sign < 0 else ""
        if self.kind in ADDRESS_KINDS:
            return f"{self.kind}[{self.arg}]{tick}"
        return f"{self.kind}{self.arg}{tick}"


Word = tuple  # tuple[Gen, ...]


def A(address: str = "", sign: int = 1) -> Gen:
    return Gen("A", address, sign)


def C(address: str = "", sign: int = 1) -> Gen:
    return Gen("C", address, sign)


def S(address: str = "", sign: int = 1) -> Gen:
    return Gen("S", address, sign)


# -- word syntax -------------------------------------------------------------

def parse_word(text: str) -> Word:
    """Parse tokens such as ``A[11] C[]' a3 b2'``; ``e`` or ``ε`` is the empty word."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace() or ch in ".·":
            pos += 1
            continue
        if ch in ("e", "ε") and (pos + 1 == n or text[pos + 1].isspace()):
            pos += 1
            continue
        if ch in ADDRESS_KINDS:
            if pos + 1 >= n or text[pos + 1] != "[":
                raise WordSyntaxError(f"expected '[' after {ch}", pos + 1)
            end = text.find("]", pos + 2)
            if end < 0:
                raise WordSyntaxError("unterminated '['", pos + 1)
            addr = text[pos + 2:end]
            if addr == "e":
                addr = ""
            if any(b not in "01" for b in addr):
                raise WordSyntaxError(f"bad address {addr!r}", pos + 2)
            pos = end + 1
            arg: object = addr
        elif ch in INDEX_KINDS or ch == "σ":
            pos += 1
            digits_start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == digits_start:
                raise WordSyntaxError(f"expected index after {ch}", pos)
            arg = int(text[digits_start:pos])
            if arg < 1:
                raise WordSyntaxError("indices start at 1", digits_start)
            if ch == "σ":
                ch = "b"
        else:
            raise WordSyntaxError(f"unexpected character {ch!r}", pos)
        sign = 1
        while pos < n and text[pos] in "'⁻":
            if text[pos] == "⁻":
                if text[pos:pos + 2] != "⁻¹":
                    raise WordSyntaxError("bad inverse marker", pos)
                pos += 2
            else:
                pos += 1
            sign = -sign
        out.append(Gen(ch, arg, sign))
        if pos < n and not (text[pos].isspace() or text[pos] in ".·"):
            raise WordSyntaxError("letters must be separated by whitespace", pos)
    return tuple(out)


def format_word(w: Sequence[Gen]) -> str:
    return " ".join(str(g) for g in w) if w else "e"


def inverse_word(w: Sequence[Gen]) -> Word:
    return tuple(g.inverse() for g in reversed(w))


def expand_word(w: Sequence[Gen]) -> Word:
    return tuple(g.expand() for g in w)


def shift_word(w: Sequence[Gen], alpha: str) -> Word:
    """∂_α w: prefix every address with α."""
    out = []
    for g in w:
        if g.indexed:
            raise UnexpandedAlias(f"{g} must be expanded before shifting by an address")
        out.append(Gen(g.kind, alpha + g.arg, g.sign))
    return tuple(out)


def partial(w: Sequence[Gen], k: int = 1) -> Word:
    """∂^k w: address letters gain the prefix 1^k, indexed letters gain k."""
    if k == 0:
        return tuple(w)
    out = []
    for g in w:
        if g.indexed:
            out.append(Gen(g.kind, g.arg + k, g.sign))
        else:
            out.append(Gen(g.kind, "1" * k + g.arg, g.sign))
    return tuple(out)


def max_index(w: Iterable[Gen]) -> int:
    return max((g.arg for g in w if g.indexed), default=0)


# -- action ------------------------------------------------------------------

def _mismatch(g, addr, reason):
    return UndefinedAction(str(g), addr, reason)


def _act_at(node, g: Gen, ld, addr: str):
    base = g.base
    if base == "A":
        if g.sign > 0:
            if type(node) is not Node or type(node.right) is not Node:
                raise _mismatch(g, addr, "pattern x(yz) not matched")
            r = node.right
            return Node(Node(node.left, r.left), r.right)
        if type(node) is not Node or type(node.left) is not Node:
            raise _mismatch(g, addr, "pattern (xy)z not matched")
        lft = node.left
        return Node(lft.left, Node(lft.right, node.right))
    twisted = ld is not None and not ld.trivial
    if base == "C":
        if type(node) is not Node:
            raise _mismatch(g, addr, "pattern xy not matched")
        if g.sign > 0:
            t1, t2 = node.left, node.right
            return Node(ld.tree_bracket(t1, t2) if twisted else t2, t1)
        u, t1 = node.left, node.right
        return Node(t1, _unbracket(ld, t1, u, g, addr) if twisted else u)
    # S
    if type(node) is not Node or type(node.right) is not Node:
        raise _mismatch(g, addr, "pattern x(yz) not matched")
    if g.sign > 0:
        t1, t2, t3 = node.left, node.right.left, node.right.right
        return Node(ld.tree_bracket(t1, t2) if twisted else t2, Node(t1, t3))
    u, t1, t3 = node.left, node.right.left, node.right.right
    t2 = _unbracket(ld, t1, u, g, addr) if twisted else u
    return Node(t1, Node(t2, t3))


def _unbracket(ld, t1, u, g, addr):
    try:
        return ld.tree_unbracket(t1, u)
    except NonCancellativeBracket:
        raise
    except ValueError as exc:
        raise _mismatch(g, addr, f"left division fails ({exc})") from None


def apply_generator(t, g: Gen, ld=None):
    """t • g, raising UndefinedAction when g does not apply."""
    if g.kind == "b" and ld is None:
        raise TwistedNotSupported("σ letters need an LD-system")
    addr = g.address
    path = []
    node = t
    for bit in addr:
        if type(node) is not Node:
            raise UndefinedAction(str(g), addr, "address outside skeleton")
        path.append(node)
        node = node.left if bit == "0" else node.right
    new = _act_at(node, g, ld, addr)
    for parent, bit in zip(reversed(path), reversed(addr)):
        new = Node(new, parent.right) if bit == "0" else Node(parent.left, new)
    return new


def apply_word(t, w: Sequence[Gen], ld=None):
    """Prefix-strict word action; the error records the failing prefix length."""
    for i, g in enumerate(w):
        try:
            t = apply_generator(t, g, ld)
        except UndefinedAction as exc:
            raise UndefinedAction(exc.gen, exc.address, exc.reason, prefix=i + 1) from None
    return t


def try_apply(t, w: Sequence[Gen], ld=None):
    try:
        return apply_word(t, w, ld)
    except UndefinedAction:
        return None


# -- heirs -------------------------------------------------------------------

def heir(op: Gen, beta: str) -> str:
    """Where the subtree at ``beta`` sits after applying ``op``."""
    if op.sign < 0:
        raise NoHeir("heirs are defined for positive generators")
    op = op.expand()
    if op.kind == "b":
        op = Gen("S", op.address)
    alpha = op.arg
    if incompatible(alpha, beta):
        return beta
    if not beta.startswith(alpha) or beta == alpha:
        raise NoHeir(f"{format_address(beta)} has no heir under {op}")
    rest = beta[len(alpha):]
    if op.kind == "A":
        if rest.startswith("0"):
            return alpha + "00" + rest[1:]
        if rest.startswith("10"):
            return alpha + "01" + rest[2:]
        if rest.startswith("11"):
            return alpha + "1" + rest[2:]
    elif op.kind == "C":
        return alpha + ("1" if rest[0] == "0" else "0") + rest[1:]
    else:
        if rest.startswith("0"):
            return alpha + "10" + rest[1:]
        if rest.startswith("10"):
            return alpha + "0" + rest[2:]
        if rest.startswith("11"):
            return beta
    raise NoHeir(f"{format_address(beta)} has no heir under {op}")


# -- orbits ------------------------------------------------------------------

@dataclass
class Orbit:
    states: list
    edges: list  # (source index, generator, target index), positive generators only

    def __len__(self):
        return len(self.states)


def _internal_addresses(t) -> list[str]:
    out = []

    def walk(node, addr):
        if type(node) is Node:
            out.append(addr)
            walk(node.left, addr + "0")
            walk(node.right, addr + "1")

    walk(t, "")
    return out


def orbit(t, gens: Iterable = ("A",), cap: int = 100_000, ld=None,
          with_edges: bool = False) -> Orbit:
    """Breadth-first closure of ``t`` under generator families and inverses.

    ``gens`` mixes kind names (``"A"``, ``"C"``, ``"S"``: every address) and
    explicit ``Gen`` values.
    """
    kinds = [g for g in gens if isinstance(g, str)]
    explicit = [g for g in gens if isinstance(g, Gen)]
    for k in kinds:
        if k not in ADDRESS_KINDS:
            raise ValueError(f"unknown generator family {k!r}")
    index = {t: 0}
    states = [t]
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        cur = states[i]
        candidates = []
        for addr in _internal_addresses(cur):
            for k in kinds:
                candidates.append(Gen(k, addr, 1))
                candidates.append(Gen(k, addr, -1))
        for g in explicit:
            candidates.append(g)
            candidates.append(g.inverse())
        for g in candidates:
            try:
                nxt = apply_generator(cur, g, ld)
            except UndefinedAction:
                continue
            j = index.get(nxt)
            if j is None:
                if len(states) >= cap:
                    raise CapExceeded(len(states) + 1, cap)
                j = len(states)
                index[nxt] = j
                states.append(nxt)
                queue.append(j)
            if with_edges and g.sign > 0:
                edges.append((i, g, j))
    return Orbit(states, edges)

