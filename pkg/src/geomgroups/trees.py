"""Binary trees with labelled leaves, addresses, codecs and injective unification.

Addresses are plain strings over ``"0"`` (fork left) and ``"1"`` (fork right);
the root address is the empty string.  Trees are immutable and hashable.
An uncoloured tree is a tree whose leaves all carry the label 1.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    AddressOutsideSkeleton,
    EmptyInput,
    MalformedPolish,
    NonInjectiveLabels,
    TreeSyntaxError,
    UnboundLabel,
)

NODE = "o"
LEAF = "*"


class Leaf:
    __slots__ = ("label",)

    size = 1

    def __init__(self, label=1):
        self.label = label

    def __eq__(self, other):
        return type(other) is Leaf and self.label == other.label

    def __hash__(self):
        return hash(("leaf", self.label))

    def __repr__(self):
        return f"Leaf({self.label!r})"

    def __str__(self):
        return print_tree(self)


class Node:
    __slots__ = ("left", "right", "size", "_hash")

    def __init__(self, left: Tree, right: Tree):
        self.left = left
        self.right = right
        self.size = left.size + right.size
        self._hash = hash((left, right))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Node
            and self._hash == other._hash
            and self.size == other.size
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Node({self.left!r}, {self.right!r})"

    def __str__(self):
        return print_tree(self)


Tree = "Leaf | Node"
Substitution = dict


# -- addresses -------------------------------------------------------------

def parse_address(text: str) -> str:
    """Parse the CLI address syntax: a binary string, ``e`` for the root."""
    text = text.strip()
    if text in ("e", "φ", "phi"):
        return ""
    if any(ch not in "01" for ch in text):
        raise ValueError(f"invalid address {text!r}")
    return text


def format_address(address: str) -> str:
    return address if address else "e"


def is_prefix(alpha: str, beta: str) -> bool:
    return beta.startswith(alpha)


def incompatible(alpha: str, beta: str) -> bool:
    """True when neither address is a prefix of the other."""
    return not (alpha.startswith(beta) or beta.startswith(alpha))


def addresses_up_to(length: int) -> list[str]:
    """All addresses of length <= ``length``, shortest first."""
    out = [""]
    layer = [""]
    for _ in range(length):
        layer = [a + b for a in layer for b in "01"]
        out.extend(layer)
    return out


# -- basic structure -------------------------------------------------------

def subtree(t, address: str):
    node = t
    for bit in address:
        if type(node) is not Node:
            raise AddressOutsideSkeleton(address)
        node = node.left if bit == "0" else node.right
    return node


def has_address(t, address: str) -> bool:
    node = t
    for bit in address:
        if type(node) is not Node:
            return False
        node = node.left if bit == "0" else node.right
    return True


def graft(t, address: str, s):
    """Replace the subtree of ``t`` at ``address`` by ``s``."""
    if not address:
        return s
    if type(t) is not Node:
        raise AddressOutsideSkeleton(address)
    try:
        if address[0] == "0":
            return Node(graft(t.left, address[1:], s), t.right)
        return Node(t.left, graft(t.right, address[1:], s))
    except AddressOutsideSkeleton:
        raise AddressOutsideSkeleton(address) from None


def skeleton(t) -> set[str]:
    out = set()
    stack = [(t, "")]
    while stack:
        node, addr = stack.pop()
        out.add(addr)
        if type(node) is Node:
            stack.append((node.left, addr + "0"))
            stack.append((node.right, addr + "1"))
    return out


def leaves(t) -> list[tuple[str, object]]:
    """(address, label) pairs in left-to-right order."""
    out = []

    def walk(node, addr):
        if type(node) is Node:
            walk(node.left, addr + "0")
            walk(node.right, addr + "1")
        else:
            out.append((addr, node.label))

    walk(t, "")
    return out


def labels(t) -> list:
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) is Node:
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node.label)
    return out


def is_injective(t) -> bool:
    labs = labels(t)
    return len(set(labs)) == len(labs)


def require_injective(t, what="tree"):
    if not is_injective(t):
        raise NonInjectiveLabels(f"{what} {print_tree(t)} has repeated labels")


def shape(t):
    """The uncoloured tree with the same skeleton as ``t``."""
    if type(t) is Node:
        return Node(shape(t.left), shape(t.right))
    return Leaf(1)


def relabel(t, mapping):
    if type(t) is Node:
        return Node(relabel(t.left, mapping), relabel(t.right, mapping))
    return Leaf(mapping[t.label])


def map_labels(t, fn: Callable):
    if type(t) is Node:
        return Node(map_labels(t.left, fn), map_labels(t.right, fn))
    return Leaf(fn(t.label))


def number_leaves(t, start=1):
    """Relabel the leaves of ``t`` by start, start+1, ... left to right."""
    counter = iter(range(start, start + t.size))

    def walk(node):
        if type(node) is Node:
            left = walk(node.left)
            return Node(left, walk(node.right))
        return Leaf(next(counter))

    return walk(t)


def right_branch(t) -> tuple[list, object]:
    """Split ``t`` as <t_1, ..., t_n, leaf>; returns ([t_1..t_n], leaf)."""
    parts = []
    while type(t) is Node:
        parts.append(t.left)
        t = t.right
    return parts, t


def vine(items: Sequence):
    """The right comb t_1(t_2(...(t_{n-1} t_n)...))."""
    items = list(items)
    if not items:
        raise EmptyInput("vine of an empty sequence")
    out = items[-1]
    for item in reversed(items[:-1]):
        out = Node(item, out)
    return out


def right_vine(n: int):
    return vine([Leaf(1)] * n)


def coloured_vine(*blocks: Iterable[int], tail=None):
    """Vine whose labels enumerate each block increasingly, block after block.

    With ``tail`` given, the tree is appended as the last item, so that
    ``coloured_vine(I, tail=t)`` is the mixed vine <I, t>.
    """
    items = [Leaf(x) for block in blocks for x in sorted(block)]
    if tail is not None:
        items.append(tail)
    return vine(items)


def all_shapes(n: int) -> list:
    """Every uncoloured tree with ``n`` leaves."""
    return list(_shapes(n))


_shape_cache: dict[int, tuple] = {}


def _shapes(n):
    if n in _shape_cache:
        return _shape_cache[n]
    if n == 1:
        res = (Leaf(1),)
    else:
        res = tuple(
            Node(a, b)
            for k in range(1, n)
            for a in _shapes(k)
            for b in _shapes(n - k)
        )
    _shape_cache[n] = res
    return res


# -- text codec ------------------------------------------------------------

def _is_uncoloured(t) -> bool:
    return all(lab == 1 for lab in labels(t))


def format_label(label) -> str:
    if isinstance(label, int):
        return str(label)
    fmt = getattr(label, "to_label_text", None)
    if fmt is not None:
        return fmt()
    return str(label)


def print_tree(t, stars: bool | None = None) -> str:
    """Render ``t``; uncoloured trees use ``*`` for every leaf unless ``stars`` is False."""
    plain = _is_uncoloured(t) if stars is None else stars
    parts: list[str] = []

    def walk(node):
        if type(node) is Node:
            parts.append("(")
            walk(node.left)
            parts.append(" ")
            walk(node.right)
            parts.append(")")
        else:
            parts.append(LEAF if plain else format_label(node.label))

    walk(t)
    return "".join(parts)


def _default_label(token: str, offset: int):
    if token == LEAF:
        return 1
    if token.isdigit():
        value = int(token)
        if value < 1:
            raise TreeSyntaxError("labels must be positive integers", offset)
        return value
    if token.startswith("x:"):
        from .freegroup import FreeWord

        try:
            return FreeWord.parse(token)
        except ValueError as exc:
            raise TreeSyntaxError(str(exc), offset) from None
    if token.startswith("{") and token.endswith("}"):
        from .bv import BvWord

        try:
            return BvWord.parse(token[1:-1])
        except ValueError as exc:
            raise TreeSyntaxError(str(exc), offset) from None
    raise TreeSyntaxError(f"bad leaf token {token!r}", offset)


def parse_tree(text: str, label_parser=None):
    """Parse ``tree := leaf | "(" tree WS tree ")"``.

    Leaves are ``*`` (label 1), positive integers, free-group words such as
    ``x:e.x:01'`` or B-words in braces such as ``{a1 b2'}``.
    """
    label_parser = label_parser or _default_label
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise TreeSyntaxError("unexpected end of input", pos)
        if text[pos] == "(":
            pos += 1
            left = parse()
            if pos >= n or not text[pos].isspace():
                skip_ws()
                if pos < n and text[pos] == ")":
                    raise TreeSyntaxError("node needs two subtrees", pos)
            right = parse()
            skip_ws()
            if pos >= n or text[pos] != ")":
                raise TreeSyntaxError("expected ')'", pos)
            pos += 1
            return Node(left, right)
        if text[pos] == ")":
            raise TreeSyntaxError("unexpected ')'", pos)
        start = pos
        if text[pos] == "{":
            end = text.find("}", pos)
            if end < 0:
                raise TreeSyntaxError("unterminated '{'", pos)
            pos = end + 1
        else:
            while pos < n and not text[pos].isspace() and text[pos] not in "()":
                pos += 1
        return Leaf(label_parser(text[start:pos], start))

    tree = parse()
    skip_ws()
    if pos != n:
        raise TreeSyntaxError("trailing input", pos)
    return tree


# -- Polish notation -------------------------------------------------------

def polish_encode(t) -> list:
    """Right Polish notation: leaves give their label, nodes give ``"o"``."""
    out = []

    def walk(node):
        if type(node) is Node:
            walk(node.left)
            walk(node.right)
            out.append(NODE)
        else:
            out.append(node.label)

    walk(t)
    return out


def format_polish(symbols: Sequence) -> str:
    return " ".join(LEAF if s == 1 else str(s) for s in symbols)


def defect_profile(symbols: Sequence) -> list[int]:
    """Running defect: starts at -1, +1 per leaf symbol, -1 per node symbol."""
    out = [-1]
    for s in symbols:
        out.append(out[-1] - 1 if s == NODE else out[-1] + 1)
    return out


def polish_decode(symbols: Sequence):
    if isinstance(symbols, str):
        symbols = symbols.split()
    stack = []
    for i, s in enumerate(symbols, start=1):
        if s == NODE:
            if len(stack) < 2:
                raise MalformedPolish(i)
            right = stack.pop()
            left = stack.pop()
            stack.append(Node(left, right))
        else:
            stack.append(Leaf(1 if s == LEAF else s))
    if len(stack) != 1:
        raise MalformedPolish(len(symbols))
    return stack[0]


# -- substitutions and unification -----------------------------------------

def apply_substitution(t, sigma: dict):
    if type(t) is Node:
        return Node(apply_substitution(t.left, sigma), apply_substitution(t.right, sigma))
    try:
        return sigma[t.label]
    except KeyError:
        raise UnboundLabel(t.label) from None


def identity_substitution(t) -> dict:
    return {x: Leaf(x) for x in labels(t)}


def unify_injective(t1, t2) -> tuple[dict, dict]:
    """Minimal substitutions making two injective trees coincide.

    The common instance has skeleton ``skeleton(t1) | skeleton(t2)`` and its
    leaves are labelled 1, 2, ... from left to right.
    """
    require_injective(t1)
    require_injective(t2)
    return _unify(t1, t2)


def _unify(t1, t2):
    sigma1: dict = {}
    sigma2: dict = {}
    counter = [0]

    def fresh_copy(shape_tree, sigma):
        # fresh leaves with the shape of shape_tree; bind its labels in sigma
        if type(shape_tree) is Node:
            left = fresh_copy(shape_tree.left, sigma)
            return Node(left, fresh_copy(shape_tree.right, sigma))
        counter[0] += 1
        leaf = Leaf(counter[0])
        sigma[shape_tree.label] = leaf
        return leaf

    def walk(a, b):
        a_node = type(a) is Node
        b_node = type(b) is Node
        if a_node and b_node:
            left = walk(a.left, b.left)
            return Node(left, walk(a.right, b.right))
        if a_node:
            common = fresh_copy(a, sigma1)
            sigma2[b.label] = common
            return common
        if b_node:
            common = fresh_copy(b, sigma2)
            sigma1[a.label] = common
            return common
        counter[0] += 1
        leaf = Leaf(counter[0])
        sigma1[a.label] = leaf
        sigma2[b.label] = leaf
        return leaf

    walk(t1, t2)
    return sigma1, sigma2


def iter_subtrees(t) -> Iterator[tuple[str, object]]:
    stack = [(t, "")]
    while stack:
        node, addr = stack.pop()
        yield addr, node
        if type(node) is Node:
            stack.append((node.right, addr + "1"))
            stack.append((node.left, addr + "0"))
