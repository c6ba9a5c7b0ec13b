"""Reduced words in a free group whose generators x_γ are indexed by addresses."""

from __future__ import annotations

from typing import Iterable


class FreeWord:
    """A freely reduced word; letters are ``(address, sign)`` pairs."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[tuple[str, int]] = ()):
        out: list[tuple[str, int]] = []
        for gen, sign in letters:
            if out and out[-1][0] == gen and out[-1][1] == -sign:
                out.pop()
            else:
                out.append((gen, sign))
        self.letters = tuple(out)
        self._hash = hash(self.letters)

    @classmethod
    def _trusted(cls, letters: tuple) -> "FreeWord":
        obj = cls.__new__(cls)
        obj.letters = letters
        obj._hash = hash(letters)
        return obj

    @classmethod
    def gen(cls, address: str, sign: int = 1) -> "FreeWord":
        return cls._trusted(((address, sign),))

    @classmethod
    def identity(cls) -> "FreeWord":
        return _IDENTITY

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        a, b = self.letters, other.letters
        if not a:
            return other
        if not b:
            return self
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
            i += 1
        return FreeWord._trusted(a[: len(a) - i] + b[i:])

    def inverse(self) -> "FreeWord":
        return FreeWord._trusted(tuple((g, -s) for g, s in reversed(self.letters)))

    def conjugate_by(self, p: "FreeWord") -> "FreeWord":
        """p · self · p⁻¹."""
        return p * self * p.inverse()

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FreeWord({self.to_label_text()!r})"

    def __str__(self):
        return self.to_label_text()

    def to_label_text(self) -> str:
        if not self.letters:
            return "x:()"
        return ".".join(
            "x:" + (g if g else "e") + ("'" if s < 0 else "") for g, s in self.letters
        )

    def pretty(self) -> str:
        """Human form such as ``x_e x_1 x_e^-1``."""
        if not self.letters:
            return "1"
        return " ".join(
            f"x_{g or 'e'}" + ("^-1" if s < 0 else "") for g, s in self.letters
        )

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        text = text.strip()
        if text in ("x:()", "1", ""):
            return _IDENTITY
        letters = []
        for part in text.split("."):
            if not part.startswith("x:"):
                raise ValueError(f"bad free-group letter {part!r}")
            body = part[2:]
            sign = 1
            if body.endswith("'"):
                sign = -1
                body = body[:-1]
            if body == "e":
                body = ""
            if any(ch not in "01" for ch in body):
                raise ValueError(f"bad generator address in {part!r}")
            letters.append((body, sign))
        return cls(letters)


_IDENTITY = FreeWord._trusted(())


def x(address: str, sign: int = 1) -> FreeWord:
    return FreeWord.gen(address, sign)
