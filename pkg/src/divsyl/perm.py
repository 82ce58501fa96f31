"""Permutations of {1..n} stored as 0-based image tuples.

Points are 1-based in cycle notation and 0-based internally.  Products act
on the right: ``(p * q)(i) == q(p(i))``, so ``i^(pq) = (i^p)^q``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence


class PermutationError(ValueError):
    pass


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class Permutation(tuple):
    """An immutable permutation; a tuple whose entry ``i`` is the image of ``i``."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        self = tuple.__new__(cls, images)
        if sorted(self) != list(range(len(self))):
            raise PermutationError(f"not a bijection of 0..{len(self) - 1}: {tuple(self)}")
        return self

    @classmethod
    def _trusted(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles given with 1-based points."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise PermutationError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise PermutationError(f"point {a} repeated across cycles")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls._trusted(img)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        return cls.from_cycles(degree, parse_cycles(text))

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image sequence."""
        return tuple(i + 1 for i in self)

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        if len(other) != len(self):
            raise PermutationError(f"degree mismatch: {len(self)} vs {len(other)}")
        return Permutation._trusted(map(other.__getitem__, self))

    def __invert__(self) -> "Permutation":
        return Permutation._trusted(_inv(self))

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else ~self
        k = abs(k)
        out = tuple(range(len(self)))
        while k:
            if k & 1:
                out = _mul(out, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._trusted(out)

    def __xor__(self, g) -> "Permutation":
        """Conjugate ``g^-1 * self * g``."""
        return Permutation._trusted(_mul(_mul(_inv(g), self), g))

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def order(self) -> int:
        from math import lcm

        out = 1
        for c in self.cycles():
            out = lcm(out, len(c))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i + 1]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j + 1)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self) if i != j]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {len(self)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    """Parse ``"(1 2 3)(4 5)"`` into cycles; ``"()"`` is the identity.

    Raises if a point repeats, either inside a cycle or across cycles.
    """
    text = text.strip()
    pos = 0
    cycles = []
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise PermutationError(f"unexpected text {text[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1).split()
        if not body:
            continue
        try:
            pts = tuple(int(t) for t in body)
        except ValueError:
            raise PermutationError(f"non-integer point in {m.group(0)!r}") from None
        if len(set(pts)) != len(pts):
            raise PermutationError(f"duplicate point in cycle {m.group(0)!r}")
        if seen & set(pts):
            raise PermutationError(f"cycles not disjoint at {m.group(0)!r}")
        seen.update(pts)
        cycles.append(pts)
    if text[pos:].strip() or (not cycles and not text.startswith("(")):
        raise PermutationError(f"cannot parse cycles from {text!r}")
    return cycles


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``: the result maps ``i`` to ``q(p(i))``."""
    return p * q
