"""
Transformations of a finite set Q = {1, ..., n}.

A transformation is stored as a tuple of images with 0-based entries, so
``t[q]`` is the image of the (0-based) state ``q``.  All textual forms are
1-based, matching the usual notation::

    >>> t = Transformation.parse("[1,4,3,5,2,2,3]")
    >>> t.rank()
    5
    >>> str(parse_cycles("(1,2,4,5)(6,7)", 7))
    '[2,4,3,5,1,7,6]'
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

__all__ = [
    "Transformation",
    "Permutation",
    "identity",
    "compose",
    "conjugate",
    "rank",
    "parse_cycles",
    "format_cycles",
    "permutation_order",
    "parse_list",
    "format_list",
]

_LIST_RE = re.compile(r"^\s*\[(.*)\]\s*$", re.S)
_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Transformation(tuple):
    """A total function on {0, ..., n-1}, stored as its image tuple.

    Being a tuple, it hashes and compares like one; ``len(t)`` is the degree.
    Use :meth:`from_list` or :meth:`parse` for 1-based input.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        self = super().__new__(cls, images)
        n = len(self)
        for x in self:
            if not (0 <= x < n):
                raise ValueError(f"image {x} out of range for degree {n}")
        return self

    @classmethod
    def from_list(cls, images: Iterable[int]):
        """Build from 1-based images, as in list notation."""
        return cls(x - 1 for x in images)

    @classmethod
    def parse(cls, text: str):
        """Parse list notation ``[a1,...,an]`` (1-based)."""
        return cls.from_list(parse_list(text))

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, q: int) -> int:
        return self[q]

    def to_list(self) -> list[int]:
        """1-based image list."""
        return [x + 1 for x in self]

    def rank(self) -> int:
        return len(set(self))

    def image(self) -> frozenset[int]:
        return frozenset(self)

    def is_permutation(self) -> bool:
        return len(set(self)) == len(self)

    def __str__(self) -> str:
        return format_list(self.to_list())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_list(self.to_list())})"


class Permutation(Transformation):
    """A bijective transformation."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        self = super().__new__(cls, images)
        if len(set(self)) != len(self):
            raise ValueError(f"not a permutation: {format_list(self.to_list())}")
        return self

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for q, x in enumerate(self):
            inv[x] = q
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles (0-based), fixed points omitted, each starting at its least point."""
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            q = self[start]
            while q != start:
                cyc.append(q)
                seen[q] = True
                q = self[q]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return permutation_order(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self) or '()'}, n={len(self)})"


def identity(n: int) -> Permutation:
    return Permutation(range(n))


def compose(s: Sequence[int], t: Sequence[int]) -> Transformation:
    """Return s o t, i.e. the map q -> s(t(q))."""
    if len(s) != len(t):
        raise ValueError(f"degree mismatch: {len(s)} vs {len(t)}")
    return Transformation(tuple(map(s.__getitem__, t)))


def rank(t: Sequence[int]) -> int:
    return len(set(t))


def conjugate(t: Sequence[int], g: Sequence[int]) -> Transformation:
    """Return g o t o g^-1."""
    if len(t) != len(g):
        raise ValueError(f"degree mismatch: {len(t)} vs {len(g)}")
    if not isinstance(g, Permutation):
        g = Permutation(g)
    ginv = g.inverse()
    return Transformation(g[t[ginv[q]]] for q in range(len(t)))


def permutation_order(p: Sequence[int]) -> int:
    """Least i >= 1 with p^i = id (the lcm of the cycle lengths)."""
    if not isinstance(p, Permutation):
        p = Permutation(p)
    return math.lcm(1, *(len(c) for c in p.cycles()))


def parse_list(text: str) -> list[int]:
    """Parse ``[a1,...,an]`` into a list of ints (no shifting)."""
    m = _LIST_RE.match(text)
    if not m:
        raise ValueError(f"malformed list notation: {text!r}")
    body = m.group(1).strip()
    if not body:
        return []
    try:
        return [int(x) for x in body.split(",")]
    except ValueError:
        raise ValueError(f"malformed list notation: {text!r}") from None


def format_list(values: Iterable[int]) -> str:
    return "[" + ",".join(str(v) for v in values) + "]"


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint cycle notation such as ``"(1,2,4,5)(6,7)"`` on n points.

    Whitespace is ignored and omitted points are fixed.  An empty string
    (or ``"()"``) is the identity.
    """
    stripped = re.sub(r"\s+", "", text)
    if _CYCLE_RE.sub("", stripped):
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(n))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        try:
            pts = [int(x) - 1 for x in body.split(",")]
        except ValueError:
            raise ValueError(f"malformed cycle notation: {text!r}") from None
        for p in pts:
            if not (0 <= p < n):
                raise ValueError(f"cycle entry {p + 1} out of range 1..{n}")
            if p in used:
                raise ValueError(f"point {p + 1} repeated in cycle notation")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(images)


def format_cycles(p: Sequence[int]) -> str:
    """Disjoint cycle notation, 1-based; the identity formats as ``""``."""
    if not isinstance(p, Permutation):
        p = Permutation(p)
    return "".join("(" + ",".join(str(q + 1) for q in c) + ")" for c in p.cycles())
