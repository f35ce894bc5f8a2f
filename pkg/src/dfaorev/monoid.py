"""
Transformation monoids: closure from generators, tau-orbits, and the
U_{l,m} / V^d_n families with their membership predicates and generators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .transforms import Permutation, Transformation, format_list, parse_list

__all__ = [
    "OutputMap",
    "MonoidClosure",
    "ClosureTooLarge",
    "GeneratorValidationError",
    "close",
    "closure_size",
    "tau_orbit",
    "tau_orbit_size",
    "u_lm_alpha",
    "u_lm_contains",
    "u_lm_candidates",
    "u_lm_generators",
    "u_lm_size",
    "v_dn_contains",
    "v_dn_size",
    "v_n_generators",
    "v1n_generators",
    "full_tm_generators",
    "MAX_ENUM_DEGREE",
]

# n**n enumeration and closure bitmaps stay under ~17M entries.
MAX_ENUM_DEGREE = 8


class ClosureTooLarge(RuntimeError):
    pass


class GeneratorValidationError(RuntimeError):
    pass


class OutputMap(tuple):
    """A function tau : Q -> {0, ..., k-1}, stored as a tuple of 0-based outputs.

    ``k`` is the size of the output alphabet; it defaults to ``max + 1``.
    """

    def __new__(cls, values: Iterable[int] = (), k: int | None = None):
        self = super().__new__(cls, values)
        if k is None:
            k = max(self, default=-1) + 1
        for v in self:
            if not (0 <= v < k):
                raise ValueError(f"output {v + 1} out of range 1..{k}")
        self.k = k
        return self

    @classmethod
    def from_list(cls, values: Iterable[int], k: int | None = None):
        """Build from 1-based outputs."""
        return cls((v - 1 for v in values), k)

    @classmethod
    def parse(cls, text: str, k: int | None = None):
        return cls.from_list(parse_list(text), k)

    @property
    def degree(self) -> int:
        return len(self)

    def is_surjective(self) -> bool:
        return len(set(self)) == self.k

    def after(self, t: Sequence[int]) -> "OutputMap":
        """tau o t."""
        if len(t) != len(self):
            raise ValueError(f"degree mismatch: {len(self)} vs {len(t)}")
        return OutputMap(map(self.__getitem__, t), self.k)

    def to_list(self) -> list[int]:
        return [v + 1 for v in self]

    def __str__(self) -> str:
        return format_list(self.to_list())

    def __repr__(self) -> str:
        return f"OutputMap({format_list(self.to_list())}, k={self.k})"

    def __reduce__(self):
        return (OutputMap, (tuple(self), self.k))


@dataclass(frozen=True)
class MonoidClosure:
    degree: int
    generators: tuple[Transformation, ...]
    elements: frozenset[Transformation] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, t) -> bool:
        return tuple(t) in self.elements

    def __iter__(self):
        return iter(self.elements)


def _degree_of(generators: Sequence[Sequence[int]]) -> int:
    if not generators:
        raise ValueError("empty generator list")
    n = len(generators[0])
    for g in generators:
        if len(g) != n:
            raise ValueError(f"degree mismatch among generators: {len(g)} vs {n}")
    return n


def close(generators: Sequence[Sequence[int]], limit: int | None = None) -> MonoidClosure:
    """Materialize the monoid generated by ``generators`` (identity included).

    Raises :class:`ClosureTooLarge` once more than ``limit`` elements are found.
    """
    n = _degree_of(generators)
    gens = [tuple(g) for g in generators]
    ident = tuple(range(n))
    seen = {ident}
    stack = [ident]
    while stack:
        x = stack.pop()
        for g in gens:
            y = tuple(map(g.__getitem__, x))
            if y not in seen:
                seen.add(y)
                stack.append(y)
                if limit is not None and len(seen) > limit:
                    raise ClosureTooLarge(f"closure exceeds {limit} elements")
    elements = frozenset(tuple.__new__(Transformation, x) for x in seen)
    return MonoidClosure(n, tuple(Transformation(g) for g in gens), elements)


def closure_size(generators: Sequence[Sequence[int]]) -> int:
    """|<generators>| via the compiled closure; for degrees up to 8."""
    return len(_closure_codes(generators))


def _closure_codes(generators) -> np.ndarray:
    n = _degree_of(generators)
    if n > MAX_ENUM_DEGREE:
        raise ValueError(f"degree {n} too large for compiled closure (max {MAX_ENUM_DEGREE})")
    return _kernels.closure_codes(np.asarray(generators, dtype=np.int64).reshape(len(generators), n))


def _orbit_codes(generators: Sequence[Sequence[int]], tau: Sequence[int], k: int) -> np.ndarray:
    """Level-synchronous BFS of tau under right composition, on radix-k codes."""
    n = len(tau)
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    start = int(np.dot(np.asarray(tau, dtype=np.int64), weights))
    total = k**n
    use_bitmap = total <= 1 << 26
    if use_bitmap:
        seen = np.zeros(total, dtype=bool)
        seen[start] = True
    else:
        seen_set = {start}
    found = [np.array([start], dtype=np.int64)]
    frontier = found[0]
    while frontier.size:
        digits = (frontier[:, None] // weights) % k
        new = np.unique(np.concatenate([digits[:, g] @ weights for g in gens]))
        if use_bitmap:
            new = new[~seen[new]]
            seen[new] = True
        else:
            new = np.array([c for c in new.tolist() if c not in seen_set], dtype=np.int64)
            seen_set.update(new.tolist())
        found.append(new)
        frontier = new
    return np.concatenate(found)


def tau_orbit(generators: Sequence[Sequence[int]], tau: Sequence[int], k: int | None = None) -> frozenset[OutputMap]:
    """The set tau M = {tau o m : m in M} for M generated by ``generators``.

    Computed as the orbit of tau under right composition with the
    generators, without materializing M.
    """
    n = _degree_of(generators)
    if len(tau) != n:
        raise ValueError(f"degree mismatch: tau has {len(tau)} states, generators {n}")
    k = k or getattr(tau, "k", None) or max(tau) + 1
    codes = _orbit_codes(generators, tau, k)
    weights = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (codes[:, None] // weights) % k
    return frozenset(OutputMap(row, k) for row in digits.tolist())


def tau_orbit_size(generators: Sequence[Sequence[int]], tau: Sequence[int], k: int | None = None) -> int:
    n = _degree_of(generators)
    if len(tau) != n:
        raise ValueError(f"degree mismatch: tau has {len(tau)} states, generators {n}")
    k = k or getattr(tau, "k", None) or max(tau) + 1
    return len(_orbit_codes(generators, tau, k))


# -- enumeration helpers ---------------------------------------------------


def _all_maps(n: int, chunk: int = 1 << 21):
    """Yield (codes, digits) blocks covering every map Q -> Q in code order."""
    if n > MAX_ENUM_DEGREE:
        raise ValueError(f"degree {n} too large for enumeration (max {MAX_ENUM_DEGREE})")
    total = n**n
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        yield codes, (codes[:, None] // weights) % n


def _power_codes(alpha: Sequence[int]) -> np.ndarray:
    n = len(alpha)
    out = []
    p = tuple(range(n))
    while True:
        c = 0
        for x in p:
            c = c * n + x
        if c in out:
            return np.array(out, dtype=np.int64)
        out.append(c)
        p = tuple(alpha[x] for x in p)


def _powers(alpha: Sequence[int]) -> set[tuple[int, ...]]:
    n = len(alpha)
    p = tuple(range(n))
    out = set()
    while p not in out:
        out.add(p)
        p = tuple(alpha[x] for x in p)
    return out


# -- U_{l,m} ---------------------------------------------------------------


def u_lm_alpha(l: int, m: int) -> Permutation:
    """The permutation (1..l)(l+1..l+m)."""
    return Permutation([(i + 1) % l for i in range(l)] + [l + (i + 1) % m for i in range(m)])


def u_lm_contains(t: Sequence[int], l: int, m: int) -> bool:
    n = l + m
    if len(t) != n:
        raise ValueError(f"degree {len(t)} does not match l+m = {n}")
    t = tuple(t)
    if t in _powers_cached(l, m):
        return True
    left = set(t[:l])
    right = set(t[l:])
    image = left | right
    return bool(left & right) and any(i not in image for i in range(l, n))


@lru_cache(maxsize=None)
def _powers_cached(l: int, m: int) -> frozenset:
    return frozenset(_powers(u_lm_alpha(l, m)))


def _u_lm_mask(codes: np.ndarray, digits: np.ndarray, l: int, m: int, powers: np.ndarray) -> np.ndarray:
    bits = np.left_shift(1, digits)
    left = np.bitwise_or.reduce(bits[:, :l], axis=1)
    right = np.bitwise_or.reduce(bits[:, l:], axis=1)
    upper = ((1 << (l + m)) - 1) ^ ((1 << l) - 1)
    misses_upper = ((left | right) & upper) != upper
    return np.isin(codes, powers) | (((left & right) != 0) & misses_upper)


@lru_cache(maxsize=None)
def u_lm_size(l: int, m: int) -> int:
    """|U_{l,m}| by testing every map Q -> Q against the definition."""
    n = l + m
    if n > MAX_ENUM_DEGREE:
        raise ValueError(f"l+m = {n} too large for enumeration (max {MAX_ENUM_DEGREE})")
    powers = _power_codes(u_lm_alpha(l, m))
    return int(sum(_u_lm_mask(c, d, l, m, powers).sum() for c, d in _all_maps(n)))


def u_lm_candidates(l: int, m: int) -> tuple[Transformation, Transformation]:
    """The two published choices for the second generator of U_{l,m}.

    First: 1 -> l+1, n -> 1, everything else fixed.  Second: as the first,
    but with 2 and 3 exchanged.
    """
    n = l + m
    first = [l] + list(range(1, n - 1)) + [0]
    second = list(first)
    second[1], second[2] = 2, 1
    return Transformation(first), Transformation(second)


@lru_cache(maxsize=None)
def u_lm_generators(l: int, m: int) -> tuple[Permutation, Transformation]:
    """(alpha, beta) generating U_{l,m}, for 1 < l < m with gcd(l, m) = 1.

    Each candidate beta is checked by computing the closure of {alpha, beta}
    and comparing it against the membership predicate and the enumerated
    size of U_{l,m}; the first candidate that passes is returned.
    """
    if not (1 < l < m) or math.gcd(l, m) != 1:
        raise ValueError(f"need 1 < l < m and gcd(l, m) = 1, got l={l}, m={m}")
    n = l + m
    if n > MAX_ENUM_DEGREE:
        raise GeneratorValidationError(f"cannot validate generators for l+m = {n} > {MAX_ENUM_DEGREE}")
    alpha = u_lm_alpha(l, m)
    target = u_lm_size(l, m)
    powers = _power_codes(alpha)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for beta in u_lm_candidates(l, m):
        codes = _closure_codes([alpha, beta])
        if len(codes) != target:
            continue
        digits = (codes[:, None] // weights) % n
        if _u_lm_mask(codes, digits, l, m, powers).all():
            return alpha, beta
    raise GeneratorValidationError(f"neither candidate generates U_{{{l},{m}}} (size {target})")


# -- V^d_n -----------------------------------------------------------------


def _cycle(n: int) -> Permutation:
    return Permutation((i + 1) % n for i in range(n))


def v_dn_contains(t: Sequence[int], d: int, n: int | None = None) -> bool:
    """Membership in V^d_n: a power of (1..n), or t(i) = t(j) for distinct i, j with j = i + d mod n.

    For d = n the distance condition is vacuous and any collapsed pair counts,
    so V^n_n is the powers of the cycle plus every non-injective map.
    """
    n = len(t) if n is None else n
    if len(t) != n:
        raise ValueError(f"degree {len(t)} does not match n = {n}")
    if not (1 <= d <= n):
        raise ValueError(f"need 1 <= d <= n, got d={d}")
    t = tuple(t)
    if d == n:
        if len(set(t)) < n:
            return True
    elif any(t[i] == t[(i + d) % n] for i in range(n)):
        return True
    return t in _powers(_cycle(n))


def _v_dn_mask(codes, digits, d, n, powers):
    mask = np.isin(codes, powers)
    if d == n:
        for i, j in itertools.combinations(range(n), 2):
            mask |= digits[:, i] == digits[:, j]
        return mask
    for i in range(n):
        mask |= digits[:, i] == digits[:, (i + d) % n]
    return mask


@lru_cache(maxsize=None)
def v_dn_size(d: int, n: int) -> int:
    """|V^d_n| by testing every map Q -> Q."""
    if not (1 <= d <= n):
        raise ValueError(f"need 1 <= d <= n, got d={d}")
    powers = _power_codes(_cycle(n))
    return int(sum(_v_dn_mask(c, dg, d, n, powers).sum() for c, dg in _all_maps(n)))


_BETA_N = {
    2: [1, 1],
    3: [1, 1, 3],
    4: [1, 1, 4, 3],
    5: [1, 1, 4, 5, 3],
    6: [1, 4, 1, 5, 6, 2],
}


def v_n_generators(n: int) -> tuple[Permutation, Transformation]:
    """(alpha_n, beta_n) for the largest 2-generated monoids of degree 2..6."""
    if n not in _BETA_N:
        raise ValueError(f"hard-coded generators exist only for 2 <= n <= 6, got {n}")
    return _cycle(n), Transformation.from_list(_BETA_N[n])


@lru_cache(maxsize=None)
def v1n_generators(n: int) -> tuple[Permutation, Transformation]:
    """A generating pair for V^1_n, checked against the enumerated size.

    Tries the hard-coded pair (when it exists) and then
    beta = [1,1,4,5,...,n,3]: merge 1 and 2, cycle 3..n.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if n > MAX_ENUM_DEGREE:
        raise GeneratorValidationError(f"cannot validate V^1_{n} generators for n > {MAX_ENUM_DEGREE}")
    alpha = _cycle(n)
    candidates = []
    if n in _BETA_N:
        candidates.append(Transformation.from_list(_BETA_N[n]))
    if n >= 3:
        candidates.append(Transformation.from_list([1, 1] + list(range(4, n + 1)) + [3]))
    target = v_dn_size(1, n)
    powers = _power_codes(alpha)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for beta in candidates:
        codes = _closure_codes([alpha, beta])
        if len(codes) != target:
            continue
        digits = (codes[:, None] // weights) % n
        if _v_dn_mask(codes, digits, 1, n, powers).all():
            return alpha, beta
    raise GeneratorValidationError(f"no validated generating pair for V^1_{n}")


def full_tm_generators(n: int) -> tuple[Permutation, Permutation, Transformation]:
    """(1,2,...,n), (1,2) and the map sending 1 to 2; together they generate all of Q^Q."""
    if n < 1:
        raise ValueError("need n >= 1")
    f1 = _cycle(n)
    f2 = list(range(n))
    f3 = list(range(n))
    if n >= 2:
        f2[0], f2[1] = 1, 0
        f3[0] = 1
    return f1, Permutation(f2), Transformation(f3)
