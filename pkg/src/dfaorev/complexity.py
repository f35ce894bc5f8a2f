"""
Closed forms for |tau U_{l,m}| and the resulting lower bound, plus the
explicit output map used to attain it.

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple, Sequence

from .monoid import OutputMap, u_lm_alpha

__all__ = [
    "stirling2",
    "formula_F",
    "formula_G",
    "tau_ulm_size",
    "valid_splits",
    "CorollaryBound",
    "corollary_lower_bound",
    "lemma_tau",
    "LemmaCheck",
    "verify_lemma_tau",
]


@lru_cache(maxsize=None)
def stirling2(l: int, i: int) -> int:
    """Number of partitions of an l-set into i nonempty blocks.

    S(0, 0) = 1; S(l, 0) = 0 for l > 0; S(l, i) = 0 for i > l.
    """
    if l < 0 or i < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if i > l:
        return 0
    if i == 0:
        return 1 if l == 0 else 0
    if i == l:
        return 1
    return i * stirling2(l - 1, i) + stirling2(l - 1, i - 1)


def formula_F(k: int, l: int, m: int) -> int:
    """Number of maps {1..l+m} -> {1..k} whose images on {1..l} and {l+1..l+m} are disjoint."""
    if k < 2 or l < 1 or m < 1:
        raise ValueError(f"need k >= 2 and l, m >= 1, got k={k}, l={l}, m={m}")
    return sum(
        math.comb(k, i) * math.factorial(i) * stirling2(l, i) * (k - i) ** m
        for i in range(1, l + 1)
    )


def formula_G(k: int, l: int, m: int) -> int:
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if k >= 4:
        return math.lcm(l, m)
    if k == 3:
        return m
    return 1


def _check_theorem_params(k: int, l: int, m: int) -> None:
    if not (2 <= k < l + m) or not (1 <= l <= m):
        raise ValueError(f"need 2 <= k < l+m and 1 <= l <= m, got k={k}, l={l}, m={m}")


def tau_ulm_size(k: int, l: int, m: int) -> int:
    """k^n - F(k,l,m) + G(k,l,m), with n = l + m."""
    _check_theorem_params(k, l, m)
    return k ** (l + m) - formula_F(k, l, m) + formula_G(k, l, m)


def valid_splits(n: int) -> list[tuple[int, int]]:
    """All (l, m) with 1 < l < m, l + m = n, gcd(l, m) = 1."""
    return [(l, n - l) for l in range(2, n) if l < n - l and math.gcd(l, n - l) == 1]


class CorollaryBound(NamedTuple):
    value: int
    l: int
    m: int


def corollary_lower_bound(k: int, n: int) -> CorollaryBound:
    """Max of k^n - F + G over the valid (l, m) splits of n, with the first maximizing split."""
    if k < 2 or k >= n:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
    splits = valid_splits(n)
    if not splits:
        raise ValueError(f"lower bound undefined for n={n}: no split 1 < l < m with gcd(l, m) = 1")
    best = None
    for l, m in splits:
        v = tau_ulm_size(k, l, m)
        if best is None or v > best.value:
            best = CorollaryBound(v, l, m)
    return best


def lemma_tau(k: int, l: int, m: int) -> OutputMap:
    """The output map built in the existence lemma for |tau U_{l,m}|."""
    _check_theorem_params(k, l, m)
    n = l + m
    if k == 2:
        return OutputMap([0] * l + [1] * m, k)
    if (l, m) == (2, 2):
        return OutputMap.from_list([1, 2, 3, 3], k)
    out = [0] * n
    lsize = min(k - 2, l)
    if lsize == l:
        for i in range(l):
            out[i] = i + 1
        j = k - l
        for i in range(1, m + 1):
            out[l + i - 1] = l + min(i, j)
    else:
        for i in range(1, l + 1):
            out[i - 1] = min(i, k - 2)
        out[l] = k - 1
        for i in range(2, m + 1):
            out[l + i - 1] = k
    return OutputMap.from_list(out, k)


class LemmaCheck(NamedTuple):
    surjective: bool
    disjoint_parts: bool
    repeated_in_second_part: bool
    alpha_orbit_ok: bool
    alpha_orbit_size: int

    def all(self) -> bool:
        return self.surjective and self.disjoint_parts and self.repeated_in_second_part and self.alpha_orbit_ok


def verify_lemma_tau(tau: Sequence[int], k: int, l: int, m: int) -> LemmaCheck:
    n = l + m
    if len(tau) != n:
        raise ValueError(f"tau has {len(tau)} states, expected {n}")
    tau = tuple(tau)
    second = tau[l:]
    alpha = u_lm_alpha(l, m)
    orbit = set()
    cur = tau
    for _ in range(alpha.order()):
        orbit.add(cur)
        cur = tuple(cur[x] for x in alpha)
    return LemmaCheck(
        surjective=set(tau) == set(range(k)),
        disjoint_parts=not (set(tau[:l]) & set(second)),
        repeated_in_second_part=len(set(second)) < len(second),
        alpha_orbit_ok=len(orbit) == formula_G(k, l, m),
        alpha_orbit_size=len(orbit),
    )
