"""
Exhaustive and random searches for the largest |tau M| with M generated by
two transformations alpha, beta of Q and tau : Q -> {1..k} surjective.

The exhaustive search uses three reductions: alpha is a permutation, beta
runs over one representative per conjugacy class of Q^Q, and tau runs over
surjections.  Relabelling the outputs of tau does not change |tau M|, so
only surjections in restricted-growth form (first occurrences of outputs
appear in order 1, 2, ..., k) are evaluated; each is the lexicographically
least member of its relabelling class, so the first-found witness is the
same as with all surjections.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _kernels
from .complexity import stirling2
from .monoid import OutputMap, tau_orbit_size, v1n_generators
from .transforms import Permutation, Transformation, format_list

__all__ = [
    "SearchConfig",
    "SearchResult",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "conjugacy_class_count",
    "canonical_form",
    "conjugacy_class_reps",
    "surjections",
    "restricted_growth_maps",
    "estimate_brute_triples",
    "brute_force",
    "random_search",
    "check_unreachability",
    "ScanReport",
    "v1n_conjecture_scan",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
MAX_REPS_DEGREE = 7


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(f"estimated {estimate:,} triples exceeds budget {budget:,}")


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    mode: str = "brute"
    iterations: int = 1
    seed: int = 0
    parallelism: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.mode not in ("brute", "random"):
            raise ValueError(f"mode must be 'brute' or 'random', got {self.mode!r}")
        if not (1 <= self.k <= self.n):
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.mode == "random" and self.iterations < 1:
            raise ValueError("random search needs iterations >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    k: int
    n: int
    mode: str
    max_size: int
    witness_alpha: Permutation
    witness_beta: Transformation
    witness_tau: OutputMap
    triples_examined: int
    seed: int | None = None

    def recompute(self) -> int:
        return tau_orbit_size([self.witness_alpha, self.witness_beta], self.witness_tau, self.k)

    def to_record(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "mode": self.mode,
            "max": self.max_size,
            "alpha": self.witness_alpha.to_list(),
            "beta": self.witness_beta.to_list(),
            "tau": self.witness_tau.to_list(),
            "examined": self.triples_examined,
            "seed": self.seed,
        }


# -- conjugacy classes of Q^Q ----------------------------------------------


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def conjugacy_class_count(n: int) -> int:
    """Number of conjugacy classes of Q^Q, by Burnside's lemma.

    A map fixed by conjugation with g sends each g-cycle of length c onto a
    g-cycle whose length divides c, in d ways per target cycle of length d.
    """
    if n == 0:
        return 1
    total = 0
    for part in _partitions(n):
        mult = Counter(part)
        size = math.factorial(n)
        for d, c in mult.items():
            size //= d**c * math.factorial(c)
        fixed = 1
        for c in part:
            fixed *= sum(d * mult[d] for d in mult if c % d == 0)
        total += size * fixed
    return total // math.factorial(n)


@lru_cache(maxsize=None)
def _perm_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    inv = np.argsort(perms, axis=1)
    return perms, inv


def canonical_form(t: Sequence[int]) -> Transformation:
    """Lexicographically least g o t o g^-1 over all permutations g."""
    n = len(t)
    if n > MAX_REPS_DEGREE + 1:
        raise ValueError(f"degree {n} too large for canonical form")
    if n == 0:
        return Transformation(())
    perms, inv = _perm_arrays(n)
    t = np.asarray(t, dtype=np.int64)
    conj = np.take_along_axis(perms, t[inv], axis=1)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return Transformation(conj[np.argmin(conj @ weights)].tolist())


@lru_cache(maxsize=None)
def _class_rep_codes(n: int) -> tuple[int, ...]:
    perms, inv = _perm_arrays(n)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    total = n**n
    visited = np.zeros(total, dtype=bool)
    reps = []
    idx = 0
    while True:
        # The first unvisited code is the least element of a new class.
        rest = visited[idx:]
        off = int(np.argmin(rest))
        if rest[off]:
            break
        idx += off
        reps.append(idx)
        t = np.array([(idx // int(w)) % n for w in weights], dtype=np.int64)
        visited[np.take_along_axis(perms, t[inv], axis=1) @ weights] = True
    return tuple(reps)


def conjugacy_class_reps(n: int) -> list[Transformation]:
    """One transformation per conjugacy class, each the lexicographic least in its class, in lexicographic order."""
    if not (1 <= n <= MAX_REPS_DEGREE):
        raise ValueError(f"class representatives are enumerated for 1 <= n <= {MAX_REPS_DEGREE}, got {n}")
    out = []
    for c in _class_rep_codes(n):
        digits = [0] * n
        for q in range(n - 1, -1, -1):
            digits[q] = c % n
            c //= n
        out.append(Transformation(digits))
    return out


# -- output maps -------------------------------------------------------------


def surjections(n: int, k: int) -> list[OutputMap]:
    """All surjective maps {1..n} -> {1..k}, in lexicographic order."""
    if k > n:
        raise ValueError(f"no surjection from {n} states onto {k} outputs")
    if k < 1:
        return [] if n else [OutputMap((), 0)]
    return [OutputMap(f, k) for f in itertools.product(range(k), repeat=n) if len(set(f)) == k]


def restricted_growth_maps(n: int, k: int) -> list[OutputMap]:
    """Surjections whose outputs first appear in the order 1, 2, ..., k (one per set partition)."""
    if k > n:
        raise ValueError(f"no surjection from {n} states onto {k} outputs")
    out = []

    def rec(prefix: list[int], top: int):
        if len(prefix) == n:
            if top == k:
                out.append(OutputMap(prefix, k))
            return
        if k - top > n - len(prefix):
            return
        for v in range(min(top + 1, k)):
            prefix.append(v)
            rec(prefix, max(top, v + 1))
            prefix.pop()

    rec([], 0)
    return out


# -- exhaustive search -------------------------------------------------------


def estimate_brute_triples(n: int, k: int) -> int:
    """Triples evaluated by :func:`brute_force`: n! * #classes * S(n, k)."""
    return math.factorial(n) * conjugacy_class_count(n) * stirling2(n, k)


def _brute_task(n: int, k: int, beta_indices: Sequence[int]):
    perms, _ = _perm_arrays(n)
    reps = conjugacy_class_reps(n)
    taus = np.array(restricted_growth_maps(n, k), dtype=np.int64).reshape(-1, n)
    best = None
    examined = 0
    for b in beta_indices:
        size, a, t, count = _kernels.brute_shard(perms, np.asarray(reps[b], dtype=np.int64), taus, k)
        examined += int(count)
        key = (-int(size), int(a), b, int(t))
        if best is None or key < best:
            best = key
    return best, examined


def brute_force(config: SearchConfig) -> SearchResult:
    """Maximum of |tau <alpha, beta>| over the reduced search space.

    Ties go to the first triple in (alpha, beta representative, tau) order.
    Refuses with :class:`BudgetExceeded` when the triple count is over budget.
    """
    if config.mode != "brute":
        raise ValueError("brute_force needs mode='brute'")
    n, k = config.n, config.k
    estimate = estimate_brute_triples(n, k)
    if estimate > config.budget:
        raise BudgetExceeded(estimate, config.budget)
    reps = conjugacy_class_reps(n)
    workers = min(config.parallelism, len(reps))
    shards = [list(range(w, len(reps), workers)) for w in range(workers)]
    if workers == 1:
        parts = [_brute_task(n, k, shards[0])]
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_brute_task, [n] * workers, [k] * workers, shards))
    best = min(p[0] for p in parts)
    examined = sum(p[1] for p in parts)
    perms, _ = _perm_arrays(n)
    size, a, b, t = best
    result = SearchResult(
        k=k,
        n=n,
        mode="brute",
        max_size=-size,
        witness_alpha=Permutation(perms[a].tolist()),
        witness_beta=reps[b],
        witness_tau=restricted_growth_maps(n, k)[t],
        triples_examined=examined,
    )
    _check_witness(result)
    return result


def _check_witness(result: SearchResult) -> None:
    again = result.recompute()
    if again != result.max_size:
        raise RuntimeError(f"witness recomputes to {again}, search reported {result.max_size}")


# -- random search -----------------------------------------------------------

_BATCH = 4096


def _random_surjections(rng: np.random.Generator, count: int, n: int, k: int) -> np.ndarray:
    taus = rng.integers(0, k, size=(count, n))
    while True:
        bad = np.zeros(count, dtype=bool)
        for v in range(k):
            bad |= ~(taus == v).any(axis=1)
        if not bad.any():
            return taus
        taus[bad] = rng.integers(0, k, size=(int(bad.sum()), n))


def _random_task(n: int, k: int, iterations: int, seed_seq: np.random.SeedSequence):
    rng = np.random.default_rng(seed_seq)
    best = None
    done = 0
    base = np.tile(np.arange(n, dtype=np.int64), (_BATCH, 1))
    while done < iterations:
        count = min(_BATCH, iterations - done)
        alphas = rng.permuted(base[:count], axis=1)
        betas = rng.integers(0, n, size=(count, n))
        taus = _random_surjections(rng, count, n, k)
        sizes = _kernels.sample_sizes(alphas, betas, taus, k)
        i = int(np.argmax(sizes))
        if best is None or sizes[i] > best[0]:
            best = (int(sizes[i]), alphas[i].tolist(), betas[i].tolist(), taus[i].tolist())
        done += count
    return best


def random_search(config: SearchConfig) -> SearchResult:
    """Best |tau <alpha, beta>| over uniformly random samples.

    alpha is a uniform permutation, beta a uniform transformation and tau a
    uniform surjection.  Worker w draws from the w-th child of
    ``SeedSequence(seed)``, so results depend only on (seed, iterations,
    parallelism).
    """
    if config.mode != "random":
        raise ValueError("random_search needs mode='random'")
    n, k = config.n, config.k
    workers = min(config.parallelism, config.iterations)
    children = np.random.SeedSequence(config.seed).spawn(workers)
    quotas = [config.iterations // workers + (w < config.iterations % workers) for w in range(workers)]
    if workers == 1:
        parts = [_random_task(n, k, quotas[0], children[0])]
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_random_task, [n] * workers, [k] * workers, quotas, children))
    # Earliest worker wins ties.
    best = max(parts, key=lambda p: p[0])
    result = SearchResult(
        k=k,
        n=n,
        mode="random",
        max_size=best[0],
        witness_alpha=Permutation(best[1]),
        witness_beta=Transformation(best[2]),
        witness_tau=OutputMap(best[3], k),
        triples_examined=config.iterations,
        seed=config.seed,
    )
    _check_witness(result)
    return result


def check_unreachability(k: int, n: int, **kwargs) -> bool:
    """True iff no binary-input machine reaches k^n, by exhaustive search."""
    return brute_force(SearchConfig(n=n, k=k, mode="brute", **kwargs)).max_size < k**n


# -- V^1_n scan with two outputs ---------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    n: int
    alpha: Permutation
    beta: Transformation
    sizes: dict[OutputMap, int] = field(repr=False)

    @property
    def attaining(self) -> list[OutputMap]:
        """Output maps whose orbit has all 2^n functions."""
        return sorted(t for t, s in self.sizes.items() if s == 2**self.n)

    def size_counts(self) -> dict[int, int]:
        return dict(Counter(self.sizes.values()))

    def summary(self) -> str:
        att = self.attaining
        shown = ", ".join(format_list(t.to_list()) for t in att[:4])
        more = "" if len(att) <= 4 else f", ... ({len(att)} total)"
        return f"n={self.n}: {len(att)}/{len(self.sizes)} surjective tau reach {2 ** self.n} [{shown}{more}]; sizes {self.size_counts()}"


def v1n_conjecture_scan(n: int) -> ScanReport:
    """|tau V^1_n| for every surjective tau onto two outputs."""
    alpha, beta = v1n_generators(n)
    sizes = {tau: tau_orbit_size([alpha, beta], tau, 2) for tau in surjections(n, 2)}
    return ScanReport(n, alpha, beta, sizes)
