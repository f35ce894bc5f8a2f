"""Compiled inner loops.

Functions Q -> D (|Q| = n, |D| = k) are encoded as integers in radix k, with
state 0 as the most significant digit, so integer order equals lexicographic
order of the image lists.  A transformation of Q is the case k = n.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def encode(values, k):
    code = 0
    for v in values:
        code = code * k + v
    return code


@njit(cache=True)
def decode(code, n, k, out):
    for q in range(n - 1, -1, -1):
        out[q] = code % k
        code //= k


@njit(cache=True)
def action_table(gen, k):
    """table[code(g)] = code(g o gen) for every g : Q -> D."""
    n = gen.shape[0]
    size = k**n
    table = np.empty(size, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    for c in range(size):
        decode(c, n, k, digits)
        r = 0
        for q in range(n):
            r = r * k + digits[gen[q]]
        table[c] = r
    return table


@njit(cache=True)
def orbit_size(tables, start, stamps, stamp, queue):
    """BFS size of the orbit of ``start`` under the given action tables.

    ``stamps`` is reused across calls; a cell is visited iff it equals ``stamp``.
    """
    ngen = tables.shape[0]
    stamps[start] = stamp
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        c = queue[head]
        head += 1
        for g in range(ngen):
            d = tables[g, c]
            if stamps[d] != stamp:
                stamps[d] = stamp
                queue[tail] = d
                tail += 1
    return tail


@njit(cache=True)
def brute_shard(perms, beta, taus, k):
    """Best orbit size over all alpha in ``perms`` and tau in ``taus`` for a fixed beta.

    Returns (best, alpha index, tau index, triples examined).  The first
    strict improvement in (alpha, tau) order wins ties.
    """
    n = beta.shape[0]
    size = k**n
    tables = np.empty((2, size), dtype=np.int64)
    tables[1, :] = action_table(beta, k)
    stamps = np.zeros(size, dtype=np.int64)
    queue = np.empty(size, dtype=np.int64)
    tau_codes = np.empty(taus.shape[0], dtype=np.int64)
    for j in range(taus.shape[0]):
        tau_codes[j] = encode(taus[j], k)
    best = -1
    best_a = -1
    best_t = -1
    stamp = 0
    for a in range(perms.shape[0]):
        tables[0, :] = action_table(perms[a], k)
        for j in range(taus.shape[0]):
            stamp += 1
            s = orbit_size(tables, tau_codes[j], stamps, stamp, queue)
            if s > best:
                best = s
                best_a = a
                best_t = j
    return best, best_a, best_t, perms.shape[0] * taus.shape[0]


@njit(cache=True)
def sample_sizes(alphas, betas, taus, k):
    """Orbit size of taus[i] under <alphas[i], betas[i]> for each sample i."""
    count = alphas.shape[0]
    n = alphas.shape[1]
    size = k**n
    tables = np.empty((2, size), dtype=np.int64)
    stamps = np.zeros(size, dtype=np.int64)
    queue = np.empty(size, dtype=np.int64)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        tables[0, :] = action_table(alphas[i], k)
        tables[1, :] = action_table(betas[i], k)
        out[i] = orbit_size(tables, encode(taus[i], k), stamps, i + 1, queue)
    return out


@njit(cache=True)
def closure_codes(gens):
    """Codes (radix n) of every element of the monoid generated by ``gens``, identity included."""
    ngen = gens.shape[0]
    n = gens.shape[1]
    size = n**n
    seen = np.zeros(size, dtype=np.bool_)
    queue = np.empty(size, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    start = 0
    for q in range(n):
        start = start * n + q
    seen[start] = True
    queue[0] = start
    head = 0
    tail = 1
    while head < tail:
        c = queue[head]
        head += 1
        decode(c, n, n, digits)
        for g in range(ngen):
            r = 0
            for q in range(n):
                r = r * n + digits[gens[g, q]]
            if not seen[r]:
                seen[r] = True
                queue[tail] = r
                tail += 1
    return queue[:tail].copy()
