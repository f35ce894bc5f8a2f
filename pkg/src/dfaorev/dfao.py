"""
Deterministic finite automata with output (DFAOs).

States and letters are 0-based in the Python API; the text format and all
printed forms are 1-based.  A machine computes f(w) = tau(q0 . w).

Text format::

    # comments start with '#'
    dfao n=3 sigma=2 k=2 q0=1
    a1: [2,3,1]
    a2: [1,1,3]
    tau: [1,2,2]
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .monoid import ClosureTooLarge, OutputMap, close, tau_orbit_size
from .transforms import Transformation, compose, format_list, identity, parse_list

__all__ = [
    "Dfao",
    "ReversedDfao",
    "NotTrimError",
    "DfaoParseError",
    "ComplexityMismatch",
    "evaluate",
    "word_action",
    "reachable_states",
    "is_trim",
    "trim",
    "minimize",
    "reverse",
    "reversal_complexities",
    "reversal_state_complexity",
    "parse_dfao",
    "format_dfao",
    "random_dfao",
]


class NotTrimError(ValueError):
    pass


class ComplexityMismatch(AssertionError):
    pass


class DfaoParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


@dataclass(frozen=True)
class Dfao:
    """n states, ``sigma`` letters with actions ``delta[a]``, initial state and output map."""

    n: int
    sigma: int
    delta: tuple[Transformation, ...]
    initial: int
    tau: OutputMap

    def __post_init__(self):
        delta = tuple(Transformation(t) for t in self.delta)
        object.__setattr__(self, "delta", delta)
        if not isinstance(self.tau, OutputMap):
            object.__setattr__(self, "tau", OutputMap(self.tau))
        if len(delta) != self.sigma:
            raise ValueError(f"expected {self.sigma} letter actions, got {len(delta)}")
        for a, t in enumerate(delta):
            if len(t) != self.n:
                raise ValueError(f"letter {a + 1} action has degree {len(t)}, expected {self.n}")
        if not (0 <= self.initial < self.n):
            raise ValueError(f"initial state {self.initial + 1} out of range 1..{self.n}")
        if len(self.tau) != self.n:
            raise ValueError(f"output map has {len(self.tau)} entries, expected {self.n}")

    @property
    def k(self) -> int:
        return self.tau.k

    def step(self, q: int, w: Sequence[int]) -> int:
        for a in w:
            if not (0 <= a < self.sigma):
                raise ValueError(f"letter {a + 1} out of range 1..{self.sigma}")
            q = self.delta[a][q]
        return q

    def eval(self, w: Sequence[int]) -> int:
        return self.tau[self.step(self.initial, w)]

    def eval_from(self, q: int, w: Sequence[int]) -> int:
        return self.tau[self.step(q, w)]


def evaluate(d: Dfao, w: Sequence[int]) -> int:
    return d.eval(w)


def word_action(d: Dfao, w: Sequence[int]) -> Transformation:
    """The map q -> q . w; note word_action(xy) = word_action(y) o word_action(x)."""
    t = identity(d.n)
    for a in w:
        if not (0 <= a < d.sigma):
            raise ValueError(f"letter {a + 1} out of range 1..{d.sigma}")
        t = compose(d.delta[a], t)
    return Transformation(t)


def reachable_states(d: Dfao) -> set[int]:
    seen = {d.initial}
    todo = [d.initial]
    while todo:
        q = todo.pop()
        for t in d.delta:
            r = t[q]
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def is_trim(d: Dfao) -> bool:
    return len(reachable_states(d)) == d.n


def _restrict(d: Dfao, blocks: Sequence[int], count: int) -> Dfao:
    """Quotient of d by a state -> block map that is compatible with the transitions."""
    rep = {}
    for q, b in enumerate(blocks):
        if b >= 0:
            rep.setdefault(b, q)
    delta = [[blocks[t[rep[b]]] for b in range(count)] for t in d.delta]
    tau = OutputMap([d.tau[rep[b]] for b in range(count)], d.k)
    return Dfao(count, d.sigma, tuple(Transformation(x) for x in delta), blocks[d.initial], tau)


def trim(d: Dfao) -> Dfao:
    """Drop unreachable states; survivors keep their relative order."""
    keep = sorted(reachable_states(d))
    if len(keep) == d.n:
        return d
    blocks = [-1] * d.n
    for i, q in enumerate(keep):
        blocks[q] = i
    return _restrict(d, blocks, len(keep))


def _refine(d: Dfao) -> list[int]:
    """Moore partition refinement; returns the block index of each state."""
    blocks = list(d.tau)
    count = len(set(blocks))
    while True:
        sigs = {}
        new = []
        for q in range(d.n):
            key = (blocks[q],) + tuple(blocks[t[q]] for t in d.delta)
            new.append(sigs.setdefault(key, len(sigs)))
        if len(sigs) == count:
            return new
        blocks, count = new, len(sigs)


def minimize(d: Dfao) -> Dfao:
    """Trim, then merge indistinguishable states."""
    d = trim(d)
    blocks = _refine(d)
    count = max(blocks) + 1
    if count == d.n:
        return d
    return _restrict(d, blocks, count)


@dataclass(frozen=True)
class ReversedDfao:
    """Reachable part of the reversal construction.

    State i is the function ``states[i]`` : Q -> outputs; the initial state
    is index 0 (the source output map), reading letter a sends g to
    g o delta[a], and the output of g is g(q0).
    """

    states: tuple[OutputMap, ...]
    delta: tuple[Transformation, ...]
    outputs: OutputMap
    source_initial: int

    initial = 0

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def sigma(self) -> int:
        return len(self.delta)

    @property
    def k(self) -> int:
        return self.outputs.k

    def to_dfao(self) -> Dfao:
        return Dfao(self.n, self.sigma, self.delta, 0, self.outputs)

    def eval(self, w: Sequence[int]) -> int:
        g = 0
        for a in w:
            g = self.delta[a][g]
        return self.outputs[g]


def reverse(d: Dfao) -> ReversedDfao:
    """The reachable reversal machine computing w -> f(w^R).

    For trim input every state is distinguishable from every other, so the
    result is already minimal.
    """
    if not is_trim(d):
        raise NotTrimError("reverse() needs a trim machine; call trim() first")
    k, n = d.k, d.n
    weights = [k ** (n - 1 - q) for q in range(n)]

    def encode(g):
        return sum(v * w for v, w in zip(g, weights))

    start = tuple(d.tau)
    index = {encode(start): 0}
    states = [start]
    rows = [[] for _ in d.delta]
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for a, t in enumerate(d.delta):
            h = tuple(map(g.__getitem__, t))
            c = encode(h)
            i = index.get(c)
            if i is None:
                i = index[c] = len(states)
                states.append(h)
                queue.append(h)
            rows[a].append(i)
    q0 = d.initial
    return ReversedDfao(
        states=tuple(OutputMap(g, k) for g in states),
        delta=tuple(Transformation(r) for r in rows),
        outputs=OutputMap([g[q0] for g in states], k),
        source_initial=q0,
    )


def reversal_complexities(d: Dfao, closure_limit: int = 250_000) -> dict[str, int | None]:
    """State complexity of the reversed function, three ways.

    ``reachable``: states of :func:`reverse`; ``orbit``: |tau M| by orbit BFS;
    ``closure``: |{tau o m : m in M}| from the materialized monoid, or None
    when M has more than ``closure_limit`` elements.
    """
    if not is_trim(d):
        raise NotTrimError("state complexity of reversal is defined here for trim machines only")
    out: dict[str, int | None] = {
        "reachable": reverse(d).n,
        "orbit": tau_orbit_size(d.delta, d.tau, d.k) if d.sigma else 1,
    }
    try:
        m = close(d.delta, limit=closure_limit) if d.sigma else None
    except ClosureTooLarge:
        out["closure"] = None
    else:
        elems = m.elements if m is not None else [identity(d.n)]
        out["closure"] = len({tuple(map(d.tau.__getitem__, e)) for e in elems})
    return out


def reversal_state_complexity(d: Dfao, closure_limit: int = 250_000) -> int:
    """|tau M|; raises :class:`ComplexityMismatch` if the computations disagree."""
    vals = reversal_complexities(d, closure_limit)
    got = {v for v in vals.values() if v is not None}
    if len(got) != 1:
        raise ComplexityMismatch(f"reversal complexity methods disagree: {vals}")
    return got.pop()


# -- text format -----------------------------------------------------------

_HEADER_RE = re.compile(r"^dfao((?:\s+\w+\s*=\s*\d+)*)\s*$")
_FIELD_RE = re.compile(r"(\w+)\s*=\s*(\d+)")
_ROW_RE = re.compile(r"^(a(\d+)|tau)\s*:\s*(\[.*\])\s*$")


def parse_dfao(text: str) -> Dfao:
    header = None
    rows: dict[int, list[int]] = {}
    tau = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise DfaoParseError("expected header 'dfao n=<n> sigma=<s> k=<k> q0=<q>'", lineno)
            header = {key: int(v) for key, v in _FIELD_RE.findall(m.group(1))}
            missing = {"n", "sigma", "k", "q0"} - header.keys()
            if missing:
                raise DfaoParseError(f"header missing {', '.join(sorted(missing))}", lineno)
            continue
        m = _ROW_RE.match(line)
        if not m:
            raise DfaoParseError(f"unrecognized line {raw.strip()!r}", lineno)
        try:
            values = parse_list(m.group(3))
        except ValueError as exc:
            raise DfaoParseError(str(exc), lineno) from None
        if len(values) != header["n"]:
            raise DfaoParseError(f"expected {header['n']} entries, got {len(values)}", lineno)
        if m.group(1) == "tau":
            if any(not (1 <= v <= header["k"]) for v in values):
                raise DfaoParseError(f"outputs must lie in 1..{header['k']}", lineno)
            tau = values
        else:
            a = int(m.group(2))
            if not (1 <= a <= header["sigma"]):
                raise DfaoParseError(f"letter a{a} out of range 1..{header['sigma']}", lineno)
            if a in rows:
                raise DfaoParseError(f"letter a{a} defined twice", lineno)
            if any(not (1 <= v <= header["n"]) for v in values):
                raise DfaoParseError(f"states must lie in 1..{header['n']}", lineno)
            rows[a] = values
    if header is None:
        raise DfaoParseError("empty input")
    missing = [f"a{a}" for a in range(1, header["sigma"] + 1) if a not in rows]
    if missing or tau is None:
        raise DfaoParseError("missing " + ", ".join(missing + ([] if tau is not None else ["tau"])))
    try:
        return Dfao(
            header["n"],
            header["sigma"],
            tuple(Transformation.from_list(rows[a]) for a in range(1, header["sigma"] + 1)),
            header["q0"] - 1,
            OutputMap.from_list(tau, header["k"]),
        )
    except ValueError as exc:
        raise DfaoParseError(str(exc)) from None


def format_dfao(d: Dfao) -> str:
    lines = [f"dfao n={d.n} sigma={d.sigma} k={d.k} q0={d.initial + 1}"]
    lines += [f"a{a + 1}: {t}" for a, t in enumerate(d.delta)]
    lines.append(f"tau: {format_list(d.tau.to_list())}")
    return "\n".join(lines) + "\n"


def random_dfao(rng: random.Random, n: int, sigma: int, k: int, make_trim: bool = True) -> Dfao:
    """Uniformly random letter actions and output map; trimmed if asked."""
    delta = tuple(Transformation(rng.randrange(n) for _ in range(n)) for _ in range(sigma))
    tau = OutputMap((rng.randrange(k) for _ in range(n)), k)
    d = Dfao(n, sigma, delta, rng.randrange(n), tau)
    return trim(d) if make_trim else d
