"""Brute-force reference semantics, written without the engine's algorithms.

Everything here works straight from transition lists: runs are enumerated
step by step, pad loops are found by walks or depth-first search, closures
are computed by naive iteration.  Only the word helpers are shared with the
engine.  Slow on purpose; used to derive and cross-check test values.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .words import eta_normalize, pad_to


@dataclass(frozen=True)
class SimConfig:
    max_input: int = 3
    max_output: int | None = None  # default: |x| + |Q| for each input
    max_outer: int = 6

    def __post_init__(self):
        for v in (self.max_input, self.max_output, self.max_outer):
            if v is not None and v < 0:
                raise ValueError("bounds must be non-negative")


def _delta(T) -> dict:
    d: dict = {}
    for q, a, b, r in T.transitions:
        d.setdefault((q, a), []).append((b, r))
    return d


def _pad_walk(T, delta, q, length, memo) -> bool:
    """A walk of ``length`` steps reading and writing pads exists from ``q``."""
    key = (q, length)
    if key not in memo:
        pad = T.alphabet.pad
        memo[key] = length == 0 or any(
            b == pad and _pad_walk(T, delta, r, length - 1, memo)
            for b, r in delta.get((q, pad), ()))
    return memo[key]


def brute_image(T, x, max_output: int) -> frozenset:
    """Eta-normal outputs of length <= max_output for input ``x``."""
    A = T.alphabet
    x = eta_normalize(A, x)
    delta = _delta(T)
    steps = max(len(x), max_output)
    configs = {(T.initial, ())}
    for a in pad_to(A, x, steps):
        configs = {(r, out + (b,)) for q, out in configs for b, r in delta.get((q, a), ())}
    memo: dict = {}
    n = len(T.states)
    result = set()
    for q, out in configs:
        y = eta_normalize(A, out)
        if len(y) <= max_output and _pad_walk(T, delta, q, n, memo):
            result.add(y)
    return frozenset(result)


def brute_pairs(T, cfg: SimConfig = SimConfig()) -> frozenset:
    A = T.alphabet
    pairs = set()
    for k in range(cfg.max_input + 1):
        for x in product(A.letters, repeat=k):
            if x and x[-1] == A.pad:
                continue
            bound = cfg.max_output if cfg.max_output is not None else k + len(T.states)
            pairs.update((x, y) for y in brute_image(T, x, bound))
    return frozenset(pairs)


def brute_sigma(T, n: int) -> frozenset:
    """Label pairs of all n-step paths from the initial state."""
    delta = _delta(T)
    out = set()

    def walk(q, u, v):
        if len(u) == n:
            out.add((u, v))
            return
        for a in T.alphabet.letters:
            for b, r in delta.get((q, a), ()):
                walk(r, u + (a,), v + (b,))

    walk(T.initial, (), ())
    return frozenset(out)


def brute_sigma_chain(chain, alphabet, n: int) -> frozenset:
    """Label pairs of the n-step runs of a machine chain fed one into the next."""
    if not chain:
        return frozenset((u, u) for u in product(alphabet.letters, repeat=n))
    deltas = [_delta(T) for T in chain]
    out = set()
    for u in product(alphabet.letters, repeat=n):
        # runs of the whole chain on u: one (state tuple, output) per run
        runs = {(tuple(T.initial for T in chain), ())}
        for a in u:
            nxt = set()
            for states, v in runs:
                partial = [((), a)]
                for d, q in zip(deltas, states):
                    partial = [(done + (r,), b) for done, c in partial for b, r in d.get((q, c), ())]
                nxt.update((done, v + (b,)) for done, b in partial)
            runs = nxt
        out.update((u, v) for _, v in runs)
    return frozenset(out)


def brute_chain_member(chain, alphabet, x, y) -> bool:
    """Whether the composed chain relates ``x □^ω`` and ``y □^ω``."""
    x = eta_normalize(alphabet, x)
    y = eta_normalize(alphabet, y)
    if not chain:
        return x == y
    deltas = [_delta(T) for T in chain]
    pad = alphabet.pad

    def moves(states, a):
        partial = [((), a)]
        for d, q in zip(deltas, states):
            partial = [(done + (r,), b) for done, c in partial for b, r in d.get((q, c), ())]
        return partial

    n = max(len(x), len(y))
    current = {tuple(T.initial for T in chain)}
    for a, b in zip(pad_to(alphabet, x, n), pad_to(alphabet, y, n)):
        current = {s for t in current for s, c in moves(t, a) if c == b}
    # pad/pad graph reachable from the current tuples, then look for a cycle
    graph: dict = {}
    stack = list(current)
    while stack:
        t = stack.pop()
        if t in graph:
            continue
        graph[t] = {s for s, c in moves(t, pad) if c == pad}
        stack.extend(graph[t])
    colour: dict = {}

    def on_cycle_from(t) -> bool:
        colour[t] = "grey"
        for s in graph[t]:
            c = colour.get(s)
            if c == "grey" or (c is None and on_cycle_from(s)):
                return True
        colour[t] = "black"
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * len(graph) + 100))
    try:
        return any(colour.get(t) is None and on_cycle_from(t) for t in current)
    finally:
        sys.setrecursionlimit(old)


def brute_member(A, w) -> bool:
    chain = [A.phi[a] for a in w]
    return any(brute_chain_member(chain, A.alphabet, x, y) for x, y in A.accepting)


def brute_language(A, max_len: int) -> frozenset:
    words = set()
    for k in range(max_len + 1):
        for w in product(A.outer, repeat=k):
            if brute_member(A, w):
                words.add(w)
    return frozenset(words)


def brute_compose_image(T1, T2, x, max_output: int) -> frozenset:
    """Outputs of ``T1`` then ``T2`` on ``x`` by chaining the two images.

    Intermediate words longer than ``max(|x|, max_output) + |Q1||Q2|`` are
    never needed: past that point a run can settle into a pad loop.
    """
    mid = max(len(x), max_output) + len(T1.states) * len(T2.states)
    out = set()
    for z in brute_image(T1, x, mid):
        out |= brute_image(T2, z, max_output)
    return frozenset(out)


def _compose_pairs(S, S2) -> frozenset:
    by_src: dict = {}
    for v, w in S2:
        by_src.setdefault(v, []).append(w)
    return frozenset((u, w) for u, v in S for w in by_src.get(v, ()))


def brute_closure(gens, alphabet, n: int, rounds: int = 10_000) -> tuple:
    """``(closure, rounds_used)``: iterate ``C := C ∪ C∘G`` from the identity.

    ``rounds_used`` counts the rounds that still added pairs.  Only the
    pairs added in the previous round are composed again; older ones were
    already extended.
    """
    gens = [frozenset(g) for g in gens]
    current = set((u, u) for u in product(alphabet.letters, repeat=n))
    fresh = frozenset(current)
    used = 0
    for _ in range(rounds):
        grown = set()
        for g in gens:
            grown |= _compose_pairs(fresh, g)
        fresh = frozenset(grown - current)
        if not fresh:
            break
        current |= fresh
        used += 1
    return frozenset(current), used


# -- context-free grammars (for the pushdown encodings) -----------------------------


class Grammar:
    """Grammar with productions ``A -> a B1 ... Bk`` (plus ``S -> ε`` for the start)."""

    def __init__(self, start: str, rules):
        self.start = start
        self.rules = {}
        for lhs, rhs in rules:
            self.rules.setdefault(lhs, []).append(tuple(rhs))

    def derives(self, w) -> bool:
        w = tuple(w)

        @lru_cache(maxsize=None)
        def gen(symbols: tuple, i: int) -> bool:
            # can the sentential form `symbols` derive w[i:]?
            if not symbols:
                return i == len(w)
            if len(symbols) > len(w) - i + (1 if symbols == (self.start,) else 0):
                return False
            head, rest = symbols[0], symbols[1:]
            if head not in self.rules:  # terminal
                return i < len(w) and w[i] == head and gen(rest, i + 1)
            return any(gen(tuple(rhs) + rest, i) for rhs in self.rules[head])

        return gen((self.start,), 0)


# -- pushdown automata -----------------------------------------------------------------


def brute_pda_member(P, w) -> bool:
    """Empty-stack acceptance by breadth-first search over configurations.

    ``P`` needs ``initial``, ``start_symbol`` and ``transitions`` given as
    ``(state, letter or None, top, target, pushed with the top last)``.
    Epsilon moves are followed until no new configuration appears; stacks
    taller than ``2 (|w| + 2)`` are dropped, which is harmless for the
    real-time machines used here (each letter pops at most one symbol).
    """
    w = tuple(w)
    cap = 2 * (len(w) + 2)

    def eps_close(configs):
        seen = set(configs)
        todo = list(configs)
        while todo:
            p, stack = todo.pop()
            if not stack:
                continue
            for q0, a, X, q, beta in P.transitions:
                if a is None and q0 == p and X == stack[-1]:
                    nxt = (q, stack[:-1] + tuple(beta))
                    if len(nxt[1]) <= cap and nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
        return seen

    current = eps_close({(P.initial, (P.start_symbol,))})
    for letter in w:
        nxt = set()
        for p, stack in current:
            if not stack:
                continue
            for q0, a, X, q, beta in P.transitions:
                if a == letter and q0 == p and X == stack[-1]:
                    new = stack[:-1] + tuple(beta)
                    if len(new) <= cap:
                        nxt.add((q, new))
        current = eps_close(nxt)
    return any(not stack for _, stack in current)
