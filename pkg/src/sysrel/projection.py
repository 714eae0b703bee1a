"""Length-n prefix projections of relations and the finite monoids they generate.

``sigma_n`` sends a machine to the finite relation of its length-n path
labels, ``tau_n`` keeps only the n-th letter pair.  On synchronous
subsequential relations, ``sigma_n`` commutes with composition, so the
relations reached by outer words form a finite monoid; the automaton walking
that monoid (:func:`monoid_automaton`) recognizes every chi language.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .regular import Nfa
from .transducer import SysTransducer, check
from .words import Alphabet


class LevelMismatch(ValueError):
    pass


class MonoidLimit(RuntimeError):
    """Raised when monoid exploration exceeds its state budget."""


@dataclass(frozen=True)
class FiniteRelation:
    n: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((tuple(u), tuple(v)) for u, v in self.pairs)
        for u, v in pairs:
            if len(u) != self.n or len(v) != self.n:
                raise LevelMismatch(f"pair {(u, v)!r} is not of length {self.n}")
        object.__setattr__(self, "pairs", pairs)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return (tuple(u), tuple(v)) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def dump(self) -> str:
        return "".join(f"{' '.join(u)}  ->  {' '.join(v)}\n" for u, v in sorted(self.pairs))


def identity_relation(alphabet: Alphabet, n: int) -> FiniteRelation:
    return FiniteRelation(n, frozenset((u, u) for u in product(alphabet.letters, repeat=n)))


def sigma_n(T: SysTransducer, n: int) -> FiniteRelation:
    """Input/output labels of all length-n paths from the initial state."""
    if n < 1:
        raise ValueError("level must be >= 1")
    check(T)
    layer = {(T.initial, (), ())}
    for _ in range(n):
        layer = {(r, u + (a,), v + (b,))
                 for q, u, v in layer for a in T.alphabet for b, r in T.out.get((q, a), ())}
    return FiniteRelation(n, frozenset((u, v) for _, u, v in layer))


def tau_fr(S: FiniteRelation, i: int) -> FiniteRelation:
    """Level-1 relation of the i-th letter pairs (1-based) of ``S``."""
    if not 1 <= i <= S.n:
        raise LevelMismatch(f"coordinate {i} outside 1..{S.n}")
    return FiniteRelation(1, frozenset(((u[i - 1],), (v[i - 1],)) for u, v in S.pairs))


def tau_n(T: SysTransducer, n: int) -> frozenset:
    """The set of n-th letter pairs ``(a_n, b_n)`` over the relation of ``T``."""
    return frozenset((u[0], v[0]) for u, v in tau_fr(sigma_n(T, n), n).pairs)


def compose_fr(S: FiniteRelation, S2: FiniteRelation) -> FiniteRelation:
    if S.n != S2.n:
        raise LevelMismatch(f"levels differ: {S.n} vs {S2.n}")
    by_src: dict = {}
    for v, w in S2.pairs:
        by_src.setdefault(v, []).append(w)
    return FiniteRelation(S.n, frozenset((u, w) for u, v in S.pairs for w in by_src.get(v, ())))


# -- fast bitset form used while exploring monoids ------------------------------


class _Codec:
    """Numbers the words of Omega^n so a relation becomes a tuple of row bitmasks."""

    def __init__(self, alphabet: Alphabet, n: int):
        self.n = n
        self.words = list(product(alphabet.letters, repeat=n))
        self.index = {w: i for i, w in enumerate(self.words)}

    def encode(self, S: FiniteRelation) -> tuple:
        if S.n != self.n:
            raise LevelMismatch(f"levels differ: {S.n} vs {self.n}")
        rows = [0] * len(self.words)
        for u, v in S.pairs:
            rows[self.index[u]] |= 1 << self.index[v]
        return tuple(rows)

    def decode(self, rows: tuple) -> FiniteRelation:
        pairs = set()
        for i, row in enumerate(rows):
            for j in _bits(row):
                pairs.add((self.words[i], self.words[j]))
        return FiniteRelation(self.n, frozenset(pairs))

    def identity(self) -> tuple:
        return tuple(1 << i for i in range(len(self.words)))


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _compose_rows(a: tuple, b: tuple) -> tuple:
    return tuple(_apply_row(row, b) for row in a)


@dataclass(frozen=True, eq=False)
class MonoidAutomaton:
    """Deterministic complete automaton over the outer alphabet on level-n relations.

    State 0 is the identity relation; ``delta[(i, a)]`` is the index of
    ``states[i] ∘ generators[a]``.
    """

    n: int
    outer: tuple
    alphabet: Alphabet
    states: tuple  # of FiniteRelation
    delta: dict
    generators: dict

    def run(self, word: Sequence[str]) -> int:
        i = 0
        for a in word:
            i = self.delta[(i, a)]
        return i

    def relation_of(self, word: Sequence[str]) -> FiniteRelation:
        return self.states[self.run(word)]

    def accepting_for(self, pairs: Iterable[tuple]) -> frozenset:
        pairs = [(tuple(u), tuple(v)) for u, v in pairs]
        return frozenset(i for i, S in enumerate(self.states) if any(p in S.pairs for p in pairs))

    def to_nfa(self, accepting: Iterable[int]) -> Nfa:
        return Nfa(frozenset(self.outer), frozenset(range(len(self.states))), frozenset({0}),
                   frozenset(accepting), {(i, a): {j} for (i, a), j in self.delta.items()})

    def to_dot(self, name: str = "monoid") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for i, S in enumerate(self.states):
            lines.append(f'  "{i}" [shape=box,label="{i}: {len(S)} pairs"];')
        for (i, a), j in sorted(self.delta.items()):
            lines.append(f'  "{i}" -> "{j}" [label="{a}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _explore(codec: _Codec, gens: Sequence[tuple], max_states: int | None = None):
    """BFS over products ``s ∘ g`` starting from the identity.

    Returns (elements in discovery order, delta).
    """
    ident = codec.identity()
    index = {ident: 0}
    elems = [ident]
    delta = {}
    todo = deque([0])
    while todo:
        i = todo.popleft()
        for k, g in enumerate(gens):
            nxt = _compose_rows(elems[i], g)
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(elems)
                elems.append(nxt)
                if max_states is not None and len(elems) > max_states:
                    raise MonoidLimit(f"more than {max_states} monoid elements")
                todo.append(j)
            delta[(i, k)] = j
    return elems, delta


def closure_plus(gens: Iterable[FiniteRelation], alphabet: Alphabet, n: int) -> FiniteRelation:
    """Union of the composition monoid generated by ``gens`` (identity included)."""
    return closure_with_depth(gens, alphabet, n)[0]


def closure_with_depth(gens: Iterable[FiniteRelation], alphabet: Alphabet, n: int) -> tuple:
    """``(closure, depth)``: depth is the longest generator product still adding pairs.

    Composition distributes over union, so the union of all products is the
    reflexive-transitive closure of the union of the generators.  Rounds
    extend the newest pairs by one generator step until nothing is added.
    """
    gens = list(gens)
    for g in gens:
        if g.n != n:
            raise LevelMismatch(f"generator of level {g.n}, expected {n}")
    codec = _Codec(alphabet, n)
    step = [0] * len(codec.words)
    for g in gens:
        for i, row in enumerate(codec.encode(g)):
            step[i] |= row
    step = tuple(step)
    reached = list(codec.identity())
    frontier = list(reached)
    depth = 0
    while True:
        frontier = [_apply_row(f, step) & ~r for f, r in zip(frontier, reached)]
        if not any(frontier):
            break
        depth += 1
        reached = [r | f for r, f in zip(reached, frontier)]
    return codec.decode(tuple(reached)), depth


def level_generators(phi: Mapping[str, SysTransducer], n: int) -> dict:
    return {a: sigma_n(T, n) for a, T in phi.items()}


def _alphabet_of(phi: Mapping[str, SysTransducer]) -> Alphabet:
    alphabets = {T.alphabet for T in phi.values()}
    if len(alphabets) != 1:
        raise ValueError("all letter machines must share one inner alphabet")
    return alphabets.pop()


def monoid_automaton(phi: Mapping[str, SysTransducer], n: int, *,
                     generators: Mapping[str, FiniteRelation] | None = None,
                     alphabet: Alphabet | None = None,
                     max_states: int | None = None) -> MonoidAutomaton:
    """Walk the level-n monoid generated by ``sigma_n(phi(a))``.

    ``generators`` overrides the projected letter relations (used for
    epsilon-saturated generators); ``alphabet`` must then be given when
    ``phi`` is empty.
    """
    if alphabet is None:
        alphabet = _alphabet_of(phi)
    if generators is None:
        return _cached_monoid(tuple(sorted(phi.items())), n, alphabet, max_states)
    return _build_monoid(dict(generators), n, alphabet, max_states)


@lru_cache(maxsize=256)
def _cached_monoid(items: tuple, n: int, alphabet: Alphabet, max_states):
    return _build_monoid({a: sigma_n(T, n) for a, T in items}, n, alphabet, max_states)


def _build_monoid(gens: dict, n: int, alphabet: Alphabet, max_states) -> MonoidAutomaton:
    codec = _Codec(alphabet, n)
    outer = tuple(sorted(gens))
    elems, delta = _explore(codec, [codec.encode(gens[a]) for a in outer], max_states)
    states = tuple(codec.decode(e) for e in elems)
    delta = {(i, outer[k]): j for (i, k), j in delta.items()}
    return MonoidAutomaton(n, outer, alphabet, states, delta, gens)


def action_nfa(phi: Mapping[str, SysTransducer], n: int, targets: Iterable[tuple], *,
               alphabet: Alphabet | None = None, generators: Mapping[str, FiniteRelation] | None = None,
               max_states: int | None = None) -> Nfa:
    """DFA over the outer letters accepting w when some target ``(u, v)`` lies in
    the level-n relation of ``w``.

    Only the rows of the target sources are tracked: row ``u`` of ``S ∘ g`` is
    determined by row ``u`` of ``S`` and ``g``, so this is a quotient of the
    monoid automaton recognizing the same language with far fewer states.
    """
    if alphabet is None:
        alphabet = _alphabet_of(phi)
    targets = sorted({(tuple(u), tuple(v)) for u, v in targets})
    for u, v in targets:
        if len(u) != n or len(v) != n:
            raise LevelMismatch(f"target {(u, v)!r} is not of length {n}")
    gens = dict(generators) if generators is not None else level_generators(phi, n)
    outer = tuple(sorted(gens))
    codec = _Codec(alphabet, n)
    enc = [codec.encode(gens[a]) for a in outer]
    sources = sorted({u for u, _ in targets})
    pos = {u: i for i, u in enumerate(sources)}
    start = tuple(1 << codec.index[u] for u in sources)
    index = {start: 0}
    order = [start]
    edges = {}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        i = index[s]
        for k, g in enumerate(enc):
            nxt = tuple(_apply_row(row, g) for row in s)
            j = index.get(nxt)
            if j is None:
                j = index[nxt] = len(order)
                order.append(nxt)
                if max_states is not None and len(order) > max_states:
                    raise MonoidLimit(f"more than {max_states} states")
                todo.append(nxt)
            edges[(i, outer[k])] = {j}
    checks = [(pos[u], 1 << codec.index[v]) for u, v in targets]
    accepting = {i for i, s in enumerate(order) if any(s[r] & bit for r, bit in checks)}
    return Nfa(frozenset(outer), frozenset(range(len(order))), frozenset({0}),
               frozenset(accepting), edges)


def _apply_row(row: int, g: tuple) -> int:
    acc = 0
    for j in _bits(row):
        acc |= g[j]
    return acc


def chi_nfa(phi: Mapping[str, SysTransducer], u: Sequence[str], v: Sequence[str], *,
            alphabet: Alphabet | None = None, max_states: int | None = None) -> Nfa:
    """Outer words w with ``(u, v)`` among the length-n prefixes of ``phi(w)``."""
    u, v = tuple(u), tuple(v)
    if len(u) != len(v) or not u:
        raise LevelMismatch("u and v must be nonempty and of equal length")
    return action_nfa(phi, len(u), [(u, v)], alphabet=alphabet, max_states=max_states)


def eps_saturate(phi: Mapping[str, SysTransducer], r_eps: SysTransducer, n: int) -> dict:
    """Level-n stand-in for ``eps* ∘ phi(a) ∘ eps*`` for each outer letter."""
    alphabet = r_eps.alphabet
    star = closure_plus([sigma_n(r_eps, n)], alphabet, n)
    return {a: compose_fr(compose_fr(star, sigma_n(T, n)), star) for a, T in phi.items()}


def saturate_relations(gens: Mapping[str, FiniteRelation], eps: FiniteRelation,
                       alphabet: Alphabet) -> dict:
    """Same as :func:`eps_saturate` for generators already projected."""
    star = closure_plus([eps], alphabet, eps.n)
    return {a: compose_fr(compose_fr(star, g), star) for a, g in gens.items()}


def is_tau_homomorphic(M: MonoidAutomaton) -> bool:
    """Whether tau_n respects composition on the elements of ``M`` (level n only).

    This is a finite check at one level, not a decomposability proof.
    """
    n = M.n
    taus = [tau_fr(S, n) for S in M.states]
    for i, S in enumerate(M.states):
        for j, S2 in enumerate(M.states):
            if tau_fr(compose_fr(S, S2), n) != compose_fr(taus[i], taus[j]):
                return False
    return True
