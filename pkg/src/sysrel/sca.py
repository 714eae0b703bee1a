"""Self-constructing automata over synchronous subsequential relations.

A semi-SCA maps each outer letter to a machine over one shared inner
alphabet; an outer word acts by composing its letters' machines left to
right.  An SCA adds a finite accepting set of inner word pairs and accepts
``w`` when ``phi(w)`` relates one of those pairs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .regular import enumerate_words, is_finite, right_strip_filter
from .transducer import (SysTransducer, chain_pair_member, check, compose_all, diamond,
                         empty_relation, identity, image_nfa, preserves_junk,
                         product_alphabet, zip_words)
from .words import Alphabet, AlphabetError, Word, eta_normalize


class ScaError(ValueError):
    pass


@dataclass(frozen=True)
class SemiSca:
    outer: tuple
    phi: Mapping[str, SysTransducer]
    alphabet: Alphabet | None = None  # inner alphabet; inferred when phi is nonempty

    def __post_init__(self):
        outer = tuple(self.outer)
        if len(set(outer)) != len(outer):
            raise ScaError(f"duplicate outer letters in {outer!r}")
        phi = dict(self.phi)
        if set(phi) != set(outer):
            raise ScaError("phi must map exactly the outer letters")
        alphabets = {T.alphabet for T in phi.values()}
        if self.alphabet is not None:
            alphabets.add(self.alphabet)
        if len(alphabets) != 1:
            raise ScaError("letter machines must share one inner alphabet")
        for a, T in phi.items():
            if not T.report.is_valid:
                raise ScaError(f"machine for {a!r} is invalid:\n{T.report.describe()}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "alphabet", alphabets.pop())

    def __hash__(self):
        return hash((self.outer, tuple(sorted(self.phi.items())), self.alphabet))

    def chain(self, w: Sequence[str]) -> list:
        for a in w:
            if a not in self.phi:
                raise ScaError(f"unknown outer letter {a!r}")
        return [self.phi[a] for a in w]

    def outer_words(self, max_len: int) -> Iterator[tuple]:
        layer = [()]
        for _ in range(max_len + 1):
            yield from layer
            layer = [w + (a,) for w in layer for a in self.outer]

    @cached_property
    def junk_safe(self) -> bool:
        return all(preserves_junk(T) for T in self.phi.values())


@dataclass(frozen=True)
class Sca:
    base: SemiSca
    accepting: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        A = self.base.alphabet
        pairs = frozenset((eta_normalize(A, x), eta_normalize(A, y)) for x, y in self.accepting)
        object.__setattr__(self, "accepting", pairs)

    @property
    def outer(self) -> tuple:
        return self.base.outer

    @property
    def phi(self) -> dict:
        return self.base.phi

    @property
    def alphabet(self) -> Alphabet:
        return self.base.alphabet

    @cached_property
    def prune_junk(self) -> bool:
        """Junk configurations can be dropped without losing accepted words."""
        A = self.alphabet
        return self.base.junk_safe and not any(A.is_junk(y) for _, y in self.accepting)


def phi_of_word(S: SemiSca, w: Sequence[str]) -> SysTransducer:
    """Composite machine for the outer word ``w`` (identity for the empty word)."""
    return compose_all(S.chain(w), S.alphabet)


# -- membership -------------------------------------------------------------------


def clean_image(T: SysTransducer, x: Word, prune: bool) -> frozenset | None:
    """Finite image of ``x``, junk words removed when ``prune``; None if infinite."""
    key = (x, prune)
    cache = T._images
    if key not in cache:
        nfa = image_nfa(T, x)
        if prune:
            for tok in T.alphabet.junk:
                nfa = right_strip_filter(nfa, tok)
        cache[key] = frozenset(enumerate_words(nfa, nfa.size)) if is_finite(nfa) else None
    return cache[key]


class _Frontier:
    """Inner words reachable from each accepting-pair source after a prefix.

    ``None`` entries mark sources whose image became infinite; those fall
    back to the on-the-fly chain check.
    """

    def __init__(self, A: Sca):
        self.A = A
        self.sources = sorted({x for x, _ in A.accepting})

    def start(self) -> dict:
        return {x: frozenset({x}) for x in self.sources}

    def step(self, state: dict, a: str) -> dict:
        T = self.A.phi[a]
        prune = self.A.prune_junk
        out = {}
        for x, words in state.items():
            if words is None:
                out[x] = None
                continue
            acc = set()
            for z in words:
                img = clean_image(T, z, prune)
                if img is None:
                    acc = None
                    break
                acc |= img
            out[x] = None if acc is None else frozenset(acc)
        return out

    def accepts(self, state: dict, w: Sequence[str]) -> bool:
        for x, y in self.A.accepting:
            words = state[x]
            if words is None:
                if chain_pair_member(self.A.base.chain(w), x, y):
                    return True
            elif y in words:
                return True
        return False

    @staticmethod
    def dead(state: dict) -> bool:
        return all(words is not None and not words for words in state.values())


def member(A: Sca, w: Sequence[str]) -> bool:
    """Whether some accepting pair is related by ``phi(w)``."""
    w = tuple(w)
    A.base.chain(w)
    if not A.accepting:
        return False
    f = _Frontier(A)
    state = f.start()
    for a in w:
        state = f.step(state, a)
        if f.dead(state):
            return False
    return f.accepts(state, w)


def member_direct(A: Sca, w: Sequence[str]) -> bool:
    """Membership via the chain simulation only (no image sets)."""
    chain = A.base.chain(w)
    return any(chain_pair_member(chain, x, y) for x, y in A.accepting)


def language_upto(A: Sca, max_len: int) -> set:
    """Accepted outer words of length <= max_len (prefix-sharing search)."""
    found = set()
    if not A.accepting:
        return found
    f = _Frontier(A)
    todo = deque([((), f.start())])
    while todo:
        w, state = todo.popleft()
        if f.accepts(state, w):
            found.add(w)
        if len(w) == max_len:
            continue
        for a in A.outer:
            nxt = f.step(state, a)
            if not f.dead(nxt):
                todo.append((w + (a,), nxt))
    return found


# -- constructions ------------------------------------------------------------------


def reach_query(S: SemiSca, x: Sequence[str], y: Sequence[str]) -> Sca:
    """Reachability of ``(x, y)`` packaged as non-emptiness of an SCA."""
    return Sca(S, frozenset({(tuple(x), tuple(y))}))


def with_letters(S: SemiSca, outer: Iterable[str]) -> SemiSca:
    """Enlarge the outer alphabet, mapping new letters to the empty relation."""
    phi = dict(S.phi)
    order = list(S.outer)
    for a in outer:
        if a not in phi:
            phi[a] = empty_relation(S.alphabet)
            order.append(a)
    return SemiSca(tuple(order), phi, S.alphabet)


def intersect_sca(A: Sca, B: Sca) -> Sca:
    """SCA accepting exactly the words accepted by both ``A`` and ``B``."""
    outer = list(A.outer) + [a for a in B.outer if a not in A.outer]
    SA = with_letters(A.base, outer) if set(outer) != set(A.outer) else A.base
    SB = with_letters(B.base, outer) if set(outer) != set(B.outer) else B.base
    A1, A2 = SA.alphabet, SB.alphabet
    phi = {a: diamond(SA.phi[a], SB.phi[a]) for a in outer}
    pairs = {(zip_words(A1, A2, x1, x2), zip_words(A1, A2, y1, y2))
             for x1, y1 in A.accepting for x2, y2 in B.accepting}
    return Sca(SemiSca(tuple(outer), phi, product_alphabet(A1, A2)), frozenset(pairs))


def identity_sca(outer: Sequence[str], alphabet: Alphabet,
                 accepting: Iterable[tuple] | None = None) -> Sca:
    """Every outer letter acts as the identity; accepts ``(ε, ε)`` by default."""
    ident = identity(alphabet)
    pairs = frozenset({((), ())}) if accepting is None else frozenset(accepting)
    return Sca(SemiSca(tuple(outer), {a: ident for a in outer}, alphabet), pairs)


def validate_sca(A: Sca) -> list:
    """Problems with ``A`` as a list of messages (empty when fine)."""
    problems = []
    for a, T in A.phi.items():
        try:
            check(T)
        except ValueError as exc:
            problems.append(f"letter {a}: {exc}")
    for x, y in A.accepting:
        try:
            A.alphabet.check(x)
            A.alphabet.check(y)
        except AlphabetError as exc:
            problems.append(str(exc))
    return problems
