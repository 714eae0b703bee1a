"""Nondeterministic finite automata over explicit token alphabets.

Every chi language, approximation language and image set in the package is
carried by an :class:`Nfa`.  Alphabets are explicit and never widened
implicitly: binary operations require equal alphabets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: frozenset
    states: frozenset
    initial: frozenset
    accepting: frozenset
    edges: Mapping = field(default_factory=dict)  # (state, token) -> frozenset

    def __post_init__(self):
        for name in ("alphabet", "states", "initial", "accepting"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        edges = {}
        for (q, tok), targets in self.edges.items():
            if tok not in self.alphabet:
                raise AlphabetMismatch(f"edge label {tok!r} not in alphabet")
            targets = frozenset(targets)
            if targets:
                edges[(q, tok)] = targets
        object.__setattr__(self, "edges", edges)
        if not self.initial <= self.states or not self.accepting <= self.states:
            raise ValueError("initial/accepting states must be states")

    # -- construction helpers -------------------------------------------

    @classmethod
    def build(cls, alphabet: Iterable[str], triples: Iterable[tuple], initial, accepting,
              states: Iterable = ()) -> "Nfa":
        """From ``(source, token, target)`` triples."""
        edges: dict = {}
        st = set(states) | set(initial) | set(accepting)
        for q, tok, r in triples:
            edges.setdefault((q, tok), set()).add(r)
            st.add(q)
            st.add(r)
        return cls(frozenset(alphabet), frozenset(st), frozenset(initial),
                   frozenset(accepting), edges)

    @classmethod
    def empty(cls, alphabet: Iterable[str]) -> "Nfa":
        return cls(frozenset(alphabet), frozenset({0}), frozenset({0}), frozenset())

    @classmethod
    def universal(cls, alphabet: Iterable[str]) -> "Nfa":
        alphabet = frozenset(alphabet)
        return cls(alphabet, frozenset({0}), frozenset({0}), frozenset({0}),
                   {(0, t): {0} for t in alphabet})

    @classmethod
    def words(cls, alphabet: Iterable[str], words: Iterable[tuple]) -> "Nfa":
        """Trie automaton accepting exactly the given words."""
        triples, accepting = [], set()
        for w in words:
            w = tuple(w)
            for i, tok in enumerate(w):
                triples.append((w[:i], tok, w[:i + 1]))
            accepting.add(w)
        return cls.build(alphabet, triples, {()}, accepting).relabel()

    # -- basic queries ---------------------------------------------------

    def step(self, current: Iterable, token: str) -> frozenset:
        out = set()
        for q in current:
            out |= self.edges.get((q, token), frozenset())
        return frozenset(out)

    def accepts(self, word: Iterable[str]) -> bool:
        current = self.initial
        for tok in word:
            if tok not in self.alphabet:
                return False
            current = self.step(current, tok)
            if not current:
                return False
        return bool(current & self.accepting)

    def successors(self, q) -> Iterator[tuple]:
        for tok in self.alphabet:
            for r in self.edges.get((q, tok), ()):
                yield tok, r

    @property
    def size(self) -> int:
        return len(self.states)

    def reachable(self) -> frozenset:
        seen = set(self.initial)
        todo = deque(self.initial)
        while todo:
            q = todo.popleft()
            for _, r in self.successors(q):
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)

    def coreachable(self) -> frozenset:
        back: dict = {}
        for (q, _), targets in self.edges.items():
            for r in targets:
                back.setdefault(r, set()).add(q)
        seen = set(self.accepting)
        todo = deque(self.accepting)
        while todo:
            r = todo.popleft()
            for q in back.get(r, ()):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return frozenset(seen)

    def trim(self) -> "Nfa":
        """Restrict to states that are both reachable and co-reachable."""
        useful = self.reachable() & self.coreachable()
        if not useful:
            return Nfa.empty(self.alphabet)
        edges = {(q, t): targets & useful for (q, t), targets in self.edges.items() if q in useful}
        return Nfa(self.alphabet, useful, self.initial & useful, self.accepting & useful, edges)

    def relabel(self) -> "Nfa":
        """Rename states to consecutive integers (reachable part only)."""
        order = {}
        todo = deque(sorted(self.initial, key=repr))
        for q in todo:
            order.setdefault(q, len(order))
        while todo:
            q = todo.popleft()
            for tok in sorted(self.alphabet):
                for r in sorted(self.edges.get((q, tok), ()), key=repr):
                    if r not in order:
                        order[r] = len(order)
                        todo.append(r)
        edges = {}
        for (q, t), targets in self.edges.items():
            if q in order:
                edges[(order[q], t)] = frozenset(order[r] for r in targets)
        if not order:
            return Nfa.empty(self.alphabet)
        return Nfa(self.alphabet, frozenset(order.values()),
                   frozenset(order[q] for q in self.initial),
                   frozenset(order[q] for q in self.accepting if q in order), edges)


# -- Boolean operations ------------------------------------------------------


def _same_alphabet(a: Nfa, b: Nfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(a.alphabet)} vs {sorted(b.alphabet)}")


def intersect(a: Nfa, b: Nfa) -> Nfa:
    """Product automaton for ``L(a) & L(b)``; only reachable pairs are built."""
    _same_alphabet(a, b)
    start = {(p, q) for p in a.initial for q in b.initial}
    seen = set(start)
    todo = deque(start)
    triples = []
    while todo:
        p, q = todo.popleft()
        for tok in a.alphabet:
            for p2 in a.edges.get((p, tok), ()):
                for q2 in b.edges.get((q, tok), ()):
                    triples.append(((p, q), tok, (p2, q2)))
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        todo.append((p2, q2))
    accepting = {s for s in seen if s[0] in a.accepting and s[1] in b.accepting}
    return Nfa.build(a.alphabet, triples, start, accepting, seen).relabel()


def union(a: Nfa, b: Nfa) -> Nfa:
    _same_alphabet(a, b)
    triples = [((0, q), t, (0, r)) for (q, t), rs in a.edges.items() for r in rs]
    triples += [((1, q), t, (1, r)) for (q, t), rs in b.edges.items() for r in rs]
    return Nfa.build(
        a.alphabet, triples,
        {(0, q) for q in a.initial} | {(1, q) for q in b.initial},
        {(0, q) for q in a.accepting} | {(1, q) for q in b.accepting},
        {(0, q) for q in a.states} | {(1, q) for q in b.states},
    ).relabel()


def union_all(alphabet: Iterable[str], automata: Iterable[Nfa]) -> Nfa:
    result = Nfa.empty(alphabet)
    for a in automata:
        result = union(result, a)
    return result


def determinize(a: Nfa) -> Nfa:
    """Subset construction; the result is complete (includes the empty set state)."""
    start = frozenset(a.initial)
    seen = {start}
    todo = deque([start])
    triples = []
    letters = sorted(a.alphabet)
    while todo:
        s = todo.popleft()
        for tok in letters:
            t = a.step(s, tok)
            triples.append((s, tok, t))
            if t not in seen:
                seen.add(t)
                todo.append(t)
    accepting = {s for s in seen if s & a.accepting}
    return Nfa.build(a.alphabet, triples, {start}, accepting, seen).relabel()


def complement(a: Nfa) -> Nfa:
    d = determinize(a)
    return Nfa(d.alphabet, d.states, d.initial, d.states - d.accepting, d.edges)


def minimize(a: Nfa) -> Nfa:
    """Minimal complete DFA by partition refinement (Moore style)."""
    d = determinize(a)
    letters = sorted(d.alphabet)
    delta = {(q, t): next(iter(rs)) for (q, t), rs in d.edges.items()}
    block = {q: int(q in d.accepting) for q in d.states}
    while True:
        sig = {q: (block[q],) + tuple(block[delta[(q, t)]] for t in letters) for q in d.states}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in sorted(d.states)}
        if len(ids) == len(set(block.values())):
            block = new
            break
        block = new
    triples = {(block[q], t, block[delta[(q, t)]]) for q in d.states for t in letters}
    return Nfa.build(d.alphabet, triples, {block[q] for q in d.initial},
                     {block[q] for q in d.accepting}, set(block.values())).relabel()


def is_empty(a: Nfa) -> bool:
    return not (a.reachable() & a.accepting)


def is_universal(a: Nfa) -> bool:
    return is_empty(complement(a))


def includes(a: Nfa, b: Nfa) -> bool:
    """True iff ``L(a)`` is a subset of ``L(b)``."""
    _same_alphabet(a, b)
    return is_empty(intersect(a, complement(b)))


def equivalent(a: Nfa, b: Nfa) -> bool:
    return includes(a, b) and includes(b, a)


def is_finite(a: Nfa) -> bool:
    """True iff the language is finite (no cycle among useful states)."""
    t = a.trim()
    if is_empty(t):
        return True
    color: dict = {}
    for root in t.initial:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, iter(list(t.successors(root))))]
        while stack:
            q, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[q] = 2
                stack.pop()
                continue
            r = nxt[1]
            c = color.get(r, 0)
            if c == 1:
                return False
            if c == 0:
                color[r] = 1
                stack.append((r, iter(list(t.successors(r)))))
    return True


def enumerate_words(a: Nfa, max_len: int) -> list:
    """Accepted words of length <= max_len, in length-lexicographic order."""
    letters = sorted(a.alphabet)
    out = []
    layer = {(): frozenset(a.initial)}
    for k in range(max_len + 1):
        for w in sorted(layer):
            if layer[w] & a.accepting:
                out.append(w)
        if k == max_len:
            break
        nxt = {}
        for w, s in layer.items():
            for tok in letters:
                t = a.step(s, tok)
                if t:
                    nxt[w + (tok,)] = t
        layer = nxt
    return out


def right_strip_filter(a: Nfa, forbidden: str) -> Nfa:
    """Restrict to words that avoid the token ``forbidden`` entirely."""
    edges = {(q, t): rs for (q, t), rs in a.edges.items() if t != forbidden}
    return Nfa(a.alphabet, a.states, a.initial, a.accepting, edges).trim()


def no_trailing(alphabet: Iterable[str], token: str) -> Nfa:
    """Words that do not end in ``token`` (the empty word included)."""
    alphabet = frozenset(alphabet)
    triples = []
    for t in alphabet:
        target = "end" if t == token else "ok"
        triples += [("ok", t, target), ("end", t, target)]
    return Nfa.build(alphabet, triples, {"ok"}, {"ok"})


def to_dot(a: Nfa, name: str = "nfa") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in sorted(a.states, key=repr):
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f'  "{q}" [shape={shape}];')
    for i, q in enumerate(sorted(a.initial, key=repr)):
        lines.append(f'  "__start{i}" [shape=point];')
        lines.append(f'  "__start{i}" -> "{q}";')
    grouped: dict = {}
    for (q, t), rs in a.edges.items():
        for r in rs:
            grouped.setdefault((q, r), []).append(t)
    for (q, r), toks in sorted(grouped.items(), key=repr):
        label = ",".join(sorted(toks)).replace('"', r'\"')
        lines.append(f'  "{q}" -> "{r}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

