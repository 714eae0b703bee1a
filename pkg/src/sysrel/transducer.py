"""Synchronous subsequential transducers.

A :class:`SysTransducer` is a total, letter-to-letter machine without
accepting states.  It relates ``x □^ω`` to ``y □^ω`` when some infinite run
reads the first and writes the second.  Well-formedness (see
:func:`validate`) asks for totality on reachable states and that no cycle of
pad-reading transitions writes anything but pads, so eventually-padded
inputs only produce eventually-padded outputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .regular import Nfa, enumerate_words, intersect, is_finite, no_trailing
from .words import Alphabet, AlphabetError, Word, eta_normalize, pad_to


class TransducerError(ValueError):
    """Raised when an operation needs a well-formed machine and gets another."""


@dataclass(frozen=True)
class SysTransducer:
    alphabet: Alphabet
    states: frozenset
    initial: str
    transitions: frozenset  # {(source, in, out, target)}

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        if self.initial not in self.states:
            raise TransducerError(f"initial state {self.initial!r} is not a state")
        for q, a, b, r in self.transitions:
            if q not in self.states or r not in self.states:
                raise TransducerError(f"transition {(q, a, b, r)!r} uses unknown state")
            if a not in self.alphabet or b not in self.alphabet:
                raise AlphabetError(f"transition {(q, a, b, r)!r} uses unknown letter")

    @classmethod
    def build(cls, alphabet: Alphabet, initial: str, transitions: Iterable[tuple],
              states: Iterable[str] = ()) -> "SysTransducer":
        transitions = frozenset(tuple(t) for t in transitions)
        st = set(states) | {initial}
        for q, _, _, r in transitions:
            st.update((q, r))
        return cls(alphabet, frozenset(st), initial, transitions)

    # -- indices (computed lazily, the value itself is immutable) ---------

    @cached_property
    def out(self) -> dict:
        """``(state, input) -> ((output, target), ...)``."""
        idx: dict = {}
        for q, a, b, r in sorted(self.transitions):
            idx.setdefault((q, a), []).append((b, r))
        return {k: tuple(v) for k, v in idx.items()}

    @cached_property
    def step_io(self) -> dict:
        """``(state, input, output) -> frozenset of targets``."""
        idx: dict = {}
        for q, a, b, r in self.transitions:
            idx.setdefault((q, a, b), set()).add(r)
        return {k: frozenset(v) for k, v in idx.items()}

    @cached_property
    def reachable(self) -> frozenset:
        seen = {self.initial}
        todo = deque([self.initial])
        while todo:
            q = todo.popleft()
            for a in self.alphabet:
                for _, r in self.out.get((q, a), ()):
                    if r not in seen:
                        seen.add(r)
                        todo.append(r)
        return frozenset(seen)

    @cached_property
    def pad_live(self) -> frozenset:
        """States with an infinite run reading and writing only pads."""
        pad = self.alphabet.pad
        succ = {q: self.step_io.get((q, pad, pad), frozenset()) for q in self.states}
        return _infinite_path_nodes(succ)

    @cached_property
    def report(self) -> "ValidationReport":
        return validate(self)

    @cached_property
    def _images(self) -> dict:
        return {}

    def __repr__(self):
        return (f"SysTransducer(|Q|={len(self.states)}, |δ|={len(self.transitions)}, "
                f"letters={' '.join(self.alphabet.letters)})")


@dataclass(frozen=True)
class ValidationReport:
    is_valid: bool
    totality_violations: list = field(default_factory=list)
    pad_cycle_violations: list = field(default_factory=list)
    final_states: frozenset = frozenset()

    def describe(self) -> str:
        lines = ["valid" if self.is_valid else "INVALID"]
        for q, a in self.totality_violations:
            lines.append(f"  no transition from {q} on {a}")
        for t in self.pad_cycle_violations:
            lines.append(f"  non-pad output on pad cycle: trans {' '.join(t)}")
        lines.append(f"  final states: {' '.join(sorted(self.final_states))}")
        return "\n".join(lines)


def _infinite_path_nodes(succ: dict) -> frozenset:
    """Greatest set of nodes each having a successor inside the set."""
    alive = {q for q, rs in succ.items() if rs}
    changed = True
    while changed:
        changed = False
        for q in list(alive):
            if not (succ[q] & alive):
                alive.discard(q)
                changed = True
    return frozenset(alive)


def _sccs(nodes: Iterable, succ: dict) -> dict:
    """Tarjan; returns node -> component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = [0]

    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(sorted(succ.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            w = next(it, None)
            if w is not None:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(succ.get(w, ())))))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = v
                    if w == v:
                        break
    return comp


def validate(T: SysTransducer) -> ValidationReport:
    pad = T.alphabet.pad
    reach = T.reachable
    totality = [(q, a) for q in sorted(reach) for a in T.alphabet if not T.out.get((q, a))]

    pad_succ: dict = {q: set() for q in reach}
    for q, a, _, r in T.transitions:
        if a == pad and q in reach:
            pad_succ[q].add(r)
    comp = _sccs(reach, pad_succ)
    bad = sorted(t for t in T.transitions
                 if t[0] in reach and t[1] == pad and t[2] != pad and comp[t[0]] == comp[t[3]])

    final = set(T.states)
    changed = True
    while changed:
        changed = False
        for q, a, b, r in T.transitions:
            if q in final and a == pad and (b != pad or r not in final):
                final.discard(q)
                changed = True

    return ValidationReport(not totality and not bad, totality, bad, frozenset(final))


def check(T: SysTransducer) -> SysTransducer:
    if not T.report.is_valid:
        raise TransducerError("invalid transducer:\n" + T.report.describe())
    return T


# -- semantics ----------------------------------------------------------------


def pair_member(T: SysTransducer, x: Sequence[str], y: Sequence[str]) -> bool:
    """Whether ``(x □^ω, y □^ω)`` is read/written by some infinite run of ``T``."""
    check(T)
    x = eta_normalize(T.alphabet, x)
    y = eta_normalize(T.alphabet, y)
    n = max(len(x), len(y))
    current = {T.initial}
    for a, b in zip(pad_to(T.alphabet, x, n), pad_to(T.alphabet, y, n)):
        current = {r for q in current for r in T.step_io.get((q, a, b), ())}
        if not current:
            return False
    return bool(current & T.pad_live)


def image_nfa(T: SysTransducer, x: Sequence[str]) -> Nfa:
    """Automaton over the letters of ``T`` for the eta-normal outputs on ``x □^ω``."""
    check(T)
    A = T.alphabet
    x = eta_normalize(A, x)
    n, pad = len(x), A.pad

    def letter(i):
        return x[i] if i < n else pad

    start = (0, T.initial)
    seen = {start}
    todo = deque([start])
    triples = []
    while todo:
        i, q = todo.popleft()
        for b, r in T.out.get((q, letter(i)), ()):
            nxt = (min(i + 1, n), r)
            triples.append(((i, q), b, nxt))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)

    # quiet(i, q): the rest of x can be read writing only pads, ending pad-live
    quiet = {(n, q) for (i, q) in seen if i == n and q in T.pad_live}
    for i in range(n - 1, -1, -1):
        for j, q in seen:
            if j == i and any((i + 1, r) in quiet for r in T.step_io.get((q, x[i], pad), ())):
                quiet.add((i, q))
    raw = Nfa.build(A.letters, triples, {start}, quiet, seen)
    return intersect(raw, no_trailing(A.letters, pad)).trim().relabel()


def image_words(T: SysTransducer, x: Sequence[str]) -> frozenset | None:
    """Finite image of ``x`` as a set of words, or ``None`` when it is infinite."""
    x = eta_normalize(T.alphabet, x)
    cache = T._images
    if x not in cache:
        nfa = image_nfa(T, x)
        cache[x] = frozenset(enumerate_words(nfa, nfa.size)) if is_finite(nfa) else None
    return cache[x]


# -- constructions --------------------------------------------------------------


def identity(alphabet: Alphabet, state: str = "q") -> SysTransducer:
    return SysTransducer.build(alphabet, state, [(state, a, a, state) for a in alphabet])


def empty_relation(alphabet: Alphabet) -> SysTransducer:
    """Machine whose every output contains the absorbing letter."""
    if alphabet.absorb is None:
        raise AlphabetError("the empty relation needs an absorbing letter")
    junk, pad = alphabet.absorb, alphabet.pad
    trans = [("s", a, junk, "z") for a in alphabet]
    trans += [("z", a, pad if a == pad else junk, "z") for a in alphabet]
    return SysTransducer.build(alphabet, "s", trans)


def _namer(pairs) -> dict:
    """Render product states as ``q|r``; bracket them if that is ambiguous."""
    names = {p: f"{p[0]}|{p[1]}" for p in pairs}
    if len(set(names.values())) < len(names):
        names = {p: f"<{p[0]}|{p[1]}>" for p in pairs}
    return names


def compose(T1: SysTransducer, T2: SysTransducer) -> SysTransducer:
    """Machine for ``T1`` followed by ``T2`` (run ``T1``, feed its output to ``T2``)."""
    if T1.alphabet != T2.alphabet:
        raise AlphabetError("compose needs machines over one alphabet")
    check(T1)
    check(T2)
    start = (T1.initial, T2.initial)
    seen = {start}
    todo = deque([start])
    trans = set()
    while todo:
        q, r = todo.popleft()
        for a in T1.alphabet:
            for c, q2 in T1.out.get((q, a), ()):
                for b, r2 in T2.out.get((r, c), ()):
                    trans.add(((q, r), a, b, (q2, r2)))
                    if (q2, r2) not in seen:
                        seen.add((q2, r2))
                        todo.append((q2, r2))
    name = _namer(seen)
    return SysTransducer.build(
        T1.alphabet, name[start],
        [(name[s], a, b, name[t]) for s, a, b, t in trans], name.values())


def compose_all(machines: Sequence[SysTransducer], alphabet: Alphabet | None = None) -> SysTransducer:
    if not machines:
        if alphabet is None:
            raise ValueError("empty chain needs an alphabet")
        return identity(alphabet)
    result = machines[0]
    for T in machines[1:]:
        result = compose(result, T)
    return result


def pair_token(a: str, b: str) -> str:
    return f"({a},{b})"


def product_alphabet(A1: Alphabet, A2: Alphabet) -> Alphabet:
    """Letters of ``A1 x A2`` with the pad pair collapsed to a single pad."""
    pad = A1.pad if A1.pad == A2.pad else pair_token(A1.pad, A2.pad)
    letters, junk = [], []
    for a in A1:
        for b in A2:
            tok = pad if (a, b) == (A1.pad, A2.pad) else pair_token(a, b)
            letters.append(tok)
            if a in A1.junk or b in A2.junk:
                junk.append(tok)
    absorb = None
    if A1.absorb is not None and A2.absorb is not None:
        absorb = pair_token(A1.absorb, A2.absorb)
        junk.remove(absorb)
    return Alphabet(tuple(letters), pad, absorb, tuple(junk))


def product_letter(A1: Alphabet, A2: Alphabet, a: str, b: str) -> str:
    if a == A1.pad and b == A2.pad:
        return A1.pad if A1.pad == A2.pad else pair_token(a, b)
    return pair_token(a, b)


def zip_words(A1: Alphabet, A2: Alphabet, w1: Sequence[str], w2: Sequence[str]) -> Word:
    """Letterwise product of two eta-normal words (shorter one padded)."""
    n = max(len(w1), len(w2))
    P = product_alphabet(A1, A2)
    raw = [product_letter(A1, A2, a, b)
           for a, b in zip(pad_to(A1, w1, n), pad_to(A2, w2, n))]
    return eta_normalize(P, raw)


def diamond(T1: SysTransducer, T2: SysTransducer) -> SysTransducer:
    """Machine running ``T1`` and ``T2`` side by side on paired letters."""
    check(T1)
    check(T2)
    A1, A2 = T1.alphabet, T2.alphabet
    P = product_alphabet(A1, A2)
    start = (T1.initial, T2.initial)
    seen = {start}
    todo = deque([start])
    trans = set()
    while todo:
        q, r = todo.popleft()
        for a in A1:
            for b in A2:
                for a2, q2 in T1.out.get((q, a), ()):
                    for b2, r2 in T2.out.get((r, b), ()):
                        trans.add(((q, r), product_letter(A1, A2, a, b),
                                   product_letter(A1, A2, a2, b2), (q2, r2)))
                        if (q2, r2) not in seen:
                            seen.add((q2, r2))
                            todo.append((q2, r2))
    name = _namer(seen)
    return SysTransducer.build(
        P, name[start], [(name[s], a, b, name[t]) for s, a, b, t in trans], name.values())


def preserves_junk(T: SysTransducer) -> bool:
    """Whether every run reading a junk letter also writes one.

    Needed to discard junk configurations early; the check explores the
    machine together with two flags (junk read so far, junk written so far).
    """
    A = T.alphabet
    if not A.junk:
        return True
    start = (T.initial, False, False)
    seen = {start}
    todo = deque([start])
    while todo:
        q, jin, jout = todo.popleft()
        for a in A:
            for b, r in T.out.get((q, a), ()):
                s = (r, jin or a in A.junk, jout or b in A.junk)
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    # bad: junk read, none written, and a junk-free continuation to a pad loop
    clean_back: dict = {}
    for q, a, b, r in T.transitions:
        if b not in A.junk:
            clean_back.setdefault(r, set()).add(q)
    can_settle = set(T.pad_live)
    todo = deque(can_settle)
    while todo:
        r = todo.popleft()
        for q in clean_back.get(r, ()):
            if q not in can_settle:
                can_settle.add(q)
                todo.append(q)
    return not any(jin and not jout and q in can_settle for q, jin, jout in seen)


# -- chains of machines (an outer word applied letter by letter) ------------------


def chain_step(chain: Sequence[SysTransducer], states: tuple, a: str) -> set:
    """All ``(output, next_states)`` for one synchronous step through the chain."""
    results = {(a, ())}
    for T, q in zip(chain, states):
        nxt = set()
        for c, prefix in results:
            for b, r in T.out.get((q, c), ()):
                nxt.add((b, prefix + (r,)))
        results = nxt
        if not results:
            break
    return results


def chain_pair_member(chain: Sequence[SysTransducer], x: Sequence[str], y: Sequence[str]) -> bool:
    """``pair_member`` for the composition of ``chain`` without building it."""
    if not chain:
        return tuple(x) == tuple(y)
    for T in chain:
        check(T)
    A = chain[0].alphabet
    x = eta_normalize(A, x)
    y = eta_normalize(A, y)
    n = max(len(x), len(y))
    current = {tuple(T.initial for T in chain)}
    for a, b in zip(pad_to(A, x, n), pad_to(A, y, n)):
        current = {s for t in current for (c, s) in chain_step(chain, t, a) if c == b}
        if not current:
            return False
    # explore the pad/pad graph of the product from the reached tuples
    pad = A.pad
    succ: dict = {}
    todo = deque(current)
    while todo:
        t = todo.popleft()
        if t in succ:
            continue
        succ[t] = frozenset(s for (c, s) in chain_step(chain, t, pad) if c == pad)
        todo.extend(s for s in succ[t] if s not in succ)
    return bool(current & _infinite_path_nodes(succ))


def to_dot(T: SysTransducer, name: str = "T") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    final = T.report.final_states
    for q in sorted(T.states):
        shape = "doublecircle" if q in final else "circle"
        lines.append(f'  "{q}" [shape={shape}];')
    lines += ['  "__start" [shape=point];', f'  "__start" -> "{T.initial}";']
    grouped: dict = {}
    for q, a, b, r in T.transitions:
        grouped.setdefault((q, r), []).append(f"{a}:{b}")
    for (q, r), labels in sorted(grouped.items()):
        lines.append(f'  "{q}" -> "{r}" [label="{", ".join(sorted(labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
