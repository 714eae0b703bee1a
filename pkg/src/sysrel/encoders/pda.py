"""Pushdown automata as SCAs over synchronous subsequential relations.

A configuration is written as an inner word: an optional control marker
followed by the stack, bottom first.  Each outer letter becomes one machine
that guesses where the top of the stack is.  A pop overwrites the top with
a pad; a push writes the new symbols over the following pads.  Any guess
that turns out wrong (a non-pad letter after the supposed top, or a pad
where a stack symbol was expected) writes the absorbing letter, as do all
later non-pad letters, so junk configurations never reach the accepting
pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..oracle import Grammar
from ..sca import Sca, SemiSca
from ..transducer import SysTransducer
from ..words import Alphabet

PAD = "_"
ABSORB = "#"


class PdaError(ValueError):
    """Raised for PDAs outside the encodable (real-time) class."""


@dataclass(frozen=True)
class Pda:
    states: tuple
    inputs: tuple
    stack: tuple
    initial: str
    start_symbol: str
    # (state, input letter or None, top, target, pushed symbols with the top last)
    transitions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "stack", tuple(self.stack))
        object.__setattr__(self, "transitions", frozenset(
            (p, a, X, q, tuple(beta)) for p, a, X, q, beta in self.transitions))

    @property
    def accepts_empty(self) -> bool:
        return any(a is None for _, a, _, _, _ in self.transitions)

    def moves(self, letter: str) -> list:
        return sorted(t for t in self.transitions if t[1] == letter)


def check_pda(P: Pda) -> None:
    """Raise :class:`PdaError` unless ``P`` can be encoded."""
    reserved = {PAD, ABSORB, "!"}
    for tok in P.stack + P.inputs:
        if not tok or any(c.isspace() for c in tok):
            raise PdaError(f"bad token {tok!r}")
    if set(P.stack) & reserved:
        raise PdaError(f"stack symbols may not use {sorted(reserved)}")
    if len(set(P.stack)) != len(P.stack) or len(set(P.states)) != len(P.states):
        raise PdaError("duplicate stack symbols or states")
    if P.initial not in P.states or P.start_symbol not in P.stack:
        raise PdaError("initial state / start symbol undeclared")
    pushed = {X for *_, beta in P.transitions for X in beta}
    for p, a, X, q, beta in P.transitions:
        if p not in P.states or q not in P.states or X not in P.stack:
            raise PdaError(f"transition {(p, a, X, q, beta)!r} uses undeclared names")
        if not set(beta) <= set(P.stack):
            raise PdaError(f"transition {(p, a, X, q, beta)!r} pushes undeclared symbols")
        if a is None:
            # the only epsilon move allowed: empty the initial stack at once
            if (p, X, beta) != (P.initial, P.start_symbol, ()) or P.start_symbol in pushed:
                raise PdaError("epsilon moves must pop a never-pushed start symbol "
                               "from the initial state")
        elif a not in P.inputs:
            raise PdaError(f"input letter {a!r} undeclared")


@dataclass(frozen=True)
class Encoding:
    sca: Sca
    legend: dict  # inner token -> (kind, payload)
    initial_word: tuple

    def configuration(self, state: str, stack: Sequence[str]) -> tuple:
        markers = {v[1]: k for k, v in self.legend.items() if v[0] == "control"}
        head = (markers[state],) if markers else ()
        return head + tuple(stack)


def _marker(state: str) -> str:
    return f"@{state}"


def _letter_machine(P: Pda, alphabet: Alphabet, letter: str, control: bool) -> SysTransducer:
    moves = P.moves(letter)
    trans = []
    pushes: dict = {}

    def pend_name(beta, i):
        k = pushes.setdefault(beta, len(pushes))
        return f"w{k}.{i}"

    def guess(copy_state, Y, beta):
        if beta:
            nxt = pend_name(beta, 1) if len(beta) > 1 else "t"
            trans.append((copy_state, Y, beta[0], nxt))
        else:
            trans.append((copy_state, Y, PAD, "t"))

    def copy_state(name, tops):
        for Y in P.stack:
            trans.append((name, Y, Y, name))
            for beta in tops.get(Y, ()):
                guess(name, Y, beta)
        for t in alphabet:
            if t not in P.stack:
                trans.append((name, t, ABSORB, "z"))

    if control:
        by_pair: dict = {}
        for p, _, X, q, beta in moves:
            by_pair.setdefault((p, q), {}).setdefault(X, set()).add(beta)
        for t in alphabet:
            targets = [(p, q) for (p, q) in by_pair if _marker(p) == t]
            if not targets:
                trans.append(("s", t, ABSORB, "z"))
            for p, q in targets:
                trans.append(("s", t, _marker(q), f"c.{p}.{q}"))
        for (p, q), tops in sorted(by_pair.items()):
            copy_state(f"c.{p}.{q}", {X: sorted(b) for X, b in tops.items()})
    else:
        tops: dict = {}
        for _, _, X, _, beta in moves:
            tops.setdefault(X, set()).add(beta)
        copy_state("s", {X: sorted(b) for X, b in tops.items()})

    for beta, k in list(pushes.items()):
        for i in range(1, len(beta)):
            name = f"w{k}.{i}"
            nxt = f"w{k}.{i + 1}" if i + 1 < len(beta) else "t"
            for t in alphabet:
                trans.append((name, t, beta[i], nxt) if t == PAD else (name, t, ABSORB, "z"))
    for t in alphabet:
        trans.append(("t", t, PAD, "t") if t == PAD else ("t", t, ABSORB, "z"))
        trans.append(("z", t, PAD, "z") if t == PAD else ("z", t, ABSORB, "z"))
    return SysTransducer.build(alphabet, "s", trans)


def encode_pda(P: Pda) -> Encoding:
    """SCA whose language is the empty-stack language of ``P``."""
    check_pda(P)
    control = len(P.states) > 1
    legend = {X: ("stack", X) for X in P.stack}
    letters = list(P.stack)
    if control:
        for p in P.states:
            m = _marker(p)
            if m in legend:
                raise PdaError(f"marker {m!r} collides with a stack symbol")
            legend[m] = ("control", p)
            letters.append(m)
    legend[PAD] = ("pad", None)
    legend[ABSORB] = ("absorb", None)
    alphabet = Alphabet(tuple(letters) + (PAD, ABSORB), PAD, ABSORB)
    phi = {a: _letter_machine(P, alphabet, a, control) for a in P.inputs}
    head = (_marker(P.initial),) if control else ()
    x0 = head + (P.start_symbol,)
    accepting = {(x0, (_marker(p),) if control else ()) for p in P.states}
    if P.accepts_empty:
        accepting.add((x0, x0))
    return Encoding(Sca(SemiSca(P.inputs, phi, alphabet), frozenset(accepting)), legend, x0)


# -- grammars ------------------------------------------------------------------------


def grammar_to_pda(G: Grammar, inputs: Iterable[str]) -> Pda:
    """One-state PDA for a grammar whose rules start with a terminal.

    ``A -> a B1 ... Bk`` becomes the move reading ``a`` with ``A`` on top
    and pushing ``Bk ... B1`` (so ``B1`` ends up on top).  ``S -> ε`` is
    allowed for the start symbol when it never occurs on a right-hand side.
    """
    inputs = tuple(inputs)
    nonterminals = tuple(G.rules)
    trans = set()
    for A, bodies in G.rules.items():
        for body in bodies:
            if not body:
                if A != G.start:
                    raise PdaError(f"only the start symbol may derive ε (not {A!r})")
                trans.add(("q", None, A, "q", ()))
                continue
            a, rest = body[0], body[1:]
            if a not in inputs or not set(rest) <= set(nonterminals):
                raise PdaError(f"rule {A} -> {' '.join(body)} is not terminal-first")
            trans.add(("q", a, A, "q", tuple(reversed(rest))))
    return Pda(("q",), inputs, nonterminals, "q", G.start, frozenset(trans))


def anbn_grammar() -> Grammar:
    return Grammar("S", [("S", ()), ("S", ("a", "T", "B")), ("S", ("a", "B")),
                         ("T", ("a", "T", "B")), ("T", ("a", "B")), ("B", ("b",))])


def anbncm_grammar() -> Grammar:
    """a^n b^n c^m for n, m >= 0."""
    return Grammar("S", [
        ("S", ()), ("S", ("a", "P", "B")), ("S", ("a", "B")), ("S", ("c", "K")), ("S", ("c",)),
        ("S", ("a", "P", "N")), ("S", ("a", "N")),
        ("P", ("a", "P", "B")), ("P", ("a", "B")), ("B", ("b",)),
        ("N", ("b", "K")), ("K", ("c", "K")), ("K", ("c",))])


def ambncn_grammar() -> Grammar:
    """a^m b^n c^n for n, m >= 0."""
    return Grammar("S", [
        ("S", ()), ("S", ("a", "R")), ("S", ("a",)), ("S", ("b", "Q", "C")), ("S", ("b", "C")),
        ("R", ("a", "R")), ("R", ("a",)), ("R", ("b", "Q", "C")), ("R", ("b", "C")),
        ("Q", ("b", "Q", "C")), ("Q", ("b", "C")), ("C", ("c",))])


def epsilon_pda(inputs: Sequence[str] = ("a",)) -> Pda:
    """One state, accepts only the empty word."""
    return Pda(("q",), tuple(inputs), ("Z",), "q", "Z", frozenset({("q", None, "Z", "q", ())}))


def counter_pda() -> Pda:
    """Two control states for a^n b^n (n >= 1) with a one-symbol stack alphabet."""
    t = {("p", "a", "Z", "p", ("A",)), ("p", "a", "A", "p", ("A", "A")),
         ("p", "b", "A", "r", ()), ("r", "b", "A", "r", ())}
    return Pda(("p", "r"), ("a", "b"), ("Z", "A"), "p", "Z", frozenset(t))
