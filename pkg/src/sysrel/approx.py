"""Level-n approximations of SCA languages and what can be decided about them.

The level-n approximation accepts ``w`` when ``phi(w)`` relates some pair
that agrees with an accepting pair on the first ``n`` letters.  These
languages are regular, shrink as ``n`` grows and converge to the true
language; emptiness, universality and inclusion are decidable at every
level.  :func:`reach_semidecide` interleaves a witness search with level
certificates, which is the best one can do in general.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import regular
from .projection import MonoidLimit, action_nfa
from .regular import Nfa
from .sca import Sca, SemiSca, member, reach_query
from .transducer import chain_pair_member
from .words import pad_to


@dataclass(frozen=True)
class ApproxDecision:
    kind: str  # "empty" | "universal" | "inclusion"
    n: int
    verdict: bool
    automata: tuple  # the Nfa objects the verdict was computed from
    seconds: float = 0.0

    def record(self) -> dict:
        return {"problem": self.kind, "n": self.n, "verdict": self.verdict,
                "sizes": [a.size for a in self.automata], "seconds": round(self.seconds, 6)}

    def recheck(self) -> bool:
        return _decide(self.kind, self.automata) == self.verdict


def _decide(kind: str, automata: tuple) -> bool:
    if kind == "empty":
        return regular.is_empty(automata[0])
    if kind == "universal":
        return regular.is_universal(automata[0])
    if kind == "inclusion":
        return regular.includes(automata[0], automata[1])
    raise ValueError(f"unknown problem {kind!r}")


def approx_language(A: Sca, n: int, max_states: int | None = None) -> Nfa:
    """Regular language of the level-n approximation of ``A``."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if not A.accepting:
        return Nfa.empty(A.outer)
    inner = A.alphabet
    targets = [(pad_to(inner, x, n), pad_to(inner, y, n)) for x, y in A.accepting]
    return action_nfa(A.phi, n, targets, alphabet=inner, max_states=max_states)


def _timed(kind, n, automata, start) -> ApproxDecision:
    verdict = _decide(kind, automata)
    return ApproxDecision(kind, n, verdict, automata, time.perf_counter() - start)


def decide_empty_n(A: Sca, n: int) -> ApproxDecision:
    start = time.perf_counter()
    return _timed("empty", n, (approx_language(A, n),), start)


def decide_universal_n(A: Sca, n: int) -> ApproxDecision:
    start = time.perf_counter()
    return _timed("universal", n, (approx_language(A, n),), start)


def decide_inclusion_n(A: Sca, B: Sca, n: int) -> ApproxDecision:
    """Whether the level-n language of ``A`` is contained in that of ``B``."""
    if set(A.outer) != set(B.outer):
        raise regular.AlphabetMismatch("inclusion needs one outer alphabet")
    start = time.perf_counter()
    return _timed("inclusion", n, (approx_language(A, n), approx_language(B, n)), start)


def lim_estimate(A: Sca, B: Sca, horizon: int) -> list:
    """``[Lim_1, ..., Lim_N]``: running share of levels where inclusion holds."""
    return lim_from_verdicts([decide_inclusion_n(A, B, n).verdict
                              for n in range(1, horizon + 1)])


def lim_from_verdicts(verdicts: Sequence[bool]) -> list:
    if not verdicts:
        raise ValueError("horizon must be >= 1")
    out, hits = [], 0
    for i, v in enumerate(verdicts, start=1):
        hits += bool(v)
        out.append(Fraction(hits, i))
    return out


# -- the interleaved semi-decision procedure ----------------------------------------


@dataclass(frozen=True)
class Reached:
    word: tuple


@dataclass(frozen=True)
class EmptyCertificate:
    n: int


@dataclass(frozen=True)
class Exhausted:
    max_len: int
    max_level: int
    words_tried: int
    levels_tried: int
    reason: str = "budget"


@dataclass
class Budget:
    max_len: int = 6
    max_level: int = 3
    max_states: int | None = 5000
    log: list = field(default_factory=list)


def reach_semidecide(S: SemiSca, x: Sequence[str], y: Sequence[str],
                     budget: Budget | None = None):
    """Search for ``w`` with ``(x, y)`` in ``phi(w)`` and, by turns, for a level
    at which the approximation is already empty.

    Round ``k`` tests all outer words of length ``k`` and then level ``k+1``.
    The first conclusive answer wins; :class:`Exhausted` is returned when
    both arms run out of budget.
    """
    budget = budget or Budget()
    A = reach_query(S, x, y)
    (x, y), = A.accepting
    words_tried = levels_tried = 0
    length, level = 0, 1
    layer = [()]
    limit_hit = False
    while length <= budget.max_len or level <= budget.max_level:
        if length <= budget.max_len:
            for w in layer:
                words_tried += 1
                if chain_pair_member(S.chain(w), x, y):
                    budget.log.append(("word", length, w))
                    return Reached(w)
            budget.log.append(("word", length, None))
            length += 1
            layer = [w + (a,) for w in layer for a in S.outer] if length <= budget.max_len else []
        if level <= budget.max_level and not limit_hit:
            try:
                lang = approx_language(A, level, budget.max_states)
            except MonoidLimit:
                budget.log.append(("level", level, "state budget"))
                limit_hit = True
            else:
                levels_tried += 1
                empty = regular.is_empty(lang)
                budget.log.append(("level", level, empty))
                if empty:
                    return EmptyCertificate(level)
            level += 1
        elif level <= budget.max_level:
            level = budget.max_level + 1
    return Exhausted(budget.max_len, budget.max_level, words_tried, levels_tried,
                     "state budget" if limit_hit else "budget")


def verify_outcome(S: SemiSca, x, y, outcome, check_len: int = 8) -> bool:
    """Re-check an outcome independently of how it was found."""
    A = reach_query(S, x, y)
    if isinstance(outcome, Reached):
        return member(A, outcome.word)
    if isinstance(outcome, EmptyCertificate):
        return not any(member(A, w) for w in S.outer_words(check_len))
    return True
