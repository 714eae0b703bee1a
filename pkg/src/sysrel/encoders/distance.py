"""Valuations of words as numbers in [0, 1] and the induced distance.

Two valuations are offered.  ``positional`` reads a word as a base-|Ω|
fraction with the pad as the largest digit (``val("b") = 1/3`` over
``a < b < _``).  It is simple but lets different words collide, so
distances do not always shrink with longer common prefixes.
``separated`` spreads the digits out (odd digits in base ``2|Ω| + 1``) and
values the whole infinite word ``w _ _ ...``, the pad tail contributing a
geometric series.  Each digit then owns a sub-interval of its own, so
distances shrink strictly with longer common prefixes and every prefix
ball is an interval, whatever the digit order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..projection import chi_nfa
from ..regular import Nfa
from ..sca import SemiSca
from ..words import Alphabet, eta_normalize, pad_to

MODES = ("positional", "separated")


@dataclass(frozen=True)
class NormalDistance:
    alphabet: Alphabet
    order: tuple | None = None  # letters from smallest to largest digit
    mode: str = "separated"

    def __post_init__(self):
        order = tuple(self.order) if self.order is not None else self.default_order(self.alphabet)
        if sorted(order) != sorted(self.alphabet.letters):
            raise ValueError("order must list every letter exactly once")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        object.__setattr__(self, "order", order)

    @staticmethod
    def default_order(alphabet: Alphabet) -> tuple:
        return alphabet.non_pad() + (alphabet.pad,)

    @cached_property
    def base(self) -> int:
        k = len(self.order)
        return k if self.mode == "positional" else 2 * k + 1

    @cached_property
    def digits(self) -> dict:
        if self.mode == "positional":
            return {t: i for i, t in enumerate(self.order)}
        return {t: 2 * i + 1 for i, t in enumerate(self.order)}

    def val(self, w: Sequence[str]) -> Fraction:
        w = eta_normalize(self.alphabet, w)
        B, d = self.base, self.digits
        total = sum((Fraction(d[t], B ** (i + 1)) for i, t in enumerate(w)), Fraction(0))
        if self.mode == "separated":
            # the pad tail: sum of d_pad B^-i for i > |w|
            total += Fraction(d[self.alphabet.pad], (B - 1) * B ** len(w))
        return total

    def dist(self, x: Sequence[str], y: Sequence[str]) -> Fraction:
        return abs(self.val(x) - self.val(y))


def ball(alphabet: Alphabet, x: Sequence[str], n: int, max_len: int) -> list:
    """Words up to ``max_len`` agreeing with ``x □^ω`` on the first ``n`` letters."""
    centre = pad_to(alphabet, x, n)
    return [v for v in alphabet.words(max_len) if pad_to(alphabet, v, n) == centre]


def region_query(S: SemiSca, x: Sequence[str], y: Sequence[str], n: int) -> Nfa:
    """Outer words moving some word of the level-n ball of ``x`` into that of ``y``."""
    if n < 1:
        raise ValueError("level must be >= 1")
    A = S.alphabet
    return chi_nfa(S.phi, pad_to(A, x, n), pad_to(A, y, n), alphabet=A)
