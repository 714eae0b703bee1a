"""Alphabets and finite words standing for eventually-padded infinite words.

A word ``w`` over an alphabet with pad symbol ``□`` denotes the infinite word
``w □ □ □ ...``.  Words are kept as tuples of tokens in *eta-normal form*:
the maximal trailing block of pads is removed, interior pads are ordinary
letters.  Tokens are whitespace-free strings, so ``"a b □"`` parses to
``("a", "b", "□")``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Word = tuple  # tuple[str, ...], always eta-normal when produced here

#: Filler used by :func:`convolution`; never allowed inside an alphabet.
BOTTOM = "!"


class AlphabetError(ValueError):
    """Raised for malformed alphabets and for tokens outside an alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite token set with a designated pad and optional absorb token."""

    letters: tuple
    pad: str
    absorb: str | None = None
    # further junk letters, e.g. pairs with one absorbing component in a product
    extra_junk: tuple = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate tokens in {letters!r}")
        for tok in letters:
            if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
                raise AlphabetError(f"bad token {tok!r}")
            if tok == BOTTOM:
                raise AlphabetError(f"{BOTTOM!r} is reserved for convolution")
        if self.pad not in letters:
            raise AlphabetError(f"pad {self.pad!r} not among letters")
        if self.absorb is not None:
            if self.absorb not in letters:
                raise AlphabetError(f"absorb {self.absorb!r} not among letters")
            if self.absorb == self.pad:
                raise AlphabetError("absorb and pad must differ")
        object.__setattr__(self, "extra_junk", tuple(self.extra_junk))
        for tok in self.extra_junk:
            if tok not in letters or tok == self.pad:
                raise AlphabetError(f"junk token {tok!r} must be a non-pad letter")

    @classmethod
    def of(cls, spec: str, pad: str = "_", absorb: str | None = None) -> "Alphabet":
        """Build from a whitespace-separated token string.

        Pad (and absorb, when given) are appended if not already listed.
        """
        letters = list(spec.split())
        for extra in (pad, absorb):
            if extra is not None and extra not in letters:
                letters.append(extra)
        return cls(tuple(letters), pad, absorb)

    def __contains__(self, token) -> bool:
        return token in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @cached_property
    def _index(self) -> dict:
        return {t: i for i, t in enumerate(self.letters)}

    def index(self, token: str) -> int:
        return self._index[token]

    def check(self, tokens: Iterable[str]) -> None:
        for tok in tokens:
            if tok not in self._index:
                raise AlphabetError(f"token {tok!r} not in alphabet {self.letters!r}")

    @cached_property
    def junk(self) -> frozenset:
        """Tokens marking a run as discarded (the absorbing symbol and friends)."""
        base = {self.absorb} if self.absorb is not None else set()
        return frozenset(base | set(self.extra_junk))

    def is_junk(self, w: Iterable[str]) -> bool:
        return any(t in self.junk for t in w)

    def non_pad(self) -> tuple:
        return tuple(t for t in self.letters if t != self.pad)

    def word(self, text: str | Sequence[str]) -> Word:
        """Parse ``text`` (string or token sequence) into an eta-normal word."""
        tokens = tuple(text.split()) if isinstance(text, str) else tuple(text)
        return eta_normalize(self, tokens)

    def words(self, max_len: int, *, normal: bool = True) -> Iterator[Word]:
        """All words of length <= max_len, shortest first.

        With ``normal`` only eta-normal words (no trailing pad) are produced.
        """
        for k in range(max_len + 1):
            for tup in _product(self.letters, k):
                if normal and tup and tup[-1] == self.pad:
                    continue
                yield tup


def _product(letters, k):
    if k == 0:
        yield ()
        return
    for head in _product(letters, k - 1):
        for t in letters:
            yield head + (t,)


def eta_normalize(alphabet: Alphabet, raw: Sequence[str]) -> Word:
    """Strip the trailing block of pads from ``raw``."""
    tokens = tuple(raw)
    alphabet.check(tokens)
    end = len(tokens)
    while end and tokens[end - 1] == alphabet.pad:
        end -= 1
    return tokens[:end]


def pad_to(alphabet: Alphabet, w: Sequence[str], n: int) -> tuple:
    """First ``n`` letters of ``w □ □ ...`` (truncates longer words)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    w = tuple(w)
    if len(w) >= n:
        return w[:n]
    return w + (alphabet.pad,) * (n - len(w))


def gcp(w: Sequence[str], v: Sequence[str]) -> Word:
    """Greatest common prefix."""
    out = []
    for a, b in zip(w, v):
        if a != b:
            break
        out.append(a)
    return tuple(out)


def convolution(w: Sequence[str], v: Sequence[str]) -> list:
    """Letter pairs of ``w`` and ``v``, the shorter one filled with :data:`BOTTOM`."""
    n = max(len(w), len(v))
    w = tuple(w) + (BOTTOM,) * (n - len(w))
    v = tuple(v) + (BOTTOM,) * (n - len(v))
    return list(zip(w, v))


def same_prefix(alphabet: Alphabet, x: Sequence[str], y: Sequence[str], n: int) -> bool:
    """The ~n relation: ``x □^ω`` and ``y □^ω`` agree on their first n letters."""
    return pad_to(alphabet, x, n) == pad_to(alphabet, y, n)


def fmt(w: Sequence[str]) -> str:
    """Space-joined rendering; the empty word renders as ``ε``."""
    return " ".join(w) if w else "ε"
