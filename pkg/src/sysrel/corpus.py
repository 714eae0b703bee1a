"""Small example machines and SCAs used by the tests, the CLI demos and the shipped files.

Most machines live over ``OMEGA = {a, b, _, #}`` with pad ``_`` and
absorbing letter ``#``.  Runs that go wrong write ``#`` and then stay in a
sink ``z`` that copies pads and turns everything else into ``#``.
"""

from __future__ import annotations

from functools import lru_cache

from .encoders.hierarchy import HierarchySpec, Rule, build_hierarchy_machine
from .encoders.pda import (ambncn_grammar, anbn_grammar, anbncm_grammar, counter_pda,
                           encode_pda, epsilon_pda, grammar_to_pda)
from .sca import Sca, SemiSca, identity_sca
from .transducer import SysTransducer, empty_relation, identity
from .words import Alphabet

OMEGA = Alphabet(("a", "b", "_", "#"), "_", "#")
BINARY = Alphabet(("a", "b", "_"), "_")
PAD, JUNK = "_", "#"


def _sink(alphabet=OMEGA, name="z"):
    return [(name, t, PAD if t == PAD else alphabet.absorb, name) for t in alphabet]


def _settle(name, alphabet=OMEGA):
    """Pads only from here on; anything else is junk."""
    return [(name, t, PAD, name) if t == PAD else (name, t, JUNK, "z") for t in alphabet]


def push(letter: str) -> SysTransducer:
    """Append ``letter``: ``x -> x letter`` for pad-free ``x``."""
    trans = [("c", t, t, "c") for t in ("a", "b")]
    trans += [("c", PAD, letter, "d"), ("c", JUNK, JUNK, "z")]
    return SysTransducer.build(OMEGA, "c", trans + _settle("d") + _sink())


def pop() -> SysTransducer:
    """Drop the last letter: ``x c -> x``, guessing which letter is last."""
    trans = []
    for t in ("a", "b"):
        trans += [("c", t, t, "c"), ("c", t, PAD, "t")]
    trans += [("c", PAD, JUNK, "z"), ("c", JUNK, JUNK, "z")]
    return SysTransducer.build(OMEGA, "c", trans + _settle("t") + _sink())


def loopy() -> SysTransducer:
    """Copy, then maybe write one ``a`` after any number of pads."""
    trans = [("c", t, t, "c") for t in ("a", "b")]
    trans += [("c", PAD, PAD, "c"), ("c", PAD, PAD, "s"), ("c", PAD, "a", "f"),
              ("c", JUNK, JUNK, "z"), ("s", PAD, PAD, "s"), ("s", PAD, "a", "f")]
    trans += [("s", t, JUNK, "z") for t in ("a", "b", JUNK)]
    return SysTransducer.build(OMEGA, "c", trans + _settle("f") + _sink())


def shift(letter: str) -> SysTransducer:
    """Two-letter register: ``x1 x2 ... -> letter x1``; later letters must be pads."""
    trans = [("p", t, letter, f"r{OMEGA.index(t)}") for t in OMEGA]
    trans += [(f"r{OMEGA.index(t)}", u, t, "p3") for t in OMEGA for u in OMEGA]
    return SysTransducer.build(OMEGA, "p", trans + _settle("p3") + _sink())


def start() -> SysTransducer:
    """The empty word becomes ``b a``; any other input is junk."""
    trans = [("s0", PAD, "b", "s1"), ("s1", PAD, "a", "s2")]
    trans += [(q, t, JUNK, "z") for q in ("s0", "s1") for t in ("a", "b", JUNK)]
    return SysTransducer.build(OMEGA, "s0", trans + _settle("s2") + _sink())


def insert_pad() -> SysTransducer:
    """``x1 x2 x3 ... -> x1 _ x2 x3 ...`` (a one-letter delay line)."""
    mem = {t: f"m{OMEGA.index(t)}" for t in OMEGA}
    trans = [("i0", t, t, "i1") for t in OMEGA]
    trans += [("i1", t, PAD, mem[t]) for t in OMEGA]
    trans += [(mem[t], u, t, mem[u]) for t in OMEGA for u in OMEGA]
    return SysTransducer.build(OMEGA, "i0", trans)


def increment() -> SysTransducer:
    """Binary successor, least significant digit first (``a`` = 0, ``b`` = 1)."""
    trans = [("carry", "a", "b", "copy"), ("carry", "b", "a", "carry"),
             ("carry", PAD, "b", "copy")]
    trans += [("copy", t, t, "copy") for t in BINARY]
    return SysTransducer.build(BINARY, "carry", trans)


def hierarchy_spec() -> HierarchySpec:
    """Regions x1 (width 1) and x2 (width 2); x2 is flipped when x1 = a."""
    flip = Rule(((0, 0, "a"),), {"a": "b", "b": "a"})
    return HierarchySpec(OMEGA, (1, 2), ((), (flip,)))


def hierarchy() -> SysTransducer:
    return build_hierarchy_machine(hierarchy_spec())


def succ_chain_relation(k: int):
    """Letters ``l0 .. lk`` and the level-1 relation ``{(li, li+1) : i < k}``."""
    from .projection import FiniteRelation
    letters = tuple(f"l{i}" for i in range(k + 1)) + (PAD,)
    alphabet = Alphabet(letters, PAD)
    rel = FiniteRelation(1, frozenset(((f"l{i}",), (f"l{i + 1}",)) for i in range(k)))
    return alphabet, rel


def succ_machine(k: int) -> SysTransducer:
    """Bounded successor on the first letter: ``li -> li+1`` for ``i < k``, top is junk."""
    letters = tuple(f"l{i}" for i in range(k + 1)) + (PAD, JUNK)
    A = Alphabet(letters, PAD, JUNK)
    trans = [("s", f"l{i}", f"l{i + 1}", "c") for i in range(k)]
    trans += [("s", f"l{k}", JUNK, "c"), ("s", PAD, PAD, "c"), ("s", JUNK, JUNK, "c")]
    trans += [("c", t, t, "c") for t in A]
    return SysTransducer.build(A, "s", trans)


# -- named collections ---------------------------------------------------------------


@lru_cache(maxsize=None)
def machines() -> dict:
    """Machines over OMEGA (plus the binary counter) by name."""
    enc = anbn_encoding()
    return {
        "ID": identity(OMEGA),
        "PUSH_a": push("a"),
        "PUSH_b": push("b"),
        "POP": pop(),
        "LOOPY": loopy(),
        "HIER": hierarchy(),
        "SHIFT_a": shift("a"),
        "SHIFT_b": shift("b"),
        "START": start(),
        "INS": insert_pad(),
        "EMPTY": empty_relation(OMEGA),
        "INC": increment(),
        "ANBN_a": enc.sca.phi["a"],
        "ANBN_b": enc.sca.phi["b"],
    }


@lru_cache(maxsize=None)
def anbn_encoding():
    return encode_pda(grammar_to_pda(anbn_grammar(), ("a", "b")))


@lru_cache(maxsize=None)
def anbncm_encoding():
    return encode_pda(grammar_to_pda(anbncm_grammar(), ("a", "b", "c")))


@lru_cache(maxsize=None)
def ambncn_encoding():
    return encode_pda(grammar_to_pda(ambncn_grammar(), ("a", "b", "c")))


@lru_cache(maxsize=None)
def counter_encoding():
    return encode_pda(counter_pda())


@lru_cache(maxsize=None)
def epsilon_encoding():
    return encode_pda(epsilon_pda(("a",)))


def _semi(**phi) -> SemiSca:
    return SemiSca(tuple(phi), phi)


@lru_cache(maxsize=None)
def scas() -> dict:
    """Example SCAs by name."""
    m = machines()
    stack = _semi(pa=m["PUSH_a"], pb=m["PUSH_b"], pop=m["POP"])
    shifts = _semi(sa=m["SHIFT_a"], sb=m["SHIFT_b"])
    grow = _semi(st=m["START"], ins=m["INS"])
    return {
        "ALL_ID": identity_sca(("a", "b"), OMEGA),
        "EMPTY_F": Sca(_semi(a=m["ID"], b=m["ID"]), frozenset()),
        "STACK": Sca(stack, frozenset({((), ())})),
        "PUSHES": Sca(_semi(pa=m["PUSH_a"], pb=m["PUSH_b"]), frozenset({(("a",), ("b",))})),
        "LOOP": Sca(_semi(l=m["LOOPY"], pop=m["POP"]), frozenset({(("a",), ("a", "a"))})),
        "HIER": Sca(_semi(h=m["HIER"]), frozenset({(("a", "a", "b"), ("a", "b", "a"))})),
        "FINITE": Sca(shifts, frozenset({(("a", "a"), ("b", "a"))})),
        "FINITE_SUPER": Sca(shifts, frozenset({(("a", "a"), ("b", "a")), (("a", "a"), ("b", "b"))})),
        "GROW": Sca(grow, frozenset({((), ("b",))})),
        "GROW_EMPTY": Sca(grow, frozenset()),
        "COUNTER": Sca(_semi(inc=m["INC"]), frozenset({(("a",), ("b",))})),
        "ANBN": anbn_encoding().sca,
        "COUNTER_PDA": counter_encoding().sca,
        "EPSILON": epsilon_encoding().sca,
    }


def semi_scas() -> dict:
    """The semi-SCAs underlying :func:`scas` (one per distinct letter map)."""
    seen, out = set(), {}
    for name, A in scas().items():
        if A.base not in seen:
            seen.add(A.base)
            out[name] = A.base
    return out


# -- files -------------------------------------------------------------------------------


def pdas() -> dict:
    return {
        "anbn": grammar_to_pda(anbn_grammar(), ("a", "b")),
        "anbncm": grammar_to_pda(anbncm_grammar(), ("a", "b", "c")),
        "ambncn": grammar_to_pda(ambncn_grammar(), ("a", "b", "c")),
        "counter": counter_pda(),
        "epsilon": epsilon_pda(("a",)),
    }


def write_corpus(directory) -> list:
    """Write every corpus machine, SCA, PDA and a distance alphabet below ``directory``."""
    from pathlib import Path

    from . import io
    from .encoders.distance import NormalDistance

    root = Path(directory)
    written = []
    (root / "machines").mkdir(parents=True, exist_ok=True)
    for name, T in machines().items():
        path = root / "machines" / f"{name.lower()}.syst"
        io.save_transducer(T, path)
        written.append(path)
    for name, A in scas().items():
        written.append(io.save_sca(A, root / "scas", name.lower()))
    (root / "pda").mkdir(parents=True, exist_ok=True)
    for name, P in pdas().items():
        path = root / "pda" / f"{name}.pda"
        path.write_text(io.serialize_pda(P), encoding="utf-8")
        written.append(path)
    for mode in ("separated", "positional"):
        path = root / f"abp-{mode}.alphabet"
        path.write_text(io.serialize_distance(NormalDistance(BINARY, mode=mode)), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    import sys

    for p in write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus"):
        print(p)
