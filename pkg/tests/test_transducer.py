from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sysrel import corpus as C
from sysrel import regular as R
from sysrel.oracle import brute_image
from sysrel.transducer import (SysTransducer, TransducerError, compose, diamond, empty_relation,
                               identity, image_nfa, image_words, pair_member, preserves_junk,
                               product_alphabet, to_dot, validate, zip_words)
from sysrel.words import Alphabet, AlphabetError

AP = Alphabet(("a", "_"), "_")
OM = C.OMEGA
M = C.machines()
OMEGA_MACHINES = [k for k, T in M.items() if T.alphabet == OM]
word = st.lists(st.sampled_from(OM.letters), max_size=3).map(lambda w: OM.word(w))


def w(text):
    return tuple(text.split())


def test_identity_is_valid():
    rep = validate(identity(AP))
    assert rep.is_valid and rep.final_states == {"q"}
    assert rep.totality_violations == [] and rep.pad_cycle_violations == []


def test_totality_violation_reported():
    A = Alphabet(("a", "b", "_"), "_")
    T = SysTransducer.build(A, "q", [("q", "a", "a", "q"), ("q", "_", "_", "q")])
    rep = validate(T)
    assert not rep.is_valid and rep.totality_violations == [("q", "b")]
    with pytest.raises(TransducerError):
        pair_member(T, (), ())


def test_pad_cycle_violation_reported():
    T = SysTransducer.build(AP, "q", [("q", "a", "a", "q"), ("q", "_", "a", "q")])
    rep = validate(T)
    assert not rep.is_valid and rep.pad_cycle_violations == [("q", "_", "a", "q")]
    assert "non-pad output" in rep.describe()


def test_unknown_letter_or_state():
    with pytest.raises(AlphabetError):
        SysTransducer.build(AP, "q", [("q", "z", "a", "q")])
    with pytest.raises(TransducerError):
        SysTransducer(AP, frozenset({"q"}), "p", frozenset())


def test_pair_member_examples():
    assert pair_member(M["ID"], w("a b"), w("a b"))
    assert pair_member(M["PUSH_a"], w("a b"), w("a b a"))
    assert not pair_member(M["PUSH_a"], w("a b"), w("a b b"))
    # inputs are read as eta-normal words
    assert pair_member(M["ID"], w("a _ _"), w("a"))


def test_image_examples():
    assert R.enumerate_words(image_nfa(M["ID"], w("a b")), 5) == [w("a b")]
    clean = R.right_strip_filter(image_nfa(M["PUSH_a"], w("a b")), "#")
    assert R.enumerate_words(clean, 3 + len(M["PUSH_a"].states)) == [w("a b a")]
    loopy = image_nfa(M["LOOPY"], w("a"))
    assert not R.is_finite(loopy) and image_words(M["LOOPY"], w("a")) is None
    expected = {y for y in brute_image(M["LOOPY"], w("a"), 6)}
    assert expected and all(loopy.accepts(y) for y in expected)
    assert w("a _ _ a") in expected


def test_compose_examples():
    T = compose(M["PUSH_a"], M["PUSH_b"])
    # x = "a": an arbitrary pad-free input
    assert pair_member(T, w("a"), w("a a b"))
    assert not pair_member(T, w("a"), w("a b a"))
    assert "|" in T.initial
    with pytest.raises(AlphabetError):
        compose(M["ID"], M["INC"])


@pytest.mark.parametrize("name", ["PUSH_a", "POP", "LOOPY", "HIER"])
def test_identity_is_neutral(name):
    T = M[name]
    left, right = compose(M["ID"], T), compose(T, M["ID"])
    for x in OM.words(3):
        for y in OM.words(3):
            expected = pair_member(T, x, y)
            assert pair_member(left, x, y) == expected == pair_member(right, x, y)


def test_compose_associative_semantically():
    a, b, c = M["PUSH_a"], M["POP"], M["LOOPY"]
    left, right = compose(compose(a, b), c), compose(a, compose(b, c))
    for x in OM.words(3):
        for y in OM.words(3):
            assert pair_member(left, x, y) == pair_member(right, x, y)


def test_diamond_identity_is_identity():
    D = diamond(identity(OM), identity(OM))
    P = product_alphabet(OM, OM)
    assert D.alphabet == P and P.pad == "_"
    assert all(b == a for _, a, b, _ in D.transitions)
    assert validate(D).is_valid


def test_diamond_with_empty_relation_has_no_clean_pairs():
    D = diamond(M["ID"], empty_relation(OM))
    for x in D.alphabet.words(2):
        clean = R.right_strip_filter(image_nfa(D, x), D.alphabet.absorb)
        for tok in D.alphabet.extra_junk:
            clean = R.right_strip_filter(clean, tok)
        assert R.is_empty(clean)


@given(st.sampled_from(OMEGA_MACHINES), st.sampled_from(OMEGA_MACHINES),
       word, word, word, word)
def test_diamond_is_letterwise_conjunction(n1, n2, x1, x2, y1, y2):
    T1, T2 = M[n1], M[n2]
    D = diamond(T1, T2)
    got = pair_member(D, zip_words(OM, OM, x1, x2), zip_words(OM, OM, y1, y2))
    assert got == (pair_member(T1, x1, y1) and pair_member(T2, x2, y2))


def test_preserves_junk_on_corpus():
    assert preserves_junk(M["PUSH_a"]) and preserves_junk(M["POP"])
    # the register copies its first letter one step late, so an input '#' can vanish
    assert not preserves_junk(M["SHIFT_a"])


def test_dot_export():
    dot = to_dot(M["PUSH_a"], "push")
    assert dot.startswith("digraph push {") and "__start" in dot


# -- validator against an independent cycle search on random machines --------------

SMALL = Alphabet(("a", "_"), "_")


@st.composite
def machines(draw):
    n = draw(st.integers(1, 3))
    states = [f"q{i}" for i in range(n)]
    trans = draw(st.sets(st.tuples(st.sampled_from(states), st.sampled_from(SMALL.letters),
                                   st.sampled_from(SMALL.letters), st.sampled_from(states)),
                         max_size=10))
    return SysTransducer.build(SMALL, "q0", trans, states)


def _bad_pad_cycle(T):
    """A closed pad-input walk of length <= |Q| from a reachable state with a non-pad output."""
    delta = {}
    for q, a, b, r in T.transitions:
        if a == T.alphabet.pad:
            delta.setdefault(q, []).append((b, r))
    reach, todo = {T.initial}, [T.initial]
    while todo:
        q = todo.pop()
        for (p, _, _, r) in T.transitions:
            if p == q and r not in reach:
                reach.add(r)
                todo.append(r)
    for q in reach:
        walks = [(q, False)]
        for _ in range(len(T.states)):
            walks = [(r, dirty or b != T.alphabet.pad) for s, dirty in walks
                     for b, r in delta.get(s, ())]
            if any(s == q and dirty for s, dirty in walks):
                return True
    return False


def _total(T):
    reach = T.reachable
    return all(T.out.get((q, a)) for q in reach for a in T.alphabet)


@given(machines())
def test_validate_matches_direct_checks(T):
    rep = validate(T)
    assert bool(rep.pad_cycle_violations) == _bad_pad_cycle(T)
    assert (not rep.totality_violations) == _total(T)
    assert rep.is_valid == (not rep.pad_cycle_violations and not rep.totality_violations)


@given(machines())
def test_image_agrees_with_pair_member_on_random_machines(T):
    if not validate(T).is_valid:
        return
    for x in SMALL.words(3):
        nfa = image_nfa(T, x)
        for y in SMALL.words(3 + len(T.states)):
            assert nfa.accepts(y) == pair_member(T, x, y)
        assert set(brute_image(T, x, 3 + len(T.states))) == set(
            R.enumerate_words(nfa, 3 + len(T.states)))
