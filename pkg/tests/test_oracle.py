import pytest

from sysrel import corpus as C
from sysrel.oracle import (SimConfig, brute_chain_member, brute_compose_image, brute_image,
                           brute_language, brute_pairs, brute_sigma_chain)
from sysrel.sca import Sca, member
from sysrel.transducer import compose, pair_member

M = C.machines()
OM = C.OMEGA


def test_identity_pairs_are_diagonal():
    pairs = brute_pairs(M["ID"], SimConfig(max_input=2))
    assert pairs == {(x, x) for x in OM.words(2)}


def test_bounds_are_respected():
    cfg = SimConfig(max_input=2, max_output=3)
    pairs = brute_pairs(M["LOOPY"], cfg)
    assert pairs and all(len(x) <= 2 and len(y) <= 3 for x, y in pairs)
    with pytest.raises(ValueError):
        SimConfig(max_input=-1)


def test_push_pairs_match_pair_member():
    T = M["PUSH_a"]
    pairs = brute_pairs(T)
    for x in OM.words(3):
        for y in OM.words(3 + len(T.states)):
            assert ((x, y) in pairs) == pair_member(T, x, y)


def test_brute_image_of_pop_guesses_the_last_letter():
    # guessing that "a" is last leaves a "b" behind, which turns into junk
    assert brute_image(M["POP"], ("a", "b"), 2) == {("a",), ("_", "#")}


def test_compose_image_oracle():
    got = brute_compose_image(M["PUSH_a"], M["PUSH_b"], ("b",), 4)
    assert got == {("b", "a", "b")}
    T = compose(M["PUSH_a"], M["PUSH_b"])
    assert pair_member(T, ("b",), ("b", "a", "b"))


def test_chain_oracles():
    chain = [M["PUSH_a"], M["POP"]]
    assert brute_chain_member(chain, OM, ("b",), ("b",))
    assert not brute_chain_member(chain, OM, ("b",), ("b", "a"))
    assert brute_chain_member([], OM, ("a", "_"), ("a",))
    rel = brute_sigma_chain([], OM, 1)
    assert rel == {((t,), (t,)) for t in OM.letters}


def test_brute_language_basics():
    empty = Sca(C.scas()["STACK"].base, frozenset())
    assert brute_language(empty, 3) == frozenset()
    stack = C.scas()["STACK"]
    short, longer = brute_language(stack, 2), brute_language(stack, 3)
    assert short <= longer
    assert all(member(stack, word) for word in longer)
