"""Acceptance checks 1-10.  Each test prints one PASS/FAIL line (run with ``-s``)."""

from fractions import Fraction
from itertools import permutations, product

import pytest

from sysrel import corpus as C
from sysrel import regular as R
from sysrel.approx import (Budget, EmptyCertificate, Exhausted, Reached, approx_language,
                           decide_inclusion_n, lim_estimate, reach_semidecide)
from sysrel.encoders.distance import NormalDistance, ball
from sysrel.encoders.pda import anbn_grammar
from sysrel.oracle import (brute_closure, brute_compose_image, brute_language, brute_pairs,
                           brute_sigma, brute_sigma_chain)
from sysrel.projection import (FiniteRelation, chi_nfa, closure_plus, compose_fr, sigma_n, tau_fr)
from sysrel.sca import intersect_sca, language_upto, member, reach_query
from sysrel.transducer import compose, image_nfa, pair_member
from sysrel.words import Alphabet, gcp, pad_to


def verdict(k: int, label: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else f" ({len(failures)} mismatches, first: {failures[0]!r})"
    print(f"\n{status} criterion {k}: {label}{detail}")
    assert not failures


def _clean(nfa, alphabet):
    for tok in alphabet.junk:
        nfa = R.right_strip_filter(nfa, tok)
    return nfa


# -- 1 ----------------------------------------------------------------------------------


def test_criterion_1_semantics_match_brute_force():
    machines = C.machines()
    assert {"ID", "PUSH_a", "HIER", "LOOPY", "ANBN_a", "ANBN_b"} <= set(machines)
    failures = []
    for name, T in machines.items():
        pairs = brute_pairs(T)  # inputs up to 3, outputs up to |x| + |Q|
        for x in T.alphabet.words(3):
            bound = len(x) + len(T.states)
            oracle = {y for (x2, y) in pairs if x2 == x}
            nfa = image_nfa(T, x)
            if set(R.enumerate_words(nfa, bound)) != oracle:
                failures.append((name, x, "image"))
            for y in T.alphabet.words(min(3, bound)):
                if pair_member(T, x, y) != (y in oracle):
                    failures.append((name, x, y))
            for y in oracle:
                if not pair_member(T, x, y) or not nfa.accepts(y):
                    failures.append((name, x, y))
    verdict(1, f"pair_member and image_nfa equal brute_pairs on {len(machines)} machines, |x|<=3",
            failures)


# -- 2 ----------------------------------------------------------------------------------


def _compose_families():
    m = C.machines()
    omega = [k for k, T in m.items() if T.alphabet == C.OMEGA]
    yield from product(omega, repeat=2)
    yield from product(["ANBN_a", "ANBN_b"], repeat=2)


def test_criterion_2_composition_closure():
    m = C.machines()
    failures, count = [], 0
    for a, b in _compose_families():
        T1, T2 = m[a], m[b]
        A = T1.alphabet
        T = compose(T1, T2)
        if not T.report.is_valid:
            failures.append((a, b, "invalid"))
            continue
        count += 1
        for x in A.words(3):
            bound = len(x) + 4
            engine = set(R.enumerate_words(_clean(image_nfa(T, x), A), bound))
            oracle = {y for y in brute_compose_image(T1, T2, x, bound) if not A.is_junk(y)}
            if engine != oracle:
                failures.append((a, b, x))
    verdict(2, f"junk-free image of compose equals chained oracle images ({count} pairs, |x|<=3)",
            failures)


# -- 3 ----------------------------------------------------------------------------------


def test_criterion_3_sigma_homomorphism_and_closure():
    m = C.machines()
    failures = []
    for n in (1, 2, 3):
        for a, b in _compose_families():
            left = sigma_n(compose(m[a], m[b]), n)
            right = compose_fr(sigma_n(m[a], n), sigma_n(m[b], n))
            if left != right:
                failures.append(("hom", a, b, n))
        for name, S in C.semi_scas().items():
            gens = [sigma_n(T, n) for T in S.phi.values()]
            oracle, _ = brute_closure([brute_sigma(T, n) for T in S.phi.values()], S.alphabet, n)
            if closure_plus(gens, S.alphabet, n).pairs != oracle:
                failures.append(("closure", name, n))
    verdict(3, "sigma_n(T1;T2) = sigma_n(T1);sigma_n(T2) and closure_plus = oracle closure, n<=3",
            failures)


# -- 4 ----------------------------------------------------------------------------------


def _level_targets(S, n):
    """Padded accepting pairs of every corpus SCA over ``S`` plus two fixed pairs."""
    A = S.alphabet
    targets = set()
    for sca in C.scas().values():
        if sca.base == S:
            targets |= {(pad_to(A, x, n), pad_to(A, y, n)) for x, y in sca.accepting}
    first, last = A.non_pad()[0], A.non_pad()[-1]
    targets.add(((first,) * n, (first,) * n))
    targets.add(((first,) * n, (last,) * n))
    return sorted(targets)


def test_criterion_4_chi_languages_match_per_word_projection():
    failures, checks = [], 0
    for name, S in C.semi_scas().items():
        for n in (1, 2, 3):
            targets = _level_targets(S, n)
            automata = [(t, chi_nfa(S.phi, *t, alphabet=S.alphabet)) for t in targets]
            for word in S.outer_words(6):
                rel = brute_sigma_chain(S.chain(word), S.alphabet, n)
                for t, nfa in automata:
                    checks += 1
                    if nfa.accepts(word) != (t in rel):
                        failures.append((name, n, word, t))
    verdict(4, f"chi_nfa membership equals per-word sigma_n for |w|<=6, n<=3 ({checks} checks)",
            failures)


# -- 5 ----------------------------------------------------------------------------------


def test_criterion_5_monotone_approximations_contain_language():
    failures = []
    for name, A in C.scas().items():
        L = {n: approx_language(A, n) for n in (1, 2, 3)}
        for n in (1, 2):
            if not R.includes(L[n + 1], L[n]):
                failures.append((name, "decreasing", n))
        for word in brute_language(A, 6):
            for n in (1, 2, 3):
                if not L[n].accepts(word):
                    failures.append((name, word, n))
    verdict(5, "L(A_{n+1}) <= L(A_n) for n<=2 and brute_language(A,6) <= L(A_n) for n<=3",
            failures)


# -- 6 ----------------------------------------------------------------------------------


def _abc(k_max):
    return {("a",) * k + ("b",) * k + ("c",) * k for k in range(k_max + 1)}


def test_criterion_6_pda_encodings():
    failures = []
    anbn = C.scas()["ANBN"]
    grammar = anbn_grammar()
    for k in range(9):
        for word in product(("a", "b"), repeat=k):
            if member(anbn, word) != grammar.derives(word):
                failures.append(("anbn", word))
    both = intersect_sca(C.anbncm_encoding().sca, C.ambncn_encoding().sca)
    accepted = language_upto(both, 9)
    expected = _abc(3)
    for k in range(10):
        for word in product(("a", "b", "c"), repeat=k):
            if (word in accepted) != (word in expected):
                failures.append(("abc", word))
    for word in [("a", "b", "c"), ("a", "a", "b", "c"), ("a", "a", "b", "b", "c", "c")]:
        if member(both, word) != (word in expected):
            failures.append(("abc-member", word))
    verdict(6, "a^n b^n encoding = grammar (|w|<=8); a^n b^n c^m meet a^m b^n c^n = a^n b^n c^n "
               "(|w|<=9)", failures)


# -- 7 ----------------------------------------------------------------------------------


def test_criterion_7_finite_sca_is_correctly_approximated():
    small, big = C.scas()["FINITE"], C.scas()["FINITE_SUPER"]
    k = max(max(len(x), len(y)) for x, y in small.accepting)
    assert k == 2
    failures = []
    # the true verdict: accepting pairs are nested and phi is shared
    truth = small.base == big.base and small.accepting <= big.accepting
    exact_small, exact_big = language_upto(small, 6), language_upto(big, 6)
    if truth != (exact_small <= exact_big):
        failures.append(("truth", truth))
    for n in range(k + 1, k + 3):
        d = decide_inclusion_n(small, big, n)
        if d.verdict != truth or not d.recheck():
            failures.append(("decide", n, d.verdict))
    lims = lim_estimate(small, big, k + 2)
    if any(v != Fraction(int(truth)) for v in lims[k:]):
        failures.append(("lim", lims))
    verdict(7, f"finite SCA (k={k}) into its superset: verdict {truth} at n={k + 1}..{k + 2}, "
               f"Lim {[str(v) for v in lims]}", failures)


# -- 8 ----------------------------------------------------------------------------------


def _w(text):
    return tuple(text.split())


QUERIES = [
    ("ALL_ID", "a", "a"), ("ALL_ID", "a", "b"),
    ("STACK", "", "a b"), ("STACK", "a", ""), ("STACK", "a b", "b"),
    ("PUSHES", "a", "b"), ("PUSHES", "a", "a b a"), ("PUSHES", "b", "a"),
    ("LOOP", "a", "a a"), ("LOOP", "a b", "b"),
    ("HIER", "a a b", "a b a"),
    ("FINITE", "a a", "b a"), ("FINITE", "a a", "a b b"),
    ("GROW", "", "b"), ("GROW", "", "b _ a"), ("GROW", "a", ""),
    ("COUNTER", "a", "b b"), ("COUNTER", "b", "a"), ("COUNTER", "b", "b b b b"),
    ("ANBN", "S", ""),
]


def test_criterion_8_semi_decision_soundness():
    assert len(QUERIES) == 20
    failures, seen = [], set()
    for name, x, y in QUERIES:
        S = C.scas()[name].base
        x, y = _w(x), _w(y)
        out = reach_semidecide(S, x, y, Budget(max_len=5, max_level=3, max_states=20000))
        seen.add(type(out))
        A = reach_query(S, x, y)
        if isinstance(out, Reached):
            if not member(A, out.word):
                failures.append((name, x, y, out))
        elif isinstance(out, EmptyCertificate):
            if any(member(A, word) for word in S.outer_words(8)):
                failures.append((name, x, y, out))
            if not R.is_empty(approx_language(A, out.n)):
                failures.append((name, x, y, "level not empty"))
        elif not isinstance(out, Exhausted):
            failures.append((name, x, y, out))
    if seen != {Reached, EmptyCertificate, Exhausted}:
        failures.append(("outcomes", sorted(t.__name__ for t in seen)))
    verdict(8, "20 reach queries: witnesses re-verify, certificates have no witness |w|<=8, "
               "all three outcomes occur", failures)


# -- 9 ----------------------------------------------------------------------------------


def test_criterion_9_tau_counterexample():
    R1 = FiniteRelation(2, frozenset({(("a", "b"), ("b", "a"))}))
    R2 = FiniteRelation(2, frozenset({(("b", "b"), ("a", "a"))}))
    separate = compose_fr(tau_fr(R1, 1), tau_fr(R2, 1)).pairs
    together = tau_fr(compose_fr(R1, R2), 1).pairs
    failures = []
    if separate != {(("a",), ("a",))}:
        failures.append(("separate", separate))
    if together != frozenset():
        failures.append(("together", together))
    verdict(9, "tau_1(R1);tau_1(R2) = {(a,a)} and tau_1(R1;R2) = {}", failures)


# -- 10 ---------------------------------------------------------------------------------

ABP = Alphabet(("a", "b", "_"), "_")


def _padded(w, n=6):
    return pad_to(ABP, w, n)


def test_criterion_10_distance_layer():
    d = NormalDistance(ABP)
    words = list(ABP.words(4))
    val = {w: d.val(w) for w in words}
    failures = []
    # 1: a longer run of leading pads means a larger value
    for n in range(1, 5):
        lead = [w for w in words if _padded(w)[:n] == ("_",) * n]
        rest = [w for w in words if _padded(w)[:n] != ("_",) * n]
        if lead and rest and min(val[w] for w in lead) <= max(val[v] for v in rest):
            failures.append(("cond1", n))
    # 2: longer common prefix (of the padded words), strictly smaller distance
    scale = (d.base - 1) * d.base ** 5
    ival = {w: int(val[w] * scale) for w in words}
    assert all(Fraction(ival[w], scale) == val[w] for w in words)
    pad6 = {w: _padded(w) for w in words}
    for x in words:
        g = {y: len(gcp(pad6[x], pad6[y])) for y in words if y != x}
        dist = {y: abs(ival[x] - ival[y]) for y in g}
        by_len = {}
        for y, k in g.items():
            lo, hi = by_len.get(k, (None, None))
            v = dist[y]
            by_len[k] = (v if lo is None else min(lo, v), v if hi is None else max(hi, v))
        lens = sorted(by_len)
        for k1, k2 in zip(lens, lens[1:]):
            if not by_len[k2][1] < by_len[k1][0]:
                failures.append(("cond2", x, k1, k2))
    # 3: dist(w, wx) = B^-|w| |val(x) - val(eps)|
    for w in words:
        for x in words:
            if x and d.dist(w, w + x) != Fraction(1, d.base ** len(w)) * abs(d.val(x) - d.val(())):
                failures.append(("cond3", w, x))
    # convexity: every level-n ball is an interval among all words, for every digit order
    for order in permutations(ABP.letters):
        dd = NormalDistance(ABP, order=order)
        vals = {w: dd.val(w) for w in words}
        for n in (1, 2, 3):
            for centre in ABP.words(n):
                inside = set(ball(ABP, centre, n, 4))
                lo = min(vals[v] for v in inside)
                hi = max(vals[v] for v in inside)
                if any(lo <= vals[u] <= hi for u in words if u not in inside):
                    failures.append(("convex", order, n, centre))
    verdict(10, "conditions 1-3 on words <= 4 over {a,b,_}; balls convex for n<=3 under all orders",
            failures)
