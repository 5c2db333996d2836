import itertools
import random
from fractions import Fraction

import pytest

from mzvkit.indices import EMPTY, Index
from mzvkit.rings import BiSeries
from mzvkit.words import (
    E0, E1, NcPoly, antipode, coproduct, counit, embed, embed_combination,
    endo_A, endo_C, endo_eps, endo_H, endo_S, endo_tau, extract_combination,
    geometric, harmonic, in_h0, in_h1, index_harmonic, index_of_word,
    index_shuffle, lift_biseries, shuffle, shuffle_shifted, sigma_t,
    telescope_sides, word_of_index,
)

W = NcPoly.from_word


def words_up_to(n, h1_only=False):
    for length in range(n + 1):
        for w in itertools.product((E0, E1), repeat=length):
            if h1_only and w and w[0] == E0:
                continue
            yield w


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def shuffle_oracle(w1, w2):
    """Two-term recursion, independent of the interleaving enumeration."""
    if not w1:
        return {w2: 1}
    if not w2:
        return {w1: 1}
    out = {}
    for w, c in shuffle_oracle(w1[:-1], w2).items():
        out[w + w1[-1:]] = out.get(w + w1[-1:], 0) + c
    for w, c in shuffle_oracle(w1, w2[:-1]).items():
        out[w + w2[-1:]] = out.get(w + w2[-1:], 0) + c
    return out


def stuffle_index_oracle(k, l):
    """Head-recursion on indices, independent of the word-level transport."""
    if not k:
        return {Index(l): 1}
    if not l:
        return {Index(k): 1}
    out = {}

    def add(prefix, terms):
        for idx, c in terms.items():
            key = Index((prefix,) + tuple(idx))
            out[key] = out.get(key, 0) + c

    add(k[0], stuffle_index_oracle(k[1:], l))
    add(l[0], stuffle_index_oracle(k, l[1:]))
    add(k[0] + l[0], stuffle_index_oracle(k[1:], l[1:]))
    return out


def truncated_sum(k, n_max):
    """Exact partial nested harmonic sum with indices below n_max."""
    total = Fraction(0)

    def rec(depth, lower, acc):
        nonlocal total
        if depth == len(k):
            total += acc
            return
        for m in range(lower + 1, n_max):
            rec(depth + 1, m, acc / Fraction(m) ** k[depth])

    rec(0, 0, Fraction(1))
    return total


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def test_word_index_bijection():
    assert word_of_index(EMPTY) == ()
    assert word_of_index(Index((2,))) == (E1, E0)
    assert word_of_index(Index((1, 2))) == (E1, E1, E0)
    for w in words_up_to(7, h1_only=True):
        assert word_of_index(index_of_word(w)) == w


def test_membership_predicates():
    assert in_h1(()) and in_h0(())
    assert in_h1((E1, E1)) and not in_h0((E1, E1))
    assert in_h0((E1, E0)) and not in_h1((E0,))


def test_embed_signs():
    assert embed(EMPTY) == NcPoly.one()
    assert embed(Index((2,))) == W((E1, E0), Fraction(-1))
    assert embed(Index((1, 2))) == W((E1, E1, E0))


def test_harmonic_examples():
    e1 = W((E1,))
    assert harmonic(e1, e1) == NcPoly({(E1, E1): Fraction(2), (E1, E0): Fraction(-1)})
    assert harmonic(NcPoly.one(), W((E1, E0, E1))) == W((E1, E0, E1))
    combo = index_harmonic(Index((1,)), Index((2,)))
    assert combo.terms == {Index((1, 2)): 1, Index((2, 1)): 1, Index((3,)): 1}
    with pytest.raises(ValueError):
        harmonic(W((E0,)), e1)


def test_shuffle_examples():
    e1 = W((E1,))
    assert shuffle(e1, e1) == NcPoly({(E1, E1): Fraction(2)})
    assert shuffle(e1, W((E1, E0))) == NcPoly(
        {(E1, E1, E0): Fraction(2), (E1, E0, E1): Fraction(1)})
    assert shuffle(NcPoly.one(), W((E0, E1))) == W((E0, E1))


def test_shuffle_against_recursive_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n1, n2 = rng.randint(0, 4), rng.randint(0, 4)
        w1 = tuple(rng.randint(0, 1) for _ in range(n1))
        w2 = tuple(rng.randint(0, 1) for _ in range(n2))
        got = shuffle(W(w1), W(w2))
        want = NcPoly({w: Fraction(c) for w, c in shuffle_oracle(w1, w2).items()})
        assert got == want


def test_stuffle_against_index_oracle():
    ks = [Index((1,)), Index((2,)), Index((1, 1)), Index((2, 1)), Index((1, 2))]
    for k in ks:
        for l in ks:
            got = index_harmonic(k, l)
            want = stuffle_index_oracle(tuple(k), tuple(l))
            assert {i: int(c) for i, c in got.terms.items()} == want


def test_stuffle_against_truncated_sums():
    n_max = 25
    for k, l in [((1,), (2,)), ((2,), (2,)), ((1, 1), (2,)), ((1, 2), (1,))]:
        lhs = truncated_sum(k, n_max) * truncated_sum(l, n_max)
        rhs = Fraction(0)
        for idx, c in index_harmonic(Index(k), Index(l)).terms.items():
            rhs += c * truncated_sum(tuple(idx), n_max)
        assert lhs == rhs


def test_products_commutative_associative_random():
    rng = random.Random(20250811)

    def random_h1_poly():
        out = NcPoly()
        for _ in range(rng.randint(1, 3)):
            wt = rng.randint(1, 4)
            idx = []
            while sum(idx) < wt:
                idx.append(rng.randint(1, wt - sum(idx)))
            out = out + W(word_of_index(Index(idx)), Fraction(rng.randint(-3, 3) or 1))
        return out

    for op in (harmonic, shuffle):
        for _ in range(6):
            u, v, w = random_h1_poly(), random_h1_poly(), random_h1_poly()
            assert op(u, v) == op(v, u)
            assert op(op(u, v), w) == op(u, op(v, w))


def test_embed_intertwines_products():
    for k, l in [((1,), (2,)), ((1, 1), (2,)), ((2, 1), (1,))]:
        k, l = Index(k), Index(l)
        assert embed_combination(index_harmonic(k, l)) == harmonic(embed(k), embed(l))
        assert embed_combination(index_shuffle(k, l)) == shuffle(embed(k), embed(l))
        assert extract_combination(harmonic(embed(k), embed(l))) == index_harmonic(k, l)


# ---------------------------------------------------------------------------
# geometric tails, shifted shuffle, sigma_t
# ---------------------------------------------------------------------------

def test_geometric():
    orders = (0, 2)
    g = geometric(1, E0, "t", orders)
    assert set(g.terms) == {(), (E0,), (E0, E0)}
    assert g.terms[(E0,)] == BiSeries.monomial(Fraction(-1), 0, 1, 0, 2)
    assert g.terms[(E0, E0)] == BiSeries.monomial(Fraction(1), 0, 2, 0, 2)
    g0 = geometric(1, E0, "t", (0, 0))
    assert set(g0.terms) == {()}
    gm = geometric(-1, E0, "s", (1, 0))
    assert gm.terms[(E0,)] == BiSeries.monomial(Fraction(1), 1, 0, 1, 0)


def test_shuffle_shifted_order0_is_shuffle():
    orders = (0, 0)
    u = lift_biseries(W((E1,)), orders)
    v = lift_biseries(W((E1, E0)), orders)
    got = shuffle_shifted(u, v, orders)
    want = shuffle(u, v)
    assert got == want


def test_shuffle_shifted_unit():
    orders = (2, 0)
    one = lift_biseries(NcPoly.one(), orders)
    v = lift_biseries(W((E1,)), orders)
    assert shuffle_shifted(one, v, orders) == v


def test_shuffle_shifted_mixed_law():
    # (u sh v) sh_s w == u sh_s (v sh_s w), while sh_s itself is not associative
    orders = (2, 0)
    u = lift_biseries(W((E1,)), orders)
    v = lift_biseries(W((E1,)), orders)
    w = lift_biseries(W((E1,)), orders)
    lhs = shuffle_shifted(shuffle(u, v), w, orders)
    rhs = shuffle_shifted(u, shuffle_shifted(v, w, orders), orders)
    assert lhs == rhs
    assert shuffle_shifted(shuffle_shifted(u, v, orders), w, orders) != lhs


def test_h1_closed_under_shifted_shuffle():
    orders = (2, 0)
    for kw in [(E1,), (E1, E0), (E1, E1, E0)]:
        for lw in [(E1,), (E1, E0)]:
            got = shuffle_shifted(lift_biseries(W(kw), orders),
                                  lift_biseries(W(lw), orders), orders)
            assert got.support_in_h1()


def test_sigma_t_examples():
    assert sigma_t(NcPoly.one(), 2) == lift_biseries(NcPoly.one(), (0, 2))
    got = sigma_t(W((E1,)), 2)
    assert got == NcPoly({
        (E1,): BiSeries.monomial(Fraction(1), 0, 0, 0, 2),
        (E1, E0): BiSeries.monomial(Fraction(-1), 0, 1, 0, 2),
        (E1, E0, E0): BiSeries.monomial(Fraction(1), 0, 2, 0, 2),
    })


def test_sigma_t_harmonic_homomorphism_small():
    e1 = W((E1,))
    e2 = W((E1, E0))
    for u, v in [(e1, e1), (e1, e2), (e2, e2)]:
        assert sigma_t(harmonic(u, v), 3) == harmonic(sigma_t(u, 3), sigma_t(v, 3))


def test_telescoping_lemma_small():
    for n in range(4):
        for w in itertools.product((E0, E1), repeat=n):
            lhs, rhs = telescope_sides(w, (1, 1))
            assert lhs == rhs


# ---------------------------------------------------------------------------
# Hopf structure and endomorphisms
# ---------------------------------------------------------------------------

def test_coproduct_example():
    got = coproduct(W((E1, E1)))
    assert got == {
        ((), (E1, E1)): Fraction(1),
        ((E1,), (E1,)): Fraction(1),
        ((E1, E1), ()): Fraction(1),
    }


def test_counit():
    assert counit(NcPoly.one(Fraction(3))) == 3
    assert counit(W((E1,))) == 0


def test_antipode_examples():
    assert antipode(W((E1, E0))) == W((E1, E0), Fraction(-1))
    assert antipode(W((E1, E1))) == NcPoly(
        {(E1, E1): Fraction(1), (E1, E0): Fraction(-1)})


def test_antipode_axiom():
    # m(S (x) id) Delta = unit . counit, for the stuffle product
    for k in [EMPTY, Index((2,)), Index((1, 1)), Index((2, 1)), Index((1, 1, 2))]:
        u = W(word_of_index(k))
        acc = NcPoly()
        for (w1, w2), c in coproduct(u).items():
            acc = acc + harmonic(antipode(W(w1)), W(w2)).scale(c)
        assert acc == (NcPoly.one() if k.depth == 0 else NcPoly())


def test_endomorphisms():
    assert endo_tau(W((E1, E0))) == W((E0, E1))
    assert endo_eps(W((E1, E0))) == W((E0, E1))          # (-1)^2 and reversal
    assert endo_eps(W((E1,))) == W((E1,), Fraction(-1))
    assert endo_C(W((E1, E0))) == NcPoly({(E0, E1): Fraction(1), (E1, E0): Fraction(1)})
    assert endo_C(NcPoly.one()) == NcPoly()
    assert endo_H(W((E1, E0))) == W((E0,))
    assert endo_H(W((E0, E1))) == NcPoly()
    assert endo_H(NcPoly.one()) == NcPoly()
    assert endo_S(W((E1,)), Fraction(1)) == NcPoly({(E1,): Fraction(1), (E0,): Fraction(1)})
    assert endo_A(W((E1, E0)), Fraction(2)) == W((E0, E0), Fraction(2))
    assert endo_A(W((E0,)), Fraction(5)) == W((E0,))


def test_endo_S_group_law():
    # S^a composed with S^b is S^(a+b); A^tau = S^tau - S^0 on single letters
    rng = random.Random(3)
    for _ in range(10):
        w = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))
        a, b = Fraction(1, 2), Fraction(1, 3)
        assert endo_S(endo_S(W(w), a), b) == endo_S(W(w), a + b)
        assert endo_S(endo_C(W(w)), a) == endo_C(endo_S(W(w), a))


def test_text_form():
    p = NcPoly({(E1, E1): Fraction(2), (E1, E0): Fraction(-1)})
    assert str(p) == "2*y1y1 - y1y0"
    assert str(NcPoly.one()) == "1*1"
    assert str(NcPoly()) == "0"
    assert str(W((E0,), Fraction(-1, 2))) == "-1/2*y0"
