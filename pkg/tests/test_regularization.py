import itertools
from fractions import Fraction

import pytest

from mzvkit.indices import EMPTY, Index
from mzvkit.numeric import eval_zeta_poly, tolerance
from mzvkit.regularization import (
    R_poly, RegDecomposition, Z_reg, Z_reg_full, check_reg_theorem,
    e1_power, gamma0_coeffs, reg_theorem_sides, regularize, rho,
    rho_of_T_power, zeta_reg,
)
from mzvkit.rings import ZetaPoly
from mzvkit.words import E0, E1, HARMONIC, SHUFFLE, NcPoly, word_of_index

W = NcPoly.from_word
Z = ZetaPoly.zeta
T = ZetaPoly.tvar("T")


def test_regularize_h0_fixed():
    for product in (HARMONIC, SHUFFLE):
        d = regularize(W((E1, E0)), product)
        assert d.coefficients == (W((E1, E0)),)


def test_regularize_e1():
    for product in (HARMONIC, SHUFFLE):
        d = regularize(W((E1,)), product)
        assert d.coefficients[0] == NcPoly()
        assert d.coefficients[1] == NcPoly.one()


def test_regularize_e1e1_harmonic():
    d = regularize(W((E1, E1)), HARMONIC)
    assert d.coefficients[0] == W((E1, E0), Fraction(1, 2))
    assert d.coefficients[1] == NcPoly()
    assert d.coefficients[2] == NcPoly.one(Fraction(1, 2))


def test_reconstruction_all_h1_words():
    for n in range(7):
        for w in itertools.product((E0, E1), repeat=n):
            if w and w[0] == E0:
                continue
            for product in (HARMONIC, SHUFFLE):
                d = regularize(W(w), product)
                assert isinstance(d, RegDecomposition)
                assert d.reconstruct() == W(w), (w, product)


def test_regularize_rejects_non_h1():
    with pytest.raises(ValueError):
        regularize(W((E0, E1)), HARMONIC)


def test_e1_powers():
    assert e1_power(SHUFFLE, 3) == W((E1, E1, E1), Fraction(6))
    got = e1_power(HARMONIC, 2)
    assert got == NcPoly({(E1, E1): Fraction(2), (E1, E0): Fraction(-1)})


def test_zeta_reg_examples():
    assert zeta_reg(Index((1,)), HARMONIC) == T
    assert zeta_reg(Index((1,)), SHUFFLE) == T
    assert zeta_reg(Index((1, 1)), HARMONIC) == (T * T - Z((2,))) * Fraction(1, 2)
    assert zeta_reg(Index((1, 1)), SHUFFLE) == T * T * Fraction(1, 2)
    assert zeta_reg(EMPTY, HARMONIC) == ZetaPoly.const(1)
    assert zeta_reg(Index((2,)), SHUFFLE) == Z((2,))


def test_z_reg_full():
    assert Z_reg_full(W((E0,)), SHUFFLE) == ZetaPoly()
    assert Z_reg_full(NcPoly.one(), SHUFFLE) == ZetaPoly.const(1)
    assert Z_reg_full(W((E0, E1, E0)), SHUFFLE) == Z((3,)) * 2
    assert Z_reg_full(W((E1, E0)), HARMONIC) == -1 * Z((2,))
    assert Z_reg_full(W((E0, E0)), HARMONIC) == ZetaPoly()


def test_z_reg_is_ring_homomorphism_numerically():
    # Z_reg(u * v) = Z_reg(u) Z_reg(v) for both products, certified at T=7/10
    from mzvkit.words import harmonic, shuffle
    prec = 40
    cases = [((1,), (2,)), ((1, 1), (2,)), ((1,), (1, 2))]
    for product, op in ((HARMONIC, harmonic), (SHUFFLE, shuffle)):
        for ktup, ltup in cases:
            u, v = W(word_of_index(Index(ktup))), W(word_of_index(Index(ltup)))
            lhs = Z_reg(op(u, v), product)
            rhs = Z_reg(u, product) * Z_reg(v, product)
            res = abs(eval_zeta_poly(lhs - rhs, {"T": Fraction(7, 10)}, prec))
            assert res < tolerance(prec)


def test_gamma0():
    g = gamma0_coeffs(4)
    assert g[0] == ZetaPoly.const(1)
    assert g[1] == ZetaPoly()
    assert g[2] == Z((2,)) * Fraction(1, 2)
    assert g[3] == Z((3,)) * Fraction(1, 3)
    assert g[4] == Z((4,)) * Fraction(1, 4) + Z((2,)) * Z((2,)) * Fraction(1, 8)


def test_rho():
    assert rho_of_T_power(0) == ZetaPoly.const(1)
    assert rho_of_T_power(1) == T
    assert rho_of_T_power(2) == T * T + Z((2,))
    p = T * T * Z((5,)) + T * 3
    assert rho(p) == (T * T + Z((2,))) * Z((5,)) + T * 3
    with pytest.raises(ValueError):
        rho(ZetaPoly.tvar("T1"))


def test_R_poly():
    assert R_poly(Index((2,))) == ZetaPoly()
    assert R_poly(EMPTY) == ZetaPoly.const(1)
    assert R_poly(Index((1,))) == -1 * T
    # depth 2: a+b=2 gives (T^2 - zeta(2))/2 from rho(T^2)|0 = zeta(2)
    assert R_poly(Index((1, 1))) == (T * T + Z((2,))) * Fraction(1, 2)


def test_reg_theorem_small():
    prec = 40
    tol = tolerance(prec)
    for k in [Index((2,)), Index((1,)), Index((1, 1)), Index((2, 1)), Index((1, 1, 1))]:
        assert check_reg_theorem(k, prec) < tol


def test_reg_theorem_structural_cases():
    lhs, rhs = reg_theorem_sides(Index((2,)))
    assert lhs == rhs == Z((2,))
    lhs, rhs = reg_theorem_sides(Index((1,)))
    assert lhs == rhs == T
    lhs, rhs = reg_theorem_sides(Index((1, 1)))
    assert lhs == T * T * Fraction(1, 2)
    assert rhs == T * T * Fraction(1, 2)  # rho((T^2 - Z2)/2)
