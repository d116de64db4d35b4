"""Number field arithmetic against independent oracles and frozen data.

Element norms are checked against Sylvester resultants, valuations
against the product formula |N(x)| = prod N(P)^v_P(x), and the prime
splitting of small quadratic fields against hand-checked tables.
"""

import random
from fractions import Fraction

import pytest

from oracles import resultant
from solhom.errors import IndexObstruction
from solhom.nfield import (
    FractionalIdeal,
    NumberField,
    element_valuations,
    factor_rational_prime,
    fundamental_unit,
    ideal_index,
    principal_generator,
    valuation,
)
from solhom.qpoly import Poly, parse_poly


def field(text: str) -> NumberField:
    return NumberField(parse_poly(text))


K5 = field("x^2+5")


def test_quadratic_integral_basis_frozen():
    assert K5.discriminant == -20
    assert K5.basis_matrix.rows == ((1, 0), (0, 1))

    Kg = field("x^2-5")
    assert Kg.discriminant == 5
    assert Kg.basis_matrix.column(1) == (Fraction(1, 2), Fraction(1, 2))

    # the same field through a shifted generator: theta = 1 + sqrt(-5)
    Ks = field("x^2-2*x+6")
    assert Ks.discriminant == -20
    assert Ks.basis_matrix.column(1) == (Fraction(-1), Fraction(1))
    omega = Ks.element(Ks.basis_matrix.column(1))
    assert omega.min_poly_over_q() == parse_poly("x^2+5")


def test_degree_one_field():
    K = field("x-1")
    assert K.discriminant == 1
    c = K.from_rational(Fraction(3, 2))
    assert c.norm() == Fraction(3, 2)
    v2 = factor_rational_prime(K, 2)[0]
    v3 = factor_rational_prime(K, 3)[0]
    assert valuation(c, v2) == -1
    assert valuation(c, v3) == 1
    gen = principal_generator(FractionalIdeal.principal(K, c))
    assert gen == c


def test_norm_against_resultant_oracle():
    rng = random.Random(7)
    for text in ("x^2+5", "x^2-x-1", "x^3-2", "x^3+x+1"):
        K = field(text)
        for _ in range(8):
            coords = [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3])) for _ in range(K.degree)]
            x = K.element(coords)
            if x.is_zero():
                continue
            gpoly = list(reversed(coords))
            want = resultant(K.min_poly.coeffs, gpoly)
            assert x.norm() == want


def test_inverse_and_division():
    rng = random.Random(19)
    K = field("x^3-2")
    for _ in range(10):
        x = K.element([rng.randint(-5, 5) for _ in range(3)])
        if x.is_zero():
            continue
        assert x * x.inverse() == K.one()
        y = K.element([rng.randint(-5, 5) for _ in range(3)])
        if not y.is_zero():
            assert (x * y) / y == x


def test_char_poly_and_generation():
    Ks = field("x^2-2*x+6")
    c = Ks.gen().scale(Fraction(1, 2))  # (1 + sqrt(-5)) / 2
    assert c.min_poly_over_q() == parse_poly("x^2-x+3/2")
    assert c.generates_field()
    assert not Ks.from_rational(7).generates_field()
    assert Ks.from_rational(7).min_poly_over_q() == parse_poly("x-7")


SPLITTING_SQRT_MINUS_5 = {
    # p: sorted (e, f) pairs, hand-checked against quadratic residues mod p
    2: [(2, 1)],
    3: [(1, 1), (1, 1)],
    5: [(2, 1)],
    7: [(1, 1), (1, 1)],
    11: [(1, 2)],
    13: [(1, 2)],
    23: [(1, 1), (1, 1)],
}


def test_prime_splitting_frozen():
    for p, want in SPLITTING_SQRT_MINUS_5.items():
        got = sorted((P.e, P.f) for P in factor_rational_prime(K5, p))
        assert got == want, f"p={p}"
        assert sum(e * f for e, f in got) == 2


def test_valuations_frozen_sqrt_minus_5():
    t = K5.gen()
    p1 = factor_rational_prime(K5, 2)[0]
    p2, p3 = factor_rational_prime(K5, 3)
    # p2 is (3, 1 + t): t = -1 in its residue field
    assert valuation(K5.one() + t, p2) == 1
    assert valuation(K5.one() + t, p3) == 0
    assert valuation(K5.one() + t, p1) == 1
    c = (K5.one() + t).scale(Fraction(1, 2))
    assert valuation(c, p1) == -1
    assert valuation(c, p2) == 1
    assert valuation(c, p3) == 0
    assert valuation(K5.from_rational(2) - t, p2) == 2
    assert valuation(K5.from_rational(2) + t, p3) == 2
    assert valuation(K5.from_rational(7) + t, p2) == 3
    assert valuation(K5.from_rational(7) + t, p1) == 1


def test_product_formula():
    rng = random.Random(23)
    for text in ("x^2+5", "x^2-x-1", "x^2+1"):
        K = field(text)
        for _ in range(10):
            x = K.element(
                [Fraction(rng.randint(-9, 9), rng.choice([1, 2])) for _ in range(2)]
            )
            if x.is_zero():
                continue
            prod = Fraction(1)
            for P, v in element_valuations(x).items():
                prod *= Fraction(P.norm()) ** v
            assert prod == abs(x.norm())


def test_valuation_additive():
    rng = random.Random(31)
    p1 = factor_rational_prime(K5, 2)[0]
    p2 = factor_rational_prime(K5, 3)[0]
    for _ in range(20):
        x = K5.element([rng.randint(-8, 8), rng.randint(-8, 8)])
        y = K5.element([rng.randint(-8, 8), rng.randint(-8, 8)])
        if x.is_zero() or y.is_zero():
            continue
        for P in (p1, p2):
            assert valuation(x * y, P) == valuation(x, P) + valuation(y, P)


def test_anti_uniformizer_contract():
    for p in (2, 3, 7):
        for P in factor_rational_prime(K5, p):
            u = P.anti_uniformizer()
            assert valuation(u, P) == -1
            for Q in factor_rational_prime(K5, p):
                if Q != P:
                    assert valuation(u, Q) >= 0


def test_ideal_arithmetic():
    t = K5.gen()
    p1 = factor_rational_prime(K5, 2)[0]
    p2, p3 = factor_rational_prime(K5, 3)
    O = FractionalIdeal.ring_of_integers(K5)
    two = FractionalIdeal.principal(K5, K5.from_rational(2))
    three = FractionalIdeal.principal(K5, K5.from_rational(3))
    assert p1.ideal() * p1.ideal() == two
    assert p2.ideal() * p3.ideal() == three
    assert p1.ideal() * p2.ideal() == FractionalIdeal.principal(K5, K5.one() + t)
    assert p2.ideal() * p2.ideal() == FractionalIdeal.principal(K5, K5.from_rational(2) - t)
    assert ideal_index(O, p1.ideal()) == 2
    assert ideal_index(O, p2.ideal()) == 3
    assert ideal_index(p1.ideal(), two) == 2
    assert p1.power(-2) == FractionalIdeal.principal(K5, K5.from_rational(Fraction(1, 2)))
    assert p1.power(-1) * p1.power(3) == p1.power(2)
    assert (p2.ideal() * p1.ideal()).norm() == 6
    assert p1.power(-1).norm() == Fraction(1, 2)


def test_ideal_membership():
    t = K5.gen()
    p1 = factor_rational_prime(K5, 2)[0]
    I = p1.ideal()
    assert I.contains(K5.from_rational(2))
    assert I.contains(K5.one() + t)
    assert not I.contains(K5.one())
    assert not I.contains(t.scale(Fraction(1, 2)))
    O = FractionalIdeal.ring_of_integers(K5)
    assert O.contains(t)
    assert not O.contains(t.scale(Fraction(1, 2)))


def test_principal_generator_quadratic():
    t = K5.gen()
    p1 = factor_rational_prime(K5, 2)[0]
    assert principal_generator(p1.ideal()) is None
    I = FractionalIdeal.principal(K5, K5.one() + t)
    g = principal_generator(I)
    assert g is not None and FractionalIdeal.principal(K5, g) == I

    Ki = field("x^2+1")
    P = factor_rational_prime(Ki, 2)[0]
    g = principal_generator(P.ideal())
    assert g is not None and abs(g.norm()) == 2

    K2 = field("x^2-2")
    I = FractionalIdeal.principal(K2, K2.gen())
    g = principal_generator(I)
    assert g is not None and FractionalIdeal.principal(K2, g) == I

    K10 = field("x^2-10")
    for p in (2, 3):
        P = factor_rational_prime(K10, p)[0]
        assert principal_generator(P.ideal()) is None, f"p={p} is non-principal"


FUNDAMENTAL_UNITS = {
    # defining poly -> unit coordinates over the power basis
    "x^2-2": (1, 1),
    "x^2-3": (2, 1),
    "x^2-5": (Fraction(1, 2), Fraction(1, 2)),
    "x^2-6": (5, 2),
    "x^2-10": (3, 1),
    "x^2-13": (Fraction(3, 2), Fraction(1, 2)),
    "x^2-x-1": (0, 1),
}


def test_fundamental_units_frozen():
    for text, coords in FUNDAMENTAL_UNITS.items():
        K = field(text)
        u = fundamental_unit(K)
        assert u.coords == tuple(Fraction(c) for c in coords), text
        assert abs(u.norm()) == 1


def test_dedekind_obstruction():
    # classic index-2 example: disc(f) = 4 * field disc
    K = field("x^3-x^2-2*x-8")
    with pytest.raises(IndexObstruction):
        factor_rational_prime(K, 2)
    got = sorted((P.e, P.f) for P in factor_rational_prime(K, 3))
    assert sum(e * f for e, f in got) == 3


def test_cubic_field_splitting():
    K = field("x^3-2")
    assert K.discriminant == -108
    table = {2: [(3, 1)], 3: [(3, 1)], 5: [(1, 1), (1, 2)], 31: [(1, 1), (1, 1), (1, 1)]}
    for p, want in table.items():
        assert sorted((P.e, P.f) for P in factor_rational_prime(K, p)) == want
    th = K.gen()
    P2 = factor_rational_prime(K, 2)[0]
    assert valuation(th, P2) == 1
    assert valuation(th.pow(3), P2) == 3


def test_reducible_poly_rejected():
    with pytest.raises(ValueError):
        field("x^2-1")
    with pytest.raises(ValueError):
        field("x^2-4*x+4")


def test_from_generators_matches_hnf():
    # the module generated by 2 and 1 + t inside Q(sqrt(-5)) is p1
    t = K5.gen()
    I = FractionalIdeal.from_elements(K5, [K5.from_rational(2), K5.one() + t])
    assert I == factor_rational_prime(K5, 2)[0].ideal()
    assert I.norm() == 2
