import cmath
import random
from fractions import Fraction

import pytest

from laxcyc.cyclotomic import Cyclotomic, rational_from_json, rational_to_json


def test_p2_zeta_squared_is_one():
    z = Cyclotomic.zeta(2)
    assert z * z == Cyclotomic.one(2)
    assert z == -1


def test_p3_inverse_of_one_plus_zeta():
    # (1+z)(-z) = -z - z^2 = 1 because 1 + z + z^2 = 0
    z = Cyclotomic.zeta(3)
    a = Cyclotomic.one(3) + z
    assert a.inverse() == -z
    assert a * a.inverse() == 1


def test_inverse_of_one():
    for p in (2, 3, 5, 7):
        assert Cyclotomic.one(p).inverse() == 1


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(3).inverse()


def test_mixed_orders_raise():
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3) + Cyclotomic.zeta(5)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_root_of_unity_sum_vanishes(p):
    s = Cyclotomic.zero(p)
    for k in range(p):
        s = s + Cyclotomic.zeta_pow(p, k)
    assert s.is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_axioms_on_random_triples(p):
    rng = random.Random(1000 + p)

    def rand():
        return Cyclotomic(
            p, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(p - 1)]
        )

    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * a.inverse() == 1


def test_embed_values():
    assert Cyclotomic.zeta(2).embed() == pytest.approx(-1.0)
    z3 = Cyclotomic.zeta(3).embed()
    assert abs(z3 - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12
    golden = (Cyclotomic.zeta(5) + Cyclotomic.zeta_pow(5, 4)).embed()
    assert abs(golden - (5 ** 0.5 - 1) / 2) < 1e-12


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_embed_root_power(p):
    z = Cyclotomic.zeta(p).embed()
    assert abs(z ** p - 1) <= 1e-12


def test_embed_is_ring_homomorphism():
    rng = random.Random(3)
    for p in (3, 5):
        for _ in range(50):
            a = Cyclotomic(p, [Fraction(rng.randint(-9, 9)) for _ in range(p - 1)])
            b = Cyclotomic(p, [Fraction(rng.randint(-9, 9)) for _ in range(p - 1)])
            assert abs((a + b).embed() - (a.embed() + b.embed())) < 1e-10
            assert abs((a * b).embed() - (a.embed() * b.embed())) < 1e-10


def test_power_basis_reduction():
    # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    p = 5
    top = Cyclotomic.zeta_pow(p, p - 1)
    expect = Cyclotomic(p, [Fraction(-1)] * (p - 1))
    assert top == expect


def test_pow_and_negative_pow():
    z = Cyclotomic.zeta(7)
    assert z ** 7 == 1
    assert z ** -1 == z.inverse()
    assert (z + 1) ** 0 == 1


def test_json_round_trip():
    a = Cyclotomic(3, [Fraction(1, 2), Fraction(-3, 4)])
    assert Cyclotomic.from_json(3, a.to_json()) == a
    assert a.to_json() == ["1/2", "-3/4"]
    assert rational_from_json(rational_to_json(Fraction(-7, 3))) == Fraction(-7, 3)


def test_rational_coercion():
    a = Cyclotomic.from_rational(3, Fraction(2, 3))
    assert a + Fraction(1, 3) == 1
    assert 2 * a == Fraction(4, 3)
    assert (1 - a).rational_part() == Fraction(1, 3)
    with pytest.raises(ValueError):
        Cyclotomic.zeta(3).rational_part()
