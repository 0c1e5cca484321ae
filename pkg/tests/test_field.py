import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lrc_regen.field import GF, FieldElement, ceil_q, floor_q, is_prime, next_prime, parse_rational, render

PRIMES = [2, 3, 5, 13, 101, 65537, 2147483647]


def test_inverse_and_product_in_gf3():
    F = GF(3)
    assert F.inv(F(2)) == F(2)
    assert F.mul(F(2), F(2)) == F(1)


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        GF(13).inv(GF(13)(0))


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91, 2**31 + 11])
def test_non_prime_modulus_rejected(p):
    with pytest.raises(ValueError):
        GF(p)


def test_primality_against_sieve():
    limit = 2000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [n for n in range(limit) if is_prime(n)] == [n for n in range(limit) if sieve[n]]
    assert next_prime(8) == 11
    assert next_prime(11) == 13


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        FieldElement(1, 3) + FieldElement(1, 5)


def test_pow_and_division():
    F = GF(13)
    assert F.pow(F(2), 12) == F(1)
    assert F(2) ** -1 == F(7)
    assert F(6) / F(2) == F(3)
    assert F.neg(F(5)) == F(8)
    assert F.sub(F(2), F(5)) == F(10)


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x + (-x) == F.zero
    if x.value:
        assert x * x.inv() == F.one


def test_floor_ceil_exact():
    assert floor_q(Fraction(336, 23)) == 14
    assert ceil_q(Fraction(5, 3)) == 2
    assert floor_q(Fraction(-5, 3)) == -2
    assert ceil_q(Fraction(-5, 3)) == -1
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)


def test_rational_normalization():
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randint(-10**30, 10**30), rng.randint(1, 10**30)
        k = rng.choice([-1, 1]) * rng.randint(1, 10**20)
        assert Fraction(a, b) == Fraction(k * a, k * b)
        f = Fraction(k * a, k * b)
        assert f.denominator > 0


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        Fraction(1, 2) / Fraction(0)


def test_parse_and_render():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("0.5") == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_rational("x/2")
    assert render(Fraction(1, 5)) == "0.2"
    assert render(Fraction(1, 3)) == "0.333333333333"
    assert render(Fraction(336, 23), exact=True) == "336/23"
    assert render(Fraction(4)) == "4"
    assert render(Fraction(0)) == "0"
