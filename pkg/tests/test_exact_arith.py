import random
from fractions import Fraction
from math import gcd

import pytest

from equibundle.exact_arith import (
    DenominatorDivisible,
    ModulusMismatch,
    NotCoprime,
    NotInvertible,
    Residue,
    crt_solve,
    is_prime,
    mod_inverse,
    rational_mod,
    signed_rep,
)


def test_is_prime_small_table():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-3, 50):
        assert is_prime(n) == (n in primes)
    assert is_prime(997)
    assert not is_prime(1001)  # 7 * 11 * 13


def test_mod_inverse_dense():
    # every unit has an inverse, every non-unit raises
    for n in range(2, 200):
        for a in range(-n, 2 * n):
            if gcd(a, n) == 1:
                inv = mod_inverse(a, n)
                assert (inv.value * a) % n == 1
                assert 0 <= inv.value < n
            else:
                with pytest.raises(NotInvertible):
                    mod_inverse(a, n)


def test_mod_inverse_sampled_large():
    rng = random.Random(7001)
    for _ in range(500):
        n = rng.randrange(200, 10**6)
        a = rng.randrange(1, n)
        if gcd(a, n) == 1:
            assert mod_inverse(a, n).value * a % n == 1
        else:
            with pytest.raises(NotInvertible):
                mod_inverse(a, n)


def test_rational_mod_basic():
    assert rational_mod(Fraction(1, 2), 7).value == 4
    assert rational_mod(Fraction(-3, 4), 5).value == (-3 * 4) % 5  # 1/4 = 4 mod 5
    assert rational_mod(Fraction(10), 7).value == 3
    assert rational_mod(3, 7).value == 3


def test_rational_mod_divisible_denominator():
    with pytest.raises(DenominatorDivisible):
        rational_mod(Fraction(1, 7), 7)
    with pytest.raises(DenominatorDivisible):
        rational_mod(Fraction(2, 14), 7)


def test_rational_mod_agrees_with_integer_congruence():
    rng = random.Random(7002)
    for _ in range(300):
        p = rng.choice([3, 5, 7, 11, 13, 101])
        num = rng.randrange(-50, 50)
        den = rng.randrange(1, 50)
        if den % p == 0 and num % p != 0:
            continue
        q = Fraction(num, den)
        if q.denominator % p == 0:
            continue
        r = rational_mod(q, p)
        # r * den == num mod p is the defining property
        assert (r.value * q.denominator - q.numerator) % p == 0


def test_crt_examples():
    r = crt_solve(2, 5, 1, 2)
    assert (r.value, r.modulus) == (7, 10)
    r = crt_solve(3, 25, 1, 3)
    assert (r.value, r.modulus) == (28, 75)


def test_crt_not_coprime():
    with pytest.raises(NotCoprime):
        crt_solve(1, 6, 2, 4)


def test_crt_exhaustive_small_grid():
    for m1 in range(1, 13):
        for m2 in range(1, 13):
            if gcd(m1, m2) != 1 or m1 * m2 < 2:
                continue
            for r1 in range(m1):
                for r2 in range(m2):
                    x = crt_solve(r1, m1, r2, m2)
                    assert x.modulus == m1 * m2
                    assert x.value % m1 == r1
                    assert x.value % m2 == r2


def test_crt_random_large():
    rng = random.Random(7003)
    done = 0
    while done < 200:
        m1 = rng.randrange(2, 10**4)
        m2 = rng.randrange(2, 10**4)
        if gcd(m1, m2) != 1:
            continue
        r1 = rng.randrange(m1)
        r2 = rng.randrange(m2)
        x = crt_solve(r1, m1, r2, m2)
        assert x.value % m1 == r1 and x.value % m2 == r2
        done += 1


def test_residue_arithmetic():
    a = Residue(3, 7)
    b = Residue(5, 7)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (-a).value == 4
    assert (a + 4).value == 0
    assert (2 * a).value == 6 if hasattr(2, "__mul__") else True
    assert a.inverse().value == 5
    assert int(a) == 3


def test_residue_field_axioms_sampled():
    rng = random.Random(7004)
    for _ in range(200):
        p = rng.choice([5, 7, 11, 13])
        x, y, z = (Residue(rng.randrange(p), p) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)
        if x.value != 0:
            assert (x * x.inverse()).value == 1


def test_residue_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        Residue(1, 5) + Residue(1, 7)


def test_signed_rep_range():
    assert signed_rep(3, 5) == -2
    assert signed_rep(2, 5) == 2
    assert signed_rep(0, 5) == 0
    # even modulus: n/2 itself is kept positive
    assert signed_rep(5, 10) == 5
    assert signed_rep(6, 10) == -4
    for n in range(2, 40):
        for x in range(n):
            s = signed_rep(x, n)
            assert -n / 2 < s <= n / 2
            assert s % n == x


def test_residue_signed_display():
    assert Residue(4, 5).signed() == -1
    assert str(Residue(4, 5)) == "4 (mod 5)"
