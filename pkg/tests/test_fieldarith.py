import random
from fractions import Fraction

import pytest

from ellnet import INFINITE_VALUATION, PrimeFieldElement, Valuation, factorize, is_prime, val_p
from ellnet.errors import NonPrimeModulusError


def test_val_p_examples():
    assert val_p(Fraction(3, 4), 2) == -2
    assert val_p(Fraction(0), 7) == INFINITE_VALUATION
    assert val_p(Fraction(45, 7), 3) == 2


def test_val_p_rejects_composite_modulus():
    with pytest.raises(NonPrimeModulusError):
        val_p(Fraction(1), 6)


def test_valuation_ordering():
    assert INFINITE_VALUATION > 10**9
    assert Valuation(3) > 2
    assert Valuation(-2) < 0
    assert INFINITE_VALUATION.is_infinite
    with pytest.raises(ValueError):
        INFINITE_VALUATION.unwrap()


def test_val_p_multiplicative_and_ultrametric():
    rng = random.Random(1)
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7, 13])
        x = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        y = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)
        if x + y != 0:
            vx, vy = val_p(x, p), val_p(y, p)
            vs = val_p(x + y, p)
            assert vs >= min(vx, vy)
            if vx != vy:
                assert vs == min(vx, vy)


def test_factorize_examples():
    f = factorize(116)
    assert f.sign == 1 and f.factors == ((2, 2), (29, 1))
    f = factorize(-153)
    assert f.sign == -1 and f.factors == ((3, 2), (17, 1))
    assert factorize(1).factors == ()
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_round_trip():
    rng = random.Random(2)
    for _ in range(1000):
        n = rng.randint(1, 2**64)
        if rng.random() < 0.5:
            n = -n
        f = factorize(n)
        assert f.value() == n
        primes = [p for p, _ in f.factors]
        assert primes == sorted(primes)
        assert all(is_prime(p) for p in primes)


def test_factorize_large_table_entry():
    f = factorize(638022143238323743)
    assert f.value() == 638022143238323743


def test_factorize_hard_semiprimes():
    # products of two ~32-bit primes defeat trial division and force the
    # rho stage
    rng = random.Random(18)
    primes = []
    while len(primes) < 20:
        n = rng.randint(2**31, 2**32)
        if is_prime(n):
            primes.append(n)
    for a, b in zip(primes[::2], primes[1::2]):
        f = factorize(a * b)
        assert f.factors == tuple(sorted(((a, 1), (b, 1)))) if a != b else ((a, 2),)


def test_is_prime_small_cases():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2,3,5,7


def test_prime_field_arithmetic():
    a = PrimeFieldElement(3, 7)
    b = PrimeFieldElement(5, 7)
    assert a + b == 1
    assert a - b == 5
    assert a * b == 1
    assert a / b == a * b**-1
    assert 2 * a == 6
    assert (1 - a) == PrimeFieldElement(5, 7)
    assert a**-1 == 5
    assert -a == 4
    assert bool(PrimeFieldElement(0, 7)) is False


def test_prime_field_errors():
    with pytest.raises(ZeroDivisionError):
        PrimeFieldElement(1, 7) / PrimeFieldElement(0, 7)
    with pytest.raises(ValueError):
        PrimeFieldElement(1, 7) + PrimeFieldElement(1, 11)
    with pytest.raises(NonPrimeModulusError):
        PrimeFieldElement(1, 10)
