"""Exact arithmetic foundations: p-adic valuations, prime fields, factoring.

Rational numbers are plain ``fractions.Fraction`` values (already reduced,
positive denominator), so no wrapper type is needed for them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import NonPrimeModulusError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@total_ordering
class Valuation:
    """Value of a discrete valuation: an integer, or infinite for zero.

    The infinite valuation compares greater than every integer one.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        self._value = value

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    def unwrap(self) -> int:
        """The finite value; raises for the valuation of zero."""
        if self._value is None:
            raise ValueError("valuation is infinite")
        return self._value

    def __add__(self, other: "Valuation") -> "Valuation":
        if not isinstance(other, Valuation):
            other = Valuation(other)
        if self._value is None or other._value is None:
            return INFINITE_VALUATION
        return Valuation(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, Valuation):
            return self._value == other._value
        if isinstance(other, int):
            return self._value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            other = Valuation(other)
        if not isinstance(other, Valuation):
            return NotImplemented
        if self._value is None:
            return False
        if other._value is None:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return "Valuation(INFINITY)" if self._value is None else f"Valuation({self._value})"


INFINITE_VALUATION = Valuation(None)


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x: Fraction | int, p: int) -> Valuation:
    """p-adic valuation of a rational number; infinite for zero."""
    if not is_prime(p):
        raise NonPrimeModulusError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITE_VALUATION
    return Valuation(_int_val(x.numerator, p) - _int_val(x.denominator, p))


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization: sign * product(p**e)."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def _pollard_rho(n: int, rng: random.Random) -> int:
    """Brent-cycle Pollard rho; returns a nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n, rng)
    _factor_into(d, out, rng)
    _factor_into(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer into sign and ascending prime powers."""
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if n > 0 else -1
    n = abs(n)
    powers: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            n //= p
            powers[p] = powers.get(p, 0) + 1
    d = 17
    while d * d <= n and d < 100_000:
        while n % d == 0:
            n //= d
            powers[d] = powers.get(d, 0) + 1
        d += 2
    if n > 1:
        _factor_into(n, powers, random.Random(0x5EED))
    return Factorization(sign, tuple(sorted(powers.items())))


_VALIDATED_PRIMES: set[int] = set()


def _check_prime_modulus(p: int) -> None:
    if p not in _VALIDATED_PRIMES:
        if not is_prime(p):
            raise NonPrimeModulusError(f"{p} is not prime")
        _VALIDATED_PRIMES.add(p)


class PrimeFieldElement:
    """An element of F_p with operator arithmetic; integers coerce freely."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        _check_prime_modulus(p)
        self.residue = residue % p
        self.p = p

    def _coerce(self, other) -> "PrimeFieldElement | None":
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + o.residue, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - o.residue, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(o.residue - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * o.residue, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.residue == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return PrimeFieldElement(self.residue * pow(o.residue, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int):
        if exponent < 0 and self.residue == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return PrimeFieldElement(pow(self.residue, exponent, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.residue}, {self.p})"
