"""Weierstrass curves and point arithmetic over Q or a prime field.

The same chord-and-tangent formulas serve both fields.  On a singular
reduced curve the group law is restricted to its smooth part: operations
involving the singular point are refused, while nonsingular operands are
fine (a line through two smooth points of a cubic cannot pass through the
node or cusp, so the smooth locus is closed under the law).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    ModelNotIntegralError,
    PointNotOnCurveError,
    PreconditionError,
    SingularCurveError,
    SingularReductionError,
)
from .fieldarith import PrimeFieldElement, Valuation, val_p


@dataclass(frozen=True)
class CurvePoint:
    """Affine point (x, y), or the point at infinity (both fields None)."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "INFINITY" if self.is_infinity else f"({self.x!r}, {self.y!r})"


INFINITY = CurvePoint()


def rational_point(x, y) -> CurvePoint:
    return CurvePoint(Fraction(x), Fraction(y))


def gf_point(x: int, y: int, p: int) -> CurvePoint:
    return CurvePoint(PrimeFieldElement(x, p), PrimeFieldElement(y, p))


class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q or F_p."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "_binv")

    def __init__(self, a1, a2, a3, a4, a6, allow_singular: bool = False):
        coeffs = [a1, a2, a3, a4, a6]
        moduli = {c.p for c in coeffs if isinstance(c, PrimeFieldElement)}
        if len(moduli) > 1:
            raise ValueError("curve coefficients from different prime fields")
        if moduli:
            p = moduli.pop()
            coeffs = [
                c if isinstance(c, PrimeFieldElement) else PrimeFieldElement(int(c), p)
                for c in coeffs
            ]
        else:
            coeffs = [Fraction(c) for c in coeffs]
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs
        self._binv = self._compute_b_invariants()
        if not allow_singular and self.discriminant == 0:
            raise ValueError("curve is singular; pass allow_singular=True for reduced models")

    def _compute_b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return b2, b4, b6, b8, disc

    def b_invariants(self):
        """(b2, b4, b6, b8, discriminant)."""
        return self._binv

    @property
    def discriminant(self):
        return self._binv[4]

    @property
    def gf_modulus(self) -> int | None:
        """The prime p when defined over F_p, else None."""
        return self.a1.p if isinstance(self.a1, PrimeFieldElement) else None

    @property
    def is_integral(self) -> bool:
        if self.gf_modulus is not None:
            return False
        return all(c.denominator == 1 for c in (self.a1, self.a2, self.a3, self.a4, self.a6))

    def f(self, x, y):
        """The defining polynomial; zero exactly on the curve."""
        return (
            y * y + self.a1 * x * y + self.a3 * y
            - x**3 - self.a2 * x * x - self.a4 * x - self.a6
        )

    def contains(self, point: CurvePoint) -> bool:
        if point.is_infinity:
            return True
        return self.f(point.x, point.y) == 0

    def require_on_curve(self, point: CurvePoint) -> None:
        if not self.contains(point):
            raise PointNotOnCurveError(f"{point} is not on the curve")

    def is_singular_point(self, point: CurvePoint) -> bool:
        """True when both partial derivatives of f vanish at an affine point."""
        if point.is_infinity:
            return False
        x, y = point.x, point.y
        fy = 2 * y + self.a1 * x + self.a3
        fx = self.a1 * y - 3 * x * x - 2 * self.a2 * x - self.a4
        return fy == 0 and fx == 0

    def _refuse_singular(self, point: CurvePoint) -> None:
        if self.discriminant == 0 and self.is_singular_point(point):
            raise SingularCurveError("group law is undefined at a singular point")

    def neg(self, point: CurvePoint) -> CurvePoint:
        if point.is_infinity:
            return INFINITY
        return CurvePoint(point.x, -point.y - self.a1 * point.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        self._refuse_singular(P)
        self._refuse_singular(Q)
        x1, y1 = P.x, P.y
        x2, y2 = Q.x, Q.y
        if x1 == x2:
            if y2 == -y1 - self.a1 * x2 - self.a3:
                return INFINITY
            s = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / (
                2 * y1 + self.a1 * x1 + self.a3
            )
        else:
            s = (y2 - y1) / (x2 - x1)
        x3 = s * s + self.a1 * s - self.a2 - x1 - x2
        y3 = -(s * (x3 - x1) + y1) - self.a1 * x3 - self.a3
        return CurvePoint(x3, y3)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            n, P = -n, self.neg(P)
        result = INFINITY
        while n:
            if n & 1:
                result = self.add(result, P)
            P = self.add(P, P)
            n >>= 1
        return result

    def enumerate_points(self) -> Iterator[CurvePoint]:
        """All points over F_p by brute force (p <= 10**4), infinity included."""
        p = self.gf_modulus
        if p is None:
            raise PreconditionError("point enumeration requires a prime field curve")
        if p > 10_000:
            raise PreconditionError("point enumeration is limited to p <= 10^4")
        yield INFINITY
        for xr in range(p):
            x = PrimeFieldElement(xr, p)
            for yr in range(p):
                y = PrimeFieldElement(yr, p)
                if self.f(x, y) == 0:
                    yield CurvePoint(x, y)


@dataclass(frozen=True)
class PointDecomposition:
    """P = (a / d^2, b / d^3) in lowest terms with d >= 1."""

    a: int
    b: int
    d: int


def decompose(curve: WeierstrassCurve, point: CurvePoint) -> PointDecomposition:
    """Standard (A, B, D) shape of a rational point on an integral model."""
    if point.is_infinity:
        raise PreconditionError("cannot decompose the point at infinity")
    if not curve.is_integral:
        raise ModelNotIntegralError("decomposition requires integral coefficients")
    curve.require_on_curve(point)
    x, y = Fraction(point.x), Fraction(point.y)
    d = math.isqrt(x.denominator)
    if d * d != x.denominator:
        raise ModelNotIntegralError("denominator of x is not a perfect square")
    b = y * d**3
    if b.denominator != 1:
        raise ModelNotIntegralError("denominator of y is not the cube of D")
    a, b = x.numerator, b.numerator
    if math.gcd(a, d) != 1 or math.gcd(b, d) != 1:
        raise ModelNotIntegralError("coprimality of (A, B) with D fails")
    return PointDecomposition(a, b, d)


def denominator(curve: WeierstrassCurve, point: CurvePoint) -> int:
    """D_P for an affine rational point; infinity has no denominator."""
    return decompose(curve, point).d


def reduce_curve(curve: WeierstrassCurve, p: int) -> WeierstrassCurve:
    """Coefficientwise reduction; the result may be singular."""
    if not curve.is_integral:
        raise ModelNotIntegralError("reduction requires integral coefficients")
    return WeierstrassCurve(
        *(PrimeFieldElement(int(c), p) for c in (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6)),
        allow_singular=True,
    )


def reduce_mod_p(curve: WeierstrassCurve, point: CurvePoint, p: int) -> CurvePoint:
    """Reduction of a rational point: infinity exactly when p divides D_P."""
    if point.is_infinity:
        return INFINITY
    dec = decompose(curve, point)
    if dec.d % p == 0:
        return INFINITY
    inv_d2 = pow(dec.d * dec.d % p, -1, p)
    x = dec.a * inv_d2 % p
    y = dec.b * inv_d2 * pow(dec.d, -1, p) % p
    return gf_point(x, y, p)


def is_singular_reduction(curve: WeierstrassCurve, point: CurvePoint, p: int) -> bool:
    """Whether the reduction of an affine rational point mod p is singular."""
    reduced = reduce_mod_p(curve, point, p)
    if reduced.is_infinity:
        raise PreconditionError("point reduces to infinity mod p")
    return reduce_curve(curve, p).is_singular_point(reduced)


def neron_local_height(curve: WeierstrassCurve, point: CurvePoint, p: int) -> Fraction:
    """Local Neron height at p of a point with nonsingular reduction.

    lambda_p(P) = max(-v_p(x(P)) / 2, 0) + v_p(disc) / 12.
    """
    if point.is_infinity:
        raise PreconditionError("local height is not defined at infinity")
    reduced = reduce_mod_p(curve, point, p)
    # reduction to infinity is nonsingular; only a singular affine image is refused
    if not reduced.is_infinity and reduce_curve(curve, p).is_singular_point(reduced):
        raise SingularReductionError(
            "local height formula requires nonsingular reduction"
        )
    vx: Valuation = val_p(Fraction(point.x), p)
    first = Fraction(0) if vx.is_infinite else max(Fraction(-vx.unwrap(), 2), Fraction(0))
    vdisc = val_p(Fraction(curve.discriminant), p).unwrap()
    return first + Fraction(vdisc, 12)
