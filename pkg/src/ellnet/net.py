"""Elliptic nets of rank r: net polynomial values, denominators, rescaling.

Two independent evaluation strategies are provided.

* ``points``: the addition identity
  ``W(v+u) = W(v)^2 W(u)^2 (X_u - X_v) / W(v-u)`` with ``u = +-e_i`` and the
  x-coordinates supplied by the curve group law.  The step axis is the one
  with the largest coordinate, so the max-norm shrinks toward the initial
  values.
* ``recurrence``: pure recurrence instantiations grounded in the initial
  values, with no group-law input.  Rank 1 delegates to the division
  polynomial doubling identities; rank 2 uses a fixed well-founded schedule
  of instantiations of the four-index recurrence (axis, adjacent-line and
  interior formulas), validated against the points strategy.

Exact values over Q never divide by zero when the base points are
independent.  Over a prime field either strategy can hit a zero divisor;
those evaluations raise ``DegenerateNetError`` and callers fall back to
exact evaluation over Q followed by reduction (``ReducedNet``, the default
for mod-p work, does exactly that).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .curve import INFINITY, CurvePoint, WeierstrassCurve, decompose, reduce_curve, reduce_mod_p
from .divpoly import DivisionPolynomials
from .errors import (
    DegenerateNetError,
    DegeneratePairError,
    DependentPointsError,
    NonIntegralReductionError,
    PreconditionError,
    SingularCurveError,
)
from .fieldarith import PrimeFieldElement

Index = tuple[int, ...]

POINTS = "points"
RECURRENCE = "recurrence"


def initial_net_value(curve: WeierstrassCurve, points: Sequence[CurvePoint], v: Sequence[int]):
    """Net value for v in {e_i, 2e_i, e_i + e_j, 2e_i + e_j}, else None."""
    nonzero = [(i, c) for i, c in enumerate(v) if c]
    one = points[0].x ** 0
    if len(nonzero) == 1:
        i, c = nonzero[0]
        if c == 1:
            return one
        if c == 2:
            x, y = points[i].x, points[i].y
            return 2 * y + curve.a1 * x + curve.a3
    elif len(nonzero) == 2:
        (i, ci), (j, cj) = nonzero
        if ci == cj == 1:
            return one
        if {ci, cj} == {1, 2}:
            if ci == 1:
                i, j = j, i
            xi, yi = points[i].x, points[i].y
            xj, yj = points[j].x, points[j].y
            if xi == xj:
                raise DegeneratePairError("base points share an x-coordinate")
            s = (yj - yi) / (xj - xi)
            return 2 * xi + xj - s * s - curve.a1 * s + curve.a2
    return None


def _normalize(v: Index) -> tuple[Index, int]:
    """Oddness normalization: first nonzero coordinate made positive."""
    for c in v:
        if c > 0:
            return v, 1
        if c < 0:
            return tuple(-a for a in v), -1
    return v, 1


class EllipticNet:
    """Memoized elliptic net W(v) = Psi_v(P) for a fixed curve and point tuple."""

    def __init__(self, curve: WeierstrassCurve, points: Sequence[CurvePoint],
                 strategy: str = POINTS):
        if strategy not in (POINTS, RECURRENCE):
            raise ValueError(f"unknown strategy {strategy!r}")
        points = tuple(points)
        if not points:
            raise PreconditionError("at least one base point is required")
        for pt in points:
            if pt.is_infinity:
                raise PreconditionError("base points must be affine")
            curve.require_on_curve(pt)
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                if points[i].x == points[j].x:
                    raise DegeneratePairError(
                        f"points {i} and {j} share an x-coordinate"
                    )
        self.curve = curve
        self.points = points
        self.rank = len(points)
        self.strategy = strategy
        self._zero = points[0].x - points[0].x
        self._one = points[0].x ** 0
        self._values: dict[Index, object] = {}
        self._points_cache: dict[Index, CurvePoint] = {(0,) * self.rank: INFINITY}
        self._recurrence_base: dict[Index, object] | None = None
        self._divpoly: DivisionPolynomials | None = None
        self._axis_divpoly: dict[int, DivisionPolynomials] | None = None

    @property
    def is_rational(self) -> bool:
        return self.curve.gf_modulus is None

    # ------------------------------------------------------------------
    # point cache
    # ------------------------------------------------------------------

    def point(self, v: Sequence[int]) -> CurvePoint:
        """v . P = v_1 P_1 + ... + v_r P_r via cached single additions.

        The chain toward the origin decrements the same axis the evaluation
        step uses, so successive queries along the evaluation path reuse the
        cached predecessor instead of rebuilding whole rows.
        """
        v = self._key(v)
        cache = self._points_cache
        chain = []
        t = v
        while t not in cache:
            chain.append(t)
            i = self._axis_order(t)[0]
            s = 1 if t[i] > 0 else -1
            t = t[:i] + (t[i] - s,) + t[i + 1:]
        for t in reversed(chain):
            i = self._axis_order(t)[0]
            s = 1 if t[i] > 0 else -1
            parent = t[:i] + (t[i] - s,) + t[i + 1:]
            step = self.points[i] if s > 0 else self.curve.neg(self.points[i])
            cache[t] = self.curve.add(cache[parent], step)
        return cache[v]

    def _key(self, v: Sequence[int]) -> Index:
        v = tuple(int(c) for c in v)
        if len(v) != self.rank:
            raise ValueError(f"index length {len(v)} does not match rank {self.rank}")
        return v

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------

    def value(self, v: Sequence[int]):
        """W(v) in the base field."""
        v = self._key(v)
        key, sign = _normalize(v)
        if key not in self._values:
            if self.strategy == POINTS:
                if self.is_rational:
                    self._eval_points_iterative(key)
                else:
                    self._values[key] = self._eval_points_gf(key, set())
            else:
                self._values[key] = self._eval_recurrence(key)
        result = self._values[key]
        return -result if sign < 0 else result

    def _base_value(self, v: Index):
        if not any(v):
            return self._zero
        return initial_net_value(self.curve, self.points, v)

    def _support_reduce(self, v: Index):
        """W(v) for an index with every coordinate in {-1, 0, 1} and at
        least three nonzero entries.

        The axis step does not shrink such indices, so they are resolved by
        the recurrence instantiation (p, q, r, s) =
        (e_i + w, e_i + s_k e_k, -e_i, -e_i) with v = e_i + w + s_k e_k,
        which only references indices of smaller support.
        """
        i = next(k for k, c in enumerate(v) if c == 1)
        k = next(k for k, c in enumerate(v) if c and k != i)
        sk = v[k]
        w = list(v)
        w[i] = 0
        w[k] = 0
        w = tuple(w)

        def shift(base: Index, **offsets) -> Index:
            out = list(base)
            for axis, delta in offsets.items():
                out[int(axis[1:])] += delta
            return tuple(out)

        zero = (0,) * self.rank
        psi2_i = self.value(shift(zero, **{f"a{i}": 2}))
        divisor = self.value(shift(w, **{f"a{k}": -sk})) * psi2_i
        if divisor == 0:
            if self.is_rational:
                raise DependentPointsError("support reduction divisor vanished over Q")
            raise DegenerateNetError(f"support reduction divides by zero at {v}")
        t2 = (self.value(shift(zero, **{f"a{k}": sk, f"a{i}": -1}))
              * self.value(shift(zero, **{f"a{i}": 2, f"a{k}": sk}))
              * self.value(w)
              * self.value(shift(w, **{f"a{i}": 1})))
        t3 = (self.value(shift(w, **{f"a{i}": -1}))
              * self.value(shift(tuple(-c for c in w), **{f"a{i}": -2}))
              * sk
              * self.value(shift(zero, **{f"a{i}": 1, f"a{k}": sk})))
        return -(t2 + t3) / divisor

    @staticmethod
    def _is_small_support(v: Index) -> bool:
        return max(abs(c) for c in v) == 1 and sum(1 for c in v if c) >= 3

    def _step(self, v: Index, axis: int) -> tuple[Index, Index, int]:
        s = 1 if v[axis] > 0 else -1
        w = v[:axis] + (v[axis] - s,) + v[axis + 1:]
        wmu = w[:axis] + (w[axis] - s,) + w[axis + 1:]
        return w, wmu, axis

    def _axis_order(self, v: Index) -> list[int]:
        axes = [i for i, c in enumerate(v) if c]
        axes.sort(key=lambda i: (-abs(v[i]), i))
        return axes

    def _eval_points_iterative(self, target: Index) -> None:
        """Exact-field evaluation; the descent never divides by zero unless
        the base points are dependent."""
        values = self._values
        stack = [target]
        while stack:
            t = stack[-1]
            if t in values:
                stack.pop()
                continue
            base = self._base_value(t)
            if base is not None:
                values[t] = base
                stack.pop()
                continue
            if self._is_small_support(t):
                values[t] = self._support_reduce(t)
                stack.pop()
                continue
            w, wmu, axis = self._step(t, self._axis_order(t)[0])
            kw, sw = _normalize(w)
            kwmu, swmu = _normalize(wmu)
            missing = [k for k in (kw, kwmu) if k not in values]
            if missing:
                stack.extend(missing)
                continue
            w_val = values[kw] if sw > 0 else -values[kw]
            wmu_val = values[kwmu] if swmu > 0 else -values[kwmu]
            if wmu_val == 0:
                raise DependentPointsError(
                    f"net value vanished at {kwmu}: base points are dependent"
                )
            pw = self.point(w)
            if pw.is_infinity:
                raise DependentPointsError(
                    f"{w} . P is the identity: base points are dependent"
                )
            values[t] = w_val * w_val * (self.points[axis].x - pw.x) / wmu_val
            stack.pop()

    def _axis_psi(self, axis: int, n: int):
        """Axis values through the division polynomial doubling identities,
        which stay clear of the lattice zeros that break the X-step mod p."""
        if self._axis_divpoly is None:
            self._axis_divpoly = {}
        if axis not in self._axis_divpoly:
            self._axis_divpoly[axis] = DivisionPolynomials(self.curve, self.points[axis])
        return self._axis_divpoly[axis].psi(n)

    def _eval_points_gf(self, v: Index, active: set[Index]):
        """Finite-field evaluation with per-axis fallback, then recurrence."""
        values = self._values
        if v in values:
            return values[v]
        base = self._base_value(v)
        if base is not None:
            values[v] = base
            return base
        nonzero = [(i, c) for i, c in enumerate(v) if c]
        if len(nonzero) == 1:
            try:
                result = self._axis_psi(*nonzero[0])
                values[v] = result
                return result
            except DegenerateNetError:
                pass
        if v in active:
            raise DegenerateNetError(f"cyclic fallback at {v}")
        active.add(v)
        if self._is_small_support(v):
            try:
                result = self._support_reduce(v)
                values[v] = result
                return result
            finally:
                active.discard(v)
        try:
            for axis in self._axis_order(v):
                try:
                    result = self._try_gf_step(v, axis, active)
                except DegenerateNetError:
                    continue
                values[v] = result
                return result
            if self.rank <= 2:
                result = self._eval_recurrence(v)
                values[v] = result
                return result
            raise DegenerateNetError(f"all point-strategy steps degenerate at {v}")
        finally:
            active.discard(v)

    def _try_gf_step(self, v: Index, axis: int, active: set[Index]):
        w, wmu, axis = self._step(v, axis)
        kw, sw = _normalize(w)
        kwmu, swmu = _normalize(wmu)
        w_val = self._eval_points_gf(kw, active)
        wmu_val = self._eval_points_gf(kwmu, active)
        if sw < 0:
            w_val = -w_val
        if swmu < 0:
            wmu_val = -wmu_val
        if wmu_val == 0:
            raise DegenerateNetError(f"zero divisor W{kwmu} in step at {v}")
        try:
            pw = self.point(w)
        except SingularCurveError as exc:
            # combinations through the singular point have no usable x-step
            raise DegenerateNetError(str(exc)) from exc
        if pw.is_infinity:
            raise DegenerateNetError(f"{w} . P reduces to the identity")
        return w_val * w_val * (self.points[axis].x - pw.x) / wmu_val

    # ------------------------------------------------------------------
    # recurrence strategy (rank <= 2)
    # ------------------------------------------------------------------

    def _recurrence_bases(self) -> dict[Index, object]:
        if self._recurrence_base is not None:
            return self._recurrence_base
        if self.rank != 2:
            raise PreconditionError("recurrence schedule is defined for rank <= 2")
        init = {}
        for v in ((1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2)):
            init[v] = initial_net_value(self.curve, self.points, v)
        init[(0, 0)] = self._zero
        # instantiations of the net recurrence published with the initial data:
        #   W(e1-e2)   = W(e1+2e2) - W(2e1+e2)
        #   W(2e1-e2)  = W(2e1) W(2e2) - W(2e1+e2) W(e1-e2)^2   (and swapped)
        init[(1, -1)] = init[(1, 2)] - init[(2, 1)]
        init[(2, -1)] = init[(2, 0)] * init[(0, 2)] - init[(2, 1)] * init[(1, -1)] ** 2
        init[(1, -2)] = -(init[(0, 2)] * init[(2, 0)] - init[(1, 2)] * init[(1, -1)] ** 2)
        init[(3, 0)] = init[(2, 1)] * init[(2, -1)] - init[(2, 0)] ** 2 * init[(1, -1)]
        init[(0, 3)] = -init[(1, 2)] * init[(1, -2)] + init[(0, 2)] ** 2 * init[(1, -1)]
        self._recurrence_base = init
        return init

    def _divide(self, num, den):
        if den == 0:
            if self.is_rational:
                raise DependentPointsError("recurrence divisor vanished over Q")
            raise DegenerateNetError("recurrence schedule divides by a zero net value")
        return num / den

    def _eval_recurrence(self, v: Index):
        if self.rank == 1:
            if self._divpoly is None:
                self._divpoly = DivisionPolynomials(self.curve, self.points[0])
            return self._divpoly.psi(v[0])
        base = self._recurrence_bases()
        if v in base:
            self._values[v] = base[v]
            return base[v]

        def W(idx: Index):
            key, sign = _normalize(idx)
            if key in base:
                val = base[key]
            elif key in self._values:
                val = self._values[key]
            else:
                val = self._eval_recurrence(key)
            return -val if sign < 0 else val

        m, n = v
        if m == 0:
            # swapped axis formula, n >= 4 (n == 3 is a base value)
            num = (W((1, n - 1)) * -W((1, 2 - n)) * W((0, 2))
                   - W((1, 2)) * -W((1, -1)) * W((0, n - 1)) * W((0, n - 2)))
            result = self._divide(num, W((0, n - 3)))
        elif n == 0:
            num = (W((m - 1, 1)) * W((m - 2, -1)) * W((2, 0))
                   - W((2, 1)) * W((1, -1)) * W((m - 1, 0)) * W((m - 2, 0)))
            result = self._divide(num, W((m - 3, 0)))
        elif n == 1:
            num = W((m - 1, 1)) * W((m - 1, -1)) - W((1, 2)) * W((m - 1, 0)) ** 2
            result = self._divide(num, W((m - 2, -1)))
        elif n == -1:
            num = (W((m - 1, 1)) * W((m - 1, -1)) * W((1, -1)) ** 2
                   - W((1, -2)) * W((m - 1, 0)) ** 2)
            result = self._divide(num, W((m - 2, 1)))
        elif n >= 2 and m == 1:
            num = (W((0, 2)) * W((1, n - 1)) * W((0, n - 1))
                   - W((0, n)) * W((1, n - 2)))
            result = self._divide(num, W((0, n - 2)) * W((1, -1)))
        elif n >= 2:
            num = (W((m, n - 1)) * W((m - 2, n))
                   - W((2, 0)) * W((m - 1, n)) * W((m - 1, n - 1)))
            result = self._divide(num, W((m - 2, n - 1)) * W((1, -1)))
        elif n <= -2 and m == 1:
            num = (W((0, 2)) * W((1, n + 1)) * W((0, n + 1))
                   - W((1, -1)) * W((0, n)) * W((1, n + 2)))
            result = self._divide(num, W((0, n + 2)))
        else:
            num = (W((2, 0)) * W((m - 1, n)) * W((m - 1, n + 1))
                   + W((1, -1)) * W((m, n + 1)) * W((m - 2, n)))
            result = self._divide(num, W((m - 2, n + 1)))
        self._values[v] = result
        return result

    # ------------------------------------------------------------------
    # denominators
    # ------------------------------------------------------------------

    def denominator(self, v: Sequence[int]) -> int:
        """D_{v . P}; zero for v = 0 by the table convention."""
        v = self._key(v)
        if not any(v):
            return 0
        if not self.is_rational:
            raise PreconditionError("denominator net requires a rational curve")
        pt = self.point(v)
        if pt.is_infinity:
            raise DependentPointsError(f"{v} . P is the identity")
        return decompose(self.curve, pt).d


def denominator_net(net: EllipticNet, v: Sequence[int]) -> int:
    return net.denominator(v)


def _reduce_fraction(x: Fraction, p: int) -> PrimeFieldElement:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonIntegralReductionError(f"value has negative {p}-adic valuation")
    return PrimeFieldElement(x.numerator * pow(x.denominator, -1, p), p)


class ReducedNet:
    """Reduction mod p of an exact net.

    Valid whenever every P_i and every P_i +- P_j stays away from infinity
    mod p, which the constructor verifies; net values are then p-integral.
    Values are computed directly mod p when possible (every division along
    a successful direct evaluation is by a unit, so the result equals the
    reduced exact value); evaluations that hit a zero divisor fall back to
    exact computation over Q followed by reduction.
    """

    def __init__(self, net: EllipticNet, p: int):
        if not net.is_rational:
            raise PreconditionError("ReducedNet wraps an exact rational net")
        if not net.curve.is_integral:
            raise PreconditionError("reduction requires an integral model")
        self.net = net
        self.p = p
        self.rank = net.rank
        self.gf_curve = reduce_curve(net.curve, p)
        self.gf_points = tuple(reduce_mod_p(net.curve, pt, p) for pt in net.points)
        for i, pt in enumerate(self.gf_points):
            if pt.is_infinity:
                raise PreconditionError(f"P_{i} reduces to infinity mod {p}")
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                for combo in (net.curve.add(net.points[i], net.points[j]),
                              net.curve.sub(net.points[i], net.points[j])):
                    if reduce_mod_p(net.curve, combo, p).is_infinity:
                        raise PreconditionError(
                            f"P_{i} +- P_{j} reduces to infinity mod {p}"
                        )
        self._direct = EllipticNet(self.gf_curve, self.gf_points)
        self._fallback: dict[Index, PrimeFieldElement] = {}

    def value(self, v: Sequence[int]) -> PrimeFieldElement:
        key = tuple(int(c) for c in v)
        try:
            return self._direct.value(key)
        except DegenerateNetError:
            pass
        if key not in self._fallback:
            self._fallback[key] = _reduce_fraction(self.net.value(key), self.p)
        return self._fallback[key]

    def exact_value(self, v: Sequence[int]) -> PrimeFieldElement:
        """Force the exact-over-Q-then-reduce path."""
        return _reduce_fraction(self.net.value(v), self.p)


@dataclass(frozen=True)
class QuadraticFormData:
    """Symmetric matrix A with A_ii = D_{P_i} and A_ij = D_{P_i+P_j}/(D_i D_j)."""

    matrix: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_curve_points(cls, curve: WeierstrassCurve,
                          points: Sequence[CurvePoint]) -> "QuadraticFormData":
        r = len(points)
        dens = [decompose(curve, pt).d for pt in points]
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                if i == j:
                    row.append(Fraction(dens[i]))
                else:
                    s = curve.add(points[i], points[j])
                    if s.is_infinity:
                        raise DegeneratePairError("P_i + P_j is the identity")
                    row.append(Fraction(decompose(curve, s).d, dens[i] * dens[j]))
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def value(self, v: Sequence[int]) -> Fraction:
        """F_v = prod over i <= j of A_ij ** (v_i v_j)."""
        result = Fraction(1)
        for i in range(self.rank):
            for j in range(i, self.rank):
                e = v[i] * v[j]
                if e:
                    result *= self.matrix[i][j] ** e
        return result

    def exponents(self, v: Sequence[int]) -> tuple[int, ...]:
        """Exponent array of F_v over the entries A_ij, i <= j."""
        return tuple(v[i] * v[j] for i in range(self.rank) for j in range(i, self.rank))


def scaled_value(net: EllipticNet | ReducedNet, qdata: QuadraticFormData, v: Sequence[int]):
    """The rescaled net value F_v * W(v) (reduced mod p for a ReducedNet)."""
    if isinstance(net, ReducedNet):
        return _reduce_fraction(qdata.value(v) * net.net.value(v), net.p)
    return qdata.value(v) * net.value(v)


def recurrence_check(value_fn: Callable[[Index], object], rank: int,
                     box_radius: int, trials: int, seed: int = 0) -> list:
    """Sample quadruples and test the four-index net recurrence exactly.

    Returns the violating quadruples (empty means every sample passed).
    """
    rng = random.Random(seed)
    violations = []

    def rand_index() -> Index:
        return tuple(rng.randint(-box_radius, box_radius) for _ in range(rank))

    def plus(*vs: Index) -> Index:
        return tuple(sum(cs) for cs in zip(*vs))

    def minus(a: Index, b: Index) -> Index:
        return tuple(x - y for x, y in zip(a, b))

    for _ in range(trials):
        p, q, r, s = rand_index(), rand_index(), rand_index(), rand_index()
        total = (
            value_fn(plus(p, q, s)) * value_fn(minus(p, q)) * value_fn(plus(r, s)) * value_fn(r)
            + value_fn(plus(q, r, s)) * value_fn(minus(q, r)) * value_fn(plus(p, s)) * value_fn(p)
            + value_fn(plus(r, p, s)) * value_fn(minus(r, p)) * value_fn(plus(q, s)) * value_fn(q)
        )
        if total != 0:
            violations.append((p, q, r, s))
    return violations


def box_indices(rank: int, radius: int) -> list[Index]:
    """All integer vectors with max-norm at most radius."""
    return list(itertools.product(range(-radius, radius + 1), repeat=rank))
