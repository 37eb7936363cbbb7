"""Interval analysis on [1, |A|].

Midpoint, mirror chains for f and g, the distances D and ln(Z - 2), the
real-valued distance-equals-value solver, and Rolle/Darboux checks.
Everything is exact except the solver (mpmath at a set precision) and the
log enclosures, which are certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath

from .core import (
    Ordering,
    ParamCombo,
    Sign,
    compute_abs_A,
    derivative_factor,
    derivative_sign_at,
    exponent_at,
)
from .enclosure import DEFAULT_BITS, Interval, Rational, as_rational, compare_with_log, ln_enclosure
from .errors import DegenerateError, DomainError, PreconditionError, RangeError

SOLVER_TOL = 1e-12
BISECTION_TOL = Fraction(1, 10**9)


@dataclass(frozen=True)
class Midpoint:
    theta: Fraction
    interval: tuple[int, int]


@dataclass(frozen=True)
class DeltaChain:
    deltas: tuple[Fraction, ...]
    values_left: tuple[Fraction, ...]
    values_right: tuple[Fraction, ...]
    midpoint_reached: bool
    direction: str  # "decreasing" for f (u > 0), "increasing" for g (u < 0)

    @property
    def mirrors_equal(self) -> bool:
        return self.values_left == self.values_right

    @property
    def monotone(self) -> bool:
        vals = self.values_left
        if self.direction == "decreasing":
            return all(a > b for a, b in zip(vals, vals[1:]))
        return all(a < b for a, b in zip(vals, vals[1:]))


@dataclass(frozen=True)
class LogDistance:
    direct: Interval
    series: Interval

    @property
    def consistent(self) -> bool:
        return self.direct.overlaps(self.series)


@dataclass(frozen=True)
class DistanceSolution:
    Z: Fraction
    E: int
    u_real: mpmath.mpf
    m_real: mpmath.mpf
    m_closed_form: mpmath.mpf
    residual: mpmath.mpf
    relative_gap: mpmath.mpf
    tol: float = SOLVER_TOL

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol and self.relative_gap <= self.tol

    @property
    def u_negative(self) -> bool:
        return self.u_real < 0

    @property
    def u_is_integer(self) -> bool:
        return _near_int(self.u_real, self.tol)

    @property
    def m_is_integer(self) -> bool:
        return _near_int(self.m_real, self.tol)


@dataclass(frozen=True)
class RolleReport:
    theta: Fraction
    h: Fraction
    left_points: tuple[Fraction, ...]
    right_points: tuple[Fraction, ...]
    left_ok: bool
    zero_at_theta: bool
    right_ok: bool
    finite_difference_exact: bool

    @property
    def holds(self) -> bool:
        return self.left_ok and self.zero_at_theta and self.right_ok and self.finite_difference_exact


@dataclass(frozen=True)
class ScaledExp:
    """coef * e**log_value, e.g. f'(x) = (2ux + v) * e**Q(x)."""

    coef: Fraction
    log_value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coef", as_rational(self.coef))
        object.__setattr__(self, "log_value", as_rational(self.log_value))


@dataclass(frozen=True)
class DarbouxWitness:
    x: Fraction
    lo: Fraction
    hi: Fraction
    side: str  # "left" is [1, theta], "right" is [theta, |A|]


def _near_int(x: mpmath.mpf, tol: float) -> bool:
    return abs(x - mpmath.nint(x)) <= tol


def _interval_or_raise(combo: ParamCombo, minimum: int = 2) -> int:
    combo.require_symmetric()
    n = compute_abs_A(combo).value
    if n < minimum:
        raise DegenerateError(f"interval [1, {n}] is degenerate for {combo}")
    return n


def midpoint(combo: ParamCombo) -> Midpoint:
    n = _interval_or_raise(combo)
    theta = Fraction(-combo.v, 2 * combo.u)
    assert theta == Fraction(1 + n, 2)
    assert derivative_sign_at(combo, theta) is Sign.ZERO
    return Midpoint(theta, (1, n))


def midpoint_value_exponent(combo: ParamCombo) -> Fraction:
    """-m**2 * u**(2*N*k - 3) / 4, the exponent of f at the vertex."""
    mid = midpoint(combo)
    closed = Fraction(-(combo.m**2) * combo.u ** (2 * combo.nk - 3), 4)
    if closed != exponent_at(combo, mid.theta):
        raise ArithmeticError(f"vertex exponent mismatch for {combo}")
    return closed


def _chain(combo: ParamCombo, deltas: Sequence[Rational], direction: str) -> DeltaChain:
    ds = tuple(as_rational(d) for d in deltas)
    if not ds:
        return DeltaChain((), (), (), False, direction)
    n = _interval_or_raise(combo, minimum=1)
    for a, b in zip(ds, ds[1:]):
        if not a < b:
            raise PreconditionError(f"deltas must be strictly increasing: {a} !< {b}")
    for d in ds:
        if d <= 0 or 1 + d > n - d:
            raise DomainError(f"delta {d} outside (0, ({n} - 1)/2]")
    left = tuple(exponent_at(combo, 1 + d) for d in ds)
    right = tuple(exponent_at(combo, n - d) for d in ds)
    offset = Fraction(combo.Z, 2) - 1
    return DeltaChain(ds, left, right, ds[-1] == offset, direction)


def delta_chain(combo: ParamCombo, deltas: Sequence[Rational]) -> DeltaChain:
    if combo.u < 0:
        raise PreconditionError("delta_chain is for u > 0; use mirrored_chain_g")
    return _chain(combo, deltas, "decreasing")


def mirrored_chain_g(combo: ParamCombo, deltas: Sequence[Rational]) -> DeltaChain:
    if combo.u > 0:
        raise PreconditionError("mirrored_chain_g needs u < 0")
    return _chain(combo, deltas, "increasing")


def distance_D(combo: ParamCombo) -> int:
    """|A| - 1 (= Z - 2 for even N*k)."""
    n = _interval_or_raise(combo, minimum=1)
    return n - 1


def log_distance(Z: Rational, terms: int, bits: int = DEFAULT_BITS) -> LogDistance:
    """Two enclosures of ln(Z - 2).

    ``direct`` encloses ln(Z - 2) itself; ``series`` encloses
    ln Z + ln(1 - 2/Z) with the Mercator series cut after ``terms`` terms.
    Every term of that series is negative, so the tail only lowers the bound.
    """
    z = as_rational(Z)
    if z <= 2:
        raise DomainError(f"ln(Z - 2) needs Z > 2, got {z}")
    if terms < 1:
        raise PreconditionError("terms must be >= 1")
    direct = ln_enclosure(z - 2, bits)
    t = 2 / z
    partial = Fraction(0)
    power = Fraction(1)
    for j in range(1, terms + 1):
        power *= t
        partial -= power / j
    tail = power * t / ((terms + 1) * (1 - t))
    series = ln_enclosure(z, bits) + Interval(partial - tail, partial)
    return LogDistance(direct, series)


def _mpf(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def solve_distance_equals_value(
    Z: Rational, E: int, tol: float = SOLVER_TOL, dps: int = 50
) -> DistanceSolution:
    """Real u, m with D = Z - 2 equal to f(|A|) = e**(u(1 - Z)).

    u = ln(Z - 2)/(1 - Z) and m = Z / u**E; the closed form
    Z(1 - Z)**E / ln(Z - 2)**E is evaluated separately as a cross-check.
    """
    z = as_rational(Z)
    if z <= 2:
        raise DomainError(f"need Z > 2, got {z}")
    if z == 3:
        raise DomainError("Z = 3 gives ln(Z - 2) = 0")
    if E < 1:
        raise PreconditionError(f"E = N*k - 2 must be >= 1, got {E}")
    with mpmath.workdps(dps):
        zf = _mpf(z)
        log_d = mpmath.log(zf - 2)
        u = log_d / (1 - zf)
        m = zf / u**E
        closed = zf * (1 - zf) ** E / log_d**E
        residual = abs((zf - 2) - mpmath.exp(u * (1 - zf)))
        gap = abs(m - closed) / abs(closed)
        return DistanceSolution(z, E, u, m, closed, residual, gap, tol)


def derivative_value(combo: ParamCombo, x: Rational) -> ScaledExp:
    x = as_rational(x)
    return ScaledExp(derivative_factor(combo, x), exponent_at(combo, x))


def compare_scaled(a: ScaledExp, b: ScaledExp) -> Ordering:
    """Exact order of a.coef*e**a.log_value versus b.coef*e**b.log_value."""
    sa, sb = Sign.of(a.coef), Sign.of(b.coef)
    if sa != sb:
        return Ordering.LESS if sa < sb else Ordering.GREATER
    if sa is Sign.ZERO:
        return Ordering.EQUAL
    # |a| vs |b|  <=>  a.log - b.log vs ln(|b.coef| / |a.coef|)
    mag = compare_with_log(a.log_value - b.log_value, abs(b.coef) / abs(a.coef))
    return Ordering(mag * sa)


def verify_rolle(combo: ParamCombo, h: Rational, samples: int = 50) -> RolleReport:
    """Check the sign pattern of f' around theta and the central difference.

    The central difference of a quadratic is exact, so
    (Q(x + h) - Q(x - h)) / 2h must equal 2ux + v as rationals.
    """
    h = as_rational(h)
    if h <= 0:
        raise PreconditionError("h must be positive")
    mid = midpoint(combo)
    theta, (lo, hi) = mid.theta, mid.interval
    left = [theta - j * h for j in range(1, samples + 1) if theta - j * h > lo]
    right = [theta + j * h for j in range(1, samples + 1) if theta + j * h < hi]
    left.append((lo + theta) / 2)
    right.append((theta + hi) / 2)
    # g (u < 0) has the mirrored pattern (+, 0, -)
    want = Sign.NEGATIVE if combo.u > 0 else Sign.POSITIVE
    left_ok = all(derivative_sign_at(combo, x) is want for x in left)
    right_ok = all(derivative_sign_at(combo, x) is Sign(-want) for x in right)
    fd_ok = all(
        (exponent_at(combo, x + h) - exponent_at(combo, x - h)) / (2 * h) == derivative_factor(combo, x)
        for x in [*left, theta, *right]
    )
    return RolleReport(
        theta,
        h,
        tuple(left),
        tuple(right),
        left_ok,
        derivative_sign_at(combo, theta) is Sign.ZERO,
        right_ok,
        fd_ok,
    )


def verify_darboux(
    combo: ParamCombo, beta: Union[Rational, ScaledExp], tol: Rational = BISECTION_TOL
) -> DarbouxWitness:
    """Find x where f' passes beta, on [1, theta] or [theta, |A|].

    ``beta`` may be rational or a ScaledExp such as half of f'(1).  The
    returned bracket [lo, hi] has f'(lo) and f'(hi) on opposite sides of
    beta (or equal to it) and width <= tol.
    """
    if not isinstance(beta, ScaledExp):
        beta = ScaledExp(as_rational(beta), Fraction(0))
    tol = as_rational(tol)
    mid = midpoint(combo)
    theta, (one, n) = mid.theta, mid.interval

    def side(x: Fraction) -> Ordering:
        return compare_scaled(derivative_value(combo, x), beta)

    for name, a, b in (("left", Fraction(one), theta), ("right", theta, Fraction(n))):
        sa, sb = side(a), side(b)
        if sa is Ordering.EQUAL:
            return DarbouxWitness(a, a, a, name)
        if sb is Ordering.EQUAL:
            return DarbouxWitness(b, b, b, name)
        if sa == sb:
            continue
        lo, hi = a, b
        while hi - lo > tol:
            c = (lo + hi) / 2
            sc = side(c)
            if sc is Ordering.EQUAL:
                return DarbouxWitness(c, c, c, name)
            if sc == sa:
                lo = c
            else:
                hi = c
        return DarbouxWitness((lo + hi) / 2, lo, hi, name)
    raise RangeError("beta is not between f'(1), f'(theta) or f'(theta), f'(|A|)")
