"""Exact core: parameter combos, exponents and log-space function values.

A function value e**E is never materialised; it is carried as the exact
rational exponent E, and every equality or ordering decision is made on E.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .enclosure import Rational, as_rational
from .errors import DegenerateError, PreconditionError

# Exponents are plain Fractions: always reduced, denominator > 0.
ExactExponent = Fraction


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, q: Fraction | int) -> "Sign":
        return cls((q > 0) - (q < 0))


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {value!r}")
    return value


@dataclass(frozen=True)
class ParamCombo:
    """One parameter combination {k, m, u, N}.

    ``v = (-1)**(N*k - 1) * m * u**(N*k - 1)`` and ``Z = m * u**(N*k - 2)``
    are derived exactly.  ``u`` may be negative (the mirrored family g).
    """

    k: int
    m: int
    u: int
    N: int = 2

    def __post_init__(self) -> None:
        for name in ("k", "m", "u", "N"):
            _check_int(name, getattr(self, name))
        if self.k < 1 or self.m < 1 or self.N < 1:
            raise PreconditionError(f"k, m, N must be positive: {self}")
        if self.u == 0:
            raise PreconditionError("u must be nonzero")
        if self.N * self.k < 2:
            raise PreconditionError(f"N*k must be >= 2, got {self.N * self.k}")

    @classmethod
    def symmetric(cls, k: int, m: int, u: int, N: int = 2) -> "ParamCombo":
        """Build a combo usable by the symmetry results (N*k even)."""
        combo = cls(k, m, u, N)
        combo.require_symmetric()
        return combo

    @property
    def nk(self) -> int:
        return self.N * self.k

    @property
    def is_symmetric(self) -> bool:
        return self.nk % 2 == 0

    @property
    def v(self) -> int:
        sign = -1 if (self.nk - 1) % 2 else 1
        return sign * self.m * self.u ** (self.nk - 1)

    @property
    def Z(self) -> int:
        return self.m * self.u ** (self.nk - 2)

    @property
    def A(self) -> Fraction:
        """A = (u + v) / u, exact (an integer since u divides v)."""
        return Fraction(self.u + self.v, self.u)

    def require_symmetric(self) -> None:
        if not self.is_symmetric:
            raise PreconditionError(f"N*k = {self.nk} is odd; symmetry results need it even")

    def as_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "u": self.u, "N": self.N}

    def __str__(self) -> str:
        return f"{{k={self.k}, m={self.m}, u={self.u}, N={self.N}}}"


@dataclass(frozen=True)
class AbsA:
    """|A| together with the case that produced it.

    ``branch`` is ``"Z-1"`` or ``"1-Z"`` for even N*k, where A = 1 - Z.
    For odd N*k the definition gives A = 1 + Z and the branch is ``"1+Z"``.
    """

    value: int
    branch: str

    @property
    def degenerate(self) -> bool:
        return self.value == 0


@total_ordering
@dataclass(frozen=True)
class QValue:
    """The real number e**log_value (negated when ``positive`` is False)."""

    log_value: Fraction
    positive: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "log_value", as_rational(self.log_value))

    def __lt__(self, other: "QValue") -> bool:
        return compare_values(self, other) is Ordering.LESS

    def __str__(self) -> str:
        sign = "" if self.positive else "-"
        return f"{sign}e^({self.log_value})"


def compute_abs_A(combo: ParamCombo) -> AbsA:
    a = combo.A
    assert a.denominator == 1
    a = int(a)
    if not combo.is_symmetric:
        return AbsA(abs(a), "1+Z")
    z = combo.Z
    if z >= 1:
        return AbsA(z - 1, "Z-1")
    return AbsA(1 - z, "1-Z")


def exponent_at(combo: ParamCombo, x: Rational) -> ExactExponent:
    """u*x**2 + v*x, exactly."""
    x = as_rational(x)
    return combo.u * x * x + combo.v * x


def value_at(combo: ParamCombo, x: Rational) -> QValue:
    return QValue(exponent_at(combo, x))


def _nondegenerate_abs_A(combo: ParamCombo) -> int:
    combo.require_symmetric()
    abs_a = compute_abs_A(combo)
    if abs_a.degenerate:
        raise DegenerateError(f"|A| = 0 for {combo} (Z = 1)")
    return abs_a.value


def check_symmetry(combo: ParamCombo) -> bool:
    """True iff f(1) = f(|A|) holds exactly.

    Always true for valid input; ``False`` would mean an arithmetic bug.
    """
    n = _nondegenerate_abs_A(combo)
    return exponent_at(combo, 1) == exponent_at(combo, n)


def compare_values(a: QValue, b: QValue) -> Ordering:
    if not (a.positive and b.positive):
        raise PreconditionError("compare_values is defined for positive values only")
    return Ordering((a.log_value > b.log_value) - (a.log_value < b.log_value))


def derivative_factor(combo: ParamCombo, x: Rational) -> Fraction:
    """2*u*x + v, the factor with f'(x) = f(x) * (2*u*x + v)."""
    return 2 * combo.u * as_rational(x) + combo.v


def derivative_sign_at(combo: ParamCombo, x: Rational) -> Sign:
    return Sign.of(derivative_factor(combo, x))
