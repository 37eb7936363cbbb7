"""Certified rational enclosures of natural logarithms.

All bounds are exact :class:`fractions.Fraction` values.  Series are summed in
fixed point with floor/ceil rounding on the lower/upper path respectively, and
the truncation tail is added to the upper bound, so the true value always lies
inside the returned :class:`Interval`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction, str]

DEFAULT_BITS = 96
MAX_BITS = 1 << 16


def as_rational(x: Rational) -> Fraction:
    """Coerce ints, Fractions and decimal/fraction strings to a Fraction.

    Floats are refused on purpose: a float literal like 0.1 is not the
    rational the caller probably meant.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected int, Fraction or str, got {type(x).__name__}")


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> "Interval":
        q = as_rational(x)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        q = as_rational(x)
        return self.lo <= q <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: Union["Interval", Fraction, int]) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Union["Interval", Fraction, int]) -> "Interval":
        return self + (-other)

    def scale(self, c: Union[int, Fraction]) -> "Interval":
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def to_dict(self, digits: int = 30) -> dict:
        # outward rounding keeps the printed pair a valid enclosure
        return {
            "lo": decimal_str(self.lo, digits, "floor"),
            "hi": decimal_str(self.hi, digits, "ceil"),
        }


def decimal_str(q: Fraction, digits: int, rounding: str = "nearest") -> str:
    """Render ``q`` in fixed point with ``digits`` fractional digits.

    ``rounding`` is one of ``"floor"``, ``"ceil"`` or ``"nearest"``
    (half away from zero).  Trailing zeros are kept so widths are visible.
    """
    q = Fraction(q)
    scale = 10**digits
    num, den = q.numerator * scale, q.denominator
    if rounding == "floor":
        n = num // den
    elif rounding == "ceil":
        n = -((-num) // den)
    elif rounding == "nearest":
        n = (2 * abs(num) + den) // (2 * den)
        n = n if num >= 0 else -n
    else:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def _atanh_bounds(y: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Bounds on atanh(y) for 0 <= y <= 1/3 with roughly ``prec`` good bits."""
    scale = 1 << prec
    ylo = y.numerator * scale // y.denominator
    yhi = -((-y.numerator * scale) // y.denominator)
    y2lo = (ylo * ylo) >> prec
    y2hi = -((-yhi * yhi) >> prec)
    # y <= 1/3, so each term shrinks by >= 9x: prec/3 terms reach 2**-prec
    terms = prec // 3 + 2
    plo, phi = ylo, yhi
    slo = shi = 0
    for j in range(terms):
        d = 2 * j + 1
        slo += plo // d
        shi += -((-phi) // d)
        plo = (plo * y2lo) >> prec
        phi = -((-phi * y2hi) >> prec)
    # tail sum_{j>=n} y^(2j+1)/(2j+1) <= y^(2n+1) / ((2n+1)(1 - y^2))
    tail = Fraction(phi, scale) / ((2 * terms + 1) * (1 - y * y))
    return Fraction(slo, scale), Fraction(shi, scale) + tail


def _ln2(prec: int) -> tuple[Fraction, Fraction]:
    lo, hi = _atanh_bounds(Fraction(1, 3), prec)
    return 2 * lo, 2 * hi


def ln_enclosure(x: Rational, bits: int = DEFAULT_BITS) -> Interval:
    """Certified enclosure of ln(x) for rational x > 0.

    Writes x = 2**e * r with r in [1, 2) and uses
    ln r = 2 atanh((r - 1) / (r + 1)).  The width is about
    (1 + |e|) * 2**-bits.
    """
    q = as_rational(x)
    if q <= 0:
        raise ValueError(f"ln undefined for {q}")
    if q == 1:
        return Interval(Fraction(0), Fraction(0))
    e = q.numerator.bit_length() - q.denominator.bit_length()
    r = q / Fraction(2) ** e
    if r < 1:
        e -= 1
        r *= 2
    prec = bits + 8 + max(e, -e).bit_length()
    y = (r - 1) / (r + 1)
    if y == 0:
        lo = hi = Fraction(0)
    else:
        lo, hi = _atanh_bounds(y, prec)
        lo, hi = 2 * lo, 2 * hi
    if e:
        l2lo, l2hi = _ln2(prec)
        if e > 0:
            lo, hi = lo + e * l2lo, hi + e * l2hi
        else:
            lo, hi = lo + e * l2hi, hi + e * l2lo
    return Interval(lo, hi)


def compare_with_log(q: Rational, x: Rational) -> int:
    """Sign of ``q - ln(x)``, decided exactly.

    ln(x) is irrational for every rational x != 1, so refining the
    enclosure always terminates; ``MAX_BITS`` is only a safety stop.
    """
    q = as_rational(q)
    x = as_rational(x)
    if x <= 0:
        raise ValueError(f"ln undefined for {x}")
    if x == 1:
        return (q > 0) - (q < 0)
    bits = 64
    while bits <= MAX_BITS:
        enc = ln_enclosure(x, bits)
        if q < enc.lo:
            return -1
        if q > enc.hi:
            return 1
        bits *= 2
    raise ArithmeticError(f"could not separate {q} from ln({x}) at {MAX_BITS} bits")
