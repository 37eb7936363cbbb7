"""Enumeration, inversion and sequence claims over parameter combos.

Grids are always walked in lexicographic (k, m, u) order so that reports,
and in particular counterexample witnesses, are reproducible byte for byte.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .core import ParamCombo, QValue, compute_abs_A, exponent_at
from .enclosure import Rational, as_rational, compare_with_log
from .errors import DegenerateError, DuplicateAbsAError, PreconditionError


class Claim(str, enum.Enum):
    SYMMETRY = "symmetry"
    PARTNER_UNIQUENESS = "partner-uniqueness"
    MONOTONE_DECREASE = "monotone-decrease"


class Verdict(str, enum.Enum):
    HOLDS = "holds-on-grid"
    COUNTEREXAMPLE = "counterexample-found"


@dataclass(frozen=True)
class Bounds:
    k_max: int
    m_max: int
    u_max: int

    def __post_init__(self) -> None:
        if min(self.k_max, self.m_max, self.u_max) < 1:
            raise PreconditionError(f"bounds must be >= 1: {self}")

    def as_dict(self) -> dict:
        return {"k_max": self.k_max, "m_max": self.m_max, "u_max": self.u_max}


def iter_grid(bounds: Bounds, N: int = 2) -> Iterator[ParamCombo]:
    """All combos in the box, lexicographic in (k, m, u)."""
    for k in range(1, bounds.k_max + 1):
        if N * k < 2:
            continue
        for m in range(1, bounds.m_max + 1):
            for u in range(1, bounds.u_max + 1):
                yield ParamCombo(k, m, u, N)


def fraction_str(q: Fraction) -> str:
    """Exact "num/den" text; integers print without the "/1"."""
    return str(Fraction(q))


@dataclass(frozen=True)
class Witness:
    combo: ParamCombo
    exponent: Fraction
    abs_A: int

    @classmethod
    def of(cls, combo: ParamCombo) -> "Witness":
        return cls(combo, exponent_at(combo, 1), compute_abs_A(combo).value)

    def to_dict(self) -> dict:
        return {
            "combo": self.combo.as_dict(),
            "exponent": fraction_str(self.exponent),
            "absA": self.abs_A,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Witness":
        c = data["combo"]
        return cls(ParamCombo(c["k"], c["m"], c["u"], c["N"]), Fraction(data["exponent"]), data["absA"])


@dataclass(frozen=True)
class ClaimReport:
    claim: Claim
    grid: dict
    verdict: Verdict
    witnesses: tuple[Witness, ...] = ()

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    def to_dict(self) -> dict:
        return {
            "claim": self.claim.value,
            "grid": self.grid,
            "verdict": self.verdict.value,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ClaimReport":
        return cls(
            Claim(data["claim"]),
            data["grid"],
            Verdict(data["verdict"]),
            tuple(Witness.from_dict(w) for w in data["witnesses"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ClaimReport":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FamilySequence:
    """Combos p = 1..P ordered by strictly increasing |A|."""

    combos: tuple[ParamCombo, ...]
    abs_A_values: tuple[int, ...]
    exponents_at_1: tuple[Fraction, ...]
    increasing_A: bool = True

    def __len__(self) -> int:
        return len(self.combos)

    def values_at_1(self) -> list[QValue]:
        return [QValue(e) for e in self.exponents_at_1]


@dataclass(frozen=True)
class Ball:
    """The open ball {b > 0 : b < sigma} around 0."""

    sigma: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", as_rational(self.sigma))
        if self.sigma <= 0:
            raise PreconditionError(f"sigma must be positive, got {self.sigma}")

    def contains(self, value: QValue) -> bool:
        # e**E < sigma  <=>  E < ln(sigma), decided by a refined enclosure
        return compare_with_log(value.log_value, self.sigma) < 0


@dataclass(frozen=True)
class PairEntry:
    """One enumerated combo with its pair {f(1), f(partner)}."""

    combo: ParamCombo
    exponent_at_1: Fraction
    partner: int
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "combo": self.combo.as_dict(),
            "exponent": fraction_str(self.exponent_at_1),
            "partner": self.partner,
            "degenerate": self.degenerate,
        }


def invert_target(n: int, k_max: int = 4, u_max: int = 10) -> list[ParamCombo]:
    """All N = 2 combos with k <= k_max, u <= u_max and |A| = n.

    |A| = n means m * u**(2k - 2) = n + 1, so m is fixed by (k, u) whenever
    the power divides n + 1.  Never empty: k = 1, m = n + 1 works for any u.
    """
    if n < 1:
        raise PreconditionError(f"target must be >= 1, got {n}")
    target = n + 1
    found = []
    for k in range(1, k_max + 1):
        for u in range(1, u_max + 1):
            power = u ** (2 * k - 2)
            if power > target:
                break
            if target % power == 0:
                found.append(ParamCombo(k, target // power, u, 2))
    found.sort(key=lambda c: (c.k, c.m, c.u))
    return found


def find_partner(combo: ParamCombo) -> int:
    """The unique n in N with f(n) = f(1); equal to |A|.

    The exponent is u*(x**2 - Z*x), symmetric about Z/2, so the only
    integer sharing the value at 1 is Z - 1.
    """
    combo.require_symmetric()
    abs_a = compute_abs_A(combo)
    if abs_a.degenerate:
        raise DegenerateError(f"|A| = 0 for {combo}; 1 has no partner in N")
    n = abs_a.value
    assert exponent_at(combo, n) == exponent_at(combo, 1)
    return n


def build_increasing_sequence(combos: Iterable[ParamCombo]) -> FamilySequence:
    combos = list(combos)
    for c in combos:
        c.require_symmetric()
    keyed = sorted(((compute_abs_A(c).value, c) for c in combos), key=lambda t: t[0])
    for (a1, c1), (a2, c2) in zip(keyed, keyed[1:]):
        if a1 == a2:
            raise DuplicateAbsAError(f"{c1} and {c2} both have |A| = {a1}")
    ordered = tuple(c for _, c in keyed)
    return FamilySequence(
        combos=ordered,
        abs_A_values=tuple(a for a, _ in keyed),
        exponents_at_1=tuple(exponent_at(c, 1) for c in ordered),
    )


def _sequence_grid(seq: FamilySequence) -> dict:
    return {"combos": [c.as_dict() for c in seq.combos]}


def check_monotone_decrease(seq: FamilySequence) -> ClaimReport:
    """Test that f_p(1) strictly decreases along an increasing-|A| sequence.

    Not assumed: with u varying between neighbours the claim can fail, and
    the first offending adjacent pair is returned as the witness.
    """
    if not seq.increasing_A:
        raise PreconditionError("sequence is not tagged increasing-A")
    grid = _sequence_grid(seq)
    exps = seq.exponents_at_1
    for p in range(len(seq) - 1):
        if not exps[p + 1] < exps[p]:
            pair = (Witness.of(seq.combos[p]), Witness.of(seq.combos[p + 1]))
            return ClaimReport(Claim.MONOTONE_DECREASE, grid, Verdict.COUNTEREXAMPLE, pair)
    return ClaimReport(Claim.MONOTONE_DECREASE, grid, Verdict.HOLDS)


def replay(report: ClaimReport) -> ClaimReport:
    """Recompute a monotone-decrease report from its recorded combos."""
    if report.claim is not Claim.MONOTONE_DECREASE:
        raise PreconditionError(f"replay supports {Claim.MONOTONE_DECREASE.value} only")
    combos = [ParamCombo(c["k"], c["m"], c["u"], c["N"]) for c in report.grid["combos"]]
    return check_monotone_decrease(build_increasing_sequence(combos))


def tail_in_ball(seq: FamilySequence, sigma: Rational | Ball) -> Optional[int]:
    """Smallest M with f_p(1) < sigma for every p > M (p is 1-based).

    Returns 0 when the whole sequence is inside the ball and ``None`` when
    the last element is outside it (no tail qualifies).
    """
    if len(seq) == 0:
        raise PreconditionError("sequence is empty")
    ball = sigma if isinstance(sigma, Ball) else Ball(as_rational(sigma))
    inside = [ball.contains(v) for v in seq.values_at_1()]
    if not inside[-1]:
        return None
    m = len(inside)
    while m > 0 and inside[m - 1]:
        m -= 1
    return m


def enumerate_pairs(bounds: Bounds) -> list[PairEntry]:
    """Every N = 2 combo in the box with its pair, lexicographic in (k, m, u)."""
    out = []
    for combo in iter_grid(bounds):
        abs_a = compute_abs_A(combo)
        out.append(PairEntry(combo, exponent_at(combo, 1), abs_a.value, abs_a.degenerate))
    return out


def check_symmetry_grid(combos: Iterable[ParamCombo], grid: dict) -> ClaimReport:
    """f(1) = f(|A|) over many combos; degenerate and odd-N*k ones are skipped."""
    failures = []
    for combo in combos:
        if not combo.is_symmetric or compute_abs_A(combo).degenerate:
            continue
        if exponent_at(combo, 1) != exponent_at(combo, compute_abs_A(combo).value):
            failures.append(Witness.of(combo))
    verdict = Verdict.COUNTEREXAMPLE if failures else Verdict.HOLDS
    return ClaimReport(Claim.SYMMETRY, grid, verdict, tuple(failures))


def check_partner_uniqueness(combos: Iterable[ParamCombo], grid: dict, slack: int = 10) -> ClaimReport:
    """Brute force: no integer x in [1, |A| + slack] other than 1, |A| matches f(1)."""
    failures = []
    for combo in combos:
        abs_a = compute_abs_A(combo)
        if not combo.is_symmetric or abs_a.degenerate:
            continue
        e1 = exponent_at(combo, 1)
        for x in range(1, abs_a.value + slack + 1):
            if x not in (1, abs_a.value) and exponent_at(combo, x) == e1:
                failures.append(Witness.of(combo))
                break
    verdict = Verdict.COUNTEREXAMPLE if failures else Verdict.HOLDS
    return ClaimReport(Claim.PARTNER_UNIQUENESS, grid, verdict, tuple(failures))


def search_monotone_counterexample(bounds: Bounds) -> ClaimReport:
    """Look for |A_p| < |A_q| with f_p(1) <= f_q(1) when u may vary.

    The first pair in lexicographic order of (first combo, second combo) is
    reported; the grid records the search box.
    """
    combos = [c for c in iter_grid(bounds) if not compute_abs_A(c).degenerate]
    keyed = [(compute_abs_A(c).value, exponent_at(c, 1), c) for c in combos]
    grid = {"search": "varying-u", **bounds.as_dict(), "N": 2}
    for a1, e1, c1 in keyed:
        for a2, e2, c2 in keyed:
            if a2 > a1 and e2 >= e1:
                pair = (Witness(c1, e1, a1), Witness(c2, e2, a2))
                return ClaimReport(Claim.MONOTONE_DECREASE, grid, Verdict.COUNTEREXAMPLE, pair)
    return ClaimReport(Claim.MONOTONE_DECREASE, grid, Verdict.HOLDS)


def constant_u_sequence(u: int, m_values: Sequence[int], k: int = 1, N: int = 2) -> FamilySequence:
    return build_increasing_sequence(ParamCombo(k, m, u, N) for m in m_values)


def consecutive_equalities(bounds: Bounds) -> list[dict]:
    """Combos where f(n) = f(n + 1) for some n in N.

    The exponent is symmetric about Z/2, so this happens exactly when Z is
    odd, at n = (Z - 1)/2.
    """
    out = []
    for combo in iter_grid(bounds):
        z = combo.Z
        if z % 2 == 1 and z >= 3:
            n = (z - 1) // 2
            e = exponent_at(combo, n)
            assert e == exponent_at(combo, n + 1)
            out.append({"combo": combo.as_dict(), "n": n, "exponent": fraction_str(e)})
    return out
