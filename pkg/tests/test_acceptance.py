"""Exit criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary
(see conftest.py).
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from oracles import exponent_horner, mp
from quadexp import (
    ClaimReport,
    ParamCombo,
    Sign,
    build_increasing_sequence,
    check_monotone_decrease,
    check_symmetry,
    compute_abs_A,
    delta_chain,
    derivative_sign_at,
    exponent_at,
    invert_target,
    log_distance,
    midpoint,
    midpoint_value_exponent,
    solve_distance_equals_value,
    tail_in_ball,
    verify_rolle,
)
from quadexp.family import Bounds, Verdict, constant_u_sequence, iter_grid, replay


def C(k, m, u, N=2):
    return ParamCombo(k, m, u, N)


def symmetry_grid():
    """k <= 4, m <= 20, u <= 10, N in {2, 4}; degenerate Z = 1 combos dropped."""
    return [c for N in (2, 4) for c in iter_grid(Bounds(4, 20, 10), N) if not compute_abs_A(c).degenerate]


def random_triples(n=1000, top=1000, seed=20261016):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        c = C(rng.randint(1, top), rng.randint(1, top), rng.randint(1, top))
        if not compute_abs_A(c).degenerate:
            out.append(c)
    return out


@pytest.mark.criterion(1, "combo table |A| = 1, 2, 3, 40959 (exact)")
def test_criterion_1_combo_table():
    table = {C(1, 2, 2): 1, C(1, 3, 2): 2, C(1, 4, 2): 3, C(3, 10, 8): 40959}
    for combo, n in table.items():
        assert compute_abs_A(combo).value == n
        assert combo in invert_target(n, 4, 10)


@pytest.mark.criterion(2, "f(1) = f(|A|) on grid + 1000 random triples, exact, < 10 s")
def test_criterion_2_symmetry():
    start = time.perf_counter()
    grid = symmetry_grid()
    randoms = random_triples()
    assert len(grid) > 1500
    assert all(check_symmetry(c) for c in grid)
    assert all(check_symmetry(c) for c in randoms)
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"took {elapsed:.2f}s"


@pytest.mark.criterion(3, "theta = 20480 with f'(theta) = 0; theta = (1+|A|)/2 on grid")
def test_criterion_3_midpoint():
    mid = midpoint(C(3, 10, 8))
    assert mid.theta == 20480
    assert derivative_sign_at(C(3, 10, 8), mid.theta) is Sign.ZERO
    for c in symmetry_grid():
        n = compute_abs_A(c).value
        if n >= 2:
            assert midpoint(c).theta == Fraction(1 + n, 2)


@pytest.mark.criterion(4, "vertex exponent -m^2 u^(2Nk-3)/4 equals Q(theta) on grid")
def test_criterion_4_vertex_exponent():
    for c in symmetry_grid():
        if compute_abs_A(c).value >= 2:
            theta = midpoint(c).theta
            closed = midpoint_value_exponent(c)
            assert closed == exponent_at(c, theta)
            assert closed == exponent_horner(c.k, c.m, c.u, c.N, theta)


@pytest.mark.criterion(5, "mirror f(1+d) = f(|A|-d) for 100 random pairs; midpoint chains")
def test_criterion_5_delta_symmetry():
    rng = random.Random(5)
    grid = [c for c in symmetry_grid() if compute_abs_A(c).value >= 2]
    for _ in range(100):
        c = rng.choice(grid)
        n = compute_abs_A(c).value
        delta = Fraction(rng.randint(1, 10**6), 10**6) * Fraction(n - 1, 2)
        assert exponent_at(c, 1 + delta) == exponent_at(c, n - delta)
    for c in grid[::5]:
        offset = Fraction(c.m, 2) * c.u ** (c.nk - 2) - 1
        chain = delta_chain(c, [offset / 3, offset / 2, offset])
        assert chain.mirrors_equal and chain.monotone and chain.midpoint_reached


@pytest.mark.criterion(6, "u=2, k=1, m=2..50: strict decrease, finite M for sigma=1e-3")
def test_criterion_6_convergence():
    seq = constant_u_sequence(2, range(2, 51))
    rep = check_monotone_decrease(seq)
    assert rep.verdict is Verdict.HOLDS
    m = tail_in_ball(seq, Fraction(1, 1000))
    # oracle: e^-6 = 0.00248 is outside, e^-8 = 0.000335 inside
    with mpmath.workdps(50):
        assert mpmath.exp(-6) > mp(Fraction(1, 1000)) > mpmath.exp(-8)
    assert m == 3


@pytest.mark.criterion(7, "varying-u counterexample -20 then -3 replays byte-identically")
def test_criterion_7_proof_gap_witness():
    seq = build_increasing_sequence([C(1, 3, 10), C(1, 4, 1)])
    rep = check_monotone_decrease(seq)
    assert rep.verdict is Verdict.COUNTEREXAMPLE
    assert [(w.abs_A, w.exponent) for w in rep.witnesses] == [(2, -20), (3, -3)]
    text = rep.to_json()
    assert check_monotone_decrease(build_increasing_sequence([C(1, 4, 1), C(1, 3, 10)])).to_json() == text
    assert replay(ClaimReport.from_json(text)).to_json() == text


@pytest.mark.criterion(8, "Z=2.5, E=2: m forms agree to 1e-12, residual < 1e-12")
def test_criterion_8_distance_solver():
    sol = solve_distance_equals_value(Fraction(5, 2), 2)
    assert sol.relative_gap < 1e-12
    assert sol.residual < 1e-12


@pytest.mark.criterion(9, "Z=4, 50 terms: both enclosures hold ln 2, width < 1e-12, shrinking")
def test_criterion_9_log_distance():
    ld = log_distance(4, 50)
    with mpmath.workdps(60):
        ln2 = mpmath.log(2)
    for enc in (ld.direct, ld.series):
        assert mp(enc.lo) <= ln2 <= mp(enc.hi)
        assert enc.width < Fraction(1, 10**12)
    widths = [log_distance(4, n).series.width for n in range(1, 51)]
    assert all(a > b for a, b in zip(widths, widths[1:]))


@pytest.mark.criterion(10, "central difference = 2ux+v exactly at 50 random points; (-,0,+) on grid")
def test_criterion_10_rolle():
    rng = random.Random(10)
    grid = [c for c in symmetry_grid() if compute_abs_A(c).value >= 2]
    for _ in range(50):
        c = rng.choice(grid)
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**3))
        h = Fraction(rng.randint(1, 10**3), rng.randint(1, 10**3))
        fd = (exponent_at(c, x + h) - exponent_at(c, x - h)) / (2 * h)
        assert fd == 2 * c.u * x + c.v
    for c in grid:
        assert verify_rolle(c, Fraction(1, 2), samples=5).holds


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "quadexp", *args], capture_output=True, check=True)
    return proc.stdout


@pytest.mark.criterion(11, "emit-figure1/emit-figure2 byte-identical across runs")
def test_criterion_11_determinism():
    fig1 = ("--k-max", "2", "--m-max", "6", "--u-max", "4", "emit-figure1", "--grid")
    fig2 = ("emit-figure2", "--combo", "1,4,2", "--combo", "1,2,2", "--combo", "1,3,2", "--combo", "3,10,8")
    for args in (fig1, fig2):
        first, second = _cli(*args), _cli(*args)
        assert first == second and first
