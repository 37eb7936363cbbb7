"""Command-line interface.

Exit codes: 0 success, 1 domain/precondition error, 2 config error.
Machine output carries exponents as exact "num/den" strings; a real value
is only rendered by ``eval``, at the configured precision.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import mpmath

from . import analysis, family
from .core import ParamCombo, compute_abs_A, derivative_sign_at, exponent_at
from .enclosure import as_rational, decimal_str
from .errors import QuadExpError
from .family import Bounds, fraction_str


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision: int = 30
    solver_tol: float = 1e-12
    bisection_tol: Fraction = Fraction(1, 10**9)
    k_max: int = 4
    m_max: int = 20
    u_max: int = 10
    format: str = "csv"
    output: Optional[str] = None

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ConfigError(f"precision must be >= 1, got {self.precision}")
        if min(self.k_max, self.m_max, self.u_max) < 1:
            raise ConfigError("grid bounds must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.solver_tol <= 0 or self.bisection_tol <= 0:
            raise ConfigError("tolerances must be positive")

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.k_max, self.m_max, self.u_max)


_CONVERTERS = {
    "precision": int,
    "solver_tol": float,
    "bisection_tol": Fraction,
    "k_max": int,
    "m_max": int,
    "u_max": int,
    "format": str,
    "output": str,
}


def _convert(key: str, raw: str):
    if key not in _CONVERTERS:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        return _CONVERTERS[key](raw.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def load_config(path: Optional[str], overrides: dict) -> RunConfig:
    """Read a flat key=value file, then apply flag overrides (flags win)."""
    values: dict = {}
    if path:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, raw = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = _convert(key.replace("-", "_"), raw)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)


def render_value(exponent: Fraction, precision: int) -> str:
    """e**exponent in fixed point with ``precision`` fractional digits.

    Returns a note instead of a number when the value rounds to zero or
    needs more than ``precision`` integer digits.
    """
    # ln(10) < 2.31, so beyond this bound the value is < 10**-precision / 2
    if exponent < -Fraction(231, 100) * (precision + 1):
        return "(value underflows)"
    if exponent > Fraction(231, 100) * precision:
        return "(value overflows)"
    with mpmath.workdps(2 * precision + 20):
        val = mpmath.exp(mpmath.mpf(exponent.numerator) / exponent.denominator)
        scaled = int(mpmath.nint(val * mpmath.mpf(10) ** precision))
    if scaled == 0:
        return "(value underflows)"
    if scaled >= 10 ** (2 * precision):
        return "(value overflows)"
    text = decimal_str(Fraction(scaled, 10**precision), precision)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return f"value={text}"


def _combo(args: argparse.Namespace) -> ParamCombo:
    return ParamCombo(args.k, args.m, args.u, args.N)


def parse_combo(text: str) -> tuple[int, ...]:
    """Parse "k,m,u[,N]"; validation happens later so it exits with code 1."""
    parts = tuple(int(p) for p in text.split(","))
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(f"combo must be k,m,u[,N]: {text!r}")
    return parts


def _combos(args: argparse.Namespace) -> list[ParamCombo]:
    return [ParamCombo(*parts) for parts in args.combo or []]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def figure1_rows(combos: Sequence[ParamCombo]) -> list[list]:
    """Two rows per combo: x = 1 and x = partner, with equal exponents."""
    rows = []
    for p, c in enumerate(combos, 1):
        partner = family.find_partner(c)
        for x in (1, partner):
            rows.append([p, c.k, c.m, c.u, c.N, x, fraction_str(exponent_at(c, x))])
    return rows


FIGURE1_HEADER = ["p", "k", "m", "u", "N", "x", "exponent"]
FIGURE2_HEADER = ["p", "absA", "exponent_at_1"]


def figure2_rows(seq: family.FamilySequence) -> list[list]:
    return [
        [p, a, fraction_str(e)]
        for p, (a, e) in enumerate(zip(seq.abs_A_values, seq.exponents_at_1), 1)
    ]


def _table(header: Sequence[str], rows: list[list], cfg: RunConfig) -> str:
    if cfg.format == "json":
        return _dump([dict(zip(header, r)) for r in rows])
    return _csv(header, rows)


def _grid_combos(cfg: RunConfig) -> list[ParamCombo]:
    return list(family.iter_grid(cfg.bounds))


def cmd_eval(args, cfg: RunConfig) -> str:
    e = exponent_at(_combo(args), as_rational(args.x))
    out = f"exponent={fraction_str(e)}"
    if not args.exact_only:
        out += " " + render_value(e, cfg.precision)
    return out + "\n"


def cmd_invert(args, cfg: RunConfig) -> str:
    combos = family.invert_target(args.n, cfg.k_max, cfg.u_max)
    return _dump({"n": args.n, "bounds": {"k_max": cfg.k_max, "u_max": cfg.u_max},
                  "combos": [c.as_dict() for c in combos]})


def cmd_partner(args, cfg: RunConfig) -> str:
    c = _combo(args)
    n = family.find_partner(c)
    return _dump({"combo": c.as_dict(), "partner": n,
                  "exponent_at_1": fraction_str(exponent_at(c, 1)),
                  "exponent_at_partner": fraction_str(exponent_at(c, n))})


def cmd_midpoint(args, cfg: RunConfig) -> str:
    c = _combo(args)
    mid = analysis.midpoint(c)
    return _dump({"combo": c.as_dict(), "theta": fraction_str(mid.theta),
                  "interval": list(mid.interval),
                  "exponent_at_theta": fraction_str(analysis.midpoint_value_exponent(c)),
                  "derivative_sign": int(derivative_sign_at(c, mid.theta))})


def cmd_delta_chain(args, cfg: RunConfig) -> str:
    c = _combo(args)
    deltas = [as_rational(d) for d in args.delta]
    chain = analysis.delta_chain(c, deltas) if c.u > 0 else analysis.mirrored_chain_g(c, deltas)
    return _dump({
        "combo": c.as_dict(),
        "deltas": [fraction_str(d) for d in chain.deltas],
        "values_left": [fraction_str(v) for v in chain.values_left],
        "values_right": [fraction_str(v) for v in chain.values_right],
        "mirrors_equal": chain.mirrors_equal,
        "direction": chain.direction,
        "monotone": chain.monotone,
        "midpoint_reached": chain.midpoint_reached,
    })


def cmd_distance(args, cfg: RunConfig) -> str:
    c = _combo(args)
    out = {"combo": c.as_dict(), "Z": c.Z, "absA": compute_abs_A(c).value,
           "D": analysis.distance_D(c)}
    if c.Z > 2:
        ld = analysis.log_distance(c.Z, args.terms)
        out["log_distance"] = {
            "terms": args.terms,
            "direct": ld.direct.to_dict(cfg.precision),
            "series": ld.series.to_dict(cfg.precision),
            "overlap": ld.consistent,
        }
    return _dump(out)


def _mp_str(x, digits: int) -> str:
    return mpmath.nstr(x, digits)


def cmd_solve_distance(args, cfg: RunConfig) -> str:
    sol = analysis.solve_distance_equals_value(
        as_rational(args.Z), args.E, tol=cfg.solver_tol, dps=cfg.precision + 20
    )
    d = cfg.precision
    return _dump({
        "Z": fraction_str(sol.Z), "E": sol.E,
        "u_real": _mp_str(sol.u_real, d), "m_real": _mp_str(sol.m_real, d),
        "m_closed_form": _mp_str(sol.m_closed_form, d),
        "relative_gap": _mp_str(sol.relative_gap, 5), "residual": _mp_str(sol.residual, 5),
        "tolerance": cfg.solver_tol, "ok": bool(sol.ok),
        "u_negative": bool(sol.u_negative),
        "u_is_integer": bool(sol.u_is_integer), "m_is_integer": bool(sol.m_is_integer),
    })


def cmd_rolle(args, cfg: RunConfig) -> str:
    rep = analysis.verify_rolle(_combo(args), as_rational(args.h))
    return _dump({"theta": fraction_str(rep.theta), "h": fraction_str(rep.h),
                  "left_ok": rep.left_ok, "zero_at_theta": rep.zero_at_theta,
                  "right_ok": rep.right_ok,
                  "finite_difference_exact": rep.finite_difference_exact,
                  "holds": rep.holds})


def cmd_darboux(args, cfg: RunConfig) -> str:
    w = analysis.verify_darboux(_combo(args), as_rational(args.beta), tol=cfg.bisection_tol)
    return _dump({"side": w.side, "x": fraction_str(w.x),
                  "bracket": [fraction_str(w.lo), fraction_str(w.hi)],
                  "x_decimal": decimal_str(w.x, cfg.precision)})


def run_claims(bounds: Bounds, uniqueness_abs_A_max: int = 5000) -> dict:
    """All grid-level claim checks, in a fixed order."""
    sym_combos = [c for N in (2, 4) for c in family.iter_grid(bounds, N)]
    sym = family.check_symmetry_grid(sym_combos, {**bounds.as_dict(), "N": [2, 4]})
    small = [c for c in family.iter_grid(bounds) if compute_abs_A(c).value <= uniqueness_abs_A_max]
    uniq = family.check_partner_uniqueness(
        small, {**bounds.as_dict(), "N": 2, "absA_max": uniqueness_abs_A_max, "slack": 10}
    )
    constant_u = []
    for u in range(1, bounds.u_max + 1):
        seq = family.constant_u_sequence(u, range(2, bounds.m_max + 1))
        constant_u.append(family.check_monotone_decrease(seq).to_dict())
    varying = family.search_monotone_counterexample(bounds)
    return {
        "grid": bounds.as_dict(),
        "symmetry": sym.to_dict(),
        "partner_uniqueness": uniq.to_dict(),
        "monotone_decrease_constant_u": constant_u,
        "monotone_decrease_varying_u": varying.to_dict(),
        "consecutive_equalities": family.consecutive_equalities(bounds),
    }


def cmd_claims(args, cfg: RunConfig) -> str:
    return _dump(run_claims(cfg.bounds))


def cmd_emit_figure1(args, cfg: RunConfig) -> str:
    combos = _combos(args)
    if args.grid:
        combos += [c for c in _grid_combos(cfg) if not compute_abs_A(c).degenerate]
    return _table(FIGURE1_HEADER, figure1_rows(combos), cfg)


def cmd_emit_figure2(args, cfg: RunConfig) -> str:
    seq = family.build_increasing_sequence(_combos(args))
    return _table(FIGURE2_HEADER, figure2_rows(seq), cfg)


def _add_combo_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--u", type=int, default=2)
    p.add_argument("--N", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadexp",
        description="Exact checks for f(x) = exp(u x^2 + v x), v = (-1)^(Nk-1) m u^(Nk-1).",
    )
    parser.add_argument("--config", help="key=value config file; flags override it")
    parser.add_argument("--precision", type=int)
    parser.add_argument("--solver-tol", type=float)
    parser.add_argument("--bisection-tol", type=Fraction)
    parser.add_argument("--k-max", type=int)
    parser.add_argument("--m-max", type=int)
    parser.add_argument("--u-max", type=int)
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="exponent of f at x, plus optional rendering")
    _add_combo_args(p)
    p.add_argument("--x", default="1")
    p.add_argument("--exact-only", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invert", help="combos with |A| = n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_invert)

    for name, func, text in (
        ("partner", cmd_partner, "the n with f(n) = f(1)"),
        ("midpoint", cmd_midpoint, "vertex of the exponent on [1, |A|]"),
    ):
        p = sub.add_parser(name, help=text)
        _add_combo_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("delta-chain", help="mirror values at 1 + d and |A| - d")
    _add_combo_args(p)
    p.add_argument("--delta", action="append", default=[], help="repeatable, rational")
    p.set_defaults(func=cmd_delta_chain)

    p = sub.add_parser("distance", help="D = |A| - 1 and enclosures of ln(Z - 2)")
    _add_combo_args(p)
    p.add_argument("--terms", type=int, default=50)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("solve-distance", help="real u, m with D = f(|A|)")
    p.add_argument("--Z", required=True)
    p.add_argument("--E", type=int, required=True)
    p.set_defaults(func=cmd_solve_distance)

    p = sub.add_parser("rolle", help="sign pattern and central differences around theta")
    _add_combo_args(p)
    p.add_argument("--h", default="1/8")
    p.set_defaults(func=cmd_rolle)

    p = sub.add_parser("darboux", help="bisection witness for a rational beta")
    _add_combo_args(p)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_darboux)

    p = sub.add_parser("claims", help="grid-level claim reports as JSON")
    p.add_argument("--grid", choices=["default"], default="default")
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("emit-figure1", help="f_p(1) = f_p(partner) rows")
    p.add_argument("--combo", type=parse_combo, action="append", help="k,m,u[,N]; repeatable")
    p.add_argument("--grid", action="store_true", help="add every nondegenerate grid combo")
    p.set_defaults(func=cmd_emit_figure1)

    p = sub.add_parser("emit-figure2", help="|A_p| against f_p(1) exponents")
    p.add_argument("--combo", type=parse_combo, action="append", help="k,m,u[,N]; repeatable")
    p.set_defaults(func=cmd_emit_figure2)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    overrides = {
        f.name: getattr(args, f.name, None) for f in fields(RunConfig)
    }
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        text = args.func(args, cfg)
    except (QuadExpError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
