"""Command-line front end: CSV curve data, figure presets, single-point
evaluation and the verification suite.

Exit codes: 0 success, 1 invalid parameters or I/O failure, 2 at least
one grid point failed to converge (rows are still written).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import oracle_suite
from .mie import SphereMedium
from .rates import (
    PARALLEL,
    PERPENDICULAR,
    SeriesResult,
    decay_correction_far,
    decay_correction_near,
    decay_correction_series,
)

CSV_HEADER = "zeta_a,f,f_asym_far,f_asym_near,terms_used,tail_estimate,converged"

_ORIENTATIONS = {"perp": PERPENDICULAR, "par": PARALLEL}

# Figure presets: (q, epsilon, orientation).  The distance axis defaults
# to [q + 0.05, 12] with 400 points (the presets' sources do not pin a
# numeric range; this window shows both the contact and far regimes).
_FIGURES = {
    1: (0.5, 1.5 + 0.0j, "perp"),
    2: (0.0, 1.5 + 0.5j, "perp"),
    3: (0.5, 1.5 + 0.5j, "perp"),
    4: (0.5, 1.5 + 0.5j, "par"),
}
_PRESET_POINTS = 400
_PRESET_ZETA_MAX = 12.0


@dataclass(frozen=True)
class CurveSpec:
    """One unit of CLI work: medium, orientation, grid and tolerances."""

    medium: SphereMedium
    orientation: str
    zeta_min: float
    zeta_max: float
    points: int
    grid: str = "linear"
    tol: float = 1e-8
    lmax_cap: int = 200
    include_asymptotes: bool = False

    def validate(self) -> None:
        if self.orientation not in _ORIENTATIONS.values():
            raise ValueError(f"orientation must be perp|par, got {self.orientation!r}")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.grid not in ("linear", "log"):
            raise ValueError(f"grid must be linear|log, got {self.grid!r}")
        if not self.zeta_max > self.zeta_min:
            raise ValueError("zeta-max must exceed zeta-min")
        if self.medium.q > 0:
            if not self.zeta_min > self.medium.q:
                raise ValueError(
                    f"zeta-min must exceed q={self.medium.q} on the series path"
                )
        elif not self.zeta_min > 0:
            raise ValueError("zeta-min must be > 0 in the point-scatterer limit")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.lmax_cap < 4:
            raise ValueError(f"lmax-cap must be >= 4, got {self.lmax_cap}")

    def zeta_grid(self) -> np.ndarray:
        if self.grid == "log":
            return np.geomspace(self.zeta_min, self.zeta_max, self.points)
        return np.linspace(self.zeta_min, self.zeta_max, self.points)


def _near_strength(medium: SphereMedium) -> float:
    """Strength of the contact divergence; zero means the near-asymptote
    column is inapplicable (lossless media stay finite at contact)."""
    if medium.q == 0:
        return ((medium.epsilon - 1) / (medium.epsilon + 2)).imag
    return ((medium.epsilon - 1) / (medium.epsilon + 1)).imag


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _thread_count() -> int:
    raw = os.environ.get("EMRATE_THREADS", "0").strip()
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"EMRATE_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"EMRATE_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


def _evaluate_curve(spec: CurveSpec) -> tuple[list[str], bool]:
    """CSV rows in grid order plus an all-converged flag."""
    grid = spec.zeta_grid()
    near_ok = spec.include_asymptotes and _near_strength(spec.medium) != 0.0

    def one(zeta: float) -> tuple[SeriesResult, float | None, float | None]:
        res = decay_correction_series(
            zeta, spec.medium, spec.orientation, tol=spec.tol, lmax_cap=spec.lmax_cap
        )
        far = (
            decay_correction_far(zeta, spec.medium, spec.orientation)
            if spec.include_asymptotes
            else None
        )
        near = (
            decay_correction_near(zeta, spec.medium, spec.orientation)
            if near_ok
            else None
        )
        return res, far, near

    workers = min(_thread_count(), len(grid))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, (float(z) for z in grid)))
    else:
        results = [one(float(z)) for z in grid]

    rows = []
    all_converged = True
    for zeta, (res, far, near) in zip(grid, results):
        all_converged &= res.converged
        rows.append(
            ",".join(
                (
                    _fmt(float(zeta)),
                    _fmt(res.f),
                    _fmt(far) if far is not None else "",
                    _fmt(near) if near is not None else "",
                    str(res.terms_used),
                    _fmt(res.tail_estimate),
                    "true" if res.converged else "false",
                )
            )
        )
    return rows, all_converged


def cmd_curve(spec: CurveSpec, out_path: str) -> int:
    """Write one CSV curve; exit 0, or 2 on partial convergence."""
    spec.validate()
    rows, all_converged = _evaluate_curve(spec)
    text = "\n".join([CSV_HEADER, *rows]) + "\n"
    try:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return 1
    return 0 if all_converged else 2


def cmd_figure(fig_id: int, out_path: str) -> int:
    """Run the preset curve for one of the four reference figures."""
    if fig_id not in _FIGURES:
        print(f"error: figure id must be one of {sorted(_FIGURES)}", file=sys.stderr)
        return 1
    q, eps, orientation = _FIGURES[fig_id]
    spec = CurveSpec(
        medium=SphereMedium(q=q, epsilon=eps),
        orientation=orientation,
        zeta_min=q + 0.05,
        zeta_max=_PRESET_ZETA_MAX,
        points=_PRESET_POINTS,
        include_asymptotes=True,
    )
    return cmd_curve(spec, out_path)


def cmd_eval(
    q: float,
    eps_re: float,
    eps_im: float,
    zeta_a: float,
    orientation: str,
    tol: float,
    lmax_cap: int,
) -> int:
    """Evaluate one point; prints a single machine-readable line."""
    medium = SphereMedium(q=q, epsilon=complex(eps_re, eps_im))
    res = decay_correction_series(zeta_a, medium, orientation, tol=tol, lmax_cap=lmax_cap)
    conv = "true" if res.converged else "false"
    print(f"f={res.f:.12e} terms={res.terms_used} tail={res.tail_estimate:.3e} converged={conv}")
    return 0


def cmd_verify(suite: str, json_out: str | None, tol_overrides: dict[str, float]) -> int:
    """Run the verification suite; exit 0 iff every check passed."""
    reports = oracle_suite.run_suite(suite, tol_overrides)
    width = max(len(r.check_id) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(
            f"{r.check_id:<{width}}  {status}  max_rel_err={r.max_rel_err:.3e}  "
            f"tolerance={r.tolerance:.3e}  samples={r.samples}"
        )
    if json_out:
        payload = [
            {
                "check_id": r.check_id,
                "max_rel_err": r.max_rel_err,
                "tolerance": r.tolerance,
                "passed": r.passed,
                "samples": r.samples,
            }
            for r in reports
        ]
        with open(json_out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0 if all(r.passed for r in reports) else 1


class _Parser(argparse.ArgumentParser):
    # spec'd exit codes: invalid arguments exit 1 (argparse default is 2,
    # which is reserved for partial convergence)
    def error(self, message: str):  # noqa: D102
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_medium_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=float, required=True, help="sphere size parameter k*a (0 = point limit)")
    p.add_argument("--eps-re", type=float, required=True, help="Re(epsilon)")
    p.add_argument("--eps-im", type=float, default=0.0, help="Im(epsilon) >= 0")
    p.add_argument("--orientation", choices=("perp", "par"), required=True)
    p.add_argument("--tol", type=float, default=1e-8, help="series truncation tolerance")
    p.add_argument("--lmax-cap", type=int, default=200, help="hard multipole order cap")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="emrate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_curve = sub.add_parser("curve", help="write a CSV correction curve")
    _add_medium_args(p_curve)
    p_curve.add_argument("--zeta-min", type=float, required=True)
    p_curve.add_argument("--zeta-max", type=float, required=True)
    p_curve.add_argument("--points", type=int, default=200)
    p_curve.add_argument("--grid", choices=("linear", "log"), default="linear")
    p_curve.add_argument("--include-asymptotes", action="store_true")
    p_curve.add_argument("--out", required=True, help="output CSV path")

    p_fig = sub.add_parser("figure", help="write a preset curve (1-4)")
    p_fig.add_argument("id", type=int, choices=(1, 2, 3, 4))
    p_fig.add_argument("--out", required=True, help="output CSV path")

    p_eval = sub.add_parser("eval", help="evaluate a single point")
    _add_medium_args(p_eval)
    p_eval.add_argument("--zeta-a", type=float, required=True)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--suite", default="all", help="integrals|rates|asymptotics|all")
    p_verify.add_argument("--json-out", default=None, help="optional JSON report path")
    p_verify.add_argument(
        "--tol-override",
        action="append",
        default=[],
        metavar="CHECK=TOL",
        help="override one check tolerance (repeatable)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "curve":
            spec = CurveSpec(
                medium=SphereMedium(q=args.q, epsilon=complex(args.eps_re, args.eps_im)),
                orientation=args.orientation,
                zeta_min=args.zeta_min,
                zeta_max=args.zeta_max,
                points=args.points,
                grid=args.grid,
                tol=args.tol,
                lmax_cap=args.lmax_cap,
                include_asymptotes=args.include_asymptotes,
            )
            return cmd_curve(spec, args.out)
        if args.command == "figure":
            return cmd_figure(args.id, args.out)
        if args.command == "eval":
            return cmd_eval(
                args.q, args.eps_re, args.eps_im, args.zeta_a,
                args.orientation, args.tol, args.lmax_cap,
            )
        if args.command == "verify":
            overrides = {}
            for item in args.tol_override:
                key, _, val = item.partition("=")
                if not val:
                    print(f"error: bad --tol-override {item!r}", file=sys.stderr)
                    return 1
                overrides[key] = float(val)
            return cmd_verify(args.suite, args.json_out, overrides)
    except (ValueError, OverflowError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
