"""Command-line front end.

Subcommands::

    catenoid curve        generating curve samples (csv / json / svg)
    catenoid period       support-function period table for one a or a sweep
    catenoid verify       JSON report of the Simons-equation and conservation checks
    catenoid find-closed  values of a whose generating curve closes up

Exit codes: 0 success, 2 usage error, 3 domain or numerical error,
4 tolerance violation (verify only).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__, otsuki, profile, simons
from .errors import CatenoidError
from .spaceform import CliffordSpec, SpaceForm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_TOLERANCE = 4

SCHEMA = 1


class UsageError(Exception):
    pass


def fmt(v) -> str:
    """Fixed 9-significant-digit rendering used for every number written out."""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.9g}"


def _json_num(v):
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if not math.isfinite(v):
        return fmt(v)
    return float(fmt(v))


def _json_clean(obj):
    if isinstance(obj, dict):
        return {k: _json_clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_clean(v) for v in obj]
    if isinstance(obj, str) or obj is None:
        return obj
    return _json_num(obj)


def dump_json(obj) -> str:
    return json.dumps(_json_clean(obj), indent=2) + "\n"


@dataclass
class RunConfig:
    command: str
    c: float
    n: int
    a: float | None = None
    a_min: float | None = None
    a_max: float | None = None
    a_steps: int | None = None
    grid: int | None = None
    tol: float | None = None
    fmt: str = "csv"
    out: str | None = None
    plot: str | None = None
    seed: int = 0
    extra: dict = field(default_factory=dict)


@dataclass
class CurveArtifact:
    """Ordered point table with a metadata block."""

    columns: list[str]
    points: list[tuple[float, ...]]
    metadata: dict

    def column(self, i):
        return [p[i] for p in self.points]

    def to_csv(self) -> str:
        lines = [f"# schema={SCHEMA}"]
        lines += [f"# {k}={_meta_text(v)}" for k, v in self.metadata.items()]
        lines.append(",".join(self.columns))
        lines += [",".join(fmt(v) for v in p) for p in self.points]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return dump_json(
            {"schema": SCHEMA, "metadata": self.metadata, "columns": self.columns, "points": self.points}
        )


def _meta_text(v):
    if isinstance(v, str):
        return v
    if v is None:
        return ""
    return fmt(v)


def _table_csv(columns, rows, metadata) -> str:
    lines = [f"# schema={SCHEMA}"]
    lines += [f"# {k}={_meta_text(v)}" for k, v in metadata.items()]
    lines.append(",".join(columns))
    for r in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in (r[c] for c in columns)))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


# -- curve -------------------------------------------------------------------


def cmd_curve(cfg: RunConfig) -> CurveArtifact:
    """Sample the generating curve.

    For ``c <= 0`` both branches of the graph ``x(y)`` are emitted, mirrored
    through the neck; ``param`` is the signed offset ``y - a``. For ``c > 0``
    the support-function curve is traced over whole periods until it closes
    (``param`` is theta), scaled to the sphere of curvature ``c``.
    """
    if cfg.a is None:
        raise UsageError("curve needs --a")
    sf = SpaceForm(cfg.c, cfg.n)
    grid = cfg.grid or 201
    meta = {"command": "curve", "c": cfg.c, "n": cfg.n, "a": cfg.a}
    if cfg.c <= 0:
        y_max = cfg.extra.get("y_max") or cfg.a + 5.0
        y, x = profile.generating_curve(sf, cfg.a, y_max, num=grid)
        offset = y - cfg.a
        pts = [(0.0 - o, 0.0 - xi, yi) for o, xi, yi in zip(offset[::-1], x[::-1], y[::-1])]
        pts += [(o, xi, yi) for o, xi, yi in zip(offset[1:], x[1:], y[1:])]
        meta.update({"y_max": y_max, "grid": grid, "version": __version__})
        return CurveArtifact(["param", "x", "y"], pts, meta)

    per = otsuki.period(cfg.n, cfg.a)
    frac = otsuki.closure_fraction(per.T, max_q=cfg.extra.get("max_q", 50))
    periods = frac.denominator if frac is not None else 1
    traj = otsuki.integrate_support(cfg.n, cfg.a, periods * per.T, num=grid * periods + 1)
    xs, ys = traj.disk_coords()
    scale = 1.0 / math.sqrt(cfg.c)
    xs, ys = xs * scale, ys * scale
    gap = math.hypot(xs[-1] - xs[0], ys[-1] - ys[0])
    meta.update(
        {
            "T": per.T,
            "T_over_pi": per.T / math.pi,
            "closure": f"{frac.numerator}/{frac.denominator}" if frac is not None else "none",
            "periods": periods,
            "closure_gap": gap,
            "grid": grid,
            "version": __version__,
        }
    )
    pts = list(zip(traj.theta.tolist(), xs.tolist(), ys.tolist()))
    return CurveArtifact(["param", "x", "y"], pts, meta)


# -- period ------------------------------------------------------------------

PERIOD_COLUMNS = ["a", "a1", "C", "T", "T_over_pi", "error"]


def _a_values(cfg: RunConfig) -> list[float]:
    if cfg.a is not None:
        return [cfg.a]
    if cfg.a_min is None or cfg.a_max is None or not cfg.a_steps:
        raise UsageError("give --a or all of --a-min, --a-max, --a-steps")
    if cfg.a_steps < 1:
        raise UsageError("--a-steps must be positive")
    return np.linspace(cfg.a_min, cfg.a_max, cfg.a_steps).tolist()


def period_row(n: int, a: float) -> dict:
    try:
        res = otsuki.period(n, a)
        return {
            "a": a,
            "a1": res.a1,
            "C": otsuki.capital_C(n, a),
            "T": res.T,
            "T_over_pi": res.T / math.pi,
            "error": "",
        }
    except CatenoidError as exc:
        return {"a": a, "a1": "", "C": "", "T": "", "T_over_pi": "", "error": str(exc).replace(",", ";")}


def cmd_period(cfg: RunConfig) -> list[dict]:
    if cfg.c <= 0:
        raise UsageError("period needs --c > 0")
    SpaceForm(cfg.c, cfg.n)
    return [period_row(cfg.n, a) for a in _a_values(cfg)]


# -- verify ------------------------------------------------------------------

DEFAULT_TOLERANCES = {
    "simons_residual_analytic": 1e-10,
    "simons_fd_order_min": 1.9,
    "first_integral_drift": 1e-8,
    "minimality_trace_error": 1e-10,
    "norm_sq_consistency": 1e-10,
    "identity_check_error": 1e-10,
    "clifford_norm_sq_error": 1e-12,
}


def _catenoid_metrics(cfg: RunConfig) -> dict:
    sf = SpaceForm(cfg.c, cfg.n)
    a = cfg.a
    s_max = cfg.extra.get("s_max", 1.0)
    grid = cfg.grid or 201
    prof = profile.integrate_profile(sf, a, s_max, num=grid)
    eps = cfg.extra.get("perturb_dx", 0.0)
    if eps:
        prof.dx1 = prof.dx1 + eps

    analytic = np.max(np.abs(simons.simons_residual(sf, a, prof, "analytic")))
    fd = []
    for num in (grid, 2 * grid - 1):
        p = profile.integrate_profile(sf, a, s_max, num=num)
        fd.append(float(np.nanmax(np.abs(simons.simons_residual(sf, a, p, "fd")))))
    trace = 0.0
    norm = 0.0
    for pt in prof:
        pc = simons.principal_curvatures(sf, pt)
        trace = max(trace, abs(pc.trace) / abs(pc.mu))
        ref = float(simons.sff_norm_sq(sf, a, pt.x1))
        norm = max(norm, abs(pc.norm_sq - ref) / ref)
    return {
        "simons_residual_analytic": analytic,
        "simons_residual_fd": fd[1],
        "simons_fd_order": math.log2(fd[0] / fd[1]),
        "first_integral_drift": float(np.max(np.abs(prof.first_integral_residual()))),
        "minimality_trace_error": trace,
        "norm_sq_consistency": norm,
    }


def cmd_verify(cfg: RunConfig) -> dict:
    """Run every check and collect a report; ``report["failed"]`` names violations."""
    if cfg.n < 3:
        raise UsageError("verify needs --n >= 3")
    tols = dict(DEFAULT_TOLERANCES)
    if cfg.tol is not None:
        for key in ("simons_residual_analytic", "minimality_trace_error", "norm_sq_consistency", "identity_check_error"):
            tols[key] = cfg.tol

    metrics = dict.fromkeys(
        [
            "simons_residual_analytic",
            "simons_residual_fd",
            "simons_fd_order",
            "first_integral_drift",
            "minimality_trace_error",
            "norm_sq_consistency",
            "identity_check_error",
            "clifford_norm_sq",
            "clifford_norm_sq_error",
            "clifford_simons_residual",
        ]
    )
    if cfg.a is not None:
        metrics.update(_catenoid_metrics(cfg))

    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.extra.get("trials", 200)):
        lhs, rhs = simons.identity_check(simons.random_admissible(cfg.n, rng))
        worst = max(worst, abs(lhs - rhs) / lhs)
    metrics["identity_check_error"] = worst

    if cfg.c > 0:
        spec = CliffordSpec(cfg.extra.get("m", 1), cfg.n, cfg.c)
        sff = simons.clifford_sff(spec)
        metrics["clifford_norm_sq"] = sff.norm_sq
        metrics["clifford_norm_sq_error"] = abs(sff.norm_sq - cfg.n * cfg.c) / (cfg.n * cfg.c)
        metrics["clifford_simons_residual"] = simons.clifford_simons_residual(spec)

    failed = []
    for key, tol in tols.items():
        if key == "simons_fd_order_min":
            val = metrics["simons_fd_order"]
            if val is not None and not val >= tol:
                failed.append("simons_fd_order")
            continue
        val = metrics[key]
        if val is not None and not val <= tol:
            failed.append(key)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "config": {
            "c": cfg.c,
            "n": cfg.n,
            "a": cfg.a,
            "s_max": cfg.extra.get("s_max", 1.0),
            "grid": cfg.grid or 201,
            "seed": cfg.seed,
            "trials": cfg.extra.get("trials", 200),
            "m": cfg.extra.get("m", 1) if cfg.c > 0 else None,
            "perturb_dx": cfg.extra.get("perturb_dx", 0.0),
        },
        "metrics": metrics,
        "tolerances": tols,
        "failed": failed,
        "passed": not failed,
    }


# -- find-closed -------------------------------------------------------------

CLOSED_COLUMNS = ["a", "T", "T_over_pi", "T_target", "T_error"]


def cmd_find_closed(cfg: RunConfig) -> list[dict]:
    p, q = cfg.extra["p"], cfg.extra["q"]
    if q <= 0 or p <= 0:
        raise UsageError("--p and --q must be positive")
    frac = Fraction(p, q)
    if not Fraction(1, 2) < frac < 1:
        raise UsageError(f"target 2*pi*{p}/{q} lies outside (pi, 2*pi): need 1/2 < p/q < 1")
    target = 2.0 * math.pi * float(frac)
    hits = otsuki.find_closed(cfg.n, frac.numerator, frac.denominator, grid=cfg.grid or otsuki.DEFAULT_GRID)
    rows = []
    for a in hits:
        T = otsuki.period(cfg.n, a).T
        rows.append({"a": a, "T": T, "T_over_pi": T / math.pi, "T_target": target, "T_error": T - target})
    return rows


# -- argument parsing --------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", type=float, default=None, help="sectional curvature of the space form")
    common.add_argument("--n", type=int, default=3, help="hypersurface dimension (default 3)")
    common.add_argument("--a", type=float, default=None, help="neck / initial value parameter")
    common.add_argument("--tol", type=float, default=None, help="tolerance override")
    common.add_argument("--grid", type=int, default=None, help="grid resolution")
    common.add_argument("--format", dest="fmt", choices=["csv", "svg", "json"], default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--plot", default=None, help="also render a figure to this path (.svg/.png/.pdf)")
    common.add_argument("--seed", type=int, default=0, help="seed for random identity trials")

    parser = argparse.ArgumentParser(prog="catenoid", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", parents=[common], help="sample a generating curve")
    p.add_argument("--y-max", type=float, default=None, help="largest distance to the axis (c <= 0)")
    p.add_argument("--max-q", type=int, default=50, help="largest closure denominator tried (c > 0)")

    p = sub.add_parser("period", parents=[common], help="period T(a) of the support function")
    p.add_argument("--a-min", type=float, default=None)
    p.add_argument("--a-max", type=float, default=None)
    p.add_argument("--a-steps", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="Simons equation and conservation checks")
    p.add_argument("--s-max", type=float, default=1.0, help="arclength range of the profile")
    p.add_argument("--m", type=int, default=1, help="Clifford factor dimension (c > 0)")
    p.add_argument("--trials", type=int, default=200, help="random identity trials")
    p.add_argument("--perturb-dx", type=float, default=0.0, help="add this to every x1' sample")

    p = sub.add_parser("find-closed", parents=[common], help="a values with T(a) = 2 pi p/q")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    return parser


def _config(args) -> RunConfig:
    c = args.c
    if c is None:
        c = 1.0 if args.command in ("period", "find-closed") else None
    if c is None:
        raise UsageError(f"{args.command} needs --c")
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    if args.grid is not None and args.grid < 3:
        raise UsageError("--grid must be at least 3")
    default_fmt = "json" if args.command == "verify" else "csv"
    cfg = RunConfig(
        command=args.command,
        c=c,
        n=args.n,
        a=args.a,
        grid=args.grid,
        tol=args.tol,
        fmt=args.fmt or default_fmt,
        out=args.out,
        plot=args.plot,
        seed=args.seed,
    )
    if args.command == "curve":
        cfg.extra = {"y_max": args.y_max, "max_q": args.max_q}
    elif args.command == "period":
        cfg.a_min, cfg.a_max, cfg.a_steps = args.a_min, args.a_max, args.a_steps
    elif args.command == "verify":
        if cfg.a is None and c <= 0:
            cfg.a = 1.0
        cfg.extra = {"s_max": args.s_max, "m": args.m, "trials": args.trials, "perturb_dx": args.perturb_dx}
    elif args.command == "find-closed":
        cfg.extra = {"p": args.p, "q": args.q}
    return cfg


def _run(cfg: RunConfig) -> int:
    from . import plotting

    if cfg.command == "curve":
        art = cmd_curve(cfg)
        if cfg.fmt == "svg":
            _emit(plotting.figure_svg_text(plotting.curve_figure(art)), cfg.out)
        else:
            _emit(art.to_json() if cfg.fmt == "json" else art.to_csv(), cfg.out)
        if cfg.plot:
            plotting.write_figure(plotting.curve_figure(art), cfg.plot)
        return EXIT_OK

    if cfg.command == "period":
        rows = cmd_period(cfg)
        meta = {"command": "period", "c": cfg.c, "n": cfg.n, "version": __version__}
        if cfg.fmt == "svg":
            _emit(plotting.figure_svg_text(plotting.period_figure(rows, cfg.n)), cfg.out)
        elif cfg.fmt == "json":
            _emit(dump_json({"schema": SCHEMA, "metadata": meta, "rows": rows}), cfg.out)
        else:
            _emit(_table_csv(PERIOD_COLUMNS, rows, meta), cfg.out)
        if cfg.plot:
            plotting.write_figure(plotting.period_figure(rows, cfg.n), cfg.plot)
        if len(rows) == 1 and rows[0]["error"]:
            print(f"error: {rows[0]['error']}", file=sys.stderr)
            return EXIT_DOMAIN
        return EXIT_OK

    if cfg.command == "verify":
        if cfg.fmt != "json":
            raise UsageError("verify writes a JSON report; use --format json")
        report = cmd_verify(cfg)
        _emit(dump_json(report), cfg.out)
        if report["failed"]:
            for key in report["failed"]:
                print(f"tolerance violated: {key}", file=sys.stderr)
            return EXIT_TOLERANCE
        return EXIT_OK

    if cfg.command == "find-closed":
        if cfg.fmt == "svg":
            raise UsageError("find-closed writes csv or json")
        rows = cmd_find_closed(cfg)
        meta = {
            "command": "find-closed",
            "c": cfg.c,
            "n": cfg.n,
            "p": cfg.extra["p"],
            "q": cfg.extra["q"],
            "version": __version__,
        }
        if cfg.fmt == "json":
            _emit(dump_json({"schema": SCHEMA, "metadata": meta, "rows": rows}), cfg.out)
        else:
            _emit(_table_csv(CLOSED_COLUMNS, rows, meta), cfg.out)
        return EXIT_OK
    raise UsageError(f"unknown command {cfg.command}")


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return _run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"catenoid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CatenoidError as exc:
        print(f"catenoid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
