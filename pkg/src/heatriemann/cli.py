"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 numerical failure, 3 invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import construct, fvsim
from .construct import SolutionType
from .errors import HeatRiemannError, InputError, InvariantError, NumericalError
from .gas import PrimitiveState, mach
from .heating import HeatingContext, k_max, m_star, m_star_star
from .gas import IdealGas

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_INVARIANT = 0, 1, 2, 3

TABLE1 = [
    # name, rho, u, p, k, expected type, output time
    ("Test1", 1.0, 0.8, 1.0, 0.2, SolutionType.TYPE1, 4.5),
    ("Test2", 1.0, 1.2, 1.0, 0.2, SolutionType.TYPE1, 4.5),
    ("Test3", 1.0, 1.8, 1.0, 0.2, SolutionType.TYPE2, 4.5),
    ("Test4", 1.0, 2.8, 1.0, 0.2, SolutionType.TYPE3, 2.5),
    ("Test5", 1.0, 2.8, 1.0, 2.0, SolutionType.TYPE2, 2.5),
]
TABLE1_GAMMA = 1.4


def fmt(v: float) -> str:
    """Round-trippable decimal; infinities as ``inf``."""
    if v is None:
        return ""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def short(v: Optional[float]) -> str:
    return "unbounded" if v is None else f"{v:.6g}"


@dataclass(frozen=True)
class ProblemSpec:
    rho: float
    u: float
    p: float
    gamma: float
    k: float

    def build(self) -> tuple[PrimitiveState, HeatingContext]:
        if not self.u > 0.0:
            raise InputError("ambient velocity must be positive")
        return PrimitiveState(self.rho, self.u, self.p), HeatingContext(self.gamma, self.k)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def read_config(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _problem_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("problem")
    g.add_argument("--rho", type=float, default=1.0, help="ambient density")
    g.add_argument("--u", type=float, default=None, help="ambient velocity (> 0)")
    g.add_argument("--p", type=float, default=1.0, help="ambient pressure")
    g.add_argument("--gamma", type=float, default=1.4)
    g.add_argument("--k", type=float, default=None, help="heating parameter")


def _spec(args) -> ProblemSpec:
    if args.u is None or args.k is None:
        raise InputError("--u and --k are required (flags or config file)")
    return ProblemSpec(args.rho, args.u, args.p, args.gamma, args.k)


# --- commands -------------------------------------------------------------------


def cmd_classify(args, out) -> int:
    u1, ctx = _spec(args).build()
    info = construct.classify_detail(u1, ctx)
    try:
        root = f"{construct.y_root(ctx):.6g}"
    except NumericalError as exc:
        root = f"unavailable ({exc})"
    y = "n/a (M1 <= M*)" if info.y is None else f"{info.y:.6g}"
    print(f"M1 = {info.m1:.6g}", file=out)
    print(f"M* = {info.m_star:.6g}", file=out)
    print(f"M** = {short(info.m_star_star)}", file=out)
    print(f"Y(M1) = {y}", file=out)
    print(f"y_root = {root}", file=out)
    print(f"type = {info.kind}", file=out)
    return EXIT_OK


def write_solution(fan: construct.WaveFan, out) -> None:
    gas = fan.gas
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["region", "rho", "u", "p", "M"])
    for label, s in fan.regions().items():
        w.writerow([label, fmt(s.rho), fmt(s.u), fmt(s.p), fmt(mach(s, gas))])
    out.write("\n")
    w.writerow(["wave", "speed"])
    for name, v in fan.wave_speeds().items():
        w.writerow([name, "" if v is None else fmt(v)])
    out.write("\n")
    w.writerow(["key", "value"])
    w.writerow(["type", str(fan.kind)])
    w.writerow(["gamma", fmt(fan.ctx.gamma)])
    w.writerow(["k", fmt(fan.ctx.k)])
    w.writerow(["heat_flux", fmt(fan.heat_flux)])


def read_solution(text: str) -> construct.WaveFan:
    """Rebuild a fan from :func:`write_solution` output."""
    blocks = [b for b in text.strip().split("\n\n")]
    rows = [list(csv.reader(io.StringIO(b))) for b in blocks]
    states = {int(r[0]): PrimitiveState(float(r[1]), float(r[2]), float(r[3])) for r in rows[0][1:]}
    speeds = {r[0]: (float(r[1]) if r[1] else None) for r in rows[1][1:]}
    meta = {r[0]: r[1] for r in rows[2][1:]}
    kind = SolutionType.parse(meta["type"])
    ctx = HeatingContext(float(meta["gamma"]), float(meta["k"]))
    return construct.WaveFan(
        kind=kind,
        ctx=ctx,
        u1=states[1],
        u4=None if kind is SolutionType.TYPE3 else states[4],
        u5=states[5],
        u6=states[6],
        u7=states[7],
        s_left=speeds["s_left"],
        raref_head=speeds["raref_head"],
        raref_tail=speeds["raref_tail"],
        contact_speed=speeds["contact"],
        s_right=speeds["s_right"],
    )


def cmd_solve(args, out) -> int:
    u1, ctx = _spec(args).build()
    write_solution(construct.solve(u1, ctx, check=True), out)
    return EXIT_OK


def cmd_sample(args, out) -> int:
    u1, ctx = _spec(args).build()
    if not args.t > 0.0:
        raise InputError("t must be positive")
    if args.n_points < 2:
        raise InputError("n-points must be at least 2")
    fan = construct.solve(u1, ctx)
    reach = 1.1 * fan.max_speed() * args.t
    lo = -reach if args.x_min is None else args.x_min
    hi = reach if args.x_max is None else args.x_max
    x = np.linspace(lo, hi, args.n_points)
    rho, u, p = construct.sample_array(fan, x, args.t)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x", "rho", "u", "p"])
    for row in zip(x, rho, u, p):
        w.writerow([fmt(v) for v in row])
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    u1, ctx = _spec(args).build()
    fan = construct.solve(u1, ctx)
    cfg = fvsim.SimConfig(
        u1=u1,
        ctx=ctx,
        t_end=args.t_end,
        n_cells=args.n_cells,
        domain_half_width=args.half_width,
        cfl=args.cfl,
        order=args.order,
        limiter=args.limiter,
    )
    snap = fvsim.run(cfg, fan)
    report = fvsim.compare_to_exact(snap, fan, args.exclusion)
    if args.output:
        snap.to_csv(args.output)
        report_out = out
    else:
        snap.to_csv(out)
        report_out = sys.stderr
    print(f"# {fan.kind} t={snap.t:.6g} n_cells={cfg.n_cells} order={cfg.order} steps={snap.steps}", file=report_out)
    for line in report.lines():
        print(line, file=report_out)
    return EXIT_OK


def scan_rows(gammas, ks):
    """Rows ``(gamma, k, m_star, m_star_star, y_root, T)``; failures become strings."""
    for g in gammas:
        for k in ks:
            ctx = HeatingContext(float(g), float(k))
            ms, mss = m_star(ctx), m_star_star(ctx)
            try:
                root = construct.y_root(ctx)
            except HeatRiemannError as exc:
                yield (g, k, ms, mss, f"error:{type(exc).__name__}", f"error:{type(exc).__name__}")
                continue
            t = math.inf if mss is None else mss - root
            yield (g, k, ms, mss, root, t)


def cmd_scan(args, out) -> int:
    if not args.k_min > 0.0:
        raise InputError("k-min must be positive")
    gammas = np.linspace(args.gamma_min, args.gamma_max, args.n_gamma)
    ks = np.linspace(args.k_min, args.k_max, args.n_k)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["gamma", "k", "m_star", "m_star_star", "y_root", "T"])
    for row in scan_rows(gammas, ks):
        w.writerow([v if isinstance(v, str) else fmt(math.inf if v is None else v) for v in row])
    return EXIT_OK


def cmd_kmax(args, out) -> int:
    gas = IdealGas(args.gamma)
    if not (0.0 < args.m_min < args.m_max):
        raise InputError("need 0 < m-min < m-max")
    if args.spacing == "log":
        ms = np.geomspace(args.m_min, args.m_max, args.n)
    else:
        ms = np.linspace(args.m_min, args.m_max, args.n)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["M", "k_max"])
    for m in ms:
        w.writerow([fmt(m), fmt(k_max(float(m), gas))])
    return EXIT_OK


def cmd_table1(args, out) -> int:
    expected = [row[5] for row in TABLE1]
    if args.expected:
        expected = [SolutionType.parse(s) for s in args.expected.split(",")]
        if len(expected) != len(TABLE1):
            raise InputError(f"--expected needs {len(TABLE1)} entries")
    ok = True
    print(f"{'test':6} {'rho':>4} {'u':>4} {'p':>4} {'k':>4} {'M1':>8} {'expected':>9} {'computed':>9}", file=out)
    for (name, rho, u, p, k, _, _), want in zip(TABLE1, expected):
        u1, ctx = PrimitiveState(rho, u, p), HeatingContext(TABLE1_GAMMA, k)
        got = construct.classify(u1, ctx)
        mark = "ok" if got is want else "MISMATCH"
        ok &= got is want
        print(
            f"{name:6} {rho:4.1f} {u:4.1f} {p:4.1f} {k:4.1f} {mach(u1, ctx.gas):8.5f} {str(want):>9} {str(got):>9}  {mark}",
            file=out,
        )
    return EXIT_OK if ok else EXIT_INVARIANT


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heatriemann", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="critical Mach numbers and solution type")
    _problem_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="intermediate states and wave speeds as CSV")
    _problem_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sample", help="exact solution sampled at time t as CSV")
    _problem_args(p)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--n-points", type=int, default=1001)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("simulate", help="finite-volume run plus plateau comparison")
    _problem_args(p)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--n-cells", type=int, default=2001)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--limiter", choices=sorted(fvsim.LIMITERS), default="minmod")
    p.add_argument("--cfl", type=float, default=0.45)
    p.add_argument("--half-width", type=float, default=None)
    p.add_argument("--exclusion", type=int, default=5, help="cells skipped around every wave")
    p.add_argument("--output", help="snapshot CSV path (default: stdout, report on stderr)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan", help="T(gamma, k) = M** - root of Y over a grid")
    p.add_argument("--gamma-min", type=float, default=1.05)
    p.add_argument("--gamma-max", type=float, default=2.9)
    p.add_argument("--k-min", type=float, default=0.05)
    p.add_argument("--k-max", type=float, default=2.0)
    p.add_argument("--n-gamma", type=int, default=20)
    p.add_argument("--n-k", type=int, default=20)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("kmax", help="maximum heating parameter versus upstream Mach")
    p.add_argument("--gamma", type=float, default=1.4)
    p.add_argument("--m-min", type=float, default=0.01)
    p.add_argument("--m-max", type=float, default=100.0)
    p.add_argument("--n", type=int, default=401)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.set_defaults(func=cmd_kmax)

    p = sub.add_parser("table1", help="classify the five reference problems")
    p.add_argument("--expected", help="comma-separated override of the expected types")
    p.set_defaults(func=cmd_table1)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    args = parser.parse_args(argv)
    if known.config:
        values = read_config(known.config)
        explicit = parser.parse_args(argv)
        # re-parse with config values as defaults so flags still win
        sub = parser._subparsers._group_actions[0].choices[args.command]
        typed = {}
        for action in sub._actions:
            if action.dest in values:
                conv = action.type or str
                typed[action.dest] = conv(values[action.dest])
        sub.set_defaults(**typed)
        args = parser.parse_args(argv)
        del explicit
    return args


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
