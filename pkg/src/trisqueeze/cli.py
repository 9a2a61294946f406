"""Command-line front end.

Subcommands::

    trisqueeze state        analytic squeezed vacuum as JSON (--verify adds fidelity)
    trisqueeze variance     quadrature variances (closed form)
    trisqueeze uncertainty  product of standard deviations
    trisqueeze wigner       closed-form Wigner function on a sweep
    trisqueeze fig1         variances vs mu for nu in {0, 0.5}
    trisqueeze fig2         uncertainty product vs r for five angles
    trisqueeze selfcheck    run the cross-backend acceptance checks

Exit codes: 0 success, 2 invalid arguments, 3 truncation/precision failure,
4 selfcheck failure.
"""

import argparse
import io
import json
import math
import sys

from . import checks, figures
from .errors import InvalidArgumentError, PrecisionError, ResourceError, TruncationError
from .fockspace import (
    FockCutoff,
    apply_s3_numeric,
    auto_cutoff,
    fidelity,
    squeezed_vacuum_analytic,
    vacuum,
)
from .genmat import build_generator
from .squeezing import uncertainty_product, variance_closed_form
from .wigner import AXES, parse_axis, wigner_grid

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_TRUNCATION = 3
EXIT_SELFCHECK = 4

COMMANDS = ("state", "variance", "uncertainty", "wigner", "fig1", "fig2", "selfcheck")


def fmt(x):
    return format(float(x), ".17g")


def write_csv(stream, header, rows):
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")


def write_json(stream, payload):
    stream.write(json.dumps(payload) + "\n")


def _emit_table(args, stream, header, rows):
    if args.format == "json":
        write_json(stream, [dict(zip(header, (v if isinstance(v, str) else float(v) for v in row))) for row in rows])
    else:
        write_csv(stream, header, rows)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_state(args, stream):
    r = math.hypot(args.mu, args.nu)
    n_max = args.cutoff if args.cutoff is not None else auto_cutoff(r)
    if (n_max + 1) ** 3 > FockCutoff(1).budget:
        raise TruncationError(f"r = {r:.6g} needs cutoff {n_max}, beyond the dimension budget", n_max)
    cutoff = FockCutoff(n_max)
    state = squeezed_vacuum_analytic(cutoff, args.mu, args.nu)
    extra = {}
    if args.verify:
        numeric = apply_s3_numeric(vacuum(cutoff), args.mu, args.nu, tol=args.tol)
        extra["fidelity"] = fidelity(state, numeric)
    if args.format == "csv":
        d = cutoff.d
        rows = []
        for idx, z in enumerate(state.amplitudes):
            n1, rest = divmod(idx, d * d)
            n2, n3 = divmod(rest, d)
            rows.append((str(n1), str(n2), str(n3), z.real, z.imag))
        write_csv(stream, ("n1", "n2", "n3", "re", "im"), rows)
    else:
        stream.write(state.to_json(**extra) + "\n")
    return EXIT_OK


def cmd_variance(args, stream):
    st = variance_closed_form(args.mu, args.nu)
    header = ("mu", "nu", "var_x1", "var_x2", "std_x1", "std_x2", "std_product")
    _emit_table(args, stream, header, [(args.mu, args.nu, st.var_x1, st.var_x2, st.std_x1, st.std_x2, st.product)])
    return EXIT_OK


def cmd_uncertainty(args, stream):
    g = build_generator(args.mu, args.nu)
    header = ("mu", "nu", "r", "theta", "product")
    _emit_table(args, stream, header, [(args.mu, args.nu, g.r, g.theta, uncertainty_product(args.mu, args.nu))])
    return EXIT_OK


def cmd_wigner(args, stream):
    axes = [parse_axis(s) for s in args.sweep]
    fixed = {}
    for item in args.at:
        try:
            name, value = item.split("=", 1)
            fixed[name.strip()] = float(value)
        except ValueError as exc:
            raise InvalidArgumentError(f"bad --at value {item!r}; expected AXIS=value") from exc
    grid = wigner_grid(args.mu, args.nu, axes, fixed)
    swept = [a.name for a in grid.axes]
    header = tuple(swept + [k for k in AXES if k not in swept] + ["w_value"])
    rows = [tuple(coords[h] for h in header[:-1]) + (w,) for coords, w in grid.rows()]
    _emit_table(args, stream, header, rows)
    return EXIT_OK


def cmd_fig1(args, stream):
    _emit_table(args, stream, figures.FIG1_COLUMNS, figures.fig1_rows())
    return EXIT_OK


def cmd_fig2(args, stream):
    _emit_table(args, stream, figures.FIG2_COLUMNS, figures.fig2_rows())
    return EXIT_OK


def cmd_selfcheck(args, stream):
    results = checks.run_all(cutoff=args.cutoff)
    ok = all(r.passed for r in results)
    if args.json or args.format == "json":
        write_json(stream, {"passed": ok, "checks": [r.to_dict() for r in results]})
    else:
        for r in results:
            stream.write(r.line() + "\n")
        stream.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return EXIT_OK if ok else EXIT_SELFCHECK


HANDLERS = {
    "state": cmd_state,
    "variance": cmd_variance,
    "uncertainty": cmd_uncertainty,
    "wigner": cmd_wigner,
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "selfcheck": cmd_selfcheck,
}


def _finite(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return value


def _tol(text):
    value = _finite(text)
    if not 0 < value <= 1e-6:
        raise argparse.ArgumentTypeError("tolerance must be in (0, 1e-6]")
    return value


def _cutoff_arg(text):
    value = int(text)
    try:
        FockCutoff(value)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", type=_finite, default=0.0, help="mode 1-2 coupling (default 0)")
    common.add_argument("--nu", type=_finite, default=0.0, help="mode 1-3 coupling (default 0)")
    common.add_argument("--cutoff", type=_cutoff_arg, default=None, help="per-mode photon cap n_max")
    common.add_argument("--tol", type=_tol, default=1e-12, help="exponential-action tolerance")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="trisqueeze", description="3-mode squeezing operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("state", parents=[common], help="analytic squeezed vacuum").add_argument(
        "--verify", action="store_true", help="also report fidelity against the numeric backend"
    )
    sub.add_parser("variance", parents=[common], help="quadrature variances")
    sub.add_parser("uncertainty", parents=[common], help="uncertainty product")
    w = sub.add_parser("wigner", parents=[common], help="Wigner function sweep")
    w.add_argument("--sweep", action="append", default=[], metavar="AXIS=min:max:count")
    w.add_argument("--at", action="append", default=[], metavar="AXIS=value", help="fix an unswept coordinate")
    sub.add_parser("fig1", parents=[common], help="variance vs mu data")
    sub.add_parser("fig2", parents=[common], help="uncertainty vs r data")
    sc = sub.add_parser("selfcheck", parents=[common], help="run the acceptance checks")
    sc.add_argument("--json", action="store_true", help="machine-readable report")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "state" else "csv"
    buf = io.StringIO(newline="\n")
    try:
        code = HANDLERS[args.command](args, buf)
    except InvalidArgumentError as exc:
        print(f"trisqueeze: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (TruncationError, PrecisionError, ResourceError) as exc:
        print(f"trisqueeze: error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
