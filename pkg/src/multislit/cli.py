"""Command-line interface.

Subcommands
-----------
fig2, fig3    visibility / coherence against one-path knowledge, per n
fig4          normalized neon screen patterns at several scaled times
fig5          visibility / coherence against scaled time, per n
scan          phase scan of the channel intensity (config-driven)
screen        screen-density scan (config-driven)
decay         coherence-decay and visibility table (config-driven)

Exit codes: 0 success, 2 validation or configuration error, 3 far-field
(Fraunhofer) check failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .config import FORMATS, SCREEN_MODELS, load_config_file, resolve
from .errors import FraunhoferLimitError, ValidationError


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=FORMATS, default="csv", help="table format (default csv)")
    sub.add_argument("--out", default="out", help="output directory (default ./out)")
    sub.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    sub.add_argument(
        "--emit-plot-script",
        action="store_true",
        help="write a generic replot script next to the data",
    )


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file of dotted configuration keys")
    sub.add_argument("--n", type=int, help="path / slit count")
    sub.add_argument("--beta", type=float, help="detector overlap in [0, 1]")
    sub.add_argument("--samples", type=int, help="phase samples per scan")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multislit",
        description="n-path interference, decoherence and coherence tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("fig2", "fig3"):
        p = sub.add_parser(name, help="visibility/coherence vs one-path knowledge")
        p.add_argument("--n", type=int, help="restrict to a single n (default 3..6)")
        p.add_argument("--beta-points", type=int, default=experiments.BETA_POINTS)
        p.add_argument("--samples", type=int, default=4096)
        _add_common(p)

    p = sub.add_parser("fig4", help="neon screen patterns under selective decoherence")
    p.add_argument(
        "--t-over-tau",
        type=float,
        help="single scaled time (plots it against the undamped reference)",
    )
    p.add_argument("--x-points", type=int, default=2048)
    p.add_argument("--x-max-fringes", type=float, default=3.0)
    _add_common(p)

    p = sub.add_parser("fig5", help="visibility/coherence vs scaled time")
    p.add_argument("--n", type=int, help="restrict to a single n (default 3..6)")
    p.add_argument("--t-max", type=float, default=experiments.FIG5_T_MAX)
    p.add_argument("--points", type=int, default=experiments.FIG5_POINTS)
    p.add_argument("--samples", type=int, default=4096)
    _add_common(p)

    p = sub.add_parser("scan", help="phase scan of the channel intensity")
    _add_config_flags(p)
    p.add_argument("--pi-path", type=int, help="1-based index of the pi-phased path")
    _add_common(p)

    p = sub.add_parser("screen", help="screen-density scan")
    _add_config_flags(p)
    p.add_argument("--model", choices=SCREEN_MODELS, help="density evaluator (default selective)")
    p.add_argument("--t-over-tau", type=float, help="scaled time (excludes --gamma)")
    p.add_argument("--gamma", type=float, help="bath friction rate, 1/s")
    p.add_argument("--time", type=float, help="evolution time, s (default: flight time)")
    p.add_argument("--x-points", type=int)
    p.add_argument("--x-max-fringes", type=float)
    _add_common(p)

    p = sub.add_parser("decay", help="coherence decay and visibility vs scaled time")
    _add_config_flags(p)
    p.add_argument("--t-max", type=float, help="largest t/tau (default 5)")
    p.add_argument("--points", type=int, help="table rows (default 101)")
    _add_common(p)

    return parser


def _custom_overrides(args: argparse.Namespace) -> dict:
    pairs = {
        "n": getattr(args, "n", None),
        "beta": getattr(args, "beta", None),
        "samples": getattr(args, "samples", None),
        "pi_path": getattr(args, "pi_path", None),
        "screen.model": getattr(args, "model", None),
        "time.t_over_tau": getattr(args, "t_over_tau", None),
        "bath.gamma": getattr(args, "gamma", None),
        "time.t": getattr(args, "time", None),
        "screen.x_points": getattr(args, "x_points", None),
        "screen.x_max_fringes": getattr(args, "x_max_fringes", None),
        "decay.t_max": getattr(args, "t_max", None),
        "decay.points": getattr(args, "points", None),
    }
    overrides = {key: value for key, value in pairs.items() if value is not None}
    overrides["output.format"] = args.format
    overrides["output.path"] = args.out
    return overrides


def _dispatch(args: argparse.Namespace) -> list[str]:
    plot = not args.no_plot
    if args.command in ("fig2", "fig3"):
        ns = (args.n,) if args.n is not None else experiments.FIG_NS
        written = experiments.run_fig2_fig3(
            args.out, ns=ns, beta_points=args.beta_points, samples=args.samples,
            fmt=args.format, prefix=args.command, plot=plot,
        )
    elif args.command == "fig4":
        if args.t_over_tau is not None:
            times = (0.0, args.t_over_tau) if args.t_over_tau != 0.0 else (0.0,)
        else:
            times = experiments.FIG4_TIMES
        written = experiments.run_fig4(
            args.out, t_over_tau=times, x_points=args.x_points,
            x_max_fringes=args.x_max_fringes, fmt=args.format, plot=plot,
        )
    elif args.command == "fig5":
        ns = (args.n,) if args.n is not None else experiments.FIG_NS
        written = experiments.run_fig5(
            args.out, ns=ns, t_max=args.t_max, points=args.points,
            samples=args.samples, fmt=args.format, plot=plot,
        )
    else:
        file_values = load_config_file(args.config) if args.config else None
        cfg = resolve(args.command, file_values, _custom_overrides(args))
        return experiments.run_custom(cfg, plot=plot, emit_script=args.emit_plot_script)
    if args.emit_plot_script:
        written.append(experiments.write_plot_script(args.out))
    return written


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        written = _dispatch(args)
    except FraunhoferLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
