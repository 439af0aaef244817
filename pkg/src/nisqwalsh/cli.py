"""Command-line entry point: one subcommand per pipeline stage.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 I/O error.
"""
import argparse
import json
import sys

from . import board as boardmod
from . import chaostats, fileio, pipeline
from .config import BACKENDS, RunConfig
from .noise import DistributionNoise, GateNoise, NoiseSchedule, corrupt_samples
from .qsim import GateSetConfig, generate_random_circuit, ideal_distribution
from .walsh import degree_profile, spectrum

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _schedule(text, target):
    """``kind:p1:p2...``, e.g. ``linear:0.01:0.05``."""
    if text is None:
        return None
    kind, *params = text.split(":")
    if kind == "random_walk":
        start, step, seed, *rest = params
        return NoiseSchedule.random_walk(float(start), float(step), int(seed), *map(int, rest), target=target)
    return NoiseSchedule(kind, tuple(float(p) for p in params), target)


def _print_json(obj):
    sys.stdout.write(fileio.dumps_json(obj))


def cmd_gen_circuit(args):
    gateset = GateSetConfig(tuple(args.single_gates.split(",")), args.two_gate)
    c = generate_random_circuit(args.rows, args.cols, args.depth, gateset, seed=args.seed)
    fileio.write_circuit(c, args.output)


def cmd_simulate(args):
    c = fileio.parse_circuit(args.circuit)
    noise = GateNoise(args.r1, args.r2, args.eps_readout)
    sched = _schedule(args.schedule, args.schedule_target)
    s = pipeline.simulate(c, args.backend, noise, sched, args.count, args.seed)
    fileio.write_samples(s.replace(circuit=args.circuit), args.output)


def cmd_corrupt(args):
    s = fileio.parse_samples(args.samples)
    sched = _schedule(args.schedule, "eps_readout")
    out = corrupt_samples(s, DistributionNoise(args.eps), args.seed, schedule=sched)
    fileio.write_samples(out.replace(seed=args.seed), args.output)


def cmd_spectrum(args):
    ref = None
    if args.circuit:
        ref = degree_profile(spectrum(ideal_distribution(fileio.parse_circuit(args.circuit))))
    if args.samples:
        s = fileio.parse_samples(args.samples)
        prof = chaostats.estimate_degree_profile(s, args.max_degree, args.estimator)
    elif ref is not None:
        prof, ref = ref, None
    else:
        raise UsageError("spectrum needs --samples or --circuit")
    fileio.emit_spectrum_csv(prof, args.output, ref=ref)


def cmd_stationarity(args):
    s = fileio.parse_samples(args.samples)
    rep = chaostats.stationarity_test(s, args.B, args.metric, args.seed)
    provenance = {"samples": args.samples, "seeds": {"analysis": args.seed}}
    if args.output:
        fileio.emit_report(args.output, provenance, stationarity=rep)
    else:
        _print_json({"stationarity": rep.to_dict(), "provenance": provenance})


def cmd_decay(args):
    s = fileio.parse_samples(args.samples)
    ref = degree_profile(spectrum(ideal_distribution(fileio.parse_circuit(args.circuit))))
    est = chaostats.estimate_degree_profile(s, args.max_degree, args.estimator)
    hi = args.max_fit_degree if args.max_fit_degree is not None else est.max_degree
    fit = chaostats.decay_fit(est, ref, range(args.min_fit_degree, hi + 1))
    if args.csv:
        fileio.emit_spectrum_csv(est, args.csv, ref=ref)
    provenance = {"samples": args.samples, "circuit": args.circuit}
    if args.output:
        fileio.emit_report(args.output, provenance, decay=fit)
    else:
        _print_json({"decay": fit.to_dict(), "provenance": provenance})


def cmd_xeb(args):
    s = fileio.parse_samples(args.samples)
    ideal = ideal_distribution(fileio.parse_circuit(args.circuit))
    _print_json({"xeb": chaostats.xeb_fidelity(s, ideal), "stderr": chaostats.xeb_stderr(s, ideal)})


def cmd_board_demo(args):
    dims = (args.rows, args.cols)
    if args.bottom or args.left:
        if not (args.bottom and args.left):
            raise UsageError("--bottom and --left must be given together")
        bottom, left = list(args.bottom), list(args.left)
    elif args.seed is None:
        raise UsageError("board-demo needs --seed or an explicit --bottom/--left seed")
    else:
        bottom, left = boardmod.random_seed_colors(dims, args.seed)
    b = boardmod.complete_from_seed(bottom, left)
    sys.stdout.write(b.to_text())
    sys.stdout.write(f"valid: {boardmod.validate(b)}\n")
    sys.stdout.write(f"free cells: {boardmod.free_cells((b.rows, b.cols))}\n")
    sys.stdout.write(f"valid boards: {boardmod.count_valid((b.rows, b.cols))}\n")


def cmd_report(args):
    cfg = RunConfig.from_file(args.config)
    doc = pipeline.run(cfg)
    if "report" not in cfg.outputs:
        _print_json(doc)


def build_parser():
    p = _Parser(prog="nisqwalsh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen-circuit", help="generate a random grid circuit")
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--cols", type=int, required=True)
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--single-gates", default="sqrt_x,sqrt_y,sqrt_w")
    g.add_argument("--two-gate", default="cz")
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen_circuit)

    s = sub.add_parser("simulate", help="sample a circuit with one of the backends")
    s.add_argument("--circuit", required=True)
    s.add_argument("--backend", choices=BACKENDS, default="trajectories")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--r1", type=float, default=0.0)
    s.add_argument("--r2", type=float, default=0.0)
    s.add_argument("--eps-readout", type=float, default=0.0)
    s.add_argument("--schedule", help="kind:params, e.g. linear:0.01:0.05")
    s.add_argument("--schedule-target", default="eps_readout",
                   choices=["eps_readout", "r1", "r2", "gate"])
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("corrupt", help="flip sample bits independently")
    c.add_argument("--samples", required=True)
    c.add_argument("--eps", type=float, required=True)
    c.add_argument("--schedule", help="drifting eps, e.g. linear:0.01:0.05")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_corrupt)

    sp = sub.add_parser("spectrum", help="degree-weight profile CSV")
    sp.add_argument("--samples")
    sp.add_argument("--circuit", help="ideal reference (adds a ratio column)")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--estimator", default="fwht-debiased", choices=chaostats.ESTIMATORS)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_spectrum)

    st = sub.add_parser("stationarity", help="sequential vs random half-split test")
    st.add_argument("--samples", required=True)
    st.add_argument("--B", type=int, default=chaostats.DEFAULT_B)
    st.add_argument("--metric", default=chaostats.DEFAULT_METRIC, choices=["l2", "tv"])
    st.add_argument("--seed", type=int, required=True)
    st.add_argument("-o", "--output")
    st.set_defaults(func=cmd_stationarity)

    d = sub.add_parser("decay", help="fit exponential decay of degree weights")
    d.add_argument("--samples", required=True)
    d.add_argument("--circuit", required=True)
    d.add_argument("--max-degree", type=int)
    d.add_argument("--estimator", default="fwht-debiased", choices=chaostats.ESTIMATORS)
    d.add_argument("--min-fit-degree", type=int, default=1)
    d.add_argument("--max-fit-degree", type=int)
    d.add_argument("--csv")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decay)

    x = sub.add_parser("xeb", help="linear cross-entropy fidelity")
    x.add_argument("--samples", required=True)
    x.add_argument("--circuit", required=True)
    x.set_defaults(func=cmd_xeb)

    b = sub.add_parser("board-demo", help="complete and print a parity board")
    b.add_argument("--rows", type=int, default=7)
    b.add_argument("--cols", type=int, default=9)
    b.add_argument("--bottom", help="bottom row colors, e.g. RBBR...")
    b.add_argument("--left", help="left column colors, bottom first")
    b.add_argument("--seed", type=int)
    b.set_defaults(func=cmd_board_demo)

    r = sub.add_parser("report", help="run the full pipeline from a config file")
    r.add_argument("--config", required=True)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
