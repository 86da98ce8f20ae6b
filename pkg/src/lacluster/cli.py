"""Command-line front end: ``lacluster synth|corrupt|run|sweep|trials``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import harness
from .core import ValidationError
from .io import (dumps, emit_report, parse_labels, parse_points, write_labels,
                 write_points)

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 2, 3


def _rounds(text: str):
    if text == "auto":
        return None
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("rounds must be a positive integer or 'auto'")
    if r < 1:
        raise argparse.ArgumentTypeError("rounds must be a positive integer or 'auto'")
    return r


def _q_grid(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("q grid must be comma-separated floats")


def _algo_options(p: argparse.ArgumentParser, alpha_required: bool) -> None:
    p.add_argument("--points", required=True)
    p.add_argument("--labels", help="predicted labels (not needed for lloyd/kmedoids)")
    p.add_argument("--truth", help="reference partition; enables cost_vs_truth")
    p.add_argument("--header", action="store_true", help="skip the first row of each CSV")
    p.add_argument("--alpha", type=float, required=alpha_required)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--rounds", type=_rounds, default=harness.HARNESS_ROUNDS,
                   help="la-kmedians repetitions, or 'auto' for the full count (default 1)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objective", choices=("means", "medians"))
    p.add_argument("--q-grid", type=_q_grid, help="sampling baseline fractions")
    p.add_argument("--no-timing", action="store_true",
                   help="emit wall_ms as null so identical runs are byte-identical")
    p.add_argument("--out", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lacluster",
                                     description="Learning-augmented k-means / k-medians")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a planted Gaussian instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--per-cluster", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--separation", type=float, default=10.0)
    p.add_argument("--spread", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-points", required=True)
    p.add_argument("--out-labels", required=True)

    p = sub.add_parser("corrupt", help="corrupt a reference labeling")
    p.add_argument("--points", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--header", action="store_true")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--objective", choices=("means", "medians"), default="means")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    for name, help_ in (("run", "run one algorithm"),
                        ("sweep", "guess alpha over a grid"),
                        ("trials", "repeat runs and aggregate")):
        p = sub.add_parser(name, help=help_)
        if name == "trials":
            p.add_argument("--algo", choices=harness.ALGORITHMS, action="append",
                           required=True, help="repeatable")
            p.add_argument("--runs", type=int, default=20)
            p.add_argument("--grid", type=int, help="sweep alpha inside every run")
        else:
            p.add_argument("--algo", choices=harness.ALGORITHMS, required=True)
        if name == "sweep":
            p.add_argument("--grid", type=int, default=15)
        _algo_options(p, alpha_required=(name == "run"))
    return parser


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")


def _load(args):
    data = parse_points(args.points, header=args.header)
    labels = parse_labels(args.labels, args.k, args.header) if args.labels else None
    k = args.k or (labels.k if labels is not None else None)
    truth = parse_labels(args.truth, k, args.header) if args.truth else None
    if truth is not None and k is None:
        k = truth.k
    if labels is not None and k is not None and labels.k != k:
        labels = harness.Labeling(labels.assign, k)
    return data, labels, truth, k


def _run_kwargs(args, k, truth):
    return dict(k=k, truth=truth, delta=args.delta, rounds=args.rounds,
                objective=args.objective, q_grid=args.q_grid,
                timing=not args.no_timing)


def _echo(args) -> dict:
    skip = {"command", "verbose", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except ValidationError as exc:
        print(f"lacluster: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"lacluster: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def _dispatch(args) -> int:
    if args.command == "synth":
        inst = harness.synth(args.k, args.per_cluster, args.dim, args.separation,
                             args.spread, args.seed)
        write_points(args.out_points, inst.data)
        write_labels(args.out_labels, inst.truth)
        return EXIT_OK

    if args.command == "corrupt":
        data = parse_points(args.points, header=args.header)
        truth = parse_labels(args.labels, header=args.header)
        if truth.m != data.m:
            raise ValidationError(f"{truth.m} labels for {data.m} points")
        inst = harness.instance_from(data, truth)
        write_labels(args.out, harness.corrupt(inst, args.alpha, args.objective, args.seed))
        return EXIT_OK

    data, labels, truth, k = _load(args)
    kwargs = _run_kwargs(args, k, truth)

    if args.command == "run":
        rep = harness.run_algorithm(args.algo, data, labels, args.alpha,
                                    seed=args.seed, **kwargs)
        rep.config["args"] = _echo(args)
        if args.out == "-":
            _write(dumps(rep.to_dict()), "-")
        else:
            emit_report(rep, args.out)
        return EXIT_OK

    if args.command == "sweep":
        best, table = harness.alpha_sweep(data, labels, args.algo, args.grid,
                                          seed=args.seed, **kwargs)
        best.config["args"] = _echo(args)
        rows = [{"alpha": r.alpha, "cost_min_assign": r.cost_min_assign,
                 "cost_vs_truth": r.cost_vs_truth, "factor_bound": r.factor_bound,
                 "wall_ms": r.wall_ms} for r in table]
        _write(dumps({"best": best.to_dict(), "table": rows}), args.out)
        return EXIT_OK

    summaries = harness.run_trials(data, labels, args.algo, args.alpha, args.runs,
                                   args.seed, grid_size=args.grid, **kwargs)
    payload = {"runs": args.runs, "seed": args.seed,
               "results": {a: s.to_dict() for a, s in summaries.items()},
               "config": _echo(args)}
    _write(dumps(payload), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
