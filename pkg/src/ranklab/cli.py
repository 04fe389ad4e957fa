"""Command-line front end.

Subcommands: volume, bounds, sample, listdecode, experiment, curves,
coset-check.  Shared flags (--seed, --workers, --cap, --format) attach
to every subcommand.  JSON output is a versioned envelope carrying the
echoed inputs, a content hash of them, and the seed when one was used;
CSV output is a bare table with a header row, UTF-8, LF line endings.
Exit status: 0 on success, 2 for infeasible or out-of-range parameters,
1 for internal errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from . import codefile
from .codes import gabidulin, sample_random_code, sample_random_linear_code
from .errors import InfeasibleError
from .fields import context_from_descriptor, default_context
from .harness import (
    EnsembleSpec,
    content_hash,
    coset_partition_check,
    emit_barrier_curves,
    run_ensemble,
)
from .listdec import (
    max_list_size,
    pigeonhole_loose_form,
    radius_from_fraction,
)
from .rankmetric import DEFAULT_ENUM_CAP, ball_volume


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(args, inputs: dict, result, rows=None, seed=None) -> None:
    """Print one report as an enveloped JSON object or a bare CSV table."""
    if args.format == "csv":
        table = rows if rows is not None else [result]
        writer = csv.DictWriter(sys.stdout, fieldnames=list(table[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(table)
        return
    envelope = {
        "schema": f"ranklab.{args.command}/1",
        "inputs": inputs,
        "content_hash": content_hash(inputs),
    }
    if seed is not None:
        envelope["seed"] = seed
    envelope["result"] = {"rows": rows} if rows is not None else result
    json.dump(envelope, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _resolve_context(args):
    if getattr(args, "field", None):
        return context_from_descriptor(args.field)
    if args.q is None or args.m is None:
        raise ValueError("give either --field or both --q and --m")
    return default_context(args.q, args.m)


def _resolve_radius(args, n: int) -> int:
    if getattr(args, "radius", None) is not None:
        return args.radius
    if getattr(args, "rho", None) is not None:
        return radius_from_fraction(args.rho, n)
    raise ValueError("give either --radius or --rho")


def _cmd_volume(args) -> None:
    res = ball_volume(args.q, args.m, args.n, args.r, kq_tol=args.kq_tol)
    inputs = {"q": args.q, "m": args.m, "n": args.n, "r": args.r, "kq_tol": str(args.kq_tol)}
    _emit(args, inputs, res.as_dict())


_BOUND_PARAMS = {
    "singleton": ("q", "m", "n", "d"),
    "hamming": ("code_size", "q", "m", "n", "d"),
    "gv_lower": ("delta", "b"),
    "alpha_exact": ("delta",),
    "singleton_barrier": ("rate",),
    "gv_barrier": ("rho", "b"),
    "theta_threshold": ("rate", "eps"),
}


def _cmd_bounds(args) -> None:
    needed = _BOUND_PARAMS[args.name]
    kwargs = {}
    for pname in needed:
        value = getattr(args, pname)
        if value is None:
            raise ValueError(f"bound {args.name!r} needs --{pname.replace('_', '-')}")
        kwargs[pname] = value
    if args.name == "singleton":
        value = bounds_mod.singleton_max_log_size(**kwargs)
        report = bounds_mod.BoundReport("singleton", kwargs, value)
    elif args.name == "hamming":
        report = bounds_mod.hamming_check(**kwargs)
    else:
        func = {
            "gv_lower": lambda: bounds_mod.gv_alpha_lower(kwargs["delta"], kwargs["b"]),
            "alpha_exact": lambda: bounds_mod.alpha_exact(kwargs["delta"]),
            "singleton_barrier": lambda: bounds_mod.singleton_barrier(kwargs["rate"]),
            "gv_barrier": lambda: bounds_mod.gv_barrier(kwargs["rho"], kwargs["b"]),
            "theta_threshold": lambda: bounds_mod.theta_threshold(kwargs["rate"], kwargs["eps"]),
        }[args.name]
        report = bounds_mod.BoundReport(args.name, kwargs, func())
    inputs = {k: str(v) if isinstance(v, Fraction) else v for k, v in kwargs.items()}
    _emit(args, {"name": args.name, **inputs}, report.as_dict())


def _cmd_sample(args) -> None:
    ctx = _resolve_context(args)
    if args.kind == "random":
        if args.size is None:
            raise ValueError("kind=random needs --size")
        code = sample_random_code(ctx, args.n, args.size, args.seed)
    elif args.kind == "random_linear":
        if args.k is None:
            raise ValueError("kind=random_linear needs --k")
        code = sample_random_linear_code(ctx, args.n, args.k, args.seed)
    else:
        if args.k is None:
            raise ValueError("kind=gabidulin needs --k")
        code = gabidulin(ctx, args.n, args.k)
    text = codefile.dumps_code(code)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_listdecode(args) -> None:
    with open(args.code, encoding="utf-8") as fh:
        code = codefile.load_code(fh)
    s = _resolve_radius(args, code.n)
    report = max_list_size(
        code,
        s,
        args.mode,
        centers=args.centers,
        seed=args.seed,
        cap=args.cap,
        workers=args.workers,
    )
    ctx = code.ctx
    result = report.as_dict()
    result["loose_closed_form"] = str(
        pigeonhole_loose_form(code.size, ctx.base.q, ctx.m, code.n, s)
    )
    if args.list_cap is not None:
        result["list_cap"] = args.list_cap
        result["list_decodable"] = report.l_max <= args.list_cap
    inputs = {
        "code": args.code,
        "radius_s": s,
        "mode": args.mode,
        "centers": args.centers,
        "cap": args.cap,
    }
    _emit(args, inputs, result, seed=args.seed)


def _cmd_experiment(args) -> None:
    n = args.n
    spec = EnsembleSpec(
        kind=args.kind,
        q=args.q,
        m=args.m,
        n=n,
        rate_target=args.rate,
        radius_s=_resolve_radius(args, n),
        list_cap=args.list_cap,
        trials=args.trials,
        seed=args.seed,
    )
    report = run_ensemble(spec, workers=args.workers, cap=args.cap)
    _emit(args, spec.as_dict(), report.as_dict(), seed=args.seed)


def _cmd_curves(args) -> None:
    points = emit_barrier_curves(args.b, args.grid)
    rows = [p.as_dict() for p in points]
    _emit(args, {"b": str(Fraction(args.b)), "grid": args.grid}, None, rows=rows)


def _cmd_coset_check(args) -> None:
    with open(args.code, encoding="utf-8") as fh:
        code = codefile.load_code(fh)
    s = _resolve_radius(args, code.n)
    report = coset_partition_check(code, s, cap=args.cap)
    inputs = {"code": args.code, "radius_s": s, "cap": args.cap}
    _emit(args, inputs, report.as_dict())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    common.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")
    common.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_ENUM_CAP,
        help=f"exhaustive enumeration cap (default {DEFAULT_ENUM_CAP})",
    )
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(
        prog="ranklab",
        description="Exact rank-metric code combinatorics, bounds, and list-decoding probes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="exact rank-ball volume with bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kq-tol", type=_fraction, default=Fraction(1, 10**9))
    p.set_defaults(func=_cmd_volume)

    p = sub.add_parser("bounds", parents=[common], help="evaluate one named bound")
    p.add_argument("--name", choices=sorted(_BOUND_PARAMS), required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--code-size", dest="code_size", type=int)
    p.add_argument("--b", type=_fraction)
    p.add_argument("--rate", type=_fraction)
    p.add_argument("--rho", type=_fraction)
    p.add_argument("--delta", type=_fraction)
    p.add_argument("--eps", type=_fraction)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sample", parents=[common], help="sample or build a code file")
    p.add_argument("--kind", choices=("random", "random_linear", "gabidulin"), required=True)
    p.add_argument("--field", help="field descriptor, e.g. 2/3:1,1,0,1")
    p.add_argument("--q", type=int, help="base field size (with --m, instead of --field)")
    p.add_argument("--m", type=int, help="extension degree (with --q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, help="codeword count for kind=random")
    p.add_argument("--k", type=int, help="dimension for the linear kinds")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("listdecode", parents=[common], help="worst list size for a code file")
    p.add_argument("--code", required=True, help="path to a rankcode/1 file")
    p.add_argument("--radius", type=int, help="rank radius s")
    p.add_argument("--rho", type=_fraction, help="radius fraction; s = floor(rho*n)")
    p.add_argument("--mode", choices=("exhaustive", "montecarlo"), default="exhaustive")
    p.add_argument("--centers", type=int, default=1000, help="extra Monte Carlo centers")
    p.add_argument("--list-cap", dest="list_cap", type=int, help="report a verdict against this L")
    p.set_defaults(func=_cmd_listdecode)

    p = sub.add_parser("experiment", parents=[common], help="seeded ensemble of sampled codes")
    p.add_argument("--kind", choices=("random", "random_linear"), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rate", type=_fraction, required=True)
    p.add_argument("--radius", type=int)
    p.add_argument("--rho", type=_fraction)
    p.add_argument("--list-cap", dest="list_cap", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("curves", parents=[common], help="barrier curves on a rational grid")
    p.add_argument("--b", type=_fraction, required=True, help="aspect ratio n/m")
    p.add_argument("--grid", type=int, default=101)
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("coset-check", parents=[common], help="exact ball-across-cosets tally")
    p.add_argument("--code", required=True, help="path to a kind=linear rankcode/1 file")
    p.add_argument("--radius", type=int)
    p.add_argument("--rho", type=_fraction)
    p.set_defaults(func=_cmd_coset_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (InfeasibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
