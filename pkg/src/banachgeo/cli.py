"""Command-line interface.

Three subcommands: ``constant`` evaluates a single named constant,
``verify`` runs the inequality battery (exit code 1 if any check fails),
``sweep-mu`` tabulates DW bounds and estimates across the X_mu family.
All results go to stdout; diagnostics to stderr.  Exit codes: 0 success,
1 failed verification, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dw import (
    Weights,
    dw_b,
    dw_general,
    dw_i,
    dw_s,
    ms_b,
    psi_inf,
)
from .harness import (
    SpecError,
    _fmt12,
    _round12,
    emit_report,
    parse_space_spec,
    run_verify,
    space_to_spec,
    sweep_mu,
)
from .moduli import delta, eps0, james_direct, rect_constant, rho, rho_prime0

CONSTANT_NAMES = [
    "dw",
    "dw-b",
    "dw-s",
    "dw-i",
    "ms-b",
    "psi-inf",
    "delta",
    "eps0",
    "james",
    "rho",
    "rho-prime0",
    "rect",
]


def _load_space(arg: str):
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    return parse_space_spec(text)


def _witness_payload(result) -> dict:
    u, v, t_or_s = result.witness
    return {
        "u": [_round12(c) for c in u.vec.tolist()],
        "v": [_round12(c) for c in v.vec.tolist()],
        "t_or_s": _round12(t_or_s),
        "method": result.method,
    }


def _run_constant(args) -> int:
    space = _load_space(args.space)
    w = Weights(args.alpha, args.beta)
    n = args.grid
    name = args.name
    extras: dict = {}
    if name == "dw":
        res = dw_general(space, w, n)
        value = res.estimate.value
        extras = {"alpha": args.alpha, "beta": args.beta,
                  "witness": _witness_payload(res)}
    elif name == "dw-b":
        res = dw_b(space, w, n)
        value = res.estimate.value
        extras = {"alpha": args.alpha, "beta": args.beta,
                  "witness": _witness_payload(res)}
    elif name == "dw-s":
        res = dw_s(space, n)
        value = res.estimate.value
        extras = {"witness": _witness_payload(res)}
    elif name == "dw-i":
        res = dw_i(space, n)
        value = res.estimate.value
        extras = {"witness": _witness_payload(res)}
    elif name == "ms-b":
        res = ms_b(space, n)
        value = res.estimate.value
        extras = {"witness": _witness_payload(res)}
    elif name == "psi-inf":
        res = psi_inf(space, n)
        value = res.estimate.value
        extras = {"witness": _witness_payload(res)}
    elif name == "delta":
        if args.eps is None:
            raise SpecError("delta requires --eps")
        value = delta(space, args.eps, n).value
        extras = {"eps": args.eps}
    elif name == "eps0":
        value = eps0(space, n).value
    elif name == "james":
        value = james_direct(space, n).value
    elif name == "rho":
        if args.t is None:
            raise SpecError("rho requires --t")
        value = rho(space, args.t, n).value
        extras = {"t": args.t}
    elif name == "rho-prime0":
        value = rho_prime0(space, n).value
    else:  # rect
        value = rect_constant(space, n).value

    if args.format == "json":
        payload = {"constant": name, "space": space_to_spec(space),
                   "value": _round12(value), **extras}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("constant,value\n")
        sys.stdout.write(f"{name},{_fmt12(value)}\n")
    return 0


def _run_verify(args) -> int:
    space = _load_space(args.space)
    report = run_verify(space, Weights(args.alpha, args.beta), args.profile)
    sys.stdout.write(emit_report(report, args.format))
    return 0 if report.all_pass else 1


def _run_sweep(args) -> int:
    if args.steps < 1:
        raise SpecError("--steps must be >= 1")
    if args.steps == 1:
        mus = [args.mu_from]
    else:
        span = args.mu_to - args.mu_from
        mus = [args.mu_from + span * k / (args.steps - 1) for k in range(args.steps)]
    rows = sweep_mu(mus, Weights(args.alpha, args.beta), args.profile)
    sys.stdout.write(emit_report(rows, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banachgeo",
        description="Geometric constants of finite-dimensional normed planes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_const = sub.add_parser("constant", help="evaluate one named constant")
    p_const.add_argument("name", choices=CONSTANT_NAMES)
    p_const.add_argument("--space", required=True,
                         help="space spec as JSON, or @path to a JSON file")
    p_const.add_argument("--alpha", type=float, default=1.0)
    p_const.add_argument("--beta", type=float, default=1.0)
    p_const.add_argument("--grid", type=int, default=256)
    p_const.add_argument("--eps", type=float, default=None,
                         help="distance threshold (delta only)")
    p_const.add_argument("--t", type=float, default=None,
                         help="smoothness parameter (rho only)")
    p_const.add_argument("--format", choices=["json", "csv"], default="json")
    p_const.set_defaults(func=_run_constant)

    p_verify = sub.add_parser("verify", help="run the inequality battery")
    p_verify.add_argument("--space", required=True)
    p_verify.add_argument("--alpha", type=float, required=True)
    p_verify.add_argument("--beta", type=float, required=True)
    p_verify.add_argument("--profile", choices=["fast", "thorough"],
                          default="fast")
    p_verify.add_argument("--format", choices=["json", "csv"], default="json")
    p_verify.set_defaults(func=_run_verify)

    p_sweep = sub.add_parser("sweep-mu", help="tabulate DW across X_mu")
    p_sweep.add_argument("--from", dest="mu_from", type=float, required=True)
    p_sweep.add_argument("--to", dest="mu_to", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--alpha", type=float, required=True)
    p_sweep.add_argument("--beta", type=float, required=True)
    p_sweep.add_argument("--profile", choices=["fast", "thorough"],
                         default="fast")
    p_sweep.add_argument("--format", choices=["json", "csv"], default="csv")
    p_sweep.set_defaults(func=_run_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
