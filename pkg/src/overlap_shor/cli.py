"""Command-line front end.

Exit codes: 0 success (or a confirmed / undecided claim), 1 a refuted claim,
2 invalid parameters or malformed input. Payloads go to stdout, diagnostics
to stderr. File arguments accept ``-`` for stdin/stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import builder, decoder, simulator, verifier
from .errors import CapacityError, InvalidParameter, PauliParseError, UnsupportedCode


class UsageError(Exception):
    pass


def _read_code(path: str) -> builder.StabilizerCode:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return builder.code_from_dict(json.loads(text))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read code from {path!r}: {exc}") from None


def _emit(text: str, path: str = "-"):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_build(args) -> int:
    params = {"d": args.d}
    if args.construction != "shor":
        if args.ell is None:
            raise UsageError(f"--ell is required for construction {args.construction!r}")
        params["ell"] = args.ell
        key, flag = {"outer": ("k", args.k), "inner": ("t", args.t), "double": ("k_o", args.ko)}[args.construction]
        params[key] = 1 if flag is None else flag
    code = builder.build(args.construction, **params)
    _emit(_dump(builder.code_to_dict(code)), args.out)
    return 0


def cmd_verify(args) -> int:
    code = _read_code(args.input)
    report = verifier.compute_distance(code, args.wmax)
    _emit(_dump(report.to_dict()))
    return 1 if report.verdict == "refuted" else 0


def cmd_tabulate(args) -> int:
    code = _read_code(args.input)
    rows = decoder.syndrome_table(code, _int_list(args.weights))
    if args.format == "csv":
        _emit(decoder.table_to_csv(rows))
    else:
        _emit(_dump([{"error": e, "syndrome": s} for e, s in rows]))
    return 0


def cmd_census(args) -> int:
    code = _read_code(args.input)
    dec = decoder.make_decoder(code, args.decoder)
    _emit(_dump(decoder.correctability_census(code, dec, args.w).to_dict()))
    return 0


def cmd_rules(args) -> int:
    code = _read_code(args.input)
    _emit(_dump(decoder.rule_report(code)))
    return 0


def cmd_rates(args) -> int:
    ell = args.ell if args.ell is not None else 0
    if args.construction != "shor" and args.ell is None:
        raise UsageError(f"--ell is required for construction {args.construction!r}")
    rate = builder.asymptotic_rate(args.construction, args.d, ell)
    ratio = builder.rate_ratio_vs_shor(args.construction, args.d, ell)
    out = {"construction": args.construction, "d": args.d, "ell": ell, "rate": str(rate), "ratio": str(ratio)}
    _emit(_dump(out))
    return 0


def cmd_simulate(args) -> int:
    code = _read_code(args.input)
    dec = decoder.make_decoder(code, args.decoder)
    rows = []
    for p in _float_list(args.p):
        model = simulator.NoiseModel.depolarizing(p)
        rows.append(simulator.run_monte_carlo(code, dec, model, args.shots, args.seed, threads=args.threads))
    _emit(simulator.summaries_to_csv(rows))
    return 0


def cmd_gain(args) -> int:
    code = _read_code(args.input)
    _emit(_dump(simulator.gain_scan(code, _float_list(args.p))))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overlap-shor",
        description="Build, verify, decode and simulate overlapped-repetition Shor codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a code as JSON")
    p.add_argument("--construction", required=True, choices=builder.TAGS)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int, help="logical qubits (outer)")
    p.add_argument("--t", type=int, help="outer repetition blocks (inner)")
    p.add_argument("--ko", type=int, help="outer logical qubits (double)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="brute-force distance check against the claimed distance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--wmax", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "tabulate",
        help="(error, syndrome) rows; syndrome bit i is generator i in the code file's order",
    )
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--weights", default="1")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_tabulate)

    p = sub.add_parser("census", help="exhaustive decode census at one error weight")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--decoder", default="lookup:1", help="grouped or lookup:WMAX")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("rules", help="grouped rule count vs full table size")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("rates", help="exact asymptotic rate and ratio to the Shor code")
    p.add_argument("--construction", required=True, choices=builder.TAGS)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("simulate", help="Monte Carlo under depolarizing noise, CSV output")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--decoder", default="lookup:1")
    p.add_argument("--p", required=True, help="comma-separated error probabilities")
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help=f"default: ${simulator.THREADS_ENV} or 1")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gain", help="no-error gain factor over a probability grid")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", required=True)
    p.set_defaults(func=cmd_gain)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidParameter, PauliParseError, CapacityError, UnsupportedCode) as exc:
        print(f"overlap-shor {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
