"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
usage errors.  JSON output is deterministic; timings are only included
with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Optional, Sequence

from . import coweights as cw
from .alcoves import Alcove, InvalidAlcove, enumerate_permissible, is_permissible
from .global_gr import build_convolution_witness
from .minuscule import evaluation_at_zero, verify_degeneration
from .orders import b_step, delta_sequence, descend
from .suites import SUITES, main_theorem_chain, run_suite

SCHEMA_PREFIX = "schubert-lab"


class UsageError(Exception):
    pass


def _schema(name: str) -> str:
    return f"{SCHEMA_PREFIX}/{name}/v1"


def parse_coweight(text: str) -> tuple[int, ...]:
    try:
        return cw.coweight(int(a) for a in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad coweight {text!r}: expected comma-separated integers") from exc


def parse_shard(text: str) -> tuple[int, int]:
    try:
        i, m = (int(a) for a in text.split("/"))
    except ValueError as exc:
        raise UsageError(f"bad shard {text!r}: expected i/m") from exc
    if m < 1 or not 0 <= i < m:
        raise UsageError(f"bad shard {text!r}: need 0 <= i < m")
    return i, m


def _dominant(lam: tuple[int, ...], n: Optional[int]) -> tuple[int, ...]:
    if n is not None and len(lam) != n:
        raise UsageError(f"--lambda has rank {len(lam)} but -n is {n}")
    if not cw.is_dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    return lam


def _read_input(args) -> dict[str, Any]:
    """JSON input from ``--input`` (path or '-') merged with explicit flags."""
    data: dict[str, Any] = {}
    if args.input:
        try:
            text = sys.stdin.read() if args.input == "-" else open(args.input).read()
            data = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read input: {exc}") from exc
    if args.alcove:
        try:
            data["alcove"] = json.loads(args.alcove)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad --alcove JSON: {exc}") from exc
    if args.lam:
        data["lambda"] = list(parse_coweight(args.lam))
    for key in ("t", "k"):
        if getattr(args, key, None) is not None:
            data[key] = getattr(args, key)
    return data


def _alcove(data: dict[str, Any]) -> Alcove:
    if "alcove" not in data:
        raise UsageError("missing alcove")
    try:
        return Alcove(tuple(tuple(t) for t in data["alcove"]))
    except (InvalidAlcove, TypeError, ValueError) as exc:
        raise UsageError(f"invalid alcove: {exc}") from exc


def _int_field(data: dict[str, Any], key: str) -> int:
    if key not in data:
        raise UsageError(f"missing {key}")
    try:
        return int(data[key])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad {key}: {data[key]!r}") from exc


def _emit(obj: dict[str, Any], out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# -- subcommands -----------------------------------------------------------

def cmd_enumerate(args, out) -> int:
    lam = _dominant(parse_coweight(args.lam), args.n)
    shard = parse_shard(args.shard)
    alcoves = enumerate_permissible(lam, shard)
    if args.format == "csv":
        n = len(lam)
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"x{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)])
        for x in alcoves:
            w.writerow([a for t in x.terms for a in t])
        w.writerow(["count", len(alcoves)])
    else:
        _emit({
            "schema": _schema("enumerate"),
            "n": len(lam),
            "lambda": list(lam),
            "shard": f"{shard[0]}/{shard[1]}",
            "alcoves": [x.to_json() for x in alcoves],
            "count": len(alcoves),
        }, out)
    return 0


def cmd_verify(args, out) -> int:
    if args.n is None:
        raise UsageError("verify needs -n")
    if args.n < 1:
        raise UsageError("-n must be positive")
    report = run_suite(
        args.suite, args.n, args.max_entry, args.seed, parse_shard(args.shard), timing=args.timing
    )
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["suite", "n", "instances", "failures", "passed"])
        w.writerow([report.suite, report.n, report.instances, len(report.failures), report.passed])
        for f in report.failures:
            w.writerow(["failure", json.dumps(f["input"]), f["check"], f["detail"]])
    else:
        _emit({"schema": _schema("verification-report"), **report.to_json()}, out)
    return 0 if report.passed else 1


def cmd_descend(args, out) -> int:
    data = _read_input(args)
    x = _alcove(data)
    lam = _dominant(tuple(data.get("lambda", ())), x.n) if "lambda" in data else None
    if lam is None:
        raise UsageError("missing lambda")
    t = _int_field(data, "t")
    if not 1 <= t <= x.n - 1:
        raise UsageError(f"t={t} outside [1, {x.n - 1}]")
    if lam[t - 1] <= lam[t]:
        raise UsageError(f"lambda - varpi_{t} is not dominant")
    if not is_permissible(x, lam):
        raise UsageError(f"{x} is not {lam}-permissible")
    y = descend(x, lam, t)
    deltas = delta_sequence(x)
    bs = [b_step(x, t, k) for k in range(1, x.n + 1)]
    checks = {
        "y_permissible": is_permissible(y, cw.sub(lam, cw.fundamental(t, x.n))),
        "b_steps": all(
            y.term(k + 1) == cw.add(y.term(k), cw.unit(b, x.n)) for k, b in enumerate(bs, start=1)
        ),
    }
    _emit({
        "schema": _schema("descend"),
        "x": x.to_json(),
        "lambda": list(lam),
        "t": t,
        "y": y.to_json(),
        "delta_sequence": [list(d) for d in deltas],
        "b_steps": bs,
        "checks": checks,
        "passed": all(checks.values()),
    }, out)
    return 0 if all(checks.values()) else 1


def cmd_witness(args, out) -> int:
    data = _read_input(args)
    x = _alcove(data)
    if "lambda" not in data:
        raise UsageError("missing lambda")
    lam = _dominant(tuple(data["lambda"]), x.n)
    k = _int_field(data, "k")
    if not 1 <= k <= x.n - 1 or lam[k - 1] <= lam[k]:
        raise UsageError(f"lambda - varpi_{k} is not dominant")
    if not is_permissible(x, lam):
        raise UsageError(f"{x} is not {lam}-permissible")
    wit = build_convolution_witness(x, lam, k, strict=False)
    _emit({"schema": _schema("witness"), **wit.to_json()}, out)
    return 0 if wit.passed else 1


def cmd_degenerate(args, out) -> int:
    data = _read_input(args)
    x = _alcove(data)
    t = _int_field(data, "t")
    if not 1 <= t <= x.n - 1:
        raise UsageError(f"t={t} outside [1, {x.n - 1}]")
    if not is_permissible(x, cw.fundamental(t, x.n)):
        raise UsageError(f"{x} is not varpi_{t}-permissible")
    report = verify_degeneration(x, t, seed=args.seed)
    if args.emit_latex:
        if report.family is not None:
            out.write(report.family.latex() + "\n")
            for i in range(1, x.n + 2):
                rows = evaluation_at_zero(report.family, i)
                out.write(
                    f"% evaluation at u = 0 of the twisted A^({i}): "
                    + json.dumps([[str(a) for a in r] for r in rows])
                    + "\n"
                )
    else:
        _emit({"schema": _schema("degenerate"), **report.to_json(include_family=True)}, out)
    return 0 if report.passed else 1


def cmd_chain(args, out) -> int:
    lam = _dominant(parse_coweight(args.lam), args.n)
    cert = main_theorem_chain(lam, args.seed, parse_shard(args.shard))
    _emit({"schema": _schema("chain"), **cert}, out)
    return 0 if cert["passed"] else 1


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, help="rank")
    common.add_argument("--lambda", dest="lam", help="dominant coweight, e.g. 2,1,0")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled points")
    common.add_argument("--shard", default="0/1", help="run only part i of m")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    io_args = argparse.ArgumentParser(add_help=False)
    io_args.add_argument("--input", help="JSON input file, or - for stdin")
    io_args.add_argument("--alcove", help="alcove as a JSON list of terms")

    parser = _Parser(prog="schubert-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list lambda-permissible alcoves")
    p.set_defaults(func=cmd_enumerate, needs_lambda=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-entry", type=int, default=2, help="coweight entries range over [0, max-entry]")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_verify, needs_lambda=False)

    p = sub.add_parser("descend", parents=[common, io_args], help="descend an alcove along varpi_t")
    p.add_argument("--t", type=int)
    p.set_defaults(func=cmd_descend, needs_lambda=False)

    p = sub.add_parser("witness", parents=[common, io_args], help="build a convolution witness")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_witness, needs_lambda=False)

    p = sub.add_parser("degenerate", parents=[common, io_args], help="emit a degeneration family")
    p.add_argument("--t", type=int)
    p.add_argument("--emit-latex", action="store_true")
    p.set_defaults(func=cmd_degenerate, needs_lambda=False)

    p = sub.add_parser("chain", parents=[common], help="main-theorem certificate for lambda")
    p.set_defaults(func=cmd_chain, needs_lambda=True)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.needs_lambda and not args.lam:
            raise UsageError(f"{args.command} needs --lambda")
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"schubert-lab: error: {exc}\n")
        return 2
    except cw.NotDominant as exc:
        sys.stderr.write(f"schubert-lab: error: {exc}\n")
        return 2
    except BrokenPipeError:
        # the reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()
