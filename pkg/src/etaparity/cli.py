"""Command-line interface.

Every subcommand prints a flat CSV (default) or JSON document so runs can
be scripted and diffed; identical invocations produce byte-identical
output regardless of the thread-count hint.  Exit codes: 0 success,
2 usage error, 3 domain error (non-unit denominator, bound past a series
truncation, exact-count overflow).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from . import etaq, parity, quadform
from .errors import (
    BoundExceedsTruncationError,
    CountOverflowError,
    EtaParityError,
    EtaSyntaxError,
    NotAUnitError,
)

_DOMAIN_ERRORS = (NotAUnitError, BoundExceedsTruncationError, CountOverflowError)


@dataclass
class RunConfig:
    output_format: str = "csv"
    output_path: str | None = None
    thread_count: int | None = None


def _parse_int(text: str) -> int:
    """Exact integer, with scientific notation (1e6) normalized."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise ValueError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value():
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _parse_checkpoints(text: str) -> list[int]:
    return [_parse_int(part) for part in text.split(",") if part]


def _parse_expr(text: str) -> etaq.EtaQuotientSpec:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise EtaSyntaxError(f"bad quotient JSON: {exc}") from None
        return etaq.EtaQuotientSpec.from_json_dict(data)
    return etaq.parse(text)


def _fraction_str(value) -> str:
    return str(value)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_expand(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    series = etaq.expand(spec, args.trunc)
    if args.sparse:
        degrees = [int(d) for d in series.odd_degrees()]
        if cfg.output_format == "json":
            return _json_text(degrees)
        return ",".join(str(d) for d in degrees) + "\n"
    bits = series.bits()
    if cfg.output_format == "json":
        return _json_text([{"degree": n, "bit": int(bits[n])} for n in range(len(bits))])
    lines = ["degree,bit"]
    lines.extend(f"{n},{bits[n]}" for n in range(len(bits)))
    return "\n".join(lines) + "\n"


def _cmd_count(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    series = etaq.expand(spec, args.max)
    result = parity.count_parity(
        series, args.mod, args.res, args.max, threads=cfg.thread_count
    )
    if cfg.output_format == "json":
        return _json_text(
            {
                "a": result.a,
                "b": result.b,
                "x": result.x,
                "even": result.even_count,
                "odd": result.odd_count,
            }
        )
    return (
        "a,b,x,even,odd\n"
        f"{result.a},{result.b},{result.x},{result.even_count},{result.odd_count}\n"
    )


def _report_text(report: parity.ScanReport, cfg: RunConfig) -> str:
    if cfg.output_format == "json":
        return _json_text(report.to_json_obj())
    return report.to_csv()


def _cmd_growth(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    report = parity.growth_scan(
        spec, args.mod, args.res, args.checkpoints, threads=cfg.thread_count
    )
    return _report_text(report, cfg)


def _cmd_density(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    trunc = max(args.checkpoints) if args.checkpoints else 0
    series = etaq.expand(spec, trunc)
    report = parity.density_scan(series, args.checkpoints, threads=cfg.thread_count)
    return _report_text(report, cfg)


def _cmd_lacunarity(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    verdict = etaq.check_lacunarity(spec)
    min_d = etaq.minimal_d(spec, args.mod) if args.mod is not None else None
    satisfied = "true" if verdict.satisfied else "false"
    if cfg.output_format == "json":
        obj = {
            "spec": spec.to_json_dict(),
            "weight_sum": _fraction_str(verdict.weight_sum),
            "level_sum": verdict.level_sum,
            "satisfied": verdict.satisfied,
            "deficit": _fraction_str(verdict.deficit),
        }
        if min_d is not None:
            obj["minimal_d"] = min_d
        return _json_text(obj)
    if min_d is not None:
        return (
            "weight_sum,level_sum,satisfied,deficit,minimal_d\n"
            f"{verdict.weight_sum},{verdict.level_sum},{satisfied},"
            f"{verdict.deficit},{min_d}\n"
        )
    return (
        "weight_sum,level_sum,satisfied,deficit\n"
        f"{verdict.weight_sum},{verdict.level_sum},{satisfied},{verdict.deficit}\n"
    )


def _cmd_verify_identity2(args, cfg: RunConfig) -> str:
    spec = _parse_expr(args.expr)
    mismatch = parity.product_identity_mismatch(
        spec, args.mod, args.res, args.d, args.trunc
    )
    ok = mismatch is None
    if cfg.output_format == "json":
        return _json_text({"ok": ok, "mismatch_degree": mismatch})
    return "ok,mismatch_degree\n" + (
        "true,\n" if ok else f"false,{mismatch}\n"
    )


def _cmd_rdn(args, cfg: RunConfig) -> str:
    if args.ap is not None:
        c, r = args.ap
        odd = quadform.odd_rep_count(
            args.d, args.max, ap=(c, r), threads=cfg.thread_count
        )
        if cfg.output_format == "json":
            return _json_text(
                {"d": args.d, "max": args.max, "c": c, "r": r, "odd_count": odd}
            )
        return f"d,max,c,r,odd_count\n{args.d},{args.max},{c},{r},{odd}\n"
    table = quadform.rep_counts(args.d, args.max, exact=args.exact)
    if cfg.output_format == "json":
        return _json_text(table.to_json_obj())
    return table.to_csv()


def _cmd_probe_equivalence(args, cfg: RunConfig) -> str:
    mismatch = quadform.probe_power_equivalence(args.d, args.max)
    equal = mismatch is None
    if cfg.output_format == "json":
        return _json_text({"equal": equal, "first_mismatch": mismatch})
    return "equal,first_mismatch\n" + (
        "true,\n" if equal else f"false,{mismatch}\n"
    )


_HANDLERS = {
    "expand": _cmd_expand,
    "count": _cmd_count,
    "growth": _cmd_growth,
    "density": _cmd_density,
    "lacunarity": _cmd_lacunarity,
    "verify-identity2": _cmd_verify_identity2,
    "rdn": _cmd_rdn,
    "probe-equivalence": _cmd_probe_equivalence,
}


def _int_arg(text: str) -> int:
    try:
        return _parse_int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _checkpoints_arg(text: str) -> list[int]:
    try:
        return _parse_checkpoints(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ap_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected c,r")
    try:
        return _parse_int(parts[0]), _parse_int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etaparity",
        description="Parity analysis of eta-quotient coefficient series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument(
            "--threads",
            type=_int_arg,
            default=None,
            help=f"worker hint; env {parity.THREADS_ENV_VAR} overrides",
        )

    p = sub.add_parser("expand", help="coefficient parity dump of a quotient")
    p.add_argument("--expr", required=True)
    p.add_argument("--trunc", type=_int_arg, required=True)
    p.add_argument("--sparse", action="store_true", help="odd degrees only")
    common(p)

    p = sub.add_parser("count", help="even/odd tallies over a progression")
    p.add_argument("--expr", required=True)
    p.add_argument("--mod", type=_int_arg, required=True)
    p.add_argument("--res", type=_int_arg, required=True)
    p.add_argument("--max", type=_int_arg, required=True)
    common(p)

    p = sub.add_parser("growth", help="even-count / sqrt(x) trajectory")
    p.add_argument("--expr", required=True)
    p.add_argument("--mod", type=_int_arg, required=True)
    p.add_argument("--res", type=_int_arg, required=True)
    p.add_argument("--checkpoints", type=_checkpoints_arg, required=True)
    common(p)

    p = sub.add_parser("density", help="odd-density checkpoints")
    p.add_argument("--expr", required=True)
    p.add_argument("--checkpoints", type=_checkpoints_arg, required=True)
    common(p)

    p = sub.add_parser("lacunarity", help="sparseness criterion verdict")
    p.add_argument("--expr", required=True)
    p.add_argument("--mod", type=_int_arg, default=None)
    common(p)

    p = sub.add_parser(
        "verify-identity2",
        help="check the comb-splitting product identity on both sides",
    )
    p.add_argument("--expr", required=True)
    p.add_argument("--mod", type=_int_arg, required=True)
    p.add_argument("--res", type=_int_arg, required=True)
    p.add_argument("--d", type=_int_arg, required=True)
    p.add_argument("--trunc", type=_int_arg, required=True)
    common(p)

    p = sub.add_parser("rdn", help="representation count table / odd summary")
    p.add_argument("--d", type=_int_arg, required=True)
    p.add_argument("--max", type=_int_arg, required=True)
    p.add_argument("--exact", action="store_true", help="exact 64-bit counts")
    p.add_argument("--ap", type=_ap_arg, default=None, help="progression c,r")
    common(p)

    p = sub.add_parser(
        "probe-equivalence",
        help="representation parity vs pentagonal power parity",
    )
    p.add_argument("--d", type=_int_arg, required=True)
    p.add_argument("--max", type=_int_arg, required=True)
    common(p)

    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if getattr(args, "trunc", None) is not None and args.trunc < 0:
        parser.error("--trunc must be >= 0")
    if getattr(args, "max", None) is not None and args.max < 0:
        parser.error("--max must be >= 0")
    if getattr(args, "mod", None) is not None and args.mod < 1:
        parser.error("--mod must be >= 1")
    res = getattr(args, "res", None)
    if res is not None and not 0 <= res < args.mod:
        parser.error("--res must satisfy 0 <= res < mod")
    if getattr(args, "d", None) is not None and args.d < 0:
        parser.error("--d must be >= 0")
    if args.command in ("rdn", "probe-equivalence") and args.d < 1:
        parser.error("--d must be >= 1")
    ap = getattr(args, "ap", None)
    if ap is not None and not 0 <= ap[1] < ap[0]:
        parser.error("--ap residue must satisfy 0 <= r < c")
    threads = getattr(args, "threads", None)
    if threads is not None and threads < 1:
        parser.error("--threads must be >= 1")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    cfg = RunConfig(
        output_format=args.format,
        output_path=args.output,
        thread_count=args.threads,
    )
    handler = _HANDLERS[args.command]
    try:
        text = handler(args, cfg)
    except EtaSyntaxError as exc:
        parser.error(f"bad --expr: {exc}")
    except _DOMAIN_ERRORS as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 3
    except EtaParityError as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        parser.error(str(exc))
    if cfg.output_path is None or cfg.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
