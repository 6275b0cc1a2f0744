"""Command-line interface.

    stieltjes eval   --n 500 --mode t2
    stieltjes repro  --table 1
    stieltjes oracle --n 10
    stieltjes bounds --n 100

Exit codes: 0 success, 1 usage error, 2 precision/certification failure,
3 saddle solver failure, 4 table reproduction failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .errors import (
    CertificationError,
    InvalidInputError,
    NoReferenceError,
    PrecisionError,
    SolverError,
)
from .expansion import ExpansionRequest, bounds, default_kmax, evaluate
from .numerics import PrecisionContext, round_to
from .oracle import EMConfig, ORACLE_CEILING, certify_em, reference
from .tables import reproduce

EXIT_OK, EXIT_USAGE, EXIT_PRECISION, EXIT_SOLVER, EXIT_REPRO = 0, 1, 2, 3, 4

log = logging.getLogger("stieltjes")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _value_fields(ls, digits):
    shown = round_to(ls, min(digits, len(ls.digits)))
    return {
        "sign": shown.sign,
        "digits": shown.digits,
        "exponent10": shown.exponent10,
        "text": str(shown),
    }


def _flatten(record, prefix=""):
    out = {}
    for key, val in record.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, name + "."))
        elif isinstance(val, list):
            out[name] = ";".join(
                ":".join(str(v) for v in item.values()) if isinstance(item, dict) else str(item) for item in val
            )
        else:
            out[name] = "" if val is None else val
    return out


def render(record: dict, fmt: str) -> str:
    """Serialize an output record; all formats carry the same strings."""
    if fmt == "json":
        return json.dumps(record, indent=2, sort_keys=False)
    flat = _flatten(record)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(flat.values())
        return buf.getvalue().rstrip("\n")
    width = max(len(k) for k in flat)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in flat.items())


def _rows_render(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    keys = list(rows[0].keys())
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    lines = ["  ".join(k.ljust(widths[k]) for k in keys)]
    lines += ["  ".join(str(r[k]).ljust(widths[k]) for k in keys) for r in rows]
    return "\n".join(lines)


def _fmt_float(x, sig=6):
    return f"{float(x):.{sig}e}"


def cmd_eval(args) -> tuple[dict, int]:
    mode = {"t1": "theorem1", "t2": "theorem2", "leading": "leading"}[args.mode]
    if mode != "theorem1" and args.kmax is not None and args.kmax != 1:
        raise UsageError("--kmax applies to --mode t1 only")
    k_max = args.kmax if args.kmax is not None else (default_kmax(args.n) if mode == "theorem1" else 1)
    alpha = args.alpha
    if alpha is not None and float(alpha) <= 0:
        raise UsageError("--alpha must be positive")
    ctx = PrecisionContext(args.prec)
    req = ExpansionRequest(args.n, args.terms, k_max, mode, alpha, ctx)
    est = evaluate(req, args.digits)
    warnings = list(est.warnings)
    if alpha is None or float(alpha) == 1:
        try:
            ref = reference(args.n, path=args.fixtures)
        except NoReferenceError:
            ref = None
        if ref is not None and ref.value.sign != est.value.sign:
            warnings.append(f"sign disagrees with the {ref.source} reference value {ref.value}")
    if args.n < 10 and mode == "theorem1" and k_max < default_kmax(args.n):
        warnings.append("higher k contributions should be retained at this n")
    record = {
        "request": {
            "n": args.n,
            "alpha": alpha,
            "mode": args.mode,
            "s_max": est.s_max,
            "k_max": est.k_max,
            "precision_bits": est.working_bits,
            "digits": args.digits,
        },
        "value": _value_fields(est.value, args.digits),
        "diagnostics": {
            "cos_factor": _fmt_float(est.cos_factor),
            "per_k": [
                {"k": k, "log10_magnitude": _fmt_float(v.ln_magnitude / 2.302585092994046) if v.sign else "-inf"}
                for k, v in est.per_k
            ],
            "truncation_flag": est.truncation_flag,
            "achieved_digits": None if est.achieved_digits is None else f"{min(est.achieved_digits, 999):.1f}",
            "warnings": warnings,
        },
    }
    if est.hurwitz_cn is not None:
        record["diagnostics"]["hurwitz_C_n"] = _value_fields(est.hurwitz_cn, args.digits)["text"]
    return record, EXIT_OK


def cmd_repro(args) -> tuple[list, int]:
    ctx = PrecisionContext(args.prec)
    tables = [1, 2, 3, 4] if args.table == "all" else [int(args.table)]
    rows = []
    for t in tables:
        for e in reproduce(t, ctx, args.fixtures):
            rows.append(
                {
                    "table": e.table,
                    "entry": e.key,
                    "computed": e.computed,
                    "printed": e.printed,
                    "deviation": e.deviation,
                    "status": "pass" if e.passed else "FAIL",
                }
            )
    failed = [r for r in rows if r["status"] != "pass"]
    return rows, (EXIT_REPRO if failed else EXIT_OK)


def cmd_oracle(args) -> tuple[dict, int]:
    if args.n > ORACLE_CEILING and not args.force:
        raise UsageError(f"--n above the oracle ceiling {ORACLE_CEILING}; pass --force to run anyway")
    alpha = args.alpha if args.alpha is not None else "1"
    if float(alpha) <= 0:
        raise UsageError("--alpha must be positive")
    ctx = PrecisionContext(args.prec)
    base = EMConfig.for_n(args.n, ctx)
    cfg = EMConfig(args.m or base.m, args.order or base.R, ctx)
    res = certify_em(args.n, alpha, cfg, digits=args.digits)
    record = {
        "request": {"n": args.n, "alpha": alpha, "m": cfg.m, "order": cfg.R, "precision_bits": args.prec},
        "value": _value_fields(res.value, args.digits),
        "diagnostics": {
            "check_m": res.check_config.m,
            "check_order": res.check_config.R,
            "certification_delta": _fmt_float(res.delta, 3),
            "achieved_digits": f"{min(res.achieved_digits, 999):.1f}",
        },
    }
    return record, EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    ctx = PrecisionContext(args.prec)
    rep = bounds(args.n, ctx)
    record = {
        "request": {"n": args.n},
        "bounds": {
            "berndt": _value_fields(rep.berndt, args.digits)["text"],
            "zhang_williams": _value_fields(rep.zhang_williams, args.digits)["text"],
            "matsuoka": None if rep.matsuoka is None else _value_fields(rep.matsuoka, args.digits)["text"],
            "lambda_n": ctx.mp.nstr(rep.lambda_n, args.digits),
        },
    }
    return record, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stieltjes", description="Asymptotic evaluation of the Stieltjes constants.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    common = _Parser(add_help=False)
    common.add_argument("--prec", type=int, default=256, help="base working precision in bits")
    common.add_argument("--digits", type=int, default=12, help="output digits")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--fixtures", default=None, help="reference fixture file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate gamma_n or gamma_n(alpha)")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--terms", type=int, default=6, help="truncation index s_max")
    e.add_argument("--kmax", type=int, default=None)
    e.add_argument("--mode", choices=("leading", "t1", "t2"), default="t1")
    e.add_argument("--alpha", default=None)
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("repro", parents=[common], help="recompute a published table")
    r.add_argument("--table", choices=("1", "2", "3", "4", "all"), required=True)
    r.set_defaults(func=cmd_repro)

    o = sub.add_parser("oracle", parents=[common], help="Euler-Maclaurin brute-force value")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--alpha", default=None)
    o.add_argument("--m", type=int, default=None, help="summation cutoff")
    o.add_argument("--order", type=int, default=None, help="number of Bernoulli correction terms")
    o.add_argument("--force", action="store_true", help="allow n above the oracle ceiling")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", parents=[common], help="classical upper bounds for |gamma_n|")
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < (0 if args.command == "oracle" else 1):
        parser.error("--n out of range")
    if args.digits < 1 or args.prec < 64:
        parser.error("--digits must be >= 1 and --prec >= 64")
    try:
        out, code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except NoReferenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REPRO
    text = _rows_render(out, args.format) if isinstance(out, list) else render(out, args.format)
    print(text)
    if code == EXIT_REPRO:
        failed = [r["entry"] for r in out if r["status"] != "pass"]
        print(f"{len(failed)} failing entries: {', '.join(failed)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
