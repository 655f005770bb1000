"""Command-line entry point: ``asymwave {scan,report,verify}``.

Exit codes: 0 success, 1 failed verification, 2 inconclusive or errored
pair, 64 usage error, 74 output file not writable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys

from .bifurcation import classify, csv_columns, report_row, scan_pairs
from .checks import (
    check_depth,
    check_factorization,
    check_gradient,
    check_oracle,
    check_scaling,
)
from .models import MODEL_ALIASES, MODELS, DomainError, get_model

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_IOERR = 74

VERIFY_CHECKS = ("scaling", "factorization", "gradient", "depth", "oracle", "all")

log = logging.getLogger("asymwave")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _model_name(text):
    name = MODEL_ALIASES.get(text, text)
    if name not in MODELS:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}; choose from {', '.join(MODELS)}")
    return name


def _positive(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _fixed_flags(p):
    g = p.add_argument_group("fixed parameters (only those the model uses are read)")
    g.add_argument("--t", type=_positive, help="surface tension T")
    g.add_argument("--d", type=_positive, help="depth d")
    g.add_argument("--g", type=_positive, help="gravity g (babenko-fin)")
    g.add_argument("--kappa", type=_positive, help="wavenumber scale kappa (babenko-fin)")


def _output_flags(p, default_format):
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asymwave", description=(
        "Decide whether small asymmetric periodic traveling waves can bifurcate "
        "from zero at a two-mode kernel."))
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    scan = sub.add_parser("scan", help="classify every pair k1 < k2 <= kmax")
    scan.add_argument("--model", type=_model_name, required=True)
    scan.add_argument("--kmax", type=int, required=True)
    scan.add_argument("--include-noncoprime", action="store_true")
    _fixed_flags(scan)
    _output_flags(scan, "csv")

    rep = sub.add_parser("report", help="classify one pair")
    rep.add_argument("--model", type=_model_name, required=True)
    rep.add_argument("--k1", type=int, required=True)
    rep.add_argument("--k2", type=int, required=True)
    _fixed_flags(rep)
    _output_flags(rep, "json")

    ver = sub.add_parser("verify", help="run invariant checks")
    ver.add_argument("check", choices=VERIFY_CHECKS)
    ver.add_argument("--model", type=_model_name, default="whitham-inf",
                     help="model for factorization, gradient and oracle (default whitham-inf)")
    ver.add_argument("--k1", type=int, default=2)
    ver.add_argument("--k2", type=int, default=3)
    ver.add_argument("--order", type=int, default=3, help="expansion order for the oracle check")
    ver.add_argument("--modes", type=int, help="grid cutoff (default 8 (k1 + k2))")
    ver.add_argument("--seed", type=int, default=0, help="seed for random gradient directions")
    _fixed_flags(ver)
    return parser


def _fixed(model, args, strict=True) -> dict:
    given = {"T": args.t, "d": args.d, "g": args.g, "kappa": args.kappa}
    flag = {"T": "--t", "d": "--d", "g": "--g", "kappa": "--kappa"}
    out = {}
    for name, value in given.items():
        if value is None:
            continue
        if name not in model.fixed_names:
            if not strict:
                continue
            raise UsageError(f"{flag[name]} does not apply to model {model.name}")
        out[name] = value
    return out


def _check_pair(k1, k2):
    if not 1 <= k1 < k2:
        raise UsageError(f"need 1 <= k1 < k2, got k1={k1}, k2={k2}")


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def render_csv(model, reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = csv_columns(model)
    writer.writerow(cols)
    for rep in reports:
        row = report_row(rep)
        writer.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def render_json(reports, single=False) -> str:
    data = [_json_ready(r.to_dict()) for r in reports]
    return json.dumps(data[0] if single else data, indent=2) + "\n"


def _open_out(path):
    # opened before any computation so an unwritable path fails fast
    return None if path is None else open(path, "w", encoding="utf-8", newline="")


def _emit(text, fh):
    if fh is None:
        sys.stdout.write(text)
        return
    with fh:
        fh.write(text)


def cmd_scan(args) -> int:
    if args.kmax < 2:
        raise UsageError(f"--kmax must be at least 2, got {args.kmax}")
    model = get_model(args.model)
    fixed = _fixed(model, args)
    fh = _open_out(args.out)
    reports = scan_pairs(model, args.kmax, fixed, args.include_noncoprime)
    text = render_csv(model, reports) if args.format == "csv" else render_json(reports)
    _emit(text, fh)
    bad = [r for r in reports if r.verdict == "inconclusive"]
    for r in bad:
        log.warning("(%d,%d) inconclusive: %s", r.k1, r.k2, "; ".join(r.diagnostics))
    return EXIT_INCONCLUSIVE if bad else EXIT_OK


def cmd_report(args) -> int:
    _check_pair(args.k1, args.k2)
    model = get_model(args.model)
    fixed = _fixed(model, args)
    fh = _open_out(args.out)
    rep = classify(model, args.k1, args.k2, fixed)
    text = render_csv(model, [rep]) if args.format == "csv" else render_json([rep], single=True)
    _emit(text, fh)
    return EXIT_INCONCLUSIVE if rep.verdict == "inconclusive" else EXIT_OK


def cmd_verify(args) -> int:
    _check_pair(args.k1, args.k2)
    model = get_model(args.model)
    # --d also feeds the depth check, so flags the model ignores are not an error here
    fixed = _fixed(model, args, strict=False)
    k1, k2 = args.k1, args.k2
    names = VERIFY_CHECKS[:-1] if args.check == "all" else (args.check,)
    runners = {
        "scaling": lambda: check_scaling(k1, k2),
        "factorization": lambda: check_factorization(model.name, k1, k2, fixed, n_modes=args.modes),
        "gradient": lambda: check_gradient(model.name, seed=args.seed, k1=k1, k2=k2, fixed=fixed),
        "depth": lambda: check_depth(k1, k2, d=args.d if args.d is not None else 2.0,
                                     T=args.t if args.t is not None else 0.1),
        "oracle": lambda: check_oracle(model.name, k1, k2, fixed, order=args.order,
                                       n_modes=args.modes),
    }
    failed = []
    for name in names:
        try:
            res = runners[name]()
            line, ok = res.line(), res.passed
        except Exception as exc:  # a crashing check is a failing check
            line, ok = f"FAIL {name}: {type(exc).__name__}: {exc}", False
        print(line)
        if not ok:
            failed.append(name)
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"scan": cmd_scan, "report": cmd_report, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"asymwave: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"asymwave: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IOERR


if __name__ == "__main__":
    sys.exit(main())
