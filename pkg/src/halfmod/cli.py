"""Command line front end.

    halfmod series --form eta --eta 1:2,2:-1 --N 20
    halfmod traces --m 1 --max-d 100 --output csv
    halfmod hurwitz --X 100
    halfmod overpartitions --N 50 --p 5
    halfmod tally --seq overpartitions --p 7 --X 1000
    halfmod scan-primes --p 5 --Q-bound 500
    halfmod verify --p 5 --quick
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import traceback
import warnings
from pathlib import Path

from .arith import is_prime
from .errors import HalfmodError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3


def _prime(text: str) -> int:
    p = int(text)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"bound must be positive, got {n}")
    return n


def _eta_spec(text: str) -> dict[int, int]:
    try:
        pairs = [item.split(":") for item in text.split(",") if item]
        return {int(d): int(r) for d, r in pairs}
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected delta:r pairs like 1:2,2:-1, got {text!r}") from None


def _emit(rows: list[dict], fmt: str, meta: dict | None = None) -> str:
    if fmt == "json":
        payload = {"rows": rows} if meta is None else {**meta, "rows": rows}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------


def cmd_series(args) -> int:
    from .classnum import r3_series
    from .moduli import h1p_series, h_series
    from .partitions import g_twist_series, overpartition_series
    from .qseries import delta_series, eisenstein, eta_quotient, jacobi_theta

    N = args.N
    form = args.form
    if form == "eta":
        if not args.eta:
            raise HalfmodError("--form eta needs --eta, e.g. --eta 1:2,2:-1")
        f = eta_quotient(args.eta, N)
    elif form == "eisenstein":
        f = eisenstein(args.k, N)
    elif form == "theta":
        f = jacobi_theta(N)
    elif form == "r3":
        f = r3_series(N)
    elif form == "delta":
        f = delta_series(N)
    elif form == "h":
        f = h_series(N)
    elif form == "overpartitions":
        f = overpartition_series(N)
    elif form in ("h1p", "g-twist"):
        if args.p is None:
            raise HalfmodError(f"--form {form} needs --p")
        f = h1p_series(args.p, N) if form == "h1p" else g_twist_series(args.p, N)
    else:  # pragma: no cover - argparse restricts choices
        raise HalfmodError(form)
    if args.p is not None and f.ring.kind != "GF":
        f = f.reduce(args.p)
    rows = [{"n": n, "coeff": str(c)} for n, c in f.items()]
    meta = {"form": form, "ring": str(f.ring), "precision": f.prec}
    sys.stdout.write(_emit(rows, args.output, meta))
    return EXIT_OK


def cmd_traces(args) -> int:
    from .moduli import trace_table

    ms = args.m or [1]
    table = trace_table(ms, args.max_d, numeric=args.method == "numeric")
    rows = []
    for d, *vals, resid in table:
        row = {"d": d}
        row.update({f"t_{m}": v for m, v in zip(ms, vals)})
        row["residual"] = f"{resid:.3e}"
        rows.append(row)
    sys.stdout.write(_emit(rows, args.output, {"method": args.method, "m": ms, "max_d": args.max_d}))
    return EXIT_OK


def cmd_hurwitz(args) -> int:
    from .classnum import HurwitzValue, hurwitz_from_r3, hurwitz_table
    from .errors import HurwitzUnreachable

    six = hurwitz_table(args.X) if args.method == "forms" else None
    rows = []
    for n in range(3, args.X + 1):
        if n % 4 not in (0, 3):
            continue
        if six is not None:
            v = HurwitzValue(six[n])
        else:
            try:
                v = hurwitz_from_r3(n)
            except HurwitzUnreachable:
                rows.append({"n": n, "six_H": "", "H": "unreachable"})
                continue
        rows.append({"n": n, "six_H": v.six_times, "H": v.display()})
    sys.stdout.write(_emit(rows, args.output, {"method": args.method, "X": args.X}))
    return EXIT_OK


def cmd_overpartitions(args) -> int:
    from .partitions import overpartition_series

    W = overpartition_series(args.N)
    rows = []
    for n, c in W.items():
        row = {"n": n, "pbar": str(c)}
        if args.p is not None:
            row[f"mod_{args.p}"] = c % args.p
        rows.append(row)
    sys.stdout.write(_emit(rows, args.output, {"N": args.N}))
    return EXIT_OK


def cmd_tally(args) -> int:
    from .dist import hurwitz_tally, overpartition_tally, trace_tally

    kw = {"gcd_filter": args.gcd_filter, "c": args.c}
    allow = not args.enforce_hypothesis
    if args.seq == "traces":
        rep = trace_tally(args.p, args.X, allow_any_p=allow, **kw)
    elif args.seq == "hurwitz":
        rep = hurwitz_tally(args.p, args.X, **kw)
    else:
        rep = overpartition_tally(args.p, args.X, allow_any_p=allow, **kw)
    sys.stdout.write(rep.to_csv() if args.output == "csv" else rep.to_json() + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    from .checks import scan_theta_cubed

    if args.p != 5 and not args.allow_any_p:
        raise HalfmodError("the scan target theta^(p-1)(T^3) is set up for p = 5; pass --allow-any-p to try others")
    res = scan_theta_cubed(args.p, args.Q_bound, args.depth)
    rows = [{"mode": mode, "Q": Q} for mode in ("annihilate", "double") for Q in res[mode]]
    sys.stdout.write(_emit(rows, args.output, {"p": args.p, "Q_bound": args.Q_bound, "depth": args.depth}))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import run_suite

    failed = 0
    results = []
    for r in run_suite(args.p, quick=args.quick, strict=args.strict):
        results.append(r)
        if args.output == "text":
            print(r.line(), flush=True)
        if r.hard and not r.ok:
            failed += 1
    if args.output == "json":
        payload = [{"name": r.name, "ok": r.ok, "hard": r.hard, "detail": r.detail} for r in results]
        sys.stdout.write(json.dumps({"p": args.p, "quick": args.quick, "checks": payload, "failed": failed},
                                    sort_keys=True, indent=2) + "\n")
    else:
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"halfmod: warning: {message}", file=sys.stderr)


def _provenance(exc: BaseException) -> str:
    """Name of the innermost halfmod module in the traceback."""
    here = Path(__file__).parent
    mod = "cli"
    for frame in traceback.extract_tb(exc.__traceback__):
        path = Path(frame.filename)
        if path.parent == here:
            mod = path.stem
    return mod


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="halfmod", description="q-series, traces, class numbers and overpartitions mod p")
    sub = ap.add_subparsers(dest="command", required=True)

    def out(sp, choices=("csv", "json"), default="csv"):
        sp.add_argument("--output", choices=choices, default=default)

    sp = sub.add_parser("series", help="print a q-expansion")
    sp.add_argument("--form", required=True,
                    choices=["eta", "eisenstein", "theta", "r3", "delta", "h", "overpartitions", "h1p", "g-twist"])
    sp.add_argument("--N", type=_positive, default=50, help="precision: coefficients below q^N")
    sp.add_argument("--eta", type=_eta_spec, help="eta quotient as delta:r pairs, e.g. 1:2,2:-1")
    sp.add_argument("--k", type=int, default=4, help="Eisenstein weight")
    sp.add_argument("--p", type=_prime, help="reduce mod p")
    out(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("traces", help="traces of singular moduli t_m(d)")
    sp.add_argument("--m", type=_positive, action="append", help="Hecke index, repeatable (squarefree)")
    sp.add_argument("--max-d", type=_positive, default=100)
    sp.add_argument("--method", choices=["numeric", "series"], default="numeric")
    out(sp)
    sp.set_defaults(func=cmd_traces)

    sp = sub.add_parser("hurwitz", help="Hurwitz class numbers H(-n)")
    sp.add_argument("--X", type=_positive, default=100)
    sp.add_argument("--method", choices=["forms", "r3"], default="forms")
    out(sp)
    sp.set_defaults(func=cmd_hurwitz)

    sp = sub.add_parser("overpartitions", help="overpartition counts")
    sp.add_argument("--N", type=_positive, default=50)
    sp.add_argument("--p", type=_prime)
    out(sp)
    sp.set_defaults(func=cmd_overpartitions)

    sp = sub.add_parser("tally", help="residue tally with conformance data")
    sp.add_argument("--seq", choices=["traces", "hurwitz", "overpartitions"], required=True)
    sp.add_argument("--p", type=_prime, required=True)
    sp.add_argument("--X", type=_positive, default=2000)
    sp.add_argument("--c", type=float, default=0.01)
    sp.add_argument("--gcd-filter", action="store_true")
    sp.add_argument("--enforce-hypothesis", action="store_true",
                    help="reject p != 2 (mod 3) for traces and overpartitions instead of warning")
    out(sp, default="json")
    sp.set_defaults(func=cmd_tally)

    sp = sub.add_parser("scan-primes", help="primes Q with g | T(Q^2) = 0 or 2g mod p, g = theta^(p-1)(T^3)")
    sp.add_argument("--p", type=_prime, default=5)
    sp.add_argument("--Q-bound", type=_positive, default=500)
    sp.add_argument("--depth", type=_positive, default=50)
    sp.add_argument("--allow-any-p", action="store_true")
    out(sp, default="json")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--p", type=_prime, default=5)
    sp.add_argument("--quick", action="store_true", help="X = 2000 instead of 10^4")
    sp.add_argument("--strict", action="store_true", help="fail on H(-n) values not recoverable from r_3")
    out(sp, choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "p", None) is not None and args.p < 5 and args.command != "series":
        print(f"halfmod: error: --p must be >= 5, got {args.p}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _show_warning
            return args.func(args)
    except (HalfmodError, ValueError) as exc:
        print(f"halfmod: {type(exc).__name__} in {_provenance(exc)}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
