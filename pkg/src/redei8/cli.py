"""Command-line interface: ``redei8 field|scan|classify-form|nullity-set``.

Exit codes: 0 consistent, 1 a field violated a checked identity, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from multiprocessing import Pool
from typing import Sequence

from .quadform import I, O, X, Y, QuadForm, classify, direct_sum_all, nullity_set
from .redei import FieldError, max_abs_delta, validate_field
from .report import FieldReport, field_report, iter_fields

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _parse_primes(text: str) -> list[int]:
    try:
        primes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"cannot parse prime list {text!r}") from None
    if not primes or any(p <= 0 for p in primes):
        raise UsageError(f"primes must be positive integers, got {text!r}")
    return primes


def parse_form(text: str) -> QuadForm:
    """A form given by names (``X+Y+O2+I``) or by upper-triangular rows (``01,00``)."""
    text = text.strip()
    if text and all(ch in "01,;/ " for ch in text):
        rows = [r for r in text.replace(";", ",").replace("/", ",").split(",") if r.strip()]
        coeffs = [[int(ch) for ch in r.strip()] for r in rows]
        try:
            return QuadForm.from_lists(coeffs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    parts = []
    for tok in text.replace(" ", "").split("+"):
        if tok in ("X", "Y", "I"):
            parts.append({"X": X, "Y": Y, "I": I}[tok])
        elif tok.startswith("O") and tok[1:].isdigit():
            parts.append(O(int(tok[1:])))
        else:
            raise UsageError(f"unknown form component {tok!r} (use X, Y, I, O<n> or 0/1 rows)")
    return direct_sum_all(parts)


def _print_report(rep: FieldReport, out) -> None:
    print(f"primes      {','.join(map(str, rep.primes))}", file=out)
    print(f"delta       {rep.delta}", file=out)
    print(f"r2 r4 r8    {rep.r2} {rep.r4} {rep.r8}", file=out)
    print(f"rho         {rep.rho}", file=out)
    print(f"predicted   {{{', '.join(map(str, rep.predicted))}}}", file=out)
    print(f"Q diagonal  {list(rep.qb_diagonal)}", file=out)
    print(f"B matrix    {[list(r) for r in rep.b_matrix]}", file=out)
    if rep.oracle is not None:
        o = rep.oracle
        print(f"oracle      h={o.h} r2={o.r2} r4={o.r4} r8={o.r8} 2-part={list(o.elementary_divisor_2part)}", file=out)
    print(f"consistent  {'yes' if rep.consistent else 'NO'}", file=out)


def cmd_field(args) -> int:
    f = validate_field(_parse_primes(args.primes))
    rep = field_report(f, with_oracle=args.oracle)
    if args.json:
        print(rep.to_json())
    else:
        _print_report(rep, sys.stdout)
    if not rep.consistent:
        print(f"inconsistent field: {list(rep.primes)}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def _scan_one(item):
    primes, with_oracle = item
    return field_report(validate_field(primes), with_oracle=with_oracle).to_json()


def cmd_scan(args) -> int:
    bound = max_abs_delta()
    if args.max_abs_delta > bound:
        raise UsageError(f"--max-abs-delta {args.max_abs_delta} exceeds the bound {bound} (REDEI8_MAX_DELTA)")
    t = None if args.t == "all" else int(args.t)
    items = [(f.primes, args.oracle) for f in iter_fields(args.max_abs_delta, t)]
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    cells: Counter = Counter()
    bad = []
    try:
        if args.jobs > 1:
            with Pool(args.jobs) as pool:
                lines = pool.imap(_scan_one, items, chunksize=max(1, len(items) // (args.jobs * 16)))
                _drain(lines, out, cells, bad)
        else:
            _drain(map(_scan_one, items), out, cells, bad)
    finally:
        if args.out:
            out.close()
    summary = sys.stderr if not args.out else sys.stdout
    print(f"fields: {len(items)}", file=summary)
    for (r4, r8), n in sorted(cells.items()):
        print(f"  r4={r4} r8={r8}: {n}", file=summary)
    print(f"inconsistent: {len(bad)}", file=summary)
    for rep in bad:
        print(f"  {rep.to_json()}", file=summary)
    return EXIT_INCONSISTENT if bad else EXIT_OK


def _drain(lines, out, cells, bad) -> None:
    for line in lines:
        out.write(line + "\n")
        rep = FieldReport.from_json(line)
        cells[(rep.r4, rep.r8)] += 1
        if not rep.consistent:
            bad.append(rep)


def cmd_classify_form(args) -> int:
    q = parse_form(args.coeffs)
    c = classify(q)
    record = {
        "n": c.n,
        "rank": c.rank,
        "defect": c.defect,
        "k": c.k,
        "type": c.form_type.value,
        "arf": c.arf,
        "rho": c.rho,
        "zero_count": c.zero_count,
    }
    if args.json:
        print(json.dumps(record))
    else:
        for key, val in record.items():
            print(f"{key:<11}{'undefined' if val is None else val}")
    return EXIT_OK


def cmd_nullity_set(args) -> int:
    try:
        s = nullity_set(args.rho, args.r, args.x)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("{" + ", ".join(map(str, sorted(s))) + "}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="redei8", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="ranks and prediction for one field")
    p.add_argument("primes", help="comma-separated primes, the one = 3 mod 4 last (e.g. 13,3)")
    p.add_argument("--oracle", action="store_true", help="also compute the class group from binary forms")
    p.add_argument("--json", action="store_true", help="print one JSON record")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("scan", help="all supported fields up to a discriminant bound")
    p.add_argument("--max-abs-delta", type=int, required=True, metavar="N")
    p.add_argument("--t", default="all", help="number of primes, or 'all'")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--out", metavar="FILE", help="JSON-lines output (default stdout)")
    p.add_argument("--jobs", type=int, default=1, metavar="K")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("classify-form", help="invariants of a quadratic form over F_2")
    p.add_argument("coeffs", help="names like X+O1 or upper-triangular rows like 01,00")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify_form)

    p = sub.add_parser("nullity-set", help="admissible nullities S(rho, r)")
    p.add_argument("rho", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--x", action="store_true", help="the form is X (r = 2)")
    p.set_defaults(func=cmd_nullity_set)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "t", "all") != "all" and not str(args.t).isdigit():
        print(f"error: --t must be a number or 'all', got {args.t!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
