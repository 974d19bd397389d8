"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 a check failed (bound violation,
oracle mismatch or failed criterion).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .algebra import format_poly
from .combinatorics import ClassLabel, is_prime
from .gf import char_values, ext_gf_paper, ext_gf_true, sym_gf
from .spans import BoundViolation, DimensionReport, SpanQuery, compute, default_truncation

log = logging.getLogger("wreathpowers")

CACHE_ENV = "WREATHPOWERS_CACHE"
EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# desk-scale caps


def check_caps(query: SpanQuery) -> None:
    n, k = query.n, query.k
    if query.kind == "ext":
        if n > 12 or k > 6:
            raise UsageError(f"ext spans are capped at n <= 12, k <= 6 (got n={n}, k={k}); use --no-caps")
        return
    if query.p is not None and k == 1:
        if n > 14:
            raise UsageError(f"Brauer spans with k = 1 are capped at n <= 14 (got n={n}); use --no-caps")
        return
    if k <= 2:
        if n > 8:
            raise UsageError(f"sym spans with k <= 2 are capped at n <= 8 (got n={n}); use --no-caps")
    elif k <= 4:
        if n > 6:
            raise UsageError(f"sym spans with k <= 4 are capped at n <= 6 (got n={n}); use --no-caps")
    else:
        raise UsageError(f"sym spans are capped at k <= 4 (got k={k}); use --no-caps")


# ---------------------------------------------------------------------------
# cache


class ReportCache:
    """Line-delimited JSON store of reports keyed by (kind, n, k, p, truncation)."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._entries: dict[tuple, dict] = {}
        if self.path.exists():
            self._load()

    @staticmethod
    def key(query: SpanQuery, truncation: int) -> tuple:
        return (query.kind, query.n, query.k, query.p, truncation)

    def _load(self) -> None:
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    d = json.loads(line)
                    report = DimensionReport.from_dict(d)
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                    continue
                self._entries[self.key(report.query, report.truncation_order)] = d

    def get(self, query: SpanQuery, truncation: int) -> Optional[DimensionReport]:
        d = self._entries.get(self.key(query, truncation))
        return DimensionReport.from_dict(d) if d is not None else None

    def put(self, report: DimensionReport) -> None:
        d = report.to_dict()
        key = self.key(report.query, report.truncation_order)
        if key in self._entries:
            return
        self._entries[key] = d
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(d, sort_keys=True) + "\n")


def _resolve_cache(arg: Optional[str], disabled: bool = False) -> Optional[ReportCache]:
    if disabled:
        return None
    path = arg or os.environ.get(CACHE_ENV)
    return ReportCache(Path(path)) if path else None


# ---------------------------------------------------------------------------
# computing reports


def make_query(kind: str, n: int, k: int, p: Optional[int]) -> SpanQuery:
    if kind == "brauer":
        if p is None:
            raise UsageError("brauer queries need --p")
        kind = "sym"
    try:
        return SpanQuery(kind, n, k, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _compute_unchecked(args: tuple[SpanQuery, Optional[int]]) -> DimensionReport:
    query, truncation = args
    return compute(query, truncation=truncation, check=False)


def get_reports(
    queries: Sequence[SpanQuery],
    truncation: Optional[int] = None,
    cache: Optional[ReportCache] = None,
    workers: int = 1,
) -> list[DimensionReport]:
    """Reports in query order; bound violations are left for the caller to judge."""
    results: list[Optional[DimensionReport]] = [None] * len(queries)
    todo = []
    for i, q in enumerate(queries):
        T = default_truncation(q) if truncation is None else truncation
        hit = cache.get(q, T) if cache else None
        if hit is not None:
            results[i] = hit
        else:
            todo.append(i)
    jobs = [(queries[i], truncation) for i in todo]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_compute_unchecked, jobs))
    else:
        computed = [_compute_unchecked(j) for j in jobs]
    for i, report in zip(todo, computed):
        results[i] = report
        if cache:
            cache.put(report)
    return results  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# formatting


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_json(reports: Sequence[DimensionReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def format_csv(reports: Sequence[DimensionReport]) -> str:
    names: list[str] = []
    for r in reports:
        for b in r.bounds:
            if b.name not in names:
                names.append(b.name)
    header = ["kind", "n", "k", "p", "dimension", "ext_paper_dimension", "num_classes", "truncation"]
    for name in names:
        header += [name, f"{name}_ok"]
    header.append("elapsed_ms")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in reports:
        q = r.query
        row = [q.kind, q.n, q.k, "" if q.p is None else q.p, r.dimension,
               "" if r.ext_paper_dimension is None else r.ext_paper_dimension,
               r.num_classes, r.truncation_order]
        by_name = {b.name: b for b in r.bounds}
        for name in names:
            b = by_name.get(name)
            row += ["", ""] if b is None else [_frac_str(b.value), int(b.satisfied)]
        row.append(r.elapsed_ms)
        w.writerow(row)
    return buf.getvalue()


def format_text(reports: Sequence[DimensionReport]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.query}: dimension {r.dimension}")
        if r.ext_paper_dimension is not None:
            lines.append(f"  paper-convention dimension: {r.ext_paper_dimension}")
        lines.append(f"  classes: {r.num_classes}, truncation order: {r.truncation_order}")
        for b in r.bounds:
            rel = "<=" if b.upper else ">="
            tag = "ok" if b.satisfied else ("not met (informational)" if b.informational else "VIOLATED")
            lines.append(f"  {b.name}: dim {rel} {_frac_str(b.value)} (~{float(b.value):.4f}) {tag}")
        lines.append(f"  elapsed: {r.elapsed_ms} ms")
    return "\n".join(lines) + "\n"


FORMATTERS = {"json": format_json, "csv": format_csv, "text": format_text}

_TIMING = re.compile(r'("elapsed_ms":\s*)[0-9.eE+-]+')


def strip_timing(output: str) -> str:
    """Blank out timing fields in JSON or CSV output (CSV: last column)."""
    if output.lstrip().startswith("["):
        return _TIMING.sub(r"\1null", output)
    lines = output.splitlines()
    return "\n".join(line.rsplit(",", 1)[0] for line in lines)


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_range(text: str) -> list[int]:
    """'3', '1..5' or '1,2,5' (pieces may mix)."""
    out: list[int] = []
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if ".." in piece:
                lo, hi = piece.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif piece:
                out.append(int(piece))
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def build_queries(kind: str, ns, ks, ps) -> list[SpanQuery]:
    ps = [None] if ps is None else ps
    queries = []
    for n in ns:
        for k in ks:
            for p in ps:
                queries.append(make_query(kind, n, k, p))
    return queries


def run_sweep_text(kind, n_range, k_range, p_range, fmt, cache=None, workers=1, no_caps=False) -> str:
    """Sweep as a string; shared by the CLI and the determinism check."""
    queries = build_queries(kind, parse_range(n_range), parse_range(k_range),
                            None if p_range is None else parse_range(p_range))
    if not no_caps:
        for q in queries:
            check_caps(q)
    rc = ReportCache(Path(cache)) if cache else None
    reports = get_reports(queries, cache=rc, workers=workers)
    return FORMATTERS[fmt](reports)


# ---------------------------------------------------------------------------
# commands


def cmd_dims(args) -> int:
    query = make_query(args.kind, args.n, args.k, args.p)
    if not args.no_caps:
        check_caps(query)
    safe = default_truncation(query)
    if args.truncation is not None and args.truncation < safe:
        log.warning("truncation %d is below the rank-faithful order %d", args.truncation, safe)
    cache = _resolve_cache(args.cache, args.no_cache)
    (report,) = get_reports([query], truncation=args.truncation, cache=cache)
    sys.stdout.write(FORMATTERS[args.format]([report]))
    try:
        report.check()
    except BoundViolation as exc:
        log.error("%s", exc)
        return EXIT_CHECK
    return EXIT_OK


def cmd_sweep(args) -> int:
    queries = build_queries(
        args.kind,
        parse_range(args.n),
        parse_range(args.k),
        None if args.p is None else parse_range(args.p),
    )
    if not args.no_caps:
        for q in queries:
            check_caps(q)
    cache = _resolve_cache(args.cache, args.no_cache)
    reports = get_reports(queries, truncation=args.truncation, cache=cache, workers=args.workers)
    sys.stdout.write(FORMATTERS[args.format](reports))
    bad = [r for r in reports if r.violations()]
    for r in bad:
        log.error("bound violated for %s: %s", r.query, ", ".join(b.name for b in r.violations()))
    return EXIT_CHECK if bad else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CRITERIA, run_criteria

    keys = args.only or list(CRITERIA)
    try:
        results = run_criteria(keys)
    except KeyError as exc:
        raise UsageError(f"{exc.args[0]}; choose from {', '.join(CRITERIA)}") from exc
    if args.format == "json":
        payload = [
            {"key": r.key, "title": r.title, "passed": r.passed, "elapsed_s": round(r.elapsed_s, 3),
             "failures": r.failures, "notes": r.notes}
            for r in results
        ]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            print(r.line())
            for f in r.failures:
                print(f"      - {f}")
            if args.verbose:
                for note in r.notes:
                    print(f"      . {note}")
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK


def _class_from_args(args) -> ClassLabel:
    parts = _int_list(args.parts)
    exps = _int_list(args.exponents) if args.exponents else [0] * len(parts)
    if not parts or len(parts) != len(exps) or any(x < 1 for x in parts) or args.k < 1:
        raise UsageError("need matching --parts (positive) and --exponents lists and k >= 1")
    return ClassLabel.from_parts(args.k, parts, exps)


def cmd_gf(args) -> int:
    c = _class_from_args(args)
    terms = args.terms
    print(f"class {c}  (n = {c.n}, k = {c.k}; z = exp(2 pi i / {c.k}))")
    if args.kind == "sym":
        f = sym_gf(c)
        print(f"f = {f}")
        print(f"denominator = {format_poly(f.denominator)}")
        coeffs = char_values(c, "sym", terms - 1)
        print("coefficients: " + ", ".join(str(x) for x in coeffs))
    else:
        for label, g in (("true", ext_gf_true(c)), ("paper", ext_gf_paper(c))):
            print(f"{label}: g = {g} = {format_poly(g.poly)}")
            coeffs = char_values(c, "ext", max(terms - 1, c.n), label)
            print("  coefficients: " + ", ".join(str(x) for x in coeffs))
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    from .verify import oracle_rows

    if args.n > 4 or args.k > 3 or args.r > 6:
        if not args.no_caps:
            raise UsageError("oracle checks are capped at n <= 4, k <= 3, r <= 6; use --no-caps")
    rows = list(oracle_rows(args.kind, args.n, args.k, args.r, args.convention))
    all_equal = True
    if args.format == "json":
        payload = []
        for c, r, coeff, tr in rows:
            payload.append({"class": str(c), "r": r, "gf": str(coeff), "oracle": str(tr), "equal": coeff == tr})
            all_equal &= coeff == tr
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        width = max(len(str(c)) for c, *_ in rows)
        print(f"{'class':<{width}}  r  {'gf':>14}  {'oracle':>14}  equal")
        for c, r, coeff, tr in rows:
            eq = coeff == tr
            all_equal &= eq
            print(f"{str(c):<{width}}  {r}  {str(coeff):>14}  {str(tr):>14}  {'yes' if eq else 'NO'}")
        print("all equal" if all_equal else "MISMATCH")
    return EXIT_OK if all_equal else EXIT_CHECK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreathpowers",
        description="Exact span dimensions of symmetric/exterior power characters of C_k wr S_n.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="text"):
        p.add_argument("--format", choices=sorted(FORMATTERS), default=fmt_default)
        p.add_argument("--cache", help=f"cache file (default: ${CACHE_ENV} if set)")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--truncation", type=int, help="override the series truncation order")
        p.add_argument("--no-caps", action="store_true", help="lift desk-scale size caps")

    p = sub.add_parser("dims", help="one dimension query")
    p.add_argument("kind", choices=["sym", "ext", "brauer"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p", type=int)
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("sweep", help="a grid of queries")
    p.add_argument("kind", choices=["sym", "ext", "brauer"])
    p.add_argument("--n", required=True, help="range, e.g. 1..6")
    p.add_argument("--k", default="1", help="range, e.g. 1..3")
    p.add_argument("--p", help="primes, e.g. 2,3")
    p.add_argument("--workers", type=int, default=1)
    common(p, "csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--only", action="append", metavar="NAME")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gf", help="print the generating function of one class")
    p.add_argument("--kind", choices=["sym", "ext"], default="sym")
    p.add_argument("--parts", required=True, help="cycle lengths, e.g. 2,2,1")
    p.add_argument("--exponents", help="root-of-unity exponents, e.g. 0,1,0")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--terms", type=int, default=10)
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("oracle-check", help="compare generating functions with brute-force traces")
    p.add_argument("kind", choices=["sym", "ext"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=6)
    p.add_argument("--convention", choices=["true", "paper"], default="true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--no-caps", action="store_true")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "p", None) is not None and isinstance(args.p, int) and not is_prime(args.p):
        print(f"error: p = {args.p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
