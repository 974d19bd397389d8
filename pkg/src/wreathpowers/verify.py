"""Runnable checks of every finite claim, at desk scale.

Each criterion returns a ``CriterionResult``; ``run_criteria`` drives a
selection of them.  Runtime limits are part of the pass condition.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import bounds as bd
from .algebra import NotDivisibleError, poly_div_exact
from .combinatorics import A_count, W_count, class_representative, classes
from .gf import brute_force_ext_trace, brute_force_sym_trace, char_values, sym_gf
from .spans import (
    a_family,
    common_denominator_D,
    compute_B,
    compute_B_wreath,
    compute_D,
    compute_E,
    delta_p,
    g_p_cyclotomic,
    g_p_product,
    sym_truncation,
    verify_family_independent,
    y_family,
)


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    elapsed_s: float = 0.0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.key:<13} {self.elapsed_s:8.2f}s  {self.title}"


@dataclass
class Criterion:
    key: str
    title: str
    limit_s: float | None
    body: Callable[[list[str], list[str]], None]

    def run(self) -> CriterionResult:
        failures: list[str] = []
        notes: list[str] = []
        t0 = time.perf_counter()
        try:
            self.body(failures, notes)
        except Exception as exc:  # a crash is a failure, not an abort of the whole suite
            failures.append(f"raised {type(exc).__name__}: {exc}")
        elapsed = time.perf_counter() - t0
        if self.limit_s is not None and elapsed >= self.limit_s:
            failures.append(f"runtime {elapsed:.2f}s exceeds limit {self.limit_s}s")
        return CriterionResult(self.key, self.title, not failures, elapsed, failures, notes)


# ---------------------------------------------------------------------------


def _single_point(failures, notes):
    for k in range(1, 11):
        r = compute_D(1, k)
        if r.dimension != k:
            failures.append(f"D(1,{k}) = {r.dimension}, expected {k}")
        if bd.ub_D(1, k) != k:
            failures.append(f"ub_D(1,{k}) = {bd.ub_D(1, k)}, expected {k}")


def _exterior(failures, notes):
    for n in range(1, 9):
        for k in (1, 2, 3, 4):
            r = compute_E(n, k)
            want = n if k == 1 else n + 1
            if r.dimension != want:
                failures.append(f"E({n},{k}) = {r.dimension}, expected {want}")
            if k % 2 == 0 and r.ext_paper_dimension != r.dimension:
                failures.append(f"E({n},{k}) paper convention {r.ext_paper_dimension} != {r.dimension}")
            if k % 2 == 1 and r.ext_paper_dimension != r.dimension:
                notes.append(f"E({n},{k}): true {r.dimension}, paper convention {r.ext_paper_dimension}")


def _sandwich(failures, notes):
    for n in range(2, 7):
        for k in (1, 2, 3):
            r = compute_D(n, k)
            lb = k * W_count(n - 1)
            ub = bd.ub_D(n, k)
            if not lb <= r.dimension <= ub:
                failures.append(f"D({n},{k}) = {r.dimension} outside [{lb}, {ub}]")
            fam = verify_family_independent(y_family(n, k), sym_truncation(n, k))
            if fam.rank != lb:
                failures.append(f"Y family rank {fam.rank} != k|W_{n - 1}| = {lb} at (n,k)=({n},{k})")
            notes.append(f"(n,k)=({n},{k}): {lb} <= D={r.dimension} <= {ub}; Y rank {fam.rank}")


def _gp_identity(failures, notes):
    for p in (2, 3, 5, 7):
        for n in range(1, 41):
            a = g_p_product(p, n).poly
            b = g_p_cyclotomic(p, n).poly
            if a != b and a != -b:
                failures.append(f"g_p product and cyclotomic forms differ at p={p}, n={n}")


def _delta_bound(failures, notes):
    for p in (2, 3, 5):
        for n in range(1, 13):
            d = delta_p(p, n)
            if d != g_p_product(p, n).degree:
                failures.append(f"delta_{p}({n}) = {d} != deg g_p = {g_p_product(p, n).degree}")
            if not d <= bd.ub_delta_p(p, n):
                failures.append(f"delta_{p}({n}) = {d} exceeds {float(bd.ub_delta_p(p, n)):.4f}")
            r = compute_B(p, n)
            if not r.dimension <= bd.ub_B(p, n):
                failures.append(f"B({p},{n}) = {r.dimension} exceeds {float(bd.ub_B(p, n)):.4f}")


def _a_family(failures, notes):
    for p in (2, 3, 5):
        for n in range(1, 13):
            fam = verify_family_independent(a_family(p, n), sym_truncation(n, 1))
            size = A_count(p, n)
            if fam.expected != size:
                failures.append(f"|A_{p},{n}| enumerated {fam.expected} != closed form {size}")
            if not fam.equal:
                failures.append(f"A_{p},{n} family rank {fam.rank} != {fam.expected}")
            b = compute_B(p, n).dimension
            if b < size:
                failures.append(f"B({p},{n}) = {b} < |A_{p},{n}| = {size}")


def _wreath_brauer(failures, notes):
    for p in (2, 3):
        for n in range(1, 6):
            for k in range(1, 5):
                r = compute_B_wreath(p, n, k)
                ub = bd.ub_B_wreath(p, n, k)
                if not r.dimension <= ub:
                    failures.append(f"B({p},{n},{k}) = {r.dimension} exceeds {float(ub):.4f}")
            b1 = compute_B_wreath(p, n, 1).dimension
            b = compute_B(p, n).dimension
            if b1 != b:
                failures.append(f"B({p},{n},1) = {b1} != B({p},{n}) = {b}")


def oracle_rows(kind: str, n: int, k: int, max_r: int, convention: str = "true"):
    """(class, r, gf coefficient, oracle trace) for every class of C_k wr S_n."""
    for c in classes(n, k):
        m = class_representative(c)
        series = char_values(c, kind, max_r, convention)
        for r in range(max_r + 1):
            if kind == "sym":
                tr = brute_force_sym_trace(m, r)
            else:
                tr = brute_force_ext_trace(m, r)
            yield c, r, series[r], tr


def _oracle(failures, notes):
    count = 0
    for n in range(1, 5):
        for k in (1, 2, 3):
            for kind in ("sym", "ext"):
                for c, r, coeff, tr in oracle_rows(kind, n, k, 6):
                    count += 1
                    if coeff != tr:
                        failures.append(f"{kind} {c} r={r}: gf {coeff} != trace {tr}")
    notes.append(f"{count} coefficient/trace pairs compared")


def _truncation(failures, notes):
    def same(label, base, wider):
        if base.dimension != wider.dimension:
            failures.append(f"{label}: T={base.truncation_order} gives {base.dimension}, "
                            f"T={wider.truncation_order} gives {wider.dimension}")

    for k in range(1, 11):
        b = compute_D(1, k)
        same(f"D(1,{k})", b, compute_D(1, k, b.truncation_order + 1))
    for n in range(1, 9):
        for k in (1, 2, 3, 4):
            b = compute_E(n, k)
            w = compute_E(n, k, b.truncation_order + n)
            same(f"E({n},{k})", b, w)
            if b.ext_paper_dimension != w.ext_paper_dimension:
                failures.append(f"E({n},{k}) paper convention changes with truncation")
    for n in range(2, 7):
        for k in (1, 2, 3):
            b = compute_D(n, k)
            same(f"D({n},{k})", b, compute_D(n, k, b.truncation_order + n))
            T = sym_truncation(n, k)
            y0 = verify_family_independent(y_family(n, k), T).rank
            y1 = verify_family_independent(y_family(n, k), T + n).rank
            if y0 != y1:
                failures.append(f"Y family rank at (n,k)=({n},{k}) changes with truncation")
    for p in (2, 3, 5):
        for n in range(1, 13):
            b = compute_B(p, n)
            same(f"B({p},{n})", b, compute_B(p, n, b.truncation_order + n))
            T = sym_truncation(n, 1)
            a0 = verify_family_independent(a_family(p, n), T).rank
            a1 = verify_family_independent(a_family(p, n), T + n).rank
            if a0 != a1:
                failures.append(f"A_{p},{n} rank changes with truncation")
    for p in (2, 3):
        for n in range(1, 6):
            for k in range(1, 5):
                b = compute_B_wreath(p, n, k)
                same(f"B({p},{n},{k})", b, compute_B_wreath(p, n, k, b.truncation_order + n))


def _divisibility(failures, notes):
    for n in range(1, 7):
        for k in (1, 2, 3):
            D = common_denominator_D(n, k).poly
            for c in classes(n, k):
                den = sym_gf(c).denominator
                try:
                    poly_div_exact(D, den)
                except NotDivisibleError:
                    failures.append(f"D(x) for (n,k)=({n},{k}) not divisible by denominator of {c}")


def _cli(failures, notes):
    import tempfile
    from pathlib import Path

    from .cli import run_sweep_text, strip_timing

    first = strip_timing(run_sweep_text("sym", "1..4", "1..2", None, "csv"))
    second = strip_timing(run_sweep_text("sym", "1..4", "1..2", None, "csv"))
    if first != second:
        failures.append("sym sweep output differs between runs")
    first = strip_timing(run_sweep_text("brauer", "1..6", "1", "2", "json"))
    second = strip_timing(run_sweep_text("brauer", "1..6", "1", "2", "json"))
    if first != second:
        failures.append("brauer sweep output differs between runs")
    with tempfile.TemporaryDirectory() as tmp:
        cache = Path(tmp) / "cache.jsonl"
        fresh = strip_timing(run_sweep_text("ext", "1..5", "1..3", None, "json"))
        filled = strip_timing(run_sweep_text("ext", "1..5", "1..3", None, "json", cache=cache))
        cached = strip_timing(run_sweep_text("ext", "1..5", "1..3", None, "json", cache=cache))
        if not (fresh == filled == cached):
            failures.append("cached and freshly computed reports differ")


CRITERIA: dict[str, Criterion] = {
    c.key: c
    for c in [
        Criterion("one-point", "D(1,k) = k and ub_D(1,k) = k, k = 1..10", 1.0, _single_point),
        Criterion("exterior", "E(n,k) = n+1 (k >= 2), E(n,1) = n, n <= 8", 10.0, _exterior),
        Criterion("sandwich", "k|W_{n-1}| = rank Y <= D(n,k) <= ub_D, n = 2..6, k <= 3", 300.0, _sandwich),
        Criterion("gp-identity", "g_p product = +- cyclotomic form, p <= 7, n <= 40", 30.0, _gp_identity),
        Criterion("delta-bound", "delta_p and B(p,n) below their bounds, p <= 5, n <= 12", 300.0, _delta_bound),
        Criterion("a-family", "A_{p,n} independent and B(p,n) >= |A_{p,n}|, p <= 5, n <= 12", None, _a_family),
        Criterion("wreath-brauer", "B(p,n,k) <= wreath bound; B(p,n,1) = B(p,n)", None, _wreath_brauer),
        Criterion("oracle", "gf coefficients = brute-force traces, n <= 4, k <= 3, r <= 6", 120.0, _oracle),
        Criterion("truncation", "dimensions unchanged at truncation T + n", None, _truncation),
        Criterion("divisibility", "D(x) divisible by every class denominator, n <= 6, k <= 3", None, _divisibility),
        Criterion("cli", "sweeps deterministic; cached = fresh reports", None, _cli),
    ]
}


def run_criteria(keys: Iterable[str] | None = None) -> list[CriterionResult]:
    keys = list(CRITERIA) if keys is None else list(keys)
    unknown = [k for k in keys if k not in CRITERIA]
    if unknown:
        raise KeyError(f"unknown criteria: {', '.join(unknown)}")
    return [CRITERIA[k].run() for k in keys]
