"""Span dimensions of symmetric/exterior power characters and their bounds.

Every dimension is an exact rank over Q(zeta_k) of a matrix whose rows are
coefficient vectors of generating functions, one row per conjugacy class.
For symmetric powers the series are truncated at T = deg D(x) - n, where
D(x) is a common denominator of degree k n (n + 1) / 2: every function in
the span is P / D with deg P <= deg D - n, and such a P / D whose series
vanishes through x^T must have P = 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from . import bounds as bd
from .algebra import CycloNumber, Poly, cyclotomic_polynomial, exact_rank
from .combinatorics import (
    A_set,
    ClassLabel,
    W_set,
    classes,
    is_p_regular,
    is_prime,
    r_p,
)
from .gf import RationalFunction, char_values, sym_gf

KINDS = ("sym", "ext")


class BoundViolation(RuntimeError):
    """A checked bound failed; this would falsify the corresponding claim."""

    def __init__(self, report: "DimensionReport"):
        self.report = report
        names = ", ".join(b.name for b in report.violations())
        super().__init__(f"bound violated for {report.query}: {names}")


@dataclass(frozen=True)
class SpanQuery:
    kind: str
    n: int
    k: int = 1
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        if self.p is not None:
            if not is_prime(self.p):
                raise ValueError(f"p = {self.p} is not prime")
            if self.kind == "ext":
                raise ValueError("exterior-power Brauer spans are not supported")

    def __str__(self) -> str:
        s = f"{self.kind}(n={self.n}, k={self.k}"
        return s + (f", p={self.p})" if self.p is not None else ")")


@dataclass(frozen=True)
class Bound:
    """A bound value; ``upper`` means dimension <= value is claimed.

    Names starting with ``info_`` are reported but not enforced.
    """

    name: str
    value: Fraction
    upper: bool
    satisfied: bool

    @property
    def informational(self) -> bool:
        return self.name.startswith("info_")

    @classmethod
    def check(cls, name: str, value, dimension: int, upper: bool) -> "Bound":
        value = Fraction(value)
        ok = dimension <= value if upper else dimension >= value
        return cls(name, value, upper, ok)


@dataclass
class DimensionReport:
    query: SpanQuery
    dimension: int
    num_classes: int
    truncation_order: int
    bounds: list[Bound] = field(default_factory=list)
    ext_paper_dimension: Optional[int] = None
    elapsed_ms: float = 0.0

    def violations(self) -> list[Bound]:
        return [b for b in self.bounds if not b.satisfied and not b.informational]

    def bound(self, name: str) -> Bound:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def check(self) -> "DimensionReport":
        if self.dimension > self.num_classes:
            raise AssertionError(f"dimension {self.dimension} exceeds class count {self.num_classes}")
        if self.dimension > self.truncation_order + 1:
            raise AssertionError(f"dimension {self.dimension} exceeds truncation order + 1")
        if self.violations():
            raise BoundViolation(self)
        return self

    def to_dict(self) -> dict:
        q = self.query
        return {
            "kind": q.kind,
            "n": q.n,
            "k": q.k,
            "p": q.p,
            "dimension": self.dimension,
            "ext_paper_dimension": self.ext_paper_dimension,
            "num_classes": self.num_classes,
            "truncation": self.truncation_order,
            "bounds": [
                {
                    "name": b.name,
                    "value_num": b.value.numerator,
                    "value_den": b.value.denominator,
                    "satisfied": b.satisfied,
                }
                for b in self.bounds
            ],
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DimensionReport":
        query = SpanQuery(d["kind"], d["n"], d["k"], d["p"])
        bnds = []
        for b in d["bounds"]:
            bnds.append(
                Bound(
                    b["name"],
                    Fraction(b["value_num"], b["value_den"]),
                    _is_upper(b["name"]),
                    bool(b["satisfied"]),
                )
            )
        return cls(
            query,
            d["dimension"],
            d["num_classes"],
            d["truncation"],
            bnds,
            d["ext_paper_dimension"],
            d["elapsed_ms"],
        )


def _is_upper(name: str) -> bool:
    return name.removeprefix("info_").startswith("ub")


# ---------------------------------------------------------------------------
# rank helpers


def sym_truncation(n: int, k: int) -> int:
    """deg D(x) - n for D(x) = prod_{i<k, j<=n} (1 - zeta^i x^j)."""
    return k * n * (n + 1) // 2 - n


def series_rank(functions: Iterable[RationalFunction], order: int) -> int:
    rows = [list(f.series(order)) for f in functions]
    return exact_rank(rows)


def class_rank(cls_list: Sequence[ClassLabel], kind: str, order: int, convention: str = "true") -> int:
    rows = [list(char_values(c, kind, order, convention)) for c in cls_list]
    return exact_rank(rows)


class FamilyCheck(NamedTuple):
    rank: int
    expected: int
    equal: bool


def verify_family_independent(family: Sequence[RationalFunction], order: int) -> FamilyCheck:
    if not family:
        raise ValueError("family must be nonempty")
    rank = series_rank(family, order)
    return FamilyCheck(rank, len(family), rank == len(family))


def y_family(n: int, k: int) -> list[RationalFunction]:
    """{ f_lambda(x) / (1 - zeta^r x) : 0 <= r < k, lambda in W_{n-1} }, as a list."""
    out = []
    for lam in W_set(n - 1):
        for r in range(k):
            factors = ((CycloNumber.zeta(k, r), 1),) + tuple((CycloNumber.one(k), part) for part in lam)
            out.append(RationalFunction(k, Poly.one(k), factors))
    return out


def a_family(p: int, n: int) -> list[RationalFunction]:
    return [sym_gf(ClassLabel.from_parts(1, lam)) for lam in A_set(p, n)]


# ---------------------------------------------------------------------------
# dimensions


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
        return report.check() if kwargs.get("check", True) else report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def compute_D(n: int, k: int, truncation: Optional[int] = None, *, check: bool = True) -> DimensionReport:
    """Dimension of the span of symmetric power characters of C_k wr S_n."""
    query = SpanQuery("sym", n, k)
    T = sym_truncation(n, k) if truncation is None else truncation
    cls_list = classes(n, k)
    dim = class_rank(cls_list, "sym", T)
    bnds = [
        Bound.check("ub_D", bd.ub_D(n, k), dim, upper=True),
        Bound.check("lb_D_family", bd.lb_D_family(n, k), dim, upper=False),
    ]
    if n >= 2:
        bnds.append(Bound.check("lb_D_log", bd.lb_D_log(n, k), dim, upper=False))
    return DimensionReport(query, dim, len(cls_list), T, bnds)


@_timed
def compute_E(n: int, k: int, truncation: Optional[int] = None, *, check: bool = True) -> DimensionReport:
    """Dimension of the span of exterior power characters, in both sign conventions."""
    query = SpanQuery("ext", n, k)
    T = n if truncation is None else truncation
    cls_list = classes(n, k)
    dim = class_rank(cls_list, "ext", T, "true")
    dim_paper = class_rank(cls_list, "ext", T, "paper")
    bnds = [Bound.check("ub_E", n + 1, dim, upper=True)]
    return DimensionReport(query, dim, len(cls_list), T, bnds, ext_paper_dimension=dim_paper)


def brauer_classes(p: int, n: int, k: int) -> list[ClassLabel]:
    return [c for c in classes(n, k) if is_p_regular(c, p)]


def _brauer_info_bounds(p: int, n: int, dim: int) -> list[Bound]:
    return [
        Bound.check("info_lb_B_stated", bd.lb_B_stated(p, n), dim, upper=False),
        Bound.check("info_lb_B_proof", bd.lb_B_proof(p, n), dim, upper=False),
        Bound.check("info_lb_B_harmonic", bd.A_harmonic_lower(p, n), dim, upper=False),
    ]


@_timed
def compute_B(p: int, n: int, truncation: Optional[int] = None, *, check: bool = True) -> DimensionReport:
    """Dimension of the span of Brauer characters of symmetric powers of S_n."""
    query = SpanQuery("sym", n, 1, p)
    T = sym_truncation(n, 1) if truncation is None else truncation
    cls_list = brauer_classes(p, n, 1)
    dim = class_rank(cls_list, "sym", T)
    bnds = [
        Bound.check("ub_B", bd.ub_B(p, n), dim, upper=True),
        Bound.check("ub_B_delta", delta_p(p, n) + 1 - n, dim, upper=True),
        Bound.check("lb_B_family", bd.lb_B_family(p, n), dim, upper=False),
    ] + _brauer_info_bounds(p, n, dim)
    return DimensionReport(query, dim, len(cls_list), T, bnds)


@_timed
def compute_B_wreath(p: int, n: int, k: int, truncation: Optional[int] = None, *, check: bool = True) -> DimensionReport:
    """Dimension of the span of Brauer characters of symmetric powers of C_k wr S_n."""
    query = SpanQuery("sym", n, k, p)
    T = sym_truncation(n, k) if truncation is None else truncation
    cls_list = brauer_classes(p, n, k)
    dim = class_rank(cls_list, "sym", T)
    bnds = [
        Bound.check("ub_B_wreath", bd.ub_B_wreath(p, n, k), dim, upper=True),
        Bound.check("lb_B_family", bd.lb_B_family(p, n), dim, upper=False),
    ]
    return DimensionReport(query, dim, len(cls_list), T, bnds)


def compute(query: SpanQuery, truncation: Optional[int] = None, check: bool = True) -> DimensionReport:
    """Dispatch a query to the matching engine."""
    if query.kind == "ext":
        return compute_E(query.n, query.k, truncation=truncation, check=check)
    if query.p is None:
        return compute_D(query.n, query.k, truncation=truncation, check=check)
    if query.k == 1:
        return compute_B(query.p, query.n, truncation=truncation, check=check)
    return compute_B_wreath(query.p, query.n, query.k, truncation=truncation, check=check)


def default_truncation(query: SpanQuery) -> int:
    if query.kind == "ext":
        return query.n
    return sym_truncation(query.n, query.k)


# ---------------------------------------------------------------------------
# common denominators


@dataclass(frozen=True)
class CommonDenominator:
    poly: Poly
    factors: tuple[tuple[str, int], ...]
    factor_degrees: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __post_init__(self):
        expected = sum(d * m for d, (_, m) in zip(self.factor_degrees, self.factors))
        if expected != self.poly.degree:
            raise AssertionError("factored degree disagrees with the expanded polynomial")

    def describe(self) -> str:
        return "".join(f"({name})" + (f"^{m}" if m > 1 else "") for name, m in self.factors)


def _one_minus_name(i: int, j: int, k: int) -> str:
    x = "x" if j == 1 else f"x^{j}"
    if i == 0:
        return f"1 - {x}"
    if 2 * i == k:
        return f"1 + {x}"
    z = "z" if i == 1 else f"z^{i}"
    return f"1 - {z}*{x}"


def common_denominator_D(n: int, k: int) -> CommonDenominator:
    """prod_{0 <= i < k, 1 <= j <= n} (1 - zeta^i x^j)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    poly = Poly.one(k)
    names, degs = [], []
    for i in range(k):
        z = CycloNumber.zeta(k, i)
        for j in range(1, n + 1):
            poly = poly * Poly.one_minus(k, z, j)
            names.append((_one_minus_name(i, j, k), 1))
            degs.append(j)
    return CommonDenominator(poly, tuple(names), tuple(degs))


def g_p_product(p: int, n: int) -> CommonDenominator:
    """prod_{j <= n} (1 - x^{r_p(j)})."""
    mult: dict[int, int] = {}
    for j in range(1, n + 1):
        r = r_p(j, p)
        mult[r] = mult.get(r, 0) + 1
    poly = Poly.one(1)
    names, degs = [], []
    for r in sorted(mult):
        poly = poly * Poly.one_minus(1, 1, r) ** mult[r]
        names.append((_one_minus_name(0, r, 1), mult[r]))
        degs.append(r)
    return CommonDenominator(poly, tuple(names), tuple(degs))


def g_p_cyclotomic(p: int, n: int) -> CommonDenominator:
    """prod_{d <= n, p does not divide d} Phi_d(x)^{floor(n/d)}."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    poly = Poly.one(1)
    names, degs = [], []
    for d in range(1, n + 1):
        if d % p == 0:
            continue
        phi = cyclotomic_polynomial(d)
        poly = poly * phi ** (n // d)
        names.append((f"Phi_{d}", n // d))
        degs.append(phi.degree)
    return CommonDenominator(poly, tuple(names), tuple(degs))


def delta_p(p: int, n: int) -> int:
    """sum over d <= n coprime to p of d * #{e >= 0 : d p^e <= n}."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = 0
    for d in range(1, n + 1):
        if d % p == 0:
            continue
        count = 0
        m = d
        while m <= n:
            count += 1
            m *= p
        total += d * count
    return total


def bound_formulas(query: SpanQuery) -> list[tuple[str, Fraction]]:
    """Every applicable closed-form bound for a query, as exact rationals."""
    n, k, p = query.n, query.k, query.p
    out: list[tuple[str, Fraction]] = []
    if query.kind == "ext":
        out.append(("ub_E", Fraction(n + 1)))
        return out
    if p is None:
        out.append(("ub_D", bd.ub_D(n, k)))
        out.append(("lb_D_family", Fraction(bd.lb_D_family(n, k))))
        if n >= 2:
            out.append(("lb_D_log", bd.lb_D_log(n, k)))
        return out
    if k == 1:
        out.append(("ub_B", bd.ub_B(p, n)))
        out.append(("ub_B_delta", Fraction(delta_p(p, n) + 1 - n)))
        out.append(("ub_delta_p", bd.ub_delta_p(p, n)))
        out.append(("lb_B_family", Fraction(bd.lb_B_family(p, n))))
        out.append(("info_lb_B_stated", bd.lb_B_stated(p, n)))
        out.append(("info_lb_B_proof", bd.lb_B_proof(p, n)))
        out.append(("info_lb_B_harmonic", bd.A_harmonic_lower(p, n)))
        return out
    out.append(("ub_B_wreath", bd.ub_B_wreath(p, n, k)))
    out.append(("lb_B_family", Fraction(bd.lb_B_family(p, n))))
    return out
