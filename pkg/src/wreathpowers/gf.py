"""Generating functions for symmetric and exterior power characters of the
natural representation, plus brute-force trace oracles on explicit bases."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal, Sequence

from .algebra import CycloNumber, Poly, TruncatedSeries, format_cyclo, series_expand
from .combinatorics import ClassLabel, permutation_of

Convention = Literal["true", "paper"]

SYM_ORACLE_MAX_N = 6
SYM_ORACLE_MAX_R = 8
EXT_ORACLE_MAX_N = 8


@dataclass(frozen=True)
class RationalFunction:
    """numerator / prod (1 - t * x^length), denominator kept factored."""

    k: int
    numerator: Poly
    factors: tuple[tuple[CycloNumber, int], ...]

    def __post_init__(self):
        for t, length in self.factors:
            if t.is_zero() or length < 1:
                raise ValueError("denominator factors need t != 0 and length >= 1")

    @property
    def denominator(self) -> Poly:
        den = Poly.one(self.k)
        for t, length in self.factors:
            den = den * Poly.one_minus(self.k, t, length)
        return den

    def series(self, order: int) -> TruncatedSeries:
        return series_expand(self.numerator, self.denominator, order)

    def __str__(self) -> str:
        num = str(self.numerator)
        counts: dict[tuple[CycloNumber, int], int] = {}
        for f in self.factors:
            counts[f] = counts.get(f, 0) + 1
        pieces = []
        for (t, length), mult in counts.items():
            piece = f"({_one_minus_str(t, length)})"
            pieces.append(piece + (f"^{mult}" if mult > 1 else ""))
        if not pieces:
            return num
        den = "".join(pieces)
        if len(pieces) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def _xpow(length: int) -> str:
    return "x" if length == 1 else f"x^{length}"


def _one_minus_str(t: CycloNumber, length: int, plus: bool = False) -> str:
    """Render 1 - t*x^length (or 1 + t*x^length when ``plus``)."""
    if plus:
        t = -t
    if t == 1:
        return f"1 - {_xpow(length)}"
    if t == -1:
        return f"1 + {_xpow(length)}"
    if t.nonzero_count() == 1:
        neg = next(x for x in t.num if x) < 0
        return f"1 {'+' if neg else '-'} {format_cyclo(-t if neg else t)}*{_xpow(length)}"
    return f"1 - ({format_cyclo(t)})*{_xpow(length)}"


@dataclass(frozen=True)
class ExtPolynomial:
    poly: Poly
    convention: Convention
    factors: tuple[tuple[CycloNumber, int], ...] = ()  # (c, length) for 1 + c*x^length

    def __str__(self) -> str:
        if not self.factors:
            return str(self.poly)
        counts: dict[tuple[CycloNumber, int], int] = {}
        for f in self.factors:
            counts[f] = counts.get(f, 0) + 1
        out = []
        for (c, length), mult in counts.items():
            out.append(f"({_one_minus_str(-c, length)})" + (f"^{mult}" if mult > 1 else ""))
        return "".join(out)


def sym_gf(c: ClassLabel) -> RationalFunction:
    """f_sigma(x) = 1 / prod_i (1 - t_i x^{lambda_i})."""
    factors = tuple((t, part) for t, (part, _) in zip(c.t_values(), c.pairs))
    return RationalFunction(c.k, Poly.one(c.k), factors)


def _ext_gf(c: ClassLabel, sign: int, convention: Convention) -> ExtPolynomial:
    poly = Poly.one(c.k)
    factors = []
    for t, (part, _) in zip(c.t_values(), c.pairs):
        coeff = t * (sign * (-1) ** (part - 1))
        factors.append((coeff, part))
        poly = poly * Poly(c.k, [1] + [0] * (part - 1) + [coeff])
    return ExtPolynomial(poly, convention, tuple(factors))


def ext_gf_true(c: ClassLabel) -> ExtPolynomial:
    """prod_i (1 + (-1)^{lambda_i - 1} t_i x^{lambda_i}); coefficient r is psi_r."""
    return _ext_gf(c, +1, "true")


def ext_gf_paper(c: ClassLabel) -> ExtPolynomial:
    """prod_i (1 - (-1)^{lambda_i - 1} t_i x^{lambda_i}), the printed form of g_sigma."""
    return _ext_gf(c, -1, "paper")


def ext_gf(c: ClassLabel, convention: Convention = "true") -> ExtPolynomial:
    if convention == "true":
        return ext_gf_true(c)
    if convention == "paper":
        return ext_gf_paper(c)
    raise ValueError(f"unknown convention {convention!r}")


def char_values(c: ClassLabel, kind: str, order: int, convention: Convention = "true") -> TruncatedSeries:
    """Character values chi_0..chi_order (sym) or psi_0..psi_order (ext) on class c."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if kind == "sym":
        return sym_gf(c).series(order)
    if kind == "ext":
        poly = ext_gf(c, convention).poly
        return TruncatedSeries(order, tuple(poly[i] for i in range(order + 1)))
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# oracles: traces computed on explicit bases from the matrix alone


def _compositions(total: int, slots: int):
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def brute_force_sym_trace(matrix: Sequence[Sequence[CycloNumber]], r: int) -> CycloNumber:
    """Trace of the matrix acting on Sym^r via the monomial basis.

    The monomial prod e_j^{c_j} maps to prod (m[pi j][j])^{c_j} times the
    monomial with exponent c_j moved to slot pi(j); only fixed monomials
    contribute.
    """
    n = len(matrix)
    if n > SYM_ORACLE_MAX_N or r > SYM_ORACLE_MAX_R:
        raise ValueError(f"oracle limited to n <= {SYM_ORACLE_MAX_N}, r <= {SYM_ORACLE_MAX_R}")
    if r < 0:
        raise ValueError("r must be non-negative")
    k = matrix[0][0].k
    pi = permutation_of(matrix)
    entries = [matrix[pi[j]][j] for j in range(n)]
    total = CycloNumber.zero(k)
    for c in _compositions(r, n):
        image = [0] * n
        for j in range(n):
            image[pi[j]] = c[j]
        if tuple(image) != c:
            continue
        scalar = CycloNumber.one(k)
        for j in range(n):
            if c[j]:
                scalar = scalar * entries[j] ** c[j]
        total = total + scalar
    return total


def _sort_sign(seq: list[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def brute_force_ext_trace(matrix: Sequence[Sequence[CycloNumber]], r: int) -> CycloNumber:
    """Trace of the matrix acting on Lambda^r via the wedge basis."""
    n = len(matrix)
    if n > EXT_ORACLE_MAX_N:
        raise ValueError(f"oracle limited to n <= {EXT_ORACLE_MAX_N}")
    if r < 0:
        raise ValueError("r must be non-negative")
    k = matrix[0][0].k
    pi = permutation_of(matrix)
    total = CycloNumber.zero(k)
    for subset in combinations(range(n), r):
        image = [pi[i] for i in subset]
        if sorted(image) != list(subset):
            continue
        scalar = CycloNumber.one(k)
        for i in subset:
            scalar = scalar * matrix[pi[i]][i]
        total = total + scalar * _sort_sign(image)
    return total


def determinant_of(matrix: Sequence[Sequence[CycloNumber]]) -> CycloNumber:
    """sign(pi) * product of nonzero entries."""
    pi = permutation_of(matrix)
    k = matrix[0][0].k
    det = CycloNumber.one(k) * _sort_sign(pi)
    for j, i in enumerate(pi):
        det = det * matrix[i][j]
    return det
