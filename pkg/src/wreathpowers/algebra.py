"""Exact arithmetic over cyclotomic fields.

Elements of Q(zeta_k) are stored in the power basis of Q[x]/Phi_k(x) as an
integer coordinate vector over a common positive denominator.  Nothing in
this module touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction, "CycloNumber"]


class NotDivisibleError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class NonUnitDenominatorError(ArithmeticError):
    """Raised when a series expansion is asked for a denominator vanishing at 0."""


class ConductorMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, index = degree)


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _int_divexact_monic(num: Sequence[int], den: Sequence[int]) -> list[int]:
    """Divide integer polynomials where ``den`` is monic (up to sign)."""
    num = list(num)
    lead = den[-1]
    assert lead in (1, -1)
    dd = len(den) - 1
    quo = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * lead
        if c:
            quo[i - dd] = c
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num):
        raise NotDivisibleError("integer polynomial division left a remainder")
    return quo


def mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first.

    Uses Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}: multiply out the positive
    factors, then divide exactly by the negative ones.
    """
    if d < 1:
        raise ValueError(f"cyclotomic polynomial index must be >= 1, got {d}")
    num: list[int] = [1]
    dens = []
    for e in divisors(d):
        mu = mobius(d // e)
        factor = [-1] + [0] * (e - 1) + [1]
        if mu == 1:
            num = _int_mul(num, factor)
        elif mu == -1:
            dens.append(factor)
    for factor in dens:
        num = _int_divexact_monic(num, factor)
    return tuple(num)


@lru_cache(maxsize=None)
def _zeta_powers(k: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta^j for j = 0..k-1 in the power basis."""
    phi = totient(k)
    out = []
    for j in range(k):
        v = [0] * max(j + 1, phi)
        v[j] = 1
        out.append(tuple(_reduce(k, v)))
    return tuple(out)


def _reduce(k: int, coeffs: list[int]) -> list[int]:
    """Reduce an integer polynomial modulo Phi_k; returns exactly phi(k) coords."""
    cyc = cyclotomic_coeffs(k)
    phi = len(cyc) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[i]
        if c:
            base = i - phi
            for j in range(phi):
                cj = cyc[j]
                if cj:
                    coeffs[base + j] -= c * cj
            coeffs[i] = 0
    if len(coeffs) < phi:
        coeffs.extend([0] * (phi - len(coeffs)))
    return coeffs[:phi]


# ---------------------------------------------------------------------------
# cyclotomic field elements


class CycloNumber:
    """An exact element of Q(zeta_k), zeta_k = exp(2 pi i / k).

    Canonical form: integer numerators ``num`` (one per basis element
    zeta^0..zeta^{phi(k)-1}) over a positive denominator ``den`` with
    gcd(num..., den) == 1.  Equality is therefore coordinate-wise.
    """

    __slots__ = ("k", "num", "den", "_hash")

    def __init__(self, k: int, coords: Iterable[int | Fraction] = (), *, _raw: bool = False):
        if _raw:
            # trusted internal path: coords is already a (num_tuple, den) pair
            num, den = coords  # type: ignore[misc]
            self.k = k
            self.num = num
            self.den = den
            self._hash = None
            return
        if k < 1:
            raise ValueError(f"conductor must be positive, got {k}")
        phi = totient(k)
        coords = list(coords)
        if len(coords) > phi:
            # accept longer vectors and reduce them
            fr = [Fraction(c) for c in coords]
            den = math.lcm(*(c.denominator for c in fr))
            ints = _reduce(k, [int(c * den) for c in fr])
            coords = [Fraction(c, den) for c in ints]
        coords = coords + [0] * (phi - len(coords))
        fr = [Fraction(c) for c in coords]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        self.k = k
        self.num, self.den = _normalize(tuple(int(c * den) for c in fr), den)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def _make(cls, k: int, num: tuple[int, ...], den: int) -> "CycloNumber":
        num, den = _normalize(num, den)
        return cls(k, (num, den), _raw=True)

    @classmethod
    def from_rational(cls, k: int, value: int | Fraction) -> "CycloNumber":
        value = Fraction(value)
        phi = totient(k)
        return cls._make(k, (value.numerator,) + (0,) * (phi - 1), value.denominator)

    @classmethod
    def zeta(cls, k: int, power: int = 1) -> "CycloNumber":
        """zeta_k ** power."""
        return cls(k, (_zeta_powers(k)[power % k], 1), _raw=True)

    @classmethod
    def zero(cls, k: int) -> "CycloNumber":
        return cls(k, ((0,) * totient(k), 1), _raw=True)

    @classmethod
    def one(cls, k: int) -> "CycloNumber":
        return cls.zeta(k, 0)

    # -- inspection -------------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def phi(self) -> int:
        return len(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def nonzero_count(self) -> int:
        return sum(1 for c in self.num if c)

    def bit_size(self) -> int:
        return self.den.bit_length() + sum(abs(c).bit_length() for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.k != self.k:
                raise ConductorMismatchError(f"cannot combine Q(zeta_{self.k}) with Q(zeta_{other.k})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.k, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = tuple(a + b for a, b in zip(self.num, other.num))
            return CycloNumber._make(self.k, num, d1)
        num = tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num))
        return CycloNumber._make(self.k, num, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.k, (tuple(-a for a in self.num), self.den), _raw=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        if len(a) == 1:
            num = (a[0] * b[0],)
        else:
            num = tuple(_reduce(self.k, _int_mul(a, b)))
        return CycloNumber._make(self.k, num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * cyclo_inverse(other)

    def __rtruediv__(self, other):
        return cyclo_inverse(self) * other

    def __pow__(self, e: int) -> "CycloNumber":
        if e < 0:
            return cyclo_inverse(self) ** (-e)
        result = CycloNumber.one(self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.k == other.k and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.k, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"CycloNumber({self.k}, {format_cyclo(self)!r})"

    def __str__(self) -> str:
        return format_cyclo(self)


def _normalize(num: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den == 1:
        return num, 1
    g = math.gcd(den, *num)
    if den < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    return num, den


def format_cyclo(a: CycloNumber, var: str = "z") -> str:
    """Render ``a`` as a polynomial in ``var`` (the primitive root)."""
    terms = []
    for i, c in enumerate(a.num):
        if not c:
            continue
        q = Fraction(c, a.den)
        mag = abs(q)
        if i == 0:
            body = str(mag)
        elif mag == 1:
            body = var if i == 1 else f"{var}^{i}"
        else:
            body = f"{mag}*{var}" if i == 1 else f"{mag}*{var}^{i}"
        terms.append(("-" if q < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        _frac_poly_trim(a)
    return _frac_poly_trim(q), a


def cyclo_inverse(a: CycloNumber) -> CycloNumber:
    """Multiplicative inverse in Q(zeta_k) via extended Euclid against Phi_k."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    k = a.k
    if a.phi == 1:
        return CycloNumber._make(k, (a.den * (1 if a.num[0] > 0 else -1),), abs(a.num[0]))
    # invariant: s_i * a == r_i (mod Phi_k)
    r0 = [Fraction(c) for c in cyclotomic_coeffs(k)]
    r1 = _frac_poly_trim([Fraction(c, a.den) for c in a.num])
    s0: list[Fraction] = []
    s1 = [Fraction(1)]
    while len(r1) > 1:
        q, rem = _frac_divmod(r0, r1)
        qs = _poly_frac_mul(q, s1)
        s_new = [x - y for x, y in _zip_pad(s0, qs)]
        r0, r1 = r1, rem
        s0, s1 = s1, _frac_poly_trim(s_new)
    # r1 is a nonzero constant since Phi_k is irreducible
    c = r1[0]
    coeffs = [x / c for x in s1]
    return CycloNumber(k, coeffs)


def _poly_frac_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def to_cyclo(k: int, value: Scalar) -> CycloNumber:
    if isinstance(value, CycloNumber):
        if value.k != k:
            raise ConductorMismatchError(f"expected conductor {k}, got {value.k}")
        return value
    return CycloNumber.from_rational(k, value)


# ---------------------------------------------------------------------------
# dense polynomials over Q(zeta_k)


class Poly:
    """Dense univariate polynomial with coefficients in Q(zeta_k)."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Iterable[Scalar] = ()):
        self.k = k
        cs = [to_cyclo(k, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[CycloNumber, ...] = tuple(cs)

    @classmethod
    def one(cls, k: int) -> "Poly":
        return cls(k, [1])

    @classmethod
    def monomial(cls, k: int, coeff: Scalar, degree: int) -> "Poly":
        return cls(k, [0] * degree + [coeff])

    @classmethod
    def one_minus(cls, k: int, t: Scalar, degree: int) -> "Poly":
        """The polynomial 1 - t*x^degree."""
        t = to_cyclo(k, t)
        return cls(k, [1] + [0] * (degree - 1) + [-t])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> CycloNumber:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return CycloNumber.zero(self.k)

    def _check(self, other: "Poly") -> None:
        if other.k != self.k:
            raise ConductorMismatchError(f"polynomials over Q(zeta_{self.k}) and Q(zeta_{other.k})")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.k, [self[i] + other[i] for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.k, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_cyclo(self.k, other)
            return Poly(self.k, [a * c for a in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly(self.k)
        if self.coeffs[0].phi == 1:
            return self._mul_rational(other)
        out = [CycloNumber.zero(self.k)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.k, out)

    __rmul__ = __mul__

    def _mul_rational(self, other: "Poly") -> "Poly":
        # Q(zeta_k) = Q: convolve plain integers over a common denominator
        a = [(i, c.num[0], c.den) for i, c in enumerate(self.coeffs) if c.num[0]]
        b = [(j, c.num[0], c.den) for j, c in enumerate(other.coeffs) if c.num[0]]
        da = math.lcm(*(d for _, _, d in a))
        db = math.lcm(*(d for _, _, d in b))
        bs = [(j, y * (db // dy)) for j, y, dy in b]
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x, dx in a:
            x = x * (da // dx)
            for j, y in bs:
                out[i + j] += x * y
        den = da * db
        k = self.k
        return Poly._from_cyclo(k, [CycloNumber._make(k, (c,), den) for c in out])

    @classmethod
    def _from_cyclo(cls, k: int, cs: list[CycloNumber]) -> "Poly":
        p = cls.__new__(cls)
        p.k = k
        while cs and cs[-1].is_zero():
            cs.pop()
        p.coeffs = tuple(cs)
        return p

    def __pow__(self, e: int) -> "Poly":
        result = Poly.one(self.k)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.k, self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        inv_lead = cyclo_inverse(other.coeffs[-1])
        quo = [CycloNumber.zero(self.k)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c.is_zero():
                continue
            q = c * inv_lead
            quo[i - dd] = q
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    rem[i - dd + j] = rem[i - dd + j] - q * b
        return Poly(self.k, quo), Poly(self.k, rem)

    def is_integral(self) -> bool:
        return all(c.is_rational() and c.den == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [c.num[0] for c in self.coeffs]

    def __repr__(self) -> str:
        return f"Poly({self.k}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Poly, var: str = "x", zvar: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if c.is_rational():
            q = c.to_fraction()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            body = str(mag) if (not mono or mag != 1) else ""
            body = f"{body}*{mono}" if body and mono else (body or mono)
        elif c.nonzero_count() == 1:
            neg = next(x for x in c.num if x) < 0
            sign = "-" if neg else "+"
            body = format_cyclo(-c if neg else c, zvar)
            body = f"{body}*{mono}" if mono else body
        else:
            sign = "+"
            body = f"({format_cyclo(c, zvar)})"
            body = f"{body}*{mono}" if mono else body
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def cyclotomic_polynomial(d: int) -> Poly:
    """Phi_d(x) as a polynomial over Q (conductor 1)."""
    return Poly(1, cyclotomic_coeffs(d))


def poly_div_exact(num: Poly, den: Poly) -> Poly:
    q, r = num.divmod(den)
    if not r.is_zero():
        raise NotDivisibleError(f"{den} does not divide {num} (remainder {r})")
    return q


# ---------------------------------------------------------------------------
# truncated series


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple[CycloNumber, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"series of order {self.order} needs {self.order + 1} coefficients")

    def __getitem__(self, i: int) -> CycloNumber:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)


def series_expand(num: Poly, den: Poly, order: int) -> TruncatedSeries:
    """Coefficients 0..order of num/den, from den * s = num."""
    num._check(den)
    if order < 0:
        raise ValueError("truncation order must be non-negative")
    if den.is_zero() or den[0].is_zero():
        raise NonUnitDenominatorError("denominator vanishes at x = 0")
    k = num.k
    inv0 = cyclo_inverse(den[0])
    dcoeffs = [(j, c) for j, c in enumerate(den.coeffs) if j > 0 and not c.is_zero()]
    out: list[CycloNumber] = []
    for m in range(order + 1):
        acc = num[m]
        for j, c in dcoeffs:
            if j > m:
                break
            s = out[m - j]
            if not s.is_zero():
                acc = acc - c * s
        out.append(acc if inv0 == 1 else acc * inv0)
    if not out:
        out = [CycloNumber.zero(k)]
    return TruncatedSeries(order, tuple(out))


# ---------------------------------------------------------------------------
# exact rank


def _pivot_cost(a: CycloNumber) -> tuple[int, int]:
    return (a.nonzero_count(), a.bit_size())


def exact_rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Rank over Q(zeta_k) by Gaussian elimination with field inverses.

    Rank is unchanged by extending scalars to C, so this is also the
    dimension of the complex span of the rows (or columns).
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return 0
    ks = {e.k for r in rows for e in r if isinstance(e, CycloNumber)}
    if len(ks) > 1:
        raise ConductorMismatchError(f"matrix mixes conductors {sorted(ks)}")
    k = ks.pop() if ks else 1
    ncols = max(len(r) for r in rows)
    rows = [[to_cyclo(k, e) for e in r] + [CycloNumber.zero(k)] * (ncols - len(r)) for r in rows]
    # drop exact duplicates and zero rows up front; neither changes rank
    seen = set()
    work = []
    for r in rows:
        key = tuple(r)
        if key in seen or not any(not e.is_zero() for e in r):
            continue
        seen.add(key)
        work.append(r)
    rank = 0
    for col in range(ncols):
        best = None
        best_cost = None
        for i in range(rank, len(work)):
            e = work[i][col]
            if e.is_zero():
                continue
            cost = _pivot_cost(e)
            if best is None or cost < best_cost:
                best, best_cost = i, cost
                if cost == (1, 2):
                    break
        if best is None:
            continue
        work[rank], work[best] = work[best], work[rank]
        prow = work[rank]
        inv = cyclo_inverse(prow[col])
        if not inv == 1:
            prow = [e * inv if not e.is_zero() else e for e in prow]
            work[rank] = prow
        tail = [(j, prow[j]) for j in range(col + 1, ncols) if not prow[j].is_zero()]
        for i in range(rank + 1, len(work)):
            row = work[i]
            f = row[col]
            if f.is_zero():
                continue
            row[col] = CycloNumber.zero(k)
            for j, pj in tail:
                row[j] = row[j] - f * pj
        rank += 1
        if rank == len(work):
            break
    return rank
