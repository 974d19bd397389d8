"""Closed-form bounds on span dimensions, evaluated as exact rationals.

Formulas involving logarithms or Euler's constant are evaluated in interval
arithmetic and the appropriate endpoint is taken: upper bounds round up,
lower bounds round down.  A comparison against an integer dimension is
therefore never wrong in the unsafe direction.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv

from .combinatorics import A_count, W_count, r_p

_PREC = 256
_lock = threading.Lock()


@contextmanager
def _interval_precision(bits: int = _PREC):
    with _lock:
        saved = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = saved


def _mpf_to_fraction(value) -> Fraction:
    sign, man, exp, _ = value
    if not man:
        return Fraction(0)
    q = Fraction(int(man)) * (Fraction(2) ** exp)
    return -q if sign else q


def _lower(x) -> Fraction:
    return _mpf_to_fraction(x._mpi_[0])


def _upper(x) -> Fraction:
    return _mpf_to_fraction(x._mpi_[1])


def _ln(n: int):
    return iv.log(iv.mpf(n))


def _log_base(n: int, p: int):
    return _ln(n) / _ln(p)


def _exact_log(n: int, p: int) -> int | None:
    """log_p n when n is a power of p, else None."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


def log_base_upper(n: int, p: int) -> Fraction:
    """An upper bound for log_p n, exact when n is a power of p."""
    e = _exact_log(n, p)
    if e is not None:
        return Fraction(e)
    with _interval_precision():
        return _upper(_log_base(n, p))


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


# -- characteristic zero ----------------------------------------------------


def ub_D(n: int, k: int) -> Fraction:
    """k n^2 / 2 + (k/2 - 1) n + 1."""
    return Fraction(k * n * n, 2) + (Fraction(k, 2) - 1) * n + 1


def lb_D_family(n: int, k: int) -> int:
    """k |W_{n-1}|; for n = 1 the family is {1/(1 - zeta^r x)} of size k."""
    return k * W_count(n - 1)


def lb_D_log(n: int, k: int) -> Fraction:
    """k((n-1) ln(n-1) - 2(n-2)), rounded down; requires n >= 2."""
    if n < 2:
        raise ValueError("logarithmic lower bound needs n >= 2")
    with _interval_precision():
        v = k * ((n - 1) * _ln(n - 1) - 2 * (n - 2))
        return _lower(v)


def W_harmonic_lower(m: int) -> Fraction:
    """1 + m H_m - m - (m - 1), an exact lower bound for |W_m|."""
    return 1 + m * harmonic(m) - m - (m - 1)


# -- prime characteristic ---------------------------------------------------


def ub_delta_p(p: int, n: int) -> Fraction:
    """p/(2p+2) n^2 + n (log_p n + 1), rounded up."""
    return Fraction(p, 2 * p + 2) * n * n + n * (log_base_upper(n, p) + 1)


def ub_B(p: int, n: int) -> Fraction:
    """p/(2p+2) n^2 + n log_p n + 1, rounded up."""
    return Fraction(p, 2 * p + 2) * n * n + n * log_base_upper(n, p) + 1


def ub_B_wreath(p: int, n: int, k: int) -> Fraction:
    """r_p(k) (p/(2p+2) n^2 + n (log_p n + 1)) - n + 1, rounded up."""
    return r_p(k, p) * ub_delta_p(p, n) - n + 1


def lb_B_family(p: int, n: int) -> int:
    return A_count(p, n)


def lb_B_stated(p: int, n: int) -> Fraction:
    """(p-1)/p n ln n + n(gamma - 1 - (p-1)/p - gamma/p), rounded down."""
    with _interval_precision():
        g = iv.euler
        q = iv.mpf(p - 1) / p
        v = q * n * _ln(n) + n * (g - 1 - q - g / p)
        return _lower(v)


def lb_B_proof(p: int, n: int) -> Fraction:
    """1 + (p-1)/p n ln n + n(gamma - 1 - gamma/p), rounded down."""
    with _interval_precision():
        g = iv.euler
        q = iv.mpf(p - 1) / p
        v = 1 + q * n * _ln(n) + n * (g - 1 - g / p)
        return _lower(v)


def A_harmonic_lower(p: int, n: int) -> Fraction:
    """1 + n(H_n - 1 - H_{floor(n/p)} / p), exact."""
    return 1 + n * (harmonic(n) - 1 - harmonic(n // p) / p)
