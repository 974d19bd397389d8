"""Partitions, conjugacy classes of C_k wr S_n, and the partition families
used for the lower-bound arguments."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import gcd
from typing import Callable, Iterator, Sequence

from .algebra import CycloNumber

Partition = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def is_partition(parts: Sequence[int]) -> bool:
    return all(x > 0 for x in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[Partition]:
    """All partitions of n, in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions_bounded(n, n))


@dataclass(frozen=True, order=True)
class ClassLabel:
    """A conjugacy class of C_k wr S_n.

    ``pairs`` is the canonical multiset of (cycle length, exponent a) with
    the cycle product t = zeta_k ** a, sorted by length descending and then
    exponent ascending.
    """

    k: int
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, k: int, pairs) -> "ClassLabel":
        if k < 1:
            raise ValueError("k must be positive")
        canon = []
        for part, a in pairs:
            if part < 1:
                raise ValueError(f"cycle lengths must be positive, got {part}")
            canon.append((int(part), int(a) % k))
        canon.sort(key=lambda pa: (-pa[0], pa[1]))
        return cls(k, tuple(canon))

    @classmethod
    def from_parts(cls, k: int, parts: Sequence[int], exponents: Sequence[int] | None = None) -> "ClassLabel":
        if exponents is None:
            exponents = [0] * len(parts)
        if len(exponents) != len(parts):
            raise ValueError("parts and exponents differ in length")
        return cls.make(k, zip(parts, exponents))

    @property
    def n(self) -> int:
        return sum(part for part, _ in self.pairs)

    @property
    def partition(self) -> Partition:
        return tuple(part for part, _ in self.pairs)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.pairs)

    def t_values(self) -> list[CycloNumber]:
        return [CycloNumber.zeta(self.k, a) for _, a in self.pairs]

    def __str__(self) -> str:
        body = ", ".join(f"{part}^z{a}" if a else str(part) for part, a in self.pairs)
        return f"[{body}]_k={self.k}"


def classes(n: int, k: int) -> list[ClassLabel]:
    """One label per conjugacy class of C_k wr S_n.

    For each partition, every part size of multiplicity m receives a multiset
    of m exponents mod k.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    out = []
    for lam in partitions(n):
        mult = sorted(Counter(lam).items(), key=lambda kv: -kv[0])
        choices = [list(combinations_with_replacement(range(k), m)) for _, m in mult]
        for combo in product(*choices):
            pairs = []
            for (part, _), exps in zip(mult, combo):
                pairs.extend((part, a) for a in exps)
            out.append(ClassLabel(k, tuple(pairs)))
    return out


def r_p(k: int, p: int) -> int:
    """The p'-part of k: k with every factor of p removed."""
    _require_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    while k % p == 0:
        k //= p
    return k


def root_order(k: int, a: int) -> int:
    """Multiplicative order of zeta_k ** a."""
    return k // gcd(k, a % k)


def is_p_regular(c: ClassLabel, p: int) -> bool:
    _require_prime(p)
    return all(part % p and root_order(c.k, a) % p for part, a in c.pairs)


# ---------------------------------------------------------------------------
# partition families


@dataclass(frozen=True)
class PartitionFamily:
    name: str
    params: tuple[int, ...]
    members: tuple[Partition, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self.members


def _hook_shape(lam: Partition) -> tuple[int, int, int] | None:
    """Decompose lam as (a^b, 1^c) with a > 1; returns (a, b, c), or None.

    The all-ones partition returns (1, 0, len(lam)).
    """
    big = [x for x in lam if x > 1]
    ones = len(lam) - len(big)
    if not big:
        return (1, 0, ones)
    if len(set(big)) != 1:
        return None
    return (big[0], len(big), ones)


def in_W(lam: Partition) -> bool:
    return _hook_shape(tuple(lam)) is not None


def in_A(lam: Partition, p: int) -> bool:
    shape = _hook_shape(tuple(lam))
    return shape is not None and shape[0] % p != 0


def in_X(lam: Partition, p: int) -> bool:
    return all(x % p for x in lam)


def _family(name: str, params: tuple[int, ...], n: int, pred: Callable[[Partition], bool]) -> PartitionFamily:
    return PartitionFamily(name, params, tuple(lam for lam in partitions(n) if pred(lam)))


def W_set(m: int) -> PartitionFamily:
    """Partitions of m of the form (a^b, 1^{m-ab}) with a > 1, plus (1^m).

    m = 0 gives the single empty partition.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    return _family("W", (m,), m, in_W)


def A_set(p: int, n: int) -> PartitionFamily:
    """Partitions of n of the form (r^a, 1^b), r > 1 coprime to p, plus (1^n)."""
    _require_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    return _family("A", (p, n), n, lambda lam: in_A(lam, p))


def X_set(p: int, n: int) -> PartitionFamily:
    """Partitions of n with every part coprime to p."""
    _require_prime(p)
    return _family("X", (p, n), n, lambda lam: in_X(lam, p))


def W_count(m: int) -> int:
    return 1 + sum(m // t for t in range(2, m + 1))


def A_count(p: int, n: int) -> int:
    return 1 + sum(n // r for r in range(2, n + 1) if r % p)


# ---------------------------------------------------------------------------
# matrices


def class_representative(c: ClassLabel) -> list[list[CycloNumber]]:
    """A generalized permutation matrix in the class ``c``.

    Cycles occupy consecutive index blocks in label order; column j holds the
    image of e_j.  Each cycle carries zeta^a on its closing entry and 1
    elsewhere, so its cycle product is zeta^a.
    """
    n, k = c.n, c.k
    if n < 1:
        raise ValueError("class representative needs n >= 1")
    zero = CycloNumber.zero(k)
    one = CycloNumber.one(k)
    m = [[zero] * n for _ in range(n)]
    start = 0
    for part, a in c.pairs:
        block = list(range(start, start + part))
        for i, j in enumerate(block):
            target = block[(i + 1) % part]
            m[target][j] = CycloNumber.zeta(k, a) if i == part - 1 else one
        start += part
    return m


def permutation_of(matrix: Sequence[Sequence[CycloNumber]]) -> list[int]:
    """pi with matrix[pi[j]][j] the unique nonzero entry of column j."""
    n = len(matrix)
    pi = []
    for j in range(n):
        nz = [i for i in range(n) if not matrix[i][j].is_zero()]
        if len(nz) != 1:
            raise ValueError(f"column {j} does not have exactly one nonzero entry")
        pi.append(nz[0])
    if sorted(pi) != list(range(n)):
        raise ValueError("not a generalized permutation matrix")
    return pi


def _root_exponent(z: CycloNumber) -> int:
    for a in range(z.k):
        if z == CycloNumber.zeta(z.k, a):
            return a
    raise ValueError(f"{z} is not a k-th root of unity")


def class_label_of(matrix: Sequence[Sequence[CycloNumber]]) -> ClassLabel:
    """Recover (cycle type, cycle products) from a generalized permutation matrix."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    k = matrix[0][0].k
    pi = permutation_of(matrix)
    seen = [False] * n
    pairs = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        prod = CycloNumber.one(k)
        j = s
        while not seen[j]:
            seen[j] = True
            prod = prod * matrix[pi[j]][j]
            j = pi[j]
            length += 1
        pairs.append((length, _root_exponent(prod)))
    return ClassLabel.make(k, pairs)


def colored_partition_count(n: int, k: int) -> int:
    """Coefficient of x^n in prod_j (1 - x^j)^(-k)."""
    coeffs = [1] + [0] * n
    for j in range(1, n + 1):
        for _ in range(k):
            for m in range(j, n + 1):
                coeffs[m] += coeffs[m - j]
    return coeffs[n]
