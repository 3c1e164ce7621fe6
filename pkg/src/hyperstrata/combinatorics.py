"""Compositions, partitions and the orders between them.

Everything here is exact integer arithmetic on immutable tuples.  A
composition is identified with its set of prefix sums, stored as a bitmask
(bit ``p - 1`` set for every prefix sum ``p``), so ``mu <= lam`` is a single
mask test.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exceptions import DomainError

#: Largest n supported; prefix sets are kept as bitmasks over [n].
MAX_N = 64


def _check_n(n: int) -> None:
    if n > MAX_N:
        raise DomainError(f"n={n} exceeds the supported maximum {MAX_N}")


class Composition(tuple):
    """Ordered tuple of positive integers.

    Compares lexicographically like a tuple and serializes to a JSON array.
    """

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise DomainError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise DomainError(f"composition parts must be positive: {parts}")
        _check_n(sum(parts))
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @cached_property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @cached_property
    def mask(self) -> int:
        m, acc = 0, 0
        for p in self:
            acc += p
            m |= 1 << (acc - 1)
        return m

    def prefix_sums(self) -> frozenset[int]:
        """Prefix sums excluding 0; always contains ``n``."""
        return frozenset(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def reverse(self) -> "Composition":
        return Composition(self[::-1])

    def sorted(self) -> "Partition":
        return Partition(sorted(self, reverse=True))

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "Composition":
        parts, last = [], 0
        for i in range(n):
            if mask >> i & 1:
                parts.append(i + 1 - last)
                last = i + 1
        return cls(parts)

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (an orbit type)."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise DomainError("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise DomainError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        _check_n(sum(parts))
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @cached_property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def as_composition(x) -> Composition:
    return x if isinstance(x, Composition) else Composition(x)


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        x = [int(t) for t in x.replace(" ", "").split(",") if t]
    return Partition(x)


def _check_nl(n: int, l: int) -> None:
    if n < 1 or l < 1 or l > n:
        raise DomainError(f"need 1 <= l <= n, got n={n}, l={l}")
    _check_n(n)


def enumerate_compositions(n: int, l: int) -> list[Composition]:
    """All compositions of ``n`` into exactly ``l`` parts, lexicographic."""
    _check_nl(n, l)
    out = []
    # lexicographic order of cut sets equals lexicographic order of parts
    for cuts in combinations(range(1, n), l - 1):
        bounds = (0,) + cuts + (n,)
        out.append(Composition(b - a for a, b in zip(bounds, bounds[1:])))
    return out


def enumerate_partitions(n: int, l: int) -> list[Partition]:
    """All partitions of ``n`` into exactly ``l`` parts, lexicographically
    decreasing."""
    _check_nl(n, l)

    def rec(total, k, cap):
        if k == 0:
            if total == 0:
                yield ()
            return
        # every remaining part is at least 1
        for first in range(min(cap, total - (k - 1)), 0, -1):
            if first * k < total:
                break
            for rest in rec(total - first, k - 1, first):
                yield (first,) + rest

    return [Partition(p) for p in rec(n, l, n)]


@lru_cache(maxsize=None)
def partition_count(n: int, k: int) -> int:
    """Number of partitions of ``n`` into exactly ``k`` parts."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return partition_count(n - 1, k - 1) + partition_count(n - k, k)


def composition_count(n: int, l: int) -> int:
    return comb(n - 1, l - 1) if 1 <= l <= n else 0


def leq_composition(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam``: mu arises from lam by merging adjacent parts."""
    mu, lam = as_composition(mu), as_composition(lam)
    if mu.n != lam.n:
        raise DomainError(f"compositions of different n: {mu.n} vs {lam.n}")
    return mu.mask & ~lam.mask == 0


def quotient(lam: Sequence[int], mu: Sequence[int]) -> Composition:
    """The composition ``lam / mu`` recording how many consecutive parts of
    the finer ``mu`` form each part of the coarser ``lam``."""
    lam, mu = as_composition(lam), as_composition(mu)
    if not leq_composition(lam, mu):
        raise DomainError(f"quotient needs {tuple(lam)} <= {tuple(mu)}")
    nu, count, acc = [], 0, 0
    it = iter(lam)
    target = next(it)
    for p in mu:
        acc += p
        count += 1
        if acc == target:
            nu.append(count)
            count = 0
            target += next(it, 0)
    return Composition(nu)


def is_alternate_odd(mu: Sequence[int]) -> bool:
    """Last, third-last, ... parts all equal 1."""
    return all(p == 1 for p in tuple(mu)[::-1][0::2])


def is_alternate_even(mu: Sequence[int]) -> bool:
    """Second-last, fourth-last, ... parts all equal 1."""
    return all(p == 1 for p in tuple(mu)[::-1][1::2])


def upper_covers(mu: Sequence[int]) -> list[Composition]:
    """Compositions obtained by splitting exactly one part in two."""
    mu = tuple(mu)
    out = set()
    for i, p in enumerate(mu):
        for a in range(1, p):
            out.add(Composition(mu[:i] + (a, p - a) + mu[i + 1:]))
    return sorted(out)


def lower_covers(mu: Sequence[int]) -> list[Composition]:
    """Compositions obtained by merging one pair of adjacent parts."""
    mu = tuple(mu)
    return sorted({Composition(mu[:i] + (mu[i] + mu[i + 1],) + mu[i + 2:])
                   for i in range(len(mu) - 1)})


@lru_cache(maxsize=200_000)
def _blocks_fit(targets: tuple[int, ...], items: tuple[int, ...]) -> bool:
    # targets: sorted residual block sums; items: remaining parts, decreasing
    if not items:
        return not targets
    x, rest = items[0], items[1:]
    tried = set()
    for i, t in enumerate(targets):
        if t < x or t in tried:
            continue
        tried.add(t)
        left = targets[:i] + targets[i + 1:]
        if t > x:
            left = tuple(sorted(left + (t - x,)))
        if _blocks_fit(left, rest):
            return True
    return False


def leq_partition(p: Sequence[int], q: Sequence[int]) -> bool:
    """``p <= q``: p is obtained from q by summing groups of parts and
    reordering."""
    p, q = as_partition(p), as_partition(q)
    if p.n != q.n:
        raise DomainError(f"partitions of different n: {p.n} vs {q.n}")
    if p.length > q.length:
        return False
    if p.length == q.length:
        return p == q
    return _blocks_fit(tuple(sorted(p)), tuple(q))


def min_max_sets(n: int, s: int):
    """Alternate-odd (``C_min``) and alternate-even (``C_max``) compositions
    of n into s parts, and their partition images.

    Returns ``(P_min, P_max, C_min, C_max)``; partition lists are
    deduplicated and lexicographically decreasing.
    """
    comps = enumerate_compositions(n, s)
    c_min = [c for c in comps if is_alternate_odd(c)]
    c_max = [c for c in comps if is_alternate_even(c)]
    p_min = sorted({c.sorted() for c in c_min}, reverse=True)
    p_max = sorted({c.sorted() for c in c_max}, reverse=True)
    return p_min, p_max, c_min, c_max
