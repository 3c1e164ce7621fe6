"""Closed-form bounds: cyclic polytope face numbers, the upper bound check on
strata counts, the explicit vertex bound, and bounds on Vandermonde
coverings."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .combinatorics import partition_count
from .exceptions import DomainError
from .poset import FaceVectors, f_from_h


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def gale_facets(d: int, m: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic polytope ``C_d(m)`` as vertex-index tuples,
    selected by Gale's evenness condition."""
    out = []
    for S in combinations(range(m), d):
        members = set(S)
        ok = True
        outside = [i for i in range(m) if i not in members]
        for a, b in zip(outside, outside[1:]):
            if (b - a - 1) % 2:
                ok = False
                break
        if ok:
            out.append(S)
    return out


def cyclic_face_vector(d: int, m: int) -> tuple[int, ...]:
    """``(f_0, ..., f_{d-1})`` of the cyclic d-polytope on m vertices.

    The polytope is simplicial, so its proper faces are exactly the subsets
    of Gale facets; counts are taken over the union of those subsets.
    """
    if d < 1 or m < d + 1:
        raise DomainError(f"cyclic polytope needs m >= d + 1 >= 2, got d={d}, m={m}")
    facets = gale_facets(d, m)
    counts = []
    for k in range(1, d + 1):
        faces = {sub for F in facets for sub in combinations(F, k)}
        counts.append(len(faces))
    return tuple(counts)


def cyclic_face_vector_closed_form(d: int, m: int) -> tuple[int, ...]:
    """Same numbers from the cyclic h-vector ``h_i = C(m-d-1+i, i)`` for
    ``i <= d/2`` extended palindromically."""
    if d < 1 or m < d + 1:
        raise DomainError(f"cyclic polytope needs m >= d + 1 >= 2, got d={d}, m={m}")
    h = [comb(m - d - 1 + min(i, d - i), min(i, d - i)) for i in range(d + 1)]
    # f_from_h gives (f_{-1}, ..., f_{d-1}) reversed in our strata convention
    f = f_from_h(h)
    return tuple(reversed(f[:-1]))


def ubt_check(fv: FaceVectors | Sequence[int], n: int, s: int) -> list[bool]:
    """Per ``i in 1..n-s`` whether ``f_{n-s-i} <= c_{i-1}``, the cyclic
    polytope being of dimension ``n - s`` on ``f_{n-s-1}`` vertices."""
    f = tuple(fv.f if isinstance(fv, FaceVectors) else fv)
    d = n - s
    if len(f) != d + 1:
        raise DomainError(f"f-vector of length {len(f)} does not match n - s = {d}")
    if d == 0:
        return []
    m = f[d - 1]
    if m < d + 1:
        return [False] * d
    c = cyclic_face_vector_closed_form(d, m)
    return [f[d - i] <= c[i - 1] for i in range(1, d + 1)]


def f0_bound(n: int, s: int) -> int:
    """Largest possible number of zero-dimensional strata."""
    if not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got n={n}, s={s}")
    if (n - s) % 2 == 0:
        k = (n - s) // 2
        return _binom(n - 1 - k, k) + _binom(n - 2 - k, k - 1)
    k = (n - s - 1) // 2
    return 2 * _binom(n - 2 - k, k)


def _check_ns(n: int, s: int) -> None:
    if not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got n={n}, s={s}")


def covering_upper_bound(n: int, s: int) -> int:
    _check_ns(n, s)
    return partition_count(n - _ceil_div(s, 2), s // 2)


def covering_lower_trivial(n: int, s: int) -> int:
    _check_ns(n, s)
    denom = _ceil_div(s - 1, 2) * _ceil_div(s + 1, 2)
    return _ceil_div(2 * covering_upper_bound(n, s), denom)


def covering_lower_recursive(n: int, s: int) -> tuple[int, tuple[int, ...]]:
    """Recursive lower bound and its summands ``(B_0, ..., B_{s//2})``.

    Negative summands are clamped to zero.
    """
    _check_ns(n, s)
    B = [0, 1]
    for i in range(2, s // 2 + 1):
        num = 2 * (partition_count(n - s + 1, i) - i * B[i - 1] - B[i - 2])
        B.append(max(0, _ceil_div(num, i * i + i)))
    return sum(B), tuple(B)


@dataclass(frozen=True)
class BoundReport:
    n: int
    s: int
    f0_bound: int
    covering_upper: int
    covering_lower_trivial: int
    covering_lower_recursive: int
    B: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"schema": "1", **asdict(self), "B": list(self.B)}


def bound_report(n: int, s: int) -> BoundReport:
    lower, B = covering_lower_recursive(n, s)
    return BoundReport(n, s, f0_bound(n, s), covering_upper_bound(n, s),
                       covering_lower_trivial(n, s), lower, B)
