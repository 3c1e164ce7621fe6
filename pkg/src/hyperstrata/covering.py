"""Potential hyperbolic posets and Vandermonde coverings.

Search works over bitmasks indexed by ``enumerate_compositions(n, s)``.  For
every composition ``lam`` longer than ``s`` we precompute which facets lie
below it and which of those have an alternate-odd or alternate-even
quotient.  A facet set is potential iff every ``lam`` that dominates some
chosen facet dominates exactly one chosen odd and exactly one chosen even
facet.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .bounds import covering_lower_recursive, covering_upper_bound, f0_bound
from .combinatorics import (Composition, Partition, as_composition, as_partition,
                            enumerate_compositions, enumerate_partitions,
                            is_alternate_even, is_alternate_odd, leq_partition,
                            quotient)
from .exceptions import DomainError, ScaleGuardError
from .poset import build_poset, is_potential

#: Largest ``|C(n, s)|`` enumerated without ``force=True``.
SCALE_GUARD = 40

CAVEAT = ("minimality is over the family of potential hyperbolic posets; it "
          "transfers to hyperbolic slices only where every potential poset is "
          "realizable")

FacetSet = tuple[Composition, ...]


@dataclass(frozen=True)
class _Constraint:
    down: int
    odd: int
    even: int


@lru_cache(maxsize=64)
def _instance(n: int, s: int):
    comps = enumerate_compositions(n, s)
    cons = []
    for l in range(s + 1, n + 1):
        for lam in enumerate_compositions(n, l):
            down = odd = even = 0
            for i, mu in enumerate(comps):
                if mu.mask & ~lam.mask:
                    continue
                down |= 1 << i
                q = quotient(mu, lam)
                if is_alternate_odd(q):
                    odd |= 1 << i
                if is_alternate_even(q):
                    even |= 1 << i
            cons.append(_Constraint(down, odd, even))
    return comps, tuple(cons)


def _propagate(chosen: int, excluded: int, cons) -> tuple[int, int] | None:
    """Apply the exact-one rules to a fixpoint; ``None`` on contradiction."""
    changed = True
    while changed:
        changed = False
        for c in cons:
            for group in (c.odd, c.even):
                hit = chosen & group
                if hit & (hit - 1):
                    return None
                if hit:
                    rest = group & ~hit & ~excluded
                    if rest:
                        excluded |= rest
                        changed = True
                elif chosen & c.down:
                    free = group & ~excluded
                    if not free:
                        return None
                    if not free & (free - 1):
                        chosen |= free
                        changed = True
        if chosen & excluded:
            return None
    return chosen, excluded


def _is_potential_mask(chosen: int, cons) -> bool:
    for c in cons:
        if chosen & c.down:
            for group in (c.odd, c.even):
                hit = chosen & group
                if not hit or hit & (hit - 1):
                    return False
    return True


def _search(chosen: int, excluded: int, k: int, cons, lo: int, hi: int, out: list):
    state = _propagate(chosen, excluded, cons)
    if state is None:
        return
    chosen, excluded = state
    size = chosen.bit_count()
    if size > hi:
        return
    undecided = ((1 << k) - 1) & ~chosen & ~excluded
    if size + undecided.bit_count() < lo:
        return
    if not undecided:
        if chosen and _is_potential_mask(chosen, cons):
            out.append(chosen)
        return
    bit = undecided & -undecided
    _search(chosen | bit, excluded, k, cons, lo, hi, out)
    _search(chosen, excluded | bit, k, cons, lo, hi, out)


def _subtree(args):
    n, s, chosen, excluded, lo, hi = args
    comps, cons = _instance(n, s)
    out = []
    _search(chosen, excluded, len(comps), cons, lo, hi, out)
    return out


def _split(chosen, excluded, k, cons, depth):
    """Frontier of partial assignments after ``depth`` branchings."""
    frontier = [(chosen, excluded)]
    for _ in range(depth):
        nxt = []
        for c, e in frontier:
            state = _propagate(c, e, cons)
            if state is None:
                continue
            c, e = state
            undecided = ((1 << k) - 1) & ~c & ~e
            if not undecided:
                nxt.append((c, e))
                continue
            bit = undecided & -undecided
            nxt += [(c | bit, e), (c, e | bit)]
        frontier = nxt
    return frontier


def canonical_reversal(S: Iterable[Sequence[int]]) -> FacetSet:
    """Lexicographically smaller of ``sorted(S)`` and its reversal."""
    fwd = tuple(sorted(as_composition(m) for m in S))
    rev = tuple(sorted(m.reverse() for m in fwd))
    return min(fwd, rev)


def _resolve_jobs(n_jobs: int | None) -> int:
    if n_jobs is None:
        n_jobs = int(os.environ.get("HYPERSTRATA_JOBS", "1"))
    return max(1, n_jobs)


def enumerate_potential(n: int, s: int, up_to_reversal: bool = False, *,
                        n_jobs: int | None = None, force: bool = False,
                        use_size_bounds: bool = True) -> list[FacetSet]:
    """All facet sets ``S`` of length-``s`` compositions of ``n`` whose
    upward closure is a potential hyperbolic poset.

    ``use_size_bounds`` restricts to ``n - s + 1 <= |S| <= f0_bound(n, s)``.
    Output is sorted and identical for every ``n_jobs``.
    """
    if not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got n={n}, s={s}")
    k = comb(n - 1, s - 1)
    if k > SCALE_GUARD and not force:
        raise ScaleGuardError(
            f"|C({n},{s})| = {k} exceeds the scale guard {SCALE_GUARD}; "
            f"naive search space 2^{k}; pass force=True to run anyway",
            estimate=2 ** k)
    comps, cons = _instance(n, s)
    lo, hi = (n - s + 1, f0_bound(n, s)) if use_size_bounds else (1, k)
    jobs = _resolve_jobs(n_jobs)
    if jobs == 1:
        masks = []
        _search(0, 0, k, cons, lo, hi, masks)
    else:
        frontier = _split(0, 0, k, cons, depth=min(k, 6))
        tasks = [(n, s, c, e, lo, hi) for c, e in frontier]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            masks = [m for part in pool.map(_subtree, tasks) for m in part]
    family = {tuple(comps[i] for i in range(k) if m >> i & 1) for m in masks}
    if up_to_reversal:
        family = {canonical_reversal(S) for S in family}
    return sorted(family)


def enumerate_potential_naive(n: int, s: int) -> list[FacetSet]:
    """Brute force over all ``2^|C(n,s)|`` subsets with the poset-level
    axiom check.  Oracle for small instances only."""
    comps = enumerate_compositions(n, s)
    out = []
    for m in range(1, 1 << len(comps)):
        S = tuple(comps[i] for i in range(len(comps)) if m >> i & 1)
        if is_potential(S, n, s)[0]:
            out.append(S)
    return sorted(out)


# --------------------------------------------------------------------------
# coverings


def _witness(P: Sequence[Partition], S: FacetSet, n: int, s: int):
    for lam in build_poset(S, n, s).elements():
        p = lam.sorted()
        for q in P:
            if leq_partition(p, q):
                return q, lam
    return None


def is_covering(P: Iterable, family: Sequence[FacetSet]):
    """Whether every facet set in ``family`` has an element whose orbit type
    lies below some partition of ``P``.

    Returns ``(ok, witnesses)`` with one ``(q, lam)`` pair or ``None`` per
    facet set.
    """
    P = sorted({as_partition(q) for q in P}, reverse=True)
    witnesses = []
    for S in family:
        S = tuple(as_composition(m) for m in S)
        mu = S[0]
        witnesses.append(_witness(P, S, mu.n, mu.length))
    return all(w is not None for w in witnesses), witnesses


def _coverage(family: Sequence[FacetSet], candidates: Sequence[Partition]) -> list[int]:
    """Bitmask over family indices covered by each candidate partition."""
    cov = []
    types = [{as_composition(mu).sorted() for mu in S} for S in family]
    for q in candidates:
        cov.append(sum(1 << i for i, T in enumerate(types) if q in T))
    return cov


def _exact(cov: list[int], full: int, k: int, chosen: list[int], covered: int,
           members: list[list[int]]):
    if covered == full:
        return list(chosen)
    if len(chosen) == k:
        return None
    # branch on the uncovered set with the fewest covering candidates
    best = None
    rest = full & ~covered
    while rest:
        bit = rest & -rest
        rest ^= bit
        opts = members[bit.bit_length() - 1]
        if best is None or len(opts) < len(best):
            best = opts
            if len(best) <= 1:
                break
    if not best:
        return None
    # remaining sets need at least ceil(uncovered / max single coverage)
    uncovered = (full & ~covered).bit_count()
    most = max((c & ~covered).bit_count() for c in cov)
    if len(chosen) + -(-uncovered // max(1, most)) > k:
        return None
    for j in sorted(best, key=lambda j: (-(cov[j] & ~covered).bit_count(), j)):
        if not cov[j] & ~covered:
            continue
        chosen.append(j)
        res = _exact(cov, full, k, chosen, covered | cov[j], members)
        chosen.pop()
        if res is not None:
            return res
    return None


def min_cover(family: Sequence[FacetSet], n: int, s: int, method: str = "exact") -> list[Partition]:
    """Smallest set of partitions of ``n`` into ``s`` parts covering
    ``family`` (exact iterative deepening) or a greedy cover."""
    if not family:
        raise DomainError("family must be nonempty")
    candidates = enumerate_partitions(n, s)
    cov = _coverage(family, candidates)
    full = (1 << len(family)) - 1
    if method == "greedy":
        covered, picked = 0, []
        while covered != full:
            gains = [(c & ~covered).bit_count() for c in cov]
            j = max(range(len(cov)), key=lambda j: (gains[j], -j))
            if gains[j] == 0:
                raise DomainError("family cannot be covered by partitions of n into s parts")
            picked.append(j)
            covered |= cov[j]
        return sorted((candidates[j] for j in picked), reverse=True)
    if method != "exact":
        raise DomainError(f"unknown method {method!r}")
    members = [[j for j, c in enumerate(cov) if c >> i & 1] for i in range(len(family))]
    for k in range(1, len(candidates) + 1):
        res = _exact(cov, full, k, [], 0, members)
        if res is not None:
            return sorted((candidates[j] for j in res), reverse=True)
    raise DomainError("family cannot be covered by partitions of n into s parts")


def known_cover_check(n: int, *, force: bool = False) -> bool:
    """``{(2, 2, 1, ..., 1)}`` covers every potential (n, n-2) poset."""
    if n < 4:
        raise DomainError(f"need n >= 4, got {n}")
    family = enumerate_potential(n, n - 2, force=force)
    q = Partition((2, 2) + (1,) * (n - 4))
    return is_covering([q], family)[0]


@dataclass
class CoveringInstance:
    n: int
    s: int
    family: list[FacetSet]
    candidates: list[Partition]
    solution: list[Partition] | None = None
    method: str | None = None

    def to_dict(self) -> dict:
        lower, B = covering_lower_recursive(self.n, self.s)
        return {
            "schema": "1",
            "n": self.n,
            "s": self.s,
            "family_size": len(self.family),
            "method": self.method,
            "solution": None if self.solution is None else [",".join(map(str, q)) for q in self.solution],
            "size": None if self.solution is None else len(self.solution),
            "lower_bound": lower,
            "B": list(B),
            "upper_bound": covering_upper_bound(self.n, self.s),
            "caveat": CAVEAT,
        }


def solve(n: int, s: int, method: str = "exact", **kw) -> CoveringInstance:
    family = enumerate_potential(n, s, **kw)
    inst = CoveringInstance(n, s, family, enumerate_partitions(n, s))
    inst.solution = min_cover(family, n, s, method)
    inst.method = method
    return inst
