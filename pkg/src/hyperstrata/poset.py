"""Strata posets L(S), their dual boundary complexes and face numbers.

A facet set ``S`` is a collection of length-``s`` compositions of ``n``.  Its
poset is the upward closure of ``S`` together with the formal bottom
``(n)``.  Dually, an element ``lam`` is the face of ``[n-1]`` complementary to
its inner prefix sums, so facets of the complex are the members of ``S`` and
the top element ``(1, ..., 1)`` is the empty face.
"""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field, replace
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .combinatorics import (Composition, as_composition, is_alternate_even,
                            is_alternate_odd, quotient, upper_covers)
from .exceptions import DomainError, StructuralError


class Extremes(NamedTuple):
    """Min/max facets dominated by one element; ``None`` marks a failure
    (no candidate, or more than one)."""

    mu_min: Composition | None
    mu_max: Composition | None
    n_odd: int
    n_even: int

    @property
    def ok(self) -> bool:
        return self.n_odd == 1 and self.n_even == 1


class PotentialFailure(NamedTuple):
    lam: Composition
    n_odd: int
    n_even: int


@dataclass(frozen=True)
class StrataPoset:
    n: int
    s: int
    facets: tuple[Composition, ...]
    elements_by_length: dict[int, tuple[Composition, ...]]
    annotations: dict[Composition, Extremes] = field(default_factory=dict)

    @property
    def bottom(self) -> Composition:
        return Composition((self.n,))

    @property
    def d(self) -> int:
        return self.n - self.s

    def elements(self, include_bottom: bool = False) -> list[Composition]:
        out = [lam for l in sorted(self.elements_by_length)
               for lam in self.elements_by_length[l]]
        return [self.bottom] + out if include_bottom else out

    def __contains__(self, lam) -> bool:
        lam = tuple(lam)
        return lam in self.elements_by_length.get(len(lam), ())

    def hasse_edges(self) -> list[tuple[Composition, Composition]]:
        """Covering pairs ``(lower, upper)``, the formal bottom below every
        facet."""
        edges = [(self.bottom, mu) for mu in self.facets]
        for l in range(self.s, self.n):
            upper = set(self.elements_by_length.get(l + 1, ()))
            for lam in self.elements_by_length.get(l, ()):
                edges.extend((lam, up) for up in upper_covers(lam) if up in upper)
        return edges

    @property
    def annotated(self) -> bool:
        return bool(self.annotations)

    def failures(self) -> list[PotentialFailure]:
        if not self.annotated:
            raise DomainError("poset has not been annotated")
        return [PotentialFailure(lam, a.n_odd, a.n_even)
                for lam in self.elements() for a in [self.annotations[lam]]
                if not a.ok]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "facets": [list(m) for m in self.facets],
            "elements_by_length": {str(l): [list(x) for x in xs]
                                   for l, xs in sorted(self.elements_by_length.items())},
        }


def _check_facets(S: Iterable, n: int, s: int) -> tuple[Composition, ...]:
    facets = sorted({as_composition(m) for m in S})
    if not facets:
        raise DomainError("facet set must be nonempty")
    if not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got n={n}, s={s}")
    for mu in facets:
        if mu.n != n or mu.length != s:
            raise DomainError(f"{tuple(mu)} is not a composition of {n} into {s} parts")
    return tuple(facets)


def build_poset(S: Iterable[Sequence[int]], n: int, s: int) -> StrataPoset:
    """Upward closure of ``S`` materialized level by level."""
    facets = _check_facets(S, n, s)
    levels = {s: facets}
    frontier = set(facets)
    for l in range(s, n):
        nxt = set()
        for lam in frontier:
            nxt.update(upper_covers(lam))
        levels[l + 1] = tuple(sorted(nxt))
        frontier = nxt
    return StrataPoset(n, s, facets, levels)


def extremes_of(lam: Composition, facets: Iterable[Composition]) -> Extremes:
    lam = as_composition(lam)
    odd, even = [], []
    for mu in map(as_composition, facets):
        if mu.mask & ~lam.mask:
            continue
        q = quotient(mu, lam)
        if is_alternate_odd(q):
            odd.append(mu)
        if is_alternate_even(q):
            even.append(mu)
    return Extremes(odd[0] if len(odd) == 1 else None,
                    even[0] if len(even) == 1 else None, len(odd), len(even))


def annotate_min_max(poset: StrataPoset) -> StrataPoset:
    """Record the unique alternate-odd (min) and alternate-even (max)
    dominated facet of every element.  The formal bottom is skipped."""
    ann = {lam: extremes_of(lam, poset.facets) for lam in poset.elements()}
    return replace(poset, annotations=ann)


def is_potential(S, n: int, s: int) -> tuple[bool, PotentialFailure | None]:
    poset = annotate_min_max(build_poset(S, n, s))
    failures = poset.failures()
    return (not failures, failures[0] if failures else None)


# --------------------------------------------------------------------------
# dual boundary complex


def face_mask(lam: Composition) -> int:
    """Face of ``[n-1]`` (bit ``i-1`` for vertex ``i``) dual to ``lam``."""
    full = (1 << (lam.n - 1)) - 1
    return full & ~lam.mask


def mask_to_set(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class DualComplex:
    """Simplicial complex on the vertex set ``[n-1]``; faces are bitmasks."""

    n: int
    faces: frozenset[int]
    facets: tuple[int, ...]

    @property
    def dim(self) -> int:
        return max(f.bit_count() for f in self.faces) - 1

    def is_closed(self) -> bool:
        return all(f & ~(1 << i) in self.faces
                   for f in self.faces for i in range(self.n - 1) if f >> i & 1)

    def maximal_faces(self) -> list[int]:
        return [f for f in self.faces
                if not any((f | 1 << i) in self.faces
                           for i in range(self.n - 1) if not f >> i & 1)]

    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.maximal_faces()}) == 1

    def ridge_degrees(self) -> dict[int, int]:
        """Number of facets containing each ridge."""
        size = self.dim + 1
        deg = {f: 0 for f in self.faces if f.bit_count() == size - 1}
        for F in self.maximal_faces():
            for i in range(self.n - 1):
                if F >> i & 1:
                    deg[F & ~(1 << i)] += 1
        return deg

    def is_pseudomanifold(self) -> bool:
        return all(v == 2 for v in self.ridge_degrees().values())

    def f_vector(self) -> list[int]:
        """Face counts by size 0..dim+1 (index 0 is the empty face)."""
        c = Counter(f.bit_count() for f in self.faces)
        return [c[k] for k in range(self.dim + 2)]


def dual_complex(poset: StrataPoset) -> DualComplex:
    faces = frozenset(face_mask(lam) for lam in poset.elements())
    cx = DualComplex(poset.n, faces, tuple(face_mask(mu) for mu in poset.facets))
    if not cx.is_closed():
        raise StructuralError("dual of the poset is not closed under subsets")
    return cx


# --------------------------------------------------------------------------
# face numbers


@dataclass(frozen=True)
class FaceVectors:
    d: int
    f: tuple[int, ...]
    h: tuple[int, ...]


def h_from_f(f: Sequence[int]) -> tuple[int, ...]:
    d = len(f) - 1
    return tuple(sum((-1) ** (i - j) * comb(d - j, i - j) * f[d - j]
                     for j in range(i + 1)) for i in range(d + 1))


def f_from_h(h: Sequence[int]) -> tuple[int, ...]:
    d = len(h) - 1
    f = [0] * (d + 1)
    for i in range(d + 1):
        f[d - i] = sum(comb(d - j, i - j) * h[j] for j in range(i + 1))
    return tuple(f)


def face_vectors(poset: StrataPoset) -> FaceVectors:
    """``f_i`` counts elements of length ``s + i`` (the i-dimensional
    strata)."""
    d = poset.d
    f = [len(poset.elements_by_length.get(poset.s + i, ())) for i in range(d)]
    f.append(1)
    f = tuple(f)
    return FaceVectors(d, f, h_from_f(f))


def dehn_sommerville_check(h: Sequence[int]) -> bool:
    return tuple(h) == tuple(h)[::-1]


def binomial_representation(a: int, i: int) -> list[tuple[int, int]]:
    """Canonical i-binomial expansion ``a = C(a_i, i) + C(a_{i-1}, i-1) + ...``
    with ``a_i > a_{i-1} > ... >= j >= 1``; returned as ``[(a_k, k), ...]``."""
    out = []
    k = i
    while a > 0 and k > 0:
        top = k
        while comb(top + 1, k) <= a:
            top += 1
        out.append((top, k))
        a -= comb(top, k)
        k -= 1
    return out


def pseudo_power(a: int, i: int) -> int:
    """Macaulay's ``a^<i>``."""
    return sum(comb(t + 1, k + 1) for t, k in binomial_representation(a, i))


def macaulay_check(g: Sequence[int]) -> bool:
    g = list(g)
    if not g or g[0] != 1 or any(x < 0 for x in g):
        return False
    return all(g[i + 1] <= pseudo_power(g[i], i) for i in range(1, len(g) - 1))


def g_vector(h: Sequence[int]) -> tuple[int, ...]:
    half = (len(h) - 1) // 2
    return (h[0],) + tuple(h[i] - h[i - 1] for i in range(1, half + 1))


def g_theorem_check(h: Sequence[int]) -> bool:
    h = tuple(h)
    half = (len(h) - 1) // 2
    return (dehn_sommerville_check(h)
            and all(h[i] >= h[i - 1] for i in range(1, half + 1))
            and macaulay_check(g_vector(h)))


# --------------------------------------------------------------------------
# shellings


def _require_potential(poset: StrataPoset) -> StrataPoset:
    if not poset.annotated:
        poset = annotate_min_max(poset)
    bad = poset.failures()
    if bad:
        raise StructuralError(f"poset is not potential; first failure at {tuple(bad[0].lam)}")
    return poset


def shelling_edges(poset: StrataPoset) -> list[tuple[Composition, Composition]]:
    """``mu_min(lam) -> mu_max(lam)`` for every one-dimensional stratum."""
    poset = _require_potential(poset)
    return [(poset.annotations[lam].mu_min, poset.annotations[lam].mu_max)
            for lam in poset.elements_by_length.get(poset.s + 1, ())]


def shelling_order(poset: StrataPoset) -> list[Composition]:
    """Topological order of the facets under the min-to-max relation,
    smallest composition first among ties."""
    poset = _require_potential(poset)
    edges = shelling_edges(poset)
    succ = {mu: [] for mu in poset.facets}
    indeg = dict.fromkeys(poset.facets, 0)
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    heap = [mu for mu, k in indeg.items() if k == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        mu = heapq.heappop(heap)
        order.append(mu)
        for nu in succ[mu]:
            indeg[nu] -= 1
            if indeg[nu] == 0:
                heapq.heappush(heap, nu)
    if len(order) != len(poset.facets):
        stuck = sorted(mu for mu, k in indeg.items() if k > 0)
        raise StructuralError(
            "min/max relation on facets is cyclic; facets on or above a cycle: "
            + ", ".join(str(tuple(m)) for m in stuck))
    return order


def verify_shelling(cx: DualComplex, order: Sequence) -> tuple[bool, list[int]]:
    """Check the shelling condition for ``order`` (compositions or masks).

    Returns ``(ok, restrictions)`` where ``restrictions[j]`` is the size of
    the restriction face of the j-th facet.
    """
    masks = [m if isinstance(m, int) else face_mask(as_composition(m)) for m in order]
    if sorted(masks) != sorted(cx.maximal_faces()):
        return False, []
    ok = True
    restrictions = []
    for j, F in enumerate(masks):
        size = F.bit_count()
        ridges = {F & G for G in masks[:j] if (F & G).bit_count() == size - 1}
        for G in masks[:j]:
            inter = F & G
            if not any(inter & ~r == 0 for r in ridges):
                ok = False
        restrictions.append(len({F & ~r for r in ridges}))
    return ok, restrictions


def restriction_histogram(restrictions: Sequence[int], d: int) -> tuple[int, ...]:
    c = Counter(restrictions)
    return tuple(c[i] for i in range(d + 1))


def role_histograms(poset: StrataPoset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Histograms over facets of how many one-dimensional strata each facet
    is the max (first) or the min (second) of."""
    poset = _require_potential(poset)
    as_max = Counter({mu: 0 for mu in poset.facets})
    as_min = Counter({mu: 0 for mu in poset.facets})
    for a, b in shelling_edges(poset):
        as_min[a] += 1
        as_max[b] += 1
    d = poset.d
    return (restriction_histogram(list(as_max.values()), d),
            restriction_histogram(list(as_min.values()), d))


# --------------------------------------------------------------------------
# export


def analyze(S, n: int, s: int) -> dict:
    """Full structural report for a facet set, JSON-ready."""
    poset = annotate_min_max(build_poset(S, n, s))
    fv = face_vectors(poset)
    failures = poset.failures()
    report = {
        "schema": "1",
        **poset.to_dict(),
        "f": list(fv.f),
        "h": list(fv.h),
        "potential": not failures,
    }
    if failures:
        fl = failures[0]
        report["failure"] = {"lambda": list(fl.lam), "n_odd": fl.n_odd, "n_even": fl.n_even}
        report["shelling"] = None
        return report
    order = shelling_order(poset)
    cx = dual_complex(poset)
    ok, restr = verify_shelling(cx, order)
    ok_rev, _ = verify_shelling(cx, order[::-1])
    report.update({
        "shelling": [list(m) for m in order],
        "shelling_verified": ok and ok_rev,
        "restrictions": restr,
        "pure": cx.is_pure(),
        "ridges_in_two_facets": cx.is_pseudomanifold(),
        "dehn_sommerville": dehn_sommerville_check(fv.h),
        "g_theorem": g_theorem_check(fv.h),
    })
    return report


def _label(lam: Composition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def to_dot(poset: StrataPoset) -> str:
    """Graphviz rendering of the Hasse diagram, min/max noted per node."""
    if not poset.annotated:
        poset = annotate_min_max(poset)
    lines = ["digraph strata {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    ids = {}
    for k, lam in enumerate(poset.elements(include_bottom=True)):
        ids[lam] = f"v{k}"
        text = _label(lam)
        ann = poset.annotations.get(lam)
        if ann is not None and lam.length > poset.s:
            lo = _label(ann.mu_min) if ann.mu_min else "FAIL"
            hi = _label(ann.mu_max) if ann.mu_max else "FAIL"
            text += f"\\nmin {lo}\\nmax {hi}"
        lines.append(f'  v{k} [label="{text}"];')
    for a, b in poset.hasse_edges():
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
