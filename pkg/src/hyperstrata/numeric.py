"""Numerical realization of hyperbolic slices.

A slice is fixed by the first ``s`` coefficients of a monic hyperbolic
polynomial ``F``.  Its zero-dimensional strata are the solutions ``x`` in
the open Weyl chamber of the square systems ``e_i^mu(x) = e_i(roots of F)``,
``i = 1..s``, one system per composition ``mu`` of ``n`` into ``s`` parts.
Newton runs on the equivalent power-sum form ``sum_j mu_j x_j^i = p_i``,
rescaled so that every root of ``F`` lies in ``[-1, 1]``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
import sympy as sp

from .combinatorics import (Composition, Partition, as_composition,
                            as_partition, enumerate_compositions,
                            is_alternate_even, is_alternate_odd, quotient)
from .exceptions import DomainError, IncompleteError
from .poset import annotate_min_max, build_poset, is_potential

log = logging.getLogger(__name__)

_T = sp.Symbol("T")


# --------------------------------------------------------------------------
# polynomials


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, str):
        return Fraction(c)
    # every finite double is a dyadic rational, so this is exact
    return Fraction(float(c))


def _sympy_poly(coeffs: Sequence) -> sp.Poly:
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in coeffs], _T)


def _variations(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def _sturm_distinct(poly: sp.Poly) -> int:
    seq = sp.sturm(poly)
    at_pos = [p.LC() for p in seq]
    at_neg = [p.LC() * (-1) ** p.degree() for p in seq]
    return _variations(at_neg) - _variations(at_pos)


def sturm_real_root_count(coeffs: Sequence, *, multiplicity: bool = False) -> int:
    """Number of distinct real roots of ``c_0 T^n + ... + c_n``.

    Coefficients are converted to exact rationals (floats included), so the
    count never depends on rounding.  With ``multiplicity=True`` roots are
    counted with multiplicity by summing distinct counts over the chain
    ``p, gcd(p, p'), ...``.
    """
    fr = [_to_fraction(c) for c in coeffs]
    if not fr or fr[0] == 0:
        raise DomainError("leading coefficient must be nonzero")
    poly = _sympy_poly(fr)
    if poly.degree() == 0:
        return 0
    if not multiplicity:
        return _sturm_distinct(poly)
    total = 0
    while poly.degree() > 0:
        total += _sturm_distinct(poly)
        poly = sp.gcd(poly, poly.diff(_T))
    return total


def is_hyperbolic(coeffs: Sequence) -> bool:
    """Whether the monic polynomial ``T^n + H_1 T^{n-1} + ... + H_n`` given by
    ``(H_1, ..., H_n)`` has only real roots."""
    n = len(coeffs)
    return sturm_real_root_count([1, *coeffs], multiplicity=True) == n


def coeffs_from_roots(roots: Sequence[float], mult: Sequence[int] | None = None) -> np.ndarray:
    """``(H_1, ..., H_n)`` of ``prod (T - r)^m``."""
    r = np.asarray(roots, dtype=float)
    if mult is not None:
        r = np.repeat(r, np.asarray(mult, dtype=int))
    return np.poly(r)[1:] if r.size else np.zeros(0)


def power_sums_from_coeffs(coeffs: Sequence[float], k: int) -> np.ndarray:
    """``p_1, ..., p_k`` of the roots, by Newton's identities."""
    H = np.asarray(coeffs, dtype=float)
    n = H.size
    p = np.zeros(k)
    for m in range(1, k + 1):
        acc = m * H[m - 1] if m <= n else 0.0
        for i in range(1, min(m - 1, n) + 1):
            acc += H[i - 1] * p[m - i - 1]
        p[m - 1] = -acc
    return p


@dataclass(frozen=True)
class HyperbolicPoly:
    """Monic ``T^n + H_1 T^{n-1} + ... + H_n`` stored as ``(H_1, ..., H_n)``."""

    coeffs: tuple[float, ...]
    roots: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("polynomial must have degree >= 1")
        if self.roots is not None:
            r = tuple(sorted(float(x) for x in self.roots))
            if len(r) != self.n:
                raise DomainError(f"{len(r)} roots for degree {self.n}")
            object.__setattr__(self, "roots", r)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_roots(cls, roots: Sequence[float]) -> "HyperbolicPoly":
        return cls(tuple(coeffs_from_roots(roots)), tuple(roots))

    @classmethod
    def from_json(cls, obj: dict) -> "HyperbolicPoly":
        if "roots" in obj:
            return cls.from_roots(obj["roots"])
        if "coeffs" not in obj:
            raise DomainError("polynomial JSON needs 'coeffs' or 'roots'")
        coeffs = [float(_to_fraction(c)) for c in obj["coeffs"]]
        if "n" in obj and int(obj["n"]) != len(coeffs):
            raise DomainError(f"n={obj['n']} but {len(coeffs)} coefficients")
        return cls(tuple(coeffs))

    def to_json(self) -> dict:
        out = {"n": self.n, "coeffs": list(self.coeffs)}
        if self.roots is not None:
            out["roots"] = list(self.roots)
        return out

    @property
    def hyperbolic(self) -> bool:
        if self.roots is not None:
            return True
        return is_hyperbolic(self.coeffs)

    def real_roots(self) -> np.ndarray:
        if self.roots is not None:
            return np.array(self.roots)
        return np.sort(np.roots([1.0, *self.coeffs]).real)

    def power_sums(self, k: int) -> np.ndarray:
        if self.roots is not None:
            r = np.array(self.roots)
            return np.array([np.sum(r ** i) for i in range(1, k + 1)])
        return power_sums_from_coeffs(self.coeffs, k)

    def perturb(self, eps: float, degree: int) -> "HyperbolicPoly":
        """``F + eps T^degree``."""
        c = list(self.coeffs)
        c[self.n - degree - 1] += eps
        return HyperbolicPoly(tuple(c))

    def negate(self) -> "HyperbolicPoly":
        """``(-1)^n F(-T)``: roots negated, compositions reversed."""
        c = tuple((-1) ** (i + 1) * h for i, h in enumerate(self.coeffs))
        roots = None if self.roots is None else tuple(-r for r in self.roots)
        return HyperbolicPoly(c, roots)


def _coerce_poly(F) -> HyperbolicPoly:
    if isinstance(F, HyperbolicPoly):
        return F
    if isinstance(F, dict):
        return HyperbolicPoly.from_json(F)
    return HyperbolicPoly(tuple(F))


# --------------------------------------------------------------------------
# solving one composition


@dataclass(frozen=True)
class SolverConfig:
    starts_per_part: int = 200
    max_iter: int = 80
    tol_sys: float = 1e-9
    tol_sep: float = 1e-6
    tol_grad: float = 1e-7
    escalations: int = 2
    seed: int = 0
    n_jobs: int = 1


@dataclass(frozen=True)
class Vertex:
    composition: Composition
    x: tuple[float, ...]
    tail_coeffs: tuple[float, ...]
    residual: float

    @property
    def first_free(self) -> float:
        """``H_{s+1}`` of the vertex polynomial."""
        return self.tail_coeffs[0] if self.tail_coeffs else 0.0

    def to_json(self) -> dict:
        return {"x": list(self.x), "tail_coeffs": list(self.tail_coeffs),
                "residual": self.residual}


def _newton(Y: np.ndarray, mu: np.ndarray, target: np.ndarray, max_iter: int) -> np.ndarray:
    """Damped Newton on ``sum_j mu_j y_j^i = target_i`` for a batch of starts.

    Rows leave the active set once their step is negligible or they wander
    far outside the root box.
    """
    k = target.size
    expo = np.arange(1, k + 1)
    Y = Y.copy()
    active = np.arange(Y.shape[0])
    for _ in range(max_iter):
        if not active.size:
            break
        Ya = Y[active]
        pw = Ya[:, None, :] ** (expo[None, :, None] - 1)          # (K, k, l)
        J = expo[None, :, None] * mu[None, None, :] * pw
        f = (mu * pw * Ya[:, None, :]).sum(axis=2) - target
        try:
            step = np.linalg.solve(J, f[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(Ji, fi, rcond=None)[0] for Ji, fi in zip(J, f)])
        norm = np.linalg.norm(step, axis=1)
        step *= np.minimum(1.0, 0.5 / np.maximum(norm, 1e-300))[:, None]
        Ya = Ya - step
        Ya[~np.isfinite(Ya)] = 0.0
        Y[active] = Ya
        keep = (norm > 1e-14) & (np.max(np.abs(Ya), axis=1) < 8)
        active = active[keep]
    return Y


def _scale(F: HyperbolicPoly) -> float:
    p2 = F.power_sums(2)[1]
    return float(np.sqrt(p2)) if p2 > 1e-300 else 1.0


def _cluster_seeds(roots: np.ndarray, mu: Sequence[int]) -> list[np.ndarray]:
    seeds, start = [], 0
    means = []
    for m in mu:
        means.append(roots[start:start + m].mean())
        start += m
    seeds.append(np.array(means))
    return seeds


def _raw_solutions(F: HyperbolicPoly, s: int, mu: Composition, cfg: SolverConfig,
                   rng: np.random.Generator, n_starts: int):
    """Converged Newton points (scaled back, unsorted) for the system of the
    first ``len(mu)`` power sums, plus the full target vector."""
    c = _scale(F)
    l = len(mu)
    p = F.power_sums(s)
    target = p / c ** np.arange(1, s + 1)
    roots = F.real_roots() / c
    m = np.asarray(mu, dtype=float)
    starts = [*_cluster_seeds(roots, mu)]
    # uniform starts inside the root box, sorted into the chamber
    box = rng.uniform(-1.0, 1.0, size=(n_starts, l))
    box.sort(axis=1)
    Y0 = np.vstack([np.array(starts), box])
    Y0 = Y0 + rng.normal(scale=1e-9, size=Y0.shape)
    Y = _newton(Y0, m, target[:l], cfg.max_iter)
    expo = np.arange(1, s + 1)
    vals = (m[None, None, :] * Y[:, None, :] ** expo[None, :, None]).sum(axis=2)
    scale = (m[None, None, :] * np.abs(Y[:, None, :]) ** expo[None, :, None]).sum(axis=2)
    err = np.abs(vals - target) / np.maximum(1.0, scale)
    ok = np.all(err < cfg.tol_sys, axis=1) & np.all(np.abs(Y) < 4, axis=1)
    return Y[ok] * c


def _canonical(x: np.ndarray, mu: Sequence[int], tol_sep: float):
    """Sort ``x``, permute ``mu`` alongside and merge coordinates closer than
    ``tol_sep``."""
    order = np.argsort(x, kind="stable")
    xs, ms = x[order], np.asarray(mu)[order]
    vals, mults = [xs[0]], [int(ms[0])]
    for xi, mi in zip(xs[1:], ms[1:]):
        if xi - vals[-1] < tol_sep:
            tot = mults[-1] + int(mi)
            vals[-1] = (vals[-1] * mults[-1] + xi * mi) / tot
            mults[-1] = tot
        else:
            vals.append(xi)
            mults.append(int(mi))
    return Composition(mults), np.array(vals)


def _residual(x: np.ndarray, mu: Sequence[int], F: HyperbolicPoly, s: int) -> float:
    """Largest coefficient mismatch, relative to the size of the monomials."""
    H = coeffs_from_roots(x, mu)
    absH = coeffs_from_roots(-np.abs(x), mu)  # e_i of |x|, all positive
    diff = np.abs(H[:s] - np.asarray(F.coeffs[:s]))
    return float(np.max(diff / np.maximum(1.0, np.abs(absH[:s])))) if s else 0.0


def _vertex(x: np.ndarray, mu: Composition, F: HyperbolicPoly, s: int) -> Vertex:
    H = coeffs_from_roots(x, mu)
    return Vertex(mu, tuple(float(v) for v in x), tuple(float(h) for h in H[s:]),
                  _residual(x, mu, F, s))


def _dedupe(found: list[Vertex], tol: float) -> list[Vertex]:
    out: list[Vertex] = []
    for v in sorted(found, key=lambda v: (v.composition, v.residual)):
        if any(w.composition == v.composition
               and np.max(np.abs(np.subtract(w.x, v.x))) < tol for w in out):
            continue
        out.append(v)
    return sorted(out, key=lambda v: (v.composition, v.x))


def _solve_one(args):
    F, s, mu, cfg, idx, n_starts = args
    rng = np.random.default_rng([cfg.seed, idx])
    pts = _raw_solutions(F, s, mu, cfg, rng, n_starts)
    grid = 10 * cfg.tol_sep
    distinct = {}
    for x in pts:
        comp, xs = _canonical(x, mu, cfg.tol_sep)
        distinct.setdefault((comp, tuple(np.round(xs / grid).astype(int))), (comp, xs))
    out = []
    for comp, xs in distinct.values():
        v = _vertex(xs, comp, F, s)
        if v.residual <= cfg.tol_sys:
            out.append(v)
    return out


def solve_vertices(F, s: int, mu: Sequence[int], config: SolverConfig | None = None,
                   *, n_starts: int | None = None) -> list[Vertex]:
    """Solutions of the ``mu``-system in the open Weyl chamber.

    Starts are the weighted root means of consecutive blocks of sizes ``mu``
    plus ``n_starts`` uniform points (default ``starts_per_part * len(mu)``).
    Only solutions whose sorted composition is ``mu`` itself are returned;
    an empty list is a valid answer.
    """
    cfg = config or SolverConfig()
    F = _coerce_poly(F)
    mu = as_composition(mu)
    if mu.n != F.n:
        raise DomainError(f"composition of {mu.n} for a degree {F.n} polynomial")
    if not 1 <= mu.length <= s:
        raise DomainError(f"need 1 <= len(mu) <= s, got {mu.length} and s={s}")
    if n_starts is None:
        n_starts = cfg.starts_per_part * mu.length
    found = _solve_one((F, s, mu, cfg, 0, n_starts))
    return _dedupe([v for v in found if v.composition == mu], 10 * cfg.tol_sep)


# --------------------------------------------------------------------------
# whole slices


@dataclass
class SliceRealization:
    F: HyperbolicPoly
    s: int
    vertices: dict[Composition, list[Vertex]]
    degenerate: dict[Composition, list[Vertex]]
    starts_per_part: int
    notes: list[str] = field(default_factory=list)

    @property
    def generic(self) -> bool:
        return not self.degenerate

    @property
    def realized_facets(self) -> tuple[Composition, ...]:
        return tuple(sorted(self.vertices))

    @property
    def facet_labels(self) -> tuple[Composition, ...]:
        return tuple(sorted([*self.vertices, *self.degenerate]))

    def first_free(self, mu) -> float:
        return self.vertices[as_composition(mu)][0].first_free

    def to_json(self) -> dict:
        def block(d):
            return [{"composition": list(k), "solutions": [v.to_json() for v in d[k]]}
                    for k in sorted(d)]
        return {
            "schema": "1",
            "n": self.F.n,
            "s": self.s,
            "coeffs": list(self.F.coeffs),
            "generic": self.generic,
            "realized_facets": [list(m) for m in self.realized_facets],
            "vertices": block(self.vertices),
            "degenerate": block(self.degenerate),
            "starts_per_part": self.starts_per_part,
            "notes": list(self.notes),
        }


def _realize_once(F: HyperbolicPoly, s: int, cfg: SolverConfig) -> SliceRealization:
    tasks = []
    idx = 0
    for l in range(1, s + 1):
        for mu in enumerate_compositions(F.n, l):
            tasks.append((F, s, mu, cfg, idx, cfg.starts_per_part * l))
            idx += 1
    if cfg.n_jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.n_jobs) as pool:
            parts = list(pool.map(_solve_one, tasks))
    else:
        parts = [_solve_one(t) for t in tasks]
    found = _dedupe([v for part in parts for v in part], 10 * cfg.tol_sep)
    verts: dict[Composition, list[Vertex]] = {}
    degen: dict[Composition, list[Vertex]] = {}
    for v in found:
        (verts if v.composition.length == s else degen).setdefault(v.composition, []).append(v)
    return SliceRealization(F, s, verts, degen, cfg.starts_per_part)


def _consistency_problem(r: SliceRealization) -> str | None:
    if not r.generic:
        return None
    if not r.vertices:
        return "no vertices found"
    for mu, vs in r.vertices.items():
        if len(vs) > 1:
            return f"{len(vs)} distinct vertices for {tuple(mu)}"
    if r.s < 2:
        # the alternate odd/even axioms say nothing for a single fixed coefficient
        return None
    ok, failure = is_potential(r.realized_facets, r.F.n, r.s)
    if not ok:
        return f"realized facets fail the potential axioms at {failure}"
    return None


def realize_slice(F, s: int, config: SolverConfig | None = None) -> SliceRealization:
    """Solve every composition of length ``<= s`` and assemble the slice.

    A generic result must pass the potential-poset axioms; otherwise the
    start budget is multiplied by four (``escalations`` times) before an
    :class:`IncompleteError` carrying the last attempt is raised.
    """
    cfg = config or SolverConfig()
    F = _coerce_poly(F)
    if not 1 <= s <= F.n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={F.n}")
    if not F.hyperbolic:
        raise DomainError("polynomial is not hyperbolic")
    r = None
    for attempt in range(cfg.escalations + 1):
        r = _realize_once(F, s, cfg)
        problem = _consistency_problem(r)
        if problem is None:
            return r
        log.info("realization attempt %d inconsistent: %s", attempt, problem)
        r.notes.append(problem)
        cfg = replace(cfg, starts_per_part=cfg.starts_per_part * 4)
    raise IncompleteError(f"slice realization inconsistent after escalation: {r.notes[-1]}",
                          partial=r)


# --------------------------------------------------------------------------
# min/max checks


@dataclass
class MinMaxReport:
    ok: bool
    global_min: Composition | None
    global_max: Composition | None
    violations: list[str]
    checked_edges: int

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "global_min": None if self.global_min is None else list(self.global_min),
                "global_max": None if self.global_max is None else list(self.global_max),
                "violations": list(self.violations), "checked_edges": self.checked_edges}


def verify_min_max(r: SliceRealization) -> MinMaxReport:
    """Check the extreme vertices and every one-dimensional stratum against
    the alternate-odd/even prediction, and that sorting facets by ``H_{s+1}``
    extends the min-to-max order."""
    if not r.generic:
        raise DomainError("verify_min_max needs a generic realization")
    if r.s < 2:
        return MinMaxReport(True, None, None, ["skipped: s = 1 has no extreme structure"], 0)
    facets = r.realized_facets
    h = {mu: r.first_free(mu) for mu in facets}
    lo = min(facets, key=h.get)
    hi = max(facets, key=h.get)
    bad = []
    if not is_alternate_odd(lo):
        bad.append(f"smallest H_{r.s + 1} at {tuple(lo)}, not alternate odd")
    if not is_alternate_even(hi):
        bad.append(f"largest H_{r.s + 1} at {tuple(hi)}, not alternate even")
    poset = build_poset(facets, r.F.n, r.s)
    ann = annotate_min_max(poset).annotations
    edges = 0
    for lam, ext in ann.items():
        if lam.length != r.s + 1:
            continue
        if not ext.ok:
            bad.append(f"{tuple(lam)} lacks a unique min/max facet")
            continue
        edges += 1
        if not h[ext.mu_min] < h[ext.mu_max]:
            bad.append(f"{tuple(lam)}: H_{r.s + 1}({tuple(ext.mu_min)}) >= "
                       f"H_{r.s + 1}({tuple(ext.mu_max)})")
    rank = {mu: i for i, mu in enumerate(sorted(facets, key=h.get))}
    for lam, ext in ann.items():
        if lam.length == r.s + 1 and ext.ok and rank[ext.mu_min] > rank[ext.mu_max]:
            bad.append(f"coefficient order breaks {tuple(ext.mu_min)} -> {tuple(ext.mu_max)}")
    return MinMaxReport(not bad, lo, hi, bad, edges)


# --------------------------------------------------------------------------
# Hessian sign at endpoints of one-dimensional strata


@dataclass(frozen=True)
class HessianCheck:
    x: tuple[float, ...]
    mu: Composition
    multipliers: tuple[float, ...]
    det_sign: int
    grad_residual: float
    merged: Composition
    role: str
    expected_role: str
    matrix: np.ndarray = field(repr=False, compare=False, default=None)

    @property
    def matches(self) -> bool:
        return self.role == self.expected_role


def lagrangian_hessian(x: Sequence[float], mu: Sequence[int], a: Sequence[float]) -> np.ndarray:
    """Bordered Hessian of ``P_{s+1} - sum a_i P_i`` in ``(a, x)``."""
    x = np.asarray(x, dtype=float)
    m = np.asarray(mu, dtype=float)
    a = np.asarray(a, dtype=float)
    s = a.size
    H = np.zeros((2 * s + 1, 2 * s + 1))
    for i in range(1, s + 1):
        H[i - 1, s:] = -i * m * x ** (i - 1)
    H[s:, :s] = H[:s, s:].T
    # second derivative of Q-type terms
    d2 = (s + 1) * s * x ** (s - 1) - sum(a[i - 1] * i * (i - 1) * x ** max(i - 2, 0)
                                        for i in range(2, s + 1))
    H[s:, s:] = np.diag(m * d2)
    return H


def _lagrangian_mp(vals, mu, s):
    a, x = vals[:s], vals[s:]
    return sum(mj * (xj ** (s + 1) - sum(a[i - 1] * xj ** i for i in range(1, s + 1)))
               for mj, xj in zip(mu, x))


def finite_difference_hessian(x, mu, a, dps: int = 40, h: str = "1e-12") -> np.ndarray:
    """Central-difference Hessian of the Lagrangian in high precision."""
    s = len(a)
    with mpmath.workdps(dps):
        step = mpmath.mpf(h)
        base = [mpmath.mpf(float(v)) for v in (*a, *x)]
        N = len(base)
        out = np.zeros((N, N))
        for i in range(N):
            for j in range(i, N):
                def f(di, dj):
                    v = list(base)
                    v[i] += di * step
                    v[j] += dj * step
                    return _lagrangian_mp(v, mu, s)
                val = (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4 * step * step)
                out[i, j] = out[j, i] = float(val)
    return out


def hessian_sign(x: Sequence[float], mu: Sequence[int], s: int, *,
                 tol_grad: float = 1e-7, tol_pair: float = 1e-6) -> HessianCheck:
    """Sign of ``(-1)^s det HL(x)`` at an endpoint with one repeated adjacent
    pair.  A positive sign means a local minimum of ``P_{s+1}``, that is a
    maximal polynomial, and vice versa."""
    x = np.asarray(x, dtype=float)
    mu = as_composition(mu)
    if mu.length != s + 1 or x.size != s + 1:
        raise DomainError(f"need s + 1 = {s + 1} coordinates and parts")
    gaps = np.diff(x)
    close = np.flatnonzero(np.abs(gaps) < tol_pair * max(1.0, np.max(np.abs(x))))
    if close.size != 1 or np.any(gaps < -tol_pair):
        raise DomainError("x must be increasing with exactly one repeated adjacent pair")
    k = int(close[0])
    m = np.asarray(mu, dtype=float)
    # grad P_{s+1} = sum a_i grad P_i, solved in least squares
    A = np.stack([i * m * x ** (i - 1) for i in range(1, s + 1)], axis=1)
    b = (s + 1) * m * x ** s
    a, *_ = np.linalg.lstsq(A, b, rcond=None)
    res = float(np.linalg.norm(A @ a - b) / max(1.0, np.linalg.norm(b)))
    if res > tol_grad:
        raise DomainError(f"no constrained critical point: gradient residual {res:.3g}")
    HL = lagrangian_hessian(x, mu, a)
    det = np.linalg.det(HL)
    sign = int(np.sign((-1) ** s * det))
    merged = Composition((*mu[:k], mu[k] + mu[k + 1], *mu[k + 2:]))
    q = quotient(merged, mu)
    expected = "min" if is_alternate_odd(q) else "max" if is_alternate_even(q) else "none"
    role = "max" if sign > 0 else "min" if sign < 0 else "none"
    return HessianCheck(tuple(float(v) for v in x), mu, tuple(float(v) for v in a),
                        sign, res, merged, role, expected, HL)


def stratum_endpoints(r: SliceRealization, lam: Sequence[int]):
    """The two endpoints of the one-dimensional stratum ``lam`` as
    ``(x, lam, merged_vertex)`` with ``x`` written in ``lam``'s coordinates."""
    lam = as_composition(lam)
    out = []
    for mu in r.realized_facets:
        if mu.mask & ~lam.mask:
            continue
        v = r.vertices[mu][0]
        q = quotient(mu, lam)
        x = np.repeat(np.array(v.x), np.asarray(q))
        out.append((x, lam, v))
    return out


# --------------------------------------------------------------------------
# power sums versus elementary symmetric functions


def elementary(x: Sequence[float], k: int) -> np.ndarray:
    """``E_1, ..., E_k`` of ``x``."""
    c = np.poly(np.asarray(x, dtype=float))
    n = len(x)
    return np.array([(-1) ** i * c[i] if i <= n else 0.0 for i in range(1, k + 1)])


def power_elem_relation(x: Sequence[float], y: Sequence[float], s: int,
                        tol: float = 1e-8) -> tuple[str, str]:
    """Compare ``P_{s+1}`` and ``(-1)^{s+1} E_{s+1}`` of two points on a common
    fiber of ``E_1..E_s``; each entry is ``'lt'``, ``'gt'`` or ``'tie'``."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("points must have the same length")
    scale = max(1.0, float(np.max(np.abs(np.concatenate([x, y])))))
    ex, ey = elementary(x, s + 1), elementary(y, s + 1)
    for i in range(s):
        if abs(ex[i] - ey[i]) > tol * scale ** (i + 1):
            raise DomainError(f"E_{i + 1} differs: {ex[i]} vs {ey[i]}")

    def cmp(u, v, tol_):
        return "tie" if abs(u - v) <= tol_ else ("lt" if u < v else "gt")

    t = tol * scale ** (s + 1) * (s + 1)
    p = cmp(np.sum(x ** (s + 1)), np.sum(y ** (s + 1)), t)
    e = cmp((-1) ** (s + 1) * ex[s], (-1) ** (s + 1) * ey[s], t)
    return p, e


def power_elem_duality(x, y, s: int, tol: float = 1e-8) -> bool:
    """``P_{s+1}(x) > P_{s+1}(y)`` iff ``(-1)^{s+1} E_{s+1}(x) < (-1)^{s+1}
    E_{s+1}(y)`` on a common fiber.  Ties on both sides count as agreement."""
    p, e = power_elem_relation(x, y, s, tol)
    flip = {"lt": "gt", "gt": "lt", "tie": "tie"}
    return p == flip[e]


# --------------------------------------------------------------------------
# randomized search for realizations


@dataclass
class RealizeResult:
    witness: HyperbolicPoly | None
    evaluations: int
    seed: int
    best_distance: int
    observed: dict[tuple, HyperbolicPoly] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"found": self.witness is not None, "evaluations": self.evaluations,
                "seed": self.seed, "best_distance": self.best_distance,
                "witness": None if self.witness is None else self.witness.to_json()}


def _facets_of(roots, s, cfg):
    F = HyperbolicPoly.from_roots(roots)
    try:
        r = realize_slice(F, s, cfg)
    except IncompleteError:
        return F, None
    if not r.generic:
        return F, None
    return F, frozenset(r.realized_facets)


def random_realize(target, n: int, s: int, budget: int = 400, seed: int = 0,
                   config: SolverConfig | None = None, *, radius: int | None = None,
                   record: bool = False) -> RealizeResult:
    """Search for ``F`` whose slice realizes exactly the facet set ``target``.

    Random distinct integer roots in ``[-R, R]`` seed a hill climb on the
    root vector (distance = size of the symmetric difference, tried against
    the target and its reversal, negating roots for the latter).  ``budget``
    counts slice realizations.
    """
    target = frozenset(as_composition(m) for m in target)
    ok, failure = is_potential(target, n, s)
    if not ok:
        raise DomainError(f"target is not a potential facet set: {failure}")
    reverse = frozenset(m.reverse() for m in target)
    cfg = config or SolverConfig(starts_per_part=60, escalations=1)
    rng = np.random.default_rng(seed)
    R = radius or 3 * n
    best = (10 ** 9, None)
    evals = 0
    seen: dict[tuple, HyperbolicPoly] = {}

    def dist(facets):
        return min(len(facets ^ target), len(facets ^ reverse))

    def result(F, facets):
        w = F if facets == target else F.negate()
        return RealizeResult(w, evals, seed, 0, seen)

    while evals < budget:
        roots = np.sort(rng.choice(np.arange(-R, R + 1), size=n, replace=False)).astype(float)
        F, facets = _facets_of(roots, s, cfg)
        evals += 1
        if facets is None:
            continue
        if record:
            seen.setdefault(tuple(sorted(facets)), F)
        d = dist(facets)
        if d == 0:
            return result(F, facets)
        best = min(best, (d, roots.tolist()), key=lambda t: t[0])
        # local moves on the current point with shrinking steps
        step = R / 4
        cur, cur_d = roots, d
        while step > 0.05 and evals < budget:
            improved = False
            for _ in range(2 * n):
                if evals >= budget:
                    break
                cand = np.sort(cur + rng.normal(scale=step, size=n))
                if np.min(np.diff(cand)) < 0.05:
                    continue
                F, facets = _facets_of(cand, s, cfg)
                evals += 1
                if facets is None:
                    continue
                if record:
                    seen.setdefault(tuple(sorted(facets)), F)
                d = dist(facets)
                if d == 0:
                    return result(F, facets)
                if d < cur_d:
                    cur, cur_d, improved = cand, d, True
                    best = min(best, (d, cand.tolist()), key=lambda t: t[0])
                    break
            if not improved:
                step /= 2
    return RealizeResult(None, evals, seed, best[0], seen)


# --------------------------------------------------------------------------
# degree-principle reduction


def block_elementary(q: Sequence[int], k: int, symbols=None):
    """``E_1, ..., E_k`` of the multiset with ``x_j`` repeated ``q_j`` times."""
    q = as_partition(q) if not isinstance(q, Composition) else q
    xs = symbols or sp.symbols(f"x1:{len(q) + 1}")
    t = sp.Symbol("t")
    gen = sp.Integer(1)
    for xj, qj in zip(xs, q):
        gen *= (1 + xj * t) ** qj
    poly = sp.Poly(sp.expand(gen), t)
    return [sp.expand(poly.coeff_monomial(t ** i)) for i in range(1, k + 1)], xs


def parse_system(obj, s: int | None = None) -> list[sp.Expr]:
    """Symmetric system in ``Z1..Zs`` from JSON (term lists or strings)."""
    polys = obj.get("polys", obj.get("system")) if isinstance(obj, dict) else obj
    if not isinstance(polys, list):
        raise DomainError("system must be a list of polynomials")
    out = []
    for p in polys:
        try:
            if isinstance(p, str):
                expr = sp.sympify(p, rational=True)
            elif isinstance(p, dict) and "terms" in p:
                expr = sp.Integer(0)
                for term in p["terms"]:
                    mono = sp.Integer(1)
                    for var, e in term.get("monomial", {}).items():
                        mono *= sp.Symbol(var) ** int(e)
                    expr += sp.Rational(str(term.get("coef", "1"))) * mono
            else:
                raise DomainError(f"cannot parse polynomial {p!r}")
        except (sp.SympifyError, TypeError, ValueError) as exc:
            raise DomainError(f"cannot parse polynomial {p!r}: {exc}") from exc
        names = {str(v) for v in expr.free_symbols}
        bad = {v for v in names if not (v.startswith("Z") and v[1:].isdigit()
                                        and int(v[1:]) >= 1)}
        if bad:
            raise DomainError(f"unexpected variables {sorted(bad)}; use Z1..Zs")
        if s is not None and any(int(v[1:]) > s for v in names):
            raise DomainError(f"variable beyond Z{s}")
        out.append(expr)
    return out


@dataclass
class ReducedSystem:
    partition: Partition
    variables: tuple
    polys: list
    certificate: tuple[float, ...] | None = None
    certificate_residual: float | None = None

    def to_json(self) -> dict:
        return {"partition": list(self.partition),
                "variables": [str(v) for v in self.variables],
                "polys": [str(p) for p in self.polys],
                "certificate": None if self.certificate is None else list(self.certificate),
                "certificate_residual": self.certificate_residual}


def _certificate(polys, xs, rng, n_starts=64, tol=1e-10):
    from scipy.optimize import least_squares

    if not polys:
        return tuple(0.0 for _ in xs), 0.0
    fun = sp.lambdify([xs], polys, "numpy")
    jac = sp.lambdify([xs], sp.Matrix(polys).jacobian(xs), "numpy")
    best = None
    for _ in range(n_starts):
        x0 = rng.normal(scale=2.0, size=len(xs))
        sol = least_squares(lambda v: np.asarray(fun(v), dtype=float),
                            x0, jac=lambda v: np.asarray(jac(v), dtype=float))
        r = float(np.max(np.abs(sol.fun)))
        if best is None or r < best[1]:
            best = (tuple(float(v) for v in sol.x), r)
        if r < tol:
            break
    return best


def reduce_symmetric(system, n: int, P, *, certify: bool = False, seed: int = 0) -> list[ReducedSystem]:
    """Substitute ``Z_i -> E_i`` of the ``q``-repeated variables for each
    partition ``q`` in ``P`` and expand."""
    polys = system if system and isinstance(system, list) and all(
        isinstance(p, sp.Basic) for p in system) else parse_system(system)
    used = {int(str(v)[1:]) for p in polys for v in p.free_symbols}
    k = max(used, default=0)
    if k > n:
        raise DomainError(f"Z{k} needs n >= {k}")
    rng = np.random.default_rng(seed)
    out = []
    for q in sorted({as_partition(q) for q in P}, reverse=True):
        if q.n != n:
            raise DomainError(f"partition {tuple(q)} is not of {n}")
        E, xs = block_elementary(q, max(k, 1))
        subs = {sp.Symbol(f"Z{i}"): E[i - 1] for i in range(1, k + 1)}
        red = [sp.expand(p.xreplace(subs)) for p in polys]
        item = ReducedSystem(q, tuple(xs), red)
        if certify:
            cert, res = _certificate(red, xs, rng)
            if res < 1e-8:
                item.certificate, item.certificate_residual = cert, res
        out.append(item)
    return out
