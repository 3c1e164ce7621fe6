"""Argument checks shared by the estimator wrappers."""
from __future__ import annotations

import numbers
from typing import Iterable

from .combinatorics import as_composition
from .exceptions import DomainError
from .numeric import HyperbolicPoly, _coerce_poly


def check_int(value, name: str, *, low: int | None = None, high: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if low is not None and value < low:
        raise DomainError(f"{name} must be >= {low}, got {value}")
    if high is not None and value > high:
        raise DomainError(f"{name} must be <= {high}, got {value}")
    return value


def check_ns(n, s, *, s_min: int = 2) -> tuple[int, int]:
    n = check_int(n, "n", low=1)
    s = check_int(s, "s", low=s_min, high=n)
    return n, s


def check_facet_set(S: Iterable, n: int | None = None, s: int | None = None):
    facets = tuple(sorted({as_composition(m) for m in S}))
    if not facets:
        raise DomainError("facet set must be nonempty")
    n = facets[0].n if n is None else n
    s = facets[0].length if s is None else s
    for mu in facets:
        if mu.n != n or mu.length != s:
            raise DomainError(f"{tuple(mu)} is not a composition of {n} into {s} parts")
    return facets, n, s


def check_family(family: Iterable) -> list[tuple]:
    out = [check_facet_set(S)[0] for S in family]
    if not out:
        raise DomainError("family must be nonempty")
    shapes = {(S[0].n, S[0].length) for S in out}
    if len(shapes) > 1:
        raise DomainError(f"family mixes (n, s) pairs: {sorted(shapes)}")
    return out


def check_poly(F) -> HyperbolicPoly:
    F = _coerce_poly(F)
    if not F.hyperbolic:
        raise DomainError("polynomial is not hyperbolic")
    return F


def check_is_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        from sklearn.exceptions import NotFittedError

        raise NotFittedError(f"{type(est).__name__} is not fitted; call fit first")
