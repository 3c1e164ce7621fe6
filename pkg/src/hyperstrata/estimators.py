"""Estimator-style wrappers over the search and numeric routines.

They follow the scikit-learn conventions: hyperparameters are set in
``__init__`` and stored verbatim, ``fit`` does the work and sets trailing
underscore attributes, ``get_params``/``set_params`` come from
``BaseEstimator``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import (check_facet_set, check_family, check_int,
                          check_is_fitted, check_ns, check_poly)
from .covering import enumerate_potential, is_covering, min_cover
from .numeric import SolverConfig, random_realize, realize_slice, verify_min_max
from .poset import build_poset, face_vectors


class PotentialPosetEnumerator(BaseEstimator):
    """Enumerates potential facet sets for fixed ``(n, s)``.

    ``fit`` ignores its arguments; the result is ``family_``.
    """

    def __init__(self, n=6, s=4, up_to_reversal=False, n_jobs=None, force=False):
        self.n = n
        self.s = s
        self.up_to_reversal = up_to_reversal
        self.n_jobs = n_jobs
        self.force = force

    def fit(self, X=None, y=None):
        n, s = check_ns(self.n, self.s)
        self.family_ = enumerate_potential(n, s, self.up_to_reversal,
                                           n_jobs=self.n_jobs, force=self.force)
        self.n_sets_ = len(self.family_)
        return self


class VandermondeCover(BaseEstimator):
    """Minimum set of orbit-type partitions hitting every facet set.

    ``fit(family)`` stores ``cover_``; ``predict(family)`` returns one
    witness ``(partition, composition)`` or ``None`` per facet set and
    ``score`` the covered fraction.
    """

    def __init__(self, method="exact"):
        self.method = method

    def fit(self, family, y=None):
        family = check_family(family)
        n, s = family[0][0].n, family[0][0].length
        self.n_, self.s_ = n, s
        self.cover_ = min_cover(family, n, s, self.method)
        self.size_ = len(self.cover_)
        return self

    def predict(self, family):
        check_is_fitted(self, "cover_")
        return is_covering(self.cover_, check_family(family))[1]

    def score(self, family, y=None):
        hits = self.predict(family)
        return sum(w is not None for w in hits) / len(hits)


class StrataFeatures(TransformerMixin, BaseEstimator):
    """Maps facet sets to rows ``f_0..f_d, h_0..h_d`` of their strata poset."""

    def fit(self, X, y=None):
        X = check_family(X)
        self.n_, self.s_ = X[0][0].n, X[0][0].length
        self.n_features_out_ = 2 * (self.n_ - self.s_ + 1)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = []
        for S in X:
            facets, n, s = check_facet_set(S, self.n_, self.s_)
            fv = face_vectors(build_poset(facets, n, s))
            rows.append([*fv.f, *fv.h])
        return np.asarray(rows, dtype=int)


class SliceRealizer(BaseEstimator):
    """Solves a hyperbolic slice; ``fit(F)`` sets ``realization_``.

    ``predict(F)`` returns the realized facets of another polynomial with
    the same settings and ``score(F)`` is 1.0 when the min/max checks pass.
    """

    def __init__(self, s=3, starts_per_part=200, tol_sys=1e-9, tol_sep=1e-6,
                 escalations=2, seed=0, n_jobs=1):
        self.s = s
        self.starts_per_part = starts_per_part
        self.tol_sys = tol_sys
        self.tol_sep = tol_sep
        self.escalations = escalations
        self.seed = seed
        self.n_jobs = n_jobs

    def _config(self) -> SolverConfig:
        return SolverConfig(starts_per_part=check_int(self.starts_per_part, "starts_per_part", low=1),
                            tol_sys=float(self.tol_sys), tol_sep=float(self.tol_sep),
                            escalations=check_int(self.escalations, "escalations", low=0),
                            seed=check_int(self.seed, "seed"),
                            n_jobs=check_int(self.n_jobs, "n_jobs", low=1))

    def fit(self, F, y=None):
        F = check_poly(F)
        s = check_int(self.s, "s", low=1, high=F.n)
        self.realization_ = realize_slice(F, s, self._config())
        self.generic_ = self.realization_.generic
        self.facets_ = self.realization_.realized_facets
        return self

    def predict(self, F):
        check_is_fitted(self, "realization_")
        F = check_poly(F)
        return realize_slice(F, self.realization_.s, self._config()).realized_facets

    def score(self, F=None, y=None):
        check_is_fitted(self, "realization_")
        r = self.realization_ if F is None else realize_slice(
            check_poly(F), self.realization_.s, self._config())
        return float(bool(verify_min_max(r))) if r.generic else 0.0


class RandomRealizer(BaseEstimator):
    """Randomized search for a slice realizing a target facet set."""

    def __init__(self, budget=400, seed=0, radius=None, starts_per_part=60):
        self.budget = budget
        self.seed = seed
        self.radius = radius
        self.starts_per_part = starts_per_part

    def fit(self, target, y=None):
        facets, n, s = check_facet_set(target)
        cfg = SolverConfig(starts_per_part=check_int(self.starts_per_part, "starts_per_part", low=1),
                           escalations=1)
        self.result_ = random_realize(facets, n, s,
                                      budget=check_int(self.budget, "budget", low=1),
                                      seed=check_int(self.seed, "seed"), config=cfg,
                                      radius=self.radius)
        self.witness_ = self.result_.witness
        self.found_ = self.witness_ is not None
        return self
