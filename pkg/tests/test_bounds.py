from itertools import combinations
from math import comb

import pytest

from hyperstrata.bounds import (bound_report, covering_lower_recursive,
                                covering_lower_trivial, covering_upper_bound,
                                cyclic_face_vector, cyclic_face_vector_closed_form,
                                f0_bound, gale_facets, ubt_check)
from hyperstrata.combinatorics import min_max_sets
from hyperstrata.covering import enumerate_potential
from hyperstrata.exceptions import DomainError
from hyperstrata.poset import build_poset, face_vectors, h_from_f


def moment_curve_facets(d, m):
    """Facets of C_d(m) from the sign pattern of the moment-curve
    determinant; an oracle independent of the evenness rule."""
    import numpy as np

    pts = np.array([[t ** k for k in range(1, d + 1)] for t in range(1, m + 1)], dtype=float)
    out = []
    for F in combinations(range(m), d):
        A = np.hstack([pts[list(F)], np.ones((d, 1))])
        signs = set()
        for j in range(m):
            if j in F:
                continue
            M = np.vstack([A, np.append(pts[j], 1.0)])
            signs.add(np.sign(np.linalg.det(M)))
        if len(signs) == 1:
            out.append(F)
    return out


class TestCyclic:
    def test_examples(self):
        assert cyclic_face_vector(4, 6) == (6, 15, 18, 9)
        assert cyclic_face_vector(3, 5) == (5, 9, 6)
        for m in range(3, 9):
            assert cyclic_face_vector(2, m) == (m, m)

    @pytest.mark.parametrize("d,m", [(2, 5), (3, 6), (4, 7), (3, 7)])
    def test_gale_against_geometry(self, d, m):
        assert sorted(gale_facets(d, m)) == sorted(moment_curve_facets(d, m))

    def test_closed_form_and_euler(self):
        for d in range(1, 9):
            for m in range(d + 1, 15):
                f = cyclic_face_vector_closed_form(d, m)
                if d <= 6 and m <= 11:
                    assert f == cyclic_face_vector(d, m)
                # Euler: sum (-1)^i f_i = 1 - (-1)^d
                assert sum((-1) ** i * x for i, x in enumerate(f)) == 1 - (-1) ** d
                h = h_from_f(tuple(reversed(f)) + (1,))
                assert h == h[::-1]

    def test_domain(self):
        with pytest.raises(DomainError):
            cyclic_face_vector(3, 3)


class TestUBT:
    def test_square(self):
        assert ubt_check((4, 4, 1), 6, 4) == [True, True]

    def test_enumerated_seven_four(self):
        for S in enumerate_potential(7, 4):
            assert all(ubt_check(face_vectors(build_poset(S, 7, 4)), 7, 4))

    def test_negative_control(self):
        # more zero-dimensional strata than the cyclic bound allows
        assert ubt_check((6, 4, 1), 6, 4) == [True, False]

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            ubt_check((4, 4), 6, 4)


class TestF0:
    def test_examples(self):
        assert f0_bound(6, 3) == 6
        assert f0_bound(8, 4) == comb(5, 3) + comb(4, 3) == 14
        for n in range(1, 9):
            assert f0_bound(n, n) == 1

    def test_matches_cyclic_vertex_bound(self):
        # the explicit bound is the facet count of the cyclic polytope dual
        for n in range(3, 11):
            for s in range(2, n):
                assert f0_bound(n, s) == cyclic_face_vector_closed_form(n - s, n - 1)[-1]


class TestCovering:
    def test_eight_four(self):
        assert covering_upper_bound(8, 4) == 3
        total, B = covering_lower_recursive(8, 4)
        assert total == 1 and B == (0, 1, 0)

    def test_trivial(self):
        assert covering_lower_trivial(6, 4) == 1

    def test_upper_is_min_set_size(self):
        for n in range(2, 12):
            for s in range(2, n + 1):
                assert covering_upper_bound(n, s) == len(min_max_sets(n, s)[0])

    def test_ordering_and_sign(self):
        for n in range(2, 16):
            for s in range(2, n + 1):
                rep = bound_report(n, s)
                assert 0 <= rep.covering_lower_trivial <= rep.covering_upper
                assert 0 <= rep.covering_lower_recursive <= rep.covering_upper
                assert all(b >= 0 for b in rep.B)

    def test_domain(self):
        with pytest.raises(DomainError):
            covering_upper_bound(3, 4)
        with pytest.raises(DomainError):
            covering_lower_recursive(5, 1)

    def test_report_json(self):
        d = bound_report(8, 4).to_dict()
        assert d["schema"] == "1" and d["B"] == [0, 1, 0] and d["f0_bound"] == 14
