from itertools import combinations, permutations

import pytest

from hyperstrata.combinatorics import enumerate_compositions, leq_composition
from hyperstrata.covering import enumerate_potential
from hyperstrata.exceptions import DomainError, StructuralError
from hyperstrata.poset import (analyze, annotate_min_max, binomial_representation,
                               build_poset, dehn_sommerville_check, dual_complex,
                               extremes_of, f_from_h, face_mask, face_vectors,
                               g_theorem_check, g_vector, h_from_f, is_potential,
                               macaulay_check, pseudo_power, restriction_histogram,
                               role_histograms, shelling_edges, shelling_order,
                               to_dot, verify_shelling)

from oracles import potential_by_definition

SQUARE = [(1, 1, 2, 2), (1, 1, 3, 1), (1, 2, 1, 2), (1, 2, 2, 1)]


@pytest.fixture
def square():
    return annotate_min_max(build_poset(SQUARE, 6, 4))


class TestBuild:
    def test_levels(self, square):
        counts = {l: len(xs) for l, xs in square.elements_by_length.items()}
        assert counts == {4: 4, 5: 4, 6: 1}

    def test_upward_closed_and_dominating(self, square):
        els = set(square.elements())
        for lam in els:
            assert any(leq_composition(mu, lam) for mu in SQUARE)
        # closure oracle: everything finer than a facet
        for l in range(4, 7):
            for lam in enumerate_compositions(6, l):
                assert (lam in els) == any(leq_composition(mu, lam) for mu in SQUARE)

    def test_top_only(self):
        p = build_poset([(1,) * 5], 5, 5)
        assert p.elements() == [(1,) * 5]
        assert p.elements(include_bottom=True)[0] == (5,)

    def test_full_two_level(self):
        p = build_poset(enumerate_compositions(5, 2), 5, 2)
        assert len(p.elements()) == 2 ** 4 - 1

    def test_hasse_edges(self, square):
        edges = square.hasse_edges()
        assert sum(1 for a, _ in edges if a == (6,)) == 4
        assert all(b.length == a.length + 1 for a, b in edges if a != (6,))

    def test_bad_facets(self):
        with pytest.raises(DomainError):
            build_poset([(1, 2, 3), (1, 1, 1, 3)], 6, 3)
        with pytest.raises(DomainError):
            build_poset([], 6, 3)


class TestAnnotation:
    def test_example(self, square):
        ext = square.annotations[(1, 1, 1, 1, 2)]
        assert ext.mu_min == (1, 1, 2, 2) and ext.mu_max == (1, 2, 1, 2)

    def test_facet_is_its_own_extreme(self, square):
        for mu in SQUARE:
            ext = square.annotations[mu]
            assert ext.mu_min == ext.mu_max == mu

    def test_lonely_facet_fails(self):
        ext = extremes_of((1,) * 6, [(1, 1, 1, 3)])
        assert ext.n_odd == 0 and ext.mu_min is None and not ext.ok

    def test_is_potential_examples(self):
        assert is_potential([(1, 1, 1, 3), (1, 1, 2, 2), (1, 1, 3, 1)], 6, 4)[0]
        ok, cert = is_potential([(1, 1, 1, 3)], 6, 4)
        assert not ok and cert is not None
        assert not is_potential([(2, 2, 1, 1), (1, 1, 2, 2)], 6, 4)[0]

    @pytest.mark.parametrize("n,s", [(5, 3), (6, 4), (5, 4)])
    def test_against_definition(self, n, s):
        comps = enumerate_compositions(n, s)
        for r in range(1, len(comps) + 1):
            for S in combinations(comps, r):
                assert is_potential(S, n, s)[0] == potential_by_definition(S, n, s)

    def test_failures_need_annotation(self):
        with pytest.raises(DomainError):
            build_poset(SQUARE, 6, 4).failures()


class TestDualComplex:
    def test_square(self, square):
        cx = dual_complex(square)
        sizes = sorted(bin(f).count("1") for f in cx.faces)
        assert sizes == [0, 1, 1, 1, 1, 2, 2, 2, 2]
        assert cx.is_closed() and cx.is_pure() and cx.is_pseudomanifold()
        assert cx.dim == 1

    def test_top_only(self):
        cx = dual_complex(build_poset([(1,) * 4], 4, 4))
        assert set(cx.faces) == {0}

    def test_full_two_level_is_simplex_boundary(self):
        n = 6
        cx = dual_complex(build_poset(enumerate_compositions(n, 2), n, 2))
        ground = (1 << (n - 1)) - 1
        expected = {m for m in range(ground + 1) if m != ground}
        assert set(cx.faces) == expected

    def test_face_of_composition(self):
        # prefix sums {1,3,5} inside [5]: the face is {2,4}
        assert face_mask(build_poset(SQUARE, 6, 4).facets[3]) == 0b01010


class TestFaceVectors:
    def test_square(self, square):
        fv = face_vectors(square)
        assert fv.f == (4, 4, 1) and fv.h == (1, 2, 1)

    def test_trivial(self):
        fv = face_vectors(build_poset([(1,) * 3], 3, 3))
        assert fv.f == (1,) and fv.h == (1,)

    def test_simplex_case(self):
        fv = face_vectors(build_poset(enumerate_compositions(5, 2), 5, 2))
        assert fv.h == (1, 1, 1, 1)

    def test_roundtrip(self):
        for f in [(4, 4, 1), (6, 9, 5, 1), (10, 20, 15, 5, 1), (1,)]:
            assert f_from_h(h_from_f(f)) == tuple(f)


class TestCombinatorialChecks:
    def test_dehn_sommerville(self):
        assert dehn_sommerville_check((1, 2, 1))
        assert not dehn_sommerville_check((1, 2, 2))

    def test_binomial_representation(self):
        assert binomial_representation(3, 1) == [(3, 1)]
        assert pseudo_power(3, 1) == 6
        rep = binomial_representation(10, 3)
        from math import comb
        assert sum(comb(a, i) for a, i in rep) == 10
        assert [a for a, _ in rep] == sorted([a for a, _ in rep], reverse=True)

    @pytest.mark.parametrize("g,ok", [((1, 1), True), ((1, 3, 6), True), ((1, 2, 4), False),
                                      ((1, 2, 3), True), ((2, 1), False)])
    def test_macaulay(self, g, ok):
        assert macaulay_check(g) is ok

    def test_g_theorem(self):
        assert g_vector((1, 2, 1)) == (1, 1)
        assert g_theorem_check((1, 2, 1))
        assert not g_theorem_check((1, 0, 1))
        assert not g_theorem_check((1, 3, 1, 2))


class TestShelling:
    def test_order(self, square):
        order = shelling_order(square)
        assert order == [(1, 1, 3, 1), (1, 1, 2, 2), (1, 2, 2, 1), (1, 2, 1, 2)]
        ok, restr = verify_shelling(dual_complex(square), order)
        assert ok and restr == [0, 1, 1, 2]
        assert restriction_histogram(restr, 2) == (1, 2, 1)

    def test_reverse_order(self, square):
        ok, _ = verify_shelling(dual_complex(square), shelling_order(square)[::-1])
        assert ok

    def test_other_valid_order(self, square):
        ok, restr = verify_shelling(dual_complex(square),
                                    [(1, 1, 2, 2), (1, 1, 3, 1), (1, 2, 1, 2), (1, 2, 2, 1)])
        assert ok and sorted(restr) == [0, 1, 1, 2]

    def test_bad_order(self, square):
        bad = [(1, 1, 2, 2), (1, 2, 2, 1), (1, 1, 3, 1), (1, 2, 1, 2)]
        assert not verify_shelling(dual_complex(square), bad)[0]

    def test_brute_force_orders_on_square(self, square):
        # on a 4-cycle an order fails exactly when the second facet is
        # disjoint from the first
        cx = dual_complex(square)
        masks = cx.maximal_faces()
        for order in permutations(masks):
            expected = bool(order[0] & order[1])
            assert verify_shelling(cx, list(order))[0] == expected

    def test_single_facet(self):
        p = build_poset([(1, 1, 1, 1)], 4, 4)
        assert shelling_order(p) == [(1, 1, 1, 1)]

    def test_non_potential_is_structural(self):
        with pytest.raises(StructuralError):
            shelling_order(build_poset([(1, 1, 1, 3)], 6, 4))

    def test_role_histograms_equal_h(self):
        for S in enumerate_potential(7, 4):
            p = annotate_min_max(build_poset(S, 7, 4))
            h = face_vectors(p).h
            as_max, as_min = role_histograms(p)
            assert as_max == h and as_min == h

    def test_each_incidence_has_one_role(self):
        for S in enumerate_potential(6, 4):
            p = annotate_min_max(build_poset(S, 6, 4))
            for mu in p.facets:
                incident = [lam for lam in p.elements_by_length[5] if leq_composition(mu, lam)]
                roles = [(p.annotations[l].mu_min == mu) + (p.annotations[l].mu_max == mu)
                         for l in incident]
                assert roles and all(r == 1 for r in roles)

    def test_monotone_extremes(self):
        # the min of lam stays the min of every gamma between it and lam
        for n in range(4, 8):
            for s in range(2, n):
                for S in enumerate_potential(n, s, force=True):
                    p = annotate_min_max(build_poset(S, n, s))
                    for lam in p.elements():
                        ext = p.annotations[lam]
                        for gamma in p.elements():
                            if leq_composition(gamma, lam) and leq_composition(ext.mu_min, gamma):
                                assert p.annotations[gamma].mu_min == ext.mu_min
                            if leq_composition(gamma, lam) and leq_composition(ext.mu_max, gamma):
                                assert p.annotations[gamma].mu_max == ext.mu_max

    def test_edges_link_min_to_max(self, square):
        for a, b in shelling_edges(square):
            assert a != b


class TestExport:
    def test_analyze(self):
        rep = analyze(SQUARE, 6, 4)
        assert rep["potential"] and rep["f"] == [4, 4, 1] and rep["h"] == [1, 2, 1]
        assert rep["shelling_verified"] and rep["schema"] == "1"

    def test_analyze_failure(self):
        rep = analyze([(1, 1, 1, 3)], 6, 4)
        assert not rep["potential"] and rep["shelling"] is None

    def test_dot(self, square):
        dot = to_dot(square)
        assert dot.startswith("digraph") and 'label="(1,1,2,2)"' in dot and "min (1,1,2,2)" in dot
