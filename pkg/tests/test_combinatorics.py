from math import comb

import pytest

from hyperstrata.combinatorics import (Composition, Partition, as_partition,
                                       composition_count, enumerate_compositions,
                                       enumerate_partitions, is_alternate_even,
                                       is_alternate_odd, leq_composition,
                                       leq_partition, lower_covers, min_max_sets,
                                       partition_count, quotient, upper_covers)
from hyperstrata.exceptions import DomainError


from oracles import block_images, brute_compositions, brute_partitions


class TestTypes:
    def test_composition_fields(self):
        c = Composition((1, 2, 2, 1))
        assert c.n == 6 and c.length == 4 and c.parts == (1, 2, 2, 1)
        assert c.prefix_sums() == {1, 3, 5, 6}

    def test_prefix_set_size_matches_length(self):
        for l in range(1, 7):
            for c in enumerate_compositions(7, l):
                ps = c.prefix_sums()
                assert len(ps) == l and 7 in ps

    def test_mask_roundtrip(self):
        for c in enumerate_compositions(8, 3):
            assert Composition.from_mask(c.mask, 8) == c

    @pytest.mark.parametrize("bad", [(), (0, 2), (1, -1)])
    def test_composition_rejects(self, bad):
        with pytest.raises(DomainError):
            Composition(bad)

    def test_partition_must_decrease(self):
        with pytest.raises(DomainError):
            Partition((1, 2))
        assert as_partition("2,2,1,1") == (2, 2, 1, 1)

    def test_n_bound(self):
        with pytest.raises(DomainError):
            Composition((65,))

    def test_json_is_a_list(self):
        import json
        assert json.dumps(Composition((1, 2, 2, 1))) == "[1, 2, 2, 1]"


class TestEnumeration:
    def test_six_into_four(self):
        assert len(enumerate_compositions(6, 4)) == 10

    def test_small_cases(self):
        assert enumerate_compositions(5, 1) == [(5,)]
        assert enumerate_compositions(4, 2) == [(1, 3), (2, 2), (3, 1)]
        assert enumerate_partitions(4, 2) == [(3, 1), (2, 2)]
        assert enumerate_partitions(6, 2) == [(5, 1), (4, 2), (3, 3)]
        assert enumerate_partitions(5, 5) == [(1,) * 5]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_against_brute_force(self, n):
        for l in range(1, n + 1):
            assert enumerate_compositions(n, l) == brute_compositions(n, l)
            assert enumerate_partitions(n, l) == brute_partitions(n, l)
            assert partition_count(n, l) == len(brute_partitions(n, l))

    def test_counts(self):
        for n in range(1, 13):
            for l in range(1, n + 1):
                assert len(enumerate_compositions(n, l)) == comb(n - 1, l - 1) == composition_count(n, l)

    @pytest.mark.parametrize("n,l", [(3, 4), (3, 0), (0, 1)])
    def test_domain(self, n, l):
        with pytest.raises(DomainError):
            enumerate_compositions(n, l)
        with pytest.raises(DomainError):
            enumerate_partitions(n, l)


class TestOrder:
    def test_examples(self):
        assert leq_composition((3, 3), (1, 2, 2, 1))
        assert not leq_composition((2, 4), (1, 2, 2, 1))
        assert leq_composition((6,), (1, 2, 2, 1))

    def test_mismatch(self):
        with pytest.raises(DomainError):
            leq_composition((3,), (1, 1))

    def test_merging_oracle(self):
        # mu <= lam iff mu is reachable from lam by merging adjacent parts
        for lam in [c for l in range(1, 7) for c in enumerate_compositions(6, l)]:
            reach, frontier = {lam}, {lam}
            while frontier:
                frontier = {m for c in frontier for m in lower_covers(c)} - reach
                reach |= frontier
            for l in range(1, 7):
                for mu in enumerate_compositions(6, l):
                    assert leq_composition(mu, lam) == (mu in reach)

    def test_prefix_sets_injective(self):
        comps = [c for l in range(1, 9) for c in enumerate_compositions(8, l)]
        assert len({c.prefix_sums() for c in comps}) == len(comps)


class TestQuotient:
    def test_examples(self):
        assert quotient((3, 3), (1, 2, 2, 1)) == (2, 2)
        assert quotient((6,), (1, 2, 2, 1)) == (4,)
        assert quotient((1, 2, 2, 1), (1, 2, 2, 1)) == (1, 1, 1, 1)

    def test_regrouping(self):
        for mu in enumerate_compositions(7, 4):
            for l in range(1, 5):
                for lam in enumerate_compositions(7, l):
                    if not leq_composition(lam, mu):
                        continue
                    nu = quotient(lam, mu)
                    assert nu.length == lam.length and nu.n == mu.length
                    it = iter(mu)
                    assert tuple(sum(next(it) for _ in range(k)) for k in nu) == lam

    def test_requires_order(self):
        with pytest.raises(DomainError):
            quotient((2, 4), (1, 2, 2, 1))


class TestAlternate:
    @pytest.mark.parametrize("mu,odd,even", [
        ((2, 1, 3, 1), True, False),
        ((1, 2, 1, 3), False, True),
        ((1, 1, 1, 1), True, True),
        ((1,), True, True),
        ((2,), False, True),
    ])
    def test_examples(self, mu, odd, even):
        assert is_alternate_odd(mu) is odd
        assert is_alternate_even(mu) is even

    def test_reversal_duality_for_even_length(self):
        # reading from the other end swaps the parity pattern when l is even
        for mu in enumerate_compositions(8, 4):
            assert is_alternate_odd(mu) == is_alternate_even(mu[::-1])


class TestCovers:
    def test_examples(self):
        assert set(upper_covers((1, 1, 2, 2))) == {(1, 1, 1, 1, 2), (1, 1, 2, 1, 1)}
        assert upper_covers((1, 1, 1, 1)) == []
        assert set(upper_covers((3,))) == {(1, 2), (2, 1)}

    def test_covers_are_inverse(self):
        for mu in enumerate_compositions(7, 3):
            for up in upper_covers(mu):
                assert up.length == 4 and mu in lower_covers(up)


class TestPartitionOrder:
    def test_examples(self):
        assert leq_partition((2, 2, 1, 1), (2, 2, 1, 1))
        assert leq_partition((3, 1, 1, 1), (2, 1, 1, 1, 1))
        assert not leq_partition((2, 2, 2), (3, 1, 1, 1))

    def test_equal_length_forces_equality(self):
        for p in enumerate_partitions(8, 3):
            for q in enumerate_partitions(8, 3):
                assert leq_partition(p, q) == (p == q)

    def test_mismatch(self):
        with pytest.raises(DomainError):
            leq_partition((2,), (1, 1, 1))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_against_block_oracle(self, n):
        parts = [q for l in range(1, n + 1) for q in enumerate_partitions(n, l)]
        for q in parts:
            below = block_images(q)
            for p in parts:
                assert leq_partition(p, q) == (tuple(p) in below)


class TestMinMax:
    def test_six_four(self):
        p_min, p_max, c_min, c_max = min_max_sets(6, 4)
        assert c_min == [(1, 1, 3, 1), (2, 1, 2, 1), (3, 1, 1, 1)]
        assert p_min == [(3, 1, 1, 1), (2, 2, 1, 1)]
        assert len(p_min) == partition_count(4, 2)

    def test_size_law(self):
        for n in range(2, 11):
            for s in range(2, n + 1):
                p_min = min_max_sets(n, s)[0]
                assert len(p_min) == partition_count(n - (s + 1) // 2, s // 2)

    def test_single_part(self):
        assert min_max_sets(4, 1)[2] == []
        assert min_max_sets(1, 1)[2] == [(1,)]

    def test_eight_four(self):
        assert len(min_max_sets(8, 4)[0]) == 3
