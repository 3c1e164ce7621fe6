from hypothesis import given, settings
from hypothesis import strategies as st

from hyperstrata.combinatorics import (Composition, is_alternate_even, is_alternate_odd,
                                       leq_composition, quotient)

N = 12


@st.composite
def chains(draw):
    """Masks lam <= gamma <= mu over the same n, as compositions."""
    n = draw(st.integers(1, N))
    full = (1 << (n - 1)) - 1
    mu = draw(st.integers(0, full))
    gamma = mu & draw(st.integers(0, full))
    lam = gamma & draw(st.integers(0, full))
    # the top bit (n itself) is always a prefix sum
    return tuple(Composition.from_mask(m | 1 << (n - 1), n) for m in (lam, gamma, mu))


@st.composite
def compositions(draw):
    n = draw(st.integers(1, N))
    return Composition.from_mask(draw(st.integers(0, (1 << (n - 1)) - 1)) | 1 << (n - 1), n)


@given(chains())
def test_quotient_transitivity(ch):
    lam, gamma, mu = ch
    assert quotient(lam, gamma) == quotient(quotient(lam, mu), quotient(gamma, mu))


@given(chains(), compositions())
@settings(max_examples=300)
def test_quotient_is_order_isomorphism(ch, other):
    lam, _, mu = ch
    if other.n != mu.n or not leq_composition(other, mu):
        return
    assert leq_composition(quotient(lam, mu), quotient(other, mu)) == leq_composition(lam, other)


@given(compositions())
def test_order_is_prefix_containment(mu):
    for lam in (mu, Composition((mu.n,)), Composition((1,) * mu.n)):
        assert leq_composition(lam, mu) == (lam.prefix_sums() <= mu.prefix_sums())


@given(compositions())
def test_reversal_duality(mu):
    odd, even = is_alternate_odd(mu), is_alternate_even(mu)
    rodd, reven = is_alternate_odd(mu.reverse()), is_alternate_even(mu.reverse())
    if all(p == 1 for p in mu):
        assert odd and even and rodd and reven
    elif odd != even and mu.length % 2 == 0:
        assert (rodd, reven) == (even, odd)
