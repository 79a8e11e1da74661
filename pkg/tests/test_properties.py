"""Seeded randomized checks of the algebraic invariants (1000 cases each)."""

from functools import lru_cache
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from kummer_lcp.codes import LinearCode, dual, lcp_check
from kummer_lcp.constructions import elliptic_curve, hyperelliptic_curve, ym_curve
from kummer_lcp.curve import INFINITY, BranchSignature, curve_create
from kummer_lcp.divisor import Divisor, ell, gcd_lmd
from kummer_lcp.gf import field_create
from kummer_lcp.semigroup import ceil_increment, floor_ceil_identities, profile

from conftest import sympy_add, sympy_mul

FIELDS = [(2, 1), (7, 1), (5, 2), (2, 6), (11, 2), (3, 4), (2, 18)]


# ---------------------------------------------------------------------------
# field axioms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("pk", FIELDS, ids=lambda pk: f"GF{pk[0]}^{pk[1]}")
def test_field_axioms(pk):
    F = field_create(*pk)
    elem = st.integers(0, F.order - 1)

    @given(elem, elem, elem)
    def check(a, b, c):
        add, mul = F.add_c, F.mul_c
        assert add(a, add(b, c)) == add(add(a, b), c)
        assert mul(a, mul(b, c)) == mul(mul(a, b), c)
        assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, F.neg_c(a)) == 0 and F.sub_c(a, b) == add(a, F.neg_c(b))
        assert mul(a, b) == sympy_mul(F, a, b) and add(a, b) == sympy_add(F, a, b)
        if a:
            assert mul(a, F.inv_c(a)) == 1
            assert F.pow_c(a, F.order - 1) == 1
        p = F.p
        assert F.pow_c(add(a, b), p) == add(F.pow_c(a, p), F.pow_c(b, p))

    check()


# ---------------------------------------------------------------------------
# floor / ceiling identities and ceiling increments
# ---------------------------------------------------------------------------

@given(st.integers(-200, 200), st.integers(1, 200))
def test_floor_ceil_identities(a, b):
    out = floor_ceil_identities(a, b)
    assert set(out) == ({"floor_neg", "ceil_minus_floor", "lattice_sum"} if a >= 1
                        else {"floor_neg", "ceil_minus_floor"})
    for lhs, rhs in out.values():
        assert lhs == rhs


@st.composite
def coprime_pair_and_k(draw):
    m = draw(st.integers(3, 200))
    lam = draw(st.integers(1, m - 1).filter(lambda l: gcd(l, m) == 1))
    k = draw(st.integers(1, m - 2))
    return lam, m, k


@given(coprime_pair_and_k())
def test_ceil_increment_classification(args):
    lam, m, k = args
    actual, predicted = ceil_increment(lam, m, k)
    assert actual in (0, 1)
    assert actual == predicted


# ---------------------------------------------------------------------------
# symmetry of s_t
# ---------------------------------------------------------------------------

@st.composite
def unit_exponent_signatures(draw):
    # w = 0: every exponent is a unit mod m
    m = draw(st.integers(2, 24))
    units = [l for l in range(1, m) if gcd(l, m) == 1]
    lams = draw(st.lists(st.sampled_from(units), min_size=1, max_size=8))
    assume(gcd(sum(lams), m) == 1)
    return BranchSignature(m, lams)


@st.composite
def divisor_exponent_signatures(draw):
    # v = 0 with every gamma exponent dividing m, lambda0 = 1 mod m
    m = draw(st.integers(2, 24))
    divs = [d for d in range(2, m) if m % d == 0]
    gam = draw(st.lists(st.sampled_from(divs), max_size=4)) if divs else []
    u = draw(st.integers(1, 10))
    need = (1 - u - sum(gam)) % m
    return BranchSignature(m, [1] * (u + need) + gam)


@given(unit_exponent_signatures())
def test_s_symmetry_without_gamma_points(sig):
    prof = profile(sig)
    m = sig.m
    assert sig.w == 0
    for t in range(1, m - 1):
        assert prof.s_at(t) == prof.s_at(m - 1 - t)
    if prof.feasible:
        assert sum(t * prof.s_at(t) for t in range(1, m)) == sig.genus


@given(divisor_exponent_signatures())
def test_s_symmetry_without_beta_points(sig):
    prof = profile(sig)
    m = sig.m
    assert sig.v == 0 and sig.lambda0 % m == 1
    for t in range(1, m):
        assert prof.s_at(t) == prof.s_at(m - t)
    if prof.feasible:
        assert sum(t * prof.s_at(t) for t in range(1, m)) == sig.genus


# ---------------------------------------------------------------------------
# Riemann-Roch and divisor lattice
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _curves():
    return (
        ym_curve(2, 3, 3, 1),
        hyperelliptic_curve(5, 2),
        elliptic_curve(5),
        curve_create(field_create(5), 7, 1, [(2, 1), (3, 1), (4, 1), (0, 6), (1, 6)]),
        curve_create(field_create(7), 6, 1, [(2, 1), (3, 1), (4, 1), (5, 5), (6, 3)]),
        curve_create(field_create(5), 4, 1, [(0, 1), (2, 1), (3, 1), (1, 2)]),
    )


@st.composite
def curve_and_divisor(draw):
    c = draw(st.sampled_from(_curves()))
    coeffs = {INFINITY: draw(st.integers(-20, 60))}
    for x in c.branch_x:
        k = draw(st.integers(-6, 10))
        for P in c.fiber_places(x):
            coeffs[P] = k
    return c, Divisor(coeffs)


@given(curve_and_divisor())
def test_riemann_roch_beyond_canonical_degree(args):
    c, G = args
    g = c.genus
    assume(G.degree > 2 * g - 2)
    assert ell(c, G) == G.degree + 1 - g


@st.composite
def divisor_pairs(draw):
    c = _curves()[0]
    places = [INFINITY] + [P for x in c.branch_x for P in c.fiber_places(x)]
    coeff = st.integers(-9, 9)
    G = Divisor({P: draw(coeff) for P in places})
    H = Divisor({P: draw(coeff) for P in places})
    return G, H


@given(divisor_pairs())
def test_gcd_plus_lmd(pair):
    G, H = pair
    lo, hi = gcd_lmd(G, H)
    assert lo + hi == G + H
    for P in set(G.support) | set(H.support):
        assert lo[P] == min(G[P], H[P]) and hi[P] == max(G[P], H[P])


# ---------------------------------------------------------------------------
# linear codes
# ---------------------------------------------------------------------------

@st.composite
def random_codes(draw, count=1):
    F = field_create(*draw(st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])))
    n = draw(st.integers(1, 9))
    out = []
    for _ in range(count):
        k = draw(st.integers(1, n))
        rows = draw(st.lists(st.lists(st.integers(0, F.order - 1), min_size=n, max_size=n),
                             min_size=k, max_size=k))
        out.append(LinearCode(F, np.array(rows, dtype=np.int64), n=n))
    return out


@given(random_codes(count=2))
def test_lcp_check_is_symmetric(codes):
    c1, c2 = codes
    a, b = lcp_check(c1, c2), lcp_check(c2, c1)
    assert a.verdict == b.verdict
    assert a.stacked_rank == b.stacked_rank


@given(random_codes())
def test_dual_involution(codes):
    (c,) = codes
    d = dual(c)
    assert d.k == c.n - c.k
    assert dual(d) == c
