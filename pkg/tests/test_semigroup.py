import random

import pytest

from kummer_lcp.curve import INFINITY, BranchSignature, CurveError
from kummer_lcp.divisor import Divisor, ell
from kummer_lcp.semigroup import (
    InfeasibleError,
    build_nonspecial_g,
    build_nonspecial_g_minus_1,
    ceil_increment,
    floor_ceil_identities,
    gamma_single,
    gamma_tuple,
    nonspecial_criterion,
    profile,
)

from conftest import oracle_ell


def _pole_numbers(curve, P, upto):
    """n with ell(nP) > ell((n-1)P), from the linear-algebra oracle."""
    dims = [oracle_ell(curve, Divisor({P: n})) for n in range(upto + 1)]
    return [n for n in range(1, upto + 1) if dims[n] > dims[n - 1]]


def test_profile_y7(y7_gf5):
    prof = profile(y7_gf5)
    assert list(prof.ell) == [3] * 6
    assert prof.V_F == (6,)


def test_profile_y6_table(y6_gf7):
    prof = profile(y6_gf7)
    assert list(prof.ell) == [4, 3, 3, 2, 2]
    assert prof.V_F == (5,)


def test_profile_ym64(ym64):
    prof = profile(ym64)
    assert list(prof.S) == [3, 2]
    assert list(prof.s) == [1, 1]
    assert prof.V_F == (2,)
    assert profile(BranchSignature(3, [1, 1, 1, 2])).S == prof.S


@pytest.mark.parametrize("fixture", ["y7_gf5", "y6_gf7", "y4_gf5", "ym64", "r44_curve", "hyp25"])
def test_profile_identities(request, fixture):
    c = request.getfixturevalue(fixture)
    prof = profile(c)
    m = c.m
    assert prof.s[-1] == c.lambda0 // m
    assert sum(t * prof.s_at(t) for t in range(1, m)) == c.genus
    assert prof.S_at(1) - 1 == c.u + c.v + c.w - c.lambda0 // m - 1
    assert prof.prefix_at(1) == 0


def test_nonspecial_y7(y7_gf5):
    A = build_nonspecial_g(y7_gf5)
    assert A == Divisor({y7_gf5.Q(1): 6, y7_gf5.Q(2): 6})
    B = build_nonspecial_g(y7_gf5, variant="beta_first")
    assert B == Divisor({y7_gf5.Qp(1): 6, y7_gf5.Qp(2): 6})
    for D in (A, B):
        assert D.degree == 12 and oracle_ell(y7_gf5, D) == 1
    A1 = build_nonspecial_g_minus_1(y7_gf5, A)
    assert A1 == A - Divisor({INFINITY: 1})
    assert A1.degree == 11 and oracle_ell(y7_gf5, A1) == 0


def test_nonspecial_y6(y6_gf7):
    A = build_nonspecial_g(y6_gf7)
    c = y6_gf7
    assert A == Divisor({c.Q(1): 1, c.Q(2): 3, c.Q(3): 5})
    assert A.degree == 9 and oracle_ell(c, A) == 1
    assert oracle_ell(c, build_nonspecial_g_minus_1(c, A)) == 0


def test_nonspecial_y4(y4_gf5):
    c = y4_gf5
    A = build_nonspecial_g(c)
    assert A == Divisor({c.Q(1): 1, c.Q(2): 3})
    assert A.degree == 4 and oracle_ell(c, A) == 1
    A1 = build_nonspecial_g_minus_1(c, A, c.Q(3))
    assert A1.degree == 3 and oracle_ell(c, A1) == 0
    assert nonspecial_criterion(c, dict(A.items()))


def test_minus_one_rejects_support_place(y4_gf5):
    A = build_nonspecial_g(y4_gf5)
    with pytest.raises(CurveError):
        build_nonspecial_g_minus_1(y4_gf5, A, y4_gf5.Q(1))


def test_prime_slot_range(y7_gf5):
    with pytest.raises(InfeasibleError):
        build_nonspecial_g(y7_gf5, prime_slots=3)


def test_gaps_at_alpha_place_y4(y4_gf5):
    gs = gamma_single(y4_gf5, y4_gf5.Q(1))
    # frozen from the Hasse-derivative oracle: gaps {1, 2, 3, 5}
    assert gs.gaps == [1, 2, 3, 5]
    assert len(gs.gaps) == y4_gf5.genus
    poles = _pole_numbers(y4_gf5, y4_gf5.Q(1), 12)
    assert [n for n in range(1, 13) if n not in poles] == gs.gaps
    assert 0 in gs


@pytest.mark.parametrize("fixture", ["y7_gf5", "y6_gf7", "ym64", "hyp25"])
def test_gap_count_equals_genus(request, fixture):
    c = request.getfixturevalue(fixture)
    for P in [c.Q(1)] + ([c.Qp(1)] if c.v else []):
        gs = gamma_single(c, P)
        assert len(gs.gaps) == c.genus
        upto = 2 * c.genus + 1
        poles = _pole_numbers(c, P, upto)
        assert [n for n in range(1, upto + 1) if n not in poles] == gs.gaps


def test_beta_place_first_pole_exceeds_m_minus_1(y7_gf5):
    assert gamma_single(y7_gf5, y7_gf5.Qp(1)).smallest_positive() > 6


def test_gamma_tuple_ym64(ym64):
    vecs = list(gamma_tuple(ym64, [ym64.Q(1), ym64.Q(2)]))
    assert (2, 2) in vecs
    assert all(min(v) >= 1 for v in vecs)


def test_gamma_tuple_y4_pairs_exceed_m_when_size_off(y4_gf5):
    c = y4_gf5
    prof = profile(c)
    for pair in [(c.Q(1), c.Q(2)), (c.Q(2), c.Q(3)), (c.Q(1), c.Q(3))]:
        for v in gamma_tuple(c, pair):
            t = next(t for t in range(1, c.m) if all(x % c.m == t for x in v))
            if prof.S_at(t) != 2:
                assert max(v) > c.m


def test_criterion_fails_on_pole_number(y4_gf5):
    c = y4_gf5
    P = c.Q(1)
    n = gamma_single(c, P).smallest_positive()
    assert n <= c.genus
    coeffs = {P: n, c.Q(2): c.genus - n}
    assert not nonspecial_criterion(c, coeffs)


def test_criterion_is_sufficient(y6_gf7, y4_gf5, y7_gf5):
    rng = random.Random(7)
    for c in (y6_gf7, y4_gf5, y7_gf5):
        places = [c.Q(i) for i in range(1, c.u + 1)] + [c.Qp(j) for j in range(1, c.v + 1)]
        hits = 0
        for _ in range(150):
            coeffs = {P: 0 for P in places}
            for _ in range(c.genus):
                coeffs[rng.choice(places)] += 1
            if nonspecial_criterion(c, coeffs):
                hits += 1
                assert ell(c, Divisor(coeffs)) == 1
        assert hits > 0


def test_criterion_degree_guard(y4_gf5):
    with pytest.raises(CurveError):
        nonspecial_criterion(y4_gf5, {y4_gf5.Q(1): 1})


def test_floor_ceil_examples():
    lhs, rhs = floor_ceil_identities(5, 3)["lattice_sum"]
    assert lhs == rhs == 4
    assert floor_ceil_identities(6, 3)["ceil_minus_floor"] == (0, 0)


def test_ceil_increment_example():
    jumps = [k for k in range(1, 6) if ceil_increment(2, 7, k)[0] == 1]
    assert jumps == [3]
    assert all(a == b for a, b in (ceil_increment(2, 7, k) for k in range(1, 6)))
