import itertools
import random
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from kummer_lcp import config
from kummer_lcp.gf import (
    BudgetError,
    FieldError,
    element_enumerate,
    field_create,
    is_irreducible,
    monic_irreducibles,
    nth_roots,
)

from conftest import sympy_add, sympy_mul

SMALL_FIELDS = [(2, 1), (7, 1), (2, 4), (5, 2), (2, 6), (3, 3), (11, 2)]


def test_prime_field_basics():
    F = field_create(2)
    assert F.order == 2 and F.modulus == (0, 1)
    assert F(1) + F(1) == F.zero
    assert [e.code for e in element_enumerate(F)] == [0, 1]


def test_gf25_order_and_modulus_is_smallest_irreducible():
    F = field_create(5, 2)
    assert F.order == 25 and len(list(element_enumerate(F))) == 25
    # first monic irreducible quadratic over GF(5), constant term compared first
    expected = None
    for c0 in range(5):
        for c1 in range(5):
            if sympy.Poly([1, c1, c0], sympy.Symbol("x"), modulus=5).is_irreducible:
                expected = (c0, c1, 1)
                break
        if expected:
            break
    assert F.modulus == expected


def test_monic_irreducibles_agree_with_sympy():
    x = sympy.Symbol("x")
    for p, k in [(2, 3), (3, 2), (11, 2), (2, 4)]:
        ours = [tuple(m) for m in monic_irreducibles(p, k)]
        want = []
        for tail in itertools.product(range(p), repeat=k):
            coeffs = list(tail) + [1]
            if sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
                want.append(tuple(coeffs))
        assert sorted(ours) == sorted(want)
        assert all(is_irreducible(list(c), p) for c in ours)


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_table_products_match_sympy(p, k):
    F = field_create(p, k)
    t = F.require_tables()
    rng = random.Random(p * 100 + k)
    for _ in range(300):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul_c(a, b) == sympy_mul(F, a, b)
        assert F.add_c(a, b) == sympy_add(F, a, b)
        assert int(t.mul(np.int64(a), np.int64(b))) == sympy_mul(F, a, b)
        assert int(t.add(np.int64(a), np.int64(b))) == sympy_add(F, a, b)


def test_large_binary_field_without_tables_matches_sympy():
    F = field_create(2, 30)
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul_c(a, b) == sympy_mul(F, a, b)


def test_inverse_law_gf25():
    F = field_create(5, 2)
    rng = random.Random(0)
    for _ in range(50):
        a = F.element(rng.randrange(1, 25))
        assert a * a.inverse() == F.one


def test_gf2_18_generator_order():
    F = field_create(2, 18)
    g = F.primitive_code
    n = 2**18 - 1
    assert F.pow_c(g, n) == 1
    for d in sympy.factorint(n):
        assert F.pow_c(g, n // d) != 1


def test_kawakita_f_at_one_is_one():
    # (1 - alpha1)(1 - alpha2) for the GF(121) curve found by the modulus search
    from kummer_lcp.constructions import kawakita_example

    c = kawakita_example()
    F = c.field
    a1, a2 = F.encode([5, 1]), F.encode([9, 10])
    assert F.mul_c(F.sub_c(1, a1), F.sub_c(1, a2)) == 1


@pytest.mark.parametrize("p,k,c,n,count", [(2, 6, 1, 3, 3), (5, 2, 0, 2, 1), (2, 2, 1, 3, 3)])
def test_nth_roots_examples(p, k, c, n, count):
    F = field_create(p, k)
    roots = nth_roots(F.element(c), n)
    assert len(roots) == count
    assert all(r**n == F.element(c) for r in roots)


def test_cube_roots_of_unity_in_gf4_are_all_units():
    F = field_create(2, 2)
    assert [r.code for r in nth_roots(F.one, 3)] == [1, 2, 3]


def test_cube_values_in_gf64():
    F = field_create(2, 6)
    cubes = {F.pow_c(y, 3) for y in range(64)}
    assert len(cubes) == 22


def test_format_and_parse_round_trip():
    F = field_create(5, 2)
    assert F.format(F.encode([3, 1])) == "31"
    for code in range(25):
        assert F.parse(F.format(code)).code == code
    G = field_create(11, 2)
    for code in range(121):
        assert G.parse(G.format(code)).code == code


def test_descriptor_round_trip():
    F = field_create(3, 3)
    assert type(F).from_descriptor(F.descriptor()) == F


@pytest.mark.parametrize("args", [(4, 1), (5, 0), (2, 64), (6, 2)])
def test_invalid_fields(args):
    with pytest.raises(FieldError):
        field_create(*args)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_create(5, 2, [1, 0, 1])  # x^2 + 1 = (x - 2)(x - 3)


def test_inverse_of_zero_and_mixed_fields():
    F, G = field_create(5, 2), field_create(7)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()
    with pytest.raises(FieldError):
        F.one + G.one


def test_enumeration_budget():
    saved = config.snapshot()
    try:
        config.update(enumeration_budget=10)
        with pytest.raises(BudgetError):
            list(element_enumerate(field_create(5, 2)))
    finally:
        config.update(**saved)


def test_subfield_of_gf64():
    F = field_create(2, 6)
    sub = F.subfield_codes(2)
    assert len(sub) == 4
    assert all(F.pow_c(a, 4) == a for a in sub)


@given(st.sampled_from([(5, 2), (2, 6), (11, 2), (3, 4)]), st.data())
def test_frobenius_and_fermat(pk, data):
    F = field_create(*pk)
    a = data.draw(st.integers(0, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    lhs = F.pow_c(F.add_c(a, b), F.p)
    assert lhs == F.add_c(F.pow_c(a, F.p), F.pow_c(b, F.p))
    if a:
        assert F.pow_c(a, F.order - 1) == 1


@given(st.sampled_from([(5, 2), (2, 6), (7, 1), (11, 2)]), st.data())
def test_nth_roots_count_law(pk, data):
    F = field_create(*pk)
    c = data.draw(st.integers(1, F.order - 1))
    n = data.draw(st.integers(1, 40))
    roots = nth_roots(F.element(c), n)
    assert all(F.pow_c(r.code, n) == c for r in roots)
    brute = [y for y in range(1, F.order) if F.pow_c(y, n) == c]
    assert [r.code for r in roots] == brute
    assert len(roots) in (0, gcd(n, F.order - 1))
