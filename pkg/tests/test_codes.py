import numpy as np
import pytest

from kummer_lcp import kernels
from kummer_lcp.codes import (
    CodeError,
    LinearCode,
    ag_code,
    diag_equiv,
    diag_equiv_linear,
    dual,
    lcd_check,
    lcp_check,
    mds_check,
    min_distance,
    random_codeword_weights,
    read_matrix,
    write_matrix,
)
from kummer_lcp.constructions import complete_fibers, lcp_divisors
from kummer_lcp.curve import INFINITY
from kummer_lcp.divisor import Divisor
from kummer_lcp.gf import BudgetError, field_create

from conftest import brute_mds, brute_min_distance, codewords, scalar_rank


def _random_code(F, k, n, seed):
    rng = np.random.default_rng(seed)
    return LinearCode(F, rng.integers(0, F.order, size=(k, n), dtype=np.int64), n=n)


def _intersection_dim(c1, c2):
    F = c1.field
    stacked = np.vstack([c1.matrix, c2.matrix]).tolist()
    return c1.k + c2.k - scalar_rank(F, stacked)


def test_generator_is_reduced_and_full_rank():
    F = field_create(5, 2)
    c = _random_code(F, 4, 9, 0)
    assert c.k == scalar_rank(F, c.matrix.tolist()) == 4
    for i, p in enumerate(c.pivots):
        assert c.matrix[i, p] == 1


def test_dual_basics():
    F = field_create(7)
    for seed in range(10):
        c = _random_code(F, 3 + seed % 4, 10, seed)
        d = dual(c)
        assert d.k == c.n - c.k
        assert not kernels.matmul(F, c.matrix, d.matrix.T.copy()).any()
        assert dual(d) == c
    full = LinearCode(F, np.eye(4, dtype=np.int64))
    assert dual(full).k == 0


def test_lcp_and_lcd_against_intersection():
    F = field_create(3)
    for seed in range(40):
        c1 = _random_code(F, 2 + seed % 3, 7, seed)
        c2 = _random_code(F, 7 - c1.k, 7, 1000 + seed)
        cert = lcp_check(c1, c2)
        assert cert.verdict == (_intersection_dim(c1, c2) == 0 and c1.k + c2.k == 7)
        assert lcd_check(c1) == (_intersection_dim(c1, dual(c1)) == 0)


def test_lcp_examples():
    F = field_create(5)
    c = _random_code(F, 3, 6, 1)
    assert not lcp_check(c, c).verdict
    if lcd_check(c):
        assert lcp_check(c, dual(c)).verdict


def test_lcd_examples():
    F2 = field_create(2)
    rep = LinearCode(F2, np.ones((1, 4), dtype=np.int64))
    assert not lcd_check(rep)
    assert lcd_check(LinearCode(field_create(5), np.ones((1, 1), dtype=np.int64)))


def test_diag_equiv_recovers_scaling():
    F = field_create(5, 2)
    rng = np.random.default_rng(4)
    for seed in range(10):
        c = _random_code(F, 4, 10, seed)
        a = rng.integers(1, 25, size=10, dtype=np.int64)
        c2 = c.scaled(a)
        w = diag_equiv(c, c2)
        assert w is not None and np.all(w != 0)
        assert c.scaled(w) == c2
        # the linear system description contains the witness
        S = diag_equiv_linear(c, c2)
        assert kernels.rank(F, np.vstack([S, w[None, :]])) == S.shape[0]


def test_diag_equiv_rejects_inequivalent():
    F = field_create(7)
    c1 = LinearCode(F, np.array([[1, 1, 1, 1, 0]]))
    c2 = LinearCode(F, np.array([[1, 1, 1, 0, 0]]))
    assert diag_equiv(c1, c2) is None
    with pytest.raises(CodeError):
        diag_equiv(c1, _random_code(F, 2, 5, 0))


def test_ag_code_dimensions(ym64):
    D = complete_fibers(ym64)
    G, H = lcp_divisors(ym64, "w0_a", 3, D[0].size)
    code = ag_code(ym64, D, G)
    assert code.n == 108 and code.k == 94 == G.degree + 1 - ym64.genus
    const = ag_code(ym64, D, Divisor())
    assert const.k == 1 and np.all(const.matrix == 1)
    assert code.design_distance == 108 - G.degree


def test_ag_code_rejects_overlap_and_repeats(ym64):
    X, Y = complete_fibers(ym64)
    with pytest.raises(CodeError):
        ag_code(ym64, (np.r_[X[:3], X[:1]], np.r_[Y[:3], Y[:1]]), Divisor({INFINITY: 3}))
    from kummer_lcp.curve import Place

    split = Place("split", int(X[0]), int(Y[0]))
    with pytest.raises(CodeError):
        ag_code(ym64, (X, Y), Divisor({split: 1, INFINITY: 2}))


def test_min_distance_exact_matches_enumeration():
    F = field_create(3)
    for seed in range(8):
        c = _random_code(F, 3, 8, seed)
        d, exact = min_distance(c)
        assert exact and d == brute_min_distance(c)
    rep = LinearCode(F, np.ones((1, 6), dtype=np.int64))
    assert min_distance(rep) == (6, True)


def test_min_distance_bound_only_when_over_budget(ym64):
    D = complete_fibers(ym64)
    G, _ = lcp_divisors(ym64, "w0_a", 3, D[0].size)
    code = ag_code(ym64, D, G)
    d, exact = min_distance(code, budget=1000)
    assert not exact and d == code.design_distance == 108 - G.degree


def test_mds_against_column_subsets():
    F = field_create(7)
    xs = list(range(1, 7))
    rs = LinearCode(F, np.array([[pow(x, i, 7) for x in xs] for i in range(3)]))
    assert mds_check(rs) and brute_mds(rs)
    assert brute_min_distance(rs) == 6 - 3 + 1
    M = rs.matrix.copy()
    M[:, 5] = M[:, 0]
    bad = LinearCode(F, M)
    assert not mds_check(bad) and not brute_mds(bad)
    for seed in range(6):
        c = _random_code(F, 2, 6, seed)
        assert mds_check(c) == brute_mds(c)
    assert mds_check(LinearCode(F, np.eye(4, dtype=np.int64)))


def test_mds_budget():
    F = field_create(7)
    c = _random_code(F, 5, 12, 0)
    with pytest.raises(BudgetError):
        mds_check(c, budget=10)


def test_random_weights_are_codeword_weights():
    F = field_create(3)
    c = _random_code(F, 3, 7, 2)
    all_weights = {sum(1 for v in w if v) for w in codewords(c)}
    w = random_codeword_weights(c, 200, seed=1)
    assert set(w.tolist()) <= all_weights
    assert np.array_equal(w, random_codeword_weights(c, 200, seed=1))


def test_matrix_round_trip():
    for pk in [(5, 2), (11, 2), (2, 6), (7, 1)]:
        F = field_create(*pk)
        c = _random_code(F, 3, 8, 0)
        text = write_matrix(c)
        assert text.splitlines()[0].startswith("3 8 ")
        assert read_matrix(text) == c
    with pytest.raises(CodeError):
        read_matrix("2 3 " + '{"k":1,"modulus":[0,1],"p":5}' + "\n1 2 3\n")
