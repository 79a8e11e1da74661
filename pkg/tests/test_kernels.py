import itertools

import numpy as np
import pytest

from kummer_lcp import kernels
from kummer_lcp.gf import field_create

from conftest import scalar_matmul, scalar_rank

IMPLS = kernels.implementations()
FIELDS = [(2, 1), (7, 1), (5, 2), (2, 6)]


@pytest.fixture(params=sorted(IMPLS), ids=lambda s: s)
def impl(request):
    return IMPLS[request.param]


def _random(F, shape, seed, density=1.0):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, F.order, size=shape, dtype=np.int64)
    if density < 1:
        A[rng.random(shape) > density] = 0
    return A


def test_compiled_backend_is_built():
    # the extension is part of the install; the numpy path is only a fallback
    assert "compiled" in IMPLS


@pytest.mark.parametrize("pk", FIELDS)
@pytest.mark.parametrize("shape", [(5, 9), (9, 5), (12, 12)])
def test_rref_rank_matches_elimination(impl, pk, shape):
    F = field_create(*pk)
    t = F.require_tables()
    for seed in range(6):
        A = _random(F, shape, seed, density=0.5 if seed % 2 else 1.0)
        R, piv = impl.rref(t, A.copy())
        assert len(piv) == scalar_rank(F, A.tolist())
        # pivots are unit columns and R spans the same row space
        for i, c in enumerate(piv):
            col = np.zeros(shape[0], dtype=np.int64)
            col[i] = 1
            assert np.array_equal(R[:, c], col)
        assert scalar_rank(F, np.vstack([A, R]).tolist()) == len(piv)


@pytest.mark.parametrize("pk", FIELDS)
def test_matmul_matches_scalar(impl, pk):
    F = field_create(*pk)
    t = F.require_tables()
    A, B = _random(F, (6, 7), 1), _random(F, (7, 4), 2)
    assert np.array_equal(impl.matmul(t, A, B), np.array(scalar_matmul(F, A.tolist(), B.tolist())))


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2)])
def test_min_weight_matches_enumeration(impl, pk):
    F = field_create(*pk)
    t = F.require_tables()
    for seed in range(5):
        G = _random(F, (3, 7), seed)
        if scalar_rank(F, G.tolist()) < 3:
            continue
        w, word = impl.min_weight(t, G, 0)
        best = 8
        for msg in itertools.product(range(F.order), repeat=3):
            if any(msg):
                v = scalar_matmul(F, [list(msg)], G.tolist())[0]
                best = min(best, sum(1 for x in v if x))
        assert w == best
        assert np.count_nonzero(word) == w


def test_first_singular_subset(impl):
    F = field_create(7)
    t = F.require_tables()
    # Vandermonde rows: every 3 columns independent
    xs = np.arange(1, 7)
    G = np.array([[pow(int(x), i, 7) for x in xs] for i in range(3)], dtype=np.int64)
    assert impl.first_singular_subset(t, G) is None
    G2 = G.copy()
    G2[:, 4] = G2[:, 1]
    sub = impl.first_singular_subset(t, G2)
    assert sub is not None
    assert scalar_rank(F, G2[:, list(sub)].tolist()) < 3


def test_dispatch_nullspace_and_inverse():
    F = field_create(5, 2)
    A = _random(F, (4, 9), 5)
    N = kernels.nullspace(F, A)
    assert N.shape[0] == 9 - kernels.rank(F, A)
    assert not kernels.matmul(F, A, N.T.copy()).any()
    M = _random(F, (5, 5), 6)
    while kernels.rank(F, M) < 5:
        M = (M + 1) % 25
    Minv = kernels.inverse(F, M)
    assert np.array_equal(kernels.matmul(F, M, Minv), np.eye(5, dtype=np.int64))
    with pytest.raises(ZeroDivisionError):
        kernels.inverse(F, np.zeros((3, 3), dtype=np.int64))


def test_backends_agree_on_large_rref():
    if len(IMPLS) < 2:
        pytest.skip("only one backend available")
    F = field_create(2, 6)
    t = F.require_tables()
    A = _random(F, (60, 80), 9, density=0.3)
    outs = [m.rref(t, A.copy()) for m in IMPLS.values()]
    assert all(np.array_equal(outs[0][0], o[0]) and list(outs[0][1]) == list(o[1]) for o in outs)
