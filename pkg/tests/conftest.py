"""Shared fixtures and scalar oracles.

The oracles here deliberately avoid the package's vectorised tables and
kernels: they work one field element at a time through sympy's polynomial
arithmetic or the scalar ``*_c`` methods, so they can check the fast paths.
"""

from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import HealthCheck, settings
from sympy import ZZ
from sympy.polys.galoistools import gf_mul, gf_rem

from kummer_lcp.curve import INFINITY, curve_create
from kummer_lcp.gf import field_create

settings.register_profile(
    "seeded",
    derandomize=True,
    deadline=None,
    max_examples=1000,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("seeded")

PROPERTY_EXAMPLES = 1000


# ---------------------------------------------------------------------------
# field oracle
# ---------------------------------------------------------------------------

def sympy_mul(F, a: int, b: int) -> int:
    """Product of two codes through sympy's dense GF(p)[x] arithmetic."""
    if F.k == 1:
        return a * b % F.p
    hi_a = list(reversed(F.decode(a)))
    hi_b = list(reversed(F.decode(b)))
    mod = list(reversed(F.modulus))
    r = gf_rem(gf_mul(hi_a, hi_b, F.p, ZZ), mod, F.p, ZZ)
    coords = [int(c) for c in reversed(r)]
    return F.encode(coords)


def sympy_add(F, a: int, b: int) -> int:
    return F.encode([(x + y) % F.p for x, y in zip(F.decode(a), F.decode(b))])


# ---------------------------------------------------------------------------
# linear algebra oracle
# ---------------------------------------------------------------------------

def scalar_rank(F, rows) -> int:
    """Rank by textbook elimination with scalar field calls."""
    M = [[int(v) for v in r] for r in rows]
    if not M:
        return 0
    ncol = len(M[0])
    rank = 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv_c(M[rank][c])
        M[rank] = [F.mul_c(inv, v) for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [F.sub_c(x, F.mul_c(f, y)) for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def scalar_matmul(F, A, B):
    return [
        [
            _dot(F, row, [B[i][j] for i in range(len(B))])
            for j in range(len(B[0]))
        ]
        for row in A
    ]


def _dot(F, u, v):
    acc = 0
    for x, y in zip(u, v):
        acc = F.add_c(acc, F.mul_c(int(x), int(y)))
    return acc


def codewords(code):
    """Every codeword of a small code, as tuples (scalar arithmetic)."""
    F = code.field
    G = [[int(v) for v in row] for row in code.matrix]
    for msg in itertools.product(range(F.order), repeat=code.k):
        word = [0] * code.n
        for c, row in zip(msg, G):
            if c:
                word = [F.add_c(w, F.mul_c(c, g)) for w, g in zip(word, row)]
        yield tuple(word)


def brute_min_distance(code) -> int:
    return min(sum(1 for v in w if v) for w in codewords(code) if any(w))


def brute_mds(code) -> bool:
    F = code.field
    cols = list(zip(*[[int(v) for v in row] for row in code.matrix]))
    for sub in itertools.combinations(range(code.n), code.k):
        rows = [list(r) for r in zip(*[cols[j] for j in sub])]
        if scalar_rank(F, rows) < code.k:
            return False
    return True


# ---------------------------------------------------------------------------
# curve oracles
# ---------------------------------------------------------------------------

def brute_affine_points(curve):
    """All (x, y) with y^m = a prod (x - xi)^lambda, by double enumeration."""
    F = curve.field
    powers = {}
    for y in range(F.order):
        powers.setdefault(F.pow_c(y, curve.m), []).append(y)
    pts = []
    for x in range(F.order):
        val = curve.a
        for xi, lam in curve.branch:
            val = F.mul_c(val, F.pow_c(F.sub_c(x, xi), lam))
        for y in powers.get(val, []):
            pts.append((x, y))
    return pts


def oracle_ell(curve, G) -> int:
    """dim L(G) for G on branch places and infinity, by explicit linear algebra.

    For each y-exponent t, functions y^t p(x) / prod (x - xi)^B_xi with B large
    are in L(G) iff p has bounded degree and vanishes to a prescribed order at
    each xi; the vanishing conditions are imposed through Hasse derivatives
    and the dimension is (degree bound + 1) - rank of those conditions.
    """
    F = curve.field
    m, lam0 = curve.m, curve.lambda0
    coeff = {}
    for P, c in G.items():
        if P.kind == "inf":
            continue
        prev = coeff.setdefault(P.x, c)
        assert prev == c, "unequal coefficients on one fiber"
    g_inf = G[INFINITY]
    total = 0
    for t in range(m):
        B, need = {}, {}
        for x in curve.branch_x:
            e, vy = curve.ramification(x)
            c = coeff.get(x, 0)
            B[x] = max(0, (c + t * vy) // e) + 1
            need[x] = max(0, -((c + t * vy - e * B[x]) // e))
        N = sum(B.values()) + (g_inf - t * lam0) // m
        if N < 0:
            continue
        rows = []
        for x, k in need.items():
            for j in range(k):
                row = []
                for i in range(N + 1):
                    b = comb(i, j) % F.p
                    row.append(F.mul_c(b, F.pow_c(x, i - j)) if b and i >= j else 0)
                rows.append(row)
        total += (N + 1) - scalar_rank(F, rows)
    return total


# ---------------------------------------------------------------------------
# shared curves
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def y7_gf5():
    """y^7 = (x-2)(x-3)(x-4) x^6 (x-1)^6 over GF(5)."""
    return curve_create(field_create(5), 7, 1, [(2, 1), (3, 1), (4, 1), (0, 6), (1, 6)])


@pytest.fixture(scope="session")
def y6_gf7():
    return curve_create(field_create(7), 6, 1, [(2, 1), (3, 1), (4, 1), (5, 5), (6, 3)])


@pytest.fixture(scope="session")
def y4_gf5():
    return curve_create(field_create(5), 4, 1, [(0, 1), (2, 1), (3, 1), (1, 2)])


@pytest.fixture(scope="session")
def ym64():
    from kummer_lcp.constructions import ym_curve

    return ym_curve(2, 3, 3, 1)


@pytest.fixture(scope="session")
def r44_curve():
    """m = 4 with exponents 1, 3, 3 over GF(61): v = floor(lambda0/m) + 1."""
    return curve_create(field_create(61), 4, 1, [(0, 1), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def hyp25():
    from kummer_lcp.constructions import hyperelliptic_curve

    return hyperelliptic_curve(5, 2)


@pytest.fixture(scope="session")
def ell5():
    from kummer_lcp.constructions import elliptic_curve

    return elliptic_curve(5)


# ---------------------------------------------------------------------------
# acceptance report lines
# ---------------------------------------------------------------------------

_REPORT = []


@pytest.fixture
def report():
    return _REPORT.append


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)
