# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled GF(q) kernels: row reduction, minimum weight and subset ranks.

Field elements are integer codes; arithmetic goes through the exp/log/Zech
tables of the field (see ``gf.FieldTables``).
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef long long i64

cnp.import_array()


cdef struct Tab:
    i64* exp
    i64* log
    i64* zech
    i64 qm1
    i64 neg_log
    int char2


cdef inline i64 f_mul(Tab* t, i64 a, i64 b) nogil:
    if a == 0 or b == 0:
        return 0
    return t.exp[t.log[a] + t.log[b]]


cdef inline i64 f_add(Tab* t, i64 a, i64 b) nogil:
    cdef i64 la, lb, d, z
    if a == 0:
        return b
    if b == 0:
        return a
    la = t.log[a]
    lb = t.log[b]
    d = lb - la
    if d < 0:
        d += t.qm1
    z = t.zech[d]
    if z < 0:
        return 0
    return t.exp[la + z]


cdef inline i64 f_neg(Tab* t, i64 a) nogil:
    if a == 0 or t.char2:
        return a
    return t.exp[t.log[a] + t.neg_log]


cdef inline i64 f_inv(Tab* t, i64 a) nogil:
    cdef i64 l = t.log[a]
    if l == 0:
        return 1
    return t.exp[t.qm1 - l]


cdef Tab make_tab(tables, i64[::1] exp, i64[::1] log, i64[::1] zech):
    cdef Tab t
    t.exp = &exp[0]
    t.log = &log[0]
    t.zech = &zech[0]
    t.qm1 = tables.qm1
    t.neg_log = tables.neg_log
    t.char2 = 1 if tables.p == 2 else 0
    return t


def _arrays(tables):
    return (np.ascontiguousarray(tables.exp, dtype=np.int64),
            np.ascontiguousarray(tables.log, dtype=np.int64),
            np.ascontiguousarray(tables.zech, dtype=np.int64))


cdef Py_ssize_t _rref(Tab* t, i64[:, ::1] M, i64* pivots) nogil:
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, sel
    cdef i64 inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        sel = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(cols):
                tmp = M[r, j]
                M[r, j] = M[sel, j]
                M[sel, j] = tmp
        inv = f_inv(t, M[r, c])
        if inv != 1:
            for j in range(c, cols):
                M[r, j] = f_mul(t, M[r, j], inv)
        for i in range(rows):
            if i != r and M[i, c] != 0:
                f = f_neg(t, M[i, c])
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = f_add(t, M[i, j], f_mul(t, f, M[r, j]))
        pivots[r] = c
        r += 1
    return r


def rref(tables, M):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    exp, log, zech = _arrays(tables)
    cdef Tab t = make_tab(tables, exp, log, zech)
    cdef cnp.ndarray[i64, ndim=2] A = np.array(M, dtype=np.int64, order="C", copy=True)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A, []
    cdef i64[:, ::1] view = A
    cdef i64* piv = <i64*>malloc(A.shape[0] * sizeof(i64))
    cdef Py_ssize_t r, i
    try:
        with nogil:
            r = _rref(&t, view, piv)
        pivots = [int(piv[i]) for i in range(r)]
    finally:
        free(piv)
    return A, pivots


def min_weight(tables, G, i64 stop_at=0):
    """Minimum Hamming weight of a nonzero codeword of the row space of G.

    Messages are enumerated projectively (last nonzero coordinate 1) with an
    odometer over the lower coordinates, so each step is one row update.
    Returns (weight, codeword).  Stops early once weight <= stop_at.
    """
    exp, log, zech = _arrays(tables)
    cdef Tab t = make_tab(tables, exp, log, zech)
    cdef cnp.ndarray[i64, ndim=2] Ga = np.ascontiguousarray(G, dtype=np.int64)
    cdef Py_ssize_t k = Ga.shape[0], n = Ga.shape[1]
    cdef i64 q = tables.q
    cdef Py_ssize_t i, j, lead, v
    cdef i64 cur, nxt, coef, w, best = n + 1
    # D[i, v, :] = (elem(v+1) - elem(v)) * G_i, elem(0) = 0, elem(v) = exp[v-1]
    cdef cnp.ndarray[i64, ndim=3] Da = np.zeros((k, q, n), dtype=np.int64)
    cdef i64[:, :, ::1] D = Da
    cdef i64[:, ::1] Gv = Ga
    for i in range(k):
        for v in range(q):
            cur = 0 if v == 0 else t.exp[v - 1]
            nxt = 0 if v + 1 == q else t.exp[v]
            coef = f_add(&t, nxt, f_neg(&t, cur))
            for j in range(n):
                D[i, v, j] = f_mul(&t, coef, Gv[i, j])
    cdef cnp.ndarray[i64, ndim=1] ca = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] bestc = np.zeros(n, dtype=np.int64)
    cdef i64[::1] c = ca
    cdef i64[::1] bc = bestc
    cdef cnp.ndarray[i64, ndim=1] digits_a = np.zeros(max(k, 1), dtype=np.int64)
    cdef i64[::1] digits = digits_a
    cdef Py_ssize_t pos
    cdef bint done = False
    with nogil:
        for lead in range(k):
            if done:
                break
            for j in range(n):
                c[j] = Gv[lead, j]
            for i in range(lead):
                digits[i] = 0
            while True:
                w = 0
                for j in range(n):
                    if c[j] != 0:
                        w += 1
                if w > 0 and w < best:
                    best = w
                    for j in range(n):
                        bc[j] = c[j]
                    if best <= stop_at:
                        done = True
                        break
                pos = 0
                while pos < lead:
                    v = digits[pos]
                    for j in range(n):
                        c[j] = f_add(&t, c[j], D[pos, v, j])
                    digits[pos] = v + 1
                    if v + 1 < q:
                        break
                    digits[pos] = 0
                    pos += 1
                if pos == lead:
                    break
    if best == n + 1:
        return 0, bestc
    return int(best), bestc


cdef bint _square_full_rank(Tab* t, i64* S, Py_ssize_t k) nogil:
    cdef Py_ssize_t r, c, i, j, sel
    cdef i64 inv, f, tmp
    for c in range(k):
        sel = -1
        for i in range(c, k):
            if S[i * k + c] != 0:
                sel = i
                break
        if sel < 0:
            return False
        if sel != c:
            for j in range(c, k):
                tmp = S[c * k + j]
                S[c * k + j] = S[sel * k + j]
                S[sel * k + j] = tmp
        inv = f_inv(t, S[c * k + c])
        for i in range(c + 1, k):
            if S[i * k + c] != 0:
                f = f_neg(t, f_mul(t, S[i * k + c], inv))
                for j in range(c, k):
                    S[i * k + j] = f_add(t, S[i * k + j], f_mul(t, f, S[c * k + j]))
    return True


def first_singular_subset(tables, G):
    """First k-subset of columns (lexicographic) whose k x k minor is singular.

    Returns the subset as a tuple, or None when every minor is invertible.
    """
    exp, log, zech = _arrays(tables)
    cdef Tab t = make_tab(tables, exp, log, zech)
    cdef cnp.ndarray[i64, ndim=2] Ga = np.ascontiguousarray(G, dtype=np.int64)
    cdef i64[:, ::1] Gv = Ga
    cdef Py_ssize_t k = Ga.shape[0], n = Ga.shape[1]
    if k == 0 or k > n:
        return None
    cdef i64* S = <i64*>malloc(k * k * sizeof(i64))
    cdef Py_ssize_t* idx = <Py_ssize_t*>malloc(k * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, j, pos
    cdef bint ok, found = False
    try:
        for i in range(k):
            idx[i] = i
        with nogil:
            while True:
                for i in range(k):
                    for j in range(k):
                        S[i * k + j] = Gv[i, idx[j]]
                ok = _square_full_rank(&t, S, k)
                if not ok:
                    found = True
                    break
                pos = k - 1
                while pos >= 0 and idx[pos] == n - k + pos:
                    pos -= 1
                if pos < 0:
                    break
                idx[pos] += 1
                for i in range(pos + 1, k):
                    idx[i] = idx[i - 1] + 1
        if found:
            return tuple(int(idx[i]) for i in range(k))
        return None
    finally:
        free(S)
        free(idx)


def matmul(tables, A, B):
    """Matrix product over the field."""
    exp, log, zech = _arrays(tables)
    cdef Tab t = make_tab(tables, exp, log, zech)
    cdef cnp.ndarray[i64, ndim=2] Aa = np.ascontiguousarray(A, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] Ba = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = Aa.shape[0], m = Aa.shape[1], l = Ba.shape[1]
    if Ba.shape[0] != m:
        raise ValueError("shape mismatch")
    cdef cnp.ndarray[i64, ndim=2] Ca = np.zeros((n, l), dtype=np.int64)
    cdef i64[:, ::1] Av = Aa, Bv = Ba, Cv = Ca
    cdef Py_ssize_t i, j, s
    cdef i64 a
    with nogil:
        for i in range(n):
            for s in range(m):
                a = Av[i, s]
                if a == 0:
                    continue
                for j in range(l):
                    if Bv[s, j] != 0:
                        Cv[i, j] = f_add(&t, Cv[i, j], f_mul(&t, a, Bv[s, j]))
    return Ca
