"""Pure numpy versions of the compiled kernels, same signatures and results."""

from __future__ import annotations

import itertools

import numpy as np


def rref(tables, M):
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2 or A.size == 0:
        return A, []
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            A[[r, sel]] = A[[sel, r]]
        inv = int(tables.inv(A[r, c]))
        A[r] = tables.mul(A[r], inv)
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            f = tables.neg(A[others, c])
            A[others] = tables.add(A[others], tables.mul(f[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def _elements(tables):
    return np.concatenate([[0], tables.exp[: tables.qm1]]).astype(np.int64)


def min_weight(tables, G, stop_at=0, batch=1 << 14):
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    best, bestc = n + 1, np.zeros(n, dtype=np.int64)
    elems = _elements(tables)
    q = int(tables.q)
    for lead in range(k):
        total = q**lead
        for start in range(0, total, batch):
            idx = np.arange(start, min(total, start + batch), dtype=np.int64)
            words = np.broadcast_to(G[lead], (idx.size, n)).copy()
            rem = idx.copy()
            for i in range(lead):
                digit = elems[rem % q]
                rem //= q
                words = tables.add(words, tables.mul(digit[:, None], G[i][None, :]))
            weights = np.count_nonzero(words, axis=1)
            j = int(np.argmin(weights))
            if 0 < weights[j] < best:
                best, bestc = int(weights[j]), words[j].copy()
                if best <= stop_at:
                    return best, bestc
    if best == n + 1:
        return 0, bestc
    return best, bestc


def first_singular_subset(tables, G):
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if k == 0 or k > n:
        return None
    for cols in itertools.combinations(range(n), k):
        _, piv = rref(tables, G[:, cols])
        if len(piv) < k:
            return tuple(cols)
    return None


def matmul(tables, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    C = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(A.shape[1]):
        C = tables.add(C, tables.mul(A[:, s][:, None], B[s][None, :]))
    return C
