"""Linear algebra over GF(q) on integer-code matrices.

The hot loops live in the compiled ``_kernels`` extension when it is
available; otherwise the numpy implementation in ``_kernels_py`` is used.
Setting ``KUMMER_LCP_PURE=1`` forces the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

if os.environ.get("KUMMER_LCP_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py
        BACKEND = "numpy"

__all__ = [
    "BACKEND",
    "rref",
    "rank",
    "nullspace",
    "matmul",
    "inverse",
    "min_weight",
    "first_singular_subset",
    "implementations",
]


def implementations():
    """Available kernel modules keyed by name (used by the benchmark)."""
    out = {"numpy": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["compiled"] = _kernels
    except ImportError:  # pragma: no cover
        pass
    return out


def _as_matrix(M):
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A


def rref(field, M):
    """Return (R, pivots) with R the reduced row echelon form of M."""
    A = _as_matrix(M)
    if A.size == 0:
        return A.copy(), []
    return _impl.rref(field.require_tables(), A)


def rank(field, M) -> int:
    return len(rref(field, M)[1])


def nullspace(field, M):
    """Basis (as rows) of {x : M x = 0}."""
    A = _as_matrix(M)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(field, A)
    t = field.require_tables()
    free = [c for c in range(ncols) if c not in set(piv)]
    N = np.zeros((len(free), ncols), dtype=np.int64)
    for row, f in enumerate(free):
        N[row, f] = 1
        for i, pc in enumerate(piv):
            N[row, pc] = int(t.neg(R[i, f]))
    return N


def matmul(field, A, B):
    A = _as_matrix(A)
    B = _as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    return _impl.matmul(field.require_tables(), A, B)


def inverse(field, M):
    A = _as_matrix(M)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    R, piv = rref(field, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def min_weight(field, G, stop_at: int = 0):
    """(weight, codeword) of a minimum-weight nonzero vector in rowspace(G)."""
    A = _as_matrix(G)
    if A.shape[0] == 0:
        return 0, np.zeros(A.shape[1], dtype=np.int64)
    return _impl.min_weight(field.require_tables(), A, stop_at)


def first_singular_subset(field, G):
    return _impl.first_singular_subset(field.require_tables(), _as_matrix(G))
