"""Linear codes over GF(q): AG evaluation codes and exact certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import numpy as np

from . import config, kernels
from .curve import KummerCurve
from .divisor import Divisor, riemann_roch
from .gf import BudgetError, FiniteField

__all__ = [
    "CodeError",
    "LinearCode",
    "LcpCertificate",
    "ag_code",
    "split_arrays",
    "dual",
    "lcp_check",
    "lcd_check",
    "diag_equiv",
    "diag_equiv_linear",
    "min_distance",
    "mds_check",
    "random_codeword_weights",
    "write_matrix",
    "read_matrix",
    "certificate_json",
]


class CodeError(ValueError):
    pass


class LinearCode:
    """Row space of a generator matrix, stored in reduced row echelon form."""

    def __init__(self, field: FiniteField, M, provenance=None, n: int | None = None):
        A = np.asarray(M, dtype=np.int64)
        if A.ndim != 2:
            if n is None:
                raise CodeError("need a 2-d generator matrix")
            A = A.reshape(0, n)
        R, piv = kernels.rref(field, A) if A.shape[0] else (A, [])
        self.field = field
        self.n = int(A.shape[1])
        self.matrix = np.ascontiguousarray(R[: len(piv)])
        self.pivots = tuple(piv)
        self.provenance = dict(provenance or {})

    k = property(lambda self: int(self.matrix.shape[0]))

    def __repr__(self):
        return f"LinearCode[{self.n},{self.k}] over {self.field!r}"

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.field, self.n, self.matrix.tobytes()))

    def encode(self, msg):
        msg = np.asarray(msg, dtype=np.int64).reshape(1, -1)
        return kernels.matmul(self.field, msg, self.matrix)[0]

    def contains(self, word) -> bool:
        word = np.asarray(word, dtype=np.int64).reshape(1, -1)
        return kernels.rank(self.field, np.vstack([self.matrix, word])) == self.k

    @property
    def design_distance(self):
        """n - deg G for AG codes (None otherwise)."""
        deg = self.provenance.get("deg_G")
        return None if deg is None else self.n - deg

    def scaled(self, a):
        a = np.asarray(a, dtype=np.int64)
        t = self.field.require_tables()
        return LinearCode(self.field, t.mul(self.matrix, a[None, :]), n=self.n)


def split_arrays(places):
    """(X, Y) code arrays for a list of split places."""
    X = np.fromiter((p.x for p in places), dtype=np.int64, count=len(places))
    Y = np.fromiter((p.y for p in places), dtype=np.int64, count=len(places))
    return X, Y


def ag_code(curve: KummerCurve, D, G: Divisor) -> LinearCode:
    """C_L(D, G): evaluations of a basis of L(G) at the places of D.

    D is a list of split places or a pair of (X, Y) code arrays.
    """
    if isinstance(D, tuple) and len(D) == 2 and isinstance(D[0], np.ndarray):
        X, Y = D
    else:
        D = list(D)
        if any(p.kind != "split" for p in D):
            raise CodeError("evaluation places must be split rational places")
        X, Y = split_arrays(D)
    n = int(X.size)
    keys = X * curve.field.order + Y
    if np.unique(keys).size != n:
        raise CodeError("evaluation places repeat")
    supp_x = {p.x for p in G.support if p.kind != "inf"}
    if supp_x and np.isin(X, list(supp_x)).any():
        raise CodeError("support of G meets D")
    L = riemann_roch(curve, G)
    M = L.evaluate(X, Y)
    code = LinearCode(
        curve.field,
        M,
        provenance={"deg_G": G.degree, "ell_G": L.dim, "genus": curve.genus},
        n=n,
    )
    if code.k != L.dim and G.degree < n:
        raise CodeError(f"evaluation map not injective: rank {code.k} < ell(G) = {L.dim}")
    return code


def dual(code: LinearCode) -> LinearCode:
    if code.k == 0:
        return LinearCode(code.field, np.eye(code.n, dtype=np.int64))
    N = kernels.nullspace(code.field, code.matrix)
    return LinearCode(code.field, N, n=code.n)


def _same_space(c1: LinearCode, c2: LinearCode):
    if c1.field != c2.field:
        raise CodeError("codes live over different fields")
    if c1.n != c2.n:
        raise CodeError(f"length mismatch {c1.n} != {c2.n}")


@dataclass(frozen=True)
class LcpCertificate:
    n: int
    k1: int
    k2: int
    stacked_rank: int
    security_bound: int | None = None

    @property
    def verdict(self) -> bool:
        return self.k1 + self.k2 == self.n and self.stacked_rank == self.n

    def to_json(self):
        return {
            "type": "lcp",
            "verdict": self.verdict,
            "data": {
                "n": self.n,
                "k1": self.k1,
                "k2": self.k2,
                "stacked_rank": self.stacked_rank,
                "security_bound": self.security_bound,
            },
        }


def lcp_check(c1: LinearCode, c2: LinearCode) -> LcpCertificate:
    """C1 + C2 = GF(q)^n as a direct sum, via the rank of the stacked generators."""
    _same_space(c1, c2)
    rank = kernels.rank(c1.field, np.vstack([c1.matrix, c2.matrix])) if c1.k + c2.k else 0
    bound = None
    d1 = c1.design_distance
    if d1 is not None:
        d2 = c2.provenance.get("dual_design_distance")
        bound = d1 if d2 is None else min(d1, d2)
    return LcpCertificate(c1.n, c1.k, c2.k, rank, bound)


def lcd_check(code: LinearCode) -> bool:
    """C meets its Euclidean dual trivially iff the Gram matrix is nonsingular."""
    if code.k == 0:
        return True
    gram = kernels.matmul(code.field, code.matrix, code.matrix.T.copy())
    return kernels.rank(code.field, gram) == code.k


def diag_equiv(c1: LinearCode, c2: LinearCode):
    """A nonzero vector a with a * C1 = C2 (coordinatewise), or None.

    Both codes are brought to systematic form on C1's pivot columns; the
    entries then fix every ratio a_j / a_pivot, which is propagated along the
    bipartite graph of nonzero entries.
    """
    _same_space(c1, c2)
    if c1.k != c2.k:
        raise CodeError(f"dimension mismatch {c1.k} != {c2.k}")
    F = c1.field
    t = F.require_tables()
    n, k = c1.n, c1.k
    if k == 0:
        return np.ones(n, dtype=np.int64)
    piv = list(c1.pivots)
    R1 = c1.matrix
    sub = c2.matrix[:, piv]
    try:
        B2 = kernels.matmul(F, kernels.inverse(F, sub), c2.matrix)
    except ZeroDivisionError:
        return None
    if not np.array_equal(R1 != 0, B2 != 0):
        return None
    # B2[i, j] = R1[i, j] * a_j / a_{piv_i}  =>  a_j = ratio * a_{piv_i}
    ratio = t.mul(B2, t.inv(np.where(R1 == 0, 1, R1)))
    a = np.zeros(n, dtype=np.int64)
    adj_rows = [np.nonzero(R1[i])[0] for i in range(k)]
    col_rows = [[] for _ in range(n)]
    for i in range(k):
        for j in adj_rows[i]:
            col_rows[j].append(i)
    row_scale = [0] * k  # a_{piv_i}
    for start in range(k):
        if row_scale[start]:
            continue
        row_scale[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in adj_rows[i]:
                val = int(t.mul(ratio[i, j], row_scale[i]))
                if a[j] == 0:
                    a[j] = val
                    for i2 in col_rows[j]:
                        # a_j = ratio[i2, j] * a_{piv_i2}
                        want = int(t.mul(val, t.inv(ratio[i2, j])))
                        if row_scale[i2] == 0:
                            row_scale[i2] = want
                            stack.append(i2)
                        elif row_scale[i2] != want:
                            return None
                elif a[j] != val:
                    return None
    a[a == 0] = 1  # zero columns carry no constraint
    if c1.scaled(a) != c2:
        return None
    return a


def diag_equiv_linear(c1: LinearCode, c2: LinearCode):
    """Solution space of {H2 diag(c) a = 0 : c a row of C1}, as rows.

    Any vector of the returned space with all entries nonzero maps C1 onto C2.
    """
    _same_space(c1, c2)
    F = c1.field
    t = F.require_tables()
    H2 = dual(c2).matrix
    blocks = [t.mul(H2, row[None, :]) for row in c1.matrix]
    if not blocks:
        return np.eye(c1.n, dtype=np.int64)
    return kernels.nullspace(F, np.vstack(blocks))


def min_distance(code: LinearCode, budget: int | None = None):
    """(bound, exact): exact distance when the message space fits the budget,
    otherwise the design bound n - deg G (1 when no provenance)."""
    budget = config.DISTANCE_BUDGET if budget is None else budget
    if code.k == 0:
        return code.n + 1, True
    q = code.field.order
    if (q**code.k - 1) // (q - 1) <= budget:
        w, _ = kernels.min_weight(code.field, code.matrix)
        return int(w), True
    design = code.design_distance
    return (max(1, design) if design is not None else 1), False


def random_codeword_weights(code: LinearCode, count: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, code.field.order, size=(count, code.k), dtype=np.int64)
    words = kernels.matmul(code.field, msgs, code.matrix)
    nz = msgs.any(axis=1)
    return np.count_nonzero(words, axis=1)[nz]


def mds_check(code: LinearCode, budget: int | None = None) -> bool:
    """Every k columns independent (d = n - k + 1).

    Runs on whichever of C and its dual has the smaller dimension (smaller
    minors), since a code is MDS iff its dual is.
    """
    budget = config.MDS_SUBSET_BUDGET if budget is None else budget
    n, k = code.n, code.k
    if k in (0, n):
        return True
    target = dual(code) if n - k < k else code
    subsets = comb(n, k)
    if subsets > budget:
        raise BudgetError(f"{subsets} column subsets exceed the MDS budget {budget}")
    return kernels.first_singular_subset(code.field, target.matrix) is None


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

def write_matrix(code: LinearCode) -> str:
    F = code.field
    desc = json.dumps(F.descriptor(), separators=(",", ":"), sort_keys=True)
    lines = [f"{code.k} {code.n} {desc}"]
    for row in code.matrix:
        lines.append(" ".join(F.format(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    k, n, desc = lines[0].split(" ", 2)
    F = FiniteField.from_descriptor(json.loads(desc))
    k, n = int(k), int(n)
    rows = [[F.parse(tok).code for tok in ln.split()] for ln in lines[1 : 1 + k]]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise CodeError("matrix shape does not match its header")
    return LinearCode(F, np.array(rows, dtype=np.int64).reshape(k, n), n=n)


def certificate_json(kind: str, verdict: bool, data) -> dict:
    return {"type": kind, "verdict": bool(verdict), "data": data}
