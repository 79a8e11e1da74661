"""Rational points of y^2 = cubic as an abelian group, and MDS pairs on a coset.

Points are pairs of field codes (x, y); the point at infinity is ``None`` and
is the neutral element.  The group is small enough in every use here that
orders are found by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..codes import mds_check
from ..curve import CurveError, KummerCurve, curve_create
from ..divisor import Divisor
from ..gf import FieldError
from ..semigroup import InfeasibleError
from .lcp import CertificateError, LcpResult, build_lcp

__all__ = [
    "EllipticGroup",
    "elliptic_group",
    "subset_sum_mds",
    "EllMdsResult",
    "build_ell_mds",
]


def _two_adic(n):
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    return e, n


class EllipticGroup:
    """Chord-tangent group on y^2 = x^3 + a2 x^2 + a4 x + a6."""

    def __init__(self, curve: KummerCurve):
        if curve.genus != 1 or curve.m != 2 or len(curve.branch) != 3:
            raise CurveError("needs a genus-1 curve y^2 = cubic")
        F = curve.field
        if F.p == 2:
            raise FieldError("needs odd characteristic")
        self.curve = curve
        self.field = F
        # a * prod (x - xi) expanded
        c = [1]
        for xi, _ in curve.branch:
            nxt = [0] * (len(c) + 1)
            for i, v in enumerate(c):
                nxt[i + 1] = F.add_c(nxt[i + 1], v)
                nxt[i] = F.sub_c(nxt[i], F.mul_c(v, xi))
            c = nxt
        if curve.a != 1:
            raise CurveError("needs a monic model (leading constant 1)")
        self.a6, self.a4, self.a2 = c[0], c[1], c[2]
        X, Y = curve.split_places()
        pts = [None] + sorted([(xi, 0) for xi, _ in curve.branch] + list(zip(X.tolist(), Y.tolist())))
        self.points = pts
        self.index = {P: i for i, P in enumerate(pts)}
        self.N = len(pts)
        self._orders = None
        self._gens = None

    def __len__(self):
        return self.N

    def on_curve(self, P) -> bool:
        if P is None:
            return True
        F = self.field
        x, y = P
        rhs = F.add_c(F.add_c(F.pow_c(x, 3), F.mul_c(self.a2, F.mul_c(x, x))), F.add_c(F.mul_c(self.a4, x), self.a6))
        return F.mul_c(y, y) == rhs

    def neg(self, P):
        return None if P is None else (P[0], self.field.neg_c(P[1]))

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        F = self.field
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if F.add_c(y1, y2) == 0:
                return None
            # tangent slope (3x^2 + 2 a2 x + a4) / 2y
            num = F.add_c(F.add_c(F.mul_c(3 % F.p, F.mul_c(x1, x1)), F.mul_c(F.mul_c(2, self.a2), x1)), self.a4)
            lam = F.mul_c(num, F.inv_c(F.mul_c(2, y1)))
        else:
            lam = F.mul_c(F.sub_c(y2, y1), F.inv_c(F.sub_c(x2, x1)))
        x3 = F.sub_c(F.sub_c(F.sub_c(F.mul_c(lam, lam), self.a2), x1), x2)
        y3 = F.sub_c(F.mul_c(lam, F.sub_c(x1, x3)), y1)
        return (x3, y3)

    def mul(self, k: int, P):
        if k < 0:
            return self.mul(-k, self.neg(P))
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def order(self, P) -> int:
        k, R = 1, P
        while R is not None:
            R = self.add(R, P)
            k += 1
        return k

    @property
    def orders(self):
        if self._orders is None:
            self._orders = [self.order(P) for P in self.points]
        return self._orders

    def generators(self):
        """(R1, R2) with ord R1 | ord R2, ord R1 * ord R2 = N and <R1, R2> = all."""
        if self._gens is None:
            n2 = max(self.orders)
            n1 = self.N // n2
            R2 = self.points[self.orders.index(n2)]
            span2 = set(self.multiples(R2))
            R1 = None
            for P, o in zip(self.points, self.orders):
                if o == n1 and not (set(self.multiples(P)) & span2) - {None}:
                    R1 = P
                    break
            if R1 is None:
                raise CurveError("no complementary generator found")  # pragma: no cover
            self._gens = (R1, R2)
        return self._gens

    def multiples(self, P):
        out, R = [None], P
        while R is not None:
            out.append(R)
            R = self.add(R, P)
        return out

    def decomposition(self):
        """(l1, m1, l2, m2) with ord R_i = 2^l_i m_i."""
        R1, R2 = self.generators()
        l1, m1 = _two_adic(self.order(R1))
        l2, m2 = _two_adic(self.order(R2))
        return l1, m1, l2, m2

    def span(self, gens):
        """Subgroup generated by ``gens``, as a set of points."""
        H = {None}
        frontier = [None]
        while frontier:
            P = frontier.pop()
            for g in gens:
                Q = self.add(P, g)
                if Q not in H:
                    H.add(Q)
                    frontier.append(Q)
        return H

    def coordinates(self):
        """Map point -> (a, b) with P = a R1 + b R2."""
        R1, R2 = self.generators()
        n1, n2 = self.order(R1), self.order(R2)
        m1 = self.multiples(R1)
        m2 = self.multiples(R2)
        out = {}
        for a in range(n1):
            for b in range(n2):
                out[self.add(m1[a], m2[b])] = (a, b)
        if len(out) != self.N:
            raise CurveError("generators do not span the group")  # pragma: no cover
        return out

    def point_of(self, place):
        if place.kind == "inf":
            return None
        if place.kind == "ram":
            return (place.x, 0)
        return (place.x, place.y)

    def divisor_sum(self, G: Divisor):
        R = None
        for place, c in G.items():
            R = self.add(R, self.mul(c, self.point_of(place)))
        return R


def elliptic_group(curve: KummerCurve) -> EllipticGroup:
    return EllipticGroup(curve)


def subset_sum_mds(group: EllipticGroup, D_points, k: int, target) -> bool:
    """True iff no k distinct points of D sum to ``target`` (code is MDS).

    Dynamic programming over (subset size, group element) in the coordinates
    Z/n1 x Z/n2.
    """
    if k <= 0 or k >= len(D_points):
        return True
    coords = group.coordinates()
    R1, R2 = group.generators()
    n1, n2 = group.order(R1), group.order(R2)
    N = n1 * n2
    idx = lambda ab: ab[0] * n2 + ab[1]
    a = np.arange(N) // n2
    b = np.arange(N) % n2
    reach = np.zeros((k + 1, N), dtype=bool)
    reach[0, 0] = True
    for j, P in enumerate(D_points):
        pa, pb = coords[P]
        # source index g maps to g + P
        dest = ((a + pa) % n1) * n2 + (b + pb) % n2
        top = min(j + 1, k)
        shifted = np.zeros((top, N), dtype=bool)
        shifted[:, dest] = reach[:top]
        reach[1 : top + 1] |= shifted
    return not reach[k, idx(coords[target])]


@dataclass
class EllMdsResult:
    case: int
    lcp: LcpResult
    group: EllipticGroup
    mds: bool
    mds_exhaustive: bool | None = None

    def summary(self):
        out = self.lcp.summary()
        out.update({
            "case": self.case,
            "N1": self.group.N,
            "decomposition": list(self.group.decomposition()),
            "mds": self.mds,
            "mds_exhaustive": self.mds_exhaustive,
            "distance": self.lcp.n - self.lcp.code_g.k + 1 if self.mds else None,
        })
        return out


def build_ell_mds(curve: KummerCurve, s: int, case: int, exhaustive: bool | None = None,
                  strict=True) -> EllMdsResult:
    """MDS LCP on the coset R2 + <R1, 2 R2>.

    Cases 1, 3 use the w = 0 construction (s even), cases 2, 4 the v = 0 one
    (s odd); cases 3, 4 (8 not dividing N) drop the two branch points of the
    coset.  ``exhaustive`` also runs the column-subset MDS check (default: when
    it fits the budget).
    """
    if case not in (1, 2, 3, 4):
        raise InfeasibleError(f"case must be 1..4, got {case}")
    grp = EllipticGroup(curve)
    N1 = grp.N
    eight = N1 % 8 == 0
    if eight != (case in (1, 2)):
        raise InfeasibleError(
            f"case {case} needs {'8 | N1' if case in (1, 2) else '8 not dividing N1'}, N1 = {N1}"
        )
    if (s % 2 == 0) != (case in (1, 3)):
        raise InfeasibleError(f"case {case} needs {'even' if case in (1, 3) else 'odd'} s, got s = {s}")
    R1, R2 = grp.generators()
    sub = grp.span([R1, grp.mul(2, R2)])
    if 2 * len(sub) != N1:
        raise CertificateError("<R1, 2R2> is not of index 2")  # pragma: no cover
    coset = sorted((grp.add(R2, P) for P in sub), key=lambda P: (P[0], P[1]))
    branch_pts = [(xi, 0) for xi, _ in curve.branch]
    inside = sorted(P for P in branch_pts if P in sub)
    outside = sorted(P for P in branch_pts if P not in sub)
    if case in (3, 4):
        if len(inside) != 1:
            raise CertificateError(f"expected one branch point in <R1, 2R2>, found {len(inside)}")
        coset = [P for P in coset if P not in outside]
    else:
        if outside:
            raise CertificateError("branch point outside <R1, 2R2> with 8 | N1")  # pragma: no cover
    # relabel so that Q_1 is the branch point inside the subgroup
    order = inside[:1] + sorted(x for x in branch_pts if x not in inside[:1])
    c2 = curve_create(curve.field, 2, curve.a, [(P[0], 1) for P in order])
    if c2.lambda0 % 2 != 1:
        raise CertificateError("lambda0 must be odd")  # pragma: no cover
    grp2 = EllipticGroup(c2)
    X = np.array([P[0] for P in coset], dtype=np.int64)
    Y = np.array([P[1] for P in coset], dtype=np.int64)
    variant = "w0_a" if case in (1, 3) else "v0"
    res = build_lcp(c2, variant, s, (X, Y), s_min=2, strict=strict)
    k = res.code_g.k
    target = grp2.divisor_sum(res.G)
    mds = subset_sum_mds(grp2, coset, k, target)
    exh = None
    if exhaustive or exhaustive is None:
        try:
            exh = mds_check(res.code_g)
        except Exception:
            if exhaustive:
                raise
    out = EllMdsResult(case, res, grp2, mds, exh)
    if strict and (not mds or (exh is not None and exh != mds)):
        raise CertificateError(f"case {case} s={s}: mds={mds}, exhaustive={exh}")
    return out
