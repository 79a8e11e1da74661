"""Divisors on rational places and Riemann-Roch spaces of Galois-stable divisors.

For a divisor G supported on branch places and the place at infinity (with
equal coefficients across each partially ramified fiber), L(G) splits as a
direct sum over t in [0, m) of y^t * R_t where R_t is a space of rational
functions in x.  At a place over xi with ramification e and v(y) = c,
y^t r(x) lies in L(G) iff v_xi(r) >= -floor((G_xi + t c) / e), and at
infinity iff deg r <= floor((G_inf - t lambda0) / m).  Hence

    R_t = (x - xi)-shifted polynomials of degree <= deg_t,
    deg_t = floor((G_inf - t lambda0)/m) + sum_xi floor((G_xi + t c_xi)/e_xi).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .curve import INFINITY, CurveError, KummerCurve, MonomialFunction, Place

__all__ = [
    "Divisor",
    "MonomialFunction",
    "RRSpace",
    "principal_divisor",
    "riemann_roch",
    "ell",
    "is_nonspecial",
    "gcd_lmd",
    "linear_equiv_witness",
    "fiber_sum",
]


class Divisor:
    """Sparse integer combination of places; immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        for p, v in dict(coeffs or {}).items():
            v = int(v)
            if v:
                c[p] = c.get(p, 0) + v
        self._c = {p: v for p, v in c.items() if v}
        self._hash = None

    # mapping-like access
    def __getitem__(self, place):
        return self._c.get(place, 0)

    def items(self):
        return sorted(self._c.items())

    @property
    def support(self):
        return frozenset(self._c)

    @property
    def degree(self) -> int:
        return sum(v * p.degree for p, v in self._c.items())

    def is_effective(self) -> bool:
        return all(v > 0 for v in self._c.values())

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other: "Divisor"):
        out = dict(self._c)
        for p, v in other._c.items():
            out[p] = out.get(p, 0) + v
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -v for p, v in self._c.items()})

    def __sub__(self, other: "Divisor"):
        return self + (-other)

    def __mul__(self, k: int):
        return Divisor({p: k * v for p, v in self._c.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if not self._c:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{v}*{p.label()}" for p, v in self.items()) + ")"

    def format(self, field=None) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{v}*{p.label(field)}" for p, v in self.items())

    def to_json(self, field):
        return [{"place": p.to_json(field), "coeff": v} for p, v in self.items()]

    @classmethod
    def from_json(cls, data, field):
        return cls({Place.from_json(d["place"], field): int(d["coeff"]) for d in data})

    @classmethod
    def point(cls, place: Place, coeff: int = 1):
        return cls({place: coeff})


def fiber_sum(curve: KummerCurve, x: int) -> Divisor:
    """Sum of all places over the x-value ``x`` (rational ones and remainder)."""
    return Divisor({p: 1 for p in curve.fiber_places(x)})


def principal_divisor(curve: KummerCurve, fn: MonomialFunction) -> Divisor:
    if fn.coeff == 0:
        raise CurveError("the zero function has no divisor")
    out = defaultdict(int)
    xs = set(curve.branch_x) | {c for c, _ in fn.exps}
    for x in xs:
        for p in curve.fiber_places(x):
            v = curve.valuation(p, fn)
            if v:
                out[p] += v
    out[INFINITY] += curve.valuation(INFINITY, fn)
    D = Divisor(out)
    assert D.degree == 0
    return D


# ---------------------------------------------------------------------------
# Riemann-Roch
# ---------------------------------------------------------------------------

def _branch_coefficients(curve: KummerCurve, G: Divisor):
    """G as (coefficient per branch x, coefficient at infinity); validates support."""
    per_x = {}
    for p, v in G.items():
        if p.kind == "inf":
            continue
        if p.kind not in ("ram", "fiber", "fiber_rest") or not curve.is_branch(p.x):
            raise CurveError(
                f"unsupported place {p.label(curve.field)} in divisor: Riemann-Roch "
                "spaces are computed for divisors on branch places and infinity"
            )
        per_x.setdefault(p.x, set())
    for x in per_x:
        coeffs = {G[p] for p in curve.fiber_places(x)}
        if len(coeffs) != 1:
            raise CurveError(
                f"unequal coefficients across the fiber over {curve.field.format(x)}"
            )
        per_x[x] = coeffs.pop()
    return per_x, G[INFINITY]


@dataclass(frozen=True)
class RRSpace:
    """Basis y^t * x^j * prod (x - xi)^{-b_xi}, 0 <= j <= deg_t, of L(G)."""

    curve: KummerCurve
    divisor: Divisor
    components: tuple  # (t, deg_t, shift) with shift = {xi: -b_xi}

    @property
    def dim(self) -> int:
        return sum(max(0, d + 1) for _, d, _ in self.components)

    @property
    def basis(self):
        out = []
        for t, deg, shift in self.components:
            for j in range(deg + 1):
                e = dict(shift)
                if j:
                    e[0] = e.get(0, 0) + j
                out.append(MonomialFunction.make(t, e))
        return out

    def evaluate(self, X, Y):
        """dim x n matrix of basis values at the split places (X, Y)."""
        curve = self.curve
        t_ = curve.field.require_tables()
        X = np.asarray(X, dtype=np.int64)
        rows = []
        for t, deg, shift in self.components:
            if deg < 0:
                continue
            base = curve.evaluate(MonomialFunction.make(t, shift), X, Y)
            rows.append(base)
            cur = base
            for _ in range(deg):
                cur = t_.mul(cur, X)
                rows.append(cur)
        if not rows:
            return np.zeros((0, X.size), dtype=np.int64)
        return np.vstack(rows)

    def to_json(self):
        F = self.curve.field
        return {
            "dim": self.dim,
            "basis": [f.to_json(F) for f in self.basis],
        }


def riemann_roch(curve: KummerCurve, G: Divisor) -> RRSpace:
    per_x, g_inf = _branch_coefficients(curve, G)
    m = curve.m
    lam0 = curve.lambda0
    comps = []
    for t in range(m):
        deg = (g_inf - t * lam0) // m
        shift = {}
        for x in curve.branch_x:
            e, vy = curve.ramification(x)
            b = (per_x.get(x, 0) + t * vy) // e
            deg += b
            if b:
                shift[x] = -b
        comps.append((t, deg, shift))
    return RRSpace(curve, G, tuple(comps))


def ell(curve: KummerCurve, G: Divisor) -> int:
    return riemann_roch(curve, G).dim


def is_nonspecial(curve: KummerCurve, A: Divisor) -> bool:
    """Index of speciality zero: ell(A) = deg A + 1 - g."""
    return ell(curve, A) == A.degree + 1 - curve.genus


def gcd_lmd(G: Divisor, H: Divisor):
    places = G.support | H.support
    lo = Divisor({p: min(G[p], H[p]) for p in places})
    hi = Divisor({p: max(G[p], H[p]) for p in places})
    return lo, hi


def linear_equiv_witness(curve: KummerCurve, G: Divisor, H: Divisor):
    """A monomial z with G = H + (z), or None when the monomial family has none.

    The y-exponent is taken in [0, m); y^m only changes z by a monomial in x.
    """
    if G.degree != H.degree:
        raise CurveError(f"degree mismatch: {G.degree} != {H.degree}")
    D = G - H
    xs = sorted({p.x for p in D.support if p.kind != "inf"} | set(curve.branch_x))
    for t in range(curve.m):
        exps = {}
        ok = True
        for x in xs:
            fiber = curve.fiber_places(x)
            coeffs = {D[p] for p in fiber}
            if len(coeffs) != 1:
                ok = False
                break
            c = coeffs.pop()
            if curve.is_branch(x):
                e, vy = curve.ramification(x)
                num = c - t * vy
                if num % e:
                    ok = False
                    break
                if num:
                    exps[x] = num // e
            elif c:
                exps[x] = c
        if not ok:
            continue
        z = MonomialFunction.make(t, exps)
        if principal_divisor(curve, z) == D:
            return z
    return None
