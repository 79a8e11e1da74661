"""Kummer covers y^m = a * prod (x - xi)^lambda_xi over a finite field.

Branch points are classified by their exponent:

* alpha points: lambda = 1 (totally ramified, class size u)
* beta points: 1 < lambda < m with gcd(lambda, m) = 1 (totally ramified, v)
* gamma points: gcd(lambda, m) > 1 (partially ramified, w)

Everything that depends only on ``m`` and the exponents lives on
``BranchSignature`` so it can be evaluated without building the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt

import numpy as np
import sympy

from . import config
from .gf import BudgetError, FiniteField, field_create

__all__ = [
    "CurveError",
    "BranchSignature",
    "Place",
    "INFINITY",
    "MonomialFunction",
    "KummerCurve",
    "curve_create",
    "xm_signature",
    "ym_signature",
    "normalize_xm",
    "normalize_ym",
]


class CurveError(ValueError):
    """A curve precondition does not hold."""


# ---------------------------------------------------------------------------
# field-free branch data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchSignature:
    """Exponent data of a Kummer cover: m and the exponent of each branch point."""

    m: int
    lambdas: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(int(x) for x in self.lambdas))
        if self.m < 2:
            raise CurveError(f"m must be at least 2, got {self.m}")
        for lam in self.lambdas:
            if not 1 <= lam < self.m:
                raise CurveError(f"exponent {lam} outside [1, m)")
        if gcd(self.lambda0, self.m) != 1:
            raise CurveError(
                f"gcd(lambda0, m) = gcd({self.lambda0}, {self.m}) != 1: "
                "the place at infinity would not be totally ramified"
            )

    @property
    def lambda0(self) -> int:
        return sum(self.lambdas)

    @property
    def alpha_idx(self):
        return [i for i, lam in enumerate(self.lambdas) if lam == 1]

    @property
    def beta_idx(self):
        return [i for i, lam in enumerate(self.lambdas) if lam > 1 and gcd(lam, self.m) == 1]

    @property
    def gamma_idx(self):
        return [i for i, lam in enumerate(self.lambdas) if gcd(lam, self.m) > 1]

    @property
    def u(self):
        return len(self.alpha_idx)

    @property
    def v(self):
        return len(self.beta_idx)

    @property
    def w(self):
        return len(self.gamma_idx)

    @property
    def beta_lambdas(self):
        return [self.lambdas[i] for i in self.beta_idx]

    @property
    def gamma_lambdas(self):
        return [self.lambdas[i] for i in self.gamma_idx]

    @property
    def genus(self) -> int:
        m = self.m
        num = (m - 1) * (self.u + self.v - 1) + m * self.w - sum(gcd(l, m) for l in self.gamma_lambdas)
        return num // 2

    def ramification(self, i):
        """(e, v(y)) at a place over branch point i."""
        lam = self.lambdas[i]
        d = gcd(lam, self.m)
        return self.m // d, lam // d

    def describe(self):
        return {
            "m": self.m,
            "lambdas": list(self.lambdas),
            "u": self.u,
            "v": self.v,
            "w": self.w,
            "lambda0": self.lambda0,
            "genus": self.genus,
        }


# ---------------------------------------------------------------------------
# places and monomial functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Place:
    """A place of the function field, identified by how it sits over x.

    kinds: ``inf`` (the pole of x), ``ram`` (the single place over an
    alpha/beta point), ``fiber`` (a rational place over a gamma point,
    indexed by root), ``split`` (a rational place over a non-branch
    x-value, identified by its y-coordinate).  ``fiber_rest`` and ``rest``
    bundle the non-rational remainder of a fiber into one pseudo-place whose
    ``degree`` is the total degree of that remainder.
    """

    kind: str
    x: int = -1
    y: int = -1
    index: int = 0
    degree: int = 1

    def label(self, field: FiniteField | None = None) -> str:
        fmt = (lambda c: field.format(c)) if field is not None else str
        if self.kind == "inf":
            return "Qinf"
        if self.kind == "ram":
            return f"ram({fmt(self.x)})"
        if self.kind == "fiber":
            return f"fiber({fmt(self.x)},{self.index})"
        if self.kind == "split":
            return f"split({fmt(self.x)},{fmt(self.y)})"
        return f"{self.kind}({fmt(self.x)},deg={self.degree})"

    def to_json(self, field: FiniteField):
        d = {"kind": self.kind}
        if self.kind != "inf":
            d["x"] = field.format(self.x)
        if self.kind == "split":
            d["y"] = field.format(self.y)
        if self.kind == "fiber":
            d["index"] = self.index
        if self.kind in ("rest", "fiber_rest"):
            d["degree"] = self.degree
        return d

    @classmethod
    def from_json(cls, d, field: FiniteField):
        kind = d["kind"]
        if kind == "inf":
            return INFINITY
        x = field.parse(d["x"]).code
        y = field.parse(d["y"]).code if kind == "split" else -1
        return cls(kind, x, y, int(d.get("index", 0)), int(d.get("degree", 1)))


INFINITY = Place("inf")


@dataclass(frozen=True)
class MonomialFunction:
    """c * y^t * prod (x - xi)^e_xi with integer t and exponents."""

    t: int = 0
    exps: tuple = ()  # sorted ((code, exponent), ...)
    coeff: int = 1

    @classmethod
    def make(cls, t=0, exps=None, coeff=1):
        items = sorted((int(c), int(e)) for c, e in (exps or {}).items() if e)
        return cls(int(t), tuple(items), int(coeff))

    @property
    def exp_map(self):
        return dict(self.exps)

    def __mul__(self, other: "MonomialFunction"):
        e = self.exp_map
        for c, k in other.exps:
            e[c] = e.get(c, 0) + k
        return MonomialFunction.make(self.t + other.t, e, self.coeff if other.coeff == 1 else -1)

    def to_json(self, field: FiniteField):
        return {"t": self.t, "exponents": {field.format(c): e for c, e in self.exps}}


# ---------------------------------------------------------------------------
# the curve
# ---------------------------------------------------------------------------

class KummerCurve:
    """y^m = a * prod (x - xi)^lambda over ``field``; immutable."""

    def __init__(self, field: FiniteField, m: int, a: int, branch):
        self.field = field
        self.m = int(m)
        self.a = int(a)
        self.branch = tuple((int(x), int(lam)) for x, lam in branch)
        if gcd(field.order, self.m) != 1:
            raise CurveError(f"gcd(q, m) = gcd({field.order}, {self.m}) != 1")
        if self.a == 0 or not 0 < self.a < field.order:
            raise CurveError("leading constant must be a nonzero field element")
        xs = [x for x, _ in self.branch]
        if len(set(xs)) != len(xs):
            raise CurveError("branch x-values are not pairwise distinct")
        for x in xs:
            if not 0 <= x < field.order:
                raise CurveError(f"branch value {x} not in {field!r}")
        self.signature = BranchSignature(self.m, [lam for _, lam in self.branch])
        self._branch_pos = {x: i for i, x in enumerate(xs)}

    # -- basic data ---------------------------------------------------------

    def __repr__(self):
        return (
            f"KummerCurve({self.field!r}, m={self.m}, u={self.u}, v={self.v}, "
            f"w={self.w}, g={self.genus})"
        )

    def __eq__(self, other):
        return isinstance(other, KummerCurve) and (
            self.field, self.m, self.a, self.branch
        ) == (other.field, other.m, other.a, other.branch)

    def __hash__(self):
        return hash((self.field, self.m, self.a, self.branch))

    q = property(lambda self: self.field.order)
    u = property(lambda self: self.signature.u)
    v = property(lambda self: self.signature.v)
    w = property(lambda self: self.signature.w)
    lambda0 = property(lambda self: self.signature.lambda0)
    genus = property(lambda self: self.signature.genus)

    @property
    def branch_x(self):
        return [x for x, _ in self.branch]

    def is_branch(self, x: int) -> bool:
        return x in self._branch_pos

    def branch_index(self, x: int) -> int:
        return self._branch_pos[x]

    def lam(self, x: int) -> int:
        return self.branch[self._branch_pos[x]][1]

    def ramification(self, x: int):
        return self.signature.ramification(self._branch_pos[x])

    @property
    def alphas(self):
        return [self.branch[i][0] for i in self.signature.alpha_idx]

    @property
    def betas(self):
        return [self.branch[i][0] for i in self.signature.beta_idx]

    @property
    def gammas(self):
        return [self.branch[i][0] for i in self.signature.gamma_idx]

    # -- named places -------------------------------------------------------

    def Q(self, i: int) -> Place:
        """Place over the i-th alpha point (1-based, branch-list order)."""
        return Place("ram", self.alphas[i - 1])

    def Qp(self, j: int) -> Place:
        """Place over the j-th beta point (1-based)."""
        return Place("ram", self.betas[j - 1])

    def place_over(self, x: int) -> Place:
        """The single place over a totally ramified branch point."""
        if not self.is_branch(x):
            raise CurveError("not a branch point")
        e, _ = self.ramification(x)
        if e != self.m:
            raise CurveError("branch point is not totally ramified")
        return Place("ram", x)

    # -- function values ------------------------------------------------------

    def rhs(self, x0: int) -> int:
        """a * prod (x0 - xi)^lambda as a code."""
        F = self.field
        val = self.a
        for xi, lam in self.branch:
            val = F.mul_c(val, F.pow_c(F.sub_c(x0, xi), lam))
        return val

    def _rhs_logs(self, X):
        """log of the right-hand side at the codes X (-1 where it vanishes)."""
        t = self.field.require_tables()
        X = np.asarray(X, dtype=np.int64)
        L = np.full(X.shape, int(t.log[self.a]), dtype=np.int64)
        zero = np.zeros(X.shape, dtype=bool)
        for xi, lam in self.branch:
            diff = t.add(X, t.neg(np.int64(xi)))
            zero |= diff == 0
            L = (L + lam * t.log[np.where(diff == 0, 1, diff)]) % t.qm1
        return np.where(zero, -1, L)

    def gamma_residue(self, x: int) -> int:
        """r with Z^d = r describing the rational places over a gamma point."""
        F = self.field
        val = self.a
        for xi, lam in self.branch:
            if xi != x:
                val = F.mul_c(val, F.pow_c(F.sub_c(x, xi), lam))
        return val

    @cached_property
    def _gamma_roots(self):
        from .gf import nth_roots

        out = {}
        for x in self.gammas:
            d = gcd(self.lam(x), self.m)
            r = self.field.element(self.gamma_residue(x))
            out[x] = [z.code for z in nth_roots(r, d)]
        return out

    def fiber_places(self, x: int):
        """All places over the x-value ``x`` (rational ones plus a remainder)."""
        if self.is_branch(x):
            lam = self.lam(x)
            d = gcd(lam, self.m)
            if d == 1:
                return [Place("ram", x)]
            roots = self._gamma_roots[x]
            places = [Place("fiber", x, -1, i) for i in range(len(roots))]
            if len(roots) < d:
                places.append(Place("fiber_rest", x, -1, 0, d - len(roots)))
            return places
        ys = self.fiber_roots(x)
        places = [Place("split", x, y) for y in ys]
        if len(ys) < self.m:
            places.append(Place("rest", x, -1, 0, self.m - len(ys)))
        return places

    def fiber_roots(self, x0: int):
        from .gf import nth_roots

        c = self.rhs(x0)
        return [y.code for y in nth_roots(self.field.element(c), self.m)]

    # -- rational places --------------------------------------------------------

    def split_places(self, xs=None):
        """(X, Y) code arrays of the rational places over non-branch x-values.

        Sorted by x code, then y code.  ``xs`` restricts the x-values.
        """
        F = self.field
        t = F.require_tables()
        if F.order > config.ENUMERATION_BUDGET:
            raise BudgetError(f"{F!r} exceeds the enumeration budget")
        X = np.arange(F.order, dtype=np.int64) if xs is None else np.asarray(xs, dtype=np.int64)
        L = self._rhs_logs(X)
        qm1 = t.qm1
        d = gcd(self.m, qm1)
        ok = (L >= 0) & (L % d == 0)
        Xs, Ls = X[ok], L[ok]
        step = qm1 // d
        mprime = self.m // d
        inv = pow(mprime, -1, step) if step > 1 else 0
        e0 = ((Ls // d) * inv) % step if step > 1 else np.zeros_like(Ls)
        exps = (e0[:, None] + step * np.arange(d, dtype=np.int64)[None, :]) % qm1
        Y = np.sort(t.exp[exps], axis=1)
        Xr = np.repeat(Xs, d)
        return Xr, Y.reshape(-1)

    def split_counts(self):
        """Number of rational places over each x code (0 for branch points)."""
        t = self.field.require_tables()
        X = np.arange(self.field.order, dtype=np.int64)
        L = self._rhs_logs(X)
        d = gcd(self.m, t.qm1)
        return np.where((L >= 0) & (L % d == 0), d, 0)

    def ramified_rational_places(self):
        out = []
        for x, lam in self.branch:
            if gcd(lam, self.m) == 1:
                out.append(Place("ram", x))
            else:
                out.extend(p for p in self.fiber_places(x) if p.kind == "fiber")
        return out

    def count_rational_places(self) -> int:
        return int(self.split_counts().sum()) + len(self.ramified_rational_places()) + 1

    def rational_places(self):
        """Every degree-one place: infinity, ramified ones, then split ones."""
        X, Y = self.split_places()
        return (
            [INFINITY]
            + self.ramified_rational_places()
            + [Place("split", int(x), int(y)) for x, y in zip(X, Y)]
        )

    def is_maximal(self) -> bool:
        q = self.field.order
        r = isqrt(q)
        if r * r != q:
            return False
        return self.count_rational_places() == q + 1 + 2 * self.genus * r

    # -- valuations ---------------------------------------------------------------

    def valuation(self, place: Place, fn: MonomialFunction) -> int:
        if fn.coeff == 0:
            raise CurveError("valuation of the zero function")
        if place.kind == "inf":
            return -self.m * sum(e for _, e in fn.exps) - fn.t * self.lambda0
        if place.kind in ("ram", "fiber", "fiber_rest"):
            e, vy = self.ramification(place.x)
            return e * fn.exp_map.get(place.x, 0) + fn.t * vy
        return fn.exp_map.get(place.x, 0)

    def valuation_table(self, place: Place):
        """v(y), v(x - xi) per branch point, and v(x - c) for the place's own c."""
        row = {"y": self.valuation(place, MonomialFunction.make(1))}
        for xi in self.branch_x:
            row[xi] = self.valuation(place, MonomialFunction.make(0, {xi: 1}))
        if place.kind != "inf" and not self.is_branch(place.x):
            row[place.x] = 1
        return row

    def evaluate(self, fn: MonomialFunction, X, Y):
        """Values of fn at split places (X, Y); poles raise."""
        t = self.field.require_tables()
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        L = np.zeros(X.shape, dtype=np.int64)
        zero = np.zeros(X.shape, dtype=bool)
        if fn.t:
            if np.any(Y == 0):
                raise CurveError("y vanishes at an evaluation place")
            L = L + fn.t * t.log[Y]
        for c, e in fn.exps:
            diff = t.add(X, t.neg(np.int64(c)))
            hit = diff == 0
            if e < 0 and np.any(hit):
                raise CurveError("function has a pole at an evaluation place")
            zero |= hit
            L = L + e * t.log[np.where(hit, 1, diff)]
        vals = t.exp[L % t.qm1]
        if fn.coeff != 1:
            vals = t.mul(vals, fn.coeff % self.field.order if fn.coeff > 0 else t.neg(1))
        return np.where(zero, 0, vals).astype(np.int64)

    # -- serialisation ---------------------------------------------------------------

    def to_json(self):
        F = self.field
        return {
            "field": F.descriptor(),
            "m": self.m,
            "a": F.format(self.a),
            "branch": [{"x": F.format(x), "lambda": lam} for x, lam in self.branch],
        }

    @classmethod
    def from_json(cls, d):
        try:
            F = FiniteField.from_descriptor(d["field"])
            a = F.parse(str(d.get("a", F.format(1)))).code
            branch = [(F.parse(str(b["x"])).code, int(b["lambda"])) for b in d["branch"]]
            return curve_create(F, int(d["m"]), a, branch)
        except (KeyError, TypeError) as exc:
            raise CurveError(f"malformed curve descriptor: {exc}") from exc


def curve_create(field: FiniteField, m: int, a, branch) -> KummerCurve:
    """Validate and build a Kummer cover.

    ``a`` and the branch x-values may be field elements or codes.
    """
    a = a.code if hasattr(a, "code") else int(a)
    branch = [((x.code if hasattr(x, "code") else int(x)), int(lam)) for x, lam in branch]
    return KummerCurve(field, m, a, branch)


# ---------------------------------------------------------------------------
# maximal subcover normalisations
# ---------------------------------------------------------------------------

def _prime_power(q: int):
    f = sympy.factorint(q)
    if len(f) != 1:
        raise CurveError(f"{q} is not a prime power")
    (p, k), = f.items()
    return int(p), int(k)


@dataclass(frozen=True)
class SubcoverData:
    """Normalised model data of a maximal subcover, without the field."""

    family: str
    q: int
    m: int
    d: int
    r: int
    lam: int  # exponent on the beta points (X_m only, else 0)
    dprime: int
    field_p: int
    field_k: int
    signature: BranchSignature

    @property
    def field_order(self):
        return self.field_p**self.field_k

    @property
    def expected_places(self):
        """Place count of a maximal curve of this genus over the model field."""
        return self.field_order + 1 + 2 * self.signature.genus * isqrt(self.field_order)

    @property
    def expected_length(self):
        """Rational places off the branch locus and infinity."""
        return self.expected_places - len(self.signature.lambdas) - 1


def xm_signature(q: int, m: int, d: int) -> SubcoverData:
    """Normalised X_m model data: exponents 1 on d(q-2) points, lambda on d
    points, d' at x = 0, with lambda = (q+1)^-1 mod m and d' = d*lambda mod m."""
    p, k = _prime_power(q)
    if (q + 1) % d:
        raise CurveError(f"d = {d} does not divide q + 1 = {q + 1}")
    if (q * q - q + 1) % m:
        raise CurveError(f"m = {m} does not divide q^2 - q + 1 = {q * q - q + 1}")
    if gcd(m, q + 1) != 1:
        raise CurveError(f"gcd(m, q + 1) = {gcd(m, q + 1)} != 1")
    if m < 2:
        raise CurveError("m must be at least 2")
    lam = pow(q + 1, -1, m)
    dprime = d * lam % m
    if dprime == 0:
        raise CurveError("d * lambda is divisible by m")
    lambdas = [1] * (d * (q - 2)) + [lam] * d + [dprime]
    sig = BranchSignature(m, lambdas)
    return SubcoverData("xm", q, m, d, 0, lam, dprime, p, 6 * k, sig)


def ym_signature(q: int, r: int, m: int, d: int) -> SubcoverData:
    """Normalised Y_m model data: exponent 1 on d(q+1) points, d' = -d mod m at 0."""
    p, k = _prime_power(q)
    if r < 3 or r % 2 == 0:
        raise CurveError(f"r must be an odd integer >= 3, got {r}")
    if (q - 1) % d:
        raise CurveError(f"d = {d} does not divide q - 1 = {q - 1}")
    top = (q**r + 1) // (q + 1)
    if top % m:
        raise CurveError(f"m = {m} does not divide (q^r + 1)/(q + 1) = {top}")
    if m < 2:
        raise CurveError("m must be at least 2")
    dprime = (-d) % m
    if dprime == 0:
        raise CurveError("m divides d")
    lambdas = [1] * (d * (q + 1)) + [dprime]
    sig = BranchSignature(m, lambdas)
    if gcd(d * (q + 1) + dprime, m) != 1:
        raise CurveError("gcd(d(q+1) + d', m) != 1")  # pragma: no cover - implied
    return SubcoverData("ym", q, m, d, r, 0, dprime, p, 2 * r * k, sig)


def _roots_of_unity(field: FiniteField, n: int):
    from .gf import nth_roots

    return [z.code for z in nth_roots(field.one, n)]


def normalize_xm(q: int, m: int, d: int):
    """Kummer model of X_m over GF(q^6); returns (curve, lambda, d')."""
    data = xm_signature(q, m, d)
    F = field_create(data.field_p, data.field_k)
    betas = sorted(_roots_of_unity(F, d))
    alphas = sorted(set(_roots_of_unity(F, d * (q - 1))) - set(betas))
    if len(alphas) != d * (q - 2) or len(betas) != d:
        raise CurveError("unexpected root-of-unity count")  # pragma: no cover
    branch = [(x, 1) for x in alphas] + [(x, data.lam) for x in betas] + [(0, data.dprime)]
    curve = KummerCurve(F, m, F.neg_c(1), branch)
    return curve, data.lam, data.dprime


def normalize_ym(q: int, r: int, m: int, d: int):
    """Kummer model of Y_m over GF(q^(2r)); returns (curve, d')."""
    data = ym_signature(q, r, m, d)
    F = field_create(data.field_p, data.field_k)
    alphas = sorted(_roots_of_unity(F, d * (q + 1)))
    if len(alphas) != d * (q + 1):
        raise CurveError("unexpected root-of-unity count")  # pragma: no cover
    branch = [(x, 1) for x in alphas] + [(0, data.dprime)]
    curve = KummerCurve(F, m, F.neg_c(1), branch)
    return curve, data.dprime
