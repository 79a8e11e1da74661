"""Weierstrass semigroup data of totally ramified places on Kummer covers.

All quantities here are determined by the branch signature (m and the
exponents), so they work on a ``BranchSignature`` or on a full curve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd

from .curve import BranchSignature, CurveError, INFINITY, KummerCurve, Place

__all__ = [
    "InfeasibleError",
    "SemigroupProfile",
    "profile",
    "f_values",
    "GapSet",
    "gamma_single",
    "gamma_tuple",
    "nonspecial_criterion",
    "build_nonspecial_g",
    "build_nonspecial_g_minus_1",
    "floor_ceil_identities",
    "ceil_increment",
]


class InfeasibleError(CurveError):
    """A construction precondition fails for this branch signature."""


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _sig(obj) -> BranchSignature:
    if isinstance(obj, KummerCurve):
        return obj.signature
    if isinstance(obj, BranchSignature):
        return obj
    sig = getattr(obj, "signature", None)
    if isinstance(sig, BranchSignature):
        return sig
    raise TypeError(f"expected a curve or a branch signature, got {type(obj).__name__}")


def s_value(sig: BranchSignature, t: int) -> int:
    """S_t = u + sum ceil(t lambda_j / m) + sum ceil(t lambda'_k / m) - floor(t lambda0 / m)."""
    m = sig.m
    val = sig.u - (t * sig.lambda0) // m
    for lam in sig.beta_lambdas + sig.gamma_lambdas:
        val += _ceil_div(t * lam, m)
    return val


def f_values(sig, lam_j: int):
    """[f_j(1), ..., f_j(m-1)] for the beta exponent lam_j."""
    sig = _sig(sig)
    m = sig.m
    lam = pow(lam_j, -1, m)
    out = []
    for t in range(1, m):
        tl = t * lam
        val = sig.u * _ceil_div(tl, m)
        val += sum(_ceil_div(tl * b, m) for b in sig.beta_lambdas)
        val += sum(_ceil_div(tl * c, m) for c in sig.gamma_lambdas)
        val -= _ceil_div(tl * sig.lambda0, m) + 1
        out.append(val)
    return out


@dataclass(frozen=True)
class SemigroupProfile:
    signature: BranchSignature
    S: tuple  # S_1..S_{m-1}
    s: tuple  # s_1..s_{m-1}
    s_prefix: tuple  # s'_1..s'_{m-1}, s'_t = s_0 + ... + s_{t-1}
    f: dict  # beta exponent -> (f_j(1..m-1))
    V_F: tuple

    @property
    def ell(self):
        return self.S

    @property
    def m(self):
        return self.signature.m

    def S_at(self, t):
        return self.S[t - 1]

    def s_at(self, t):
        return self.s[t - 1]

    def prefix_at(self, t):
        return self.s_prefix[t - 1]

    @property
    def negative_t(self):
        """t in [1, m-2] with s_t < 0 (empty when the construction is feasible)."""
        return [t for t in range(1, self.m - 1) if self.s[t - 1] < 0]

    @property
    def feasible(self):
        return not self.negative_t

    @property
    def beta_ok(self):
        return all(lam in self.V_F for lam in self.signature.beta_lambdas)

    def to_json(self):
        return {
            "m": self.m,
            "lambda0": self.signature.lambda0,
            "genus": self.signature.genus,
            "u": self.signature.u,
            "v": self.signature.v,
            "w": self.signature.w,
            "S": list(self.S),
            "ell": list(self.S),
            "s": list(self.s),
            "s_prefix": list(self.s_prefix),
            "V_F": list(self.V_F),
            "feasible": self.feasible,
            "negative_t": self.negative_t,
        }


def profile(curve_or_sig) -> SemigroupProfile:
    sig = _sig(curve_or_sig)
    m = sig.m
    S = [s_value(sig, t) for t in range(1, m)]
    s = [S[i] - S[i + 1] for i in range(m - 2)] + [S[-1] - 1]
    prefix, acc = [], 0
    for i in range(m - 1):
        prefix.append(acc)
        acc += s[i]
    f = {lam: tuple(f_values(sig, lam)) for lam in sorted(set(sig.beta_lambdas))}
    V_F = tuple(lam for lam, vals in f.items() if min(vals) >= 0)
    prof = SemigroupProfile(sig, tuple(S), tuple(s), tuple(prefix), f, V_F)
    # identities that hold for every signature
    assert s[-1] == sig.lambda0 // m
    assert sum(t * s[t - 1] for t in range(1, m)) == sig.genus
    return prof


# ---------------------------------------------------------------------------
# gap sets and minimal generating tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapSet:
    """Complement of Gamma+ for a single totally ramified place."""

    m: int
    bounds: tuple  # per t in 1..m-1: gaps m*mu + t for 0 <= mu <= bound

    @property
    def gaps(self):
        out = []
        for t, b in enumerate(self.bounds, start=1):
            out.extend(self.m * mu + t for mu in range(b + 1))
        return sorted(out)

    def __contains__(self, n: int) -> bool:
        """True when n is a pole number (n >= 0 and not a gap)."""
        if n < 0:
            return False
        t = n % self.m
        if t == 0:
            return True
        return n // self.m > self.bounds[t - 1]

    def smallest_positive(self) -> int:
        n = 1
        while n not in self:
            n += 1
        return n


def _place_class(curve: KummerCurve, place: Place):
    if place.kind != "ram":
        raise CurveError(f"{place.label(curve.field)} is not a totally ramified branch place")
    return curve.lam(place.x)


def gamma_single(curve: KummerCurve, place: Place) -> GapSet:
    lam = _place_class(curve, place)
    prof = profile(curve)
    if lam == 1:
        return GapSet(curve.m, tuple(S - 2 for S in prof.S))
    return GapSet(curve.m, prof.f[lam])


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def gamma_tuple(curve: KummerCurve, places):
    """Yield the minimal generating vectors for a tuple of ramified places."""
    places = list(places)
    sig = curve.signature
    if not 2 <= len(places) <= sig.u + sig.v:
        raise CurveError("tuple size must lie in [2, u + v]")
    lams = [_place_class(curve, p) for p in places]
    if len(set(places)) != len(places):
        raise CurveError("repeated place in tuple")
    m = curve.m
    ell = len(places)
    for t in range(1, m):
        budget = s_value(sig, t) - ell
        if budget < 0:
            continue
        offs = [t * lam % m for lam in lams]
        for mus in _compositions(budget, ell):
            yield tuple(m * mu + o for mu, o in zip(mus, offs))


def nonspecial_criterion(curve: KummerCurve, coeffs) -> bool:
    """Sufficient test: no generating vector of any sub-tuple lies below ``coeffs``.

    ``coeffs`` maps totally ramified places to nonnegative integers and must
    have total degree g.
    """
    coeffs = {p: int(c) for p, c in dict(coeffs).items() if c}
    if sum(coeffs.values()) != curve.genus:
        raise CurveError(f"degree {sum(coeffs.values())} != genus {curve.genus}")
    if any(c < 0 for c in coeffs.values()):
        raise CurveError("divisor is not effective")
    places = sorted(coeffs)
    if not places:
        return True
    sig = curve.signature
    m = curve.m
    lams = [_place_class(curve, p) for p in places]
    for p in places:
        if gamma_single(curve, p).smallest_positive() <= coeffs[p]:
            return False
    # for |I| >= 2, look for a composition that fits under coeffs
    S = [s_value(sig, t) for t in range(1, m)]
    idx = range(len(places))
    for size in range(2, min(len(places), sig.u + sig.v) + 1):
        for sub in itertools.combinations(idx, size):
            for t in range(1, m):
                need = S[t - 1] - size
                if need < 0:
                    continue
                room = 0
                for i in sub:
                    off = t * lams[i] % m
                    a = coeffs[places[i]]
                    if a < off:
                        room = -1
                        break
                    room += (a - off) // m
                if room >= need:
                    return False
    return True


# ---------------------------------------------------------------------------
# non-special divisors of degree g and g - 1
# ---------------------------------------------------------------------------

def _check_feasible(curve: KummerCurve, prof: SemigroupProfile, allow_extra_beta=False):
    sig = curve.signature
    fl = sig.lambda0 // sig.m
    vmax = fl + 1 if allow_extra_beta else fl
    if sig.v > vmax:
        raise InfeasibleError(f"v = {sig.v} exceeds {vmax} (floor(lambda0/m) = {fl})")
    if sig.w > fl:
        raise InfeasibleError(f"w = {sig.w} exceeds floor(lambda0/m) = {fl}")
    missing = [lam for lam in sig.beta_lambdas if lam not in prof.V_F]
    if missing:
        raise InfeasibleError(f"beta exponents {sorted(set(missing))} are not in V_F = {list(prof.V_F)}")
    if not prof.feasible:
        raise InfeasibleError(f"infeasible: s_t < 0 at t={','.join(map(str, prof.negative_t))}")


def build_nonspecial_g(curve: KummerCurve, prime_slots: int | None = None, variant: str = "alpha_first"):
    """Effective non-special divisor of degree g supported on ramified places.

    Weight-t slots (t <= m-2) take alpha places in branch-list order; the
    s_{m-1} slots of weight m-1 take the next alpha places and
    ``prime_slots`` beta places.  ``variant`` picks the default for
    ``prime_slots``: "alpha_first" uses as few beta places as possible,
    "beta_first" as many as possible.
    """
    from .divisor import Divisor

    prof = profile(curve)
    sig = curve.signature
    fl = sig.lambda0 // sig.m
    _check_feasible(curve, prof, allow_extra_beta=True)
    top = prof.s[-1]
    lower_slots = sum(prof.s[:-1])
    lo = max(0, lower_slots + top - sig.u)
    hi = min(sig.v, top)
    if sig.v == fl + 1:
        lo = max(lo, sig.w)
        hi = min(hi, fl)
    if prime_slots is None:
        if variant == "alpha_first":
            prime_slots = lo
        elif variant == "beta_first":
            prime_slots = hi
        else:
            raise ValueError(f"unknown variant {variant!r}")
    if not lo <= prime_slots <= hi:
        raise InfeasibleError(f"prime_slots must lie in [{lo}, {hi}], got {prime_slots}")
    coeffs = {}
    pos = 1
    for t in range(1, sig.m - 1):
        for _ in range(prof.s[t - 1]):
            coeffs[curve.Q(pos)] = t
            pos += 1
    for _ in range(top - prime_slots):
        coeffs[curve.Q(pos)] = sig.m - 1
        pos += 1
    for j in range(1, prime_slots + 1):
        coeffs[curve.Qp(j)] = sig.m - 1
    A = Divisor(coeffs)
    assert A.degree == sig.genus
    return A


def build_nonspecial_g_minus_1(curve: KummerCurve, A=None, avoid: Place | None = None):
    """A - P for the degree-g divisor A and a rational place P outside supp(A).

    P defaults to the place at infinity.
    """
    from .divisor import Divisor

    if A is None:
        A = build_nonspecial_g(curve)
    P = INFINITY if avoid is None else avoid
    if P in A.support:
        raise CurveError(f"{P.label(curve.field)} lies in the support of A")
    if P.degree != 1 or P.kind in ("rest", "fiber_rest"):
        raise CurveError("the removed place must be rational")
    return A - Divisor({P: 1})


# ---------------------------------------------------------------------------
# floor / ceiling identities
# ---------------------------------------------------------------------------

def floor_ceil_identities(a: int, b: int):
    """Both sides of three floor/ceiling identities for x = a/b.

    Returns {name: (lhs, rhs)}; the lattice-sum identity needs a, b >= 1.
    """
    x = Fraction(a, b)
    out = {
        "floor_neg": (floor(-x), -ceil(x)),
        "ceil_minus_floor": (ceil(x) - floor(x), 0 if x.denominator == 1 else 1),
    }
    if a >= 1 and b >= 1:
        lhs = sum((k * a) // b for k in range(1, b))
        num = (a - 1) * (b - 1) + gcd(a, b) - 1
        out["lattice_sum"] = (lhs, Fraction(num, 2))
    return out


def ceil_increment(lam: int, m: int, k: int):
    """(ceil((k+1)lam/m) - ceil(k lam/m), predicted value).

    The prediction is 1 exactly when k = floor(l m / lam) for some 1 <= l < lam.
    """
    if not 1 <= lam < m or not 1 <= k <= m - 2:
        raise ValueError("need 1 <= lam < m and 1 <= k <= m - 2")
    actual = _ceil_div((k + 1) * lam, m) - _ceil_div(k * lam, m)
    jumps = {(l * m) // lam for l in range(1, lam)}
    return actual, 1 if k in jumps else 0
