"""Divisor pairs (G, H) whose AG codes form linear complementary pairs.

Every builder validates its preconditions, builds both codes, and re-checks
the claims that exact linear algebra can decide: dimensions, the direct sum,
non-speciality of gcd(G, H) and of lmd(G, H) - D, and diagonal equivalence
of C(D, H)^perp with C(D, G).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..codes import LcpCertificate, LinearCode, ag_code, diag_equiv, dual, lcp_check
from ..curve import INFINITY, KummerCurve
from ..divisor import Divisor, ell, gcd_lmd
from ..semigroup import InfeasibleError, SemigroupProfile, profile

log = logging.getLogger(__name__)

__all__ = [
    "CertificateError",
    "VARIANTS",
    "LcpResult",
    "complete_fibers",
    "lcp_divisors",
    "lcp_parameters",
    "build_lcp",
    "build_w0_a",
    "build_w0_b",
    "build_v0",
    "build_r44",
]

VARIANTS = ("w0_a", "w0_b", "v0", "r44_a", "r44_b")


class CertificateError(RuntimeError):
    """A verified claim failed: this signals a bug, never a user error."""


def complete_fibers(curve: KummerCurve):
    """(X, Y) of all places over non-branch x-values that split completely."""
    X, Y = curve.split_places()
    if X.size == 0:
        return X, Y
    xs, counts = np.unique(X, return_counts=True)
    full = xs[counts == curve.m]
    keep = np.isin(X, full)
    return X[keep], Y[keep]


def _alpha(curve, i):
    return Divisor.point(curve.Q(i))


def _beta(curve, j):
    return Divisor.point(curve.Qp(j))


def _gamma_fibers(curve):
    out = Divisor()
    for x in curve.gammas:
        out = out + Divisor({p: 1 for p in curve.fiber_places(x)})
    return out


def _weighted_alpha(curve, prof: SemigroupProfile, weight):
    """sum_t weight(t) * sum_{l <= s_t} Q_{l + s'_t}."""
    out = {}
    for t in range(1, curve.m):
        for l in range(1, prof.s_at(t) + 1):
            w = weight(t)
            if w:
                out[curve.Q(l + prof.prefix_at(t))] = w
    return Divisor(out)


def _require(cond, msg):
    if not cond:
        raise InfeasibleError(msg)


def _common_checks(curve: KummerCurve, prof: SemigroupProfile, extra_beta: bool):
    sig = curve.signature
    fl = sig.lambda0 // sig.m
    if not prof.feasible:
        raise InfeasibleError(f"infeasible: s_t < 0 at t={','.join(map(str, prof.negative_t))}")
    missing = sorted({lam for lam in sig.beta_lambdas if lam not in prof.V_F})
    _require(not missing, f"beta exponents {missing} are not in V_F = {list(prof.V_F)}")
    if extra_beta:
        _require(sig.v == fl + 1, f"needs v = floor(lambda0/m) + 1 = {fl + 1}, got v = {sig.v}")
    else:
        _require(sig.v <= fl, f"needs v <= floor(lambda0/m) = {fl}, got v = {sig.v}")


def lcp_divisors(curve: KummerCurve, variant: str, s: int, n: int):
    """(G, H) for the named variant with step s and length n (no range check)."""
    sig = curve.signature
    prof = profile(curve)
    m, u, v = sig.m, sig.u, sig.v
    lam0 = sig.lambda0
    fl = lam0 // m
    inf = Divisor.point(INFINITY)
    betas = sig.beta_lambdas
    if variant in ("w0_a", "w0_b"):
        _require(sig.w == 0, f"needs w = 0, got w = {sig.w}")
        _common_checks(curve, prof, extra_beta=False)
        _require(u >= 1, "needs at least one alpha point")
        A = _weighted_alpha(curve, prof, lambda t: t)
        H = _weighted_alpha(curve, prof, lambda t: s + m - 1 - t)
        for l in range(1, prof.s_at(m - 1) - v + 1):
            H = H + (s + m - 1) * _alpha(curve, u + v - fl - 1 + l)
        for l in range(1, v + 1):
            H = H + (betas[l - 1] * s + m - 1) * _beta(curve, l)
        Qu = _alpha(curve, u)
        if variant == "w0_a":
            G = A + (n - lam0 * s) * inf
            H = H + (s - 1) * Qu - inf
        else:
            G = A + s * Qu + (n - lam0 * s - 1) * inf
            H = H - Qu
        return G, H
    if variant == "v0":
        _require(sig.v == 0, f"needs v = 0, got v = {sig.v}")
        bad = [lam for lam in sig.gamma_lambdas if m % lam]
        _require(not bad, f"needs every gamma exponent to divide m, got {bad}")
        _require(lam0 % m == 1 % m, f"needs lambda0 = 1 mod m, got lambda0 = {lam0}")
        _common_checks(curve, prof, extra_beta=False)
        _require(sig.w <= fl, f"needs w <= floor(lambda0/m) = {fl}")
        A = _weighted_alpha(curve, prof, lambda t: t)
        G = A + (n - lam0 * s - 1) * inf
        H = _weighted_alpha(curve, prof, lambda t: m - t)
        allq = Divisor({curve.Q(i): 1 for i in range(1, u + 1)}) + _gamma_fibers(curve)
        H = H + s * allq - inf
        return G, H
    if variant in ("r44_a", "r44_b"):
        _require(sig.w == 0, f"needs w = 0, got w = {sig.w}")
        _common_checks(curve, prof, extra_beta=True)
        A = _weighted_alpha(curve, prof, lambda t: t)
        H = _weighted_alpha(curve, prof, lambda t: s + m - 1 - t)
        for l in range(1, prof.s_at(m - 1) + 1):
            H = H + (betas[l - 1] * s + m - 1) * _beta(curve, l)
        Qv = _beta(curve, v)
        lam_v = betas[v - 1]
        if variant == "r44_a":
            G = A + (n - lam0 * s) * inf
            H = H + (lam_v * s - 1) * Qv - inf
        else:
            G = A + lam_v * s * Qv + (n - lam0 * s - 1) * inf
            H = H - Qv
        return G, H
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class LcpParameters:
    n: int
    k1: int
    k2: int
    d1: int  # design lower bound for C(D, G)
    d2: int  # design lower bound for C(D, H)
    s_min: int
    s_max: int  # largest admissible s (inclusive)

    def to_json(self):
        return dict(self.__dict__)


def lcp_parameters(sig_or_curve, variant: str, n: int, s: int | None = None, s_min=None):
    """Theoretical parameters and admissible s-range of a variant at length n."""
    sig = getattr(sig_or_curve, "signature", sig_or_curve)
    g, m, lam0 = sig.genus, sig.m, sig.lambda0
    s_min = m if s_min is None else s_min
    if variant in ("w0_a", "r44_a"):
        s_max = (n - g + 1) // lam0  # lam0 * s < n - g + 2
        k1 = lambda s: n - lam0 * s + 1
        k2 = lambda s: lam0 * s - 1
        d1 = lambda s: lam0 * s - g
        d2 = lambda s: n - lam0 * s - g + 2
    elif variant in ("w0_b", "r44_b"):
        # the extra point Q_u (weight 1) or Q'_v (weight lambda_v) carries s
        shift = sig.beta_lambdas[sig.v - 1] if variant == "r44_b" else 1
        rate = lam0 - shift
        s_max = (n - g) // rate if rate > 0 else 0  # rate * s < n - g + 1
        k1 = lambda s: n - rate * s
        k2 = lambda s: rate * s
        d1 = lambda s: rate * s - g + 1
        d2 = lambda s: n - rate * s - g + 1
    elif variant == "v0":
        s_max = (n - g) // lam0  # lam0 * s < n - g + 1
        k1 = lambda s: n - lam0 * s
        k2 = lambda s: lam0 * s
        d1 = lambda s: lam0 * s - g + 1
        d2 = lambda s: n - lam0 * s - g + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if s is None:
        return s_min, s_max
    return LcpParameters(n, k1(s), k2(s), d1(s), d2(s), s_min, s_max)


@dataclass
class LcpResult:
    curve: KummerCurve
    variant: str
    s: int
    D: tuple  # (X, Y)
    G: Divisor
    H: Divisor
    code_g: LinearCode
    code_h: LinearCode
    certificate: LcpCertificate
    expected: LcpParameters
    witness: np.ndarray | None = None
    checks: dict = dc_field(default_factory=dict)

    @property
    def n(self):
        return int(self.D[0].size)

    @property
    def dims(self):
        return self.code_g.k, self.code_h.k

    def summary(self):
        F = self.curve.field
        return {
            "variant": self.variant,
            "s": self.s,
            "n": self.n,
            "k1": self.code_g.k,
            "k2": self.code_h.k,
            "design_d1": self.expected.d1,
            "design_d2": self.expected.d2,
            "G": self.G.to_json(F),
            "H": self.H.to_json(F),
            "certificate": self.certificate.to_json(),
            "dual_equivalent": self.witness is not None,
            "checks": self.checks,
        }


def _fiber_reduction(curve, X):
    """True when the evaluation set is a union of complete x-fibers, so that
    D = (h) + n Q_inf for h the product of (x - a) over those fibers."""
    xs, counts = np.unique(X, return_counts=True)
    return bool(np.all(counts == curve.m))


def verify_pair(curve, G, H, X, code_g, code_h, expected, check_dual=True):
    """Run every exact check on a built pair; returns (certificate, witness, checks)."""
    g = curve.genus
    n = int(X.size)
    cert = lcp_check(code_g, code_h)
    checks = {
        "dims": [code_g.k, code_h.k] == [expected.k1, expected.k2],
        "lcp": cert.verdict,
    }
    lo, hi = gcd_lmd(G, H)
    checks["gcd_degree"] = lo.degree == g - 1
    checks["gcd_nonspecial"] = ell(curve, lo) == 0
    if _fiber_reduction(curve, X):
        reduced = hi - n * Divisor.point(INFINITY)
        checks["lmd_minus_D_nonspecial"] = reduced.degree == g - 1 and ell(curve, reduced) == 0
    witness = None
    if check_dual:
        witness = diag_equiv(dual(code_h), code_g)
        checks["dual_equivalent"] = witness is not None
    return cert, witness, checks


def build_lcp(curve: KummerCurve, variant: str, s: int, D=None, s_min=None, check_dual=True,
              strict=True) -> LcpResult:
    """Build and verify the pair for ``variant`` at step ``s``.

    D defaults to all places over completely split non-branch x-values.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    X, Y = complete_fibers(curve) if D is None else D
    n = int(X.size)
    lo, hi = lcp_parameters(curve, variant, n, s_min=s_min)
    if not lo <= s <= hi:
        raise InfeasibleError(f"s = {s} outside the admissible range [{lo}, {hi}] for n = {n}")
    G, H = lcp_divisors(curve, variant, s, n)
    if G[INFINITY] < 0:
        # gcd(G, H) then drops below degree g - 1 and the pair can fail to be complementary
        raise InfeasibleError(
            f"s = {s} gives G a negative coefficient {G[INFINITY]} at infinity "
            f"(needs lambda0 * s <= n - 1 = {n - 1})"
        )
    expected = lcp_parameters(curve, variant, n, s, s_min=s_min)
    code_g = ag_code(curve, (X, Y), G)
    code_h = ag_code(curve, (X, Y), H)
    code_g.provenance["dual_design_distance"] = expected.d2
    cert, witness, checks = verify_pair(curve, G, H, X, code_g, code_h, expected, check_dual)
    res = LcpResult(curve, variant, s, (X, Y), G, H, code_g, code_h, cert, expected, witness, checks)
    failed = [k for k, ok in checks.items() if not ok]
    if failed and strict:
        raise CertificateError(f"{variant} s={s}: failed checks {failed}")
    return res


def build_w0_a(curve, s, D=None, **kw):
    return build_lcp(curve, "w0_a", s, D, **kw)


def build_w0_b(curve, s, D=None, **kw):
    return build_lcp(curve, "w0_b", s, D, **kw)


def build_v0(curve, s, D=None, **kw):
    return build_lcp(curve, "v0", s, D, **kw)


def build_r44(curve, s, D=None, variant="r44_a", **kw):
    if variant not in ("r44_a", "r44_b"):
        raise ValueError("variant must be r44_a or r44_b")
    return build_lcp(curve, variant, s, D, **kw)
