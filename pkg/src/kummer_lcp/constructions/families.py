"""Named curve families and the LCP builders specialised to them."""

from __future__ import annotations

import logging
import warnings

from ..curve import CurveError, KummerCurve, curve_create, normalize_xm, normalize_ym
from ..gf import FiniteField, field_create, monic_irreducibles, nth_roots
from ..semigroup import InfeasibleError
from .lcp import build_lcp, complete_fibers

log = logging.getLogger(__name__)

__all__ = [
    "xm_curve",
    "ym_curve",
    "hyperelliptic_curve",
    "elliptic_curve",
    "kawakita_curve",
    "kawakita_length",
    "kawakita_example",
    "build_hyperelliptic",
    "build_w_neq0",
]


def xm_curve(q: int, m: int, d: int) -> KummerCurve:
    return normalize_xm(q, m, d)[0]


def ym_curve(q: int, r: int, m: int, d: int) -> KummerCurve:
    return normalize_ym(q, r, m, d)[0]


def _odd_prime_power(q):
    from ..curve import _prime_power

    p, k = _prime_power(q)
    if p == 2:
        raise CurveError("needs odd characteristic")
    return p, k


def hyperelliptic_curve(q: int, g: int) -> KummerCurve:
    """y^2 = x^(2g+1) + x over GF(q^2); branch points sorted by code."""
    if g < 1:
        raise CurveError("genus must be at least 1")
    p, k = _odd_prime_power(q)
    if q % (4 * g) not in ((4 * g - 1), (2 * g + 1) % (4 * g)):
        warnings.warn(f"q = {q} is not -1 or 2g+1 mod 4g; the curve need not be maximal")
    F = field_create(p, 2 * k)
    roots = nth_roots(F(-1), 2 * g)
    if len(roots) != 2 * g:
        raise CurveError(f"x^{2 * g} + 1 does not split over {F!r}")
    xs = sorted([0] + [z.code for z in roots])
    return curve_create(F, 2, 1, [(x, 1) for x in xs])


def elliptic_curve(p: int) -> KummerCurve:
    """y^2 = x^3 + 1 over GF(p^2) for a prime p = 2 mod 3."""
    if p % 3 != 2 or p == 2:
        raise CurveError(f"needs an odd prime p = 2 mod 3, got {p}")
    F = field_create(p, 2)
    roots = nth_roots(F(-1), 3)
    return curve_create(F, 2, 1, [(z.code, 1) for z in roots])


def kawakita_curve(field: FiniteField, m: int, mprime: int, alphas) -> KummerCurve:
    """y^m = x (x-1)^m' prod (x - alpha_i) with m - m' distinct alphas outside {0, 1}."""
    alphas = [a.code if hasattr(a, "code") else int(a) for a in alphas]
    if (field.order - 1) % m:
        raise CurveError(f"m = {m} does not divide q - 1 = {field.order - 1}")
    if m % mprime:
        raise CurveError(f"m' = {mprime} does not divide m = {m}")
    if len(alphas) != m - mprime:
        raise CurveError(f"needs m - m' = {m - mprime} alphas, got {len(alphas)}")
    if len(set(alphas)) != len(alphas) or {0, 1} & set(alphas):
        raise CurveError("alphas must be distinct and outside {0, 1}")
    branch = [(0, 1)] + [(a, 1) for a in alphas] + [(1, mprime)]
    return curve_create(field, m, 1, branch)


def _f_at_one(curve: KummerCurve):
    F = curve.field
    val = 1
    for x in curve.alphas:
        if x == 0:
            continue
        val = F.mul_c(val, F.sub_c(1, x))
    return val


def kawakita_length(curve: KummerCurve, N: int | None = None):
    """(n, f(1) is an m'-th power) derived from the place count N."""
    m = curve.m
    mprime = curve.lam(1)
    N = curve.count_rational_places() if N is None else N
    is_power = bool(nth_roots(curve.field.element(_f_at_one(curve)), mprime))
    n = N - m - 2 if is_power else N - m + mprime - 2
    return n, is_power


def kawakita_example(N_target: int = 210):
    """The GF(121) instance y^4 = x (x-1)^2 (x-u-5)(x-10u-9).

    The field generator u depends on the modulus, so quadratic moduli are
    searched for one where f(1) = 1 and the curve has N_target places.
    """
    for mod in monic_irreducibles(11, 2):
        F = field_create(11, 2, mod)
        a1, a2 = F.encode([5, 1]), F.encode([9, 10])
        curve = kawakita_curve(F, 4, 2, [a1, a2])
        if _f_at_one(curve) != 1:
            continue
        if curve.count_rational_places() == N_target:
            return curve
    raise CurveError(f"no quadratic modulus gives N = {N_target}")  # pragma: no cover


def build_hyperelliptic(curve: KummerCurve, s: int, variant: str = "w0_a", **kw):
    """The three hyperelliptic pairs (m = 2, s >= 2) over the complete x-fibers."""
    if curve.m != 2 or any(lam != 1 for _, lam in curve.branch) or len(curve.branch) % 2 == 0:
        raise CurveError("needs y^2 = f(x) with f squarefree of odd degree")
    if variant not in ("w0_a", "w0_b", "v0"):
        raise ValueError("variant must be w0_a, w0_b or v0")
    D = complete_fibers(curve)
    g = curve.genus
    expected = curve.count_rational_places() - 2 * g - 2
    if expected != D[0].size:
        warnings.warn(f"split-place count {D[0].size} differs from N - 2g - 2 = {expected}")
    return build_lcp(curve, variant, s, D, s_min=2, **kw)


def build_w_neq0(curve: KummerCurve, s: int, **kw):
    """Pair on y^m = x (x-1)^m' f(x) through the v = 0 construction."""
    m = curve.m
    if curve.branch[0] != (0, 1) or curve.branch[-1][0] != 1:
        raise CurveError("branch list must be [(0, 1), alphas..., (1, m')]")
    mprime = curve.lam(1)
    if mprime == 1 or m % mprime:
        raise CurveError(f"needs m' | m with m' > 1, got m' = {mprime}")
    if (curve.q - 1) % m:
        raise CurveError(f"m = {m} does not divide q - 1")
    n, _ = kawakita_length(curve)
    D = complete_fibers(curve)
    if D[0].size != n:
        raise InfeasibleError(
            f"complete fibers give {D[0].size} places, the length formula gives {n}"
        )
    return build_lcp(curve, "v0", s, D, **kw)
