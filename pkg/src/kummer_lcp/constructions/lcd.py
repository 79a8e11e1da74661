"""LCD codes on y^2 = x^q + x over GF(q^2) with q = 2g + 1.

D is the zero divisor of y^t - 1.  For both choices of G the dual code is
C(D, H) for an explicit H, and (C(D, G), C(D, H)) is an LCP, so C(D, G)
meets its dual trivially.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..codes import LcpCertificate, LinearCode, ag_code, dual, lcd_check, lcp_check
from ..curve import INFINITY, CurveError, KummerCurve
from ..divisor import Divisor
from ..semigroup import InfeasibleError
from .families import hyperelliptic_curve
from .lcp import CertificateError

__all__ = ["LcdResult", "lcd_divisors", "lcd_evaluation_set", "build_lcd_hyp"]


@dataclass
class LcdResult:
    curve: KummerCurve
    t: int
    variant: int
    D: tuple
    G: Divisor
    H: Divisor
    code: LinearCode
    dual_code: LinearCode
    lcd: bool
    dual_matches: bool
    certificate: LcpCertificate
    design_distance: int

    @property
    def n(self):
        return self.code.n

    @property
    def k(self):
        return self.code.k

    def summary(self):
        F = self.curve.field
        return {
            "variant": self.variant,
            "t": self.t,
            "n": self.n,
            "k": self.k,
            "design_distance": self.design_distance,
            "lcd": self.lcd,
            "dual_is_C_L(D,H)": self.dual_matches,
            "G": self.G.to_json(F),
            "H": self.H.to_json(F),
            "certificate": self.certificate.to_json(),
        }


def lcd_evaluation_set(curve: KummerCurve, t: int):
    """(X, Y) of the split places with y^t = 1."""
    X, Y = curve.split_places()
    tab = curve.field.require_tables()
    keep = tab.pow(Y, t) == 1
    return X[keep], Y[keep]


def lcd_divisors(curve: KummerCurve, t: int, variant: int):
    g = curve.genus
    Q = [None] + [curve.Q(i) for i in range(1, 2 * g + 2)]
    inf = INFINITY
    if variant == 1:
        G = {**{Q[i]: 1 for i in range(1, g + 1)}, inf: 4 * g + 2}
        H = {
            **{Q[i]: t - 2 for i in range(1, g + 1)},
            **{Q[i]: t - 1 for i in range(g + 1, 2 * g + 2)},
            inf: -3,
        }
    elif variant == 2:
        G = {**{Q[i]: 1 for i in range(1, g + 1)}, Q[2 * g + 1]: t - 2, inf: 4 * g + 1}
        H = {
            **{Q[i]: t - 2 for i in range(1, g + 1)},
            **{Q[i]: t - 1 for i in range(g + 1, 2 * g + 1)},
            Q[2 * g + 1]: 1,
            inf: -2,
        }
    else:
        raise ValueError(f"variant must be 1 or 2, got {variant!r}")
    return Divisor(G), Divisor(H)


def build_lcd_hyp(q_or_curve, t: int, variant: int = 1, strict=True) -> LcdResult:
    if isinstance(q_or_curve, KummerCurve):
        curve = q_or_curve
        g = curve.genus
        if curve.m != 2 or len(curve.branch) != 2 * g + 1:
            raise CurveError("needs the curve y^2 = x^q + x")
        q = 2 * g + 1
        if curve.q != q * q:
            raise CurveError(f"needs field order (2g+1)^2 = {q * q}, got {curve.q}")
    else:
        q = int(q_or_curve)
        if q % 2 == 0 or q < 3:
            raise CurveError(f"q must be an odd prime power >= 3, got {q}")
        curve = hyperelliptic_curve(q, (q - 1) // 2)
        g = curve.genus
    if t < 4 or (4 * g) % t:
        raise InfeasibleError(f"needs t >= 4 and t | 4g = {4 * g}, got t = {t}")
    if not curve.is_maximal():
        raise InfeasibleError("the curve is not maximal")
    X, Y = lcd_evaluation_set(curve, t)
    n = int(X.size)
    if n != t * (2 * g + 1):
        raise CertificateError(f"|D| = {n} != t(2g+1) = {t * (2 * g + 1)}")
    G, H = lcd_divisors(curve, t, variant)
    code = ag_code(curve, (X, Y), G)
    code_h = ag_code(curve, (X, Y), H)
    cert = lcp_check(code, code_h)
    lcd = lcd_check(code)
    matches = dual(code) == code_h
    if variant == 1:
        k_exp, d_exp = 4 * g + 3, n - 5 * g - 2
    else:
        k_exp, d_exp = 4 * g + t, 2 * t * g - 5 * g + 1
    res = LcdResult(curve, t, variant, (X, Y), G, H, code, code_h, lcd, matches, cert, d_exp)
    if strict and not (lcd and matches and cert.verdict and code.k == k_exp):
        raise CertificateError(
            f"LCD build t={t} variant {variant}: k={code.k} (want {k_exp}), lcd={lcd}, "
            f"dual match={matches}, lcp={cert.verdict}"
        )
    if code.design_distance != d_exp:
        raise CertificateError(f"design distance {code.design_distance} != {d_exp}")  # pragma: no cover
    return res
