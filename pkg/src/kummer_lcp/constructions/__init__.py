"""LCP and LCD constructions over Kummer covers."""

from .elliptic import EllipticGroup, build_ell_mds, elliptic_group, subset_sum_mds
from .families import (
    build_hyperelliptic,
    build_w_neq0,
    elliptic_curve,
    hyperelliptic_curve,
    kawakita_curve,
    kawakita_example,
    kawakita_length,
    xm_curve,
    ym_curve,
)
from .lcd import build_lcd_hyp, lcd_divisors, lcd_evaluation_set
from .lcp import (
    VARIANTS,
    CertificateError,
    LcpResult,
    build_lcp,
    build_r44,
    build_v0,
    build_w0_a,
    build_w0_b,
    complete_fibers,
    lcp_divisors,
    lcp_parameters,
)

__all__ = [
    "VARIANTS",
    "CertificateError",
    "EllipticGroup",
    "LcpResult",
    "build_ell_mds",
    "build_hyperelliptic",
    "build_lcd_hyp",
    "build_lcp",
    "build_r44",
    "build_v0",
    "build_w0_a",
    "build_w0_b",
    "build_w_neq0",
    "complete_fibers",
    "elliptic_curve",
    "elliptic_group",
    "hyperelliptic_curve",
    "kawakita_curve",
    "kawakita_example",
    "kawakita_length",
    "lcd_divisors",
    "lcd_evaluation_set",
    "lcp_divisors",
    "lcp_parameters",
    "subset_sum_mds",
    "xm_curve",
    "ym_curve",
]
