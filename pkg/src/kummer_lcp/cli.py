"""Command-line front end.

    kummer-lcp profile --family ym --q 2 --r 3 --m 3 --d 1
    kummer-lcp places  --family elliptic --p 5
    kummer-lcp rrspace --curve curve.json --divisor "6*Q2+6*Q3-Qinf"
    kummer-lcp build   --family ym --q 2 --r 3 --m 3 --d 1 --variant w0_a --s 3 --out out/
    kummer-lcp verify  [--only NAME ...] [--budget N]

Exit status: 0 success, 1 a verified claim failed, 2 bad input or an unmet
precondition.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import config
from .codes import min_distance, random_codeword_weights, write_matrix
from .curve import INFINITY, CurveError, KummerCurve, curve_create, xm_signature, ym_signature
from .divisor import Divisor, ell, riemann_roch
from .gf import BudgetError, FieldError, field_create
from .semigroup import (
    InfeasibleError,
    build_nonspecial_g,
    build_nonspecial_g_minus_1,
    ceil_increment,
    floor_ceil_identities,
    profile,
)

log = logging.getLogger("kummer_lcp")

FAMILIES = ("xm", "ym", "hyperelliptic", "elliptic", "kawakita")
BUILD_VARIANTS = ("w0_a", "w0_b", "v0", "r44_a", "r44_b", "ell_mds", "lcd1", "lcd2", "w_neq0")


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# curve selection
# ---------------------------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"--family {args.family} needs --{' --'.join(missing)}")


def family_signature(args):
    """Field-free model data for the subcover families (None for others)."""
    if args.family == "xm":
        _need(args, "q", "m", "d")
        return xm_signature(args.q, args.m, args.d)
    if args.family == "ym":
        _need(args, "q", "r", "m", "d")
        return ym_signature(args.q, args.r, args.m, args.d)
    return None


def load_curve(args) -> KummerCurve:
    from .constructions import families

    if args.curve:
        try:
            data = json.loads(Path(args.curve).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read curve descriptor: {exc}") from exc
        return KummerCurve.from_json(data)
    if args.family is None:
        raise UsageError("give --family or --curve")
    if args.family in ("xm", "ym"):
        data = family_signature(args)
        prof = profile(data.signature)
        if not prof.feasible:
            raise InfeasibleError(f"infeasible: s_t < 0 at t={','.join(map(str, prof.negative_t))}")
        if data.field_order > config.TABLE_BUDGET:
            raise BudgetError(
                f"model field GF({data.field_p}^{data.field_k}) exceeds the table budget "
                f"{config.TABLE_BUDGET}"
            )
        if args.family == "xm":
            return families.xm_curve(args.q, args.m, args.d)
        return families.ym_curve(args.q, args.r, args.m, args.d)
    if args.family == "hyperelliptic":
        _need(args, "q", "g")
        return families.hyperelliptic_curve(args.q, args.g)
    if args.family == "elliptic":
        _need(args, "p")
        return families.elliptic_curve(args.p)
    if args.family == "kawakita":
        return families.kawakita_example()
    raise UsageError(f"unknown family {args.family!r}")


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*(Qinf|Qp\d+|Q\d+|R[0-9a-z.]+)\s*")


def parse_divisor(curve: KummerCurve, text: str) -> Divisor:
    """Terms like ``3*Q1``, ``-Qinf``, ``2*Qp1`` (beta places), ``R<x>`` (branch place over x)."""
    pos, out = 0, Divisor()
    text = text.strip()
    if not text:
        raise UsageError("empty divisor")
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if not mt or mt.end() == pos:
            raise UsageError(f"cannot parse divisor near {text[pos:]!r}")
        sign, num, name = mt.groups()
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        if name == "Qinf":
            place = INFINITY
        elif name.startswith("Qp"):
            place = curve.Qp(int(name[2:]))
        elif name.startswith("Q"):
            place = curve.Q(int(name[1:]))
        else:
            place = curve.place_over(curve.field.parse(name[1:]).code)
        out = out + Divisor({place: c})
        pos = mt.end()
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_profile(args):
    data = family_signature(args) if (args.family in ("xm", "ym") and not args.curve) else None
    if data is not None:
        sig = data.signature
        out = {
            "family": data.family,
            "lambda": data.lam,
            "dprime": data.dprime,
            "field": {"p": data.field_p, "k": data.field_k},
            "expected_places": data.expected_places,
            "expected_length": data.expected_length,
        }
    else:
        curve = load_curve(args)
        sig = curve.signature
        out = {"curve": curve.to_json()}
    prof = profile(sig)
    out["profile"] = prof.to_json()
    out["f"] = {str(k): list(v) for k, v in prof.f.items()}
    print(_dump(out))
    return 0


def cmd_places(args):
    curve = load_curve(args)
    F = curve.field
    places = curve.rational_places()
    out = {
        "curve": curve.to_json(),
        "genus": curve.genus,
        "count": len(places),
        "maximal": curve.is_maximal(),
        "places": [p.label(F) for p in places],
    }
    print(_dump(out))
    return 0


def cmd_rrspace(args):
    curve = load_curve(args)
    if not args.divisor:
        raise UsageError("rrspace needs --divisor")
    G = parse_divisor(curve, args.divisor)
    L = riemann_roch(curve, G)
    out = {"divisor": G.format(curve.field), "degree": G.degree, "genus": curve.genus}
    out.update(L.to_json())
    print(_dump(out))
    return 0


def _variant_build(curve, args, s):
    from .constructions import build_ell_mds, build_hyperelliptic, build_lcd_hyp, build_lcp, build_w_neq0

    v = args.variant
    if v == "ell_mds" or (args.family == "elliptic" and args.case is not None):
        if args.case is None:
            raise UsageError("elliptic MDS builds need --case")
        res = build_ell_mds(curve, s, args.case)
        return res.summary(), res.lcp.code_g, res.lcp.code_h, res.mds
    if v in ("lcd1", "lcd2"):
        if args.t is None:
            raise UsageError("LCD builds need --t")
        res = build_lcd_hyp(curve, args.t, 1 if v == "lcd1" else 2)
        return res.summary(), res.code, res.dual_code, res.lcd
    if v == "w_neq0" or (args.family == "kawakita" and v is None):
        res = build_w_neq0(curve, s)
    elif v is None:
        raise UsageError("build needs --variant")
    elif args.family in ("hyperelliptic", "elliptic"):
        res = build_hyperelliptic(curve, s, v)
    else:
        res = build_lcp(curve, v, s)
    return res.summary(), res.code_g, res.code_h, res.certificate.verdict


def _write_outputs(out_dir: Path, summary, c1, c2):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "code_G.txt").write_text(write_matrix(c1))
    (out_dir / "code_H.txt").write_text(write_matrix(c2))
    (out_dir / "summary.json").write_text(_dump(summary) + "\n")


def _s_values(args):
    if args.s_range:
        try:
            lo, hi = (int(v) for v in args.s_range.split(":"))
        except ValueError as exc:
            raise UsageError("--s-range takes LO:HI") from exc
        return list(range(lo, hi + 1))
    if args.variant in ("lcd1", "lcd2"):
        return [None]
    if args.s is None:
        raise UsageError("build needs --s (or --s-range)")
    return [args.s]


def cmd_build(args):
    curve = load_curve(args)
    svals = _s_values(args)
    curve.field.require_tables()  # build shared tables once, before any worker starts
    if args.workers > 1 and len(svals) > 1:
        # results are collected in s order, so output does not depend on scheduling
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(lambda s: _variant_build(curve, args, s), svals))
    else:
        results = [_variant_build(curve, args, s) for s in svals]
    status = 0
    for s, (summary, c1, c2, verdict) in zip(svals, results):
        name = f"{args.family or 'curve'}-{args.variant or summary.get('variant')}"
        if s is not None:
            name += f"-s{s}"
        print(f"{'PASS' if verdict else 'FAIL'} {name} [{c1.n},{c1.k}] / [{c2.n},{c2.k}]")
        if not verdict:
            status = 1
        if args.out:
            base = Path(args.out)
            target = base / f"s{s}" if len(svals) > 1 else base
            _write_outputs(target, summary, c1, c2)
        elif len(svals) == 1:
            print(_dump(summary))
    return status


# ---------------------------------------------------------------------------
# regression items
# ---------------------------------------------------------------------------

def _item_nonspecial_y7(ctx):
    F = field_create(5)
    c = curve_create(F, 7, 1, [(2, 1), (3, 1), (4, 1), (0, 6), (1, 6)])
    A = build_nonspecial_g(c)
    B = build_nonspecial_g(c, variant="beta_first")
    want_a = Divisor({c.Q(1): 6, c.Q(2): 6})
    want_b = Divisor({c.Qp(1): 6, c.Qp(2): 6})
    prof = profile(c)
    ok = (
        A == want_a and B == want_b and prof.V_F == (6,) and list(prof.S) == [3] * 6
        and ell(c, A) == 1 and ell(c, B) == 1 and A.degree == c.genus == 12
        and ell(c, build_nonspecial_g_minus_1(c, A)) == 0
    )
    return ok, f"A={A.format(F)} g={c.genus} V_F={list(prof.V_F)}"


def _item_nonspecial_y6(ctx):
    F = field_create(7)
    c = curve_create(F, 6, 1, [(2, 1), (3, 1), (4, 1), (5, 5), (6, 3)])
    prof = profile(c)
    A = build_nonspecial_g(c)
    want = Divisor({c.Q(1): 1, c.Q(2): 3, c.Q(3): 5})
    ok = (
        list(prof.S) == [4, 3, 3, 2, 2] and prof.V_F == (5,) and A == want
        and A.degree == c.genus == 9 and ell(c, A) == 1
        and ell(c, build_nonspecial_g_minus_1(c, A)) == 0
    )
    return ok, f"ell={list(prof.S)} V_F={list(prof.V_F)} A={A.format(F)}"


def _item_nonspecial_y4(ctx):
    F = field_create(5)
    c = curve_create(F, 4, 1, [(0, 1), (2, 1), (3, 1), (1, 2)])
    prof = profile(c)
    A = build_nonspecial_g(c)
    want = Divisor({c.Q(1): 1, c.Q(2): 3})
    ok = (
        list(prof.S) == [3, 2, 2] and A == want and A.degree == c.genus == 4
        and ell(c, A) == 1 and ell(c, build_nonspecial_g_minus_1(c, A, c.Q(3))) == 0
    )
    return ok, f"ell={list(prof.S)} A={A.format(F)}"


def _item_normalisations(ctx):
    xm = xm_signature(8, 19, 1)
    ym = ym_signature(2, 9, 19, 1)
    ok = xm.lam == 17 and xm.dprime == 17 and ym.dprime == 18
    return ok, f"xm(8,19,1): lambda={xm.lam} d'={xm.dprime}; ym(2,9,19,1): d'={ym.dprime}"


def _item_xm_infeasible(ctx):
    prof = profile(xm_signature(64, 37, 1).signature)
    return (not prof.feasible), f"s_t < 0 at t={prof.negative_t}"


def _item_ym_lcp(ctx):
    from .constructions import build_lcp, ym_curve

    c = ym_curve(2, 3, 3, 1)
    got = []
    for s in (3, 10, 21):
        a = build_lcp(c, "w0_a", s)
        b = build_lcp(c, "w0_b", s)
        got.append(
            a.dims == (109 - 5 * s, 5 * s - 1) and a.certificate.stacked_rank == 108
            and a.witness is not None and b.dims == (108 - 4 * s, 4 * s)
        )
    return all(got), "s=3,10,21 over GF(64), n=108"


def _item_kawakita(ctx):
    from .constructions import build_w_neq0, kawakita_example

    c = kawakita_example()
    N = c.count_rational_places()
    ok = N == 210
    for s in (4, 10, 40):
        r = build_w_neq0(c, s)
        ok = ok and r.dims == (204 - 5 * s, 5 * s) and r.certificate.stacked_rank == 204
    return ok, f"N={N} n=204 s=4,10,40"


def _item_elliptic(ctx):
    from .constructions import build_ell_mds, elliptic_curve

    c = elliptic_curve(5)
    a = build_ell_mds(c, 2, 3)
    b = build_ell_mds(c, 3, 4)
    ok = (
        a.lcp.dims == (11, 5) and b.lcp.dims == (7, 9) and a.mds and b.mds
        and a.mds_exhaustive and b.mds_exhaustive
        and a.lcp.certificate.verdict and b.lcp.certificate.verdict
    )
    return ok, "p=5: [16,11,6] and [16,7,10] MDS"


def _item_elliptic_distance(ctx):
    from .constructions import build_ell_mds, elliptic_curve

    r = build_ell_mds(elliptic_curve(5), 2, 3)
    d, exact = min_distance(r.lcp.code_h, ctx["budget"])
    if not exact:
        return True, f"bound-only d>={d}"
    return d == 12, f"d={d} (exact) for [16,5]"


def _lcd_item(variant):
    def run(ctx):
        from .constructions import build_lcd_hyp

        r = build_lcd_hyp(5, 8, variant, strict=False)
        w = random_codeword_weights(r.code, 1000, ctx["seed"])
        ok = r.lcd and r.dual_matches and r.k == (11 if variant == 1 else 16)
        ok = ok and bool(np.all(w >= r.design_distance))
        return ok, (
            f"[{r.n},{r.k}] design d={r.design_distance} lcd={r.lcd} "
            f"hull_dim={r.n - r.certificate.stacked_rank} min sampled weight={int(w.min())}"
        )

    return run


def _item_floor_ceil(ctx):
    rng = np.random.default_rng(ctx["seed"])
    bad = 0
    for a, b in rng.integers(1, 201, size=(1000, 2)):
        for lhs, rhs in floor_ceil_identities(int(a), int(b)).values():
            bad += lhs != rhs
    return bad == 0, f"1000 pairs, {bad} mismatches"


def _item_ceil_increment(ctx):
    rng = np.random.default_rng(ctx["seed"])
    bad = n = 0
    while n < 1000:
        m = int(rng.integers(3, 200))
        lam = int(rng.integers(1, m))
        if np.gcd(lam, m) != 1:
            continue
        k = int(rng.integers(1, m - 1))
        actual, predicted = ceil_increment(lam, m, k)
        bad += actual != predicted
        n += 1
    return bad == 0, f"1000 triples, {bad} mismatches"


ITEMS = {
    "nonspecial-y7-gf5": _item_nonspecial_y7,
    "nonspecial-y6-gf7": _item_nonspecial_y6,
    "nonspecial-y4-gf5": _item_nonspecial_y4,
    "subcover-normalisations": _item_normalisations,
    "xm-q64-infeasible": _item_xm_infeasible,
    "ym-gf64-lcp": _item_ym_lcp,
    "kawakita-gf121-lcp": _item_kawakita,
    "elliptic-p5-mds": _item_elliptic,
    "elliptic-p5-distance": _item_elliptic_distance,
    "lcd-gf25-k11": _lcd_item(1),
    "lcd-gf25-k16": _lcd_item(2),
    "floor-ceil-identities": _item_floor_ceil,
    "ceil-increments": _item_ceil_increment,
}


def cmd_verify(args):
    names = args.only or list(ITEMS)
    unknown = [n for n in names if n not in ITEMS]
    if unknown:
        raise UsageError(f"unknown item(s): {', '.join(unknown)}; known: {', '.join(ITEMS)}")
    ctx = {"budget": config.DISTANCE_BUDGET, "seed": args.seed}
    status = 0
    for name in names:
        try:
            ok, detail = ITEMS[name](ctx)
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}")
        if not ok:
            status = 1
    return status


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults (and optional 'budgets')")
    common.add_argument("--curve", help="JSON curve descriptor")
    common.add_argument("--family", choices=FAMILIES)
    for name in ("q", "m", "d", "r", "g", "p", "s", "t", "case"):
        common.add_argument(f"--{name}", type=int)
    common.add_argument("--variant", choices=BUILD_VARIANTS)
    common.add_argument("--s-range", dest="s_range", help="LO:HI sweep of s (inclusive)")
    common.add_argument("--budget", type=int, help="distance budget (codewords visited)")
    common.add_argument("--out", help="output directory")
    common.add_argument("--workers", type=int, default=1, help="parallel builds in sweep mode")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kummer-lcp", description="LCPs of AG codes over Kummer covers")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("profile", parents=[common], help="semigroup data of a curve")
    sub.add_parser("places", parents=[common], help="rational places of a curve")
    p = sub.add_parser("rrspace", parents=[common], help="basis of L(G)")
    p.add_argument("--divisor")
    sub.add_parser("build", parents=[common], help="build and verify a code pair")
    p = sub.add_parser("verify", parents=[common], help="regression items")
    p.add_argument("--only", nargs="+")
    return parser


COMMANDS = {
    "profile": cmd_profile,
    "places": cmd_places,
    "rrspace": cmd_rrspace,
    "build": cmd_build,
    "verify": cmd_verify,
}


def _apply_config(args, parser):
    if not args.config:
        return args
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    budgets = cfg.pop("budgets", {})
    try:
        config.update(**budgets)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    for key, value in cfg.items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) in (None, False):  # command-line flags win
            setattr(args, key, value)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    saved = config.snapshot()
    from .constructions import CertificateError

    try:
        args = _apply_config(args, parser)
        if args.budget is not None:
            config.update(distance_budget=args.budget)
        return COMMANDS[args.command](args)
    except CertificateError as exc:
        print(f"FAIL certificate {exc}", file=sys.stderr)
        return 1
    except (UsageError, InfeasibleError, CurveError, FieldError, BudgetError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        config.update(**saved)


if __name__ == "__main__":
    sys.exit(main())
