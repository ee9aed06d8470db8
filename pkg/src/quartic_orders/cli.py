"""Command-line front end.

Subcommands: field-info, order-invariants, verify-correspondence, census,
baseline-quadratic.  Errors exit nonzero with one line ``error: CODE: reason``
on stderr.  Reals are printed as ``value ± radius``.
"""

import argparse
import csv
import io
import math
import os
import sys
import time

import numpy as np
from mpmath import iv
from sympy import isprime

from . import geodesic as G
from .census import baseline
from .census.core import build_census, cached_fields, census_csv, comparison_report, reports_json
from .exactmath import balls
from .exactmath import poly as P
from .numfield import ReducibleError, make_field, quadratic_subfields
from .orders import class_number, maximal_order, suborders_maximal_at_S
from .splitting import in_C_of_S, make_brauer_spec, splitting_data
from .unitsreg import RankError, unit_data

DEFAULTS = {
    "S": "2,3",
    "discBound": 300,
    "indexBound": 1,
    "regulatorCap": None,
    "x": None,
    "precision": 256,
    "seed": 0,
    "cacheDir": ".quartic_cache",
    "workers": 1,
    "outDir": ".",
    "regulatorConvention": "paper-b",
}

# flag dest -> config key
FLAG_KEYS = {
    "S": "S", "disc_bound": "discBound", "index_bound": "indexBound", "regulator_cap": "regulatorCap",
    "x": "x", "precision": "precision", "seed": "seed", "cache_dir": "cacheDir", "workers": "workers",
    "out_dir": "outDir", "regulator_convention": "regulatorConvention",
}

BASELINE_GUARD = 200000


class CliError(Exception):
    def __init__(self, code, message, status=1):
        super().__init__(message)
        self.code = code
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("E_USAGE", message.replace("\n", " "), status=2)


# -- config -----------------------------------------------------------------------------


def read_config_file(path):
    """key=value lines; '#' starts a comment."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError("E_IO", f"cannot read config {path}: {exc.strerror}")
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError("E_CONFIG", f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in DEFAULTS:
            raise CliError("E_CONFIG", f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _as_int(key, value, minimum=None):
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise CliError("E_CONFIG", f"{key} must be an integer, got {value!r}")
    if minimum is not None and v < minimum:
        raise CliError("E_CONFIG", f"{key} must be >= {minimum}")
    return v


def _as_float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise CliError("E_CONFIG", f"{key} must be a number, got {value!r}")


def parse_primes(text):
    try:
        S = sorted({int(t) for t in str(text).replace(" ", "").split(",") if t})
    except ValueError:
        raise CliError("E_CONFIG", f"cannot parse prime list {text!r}")
    for p in S:
        if not isprime(p):
            raise CliError("E_NOT_PRIME", f"{p} is not prime")
    return S


def resolve_config(args):
    """Defaults, then the config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(read_config_file(args.config))
    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            cfg[key] = value
    cfg["S"] = parse_primes(cfg["S"])
    cfg["discBound"] = _as_int("discBound", cfg["discBound"], 0)
    cfg["indexBound"] = _as_int("indexBound", cfg["indexBound"], 1)
    cfg["precision"] = _as_int("precision", cfg["precision"], 53)
    cfg["seed"] = _as_int("seed", cfg["seed"], 0)
    if cfg["seed"] >= 2 ** 64:
        raise CliError("E_CONFIG", "seed must fit in 64 bits")
    cfg["workers"] = _as_int("workers", cfg["workers"], 1)
    if cfg["regulatorCap"] is not None:
        cfg["regulatorCap"] = _as_float("regulatorCap", cfg["regulatorCap"])
    if cfg["x"] is not None:
        cfg["x"] = [_as_float("x", t) for t in str(cfg["x"]).split(",") if t.strip()]
    if cfg["regulatorConvention"] not in ("paper-a", "paper-b"):
        raise CliError("E_CONFIG", "regulatorConvention must be paper-a or paper-b")
    # precision acts as a floor on top of the library's working precision
    iv.prec = max(iv.prec, cfg["precision"])
    return cfg


def require_even_S(S):
    try:
        make_brauer_spec(S)
    except ValueError as exc:
        raise CliError("E_ODD_S", f"S={','.join(map(str, S))}: {exc} (the quaternion-type algebra "
                       "needs an even number of ramified primes)", status=2)


def load_field(text):
    try:
        f = P.from_string(text)
    except Exception:
        raise CliError("E_PARSE", f"cannot parse polynomial {text!r} (constant term first)")
    if P.degree(f) < 1:
        raise CliError("E_PARSE", f"{text!r} is constant")
    try:
        return make_field(f)
    except ReducibleError as exc:
        raise CliError("E_REDUCIBLE", f"{P.pretty(f)} is reducible: {exc}")


def _out(lines):
    sys.stdout.write("\n".join(lines) + "\n")


def _show(x):
    return balls.show(x, 15)


# -- field-info -------------------------------------------------------------------------


def cmd_field_info(cfg, poly):
    F = load_field(poly)
    Om = maximal_order(F)
    lines = [f"polynomial: {P.pretty(F.poly)}",
             f"degree: {F.degree}",
             f"signature: {F.signature}",
             f"totally complex: {'yes' if F.is_totally_complex else 'no'}",
             f"polynomial discriminant: {F.poly_disc}",
             f"field discriminant: {Om.discriminant}",
             f"index of Z[a]: {math.isqrt(F.poly_disc // Om.discriminant)}"]
    if F.degree == 4:
        subs = quadratic_subfields(F)
        if not subs:
            lines.append("quadratic subfields: none")
        for g, real in subs:
            lines.append(f"quadratic subfield: {P.pretty(g)} ({'real' if real else 'imaginary'})")
        lines.append(f"real quadratic subfield: {'yes' if any(r for _, r in subs) else 'no'}")
    lines.append("maximal order basis (coordinates in 1, a, a^2, ...):")
    for b in Om.basis:
        lines.append("  " + " ".join(str(c) for c in b))
    for p in cfg["S"]:
        sd = splitting_data(Om, p)
        kind = "non-decomposed" if sd.non_decomposed else "decomposed"
        lines.append(f"splitting {sd.fingerprint()} {kind}")
    _out(lines)


# -- order-invariants -------------------------------------------------------------------


def _orders_for(F, cfg):
    Om = maximal_order(F)
    return suborders_maximal_at_S(Om, cfg["S"], cfg["indexBound"])


def _lambda(F, S):
    Om = maximal_order(F)
    out = 1
    for p in S:
        sd = splitting_data(Om, p)
        if not sd.non_decomposed:
            return None, p
        out *= sd.inertia_degree
    return out, None


def cmd_order_invariants(cfg, poly, invertible_only=False):
    F = load_field(poly)
    lam, bad = _lambda(F, cfg["S"]) if cfg["S"] else (None, None)
    lines = [f"field: {P.pretty(F.poly)}  disc {maximal_order(F).discriminant}",
             f"S: {','.join(map(str, cfg['S']))}  lambda_S: {lam if lam is not None else f'undefined ({bad} decomposes)'}",
             f"regulator convention: {cfg['regulatorConvention']}"]
    for O in _orders_for(F, cfg):
        try:
            data = unit_data(O, cfg["regulatorConvention"])
        except RankError as exc:
            raise CliError("E_RANK", str(exc))
        h = class_number(O, invertible_only=invertible_only)
        lines.append(f"order index {O.index}: disc {O.discriminant}")
        lines.append(f"  h{' (invertible)' if invertible_only else ''}: {h}")
        lines.append(f"  fundamental unit: {data.fundamental}")
        lines.append(f"  R: {_show(data.regulator)}")
        lines.append(f"  mu: {data.mu}  kappa: {data.kappa}")
        if data.nu is not None:
            lines.append(f"  nu: {_show(data.nu)}")
    _out(lines)


# -- verify-correspondence --------------------------------------------------------------


def _paper_b_regulator(data):
    if data.convention == "paper-b":
        return data.regulator
    return 2 * data.regulator


def cmd_verify_correspondence(cfg, poly):
    F = load_field(poly)
    S = cfg["S"]
    require_even_S(S)
    if not F.is_totally_complex or F.degree != 4:
        raise CliError("E_NOT_IN_C", f"{P.pretty(F.poly)} is not a totally complex quartic field")
    lam, bad = _lambda(F, S)
    if bad is not None:
        raise CliError("E_DECOMPOSED", f"prime {bad} decomposes in {P.pretty(F.poly)}")
    assert in_C_of_S(F, S)
    real_sub = any(r for _, r in quadratic_subfields(F))
    lines = [f"field: {P.pretty(F.poly)}  disc {maximal_order(F).discriminant}",
             f"S: {','.join(map(str, S))}  lambda_S: {lam}",
             f"in C(S): yes  in C^c(S): {'no' if real_sub else 'yes'}"]
    all_ok = True
    for O in _orders_for(F, cfg):
        data = unit_data(O, cfg["regulatorConvention"])
        gd = G.geodesic_data(O, data)
        R = _paper_b_regulator(data)
        h = class_number(O)
        rel, norm_ok = G.norm_matches_regulator(gd, R)
        _, _, residual = G.conjugate_into_AB(gd.gamma)
        neat_ok = gd.weakly_neat == (not real_sub)
        ka = G.ka_condition(gd)
        ka_ok = G.check_ka_implication(data.kappa, gd)
        mult = G.theta_multiplicity(h, lam, data.mu, data.kappa)
        with balls.ivprec():
            e4r = iv.exp(4 * R)
        lines += [f"order index {O.index}: disc {O.discriminant}",
                  f"  gamma: {gd.gamma}",
                  f"  a: {_show(gd.a)}",
                  f"  theta: {_show(gd.theta)}",
                  f"  phi: {_show(gd.phi)}",
                  f"  l_gamma: {_show(gd.length)}",
                  f"  N(gamma): {_show(gd.norm)}",
                  f"  e^(4R): {_show(e4r)}",
                  f"  conjugation residual: {residual:.2e}",
                  f"  class: {'regular' if gd.regular else 'nonregular'}",
                  f"  N(gamma) = e^(4R): {'pass' if norm_ok else 'FAIL'} (relative {rel:.2e})",
                  f"  weakly neat: {'yes' if gd.weakly_neat else 'no'}; "
                  f"matches no real quadratic subfield: {'pass' if neat_ok else 'FAIL'}",
                  f"  kappa: {data.kappa}  angle condition: {'yes' if ka else 'no'}  "
                  f"kappa>1 implication: {'pass' if ka_ok else 'FAIL'}",
                  f"  h: {h}  mu: {data.mu}  multiplicity 4 h lambda mu / kappa: {mult}"]
        all_ok = all_ok and norm_ok and neat_ok and ka_ok
    lines.append("all identities: " + ("pass" if all_ok else "FAIL"))
    _out(lines)
    if not all_ok:
        raise CliError("E_IDENTITY", "a correspondence identity failed")


# -- census -----------------------------------------------------------------------------


def cmd_census(cfg):
    S = cfg["S"]
    require_even_S(S)
    if cfg["discBound"] < 1:
        raise CliError("E_CONFIG", "discBound must be positive", status=2)
    try:
        fields = cached_fields(cfg["discBound"], cfg["cacheDir"], cfg["workers"])
    except OSError as exc:
        raise CliError("E_IO", f"cache {cfg['cacheDir']}: {exc.strerror}")
    rows = build_census(S, cfg["discBound"], cfg["indexBound"], cfg["regulatorCap"], cfg["workers"],
                        fields=fields, convention=cfg["regulatorConvention"])
    xs = cfg["x"] or [1.5]
    reports = [comparison_report(x, rows, cfg["discBound"], cfg["indexBound"]) for x in xs]
    for r in reports:
        r["S"] = S
        r["seed"] = cfg["seed"]
        r["regulatorConvention"] = cfg["regulatorConvention"]
    tag = f"census_S{'-'.join(map(str, S))}_d{cfg['discBound']}_i{cfg['indexBound']}"
    csv_path = os.path.join(cfg["outDir"], tag + ".csv")
    json_path = os.path.join(cfg["outDir"], tag + ".json")
    try:
        os.makedirs(cfg["outDir"], exist_ok=True)
        with open(csv_path, "w") as fh:
            fh.write(census_csv(rows))
        with open(json_path, "w") as fh:
            fh.write(reports_json(reports))
    except OSError as exc:
        raise CliError("E_IO", f"{exc.filename}: {exc.strerror}")
    lines = [f"census: {len({r.poly for r in rows})} fields, {len(rows)} orders",
             f"wrote {csv_path}", f"wrote {json_path}"]
    for r in reports:
        lines.append(f"x={r['x']}: pi_S >= {r['pi_S']}  pi~_S >= {r['pi_tilde_S']}  "
                     f"e^4x/8x = {r['e4x_over_8x']}  e^4x/2x = {r['e4x_over_2x']}  L(4x)/2 = {r['half_L4x']}")
    lines.append("note: " + reports[0]["coverage"]["note"])
    _out(lines)


# -- baseline-quadratic -----------------------------------------------------------------


def baseline_grid(x_max, points=10):
    """Rows (x, gauss_siegel, main_term, ratio, s, sarnak, L(2s), ratio) with s = log(x)/2.

    The Sarnak sum at s only involves discriminants up to about e^(2s) = x,
    so both columns are bounded by the same discriminant range."""
    if x_max < 5:
        return []
    xs = sorted({max(5, int(round(x_max * k / points))) for k in range(1, points + 1)})
    ds = baseline.discriminants_up_to(x_max)
    h, hp, R, N = baseline.quadratic_table(ds)
    terms = hp * np.where(N == 1, R, 2 * R)
    cum = np.cumsum(terms)
    rows = []
    for x in xs:
        k = int(np.searchsorted(ds, x, side="right"))
        gs = float(cum[k - 1]) if k else 0.0
        main = baseline.gauss_main_term(x)
        s = math.log(x) / 2
        sar = baseline.sarnak_sum(s)
        L2s = baseline.L_function(2 * s) if 2 * s >= 1 else 0.0
        rows.append((x, gs, main, gs / main, s, sar, L2s, sar / L2s if L2s else float("nan")))
    return rows


def cmd_baseline_quadratic(cfg, allow_large=False):
    xs = cfg["x"]
    if not xs:
        raise CliError("E_USAGE", "baseline-quadratic needs --x XMAX", status=2)
    x_max = xs[-1]
    if x_max > BASELINE_GUARD and not allow_large:
        raise CliError("E_RESOURCE", f"x={x_max:g} exceeds the guard {BASELINE_GUARD}; "
                       "rerun with --allow-large to proceed", status=3)
    start = time.time()
    rows = baseline_grid(x_max)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "gauss_siegel", "main_term", "gs_ratio", "sarnak_x", "sarnak", "L_2x", "sarnak_ratio"])
    for x, gs, main, r1, s, sar, L2s, r2 in rows:
        w.writerow([x, f"{gs:.10g}", f"{main:.10g}", f"{r1:.6f}", f"{s:.6f}", sar, f"{L2s:.10g}", f"{r2:.6f}"])
    sys.stdout.write(buf.getvalue())
    sys.stderr.write(f"baseline grid computed in {time.time() - start:.1f}s\n")


# -- entry point ------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (flags take precedence)")
    common.add_argument("--S", dest="S", help="comma-separated primes")
    common.add_argument("--disc-bound", type=int)
    common.add_argument("--index-bound", type=int)
    common.add_argument("--regulator-cap", type=float)
    common.add_argument("--x", help="value or comma-separated grid")
    common.add_argument("--precision", type=int, help="interval precision floor in bits")
    common.add_argument("--seed", type=int)
    common.add_argument("--cache-dir")
    common.add_argument("--out-dir")
    common.add_argument("--workers", type=int)
    common.add_argument("--regulator-convention", choices=["paper-a", "paper-b"],
                        help="paper-a: |log|sigma(eps)||; paper-b (default): twice that, for quartic orders")
    common.add_argument("--invertible-only", action="store_true",
                        help="count only classes of invertible modules")

    parser = _Parser(prog="quartic-orders", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("field-info", parents=[common], help="signature, discriminant, subfields, splitting")
    p.add_argument("poly")
    p = sub.add_parser("order-invariants", parents=[common], help="h, R, mu, kappa, nu for orders of a field")
    p.add_argument("poly")
    p = sub.add_parser("verify-correspondence", parents=[common], help="unit to geodesic identities")
    p.add_argument("poly")
    sub.add_parser("census", parents=[common], help="census CSV and comparison JSON")
    p = sub.add_parser("baseline-quadratic", parents=[common], help="Gauss-Siegel and Sarnak sums")
    p.add_argument("--allow-large", action="store_true", help="override the resource guard")
    return parser


def run(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        raise CliError("E_USAGE", "a subcommand is required", status=2)
    cfg = resolve_config(args)
    if args.command == "field-info":
        cmd_field_info(cfg, args.poly)
    elif args.command == "order-invariants":
        cmd_order_invariants(cfg, args.poly, args.invertible_only)
    elif args.command == "verify-correspondence":
        cmd_verify_correspondence(cfg, args.poly)
    elif args.command == "census":
        cmd_census(cfg)
    elif args.command == "baseline-quadratic":
        cmd_baseline_quadratic(cfg, args.allow_large)


def main(argv=None):
    try:
        run(sys.argv[1:] if argv is None else argv)
    except CliError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return exc.status
    return 0


if __name__ == "__main__":
    sys.exit(main())
