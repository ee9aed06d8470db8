"""Census rows for orders in totally complex quartic fields and the counting sums.

A census is discriminant-truncated: it holds every order of index up to a
bound, maximal at the primes of S, in every totally complex quartic field of
|disc| up to a bound.  Sums over it are lower bounds for the counting
functions, which run over all fields; reports carry that coverage statement.
"""

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from mpmath import iv

from ..exactmath import balls
from ..exactmath import poly as P
from ..numfield import has_real_quadratic_subfield, make_field
from ..orders import class_number, maximal_order, suborders_maximal_at_S
from ..splitting import local_factors, make_brauer_spec
from ..unitsreg import unit_data
from .baseline import L_function
from .fields import enumerate_quartics

CSV_HEADER = ["poly", "disc", "index", "in_Cc", "h", "R", "mu", "kappa", "lambda", "nu", "split_fingerprints"]

COVERAGE_NOTE = ("lower bound: sums run only over the census (fields with |disc| <= discBound, "
                 "orders of index <= indexBound); regulator and discriminant are not monotonically "
                 "related, so orders outside the census can have R <= x")


@dataclass
class CensusRow:
    poly: tuple
    disc: int
    field_disc: int
    index: int
    in_C: bool
    in_Cc: bool
    h: int
    R: object
    mu: int
    kappa: int
    lam: int
    nu: object
    fingerprints: tuple
    out_of_window: bool = False
    order: object = field(default=None, repr=False, compare=False)
    units: object = field(default=None, repr=False, compare=False)

    # mpmath interval types do not pickle; ship exact endpoints between processes
    def __getstate__(self):
        state = dict(self.__dict__)
        state["order"] = state["units"] = None
        for key in ("R", "nu"):
            if state[key] is not None:
                state[key] = balls.endpoints(state[key])
        return state

    def __setstate__(self, state):
        for key in ("R", "nu"):
            if state[key] is not None:
                state[key] = balls.interval(*state[key])
        self.__dict__.update(state)

    def fingerprint_text(self):
        return ";".join(f"p={p}:" + "".join(f"({e},{f})" for e, f in pairs) for p, pairs in self.fingerprints)

    def csv_fields(self):
        return [P.to_string(self.poly), str(self.disc), str(self.index), str(int(self.in_Cc)), str(self.h),
                _real(self.R), str(self.mu), str(self.kappa), "" if self.lam is None else str(self.lam),
                _real(self.nu), self.fingerprint_text()]


def _real(x, digits=15):
    return f"{float(balls.mid(x)):.{digits}g}"


def order_rows(F, S, index_bound, regulator_cap=None, convention="paper-b"):
    """Census rows for all orders of F of index <= index_bound maximal at S."""
    Om = maximal_order(F)
    fps = tuple((p, tuple(local_factors(Om, p))) for p in sorted(S))
    decomposed = [p for p, pairs in fps if len(pairs) != 1]
    in_C = F.is_totally_complex and not decomposed
    in_Cc = in_C and not has_real_quadratic_subfield(F)
    lam = math.prod(pairs[0][1] for _, pairs in fps) if in_C else None
    rows = []
    for O in suborders_maximal_at_S(Om, S, index_bound):
        data = unit_data(O, convention)
        h = class_number(O)
        R = data.regulator
        out = regulator_cap is not None and balls.lower(R) > regulator_cap
        rows.append(CensusRow(poly=F.poly, disc=O.discriminant, field_disc=Om.discriminant, index=O.index,
                              in_C=in_C, in_Cc=in_Cc, h=h, R=R, mu=data.mu, kappa=data.kappa, lam=lam,
                              nu=data.nu, fingerprints=fps, out_of_window=out, order=O, units=data))
    return rows


def _rows_for_poly(args):
    poly, S, index_bound, regulator_cap, convention = args
    return order_rows(make_field(poly), S, index_bound, regulator_cap, convention)


def build_census(S, disc_bound, index_bound, regulator_cap=None, workers=1, fields=None, convention="paper-b"):
    """Rows for every order of every enumerated field, in a deterministic order."""
    make_brauer_spec(S)
    S = tuple(sorted(set(S)))
    if fields is None:
        fields = enumerate_quartics(disc_bound, workers=workers)
    jobs = [(F.poly, S, index_bound, regulator_cap, convention) for F in fields]
    if workers > 1 and len(jobs) > 1:
        # rows come back without their order and unit objects
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_rows_for_poly, jobs))
    else:
        parts = [order_rows(F, S, index_bound, regulator_cap, convention) for F in fields]
    rows = [row for part in parts for row in part]
    rows.sort(key=lambda r: (r.field_disc, r.poly, r.index, r.disc))
    return rows


def pi_S(x, rows):
    """Sum of lambda_S(O) h(O) over census orders in O^c(S) with R(O) <= x."""
    return sum(r.lam * r.h for r in rows if r.in_Cc and balls.upper(r.R) <= x)


def pi_tilde_S(x, rows):
    """Sum of nu(O) lambda_S(O) h(O) over the same orders, as a ball."""
    with balls.ivprec():
        total = iv.mpf(0)
        for r in rows:
            if r.in_Cc and balls.upper(r.R) <= x:
                total = total + r.nu * (r.lam * r.h)
        return total


def comparison_report(x, rows, disc_bound, index_bound):
    n_fields = len({r.poly for r in rows})
    return {
        "x": x,
        "pi_S": pi_S(x, rows),
        "pi_tilde_S": balls.show(pi_tilde_S(x, rows), 15),
        "e4x_over_8x": f"{math.exp(4 * x) / (8 * x):.15g}",
        "e4x_over_2x": f"{math.exp(4 * x) / (2 * x):.15g}",
        "half_L4x": f"{L_function(4 * x) / 2:.15g}" if 4 * x > 1 else "0",
        "coverage": {"discBound": disc_bound, "indexBound": index_bound, "fields": n_fields,
                     "orders": len(rows), "note": COVERAGE_NOTE},
    }


def census_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(r.csv_fields())
    return buf.getvalue()


def reports_json(reports):
    return json.dumps(reports, sort_keys=True, indent=2) + "\n"


# -- field-list cache ---------------------------------------------------------------

FIELD_CACHE_HEADER = "quartic fields v1"


def _cache_path(cache_dir, disc_bound):
    return os.path.join(cache_dir, f"fields_{disc_bound}.txt")


def write_field_cache(cache_dir, disc_bound, fields):
    os.makedirs(cache_dir, exist_ok=True)
    lines = [FIELD_CACHE_HEADER, f"discBound {disc_bound}"]
    lines += [f"{maximal_order(F).discriminant} {P.to_string(F.poly)}" for F in fields]
    path = _cache_path(cache_dir, disc_bound)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
    return path


def _read_field_cache(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != FIELD_CACHE_HEADER:
        raise ValueError(f"{path}: not a field cache")
    bound = int(lines[1].split()[1])
    entries = []
    for ln in lines[2:]:
        d, poly = ln.split()
        entries.append((int(d), P.from_string(poly)))
    return bound, entries


def cached_fields(disc_bound, cache_dir=None, workers=1):
    """enumerate_quartics(disc_bound), reusing any cached list with a bound at least as large."""
    if cache_dir and os.path.isdir(cache_dir):
        best = None
        for name in sorted(os.listdir(cache_dir)):
            if name.startswith("fields_") and name.endswith(".txt"):
                bound, entries = _read_field_cache(os.path.join(cache_dir, name))
                if bound >= disc_bound and (best is None or bound < best[0]):
                    best = (bound, entries)
        if best is not None:
            return [make_field(f) for d, f in best[1] if abs(d) <= disc_bound]
    fields = enumerate_quartics(disc_bound, workers=workers)
    if cache_dir:
        write_field_cache(cache_dir, disc_bound, fields)
    return fields
