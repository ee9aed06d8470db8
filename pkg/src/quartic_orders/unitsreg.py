"""Roots of unity, fundamental units, regulators and the unit invariants kappa, nu.

Unit rank one only: real quadratic orders and orders in totally complex
quartic fields.  Quartic fundamental units come from a windowed short-vector
search: for each log-modulus window [t - w, t + w] the lattice is rescaled so
that units in the window have small norm, and the windows are swept upwards
from t = 0 until a unit of infinite order is seen.  Every unit with a smaller
positive log-modulus lies in an already exhausted window.
"""

import math
from math import isqrt
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv

from .exactmath import balls
from .exactmath import poly as P
from .exactmath.shortvec import enumerate_short
from .numfield import apply_hom, automorphisms, roots_in_field

# orders n of roots of unity with phi(n) <= 4
ROOT_ORDERS = (1, 2, 3, 4, 5, 6, 8, 10, 12)
WINDOW = 0.25


class RankError(ValueError):
    """The unit group of the order does not have rank one."""


@dataclass
class UnitData:
    order: object
    fundamental: object
    mu: int
    torsion: list
    regulator: object = None
    kappa: int = None
    nu: object = None
    certified_height_bound: float = None
    log_modulus: object = None
    convention: str = "paper-b"
    notes: list = field(default_factory=list)


def _unit_rank(F):
    r, s = F.signature
    return r + s - 1


def _check_rank(O):
    F = O.field
    if F.degree not in (2, 4) or _unit_rank(F) != 1 or (F.degree == 4 and not F.is_totally_complex):
        raise RankError(f"unit rank of {F!r} is not one (or the field is not supported)")


def _order_gram(O, scale=None):
    """Float Gram matrix of sum_i w_i |sigma_i(x)|^2 on the order basis."""
    F = O.field
    roots = F.root_complex
    n = F.degree
    emb = np.array([[sum(float(b[k]) * r ** k for k in range(n)) for r in roots] for b in O.basis])
    w = np.ones(n) if scale is None else np.asarray(scale, dtype=float)
    return np.real((emb * w) @ emb.conj().T), emb


def _is_one(x):
    return x.coords[0] == 1 and not any(x.coords[1:])


def _root_order(x):
    """Smallest k in ROOT_ORDERS with x^k = 1, or None."""
    for k in ROOT_ORDERS:
        if _is_one(x ** k):
            return k
    return None


def torsion_units(O):
    """All roots of unity in O, sorted by (order, coordinates)."""
    F = O.field
    n = F.degree
    if F.degree == 2 or (F.degree == 4 and not F.is_totally_complex and F.signature[0] > 0):
        if F.signature[0] > 0:
            return [F.one, -F.one]
    gram, _ = _order_gram(O)
    found = {}
    for v in enumerate_short(gram, n + 1e-6):
        x = O.element(v)
        for y in (x, -x):
            k = _root_order(y)
            if k is not None:
                found[y.coords] = (k, y)
    out = sorted(found.values(), key=lambda t: (t[0], [Fraction(c) for c in t[1].coords]))
    return [y for _, y in out]


def mu(O):
    return len(torsion_units(O))


def log_modulus(x, i=0):
    """Float log|sigma_i(x)|."""
    return math.log(abs(complex(x.approx(i, 30))))


def sqrt_of_discriminant(O):
    """Element s of F with s^2 = disc(O) and s > 0 under the larger real embedding."""
    F = O.field
    b, c = F.poly[1], F.poly[0]
    d0 = b * b - 4 * c
    k2 = Fraction(O.discriminant, d0)
    k = Fraction(isqrt(k2.numerator), isqrt(k2.denominator))
    assert k * k == k2
    return (F.gen * 2 + b) * k


def _quadratic_fundamental_unit(O):
    """Fundamental unit (t + u sqrt D)/2 > 1 of a real quadratic order, by continued fractions."""
    from .census.quadratic import fundamental_solution
    t, u, _ = fundamental_solution(O.discriminant)
    eps = (O.field.one * t + sqrt_of_discriminant(O) * u) * Fraction(1, 2)
    if not O.contains_element(eps):
        raise AssertionError("fundamental unit not in the order")
    return eps


def _first_nonzero_sign(O, x):
    c = next(c for c in O.coords_of_element(x) if c)
    return 1 if c > 0 else -1


def _window_search(O, torsion, start=0.0, stop=None, width=WINDOW, limit=200000):
    """Sweep log-modulus windows; return (unit, log-modulus, exhausted upper limit)."""
    F = O.field
    n = F.degree
    pair0 = [0, F.conjugate_index(0)]
    weights_base = np.ones(n)
    best = None
    t = start
    bound = 2 * math.exp(2 * width) + 2 * math.exp(-2 * width)
    while True:
        w = weights_base.copy()
        for i in range(n):
            w[i] = math.exp(-2 * t) if i in pair0 else math.exp(2 * t)
        gram, _ = _order_gram(O, w)
        for v in enumerate_short(gram, bound * (1 + 1e-6), limit=limit):
            x = O.element(v)
            lm = log_modulus(x)
            if lm < -1e-9:
                continue
            if abs(lm) < 1e-9:
                continue
            N = x.norm()
            if N not in (1, -1):
                continue
            if best is None or lm < best[1] - 1e-12:
                best = (x, lm)
        covered = t + width
        if best is not None and covered >= best[1]:
            return best[0], best[1], covered
        if stop is not None and covered >= stop:
            return None, None, covered
        t += width


def _normalize_unit(O, eps, torsion):
    """Deterministic representative of {zeta eps^(+-1)} with |sigma_0| > 1."""
    cands = []
    for z in torsion:
        for e in (eps, eps.inverse()):
            y = z * e
            if abs(complex(y.approx(0))) <= 1:
                continue
            c = [int(x) for x in O.coords_of_element(y)]
            if next(x for x in c if x) < 0:
                continue
            cands.append((P.degree(y.minpoly()), sum(abs(x) for x in c), c, y))
    cands.sort(key=lambda t: t[:3])
    return cands[0][3]


def fundamental_unit(O, convention="paper-b"):
    """Certified fundamental unit and the basic unit data of O."""
    _check_rank(O)
    cached = getattr(O, "_unit_data", None)
    if cached is not None and cached.convention == convention:
        return cached
    torsion = torsion_units(O)
    F = O.field
    if F.degree == 2:
        eps = _quadratic_fundamental_unit(O)
        height = None
    else:
        eps, lm, covered = _window_search(O, torsion)
        eps = _normalize_unit(O, eps, torsion)
        height = covered
    data = UnitData(order=O, fundamental=eps, mu=len(torsion), torsion=torsion,
                    certified_height_bound=height, convention=convention)
    data.log_modulus = certified_log_modulus(eps)
    data.regulator = regulator_from_unit(eps, convention)
    for u in torsion + [eps]:
        _assert_unit_law(u)
    O._unit_data = data
    return data


def _assert_unit_law(u):
    N = u.norm()
    if N not in (1, -1):
        raise AssertionError(f"unit {u} has norm {N}")
    if u.field.degree == 4 and u.field.is_totally_complex and N != 1:
        raise AssertionError(f"unit {u} of a totally complex quartic field has norm {N}")


def certified_log_modulus(x, i=0):
    """Ball containing |log|sigma_i(x)||."""
    with balls.ivprec():
        z = x.embed(i, eps=Fraction(1, 10 ** 40))
        return abs(iv.log(balls.abs_ball(z)))


def regulator_from_unit(eps, convention="paper-b"):
    """Regulator ball: |log|eps|| for quadratic fields; for quartic fields
    2|log|sigma(eps)|| ("paper-b", default) or |log|sigma(eps)|| ("paper-a")."""
    lm = certified_log_modulus(eps)
    if eps.field.degree == 4 and convention == "paper-b":
        with balls.ivprec():
            return 2 * lm
    if convention not in ("paper-a", "paper-b"):
        raise ValueError(f"unknown regulator convention {convention!r}")
    return lm


def regulator(O, convention="paper-b"):
    return fundamental_unit(O, convention).regulator


def verify_fundamental(O, factor=2.0):
    """Independent check: plain T2 enumeration up to factor times the unit's T2 bound
    finds no unit with a smaller positive log-modulus."""
    data = fundamental_unit(O)
    lm = log_modulus(data.fundamental)
    F = O.field
    n = F.degree
    bound = factor * (n / 2) * (math.exp(2 * lm) + math.exp(-2 * lm))
    gram, _ = _order_gram(O)
    for v in enumerate_short(gram, bound):
        x = O.element(v)
        m = abs(log_modulus(x))
        if 1e-9 < m < lm - 1e-9 and x.norm() in (1, -1):
            return False
    return True


# -- kappa and nu ----------------------------------------------------------------


def _fundamental_in(O, r, data):
    """Is r a fundamental unit of O, i.e. in O and of the form zeta eps^(+-1)?"""
    if not O.contains_element(r):
        return False
    for e in (data.fundamental, data.fundamental.inverse()):
        q = r / e
        if any(q == z for z in data.torsion):
            return True
    return False


def conjugate_roots_in_field(eps):
    """Roots of the minimal polynomial of eps that lie in its field."""
    F = eps.field
    g = eps.minpoly()
    if P.degree(g) == F.degree:
        return sorted({apply_hom(eps, im).coords: apply_hom(eps, im) for im in automorphisms(F)}.values(),
                      key=lambda y: [Fraction(c) for c in y.coords])
    if P.degree(g) == 2:
        other = F.one * (-g[1]) - eps
        return sorted({eps.coords: eps, other.coords: other}.values(), key=lambda y: [Fraction(c) for c in y.coords])
    return [eps]


def kappa(O, data=None):
    """Number of roots of minpoly(eps) in F that are fundamental units of O."""
    data = data or fundamental_unit(O)
    if data.kappa is not None:
        return data.kappa
    count = sum(1 for r in conjugate_roots_in_field(data.fundamental) if _fundamental_in(O, r, data))
    data.kappa = count
    return count


def kappa_oracle(O, data=None):
    """Numerical cross-check: count roots of minpoly(eps) matching some sigma_0(zeta eps^(+-1))."""
    data = data or fundamental_unit(O)
    eps = data.fundamental
    g = eps.minpoly()
    with mpmath.workdps(40):
        rs = mpmath.polyroots([mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(g)],
                              maxsteps=200, extraprec=200)
        targets = []
        for z in data.torsion:
            for e in (eps, eps.inverse()):
                targets.append((z * e).approx(0, 40))
        count = 0
        for r in rs:
            if any(abs(r - t) < mpmath.mpf(10) ** -25 for t in targets):
                count += 1
    found = roots_in_field(P.primitive_part(g), O.field)
    return count if len(found) >= count else len(found)


def phase_product(x):
    """Ball for prod over embeddings of (1 - sigma(x)/|sigma(x)|)."""
    F = x.field
    with balls.ivprec():
        acc = iv.mpf(1)
        for i in F.pair_representatives():
            z = x.embed(i, eps=Fraction(1, 10 ** 40))
            c = z.real / balls.abs_ball(z)
            acc = acc * (2 - 2 * c)
        return acc


def nu(O, data=None):
    """(1/(2 mu)) * sum over the 2 mu fundamental units of the embedding phase product."""
    data = data or fundamental_unit(O)
    if data.nu is not None:
        return data.nu
    F = O.field
    if F.degree != 4:
        raise ValueError("nu is defined for quartic orders")
    total = iv.mpf(0)
    with balls.ivprec():
        for z in data.torsion:
            for e in (data.fundamental, data.fundamental.inverse()):
                total = total + phase_product(z * e)
        data.nu = total / (2 * data.mu)
    return data.nu


def unit_data(O, convention="paper-b"):
    """Fundamental unit plus kappa and nu (the latter for quartic orders)."""
    data = fundamental_unit(O, convention)
    kappa(O, data)
    if O.field.degree == 4:
        nu(O, data)
    return data
