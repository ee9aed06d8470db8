"""Real quadratic orders O_D: units, regulators and class numbers from forms.

Discriminants D are non-square integers with D = 0, 1 (mod 4).  Class
numbers come from counting cycles of reduced indefinite binary quadratic
forms; fundamental units from the continued fraction of the reduced
generator (P0 + sqrt D)/2 of O_D.
"""

import math
from dataclasses import dataclass
from math import gcd, isqrt


def is_discriminant(D):
    """D in the set of real quadratic order discriminants."""
    return D > 1 and D % 4 in (0, 1) and isqrt(D) ** 2 != D


def _check(D):
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a non-square discriminant D = 0,1 mod 4")


def _cf_unit(D):
    """Fundamental unit data by the period of (p0 + sqrt D)/2."""
    r = isqrt(D)
    p0 = r if (r - D) % 2 == 0 else r - 1
    P, Q = p0, 2
    qs = []
    prev, cur = 1, 0          # q_{-2}, q_{-1}
    length = 0
    start = (P, Q)
    while True:
        a = (P + r) // Q
        prev, cur = cur, a * cur + prev
        qs.append(cur)
        length += 1
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == start:
            break
    q_last = qs[-1]
    q_before = qs[-2] if length >= 2 else 0
    return q_last * p0 + 2 * q_before, q_last, (-1) ** length


def fundamental_unit_tu(D):
    """Smallest t, u > 0 with t^2 - D u^2 = +-4, and the norm of (t + u sqrt D)/2."""
    _check(D)
    t, u, norm = _cf_unit(D)
    assert t * t - D * u * u == 4 * norm
    return t, u, norm


fundamental_solution = fundamental_unit_tu


def regulator(D):
    t, u, _ = fundamental_unit_tu(D)
    return math.log((t + u * math.sqrt(D)) / 2)


def reduced_forms(D, primitive=True):
    """Reduced indefinite forms (a, b, c) of discriminant D.

    Reduced means 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b.
    """
    r = isqrt(D)
    out = []
    for b in range(1 if D % 2 else 2, r + 1, 2):
        if b * b >= D:
            break
        m = (D - b * b) // 4           # = -a c
        # 2|a| in (sqrt D - b, sqrt D + b)
        for a_abs in range(1, (r + b) // 2 + 1):
            two = 2 * a_abs
            if not _between(D, b, two):
                continue
            if m % a_abs:
                continue
            c_abs = m // a_abs
            for a, c in ((a_abs, -c_abs), (-a_abs, c_abs)):
                if primitive and gcd(gcd(a, b), c) != 1:
                    continue
                out.append((a, b, c))
    return out


def _between(D, b, two):
    """sqrt D - b < two < sqrt D + b, decided exactly."""
    # two + b > sqrt D  and  two - b < sqrt D
    lhs = two + b
    if lhs <= 0 or lhs * lhs <= D:
        return False
    low = two - b
    return low < 0 or low * low < D


def _rho(form, D):
    """Reduction step (a, b, c) -> (c, b', c') with b' = -b mod 2c and sqrt D - 2|c| < b' < sqrt D."""
    a, b, c = form
    r = isqrt(D)
    m = 2 * abs(c)
    bp = r - ((r + b) % m)
    return (c, bp, (bp * bp - D) // (4 * c))


def form_cycles(D, primitive=True):
    """Cycles of reduced forms under the reduction step."""
    forms = set(reduced_forms(D, primitive))
    cycles = []
    seen = set()
    for f in sorted(forms):
        if f in seen:
            continue
        cyc = []
        g = f
        while g not in seen:
            seen.add(g)
            cyc.append(g)
            g = _rho(g, D)
            if g not in forms:
                raise AssertionError(f"reduction left the reduced set at {g} (D={D})")
        cycles.append(cyc)
    return cycles


def narrow_class_number(D):
    _check(D)
    return len(form_cycles(D))


def wide_class_number(D, norm=None):
    """Class number of O_D (classes of invertible ideals modulo all principal ideals)."""
    hp = narrow_class_number(D)
    if norm is None:
        norm = fundamental_unit_tu(D)[2]
    return hp if norm == -1 else hp // 2


def all_module_class_count(D):
    """Classes of all (not only invertible) O_D-lattices: sum of h(D/g^2) over overorders."""
    _check(D)
    total = 0
    g = 1
    while g * g <= D:
        if D % (g * g) == 0 and is_discriminant(D // (g * g)):
            total += wide_class_number(D // (g * g))
        g += 1
    return total


@dataclass(frozen=True)
class QuadraticOrderRecord:
    D: int
    h: int
    h_narrow: int
    R: float
    eps_t: int
    eps_u: int
    eps_norm: int

    @property
    def epsilon(self):
        """(t, u) with eps = (t + u sqrt D)/2."""
        return (self.eps_t, self.eps_u)


def quadratic_h_R(D):
    """Class number (wide and narrow), regulator and fundamental unit of O_D."""
    _check(D)
    t, u, norm = fundamental_unit_tu(D)
    hp = narrow_class_number(D)
    h = hp if norm == -1 else hp // 2
    R = math.log((t + u * math.sqrt(D)) / 2)
    return QuadraticOrderRecord(D, h, hp, R, t, u, norm)
