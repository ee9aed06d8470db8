"""Real quadratic baselines: sums of h(O_D) R(O_D) and of h(O_D) over small regulators.

The per-discriminant work (reduced forms, their cycles, the continued
fraction of the reduced generator) runs in a numba kernel; the pure Python
versions in :mod:`.quadratic` serve as the oracle for small D.
"""

import math

import mpmath
import numpy as np
from numba import njit
from scipy import integrate

from .quadratic import is_discriminant


@njit(cache=True)
def _isqrt(n):
    r = int(math.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _unit_data(D):
    """(log eps_D, norm of eps_D) from the period of (p0 + sqrt D)/2."""
    r = _isqrt(D)
    p0 = r if (r - D) % 2 == 0 else r - 1
    sd = math.sqrt(D)
    P, Q = p0, 2
    logsum = 0.0
    length = 0
    while True:
        logsum += math.log((P + sd) / Q)
        a = (P + r) // Q
        P = a * Q - P
        Q = (D - P * P) // Q
        length += 1
        if P == p0 and Q == 2:
            break
    return logsum, 1 if length % 2 == 0 else -1


@njit(cache=True)
def _narrow_class_number(D, slot):
    """Number of cycles of reduced primitive forms of discriminant D.

    slot is scratch space of size >= (2r+1)(r+1), all -1 on entry and on exit."""
    r = _isqrt(D)
    width = r + 1
    fa = np.empty((r + 2) * (r + 2), dtype=np.int64)
    fb = np.empty((r + 2) * (r + 2), dtype=np.int64)
    n = 0
    b = 1 if D % 2 else 2
    while b <= r:
        m = (D - b * b) // 4
        top = (r + b) // 2
        for aa in range(1, top + 1):
            two = 2 * aa
            hi = two + b
            if hi * hi <= D:
                continue
            lo = two - b
            if lo >= 0 and lo * lo >= D:
                continue
            if m % aa:
                continue
            cc = m // aa
            if _gcd(_gcd(aa, b), cc) != 1:
                continue
            for s in (1, -1):
                a = s * aa
                fa[n] = a
                fb[n] = b
                slot[(a + r) * width + b] = n
                n += 1
        b += 2
    seen = np.zeros(n, dtype=np.uint8)
    cycles = 0
    for i in range(n):
        if seen[i]:
            continue
        cycles += 1
        a, bb = fa[i], fb[i]
        j = i
        while not seen[j]:
            seen[j] = 1
            c = (bb * bb - D) // (4 * a)
            m2 = 2 * abs(c)
            bp = r - ((r + bb) % m2)
            a, bb = c, bp
            j = slot[(a + r) * width + bb]
    for i in range(n):
        slot[(fa[i] + r) * width + fb[i]] = -1
    return cycles


@njit(cache=True)
def _table(ds):
    """h (wide), h+ , R and norm of eps for each D in ds."""
    m = len(ds)
    h = np.empty(m, dtype=np.int64)
    hp = np.empty(m, dtype=np.int64)
    R = np.empty(m, dtype=np.float64)
    N = np.empty(m, dtype=np.int64)
    dmax = 0
    for D in ds:
        dmax = max(dmax, D)
    rmax = _isqrt(dmax)
    slot = -np.ones((2 * rmax + 1) * (rmax + 1), dtype=np.int64)
    for k in range(m):
        D = ds[k]
        reg, norm = _unit_data(D)
        c = _narrow_class_number(D, slot)
        hp[k] = c
        h[k] = c if norm == -1 else c // 2
        R[k] = reg
        N[k] = norm
    return h, hp, R, N


def discriminants_up_to(x):
    return np.array([D for D in range(5, int(x) + 1) if is_discriminant(D)], dtype=np.int64)


def quadratic_table(ds):
    """Arrays (h, h_narrow, R, norm) for the given discriminants."""
    ds = np.asarray(ds, dtype=np.int64)
    if len(ds) == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, np.empty(0), empty
    return _table(ds)


def zeta3():
    return float(mpmath.zeta(3))


def gauss_main_term(x):
    return math.pi ** 2 * x ** 1.5 / (18 * zeta3())


def gauss_siegel_sum(x, convention="narrow"):
    """Sum over discriminants D <= x of class number times regulator.

    "narrow": form classes h+(D) times log of the smallest unit of norm +1,
    the normalization of the classical asymptotic.  "wide": h(O_D) R(O_D).
    The two differ by exactly a factor 2 for every D."""
    ds = discriminants_up_to(x)
    h, hp, R, N = quadratic_table(ds)
    if convention == "narrow":
        return float(np.sum(hp * np.where(N == 1, R, 2 * R)))
    if convention == "wide":
        return float(np.sum(h * R))
    raise ValueError(f"unknown convention {convention!r}")


def small_regulator_discriminants(x):
    """All D with R(O_D) <= x, found from t^2 - D u^2 = +-4 with (t + u sqrt D)/2 <= e^x.

    These D all satisfy D <= (e^x + e^-x)^2 + 4."""
    if x <= 0:
        return []
    tmax = int(math.exp(x) + math.exp(-x)) + 1
    found = set()
    for t in range(1, tmax + 1):
        for v in (t * t - 4, t * t + 4):
            if v <= 0:
                continue
            # eps = (t + sqrt v)/2 must not exceed e^x
            if math.log((t + math.sqrt(v)) / 2) > x + 1e-12:
                continue
            u = 1
            while u * u <= v:
                if v % (u * u) == 0 and is_discriminant(v // (u * u)):
                    found.add(v // (u * u))
                u += 1
    return sorted(found)


def sarnak_sum(x, return_terms=False):
    """Sum of the wide class number h(O_D) over D with R(O_D) <= x."""
    ds = np.array(small_regulator_discriminants(x), dtype=np.int64)
    h, _, R, _ = quadratic_table(ds)
    keep = R <= x
    total = int(np.sum(h[keep]))
    if return_terms:
        return total, ds[keep], h[keep], R[keep]
    return total


def L_function(x):
    """L(x) = integral from 1 to x of e^t / t dt."""
    if x < 1:
        raise ValueError("L is defined for x >= 1")
    if x == 1:
        return 0.0
    value, err = integrate.quad(lambda t: math.exp(t) / t, 1, x, epsrel=1e-12, limit=200)
    reference = float(mpmath.ei(x) - mpmath.ei(1))
    if abs(value - reference) > 1e-9 * abs(reference):
        raise ArithmeticError(f"quadrature {value} disagrees with Ei difference {reference}")
    return value
