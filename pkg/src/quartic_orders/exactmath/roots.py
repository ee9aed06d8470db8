"""Certified isolation of the complex roots of a squarefree integer polynomial.

Approximate roots come from :func:`mpmath.polyroots`; each approximation c
is then certified with exact rational arithmetic.  For a polynomial of
degree n the disc of radius ``n*|f(c)/f'(c)|`` around c contains a root, so
n pairwise disjoint such discs contain exactly one root each.  Working
precision doubles until the discs separate and meet the requested radius.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import isqrt

import mpmath

from . import poly as P


@dataclass(frozen=True)
class RootBox:
    """Disc ``|z - (re + i*im)| <= radius`` holding exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction
    is_real: bool

    @property
    def center(self):
        return (self.re, self.im)

    def conjugate(self):
        return RootBox(self.re, -self.im, self.radius, self.is_real)

    def approx(self, dps=30):
        with mpmath.workdps(dps):
            return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                              mpmath.mpf(self.im.numerator) / self.im.denominator)

    def __repr__(self):
        kind = "real" if self.is_real else "complex"
        return f"RootBox({float(self.re):.12g}{float(self.im):+.12g}i ± {float(self.radius):.2e}, {kind})"


class NotSquarefree(ValueError):
    pass


def mpf_to_fraction(x):
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def sqrt_upper(q):
    """Rational upper bound for sqrt(q), q >= 0, accurate to about 1/den."""
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    a, b = q.numerator, q.denominator
    # scale so the integer square root carries ~64 extra bits
    s = 1 << 64
    return Fraction(isqrt(a * b * s * s) + 1, b * s)


def _eval_complex(f, re, im):
    """f(re + i im) as a pair of Fractions (Horner)."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def certified_radius(f, re, im):
    """Radius of a disc around (re, im) guaranteed to contain a root of f."""
    n = P.degree(f)
    fr, fi = _eval_complex(f, re, im)
    dr, di = _eval_complex(P.derivative(f), re, im)
    num = fr * fr + fi * fi
    den = dr * dr + di * di
    if den == 0:
        return None
    return n * sqrt_upper(num / den)


def _disjoint(a, b):
    dr = a[0] - b[0]
    di = a[1] - b[1]
    s = a[2] + b[2]
    return dr * dr + di * di > s * s


def _order_key(a, b, tol=Fraction(1, 10 ** 12)):
    for x, y in ((a.re, b.re), (abs(a.im), abs(b.im))):
        if abs(x - y) > tol:
            return -1 if x < y else 1
    sa = (a.im > 0) - (a.im < 0)
    sb = (b.im > 0) - (b.im < 0)
    return (sa > sb) - (sa < sb)


def sort_boxes(boxes):
    """Fixed total order: real part, then |imaginary part|, then sign of imaginary part."""
    return sorted(boxes, key=cmp_to_key(_order_key))


def isolate_roots(f, eps=Fraction(1, 10 ** 20), start_dps=30, max_dps=4000):
    """One certified :class:`RootBox` per complex root of f, radii <= eps.

    f must be squarefree with integer (or rational) coefficients.  Real roots
    get a box centred on the real axis and ``is_real=True``; non-real roots
    come in exact conjugate pairs.
    """
    f = P.normalize(f)
    n = P.degree(f)
    if n < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if P.degree(P.gcd_poly(f, P.derivative(f))) > 0:
        raise NotSquarefree("polynomial is not squarefree; take its squarefree part first")
    eps = Fraction(eps)
    dps = start_dps
    while dps <= max_dps:
        boxes = _try_isolate(f, n, eps, dps)
        if boxes is not None:
            return sort_boxes(boxes)
        dps *= 2
    raise ArithmeticError("root isolation did not converge")


def _try_isolate(f, n, eps, dps):
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
                  for c in reversed(f)]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * dps)
        except mpmath.libmp.NoConvergence:
            return None
        if not isinstance(approx, list):
            approx = [approx]
        approx = [(mpf_to_fraction(mpmath.mpf(mpmath.re(z))), mpf_to_fraction(mpmath.mpf(mpmath.im(z))))
                  for z in approx]
    cands = []
    for re, im in approx:
        r = certified_radius(f, re, im)
        if r is None:
            return None
        if r < abs(im) or im == 0:
            cands.append([re, im, r, False])
        else:
            # disc meets the real axis: recentre on it and certify a real root
            r2 = certified_radius(f, re, Fraction(0))
            if r2 is None:
                return None
            cands.append([re, Fraction(0), r2, True])
    # real roots of a real polynomial: a disc symmetric about R holding one root holds a real one
    upper = [c for c in cands if not c[3] and c[1] > 0]
    lower = [c for c in cands if not c[3] and c[1] < 0]
    reals = [c for c in cands if c[3] or c[1] == 0]
    for c in reals:
        c[3] = True
        c[1] = Fraction(0)
    if len(upper) != len(lower):
        return None
    # replace lower-half approximations by exact mirrors of the upper ones
    final = reals + upper + [[c[0], -c[1], c[2], False] for c in upper]
    if len(final) != n:
        return None
    if any(c[2] > eps for c in final):
        return None
    for i in range(n):
        for j in range(i + 1, n):
            if not _disjoint(final[i], final[j]):
                return None
    # every non-real disc must avoid the real axis so that its root is non-real
    for c in upper:
        if c[2] >= c[1]:
            return None
    return [RootBox(c[0], c[1], c[2], c[3]) for c in final]


def real_sign_count(f):
    """Number of real roots (via isolation)."""
    return sum(1 for b in isolate_roots(P.squarefree_part(f)) if b.is_real)
