"""Certified real and complex balls on top of :mod:`mpmath.iv` intervals.

Interval endpoints are read back as exact Fractions, so containment and
radius comparisons are decided without rounding.
"""

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv

from .roots import sqrt_upper

# working precision (bits) for certified evaluations
PREC = 256


@contextmanager
def ivprec(bits=PREC):
    old = iv.prec
    iv.prec = max(bits, old)
    try:
        yield
    finally:
        iv.prec = old


def _raw_to_fraction(t):
    sign, man, exp, _ = t
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def endpoints(x):
    """Exact (lo, hi) of a real interval."""
    lo, hi = x._mpi_
    return _raw_to_fraction(lo), _raw_to_fraction(hi)


def from_fraction(q):
    q = Fraction(q)
    with ivprec():
        return iv.mpf(q.numerator) / q.denominator


def interval(lo, hi):
    with ivprec():
        return iv.mpf([from_fraction(lo).a, from_fraction(hi).b])


def box_interval(box):
    """Complex interval enclosing a RootBox disc."""
    with ivprec():
        r = from_fraction(box.radius)
        re = from_fraction(box.re) + iv.mpf([-1, 1]) * r
        im = from_fraction(box.im) + iv.mpf([-1, 1]) * r
        return iv.mpc(re, im)


def horner(coeffs, z):
    with ivprec():
        acc = iv.mpc(0)
        for c in reversed(coeffs):
            acc = acc * z + from_fraction(c)
        return acc


def is_complex(x):
    return isinstance(x, iv.mpc)


def parts(x):
    if is_complex(x):
        return x.real, x.imag
    return x, from_fraction(0)


def mid(x):
    """Midpoint as an mpmath mpf (real interval) or mpc (complex interval)."""
    with mpmath.workprec(PREC):
        if is_complex(x):
            return mpmath.mpc(x.real.mid, x.imag.mid)
        return mpmath.mpf(x.mid)


def radius(x):
    """Exact rational upper bound for the distance from the midpoint to any point."""
    re, im = parts(x)
    lo, hi = endpoints(re)
    r = (hi - lo) / 2
    if is_complex(x):
        lo, hi = endpoints(im)
        s = (hi - lo) / 2
        return sqrt_upper(r * r + s * s)
    return r


def contains(x, value):
    """Whether the interval x contains the rational (or Gaussian rational) value."""
    if isinstance(value, tuple):
        vr, vi = Fraction(value[0]), Fraction(value[1])
    else:
        vr, vi = Fraction(value), Fraction(0)
    re, im = parts(x)
    lo, hi = endpoints(re)
    if not lo <= vr <= hi:
        return False
    lo, hi = endpoints(im)
    return lo <= vi <= hi


def lower(x):
    return endpoints(x)[0]


def upper(x):
    return endpoints(x)[1]


def abs_ball(x):
    with ivprec():
        if is_complex(x):
            return iv.sqrt(x.real ** 2 + x.imag ** 2)
        return abs(x)


def show(x, digits=12):
    """``value ± radius`` text for a real or complex interval."""
    m = mid(x)
    r = float(radius(x))
    if isinstance(m, mpmath.mpc):
        sign = "+" if m.imag >= 0 else "-"
        return f"({mpmath.nstr(m.real, digits)}{sign}{mpmath.nstr(abs(m.imag), digits)}i) ± {r:.2e}"
    return f"{mpmath.nstr(m, digits)} ± {r:.2e}"


def relative_radius(x):
    """Radius divided by a lower bound of |x| (infinite if the ball meets 0)."""
    lo = lower(abs_ball(x))
    r = radius(x)
    return r / lo if lo > 0 else float("inf")


# certified evaluations run at PREC bits unless a caller asks for more
iv.prec = max(iv.prec, PREC)
