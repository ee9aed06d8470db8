"""Fincke-Pohst enumeration of lattice points in an ellipsoid.

The quadratic form is given by a floating point Gram matrix.  Bounds are
inflated by a relative slack so that rounding can only add candidates;
callers confirm every candidate with exact arithmetic.
"""

import math

import numpy as np


def enumerate_short(gram, bound, slack=1e-9, limit=None):
    """Yield integer vectors x != 0 with x^T G x <= bound (up to slack).

    Vectors are produced up to sign: only one of x, -x is returned, the one
    whose last nonzero coordinate is positive.
    """
    g = np.asarray(gram, dtype=float)
    n = g.shape[0]
    # q[i][i] and q[i][j] (i<j) of the Cholesky-like decomposition
    q = np.zeros((n, n))
    a = g.copy()
    for i in range(n):
        q[i, i] = a[i, i]
        if q[i, i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[i, j] = a[i, j] / q[i, i]
        for j in range(i + 1, n):
            for k in range(j, n):
                a[j, k] -= q[i, j] * q[i, k] * q[i, i]
                a[k, j] = a[j, k]
    c = bound * (1 + slack) + slack
    x = [0] * n
    count = 0

    def rec(i, remaining):
        nonlocal count
        centre = -sum(q[i, j] * x[j] for j in range(i + 1, n))
        width = math.sqrt(max(remaining, 0.0) / q[i, i])
        lo = math.ceil(centre - width - 1e-12)
        hi = math.floor(centre + width + 1e-12)
        for v in range(lo, hi + 1):
            t = v - centre
            r = remaining - q[i, i] * t * t
            if r < -1e-12 * max(1.0, c):
                continue
            x[i] = v
            if i == 0:
                yield list(x)
            else:
                yield from rec(i - 1, r)
        x[i] = 0

    for v in rec(n - 1, c):
        if not any(v):
            continue
        last = next(t for t in reversed(v) if t)
        if last < 0:
            continue
        count += 1
        if limit is not None and count > limit:
            raise OverflowError("enumeration limit exceeded")
        yield v


def count_bound(gram, bound):
    """Rough number of lattice points in the ellipsoid (volume / covolume)."""
    g = np.asarray(gram, dtype=float)
    n = g.shape[0]
    vol = math.pi ** (n / 2) / math.gamma(n / 2 + 1) * bound ** (n / 2)
    return vol / math.sqrt(abs(np.linalg.det(g)))
