"""Integer and modular linear algebra on small dense matrices.

Matrices are lists of rows.  Lattices are always spanned by rows.
"""

from fractions import Fraction
from math import gcd

from .poly import det_bareiss


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v, m):
    n = len(m[0])
    out = [0] * n
    for c, row in zip(v, m):
        if c:
            for j in range(n):
                out[j] += c * row[j]
    return out


def transpose(m):
    return [list(r) for r in zip(*m)]


def det(m):
    return det_bareiss(m)


def hnf(m):
    """Row-style Hermite normal form.

    The result has the same shape as ``m``: nonzero rows first, upper
    triangular with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``, zero rows last.  The row span over Z is unchanged.
    """
    rows = [list(map(int, r)) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine the column below row r into row r
        for i in range(r + 1, nrows):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            if a == 0:
                rows[r], rows[i] = rows[i], rows[r]
                continue
            g, x, y = _xgcd(a, b)
            u, v = a // g, b // g
            ri, rr = rows[i], rows[r]
            rows[r] = [x * p + y * q for p, q in zip(rr, ri)]
            rows[i] = [u * q - v * p for p, q in zip(rr, ri)]
        if rows[r][c] == 0:
            continue
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        piv = rows[r][c]
        for i in range(r):
            q = rows[i][c] // piv
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows


def hnf_basis(m):
    """Nonzero rows of the HNF."""
    return [row for row in hnf(m) if any(row)]


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def is_hnf(m):
    return hnf(m) == [list(r) for r in m]


def rational_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def solve_upper_rows(basis, v):
    """Coordinates x with x * basis = v for an upper-triangular full-rank basis."""
    n = len(basis)
    x = [Fraction(0)] * n
    rest = [Fraction(c) for c in v]
    for i in range(n):
        piv = basis[i][i]
        xi = rest[i] / piv
        x[i] = xi
        if xi:
            for j in range(i, n):
                rest[j] -= xi * basis[i][j]
    if any(rest):
        raise ValueError("vector not in the row space")
    return x


def common_denominator(values):
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = d * v.denominator // gcd(d, v.denominator)
    return d


# -- linear algebra over F_p -------------------------------------------------


def rref_mod(m, p):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    a = [[x % p for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a[:r], pivots


def rank_mod(m, p):
    return len(rref_mod(m, p)[1]) if m else 0


def left_kernel_mod(m, p):
    """Basis of {x : x * m = 0} over F_p."""
    return right_kernel_mod(transpose(m), p) if m else []


def right_kernel_mod(m, p):
    """Basis of {x : m * x = 0} over F_p (vectors as lists)."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = rref_mod(m, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rows[r][f]) % p
        basis.append(v)
    return basis


def span_mod(vectors, p):
    rows, _ = rref_mod(vectors, p) if vectors else ([], [])
    return rows


def matmul_mod(a, b, p):
    return [[x % p for x in row] for row in matmul(a, b)]


def matpow_mod(a, e, p):
    n = len(a)
    result = identity(n)
    while e:
        if e & 1:
            result = matmul_mod(result, a, p)
        a = matmul_mod(a, a, p)
        e >>= 1
    return result
