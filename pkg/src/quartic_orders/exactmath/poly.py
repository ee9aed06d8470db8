"""Dense univariate polynomials over Z and Q.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros; ``()`` is the zero polynomial.  Integer and rational
(``Fraction``) coefficients mix freely.
"""

from fractions import Fraction
from math import gcd

ZERO = ()
ONE = (1,)
X = (0, 1)


def strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def normalize(coeffs):
    """Strip trailing zeros and turn integral Fractions into ints."""
    out = []
    for c in coeffs:
        if isinstance(c, Fraction) and c.denominator == 1:
            c = c.numerator
        out.append(c)
    return strip(out)


def degree(f):
    return len(f) - 1 if f else -1


def lc(f):
    return f[-1] if f else 0


def is_monic(f):
    return bool(f) and f[-1] == 1


def add(f, g):
    n = max(len(f), len(g))
    return strip((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def neg(f):
    return tuple(-c for c in f)


def sub(f, g):
    return add(f, neg(g))


def scale(f, c):
    return strip(c * a for a in f)


def mul(f, g):
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return strip(out)


def power(f, e):
    result = ONE
    while e:
        if e & 1:
            result = mul(result, f)
        f = mul(f, f)
        e >>= 1
    return result


def divmod_poly(f, g):
    """Division with remainder over Q; exact ints are kept when possible."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    lead = g[-1]
    if len(f) - 1 < dg:
        return ZERO, strip(f)
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg]
        if c == 0:
            continue
        if lead == 1:
            t = c
        elif isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            t = c // lead
        else:
            t = Fraction(c) / lead
        q[k] = t
        for i, b in enumerate(g):
            f[k + i] -= t * b
    return normalize(q), normalize(f[:dg])


def rem(f, g):
    return divmod_poly(f, g)[1]


def exact_div(f, g):
    q, r = divmod_poly(f, g)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def derivative(f):
    return strip(i * f[i] for i in range(1, len(f)))


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def monic(f):
    if not f:
        return f
    return normalize(Fraction(c) / f[-1] for c in f)


def gcd_poly(f, g):
    """Monic gcd over Q."""
    while g:
        f, g = g, rem(f, g)
    return monic(f)


def content(f):
    g = 0
    for c in f:
        g = gcd(g, int(c))
    return g


def primitive_part(f):
    """Primitive integer polynomial proportional to f with positive leading coefficient."""
    if not f:
        return f
    den = 1
    for c in f:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return strip(c // g for c in ints)


def squarefree_part(f):
    """Monic squarefree part over Q (characteristic zero)."""
    return monic(exact_div(f, gcd_poly(f, derivative(f))))


def compose(f, g):
    """f(g(x))."""
    acc = ZERO
    for c in reversed(f):
        acc = add(mul(acc, g), (c,) if c else ZERO)
    return acc


def shift(f, a):
    """f(x + a)."""
    return compose(f, strip((a, 1)))


def reciprocal(f):
    """x^deg f(1/x)."""
    return strip(reversed(f))


def from_string(text):
    """Parse ``"1,1,0,0,1"`` (constant term first) into a polynomial."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return strip(int(p) for p in parts)


def to_string(f):
    return ",".join(str(int(c)) for c in f) if f else "0"


def pretty(f, var="x"):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- resultants and discriminants --------------------------------------------


def sylvester_matrix(f, g):
    m, n = degree(f), degree(g)
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def det_bareiss(rows):
    """Exact determinant of a square integer (or rational) matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if isinstance(num, int) and isinstance(prev, int):
                    a[i][j] = num // prev
                else:
                    a[i][j] = Fraction(num) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f, g):
    """Res(f, g) by the Euclidean algorithm over Q."""
    if not f or not g:
        return 0
    m, n = degree(f), degree(g)
    if m == 0:
        return Fraction(f[0]) ** n
    if n == 0:
        return Fraction(g[0]) ** m
    r = rem(f, g)
    if not r:
        return 0
    k = degree(r)
    # Res(f,g) = (-1)^{mn} lc(g)^{m-k} Res(g, f mod g)
    res = (-1) ** (m * n) * Fraction(lc(g)) ** (m - k) * resultant(g, r)
    return res.numerator if res.denominator == 1 else res


def resultant_sylvester(f, g):
    return det_bareiss(sylvester_matrix(f, g))


def discriminant(f):
    """disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f) for a monic integer polynomial."""
    if not f or degree(f) < 1:
        raise ValueError("discriminant needs degree >= 1")
    if not is_monic(f):
        raise ValueError("discriminant is defined here for monic polynomials only")
    n = degree(f)
    if n == 1:
        return 1
    r = resultant(f, derivative(f))
    d = (-1) ** (n * (n - 1) // 2) * r
    return int(d)


# -- cyclotomic polynomials ---------------------------------------------------


_CYCLO = {}


def cyclotomic(n):
    if n in _CYCLO:
        return _CYCLO[n]
    f = strip([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            f = exact_div(f, cyclotomic(d))
    f = strip(int(c) for c in f)
    _CYCLO[n] = f
    return f


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
