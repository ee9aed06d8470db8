"""Polynomials over the prime field F_p and their factorization.

Same tuple representation as :mod:`poly` with coefficients reduced into
``range(p)``.  Factorization is squarefree decomposition, distinct-degree
splitting and Cantor-Zassenhaus equal-degree splitting driven by a seeded
``random.Random``.
"""

import random
from itertools import product

from sympy import isprime

from . import poly as P


def reduce(f, p):
    return P.strip(int(c) % p for c in f)


def add(f, g, p):
    n = max(len(f), len(g))
    return P.strip(((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n))


def sub(f, g, p):
    n = max(len(f), len(g))
    return P.strip(((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n))


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return P.strip(c % p for c in out)


def divmod_mod(f, g, p):
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    f = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(f) - 1 < dg:
        return (), P.strip(f)
    q = [0] * (len(f) - dg)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg] % p
        if c == 0:
            continue
        t = c * inv % p
        q[k] = t
        for i, b in enumerate(g):
            f[k + i] = (f[k + i] - t * b) % p
    return P.strip(q), P.strip(c % p for c in f[:dg])


def rem(f, g, p):
    return divmod_mod(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return tuple(c * inv % p for c in f)


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def derivative(f, p):
    return P.strip(i * f[i] % p for i in range(1, len(f)))


def powmod(f, e, m, p):
    result = (1,)
    f = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, f, p), m, p)
        f = rem(mul(f, f, p), m, p)
        e >>= 1
    return result


def pth_root(f, p):
    """g with g(x)^p = f(x) when f' = 0 over F_p."""
    return P.strip(f[i] for i in range(0, len(f), p))


def squarefree_decomposition(f, p):
    """Yun-style decomposition: list of (g, k) with f = lc * prod g^k, g squarefree."""
    f = monic(f, p)
    out = []

    def rec(f, mult):
        if P.degree(f) < 1:
            return
        d = derivative(f, p)
        if not d:
            rec(pth_root(f, p), mult * p)
            return
        c = gcd(f, d, p)
        w = divmod_mod(f, c, p)[0]
        i = 1
        while P.degree(w) > 0:
            y = gcd(w, c, p)
            z = divmod_mod(w, y, p)[0]
            if P.degree(z) > 0:
                out.append((monic(z, p), i * mult))
            i += 1
            w = y
            c = divmod_mod(c, y, p)[0]
        if P.degree(c) > 0:
            rec(pth_root(c, p), mult * p)

    rec(f, 1)
    return out


def distinct_degree(f, p):
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    h = (0, 1)
    d = 0
    g = f
    while P.degree(g) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, g, p)
        t = gcd(g, sub(h, (0, 1), p), p)
        if P.degree(t) > 0:
            out.append((t, d))
            g = divmod_mod(g, t, p)[0]
            h = rem(h, g, p)
    if P.degree(g) > 0:
        out.append((g, P.degree(g)))
    return out


def equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of f, a product of irreducibles of degree d."""
    n = P.degree(f)
    if n == d:
        return [f]
    while True:
        a = P.strip(rng.randrange(p) for _ in range(n))
        if P.degree(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t = a
            b = a
            for _ in range(d - 1):
                b = rem(mul(b, b, p), f, p)
                t = add(t, b, p)
            g = gcd(f, t, p)
        else:
            b = powmod(a, (p ** d - 1) // 2, f, p)
            g = gcd(f, sub(b, (1,), p), p)
        if 0 < P.degree(g) < n:
            h = divmod_mod(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def _check_prime(p):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


def factor_mod_p(f, p, seed=0):
    """Monic irreducible factors of f over F_p with multiplicities.

    Returned as a sorted list of ``(factor, multiplicity)``; the product of
    the factors to their multiplicities equals ``f`` up to its leading unit.
    """
    _check_prime(p)
    f = reduce(f, p)
    if not f:
        raise ValueError("polynomial vanishes mod p")
    rng = random.Random(seed)
    out = []
    for g, k in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                out.append((q, k))
    return sorted(out, key=lambda t: (P.degree(t[0]), t[0], t[1]))


def _monic_polys(deg, p):
    for tail in product(range(p), repeat=deg):
        yield tuple(tail) + (1,)


def is_irreducible_exhaustive(f, p):
    n = P.degree(f)
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(d, p):
            if not rem(f, g, p):
                return False
    return True


def factor_mod_p_exhaustive(f, p):
    """Deterministic factorization by trial division over all monic polynomials.

    Only meant for tiny p and degree; serves as an oracle for
    :func:`factor_mod_p`.
    """
    _check_prime(p)
    f = monic(reduce(f, p), p)
    if not f:
        raise ValueError("polynomial vanishes mod p")
    out = {}
    d = 1
    while P.degree(f) >= 1:
        if d > P.degree(f):
            break
        if 2 * d > P.degree(f):
            out[f] = out.get(f, 0) + 1
            f = (1,)
            break
        found = False
        for g in _monic_polys(d, p):
            q, r = divmod_mod(f, g, p)
            if not r:
                out[g] = out.get(g, 0) + 1
                f = q
                found = True
                break
        if not found:
            d += 1
    return sorted(out.items(), key=lambda t: (P.degree(t[0]), t[0], t[1]))


def degree_pattern(f, p, seed=0):
    """Sorted multiset of (degree, multiplicity) of the factorization mod p."""
    return sorted((P.degree(g), k) for g, k in factor_mod_p(f, p, seed))


def roots_mod_p(f, p, seed=0):
    return sorted((-g[0]) % p for g, _ in factor_mod_p(f, p, seed) if P.degree(g) == 1)
