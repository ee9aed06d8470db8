"""Totally complex quartic fields of bounded discriminant.

Three candidate sources, each complete for its kind of field:

* fields without a proper subfield: Hunter's theorem gives an algebraic
  integer alpha not in Z with 0 <= Tr(alpha) <= 2 and
  T2(alpha) <= Tr(alpha)^2/4 + 2^(1/3) (|d|/4)^(1/3); any such alpha
  generates the field.
* fields with exactly one quadratic subfield K: the elements of relative
  trace zero over K form a rank-2 lattice orthogonal to K of covolume at
  most 2 sqrt(|d|/|d_K|), so its shortest vector theta has
  T2(theta) <= (4/sqrt 3) sqrt(|d|/|d_K|); theta generates the field and
  theta^2 lies in K, giving an even polynomial x^4 + A x^2 + B.
* biquadratic fields Q(sqrt m1, sqrt m2) with m1, m2 < 0, listed directly.

Candidates are reduced to fields by their maximal orders and deduplicated by
(discriminant, splitting pattern at p <= 13), then by an exact isomorphism test.
"""

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from sympy import factorint, primerange

from ..exactmath import poly as P
from ..exactmath.shortvec import enumerate_short
from ..numfield import ReducibleError, is_isomorphic, make_field, squarefree_kernel
from ..orders import maximal_order, t2_gram
from ..splitting import local_factors

FINGERPRINT_PRIMES = tuple(primerange(2, 14))


def _fundamental_discriminant(n):
    k = squarefree_kernel(n)
    return k if k % 4 == 1 else 4 * k


def _largest_square_divisor(n):
    out = 1
    for q, e in factorint(abs(n)).items():
        out *= q ** (e - e % 2)
    return out


def _t2(f):
    roots = np.roots([float(c) for c in reversed(f)])
    return float(np.sum(np.abs(roots) ** 2)), bool(np.all(np.abs(roots.imag) > 1e-9))


def hunter_candidates(disc_bound):
    """Monic quartics whose roots satisfy the Hunter bound (totally complex only)."""
    out = []
    for t in range(3):
        bound = t * t / 4 + 2 ** (1 / 3) * (disc_bound / 4) ** (1 / 3) + 1e-9
        p3_max = 2 * (bound / 2) ** 1.5
        p4_max = 2 * (bound / 2) ** 2
        e4_max = int((bound / 4) ** 2)
        e1 = t
        for e2 in range(math.ceil((t * t - bound) / 2), math.floor((t * t + bound) / 2) + 1):
            p2 = e1 * e1 - 2 * e2
            # p3 = e1 p2 - e2 p1 + 3 e3
            base = e1 * p2 - e2 * e1
            for e3 in range(math.ceil((-p3_max - base) / 3), math.floor((p3_max - base) / 3) + 1):
                p3 = base + 3 * e3
                for e4 in range(1, e4_max + 1):
                    p4 = e1 * p3 - e2 * p2 + e3 * e1 - 4 * e4
                    if abs(p4) > p4_max:
                        continue
                    f = (e4, -e3, e2, -e1, 1)
                    t2, complex_roots = _t2(f)
                    if complex_roots and t2 <= bound:
                        out.append(f)
    return out


def even_candidates(disc_bound):
    """x^4 + A x^2 + B with T2(root) under the relative-trace-zero bound for K = Q(sqrt(A^2 - 4B))."""
    top = 4 / math.sqrt(3) * math.sqrt(disc_bound / 3) + 1e-9
    out = []
    for A in range(-int(top / 2) - 1, int(top / 2) + 2):
        for B in range(1, int((top / 4) ** 2) + 1):
            delta = A * A - 4 * B
            if delta == 0 or (delta > 0 and math.isqrt(delta) ** 2 == delta):
                continue
            if delta > 0:
                if A <= 0:
                    continue          # some root real
                t2 = 2 * A
            else:
                t2 = 4 * math.sqrt(B)
            dk = abs(_fundamental_discriminant(delta))
            if dk * dk > disc_bound:
                continue
            if t2 <= 4 / math.sqrt(3) * math.sqrt(disc_bound / dk) + 1e-9:
                out.append((B, 0, A, 0, 1))
    return out


def biquadratic_candidates(disc_bound):
    """Q(sqrt m1, sqrt m2) for squarefree m1, m2 < 0 with d1 d2 d3 <= disc_bound."""
    imag = []
    for m in range(1, disc_bound + 1):
        if squarefree_kernel(m) != m:
            continue
        d = _fundamental_discriminant(-m)
        if abs(d) * 3 * 5 <= disc_bound:
            imag.append((-m, d))
    out = []
    for i, (m1, d1) in enumerate(imag):
        for m2, d2 in imag[i + 1:]:
            d3 = _fundamental_discriminant(m1 * m2)
            if abs(d1 * d2 * d3) <= disc_bound:
                out.append(((m1 - m2) ** 2, 0, -2 * (m1 + m2), 0, 1))
    return out


def candidate_polynomials(disc_bound):
    cands = set(hunter_candidates(disc_bound)) | set(even_candidates(disc_bound))
    cands |= set(biquadratic_candidates(disc_bound))
    return sorted(cands, key=poly_key)


def poly_key(f):
    """Deterministic preference among defining polynomials of one field."""
    return (sum(c * c for c in f), tuple(abs(c) for c in reversed(f)), tuple(reversed(f)))


def reduced_polynomial(F):
    """Isomorphism-invariant defining polynomial: among the minimal polynomials of
    the generators of O_F with least T2, the smallest by :func:`poly_key`."""
    Om = maximal_order(F)
    gram = t2_gram(Om)
    bound = 4.0 * F.degree
    while True:
        found = []
        for v in enumerate_short(gram, bound):
            x = Om.element(v)
            g = x.minpoly()
            if P.degree(g) != F.degree:
                continue
            t2 = float(np.dot(v, gram @ v))
            g = tuple(int(c) for c in g)
            neg = tuple(c if k % 2 == F.degree % 2 else -c for k, c in enumerate(g))
            found.extend([(t2, g), (t2, neg)])
        if found:
            least = min(t for t, _ in found)
            tol = 1e-6 * max(1.0, least)
            return min((g for t, g in found if t <= least + tol), key=poly_key)
        bound *= 2


def _examine(f, disc_bound):
    """(poly, disc, fingerprint) if f defines a totally complex quartic field in range."""
    D = P.discriminant(f)
    if D == 0 or abs(D) // _largest_square_divisor(D) > disc_bound:
        return None
    try:
        F = make_field(f)
    except ReducibleError:
        return None
    if not F.is_totally_complex:
        return None
    Om = maximal_order(F)
    d = Om.discriminant
    if abs(d) > disc_bound:
        return None
    fp = tuple(tuple(local_factors(Om, p)) for p in FINGERPRINT_PRIMES)
    return f, d, fp


def _examine_block(args):
    polys, disc_bound = args
    return [r for r in (_examine(f, disc_bound) for f in polys) if r is not None]


def enumerate_quartics(disc_bound, workers=1):
    """All totally complex quartic fields with |disc| <= disc_bound, up to isomorphism,
    sorted by (disc, defining polynomial)."""
    if disc_bound < 1:
        raise ValueError("disc_bound must be positive")
    polys = candidate_polynomials(disc_bound)
    if workers > 1 and len(polys) > 1:
        blocks = [(polys[k::workers], disc_bound) for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            found = [r for block in pool.map(_examine_block, blocks) for r in block]
    else:
        found = _examine_block((polys, disc_bound))
    groups = {}
    for f, d, fp in found:
        groups.setdefault((d, fp), []).append(f)
    fields = []
    for (d, _), members in sorted(groups.items()):
        classes = []
        for f in sorted(members, key=poly_key):
            F = make_field(f)
            if not any(is_isomorphic(F, G) for G in classes):
                classes.append(F)
        reps = {}
        for F in classes:
            g = reduced_polynomial(F)
            if g in reps:
                raise AssertionError(f"non-isomorphic fields share the reduced polynomial {g}")
            reps[g] = F
        fields.extend(make_field(g) for g in reps)
    fields.sort(key=lambda F: (maximal_order(F).discriminant, poly_key(F.poly)))
    return fields
