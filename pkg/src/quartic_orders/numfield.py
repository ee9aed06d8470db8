"""Number fields of degree 1, 2 and 4 given by a monic integer polynomial.

Elements are stored by their rational coordinates in the power basis
``1, a, ..., a^(n-1)`` where ``a`` is a root of the defining polynomial.
Complex embeddings are indexed by the sorted certified root boxes, so
embedding ``i`` sends ``a`` to the root in box ``i``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

import mpmath
from sympy import factorint

from .exactmath import balls
from .exactmath import poly as P
from .exactmath.linalg import rational_inverse
from .exactmath.roots import isolate_roots, sqrt_upper

ROOT_EPS = Fraction(1, 10 ** 30)


class ReducibleError(ValueError):
    """Raised for a reducible defining polynomial; ``factor`` is a nontrivial factor."""

    def __init__(self, f, factor):
        self.poly = f
        self.factor = factor
        super().__init__(f"reducible: {P.pretty(factor)} divides {P.pretty(f)}")


class FieldMismatch(ValueError):
    pass


def _is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_kernel(n):
    """Squarefree integer d with n = d * m^2 (sign kept)."""
    if n == 0:
        raise ValueError("zero has no squarefree kernel")
    d = -1 if n < 0 else 1
    for q, e in factorint(abs(n)).items():
        if e % 2:
            d *= q
    return d


class NumberField:
    """Q[x]/(f) for a monic irreducible integer f of degree 1, 2 or 4.

    Build instances with :func:`make_field`, which checks irreducibility.
    """

    def __init__(self, poly, signature, roots, poly_disc):
        self.poly = tuple(int(c) for c in poly)
        self.signature = signature
        self.roots = tuple(roots)
        self.poly_disc = poly_disc
        self._refined = {}

    @property
    def degree(self):
        return len(self.poly) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(("NumberField", self.poly))

    def __repr__(self):
        return f"NumberField({P.pretty(self.poly)}, signature={self.signature})"

    @property
    def is_totally_complex(self):
        return self.signature[0] == 0

    # -- arithmetic on coordinate vectors -----------------------------------

    @cached_property
    def power_table(self):
        """Coordinates of a^k for 0 <= k <= 2n-2."""
        n = self.degree
        table = []
        cur = [0] * n
        cur[0] = 1
        for _ in range(2 * n - 1):
            table.append(tuple(cur))
            # multiply by a: shift up and fold the top coefficient
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * self.poly[i]
        return tuple(table)

    def mul(self, a, b):
        n = self.degree
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:n])
        table = self.power_table
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                row = table[k]
                for i in range(n):
                    out[i] += c * row[i]
        return out

    def mult_matrix(self, a):
        """Rows are the coordinates of a * a^j (j = 0..n-1)."""
        return [self.mul(a, self.power_table[j]) for j in range(self.degree)]

    def element(self, coords):
        coords = list(coords)
        if len(coords) != self.degree:
            raise ValueError("coordinate vector has wrong length")
        return FieldElement(self, tuple(_simplify(c) for c in coords))

    def from_poly(self, g):
        """Element g(a) for a polynomial g with rational coefficients."""
        return self.element(_pad(P.rem(P.strip(g), self.poly) if g else (), self.degree))

    @property
    def one(self):
        return self.element([1] + [0] * (self.degree - 1))

    @property
    def gen(self):
        if self.degree == 1:
            return self.element([-self.poly[0]])
        return self.element([0, 1] + [0] * (self.degree - 2))

    # -- embeddings ----------------------------------------------------------

    def roots_at(self, eps):
        """Root boxes with radius <= eps (cached refinements)."""
        eps = Fraction(eps)
        if all(b.radius <= eps for b in self.roots):
            return self.roots
        if eps not in self._refined:
            self._refined[eps] = tuple(isolate_roots(self.poly, eps))
        return self._refined[eps]

    def root_values(self, dps=40):
        """Root box centres as mpmath complex numbers (not certified)."""
        with mpmath.workdps(dps):
            return [b.approx(dps) for b in self.roots]

    @cached_property
    def root_complex(self):
        return [complex(float(b.re), float(b.im)) for b in self.roots]

    def embed_coords(self, coords, i, eps=Fraction(1, 10 ** 20)):
        eps = Fraction(eps)
        root_eps = min(ROOT_EPS, eps)
        while True:
            box = self.roots_at(root_eps)[i]
            ball = balls.horner(list(coords), balls.box_interval(box))
            if balls.radius(ball) <= eps:
                return ball
            root_eps /= 10 ** 10

    def pair_representatives(self):
        """Indices of one embedding per complex-conjugate pair (and each real one)."""
        reps = []
        seen = set()
        for i, b in enumerate(self.roots):
            if i in seen:
                continue
            reps.append(i)
            seen.add(i)
            if not b.is_real:
                j = self.conjugate_index(i)
                seen.add(j)
        return reps

    def conjugate_index(self, i):
        b = self.roots[i]
        if b.is_real:
            return i
        for j, c in enumerate(self.roots):
            if j != i and c.re == b.re and c.im == -b.im:
                return j
        raise AssertionError("conjugate root box missing")


def _simplify(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def _pad(f, n):
    f = list(f)
    return f + [0] * (n - len(f))


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.element([other] + [0] * (self.field.degree - 1))
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("elements belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field.element([a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return self.field.element([-a for a in self.coords])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.field.element(self.field.mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(self.coords)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        inv = rational_inverse(self.field.mult_matrix(self.coords))
        return self.field.element(inv[0])

    def matrix(self):
        return self.field.mult_matrix(self.coords)

    def charpoly(self):
        return charpoly(self.matrix())

    def minpoly(self):
        return P.normalize(P.squarefree_part(self.charpoly()))

    def norm(self):
        cp = self.charpoly()
        return _simplify(Fraction((-1) ** self.field.degree) * cp[0])

    def trace(self):
        return _simplify(-Fraction(self.charpoly()[-2]))

    def is_integral(self):
        return all(isinstance(c, int) or c.denominator == 1 for c in self.minpoly())

    def embed(self, i, eps=Fraction(1, 10 ** 20)):
        return self.field.embed_coords(self.coords, i, eps)

    def approx(self, i, dps=40):
        with mpmath.workdps(dps):
            z = self.field.root_values(dps)[i]
            acc = mpmath.mpc(0)
            for c in reversed(self.coords):
                acc = acc * z + mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator
            return acc

    def __repr__(self):
        return f"FieldElement({P.pretty(P.normalize(self.coords), 'a')})"


def charpoly(m):
    """Characteristic polynomial det(xI - m) by Faddeev-LeVerrier (exact)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = mk
        mk = [[sum(a[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return P.normalize(coeffs)


# -- construction ------------------------------------------------------------


def _integers_in(lo, hi):
    from math import ceil, floor
    return range(ceil(lo), floor(hi) + 1)


def _quartic_factor(f, boxes):
    """A nontrivial monic integer factor of the squarefree quartic f, or None."""
    for b in boxes:
        if b.is_real:
            for r in _integers_in(b.re - b.radius, b.re + b.radius):
                if P.evaluate(f, r) == 0:
                    return (-r, 1)
    n = len(boxes)
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = boxes[i], boxes[j]
            rad_s = bi.radius + bj.radius
            sr, si = bi.re + bj.re, bi.im + bj.im
            if abs(si) > rad_s:
                continue
            pr = bi.re * bj.re - bi.im * bj.im
            pi = bi.re * bj.im + bi.im * bj.re
            mi = sqrt_upper(bi.re ** 2 + bi.im ** 2)
            mj = sqrt_upper(bj.re ** 2 + bj.im ** 2)
            rad_p = mi * bj.radius + mj * bi.radius + bi.radius * bj.radius
            if abs(pi) > rad_p:
                continue
            for s in _integers_in(sr - rad_s, sr + rad_s):
                for p in _integers_in(pr - rad_p, pr + rad_p):
                    g = (p, -s, 1)
                    if not P.rem(f, g):
                        return g
    return None


def make_field(f):
    """Validate f and build its :class:`NumberField`.

    Raises ``ValueError`` for non-monic input or unsupported degree and
    :class:`ReducibleError` (carrying a factor) for reducible f.
    """
    f = P.normalize(f)
    if any(isinstance(c, Fraction) for c in f):
        raise ValueError("defining polynomial must have integer coefficients")
    n = P.degree(f)
    if n not in (1, 2, 4):
        raise ValueError(f"degree {n} not supported (need 1, 2 or 4)")
    if not P.is_monic(f):
        raise ValueError("defining polynomial must be monic")
    if n == 1:
        return NumberField(f, (1, 0), isolate_roots(f, ROOT_EPS), 1)
    g = P.gcd_poly(f, P.derivative(f))
    if P.degree(g) > 0:
        raise ReducibleError(f, P.primitive_part(P.squarefree_part(g)))
    disc = P.discriminant(f)
    boxes = isolate_roots(f, ROOT_EPS)
    if n == 2:
        if _is_square(disc):
            r = (-f[1] + isqrt(disc)) // 2
            raise ReducibleError(f, (-r, 1))
    else:
        factor = _quartic_factor(f, boxes)
        if factor is not None:
            raise ReducibleError(f, factor)
    r = sum(1 for b in boxes if b.is_real)
    return NumberField(f, (r, (n - r) // 2), boxes, disc)


def parse_poly(text):
    return P.from_string(text)


# -- quadratic subfields -------------------------------------------------------


def resolvent_cubic(f):
    """Cubic whose roots are a_i a_j + a_k a_l over the three pairings."""
    a0, a1, a2, a3 = f[0], f[1], f[2], f[3]
    return (-(a1 * a1 + a0 * a3 * a3 - 4 * a0 * a2), a1 * a3 - 4 * a0, -a2, 1)


def _integer_roots(g):
    """Integer roots of a monic integer polynomial."""
    if g[0] == 0:
        rest = _integer_roots(P.strip(g[1:]))
        return sorted(set([0] + rest))
    out = []
    c = abs(g[0])
    for q in _divisors(c):
        for r in (q, -q):
            if P.evaluate(g, r) == 0:
                out.append(r)
    return sorted(set(out))


def _divisors(n):
    divs = [1]
    for q, e in factorint(n).items():
        divs = [d * q ** k for d in divs for k in range(e + 1)]
    return divs


def _sqrt_in(delta, d):
    """sqrt(delta) as (u, v) meaning u + v*sqrt(d), both rational, or None."""
    if delta == 0:
        return (0, 0)
    if _is_square(delta):
        return (isqrt(delta), 0)
    if delta % d == 0 and _is_square(delta // d):
        return (0, isqrt(delta // d))
    return None


def _qmul(x, y, d):
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _qpoly_mul(f, g, d):
    out = [(0, 0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            m = _qmul(a, b, d)
            out[i + j] = (out[i + j][0] + m[0], out[i + j][1] + m[1])
    return out


def _factor_over_quadratic(f, y, d):
    """Monic quadratic (s, p) over Q(sqrt d) with f = g * conj(g), or None.

    s, p are pairs (u, v) = u + v sqrt(d); g = x^2 - s x + p.
    """
    a3 = f[3]
    rs = _sqrt_in(a3 * a3 - 4 * (f[2] - y), d)
    rp = _sqrt_in(y * y - 4 * f[0], d)
    if rs is None or rp is None:
        return None
    half = Fraction(1, 2)
    for es in (1, -1):
        for ep in (1, -1):
            s = ((-a3 + es * rs[0]) * half, es * rs[1] * half)
            p = ((y + ep * rp[0]) * half, ep * rp[1] * half)
            if s[1] == 0 and p[1] == 0:
                continue
            g = [p, (-s[0], -s[1]), (1, 0)]
            gbar = [(c[0], -c[1]) for c in g]
            prod = _qpoly_mul(g, gbar, d)
            if all(c[1] == 0 for c in prod) and P.normalize([c[0] for c in prod]) == P.normalize(f):
                return s, p
    return None


def quadratic_defining_poly(d):
    """Defining polynomial of the ring of integers of Q(sqrt d), d squarefree."""
    if d % 4 == 1:
        return (-(d - 1) // 4, -1, 1)
    return (-d, 0, 1)


def _subfield_data(F):
    if F.degree != 4:
        raise ValueError("quadratic subfields are computed for quartic fields only")
    f = F.poly
    found = {}
    for y in _integer_roots(resolvent_cubic(f)):
        cands = set()
        for delta in (y * y - 4 * f[0], f[3] ** 2 - 4 * (f[2] - y)):
            if delta != 0 and not _is_square(delta):
                cands.add(squarefree_kernel(delta))
        for d in sorted(cands):
            if d in found:
                continue
            sp = _factor_over_quadratic(f, y, d)
            if sp is not None:
                found[d] = sp
    return found


def quadratic_subfields(F):
    """Defining quadratics of all quadratic subfields, with a real/imaginary flag.

    Each entry is ``(poly, is_real)``; the polynomial generates the ring of
    integers of the subfield.  Sorted by the squarefree d of Q(sqrt d).
    """
    data = _subfield_data(F)
    return [(quadratic_defining_poly(d), d > 0) for d in sorted(data)]


def subfield_generators(F):
    """Map d -> element of F squaring to d, for each quadratic subfield Q(sqrt d)."""
    out = {}
    a = F.gen
    for d, (s, p) in sorted(_subfield_data(F).items()):
        # a^2 - s a + p = 0 with s = s0 + s1 r, p = p0 + p1 r, r = sqrt(d)
        num = a * a - a * s[0] + p[0]
        den = a * s[1] - p[1]
        r = num / den
        assert r * r == F.one * d
        out[d] = r
    return out


def has_real_quadratic_subfield(F):
    return any(real for _, real in quadratic_subfields(F))


def field_discriminant_sign(F):
    """Sign of the discriminant: (-1)^s."""
    return (-1) ** F.signature[1]


# -- roots of polynomials inside F ----------------------------------------------


def square_part_root(n):
    """Largest m with m^2 | n."""
    m = 1
    for q, e in factorint(abs(n)).items():
        m *= q ** (e // 2)
    return m


def roots_in_field(g, F, dps=None):
    """All elements b of F with g(b) = 0, for a monic integer g.

    Candidates come from matching embedding values numerically; every
    returned root is confirmed exactly.
    """
    g = P.normalize(g)
    if not P.is_monic(g) or any(isinstance(c, Fraction) for c in g):
        raise ValueError("need a monic integer polynomial")
    n = F.degree
    if n == 1:
        r = -F.poly[0]
        return [F.element([r])] if P.evaluate(g, r) == 0 else []
    m = square_part_root(F.poly_disc)
    gsq = P.primitive_part(P.squarefree_part(g))
    size = max(abs(c) for c in gsq) + 1
    fsize = max(abs(c) for c in F.poly) + 1
    if dps is None:
        dps = 40 + int(n * (len(str(size)) + len(str(fsize)))) + len(str(m))
    found = {}
    with mpmath.workdps(dps):
        alphas = [b.approx(dps) for b in F.roots_at(Fraction(1, 10 ** dps))]
        vinv = mpmath.inverse(mpmath.matrix([[z ** k for k in range(n)] for z in alphas]))
        groots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(gsq)], maxsteps=400, extraprec=4 * dps)
        if not isinstance(groots, list):
            groots = [groots]
        tol = mpmath.mpf(10) ** (-dps // 3)
        real_emb = [abs(z.imag) < tol for z in alphas]
        conj = [F.conjugate_index(i) for i in range(n)]
        from itertools import product as iproduct
        for choice in iproduct(range(len(groots)), repeat=n):
            vals = [groots[k] for k in choice]
            ok = True
            for i in range(n):
                if abs(vals[conj[i]] - mpmath.conj(vals[i])) > tol or (real_emb[i] and abs(vals[i].imag) > tol):
                    ok = False
                    break
            if not ok:
                continue
            coeffs = vinv * mpmath.matrix(vals)
            ints = []
            for k in range(n):
                z = coeffs[k] * m
                if abs(z.imag) > tol or abs(z.real - mpmath.nint(z.real)) > tol:
                    ok = False
                    break
                ints.append(int(mpmath.nint(z.real)))
            if not ok:
                continue
            b = F.element([Fraction(c, m) for c in ints])
            if b.coords in found:
                continue
            val = F.element([0] * n)
            for c in reversed(g):
                val = val * b + c
            if val.is_zero():
                found[b.coords] = b
    return [found[k] for k in sorted(found, key=lambda t: [Fraction(c) for c in t])]


def apply_hom(x, image):
    """Image of x under the homomorphism sending the generator to ``image``."""
    F2 = image.field
    acc = F2.element([0] * F2.degree)
    for c in reversed(x.coords):
        acc = acc * image + c
    return acc


def automorphisms(F):
    """Images of the generator under all automorphisms of F (identity first)."""
    roots = roots_in_field(F.poly, F)
    roots.sort(key=lambda b: (b != F.gen, [Fraction(c) for c in b.coords]))
    return roots


def is_isomorphic(F1, F2):
    """Exact isomorphism test: does the defining polynomial of F1 have a root in F2."""
    if F1.degree != F2.degree or F1.signature != F2.signature:
        return False
    return bool(roots_in_field(F1.poly, F2))
