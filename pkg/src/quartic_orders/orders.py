"""Orders, lattices and modules in number fields of degree 1, 2 and 4.

A lattice is stored as ``rows / den`` where ``rows`` is an integer row-style
HNF (upper triangular) in power-basis coordinates.  Orders are lattices that
contain 1 and are closed under multiplication.
"""

from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt, prod

from sympy import factorint, isprime

from .exactmath import ffield
from .exactmath import poly as P
from .exactmath.linalg import (det, hnf_basis, left_kernel_mod, rational_inverse,
                               span_mod, transpose)
from .numfield import NumberField, apply_hom, automorphisms

CACHE_VERSION = 1


def _lcm(a, b):
    return a * b // gcd(a, b)


class Lattice:
    """Full-rank Z-lattice in a number field, spanned by rows/den."""

    def __init__(self, field, den, rows):
        self.field = field
        self.den = den
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_vectors(cls, field, vectors):
        """Lattice spanned by rational coordinate vectors (must have full rank)."""
        den = 1
        for v in vectors:
            for c in v:
                if isinstance(c, Fraction):
                    den = _lcm(den, c.denominator)
        ints = [[int(c * den) for c in v] for v in vectors]
        basis = hnf_basis(ints)
        n = field.degree
        if len(basis) != n:
            raise ValueError("vectors do not span a full-rank lattice")
        g = den
        for row in basis:
            for c in row:
                g = gcd(g, c)
        if g > 1:
            basis = [[c // g for c in row] for row in basis]
            den //= g
        return cls(field, den, basis)

    # -- basic data -------------------------------------------------------------

    @property
    def n(self):
        return self.field.degree

    @cached_property
    def basis(self):
        """Basis vectors as rational power-basis coordinates."""
        return [[Fraction(c, self.den) for c in row] for row in self.rows]

    @cached_property
    def covolume(self):
        """|det| of the basis in power-basis coordinates."""
        return Fraction(abs(det([list(r) for r in self.rows])), self.den ** self.n)

    @cached_property
    def _inverse(self):
        return rational_inverse(self.basis)

    def coords_of(self, x):
        """Coordinates of the field vector x in this lattice basis."""
        inv = self._inverse
        n = self.n
        return [sum(Fraction(x[i]) * inv[i][j] for i in range(n) if x[i]) for j in range(n)]

    def contains(self, x):
        return all(c.denominator == 1 for c in self.coords_of(x))

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis)

    def vector(self, coords):
        """Field vector with the given integer coordinates in this basis."""
        n = self.n
        out = [Fraction(0)] * n
        for c, row in zip(coords, self.basis):
            if c:
                for j in range(n):
                    out[j] += c * row[j]
        return out

    def key(self):
        return (self.field.poly, self.den, self.rows)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"{type(self).__name__}(den={self.den}, rows={[list(r) for r in self.rows]})"

    # -- lattice operations ---------------------------------------------------------

    def __add__(self, other):
        return Lattice.from_vectors(self.field, self.basis + other.basis)

    def __mul__(self, other):
        F = self.field
        return Lattice.from_vectors(F, [F.mul(a, b) for a in self.basis for b in other.basis])

    def scale(self, x):
        """x * L for a field element x (given by coordinates)."""
        F = self.field
        return Lattice.from_vectors(F, [F.mul(x, b) for b in self.basis])

    def scale_int(self, k):
        return Lattice.from_vectors(self.field, [[k * c for c in b] for b in self.basis])

    def dual(self):
        """{x : x . b in Z for every basis vector b} under the standard dot product."""
        inv = rational_inverse(self.basis)
        return Lattice.from_vectors(self.field, transpose(inv))

    def intersect(self, other):
        return (self.dual() + other.dual()).dual()

    def as_lattice(self):
        return Lattice(self.field, self.den, self.rows)


def colon(I, J):
    """(I : J) = {x in F : x J is contained in I}."""
    F = I.field
    n = F.degree
    inv = I._inverse
    cols = []
    for b in J.basis:
        m = F.mult_matrix(b)          # row k: coords of b * a^k
        # x * b = x @ m ; coordinates in I: x @ m @ inv
        a = [[sum(Fraction(m[k][t]) * inv[t][j] for t in range(n)) for j in range(n)] for k in range(n)]
        for j in range(n):
            cols.append([a[k][j] for k in range(n)])
    # x . c in Z for all columns c: dual of the lattice spanned by the columns
    den = 1
    for c in cols:
        for v in c:
            den = _lcm(den, v.denominator)
    ints = hnf_basis([[int(v * den) for v in c] for c in cols])
    spanned = [[Fraction(v, den) for v in row] for row in ints]
    return Lattice.from_vectors(F, transpose(rational_inverse(spanned)))


class Order(Lattice):
    """An order: a lattice containing 1 that is closed under multiplication."""

    def __init__(self, field, den, rows, check=True):
        super().__init__(field, den, rows)
        self.index = None
        if check:
            if not self.contains([1] + [0] * (self.n - 1)):
                raise ValueError("lattice does not contain 1")
            if not self.is_ring():
                raise ValueError("lattice is not closed under multiplication")

    @classmethod
    def from_lattice(cls, L, check=True):
        return cls(L.field, L.den, L.rows, check=check)

    def is_ring(self):
        F = self.field
        b = self.basis
        return all(self.contains(F.mul(b[i], b[j])) for i in range(self.n) for j in range(i, self.n))

    @cached_property
    def one_coords(self):
        return [int(c) for c in self.coords_of([1] + [0] * (self.n - 1))]

    @cached_property
    def structure(self):
        """table[i][j] = integer coordinates of b_i * b_j."""
        F = self.field
        b = self.basis
        t = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(i, self.n):
                c = [int(x) for x in self.coords_of(F.mul(b[i], b[j]))]
                t[i][j] = t[j][i] = c
        return t

    def mul_coords(self, x, y):
        """Product of two elements given by integer (or rational) coordinates in this basis."""
        n = self.n
        out = [0] * n
        t = self.structure
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        ab = a * b
                        row = t[i][j]
                        for k in range(n):
                            out[k] += ab * row[k]
        return out

    def regular_rows(self, x):
        """Rows are the coordinates of x * b_j in this basis (x in order coordinates)."""
        unit = [0] * self.n
        rows = []
        for j in range(self.n):
            e = list(unit)
            e[j] = 1
            rows.append(self.mul_coords(x, e))
        return rows

    @cached_property
    def discriminant(self):
        d = Fraction(self.field.poly_disc) * self.covolume ** 2
        assert d.denominator == 1
        return d.numerator

    def index_in(self, other):
        """[other : self] for lattices self inside other."""
        q = self.covolume / other.covolume
        assert q.denominator == 1
        return q.numerator

    def element(self, coords):
        return self.field.element(self.vector(coords))

    def coords_of_element(self, e):
        return self.coords_of(e.coords)

    def contains_element(self, e):
        return self.contains(e.coords)

    def minkowski_bound(self):
        """(4/pi)^s n!/n^n sqrt|disc| as a float upper bound."""
        from math import factorial, pi, sqrt
        r, s = self.field.signature
        n = self.n
        return (4 / pi) ** s * factorial(n) / n ** n * sqrt(abs(self.discriminant)) * (1 + 1e-12)


def equation_order(F):
    n = F.degree
    return Order(F, 1, [[int(i == j) for j in range(n)] for i in range(n)])


# -- p-maximality and the maximal order -------------------------------------------


def p_radical(O, p):
    """{x in O : x^(p^k) in pO} with p^k >= n, as a lattice."""
    n = O.n
    q = p
    while q < n:
        q *= p
    images = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        images.append([c % p for c in _power_mod(O, e, q, p)])
    kernel = left_kernel_mod(images, p)
    vectors = [O.vector(v) for v in kernel]
    vectors += [O.vector([p * int(i == j) for j in range(n)]) for i in range(n)]
    return Lattice.from_vectors(O.field, vectors)


def _power_mod(O, x, e, p):
    result = O.one_coords
    base = [c % p for c in x]
    while e:
        if e & 1:
            result = [c % p for c in O.mul_coords(result, base)]
        base = [c % p for c in O.mul_coords(base, base)]
        e >>= 1
    return result


def multiplier_ring(L):
    """{x : x L in L} as an Order."""
    return Order.from_lattice(colon(L, L), check=False)


def p_enlarge(O, p):
    """The ring of multipliers of the p-radical; equals O iff O is p-maximal."""
    R = multiplier_ring(p_radical(O, p))
    if R == O:
        return O
    return Order.from_lattice(R)


def p_maximal_test(O, p):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if O.discriminant % (p * p):
        return True
    return p_enlarge(O, p) == O


def dedekind_test(f, p):
    """Dedekind's criterion: is Z[x]/(f) maximal at p?"""
    factors = ffield.factor_mod_p(f, p)
    g = (1,)
    for q, _ in factors:
        g = ffield.mul(g, q, p)
    h = ffield.divmod_mod(ffield.reduce(f, p), g, p)[0]
    # F = (f - g h) / p over Z, using the lifts with coefficients in [0, p)
    diff = P.sub(f, P.mul(g, h))
    big_f = ffield.reduce(tuple(c // p for c in diff), p)
    common = ffield.gcd(ffield.gcd(big_f, g, p), h, p) if big_f else ffield.gcd(g, h, p)
    return P.degree(common) < 1


def _primes_to_check(disc):
    return sorted(q for q, e in factorint(abs(disc)).items() if e >= 2)


_MAXIMAL = {}


def maximal_order(F):
    """The ring of integers, by Round 2 enlargement at every p with p^2 | disc."""
    key = F.poly
    if key in _MAXIMAL:
        return _MAXIMAL[key]
    O = equation_order(F)
    for p in _primes_to_check(F.poly_disc):
        while True:
            R = p_enlarge(O, p)
            if R == O:
                break
            O = R
    O.index = 1
    _MAXIMAL[key] = O
    return O


def field_discriminant(F):
    return maximal_order(F).discriminant


def order_index(O):
    """[O_max : O], cached on the order."""
    if O.index is None:
        O.index = O.index_in(maximal_order(O.field))
    return O.index


def conductor(O):
    """Largest O_max-ideal inside O."""
    Om = maximal_order(O.field)
    return ModuleLattice(O, colon(O, Om))


class ModuleLattice:
    """A nonzero O-submodule of F, i.e. a lattice stable under multiplication by O."""

    def __init__(self, order, lattice, check=True):
        self.order = order
        self.lattice = lattice.as_lattice()
        if check and not self.is_stable():
            raise ValueError("lattice is not an O-module")

    def is_stable(self):
        F = self.order.field
        L = self.lattice
        return all(L.contains(F.mul(a, b)) for a in self.order.basis for b in L.basis)

    @property
    def basis(self):
        return self.lattice.basis

    def norm(self):
        """Generalized index [O : I] = covol(I) / covol(O)."""
        return self.lattice.covolume / self.order.covolume

    def multiplier_ring(self):
        return multiplier_ring(self.lattice)

    def is_invertible(self):
        O = self.order
        inv = colon(O, self.lattice)
        return (self.lattice * inv) == O.as_lattice()

    def key(self):
        return self.lattice.key()

    def __eq__(self, other):
        return isinstance(other, ModuleLattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ModuleLattice(norm={self.norm()}, {self.lattice!r})"


# -- suborders ---------------------------------------------------------------------


def _hnf_matrices(n, m):
    """All n x n integer upper-triangular HNF matrices with determinant m."""
    def diagonals(k, rest):
        if k == 1:
            yield (rest,)
            return
        for d in range(1, rest + 1):
            if rest % d == 0:
                for tail in diagonals(k - 1, rest // d):
                    yield (d,) + tail

    from itertools import product as iproduct
    for diag in diagonals(n, m):
        slots = [(i, j) for j in range(n) for i in range(j)]
        ranges = [range(diag[j]) for (i, j) in slots]
        for vals in iproduct(*ranges):
            mat = [[0] * n for _ in range(n)]
            for i in range(n):
                mat[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                mat[i][j] = v
            yield mat


def sublattices_of_index(L, m):
    """All sublattices of L of index m (HNF transversal in L's basis)."""
    for mat in _hnf_matrices(L.n, m):
        yield Lattice.from_vectors(L.field, [L.vector(row) for row in mat])


def suborders_of_index(Om, m):
    """All orders of index m inside Om."""
    out = []
    one = [1] + [0] * (Om.n - 1)
    for mat in _hnf_matrices(Om.n, m):
        # quick filters in Om-coordinates before building the lattice
        if not _contains_int(mat, Om.one_coords):
            continue
        if not _closed(Om, mat):
            continue
        L = Lattice.from_vectors(Om.field, [Om.vector(row) for row in mat])
        O = Order.from_lattice(L)
        assert O.contains(one)
        O.index = m
        out.append(O)
    return out


def _solve_upper_int(mat, v):
    n = len(mat)
    x = [Fraction(0)] * n
    rest = [Fraction(c) for c in v]
    for i in range(n):
        xi = rest[i] / mat[i][i]
        x[i] = xi
        if xi:
            for j in range(i, n):
                rest[j] -= xi * mat[i][j]
    return x if not any(rest) else None


def _contains_int(mat, v):
    x = _solve_upper_int(mat, v)
    return x is not None and all(c.denominator == 1 for c in x)


def _closed(Om, mat):
    for i in range(len(mat)):
        for j in range(i, len(mat)):
            if not _contains_int(mat, Om.mul_coords(mat[i], mat[j])):
                return False
    return True


def _algebra_fingerprint(O, p):
    """Ring-isomorphism invariant of O at p: dimension of the radical of O/pO."""
    L = p_radical(O, p)
    return (p, round(_log_p(L.covolume / O.covolume, p)))


def _log_p(q, p):
    q = Fraction(q)
    k = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def order_fingerprint(O):
    return (order_index(O), O.discriminant) + tuple(_algebra_fingerprint(O, p) for p in (2, 3, 5, 7, 11, 13))


def orders_isomorphic(O1, O2):
    """Exact ring-isomorphism test via automorphisms of the common field."""
    if O1.field != O2.field:
        raise ValueError("orders lie in different fields")
    F = O1.field
    for image in automorphisms(F):
        moved = Lattice.from_vectors(F, [apply_hom(F.element(b), image).coords for b in O1.basis])
        if moved == O2.as_lattice():
            return True
    return False


def suborders_maximal_at_S(Om, S, index_bound):
    """Orders of index <= index_bound inside Om that are maximal at every p in S.

    Returned up to ring isomorphism, sorted by (index, basis).
    """
    if index_bound < 1:
        raise ValueError("index bound must be positive")
    Om.index = 1
    modS = prod(S) if S else 1
    found = []
    for m in range(1, index_bound + 1):
        for O in suborders_of_index(Om, m):
            coprime = gcd(m, modS) == 1
            maximal = all(p_maximal_test(O, p) for p in S)
            if coprime != maximal:
                raise AssertionError("index/p-maximality mismatch")
            if maximal:
                found.append(O)
    # dedupe up to isomorphism
    reps = []
    for O in found:
        fp = order_fingerprint(O)
        if not any(fp == order_fingerprint(R) and orders_isomorphic(O, R) for R in reps):
            reps.append(O)
    return sorted(reps, key=lambda O: (O.index, O.den, O.rows))


# -- submodule enumeration -----------------------------------------------------------


def _action_matrices(O, L):
    """Integer matrices of multiplication by each basis element of O on L (row convention)."""
    F = O.field
    mats = []
    for a in O.basis:
        if a == [1] + [0] * (O.n - 1):
            continue
        rows = []
        for b in L.basis:
            c = L.coords_of(F.mul(a, b))
            rows.append([int(x) for x in c])
        mats.append(rows)
    return mats


def _stable_subspaces(mats, n, p, codim):
    """O-stable subspaces of F_p^n (row vectors, right action) of the given codimension."""
    if codim == n:
        return [[]]
    if codim == 1:
        return [_hyperplane(ell, n, p) for ell in _common_eigenvectors(mats, n, p)]
    out = []
    for W in _all_subspaces(n, n - codim, p):
        if all(len(span_mod(W + [_vm(w, m, p) for w in W], p)) == len(W) for m in mats):
            out.append(W)
    return out


def _vm(v, m, p):
    n = len(m[0])
    return [sum(v[i] * m[i][j] for i in range(len(v))) % p for j in range(n)]


def _mv(m, v, p):
    return [sum(row[j] * v[j] for j in range(len(v))) % p for row in m]


def _hyperplane(ell, n, p):
    """Basis of {v : v . ell = 0}."""
    from .exactmath.linalg import right_kernel_mod
    return right_kernel_mod([ell], p)


def _common_eigenvectors(mats, n, p):
    """Right eigenvectors common to all matrices, one per line (normalized)."""
    # start with the whole space and cut it down by joint eigenspaces
    spaces = [[[int(i == j) for j in range(n)] for i in range(n)]]
    for m in mats:
        new = []
        for E in spaces:
            new.extend(_eigenspaces_on(m, E, p))
        spaces = new
        if not spaces:
            return []
    out = []
    for E in spaces:
        out.extend(_lines(E, p))
    return out


def _eigenspaces_on(m, E, p):
    """Eigenspaces of the column action v -> m v restricted to span(E) (E invariant)."""
    k = len(E)
    # express m e for each basis vector e of E in E's coordinates
    from .exactmath.linalg import rref_mod
    images = [_mv(m, e, p) for e in E]
    # solve c with sum c_i E_i = image, via augmented system
    et = transpose(E)
    local = []
    for img in images:
        aug = [row + [img[i]] for i, row in enumerate(et)]
        rows, piv = rref_mod(aug, p)
        sol = [0] * k
        for r, c in enumerate(piv):
            if c < k:
                sol[c] = rows[r][k]
        local.append(sol)
    # local[j] = coords of m E_j; matrix acting on coordinate column vectors is transpose
    a = transpose(local)
    out = []
    for lam in range(p):
        shifted = [[(a[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        from .exactmath.linalg import right_kernel_mod
        ker = right_kernel_mod(shifted, p)
        if ker:
            vecs = [[sum(c[i] * E[i][t] for i in range(k)) % p for t in range(len(E[0]))] for c in ker]
            out.append(vecs)
    return out


def _lines(E, p):
    """One normalized vector per 1-dimensional subspace of span(E)."""
    from itertools import product as iproduct
    k = len(E)
    seen = []
    for coeffs in iproduct(range(p), repeat=k):
        first = next((c for c in coeffs if c), None)
        if first != 1:
            continue
        v = [sum(c * E[i][t] for i, c in enumerate(coeffs)) % p for t in range(len(E[0]))]
        seen.append(v)
    return seen


def _all_subspaces(n, dim, p):
    """All dim-dimensional subspaces of F_p^n as RREF row lists."""
    from itertools import combinations, product as iproduct
    out = []
    for pivots in combinations(range(n), dim):
        free = [(r, c) for r in range(dim) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in iproduct(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(dim)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            out.append(rows)
    return out


def _children(O, I, p, budget):
    """O-submodules J of I with pI in J and [I:J] = p^c <= budget, c >= 1."""
    L = I.lattice
    mats = [[[x % p for x in row] for row in m] for m in _action_matrices(O, L)]
    n = O.n
    out = []
    c = 1
    while c <= n and p ** c <= budget:
        for W in _stable_subspaces(mats, n, p, c):
            vecs = [L.vector(w) for w in W] + [[p * x for x in b] for b in L.basis]
            out.append(ModuleLattice(O, Lattice.from_vectors(O.field, vecs), check=False))
        c += 1
    return out


def _primary_submodules(O, p, bound):
    """All O-submodules of O of index p^k <= bound."""
    root = ModuleLattice(O, O.as_lattice(), check=False)
    seen = {root.key(): root}
    frontier = [root]
    while frontier:
        nxt = []
        for I in frontier:
            idx = I.norm()
            for J in _children(O, I, p, Fraction(bound) / idx):
                if J.key() not in seen:
                    seen[J.key()] = J
                    nxt.append(J)
        frontier = nxt
    return list(seen.values())


def submodules(O, bound):
    """All O-submodules I of O with [O:I] <= bound, sorted by (index, basis)."""
    from sympy import primerange
    bound = int(bound)
    per_prime = {}
    for p in primerange(2, bound + 1):
        mods = [I for I in _primary_submodules(O, p, bound) if I.norm() > 1]
        if mods:
            per_prime[p] = mods
    results = [(Fraction(1), ModuleLattice(O, O.as_lattice(), check=False))]
    for p, mods in sorted(per_prime.items()):
        new = []
        for idx, I in results:
            for J in mods:
                total = idx * J.norm()
                if total <= bound:
                    # coprime indices: the intersection is the sum of cross multiples
                    m1, m2 = int(idx), int(J.norm())
                    lat = I.lattice.scale_int(m2) + J.lattice.scale_int(m1)
                    new.append((total, ModuleLattice(O, lat, check=False)))
        results.extend(new)
    out = [I for _, I in results]
    out.sort(key=lambda I: (I.norm(), I.lattice.den, I.lattice.rows))
    return out


# -- isomorphism of modules ------------------------------------------------------------


def quadratic_module_invariant(L):
    """GL2(Z)-class of the ratio of a basis of a rank-2 lattice in a quadratic field.

    Returned as the lexicographically smallest rotation of the period of the
    continued fraction of the ratio.
    """
    F = L.field
    u, v = L.basis
    tau = F.element(v) / F.element(u)
    P_, Q_, D_ = _quadratic_irrational(F, tau)
    return _cf_period_canonical(P_, Q_, D_)


def _quadratic_irrational(F, tau):
    """(P, Q, D) with tau = (P + sqrt D)/Q and Q | D - P^2, for the embedding a -> larger root."""
    c, b = F.poly[0], F.poly[1]
    d0 = b * b - 4 * c
    t0, t1 = Fraction(tau.coords[0]), Fraction(tau.coords[1])
    # a = (-b + sqrt d0)/2
    r = t0 - t1 * b / 2
    s = t1 / 2
    k = _lcm(r.denominator, s.denominator)
    sign = 1 if s > 0 else -1
    Q = sign * k
    Pn = r * Q
    Dn = s * s * Q * Q * d0
    assert Pn.denominator == 1 and Dn.denominator == 1
    P_, D_ = Pn.numerator, Dn.numerator
    if (D_ - P_ * P_) % Q:
        P_, D_, Q = P_ * abs(Q), D_ * Q * Q, Q * abs(Q)
    return P_, Q, D_


def _cf_period_canonical(P_, Q_, D_):
    root = isqrt(D_)
    seen = {}
    quotients = []
    state = (P_, Q_)
    while state not in seen:
        seen[state] = len(quotients)
        P_, Q_ = state
        # floor((P + sqrt D)/Q) exactly
        if Q_ > 0:
            a = (P_ + root) // Q_
        else:
            a = (P_ + root + 1) // Q_
        quotients.append(a)
        P2 = a * Q_ - P_
        Q2 = (D_ - P2 * P2) // Q_
        state = (P2, Q2)
    period = tuple(quotients[seen[state]:])
    rotations = [period[i:] + period[:i] for i in range(len(period))]
    return min(rotations)


def modules_isomorphic(I, J, unit=None):
    """Is there x in F with x J = I?"""
    if I.order.field.degree == 2:
        return quadratic_module_invariant(I.lattice) == quadratic_module_invariant(J.lattice)
    return find_isomorphism(I, J, unit) is not None


_RING_UNITS = {}


def ring_unit(ring):
    """Fundamental unit of an order, cached by its lattice."""
    key = ring.key()
    if key not in _RING_UNITS:
        from .unitsreg import fundamental_unit
        _RING_UNITS[key] = fundamental_unit(ring).fundamental
    return _RING_UNITS[key]


def find_isomorphism(I, J, unit=None):
    """An element x with x J = I, or None (quartic fields).

    x may be moved by units of the multiplier ring of J, so the search
    bound uses that ring's fundamental unit unless one is supplied."""
    import math
    from .exactmath.shortvec import enumerate_short
    O = I.order
    F = O.field
    target = I.norm() / J.norm()
    C = colon(I.lattice, J.lattice)
    if unit is None:
        unit = ring_unit(J.multiplier_ring())
    L = abs(math.log(abs(complex(unit.approx(0)))))
    bound = 4 * math.sqrt(float(target)) * math.exp(L) * (1 + 1e-9) + 1e-9
    gram = t2_gram(C)
    for v in enumerate_short(gram, bound):
        x = F.element(C.vector(v))
        if abs(x.norm()) == target:
            if Lattice.from_vectors(F, [F.mul(x.coords, b) for b in J.basis]) == I.lattice:
                return x
    return None


def t2_gram(L):
    """Float Gram matrix of T2(x) = sum |sigma_i(x)|^2 on the basis of L."""
    import numpy as np
    F = L.field
    roots = F.root_complex
    n = F.degree
    emb = np.array([[sum(float(b[k]) * r ** k for k in range(n)) for r in roots] for b in L.basis])
    return np.real(emb @ emb.conj().T)


# -- class number --------------------------------------------------------------------


def _module_class_key(I):
    return I.multiplier_ring().key()


def module_classes(O, bound, invertible_only=False, unit=None):
    """Representatives of the isomorphism classes met among submodules of index <= bound."""
    reps = []
    buckets = {}
    quadratic = O.field.degree == 2
    for I in submodules(O, bound):
        if invertible_only and not I.is_invertible():
            continue
        if quadratic:
            key = quadratic_module_invariant(I.lattice)
            if key not in buckets:
                buckets[key] = I
                reps.append(I)
            continue
        key = _module_class_key(I)
        bucket = buckets.setdefault(key, [])
        if not any(modules_isomorphic(I, R, unit) for R in bucket):
            bucket.append(I)
            reps.append(I)
    return reps


def class_number(O, invertible_only=False, unit=None, check=True):
    """Number of isomorphism classes of nonzero finitely generated O-submodules of F.

    Submodules of O up to twice the Minkowski-type bound are enumerated and
    sorted into classes; with ``check`` the enumeration is repeated at twice
    that bound and must not produce a new class.
    """
    F = O.field
    if F.degree == 4 and not F.is_totally_complex:
        raise ValueError("class numbers are computed for totally complex quartic fields")
    if F.degree == 2 and F.signature[0] != 2:
        raise ValueError("class numbers are computed for real quadratic fields")
    bound = max(1, int(2 * O.minkowski_bound()))
    reps = module_classes(O, bound, invertible_only, unit)
    if check:
        wider = module_classes(O, 2 * bound, invertible_only, unit)
        if len(wider) != len(reps):
            raise AssertionError(f"class bound {bound} missed classes ({len(reps)} vs {len(wider)})")
    return len(reps)


# -- cache records ---------------------------------------------------------------------


def order_record(O):
    """Line-oriented text record (cache format v1)."""
    lines = [f"order v{CACHE_VERSION}", "poly " + P.to_string(O.field.poly), f"den {O.den}"]
    for row in O.rows:
        lines.append("row " + " ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def parse_order_record(text, field=None):
    from .numfield import make_field
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if lines[0] != f"order v{CACHE_VERSION}":
        raise ValueError(f"unsupported record header {lines[0]!r}")
    poly = P.from_string(lines[1].split(" ", 1)[1])
    F = field if field is not None else make_field(poly)
    if F.poly != poly:
        raise ValueError("record belongs to a different field")
    den = int(lines[2].split()[1])
    rows = [[int(c) for c in ln.split()[1:]] for ln in lines[3:]]
    return Order(F, den, rows)


def quadratic_order(D):
    """The order O_D of discriminant D inside its real or imaginary quadratic field."""
    from .numfield import make_field, quadratic_defining_poly, squarefree_kernel
    d = squarefree_kernel(D)
    dk = d if d % 4 == 1 else 4 * d
    f2 = Fraction(D, dk)
    f = isqrt(f2.numerator)
    if f2.denominator != 1 or f * f != f2.numerator:
        raise ValueError(f"{D} is not a quadratic discriminant")
    F = make_field(quadratic_defining_poly(d))
    O = Order(F, 1, [[1, 0], [0, f]])
    assert O.discriminant == D
    O.index = f
    return O
