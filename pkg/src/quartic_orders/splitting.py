"""Splitting of primes in maximal orders, lambda_S and the Brauer bookkeeping.

The finite algebra A = O/pO is decomposed directly: its Jacobson radical is
the kernel of a high Frobenius power, the semisimple quotient A/J splits
along the primitive idempotents of the Berlekamp subalgebra, and the
idempotents are lifted back to A.  Each local factor eA has residue degree
f = dim of its residue field and ramification index e = dim(eA)/f.
"""

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .exactmath import ffield
from .exactmath import poly as P
from .exactmath.linalg import left_kernel_mod, rank_mod, rref_mod
from .numfield import has_real_quadratic_subfield
from .orders import maximal_order, p_maximal_test


class DecomposedPrime(ValueError):
    """A prime of S has more than one place above it."""

    def __init__(self, p):
        self.p = p
        super().__init__(f"prime {p} is decomposed")


@dataclass(frozen=True)
class SplittingData:
    p: int
    pairs: tuple
    non_decomposed: bool
    inertia_degree: int = None

    def fingerprint(self):
        return f"p={self.p}:" + "".join(f"({e},{f})" for e, f in self.pairs)


# -- the algebra O/pO ------------------------------------------------------------


class _Algebra:
    """Commutative F_p-algebra given by structure constants on a basis."""

    def __init__(self, table, one, p):
        self.table = table
        self.one = one
        self.p = p
        self.n = len(one)

    def mul(self, x, y):
        n, p = self.n, self.p
        out = [0] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        row = self.table[i][j]
                        ab = a * b
                        for k in range(n):
                            out[k] += ab * row[k]
        return [c % p for c in out]

    def power(self, x, e):
        result = list(self.one)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def left_mult(self, x):
        """Rows: x * b_j."""
        rows = []
        for j in range(self.n):
            e = [0] * self.n
            e[j] = 1
            rows.append(self.mul(x, e))
        return rows


def _basis_vec(n, j):
    v = [0] * n
    v[j] = 1
    return v


def _radical(A):
    """Basis (rows) of the nilradical of A: kernel of x -> x^(p^k), p^k >= n."""
    q = A.p
    while q < A.n:
        q *= A.p
    images = [A.power(_basis_vec(A.n, i), q) for i in range(A.n)]
    return left_kernel_mod(images, A.p)


def _reduce(v, rows, pivots, p):
    v = [c % p for c in v]
    for r, c in zip(rows, pivots):
        if v[c]:
            f = v[c]
            v = [(a - f * b) % p for a, b in zip(v, r)]
    return v


def _complement(A, jrows, jpiv):
    """Standard basis vectors completing the radical to a basis of A."""
    p = A.p
    rows, piv = list(jrows), list(jpiv)
    comp = []
    for i in range(A.n):
        r = _reduce(_basis_vec(A.n, i), rows, piv, p)
        if any(r):
            comp.append(_basis_vec(A.n, i))
            rows, piv = rref_mod(rows + [r], p)
    return comp


def _fixed_algebra(A, modJ, comp):
    """Basis of {x in A/J : x^p = x}, as representatives in A."""
    p = A.p
    frob = [modJ([(a - b) % p for a, b in zip(A.power(c, p), c)]) for c in comp]
    if not any(any(r) for r in frob):
        return [modJ(c) for c in comp]
    return [modJ(_combine(k, comp, p)) for k in left_kernel_mod(frob, p)]


def _eigenvalues(A, z, e, modJ):
    """Values in F_p taken by z on the components of e (z^p = z modulo J)."""
    p = A.p
    powers = [modJ(list(e))]
    while True:
        nxt = modJ(A.mul(powers[-1], z))
        if rank_mod(powers + [nxt], p) == len(powers):
            break
        powers.append(nxt)
    k = len(powers)
    # minimal polynomial: nxt = sum c_i z^i e
    rel = left_kernel_mod(powers + [nxt], p)[0]
    lead = rel[k]
    g = tuple(c * pow(lead, -1, p) % p for c in rel)
    return ffield.roots_mod_p(g, p)


def _semisimple_idempotents(A, jrows, jpiv, modJ):
    """Primitive idempotents of A/J, as representatives in A."""
    p = A.p
    comp = _complement(A, jrows, jpiv)
    if not comp:
        return []
    idems = [modJ(list(A.one))]
    for z in _fixed_algebra(A, modJ, comp):
        split = []
        for e in idems:
            values = _eigenvalues(A, z, e, modJ)
            if len(values) <= 1:
                split.append(e)
                continue
            ze = modJ(A.mul(z, e))
            for c in values:
                acc = list(e)
                for d in values:
                    if d != c:
                        inv = pow((c - d) % p, -1, p)
                        acc = modJ(A.mul(acc, [((a - d * b) * inv) % p for a, b in zip(ze, e)]))
                split.append(acc)
        idems = split
    return idems


def _combine(coeffs, vecs, p):
    n = len(vecs[0])
    out = [0] * n
    for c, v in zip(coeffs, vecs):
        if c:
            for k in range(n):
                out[k] += c * v[k]
    return [x % p for x in out]


def _lift_idempotent(A, e):
    """Lift an idempotent modulo the radical: iterate e -> 3e^2 - 2e^3."""
    p = A.p
    for _ in range(2 * A.n + 2):
        e2 = A.mul(e, e)
        if e2 == e:
            return e
        e3 = A.mul(e2, e)
        e = [(3 * a - 2 * b) % p for a, b in zip(e2, e3)]
    if A.mul(e, e) != e:
        raise ArithmeticError("idempotent lifting did not converge")
    return e


def _residue_degree(A, e, modJ):
    """dim over F_p of (eA + J)/J, the residue field of the local factor at e."""
    p = A.p
    rows = [modJ(A.mul(e, _basis_vec(A.n, j))) for j in range(A.n)]
    return rank_mod(rows, p)


def _nilpotency_index(A, e, J):
    """Smallest k with (eJ)^k = 0, i.e. the ramification index of the local factor at e."""
    p = A.p
    m = span_mod_rows([A.mul(e, v) for v in J], p)
    power, k = [list(A.one)], 0
    while power:
        power = span_mod_rows([A.mul(x, y) for x in power for y in m], p)
        k += 1
    return k


def span_mod_rows(vectors, p):
    vectors = [v for v in vectors if any(v)]
    return rref_mod(vectors, p)[0] if vectors else []


def algebra_mod_p(O, p):
    table = [[[c % p for c in O.structure[i][j]] for j in range(O.n)] for i in range(O.n)]
    return _Algebra(table, [c % p for c in O.one_coords], p)


def local_factors(O, p):
    """List of (e_i, f_i) from the decomposition of O/pO."""
    A = algebra_mod_p(O, p)
    J = _radical(A)
    jrows, jpiv = rref_mod(J, p) if J else ([], [])

    def modJ(v):
        return _reduce(v, jrows, jpiv, p)

    pairs = []
    for ebar in _semisimple_idempotents(A, jrows, jpiv, modJ):
        e = _lift_idempotent(A, ebar)
        dim = rank_mod(A.left_mult(e), p)
        f = _residue_degree(A, e, modJ)
        ram = _nilpotency_index(A, e, J)
        if ram * f != dim:
            raise AssertionError(f"local factor at {p}: nilpotency {ram}, residue degree {f}, dimension {dim}")
        pairs.append((ram, f))
    return sorted(pairs)


def splitting_data(Om, p):
    """Ramification and residue degrees of the primes above p."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if not p_maximal_test(Om, p):
        raise ValueError(f"order is not maximal at {p}")
    pairs = tuple(local_factors(Om, p))
    if sum(e * f for e, f in pairs) != Om.n:
        raise AssertionError("fundamental identity violated")
    nd = len(pairs) == 1
    return SplittingData(p, pairs, nd, pairs[0][1] if nd else None)


def is_local(O, p):
    """O/pO is local iff its fixed algebra modulo the radical is just F_p."""
    A = algebra_mod_p(O, p)
    J = _radical(A)
    jrows, jpiv = rref_mod(J, p) if J else ([], [])

    def modJ(v):
        return _reduce(v, jrows, jpiv, p)

    return len(_fixed_algebra(A, modJ, _complement(A, jrows, jpiv))) == 1


def count_local_factors_bruteforce(O, p):
    """Oracle for tiny p^n: A is a product of k local rings iff it has 2^k idempotents."""
    from itertools import product as iproduct
    A = algebra_mod_p(O, p)
    count = sum(1 for x in iproduct(range(p), repeat=A.n) if A.mul(list(x), list(x)) == list(x))
    return count.bit_length() - 1


def polynomial_pattern(f, p):
    """Sorted (e, f) pairs read off from the factorization of f mod p."""
    return sorted((k, P.degree(g)) for g, k in ffield.factor_mod_p(f, p))


# -- lambda_S, C(S), C^c(S) ---------------------------------------------------------


def lambda_S(F, S):
    """Product of the inertia degrees of the primes of S (all must be non-decomposed)."""
    if not S:
        raise ValueError("S must be nonempty")
    Om = maximal_order(F)
    out = 1
    for p in sorted(S):
        sd = splitting_data(Om, p)
        if not sd.non_decomposed:
            raise DecomposedPrime(p)
        out *= sd.inertia_degree
    return out


def decomposed_primes(F, S):
    Om = maximal_order(F)
    return [p for p in sorted(S) if not splitting_data(Om, p).non_decomposed]


def in_C_of_S(F, S):
    if F.degree != 4:
        raise ValueError("C(S) is a set of quartic fields")
    return F.is_totally_complex and not decomposed_primes(F, S)


def in_Cc_of_S(F, S):
    return in_C_of_S(F, S) and not has_real_quadratic_subfield(F)


def embedding_criterion(F, S):
    """Does F embed in the division algebra ramified exactly at S?"""
    if F.degree not in (1, 2, 4):
        return False
    if F.degree == 1:
        return True
    return not decomposed_primes(F, S)


@dataclass(frozen=True)
class BrauerSpec:
    S: tuple
    invariants: dict

    def invariant(self, p):
        return self.invariants.get(p, Fraction(0))

    def total(self):
        return sum(self.invariants.values(), Fraction(0))


def make_brauer_spec(S):
    S = tuple(sorted(set(S)))
    if not S or len(S) % 2:
        raise ValueError("S must contain an even, nonzero number of primes")
    for p in S:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
    inv = {p: Fraction(1, 4) if k % 2 == 0 else Fraction(3, 4) for k, p in enumerate(S)}
    spec = BrauerSpec(S, inv)
    assert spec.total().denominator == 1
    return spec


def embedding_count(O, S, h=None):
    """h(O) * lambda_S(O), the number of classes of embeddings."""
    from .orders import class_number
    if h is None:
        h = class_number(O)
    return h * lambda_S(O.field, S)
